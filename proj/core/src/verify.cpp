#include "factlab/verify.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "factlab/asymptotics.hpp"
#include "factlab/combinatorics.hpp"
#include "factlab/factor_counts.hpp"
#include "factlab/moments.hpp"
#include "factlab/special_functions.hpp"

namespace factlab {

namespace {

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name, std::uint64_t limit) {
        report_.suite = std::move(name);
        report_.limit = limit;
        report_.passed = true;
    }

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        report_.cases.push_back({name, ok, detail});
        if (!ok) report_.passed = false;
    }

    SuiteReport take() { return std::move(report_); }

private:
    SuiteReport report_;
};

// Owns a table only when the caller did not supply one.
class TableRef {
public:
    TableRef(const SieveTable* external, std::uint64_t limit) {
        if (external != nullptr && external->limit() >= limit) {
            table_ = external;
        } else {
            owned_.emplace(SieveTable::build(limit));
            table_ = &*owned_;
        }
    }
    const SieveTable& get() const { return *table_; }

private:
    std::optional<SieveTable> owned_;
    const SieveTable* table_ = nullptr;
};

std::string mismatch_detail(std::uint64_t n, const std::string& what) {
    std::ostringstream os;
    os << "first mismatch at n=" << n << " (" << what << ")";
    return os.str();
}

SuiteReport suite_oracle_counts(std::uint64_t limit, const SieveTable* external) {
    if (limit < 2 || limit > 1000000)
        throw std::invalid_argument("oracle-counts: limit must lie in [2, 1e6]");
    const std::uint64_t sqfree_limit = std::max<std::uint64_t>(limit, 10000);
    SuiteBuilder b("oracle-counts", limit);
    TableRef table(external, sqfree_limit);
    const SieveTable& t = table.get();

    std::uint64_t bad_f = 0, bad_g = 0, bad_cf = 0, bad_cg = 0;
    std::string detail_f, detail_g, detail_cf, detail_cg;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const ExactInt fv = f_count(t, n);
        const ExactInt gv = g_count(t, n);
        const ExactInt cfv = F_count(t, n);
        const ExactInt cgv = G_count(t, n);
        if (fv != oracle_unordered(n, false) && bad_f++ == 0)
            detail_f = mismatch_detail(n, "f vs unordered enumeration");
        if (gv != oracle_ordered(n, false) && bad_g++ == 0)
            detail_g = mismatch_detail(n, "g vs ordered enumeration");
        if (cfv != oracle_unordered(n, true) && bad_cf++ == 0)
            detail_cf = mismatch_detail(n, "F vs coprime unordered enumeration");
        if (cgv != oracle_ordered(n, true) && bad_cg++ == 0)
            detail_cg = mismatch_detail(n, "G vs coprime ordered enumeration");
    }
    b.check("f-vs-enumeration", bad_f == 0, detail_f);
    b.check("g-vs-enumeration", bad_g == 0, detail_g);
    b.check("F-vs-enumeration", bad_cf == 0, detail_cf);
    b.check("G-vs-enumeration", bad_cg == 0, detail_cg);

    // On squarefree n the unrestricted and coprime counts coincide.
    std::uint64_t bad_sq = 0;
    std::string detail_sq;
    for (std::uint64_t n = 1; n <= sqfree_limit; ++n) {
        if (!t.is_squarefree(n)) continue;
        const unsigned k = t.omega(n);
        if ((f_count(t, n) != bell(k) || g_count(t, n) != fubini(k)) && bad_sq++ == 0)
            detail_sq = mismatch_detail(n, "squarefree f=B_omega / g=a_omega");
    }
    b.check("squarefree-identity", bad_sq == 0, detail_sq);
    return b.take();
}

SuiteReport suite_bell_fubini(std::uint64_t limit) {
    (void)limit;
    SuiteBuilder b("bell-fubini", 0);

    bool bell_ok = true;
    for (unsigned k = 0; k <= 12; ++k)
        bell_ok = bell_ok && bell(k) == enumerate_set_partitions(k);
    b.check("bell-vs-enumeration", bell_ok);

    bool fub_ok = true;
    for (unsigned k = 0; k <= 10; ++k)
        fub_ok = fub_ok && fubini(k) == enumerate_ordered_partitions(k);
    b.check("fubini-vs-enumeration", fub_ok);

    // ordered/unordered ratio never decreases
    bool ratio_ok = true;
    long double prev = 0.0L;
    for (unsigned k = 1; k <= 60; ++k) {
        const long double r = log_fubini_exact(k) - log_bell_exact(k);
        if (r < prev - 1e-12L) ratio_ok = false;
        prev = r;
    }
    b.check("fubini-over-bell-monotone", ratio_ok);

    const long double err100 =
        fabsl(log_bell_debruijn(100).log - log_bell_exact(100));
    const long double err1000 =
        fabsl(log_bell_debruijn(1000).log - log_bell_exact(1000));
    auto debruijn_bound = [](unsigned k) {
        const long double lk = logl(static_cast<long double>(k));
        const long double llk = logl(lk);
        return 0.5L * k * llk * llk / (lk * lk);
    };
    b.check("debruijn-error-bound-k100", err100 < debruijn_bound(100));
    b.check("debruijn-error-bound-k1000", err1000 < debruijn_bound(1000));
    b.check("debruijn-relative-error-improves",
            err1000 / log_bell_exact(1000) < err100 / log_bell_exact(100));

    auto ratio_err = [](unsigned k) {
        const long double exact =
            expl(log_bell_exact(k + 1) - log_bell_exact(k));
        return fabsl(bell_ratio_approx(k) - exact) / exact;
    };
    const long double r50 = ratio_err(50), r500 = ratio_err(500);
    b.check("bell-ratio-5pct-at-50", r50 < 0.05);
    b.check("bell-ratio-improves-at-500", r500 < r50);

    bool mw_ok = true;
    for (unsigned k : {100u, 200u, 500u}) {
        const long double rel =
            fabsl(expm1l(log_bell_moser_wyman(k).log - log_bell_exact(k)));
        mw_ok = mw_ok && rel < 0.02;
    }
    b.check("moser-wyman-2pct", mw_ok);
    return b.take();
}

SuiteReport suite_special_fn(std::uint64_t limit) {
    (void)limit;
    SuiteBuilder b("special-fn", 0);

    bool w_ok = true;
    for (double x = 1e-6; x <= 1.0001e3; x *= 10.0) {
        const double w = lambert_w(x);
        if (std::fabs(w * std::exp(w) - x) / x > 1e-13) w_ok = false;
    }
    b.check("lambert-w-residual-grid", w_ok);

    bool ei_ok = true;
    for (double t = 0.05; t <= 20.0; t += 0.37)
        if (std::fabs(gamma0(t) + expint_ei(-t)) > 1e-13) ei_ok = false;
    b.check("gamma0-ei-identity-grid", ei_ok);

    bool h_ok = true;
    for (double t = 0.05; t <= 5.0; t += 0.15) {
        const double c = h_func_forward(t);
        if (std::fabs(h_func(c) - t) > 1e-10) h_ok = false;
    }
    b.check("h-two-sided-inverse", h_ok);

    const ConstantsReport r = constants_report();
    b.check("zeta-rho-residual", r.rho_residual <= 1e-12);
    b.check("rho-near-1.73", std::fabs(r.rho - 1.73) <= 0.005);
    b.check("c_F-near-2.12", std::fabs(r.c_f - 2.12) <= 0.005);
    b.check("c_G-near-0.771", std::fabs(r.c_g - 0.771) <= 0.0005);
    b.check("w-defining-identity",
            std::fabs(r.w + std::log(r.w) + std::log(std::log(2.0)) + 1.0) <= 1e-12);
    b.check("h-of-c-equals-w", [&] {
        const double c = -r.w * std::exp(r.w) * expint_ei(-r.w);
        return std::fabs(h_func(c) - r.w) <= 1e-8;
    }());
    b.check("stationarity-identity", [&] {
        const double c = -r.w * std::exp(r.w) * expint_ei(-r.w);
        const double h = h_func(c);
        return std::fabs(h + std::log(h) + (1.0 + std::log(std::log(2.0)))) <= 1e-10;
    }());
    // 1/H'(c) = c/H(c) + c - 1, H' estimated by central differences
    bool hd_ok = true;
    for (double c = 0.15; c <= 0.86; c += 0.1) {
        const double eps = 1e-6;
        const double hd = (h_func(c + eps) - h_func(c - eps)) / (2 * eps);
        const double lhs = 1.0 / hd;
        const double rhs = c / h_func(c) + c - 1.0;
        if (std::fabs(lhs - rhs) > 1e-5 * std::max(1.0, std::fabs(rhs))) hd_ok = false;
    }
    b.check("h-differential-identity", hd_ok);

    bool residuals_ok = true;
    for (const auto& item : r.items())
        if (!(item.residual < 1e-10)) residuals_ok = false;
    b.check("all-residuals-below-1e-10", residuals_ok);
    return b.take();
}

SuiteReport suite_sandwich(std::uint64_t limit, const SieveTable* external) {
    if (limit < 100)
        throw std::invalid_argument("sandwich: limit must be >= 100");
    SuiteBuilder b("sandwich", limit);
    TableRef table(external, limit);
    const SieveTable& t = table.get();
    CountMemo memo;

    for (const double beta : {0.5, 1.0, 2.0}) {
        // Independent routes: the max term comes from the histogram, the
        // sum from the per-n walk.
        const MomentReport sum = moment_sum_per_n('F', beta, limit, t, memo);
        const auto hist = omega_hist_prefix(t, limit);
        std::uint64_t nonzero_terms = 1;  // k = 0 (n = 1)
        ExactInt max_exact = 0;
        long double max_log = -1e30L;
        for (unsigned k = 0; k < hist.size() || k == 0; ++k) {
            const std::uint64_t pi = k == 0 ? 1 : hist[k];
            if (pi == 0) continue;
            if (k > 0) ++nonzero_terms;
            const long double lt =
                static_cast<long double>(beta) * log_bell_exact(k) +
                logl(static_cast<long double>(pi));
            if (lt > max_log) max_log = lt;
            if (beta == std::floor(beta)) {
                ExactInt term =
                    boost::multiprecision::pow(bell(k), static_cast<unsigned>(beta)) *
                    ExactInt(pi);
                if (term > max_exact) max_exact = term;
            }
        }

        std::ostringstream name;
        name << "sandwich-x" << limit << "-beta" << beta;
        bool ok;
        if (beta == std::floor(beta)) {
            const ExactInt& total = *sum.exact_sum;
            ok = max_exact <= total && total <= ExactInt(nonzero_terms) * max_exact;
        } else {
            const long double upper = max_log + logl(static_cast<long double>(nonzero_terms));
            // float routes only; the margins here are orders of magnitude
            ok = max_log <= sum.log_sum.log + 1e-9L && sum.log_sum.log <= upper + 1e-9L;
        }
        b.check(name.str(), ok);
    }
    return b.take();
}

SuiteReport suite_kalmar_trend(std::uint64_t limit, const SieveTable* external) {
    if (limit < 1000)
        throw std::invalid_argument("kalmar-trend: limit must be >= 1000");
    SuiteBuilder b("kalmar-trend", limit);
    TableRef table(external, limit);
    CountMemo memo;

    std::vector<std::uint64_t> xs{1000};
    while (xs.back() * 10 <= limit) xs.push_back(xs.back() * 10);
    const auto rows = kalmar_trend(xs, table.get(), memo);

    std::ostringstream detail;
    for (const auto& row : rows)
        detail << "x=" << row.x << " ratio=" << row.ratio << "  ";
    const double first_err = std::fabs(rows.front().ratio - 1.0);
    const double last_err = std::fabs(rows.back().ratio - 1.0);
    b.check("ratio-in-band", rows.back().ratio >= 0.85 && rows.back().ratio <= 1.15,
            detail.str());
    b.check("ratio-improves", rows.size() < 2 || last_err < first_err, detail.str());
    return b.take();
}

}  // namespace

std::vector<std::string> known_suites() {
    return {"oracle-counts", "bell-fubini", "special-fn", "sandwich", "kalmar-trend"};
}

SuiteReport run_suite(const std::string& suite, std::uint64_t limit,
                      const SieveTable* table) {
    if (suite == "oracle-counts") return suite_oracle_counts(limit, table);
    if (suite == "bell-fubini") return suite_bell_fubini(limit);
    if (suite == "special-fn") return suite_special_fn(limit);
    if (suite == "sandwich") return suite_sandwich(limit, table);
    if (suite == "kalmar-trend") return suite_kalmar_trend(limit, table);
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace factlab
