#include "factlab/moments.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "factlab/combinatorics.hpp"
#include "factlab/parallel.hpp"
#include "factlab/special_functions.hpp"

namespace factlab {

namespace {

constexpr unsigned kHistSlots = 64;

bool is_exact_beta(double beta) {
    return beta >= 0.0 && beta == std::floor(beta) && beta <= 1024.0;
}

// Packed signature of n from the spf chain, without materializing a
// PrimeSignature.  Exponents fit 6 bits for any n < 2^64.
inline std::uint64_t packed_signature(const SieveTable& table, std::uint64_t n) {
    std::uint32_t exps[16];
    unsigned count = 0;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint32_t p = table.spf(m);
        std::uint32_t e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        exps[count++] = e;
    }
    // insertion sort, descending; count is at most 15
    for (unsigned i = 1; i < count; ++i) {
        const std::uint32_t v = exps[i];
        unsigned j = i;
        while (j > 0 && exps[j - 1] < v) {
            exps[j] = exps[j - 1];
            --j;
        }
        exps[j] = v;
    }
    std::uint64_t key = 0;
    for (unsigned i = 0; i < count; ++i)
        key |= static_cast<std::uint64_t>(exps[i]) << (6 * i);
    return key;
}

inline unsigned omega_of(const SieveTable& table, std::uint64_t n) {
    unsigned k = 0;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint32_t p = table.spf(m);
        ++k;
        do m /= p; while (m % p == 0);
    }
    return k;
}

struct ChunkPartial {
    ExactInt exact;
    LogAccumulator logsum;
};

std::optional<Prediction> prediction_for(char fn, double beta, std::uint64_t limit) {
    TheoremId id;
    if (fn == 'F') {
        if (beta == 1.0) id = TheoremId::t1_1;
        else if (beta > 1.0) id = TheoremId::t1_5;
        else if (beta > 0.0) id = TheoremId::t1_6;
        else if (beta < 0.0) id = TheoremId::t1_9;
        else return std::nullopt;
    } else if (fn == 'G') {
        if (beta == 1.0) id = TheoremId::t1_2;
        else if (beta > 1.0) id = TheoremId::t1_7;
        else if (beta > 0.0) id = TheoremId::t1_8;
        else if (beta < 0.0) id = TheoremId::t1_10;
        else return std::nullopt;
    } else if (fn == 'f') {
        if (beta == 1.0) id = TheoremId::oppenheim;
        else if (beta > 1.0) id = TheoremId::t1_3;
        else if (beta > 0.0) id = TheoremId::t1_4;
        else if (beta < 0.0) id = TheoremId::t1_9;
        else return std::nullopt;
    } else {  // 'g': positive moments beyond the first are unknown
        if (beta == 1.0) id = TheoremId::kalmar;
        else if (beta < 0.0) id = TheoremId::t1_10;
        else return std::nullopt;
    }
    const long double logx = logl(static_cast<long double>(limit));
    try {
        // Negative-moment laws take the exponent parameter as positive.
        const double beta_param = beta < 0.0 ? -beta : beta;
        return predict(id, beta_param, LogScale(logx));
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // scale too small for iterated logs
    }
}

void validate_fn(char fn) {
    if (fn != 'f' && fn != 'g' && fn != 'F' && fn != 'G')
        throw std::invalid_argument("moment_sum: fn must be one of f, g, F, G");
}

MomentReport finish_report(char fn, double beta, std::uint64_t limit,
                           std::optional<ExactInt> exact, LogValue log_sum,
                           std::chrono::steady_clock::time_point start) {
    MomentReport report;
    report.fn = fn;
    report.beta = beta;
    report.limit = limit;
    report.exact_sum = std::move(exact);
    report.log_sum = log_sum;
    report.elapsed = std::chrono::steady_clock::now() - start;
    report.prediction = prediction_for(fn, beta, limit);
    if (report.prediction)
        report.log_ratio = report.log_sum.log - report.prediction->log_of_sum.log;
    return report;
}

}  // namespace

std::vector<std::uint64_t> omega_hist_prefix(const SieveTable& table, std::uint64_t limit,
                                             std::uint64_t chunk_size, unsigned threads) {
    if (limit > table.limit())
        throw std::invalid_argument("omega_hist_prefix: limit exceeds the sieve");
    if (limit == table.limit()) return table.omega_hist();

    using Hist = std::array<std::uint64_t, kHistSlots>;
    auto partials = run_chunked<Hist>(
        2, limit + 1, chunk_size, threads,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            Hist h{};
            for (std::uint64_t n = lo; n < hi; ++n) ++h[omega_of(table, n)];
            return h;
        });
    Hist total{};
    for (const auto& part : partials)
        for (unsigned k = 0; k < kHistSlots; ++k) total[k] += part[k];
    unsigned top = 0;
    for (unsigned k = 0; k < kHistSlots; ++k)
        if (total[k]) top = k;
    return std::vector<std::uint64_t>(total.begin(), total.begin() + top + 1);
}

MomentReport moment_sum(char fn, double beta, std::uint64_t limit, const SieveTable& table,
                        CountMemo& memo, std::uint64_t chunk_size, unsigned threads) {
    validate_fn(fn);
    if (limit < 1 || limit > table.limit())
        throw std::invalid_argument("moment_sum: limit must lie in [1, sieve limit]");
    const auto start = std::chrono::steady_clock::now();
    const bool exact_path = is_exact_beta(beta);

    if (fn == 'F' || fn == 'G') {
        // Histogram identity: sum_k B_k^beta pi(x, k), with pi(x, 0) = 1
        // accounting for n = 1.
        const std::vector<std::uint64_t> hist =
            omega_hist_prefix(table, limit, chunk_size, threads);
        std::optional<ExactInt> exact;
        if (exact_path) exact = ExactInt(0);
        LogAccumulator logsum;
        for (unsigned k = 0; k < hist.size() || k == 0; ++k) {
            const std::uint64_t pi = k == 0 ? 1 : hist[k];
            if (pi == 0) continue;
            const ExactInt& base = fn == 'F' ? bell(k) : fubini(k);
            if (exact)
                *exact += boost::multiprecision::pow(base, static_cast<unsigned>(beta)) *
                          ExactInt(pi);
            logsum.add_log(static_cast<long double>(beta) * log_exact(base) +
                           logl(static_cast<long double>(pi)));
        }
        return finish_report(fn, beta, limit, std::move(exact), logsum.result(), start);
    }

    // f and g: per-n walk through the signature memo, prepopulated here so
    // the parallel part only ever reads it.
    memo.prepopulate(limit);
    const bool use_f = fn == 'f';
    const unsigned beta_int = exact_path ? static_cast<unsigned>(beta) : 0;

    auto partials = run_chunked<ChunkPartial>(
        1, limit + 1, chunk_size, threads,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            ChunkPartial part;
            for (std::uint64_t n = lo; n < hi; ++n) {
                const std::uint64_t key = n == 1 ? 0 : packed_signature(table, n);
                const CountMemo::Entry* e = memo.find_packed(key);
                if (e == nullptr) throw std::logic_error("moment_sum: memo miss");
                if (exact_path) {
                    const ExactInt& v = use_f ? e->f : e->g;
                    part.exact += beta_int == 1 ? v : boost::multiprecision::pow(v, beta_int);
                }
                part.logsum.add_log(static_cast<long double>(beta) *
                                    (use_f ? e->log_f : e->log_g));
            }
            return part;
        });

    std::optional<ExactInt> exact;
    LogAccumulator logsum;
    if (exact_path) exact = ExactInt(0);
    for (auto& part : partials) {  // ascending chunk order
        if (exact) *exact += part.exact;
        logsum.merge(part.logsum);
    }
    return finish_report(fn, beta, limit, std::move(exact), logsum.result(), start);
}

MomentReport moment_sum_per_n(char fn, double beta, std::uint64_t limit,
                              const SieveTable& table, CountMemo& memo,
                              std::uint64_t chunk_size, unsigned threads) {
    if (fn != 'F' && fn != 'G')
        throw std::invalid_argument("moment_sum_per_n: fn must be 'F' or 'G'");
    if (limit < 1 || limit > table.limit())
        throw std::invalid_argument("moment_sum_per_n: limit must lie in [1, sieve limit]");
    (void)memo;
    const auto start = std::chrono::steady_clock::now();
    const bool exact_path = is_exact_beta(beta);
    const bool use_bell = fn == 'F';

    // Per-k values up to the largest omega that can occur.
    const unsigned kmax = table.max_omega();
    std::vector<ExactInt> powered(kmax + 1);
    std::vector<long double> logs(kmax + 1);
    for (unsigned k = 0; k <= kmax; ++k) {
        const ExactInt& base = use_bell ? bell(k) : fubini(k);
        logs[k] = static_cast<long double>(beta) * log_exact(base);
        if (exact_path)
            powered[k] = boost::multiprecision::pow(base, static_cast<unsigned>(beta));
    }

    auto partials = run_chunked<ChunkPartial>(
        1, limit + 1, chunk_size, threads,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            ChunkPartial part;
            for (std::uint64_t n = lo; n < hi; ++n) {
                const unsigned k = n == 1 ? 0 : omega_of(table, n);
                if (exact_path) part.exact += powered[k];
                part.logsum.add_log(logs[k]);
            }
            return part;
        });

    std::optional<ExactInt> exact;
    LogAccumulator logsum;
    if (exact_path) exact = ExactInt(0);
    for (auto& part : partials) {
        if (exact) *exact += part.exact;
        logsum.merge(part.logsum);
    }
    return finish_report(fn, beta, limit, std::move(exact), logsum.result(), start);
}

std::vector<KalmarRow> kalmar_trend(const std::vector<std::uint64_t>& limits,
                                    const SieveTable& table, CountMemo& memo,
                                    std::uint64_t chunk_size, unsigned threads) {
    static const double rho = solve_rho();
    static const double log_k = std::log(-1.0 / (rho * zeta_prime(rho)));
    std::vector<KalmarRow> rows;
    rows.reserve(limits.size());
    for (const std::uint64_t x : limits) {
        MomentReport r = moment_sum('g', 1.0, x, table, memo, chunk_size, threads);
        KalmarRow row;
        row.x = x;
        row.sum_g = *r.exact_sum;
        const long double log_pred =
            static_cast<long double>(rho) * logl(static_cast<long double>(x)) + log_k;
        row.ratio = static_cast<double>(expl(log_exact(row.sum_g) - log_pred));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace factlab
