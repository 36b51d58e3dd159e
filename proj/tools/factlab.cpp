// factlab: factorization-counting laboratory.
//
// Subcommands: sieve, counts, moments, pik, constants, predict, maxterm,
// verify, bench, kalmar, bell.  Results go to stdout (CSV or a single JSON
// object per invocation); timings and progress notes go to stderr so that
// stdout stays byte-identical across thread counts.
//
// Exit codes: 0 success, 1 verification/computation failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "factlab/asymptotics.hpp"
#include "factlab/combinatorics.hpp"
#include "factlab/errors.hpp"
#include "factlab/factor_counts.hpp"
#include "factlab/moments.hpp"
#include "factlab/parallel.hpp"
#include "factlab/sieve.hpp"
#include "factlab/special_functions.hpp"
#include "factlab/verify.hpp"

using json = nlohmann::ordered_json;
using namespace factlab;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic text form of a long double; JSON numbers are emitted as
// doubles when they fit, decimal strings beyond that.
std::string format_real(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.21Lg", v);
    return buf;
}

json json_real(long double v) {
    const double d = static_cast<double>(v);
    if (std::isfinite(v) && std::fabs(v) <= 1.7976931348623157e308L && std::isfinite(d))
        return d;
    return format_real(v);
}

std::uint64_t parse_limit(double raw, const char* what) {
    if (!(raw >= 1.0) || raw > 4294967295.0 || raw != std::floor(raw))
        throw UsageError(std::string(what) + " must be an integer in [1, 2^32-1]");
    return static_cast<std::uint64_t>(raw);
}

RunConfig make_config(double limit, double chunk_size, unsigned threads,
                      const std::string& format, const std::string& output,
                      const std::string& cache) {
    RunConfig cfg;
    cfg.limit = parse_limit(limit, "--limit");
    cfg.chunk_size = parse_limit(chunk_size, "--chunk-size");
    cfg.thread_count = threads;
    cfg.output_format = format;
    cfg.output_path = output;
    cfg.sieve_cache = cache;
    return cfg;
}

// Loads the sieve from the cache when the file exists and matches the
// requested limit; builds (and caches, if asked) otherwise.  A sieve
// covers at least [2, 2], so summation limits of 1 still get a table.
SieveTable obtain_sieve(std::uint64_t limit, const std::string& cache_path,
                        unsigned threads, bool write_cache) {
    if (limit < 2) limit = 2;
    bool cache_exists = false;
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        cache_exists = true;
        try {
            SieveTable table = SieveTable::load(cache_path, threads);
            if (table.limit() == limit) {
                std::cerr << "loaded sieve cache " << cache_path << " (limit " << limit
                          << ")\n";
                return table;
            }
            std::cerr << "sieve cache " << cache_path << " has limit " << table.limit()
                      << ", rebuilding for " << limit << "\n";
        } catch (const std::exception& e) {
            std::cerr << "sieve cache " << cache_path << " rejected: " << e.what()
                      << "; rebuilding\n";
        }
    }
    SieveTable table = SieveTable::build(limit, threads);
    // A fresh cache file is always written; a mismatched existing one is
    // only replaced by the sieve subcommand itself.
    if (!cache_path.empty() && (write_cache || !cache_exists)) {
        table.save(cache_path);
        std::cerr << "wrote sieve cache " << cache_path << "\n";
    }
    return table;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

long double read_vm_hwm_bytes() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream is(line.substr(6));
            long double kb = 0;
            is >> kb;
            return kb * 1024.0L;
        }
    }
    return 0.0L;
}

json prediction_json(const Prediction& p) {
    json c = json::object();
    for (const auto& [name, value] : p.components) c[name] = json_real(value);
    return json{{"theorem", theorem_name(p.theorem)},
                {"beta", p.beta},
                {"log_sum", json_real(p.log_of_sum.log)},
                {"components", c}};
}

int cmd_sieve(std::uint64_t limit, const std::string& cache, unsigned threads) {
    const SieveTable table = obtain_sieve(limit, cache, threads, /*write_cache=*/true);
    json out{{"limit", table.limit()},
             {"prime_count", table.prime_count()},
             {"max_omega", table.max_omega()},
             {"squarefree_count", table.squarefree_count()}};
    out["cache"] = cache.empty() ? json(nullptr) : json(cache);
    std::cout << out.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_counts(std::uint64_t from, std::uint64_t to, const std::string& format,
               const std::string& output, const std::string& cache, unsigned threads) {
    if (from < 1 || from > to) throw UsageError("counts: need 1 <= from <= to");
    const SieveTable table = obtain_sieve(to, cache, threads, false);
    CountMemo& memo = global_count_memo();
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    if (format == "csv") {
        out << "n,omega,f,g,F,G\n";
        for (std::uint64_t n = from; n <= to; ++n) {
            const unsigned k = table.omega(n);
            const auto& e = memo.entry(table.signature(n));
            out << n << ',' << k << ',' << e.f << ',' << e.g << ',' << bell(k) << ','
                << fubini(k) << '\n';
        }
    } else if (format == "json") {
        json rows = json::array();
        for (std::uint64_t n = from; n <= to; ++n) {
            const unsigned k = table.omega(n);
            const auto& e = memo.entry(table.signature(n));
            rows.push_back({{"n", n},
                            {"omega", k},
                            {"f", e.f.str()},
                            {"g", e.g.str()},
                            {"F", bell(k).str()},
                            {"G", fubini(k).str()}});
        }
        out << json{{"rows", rows}}.dump(2) << "\n";
    } else {
        throw UsageError("counts: format must be csv or json");
    }
    return kExitSuccess;
}

int cmd_moments(const std::string& fn, double beta, const RunConfig& cfg) {
    if (fn.size() != 1 || std::string("fgFG").find(fn) == std::string::npos)
        throw UsageError("moments: --fn must be one of f, g, F, G");
    const SieveTable table =
        obtain_sieve(cfg.limit, cfg.sieve_cache, cfg.thread_count, false);
    CountMemo& memo = global_count_memo();
    const MomentReport r = moment_sum(fn[0], beta, cfg.limit, table, memo, cfg.chunk_size,
                                      cfg.thread_count);

    json out{{"fn", fn}, {"beta", beta}, {"limit", cfg.limit}};
    out["exact_sum"] = r.exact_sum ? json(r.exact_sum->str()) : json(nullptr);
    out["log_sum"] = json_real(r.log_sum.log);
    if (r.prediction) {
        out["prediction"] = prediction_json(*r.prediction);
        out["log_ratio"] = json_real(*r.log_ratio);
    } else {
        out["prediction"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << "moments: " << r.elapsed.count() << " s\n";
    return kExitSuccess;
}

int cmd_pik(std::uint64_t limit, const std::string& cache, unsigned threads,
            const std::string& output) {
    const SieveTable table = obtain_sieve(limit, cache, threads, false);
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    table.write_pik_csv(out);
    return kExitSuccess;
}

int cmd_constants() {
    const ConstantsReport r = constants_report();
    json arr = json::array();
    for (const auto& item : r.items()) {
        json j{{"name", item.name}, {"value", item.value}, {"residual", item.residual}};
        if (item.paper_value) j["paper_value"] = *item.paper_value;
        arr.push_back(j);
    }
    std::cout << json{{"constants", arr}}.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_predict(const std::string& theorem, double beta, long double logx) {
    TheoremId id;
    Prediction p;
    try {
        id = parse_theorem(theorem);
        p = predict(id, beta, LogScale(logx));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    json out{{"theorem", theorem_name(id)},
             {"beta", beta},
             {"logx", json_real(logx)},
             {"log_sum", json_real(p.log_of_sum.log)}};
    json comps = json::object();
    for (const auto& [name, value] : p.components) comps[name] = json_real(value);
    out["components"] = comps;
    std::cout << out.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_maxterm(const std::string& fn, double beta, bool exact, double limit_raw,
                long double logx, std::uint64_t k_limit, const std::string& cache,
                unsigned threads) {
    if (fn != "F" && fn != "G") throw UsageError("maxterm: --fn must be F or G");
    json out{{"fn", fn}, {"beta", beta}};
    if (exact) {
        const std::uint64_t limit = parse_limit(limit_raw, "maxterm --limit");
        const SieveTable table = obtain_sieve(limit, cache, threads, false);
        const MaxTermResult r = max_term_exact(fn[0], beta, table);
        out["mode"] = "exact";
        out["limit"] = limit;
        out["k_argmax"] = r.k;
        out["log_max"] = json_real(r.log_max.log);
    } else {
        if (!(logx > 0)) throw UsageError("maxterm: synthetic mode needs --logx");
        MaxTermResult r;
        try {
            r = max_term_synthetic(fn[0], beta, LogScale(logx), k_limit);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        out["mode"] = "synthetic";
        out["logx"] = json_real(logx);
        out["k_limit"] = k_limit;
        out["k_argmax"] = r.k;
        out["log_max"] = json_real(r.log_max.log);
    }
    std::cout << out.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_verify(const std::string& suite, std::uint64_t limit) {
    if (limit == 0) {
        if (suite == "oracle-counts") limit = 2000;
        else if (suite == "sandwich") limit = 100000;
        else if (suite == "kalmar-trend") limit = 1000000;
    }
    SuiteReport report;
    try {
        report = run_suite(suite, limit);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    json cases = json::array();
    for (const auto& c : report.cases) {
        json j{{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        cases.push_back(j);
    }
    std::cout << json{{"suite", report.suite},
                      {"limit", report.limit},
                      {"passed", report.passed},
                      {"cases", cases}}
                     .dump(2)
              << "\n";
    return report.passed ? kExitSuccess : kExitFailure;
}

int cmd_bench(const std::string& task, double size_raw, unsigned repeats,
              unsigned threads) {
    const std::uint64_t size = parse_limit(size_raw, "bench --size");
    if (repeats < 1) throw UsageError("bench: --repeats must be >= 1");
    if (task != "sieve" && task != "moments" && task != "pi-table")
        throw UsageError("bench: --task must be sieve, moments or pi-table");

    // the sieve (and a warm signature memo) are inputs for the non-sieve
    // tasks, not the measured work
    std::optional<SieveTable> table;
    if (task != "sieve") table.emplace(SieveTable::build(size, threads));
    if (task == "moments") global_count_memo().prepopulate(size);

    const auto run_task = [&] {
        if (task == "sieve") {
            const SieveTable t = SieveTable::build(size, threads);
            (void)t.prime_count();
        } else if (task == "moments") {
            CountMemo& memo = global_count_memo();
            (void)moment_sum('g', 1.0, size, *table, memo, 1 << 16, threads);
        } else {
            // recompute the full omega histogram from the spf chains
            const auto hist = omega_hist_prefix(*table, size - 1, 1 << 16, threads);
            std::uint64_t total = 1;
            for (const auto c : hist) total += c;
            if (total != size - 1) throw std::runtime_error("bench: pi-table sum mismatch");
        }
    };
    run_task();  // untimed warmup

    json runs = json::array();
    double best = 1e300, worst = 0;
    for (unsigned i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        run_task();
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        best = std::min(best, secs);
        worst = std::max(worst, secs);
        runs.push_back({{"seconds", secs},
                        {"throughput_n_per_sec", static_cast<double>(size) / secs}});
    }
    json out{{"task", task},
             {"size", size},
             {"threads", resolve_thread_count(threads)},
             {"runs", runs},
             {"spread", worst > 0 ? (worst - best) / worst : 0.0},
             {"memory_high_water_bytes", json_real(read_vm_hwm_bytes())}};
    std::cout << out.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_kalmar(const std::string& limits_csv, const std::string& cache, unsigned threads,
               std::uint64_t chunk_size) {
    std::vector<std::uint64_t> limits;
    std::stringstream ss(limits_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            limits.push_back(parse_limit(std::stod(tok), "kalmar limit"));
        } catch (const std::exception&) {
            throw UsageError("kalmar: cannot parse limit '" + tok + "'");
        }
    }
    if (limits.empty()) throw UsageError("kalmar: --limits is empty");
    const std::uint64_t max_limit = *std::max_element(limits.begin(), limits.end());
    const RunConfig cfg = make_config(static_cast<double>(max_limit),
                                      static_cast<double>(chunk_size), threads, "csv", "", cache);
    const SieveTable table =
        obtain_sieve(cfg.limit, cfg.sieve_cache, cfg.thread_count, false);
    CountMemo& memo = global_count_memo();
    const auto rows = kalmar_trend(limits, table, memo, cfg.chunk_size, cfg.thread_count);
    std::cout << "x,sum_g,ratio\n";
    char buf[32];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", row.ratio);
        std::cout << row.x << ',' << row.sum_g << ',' << buf << '\n';
    }
    return kExitSuccess;
}

int cmd_bell_table(unsigned kmax, const std::string& output) {
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    out << "k,bell,fubini,log_bell_debruijn,log_fubini_asymptotic,bell_ratio_approx\n";
    for (unsigned k = 0; k <= kmax; ++k) {
        out << k << ',' << bell(k) << ',' << fubini(k) << ',';
        if (k >= 3) out << format_real(log_bell_debruijn(k).log);
        out << ',';
        if (k >= 1) out << format_real(log_fubini_asymptotic(k).log);
        out << ',';
        if (k >= 1) out << format_real(bell_ratio_approx(k));
        out << '\n';
    }
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"factorization-counting laboratory"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "worker pool size (default: FACTLAB_THREADS or hardware)");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "build the spf sieve and report a summary");
    double sieve_limit = 0;
    std::string sieve_cache;
    sieve_cmd->add_option("--limit", sieve_limit, "sieve limit")->required();
    sieve_cmd->add_option("--cache", sieve_cache, "sieve cache file (load or create)");

    // counts
    auto* counts_cmd = app.add_subcommand("counts", "per-n table of omega, f, g, F, G");
    double counts_from = 1, counts_to = 0;
    std::string counts_format = "csv", counts_output, counts_cache;
    counts_cmd->add_option("--from", counts_from, "first n")->required();
    counts_cmd->add_option("--to", counts_to, "last n")->required();
    counts_cmd->add_option("--format", counts_format, "csv or json");
    counts_cmd->add_option("--output", counts_output, "output path (default stdout)");
    counts_cmd->add_option("--cache", counts_cache, "sieve cache file");

    // moments
    auto* moments_cmd = app.add_subcommand("moments", "sum of fn(n)^beta up to a limit");
    std::string moments_fn;
    double moments_beta = 1.0, moments_limit = 0;
    double moments_chunk = 65536;
    std::string moments_cache;
    moments_cmd->add_option("--fn", moments_fn, "one of f, g, F, G")->required();
    moments_cmd->add_option("--beta", moments_beta, "exponent")->required();
    moments_cmd->add_option("--limit", moments_limit, "summation limit")->required();
    moments_cmd->add_option("--chunk-size", moments_chunk, "summation chunk size");
    moments_cmd->add_option("--cache", moments_cache, "sieve cache file");

    // pik
    auto* pik_cmd = app.add_subcommand("pik", "CSV of (k, pi(x,k), pi'(x,k))");
    double pik_limit = 0;
    std::string pik_cache, pik_output;
    pik_cmd->add_option("--limit", pik_limit, "x")->required();
    pik_cmd->add_option("--cache", pik_cache, "sieve cache file");
    pik_cmd->add_option("--output", pik_output, "output path (default stdout)");

    // constants
    app.add_subcommand("constants", "evaluated named constants with residuals");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "growth-law predictor at a synthetic scale");
    std::string predict_theorem;
    double predict_beta = 1.0;
    long double predict_logx = 0;
    predict_cmd->add_option("--theorem", predict_theorem, "1.1..1.10, oppenheim, kalmar")
        ->required();
    predict_cmd->add_option("--beta", predict_beta, "exponent (default 1)");
    predict_cmd->add_option("--logx", predict_logx, "natural log of x")->required();

    // maxterm
    auto* maxterm_cmd = app.add_subcommand("maxterm", "argmax_k of B_k^beta pi(x,k) (or a_k)");
    std::string maxterm_fn = "F";
    double maxterm_beta = 1.0, maxterm_limit = 0;
    long double maxterm_logx = 0;
    double maxterm_klimit = 100000;
    bool maxterm_exact = false;
    std::string maxterm_cache;
    maxterm_cmd->add_option("--fn", maxterm_fn, "F or G");
    maxterm_cmd->add_option("--beta", maxterm_beta, "exponent");
    maxterm_cmd->add_flag("--exact", maxterm_exact, "scan the exact histogram");
    maxterm_cmd->add_option("--limit", maxterm_limit, "sieve limit (exact mode)");
    maxterm_cmd->add_option("--logx", maxterm_logx, "synthetic scale (synthetic mode)");
    maxterm_cmd->add_option("--klimit", maxterm_klimit, "synthetic scan bound");
    maxterm_cmd->add_option("--cache", maxterm_cache, "sieve cache file");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite;
    double verify_limit = 0;
    verify_cmd->add_option("--suite", verify_suite,
                           "oracle-counts | bell-fubini | special-fn | sandwich | kalmar-trend")
        ->required();
    verify_cmd->add_option("--limit", verify_limit, "suite limit (suite-specific default)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "timing report for a task");
    std::string bench_task;
    double bench_size = 0;
    unsigned bench_repeats = 3;
    bench_cmd->add_option("--task", bench_task, "sieve | moments | pi-table")->required();
    bench_cmd->add_option("--size", bench_size, "task size")->required();
    bench_cmd->add_option("--repeats", bench_repeats, "number of runs");

    // kalmar
    auto* kalmar_cmd = app.add_subcommand("kalmar", "exact sum of g with ratios to K x^rho");
    std::string kalmar_limits, kalmar_cache;
    double kalmar_chunk = 65536;
    kalmar_cmd->add_option("--limits", kalmar_limits, "comma-separated x values")->required();
    kalmar_cmd->add_option("--cache", kalmar_cache, "sieve cache file");
    kalmar_cmd->add_option("--chunk-size", kalmar_chunk, "summation chunk size");

    // bell table
    auto* bell_cmd = app.add_subcommand("bell", "CSV table of Bell/Fubini numbers and asymptotics");
    double bell_kmax = 30;
    std::string bell_output;
    bell_cmd->add_option("--kmax", bell_kmax, "largest k")->required();
    bell_cmd->add_option("--output", bell_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sieve_cmd->parsed())
            return cmd_sieve(parse_limit(sieve_limit, "sieve --limit"), sieve_cache, threads);
        if (counts_cmd->parsed())
            return cmd_counts(parse_limit(counts_from, "counts --from"),
                              parse_limit(counts_to, "counts --to"), counts_format,
                              counts_output, counts_cache, threads);
        if (moments_cmd->parsed())
            return cmd_moments(moments_fn, moments_beta,
                               make_config(moments_limit, moments_chunk, threads, "json", "",
                                           moments_cache));
        if (pik_cmd->parsed())
            return cmd_pik(parse_limit(pik_limit, "pik --limit"), pik_cache, threads,
                           pik_output);
        if (app.get_subcommand("constants")->parsed()) return cmd_constants();
        if (predict_cmd->parsed())
            return cmd_predict(predict_theorem, predict_beta, predict_logx);
        if (maxterm_cmd->parsed())
            return cmd_maxterm(maxterm_fn, maxterm_beta, maxterm_exact, maxterm_limit,
                               maxterm_logx,
                               parse_limit(maxterm_klimit, "maxterm --klimit"),
                               maxterm_cache, threads);
        if (verify_cmd->parsed())
            return cmd_verify(verify_suite, static_cast<std::uint64_t>(verify_limit));
        if (bench_cmd->parsed())
            return cmd_bench(bench_task, bench_size, bench_repeats, threads);
        if (kalmar_cmd->parsed())
            return cmd_kalmar(kalmar_limits, kalmar_cache, threads,
                              parse_limit(kalmar_chunk, "kalmar --chunk-size"));
        if (bell_cmd->parsed())
            return cmd_bell_table(static_cast<unsigned>(parse_limit(bell_kmax, "bell --kmax")),
                                  bell_output);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
