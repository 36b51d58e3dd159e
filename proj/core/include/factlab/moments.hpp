#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "factlab/asymptotics.hpp"
#include "factlab/exact_int.hpp"
#include "factlab/factor_counts.hpp"
#include "factlab/log_value.hpp"
#include "factlab/sieve.hpp"

namespace factlab {

// Summation knobs shared by the CLI subcommands.  With a fixed chunk_size
// the results are independent of thread_count: chunks are laid out on a
// fixed grid and merged in ascending index order.
struct RunConfig {
    std::uint64_t limit = 0;
    std::uint64_t chunk_size = 1 << 16;
    unsigned thread_count = 0;  // 0 = FACTLAB_THREADS or hardware default
    std::string output_format = "csv";
    std::string output_path;
    std::string sieve_cache;
};

struct MomentReport {
    char fn;  // 'f', 'g', 'F', 'G'
    double beta;
    std::uint64_t limit;
    std::optional<ExactInt> exact_sum;  // present iff beta is an integer >= 0
    LogValue log_sum;
    std::chrono::duration<double> elapsed{};
    std::optional<Prediction> prediction;    // when a growth law applies at this scale
    std::optional<long double> log_ratio;    // log_sum - predicted log
};

// Sum of fn(n)^beta over n in [1, limit].  F and G go through the
// histogram identity sum_k B_k^beta pi(x,k); f and g walk every n through
// the signature memo (which must not be mutated concurrently; the memo is
// prepopulated here before the parallel part).  Integer beta >= 0
// accumulates exactly, every beta also gets a compensated log-space sum.
MomentReport moment_sum(char fn, double beta, std::uint64_t limit, const SieveTable& table,
                        CountMemo& memo, std::uint64_t chunk_size = 1 << 16,
                        unsigned threads = 0);

// The per-n route for F/G (no histogram): the independent cross-check.
MomentReport moment_sum_per_n(char fn, double beta, std::uint64_t limit,
                              const SieveTable& table, CountMemo& memo,
                              std::uint64_t chunk_size = 1 << 16, unsigned threads = 0);

// Omega histogram of [2, limit] for limit <= table.limit (pi rows of a
// prefix of the table).
std::vector<std::uint64_t> omega_hist_prefix(const SieveTable& table, std::uint64_t limit,
                                             std::uint64_t chunk_size = 1 << 16,
                                             unsigned threads = 0);

struct KalmarRow {
    std::uint64_t x;
    ExactInt sum_g;
    double ratio;  // sum_g / (K x^rho)
};

// Exact sum of g up to each requested limit with the ratio to the Kalmar
// first-moment law K x^rho.
std::vector<KalmarRow> kalmar_trend(const std::vector<std::uint64_t>& limits,
                                    const SieveTable& table, CountMemo& memo,
                                    std::uint64_t chunk_size = 1 << 16,
                                    unsigned threads = 0);

}  // namespace factlab
