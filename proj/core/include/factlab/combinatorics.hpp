#pragma once

#include <cstdint>

#include "factlab/exact_int.hpp"
#include "factlab/log_value.hpp"

namespace factlab {

// Exact Bell and ordered-Bell (Fubini) numbers from integer recurrences.
// The process-wide caches grow monotonically and are never evicted; growth
// is mutex-guarded, reads of already-computed entries are lock-free.
const ExactInt& bell(unsigned k);
const ExactInt& fubini(unsigned k);

// Precompute caches up to k before unguarded parallel reads.
void ensure_bell(unsigned k);
void ensure_fubini(unsigned k);

// log B_k / log a_k from the exact integers.
long double log_bell_exact(unsigned k);
long double log_fubini_exact(unsigned k);

// de Bruijn's five-term expansion of log B_k (natural logs), k >= 3:
//   k log k - k loglog k - k + k loglog k/log k + k/log k
LogValue log_bell_debruijn(unsigned k);

// Moser-Wyman's saddle-point formula with h = 0 (main factor only):
//   B_k ~ k!/W(k)^k * exp(e^{W(k)} - 1) / sqrt(2 pi (W^2 + W) e^W)
LogValue log_bell_moser_wyman(unsigned k);  // k >= 1

// Sklar's main term for the ordered Bell numbers, k >= 1:
//   a_k ~ 1/(2 log 2) * k!/(log 2)^k
LogValue log_fubini_asymptotic(unsigned k);

// B_{k+1}/B_k ~ (k+1)/W(k), k >= 1.
double bell_ratio_approx(unsigned k);

// Exact logs below these bounds, asymptotic formulas above; used by the
// k-scans that go far beyond what exact recurrences can reach.
inline constexpr unsigned kBellExactScanLimit = 1200;
inline constexpr unsigned kFubiniExactScanLimit = 400;
long double log_bell_hybrid(std::uint64_t k);
long double log_fubini_hybrid(std::uint64_t k);

// Brute-force oracles (test instruments; guarded small).
// Counts set partitions of {1..k} by enumerating restricted-growth strings.
std::uint64_t enumerate_set_partitions(unsigned k);  // k <= 12
// Sum over set partitions of (number of blocks)!, i.e. the ordered count.
std::uint64_t enumerate_ordered_partitions(unsigned k);  // k <= 10

}  // namespace factlab
