#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>

#include "factlab/exact_int.hpp"
#include "factlab/sieve.hpp"

namespace factlab {

// Memoized exact values of f (unordered factorizations into parts >= 2)
// and g (ordered ditto), keyed by prime signature: both depend on n only
// through its exponent pattern.  On-demand queries are mutex-guarded;
// prepopulate() fills every signature occurring below a limit so that the
// packed-key lookups can then run lock-free across threads.
class CountMemo {
public:
    struct Entry {
        ExactInt f;
        ExactInt g;
        long double log_f;
        long double log_g;
    };

    const Entry& entry(const PrimeSignature& sig);
    ExactInt f(const PrimeSignature& sig) { return entry(sig).f; }
    ExactInt g(const PrimeSignature& sig) { return entry(sig).g; }

    // Computes f and g for every signature whose minimal representative is
    // <= limit (those are exactly the signatures occurring in [1, limit]).
    void prepopulate(std::uint64_t limit);

    // Lock-free lookup by PrimeSignature::packed() key.  Valid only for
    // keys covered by a prior prepopulate()/entry() call; returns nullptr
    // for unknown keys.
    const Entry* find_packed(std::uint64_t key) const;

    std::size_t size() const;

private:
    const Entry& entry_unlocked(const PrimeSignature& sig);
    ExactInt g_recursive(const PrimeSignature& sig);

    mutable std::mutex mu_;
    std::map<PrimeSignature, Entry> by_signature_;
    std::unordered_map<std::uint64_t, const Entry*> packed_index_;
    std::map<PrimeSignature, ExactInt> g_partial_;  // recursion intermediates
};

// Process-wide memo used by the free functions below.
CountMemo& global_count_memo();

// f(n), g(n) through the signature; f(1) = g(1) = 1 (empty factorization).
ExactInt f_count(const PrimeSignature& sig);
ExactInt g_count(const PrimeSignature& sig);
ExactInt f_count(const SieveTable& table, std::uint64_t n);
ExactInt g_count(const SieveTable& table, std::uint64_t n);

// Coprime variants collapse to Bell / ordered Bell numbers of omega(n).
ExactInt F_count(unsigned omega);
ExactInt G_count(unsigned omega);
ExactInt F_count(const SieveTable& table, std::uint64_t n);
ExactInt G_count(const SieveTable& table, std::uint64_t n);

// Enumeration oracles: explicit factor-tuple walks, nothing shared with
// the recursions above.  Guarded to n <= 1e6.
std::uint64_t oracle_unordered(std::uint64_t n, bool coprime);
std::uint64_t oracle_ordered(std::uint64_t n, bool coprime);

}  // namespace factlab
