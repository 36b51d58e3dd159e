#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace factlab {

// Exact factorization of n: (prime, exponent) pairs, primes strictly
// increasing, exponents >= 1.
struct PrimeFactorization {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> pairs;

    std::uint64_t value() const;  // reconstructs n
    unsigned omega() const { return static_cast<unsigned>(pairs.size()); }
};

// The exponent multiset of n, sorted descending.  f and g depend on n only
// through this, which is why it is the memoization key for both.
struct PrimeSignature {
    std::vector<std::uint32_t> exponents;  // sorted descending

    bool operator==(const PrimeSignature&) const = default;
    auto operator<=>(const PrimeSignature&) const = default;

    std::size_t size() const { return exponents.size(); }
    bool empty() const { return exponents.empty(); }

    // Packs up to 10 exponents (each <= 63) into a 64-bit key, 6 bits per
    // slot.  Always sufficient for signatures arising below 2^32.
    std::uint64_t packed() const;
};

PrimeSignature signature_of(const PrimeFactorization& fact);

// Smallest-prime-factor table over [2, limit] with omega histograms
// computed once at construction.  Immutable afterwards and safe to share
// read-only across threads.
class SieveTable {
public:
    // Largest representable limit: spf entries are 32-bit.
    static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;
    // Default allocation budget for the spf array (bytes).
    static constexpr std::uint64_t kDefaultMemoryBudget = 8ull << 30;

    // threads = 0 picks the default pool size (FACTLAB_THREADS or hardware).
    static SieveTable build(std::uint64_t limit, unsigned threads = 0,
                            std::uint64_t memory_budget_bytes = kDefaultMemoryBudget);

    std::uint64_t limit() const { return limit_; }

    // smallest prime factor of n, n in [2, limit]
    std::uint32_t spf(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;
    bool is_squarefree(std::uint64_t n) const;  // n in [1, limit]; 1 is squarefree

    unsigned omega(std::uint64_t n) const;  // n in [1, limit]; omega(1) = 0
    PrimeFactorization factorize(std::uint64_t n) const;  // n in [2, limit]
    PrimeSignature signature(std::uint64_t n) const;      // signature(1) is empty

    // Number of n <= limit with omega(n) = k.  k = 0 counts n = 1.
    std::uint64_t pi_xk(unsigned k) const;
    // Same restricted to squarefree n; k = 0 counts n = 1.
    std::uint64_t pi_prime_xk(unsigned k) const;

    unsigned max_omega() const { return max_omega_; }
    std::uint64_t prime_count() const { return prime_count_; }
    std::uint64_t squarefree_count() const;

    // Raw histograms over n in [2, limit] (n = 1 excluded, handled by the
    // accessors above); index k up to max_omega().
    const std::vector<std::uint64_t>& omega_hist() const { return omega_hist_; }
    const std::vector<std::uint64_t>& omega_sqfree_hist() const { return omega_sqfree_hist_; }

    // Binary dump: "FLSV1", limit as 8-byte little-endian, then the spf
    // entries for n = 2..limit as 4-byte little-endian values.
    void save(const std::string& path) const;
    void dump(std::ostream& out) const;
    // Load validates the magic, the size and the structural integrity of
    // every entry (divisibility, parity, spf <= sqrt(n) unless prime).
    static SieveTable load(const std::string& path, unsigned threads = 0);
    static SieveTable load_stream(std::istream& in, unsigned threads = 0);

    // CSV rows (k, pi_xk, pi_prime_xk) for k = 0..max_omega, header included.
    void write_pik_csv(std::ostream& out) const;

private:
    SieveTable() = default;
    void build_histograms(unsigned threads);

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;  // indexed by n, entries 0 and 1 unused
    std::vector<std::uint64_t> omega_hist_;
    std::vector<std::uint64_t> omega_sqfree_hist_;
    std::uint64_t prime_count_ = 0;
    unsigned max_omega_ = 0;
};

}  // namespace factlab
