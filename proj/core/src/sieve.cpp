#include "factlab/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "factlab/errors.hpp"
#include "factlab/parallel.hpp"

namespace factlab {

namespace {

constexpr std::uint64_t kSegment = 1u << 20;
constexpr unsigned kHistSlots = 64;  // omega(n) < 64 for any 64-bit n

// Walks the spf chain of n.  Yields (distinct prime count, squarefree).
inline std::pair<unsigned, bool> omega_squarefree(const std::vector<std::uint32_t>& spf,
                                                  std::uint64_t n) {
    unsigned k = 0;
    bool squarefree = true;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint32_t p = spf[m];
        ++k;
        m /= p;
        if (m % p == 0) {
            squarefree = false;
            do m /= p; while (m % p == 0);
        }
    }
    return {k, squarefree};
}

struct HistPartial {
    std::array<std::uint64_t, kHistSlots> hist{};
    std::array<std::uint64_t, kHistSlots> hist_sqfree{};
    std::uint64_t primes = 0;
};

}  // namespace

std::uint64_t PrimeFactorization::value() const {
    std::uint64_t n = 1;
    for (const auto& [p, e] : pairs)
        for (std::uint32_t i = 0; i < e; ++i) n *= p;
    return n;
}

std::uint64_t PrimeSignature::packed() const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (i >= 10 || exponents[i] > 63)
            throw std::invalid_argument("PrimeSignature::packed: signature too large");
        key |= static_cast<std::uint64_t>(exponents[i]) << (6 * i);
    }
    return key;
}

PrimeSignature signature_of(const PrimeFactorization& fact) {
    PrimeSignature sig;
    sig.exponents.reserve(fact.pairs.size());
    for (const auto& [p, e] : fact.pairs) sig.exponents.push_back(e);
    std::sort(sig.exponents.begin(), sig.exponents.end(), std::greater<>());
    return sig;
}

SieveTable SieveTable::build(std::uint64_t limit, unsigned threads,
                             std::uint64_t memory_budget_bytes) {
    if (limit < 2)
        throw std::invalid_argument("SieveTable::build: limit must be >= 2");
    if (limit > kMaxLimit)
        throw std::invalid_argument("SieveTable::build: limit exceeds 2^32 - 1");
    const std::uint64_t bytes = 4 * (limit + 1);
    if (bytes > memory_budget_bytes)
        throw resource_error("SieveTable::build: spf array needs " + std::to_string(bytes) +
                             " bytes, budget is " + std::to_string(memory_budget_bytes));

    SieveTable table;
    table.limit_ = limit;
    table.spf_.assign(limit + 1, 0);

    // Base primes up to sqrt(limit).
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<std::uint32_t> base;
    {
        std::vector<bool> composite(root + 1, false);
        for (std::uint64_t p = 2; p <= root; ++p) {
            if (composite[p]) continue;
            base.push_back(static_cast<std::uint32_t>(p));
            for (std::uint64_t m = p * p; m <= root; m += p) composite[m] = true;
        }
    }

    // Mark smallest prime factors segment by segment.  Iterating base
    // primes in ascending order and writing only unset slots makes the
    // smallest factor win; segments are disjoint, so the result does not
    // depend on how they are distributed over threads.
    auto& spf = table.spf_;
    run_chunked<int>(2, limit + 1, kSegment, threads,
                     [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
                         for (const std::uint32_t p : base) {
                             const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
                             if (p2 >= hi) break;
                             std::uint64_t m = std::max(p2, ((lo + p - 1) / p) * static_cast<std::uint64_t>(p));
                             for (; m < hi; m += p)
                                 if (spf[m] == 0) spf[m] = p;
                         }
                         for (std::uint64_t n = lo; n < hi; ++n)
                             if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(n);
                         return 0;
                     });

    table.build_histograms(threads);
    return table;
}

void SieveTable::build_histograms(unsigned threads) {
    auto partials = run_chunked<HistPartial>(
        2, limit_ + 1, kSegment, threads,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            HistPartial part;
            for (std::uint64_t n = lo; n < hi; ++n) {
                const auto [k, squarefree] = omega_squarefree(spf_, n);
                ++part.hist[k];
                if (squarefree) ++part.hist_sqfree[k];
                if (spf_[n] == n) ++part.primes;
            }
            return part;
        });

    std::array<std::uint64_t, kHistSlots> hist{}, hist_sqfree{};
    prime_count_ = 0;
    for (const auto& part : partials) {  // ascending chunk order
        for (unsigned k = 0; k < kHistSlots; ++k) {
            hist[k] += part.hist[k];
            hist_sqfree[k] += part.hist_sqfree[k];
        }
        prime_count_ += part.primes;
    }

    max_omega_ = 0;
    for (unsigned k = 0; k < kHistSlots; ++k)
        if (hist[k] > 0) max_omega_ = k;
    omega_hist_.assign(hist.begin(), hist.begin() + max_omega_ + 1);
    omega_sqfree_hist_.assign(hist_sqfree.begin(), hist_sqfree.begin() + max_omega_ + 1);
}

std::uint32_t SieveTable::spf(std::uint64_t n) const {
    if (n < 2 || n > limit_)
        throw std::invalid_argument("SieveTable::spf: n out of range");
    return spf_[n];
}

bool SieveTable::is_prime(std::uint64_t n) const { return spf(n) == n; }

bool SieveTable::is_squarefree(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw std::invalid_argument("SieveTable::is_squarefree: n out of range");
    if (n == 1) return true;
    return omega_squarefree(spf_, n).second;
}

unsigned SieveTable::omega(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw std::invalid_argument("SieveTable::omega: n out of range");
    if (n == 1) return 0;
    return omega_squarefree(spf_, n).first;
}

PrimeFactorization SieveTable::factorize(std::uint64_t n) const {
    if (n < 2 || n > limit_)
        throw std::invalid_argument("SieveTable::factorize: n out of range");
    PrimeFactorization fact;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint32_t p = spf_[m];
        std::uint32_t e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        fact.pairs.emplace_back(p, e);
    }
    return fact;
}

PrimeSignature SieveTable::signature(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw std::invalid_argument("SieveTable::signature: n out of range");
    if (n == 1) return {};
    return signature_of(factorize(n));
}

std::uint64_t SieveTable::pi_xk(unsigned k) const {
    if (k == 0) return 1;  // n = 1, by convention
    if (k >= omega_hist_.size()) return 0;
    return omega_hist_[k];
}

std::uint64_t SieveTable::pi_prime_xk(unsigned k) const {
    if (k == 0) return 1;  // n = 1 is squarefree
    if (k >= omega_sqfree_hist_.size()) return 0;
    return omega_sqfree_hist_[k];
}

std::uint64_t SieveTable::squarefree_count() const {
    std::uint64_t total = 1;  // n = 1
    for (const auto c : omega_sqfree_hist_) total += c;
    return total;
}

namespace {

constexpr char kMagic[5] = {'F', 'L', 'S', 'V', '1'};

void put_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64_le(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

void SieveTable::dump(std::ostream& out) const {
    out.write(kMagic, 5);
    put_u64_le(out, limit_);
    // Entries are little-endian 32-bit; on a little-endian host the array
    // bytes can go out verbatim.
    static_assert(std::endian::native == std::endian::little,
                  "dump assumes a little-endian host");
    out.write(reinterpret_cast<const char*>(spf_.data() + 2),
              static_cast<std::streamsize>(4 * (limit_ - 1)));
}

void SieveTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("SieveTable::save: cannot open " + path);
    dump(out);
    if (!out) throw std::runtime_error("SieveTable::save: write failed for " + path);
}

SieveTable SieveTable::load_stream(std::istream& in, unsigned threads) {
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("SieveTable::load: bad magic");
    const std::uint64_t limit = get_u64_le(in);
    if (!in || limit < 2 || limit > kMaxLimit)
        throw std::runtime_error("SieveTable::load: bad limit field");

    SieveTable table;
    table.limit_ = limit;
    table.spf_.assign(limit + 1, 0);
    static_assert(std::endian::native == std::endian::little);
    in.read(reinterpret_cast<char*>(table.spf_.data() + 2),
            static_cast<std::streamsize>(4 * (limit - 1)));
    if (!in || static_cast<std::uint64_t>(in.gcount()) != 4 * (limit - 1))
        throw std::runtime_error("SieveTable::load: truncated spf array");
    in.peek();
    if (!in.eof())
        throw std::runtime_error("SieveTable::load: trailing bytes after spf array");

    // Structural validation: every entry must divide its index, share its
    // parity class, and be either the index itself or at most sqrt(n).
    auto checks = run_chunked<bool>(
        2, limit + 1, kSegment, threads,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t n = lo; n < hi; ++n) {
                const std::uint64_t p = table.spf_[n];
                if (p < 2 || n % p != 0) return false;
                if ((p == 2) != (n % 2 == 0)) return false;
                if (p != n && p * p > n) return false;
            }
            return true;
        });
    for (const bool ok : checks)
        if (!ok) throw std::runtime_error("SieveTable::load: corrupt spf data");

    table.build_histograms(threads);
    return table;
}

SieveTable SieveTable::load(const std::string& path, unsigned threads) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("SieveTable::load: cannot open " + path);
    return load_stream(in, threads);
}

void SieveTable::write_pik_csv(std::ostream& out) const {
    out << "k,pi_xk,pi_prime_xk\n";
    for (unsigned k = 0; k <= max_omega_; ++k)
        out << k << ',' << pi_xk(k) << ',' << pi_prime_xk(k) << '\n';
}

}  // namespace factlab
