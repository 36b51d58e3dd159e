#include "factlab/factor_counts.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "factlab/combinatorics.hpp"

namespace factlab {

namespace {

constexpr std::uint32_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Minimal n with the given signature: descending exponents on ascending
// primes.  Signatures from any sieve range instantiate below 2^64.
std::uint64_t canonical_value(const PrimeSignature& sig) {
    if (sig.size() > std::size(kSmallPrimes))
        throw std::invalid_argument("factor_counts: signature has too many parts");
    long double magnitude = 0.0L;
    for (std::size_t i = 0; i < sig.size(); ++i)
        magnitude += sig.exponents[i] * logl(static_cast<long double>(kSmallPrimes[i]));
    if (magnitude > 62.0L * 0.6931L)
        throw std::invalid_argument("factor_counts: signature too large for exact evaluation");
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < sig.size(); ++i)
        for (std::uint32_t e = 0; e < sig.exponents[i]; ++e) n *= kSmallPrimes[i];
    return n;
}

// Divisor list of the canonical instantiation, generated straight from
// the exponent pattern.
std::vector<std::uint64_t> divisors_of_signature(const PrimeSignature& sig) {
    std::vector<std::uint64_t> divs{1};
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const std::size_t base = divs.size();
        std::uint64_t pw = 1;
        for (std::uint32_t e = 0; e < sig.exponents[i]; ++e) {
            pw *= kSmallPrimes[i];
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// f(m, cap) = sum over divisors 1 < d <= cap of f(m/d, d); counts
// multisets of parts >= 2 by forcing a nonincreasing choice order.
ExactInt f_recursive(std::uint64_t m, std::uint64_t cap,
                     const std::vector<std::uint64_t>& divs,
                     std::map<std::pair<std::uint64_t, std::uint64_t>, ExactInt>& memo) {
    if (m == 1) return 1;
    if (cap > m) cap = m;
    const auto key = std::make_pair(m, cap);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ExactInt total = 0;
    for (const std::uint64_t d : divs) {
        if (d < 2) continue;
        if (d > cap) break;
        if (m % d == 0) total += f_recursive(m / d, d, divs, memo);
    }
    memo.emplace(key, total);
    return total;
}

PrimeSignature sorted_signature(std::vector<std::uint32_t> exps) {
    std::erase(exps, 0u);
    std::sort(exps.begin(), exps.end(), std::greater<>());
    return PrimeSignature{std::move(exps)};
}

}  // namespace

// g(sig) = sum over divisor exponent tuples (0 <= d_i <= e_i, not all zero)
// of g applied to the quotient signature; each tuple is one divisor d > 1.
ExactInt CountMemo::g_recursive(const PrimeSignature& sig) {
    if (sig.empty()) return 1;
    if (auto it = g_partial_.find(sig); it != g_partial_.end()) return it->second;

    const std::size_t parts = sig.size();
    std::vector<std::uint32_t> tuple(parts, 0);
    ExactInt total = 0;
    for (;;) {
        // odometer increment
        std::size_t pos = 0;
        while (pos < parts && tuple[pos] == sig.exponents[pos]) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == parts) break;
        ++tuple[pos];

        std::vector<std::uint32_t> quotient(parts);
        for (std::size_t i = 0; i < parts; ++i) quotient[i] = sig.exponents[i] - tuple[i];
        total += g_recursive(sorted_signature(std::move(quotient)));
    }
    g_partial_.emplace(sig, total);
    return total;
}

const CountMemo::Entry& CountMemo::entry_unlocked(const PrimeSignature& sig) {
    if (auto it = by_signature_.find(sig); it != by_signature_.end()) return it->second;

    Entry e;
    const std::uint64_t n = canonical_value(sig);
    const auto divs = divisors_of_signature(sig);
    std::map<std::pair<std::uint64_t, std::uint64_t>, ExactInt> f_memo;
    e.f = f_recursive(n, n, divs, f_memo);
    e.g = g_recursive(sig);
    if (e.f < 1 || e.g < 1)
        throw std::logic_error("factor_counts: counts must be >= 1");
    e.log_f = log_exact(e.f);
    e.log_g = log_exact(e.g);

    auto [it, inserted] = by_signature_.emplace(sig, std::move(e));
    packed_index_[sig.packed()] = &it->second;
    return it->second;
}

const CountMemo::Entry& CountMemo::entry(const PrimeSignature& sig) {
    std::lock_guard<std::mutex> lock(mu_);
    return entry_unlocked(sig);
}

void CountMemo::prepopulate(std::uint64_t limit) {
    std::lock_guard<std::mutex> lock(mu_);
    // DFS over nonincreasing exponent tuples whose minimal representative
    // stays below the limit; these are exactly the signatures that occur.
    std::vector<std::uint32_t> exps;
    auto descend = [&](auto&& self, std::uint64_t value, std::uint32_t max_exp) -> void {
        entry_unlocked(PrimeSignature{exps});
        const std::size_t depth = exps.size();
        if (depth >= std::size(kSmallPrimes)) return;
        const std::uint64_t p = kSmallPrimes[depth];
        std::uint64_t v = value;
        for (std::uint32_t e = 1; e <= max_exp; ++e) {
            if (v > limit / p) break;
            v *= p;
            exps.push_back(e);
            self(self, v, e);
            exps.pop_back();
        }
    };
    descend(descend, 1, 63);
}

const CountMemo::Entry* CountMemo::find_packed(std::uint64_t key) const {
    const auto it = packed_index_.find(key);
    return it == packed_index_.end() ? nullptr : it->second;
}

std::size_t CountMemo::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return by_signature_.size();
}

CountMemo& global_count_memo() {
    static CountMemo memo;
    return memo;
}

ExactInt f_count(const PrimeSignature& sig) { return global_count_memo().f(sig); }
ExactInt g_count(const PrimeSignature& sig) { return global_count_memo().g(sig); }

ExactInt f_count(const SieveTable& table, std::uint64_t n) {
    return f_count(table.signature(n));
}
ExactInt g_count(const SieveTable& table, std::uint64_t n) {
    return g_count(table.signature(n));
}

ExactInt F_count(unsigned omega) { return bell(omega); }
ExactInt G_count(unsigned omega) { return fubini(omega); }
ExactInt F_count(const SieveTable& table, std::uint64_t n) { return bell(table.omega(n)); }
ExactInt G_count(const SieveTable& table, std::uint64_t n) { return fubini(table.omega(n)); }

namespace {

constexpr std::uint64_t kOracleLimit = 1000000;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Enumerates nonincreasing factor tuples of m with parts in [2, cap].
// leaf() receives the multiset of chosen parts.
template <class Leaf>
void enumerate_tuples(std::uint64_t m, std::uint64_t cap, bool coprime,
                      std::vector<std::uint64_t>& chosen, Leaf&& leaf) {
    if (m == 1) {
        leaf(chosen);
        return;
    }
    for (std::uint64_t d = std::min(cap, m); d >= 2; --d) {
        if (m % d != 0) continue;
        if (coprime) {
            bool ok = true;
            for (const std::uint64_t prev : chosen)
                if (gcd_u64(prev, d) != 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
        }
        chosen.push_back(d);
        enumerate_tuples(m / d, d, coprime, chosen, static_cast<Leaf&&>(leaf));
        chosen.pop_back();
    }
}

}  // namespace

std::uint64_t oracle_unordered(std::uint64_t n, bool coprime) {
    if (n < 1 || n > kOracleLimit)
        throw std::invalid_argument("oracle_unordered: n outside the oracle range [1, 1e6]");
    std::uint64_t count = 0;
    std::vector<std::uint64_t> chosen;
    enumerate_tuples(n, n, coprime, chosen, [&](const std::vector<std::uint64_t>&) { ++count; });
    return count;
}

std::uint64_t oracle_ordered(std::uint64_t n, bool coprime) {
    if (n < 1 || n > kOracleLimit)
        throw std::invalid_argument("oracle_ordered: n outside the oracle range [1, 1e6]");
    std::uint64_t factorial[21] = {1};
    for (unsigned i = 1; i <= 20; ++i) factorial[i] = factorial[i - 1] * i;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> chosen;
    // orderings of one multiset = len! / prod(multiplicity!)
    enumerate_tuples(n, n, coprime, chosen, [&](const std::vector<std::uint64_t>& parts) {
        std::uint64_t perms = factorial[parts.size()];
        std::size_t i = 0;
        while (i < parts.size()) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == parts[i]) ++j;
            perms /= factorial[j - i];
            i = j;
        }
        count += perms;
    });
    return count;
}

}  // namespace factlab
