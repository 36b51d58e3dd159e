#include "factlab/combinatorics.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "factlab/special_functions.hpp"

namespace factlab {

namespace {

// Bell numbers via the Bell triangle.  The deque keeps references to
// finished entries stable while the cache grows; lookups are guarded, the
// returned references never mutate.
class BellCache {
public:
    BellCache() {
        exact_.push_back(1);  // B_0
        exact_.push_back(1);  // B_1
        row_ = {1};
    }

    const ExactInt& get(unsigned k) {
        std::lock_guard<std::mutex> lock(mu_);
        while (exact_.size() <= k) {
            std::vector<ExactInt> next;
            next.reserve(row_.size() + 1);
            next.push_back(row_.back());
            for (const ExactInt& v : row_) next.push_back(next.back() + v);
            exact_.push_back(next.back());
            row_ = std::move(next);
        }
        return exact_[k];
    }

private:
    std::mutex mu_;
    std::deque<ExactInt> exact_;
    std::vector<ExactInt> row_;  // last triangle row
};

// Fubini numbers via a_k = sum_{j=1}^{k} C(k,j) a_{k-j}.
class FubiniCache {
public:
    FubiniCache() { exact_.push_back(1); }  // a_0

    const ExactInt& get(unsigned k) {
        std::lock_guard<std::mutex> lock(mu_);
        while (exact_.size() <= k) {
            const unsigned n = static_cast<unsigned>(exact_.size());
            ExactInt total = 0;
            ExactInt binom = 1;  // C(n, j), updated incrementally
            for (unsigned j = 1; j <= n; ++j) {
                binom = binom * (n - j + 1) / j;
                total += binom * exact_[n - j];
            }
            exact_.push_back(std::move(total));
        }
        return exact_[k];
    }

private:
    std::mutex mu_;
    std::deque<ExactInt> exact_;
};

BellCache& bell_cache() {
    static BellCache cache;
    return cache;
}

FubiniCache& fubini_cache() {
    static FubiniCache cache;
    return cache;
}

}  // namespace

const ExactInt& bell(unsigned k) { return bell_cache().get(k); }
const ExactInt& fubini(unsigned k) { return fubini_cache().get(k); }
void ensure_bell(unsigned k) { bell_cache().get(k); }
void ensure_fubini(unsigned k) { fubini_cache().get(k); }

long double log_bell_exact(unsigned k) { return log_exact(bell(k)); }
long double log_fubini_exact(unsigned k) { return log_exact(fubini(k)); }

LogValue log_bell_debruijn(unsigned k) {
    if (k < 3)
        throw std::invalid_argument("log_bell_debruijn: needs k >= 3 (iterated logs)");
    const long double kl = k;
    const long double lk = logl(kl);
    const long double llk = logl(lk);
    return LogValue::from_log(kl * lk - kl * llk - kl + kl * llk / lk + kl / lk);
}

LogValue log_bell_moser_wyman(unsigned k) {
    if (k < 1)
        throw std::invalid_argument("log_bell_moser_wyman: needs k >= 1");
    const long double kl = k;
    const long double w = lambert_w(static_cast<double>(kl));
    const long double two_pi = 6.283185307179586476925286766559006L;
    return LogValue::from_log(lgammal(kl + 1.0L) - kl * logl(w) + (expl(w) - 1.0L) -
                              0.5L * logl(two_pi * (w * w + w) * expl(w)));
}

LogValue log_fubini_asymptotic(unsigned k) {
    if (k < 1)
        throw std::invalid_argument("log_fubini_asymptotic: needs k >= 1");
    const long double kl = k;
    const long double ln2 = 0.6931471805599453094172321214581766L;
    return LogValue::from_log(logl(1.0L / (2.0L * ln2)) + lgammal(kl + 1.0L) - kl * logl(ln2));
}

double bell_ratio_approx(unsigned k) {
    if (k < 1)
        throw std::invalid_argument("bell_ratio_approx: needs k >= 1");
    return (k + 1.0) / lambert_w(static_cast<double>(k));
}

long double log_bell_hybrid(std::uint64_t k) {
    if (k <= kBellExactScanLimit) return log_bell_exact(static_cast<unsigned>(k));
    // Moser-Wyman out here: relative error O(e^{-W(k)}) ~ log k / k.
    const long double kl = static_cast<long double>(k);
    const long double w = lambert_w(static_cast<double>(kl));
    const long double two_pi = 6.283185307179586476925286766559006L;
    return lgammal(kl + 1.0L) - kl * logl(w) + (expl(w) - 1.0L) -
           0.5L * logl(two_pi * (w * w + w) * expl(w));
}

long double log_fubini_hybrid(std::uint64_t k) {
    if (k <= kFubiniExactScanLimit) return log_fubini_exact(static_cast<unsigned>(k));
    const long double kl = static_cast<long double>(k);
    const long double ln2 = 0.6931471805599453094172321214581766L;
    return logl(1.0L / (2.0L * ln2)) + lgammal(kl + 1.0L) - kl * logl(ln2);
}

namespace {

// Restricted-growth-string enumeration: element i joins one of the blocks
// seen so far or opens a new one.
template <class Leaf>
void rgs_walk(unsigned depth, unsigned k, unsigned blocks, Leaf&& leaf) {
    if (depth == k) {
        leaf(blocks);
        return;
    }
    for (unsigned b = 0; b <= blocks; ++b)
        rgs_walk(depth + 1, k, b == blocks ? blocks + 1 : blocks,
                 static_cast<Leaf&&>(leaf));
}

}  // namespace

std::uint64_t enumerate_set_partitions(unsigned k) {
    if (k > 12)
        throw std::invalid_argument("enumerate_set_partitions: oracle limited to k <= 12");
    std::uint64_t count = 0;
    rgs_walk(0, k, 0, [&](unsigned) { ++count; });
    return count;
}

std::uint64_t enumerate_ordered_partitions(unsigned k) {
    if (k > 10)
        throw std::invalid_argument("enumerate_ordered_partitions: oracle limited to k <= 10");
    std::uint64_t factorial[13] = {1};
    for (unsigned i = 1; i <= 12; ++i) factorial[i] = factorial[i - 1] * i;
    std::uint64_t count = 0;
    rgs_walk(0, k, 0, [&](unsigned blocks) { count += factorial[blocks]; });
    return count;
}

}  // namespace factlab
