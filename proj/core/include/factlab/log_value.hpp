#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace factlab {

// A positive real stored as its natural logarithm.  Extended precision so
// that synthetic scales far beyond double range stay representable.
struct LogValue {
    long double log = -std::numeric_limits<long double>::infinity();

    static LogValue from_log(long double l) { return LogValue{l}; }
    static LogValue of(long double linear) { return LogValue{logl(linear)}; }

    long double value() const { return expl(log); }
    bool finite() const { return std::isfinite(log); }
};

// log(e^a + e^b) without overflow.
inline LogValue log_add(LogValue a, LogValue b) {
    if (a.log < b.log) std::swap(a, b);
    if (std::isinf(b.log) && b.log < 0) return a;
    return LogValue{a.log + log1pl(expl(b.log - a.log))};
}

// Streaming log-sum-exp accumulator with Kahan-compensated mantissa
// summation.  Deterministic for a fixed insertion order.
class LogAccumulator {
public:
    void add_log(long double t) {
        if (std::isinf(t) && t < 0) return;
        if (t <= max_) {
            kahan_add(expl(t - max_));
            return;
        }
        if (std::isfinite(max_)) {
            const long double scale = expl(max_ - t);
            sum_ *= scale;
            carry_ *= scale;
        }
        max_ = t;
        kahan_add(1.0L);
    }

    void merge(const LogAccumulator& other) {
        if (!other.empty()) add_log(other.result().log);
    }

    bool empty() const { return !std::isfinite(max_); }

    LogValue result() const {
        if (empty()) return LogValue{};
        return LogValue{max_ + logl(sum_)};
    }

private:
    void kahan_add(long double x) {
        const long double y = x - carry_;
        const long double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }

    long double max_ = -std::numeric_limits<long double>::infinity();
    long double sum_ = 0.0L;
    long double carry_ = 0.0L;
};

}  // namespace factlab
