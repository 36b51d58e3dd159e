#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "factlab/log_value.hpp"
#include "factlab/sieve.hpp"

namespace factlab {

// Iterated-logarithm scale of a (possibly astronomically large) x,
// specified by logx alone.  Extended precision: synthetic logx up to
// 1e4000 is accepted, decoupling maximizer experiments from buildable
// sieves.  Requires logx > e so every iterate through log3x is positive;
// log4x is exposed only where it exists.
class LogScale {
public:
    explicit LogScale(long double logx);
    static LogScale from_x(long double x);

    long double logx() const { return logx_; }
    long double log2x() const { return log2x_; }
    long double log3x() const { return log3x_; }
    long double log4x() const;  // throws if log3x <= 1

private:
    long double logx_, log2x_, log3x_, log4x_;
};

// log L(x) where L(x) = exp(log x log3 x / log2 x).
LogValue log_l(const LogScale& scale);

// The supported growth-law predictors.  Ids 1.1-1.10 are the library's
// catalog of moment bounds for f/g/F/G; "oppenheim" and "kalmar" are the
// classical first-moment asymptotics of f and g.
enum class TheoremId {
    t1_1,   // sum F(n):       x exp(c_F sqrt(logx/log2x))
    t1_2,   // sum G(n):       x exp(c_G logx/log2x)
    t1_3,   // sum f^beta, beta>1:   x^beta / L^beta
    t1_4,   // sum f^beta, 0<beta<1
    t1_5,   // sum F^beta, beta>1:   x^beta / L^{2 beta}
    t1_6,   // sum F^beta, 0<beta<1 (same right-hand side as 1.4)
    t1_7,   // sum G^beta, beta>1:   x^beta / L^beta
    t1_8,   // sum G^beta, 0<beta<1
    t1_9,   // sum f^-beta and F^-beta, beta>0
    t1_10,  // sum g^-beta and G^-beta, beta>0
    oppenheim,  // sum f(n): x exp(2 sqrt(logx)) / (2 sqrt(pi) (logx)^{3/4})
    kalmar,     // sum g(n): K x^rho
};

TheoremId parse_theorem(const std::string& id);      // "1.1".."1.10", "oppenheim", "kalmar"
std::string theorem_name(TheoremId id);

struct Prediction {
    TheoremId theorem;
    double beta;
    LogValue log_of_sum;
    std::vector<std::pair<std::string, long double>> components;
};

// log of the predicted sum; beta must lie in the theorem's validity range
// (the first-moment laws require beta = 1).  o(1)-type factors are
// uniformly dropped; these are order-of-magnitude instruments.
Prediction predict(TheoremId id, double beta, const LogScale& scale);

// Summand surrogates for the negative moments, with the Hardy-Ramanujan
// shift C exposed (default 0):
//   term_bell:   B_k^{-beta} (log2x + C)^{k-1} / (k-1)!
//   term_fubini: a_k^{-beta} (log2x + C)^{k-1} / (k-1)!
// Exact Bell/Fubini logs are used for k within the exact-scan caches,
// saddle-point formulas beyond.
LogValue term_bell(std::uint64_t k, double beta, long double log2x, double c = 0.0);
LogValue term_fubini(std::uint64_t k, double beta, long double log2x, double c = 0.0);

// Maximizing k of the two term families:
//   kstar_bell:   ((1/(1+beta)^beta) log2x (log3x)^beta)^{1/(1+beta)}
//   kstar_fubini: (log 2)^{beta/(1+beta)} (log2x)^{1/(1+beta)}
long double kstar_bell(double beta, const LogScale& scale);
long double kstar_fubini(double beta, const LogScale& scale);

// Hildebrand-Tenenbaum variables at (k, x):
//   L0 = log2x - log k - loglog k, y = k/L0, xi = logx/(y log y),
//   M = log xi + loglog xi - log L0 - gamma, R = (1/L0)(1/y + 1/L0).
// Throws out_of_regime_error when any defining quantity leaves its domain
// (L0 <= 1, y <= 1, xi <= 1 or M <= 0).
struct HtVariables {
    long double l0, y, xi, m, r;
};
HtVariables ht_variables(std::uint64_t k, const LogScale& scale);  // k >= 3

// log of x/(k! log x) exp(k (log M + 1/M)), the Hildebrand-Tenenbaum
// main term, O(R) factor dropped.
LogValue ht_main_term(std::uint64_t k, const LogScale& scale);

// log of x/(k! log x) exp(k log L0): Pomerance's main term, o(k) dropped.
LogValue pomerance_main_term(std::uint64_t k, const LogScale& scale);

// argmax_k of B_k^beta pi(x,k) (fn 'F') or a_k^beta pi(x,k) (fn 'G') over
// the exact histogram; ties resolved toward the smallest k.
struct MaxTermResult {
    unsigned k;
    LogValue log_max;
};
MaxTermResult max_term_exact(char fn, double beta, const SieveTable& table);
// Synthetic counterpart over the Hardy-Ramanujan surrogate
// x/log x * B_k^beta (log2x)^{k-1}/(k-1)!, scanned for k in [1, k_limit].
MaxTermResult max_term_synthetic(char fn, double beta, const LogScale& scale,
                                 std::uint64_t k_limit = 100000);

// Hardy-Ramanujan inequality constants used by the bound checks:
// c2 is fixed, c1 was calibrated once against the exact omega histogram at
// x = 1e6 (max needed value 1.0878, attained at k = 1) and frozen.
inline constexpr double kHardyRamanujanC1 = 1.09;
inline constexpr double kHardyRamanujanC2 = 1.1714;

}  // namespace factlab
