#include "factlab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace factlab {

namespace {

// 50-digit literal; double keeps the first 17.
constexpr double kEulerGamma = 0.57721566490153286060651209008240243104215933593992;

constexpr long double kLn2 = 0.6931471805599453094172321214581766L;

// Continued-fraction factor C(t) with E1(t) = e^{-t} C(t), evaluated by the
// modified Lentz algorithm.  Used for t >= 6 and for the overflow-free
// evaluation of t e^t E1(t) at large t.
long double e1_cf_factor(long double t) {
    const long double tiny = 1e-30L;
    long double b = t + 1.0L;
    long double c = 1.0L / tiny;
    long double d = 1.0L / b;
    long double h = d;
    for (int i = 1; i <= 200; ++i) {
        const long double a = -static_cast<long double>(i) * i;
        b += 2.0L;
        d = a * d + b;
        if (fabsl(d) < tiny) d = tiny;
        c = b + a / c;
        if (fabsl(c) < tiny) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        h *= delta;
        if (fabsl(delta - 1.0L) < 1e-19L) break;
    }
    return h;
}

// E1(t) for t > 0.  Series below the documented switch point |x| = 6,
// continued fraction above it.
long double e1(long double t) {
    if (t < 6.0L) {
        long double sum = 0.0L;
        long double term = t;  // k = 1 term
        for (int k = 1; k <= 80; ++k) {
            sum += term;
            term *= -t * static_cast<long double>(k) /
                    (static_cast<long double>(k + 1) * (k + 1));
            if (fabsl(term) < 1e-22L * (fabsl(sum) + 1e-30L)) break;
        }
        return -static_cast<long double>(kEulerGamma) - logl(t) + sum;
    }
    return expl(-t) * e1_cf_factor(t);
}

}  // namespace

double euler_gamma() { return kEulerGamma; }

double lambert_w(double x) {
    if (x < 0.0)
        throw std::domain_error("lambert_w: negative argument (secondary branch not implemented)");
    if (x == 0.0) return 0.0;
    long double w = log1pl(static_cast<long double>(x));
    for (int i = 0; i < 64; ++i) {
        const long double ew = expl(w);
        const long double f = w * ew - static_cast<long double>(x);
        const long double denom = ew * (w + 1.0L) - (w + 2.0L) * f / (2.0L * (w + 1.0L));
        const long double step = f / denom;
        w -= step;
        if (fabsl(step) <= 1e-17L * (1.0L + fabsl(w))) break;
    }
    return static_cast<double>(w);
}

double expint_ei(double x) {
    if (x >= 0.0)
        throw std::domain_error("expint_ei: only negative arguments are supported");
    return static_cast<double>(-e1(static_cast<long double>(-x)));
}

double gamma0(double t) {
    if (t <= 0.0)
        throw std::domain_error("gamma0: argument must be positive");
    return static_cast<double>(e1(static_cast<long double>(t)));
}

namespace {

// B_{2j}/(2j)! is not precomputed; the raw Bernoulli numbers keep the code
// recognizable against the textbook formula.
constexpr long double kBernoulli2j[] = {
    1.0L / 6,            -1.0L / 30,          1.0L / 42,
    -1.0L / 30,          5.0L / 66,           -691.0L / 2730,
    7.0L / 6,            -3617.0L / 510,      43867.0L / 798,
    -174611.0L / 330,    854513.0L / 138,     -236364091.0L / 2730,
};
constexpr int kZetaCutoff = 24;

long double factorial_ld(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double zeta(double s) {
    if (s <= 1.0)
        throw std::domain_error("zeta: argument must be > 1");
    const long double sl = s;
    const int n = kZetaCutoff;
    long double sum = 0.0L;
    for (int i = 1; i < n; ++i) sum += powl(static_cast<long double>(i), -sl);
    const long double nl = n;
    sum += powl(nl, 1.0L - sl) / (sl - 1.0L);
    sum += 0.5L * powl(nl, -sl);
    // Euler-Maclaurin tail: sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * n^{-s-2j+1}
    long double poch = sl;                  // rising factorial, 2j-1 factors
    long double npow = powl(nl, -sl - 1.0L);
    for (int j = 1; j <= 12; ++j) {
        sum += kBernoulli2j[j - 1] / factorial_ld(2 * j) * poch * npow;
        poch *= (sl + 2 * j - 1) * (sl + 2 * j);
        npow /= nl * nl;
    }
    return static_cast<double>(sum);
}

double zeta_prime(double s) {
    if (s <= 1.0)
        throw std::domain_error("zeta_prime: argument must be > 1");
    const long double sl = s;
    const int n = kZetaCutoff;
    const long double nl = n;
    const long double lnn = logl(nl);
    long double sum = 0.0L;
    for (int i = 2; i < n; ++i)
        sum -= logl(static_cast<long double>(i)) * powl(static_cast<long double>(i), -sl);
    // d/ds [n^{1-s}/(s-1)] = n^{1-s} (-ln n (s-1) - 1)/(s-1)^2
    sum += powl(nl, 1.0L - sl) * (-lnn * (sl - 1.0L) - 1.0L) / ((sl - 1.0L) * (sl - 1.0L));
    sum += 0.5L * powl(nl, -sl) * (-lnn);
    long double poch = sl;
    long double digamma_sum = 1.0L / sl;    // sum of 1/(s+i) over the factors
    long double npow = powl(nl, -sl - 1.0L);
    for (int j = 1; j <= 12; ++j) {
        const long double coeff = kBernoulli2j[j - 1] / factorial_ld(2 * j);
        sum += coeff * poch * npow * (digamma_sum - lnn);
        poch *= (sl + 2 * j - 1) * (sl + 2 * j);
        digamma_sum += 1.0L / (sl + 2 * j - 1) + 1.0L / (sl + 2 * j);
        npow /= nl * nl;
    }
    return static_cast<double>(sum);
}

double solve_rho() {
    // zeta(1.5) = 2.61 > 2 > zeta(2) = 1.64, so the root is bracketed.
    double lo = 1.5, hi = 2.0;
    double s = 1.73;
    for (int i = 0; i < 64; ++i) {
        const double f = zeta(s) - 2.0;
        if (std::fabs(f) <= 1e-14) break;
        if (f > 0) lo = s; else hi = s;
        double next = s - f / zeta_prime(s);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == s) break;
        s = next;
    }
    return s;
}

double s_func(double t) {
    if (t <= 0.0)
        throw std::domain_error("s_func: argument must be positive");
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double tl = t;
    return static_cast<double>(tl / pi * sinl(pi / tl));
}

double h_func_forward(double t) {
    if (t <= 0.0)
        throw std::domain_error("h_func_forward: argument must be positive");
    const long double tl = t;
    if (tl >= 6.0L) return static_cast<double>(tl * e1_cf_factor(tl));
    return static_cast<double>(tl * expl(tl) * e1(tl));
}

double h_func(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("h_func: argument must lie in (0, 1)");
    // phi(t) = t e^t Gamma(0,t) increases from 0 to 1; bracket then refine.
    double lo = 1e-300;
    double hi = 1.0;
    while (h_func_forward(hi) < c) hi *= 2.0;
    double t = std::min(std::max(c, 1e-12), 0.5 * hi);
    for (int i = 0; i < 200; ++i) {
        const double phi = h_func_forward(t);
        const double f = phi - c;
        if (std::fabs(f) <= 1e-14) break;
        if (f < 0) lo = t; else hi = t;
        // phi' = (1+t)/t * phi - 1
        const double dphi = (1.0 + t) / t * phi - 1.0;
        double next = (dphi > 0) ? t - f / dphi : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == t) break;
        t = next;
    }
    return t;
}

namespace {

// gamma = lim (sum 1/k - log n), accelerated with the Euler-Maclaurin
// correction terms so the n = 1e6 truncation error is far below 1e-10.
double gamma_harmonic_estimate() {
    const long long n = 1000000;
    long double sum = 0.0L, carry = 0.0L;
    for (long long k = n; k >= 1; --k) {
        const long double x = 1.0L / static_cast<long double>(k);
        const long double y = x - carry;
        const long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    const long double nl = static_cast<long double>(n);
    const long double est = sum - logl(nl) - 1.0L / (2.0L * nl) + 1.0L / (12.0L * nl * nl) -
                            1.0L / (120.0L * nl * nl * nl * nl);
    return static_cast<double>(est);
}

}  // namespace

ConstantsReport constants_report() {
    ConstantsReport r{};
    r.gamma = kEulerGamma;
    r.gamma_residual = std::fabs(r.gamma - gamma_harmonic_estimate());

    r.rho = solve_rho();
    r.rho_residual = std::fabs(zeta(r.rho) - 2.0);

    const double zp = zeta_prime(r.rho);
    r.kalmar_k = -1.0 / (r.rho * zp);
    r.kalmar_residual = std::fabs(r.kalmar_k * r.rho * zp + 1.0);

    r.c_f = 2.0 * std::sqrt(2.0) * std::exp(-r.gamma / 2.0);
    r.c_f_residual = std::fabs(r.c_f * r.c_f * std::exp(r.gamma) - 8.0);

    const double arg = 1.0 / (M_E * std::log(2.0));
    r.w = lambert_w(arg);
    r.w_residual = std::fabs(r.w * std::exp(r.w) - arg) / arg;

    const double ei_mw = expint_ei(-r.w);
    const double bracket = r.w + std::log(r.w) + std::log(std::log(2.0));
    r.c_g = r.w * (1.0 + std::exp(r.w) * ei_mw * bracket);
    const double c_g_alt = r.w * (1.0 - std::exp(r.w) * ei_mw);
    r.c_g_residual = std::fabs(r.c_g - c_g_alt);

    return r;
}

std::vector<ConstantsReport::Item> ConstantsReport::items() const {
    return {
        {"gamma", gamma, gamma_residual, std::nullopt},
        {"rho", rho, rho_residual, 1.73},
        {"kalmar_K", kalmar_k, kalmar_residual, std::nullopt},
        {"c_F", c_f, c_f_residual, 2.12},
        {"w", w, w_residual, std::nullopt},
        {"c_G", c_g, c_g_residual, 0.771},
    };
}

}  // namespace factlab
