#pragma once

#include <optional>
#include <string>
#include <vector>

namespace factlab {

// Euler-Mascheroni constant (stored literal, cross-checked in tests).
double euler_gamma();

// Lambert W, principal branch on x >= 0.  Halley iteration from the
// initial guess w0 = log(1 + x); relative residual of w*e^w is <= 1e-13.
double lambert_w(double x);

// Exponential integral Ei(x) for x < 0 only (the only case this library
// needs).  Power series for |x| < 6, modified Lentz continued fraction for
// |x| >= 6; absolute accuracy <= 1e-13.
double expint_ei(double x);

// Incomplete gamma Gamma(0, t) = -Ei(-t) = E1(t), t > 0.
double gamma0(double t);

// Riemann zeta and its derivative for real s > 1, via Euler-Maclaurin with
// tail corrections (absolute error well under 1e-12 for s >= 1.05).
double zeta(double s);
double zeta_prime(double s);

// The unique s in (1, infinity) with zeta(s) = 2, bracketed on (1.5, 2.0).
double solve_rho();

// S(t) = (t/pi) sin(pi/t), t > 0.
double s_func(double t);

// Inverse of phi(t) = t e^t Gamma(0, t) on t > 0; phi increases from 0 to 1,
// so the domain is c in (0, 1).  Newton with a bisection fallback,
// |phi(H(c)) - c| <= 1e-12.
double h_func(double c);
// phi itself, exposed for the inverse-property tests.
double h_func_forward(double t);

// All named constants with the residuals of their defining equations.
struct ConstantsReport {
    double gamma;             // Euler-Mascheroni
    double gamma_residual;    // |gamma - harmonic-sum limit at n = 1e6|
    double rho;               // zeta(rho) = 2
    double rho_residual;      // |zeta(rho) - 2|
    double kalmar_k;          // -1/(rho zeta'(rho))
    double kalmar_residual;   // |kalmar_k * rho * zeta'(rho) + 1|
    double c_f;               // 2 sqrt(2) e^{-gamma/2}
    double c_f_residual;      // |c_f^2 e^gamma - 8|
    double w;                 // W(1/(e log 2))
    double w_residual;        // |w e^w - 1/(e log 2)| / (1/(e log 2))
    double c_g;               // w (1 + e^w Ei(-w) (w + log w + log log 2))
    double c_g_residual;      // |c_g - w (1 - e^w Ei(-w))|

    struct Item {
        std::string name;
        double value;
        double residual;
        std::optional<double> paper_value;
    };
    std::vector<Item> items() const;
};

ConstantsReport constants_report();

}  // namespace factlab
