#include "factlab/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "factlab/combinatorics.hpp"
#include "factlab/errors.hpp"
#include "factlab/special_functions.hpp"

namespace factlab {

namespace {

constexpr long double kE = 2.7182818284590452353602874713526625L;
constexpr long double kLn2 = 0.6931471805599453094172321214581766L;
constexpr long double kPi = 3.1415926535897932384626433832795029L;
constexpr long double kMaxLogx = 1e4000L;

struct FirstMomentConstants {
    long double rho, kalmar_k, c_f, c_g;
};

const FirstMomentConstants& first_moment_constants() {
    static const FirstMomentConstants c = [] {
        const ConstantsReport r = constants_report();
        return FirstMomentConstants{r.rho, r.kalmar_k, r.c_f, r.c_g};
    }();
    return c;
}

}  // namespace

LogScale::LogScale(long double logx) : logx_(logx) {
    if (!(logx > kE))
        throw std::invalid_argument("LogScale: logx must exceed e so log3x stays positive");
    if (!(logx <= kMaxLogx))
        throw std::invalid_argument("LogScale: logx above the supported maximum 1e4000");
    log2x_ = logl(logx_);
    log3x_ = logl(log2x_);
    log4x_ = logl(log3x_);
}

LogScale LogScale::from_x(long double x) { return LogScale(logl(x)); }

long double LogScale::log4x() const {
    if (!std::isfinite(log4x_))
        throw out_of_regime_error("LogScale: log4x undefined at this scale");
    return log4x_;
}

LogValue log_l(const LogScale& scale) {
    return LogValue::from_log(scale.logx() * scale.log3x() / scale.log2x());
}

TheoremId parse_theorem(const std::string& id) {
    if (id == "1.1") return TheoremId::t1_1;
    if (id == "1.2") return TheoremId::t1_2;
    if (id == "1.3") return TheoremId::t1_3;
    if (id == "1.4") return TheoremId::t1_4;
    if (id == "1.5") return TheoremId::t1_5;
    if (id == "1.6") return TheoremId::t1_6;
    if (id == "1.7") return TheoremId::t1_7;
    if (id == "1.8") return TheoremId::t1_8;
    if (id == "1.9") return TheoremId::t1_9;
    if (id == "1.10") return TheoremId::t1_10;
    if (id == "oppenheim") return TheoremId::oppenheim;
    if (id == "kalmar") return TheoremId::kalmar;
    throw std::invalid_argument("unknown theorem id: " + id);
}

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::t1_1: return "1.1";
        case TheoremId::t1_2: return "1.2";
        case TheoremId::t1_3: return "1.3";
        case TheoremId::t1_4: return "1.4";
        case TheoremId::t1_5: return "1.5";
        case TheoremId::t1_6: return "1.6";
        case TheoremId::t1_7: return "1.7";
        case TheoremId::t1_8: return "1.8";
        case TheoremId::t1_9: return "1.9";
        case TheoremId::t1_10: return "1.10";
        case TheoremId::oppenheim: return "oppenheim";
        case TheoremId::kalmar: return "kalmar";
    }
    throw std::invalid_argument("bad theorem id");
}

namespace {

void require_beta(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("predict: ") + what);
}

}  // namespace

Prediction predict(TheoremId id, double beta, const LogScale& scale) {
    const long double logx = scale.logx();
    const long double log2x = scale.log2x();
    const long double log3x = scale.log3x();
    const long double b = beta;

    Prediction p;
    p.theorem = id;
    p.beta = beta;

    switch (id) {
        case TheoremId::t1_1: {
            require_beta(beta == 1.0, "theorem 1.1 is the first moment (beta = 1)");
            const long double c = first_moment_constants().c_f;
            const long double expo = c * sqrtl(logx / log2x);
            p.log_of_sum = LogValue::from_log(logx + expo);
            p.components = {{"logx", logx}, {"c", c}, {"exponent", expo}};
            break;
        }
        case TheoremId::t1_2: {
            require_beta(beta == 1.0, "theorem 1.2 is the first moment (beta = 1)");
            const long double c = first_moment_constants().c_g;
            const long double expo = c * logx / log2x;
            p.log_of_sum = LogValue::from_log(logx + expo);
            p.components = {{"logx", logx}, {"c", c}, {"exponent", expo}};
            break;
        }
        case TheoremId::t1_3:
        case TheoremId::t1_5:
        case TheoremId::t1_7: {
            require_beta(beta > 1.0, "this moment law needs beta > 1");
            const long double ll = log_l(scale).log;
            const long double mult = id == TheoremId::t1_5 ? 2.0L : 1.0L;
            p.log_of_sum = LogValue::from_log(b * logx - mult * b * ll);
            p.components = {{"beta_logx", b * logx}, {"log_L", ll}, {"L_exponent", mult * b}};
            break;
        }
        case TheoremId::t1_4:
        case TheoremId::t1_6: {
            require_beta(beta > 0.0 && beta < 1.0, "this moment law needs beta in (0, 1)");
            const long double expo =
                powl((1.0L - b) * log2x / powl(log3x, b), 1.0L / (1.0L - b));
            p.log_of_sum = LogValue::from_log(logx + expo);
            p.components = {{"logx", logx}, {"exponent", expo}};
            break;
        }
        case TheoremId::t1_8: {
            require_beta(beta > 0.0 && beta < 1.0, "theorem 1.8 needs beta in (0, 1)");
            const long double expo =
                (1.0L - b) * powl(kLn2, -b / (1.0L - b)) * powl(log2x, 1.0L / (1.0L - b));
            p.log_of_sum = LogValue::from_log(logx + expo);
            p.components = {{"logx", logx}, {"exponent", expo}};
            break;
        }
        case TheoremId::t1_9: {
            require_beta(beta > 0.0, "theorem 1.9 takes the exponent parameter beta > 0");
            const long double expo =
                powl((1.0L + b) * log2x * powl(log3x, b), 1.0L / (1.0L + b));
            p.log_of_sum = LogValue::from_log(logx - log2x + expo);
            p.components = {{"logx_over_logx", logx - log2x}, {"exponent", expo}};
            break;
        }
        case TheoremId::t1_10: {
            require_beta(beta > 0.0, "theorem 1.10 takes the exponent parameter beta > 0");
            const long double expo =
                (1.0L + b) * powl(kLn2, b / (1.0L + b)) * powl(log2x, 1.0L / (1.0L + b));
            p.log_of_sum = LogValue::from_log(logx - log2x + expo);
            p.components = {{"logx_over_logx", logx - log2x}, {"exponent", expo}};
            break;
        }
        case TheoremId::oppenheim: {
            require_beta(beta == 1.0, "the Oppenheim law is the first moment (beta = 1)");
            const long double lead = logl(1.0L / (2.0L * sqrtl(kPi)));
            p.log_of_sum =
                LogValue::from_log(logx + 2.0L * sqrtl(logx) - 0.75L * log2x + lead);
            p.components = {{"logx", logx},
                            {"exp_term", 2.0L * sqrtl(logx)},
                            {"log_power", -0.75L * log2x},
                            {"constant", lead}};
            break;
        }
        case TheoremId::kalmar: {
            require_beta(beta == 1.0, "the Kalmar law is the first moment (beta = 1)");
            const long double rho = first_moment_constants().rho;
            const long double logk = logl(first_moment_constants().kalmar_k);
            p.log_of_sum = LogValue::from_log(rho * logx + logk);
            p.components = {{"rho", rho}, {"log_K", logk}};
            break;
        }
    }
    return p;
}

LogValue term_bell(std::uint64_t k, double beta, long double log2x, double c) {
    if (k < 1) throw std::invalid_argument("term_bell: needs k >= 1");
    if (!(log2x + c > 0.0L)) throw std::invalid_argument("term_bell: log2x + C must be positive");
    const long double kl = static_cast<long double>(k);
    return LogValue::from_log(-static_cast<long double>(beta) * log_bell_hybrid(k) +
                              (kl - 1.0L) * logl(log2x + c) - lgammal(kl));
}

LogValue term_fubini(std::uint64_t k, double beta, long double log2x, double c) {
    if (k < 1) throw std::invalid_argument("term_fubini: needs k >= 1");
    if (!(log2x + c > 0.0L)) throw std::invalid_argument("term_fubini: log2x + C must be positive");
    const long double kl = static_cast<long double>(k);
    return LogValue::from_log(-static_cast<long double>(beta) * log_fubini_hybrid(k) +
                              (kl - 1.0L) * logl(log2x + c) - lgammal(kl));
}

long double kstar_bell(double beta, const LogScale& scale) {
    if (!(beta > 0.0)) throw std::invalid_argument("kstar_bell: needs beta > 0");
    const long double b = beta;
    return powl(powl(1.0L + b, -b) * scale.log2x() * powl(scale.log3x(), b),
                1.0L / (1.0L + b));
}

long double kstar_fubini(double beta, const LogScale& scale) {
    if (!(beta > 0.0)) throw std::invalid_argument("kstar_fubini: needs beta > 0");
    const long double b = beta;
    return powl(kLn2, b / (1.0L + b)) * powl(scale.log2x(), 1.0L / (1.0L + b));
}

HtVariables ht_variables(std::uint64_t k, const LogScale& scale) {
    if (k < 3) throw std::invalid_argument("ht_variables: needs k >= 3");
    const long double kl = static_cast<long double>(k);
    HtVariables v{};
    v.l0 = scale.log2x() - logl(kl) - logl(logl(kl));
    if (!(v.l0 > 1.0L))
        throw out_of_regime_error("ht_variables: L0 <= 1 at this (k, x)");
    v.y = kl / v.l0;
    if (!(v.y > 1.0L))
        throw out_of_regime_error("ht_variables: y <= 1 at this (k, x)");
    v.xi = scale.logx() / (v.y * logl(v.y));
    if (!(v.xi > 1.0L))
        throw out_of_regime_error("ht_variables: xi <= 1, loglog xi undefined");
    v.m = logl(v.xi) + logl(logl(v.xi)) - logl(v.l0) - euler_gamma();
    v.r = (1.0L / v.l0) * (1.0L / v.y + 1.0L / v.l0);
    return v;
}

LogValue ht_main_term(std::uint64_t k, const LogScale& scale) {
    const HtVariables v = ht_variables(k, scale);
    if (!(v.m > 0.0L))
        throw out_of_regime_error("ht_main_term: M <= 0 at this (k, x)");
    const long double kl = static_cast<long double>(k);
    return LogValue::from_log(scale.logx() - scale.log2x() - lgammal(kl + 1.0L) +
                              kl * (logl(v.m) + 1.0L / v.m));
}

LogValue pomerance_main_term(std::uint64_t k, const LogScale& scale) {
    if (k < 2) throw std::invalid_argument("pomerance_main_term: needs k >= 2");
    const long double kl = static_cast<long double>(k);
    const long double l0 = scale.log2x() - logl(kl) - logl(logl(kl));
    if (!(l0 > 1.0L))
        throw out_of_regime_error("pomerance_main_term: L0 <= 1 at this (k, x)");
    return LogValue::from_log(scale.logx() - scale.log2x() - lgammal(kl + 1.0L) +
                              kl * logl(l0));
}

MaxTermResult max_term_exact(char fn, double beta, const SieveTable& table) {
    if (fn != 'F' && fn != 'G')
        throw std::invalid_argument("max_term_exact: fn must be 'F' or 'G'");
    const bool integral = beta >= 0.0 && beta == std::floor(beta) && beta <= 1024.0;

    MaxTermResult best{0, LogValue{}};
    ExactInt best_exact = 0;
    bool have = false;
    for (unsigned k = 0; k <= table.max_omega(); ++k) {
        const std::uint64_t pi = table.pi_xk(k);
        if (pi == 0) continue;
        const ExactInt& base = fn == 'F' ? bell(k) : fubini(k);
        const long double log_term =
            static_cast<long double>(beta) * log_exact(base) +
            logl(static_cast<long double>(pi));
        if (integral) {
            ExactInt term = boost::multiprecision::pow(base, static_cast<unsigned>(beta)) * pi;
            if (!have || term > best_exact) {
                best_exact = std::move(term);
                best = {k, LogValue::from_log(log_term)};
                have = true;
            }
        } else {
            if (!have || log_term > best.log_max.log) {
                best = {k, LogValue::from_log(log_term)};
                have = true;
            }
        }
    }
    if (!have) throw std::logic_error("max_term_exact: empty histogram");
    return best;
}

MaxTermResult max_term_synthetic(char fn, double beta, const LogScale& scale,
                                 std::uint64_t k_limit) {
    if (fn != 'F' && fn != 'G')
        throw std::invalid_argument("max_term_synthetic: fn must be 'F' or 'G'");
    if (k_limit < 1) throw std::invalid_argument("max_term_synthetic: empty scan");
    const long double offset = scale.logx() - scale.log2x();
    MaxTermResult best{0, LogValue{}};
    bool have = false;
    for (std::uint64_t k = 1; k <= k_limit; ++k) {
        const long double kl = static_cast<long double>(k);
        const long double log_base =
            fn == 'F' ? log_bell_hybrid(k) : log_fubini_hybrid(k);
        const long double t = static_cast<long double>(beta) * log_base +
                              (kl - 1.0L) * logl(scale.log2x()) - lgammal(kl) + offset;
        if (!have || t > best.log_max.log) {
            best = {static_cast<unsigned>(k), LogValue::from_log(t)};
            have = true;
        }
    }
    return best;
}

}  // namespace factlab
