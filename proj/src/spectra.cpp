#include "alphaexp/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "alphaexp/roots.hpp"

namespace alphaexp {

namespace {

void check_admissible(GibbsParams gp, const AlphaParams& params)
{
    if (!std::isfinite(gp.t) || !std::isfinite(gp.q) || !gp.admissible(params)) {
        throw std::domain_error("inadmissible (t,q): need q < t log(alpha)");
    }
}

/// log(1 - e^{-y}) for y > 0.
double log1m_exp_neg(double y)
{
    return std::log(-std::expm1(-y));
}

}  // namespace

double kappa(double beta, const AlphaParams& params)
{
    if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw std::domain_error("kappa: beta must be > 1");
    }
    const double x = beta - 1.0;
    // (1-beta) log(beta-1) + beta log(beta), written to stay accurate as beta -> 1+
    const double num = -x * std::log(x) + beta * std::log1p(x);
    const double den = -params.log_alpha_minus_one() + beta * params.log_alpha();
    return num / den;
}

KappaMax kappa_max(const AlphaParams& params)
{
    const double a = params.value();
    const double argmax = a / (a - 1.0);
    return {argmax, kappa(argmax, params)};
}

double pressure(GibbsParams gp, const AlphaParams& params)
{
    check_admissible(gp, params);
    const double x = gp.log_ratio(params);
    return gp.t * (params.log_alpha_minus_one() - params.log_alpha()) + gp.q
        - std::log(-std::expm1(x));
}

double pressure_dq(GibbsParams gp, const AlphaParams& params)
{
    check_admissible(gp, params);
    return -1.0 / std::expm1(gp.log_ratio(params));
}

double pressure_dt(GibbsParams gp, const AlphaParams& params)
{
    check_admissible(gp, params);
    const double x = gp.log_ratio(params);
    // r/(1-r) = 1/(e^{-x} - 1)
    const double odds = 1.0 / std::expm1(-x);
    return params.log_alpha_minus_one() - params.log_alpha() - params.log_alpha() * odds;
}

GibbsParams solve_tq(double beta, const AlphaParams& params)
{
    const double t = kappa(beta, params);
    return {t, t * params.log_alpha() + std::log1p(-1.0 / beta)};
}

double moran_dimension(std::uint64_t M, const AlphaParams& params)
{
    if (M < 1) {
        throw std::domain_error("moran_dimension: M must be >= 1");
    }
    if (M == 1) {
        // sum_{i>=1} (alpha-1)/alpha^i = 1 exactly
        return 1.0;
    }
    const double la = params.log_alpha();
    const double la1 = params.log_alpha_minus_one();
    const double m = static_cast<double>(M);
    // log of the geometric tail sum, strictly decreasing in D
    auto log_sum = [=](double D) { return D * la1 - m * D * la - log1m_exp_neg(D * la); };
    double lo = 0.5;
    while (log_sum(lo) <= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw std::out_of_range("moran_dimension: root below representable range");
        }
    }
    return bisect(log_sum, lo, 1.0).root;
}

double subseq_dimension_limit(double mu, const AlphaParams& params)
{
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::domain_error("subseq_dimension_limit: mu must be > 0");
    }
    const double la = params.log_alpha();
    const double lc = params.log_alpha_minus_one() - mu * la;
    // alpha^d - c^d - 1: -1 at d = 0, alpha - c - 1 > 0 at d = 1
    auto g = [=](double d) { return std::expm1(d * la) - std::expm1(d * lc) - 1.0; };
    return bisect(g, 0.0, 1.0).root;
}

double subseq_dimension_finite(double mu, std::uint64_t M, const AlphaParams& params)
{
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw std::domain_error("subseq_dimension_finite: mu must be >= 0");
    }
    if (M < 1) {
        throw std::domain_error("subseq_dimension_finite: M must be >= 1");
    }
    if (M == 1) {
        throw std::out_of_range("subseq_dimension_finite: a single term < 1 has no positive root");
    }
    const double la = params.log_alpha();
    const double la1 = params.log_alpha_minus_one();
    const double m = static_cast<double>(M);
    // log sum_{i=1}^M ((alpha-1)/alpha^{i+mu})^d via the finite geometric sum
    auto log_sum = [=](double d) {
        return d * (la1 - (mu + 1.0) * la) + log1m_exp_neg(d * m * la) - log1m_exp_neg(d * la);
    };
    double lo = 0.5;
    while (log_sum(lo) <= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw std::out_of_range("subseq_dimension_finite: root below representable range");
        }
    }
    if (log_sum(1.0) >= 0.0) {
        throw std::out_of_range("subseq_dimension_finite: no root in (0,1]");
    }
    return bisect(log_sum, lo, 1.0).root;
}

std::uint64_t default_truncation(double mu, const AlphaParams& params, double tol)
{
    const double limit = subseq_dimension_limit(mu, params);
    // d_M approaches the limit geometrically, so a linear scan ends quickly
    for (std::uint64_t M = 2; M < 1'000'000; ++M) {
        if (std::fabs(subseq_dimension_finite(mu, M, params) - limit) < tol) {
            return M;
        }
    }
    throw std::out_of_range("default_truncation: tolerance not reached");
}

}  // namespace alphaexp
