#pragma once

// Closed-form spectra and the dimension equations for alpha-expansions,
// all for the natural potential phi(x) = d_1(x).

#include <cstdint>

#include "alphaexp/expansion.hpp"

namespace alphaexp {

/// Parameters (t, q) of the pressure P(t, q).
struct GibbsParams {
    double t;
    double q;

    /// log r with r = e^{q - t log alpha}, the ratio of the geometric digit weights.
    double log_ratio(const AlphaParams& params) const { return q - t * params.log_alpha(); }
    /// q < t log alpha, so that the single-letter series converges.
    bool admissible(const AlphaParams& params) const { return log_ratio(params) < 0.0; }
};

struct SpectrumPoint {
    double parameter;
    double dimension;
};

/// Hausdorff dimension of the level set of points with digit mean beta (beta > 1).
double kappa(double beta, const AlphaParams& params);

struct KappaMax {
    double argmax;
    double value;
};
/// Peak of kappa, at beta = alpha/(alpha-1).
KappaMax kappa_max(const AlphaParams& params);

/// P(t,q) = -t log(alpha/(alpha-1)) + q - log(1 - e^{q - t log alpha}).
double pressure(GibbsParams gp, const AlphaParams& params);
/// dP/dq = 1/(1 - r); the mean digit of the Gibbs law.
double pressure_dq(GibbsParams gp, const AlphaParams& params);
/// dP/dt = -log(alpha/(alpha-1)) - log(alpha) r/(1-r).
double pressure_dt(GibbsParams gp, const AlphaParams& params);

/// The (t, q) with P(t,q) = q beta and dP/dq = beta.
GibbsParams solve_tq(double beta, const AlphaParams& params);

/// Dimension of {x : d_i(x) >= M for all i}: the root D in (0,1] of
/// sum_{i>=M} ((alpha-1)/alpha^i)^D = 1.
double moran_dimension(std::uint64_t M, const AlphaParams& params);

/// Limit dimension d in (0,1) solving ((alpha-1)/alpha^mu)^d - alpha^d + 1 = 0, mu > 0.
double subseq_dimension_limit(double mu, const AlphaParams& params);

/// Root d_M of sum_{i=1}^M ((alpha-1)/alpha^{i+mu})^d = 1 (mu >= 0).
/// Throws std::out_of_range when no positive root exists (M = 1).
double subseq_dimension_finite(double mu, std::uint64_t M, const AlphaParams& params);

/// Smallest M with |d_M - d| < tol; d_M increases to d.
std::uint64_t default_truncation(double mu, const AlphaParams& params, double tol = 1e-6);

}  // namespace alphaexp
