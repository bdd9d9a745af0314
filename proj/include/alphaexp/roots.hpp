#pragma once

#include <cmath>
#include <stdexcept>

namespace alphaexp {

struct BracketedRoot {
    double root;
    double value;     // f(root)
    int iterations;
};

/// Bisection for a continuous f with a sign change on [lo, hi].
///
/// Runs until the bracket is narrower than `width` or cannot be split in
/// double precision, then returns whichever endpoint has the smaller |f|.
/// An exact zero at an endpoint is returned as is.
template <class F>
BracketedRoot bisect(F&& f, double lo, double hi, double width = 0.0, int max_iterations = 400)
{
    if (!(lo < hi)) {
        throw std::invalid_argument("bisect: empty bracket");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) {
        return {lo, flo, 0};
    }
    if (fhi == 0.0) {
        return {hi, fhi, 0};
    }
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw std::domain_error("bisect: endpoints do not bracket a root");
    }
    int it = 0;
    for (; it < max_iterations && hi - lo > width; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return {mid, fm, it + 1};
        }
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if (std::fabs(flo) <= std::fabs(fhi)) {
        return {lo, flo, it};
    }
    return {hi, fhi, it};
}

}  // namespace alphaexp
