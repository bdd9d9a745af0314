#pragma once

// Arithmetic backends for the codec.  Each backend offers the same small set of
// operations with an explicit rounding direction; the rational backend ignores it.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include <gmp.h>
#include <mpfr.h>
#include <gmpxx.h>

#include "alphaexp/expansion.hpp"

namespace alphaexp::detail {

enum class Round { down, nearest, up };

/// log of a positive rational without overflow.
inline double log_of(const Rational& q)
{
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

inline Rational pow_rational(const Rational& base, unsigned long e)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

class RationalArith {
public:
    using value_type = Rational;
    static constexpr bool exact = true;

    explicit RationalArith(const AlphaParams& p) : alpha_(p.exact()), am1_(p.exact() - 1) {}

    value_type from(const Rational& q, Round) const { return q; }
    Rational to_rational(const value_type& v) const { return v; }
    double log_value(const value_type& v) const { return log_of(v); }

    value_type mul(const value_type& a, const value_type& b, Round) const { return a * b; }
    value_type add(const value_type& a, const value_type& b, Round) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b, Round) const { return a - b; }
    value_type div(const value_type& a, const value_type& b, Round) const { return a / b; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    const value_type& alpha_minus_one(Round) const { return am1_; }

    const value_type& pow_alpha(std::uint32_t i, Round)
    {
        auto it = pow_.find(i);
        if (it == pow_.end()) {
            it = pow_.emplace(i, pow_rational(alpha_, i)).first;
        }
        return it->second;
    }

    static int cmp(const value_type& a, const value_type& b) { return ::cmp(a, b); }
    static int sign(const value_type& a) { return sgn(a); }

private:
    Rational alpha_;
    Rational am1_;
    std::unordered_map<std::uint32_t, Rational> pow_;
};

/// IEEE doubles; directed results are recovered from exact error terms
/// (TwoSum / FMA residuals), so each operation is rounded by at most one ulp.
class DoubleArith {
public:
    using value_type = double;
    static constexpr bool exact = false;

    explicit DoubleArith(const AlphaParams& p)
    {
        alpha_[0] = from(p.exact(), Round::down);
        alpha_[1] = from(p.exact(), Round::nearest);
        alpha_[2] = from(p.exact(), Round::up);
        const Rational am1 = p.exact() - 1;
        am1_[0] = from(am1, Round::down);
        am1_[1] = from(am1, Round::nearest);
        am1_[2] = from(am1, Round::up);
    }

    value_type from(const Rational& q, Round r) const
    {
        double d = q.get_d();
        const Rational back(d);
        // get_d truncates; fix up to the requested direction.
        if (r == Round::nearest) {
            const double next = back < q ? std::nextafter(d, 2.0) : std::nextafter(d, -2.0);
            if (back != q && abs(Rational(next) - q) < abs(back - q)) {
                d = next;
            }
            return d;
        }
        if (r == Round::down && back > q) {
            return std::nextafter(d, -std::numeric_limits<double>::infinity());
        }
        if (r == Round::up && back < q) {
            return std::nextafter(d, std::numeric_limits<double>::infinity());
        }
        return d;
    }
    Rational to_rational(value_type v) const { return Rational(v); }
    double log_value(value_type v) const { return std::log(v); }

    value_type mul(value_type a, value_type b, Round r) const
    {
        const double p = a * b;
        return adjust(p, std::fma(a, b, -p), r);
    }
    value_type add(value_type a, value_type b, Round r) const
    {
        const double s = a + b;
        const double bb = s - a;
        const double err = (a - (s - bb)) + (b - bb);
        return adjust(s, err, r);
    }
    value_type sub(value_type a, value_type b, Round r) const { return add(a, -b, r); }
    value_type div(value_type a, value_type b, Round r) const
    {
        const double q = a / b;
        const double rem = std::fma(-q, b, a);
        return adjust(q, b > 0 ? rem : -rem, r);
    }

    value_type zero() const { return 0.0; }
    value_type one() const { return 1.0; }
    value_type alpha_minus_one(Round r) const { return am1_[index(r)]; }

    value_type pow_alpha(std::uint32_t i, Round r)
    {
        auto& cache = pow_[index(r)];
        auto it = cache.find(i);
        if (it != cache.end()) {
            return it->second;
        }
        double result = 1.0;
        double base = alpha_[index(r)];
        for (std::uint32_t e = i; e != 0; e >>= 1) {
            if (e & 1u) {
                result = mul(result, base, r);
            }
            if (e > 1) {
                base = mul(base, base, r);
            }
        }
        cache.emplace(i, result);
        return result;
    }

    static int cmp(value_type a, value_type b) { return (a > b) - (a < b); }
    static int sign(value_type a) { return (a > 0) - (a < 0); }

private:
    static int index(Round r) { return static_cast<int>(r); }
    /// err is (exact - computed).
    static double adjust(double computed, double err, Round r)
    {
        if (r == Round::down && err < 0) {
            return std::nextafter(computed, -std::numeric_limits<double>::infinity());
        }
        if (r == Round::up && err > 0) {
            return std::nextafter(computed, std::numeric_limits<double>::infinity());
        }
        return computed;
    }

    double alpha_[3]{};
    double am1_[3]{};
    std::unordered_map<std::uint32_t, double> pow_[3];
};

/// Owning MPFR value.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Mpfr(const Mpfr& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }

private:
    mpfr_t v_;
};

class MpfrArith {
public:
    using value_type = Mpfr;
    static constexpr bool exact = false;

    explicit MpfrArith(const AlphaParams& p)
        : prec_(static_cast<mpfr_prec_t>(p.precision_bits()))
        , alpha_{Mpfr(prec_), Mpfr(prec_), Mpfr(prec_)}
        , am1_{Mpfr(prec_), Mpfr(prec_), Mpfr(prec_)}
    {
        if (p.precision_bits() < MPFR_PREC_MIN || p.precision_bits() > 1u << 20) {
            throw std::domain_error("precision_bits out of range");
        }
        const Rational am1 = p.exact() - 1;
        for (Round r : {Round::down, Round::nearest, Round::up}) {
            mpfr_set_q(alpha_[index(r)].get(), p.exact().get_mpq_t(), rnd(r));
            mpfr_set_q(am1_[index(r)].get(), am1.get_mpq_t(), rnd(r));
        }
    }

    value_type from(const Rational& q, Round r) const
    {
        Mpfr v(prec_);
        mpfr_set_q(v.get(), q.get_mpq_t(), rnd(r));
        return v;
    }
    Rational to_rational(const value_type& v) const
    {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v.get());
        return q;
    }
    double log_value(const value_type& v) const
    {
        long e = 0;
        const double m = mpfr_get_d_2exp(&e, v.get(), MPFR_RNDN);
        return std::log(m) + static_cast<double>(e) * std::log(2.0);
    }

    value_type mul(const value_type& a, const value_type& b, Round r) const
    {
        Mpfr v(prec_);
        mpfr_mul(v.get(), a.get(), b.get(), rnd(r));
        return v;
    }
    value_type add(const value_type& a, const value_type& b, Round r) const
    {
        Mpfr v(prec_);
        mpfr_add(v.get(), a.get(), b.get(), rnd(r));
        return v;
    }
    value_type sub(const value_type& a, const value_type& b, Round r) const
    {
        Mpfr v(prec_);
        mpfr_sub(v.get(), a.get(), b.get(), rnd(r));
        return v;
    }
    value_type div(const value_type& a, const value_type& b, Round r) const
    {
        Mpfr v(prec_);
        mpfr_div(v.get(), a.get(), b.get(), rnd(r));
        return v;
    }

    value_type zero() const
    {
        Mpfr v(prec_);
        mpfr_set_zero(v.get(), 1);
        return v;
    }
    value_type one() const
    {
        Mpfr v(prec_);
        mpfr_set_ui(v.get(), 1, MPFR_RNDN);
        return v;
    }
    const value_type& alpha_minus_one(Round r) const { return am1_[index(r)]; }

    const value_type& pow_alpha(std::uint32_t i, Round r)
    {
        auto& cache = pow_[index(r)];
        auto it = cache.find(i);
        if (it == cache.end()) {
            Mpfr v(prec_);
            // alpha > 1, so the power is monotone in the base and the bound carries over.
            mpfr_pow_ui(v.get(), alpha_[index(r)].get(), i, rnd(r));
            it = cache.emplace(i, std::move(v)).first;
        }
        return it->second;
    }

    static int cmp(const value_type& a, const value_type& b) { return mpfr_cmp(a.get(), b.get()); }
    static int sign(const value_type& a) { return mpfr_sgn(a.get()); }

private:
    static int index(Round r) { return static_cast<int>(r); }
    static mpfr_rnd_t rnd(Round r)
    {
        switch (r) {
        case Round::down: return MPFR_RNDD;
        case Round::up: return MPFR_RNDU;
        default: return MPFR_RNDN;
        }
    }

    mpfr_prec_t prec_;
    Mpfr alpha_[3];
    Mpfr am1_[3];
    std::unordered_map<std::uint32_t, Mpfr> pow_[3];
};

}  // namespace alphaexp::detail
