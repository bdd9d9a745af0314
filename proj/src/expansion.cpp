#include "alphaexp/expansion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "arith.hpp"

namespace alphaexp {

namespace {

using detail::Round;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

Rational pow10(long e)
{
    Rational r = 1;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
    if (e >= 0) {
        r = Rational(p);
    } else {
        r = Rational(mpz_class(1), p);
    }
    r.canonicalize();
    return r;
}

double log_positive(const Rational& q)
{
    const double d = q.get_d();
    if (Rational(d) == q) {
        return std::log(d);
    }
    return detail::log_of(q);
}

template <class A>
bool times_pow_gt_one(A& ar, const typename A::value_type& v, std::uint32_t i, Round r)
{
    if (i == 0) {
        return A::cmp(v, ar.one()) > 0;
    }
    return A::cmp(ar.mul(v, ar.pow_alpha(i, r), r), ar.one()) > 0;
}

constexpr std::uint32_t max_digit = std::numeric_limits<std::uint32_t>::max() - 1;

/// Digit of v using round-to-nearest comparisons (exact for the rational backend).
template <class A>
std::uint32_t digit_estimate(A& ar, const typename A::value_type& v, double log_alpha)
{
    const double guess = std::floor(-ar.log_value(v) / log_alpha) + 1.0;
    if (!(guess < static_cast<double>(max_digit))) {
        throw std::overflow_error("digit exceeds the representable range");
    }
    auto i = static_cast<std::uint32_t>(std::max(1.0, guess));
    while (i > 1 && times_pow_gt_one(ar, v, i - 1, Round::nearest)) {
        --i;
    }
    while (!times_pow_gt_one(ar, v, i, Round::nearest)) {
        if (++i >= max_digit) {
            throw std::overflow_error("digit exceeds the representable range");
        }
    }
    return i;
}

/// Branch i of T: (alpha^i v - 1)/(alpha - 1), rounded in direction r.
template <class A>
typename A::value_type expand(A& ar, const typename A::value_type& v, std::uint32_t i, Round r)
{
    auto num = ar.sub(ar.mul(v, ar.pow_alpha(i, r), r), ar.one(), r);
    const bool nonneg = A::sign(num) >= 0;
    Round divisor = Round::nearest;
    if (r == Round::down) {
        divisor = nonneg ? Round::up : Round::down;
    } else if (r == Round::up) {
        divisor = nonneg ? Round::down : Round::up;
    }
    return ar.div(num, ar.alpha_minus_one(divisor), r);
}

/// T_i(y) = ((alpha-1) y + 1)/alpha^i for y >= 0, rounded in direction r.
template <class A>
typename A::value_type contract(A& ar, const typename A::value_type& y, std::uint32_t i, Round r)
{
    const Round opposite = r == Round::down ? Round::up : (r == Round::up ? Round::down : r);
    auto num = ar.add(ar.mul(ar.alpha_minus_one(r), y, r), ar.one(), r);
    return ar.div(num, ar.pow_alpha(i, opposite), r);
}

template <class A>
EncodeResult encode_with(A ar, const Enclosure& x, const AlphaParams& params, std::size_t max_digits)
{
    using V = typename A::value_type;
    const double la = params.log_alpha();
    EncodeResult out;

    if constexpr (A::exact) {
        V lo = ar.from(x.lo, Round::nearest);
        V hi = ar.from(x.hi, Round::nearest);
        const bool same = x.lo == x.hi;
        while (out.prefix.size() < max_digits) {
            const std::uint32_t d = digit_estimate(ar, lo, la);
            if (!same && digit_estimate(ar, hi, la) != d) {
                break;
            }
            out.prefix.push_back(d);
            lo = expand(ar, lo, d, Round::nearest);
            if (!same) {
                hi = expand(ar, hi, d, Round::nearest);
            }
        }
        out.certified = out.prefix.size();
        return out;
    } else {
        // Point estimates of each endpoint, and an outward enclosure of the image set.
        V lo_n = ar.from(x.lo, Round::nearest);
        V hi_n = ar.from(x.hi, Round::nearest);
        V lo_d = ar.from(x.lo, Round::down);
        V hi_u = ar.from(x.hi, Round::up);
        bool tracking = true;
        const V zero = ar.zero();
        const V one = ar.one();
        while (out.prefix.size() < max_digits) {
            const std::uint32_t d = digit_estimate(ar, lo_n, la);
            if (digit_estimate(ar, hi_n, la) != d) {
                break;
            }
            if (tracking) {
                // every point of [lo_d, hi_u] lies in (alpha^{-d}, alpha^{-d+1}]
                tracking = times_pow_gt_one(ar, lo_d, d, Round::down)
                    && !times_pow_gt_one(ar, hi_u, d - 1, Round::up);
            }
            out.prefix.push_back(d);
            if (tracking) {
                ++out.certified;
                lo_d = expand(ar, lo_d, d, Round::down);
                hi_u = expand(ar, hi_u, d, Round::up);
                if (A::cmp(lo_d, zero) < 0) {
                    lo_d = zero;
                }
                if (A::cmp(hi_u, one) > 0) {
                    hi_u = one;
                }
            }
            lo_n = expand(ar, lo_n, d, Round::nearest);
            hi_n = expand(ar, hi_n, d, Round::nearest);
            // A rounded estimate that leaves (0,1] carries no further information.
            if (A::sign(lo_n) <= 0 || A::sign(hi_n) <= 0) {
                break;
            }
            if (A::cmp(lo_n, one) > 0) {
                lo_n = one;
            }
            if (A::cmp(hi_n, one) > 0) {
                hi_n = one;
            }
        }
        return out;
    }
}

template <class A>
Enclosure decode_with(A ar, const DigitPrefix& prefix)
{
    auto lo = ar.zero();
    auto hi = ar.one();
    const auto& d = prefix.digits();
    for (auto it = d.rbegin(); it != d.rend(); ++it) {
        lo = contract(ar, lo, *it, Round::down);
        hi = contract(ar, hi, *it, Round::up);
    }
    Rational qlo = ar.to_rational(lo);
    Rational qhi = ar.to_rational(hi);
    if (qlo < 0) {
        qlo = 0;
    }
    if (qhi > 1) {
        qhi = 1;
    }
    return Enclosure{qlo, qhi};
}

void check_unit_interval(const Rational& x)
{
    if (sgn(x) <= 0 || x > 1) {
        throw std::domain_error("x must lie in (0,1]");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// text

DecimalValue parse_decimal(std::string_view text)
{
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    std::size_t pos = 0;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                ++frac_digits;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') {
            throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
        }
        std::string_view ex = s.substr(pos + 1);
        if (!ex.empty() && ex.front() == '+') {
            ex.remove_prefix(1);
        }
        const auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exponent);
        if (ec != std::errc{} || ptr != ex.data() + ex.size() || ex.empty()) {
            throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
        }
    }
    const Rational ulp = pow10(exponent - frac_digits);
    Rational value = Rational(mpz_class(digits, 10)) * ulp;
    if (negative) {
        value = -value;
    }
    return {value, ulp};
}

Rational parse_rational(std::string_view text)
{
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return parse_decimal(s).value;
    }
    const Rational num = parse_decimal(s.substr(0, slash)).value;
    const Rational den = parse_decimal(s.substr(slash + 1)).value;
    if (sgn(den) == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
}

std::string to_decimal(const Rational& x, int decimals, bool round_up)
{
    if (decimals < 0) {
        throw std::invalid_argument("decimals must be non-negative");
    }
    const Rational scaled = x * pow10(decimals);
    mpz_class n;
    if (round_up) {
        mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    } else {
        mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    }
    const bool negative = sgn(n) < 0;
    std::string body = mpz_class(abs(n)).get_str();
    if (decimals > 0) {
        if (body.size() <= static_cast<std::size_t>(decimals)) {
            body.insert(0, static_cast<std::size_t>(decimals) + 1 - body.size(), '0');
        }
        body.insert(body.size() - static_cast<std::size_t>(decimals), 1, '.');
    }
    return negative ? "-" + body : body;
}

Arithmetic parse_arithmetic(std::string_view name)
{
    if (name == "float" || name == "floating") {
        return Arithmetic::floating;
    }
    if (name == "extended") {
        return Arithmetic::extended;
    }
    if (name == "rational") {
        return Arithmetic::rational;
    }
    throw std::invalid_argument("unknown arithmetic mode '" + std::string(name) + "'");
}

std::string_view to_string(Arithmetic mode)
{
    switch (mode) {
    case Arithmetic::floating: return "float";
    case Arithmetic::extended: return "extended";
    case Arithmetic::rational: return "rational";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// AlphaParams

AlphaParams::AlphaParams(Rational alpha, Arithmetic mode, unsigned precision_bits)
    : alpha_(std::move(alpha)), mode_(mode), precision_bits_(precision_bits)
{
    alpha_.canonicalize();
    if (!(alpha_ > 1)) {
        throw std::domain_error("alpha must be > 1");
    }
    if (precision_bits_ == 0) {
        throw std::domain_error("precision_bits must be positive");
    }
    value_ = alpha_.get_d();
    log_alpha_ = log_positive(alpha_);
    log_am1_ = log_positive(alpha_ - 1);
}

namespace {
Rational exact_double(double a)
{
    if (!std::isfinite(a)) {
        throw std::domain_error("alpha must be finite");
    }
    return Rational(a);
}
}  // namespace

AlphaParams::AlphaParams(double alpha, Arithmetic mode, unsigned precision_bits)
    : AlphaParams(exact_double(alpha), mode, precision_bits)
{
}

AlphaParams AlphaParams::parse(std::string_view text, Arithmetic mode, unsigned precision_bits)
{
    return AlphaParams(parse_rational(text), mode, precision_bits);
}

double AlphaParams::contraction_ratio(std::uint64_t i) const
{
    return std::exp(log_contraction_ratio(i));
}

double AlphaParams::log_contraction_ratio(std::uint64_t i) const
{
    if (i == 0) {
        throw std::domain_error("contraction index must be >= 1");
    }
    return log_am1_ - static_cast<double>(i) * log_alpha_;
}

AlphaParams AlphaParams::with_mode(Arithmetic mode) const
{
    AlphaParams copy = *this;
    copy.mode_ = mode;
    return copy;
}

// ---------------------------------------------------------------------------
// DigitPrefix

DigitPrefix::DigitPrefix(std::vector<digit_type> digits) : digits_(std::move(digits))
{
    for (digit_type d : digits_) {
        if (d < 1) {
            throw std::domain_error("digits must be >= 1");
        }
        sum_ += d;
    }
}

DigitPrefix::DigitPrefix(std::initializer_list<digit_type> digits)
    : DigitPrefix(std::vector<digit_type>(digits))
{
}

void DigitPrefix::push_back(digit_type d)
{
    if (d < 1) {
        throw std::domain_error("digits must be >= 1");
    }
    digits_.push_back(d);
    sum_ += d;
}

DigitPrefix DigitPrefix::first(std::size_t n) const
{
    n = std::min(n, digits_.size());
    return DigitPrefix(std::vector<digit_type>(digits_.begin(), digits_.begin() + n));
}

DigitPrefix DigitPrefix::parse(std::string_view text)
{
    std::vector<digit_type> out;
    std::string_view s = trim(text);
    if (s.empty()) {
        return {};
    }
    while (true) {
        const auto comma = s.find(',');
        const std::string_view tok = trim(s.substr(0, comma));
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
            throw std::invalid_argument("bad digit '" + std::string(tok) + "'");
        }
        if (v < 1 || v > static_cast<std::int64_t>(std::numeric_limits<digit_type>::max())) {
            throw std::domain_error("digits must be >= 1");
        }
        out.push_back(static_cast<digit_type>(v));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return DigitPrefix(std::move(out));
}

std::string DigitPrefix::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << digits_[i];
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Enclosure

Enclosure::Enclosure(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_))
{
    lo.canonicalize();
    hi.canonicalize();
    if (lo > hi) {
        throw std::domain_error("empty enclosure (lo > hi)");
    }
    if (sgn(lo) < 0 || hi > 1) {
        throw std::domain_error("enclosure must lie in [0,1]");
    }
}

std::string Enclosure::to_string(int decimals) const
{
    return "[" + to_decimal(lo, decimals, false) + "," + to_decimal(hi, decimals, true) + "]";
}

// ---------------------------------------------------------------------------
// codec

std::uint32_t digit_of(const Rational& x, const AlphaParams& params)
{
    check_unit_interval(x);
    detail::RationalArith ar(params);
    return digit_estimate(ar, x, params.log_alpha());
}

std::uint32_t digit_of(double x, const AlphaParams& params)
{
    if (!(x > 0.0 && x <= 1.0)) {
        throw std::domain_error("x must lie in (0,1]");
    }
    return digit_of(Rational(x), params);
}

ExactStep step(const Rational& x, const AlphaParams& params)
{
    check_unit_interval(x);
    detail::RationalArith ar(params);
    const std::uint32_t d = digit_estimate(ar, x, params.log_alpha());
    return {d, expand(ar, x, d, Round::nearest)};
}

FloatStep step(double x, const AlphaParams& params)
{
    const std::uint32_t d = digit_of(x, params);
    detail::DoubleArith ar(params);
    double image = expand(ar, x, d, Round::nearest);
    bool certified = true;
    if (image > 1.0) {
        image = 1.0;
        certified = false;
    } else if (!(image > 0.0)) {
        image = std::numeric_limits<double>::denorm_min();
        certified = false;
    }
    return {d, image, certified};
}

EncodeResult encode(const Enclosure& x, const AlphaParams& params, std::size_t max_digits)
{
    if (sgn(x.lo) <= 0) {
        throw std::domain_error("enclosure must lie in (0,1]");
    }
    switch (params.mode()) {
    case Arithmetic::rational: return encode_with(detail::RationalArith(params), x, params, max_digits);
    case Arithmetic::floating: return encode_with(detail::DoubleArith(params), x, params, max_digits);
    case Arithmetic::extended: return encode_with(detail::MpfrArith(params), x, params, max_digits);
    }
    throw std::logic_error("unreachable");
}

Enclosure decode(const DigitPrefix& prefix, const AlphaParams& params)
{
    if (prefix.empty()) {
        throw std::domain_error("decode requires a nonempty prefix");
    }
    switch (params.mode()) {
    case Arithmetic::rational: return decode_with(detail::RationalArith(params), prefix);
    case Arithmetic::floating: return decode_with(detail::DoubleArith(params), prefix);
    case Arithmetic::extended: return decode_with(detail::MpfrArith(params), prefix);
    }
    throw std::logic_error("unreachable");
}

double log_cylinder_length(const DigitPrefix& prefix, const AlphaParams& params)
{
    if (prefix.empty()) {
        throw std::domain_error("cylinder of an empty prefix");
    }
    return static_cast<double>(prefix.size()) * params.log_alpha_minus_one()
        - static_cast<double>(prefix.digit_sum()) * params.log_alpha();
}

double cylinder_length(const DigitPrefix& prefix, const AlphaParams& params)
{
    return std::exp(log_cylinder_length(prefix, params));
}

Rational exact_cylinder_length(const DigitPrefix& prefix, const AlphaParams& params)
{
    if (prefix.empty()) {
        throw std::domain_error("cylinder of an empty prefix");
    }
    const Rational& a = params.exact();
    Rational r = detail::pow_rational(a - 1, prefix.size()) / detail::pow_rational(a, prefix.digit_sum());
    r.canonicalize();
    return r;
}

PartialSum reconstruct_partial(const DigitPrefix& prefix, const AlphaParams& params)
{
    if (prefix.empty()) {
        throw std::domain_error("reconstruction of an empty prefix");
    }
    double value = 0.0;
    std::uint64_t partial = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        partial += prefix[i];
        value += std::exp(static_cast<double>(i) * params.log_alpha_minus_one()
                          - static_cast<double>(partial) * params.log_alpha());
    }
    return {value, cylinder_length(prefix, params)};
}

ExactPartialSum reconstruct_partial_exact(const DigitPrefix& prefix, const AlphaParams& params)
{
    if (prefix.empty()) {
        throw std::domain_error("reconstruction of an empty prefix");
    }
    const Rational& a = params.exact();
    const Rational am1 = a - 1;
    Rational value = 0;
    Rational term = 1;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i) {
            term *= am1;
        }
        term /= detail::pow_rational(a, prefix[i]);
        value += term;
    }
    Rational tail = term * am1;
    value.canonicalize();
    tail.canonicalize();
    return {value, tail};
}

}  // namespace alphaexp
