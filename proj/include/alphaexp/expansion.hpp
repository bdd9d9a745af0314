#pragma once

// Alpha-expansion codec of reals in (0,1]:
//
//   x = sum_{i>=1} (alpha-1)^{i-1} alpha^{-(d_1+...+d_i)},   d_i >= 1,
//
// generated by the expanding map T(x) = (alpha^i x - 1)/(alpha - 1) on the
// branch (alpha^{-i}, alpha^{-i+1}].  The contractions T_i(y) = ((alpha-1) y + 1)/alpha^i
// are its local inverses; cylinders are images of (0,1] under T_{d_1}∘...∘T_{d_n}.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace alphaexp {

using Rational = mpq_class;

/// Parses "p/q", an integer, or an exact decimal ("0.125", "-3.5") into a rational.
Rational parse_rational(std::string_view text);

/// Parses a plain decimal string and also returns one unit in its last place.
struct DecimalValue {
    Rational value;
    Rational ulp;
};
DecimalValue parse_decimal(std::string_view text);

/// Rational to decimal with `decimals` fraction digits, rounding toward -inf or +inf.
std::string to_decimal(const Rational& x, int decimals, bool round_up = false);

enum class Arithmetic {
    floating,   // IEEE doubles with directed rounding
    extended,   // MPFR at precision_bits with directed rounding
    rational,   // exact GMP rationals
};

Arithmetic parse_arithmetic(std::string_view name);
std::string_view to_string(Arithmetic mode);

/// The base alpha > 1 and the arithmetic policy used by the codec.
///
/// alpha is held exactly; double-valued derived constants are cached on construction.
class AlphaParams {
public:
    explicit AlphaParams(Rational alpha, Arithmetic mode = Arithmetic::extended,
                         unsigned precision_bits = 256);
    explicit AlphaParams(double alpha, Arithmetic mode = Arithmetic::extended,
                         unsigned precision_bits = 256);

    static AlphaParams parse(std::string_view text, Arithmetic mode = Arithmetic::extended,
                             unsigned precision_bits = 256);

    const Rational& exact() const noexcept { return alpha_; }
    double value() const noexcept { return value_; }
    double log_alpha() const noexcept { return log_alpha_; }
    /// log(alpha - 1); may be negative, zero or positive.
    double log_alpha_minus_one() const noexcept { return log_am1_; }
    Arithmetic mode() const noexcept { return mode_; }
    unsigned precision_bits() const noexcept { return precision_bits_; }

    /// (alpha-1)/alpha^i, the contraction ratio of T_i.
    double contraction_ratio(std::uint64_t i) const;
    double log_contraction_ratio(std::uint64_t i) const;

    AlphaParams with_mode(Arithmetic mode) const;

private:
    Rational alpha_;
    Arithmetic mode_;
    unsigned precision_bits_;
    double value_;
    double log_alpha_;
    double log_am1_;
};

/// Finite prefix (d_1, ..., d_n) of a digit sequence; every digit is >= 1.
class DigitPrefix {
public:
    using digit_type = std::uint32_t;

    DigitPrefix() = default;
    explicit DigitPrefix(std::vector<digit_type> digits);
    DigitPrefix(std::initializer_list<digit_type> digits);

    static DigitPrefix parse(std::string_view text);
    /// Comma-separated digits, no spaces.
    std::string to_string() const;

    const std::vector<digit_type>& digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    bool empty() const noexcept { return digits_.empty(); }
    digit_type operator[](std::size_t i) const { return digits_[i]; }
    std::uint64_t digit_sum() const noexcept { return sum_; }

    void push_back(digit_type d);
    DigitPrefix first(std::size_t n) const;

    bool operator==(const DigitPrefix& other) const { return digits_ == other.digits_; }

private:
    std::vector<digit_type> digits_;
    std::uint64_t sum_ = 0;
};

/// Closed interval [lo, hi] inside [0,1].
struct Enclosure {
    Rational lo;
    Rational hi;

    Enclosure(Rational lo_, Rational hi_);
    static Enclosure point(const Rational& x) { return Enclosure{x, x}; }

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& other) const { return lo <= other.lo && other.hi <= hi; }
    /// "[lo,hi]" with lo rounded down and hi rounded up.
    std::string to_string(int decimals) const;
};

/// The unique i >= 1 with x in (alpha^{-i}, alpha^{-i+1}].  Exact.
std::uint32_t digit_of(const Rational& x, const AlphaParams& params);
/// Exact for the binary value of x, independent of params.mode().
std::uint32_t digit_of(double x, const AlphaParams& params);

struct ExactStep {
    std::uint32_t digit;
    Rational image;
};
ExactStep step(const Rational& x, const AlphaParams& params);

struct FloatStep {
    std::uint32_t digit;
    double image;
    /// False when rounding pushed T(x) out of (0,1] and it was clamped.
    bool certified;
};
FloatStep step(double x, const AlphaParams& params);

struct EncodeResult {
    DigitPrefix prefix;
    /// Leading digits valid for every point of the input enclosure; <= prefix.size().
    std::size_t certified = 0;
};

/// Emits digits while both endpoints of the enclosure agree, up to max_digits.
EncodeResult encode(const Enclosure& x, const AlphaParams& params, std::size_t max_digits);

/// Cylinder of the prefix, rounded outward in non-rational modes.
Enclosure decode(const DigitPrefix& prefix, const AlphaParams& params);

/// n log(alpha-1) - (d_1+...+d_n) log alpha.
double log_cylinder_length(const DigitPrefix& prefix, const AlphaParams& params);
/// exp(log_cylinder_length); underflows to 0 for long prefixes.
double cylinder_length(const DigitPrefix& prefix, const AlphaParams& params);
Rational exact_cylinder_length(const DigitPrefix& prefix, const AlphaParams& params);

struct PartialSum {
    double value;
    double tail_bound;
};
/// Partial series; the expanded point lies in [value, value + tail_bound].
PartialSum reconstruct_partial(const DigitPrefix& prefix, const AlphaParams& params);

struct ExactPartialSum {
    Rational value;
    Rational tail_bound;
};
ExactPartialSum reconstruct_partial_exact(const DigitPrefix& prefix, const AlphaParams& params);

}  // namespace alphaexp
