#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "alphaexp/levelsets.hpp"
#include "oracles.hpp"

using namespace alphaexp;

namespace {

// Free indices of the built-in example listed directly from their definition.
std::set<std::uint64_t> builtin_free_indices(double mu, std::uint64_t count)
{
    std::set<std::uint64_t> s;
    for (std::uint64_t n = 1; n <= count; ++n) {
        s.insert(n + static_cast<std::uint64_t>(std::ceil(std::sqrt(2.0 * mu * n) - 1e-12)));
    }
    return s;
}

}  // namespace

TEST_CASE("ceil_sqrt")
{
    CHECK(ceil_sqrt(0) == 0);
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(2) == 2);
    CHECK(ceil_sqrt(4) == 2);
    CHECK(ceil_sqrt(4000000) == 2000);
    CHECK(ceil_sqrt(4000001) == 2001);
    CHECK_THROWS_AS(ceil_sqrt(-1), std::domain_error);
}

TEST_CASE("built-in pattern: free indices and k_n")
{
    for (double mu : {0.5, 1.0, 2.0}) {
        const auto pat = SubsequencePattern::builtin_example(mu);
        const auto free = builtin_free_indices(mu, 400);
        std::uint64_t rank = 0;
        for (std::uint64_t i = 1; i <= 300; ++i) {
            CHECK(pat.constrained(i) == (free.count(i) == 0));
            if (pat.constrained(i)) {
                ++rank;
                CHECK(pat.value_at_rank(rank) == rank);
            }
        }
        for (std::uint64_t n = 1; n <= 200; ++n) {
            CHECK(k_of_n(pat, n) == n + ceil_sqrt(2.0L * mu * n));
        }
    }
    CHECK_THROWS_AS(SubsequencePattern::builtin_example(-1.0), std::domain_error);
}

TEST_CASE("built-in mu = 2 estimates at n = 10^6")
{
    const auto pat = SubsequencePattern::builtin_example(2.0);
    const auto est = mu_estimate(pat, 1'000'000);
    // k_n - n = 2000, so mu_n = 2000*2001/(2*10^6)
    CHECK(est.mu_n == doctest::Approx(2.001).epsilon(1e-14));
    CHECK(est.kn_ratio == doctest::Approx(1.002).epsilon(1e-14));
    CHECK(std::fabs(est.mu_n - 2.0) < 1e-2);
    CHECK(std::fabs(est.kn_ratio - 1.0) < 3e-3);
}

TEST_CASE("other patterns")
{
    const auto even = SubsequencePattern::even_indices(3);
    CHECK(even.constrained(2));
    CHECK(!even.constrained(3));
    CHECK(k_of_n(even, 10) == 19);   // the 10th odd index
    CHECK(even.value_sum(4) == 12);

    const auto list = SubsequencePattern::explicit_list({2, 5, 9}, {1, 2, 2}, 0.0);
    CHECK(list.constrained_count(8) == 2);
    CHECK(list.value_sum(3) == 5);
    CHECK(k_of_n(list, 6) == 8);
    CHECK_THROWS_AS(list.value_at_rank(4), std::out_of_range);
    CHECK_THROWS_AS(SubsequencePattern::explicit_list({3, 2}, {1, 1}, 0.0), std::domain_error);
    CHECK_THROWS_AS(SubsequencePattern::explicit_list({1, 2}, {2, 1}, 0.0), std::domain_error);
    CHECK_THROWS_AS(SubsequencePattern::explicit_list({1}, {1, 2}, 0.0), std::invalid_argument);

    const auto none = SubsequencePattern::unconstrained();
    CHECK(k_of_n(none, 77) == 77);
}

TEST_CASE("hypothesis gate")
{
    CHECK(check_hypotheses(SubsequencePattern::builtin_example(2.0)).admissible);
    CHECK(check_hypotheses(SubsequencePattern::unconstrained()).admissible);
    const auto even = check_hypotheses(SubsequencePattern::even_indices(1), 100'000);
    CHECK(!even.admissible);
    CHECK(!even.reason.empty());
    CHECK(!check_hypotheses(SubsequencePattern::builtin_example(1.0), 5).admissible);
}

TEST_CASE("B_M sampling respects the pattern and the digit bound")
{
    const AlphaParams p(2.0);
    const auto pat = SubsequencePattern::builtin_example(1.0);
    const auto s = sample_bm(pat, 12, p, 20'000, 3);
    REQUIRE(s.size() == 20'000);
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (pat.constrained(i + 1)) {
            CHECK(s[i] == pat.value_at_rank(++rank));
        } else {
            CHECK(s[i] <= 12);
        }
    }
    CHECK(sample_bm(pat, 12, p, 20'000, 3) == s);
}

TEST_CASE("B_M free law sums to 1 and has the d_M weights")
{
    const AlphaParams p(3.0);
    const double d = subseq_dimension_finite(0.7, 9, p);
    const auto law = bm_free_law(0.7, 9, p);
    CHECK(law.support_max() == 9);
    for (std::uint32_t j = 1; j <= 9; ++j) {
        CHECK(law.mass(j) == doctest::Approx(std::pow(2.0 / std::pow(3.0, j + 0.7), d)).epsilon(1e-12));
    }
}

TEST_CASE("B_M local dimension against direct evaluation")
{
    const AlphaParams p(2.0);
    const double mu = 1.0;
    const std::uint64_t M = 15;
    const auto pat = SubsequencePattern::builtin_example(mu);
    const auto law = bm_free_law(mu, M, p);
    const auto s = sample_bm(pat, M, p, 5000, 8);

    long double log_mass = 0;
    std::size_t last_free = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!pat.constrained(i + 1)) {
            log_mass += std::log(static_cast<long double>(law.mass(s[i])));
            last_free = i + 1;
        }
    }
    long double log_len = 0;
    for (std::size_t i = 0; i < last_free; ++i) {
        log_len += std::log(static_cast<long double>(p.contraction_ratio(s[i])));
    }
    const double direct = static_cast<double>(log_mass / log_len);
    CHECK(bm_local_dimension(s, pat, mu, M, p) == doctest::Approx(direct).epsilon(1e-10));

    // a shorter prefix ending in constrained positions gives the value at its last free index
    std::size_t cut = last_free;
    while (cut > 0 && !pat.constrained(cut)) {
        --cut;
    }
    const auto shorter = s.first(cut);
    const auto truncated = s.first(k_of_n(pat, cut - pat.constrained_count(cut)));
    CHECK(bm_local_dimension(shorter, pat, mu, M, p)
          == doctest::Approx(bm_local_dimension(truncated, pat, mu, M, p)).epsilon(1e-14));
}

TEST_CASE("B_M local dimension rejects prefixes outside the set")
{
    const AlphaParams p(2.0);
    const auto pat = SubsequencePattern::builtin_example(1.0);
    auto digits = sample_bm(pat, 10, p, 100, 1).digits();
    std::size_t constrained_pos = 0;
    while (!pat.constrained(constrained_pos + 1)) {
        ++constrained_pos;
    }
    auto bad = digits;
    bad[constrained_pos] += 1;
    CHECK_THROWS_AS(bm_local_dimension(DigitPrefix(bad), pat, 1.0, 10, p), std::invalid_argument);

    std::size_t free_pos = 0;
    while (pat.constrained(free_pos + 1)) {
        ++free_pos;
    }
    auto big = digits;
    big[free_pos] = 11;
    CHECK_THROWS_AS(bm_local_dimension(DigitPrefix(big), pat, 1.0, 10, p), std::domain_error);
}

TEST_CASE("pattern config parsing")
{
    const auto cfg = parse_pattern_config("# example\nkind = builtin-example\nmu = 2\nM = 40\n");
    CHECK(cfg.M == 40);
    CHECK(cfg.pattern.mu() == doctest::Approx(2.0));
    CHECK(k_of_n(cfg.pattern, 100) == 120);

    const auto list = parse_pattern_config("kind=explicit-list\nindices=2,5,9\nvalues=1,2,3\nmu=0.5");
    CHECK(list.pattern.constrained(5));
    CHECK(list.pattern.value_sum(3) == 6);

    const auto even = parse_pattern_config("kind = even-indices\nvalues = 4");
    CHECK(even.pattern.value_at_rank(7) == 4);

    CHECK_THROWS_AS(parse_pattern_config("kind = spiral"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pattern_config("colour = red"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pattern_config("kind builtin"), std::invalid_argument);
}
