#include "alphaexp/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "alphaexp/expansion.hpp"
#include "alphaexp/levelsets.hpp"
#include "alphaexp/measures.hpp"
#include "alphaexp/spectra.hpp"

namespace alphaexp {

namespace {

class Report {
public:
    explicit Report(std::string suite) : suite_(std::move(suite)) {}

    void near(std::string name, double target, double measured, double tol)
    {
        checks_.push_back({suite_, std::move(name), target, measured, tol,
                           std::fabs(measured - target) <= tol});
    }
    /// measured < bound
    void below(std::string name, double bound, double measured)
    {
        checks_.push_back({suite_, std::move(name), bound, measured, 0.0, measured < bound});
    }
    void holds(std::string name, bool ok)
    {
        checks_.push_back({suite_, std::move(name), 1.0, ok ? 1.0 : 0.0, 0.0, ok});
    }

    std::vector<Check> take() { return std::move(checks_); }

private:
    std::string suite_;
    std::vector<Check> checks_;
};

const double golden_log2 = std::log2((1.0 + std::sqrt(5.0)) / 2.0);

bool is_two(const AlphaParams& p)
{
    return p.exact() == 2;
}

std::vector<Check> codec_suite(const VerifyConfig& cfg)
{
    Report r("codec");
    const AlphaParams params = AlphaParams::parse(cfg.alpha, Arithmetic::rational, cfg.precision_bits);

    std::mt19937_64 gen(cfg.seed);
    const std::size_t trials = 200;
    const std::size_t depth = 200;
    std::size_t missed = 0;
    std::size_t width_mismatch = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const std::uint64_t q = 1 + gen() % (1ull << 40);
        const std::uint64_t p = 1 + gen() % q;
        const Rational x(mpz_class(std::to_string(p)), mpz_class(std::to_string(q)));
        const auto enc = encode(Enclosure::point(x), params, depth);
        const Enclosure cyl = decode(enc.prefix, params);
        missed += !cyl.contains(x);
        width_mismatch += cyl.width() != exact_cylinder_length(enc.prefix, params);
    }
    r.near("round-trip encloses x (failures of 200)", 0, static_cast<double>(missed), 0);
    r.near("decode width = (a-1)^n a^-sum (failures of 200)", 0, static_cast<double>(width_mismatch), 0);

    const auto ones = encode(Enclosure::point(1), params, 50);
    bool all_ones = ones.certified == 50;
    for (auto d : ones.prefix.digits()) {
        all_ones = all_ones && d == 1;
    }
    r.holds("x = 1 expands to all ones", all_ones);

    // alpha^{-k} lies in the (k+1)-th branch
    bool boundary_ok = true;
    for (unsigned k = 1; k <= 10; ++k) {
        Rational pk = 1;
        for (unsigned j = 0; j < k; ++j) {
            pk /= params.exact();
        }
        boundary_ok = boundary_ok && digit_of(pk, params) == k + 1;
    }
    r.holds("digit_of(alpha^-k) = k+1 for k = 1..10", boundary_ok);

    // certified depth in the inexact backends is consistent with the exact expansion
    const Rational x0(1, 3);
    const auto exact = encode(Enclosure::point(x0), params, 300);
    for (Arithmetic mode : {Arithmetic::floating, Arithmetic::extended}) {
        const auto approx = encode(Enclosure::point(x0), params.with_mode(mode), 300);
        bool agree = approx.certified <= approx.prefix.size();
        for (std::size_t i = 0; i < approx.certified; ++i) {
            agree = agree && approx.prefix[i] == exact.prefix[i];
        }
        r.holds(std::string("certified digits of 1/3 are exact (") + std::string(to_string(mode)) + ")",
                agree && approx.certified > 0);
    }
    return r.take();
}

std::vector<Check> pressure_suite(const VerifyConfig& cfg)
{
    Report r("pressure");
    const AlphaParams params = AlphaParams::parse(cfg.alpha);
    r.near("P(1,0) = 0", 0.0, pressure({1.0, 0.0}, params), 1e-12);

    double worst_sum = 0.0;
    double worst_fd = 0.0;
    const double la = params.log_alpha();
    for (int i = 0; i < 10; ++i) {
        const double t = 0.2 + 0.2 * i;
        for (int j = 0; j < 10; ++j) {
            // q spans (t log a - 3, t log a - 0.3), keeping the single-letter ratio <= e^{-0.3}
            const double q = t * la - 3.0 + 0.3 * j;
            const GibbsParams gp{t, q};
            double sum = 0.0;
            for (int d = 1; d <= 4000; ++d) {
                sum += std::exp(t * params.log_alpha_minus_one() - t * d * la + q * d);
            }
            worst_sum = std::max(worst_sum, std::fabs(std::log(sum) - pressure(gp, params)));
            const double h = 1e-5;
            const double fd = (pressure({t, q + h}, params) - pressure({t, q - h}, params)) / (2 * h);
            worst_fd = std::max(worst_fd, std::fabs(fd - pressure_dq(gp, params)));
        }
    }
    r.near("truncated single-letter sum vs P (max |diff|, 10x10 grid)", 0.0, worst_sum, 1e-9);
    r.near("finite-difference dP/dq vs analytic (max |diff|)", 0.0, worst_fd, 1e-6);

    double worst_p = 0.0;
    double worst_dq = 0.0;
    for (double beta : {1.2, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        const GibbsParams gp = solve_tq(beta, params);
        worst_p = std::max(worst_p, std::fabs(pressure(gp, params) - gp.q * beta));
        worst_dq = std::max(worst_dq, std::fabs(pressure_dq(gp, params) - beta));
    }
    r.near("|P(t(b),q(b)) - q(b) b| max over b grid", 0.0, worst_p, 1e-10);
    r.near("|dP/dq(t(b),q(b)) - b| max over b grid", 0.0, worst_dq, 1e-10);
    return r.take();
}

std::vector<Check> khintchine_suite(const VerifyConfig& cfg)
{
    Report r("khintchine");
    const AlphaParams params = AlphaParams::parse(cfg.alpha);
    const double a = params.value();
    r.near("kappa(a/(a-1)) = 1", 1.0, kappa(a / (a - 1.0), params), 1e-12);

    const auto leb = sample_digits(lebesgue_law(params), cfg.n_samples, cfg.seed);
    const double sigma = std::sqrt(lebesgue_law(params).variance());
    r.near("Lebesgue digit mean = a/(a-1)", a / (a - 1.0), birkhoff_mean(leb),
           3.0 * sigma / std::sqrt(static_cast<double>(cfg.n_samples)));

    const GibbsParams gp = solve_tq(cfg.beta, params);
    const DigitLaw law = gibbs_law(gp, params);
    const auto sample = sample_digits(law, cfg.n_samples, cfg.seed);
    r.near("Gibbs digit mean = beta", cfg.beta, birkhoff_mean(sample),
           4.0 * std::sqrt(law.variance() / static_cast<double>(cfg.n_samples)));
    r.near("Gibbs local dimension = kappa(beta)", kappa(cfg.beta, params),
           local_dimension(sample, law, params), 1e-2);
    return r.take();
}

std::vector<Check> moran_suite(const VerifyConfig& cfg)
{
    Report r("moran");
    const AlphaParams params = AlphaParams::parse(cfg.alpha);
    r.near("D(1) = 1", 1.0, moran_dimension(1, params), 1e-12);
    if (is_two(params)) {
        r.near("D(2) = log2 golden ratio", golden_log2, moran_dimension(2, params), 1e-10);
    }
    bool decreasing = true;
    double worst_residual = 0.0;
    double prev = 2.0;
    for (std::uint64_t M = 1; M <= 100; ++M) {
        const double D = moran_dimension(M, params);
        decreasing = decreasing && D < prev;
        prev = D;
        const double m = static_cast<double>(M);
        const double lhs = std::exp(D * params.log_alpha_minus_one() - m * D * params.log_alpha())
            / -std::expm1(-D * params.log_alpha());
        worst_residual = std::max(worst_residual, std::fabs(lhs - 1.0));
    }
    r.holds("D(M) strictly decreasing on M = 1..100", decreasing);
    r.near("Moran residual max over M = 1..100", 0.0, worst_residual, 1e-12);
    if (is_two(params)) {
        r.below("D(100) < 0.05", 0.05, prev);
    }
    r.below("D(10^6) < 1e-3", 1e-3, moran_dimension(1'000'000, params));
    return r.take();
}

std::vector<Check> subseq_suite(const VerifyConfig& cfg)
{
    Report r("subseq");
    const AlphaParams params = AlphaParams::parse(cfg.alpha);
    const double mu = cfg.mu;
    const double d = subseq_dimension_limit(mu, params);
    if (is_two(params) && mu == 1.0) {
        r.near("d(mu=1) = log2 golden ratio", golden_log2, d, 1e-10);
    }
    bool increasing = true;
    double prev = 0.0;
    for (std::uint64_t M = 2; M <= 50; ++M) {
        const double dm = subseq_dimension_finite(mu, M, params);
        increasing = increasing && dm > prev;
        prev = dm;
    }
    r.holds("d_M strictly increasing on M = 2..50", increasing);
    r.near("|d_50 - d|", 0.0, std::fabs(prev - d), 1e-6);

    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double m = 10.0 * i / 200.0;
        const double di = subseq_dimension_limit(m, params);
        const double c_log = params.log_alpha_minus_one() - m * params.log_alpha();
        worst = std::max(worst, std::fabs(std::exp(di * c_log) - std::exp(di * params.log_alpha()) + 1.0));
    }
    r.near("limit-equation residual max over mu grid (0,10]", 0.0, worst, 1e-12);

    const auto example = SubsequencePattern::builtin_example(2.0);
    const auto est = mu_estimate(example, 1'000'000);
    r.near("builtin example mu=2: mu_n at n=10^6", 2.0, est.mu_n, 1e-2);
    r.near("builtin example mu=2: k_n/n at n=10^6", 1.0, est.kn_ratio, 3e-3);
    r.holds("even-index pattern rejected by the hypothesis gate",
            !check_hypotheses(SubsequencePattern::even_indices(1), 100'000).admissible);

    const auto pattern = SubsequencePattern::builtin_example(mu);
    const std::size_t n = std::min<std::size_t>(cfg.n_samples, 100'000);
    const auto prefix = sample_bm(pattern, cfg.M, params, n, cfg.seed);
    r.near("B_M local dimension = d_M", subseq_dimension_finite(mu, cfg.M, params),
           bm_local_dimension(prefix, pattern, mu, cfg.M, params), 1e-2);
    return r.take();
}

}  // namespace

const std::vector<std::string_view>& suite_names()
{
    static const std::vector<std::string_view> names{"codec", "pressure", "khintchine", "moran", "subseq"};
    return names;
}

std::vector<Check> run_suite(std::string_view suite, const VerifyConfig& config)
{
    if (suite == "all") {
        std::vector<Check> all;
        for (auto name : suite_names()) {
            auto part = run_suite(name, config);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    if (suite == "codec") {
        return codec_suite(config);
    }
    if (suite == "pressure") {
        return pressure_suite(config);
    }
    if (suite == "khintchine") {
        return khintchine_suite(config);
    }
    if (suite == "moran") {
        return moran_suite(config);
    }
    if (suite == "subseq") {
        return subseq_suite(config);
    }
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace alphaexp
