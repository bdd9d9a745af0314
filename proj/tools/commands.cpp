#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphaexp/expansion.hpp"
#include "alphaexp/levelsets.hpp"
#include "alphaexp/measures.hpp"
#include "alphaexp/spectra.hpp"
#include "alphaexp/verify.hpp"

namespace alphaexp::cli {

namespace {

using nlohmann::ordered_json;

std::string number(double v, int sig)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::vector<std::string> split_alphas(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("no alpha given");
    }
    return out;
}

OutputFormat parse_format(const std::string& s)
{
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "json") {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown format '" + s + "'");
}

/// Common flags shared by every subcommand.
struct CommonFlags {
    std::string alpha;
    unsigned precision_bits = 256;
    std::uint64_t seed = 7;
    std::string format = "csv";
    std::string out_path;
    int sig_digits = 15;

    void attach(CLI::App* sub, std::string default_alpha)
    {
        alpha = std::move(default_alpha);
        sub->add_option("--alpha", alpha, "base alpha > 1 (p/q or decimal); comma list for spectrum")
            ->capture_default_str();
        sub->add_option("--precision-bits", precision_bits, "working precision of the extended backend")
            ->capture_default_str();
        sub->add_option("--seed", seed, "random seed")->capture_default_str();
        sub->add_option("--format", format, "csv or json")->capture_default_str();
        sub->add_option("--out", out_path, "write output to this path instead of stdout");
        sub->add_option("--sig-digits", sig_digits, "significant digits of decimal output")
            ->capture_default_str();
    }

    RunConfig config() const
    {
        RunConfig cfg;
        cfg.alphas = split_alphas(alpha);
        cfg.precision_bits = precision_bits;
        cfg.seed = seed;
        cfg.format = parse_format(format);
        if (sig_digits < 1 || sig_digits > 40) {
            throw std::invalid_argument("--sig-digits must lie in 1..40");
        }
        cfg.sig_digits = sig_digits;
        return cfg;
    }
};

AlphaParams single_alpha(const RunConfig& cfg, Arithmetic mode)
{
    if (cfg.alphas.size() != 1) {
        throw std::invalid_argument("this command takes a single --alpha");
    }
    return AlphaParams::parse(cfg.alphas.front(), mode, cfg.precision_bits);
}

// ---------------------------------------------------------------------------

int cmd_encode(const RunConfig& cfg, const std::string& x_text, const std::string& mode_text,
               std::size_t max_digits, std::ostream& out)
{
    const Arithmetic mode = parse_arithmetic(mode_text);
    const AlphaParams params = single_alpha(cfg, mode);
    const DecimalValue x = parse_decimal(x_text);
    if (sgn(x.value) <= 0 || x.value > 1) {
        throw std::domain_error("x must lie in (0,1]");
    }
    const auto point = encode(Enclosure::point(x.value), params, max_digits);
    // every real that prints as the given decimal
    Rational lo = x.value - x.ulp / 2;
    Rational hi = x.value + x.ulp / 2;
    if (hi > 1) {
        hi = 1;
    }
    if (sgn(lo) <= 0) {
        lo = x.value / 2;
    }
    const auto rounded = encode(Enclosure{lo, hi}, params, max_digits);

    if (cfg.format == OutputFormat::json) {
        ordered_json j;
        j["alpha"] = cfg.alphas.front();
        j["x"] = x_text;
        j["mode"] = std::string(to_string(mode));
        j["max_digits"] = max_digits;
        j["digits"] = point.prefix.digits();
        j["point_certified"] = point.certified;
        j["enclosure"] = Enclosure{lo, hi}.to_string(cfg.sig_digits);
        j["certified"] = rounded.certified;
        out << j.dump(2) << "\n";
    } else {
        out << "alpha,x,mode,max_digits,digits,point_certified,enclosure,certified\n";
        out << csv_quote(cfg.alphas.front()) << ',' << csv_quote(x_text) << ',' << to_string(mode) << ','
            << max_digits << ',' << csv_quote(point.prefix.to_string()) << ',' << point.certified << ','
            << csv_quote(Enclosure{lo, hi}.to_string(cfg.sig_digits)) << ',' << rounded.certified << "\n";
    }
    return ok;
}

int cmd_decode(const RunConfig& cfg, const std::string& digits_text, const std::string& mode_text,
               std::ostream& out)
{
    const Arithmetic mode = parse_arithmetic(mode_text);
    const AlphaParams params = single_alpha(cfg, mode);
    const DigitPrefix prefix = DigitPrefix::parse(digits_text);
    const Enclosure cyl = decode(prefix, params);
    const double log_len = log_cylinder_length(prefix, params);
    const auto partial = reconstruct_partial(prefix, params);
    const int dec = cfg.sig_digits;
    if (cfg.format == OutputFormat::json) {
        ordered_json j;
        j["alpha"] = cfg.alphas.front();
        j["digits"] = prefix.digits();
        j["mode"] = std::string(to_string(mode));
        j["lo"] = to_decimal(cyl.lo, dec, false);
        j["hi"] = to_decimal(cyl.hi, dec, true);
        j["log_length"] = log_len;
        j["partial_sum"] = partial.value;
        out << j.dump(2) << "\n";
    } else {
        out << "alpha,digits,mode,lo,hi,log_length,partial_sum\n";
        out << csv_quote(cfg.alphas.front()) << ',' << csv_quote(prefix.to_string()) << ',' << to_string(mode)
            << ',' << to_decimal(cyl.lo, dec, false) << ',' << to_decimal(cyl.hi, dec, true) << ','
            << number(log_len, cfg.sig_digits) << ',' << number(partial.value, cfg.sig_digits) << "\n";
    }
    return ok;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& kind, std::ostream& out)
{
    if (kind != "kappa" && kind != "subseq") {
        throw std::invalid_argument("spectrum kind must be kappa or subseq");
    }
    const auto grid = cfg.grid.values();
    ordered_json rows = ordered_json::array();
    if (cfg.format == OutputFormat::csv) {
        out << "alpha,parameter,dimension\n";
    }
    for (const auto& a : cfg.alphas) {
        const AlphaParams params = AlphaParams::parse(a, Arithmetic::floating, cfg.precision_bits);
        for (double p : grid) {
            const double dim = kind == "kappa" ? kappa(p, params) : subseq_dimension_limit(p, params);
            if (cfg.format == OutputFormat::csv) {
                out << csv_quote(a) << ',' << number(p, cfg.sig_digits) << ',' << number(dim, cfg.sig_digits)
                    << "\n";
            } else {
                rows.push_back({{"alpha", a}, {"parameter", p}, {"dimension", dim}});
            }
        }
    }
    if (cfg.format == OutputFormat::json) {
        ordered_json j;
        j["kind"] = kind;
        j["points"] = rows;
        out << j.dump(2) << "\n";
    }
    return ok;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, double beta, double mu, std::uint64_t M,
               std::size_t n_samples, std::ostream& out)
{
    VerifyConfig vc;
    single_alpha(cfg, Arithmetic::extended);
    vc.alpha = cfg.alphas.front();
    vc.precision_bits = cfg.precision_bits;
    vc.seed = cfg.seed;
    vc.beta = beta;
    vc.mu = mu;
    vc.M = M;
    vc.n_samples = n_samples;
    const auto checks = run_suite(suite, vc);
    bool all = true;
    ordered_json rows = ordered_json::array();
    if (cfg.format == OutputFormat::csv) {
        out << "suite,check,target,measured,tolerance,status\n";
    }
    for (const auto& c : checks) {
        all = all && c.passed;
        if (cfg.format == OutputFormat::csv) {
            out << c.suite << ',' << csv_quote(c.name) << ',' << number(c.target, cfg.sig_digits) << ','
                << number(c.measured, cfg.sig_digits) << ',' << number(c.tolerance, cfg.sig_digits) << ','
                << (c.passed ? "pass" : "FAIL") << "\n";
        } else {
            rows.push_back({{"suite", c.suite},
                            {"check", c.name},
                            {"target", c.target},
                            {"measured", c.measured},
                            {"tolerance", c.tolerance},
                            {"passed", c.passed}});
        }
    }
    if (cfg.format == OutputFormat::json) {
        ordered_json j;
        j["suite"] = suite;
        j["passed"] = all;
        j["checks"] = rows;
        out << j.dump(2) << "\n";
    }
    return all ? ok : check_failed;
}

int cmd_levelset(const RunConfig& cfg, const std::string& config_path, double mu, std::uint64_t M_flag,
                 std::size_t n_samples, std::ostream& out)
{
    const AlphaParams params = single_alpha(cfg, Arithmetic::floating);
    PatternConfig pc{SubsequencePattern::builtin_example(mu), M_flag, 10'000'000};
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw std::invalid_argument("cannot read pattern config '" + config_path + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        pc = parse_pattern_config(ss.str());
        if (M_flag != 0) {
            pc.M = M_flag;
        }
    }
    const double pmu = pc.pattern.mu();
    const auto report = check_hypotheses(pc.pattern, pc.depth);

    ordered_json j;
    j["alpha"] = cfg.alphas.front();
    j["pattern"] = pc.pattern.description();
    j["mu"] = pmu;
    j["depth"] = pc.depth;
    ordered_json ladder = ordered_json::array();
    for (std::size_t i = 0; i < report.ladder.size(); ++i) {
        ladder.push_back({{"n", report.ladder[i]},
                          {"kn_ratio", report.estimates[i].kn_ratio},
                          {"mu_n", report.estimates[i].mu_n}});
    }
    j["hypotheses"] = ladder;
    j["admissible"] = report.admissible;
    if (!report.admissible) {
        j["status"] = "inadmissible: " + report.reason;
    } else {
        const std::uint64_t M = pc.M != 0 ? pc.M : default_truncation(pmu, params);
        const double d_M = subseq_dimension_finite(pmu, M, params);
        j["status"] = "ok";
        j["M"] = M;
        j["d_M"] = d_M;
        if (pmu > 0.0) {
            j["d_limit"] = subseq_dimension_limit(pmu, params);
        }
        const auto prefix = sample_bm(pc.pattern, M, params, n_samples, cfg.seed);
        j["n_total"] = n_samples;
        j["bm_local_dimension"] = bm_local_dimension(prefix, pc.pattern, pmu, M, params);
    }

    if (cfg.format == OutputFormat::json) {
        out << j.dump(2) << "\n";
    } else {
        out << "field,value\n";
        for (const auto& [key, val] : j.items()) {
            if (key == "hypotheses") {
                for (const auto& row : val) {
                    const std::string n = std::to_string(row["n"].get<std::uint64_t>());
                    out << "kn_ratio@" << n << ',' << number(row["kn_ratio"].get<double>(), cfg.sig_digits) << "\n";
                    out << "mu_n@" << n << ',' << number(row["mu_n"].get<double>(), cfg.sig_digits) << "\n";
                }
            } else if (val.is_number_float()) {
                out << key << ',' << number(val.get<double>(), cfg.sig_digits) << "\n";
            } else if (val.is_string()) {
                out << key << ',' << csv_quote(val.get<std::string>()) << "\n";
            } else {
                out << key << ',' << val.dump() << "\n";
            }
        }
    }
    return report.admissible ? ok : check_failed;
}

}  // namespace

Grid Grid::parse(std::string_view text)
{
    std::vector<std::string> parts;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() < 3 || parts.size() > 4) {
        throw std::invalid_argument("grid must be start:stop:count[:log]");
    }
    Grid g{parse_rational(parts[0]).get_d(), parse_rational(parts[1]).get_d(), 0, false};
    const long long count = std::stoll(parts[2]);
    if (count < 2) {
        throw std::invalid_argument("grid count must be >= 2");
    }
    g.count = static_cast<std::size_t>(count);
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            g.log_spacing = true;
        } else if (parts[3] != "linear") {
            throw std::invalid_argument("grid spacing must be log or linear");
        }
    }
    if (!(g.start < g.stop)) {
        throw std::invalid_argument("grid needs start < stop");
    }
    if (g.log_spacing && !(g.start > 0.0)) {
        throw std::invalid_argument("log grid needs start > 0");
    }
    return g;
}

std::vector<double> Grid::values() const
{
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f;
    }
    v.back() = stop;
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"alphaexp: alpha-expansion codec, dimension spectra and verification suites"};
    app.require_subcommand(1);

    CommonFlags enc_flags, dec_flags, spec_flags, ver_flags, lvl_flags;

    auto* enc = app.add_subcommand("encode", "digits of a decimal x in (0,1]");
    std::string x_text;
    std::string enc_mode = "extended";
    std::size_t max_digits = 30;
    enc->add_option("x", x_text, "decimal number in (0,1]")->required();
    enc->add_option("--mode", enc_mode, "float, extended or rational")->capture_default_str();
    enc->add_option("--max-digits", max_digits, "number of digits to emit")->capture_default_str();
    enc_flags.attach(enc, "2");

    auto* dec = app.add_subcommand("decode", "cylinder interval of a digit prefix");
    std::string digits_text;
    std::string dec_mode = "rational";
    dec->add_option("digits", digits_text, "comma-separated digits, e.g. 2,1,1")->required();
    dec->add_option("--mode", dec_mode, "float, extended or rational")->capture_default_str();
    dec_flags.attach(dec, "2");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "dimension spectrum curves as CSV/JSON");
    std::string kind;
    std::string grid_text;
    spectrum_cmd->add_option("kind", kind, "kappa or subseq")->required();
    spectrum_cmd->add_option("--grid", grid_text, "start:stop:count[:log]");
    spec_flags.attach(spectrum_cmd, "3/2,2,3");

    auto* ver = app.add_subcommand("verify", "run numerical acceptance checks");
    std::string suite = "all";
    double beta = 3.0;
    double ver_mu = 1.0;
    std::uint64_t ver_M = 30;
    std::size_t ver_n = 1'000'000;
    ver->add_option("--suite", suite, "codec, pressure, khintchine, moran, subseq or all")->capture_default_str();
    ver->add_option("--beta", beta, "digit mean for the Gibbs checks")->capture_default_str();
    ver->add_option("--mu", ver_mu, "mu for the subsequence checks")->capture_default_str();
    ver->add_option("--M", ver_M, "digit bound for the B_M checks")->capture_default_str();
    ver->add_option("--n-samples", ver_n, "Monte Carlo sample size")->capture_default_str();
    ver_flags.attach(ver, "2");

    auto* lvl = app.add_subcommand("levelset", "hypothesis check and dimension of a subsequence pattern");
    std::string config_path;
    double lvl_mu = 1.0;
    std::uint64_t lvl_M = 0;
    std::size_t lvl_n = 100'000;
    lvl->add_option("--config", config_path, "pattern config file (key = value lines)");
    lvl->add_option("--mu", lvl_mu, "mu of the builtin example when no config is given")->capture_default_str();
    lvl->add_option("--M", lvl_M, "digit bound (0: smallest M with |d_M - d| < 1e-6)")->capture_default_str();
    lvl->add_option("--n-samples", lvl_n, "length of the sampled digit sequence")->capture_default_str();
    lvl_flags.attach(lvl, "2");

    std::vector<const char*> argv;
    argv.push_back("alphaexp");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        auto dispatch = [&](std::ostream& os, const CommonFlags& flags, auto&& body) {
            RunConfig cfg = flags.config();
            if (flags.out_path.empty()) {
                return body(cfg, os);
            }
            std::ostringstream buffer;
            const int code = body(cfg, buffer);
            std::ofstream file(flags.out_path, std::ios::binary);
            if (!file) {
                throw std::invalid_argument("cannot write '" + flags.out_path + "'");
            }
            file << buffer.str();
            return code;
        };
        if (enc->parsed()) {
            return dispatch(out, enc_flags, [&](const RunConfig& cfg, std::ostream& os) {
                return cmd_encode(cfg, x_text, enc_mode, max_digits, os);
            });
        }
        if (dec->parsed()) {
            return dispatch(out, dec_flags, [&](const RunConfig& cfg, std::ostream& os) {
                return cmd_decode(cfg, digits_text, dec_mode, os);
            });
        }
        if (spectrum_cmd->parsed()) {
            return dispatch(out, spec_flags, [&](RunConfig cfg, std::ostream& os) {
                if (!grid_text.empty()) {
                    cfg.grid = Grid::parse(grid_text);
                } else if (kind == "kappa") {
                    cfg.grid = Grid{1.01, 20.0, 200, true};
                } else {
                    cfg.grid = Grid{0.05, 10.0, 200, false};
                }
                return cmd_spectrum(cfg, kind, os);
            });
        }
        if (ver->parsed()) {
            return dispatch(out, ver_flags, [&](const RunConfig& cfg, std::ostream& os) {
                return cmd_verify(cfg, suite, beta, ver_mu, ver_M, ver_n, os);
            });
        }
        if (lvl->parsed()) {
            return dispatch(out, lvl_flags, [&](const RunConfig& cfg, std::ostream& os) {
                return cmd_levelset(cfg, config_path, lvl_mu, lvl_M, lvl_n, os);
            });
        }
    } catch (const std::exception& e) {
        err << "alphaexp: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

}  // namespace alphaexp::cli
