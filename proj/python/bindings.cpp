#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alphaexp/expansion.hpp"
#include "alphaexp/levelsets.hpp"
#include "alphaexp/measures.hpp"
#include "alphaexp/spectra.hpp"
#include "alphaexp/verify.hpp"

namespace py = pybind11;
using namespace alphaexp;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object to_fraction(const Rational& q)
{
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

Rational from_python(const py::handle& x)
{
    if (py::isinstance<py::float_>(x)) {
        return Rational(x.cast<double>());
    }
    return parse_rational(py::str(x).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_alphaexp, m)
{
    m.doc() = "alpha-expansion codec, dimension spectra and digit-law sampling";

    py::enum_<Arithmetic>(m, "Arithmetic")
        .value("floating", Arithmetic::floating)
        .value("extended", Arithmetic::extended)
        .value("rational", Arithmetic::rational);

    py::class_<AlphaParams>(m, "AlphaParams")
        .def(py::init([](const py::object& alpha, Arithmetic mode, unsigned bits) {
                 return AlphaParams(from_python(alpha), mode, bits);
             }),
             py::arg("alpha"), py::arg("mode") = Arithmetic::extended, py::arg("precision_bits") = 256)
        .def_property_readonly("exact", [](const AlphaParams& p) { return to_fraction(p.exact()); })
        .def_property_readonly("value", &AlphaParams::value)
        .def_property_readonly("mode", &AlphaParams::mode)
        .def("with_mode", &AlphaParams::with_mode)
        .def("__repr__", [](const AlphaParams& p) {
            return "AlphaParams(" + p.exact().get_str() + ", " + std::string(to_string(p.mode())) + ")";
        });

    py::class_<GibbsParams>(m, "GibbsParams")
        .def(py::init<double, double>(), py::arg("t"), py::arg("q"))
        .def_readwrite("t", &GibbsParams::t)
        .def_readwrite("q", &GibbsParams::q)
        .def("admissible", &GibbsParams::admissible);

    m.def("digit_of", [](const py::object& x, const AlphaParams& p) { return digit_of(from_python(x), p); });

    m.def(
        "encode",
        [](const py::object& lo, const py::object& hi, const AlphaParams& p, std::size_t max_digits) {
            const Rational a = from_python(lo);
            const Rational b = hi.is_none() ? a : from_python(hi);
            const auto r = encode(Enclosure(a, b), p, max_digits);
            return py::make_tuple(r.prefix.digits(), r.certified);
        },
        py::arg("x"), py::arg("hi") = py::none(), py::arg("params"), py::arg("max_digits") = 30,
        "Digits of x (or of the interval [x, hi]) and the number of certified digits.");

    m.def(
        "decode",
        [](const std::vector<std::uint32_t>& digits, const AlphaParams& p) {
            const Enclosure e = decode(DigitPrefix(digits), p);
            return py::make_tuple(to_fraction(e.lo), to_fraction(e.hi));
        },
        py::arg("digits"), py::arg("params"));

    m.def("cylinder_length", [](const std::vector<std::uint32_t>& d, const AlphaParams& p) {
        return to_fraction(exact_cylinder_length(DigitPrefix(d), p));
    });

    m.def("kappa", &kappa, py::arg("beta"), py::arg("params"));
    m.def("pressure", &pressure, py::arg("gp"), py::arg("params"));
    m.def("pressure_dq", &pressure_dq, py::arg("gp"), py::arg("params"));
    m.def("pressure_dt", &pressure_dt, py::arg("gp"), py::arg("params"));
    m.def("solve_tq", &solve_tq, py::arg("beta"), py::arg("params"));
    m.def("moran_dimension", &moran_dimension, py::arg("M"), py::arg("params"));
    m.def("subseq_dimension_limit", &subseq_dimension_limit, py::arg("mu"), py::arg("params"));
    m.def("subseq_dimension_finite", &subseq_dimension_finite, py::arg("mu"), py::arg("M"), py::arg("params"));

    py::class_<DigitLaw>(m, "DigitLaw")
        .def_static("lebesgue", &DigitLaw::lebesgue)
        .def_static("gibbs", &DigitLaw::gibbs)
        .def_static("finite", &DigitLaw::finite)
        .def("mass", &DigitLaw::mass)
        .def("mean", &DigitLaw::mean)
        .def("variance", &DigitLaw::variance);

    m.def(
        "sample_digits",
        [](const DigitLaw& law, std::size_t n, std::uint64_t seed) {
            py::gil_scoped_release release;
            return sample_digits(law, n, seed).digits();
        },
        py::arg("law"), py::arg("n"), py::arg("seed"));
    m.def("local_dimension", [](const std::vector<std::uint32_t>& d, const DigitLaw& law, const AlphaParams& p) {
        return local_dimension(DigitPrefix(d), law, p);
    });

    py::class_<SubsequencePattern>(m, "SubsequencePattern")
        .def_static("builtin_example", &SubsequencePattern::builtin_example, py::arg("mu"))
        .def_static("even_indices", &SubsequencePattern::even_indices, py::arg("value"), py::arg("mu") = 0.0)
        .def_static("unconstrained", &SubsequencePattern::unconstrained, py::arg("mu") = 0.0)
        .def("constrained", &SubsequencePattern::constrained)
        .def_property_readonly("mu", &SubsequencePattern::mu)
        .def_property_readonly("description", &SubsequencePattern::description);

    m.def("k_of_n", &k_of_n);
    m.def("mu_estimate", [](const SubsequencePattern& pat, std::uint64_t n) {
        const auto e = mu_estimate(pat, n);
        return py::make_tuple(e.kn_ratio, e.mu_n);
    });
    m.def(
        "check_hypotheses",
        [](const SubsequencePattern& pat, std::uint64_t depth) {
            const auto r = check_hypotheses(pat, depth);
            return py::make_tuple(r.admissible, r.reason);
        },
        py::arg("pattern"), py::arg("depth") = 10'000'000);
    m.def("bm_local_dimension",
          [](const SubsequencePattern& pat, std::uint64_t M, const AlphaParams& p, std::size_t n, std::uint64_t seed) {
              const auto prefix = sample_bm(pat, M, p, n, seed);
              return bm_local_dimension(prefix, pat, pat.mu(), M, p);
          },
          py::arg("pattern"), py::arg("M"), py::arg("params"), py::arg("n"), py::arg("seed"),
          "Samples a B_M sequence of length n and returns its local dimension.");

    m.def(
        "verify",
        [](const std::string& suite, const std::string& alpha, std::uint64_t seed) {
            VerifyConfig cfg;
            cfg.alpha = alpha;
            cfg.seed = seed;
            py::list rows;
            for (const auto& c : run_suite(suite, cfg)) {
                rows.append(py::dict(py::arg("suite") = c.suite, py::arg("name") = c.name,
                                     py::arg("target") = c.target, py::arg("measured") = c.measured,
                                     py::arg("tolerance") = c.tolerance, py::arg("passed") = c.passed));
            }
            return rows;
        },
        py::arg("suite") = "all", py::arg("alpha") = "2", py::arg("seed") = 7);
}
