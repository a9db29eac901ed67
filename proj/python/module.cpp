// pybind11 bindings for the toolkit's main operations. Measures, sequences,
// and reports cross the boundary as plain dicts mirroring the JSON schema;
// exact polynomials cross as their canonical text form.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "caratheo/boundstab.hpp"
#include "caratheo/certzero.hpp"
#include "caratheo/io.hpp"
#include "caratheo/measurefit.hpp"
#include "caratheo/ranklab.hpp"
#include "caratheo/schurid.hpp"

namespace py = pybind11;
using namespace caratheo;

namespace {

py::dict measureDict(const AtomicMeasure& mu) {
    py::list atoms;
    for (int i = 0; i < mu.atomCount(); ++i) {
        py::dict a;
        a["w"] = mu.weights[i];
        a["x"] = mu.points[i];
        atoms.append(a);
    }
    py::dict d;
    d["atoms"] = atoms;
    d["signed"] = mu.isSigned;
    return d;
}

AtomicMeasure measureFromDict(const py::dict& d) {
    AtomicMeasure mu;
    for (auto item : d["atoms"].cast<py::list>()) {
        py::dict a = item.cast<py::dict>();
        mu.weights.push_back(a["w"].cast<double>());
        mu.points.push_back(a["x"].cast<std::vector<double>>());
    }
    if (d.contains("signed")) mu.isSigned = d["signed"].cast<bool>();
    return mu;
}

py::dict fitDict(const FitResult& fr) {
    py::dict d;
    d["converged"] = fr.converged;
    d["residual"] = fr.residual;
    d["restartsUsed"] = fr.restartsUsed;
    d["measure"] = measureDict(fr.measure);
    return d;
}

py::dict caraDict(const CaraEstimate& est) {
    py::dict d;
    d["kMin"] = est.kMin;
    d["kFound"] = est.kFound;
    d["witness"] = fitDict(est.witness);
    return d;
}

FitConfig configFrom(double tol, int restarts, int maxIterations,
                     std::uint64_t seed) {
    FitConfig cfg;
    cfg.fitTolerance = tol;
    cfg.restarts = restarts;
    cfg.maxIterations = maxIterations;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_caratheo, m) {
    m.doc() = "moment-sequence toolkit: atomic-measure fitting, exact "
              "determinant identities, rank probes, and bound tables";

    py::register_exception<DimensionError>(m, "DimensionError");
    py::register_exception<DataIntegrityError>(m, "DataIntegrityError");
    py::register_exception<DivisibilityError>(m, "DivisibilityError");

    py::class_<Basis>(m, "Basis")
        .def_static("full_degree", &Basis::fullDegree, py::arg("n"), py::arg("d"))
        .def_static("homogeneous", &Basis::homogeneous, py::arg("n"), py::arg("d"))
        .def_static("gapped1d", &Basis::gapped1D, py::arg("exponents"))
        .def_static("custom",
                    [](int n, const std::vector<std::string>& elements) {
                        std::vector<PolyQ> polys;
                        for (const auto& e : elements)
                            polys.push_back(parsePoly(e, n));
                        return Basis::custom(n, std::move(polys));
                    },
                    py::arg("n"), py::arg("elements"))
        .def_static("parse", &parseBasisSpec, py::arg("spec"),
                    "shorthand 'full:n:d', 'hom:n:d', 'gapped1d:e1,e2,...', or "
                    "a path to a basis JSON file")
        .def_property_readonly("n", &Basis::variableCount)
        .def("__len__", &Basis::size)
        .def_property_readonly("elements", [](const Basis& b) {
            std::vector<std::string> out;
            for (const auto& e : b.elements()) out.push_back(polyToString(e));
            return out;
        });

    m.def("moment_curve",
          [](const Basis& b, const std::vector<double>& x) {
              return momentCurve(b, x);
          },
          py::arg("basis"), py::arg("x"));

    m.def("moment_map",
          [](const Basis& b, const py::dict& mu) {
              return momentMap(b, measureFromDict(mu)).values;
          },
          py::arg("basis"), py::arg("measure"));

    m.def("jacobian",
          [](const Basis& b, const py::dict& mu) {
              return jacobian(b, measureFromDict(mu)).matrix;
          },
          py::arg("basis"), py::arg("measure"),
          "total derivative of the weighted moment map, rows indexed by basis "
          "elements, columns by (weight, point) per atom");

    m.def("na_closed_form", &naClosedForm, py::arg("n"), py::arg("d"),
          py::arg("homogeneous") = false);

    m.def("na_probe",
          [](const Basis& b, int maxK, int trials, std::uint64_t seed) {
              NAReport r = naProbe(b, maxK, trials, seed);
              py::dict d;
              d["nA"] = r.nA;
              d["lowerBound"] = r.lowerBound;
              d["closedForm"] = r.closedForm;
              return d;
          },
          py::arg("basis"), py::arg("max_k"), py::arg("trials") = 3,
          py::arg("seed") = 0);

    m.def("schur_decompose",
          [](const std::vector<int>& exps) {
              auto d = schurDecompose(exps);
              py::dict out;
              out["exponents"] = d.exponents;
              out["pA"] = polyToString(d.pA);
              out["prefixPower"] = d.prefixPower;
              auto q = buildQ(d);
              std::vector<std::string> polys;
              for (const auto& p : q.polys) polys.push_back(polyToString(p));
              py::dict qd;
              qd["even"] = q.even;
              qd["k"] = q.k;
              qd["polys"] = polys;
              out["q"] = qd;
              return out;
          },
          py::arg("exponents"));

    m.def("verify_jacobian_identity",
          [](const std::vector<int>& exps, int symbolicCap, std::uint64_t seed) {
              IdentityReport r = verifyJacobianIdentity(exps, symbolicCap, seed);
              py::dict d;
              d["equal"] = r.verdict == Verdict::Equal;
              d["symbolic"] = r.symbolic;
              return d;
          },
          py::arg("exponents"), py::arg("symbolic_cap") = 8, py::arg("seed") = 0);

    m.def("check_condition22",
          [](const std::vector<int>& exps, const std::string& mode,
             std::uint64_t seed) {
              auto r = checkCondition22(exps, mode, seed);
              py::dict d;
              d["holds"] = r.holds;
              d["certified"] = r.certified;
              d["detail"] = r.detail;
              d["witness"] = r.witness;
              return d;
          },
          py::arg("exponents"), py::arg("mode") = "numeric", py::arg("seed") = 0);

    m.def("fit_measure",
          [](const Basis& b, const std::vector<double>& values, int k,
             bool signedFit, double tol, int restarts, int maxIterations,
             std::uint64_t seed) {
              MomentSeq s{b, values};
              return fitDict(fitMeasure(
                  s, k, signedFit, configFrom(tol, restarts, maxIterations, seed)));
          },
          py::arg("basis"), py::arg("values"), py::arg("k"),
          py::arg("signed") = false, py::arg("tol") = 1e-9,
          py::arg("restarts") = 64, py::arg("max_iterations") = 300,
          py::arg("seed") = 0);

    m.def("estimate_cara",
          [](const Basis& b, const std::vector<double>& values, bool signedFit,
             double tol, int restarts, int maxIterations, std::uint64_t seed,
             int certifiedLowerBound) {
              MomentSeq s{b, values};
              return caraDict(estimateCara(
                  s, signedFit, configFrom(tol, restarts, maxIterations, seed),
                  certifiedLowerBound));
          },
          py::arg("basis"), py::arg("values"), py::arg("signed") = false,
          py::arg("tol") = 1e-9, py::arg("restarts") = 64,
          py::arg("max_iterations") = 300, py::arg("seed") = 0,
          py::arg("certified_lower_bound") = 0);

    m.def("max_mass",
          [](const Basis& b, const std::vector<double>& values,
             const std::vector<double>& x, const std::string& e,
             double massTolerance, std::uint64_t seed) {
              MomentSeq s{b, values};
              FitConfig cfg;
              cfg.seed = seed;
              MaxMassResult r =
                  maxMass(s, x, parsePoly(e, b.variableCount()), cfg, massTolerance);
              py::dict d;
              d["point"] = r.point;
              d["cLow"] = r.cLow;
              d["cHigh"] = r.cHigh;
              d["cStar"] = r.cStar;
              d["upperBoundUsed"] = r.upperBoundUsed;
              return d;
          },
          py::arg("basis"), py::arg("values"), py::arg("x"), py::arg("e"),
          py::arg("mass_tolerance") = 1e-6, py::arg("seed") = 0);

    m.def("kernel_flow",
          [](const Basis& b, const py::dict& mu0, double t0, double t1,
             int steps, const std::string& normalization, double rate,
             int rateCoordinate) {
              FlowConfig fcfg;
              fcfg.normalization = normalization == "fixed-rate"
                                       ? FlowConfig::Normalization::FixedRate
                                       : FlowConfig::Normalization::Unit;
              fcfg.rate = rate;
              fcfg.rateCoordinate = rateCoordinate;
              auto traj =
                  kernelFlow(b, measureFromDict(mu0), t0, t1, steps, fcfg);
              py::list out;
              for (const auto& st : traj) {
                  py::dict d;
                  d["t"] = st.t;
                  d["measure"] = measureDict(st.measure);
                  d["momentDrift"] = st.momentDrift;
                  out.append(d);
              }
              return out;
          },
          py::arg("basis"), py::arg("measure"), py::arg("t0"), py::arg("t1"),
          py::arg("steps"), py::arg("normalization") = "unit",
          py::arg("rate") = -2.0, py::arg("rate_coordinate") = 0);

    m.def("waring_decompose",
          [](const std::string& f, double tol, std::uint64_t seed) {
              FitConfig cfg;
              cfg.fitTolerance = tol;
              cfg.seed = seed;
              WaringResult w = waringDecompose(parsePoly(f), cfg);
              py::dict d;
              d["measure"] = measureDict(w.measure);
              d["reconstructionError"] = w.reconstructionError;
              d["estimate"] = caraDict(w.estimate);
              return d;
          },
          py::arg("poly"), py::arg("tol") = 1e-9, py::arg("seed") = 0);

    m.def("certify",
          [](const std::string& name, const Basis& b) {
              ZeroCertificate c = certify(name, b);
              py::dict d;
              d["polynomial"] = polyToString(c.input.polynomial);
              d["zeroCount"] = static_cast<int>(c.input.zeros.size());
              d["matrixRank"] = c.matrixRank;
              d["floatRank"] = c.floatRank;
              d["independent"] = c.independent;
              d["impliedLowerBound"] = c.impliedLowerBound;
              return d;
          },
          py::arg("name"), py::arg("basis"),
          "independence certificate for a builtin nonnegative form "
          "(motzkin, robinson, harris) at its zero set");

    m.def("motzkin_example_basis", &motzkinExampleBasis);

    m.def("build_table",
          [](const std::vector<long long>& rows) {
              py::list out;
              for (const auto& r : buildTable(rows)) {
                  py::dict d;
                  d["2d"] = r.twoD;
                  d["nLower"] = r.nLower;
                  d["richter"] = r.richter;
                  d["richterMinusOne"] = r.richterMinusOne;
                  d["alphaNext"] = r.alphaNext;
                  d["maxFormula"] = r.maxFormula;
                  if (r.known) {
                      d["known"] = *r.known;
                      d["knownSource"] = r.knownSource;
                  }
                  out.append(d);
              }
              return out;
          },
          py::arg("rows"));

    m.def("parse_poly",
          [](const std::string& text, int n) {
              return polyToString(parsePoly(text, n));
          },
          py::arg("text"), py::arg("n") = 0,
          "parse and reprint a polynomial in canonical form");

    m.attr("__version__") = "0.1.0";
}
