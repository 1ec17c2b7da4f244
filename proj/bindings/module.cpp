#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "tailbound/bounds.hpp"
#include "tailbound/chaos.hpp"
#include "tailbound/distribution.hpp"
#include "tailbound/oracle.hpp"

namespace py = pybind11;
using namespace tailbound;

namespace {

ChaosModel chaos_model_from_string(const std::string& s) {
  if (s == "rademacher-exact") return ChaosModel::RademacherExact;
  if (s == "gaussian-spectral") return ChaosModel::GaussianSpectral;
  throw std::invalid_argument("unknown model: " + s);
}

McModel mc_model_from_string(const std::string& s) {
  if (s == "rademacher") return McModel::Rademacher;
  if (s == "gaussian") return McModel::Gaussian;
  throw std::invalid_argument("unknown model: " + s);
}

py::dict bound_dict(const BoundReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["method"] = std::string(to_string(r.method));
  d["event"] = std::string(to_string(r.event));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal lower bounds for P(xi >= 0) of centered random variables, "
            "their extremal witnesses, a moment-LP verification oracle, and "
            "second-order chaos applications.";

  // ---- bounds ----
  m.def("psi", &psi, py::arg("p"), py::arg("u"));
  m.def("psi_inverse", &psi_inverse, py::arg("p"), py::arg("c"));
  m.def("bound_first_p",
        [](double p, double c1p) { return bound_dict(bound_first_p({p, c1p})); },
        py::arg("p"), py::arg("c1p"));
  m.def("bound_first_p_explicit",
        [](double p, double c1p) { return bound_dict(bound_first_p_explicit({p, c1p})); },
        py::arg("p"), py::arg("c1p"));
  m.def("bound_p2_closed",
        [](double c12) { return bound_dict(bound_p2_closed(c12)); }, py::arg("c12"));
  m.def("bound_fourth", [](double x) { return bound_dict(bound_fourth({x})); },
        py::arg("x"));
  m.def("bound_pth",
        [](double p, double r) { return bound_dict(bound_pth({p, r})); },
        py::arg("p"), py::arg("r"));
  m.def("classical_first_p",
        [](double p, double c1p) {
          return bound_dict(classical_bound(MomentProfileFirstP{p, c1p}));
        },
        py::arg("p"), py::arg("c1p"));
  m.def("classical_fourth",
        [](double x) { return bound_dict(classical_bound(MomentProfileFourth{x})); },
        py::arg("x"));
  m.def("classical_pth",
        [](double p, double r) {
          return bound_dict(classical_bound(MomentProfilePth{p, r}));
        },
        py::arg("p"), py::arg("r"));
  m.def("fourth_branch_point", &fourth_branch_point);
  m.def("best_bound",
        [](std::optional<std::pair<double, double>> first_p, std::optional<double> fourth,
           std::optional<std::pair<double, double>> pth) {
          ProfileSet ps;
          if (first_p) ps.first_p = MomentProfileFirstP{first_p->first, first_p->second};
          if (fourth) ps.fourth = MomentProfileFourth{*fourth};
          if (pth) ps.pth = MomentProfilePth{pth->first, pth->second};
          return bound_dict(best_bound(ps));
        },
        py::arg("first_p") = std::nullopt, py::arg("fourth") = std::nullopt,
        py::arg("pth") = std::nullopt);

  // ---- distributions ----
  py::class_<DiscreteDistribution>(m, "DiscreteDistribution")
      .def(py::init([](const std::vector<std::pair<double, double>>& atoms) {
             std::vector<Atom> as;
             for (const auto& [v, p] : atoms) as.push_back({v, p});
             return DiscreteDistribution(std::move(as));
           }),
           py::arg("atoms"))
      .def_property_readonly("atoms",
                             [](const DiscreteDistribution& d) {
                               std::vector<std::pair<double, double>> out;
                               for (const Atom& a : d.atoms())
                                 out.emplace_back(a.value, a.prob);
                               return out;
                             })
      .def("raw_moment", &DiscreteDistribution::raw_moment, py::arg("k"))
      .def("abs_moment", &DiscreteDistribution::abs_moment, py::arg("p"))
      .def("prob_event",
           [](const DiscreteDistribution& d, const std::string& event) {
             return d.prob_event(event_from_string(event));
           },
           py::arg("event"))
      .def("to_json", &DiscreteDistribution::to_json_string)
      .def_static("from_json", &DiscreteDistribution::from_json_string, py::arg("text"));

  m.def("extremal_first_p", &extremal_first_p, py::arg("p"), py::arg("c"));
  m.def("extremal_fourth_twopoint", &extremal_fourth_twopoint, py::arg("x"));
  m.def("extremal_fourth_family",
        [](double c, double epsilon) {
          const ExtremalFamilyMember f = extremal_fourth_family(c, epsilon);
          py::dict d;
          d["distribution"] = f.distribution;
          d["epsilon"] = f.epsilon;
          d["target_fourth"] = f.target_fourth;
          return d;
        },
        py::arg("c"), py::arg("epsilon"));

  // ---- oracle ----
  py::class_<MomentConstraintSet>(m, "MomentConstraintSet")
      .def(py::init([](const std::vector<std::tuple<std::string, double, double>>& cs) {
             std::vector<MomentConstraint> out;
             for (const auto& [kind, e, t] : cs) {
               if (kind != "raw" && kind != "absolute")
                 throw std::invalid_argument("constraint kind must be raw or absolute");
               out.push_back({kind == "raw" ? MomentKind::Raw : MomentKind::Absolute, e, t});
             }
             return MomentConstraintSet(std::move(out));
           }),
           py::arg("constraints"))
      .def_static("for_first_p",
                  [](double p, double c1p) {
                    return MomentConstraintSet::for_first_p({p, c1p});
                  },
                  py::arg("p"), py::arg("c1p"))
      .def_static("for_fourth",
                  [](double x) { return MomentConstraintSet::for_fourth({x}); },
                  py::arg("x"))
      .def_static("for_pth",
                  [](double p, double r) { return MomentConstraintSet::for_pth({p, r}); },
                  py::arg("p"), py::arg("r"))
      .def("support_radius", &MomentConstraintSet::support_radius,
           py::arg("mass_floor") = 1e-4);

  auto oracle_dict = [](const OracleResult& r) {
    py::dict d;
    d["min_prob"] = r.min_prob;
    d["status"] = std::string(to_string(r.status));
    d["residuals"] = r.constraint_residuals;
    d["slack"] = r.slack;
    if (r.witness)
      d["witness"] = *r.witness;
    else
      d["witness"] = py::none();
    return d;
  };

  m.def("min_prob_lp",
        [oracle_dict](const MomentConstraintSet& cs, const std::string& event,
                      int grid_points, bool refine, bool cap_as_inequality) {
          const SupportGrid grid = SupportGrid::symmetric(cs.support_radius(), grid_points);
          return oracle_dict(
              min_prob_lp(cs, grid, event_from_string(event), refine, cap_as_inequality));
        },
        py::arg("constraints"), py::arg("event") = "ge-zero",
        py::arg("grid_points") = 2001, py::arg("refine") = true,
        py::arg("cap_as_inequality") = false);
  m.def("min_prob_parametric",
        [oracle_dict](const MomentConstraintSet& cs, int atom_count, const std::string& event) {
          return oracle_dict(min_prob_parametric(cs, atom_count, event_from_string(event)));
        },
        py::arg("constraints"), py::arg("atom_count"), py::arg("event") = "ge-zero");
  m.def("certify",
        [](double bound_value, double min_prob, double tol, const std::string& status) {
          BoundReport b{bound_value, BoundMethod::FirstPOptimal, Event::GtZero};
          OracleResult r;
          r.min_prob = min_prob;
          r.status = status == "infeasible" ? OracleStatus::Infeasible : OracleStatus::Optimal;
          return std::string(to_string(certify(b, r, tol)));
        },
        py::arg("bound_value"), py::arg("min_prob"), py::arg("tol") = 2e-3,
        py::arg("status") = "optimal");

  // ---- chaos ----
  py::class_<ChaosCoefficients>(m, "ChaosCoefficients")
      .def_static("from_full",
                  [](const std::vector<std::vector<double>>& rows) {
                    const int n = static_cast<int>(rows.size());
                    std::vector<double> flat;
                    for (const auto& r : rows) {
                      if (static_cast<int>(r.size()) != n)
                        throw std::invalid_argument("matrix must be square");
                      flat.insert(flat.end(), r.begin(), r.end());
                    }
                    return ChaosCoefficients::from_full(n, flat);
                  },
                  py::arg("rows"))
      .def_static("from_upper", &ChaosCoefficients::from_upper, py::arg("n"),
                  py::arg("upper"))
      .def_static("all_ones", &ChaosCoefficients::all_ones, py::arg("n"))
      .def_property_readonly("n", &ChaosCoefficients::size)
      .def("sum_sq_upper", &ChaosCoefficients::sum_sq_upper)
      .def("is_zero", &ChaosCoefficients::is_zero);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("frobenius_sq", &Spectrum::frobenius_sq)
      .def_readonly("fourth_power_sum", &Spectrum::fourth_power_sum);

  m.def("eigen_symmetric", &eigen_symmetric, py::arg("coefficients"));
  m.def("gaussian_chaos_moments",
        [](const Spectrum& s) {
          const GaussianChaosMoments g = gaussian_chaos_moments(s);
          return std::make_pair(g.m2, g.m4);
        },
        py::arg("spectrum"));
  m.def("chaos_ratio_42",
        [](const ChaosCoefficients& c, const std::string& model, int workers) {
          return chaos_ratio_42(c, chaos_model_from_string(model), workers);
        },
        py::arg("coefficients"), py::arg("model") = "rademacher-exact",
        py::arg("workers") = 1);
  m.def("interpolation_constant", &interpolation_constant, py::arg("p"));

  py::class_<EnumerationResult>(m, "EnumerationResult")
      .def_readonly("n", &EnumerationResult::n)
      .def_readonly("count_ge", &EnumerationResult::count_ge)
      .def_readonly("count_gt", &EnumerationResult::count_gt)
      .def_readonly("prob_ge", &EnumerationResult::prob_ge)
      .def_readonly("prob_gt", &EnumerationResult::prob_gt)
      .def_readonly("m2", &EnumerationResult::m2)
      .def_readonly("m4", &EnumerationResult::m4)
      .def_readonly("m1_abs", &EnumerationResult::m1_abs);

  m.def("rademacher_enumerate", &rademacher_enumerate, py::arg("coefficients"),
        py::arg("workers") = 1);

  py::class_<MonteCarloResult>(m, "MonteCarloResult")
      .def_readonly("estimate", &MonteCarloResult::estimate)
      .def_readonly("ci_low", &MonteCarloResult::ci_low)
      .def_readonly("ci_high", &MonteCarloResult::ci_high)
      .def_readonly("samples", &MonteCarloResult::samples)
      .def_readonly("seed", &MonteCarloResult::seed);

  m.def("mc_estimate",
        [](const ChaosCoefficients& c, const std::string& model, const std::string& event,
           std::uint64_t samples, std::uint64_t seed, int workers) {
          return mc_estimate(c, mc_model_from_string(model), event_from_string(event),
                             samples, seed, workers);
        },
        py::arg("coefficients"), py::arg("model"), py::arg("event"), py::arg("samples"),
        py::arg("seed"), py::arg("workers") = 1);

  py::class_<VectorSystem>(m, "VectorSystem")
      .def(py::init<std::vector<std::vector<double>>>(), py::arg("vectors"))
      .def_property_readonly("gram_offdiag", &VectorSystem::gram_offdiag)
      .def("sum_norm_sq", &VectorSystem::sum_norm_sq);

  m.def("hilbert_norm_probs",
        [](const VectorSystem& v, int workers) {
          const HilbertNormProbs p = hilbert_norm_probs_exact(v, workers);
          return std::make_pair(p.p_upper, p.p_lower);
        },
        py::arg("vectors"), py::arg("workers") = 1);
  m.def("hilbert_norm_probs_mc",
        [](const VectorSystem& v, std::uint64_t samples, std::uint64_t seed, int workers) {
          const HilbertNormProbsMc p = hilbert_norm_probs_mc(v, samples, seed, workers);
          return std::make_pair(p.upper, p.lower);
        },
        py::arg("vectors"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);
  m.def("gaussian_hilbert_prob", &gaussian_hilbert_prob, py::arg("lambdas"),
        py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);
  m.def("exponential_sum_stats",
        [](const std::vector<double>& a, std::uint64_t samples, std::uint64_t seed,
           int workers) {
          const ExponentialSumStats s = exponential_sum_stats(a, samples, seed, workers);
          py::dict d;
          d["c2sq"] = s.c2sq;
          d["c4fourth"] = s.c4fourth;
          d["ratio"] = s.ratio;
          d["c1_mc"] = s.c1_mc;
          d["prob_ge_mc"] = s.prob_ge_mc;
          return d;
        },
        py::arg("a"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1);
}
