// tailbound: lower bounds for P(xi >= 0) of centered random variables from
// moment ratios, extremal witnesses, an LP verification oracle, and
// second-order chaos probabilities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailbound/bounds.hpp"
#include "tailbound/chaos.hpp"
#include "tailbound/distribution.hpp"
#include "tailbound/oracle.hpp"

using nlohmann::ordered_json;
using namespace tailbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitFalsification = 4;
constexpr int kExitResource = 5;

struct GlobalOpts {
  std::string format = "human";
  std::uint64_t seed = 0;
  int workers = 1;
  bool json() const { return format == "json"; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void emit(const GlobalOpts& g, const ordered_json& j, const std::string& human) {
  if (g.json())
    std::printf("%s\n", j.dump(2).c_str());
  else
    std::printf("%s", human.c_str());
}

ordered_json bound_json(const BoundReport& r) {
  return {{"method", std::string(to_string(r.method))},
          {"value", r.value},
          {"event", std::string(to_string(r.event))}};
}

ordered_json dist_json(const DiscreteDistribution& d) {
  ordered_json atoms = ordered_json::array();
  for (const Atom& a : d.atoms()) atoms.push_back({a.value, a.prob});
  return ordered_json{{"atoms", atoms}};
}

struct ProfileFlags {
  double p = 0.0;
  double c1p = -1.0;
  double c42 = -1.0;
  double cp2 = -1.0;
  bool has_p = false;

  std::optional<MomentProfileFirstP> first_p() const {
    if (c1p < 0.0) return std::nullopt;
    if (!has_p) throw std::domain_error("--c1p requires --p");
    return MomentProfileFirstP{p, c1p};
  }
  std::optional<MomentProfileFourth> fourth() const {
    if (c42 < 0.0) return std::nullopt;
    return MomentProfileFourth{c42};
  }
  std::optional<MomentProfilePth> pth() const {
    if (cp2 < 0.0) return std::nullopt;
    if (!has_p) throw std::domain_error("--cp2 requires --p");
    return MomentProfilePth{p, cp2};
  }
  int count() const {
    return (c1p >= 0.0 ? 1 : 0) + (c42 >= 0.0 ? 1 : 0) + (cp2 >= 0.0 ? 1 : 0);
  }
  void add_options(CLI::App* cmd) {
    cmd->add_option("--p", p, "moment exponent (with --c1p: p > 1; with --cp2: p > 2)")
        ->each([this](const std::string&) { has_p = true; });
    cmd->add_option("--c1p", c1p, "ratio E|xi| / (E|xi|^p)^{1/p}, in (0,1]");
    cmd->add_option("--c42-fourth", c42, "ratio E xi^4 / (E xi^2)^2, >= 1");
    cmd->add_option("--cp2", cp2, "ratio (E|xi|^p)^{1/p} / (E xi^2)^{1/2}, >= 1");
  }
};

// ---- bound ------------------------------------------------------------

int cmd_bound(const GlobalOpts& g, const ProfileFlags& pf, bool all) {
  if (pf.count() == 0)
    throw std::domain_error(
        "supply a profile: --p with --c1p, --c42-fourth, or --p with --cp2");

  std::vector<BoundReport> reports;
  ProfileSet ps;
  if (auto fp = pf.first_p()) {
    ps.first_p = fp;
    reports.push_back(classical_bound(*fp));
    reports.push_back(bound_first_p_explicit(*fp));
    reports.push_back(bound_first_p(*fp));
    if (fp->p == 2.0) reports.push_back(bound_p2_closed(fp->c1p));
  }
  if (auto f4 = pf.fourth()) {
    ps.fourth = f4;
    reports.push_back(classical_bound(*f4));
    reports.push_back(bound_fourth(*f4));
  }
  if (auto pt = pf.pth()) {
    ps.pth = pt;
    reports.push_back(classical_bound(*pt));
    reports.push_back(bound_pth(*pt));
  }

  ordered_json j;
  j["bounds"] = ordered_json::array();
  std::string human;
  for (const BoundReport& r : reports) {
    j["bounds"].push_back(bound_json(r));
    human += "  " + std::string(to_string(r.method)) + " (" +
             std::string(to_string(r.event)) + "): " + fmt(r.value) + "\n";
  }
  if (all) {
    const BoundReport best = best_bound(ps);
    j["best"] = bound_json(best);
    human +=
        "best: " + std::string(to_string(best.method)) + " = " + fmt(best.value) + "\n";
  }
  emit(g, j, human);
  return kExitOk;
}

// ---- extremal ---------------------------------------------------------

int cmd_extremal(const GlobalOpts& g, const ProfileFlags& pf, double epsilon) {
  if (pf.count() != 1)
    throw std::domain_error("supply exactly one profile (--p with --c1p, or --c42-fourth)");
  if (pf.cp2 >= 0.0)
    throw std::domain_error("no extremal construction exists for the p-th moment bound");

  std::optional<DiscreteDistribution> dist;
  BoundReport bound{0.0, BoundMethod::P2Closed, Event::GtZero};
  double eps_used = 0.0;
  if (auto fp = pf.first_p()) {
    dist = extremal_first_p(fp->p, fp->c1p);
    bound = bound_first_p(*fp);
  } else {
    const auto f4 = pf.fourth();
    bound = bound_fourth(*f4);
    if (f4->x < fourth_branch_point()) {
      dist = extremal_fourth_twopoint(f4->x);
    } else {
      ExtremalFamilyMember fam = extremal_fourth_family(f4->x, epsilon);
      dist = std::move(fam.distribution);
      eps_used = fam.epsilon;
    }
  }

  ordered_json j;
  j["distribution"] = dist_json(*dist);
  ordered_json moments;
  moments["mean"] = dist->raw_moment(1);
  moments["abs_first"] = dist->abs_moment(1.0);
  moments["second"] = dist->raw_moment(2);
  moments["fourth"] = dist->raw_moment(4);
  if (auto fp = pf.first_p()) moments["abs_p"] = dist->abs_moment(fp->p);
  j["moments"] = moments;

  ordered_json probs;
  double attained = 2.0;
  std::string attained_event = "none";
  for (Event e : {Event::GeZero, Event::GtZero, Event::LeZero, Event::LtZero}) {
    const double pr = dist->prob_event(e);
    probs[std::string(to_string(e))] = pr;
    if (std::abs(pr - bound.value) < std::abs(attained - bound.value)) {
      attained = pr;
      attained_event = std::string(to_string(e));
    }
  }
  j["probabilities"] = probs;
  j["bound"] = bound_json(bound);
  const bool sharp = std::abs(attained - bound.value) <= 1e-9;
  j["sharp"] = sharp;
  j["attained_event"] = sharp ? attained_event : "none";
  if (pf.c42 >= fourth_branch_point()) j["epsilon"] = eps_used;

  std::string human = "atoms:\n";
  for (const Atom& a : dist->atoms())
    human += "  x = " + fmt(a.value) + "  prob = " + fmt(a.prob) + "\n";
  human += "mean " + fmt(dist->raw_moment(1)) + ", E|x| " + fmt(dist->abs_moment(1.0)) +
           ", Ex^2 " + fmt(dist->raw_moment(2)) + ", Ex^4 " + fmt(dist->raw_moment(4)) +
           "\n";
  human += "bound " + std::string(to_string(bound.method)) + " = " + fmt(bound.value) +
           (sharp ? " (attained for " + attained_event + ")" : " (not attained)") + "\n";
  emit(g, j, human);
  return kExitOk;
}

// ---- oracle -----------------------------------------------------------

int cmd_oracle(const GlobalOpts& g, const ProfileFlags& pf, const std::string& event_name,
               int grid_points, const std::string& method, int atoms, double tol,
               bool cap_inequality) {
  if (pf.count() != 1) throw std::domain_error("supply exactly one profile for the oracle");
  const Event event = event_from_string(event_name);
  if (event != Event::GeZero && event != Event::GtZero)
    throw std::domain_error("--event must be ge or gt");

  std::optional<MomentConstraintSet> cs;
  BoundReport bound{0.0, BoundMethod::P2Closed, Event::GtZero};
  if (auto fp = pf.first_p()) {
    cs = MomentConstraintSet::for_first_p(*fp);
    bound = fp->p == 2.0 ? bound_p2_closed(fp->c1p) : bound_first_p(*fp);
  } else if (auto f4 = pf.fourth()) {
    cs = MomentConstraintSet::for_fourth(*f4);
    bound = bound_fourth(*f4);
  } else {
    cs = MomentConstraintSet::for_pth(*pf.pth());
    bound = bound_pth(*pf.pth());
  }

  constexpr int kDefaultGridPoints = 2001;
  const SupportGrid grid = SupportGrid::symmetric(cs->support_radius(), grid_points);
  OracleResult res;
  if (method == "lp") {
    res = min_prob_lp(*cs, grid, event, true, cap_inequality);
  } else if (method == "parametric") {
    res = min_prob_parametric(*cs, atoms, event);
  } else {
    throw std::domain_error("--method must be lp or parametric");
  }
  const CertifyVerdict verdict = certify(bound, res, tol);

  ordered_json j;
  j["event"] = std::string(to_string(event));
  j["status"] = std::string(to_string(res.status));
  if (res.status != OracleStatus::Infeasible) {
    j["min_prob"] = res.min_prob;
    j["witness"] = dist_json(*res.witness);
    j["residuals"] = res.constraint_residuals;
  }
  j["slack"] = res.slack;
  if (method == "lp")
    j["grid"] = {{"xmin", grid.xmin}, {"xmax", grid.xmax}, {"points", grid.points}};
  j["bound"] = bound_json(bound);
  j["tolerance"] = tol;
  j["verdict"] = std::string(to_string(verdict));
  if (event == Event::GtZero)
    j["note"] =
        "strict event: a grid atom exactly at 0 is excluded from the objective, "
        "so the reported minimum may exceed the infimum, which mass just above 0 "
        "can approach";

  std::string human;
  if (res.status != OracleStatus::Infeasible) {
    human += "oracle minimum P(" + std::string(to_string(event)) + ") = " +
             fmt(res.min_prob) + " (" + std::string(to_string(res.status)) + ")\n";
    human += "bound " + std::string(to_string(bound.method)) + " = " + fmt(bound.value) +
             "\n";
    human += "witness:\n";
    for (const Atom& a : res.witness->atoms())
      human += "  x = " + fmt(a.value) + "  prob = " + fmt(a.prob) + "\n";
  } else {
    human += "oracle: no grid distribution satisfies the constraints at this resolution\n";
  }
  human += "verdict: " + std::string(to_string(verdict)) + "\n";
  emit(g, j, human);

  if (verdict == CertifyVerdict::BoundTooHigh) return kExitFalsification;
  if (res.status == OracleStatus::Infeasible && grid_points >= kDefaultGridPoints)
    return kExitInfeasible;
  return kExitOk;
}

// ---- chaos ------------------------------------------------------------

ChaosCoefficients load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::json::parse(text);
    return ChaosCoefficients::from_upper(j.at("n").get<int>(),
                                         j.at("upper").get<std::vector<double>>());
  }

  std::vector<double> values;
  int rows = 0;
  std::string line;
  std::stringstream lines(text);
  std::size_t cols = 0;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::stringstream cells(line);
    std::string cell;
    std::size_t row_cols = 0;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end != nullptr && (*end == ' ' || *end == '\r')) ++end;
      if (end == cell.c_str() || (end != nullptr && *end != '\0'))
        throw std::domain_error("malformed CSV entry: " + cell);
      values.push_back(v);
      ++row_cols;
    }
    if (cols == 0) cols = row_cols;
    if (row_cols != cols) throw std::domain_error("ragged CSV matrix");
    ++rows;
  }
  if (rows == 0 || static_cast<std::size_t>(rows) != cols)
    throw std::domain_error("matrix must be square");
  return ChaosCoefficients::from_full(rows, values);
}

VectorSystem load_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open " + path);
  const auto j = nlohmann::json::parse(in);
  return VectorSystem(j.at("vectors").get<std::vector<std::vector<double>>>());
}

int cmd_chaos(const GlobalOpts& g, const std::string& matrix_file,
              const std::string& vectors_file, int all_ones_n, const std::string& mode,
              const std::string& model, const std::string& event_name,
              std::uint64_t samples) {
  const double positivity_floor = (2.0 * std::sqrt(3.0) - 3.0) / 15.0;
  const double cap = std::pow(15.0, 0.25);

  const int sources = (matrix_file.empty() ? 0 : 1) + (vectors_file.empty() ? 0 : 1) +
                      (all_ones_n > 0 ? 1 : 0);
  if (sources != 1)
    throw std::domain_error("supply exactly one of --matrix, --vectors, --all-ones");

  ordered_json j;
  std::string human;

  if (!vectors_file.empty()) {
    const VectorSystem vs = load_vectors(vectors_file);
    j["n"] = vs.count();
    if (mode == "enum") {
      if (vs.count() > 24)
        throw std::length_error("exact enumeration limited to n <= 24");
      const HilbertNormProbs p = hilbert_norm_probs_exact(vs, g.workers);
      j["p_upper"] = p.p_upper;
      j["p_lower"] = p.p_lower;
      j["checks"] = {{"upper_ge_positivity", p.p_upper >= positivity_floor},
                     {"lower_ge_positivity", p.p_lower >= positivity_floor}};
      human += "P(norm >= rms) = " + fmt(p.p_upper) + "\nP(norm <= rms) = " +
               fmt(p.p_lower) + "\n";
    } else if (mode == "mc") {
      const HilbertNormProbsMc p = hilbert_norm_probs_mc(vs, samples, g.seed, g.workers);
      j["p_upper"] = {{"estimate", p.upper.estimate},
                      {"ci95", {p.upper.ci_low, p.upper.ci_high}}};
      j["p_lower"] = {{"estimate", p.lower.estimate},
                      {"ci95", {p.lower.ci_low, p.lower.ci_high}}};
      j["samples"] = samples;
      j["seed"] = g.seed;
      human += "P(norm >= rms) ~ " + fmt(p.upper.estimate) + "\nP(norm <= rms) ~ " +
               fmt(p.lower.estimate) + "\n";
    } else {
      throw std::domain_error("--vectors supports --mode enum or mc");
    }
    emit(g, j, human);
    return kExitOk;
  }

  const ChaosCoefficients c =
      all_ones_n > 0 ? ChaosCoefficients::all_ones(all_ones_n) : load_matrix(matrix_file);
  j["n"] = c.size();

  if (mode == "enum") {
    const EnumerationResult e = rademacher_enumerate(c, g.workers);
    const double ratio = c.is_zero() ? 0.0 : std::pow(e.m4, 0.25) / std::sqrt(e.m2);
    j["prob_ge"] = e.prob_ge;
    j["prob_gt"] = e.prob_gt;
    j["count_ge"] = e.count_ge;
    j["count_gt"] = e.count_gt;
    j["m2"] = e.m2;
    j["m4"] = e.m4;
    j["m1_abs"] = e.m1_abs;
    j["ratio42"] = ratio;
    j["ratio_l2_l1"] = c.is_zero() ? 0.0 : std::sqrt(e.m2) / e.m1_abs;
    j["checks"] = {{"positivity_ge", e.prob_ge >= positivity_floor},
                   {"positivity_gt", c.is_zero() || e.prob_gt >= positivity_floor},
                   {"ratio_cap", c.is_zero() || ratio <= cap + 1e-9},
                   {"fourth_bound",
                    c.is_zero() ||
                        e.prob_ge >= bound_fourth({std::max(1.0, e.m4 / (e.m2 * e.m2))}).value - 1e-12}};
    human += "P(S >= 0) = " + fmt(e.prob_ge) + "  P(S > 0) = " + fmt(e.prob_gt) + "\n";
    human += "E S^2 = " + fmt(e.m2) + "  E S^4 = " + fmt(e.m4) + "  E|S| = " +
             fmt(e.m1_abs) + "\n";
    human += "||S||_4/||S||_2 = " + fmt(ratio) + " (cap " + fmt(cap) + ")\n";
  } else if (mode == "spectral") {
    const Spectrum s = eigen_symmetric(c);
    const GaussianChaosMoments m = gaussian_chaos_moments(s);
    const double ratio = m.m2 > 0.0 ? std::pow(m.m4, 0.25) / std::sqrt(m.m2) : 0.0;
    j["eigenvalues"] = s.eigenvalues;
    j["frobenius_sq"] = s.frobenius_sq;
    j["fourth_power_sum"] = s.fourth_power_sum;
    j["m2"] = m.m2;
    j["m4"] = m.m4;
    j["ratio42"] = ratio;
    j["ratio42_pow4"] = ratio * ratio * ratio * ratio;
    j["checks"] = {{"ratio_cap", c.is_zero() || ratio <= cap + 1e-9}};
    human += "gaussian ||S||_4/||S||_2 = " + fmt(ratio) + " (ratio^4 = " +
             fmt(ratio * ratio * ratio * ratio) + ", cap^4 = 15)\n";
  } else if (mode == "mc") {
    const McModel mm = model == "gaussian" ? McModel::Gaussian : McModel::Rademacher;
    const MonteCarloResult r =
        mc_estimate(c, mm, event_from_string(event_name), samples, g.seed, g.workers);
    j["model"] = model;
    j["event"] = event_name;
    j["estimate"] = r.estimate;
    j["ci95"] = {r.ci_low, r.ci_high};
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    const double se =
        std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(r.samples));
    j["checks"] = {{"positivity", r.estimate >= positivity_floor - 3.0 * se}};
    human += "P(S " + event_name + " 0) ~ " + fmt(r.estimate) + "  [" + fmt(r.ci_low) +
             ", " + fmt(r.ci_high) + "]\n";
  } else {
    throw std::domain_error("--mode must be enum, mc, or spectral");
  }
  emit(g, j, human);
  return kExitOk;
}

// ---- curve ------------------------------------------------------------

int cmd_curve(const GlobalOpts& g, const std::string& family, double p,
              const std::string& range, int steps, const std::string& out) {
  const auto colon = range.find(':');
  if (colon == std::string::npos) throw std::domain_error("--range must be LO:HI");
  char* end = nullptr;
  const double lo = std::strtod(range.substr(0, colon).c_str(), &end);
  const double hi = std::strtod(range.substr(colon + 1).c_str(), &end);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::domain_error("--range must satisfy LO < HI");
  if (steps < 1) throw std::domain_error("--steps must be >= 1");

  std::string csv;
  if (family == "first-p") {
    if (!(p > 1.0)) throw std::domain_error("--family first-p requires --p > 1");
    csv = "x,classical,improved,explicit\n";
    for (int i = 0; i <= steps; ++i) {
      const double c = lo + (hi - lo) * i / steps;
      const MomentProfileFirstP pr{p, c};
      csv += fmt(c) + "," + fmt(classical_bound(pr).value) + "," +
             fmt(bound_first_p(pr).value) + "," + fmt(bound_first_p_explicit(pr).value) +
             "\n";
    }
  } else if (family == "fourth") {
    csv = "x,classical,improved\n";
    for (int i = 0; i <= steps; ++i) {
      const double x = lo + (hi - lo) * i / steps;
      const MomentProfileFourth pr{x};
      csv += fmt(x) + "," + fmt(classical_bound(pr).value) + "," +
             fmt(bound_fourth(pr).value) + "\n";
    }
  } else if (family == "pth") {
    if (!(p > 2.0)) throw std::domain_error("--family pth requires --p > 2");
    csv = "x,classical,improved\n";
    for (int i = 0; i <= steps; ++i) {
      const double r = lo + (hi - lo) * i / steps;
      const MomentProfilePth pr{p, r};
      csv += fmt(r) + "," + fmt(classical_bound(pr).value) + "," +
             fmt(bound_pth(pr).value) + "\n";
    }
  } else {
    throw std::domain_error("--family must be first-p, fourth, or pth");
  }

  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::domain_error("cannot write " + out);
  f << csv;
  f.close();

  const ordered_json j{{"family", family}, {"file", out}, {"rows", steps + 1}};
  emit(g, j, "wrote " + std::to_string(steps + 1) + " rows to " + out + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal probability lower bounds for centered random variables"};
  app.require_subcommand(1);
  app.fallthrough(true);  // --format/--seed/--workers may follow the subcommand

  GlobalOpts g;
  if (const char* env = std::getenv("TAILBOUND_SEED"))
    g.seed = std::strtoull(env, nullptr, 10);
  app.add_option("--format", g.format, "output format: human or json")
      ->check(CLI::IsMember({"human", "json"}));
  app.add_option("--seed", g.seed, "PRNG seed (default: TAILBOUND_SEED or 0)");
  app.add_option("--workers", g.workers, "worker threads for enumeration/Monte Carlo")
      ->check(CLI::PositiveNumber);

  auto* bound_cmd = app.add_subcommand("bound", "evaluate every applicable lower bound");
  ProfileFlags bound_pf;
  bound_pf.add_options(bound_cmd);
  bool bound_all = false;
  bound_cmd->add_flag("--all", bound_all, "also report the best bound across profiles");

  auto* extremal_cmd =
      app.add_subcommand("extremal", "construct the distribution attaining a bound");
  ProfileFlags extremal_pf;
  extremal_pf.add_options(extremal_cmd);
  double epsilon = 0.0;
  extremal_cmd->add_option("--epsilon", epsilon,
                           "middle-atom offset for the three-point family");

  auto* oracle_cmd =
      app.add_subcommand("oracle", "minimize the event probability over the moment class");
  ProfileFlags oracle_pf;
  oracle_pf.add_options(oracle_cmd);
  std::string oracle_event = "ge";
  int grid_points = 2001;
  std::string oracle_method = "lp";
  int oracle_atoms = 2;
  double oracle_tol = 2e-3;
  bool cap_inequality = false;
  oracle_cmd->add_option("--event", oracle_event, "event: ge or gt");
  oracle_cmd->add_option("--grid-points", grid_points, "LP support grid size")
      ->check(CLI::Range(3, 2000000));
  oracle_cmd->add_option("--method", oracle_method, "lp or parametric");
  oracle_cmd->add_option("--atoms", oracle_atoms, "atom count for --method parametric")
      ->check(CLI::Range(2, 3));
  oracle_cmd->add_option("--tol", oracle_tol, "certification tolerance");
  oracle_cmd->add_flag("--cap-inequality", cap_inequality,
                       "treat the highest moment as a one-sided cap");

  auto* chaos_cmd = app.add_subcommand("chaos", "second-order chaos probabilities");
  std::string matrix_file, vectors_file;
  int all_ones_n = 0;
  std::string mode = "enum", model = "rademacher", chaos_event = "ge";
  std::uint64_t samples = 1000000;
  chaos_cmd->add_option("--matrix", matrix_file, "coefficient matrix (CSV or JSON)");
  chaos_cmd->add_option("--vectors", vectors_file, "vector system (JSON)");
  chaos_cmd->add_option("--all-ones", all_ones_n, "use the n x n all-ones matrix");
  chaos_cmd->add_option("--mode", mode, "enum, mc, or spectral");
  chaos_cmd->add_option("--model", model, "mc model: rademacher or gaussian");
  chaos_cmd->add_option("--event", chaos_event, "mc event: ge, gt, le, lt");
  chaos_cmd->add_option("--samples", samples, "Monte Carlo sample count");

  auto* curve_cmd = app.add_subcommand("curve", "tabulate bound curves to CSV");
  std::string family, range, out_file;
  double curve_p = 0.0;
  int steps = 100;
  curve_cmd->add_option("--family", family, "first-p, fourth, or pth")->required();
  curve_cmd->add_option("--p", curve_p, "exponent for first-p/pth families");
  curve_cmd->add_option("--range", range, "LO:HI for the ratio axis")->required();
  curve_cmd->add_option("--steps", steps, "number of intervals");
  curve_cmd->add_option("--out", out_file, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (bound_cmd->parsed()) return cmd_bound(g, bound_pf, bound_all);
    if (extremal_cmd->parsed()) return cmd_extremal(g, extremal_pf, epsilon);
    if (oracle_cmd->parsed())
      return cmd_oracle(g, oracle_pf, oracle_event, grid_points, oracle_method,
                        oracle_atoms, oracle_tol, cap_inequality);
    if (chaos_cmd->parsed())
      return cmd_chaos(g, matrix_file, vectors_file, all_ones_n, mode, model, chaos_event,
                       samples);
    if (curve_cmd->parsed()) return cmd_curve(g, family, curve_p, range, steps, out_file);
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitResource;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}
