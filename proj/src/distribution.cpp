#include "tailbound/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace tailbound {

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
  std::erase_if(atoms, [](const Atom& a) { return a.prob == 0.0; });
  if (atoms.empty())
    throw std::invalid_argument("distribution needs at least one atom");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.prob))
      throw std::invalid_argument("atom values and probabilities must be finite");
    if (!(a.prob > 0.0 && a.prob <= 1.0))
      throw std::invalid_argument("atom probabilities must lie in (0,1]");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && a.value - atoms_.back().value < 1e-14) {
      Atom& last = atoms_.back();
      const double w = last.prob + a.prob;
      last.value = (last.value * last.prob + a.value * a.prob) / w;
      last.prob = w;
    } else {
      atoms_.push_back(a);
    }
  }
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.prob;
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("atom probabilities must sum to 1");
}

double DiscreteDistribution::raw_moment(int k) const {
  if (k < 1) throw std::domain_error("moment order must be positive");
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.prob * std::pow(a.value, k);
  return sum;
}

double DiscreteDistribution::abs_moment(double p) const {
  if (!(p >= 1.0)) throw std::domain_error("moment exponent must be >= 1");
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.prob * std::pow(std::abs(a.value), p);
  return sum;
}

double DiscreteDistribution::prob_event(Event e) const {
  double sum = 0.0;
  for (const Atom& a : atoms_) {
    switch (e) {
      case Event::GeZero: sum += a.value >= 0.0 ? a.prob : 0.0; break;
      case Event::GtZero: sum += a.value > 0.0 ? a.prob : 0.0; break;
      case Event::LeZero: sum += a.value <= 0.0 ? a.prob : 0.0; break;
      case Event::LtZero: sum += a.value < 0.0 ? a.prob : 0.0; break;
    }
  }
  return sum;
}

std::string DiscreteDistribution::to_json_string() const {
  nlohmann::ordered_json j;
  auto& arr = j["atoms"] = nlohmann::ordered_json::array();
  for (const Atom& a : atoms_) arr.push_back({a.value, a.prob});
  return j.dump();
}

DiscreteDistribution DiscreteDistribution::from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<Atom> atoms;
  for (const auto& pair : j.at("atoms"))
    atoms.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  return DiscreteDistribution(std::move(atoms));
}

DiscreteDistribution extremal_first_p(double p, double c) {
  const double mu = bound_first_p({p, c}).value;
  // The lower atom must be negative for E xi = 0 to hold.
  return DiscreteDistribution({{-c / (2.0 * mu), mu},
                               {c / (2.0 * (1.0 - mu)), 1.0 - mu}});
}

DiscreteDistribution extremal_fourth_twopoint(double x) {
  if (!(x >= 1.0 && x < fourth_branch_point()))
    throw std::domain_error("x must lie in [1, 3*sqrt(3)/2 - 3/2)");
  const double x2 =
      0.5 * std::sqrt(2.0 + 2.0 * x + 2.0 * std::sqrt((x - 1.0) * (x + 3.0)));
  const double x1 = -1.0 / x2;
  // Mass on the positive atom is 1/(x2^2+1); it attains the bound.
  const double l1 = x2 / (x2 - x1);
  const double l2 = -x1 / (x2 - x1);
  return DiscreteDistribution({{x1, l1}, {x2, l2}});
}

ExtremalFamilyMember extremal_fourth_family(double c, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw std::domain_error("epsilon must be a finite value >= 0");
  const double s3 = std::sqrt(3.0);
  const double l1 = (1.5 - 0.5 * s3) / c;
  const double l2 = 1.0 - (1.5 * s3 - 1.5) / c;
  const double l3 = (2.0 * s3 - 3.0) / c;
  if (!(c >= 1.0) || !std::isfinite(c) || l2 < 0.0)
    throw std::domain_error("c must be at least 3*sqrt(3)/2 - 3/2");

  // l1 x1 + l3 x3 = l2 eps and l1 x1^2 + l3 x3^2 = 1 - l2 eps^2 reduce to a
  // quadratic in x3; the positive root gives x3 and the linear relation x1.
  const double qa = l3 * (l3 + l1);
  const double qb = -2.0 * l2 * l3 * epsilon;
  const double qc = l2 * epsilon * epsilon * (l2 + l1) - l1;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (!(disc > 0.0))
    throw std::invalid_argument("epsilon too large: moment system has no real solution");
  const double x3 = (-qb + std::sqrt(disc)) / (2.0 * qa);
  const double x1 = (l2 * epsilon - l3 * x3) / l1;
  if (!(x1 < -epsilon && x3 > 0.0))
    throw std::invalid_argument("epsilon too large: atom ordering x1 < -eps < 0 < x3 fails");

  const double x2 = epsilon == 0.0 ? 0.0 : -epsilon;
  DiscreteDistribution dist({{x1, l1}, {x2, l2}, {x3, l3}});
  return {std::move(dist), epsilon, c};
}

}  // namespace tailbound
