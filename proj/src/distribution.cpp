#include "externreg/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "externreg/errors.hpp"

namespace externreg {

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
  if (atoms.empty())
    throw PreconditionError("distribution needs at least one atom");
  // Canonical form: sorted support, duplicates merged.
  std::map<double, double> merged;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.point) || a.point < 0.0)
      throw PreconditionError("support points must be finite and >= 0");
    if (!(a.prob > 0.0) || a.prob > 1.0 + kProbTol)
      throw PreconditionError("probabilities must lie in (0, 1]");
    merged[a.point] += a.prob;
  }
  double total = 0.0;
  for (const auto& [pt, pr] : merged) {
    atoms_.push_back({pt, pr});
    total += pr;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw PreconditionError("probabilities must sum to 1");
}

double DiscreteDistribution::upperTail(double x) const {
  double tail = 0.0;
  for (const Atom& a : atoms_)
    if (a.point >= x - kProbTol) tail += a.prob;
  return tail;
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.point * a.prob;
  return m;
}

double DiscreteDistribution::maxPoint() const { return atoms_.back().point; }

DiscreteDistribution DiscreteDistribution::pointMass(double x) {
  return DiscreteDistribution({{x, 1.0}});
}

std::vector<JointAtom> productAtoms(const Population& pop) {
  std::size_t n = pop.values.size() * pop.efficiencies.size();
  if (n > kMaxJointAtoms)
    throw PreconditionError("population exceeds the joint atom cap");
  std::vector<JointAtom> out;
  out.reserve(n);
  for (const Atom& av : pop.values.atoms())
    for (const Atom& ak : pop.efficiencies.atoms())
      out.push_back({{av.point, ak.point}, av.prob * ak.prob});
  return out;
}

DiscreteDistribution discretizeUniform(double lo, double hi, int n) {
  if (!(lo >= 0.0) || !(lo < hi))
    throw PreconditionError("uniform discretization requires 0 <= lo < hi");
  if (n < 1) throw PreconditionError("need at least one cell");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  double width = (hi - lo) / n;
  for (int i = 0; i < n; ++i)
    atoms.push_back({lo + (i + 0.5) * width, 1.0 / n});
  return DiscreteDistribution(std::move(atoms));
}

bool dominates(const DiscreteDistribution& d, const DiscreteDistribution& d2) {
  // Tails are step functions; comparing at every support point of either
  // distribution covers all x.
  auto check = [&](const DiscreteDistribution& src) {
    for (const Atom& a : src.atoms())
      if (d.upperTail(a.point) < d2.upperTail(a.point) - kProbTol) return false;
    return true;
  };
  return check(d) && check(d2);
}

Instance Instance::create(Population pop, double profitFloor) {
  if (!(profitFloor > 0.0))
    throw PreconditionError("profit floor must be positive");
  // Unregulated feasibility: without regulation the buyer loss is zero, so
  // pricing at any support value v sells to everyone with value >= v.
  double best = 0.0;
  for (const Atom& a : pop.values.atoms())
    best = std::max(best, a.point * pop.values.upperTail(a.point));
  if (best < profitFloor - kProbTol)
    throw InfeasibleError("profit floor exceeds the unregulated optimum");
  return Instance{std::move(pop), profitFloor};
}

}  // namespace externreg
