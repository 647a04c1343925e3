#pragma once
// Finite discrete distributions and the product-form buyer population.
//
// A buyer is a pair (v, k): v is the value they place on the item, k is how
// effectively they convert security effort into risk reduction. The population
// is always a product D_v x D_k of two independent marginals.

#include <cstddef>
#include <utility>
#include <vector>

namespace externreg {

inline constexpr double kProbTol = 1e-12;   // unit-mass / comparison tolerance
inline constexpr std::size_t kMaxJointAtoms = 10000;

struct Atom {
  double point = 0.0;  // support point (a value v or an efficiency k)
  double prob = 0.0;   // probability mass, in (0, 1]
};

// Validated atomic distribution: points strictly increasing, probabilities
// positive and summing to 1 within kProbTol. Duplicate points supplied by the
// caller are merged (their probabilities added) during construction.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // Pr[point >= x].
  double upperTail(double x) const;
  double mean() const;
  double maxPoint() const;

  static DiscreteDistribution pointMass(double x);

 private:
  std::vector<Atom> atoms_;
};

struct BuyerType {
  double v = 0.0;
  double k = 0.0;
};

struct JointAtom {
  BuyerType t;
  double prob = 0.0;
};

// Product population D = D_v x D_k.
struct Population {
  DiscreteDistribution values;
  DiscreteDistribution efficiencies;
};

// All (v, k) pairs with product probabilities, ordered value-ascending then
// efficiency-ascending. Rejects populations above the joint-atom cap.
std::vector<JointAtom> productAtoms(const Population& pop);

// n midpoint atoms of the uniform distribution on [lo, hi], mass 1/n each.
DiscreteDistribution discretizeUniform(double lo, double hi, int n);

// First-order stochastic dominance: Pr_d[point >= x] >= Pr_d2[point >= x]
// for every x (within kProbTol).
bool dominates(const DiscreteDistribution& d, const DiscreteDistribution& d2);

// A population with a seller profit floor R. Construction verifies that some
// unregulated price already meets the floor; otherwise no policy can.
struct Instance {
  Population population;
  double profitFloor = 0.0;

  static Instance create(Population pop, double profitFloor);
};

}  // namespace externreg
