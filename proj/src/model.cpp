#include "externreg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace externreg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double bestEffort(double k, double y, double c) {
  if (y <= 0.0 || k <= 0.0) return 0.0;
  double yk = y * k;
  if (yk < std::exp(c) - kModelTol) return 0.0;
  return std::max(0.0, (std::log(yk) - c) / k);
}

double riskOf(double k, double y, double c) {
  double yk = y * k;
  double inv = (yk == 0.0) ? kInf : 1.0 / yk;
  return std::min(std::exp(-c), inv);
}

double lossOf(double k, double y, double c) {
  if (y <= 0.0) return 0.0;
  double yk = y * k;
  if (k > 0.0 && yk >= std::exp(c) - kModelTol)
    return (std::log(yk) - c + 1.0) / k;
  return y * std::exp(-c);
}

double utilityOf(BuyerType t, const Policy& s) {
  return t.v - s.p - lossOf(t.k, s.y, s.c);
}

BuyerOutcome buyerOutcome(BuyerType t, const Policy& s, double tieFraction) {
  BuyerOutcome o;
  o.effort = bestEffort(t.k, s.y, s.c);
  o.risk = riskOf(t.k, s.y, s.c);
  o.loss = lossOf(t.k, s.y, s.c);
  o.postValue = t.v - o.loss;
  o.utility = o.postValue - s.p;
  if (o.utility > kModelTol)
    o.purchaseFraction = 1.0;
  else if (o.utility < -kModelTol)
    o.purchaseFraction = 0.0;
  else
    o.purchaseFraction = tieFraction;
  return o;
}

MarketOutcome evaluate(const Population& pop, const Policy& s,
                       ExternalityMode mode, double tieFraction) {
  MarketOutcome m;
  double riskMass = 0.0;
  for (const JointAtom& a : productAtoms(pop)) {
    AtomOutcome row{a.t, a.prob, buyerOutcome(a.t, s, tieFraction)};
    m.saleProb += a.prob * row.outcome.purchaseFraction;
    riskMass += a.prob * row.outcome.purchaseFraction * row.outcome.risk;
    m.perAtom.push_back(std::move(row));
  }
  m.profit = (s.p - s.c) * m.saleProb;
  if (mode == ExternalityMode::Conditional)
    m.externality = m.saleProb > 0.0 ? riskMass / m.saleProb : 0.0;
  else
    m.externality = riskMass;
  return m;
}

Thresholds thresholds(const Policy& s) {
  double k0 = (s.y == 0.0) ? kInf : std::exp(s.c) / s.y;
  return {k0, std::max(1.0, k0)};
}

double policyGap(double k, const Policy& s, const Policy& s2) {
  return lossOf(k, s.y, s.c) - lossOf(k, s2.y, s2.c);
}

}  // namespace externreg
