#include "externreg/simple_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "externreg/errors.hpp"

namespace externreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Candidate found by a price scan at fixed (y, c).
struct PricePick {
  bool feasible = false;
  double price = 0.0;
  double sale = 0.0;
  double profit = 0.0;
  double ext = 0.0;  // conditional
};

// Exact best price for fixed (y, c): only prices equal to some buyer's
// post-regulation value matter (any other price sells to the same set at a
// lower margin). Returns the externality-minimizing price whose profit meets
// the floor. Ties at equal post-value are grouped so the scan agrees with
// evaluate()'s indifference tolerance.
PricePick bestPriceFor(const std::vector<JointAtom>& atoms, double y, double c,
                       double floor, double slack) {
  struct Row {
    double pv, risk, prob;
  };
  std::vector<Row> rows;
  rows.reserve(atoms.size());
  for (const JointAtom& a : atoms)
    rows.push_back({a.t.v - lossOf(a.t.k, y, c), riskOf(a.t.k, y, c), a.prob});
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.pv > b.pv; });

  PricePick best;
  double sale = 0.0, riskMass = 0.0;
  std::size_t i = 0;
  while (i < rows.size()) {
    // Group post-values within the model tolerance; the candidate price is
    // the group's smallest member so the whole group purchases.
    std::size_t j = i;
    double price = rows[i].pv;
    while (j < rows.size() && rows[j].pv >= rows[i].pv - kModelTol) {
      price = rows[j].pv;
      sale += rows[j].prob;
      riskMass += rows[j].prob * rows[j].risk;
      ++j;
    }
    if (price > c || (price == c && floor <= 0.0)) {
      double profit = (price - c) * sale;
      if (profit >= floor - slack && sale > 0.0) {
        double ext = riskMass / sale;
        bool better = !best.feasible || ext < best.ext - kModelTol ||
                      (std::abs(ext - best.ext) <= kModelTol &&
                       price < best.price);
        if (better) best = {true, price, sale, profit, ext};
      }
    }
    i = j;
  }
  return best;
}

struct Candidate {
  bool found = false;
  Policy policy;
  double ext = 0.0;
};

void consider(Candidate& best, double y, double c, const PricePick& pick) {
  if (!pick.feasible) return;
  Policy s{y, c, pick.price};
  bool better =
      !best.found || pick.ext < best.ext - kModelTol ||
      (std::abs(pick.ext - best.ext) <= kModelTol &&
       (s.y < best.policy.y ||
        (s.y == best.policy.y &&
         (s.c < best.policy.c ||
          (s.c == best.policy.c && s.p < best.policy.p)))));
  if (better) {
    best = {true, s, pick.ext};
  }
}

// Largest fine y with lossOf(k, y, 0) <= target. Closed form: on the
// zero-effort branch the loss is y itself; on the positive-effort branch
// (target*k > 1) it inverts (ln(y*k)+1)/k. May overflow to +infinity for
// huge k*target, which is harmless inside a minimum.
double maxFineForLoss(double k, double target) {
  if (target < 0.0) return -1.0;
  if (k <= 0.0 || target * k <= 1.0) return target;
  return std::exp(target * k - 1.0) / k;
}

// Upward-closed purchase sets of an nv x nk grid, encoded as a nonincreasing
// sequence tau[i] in {0..nk}: row i (value ascending) includes efficiency
// columns tau[i].. nk-1. Calls fn(tau) for every such sequence.
template <typename Fn>
void forEachUpwardClosedSet(int nv, int nk, Fn&& fn) {
  std::vector<int> tau(nv, nk);
  // Iterate all nonincreasing sequences over {0..nk}^nv like an odometer.
  while (true) {
    fn(tau);
    int i = nv - 1;
    while (i >= 0 && tau[i] == 0) --i;
    if (i < 0) break;
    --tau[i];
    for (int j = i + 1; j < nv; ++j) tau[j] = tau[i];
  }
}

SolveResult finishResult(const Instance& inst, const Candidate& best,
                         SolveMethod method) {
  if (!best.found)
    throw InfeasibleError("no policy in the family meets the profit floor");
  SolveResult r;
  r.policy = best.policy;
  r.outcome = evaluate(inst.population, best.policy);
  r.feasible = r.outcome.profit >= inst.profitFloor - 1e-9;
  r.method = method;
  return r;
}

// Shared 1-D refinement over the fine at c = 0: repeatedly halve a bracket
// around the best y, rescanning prices exactly at each probe.
void refineFine(const std::vector<JointAtom>& atoms, double floor,
                double slack, int iters, Candidate& best) {
  if (!best.found || best.policy.y <= 0.0) return;
  double lo = best.policy.y * 0.5;
  double hi = best.policy.y * 2.0;
  for (int it = 0; it < iters; ++it) {
    for (double y : {lo, 0.5 * (lo + best.policy.y),
                     0.5 * (best.policy.y + hi), hi}) {
      consider(best, y, 0.0, bestPriceFor(atoms, y, 0.0, floor, slack));
    }
    lo = 0.5 * (lo + best.policy.y);
    hi = 0.5 * (best.policy.y + hi);
  }
}

}  // namespace

Policy invTransform(const Policy& s, double alpha) {
  double hiAlpha = s.p > s.c ? s.p / (s.p - s.c) : 1.0;
  if (alpha < -kModelTol || alpha > hiAlpha + kModelTol)
    throw PreconditionError("alpha outside the legal range");
  return Policy{s.y * std::exp((s.p - s.c) * (1.0 - alpha)),
                alpha * s.c + (1.0 - alpha) * s.p, s.p};
}

double cStar(const DiscreteDistribution& values, double R) {
  if (!(R > 0.0)) throw PreconditionError("profit floor must be positive");
  double best = -kInf;
  for (const Atom& a : values.atoms()) {
    double tail = values.upperTail(a.point);
    best = std::max(best, a.point - R / tail);
  }
  if (best < -kProbTol)
    throw InfeasibleError("profit floor exceeds the unregulated optimum");
  return std::max(0.0, best);
}

Cutoff cutoffT(const DiscreteDistribution& values, double R) {
  double cs = cStar(values, R);
  if (cs == 0.0) return {kInf, false};
  return {1.0 + 1.0 / cs, true};
}

SolveResult bestCostPolicy(const Instance& inst, const SolverConfig&) {
  const DiscreteDistribution& values = inst.population.values;
  double R = inst.profitFloor;
  double cs = cStar(values, R);
  // Witness price: smallest support value attaining the maximum slack.
  double price = 0.0;
  bool have = false;
  for (const Atom& a : values.atoms()) {
    double slackAt = a.point - R / values.upperTail(a.point);
    if (std::abs(std::max(0.0, slackAt) - cs) <= 1e-12 && !have) {
      price = a.point;
      have = true;
    }
  }
  Candidate best{true, Policy{0.0, cs, price}, std::exp(-cs)};
  return finishResult(inst, best, SolveMethod::ExactEnumeration);
}

namespace {

Candidate fineExactSearch(const Instance& inst) {
  auto atoms = productAtoms(inst.population);
  const auto& vAtoms = inst.population.values.atoms();
  const auto& kAtoms = inst.population.efficiencies.atoms();
  int nv = static_cast<int>(vAtoms.size());
  int nk = static_cast<int>(kAtoms.size());
  double R = inst.profitFloor;

  // Candidate fines: for every upward-closed purchase set, the binding fine
  // that keeps each member's post-value at the floor-meeting price.
  std::vector<double> fines{0.0};
  forEachUpwardClosedSet(nv, nk, [&](const std::vector<int>& tau) {
    double mass = 0.0;
    for (int i = 0; i < nv; ++i)
      for (int j = tau[i]; j < nk; ++j)
        mass += vAtoms[i].prob * kAtoms[j].prob;
    if (mass <= 0.0) return;
    double priceNeeded = R / mass;
    double yMax = kInf;
    for (int i = 0; i < nv; ++i)
      for (int j = tau[i]; j < nk; ++j) {
        double cap = maxFineForLoss(kAtoms[j].point,
                                    vAtoms[i].point - priceNeeded);
        if (cap < 0.0) {
          yMax = -1.0;
          return;  // some member cannot afford the needed price at any fine
        }
        yMax = std::min(yMax, cap);
      }
    if (yMax < 0.0) return;
    if (!std::isfinite(yMax)) yMax = 1e300;
    fines.push_back(yMax);
    if (yMax > 0.0) fines.push_back(yMax * (1.0 - 1e-9));
  });
  std::sort(fines.begin(), fines.end());
  fines.erase(std::unique(fines.begin(), fines.end()), fines.end());

  Candidate best;
  for (double y : fines)
    consider(best, y, 0.0, bestPriceFor(atoms, y, 0.0, R, 1e-9));
  refineFine(atoms, R, 1e-9, 40, best);
  return best;
}

Candidate fineGridSearch(const Instance& inst, const SolverConfig& cfg) {
  auto atoms = productAtoms(inst.population);
  double R = inst.profitFloor;
  Candidate best;
  consider(best, 0.0, 0.0, bestPriceFor(atoms, 0.0, 0.0, R, 1e-9));
  double logLo = std::log(cfg.yLo), logHi = std::log(cfg.yHi);
  for (int i = 0; i < cfg.yCount; ++i) {
    double y = std::exp(logLo + (logHi - logLo) * i / (cfg.yCount - 1));
    consider(best, y, 0.0, bestPriceFor(atoms, y, 0.0, R, 1e-9));
  }
  refineFine(atoms, R, 1e-9, cfg.refineIters, best);
  return best;
}

}  // namespace

SolveResult bestFinePolicy(const Instance& inst, const SolverConfig& cfg) {
  std::size_t joint =
      inst.population.values.size() * inst.population.efficiencies.size();
  if (joint <= 64)
    return finishResult(inst, fineExactSearch(inst),
                        SolveMethod::ExactEnumeration);
  return finishResult(inst, fineGridSearch(inst, cfg), SolveMethod::Grid);
}

SolveResult bestFinePolicyGrid(const Instance& inst, const SolverConfig& cfg) {
  return finishResult(inst, fineGridSearch(inst, cfg), SolveMethod::Grid);
}

SolveResult bestFinePolicyAllBuyers(const Instance& inst,
                                    const SolverConfig&) {
  auto atoms = productAtoms(inst.population);
  double R = inst.profitFloor;

  // Selling to everyone pins the price to the lowest post-value; the floor
  // then caps the fine through the binding (lowest-affordability) atom.
  double mass = 0.0;
  for (const JointAtom& a : atoms) mass += a.prob;
  double priceNeeded = R / mass;
  double yMax = kInf;
  for (const JointAtom& a : atoms) {
    double cap = maxFineForLoss(a.t.k, a.t.v - priceNeeded);
    if (cap < 0.0)
      throw InfeasibleError(
          "full-sale fine policies cannot meet the profit floor");
    yMax = std::min(yMax, cap);
  }
  if (!std::isfinite(yMax)) yMax = 1e300;

  Candidate best;
  auto considerFullSale = [&](double y) {
    // Price = lowest post-value at fine y; everyone purchases by
    // construction, so feasibility only needs that price to meet the floor.
    double price = kInf;
    double riskMass = 0.0;
    for (const JointAtom& a : atoms) {
      price = std::min(price, a.t.v - lossOf(a.t.k, y, 0.0));
      riskMass += a.prob * riskOf(a.t.k, y, 0.0);
    }
    double profit = price * mass;
    if (profit < R - 1e-9) return;
    PricePick pick{true, price, mass, profit, riskMass / mass};
    consider(best, y, 0.0, pick);
  };
  considerFullSale(0.0);
  considerFullSale(yMax);
  int steps = 64;
  for (int i = 1; i < steps; ++i)
    considerFullSale(yMax * i / static_cast<double>(steps));
  // Local halving refinement around the best fine.
  if (best.found && best.policy.y > 0.0) {
    double lo = std::max(0.0, best.policy.y - yMax / steps);
    double hi = std::min(yMax, best.policy.y + yMax / steps);
    for (int it = 0; it < 40; ++it) {
      considerFullSale(0.5 * (lo + best.policy.y));
      considerFullSale(0.5 * (best.policy.y + hi));
      lo = 0.5 * (lo + best.policy.y);
      hi = 0.5 * (best.policy.y + hi);
    }
  }
  return finishResult(inst, best, SolveMethod::ExactEnumeration);
}

SolveResult bestGeneralPolicy(const Instance& inst, const SolverConfig& cfg) {
  auto atoms = productAtoms(inst.population);
  double R = inst.profitFloor;
  double cMax = cfg.cHi >= 0.0 ? cfg.cHi : inst.population.values.maxPoint();

  std::vector<double> ys{0.0};
  double logLo = std::log(cfg.yLo), logHi = std::log(cfg.yHi);
  for (int i = 0; i < cfg.yCount; ++i)
    ys.push_back(std::exp(logLo + (logHi - logLo) * i / (cfg.yCount - 1)));
  std::vector<double> cs;
  for (int i = 0; i < cfg.cCount; ++i)
    cs.push_back(cfg.cLo + (cMax - cfg.cLo) * i / (cfg.cCount - 1));

  Candidate best;
  for (double y : ys)
    for (double c : cs)
      consider(best, y, c, bestPriceFor(atoms, y, c, R, 1e-9));

  // Local refinement: shrink a (log-fine, cost) box around the incumbent.
  double yStep = (logHi - logLo) / (cfg.yCount - 1);
  double cStep = (cMax - cfg.cLo) / (cfg.cCount - 1);
  for (int it = 0; it < cfg.refineIters; ++it) {
    Policy center = best.policy;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dc = -1; dc <= 1; ++dc) {
        if (dy == 0 && dc == 0) continue;
        double y = center.y;
        if (y > 0.0)
          y *= std::exp(dy * yStep);
        else if (dy > 0)
          y = cfg.yLo * std::exp((dy - 1) * yStep);
        else if (dy < 0)
          continue;
        double c = std::max(0.0, center.c + dc * cStep);
        consider(best, y, c, bestPriceFor(atoms, y, c, R, 1e-9));
      }
    yStep *= 0.5;
    cStep *= 0.5;
  }
  return finishResult(inst, best, SolveMethod::Grid);
}

}  // namespace externreg
