// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; failures additionally dump enough detail to reproduce (including the
// full routine trace for the randomized guarantee fuzz). The process exit
// status is the number of failed criteria, so 0 means the build is accepted.
//
// The randomized fuzz seed can be overridden with EXTERNREG_SEED.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "externreg/approx.hpp"
#include "externreg/distribution.hpp"
#include "externreg/json_io.hpp"
#include "externreg/model.hpp"
#include "externreg/simple_opt.hpp"
#include "externreg/stackelberg.hpp"
#include "externreg/sweep.hpp"

namespace {

using namespace externreg;

struct Checker {
  long long checks = 0;
  long long failures = 0;
  std::string info;  // optional annotation appended to the PASS/FAIL line
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (failures <= 10) detail << "    " << what << '\n';
    }
  }
  void note(const std::string& line) { detail << "    " << line << '\n'; }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Shared fixtures and samplers.

Population fourTypes(double x) {
  return {DiscreteDistribution({{1.0, 0.5}, {16.0 / 15.0, 0.5}}),
          DiscreteDistribution({{3.0, 0.5}, {x, 0.5}})};
}

Population singleValueMixed(double x) {
  double lowMass = std::exp(-x / 2.0);
  double v0 = 2.0 * std::exp(x / 2.0) * (x + std::exp(-x));
  double bigK = std::exp(x * std::exp(x / 2.0));
  return {DiscreteDistribution({{v0, 1.0}}),
          DiscreteDistribution({{0.0, lowMass}, {bigK, 1.0 - lowMass}})};
}

Population quadrant() {
  return {DiscreteDistribution({{1.0, 0.5}, {1.58, 0.5}}),
          DiscreteDistribution({{3.0, 0.5}, {9.0, 0.5}})};
}

// Small random product population: 1..4 values in (0.05, 10), 1..4
// efficiencies in [0, 10), weights in [0.05, 1) renormalized.
Population randomPopulation(std::mt19937& rng) {
  std::uniform_int_distribution<int> nDist(1, 4);
  std::uniform_real_distribution<double> vDist(0.05, 10.0);
  std::uniform_real_distribution<double> kDist(0.0, 10.0);
  std::uniform_real_distribution<double> wDist(0.05, 1.0);
  auto marginal = [&](bool values) {
    int n = nDist(rng);
    std::vector<Atom> atoms;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      atoms.push_back({values ? vDist(rng) : kDist(rng), wDist(rng)});
      total += atoms.back().prob;
    }
    for (Atom& a : atoms) a.prob /= total;
    return DiscreteDistribution(std::move(atoms));
  };
  Population pop;
  pop.values = marginal(true);
  pop.efficiencies = marginal(false);
  return pop;
}

// Random policy with positive margin, retried until it actually sells and
// earns something (the precondition of the approximation guarantee).
std::optional<Policy> randomFeasiblePolicy(std::mt19937& rng,
                                           const Population& pop) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double vmax = pop.values.maxPoint();
  for (int i = 0; i < 400; ++i) {
    Policy s;
    if (u01(rng) < 0.15) {
      s.y = 0.0;
    } else {
      std::uniform_real_distribution<double> lg(std::log(1e-3), std::log(50.0));
      s.y = std::exp(lg(rng));
    }
    if (u01(rng) < 0.25) {
      s.c = 0.0;
    } else {
      std::uniform_real_distribution<double> cd(0.0, 4.0);
      s.c = cd(rng);
    }
    std::uniform_real_distribution<double> pd(1e-3,
                                              std::max(1e-2, vmax - s.c + 1.0));
    s.p = s.c + pd(rng);
    MarketOutcome mo = evaluate(pop, s);
    if (mo.saleProb > 1e-9 && mo.profit > 1e-9) return s;
  }
  return std::nullopt;
}

Json populationJson(const Population& pop) {
  Json jv = Json::array();
  for (const Atom& a : pop.values.atoms())
    jv.push_back(Json{{"point", a.point}, {"prob", a.prob}});
  Json jk = Json::array();
  for (const Atom& a : pop.efficiencies.atoms())
    jk.push_back(Json{{"point", a.point}, {"prob", a.prob}});
  return Json{{"values", jv}, {"efficiencies", jk}};
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 1: the fine level y(k) tuned so a point-mass-k population exerts
// exactly the producer-equivalent effort yields loss 1/(k-1).

void criterion1(Checker& ck) {
  for (double k : {2.0, 3.0, 9.0, 50.0}) {
    double y = yOfK(k);
    double loss = lossOf(k, y, 0.0);
    double want = 1.0 / (k - 1.0);
    ck.expect(std::fabs(loss - want) <= 1e-12,
              "k=" + fmt(k) + ": lossOf(k, yOfK(k), 0) = " + fmt(loss) +
                  ", want " + fmt(want));
  }
}

// ---------------------------------------------------------------------------
// Criterion 2: the fine/cost rebalancing transform scales profit by exactly
// alpha and conditional externality by exactly e^{-(1-alpha)(p-c)}.

void criterion2(Checker& ck) {
  std::mt19937 rng(1234);
  int done = 0;
  int attempts = 0;
  while (done < 500 && attempts < 20000) {
    ++attempts;
    Population pop = randomPopulation(rng);
    std::optional<Policy> sOpt = randomFeasiblePolicy(rng, pop);
    if (!sOpt) continue;
    Policy s = *sOpt;
    MarketOutcome base = evaluate(pop, s);
    double aMax = s.p > s.c ? s.p / (s.p - s.c) : 1.0;
    std::uniform_real_distribution<double> aDist(0.0, std::min(aMax, 50.0));
    double alpha = aDist(rng);
    Policy moved = invTransform(s, alpha);
    MarketOutcome out = evaluate(pop, moved);
    double wantProfit = alpha * base.profit;
    double wantExt = std::exp(-(1.0 - alpha) * (s.p - s.c)) * base.externality;
    bool ok = std::fabs(out.profit - wantProfit) <= 1e-10 &&
              std::fabs(out.externality - wantExt) <= 1e-10;
    if (!ok && ck.failures < 5) {
      ck.note("policy " + policyToJson(s).dump() + " alpha " + fmt(alpha));
      ck.note("profit " + fmt(out.profit) + " vs " + fmt(wantProfit) +
              "; externality " + fmt(out.externality) + " vs " + fmt(wantExt));
    }
    ck.expect(ok, "rebalance trial " + std::to_string(done) + " mismatch");
    ++done;
  }
  ck.expect(done == 500,
            "only completed " + std::to_string(done) + " of 500 triples");
}

// ---------------------------------------------------------------------------
// Criterion 3: two-value population at floor 1/2 has mandated-cost optimum
// c* = 1/2 and efficiency cutoff 3; near the cutoff the general grid solver
// agrees with the matching simple solver to 1e-3 on externality.

void criterion3(Checker& ck) {
  DiscreteDistribution values({{1.0, 0.5}, {16.0 / 15.0, 0.5}});
  double cs = cStar(values, 0.5);
  ck.expect(cs == 0.5, "cStar = " + fmt(cs) + ", want exactly 0.5");
  Cutoff t = cutoffT(values, 0.5);
  ck.expect(t.finite && t.value == 3.0,
            "cutoff = " + fmt(t.value) + " finite=" + (t.finite ? "1" : "0") +
                ", want exactly 3");
  for (double k : {2.9, 3.1}) {
    Population pop{values, DiscreteDistribution::pointMass(k)};
    Instance inst = Instance::create(pop, 0.5);
    SolveResult gen = bestGeneralPolicy(inst);
    SolveResult simple = k < 3.0 ? bestCostPolicy(inst) : bestFinePolicy(inst);
    ck.expect(gen.feasible, "general solver infeasible at k=" + fmt(k));
    ck.expect(simple.feasible, "simple solver infeasible at k=" + fmt(k));
    double diff = gen.outcome.externality - simple.outcome.externality;
    ck.expect(std::fabs(diff) <= 1e-3,
              "k=" + fmt(k) + ": general externality " +
                  fmt(gen.outcome.externality) + " vs simple " +
                  fmt(simple.outcome.externality));
  }
}

// ---------------------------------------------------------------------------
// Criterion 4: the simplification routine keeps at least 1/8 of the profit
// and at most 40/3 of the conditional externality on 1000 random instances.

void criterion4(Checker& ck) {
  unsigned seed = 20260823u;
  if (const char* env = std::getenv("EXTERNREG_SEED"))
    seed = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  std::mt19937 rng(seed);
  int done = 0;
  int attempts = 0;
  int tieEdge = 0;
  while (done < 1000 && attempts < 40000) {
    ++attempts;
    Population pop = randomPopulation(rng);
    std::optional<Policy> sOpt = randomFeasiblePolicy(rng, pop);
    if (!sOpt) continue;
    Policy s = *sOpt;
    MarketOutcome base = evaluate(pop, s);
    ApproxResult r;
    bool threw = false;
    try {
      r = approxRoutine(pop, s);
    } catch (const std::exception& ex) {
      threw = true;
      if (ck.failures < 3) {
        ck.note("population " + populationJson(pop).dump());
        ck.note("policy " + policyToJson(s).dump());
        ck.note(std::string("exception: ") + ex.what());
      }
      ck.expect(false,
                "fuzz trial " + std::to_string(done) + " threw unexpectedly");
    }
    if (!threw) {
      bool simple = r.policy.y == 0.0 || r.policy.c == 0.0;
      MarketOutcome out = evaluate(pop, r.policy, ExternalityMode::Conditional,
                                   r.tieFraction);
      double profitRatio = out.profit / base.profit;
      double extRatio = out.externality / base.externality;
      bool ok = simple && profitRatio >= 0.125 - 1e-9 &&
                extRatio <= 40.0 / 3.0 + 1e-9;
      // Blow-up branches pick the smallest fine whose sale stays under the
      // original sale probability. Sale is a step function of the fine, so
      // the bisected cap can land where a marginal atom's utility is ~1e-10
      // below zero: in exact arithmetic that atom is indifferent (and buys,
      // satisfying the bound), but in doubles it drops out. Accept the trial
      // if an infinitesimally smaller fine restores the profit share.
      bool blowupBranch = r.trace.branch == ApproxBranch::FineBlowupGood ||
                          r.trace.branch == ApproxBranch::FineBlowupFallback;
      if (!ok && simple && blowupBranch && r.trace.blowup.has_value() &&
          profitRatio < 0.125 - 1e-9 && extRatio <= 40.0 / 3.0 + 1e-9) {
        Policy justBelow{r.trace.blowup->ySk * (1.0 - 1e-6), 0.0, r.policy.p};
        double saleLo = evaluate(pop, justBelow).saleProb;
        if (r.policy.p * saleLo / base.profit >= 0.125 - 1e-9) {
          ok = true;
          ++tieEdge;
        }
      }
      if (!ok && ck.failures < 3) {
        ck.note("population " + populationJson(pop).dump());
        ck.note("policy " + policyToJson(s).dump());
        ck.note("trace " + traceToJson(r.trace).dump(2));
      }
      ck.expect(ok, "fuzz trial " + std::to_string(done) + ": branch " +
                        branchName(r.trace.branch) + ", profit ratio " +
                        fmt(profitRatio) + ", externality ratio " +
                        fmt(extRatio) + (simple ? "" : ", output not simple"));
    }
    ++done;
  }
  ck.info = "seed " + std::to_string(seed) +
            (tieEdge > 0 ? ", " + std::to_string(tieEdge) + " tie-edge" : "");
  ck.expect(done == 1000,
            "only completed " + std::to_string(done) + " of 1000 instances");
}

// ---------------------------------------------------------------------------
// Criterion 5: four-type population. Fine policies selling to everyone pay
// at least 1/(2 sqrt(e)); the best feasible fine policy pays at least
// e^{-1/5}/3; the hand-built mixed policy meets the floor exactly and lands
// strictly between e^{-1/3}/3 and e^{-1/5}/3.

void criterion5(Checker& ck) {
  const double x = 1e6;
  Instance inst = Instance::create(fourTypes(x), 0.5);

  SolveResult all4 = bestFinePolicyAllBuyers(inst);
  double floorAll = 1.0 / (2.0 * std::sqrt(std::exp(1.0)));
  ck.expect(all4.feasible, "all-buyers fine search infeasible");
  ck.expect(all4.outcome.externality >= floorAll - 1e-9,
            "all-buyers fine externality " + fmt(all4.outcome.externality) +
                " below floor " + fmt(floorAll));

  SolveResult fine = bestFinePolicy(inst);
  double floorFine = std::exp(-0.2) / 3.0;
  ck.expect(fine.feasible, "fine search infeasible");
  ck.expect(fine.outcome.externality >= floorFine - 1e-9,
            "best fine externality " + fmt(fine.outcome.externality) +
                " below floor " + fmt(floorFine));

  double eps = (std::log(x) + 1.0) / x;
  double c = 1.0 / 3.0 - eps;
  Policy s{(0.4 - c) * std::exp(c), c, 2.0 / 3.0 + c};
  MarketOutcome mo = evaluate(fourTypes(x), s);
  ck.expect(std::fabs(mo.profit - 0.5) <= 1e-9,
            "constructed policy profit " + fmt(mo.profit) + ", want 0.5");
  double lo = std::exp(-1.0 / 3.0) / 3.0;
  ck.expect(mo.externality > lo && mo.externality < floorFine,
            "constructed policy externality " + fmt(mo.externality) +
                " not strictly inside (" + fmt(lo) + ", " + fmt(floorFine) +
                ")");
}

// ---------------------------------------------------------------------------
// Criterion 6: single-value population where the best simple policy is at
// least a factor x worse than the mixed policy, for x = 4 and x = 6.

void criterion6(Checker& ck) {
  for (double x : {4.0, 6.0}) {
    Population pop = singleValueMixed(x);
    double v0 = pop.values.atoms().front().point;
    double R = v0 - std::exp(-x) - x;
    Policy mixed{1.0, x, R + x};
    MarketOutcome mo = evaluate(pop, mixed);
    ck.expect(std::fabs(mo.profit - R) <= 1e-9,
              "x=" + fmt(x) + ": mixed profit " + fmt(mo.profit) + ", want " +
                  fmt(R));
    Instance inst = Instance::create(pop, R);
    SolveResult cost = bestCostPolicy(inst);
    SolveResult fine = bestFinePolicy(inst);
    double bestSimple = std::numeric_limits<double>::infinity();
    if (cost.feasible) bestSimple = std::min(bestSimple, cost.outcome.externality);
    if (fine.feasible) bestSimple = std::min(bestSimple, fine.outcome.externality);
    ck.expect(cost.feasible, "x=" + fmt(x) + ": cost search infeasible");
    double ratio = bestSimple / mo.externality;
    ck.expect(ratio >= x, "x=" + fmt(x) + ": simple/mixed externality ratio " +
                              fmt(ratio) + " below " + fmt(x));
  }
}

// ---------------------------------------------------------------------------
// Criterion 7: four-quadrant population under seller best-response pricing.
// Profit at fine 1.2*y(3) lands in (0.51, 0.52); raising the fine from y(3)
// to 1.2*y(3) flips the purchase set from {(1.58,3),(1.58,9)} to
// {(1,9),(1.58,3),(1.58,9)} and pushes total externality from below 0.203 to
// above 0.21.

void criterion7(Checker& ck) {
  Population pop = quadrant();
  double y3 = yOfK(3.0);

  BestPrice bp = sellerBestPrice(pop, 1.2 * y3, 0.0);
  ck.expect(bp.profit > 0.51 && bp.profit < 0.52,
            "profit at 1.2*y(3): " + fmt(bp.profit) + ", want in (0.51, 0.52)");

  MarketOutcome low = stackelbergEvaluate(pop, y3, 0.0);
  MarketOutcome high = stackelbergEvaluate(pop, 1.2 * y3, 0.0);
  ck.expect(low.externality < 0.203, "externality at y(3): " +
                                         fmt(low.externality) +
                                         ", want < 0.203");
  ck.expect(high.externality > 0.21, "externality at 1.2*y(3): " +
                                         fmt(high.externality) +
                                         ", want > 0.21");

  auto buyers = [](const MarketOutcome& mo) {
    std::vector<std::pair<double, double>> out;
    for (const AtomOutcome& a : mo.perAtom)
      if (a.outcome.purchaseFraction > 0.0) out.push_back({a.t.v, a.t.k});
    return out;
  };
  auto has = [](const std::vector<std::pair<double, double>>& set, double v,
                double k) {
    for (const auto& t : set)
      if (t.first == v && t.second == k) return true;
    return false;
  };
  auto lowSet = buyers(low);
  auto highSet = buyers(high);
  ck.expect(lowSet.size() == 2 && has(lowSet, 1.58, 3.0) &&
                has(lowSet, 1.58, 9.0),
            "purchase set at y(3) has " + std::to_string(lowSet.size()) +
                " types, want exactly {(1.58,3),(1.58,9)}");
  ck.expect(highSet.size() == 3 && has(highSet, 1.0, 9.0) &&
                has(highSet, 1.58, 3.0) && has(highSet, 1.58, 9.0),
            "purchase set at 1.2*y(3) has " + std::to_string(highSet.size()) +
                " types, want exactly {(1,9),(1.58,3),(1.58,9)}");
}

// ---------------------------------------------------------------------------
// Criterion 8: upgrading the ineffective half of a point-value population
// from k=0 to k=1 under a fixed policy raises conditional externality from
// 1/(2e) to 3/(4e).

void criterion8(Checker& ck) {
  double e = std::exp(1.0);
  Policy s{e, 0.0, 0.5};
  Population before{DiscreteDistribution::pointMass(2.5),
                    DiscreteDistribution({{0.0, 0.5}, {2.0, 0.5}})};
  Population after{DiscreteDistribution::pointMass(2.5),
                   DiscreteDistribution({{1.0, 0.5}, {2.0, 0.5}})};
  double extBefore = evaluate(before, s).externality;
  double extAfter = evaluate(after, s).externality;
  ck.expect(std::fabs(extBefore - 1.0 / (2.0 * e)) <= 1e-12,
            "before upgrade: " + fmt(extBefore) + ", want 1/(2e) = " +
                fmt(1.0 / (2.0 * e)));
  ck.expect(std::fabs(extAfter - 3.0 / (4.0 * e)) <= 1e-12,
            "after upgrade: " + fmt(extAfter) + ", want 3/(4e) = " +
                fmt(3.0 / (4.0 * e)));
  ck.expect(extAfter > extBefore, "upgrade did not raise externality");
}

// ---------------------------------------------------------------------------
// Criterion 9: randomized property suite, >= 10000 assertions.

void criterion9(Checker& ck) {
  long long start = ck.checks;
  std::mt19937 rng(424242999u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  auto randK = [&] { return std::exp(std::log(1e-3) +
                                     u01(rng) * std::log(1e3 / 1e-3)); };
  auto randY = [&] {
    if (u01(rng) < 0.1) return 0.0;
    return std::exp(std::log(1e-3) + u01(rng) * std::log(50.0 / 1e-3));
  };
  auto randC = [&] { return u01(rng) < 0.25 ? 0.0 : 4.0 * u01(rng); };

  // (a) Identity chain: risk = e^{-c - k h*}, loss = y*risk + h*.
  for (int trial = 0; trial < 2500; ++trial) {
    double k = u01(rng) < 0.1 ? 0.0 : randK();
    double y = randY();
    double c = randC();
    double h = bestEffort(k, y, c);
    double risk = riskOf(k, y, c);
    double loss = lossOf(k, y, c);
    double wantRisk = std::exp(-c - k * h);
    double wantLoss = y * risk + h;
    ck.expect(std::fabs(risk - wantRisk) <=
                  1e-12 * std::max(1.0, std::fabs(wantRisk)),
              "risk identity at k=" + fmt(k) + " y=" + fmt(y) + " c=" + fmt(c));
    ck.expect(std::fabs(loss - wantLoss) <=
                  1e-12 * std::max(1.0, std::fabs(wantLoss)),
              "loss identity at k=" + fmt(k) + " y=" + fmt(y) + " c=" + fmt(c));
  }

  // (b) Per-buyer monotonicity in efficiency along ascending k-grids:
  // risk and loss fall, utility rises, and so does the equilibrium security
  // increment k*h* (effort itself is single-peaked, rising only while
  // y*k <= e^{c+1}).
  for (int trial = 0; trial < 100; ++trial) {
    double y = randY();
    double c = randC();
    double v = 0.1 + 9.9 * u01(rng);
    double p = u01(rng) * (v + 2.0);
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i)
      grid.push_back(std::exp(std::log(1e-3) +
                              std::log(1e3 / 1e-3) * i / 9.0));
    for (int i = 1; i < 10; ++i) {
      double ka = grid[i - 1];
      double kb = grid[i];
      std::string at = " at k " + fmt(ka) + "->" + fmt(kb) + " y=" + fmt(y) +
                       " c=" + fmt(c);
      ck.expect(riskOf(kb, y, c) <= riskOf(ka, y, c) + 1e-12,
                "risk rose" + at);
      ck.expect(lossOf(kb, y, c) <= lossOf(ka, y, c) + 1e-12,
                "loss rose" + at);
      ck.expect(utilityOf(BuyerType{v, kb}, Policy{y, c, p}) >=
                    utilityOf(BuyerType{v, ka}, Policy{y, c, p}) - 1e-12,
                "utility fell" + at);
      ck.expect(kb * bestEffort(kb, y, c) >= ka * bestEffort(ka, y, c) - 1e-12,
                "security increment fell" + at);
      if (y * kb <= std::exp(c + 1.0)) {
        ck.expect(bestEffort(kb, y, c) >= bestEffort(ka, y, c) - 1e-12,
                  "effort fell in its rising region" + at);
      }
    }
  }

  // (c) Same-margin comparison: if s2 keeps the margin but weakly raises
  // loss-plus-cost at every efficiency atom, its profit is no higher.
  {
    int done = 0;
    int attempts = 0;
    while (done < 800 && attempts < 6000) {
      ++attempts;
      Population pop = randomPopulation(rng);
      double y = u01(rng) < 0.1 ? 0.0 : std::exp(std::log(1e-2) +
                                                 u01(rng) * std::log(2000.0));
      double c = randC();
      double m = 0.1 + 2.9 * u01(rng);
      Policy s{y, c, c + m};
      double delta = u01(rng) < 0.5 ? 0.0 : 1.5 * u01(rng);
      double gamma = std::exp(u01(rng));
      Policy s2{y * std::exp(delta) * gamma, c + delta, c + delta + m};
      bool hypothesis = true;
      for (const Atom& a : pop.efficiencies.atoms()) {
        double lhs = lossOf(a.point, s.y, s.c) + s.c;
        double rhs = lossOf(a.point, s2.y, s2.c) + s2.c;
        if (lhs > rhs + 1e-15) {
          hypothesis = false;
          break;
        }
      }
      if (!hypothesis) continue;
      double prof = evaluate(pop, s).profit;
      double prof2 = evaluate(pop, s2).profit;
      ck.expect(prof >= prof2 - 1e-9,
                "profit rose under uniformly higher burden: " + fmt(prof) +
                    " -> " + fmt(prof2) + " policy " + policyToJson(s).dump() +
                    " vs " + policyToJson(s2).dump());
      ++done;
    }
    ck.expect(done == 800, "same-margin comparison: only " +
                               std::to_string(done) + " of 800 qualifying");
  }

  // (d) Lowering efficiency atoms pointwise is dominated, and with a
  // nonnegative margin it can only lower profit.
  for (int trial = 0; trial < 400; ++trial) {
    Population pop = randomPopulation(rng);
    std::vector<Atom> lowered;
    for (const Atom& a : pop.efficiencies.atoms())
      lowered.push_back({a.point * u01(rng), a.prob});
    Population popLow{pop.values, DiscreteDistribution(lowered)};
    ck.expect(dominates(pop.efficiencies, popLow.efficiencies),
              "pointwise-lowered efficiency marginal not dominated");
    double c = randC();
    double m = 0.05 + 4.0 * u01(rng);
    Policy s{randY(), c, c + m};
    ck.expect(evaluate(pop, s).profit >= evaluate(popLow, s).profit - 1e-9,
              "profit rose after lowering efficiencies, policy " +
                  policyToJson(s).dump());
  }

  // (e) Loss-gap monotonicity: when the zero-effort loss of s is at most
  // that of s2, the gap loss(s) - loss(s2) is nondecreasing in k.
  for (int trial = 0; trial < 200; ++trial) {
    Policy s{randY(), randC(), 1.0};
    Policy s2{randY(), randC(), 1.0};
    if (s.y * std::exp(-s.c) > s2.y * std::exp(-s2.c)) std::swap(s, s2);
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 12; ++i) {
      double k = std::exp(std::log(1e-3) + std::log(20.0 / 1e-3) * i / 11.0);
      double g = policyGap(k, s, s2);
      ck.expect(g >= prev - 1e-9,
                "gap fell at k=" + fmt(k) + ": " + fmt(prev) + " -> " + fmt(g) +
                    " for " + policyToJson(s).dump() + " vs " +
                    policyToJson(s2).dump());
      prev = g;
    }
  }

  // (f) Conditional externality lies between the purchasing atoms' risks.
  {
    int done = 0;
    int attempts = 0;
    while (done < 300 && attempts < 3000) {
      ++attempts;
      Population pop = randomPopulation(rng);
      std::optional<Policy> sOpt = randomFeasiblePolicy(rng, pop);
      if (!sOpt) continue;
      MarketOutcome mo = evaluate(pop, *sOpt);
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (const AtomOutcome& a : mo.perAtom) {
        if (a.outcome.purchaseFraction <= 0.0) continue;
        lo = std::min(lo, a.outcome.risk);
        hi = std::max(hi, a.outcome.risk);
      }
      ck.expect(mo.externality >= lo - 1e-12 && mo.externality <= hi + 1e-12,
                "conditional externality " + fmt(mo.externality) +
                    " outside purchaser risk range [" + fmt(lo) + ", " +
                    fmt(hi) + "]");
      ++done;
    }
    ck.expect(done == 300, "externality range: only " + std::to_string(done) +
                               " of 300 feasible trials");
  }

  long long tally = ck.checks - start;
  ck.info = std::to_string(tally) + " assertions";
  ck.expect(tally >= 10000,
            "only " + std::to_string(tally) + " assertions, need >= 10000");
}

// ---------------------------------------------------------------------------
// Criterion 10: with no fine, raising the mandated cost can only lower the
// seller's best profit; and on the positive-effort branch the marginal total
// burden d(loss + c)/dc equals 1 - 1/k.

void criterion10(Checker& ck) {
  SweepSpec spec;
  spec.population = {discretizeUniform(0.0, 20.0, 40),
                     discretizeUniform(0.0, 1.0, 20)};
  spec.fines = {0.0};
  spec.costs = linspace(0.0, 3.0, 25);
  std::vector<SweepRow> rows = runSweep(spec);
  ck.expect(rows.size() == 25,
            "sweep produced " + std::to_string(rows.size()) + " rows, want 25");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ck.expect(rows[i].profit <= rows[i - 1].profit + 1e-9,
              "profit rose with cost at c=" + fmt(rows[i].c) + ": " +
                  fmt(rows[i - 1].profit) + " -> " + fmt(rows[i].profit));
  }

  const double k = 2.0;
  const double h = 1e-6;
  for (auto [y, c] : std::vector<std::pair<double, double>>{
           {3.0, 0.3}, {2.0, 0.0}, {5.0, 1.0}}) {
    bool effortOn = bestEffort(k, y, c) > 0.0 && bestEffort(k, y, c + h) > 0.0;
    ck.expect(effortOn, "expected positive effort at y=" + fmt(y) +
                            " c=" + fmt(c));
    double fd =
        (lossOf(k, y, c + h) + (c + h) - lossOf(k, y, c) - c) / h;
    ck.expect(std::fabs(fd - 0.5) <= 1e-6,
              "d(loss+c)/dc = " + fmt(fd) + " at y=" + fmt(y) + " c=" +
                  fmt(c) + ", want 0.5 = 1 - 1/k");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* desc;
    void (*run)(Checker&);
  };
  const std::vector<Criterion> criteria = {
      {1, "calibrated fine y(k) yields loss 1/(k-1) at k in {2,3,9,50}",
       &criterion1},
      {2, "profit/externality rebalancing scales both exactly on 500 random "
          "triples",
       &criterion2},
      {3, "two-value population: c* = 1/2, cutoff 3, and the general solver "
          "matches the simple optimum near the cutoff",
       &criterion3},
      {4, "simplification guarantee holds on 1000 random instances "
          "(profit >= 1/8, externality <= 40/3)",
       &criterion4},
      {5, "four-type population: fine-policy floors and the hand-built mixed "
          "policy that beats them",
       &criterion5},
      {6, "single-value population: every simple policy is at least a factor "
          "x worse than mixed, x in {4,6}",
       &criterion6},
      {7, "quadrant population: raising the fine flips the purchase set and "
          "raises total externality",
       &criterion7},
      {8, "efficiency upgrade raises conditional externality from 1/(2e) to "
          "3/(4e)",
       &criterion8},
      {9, "randomized property suite with zero failures", &criterion9},
      {10, "cost sweep profit is nonincreasing and d(loss+c)/dc = 1 - 1/k on "
           "the effort branch",
       &criterion10},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker ck;
    bool threw = false;
    std::string what;
    try {
      cr.run(ck);
    } catch (const std::exception& ex) {
      threw = true;
      what = ex.what();
    }
    bool pass = !threw && ck.failures == 0;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << cr.id << ": "
              << cr.desc;
    if (!ck.info.empty()) std::cout << " [" << ck.info << "]";
    std::cout << '\n';
    if (threw) std::cout << "    unexpected exception: " << what << '\n';
    if (!pass) {
      std::cout << ck.detail.str();
      if (ck.failures > 10)
        std::cout << "    (" << (ck.failures - 10) << " further failures "
                  << "suppressed)\n";
      ++failed;
    }
  }
  std::cout << (failed == 0 ? "ACCEPTED: all 10 criteria passed"
                            : "REJECTED: " + std::to_string(failed) +
                                  " criteria failed")
            << '\n';
  return failed;
}
