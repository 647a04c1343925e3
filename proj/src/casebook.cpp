#include "externreg/casebook.hpp"

#include <cmath>
#include <sstream>

#include "externreg/distribution.hpp"
#include "externreg/errors.hpp"
#include "externreg/model.hpp"
#include "externreg/simple_opt.hpp"
#include "externreg/stackelberg.hpp"

namespace externreg {

namespace {

constexpr double kSlack = 1e-9;   // slack on claimed inequalities
constexpr double kExact = 1e-12;  // tolerance for closed-form equalities

std::string rel(const char* op, double value) {
  std::ostringstream os;
  os << op << " " << value;
  return os.str();
}

void checkGE(CaseReport& r, const std::string& label, double got,
             double bound) {
  r.checks.push_back({label, rel(">=", bound), got, got >= bound - kSlack});
}

void checkLE(CaseReport& r, const std::string& label, double got,
             double bound) {
  r.checks.push_back({label, rel("<=", bound), got, got <= bound + kSlack});
}

void checkLT(CaseReport& r, const std::string& label, double got,
             double bound) {
  r.checks.push_back({label, rel("<", bound), got, got < bound});
}

void checkGT(CaseReport& r, const std::string& label, double got,
             double bound) {
  r.checks.push_back({label, rel(">", bound), got, got > bound});
}

void checkEQ(CaseReport& r, const std::string& label, double got,
             double want, double tol) {
  r.checks.push_back({label, rel("==", want), got,
                      std::abs(got - want) <= tol});
}

void checkTrue(CaseReport& r, const std::string& label, bool ok) {
  r.checks.push_back({label, "true", ok ? 1.0 : 0.0, ok});
}

CaseReport finish(CaseReport r) {
  r.allPass = true;
  for (const CaseCheck& c : r.checks) r.allPass = r.allPass && c.pass;
  return r;
}

}  // namespace

CaseReport caseNonMonotone() {
  CaseReport r;
  r.caseName = "non-monotone-upgrade";
  const double e = std::exp(1.0);
  const double x = 2.0;
  Population pop{DiscreteDistribution::pointMass(e),
                 DiscreteDistribution({{0.0, 0.5}, {x, 0.5}})};
  Policy s{e, 0.0, e - 2.5};

  double uLow = utilityOf(BuyerType{e, 0.0}, s);
  checkLT(r, "zero-efficiency buyer stays out of the market", uLow, 0.0);

  double extBefore = evaluate(pop, s).externality;
  checkEQ(r, "externality with the zero-efficiency buyer out", extBefore,
          1.0 / (e * x), kExact);

  Population upgraded{pop.values,
                      DiscreteDistribution({{1.0, 0.5}, {x, 0.5}})};
  double extAfter = evaluate(upgraded, s).externality;
  checkEQ(r, "externality after upgrading them to efficiency 1", extAfter,
          (1.0 / e + 1.0 / (e * x)) / 2.0, kExact);
  checkGT(r, "upgrade strictly increases the externality",
          extAfter - extBefore, kSlack);
  return finish(r);
}

CaseReport caseNewExample(double x) {
  double eps = (std::log(x) + 1.0) / x;
  if (!(x >= 100.0) || eps > 1.0 / 3.0 + kExact)
    throw PreconditionError(
        "high efficiency level too small for the constructed policy");
  CaseReport r;
  r.caseName = "mixed-beats-simple";

  Population pop{DiscreteDistribution({{1.0, 0.5}, {16.0 / 15.0, 0.5}}),
                 DiscreteDistribution({{3.0, 0.5}, {x, 0.5}})};
  const double R = 0.5;
  Instance inst = Instance::create(pop, R);

  checkEQ(r, "best cost level", cStar(pop.values, R), 0.5, kExact);
  Cutoff t = cutoffT(pop.values, R);
  checkEQ(r, "efficiency cutoff above which costs beat fines", t.value, 3.0,
          kExact);

  double floorAll = 1.0 / (2.0 * std::sqrt(std::exp(1.0)));
  SolveResult allFour = bestFinePolicyAllBuyers(inst);
  checkGE(r, "fine selling to all four types: externality floor",
          allFour.outcome.externality, floorAll);

  double floorThree = std::exp(-0.2) / 3.0;
  SolveResult fine = bestFinePolicy(inst);
  checkGE(r, "best fine policy: externality floor",
          fine.outcome.externality, floorThree);
  checkLE(r, "best fine policy attains its floor (up to heavy-type risk)",
          fine.outcome.externality,
          floorThree + 2.0 * std::exp(-0.2) / x + 1e-6);

  double c = 1.0 / 3.0 - eps;
  double y = (2.0 / 5.0 - c) * std::exp(c);
  Policy mixed{y, c, 2.0 / 3.0 + c};
  MarketOutcome mo = evaluate(pop, mixed);
  checkEQ(r, "mixed policy profit meets the floor exactly", mo.profit, 0.5,
          kSlack);
  checkEQ(r, "mixed policy externality closed form", mo.externality,
          2.0 / (3.0 * y * x) + std::exp(-1.0 / 3.0 + eps) / 3.0, kExact);
  checkLT(r, "mixed policy strictly beats the best fine",
          mo.externality, floorThree);
  checkGT(r, "mixed policy externality above its limit value",
          mo.externality, std::exp(-1.0 / 3.0) / 3.0);

  MarketOutcome alt = evaluate(pop, Policy{y, c, 3.0 / 5.0 + c});
  checkEQ(r, "alternative price earns higher profit", alt.profit, 0.6,
          kSlack);
  checkGT(r, "so the optimum is not profit-maximizing",
          alt.profit - mo.profit, 0.05);
  return finish(r);
}

CaseReport caseLowerBound(double x) {
  if (!(x >= 2.0 && x <= 8.0))
    throw PreconditionError(
        "efficiency exponent outside the double-precision-safe range [2, 8]");
  CaseReport r;
  r.caseName = "simple-gap-lower-bound";

  double v0 = 2.0 * std::exp(x / 2.0) * (x + std::exp(-x));
  double bigK = std::exp(x * std::exp(x / 2.0));
  Population pop{
      DiscreteDistribution::pointMass(v0),
      DiscreteDistribution({{0.0, std::exp(-x / 2.0)},
                            {bigK, 1.0 - std::exp(-x / 2.0)}})};
  double R = v0 - std::exp(-x) - x;
  Instance inst = Instance::create(pop, R);

  Policy mixed{1.0, x, R + x};
  MarketOutcome mo = evaluate(pop, mixed);
  checkEQ(r, "mixed policy sells to everyone", mo.saleProb, 1.0, kExact);
  checkEQ(r, "mixed policy profit meets the floor", mo.profit, R, kSlack);
  double extCap =
      std::exp(-1.5 * x) + std::exp(-x * std::exp(x / 2.0));
  checkLE(r, "mixed policy externality cap", mo.externality, extCap);

  SolveResult cost = bestCostPolicy(inst);
  checkEQ(r, "best cost externality closed form", cost.outcome.externality,
          std::exp(-(x + std::exp(-x))), kExact);
  checkGE(r, "best cost externality floor", cost.outcome.externality,
          std::exp(-(x + 1.0)));

  SolveResult fine = bestFinePolicy(inst);
  checkGE(r, "best fine externality floor (zero-efficiency buyer at risk 1)",
          fine.outcome.externality, std::exp(-x / 2.0));

  double simpleExt =
      std::min(cost.outcome.externality, fine.outcome.externality);
  checkGE(r, "simple policies are a factor x worse",
          simpleExt / mo.externality, x);
  return finish(r);
}

CaseReport caseProfitsMax() {
  CaseReport r;
  r.caseName = "seller-best-response";

  Population pop{DiscreteDistribution({{1.0, 0.5}, {1.58, 0.5}}),
                 DiscreteDistribution({{3.0, 0.5}, {9.0, 0.5}})};
  double y3 = yOfK(3.0);
  double yHi = 1.2 * y3;

  auto rowOf = [](const RevenueTable& t, double v, double k) {
    for (const RevenueRow& row : t.rows)
      if (std::abs(row.t.v - v) <= kExact && std::abs(row.t.k - k) <= kExact)
        return row;
    throw PreconditionError("revenue table row not found");
  };
  RevenueTable tLo = revenueTable(pop, y3, 0.0);
  RevenueTable tHi = revenueTable(pop, yHi, 0.0);
  double R = rowOf(tHi, 1.0, 9.0).revenue;

  checkGT(r, "profit floor above 0.51", R, 0.51);
  checkLT(r, "profit floor below 0.52", R, 0.52);

  auto orderedByValueThenEff = [&](const RevenueTable& t) {
    const double vs[4] = {1.0, 1.0, 1.58, 1.58};
    const double ks[4] = {3.0, 9.0, 3.0, 9.0};
    if (t.rows.size() != 4) return false;
    for (int i = 0; i < 4; ++i)
      if (std::abs(t.rows[i].t.v - vs[i]) > kExact ||
          std::abs(t.rows[i].t.k - ks[i]) > kExact)
        return false;
    return true;
  };
  checkTrue(r, "post-value order at the calibrated fine",
            orderedByValueThenEff(tLo));
  checkTrue(r, "post-value order at the 20% higher fine",
            orderedByValueThenEff(tHi));

  checkGT(r, "calibrated fine: high-value row earns more",
          rowOf(tLo, 1.58, 3.0).revenue - rowOf(tLo, 1.0, 9.0).revenue, 0.0);
  checkGT(r, "higher fine: high-efficiency row earns more",
          rowOf(tHi, 1.0, 9.0).revenue - rowOf(tHi, 1.58, 3.0).revenue, 0.0);

  BestPrice bpLo = sellerBestPrice(pop, y3, 0.0);
  checkEQ(r, "calibrated fine: seller prices at the high-value post-value",
          bpLo.price, rowOf(tLo, 1.58, 3.0).postValue, kSlack);
  checkEQ(r, "calibrated fine: seller serves half the market",
          evaluate(pop, Policy{y3, 0.0, bpLo.price}).saleProb, 0.5, kExact);
  BestPrice bpHi = sellerBestPrice(pop, yHi, 0.0);
  checkEQ(r, "higher fine: seller prices at the high-efficiency post-value",
          bpHi.price, rowOf(tHi, 1.0, 9.0).postValue, kSlack);
  checkEQ(r, "higher fine: seller serves three quarters",
          evaluate(pop, Policy{yHi, 0.0, bpHi.price}).saleProb, 0.75, kExact);

  checkLT(r, "total externality at the calibrated fine",
          stackelbergEvaluate(pop, y3, 0.0).externality, 0.203);
  checkGT(r, "total externality at the higher fine",
          stackelbergEvaluate(pop, yHi, 0.0).externality, 0.21);

  Population onlyEff3{pop.values, DiscreteDistribution::pointMass(3.0)};
  BestPrice bp3 = sellerBestPrice(onlyEff3, y3, 0.0);
  checkEQ(r, "high-efficiency-only market: seller profit", bp3.profit, 0.54,
          kSlack);
  checkGE(r, "which still meets the floor", bp3.profit, R);
  return finish(r);
}

std::vector<std::string> caseNames() {
  return {"non-monotone-upgrade", "mixed-beats-simple",
          "simple-gap-lower-bound", "seller-best-response"};
}

CaseReport runCase(const std::string& name) {
  if (name == "non-monotone-upgrade") return caseNonMonotone();
  if (name == "mixed-beats-simple") return caseNewExample();
  if (name == "simple-gap-lower-bound") return caseLowerBound();
  if (name == "seller-best-response") return caseProfitsMax();
  throw UnknownCaseError("unknown case: " + name);
}

}  // namespace externreg
