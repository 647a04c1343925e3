#include "externreg/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "externreg/errors.hpp"
#include "externreg/simple_opt.hpp"

namespace externreg {

namespace {

constexpr double kStepTol = 1e-15;  // slack for step-function boundary hits

double purchaseFrac(double u) {
  if (u > kModelTol) return 1.0;
  if (u < -kModelTol) return 0.0;
  return 1.0;
}

// Left-continuous inverse CDF of efficiency conditioned on purchasing under s
// with k above the effort-saturation threshold.
double quantileHeavyK(const Population& pop, const Policy& s, double level) {
  Thresholds th = thresholds(s);
  std::map<double, double> ks;
  for (const JointAtom& a : productAtoms(pop)) {
    if (utilityOf(a.t, s) >= -kModelTol && a.t.k > th.kh)
      ks[a.t.k] += a.prob;
  }
  double tot = 0.0;
  for (const auto& [k, pr] : ks) tot += pr;
  if (!(tot > 0.0))
    throw PreconditionError("no purchasing buyer above the effort threshold");
  double acc = 0.0;
  for (const auto& [k, pr] : ks) {
    acc += pr / tot;
    if (acc >= level - kStepTol) return k;
  }
  return ks.rbegin()->first;
}

}  // namespace

const char* branchName(ApproxBranch b) {
  switch (b) {
    case ApproxBranch::Cost1Full: return "Cost1-full";
    case ApproxBranch::Cost1Eps12: return "Cost1-eps12";
    case ApproxBranch::FineInv: return "Fine-Inv";
    case ApproxBranch::FineBlowupGood: return "Fine-BlowupGood";
    case ApproxBranch::FineHeavy: return "Fine-Heavy";
    case ApproxBranch::FineCost1: return "Fine-Cost1";
    case ApproxBranch::FineCost3: return "Fine-Cost3";
    case ApproxBranch::FineBlowupFallback: return "Fine-BlowupFallback";
  }
  return "?";
}

EpsilonPartition epsilonPartition(const Population& pop, const Policy& s) {
  Thresholds th = thresholds(s);
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, sale = 0.0;
  for (const JointAtom& a : productAtoms(pop)) {
    double u = utilityOf(a.t, s);
    if (purchaseFrac(u) == 0.0) continue;
    sale += a.prob;
    if (a.t.k <= th.k0)
      e1 += a.prob;
    else if (a.t.k <= 1.0)
      e2 += a.prob;
    if (a.t.k > th.kh) e3 += a.prob;
  }
  if (!(sale > 0.0))
    throw DegenerateError("effort partition undefined: nobody purchases");
  return {e1 / sale, e2 / sale, e3 / sale};
}

Cost1Result cost1(const Population& pop, const Policy& s, double eps) {
  if (!(eps > 0.0))
    throw PreconditionError("sale fraction for cost1 must be positive");
  double sale0 = evaluate(pop, s).saleProb;
  double target = eps * sale0;

  // Walk values from the top until the cumulative mass covers the target;
  // that value atom becomes the marginal (possibly tie-split) buyer.
  std::vector<Atom> vs = pop.values.atoms();
  std::sort(vs.begin(), vs.end(),
            [](const Atom& a, const Atom& b) { return a.point > b.point; });
  double tail = 0.0;
  bool found = false;
  double vb = 0.0, tailAbove = 0.0, massAt = 0.0;
  for (const Atom& a : vs) {
    if (tail + a.prob >= target - kStepTol) {
      vb = a.point;
      tailAbove = tail;
      massAt = a.prob;
      found = true;
      break;
    }
    tail += a.prob;
  }
  if (!found)
    throw DegenerateError("value marginal cannot cover the sale target");

  double lmax = s.y * std::exp(-s.c);
  double lstar = vb - s.p;
  Cost1Result r;
  if (lstar > lmax + kStepTol) {
    lstar = lmax;
    r.exact = false;
    r.tieFraction = 1.0;
  } else {
    lstar = std::max(0.0, std::min(lstar, lmax));
    double need = target - tailAbove;
    r.tieFraction =
        massAt == 0.0 ? 1.0 : std::max(0.0, std::min(1.0, need / massAt));
  }
  r.loss = lstar;
  r.policy = Policy{0.0, s.c + lstar, s.p + lstar};
  return r;
}

BlowupResult blowup(const Population& pop, const Policy& s, double beta) {
  double sigma = std::max(1.0, quantileHeavyK(pop, s, 1.0 - beta));
  double base = s.y * std::exp(s.c * (sigma - 1.0));
  double sale0 = evaluate(pop, s).saleProb;
  auto saleAt = [&](double x) {
    return evaluate(pop, Policy{x * base, 0.0, s.p - s.c}).saleProb;
  };
  double q;
  if (saleAt(1.0) <= sale0 + kStepTol) {
    q = 1.0;
  } else {
    double lo = 1.0, hi = 2.0;
    while (saleAt(hi) > sale0 + kStepTol) {
      hi *= 2.0;
      if (hi > 1e30) break;
    }
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      if (saleAt(mid) <= sale0 + kStepTol)
        hi = mid;
      else
        lo = mid;
      if (hi - lo <= 1e-10 * hi) break;
    }
    q = hi;
  }
  BlowupResult br;
  br.sigma = sigma;
  br.q = q;
  br.ySk = q * base;
  br.kBar = std::exp(s.c) / br.ySk;
  br.policy = Policy{br.ySk, 0.0, s.p - s.c};
  return br;
}

GoodnessCheck blowupGood(const Population& pop, const Policy& s, double beta,
                         const BlowupResult& br) {
  double e3 = epsilonPartition(pop, s).eps3;
  double extS = evaluate(pop, s).externality;
  double sale = 0.0, lowMass = 0.0;
  for (const JointAtom& a : productAtoms(pop)) {
    double u = utilityOf(a.t, br.policy);
    if (purchaseFrac(u) == 0.0) continue;
    sale += a.prob;
    if (a.t.k <= br.kBar)
      lowMass += a.prob * riskOf(a.t.k, br.policy.y, 0.0);
  }
  double lhs = sale > 0.0 ? lowMass / sale : 0.0;
  double n = 4.0 * (s.p - s.c) / ((1.0 - beta) * (1.0 + s.c) * e3);
  GoodnessCheck g;
  g.threshold = n * extS;
  g.lhs = lhs;
  g.good = lhs <= g.threshold + kStepTol;
  return g;
}

Policy heavy(const Population&, const Policy&, double,
             const BlowupResult& br) {
  double ph = lossOf(br.kBar, br.ySk, 0.0);
  return Policy{0.0, ph / 2.0, ph};
}

double heavyPriceAlgebraic(const Policy& s, const BlowupResult& br) {
  return (1.0 + s.c) * br.q * s.y * std::exp(s.c * br.sigma) /
         std::exp(2.0 * s.c);
}

double lossFromRisk(double x, double y) {
  if (!(x > 0.0))
    throw PreconditionError("risk argument must be positive");
  return (std::log(1.0 / x) + 1.0) * x * y;
}

double saleCurveH(const Population& pop, const Policy&,
                  const BlowupResult& br, double x) {
  double price = lossFromRisk(x, br.ySk);
  double mass = 0.0;
  for (const Atom& a : pop.values.atoms())
    if (a.point >= price - kModelTol) mass += a.prob;
  return mass;
}

Policy cost3(const Population&, const Policy& s, const BlowupResult& br,
             double x, std::vector<std::string>* warnings) {
  double price = lossFromRisk(x, br.ySk);
  double cost = std::log(s.y);
  if (cost < 0.0) {
    if (warnings)
      warnings->push_back(
          "cost3: fine below 1, clamping the log-fine cost to zero");
    cost = 0.0;
  }
  return Policy{0.0, cost, price};
}

GoodnessCheck cost3Good(const Population& pop, const Policy& s, double beta,
                        const BlowupResult& br, double x) {
  double e3 = epsilonPartition(pop, s).eps3;
  double profS = evaluate(pop, s).profit;
  double price = lossFromRisk(x, br.ySk);
  GoodnessCheck g;
  g.lhs = saleCurveH(pop, s, br, x);
  g.threshold = 2.0 * beta * e3 * profS / price;
  g.good = g.lhs >= g.threshold - kStepTol;
  return g;
}

ApproxResult fineRoutine(const Population& pop, const Policy& s, double beta) {
  if (!(s.p > s.c))
    throw PreconditionError("fine reduction needs a positive margin");
  ApproxResult res;
  res.trace.partition = epsilonPartition(pop, s);
  res.trace.beta = beta;
  res.tieFraction = 1.0;

  if (s.c <= 1.0) {
    // Rebalance the whole cost into the fine. Built algebraically (the cost
    // component cancels to exactly zero) rather than through invTransform,
    // so the output is exactly simple.
    res.policy = Policy{s.y * std::exp(-s.c), 0.0, s.p};
    res.trace.branch = ApproxBranch::FineInv;
    res.trace.output = res.policy;
    return res;
  }

  Policy st = invTransform(s, 0.5);
  BlowupResult br = blowup(pop, st, beta);
  res.trace.blowup = br;
  GoodnessCheck bg = blowupGood(pop, st, beta, br);
  res.trace.thresholds["blowupGoodLhs"] = bg.lhs;
  res.trace.thresholds["blowupGoodThreshold"] = bg.threshold;
  // Diagnostic only: the same predicate evaluated on the unbalanced policy.
  try {
    BlowupResult rawBr = blowup(pop, s, beta);
    GoodnessCheck rawG = blowupGood(pop, s, beta, rawBr);
    res.trace.thresholds["rawBlowupGoodLhs"] = rawG.lhs;
    res.trace.thresholds["rawBlowupGoodThreshold"] = rawG.threshold;
    res.trace.thresholds["rawBlowupGood"] = rawG.good ? 1.0 : 0.0;
  } catch (const Error&) {
    res.trace.warnings.push_back(
        "raw-policy blow-up diagnostic unavailable");
  }

  if (bg.good) {
    res.policy = br.policy;
    res.trace.branch = ApproxBranch::FineBlowupGood;
    res.trace.output = res.policy;
    return res;
  }
  if (br.sigma >= 2.0) {
    res.policy = heavy(pop, st, beta, br);
    res.trace.branch = ApproxBranch::FineHeavy;
    res.trace.output = res.policy;
    return res;
  }

  // Scan risk levels x on [e^{-c}, 1] (log grid) for a workable cost3 price.
  std::optional<double> goodX;
  double lo = std::log(std::exp(-st.c));
  for (int i = 0; i < 512; ++i) {
    double x = std::exp(lo + (0.0 - lo) * i / 511.0);
    GoodnessCheck cg = cost3Good(pop, st, beta, br, x);
    if (cg.good) {
      goodX = x;
      res.trace.thresholds["cost3GoodLhs"] = cg.lhs;
      res.trace.thresholds["cost3GoodThreshold"] = cg.threshold;
      break;
    }
  }
  double fineScale = st.y * std::exp(-st.c);
  res.trace.thresholds["rebalancedFineScale"] = fineScale;

  if (goodX) {
    if (fineScale < 2.0) {
      Cost1Result c1 = cost1(pop, s, 1.0);
      res.policy = c1.policy;
      res.trace.branch = ApproxBranch::FineCost1;
      res.trace.thresholds["goodXFound"] = *goodX;
    } else {
      res.policy = cost3(pop, st, br, *goodX, &res.trace.warnings);
      res.trace.branch = ApproxBranch::FineCost3;
      res.trace.chosenX = *goodX;
    }
    res.trace.output = res.policy;
    return res;
  }
  res.policy = br.policy;
  res.trace.branch = ApproxBranch::FineBlowupFallback;
  res.trace.output = res.policy;
  return res;
}

ApproxResult approxRoutine(const Population& pop, const Policy& s) {
  if (s.p < s.c)
    throw PreconditionError("price below cost has nonpositive margin");
  const double beta = 0.5;
  EpsilonPartition part = epsilonPartition(pop, s);

  if (part.eps1 >= 0.125) {
    Cost1Result c1 = cost1(pop, s, 1.0);
    ApproxResult res;
    res.policy = c1.policy;
    res.tieFraction = c1.tieFraction;
    res.trace.partition = part;
    res.trace.branch = ApproxBranch::Cost1Full;
    res.trace.beta = beta;
    res.trace.thresholds["cost1Loss"] = c1.loss;
    res.trace.thresholds["cost1Exact"] = c1.exact ? 1.0 : 0.0;
    res.trace.output = res.policy;
    res.trace.outputTie = res.tieFraction;
    return res;
  }
  if (part.eps2 >= 0.125) {
    Cost1Result c1 = cost1(pop, s, part.eps1 + part.eps2);
    ApproxResult res;
    res.policy = c1.policy;
    res.tieFraction = c1.tieFraction;
    res.trace.partition = part;
    res.trace.branch = ApproxBranch::Cost1Eps12;
    res.trace.beta = beta;
    res.trace.thresholds["cost1Loss"] = c1.loss;
    res.trace.thresholds["cost1Exact"] = c1.exact ? 1.0 : 0.0;
    res.trace.thresholds["cost1Eps"] = part.eps1 + part.eps2;
    res.trace.output = res.policy;
    res.trace.outputTie = res.tieFraction;
    return res;
  }
  ApproxResult res = fineRoutine(pop, s, beta);
  res.trace.outputTie = res.tieFraction;
  return res;
}

}  // namespace externreg
