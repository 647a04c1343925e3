#pragma once
// Closed-form buyer best response and aggregate market functionals.
//
// A policy is a triple s = (y, c, p): a fine y charged to the seller of a
// compromised device, a mandated baseline security cost c built into the
// product, and a sale price p. A buyer of type (v, k) chooses extra security
// effort h to minimize h + y * exp(-(c + k*h)); the closed forms below are the
// result of that one-dimensional minimization.

#include <vector>

#include "externreg/distribution.hpp"

namespace externreg {

// Absolute tolerance for sign/boundary comparisons (utility vs 0,
// y*k vs e^c). Pinned so boundary cases reproduce exactly across platforms.
inline constexpr double kModelTol = 1e-12;

struct Policy {
  double y = 0.0;  // fine
  double c = 0.0;  // mandated security cost
  double p = 0.0;  // price

  bool isFine() const { return c == 0.0; }
  bool isCost() const { return y == 0.0; }
  bool isSimple() const { return isFine() || isCost(); }
};

struct BuyerOutcome {
  double effort = 0.0;            // optimal extra effort h*
  double risk = 0.0;              // Pr[compromise] = exp(-c - k*h*)
  double loss = 0.0;              // y*risk + effort
  double postValue = 0.0;         // v - loss
  double utility = 0.0;           // v - p - loss
  double purchaseFraction = 0.0;  // 1 buy, 0 pass, in between only at u == 0
};

enum class ExternalityMode {
  Conditional,  // expected risk among purchasers
  Total,        // unconditional expected compromised mass
};

struct AtomOutcome {
  BuyerType t;
  double prob = 0.0;
  BuyerOutcome outcome;
};

struct MarketOutcome {
  double saleProb = 0.0;
  double profit = 0.0;       // (p - c) * saleProb
  double externality = 0.0;  // per ExternalityMode
  std::vector<AtomOutcome> perAtom;
};

// Optimal extra effort: max(0, (ln(y*k) - c)/k); zero when y*k never makes
// effort worthwhile (y*k < e^c) and in the degenerate y = 0 / k = 0 cases.
double bestEffort(double k, double y, double c);

// Compromise probability under optimal effort: min(e^{-c}, 1/(y*k)),
// with 1/(y*k) read as +infinity when y*k = 0.
double riskOf(double k, double y, double c);

// Expected fine plus effort under optimal effort:
// (ln(y*k) - c + 1)/k on the positive-effort branch, else y*e^{-c}.
double lossOf(double k, double y, double c);

double utilityOf(BuyerType t, const Policy& s);

// Bundles effort/risk/loss/utility; purchaseFraction is 1 if u > 0, 0 if
// u < 0, and tieFraction at indifference (|u| <= kModelTol).
BuyerOutcome buyerOutcome(BuyerType t, const Policy& s, double tieFraction);

MarketOutcome evaluate(const Population& pop, const Policy& s,
                       ExternalityMode mode = ExternalityMode::Conditional,
                       double tieFraction = 1.0);

// Effort thresholds of a policy: k0 = e^c / y is the efficiency above which
// buyers exert positive effort (+infinity when y = 0); kh = max(1, k0).
struct Thresholds {
  double k0 = 0.0;
  double kh = 0.0;
};
Thresholds thresholds(const Policy& s);

// Loss difference lossOf(k, s) - lossOf(k, s2): the comparison function used
// to reason about which of two policies a given buyer prefers.
double policyGap(double k, const Policy& s, const Policy& s2);

}  // namespace externreg
