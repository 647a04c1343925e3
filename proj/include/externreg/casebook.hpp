// Self-checking reconstructions of the library's reference scenarios: each
// case builds a small market, runs the relevant solvers, and reports every
// claimed relation with its computed value and a pass flag.
#pragma once

#include <string>
#include <vector>

namespace externreg {

struct CaseCheck {
  std::string label;
  std::string expectedRelation;
  double computedValue = 0.0;
  bool pass = false;
};

struct CaseReport {
  std::string caseName;
  std::vector<CaseCheck> checks;
  bool allPass = false;
};

// Upgrading the least efficient buyers can raise total harm: with a fine-only
// policy, the k=0 buyer stays out of the market, but after an upgrade to k=1
// they buy and carry high risk.
CaseReport caseNonMonotone();

// Four-type market where the profit floor is met by a mixed (fine + cost)
// policy with strictly lower externality than every simple policy, and the
// optimal policy is not profit-maximizing. x is the high efficiency level.
CaseReport caseNewExample(double x = 1e6);

// Single-value market where every simple policy is at least a factor x worse
// than a mixed policy; x in [2, 8] keeps the huge efficiency level finite.
CaseReport caseLowerBound(double x = 4.0);

// Seller-best-response market: slightly raising the fine flips the seller's
// chosen price to serve more buyers and raises the total externality.
CaseReport caseProfitsMax();

// Names accepted by runCase, in display order.
std::vector<std::string> caseNames();

// Dispatch by name with default parameters; unknown names raise
// UnknownCaseError.
CaseReport runCase(const std::string& name);

}  // namespace externreg
