#pragma once
// Externality-minimizing policy search under a seller profit floor.
//
// Cost policies (y = 0) admit a closed-form optimum. Fine policies (c = 0)
// are solved exactly on small instances by enumerating every purchase set a
// fine policy can induce (the sets closed upward in (value, efficiency)),
// and by a dense grid otherwise. General policies use a grid with exact price
// enumeration per cell plus local refinement; no exactness is claimed there.

#include "externreg/distribution.hpp"
#include "externreg/model.hpp"

namespace externreg {

struct SolverConfig {
  // Fine grid: log-spaced.
  double yLo = 1e-4;
  double yHi = 1e4;
  int yCount = 400;
  // Cost grid: linear; cHi < 0 means "use the largest buyer value".
  double cLo = 0.0;
  double cHi = -1.0;
  int cCount = 400;
  int refineIters = 40;
  double tolerance = 1e-9;
};

enum class SolveMethod { ExactEnumeration, Grid };

struct SolveResult {
  Policy policy;
  MarketOutcome outcome;  // conditional externality mode
  bool feasible = false;
  SolveMethod method = SolveMethod::Grid;
};

// Profit/externality trade-off rewrite: (y, c, p) ->
// (y * e^{(p-c)(1-alpha)}, alpha*c + (1-alpha)*p, p). Scales profit by exactly
// alpha and conditional externality by exactly e^{-(1-alpha)(p-c)} while
// leaving every buyer's effort, loss, and utility unchanged.
// Legal alpha: [0, p/(p-c)] when p > c, else [0, 1].
Policy invTransform(const Policy& s, double alpha);

// Largest mandated cost c for which some price still earns R: the maximum
// over support values v of v - R / Pr[value >= v], clamped at 0.
// Throws InfeasibleError when no price earns R even at c = 0.
double cStar(const DiscreteDistribution& values, double R);

// Efficiency cutoff 1 + 1/cStar separating the regime where the best simple
// policy is a cost policy (k below) from a fine policy (k above).
struct Cutoff {
  double value = 0.0;
  bool finite = false;  // false when cStar = 0 (cutoff is +infinity)
};
Cutoff cutoffT(const DiscreteDistribution& values, double R);

SolveResult bestCostPolicy(const Instance& inst, const SolverConfig& cfg = {});
SolveResult bestFinePolicy(const Instance& inst, const SolverConfig& cfg = {});
// Fine search restricted to policies that sell to every atom.
SolveResult bestFinePolicyAllBuyers(const Instance& inst,
                                    const SolverConfig& cfg = {});
// Force the dense-grid path regardless of instance size (cross-validation).
SolveResult bestFinePolicyGrid(const Instance& inst,
                               const SolverConfig& cfg = {});
SolveResult bestGeneralPolicy(const Instance& inst,
                              const SolverConfig& cfg = {});

}  // namespace externreg
