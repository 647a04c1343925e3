// Bicriterion reduction from an arbitrary policy to a simple one (pure fine
// or pure cost) that keeps at least 1/8 of the profit while increasing the
// conditional externality by at most a factor of 40/3. The reduction picks
// one of several transformations depending on how the purchasing population
// splits across effort regimes, and records a full decision trace.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "externreg/distribution.hpp"
#include "externreg/model.hpp"

namespace externreg {

// Purchase-conditional masses of the three effort regimes under s:
// eps1: k <= k0 (no effort exerted), eps2: k0 < k <= 1, eps3: k > kh.
struct EpsilonPartition {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
};

// Outcome of the fine blow-up transformation.
struct BlowupResult {
  double sigma = 1.0;  // high quantile of efficiency among heavy buyers
  double q = 1.0;      // extra inflation keeping sale probability below s's
  double ySk = 0.0;    // resulting fine: q * y * e^{c(sigma-1)}
  double kBar = 0.0;   // efficiency threshold e^c / ySk
  Policy policy;       // (ySk, 0, p - c)
};

struct Cost1Result {
  Policy policy;
  double tieFraction = 1.0;  // purchase fraction for exactly-indifferent buyers
  double loss = 0.0;         // uniform loss embedded in cost and price
  bool exact = true;         // false when capped by the max attainable loss
};

struct GoodnessCheck {
  bool good = false;
  double threshold = 0.0;
  double lhs = 0.0;
};

enum class ApproxBranch {
  Cost1Full,
  Cost1Eps12,
  FineInv,
  FineBlowupGood,
  FineHeavy,
  FineCost1,
  FineCost3,
  FineBlowupFallback,
};

const char* branchName(ApproxBranch b);

struct ApproxTrace {
  EpsilonPartition partition;
  ApproxBranch branch = ApproxBranch::Cost1Full;
  double beta = 0.5;
  std::optional<BlowupResult> blowup;
  std::optional<double> chosenX;
  // Every goodness predicate evaluated along the way, keyed by name.
  std::map<std::string, double> thresholds;
  std::vector<std::string> warnings;
  Policy output;
  double outputTie = 1.0;
};

struct ApproxResult {
  Policy policy;
  double tieFraction = 1.0;
  ApproxTrace trace;
};

EpsilonPartition epsilonPartition(const Population& pop, const Policy& s);

// Cost policy selling to an eps fraction of s's buyers at the same margin:
// (0, c + l, p + l) where l prices out exactly the right value mass. The
// boundary value atom is tie-split so the sale probability matches exactly;
// if the needed loss exceeds y*e^{-c} it is capped and exact=false.
Cost1Result cost1(const Population& pop, const Policy& s, double eps);

BlowupResult blowup(const Population& pop, const Policy& s, double beta);

// Whether buyers below kBar contribute little risk under the blown-up fine,
// relative to s's externality scaled by 4(p-c)/((1-beta)(1+c)eps3).
GoodnessCheck blowupGood(const Population& pop, const Policy& s, double beta,
                         const BlowupResult& br);

Policy heavy(const Population& pop, const Policy& s, double beta,
             const BlowupResult& br);

// Closed-form price the heavy transformation charges, for cross-checking the
// loss-based computation: (1+c) * q * y * e^{c sigma} / e^{2c}.
double heavyPriceAlgebraic(const Policy& s, const BlowupResult& br);

// Loss expressed through the induced risk x of a buyer facing fine y:
// (ln(1/x) + 1) * x * y.
double lossFromRisk(double x, double y);

// Mass of the value marginal at or above the cost3 price for parameter x.
double saleCurveH(const Population& pop, const Policy& s,
                  const BlowupResult& br, double x);

// Cost policy (0, ln y, lossFromRisk(x, ySk)); a negative cost is clamped to
// zero and reported through the optional warning sink.
Policy cost3(const Population& pop, const Policy& s, const BlowupResult& br,
             double x, std::vector<std::string>* warnings = nullptr);

GoodnessCheck cost3Good(const Population& pop, const Policy& s, double beta,
                        const BlowupResult& br, double x);

// Fine-side reduction (requires p > c): either rebalance into a pure fine
// directly (c <= 1) or work on the half-mixed policy via blow-up / heavy /
// cost3 / cost1 depending on the recorded predicates.
ApproxResult fineRoutine(const Population& pop, const Policy& s, double beta);

// Top-level reduction with beta = 1/2.
ApproxResult approxRoutine(const Population& pop, const Policy& s);

}  // namespace externreg
