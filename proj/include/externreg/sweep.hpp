// Grid sweep over (fine, cost) cells: in each cell the seller picks the
// profit-maximizing price, and the resulting profit and conditional
// externality are tabulated as CSV for external plotting.
#pragma once

#include <string>
#include <vector>

#include "externreg/distribution.hpp"

namespace externreg {

struct SweepSpec {
  Population population;
  std::vector<double> fines;  // y values, outer loop, emitted in given order
  std::vector<double> costs;  // c values, inner loop, emitted in given order
};

struct SweepRow {
  double y = 0.0;
  double c = 0.0;
  double bestPrice = 0.0;
  double profit = 0.0;
  double externality = 0.0;  // conditional, at the chosen price
};

std::vector<SweepRow> runSweep(const SweepSpec& spec);

// CSV with the exact header "y,c,best_price,profit,externality".
std::string sweepCsv(const std::vector<SweepRow>& rows);

}  // namespace externreg
