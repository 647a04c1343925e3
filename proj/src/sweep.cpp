#include "externreg/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "externreg/errors.hpp"
#include "externreg/model.hpp"

namespace externreg {

namespace {

// Profit-maximizing price for fixed (y, c): candidates are the distinct
// post-values; ties at equal profit resolve toward the lower price.
SweepRow bestCell(const std::vector<JointAtom>& atoms, const Population& pop,
                  double y, double c) {
  struct Row {
    double pv, prob;
  };
  std::vector<Row> rows;
  rows.reserve(atoms.size());
  for (const JointAtom& a : atoms)
    rows.push_back({a.t.v - lossOf(a.t.k, y, c), a.prob});
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.pv > b.pv; });

  double bestPrice = 0.0, bestProfit = 0.0;
  bool have = false;
  double sale = 0.0;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    double price = rows[i].pv;
    while (j < rows.size() && rows[j].pv >= rows[i].pv - kModelTol) {
      price = rows[j].pv;
      sale += rows[j].prob;
      ++j;
    }
    double profit = (price - c) * sale;
    if (!have || profit > bestProfit + kModelTol ||
        (std::abs(profit - bestProfit) <= kModelTol && price < bestPrice)) {
      have = true;
      bestPrice = price;
      bestProfit = profit;
    }
    i = j;
  }
  MarketOutcome mo = evaluate(pop, Policy{y, c, bestPrice});
  return {y, c, bestPrice, mo.profit, mo.externality};
}

}  // namespace

std::vector<SweepRow> runSweep(const SweepSpec& spec) {
  if (spec.fines.empty() || spec.costs.empty())
    throw PreconditionError("sweep needs at least one fine and one cost");
  auto atoms = productAtoms(spec.population);
  const std::size_t nc = spec.costs.size();
  const std::size_t total = spec.fines.size() * nc;

  // Cells are independent pure computations; workers pull indices from a
  // shared counter and write into the preallocated slot for that cell, so the
  // row order is (y outer, c inner) no matter which worker finishes first.
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
      rows[i] = bestCell(atoms, spec.population, spec.fines[i / nc],
                         spec.costs[i % nc]);
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, total);
  std::vector<std::thread> pool;
  pool.reserve(workers > 0 ? workers - 1 : 0);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  return rows;
}

std::string sweepCsv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "y,c,best_price,profit,externality\n";
  os.precision(12);
  for (const SweepRow& r : rows)
    os << r.y << "," << r.c << "," << r.bestPrice << "," << r.profit << ","
       << r.externality << "\n";
  return os.str();
}

}  // namespace externreg
