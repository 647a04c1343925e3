#include "externreg/stackelberg.hpp"

#include <algorithm>
#include <cmath>

#include "externreg/errors.hpp"

namespace externreg {

RevenueTable revenueTable(const Population& pop, double y, double c) {
  RevenueTable table;
  for (const JointAtom& a : productAtoms(pop)) {
    RevenueRow row;
    row.t = a.t;
    row.prob = a.prob;
    row.postValue = a.t.v - lossOf(a.t.k, y, c);
    table.rows.push_back(row);
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const RevenueRow& a, const RevenueRow& b) {
              if (a.postValue != b.postValue) return a.postValue < b.postValue;
              if (a.t.v != b.t.v) return a.t.v < b.t.v;
              return a.t.k < b.t.k;
            });
  for (RevenueRow& row : table.rows) {
    double tail = 0.0;
    for (const RevenueRow& other : table.rows)
      if (other.postValue >= row.postValue - kModelTol) tail += other.prob;
    row.revenue = row.postValue * tail;
  }
  return table;
}

BestPrice sellerBestPrice(const Population& pop, double y, double c) {
  RevenueTable table = revenueTable(pop, y, c);
  if (table.rows.empty())
    throw PreconditionError("empty population has no price");
  const RevenueRow* best = &table.rows.front();
  for (const RevenueRow& row : table.rows) {
    if (row.revenue > best->revenue + kModelTol ||
        (std::abs(row.revenue - best->revenue) <= kModelTol &&
         row.postValue < best->postValue))
      best = &row;
  }
  double sale = 0.0;
  for (const RevenueRow& row : table.rows)
    if (row.postValue >= best->postValue - kModelTol) sale += row.prob;
  return {best->postValue, (best->postValue - c) * sale};
}

double yOfK(double k) {
  if (!(k > 1.0))
    throw PreconditionError("calibrated fine needs efficiency above 1");
  return std::exp(k / (k - 1.0)) / (std::exp(1.0) * k);
}

MarketOutcome stackelbergEvaluate(const Population& pop, double y, double c) {
  BestPrice bp = sellerBestPrice(pop, y, c);
  return evaluate(pop, Policy{y, c, bp.price}, ExternalityMode::Total);
}

}  // namespace externreg
