// Variant where the regulator fixes (fine, cost) and a profit-seeking seller
// best-responds with the price; externality is then measured unconditionally
// (risk mass over the whole population, not per sale).
#pragma once

#include <vector>

#include "externreg/distribution.hpp"
#include "externreg/model.hpp"

namespace externreg {

struct RevenueRow {
  BuyerType t;
  double prob = 0.0;
  double postValue = 0.0;  // v - loss(k, y, c)
  double revenue = 0.0;    // postValue * Pr[postValue' >= postValue]
};

// Rows sorted ascending by (postValue, v, k); pricing at any row's postValue
// sells exactly to that row and everything above it (ties included).
struct RevenueTable {
  std::vector<RevenueRow> rows;
};

RevenueTable revenueTable(const Population& pop, double y, double c);

struct BestPrice {
  double price = 0.0;
  double profit = 0.0;  // (price - c) * saleProb at that price
};

// Revenue-maximizing price over the finite postValue set; ties broken toward
// the lower price (more buyers served).
BestPrice sellerBestPrice(const Population& pop, double y, double c);

// Fine calibrated so an efficiency-k buyer's equilibrium loss is 1/(k-1).
double yOfK(double k);

// Market outcome at the seller's best-response price, with the externality
// reported unconditionally.
MarketOutcome stackelbergEvaluate(const Population& pop, double y, double c);

}  // namespace externreg
