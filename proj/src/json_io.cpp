#include "externreg/json_io.hpp"

#include <fstream>

#include "externreg/errors.hpp"

namespace externreg {

namespace {

double numberField(const Json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number())
    throw ParseError(std::string("missing or non-numeric field: ") + name);
  return j[name].get<double>();
}

DiscreteDistribution distributionFromJson(const Json& j, const char* listName,
                                          const char* pointName) {
  if (!j.contains(listName) || !j[listName].is_array())
    throw ParseError(std::string("missing or non-array field: ") + listName);
  std::vector<Atom> atoms;
  for (const Json& row : j[listName]) {
    if (!row.is_object())
      throw ParseError(std::string("non-object entry in ") + listName);
    atoms.push_back({numberField(row, pointName), numberField(row, "prob")});
  }
  try {
    return DiscreteDistribution(atoms);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string(listName) + ": " + e.what());
  }
}

}  // namespace

Json instanceToJson(const Instance& inst) {
  Json values = Json::array();
  for (const Atom& a : inst.population.values.atoms())
    values.push_back({{"v", a.point}, {"prob", a.prob}});
  Json effs = Json::array();
  for (const Atom& a : inst.population.efficiencies.atoms())
    effs.push_back({{"k", a.point}, {"prob", a.prob}});
  return Json{{"values", values},
              {"efficiencies", effs},
              {"profit_floor", inst.profitFloor}};
}

Instance instanceFromJson(const Json& j) {
  if (!j.is_object()) throw ParseError("instance JSON must be an object");
  DiscreteDistribution values = distributionFromJson(j, "values", "v");
  DiscreteDistribution effs = distributionFromJson(j, "efficiencies", "k");
  double floor = numberField(j, "profit_floor");
  return Instance::create(Population{values, effs}, floor);
}

Instance loadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instanceFromJson(j);
}

Json policyToJson(const Policy& s) {
  return Json{{"y", s.y}, {"c", s.c}, {"p", s.p}};
}

Policy policyFromJson(const Json& j) {
  if (!j.is_object()) throw ParseError("policy JSON must be an object");
  return Policy{numberField(j, "y"), numberField(j, "c"),
                numberField(j, "p")};
}

Json outcomeToJson(const MarketOutcome& mo) {
  Json rows = Json::array();
  for (const AtomOutcome& a : mo.perAtom) {
    rows.push_back({{"v", a.t.v},
                    {"k", a.t.k},
                    {"prob", a.prob},
                    {"effort", a.outcome.effort},
                    {"risk", a.outcome.risk},
                    {"loss", a.outcome.loss},
                    {"post_value", a.outcome.postValue},
                    {"utility", a.outcome.utility},
                    {"purchase_fraction", a.outcome.purchaseFraction}});
  }
  return Json{{"sale_prob", mo.saleProb},
              {"profit", mo.profit},
              {"externality", mo.externality},
              {"per_atom", rows}};
}

Json solveResultToJson(const SolveResult& r) {
  return Json{{"policy", policyToJson(r.policy)},
              {"outcome", outcomeToJson(r.outcome)},
              {"feasible", r.feasible},
              {"method", r.method == SolveMethod::ExactEnumeration
                             ? "exact-enumeration"
                             : "grid"}};
}

Json blowupToJson(const BlowupResult& br) {
  return Json{{"sigma", br.sigma},
              {"q", br.q},
              {"y_sk", br.ySk},
              {"k_bar", br.kBar},
              {"policy", policyToJson(br.policy)}};
}

Json traceToJson(const ApproxTrace& tr) {
  Json j{{"partition",
          Json{{"eps1", tr.partition.eps1},
               {"eps2", tr.partition.eps2},
               {"eps3", tr.partition.eps3}}},
         {"branch", branchName(tr.branch)},
         {"beta", tr.beta}};
  j["blowup"] = tr.blowup ? blowupToJson(*tr.blowup) : Json(nullptr);
  j["chosen_x"] = tr.chosenX ? Json(*tr.chosenX) : Json(nullptr);
  Json th = Json::object();
  for (const auto& [name, value] : tr.thresholds) th[name] = value;
  j["thresholds"] = th;
  j["warnings"] = tr.warnings;
  j["output"] = policyToJson(tr.output);
  j["output_tie"] = tr.outputTie;
  return j;
}

Json caseReportToJson(const CaseReport& r) {
  Json checks = Json::array();
  for (const CaseCheck& c : r.checks) {
    checks.push_back({{"label", c.label},
                      {"expected", c.expectedRelation},
                      {"computed", c.computedValue},
                      {"pass", c.pass}});
  }
  return Json{{"case", r.caseName}, {"all_pass", r.allPass},
              {"checks", checks}};
}

Json revenueTableToJson(const RevenueTable& t) {
  Json rows = Json::array();
  for (const RevenueRow& row : t.rows) {
    rows.push_back({{"v", row.t.v},
                    {"k", row.t.k},
                    {"prob", row.prob},
                    {"post_value", row.postValue},
                    {"revenue", row.revenue}});
  }
  return Json{{"rows", rows}};
}

}  // namespace externreg
