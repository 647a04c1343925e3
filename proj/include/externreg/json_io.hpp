// JSON (de)serialization with stable field ordering, plus file loading with
// the library's error taxonomy (I/O vs parse failures).
#pragma once

#include <string>

#include <json.hpp>

#include "externreg/approx.hpp"
#include "externreg/casebook.hpp"
#include "externreg/distribution.hpp"
#include "externreg/model.hpp"
#include "externreg/simple_opt.hpp"
#include "externreg/stackelberg.hpp"

namespace externreg {

using Json = nlohmann::ordered_json;

Json instanceToJson(const Instance& inst);
Instance instanceFromJson(const Json& j);
Instance loadInstance(const std::string& path);

Json policyToJson(const Policy& s);
Policy policyFromJson(const Json& j);

Json outcomeToJson(const MarketOutcome& mo);
Json solveResultToJson(const SolveResult& r);
Json blowupToJson(const BlowupResult& br);
Json traceToJson(const ApproxTrace& tr);
Json caseReportToJson(const CaseReport& r);
Json revenueTableToJson(const RevenueTable& t);

}  // namespace externreg
