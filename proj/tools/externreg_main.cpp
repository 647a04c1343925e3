// Command-line front end: evaluate policies, run the solvers and the
// bicriterion reduction, sweep (fine, cost) grids to CSV, and execute the
// self-checking casebook. All structured output is JSON or CSV.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "externreg/approx.hpp"
#include "externreg/casebook.hpp"
#include "externreg/distribution.hpp"
#include "externreg/errors.hpp"
#include "externreg/json_io.hpp"
#include "externreg/model.hpp"
#include "externreg/simple_opt.hpp"
#include "externreg/stackelberg.hpp"
#include "externreg/sweep.hpp"

namespace {

using namespace externreg;

double parseNumber(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw ParseError("");
    return value;
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + text + "' in " + what);
  }
}

std::vector<std::string> splitOn(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// --policy y=1,c=0.5,p=2 (all three fields required, any order)
Policy parsePolicyFlag(const std::string& text) {
  std::optional<double> y, c, p;
  for (const std::string& part : splitOn(text, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw ParseError("policy field without '=': " + part);
    std::string key = part.substr(0, eq);
    double value = parseNumber(part.substr(eq + 1), "--policy");
    if (key == "y")
      y = value;
    else if (key == "c")
      c = value;
    else if (key == "p")
      p = value;
    else
      throw ParseError("unknown policy field: " + key);
  }
  if (!y || !c || !p)
    throw ParseError("policy needs all of y=..., c=..., p=...");
  return Policy{*y, *c, *p};
}

// uniform:lo,hi,n  |  point:x
DiscreteDistribution parseDistFlag(const std::string& text,
                                   const std::string& what) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError(what + " must look like uniform:lo,hi,n or point:x");
  std::string kind = text.substr(0, colon);
  std::vector<std::string> args = splitOn(text.substr(colon + 1), ',');
  if (kind == "point") {
    if (args.size() != 1) throw ParseError(what + ": point takes one number");
    return DiscreteDistribution::pointMass(parseNumber(args[0], what));
  }
  if (kind == "uniform") {
    if (args.size() != 3)
      throw ParseError(what + ": uniform takes lo,hi,n");
    double lo = parseNumber(args[0], what);
    double hi = parseNumber(args[1], what);
    double n = parseNumber(args[2], what);
    return discretizeUniform(lo, hi, static_cast<int>(n));
  }
  throw ParseError(what + ": unknown distribution kind '" + kind + "'");
}

// list:a,b,c  |  grid:lo,hi,n (n evenly spaced values, endpoints included)
std::vector<double> parseGridFlag(const std::string& text,
                                  const std::string& what) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError(what + " must look like list:a,b,... or grid:lo,hi,n");
  std::string kind = text.substr(0, colon);
  std::vector<std::string> args = splitOn(text.substr(colon + 1), ',');
  std::vector<double> out;
  if (kind == "list") {
    if (args.empty()) throw ParseError(what + ": empty list");
    for (const std::string& a : args) out.push_back(parseNumber(a, what));
    return out;
  }
  if (kind == "grid") {
    if (args.size() != 3) throw ParseError(what + ": grid takes lo,hi,n");
    double lo = parseNumber(args[0], what);
    double hi = parseNumber(args[1], what);
    int n = static_cast<int>(parseNumber(args[2], what));
    if (n < 1 || hi < lo) throw ParseError(what + ": invalid grid range");
    for (int i = 0; i < n; ++i)
      out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return out;
  }
  throw ParseError(what + ": unknown grid kind '" + kind + "'");
}

ExternalityMode parseMode(const std::string& text) {
  if (text == "cond") return ExternalityMode::Conditional;
  if (text == "total") return ExternalityMode::Total;
  throw ParseError("mode must be 'cond' or 'total'");
}

void printJson(const Json& j) { std::cout << j.dump(2) << "\n"; }

int runCasebook(const std::string& name, std::optional<double> x,
                bool jsonOut) {
  std::vector<CaseReport> reports;
  if (name == "all") {
    for (const std::string& n : caseNames()) reports.push_back(runCase(n));
  } else {
    if (name == "mixed-beats-simple")
      reports.push_back(x ? caseNewExample(*x) : caseNewExample());
    else if (name == "simple-gap-lower-bound")
      reports.push_back(x ? caseLowerBound(*x) : caseLowerBound());
    else
      reports.push_back(runCase(name));
  }
  bool allPass = true;
  if (jsonOut) {
    if (reports.size() == 1) {
      printJson(caseReportToJson(reports[0]));
    } else {
      Json arr = Json::array();
      for (const CaseReport& r : reports) arr.push_back(caseReportToJson(r));
      printJson(arr);
    }
    for (const CaseReport& r : reports) allPass = allPass && r.allPass;
  } else {
    for (const CaseReport& r : reports) {
      std::cout << "case " << r.caseName << "\n";
      for (const CaseCheck& c : r.checks) {
        std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.label
                  << " (expected " << c.expectedRelation << ", computed "
                  << c.computedValue << ")\n";
      }
      std::cout << "  => " << (r.allPass ? "PASS" : "FAIL") << "\n";
      allPass = allPass && r.allPass;
    }
  }
  return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "externreg: policy evaluation and optimization for a market with "
      "third-party security externalities"};
  app.require_subcommand(1);

  std::string instancePath, policyText, modeText = "cond";
  double tie = 1.0;

  auto* cmdEval = app.add_subcommand("eval", "evaluate a policy");
  cmdEval->add_option("--instance", instancePath, "instance JSON path")
      ->required();
  cmdEval->add_option("--policy", policyText, "y=...,c=...,p=...")
      ->required();
  cmdEval->add_option("--mode", modeText, "cond|total (default cond)");
  cmdEval->add_option("--tie", tie, "purchase fraction when indifferent");

  std::string family;
  SolverConfig cfg;
  bool forceGrid = false;
  auto* cmdOpt = app.add_subcommand("optimize", "best policy in a family");
  cmdOpt->add_option("--instance", instancePath, "instance JSON path")
      ->required();
  cmdOpt->add_option("--family", family, "cost|fine|general")->required();
  cmdOpt->add_option("--y-lo", cfg.yLo, "fine grid lower end");
  cmdOpt->add_option("--y-hi", cfg.yHi, "fine grid upper end");
  cmdOpt->add_option("--y-count", cfg.yCount, "fine grid size");
  cmdOpt->add_option("--c-lo", cfg.cLo, "cost grid lower end");
  cmdOpt->add_option("--c-hi", cfg.cHi, "cost grid upper end (-1: auto)");
  cmdOpt->add_option("--c-count", cfg.cCount, "cost grid size");
  cmdOpt->add_option("--refine-iters", cfg.refineIters,
                     "local refinement iterations");
  cmdOpt->add_flag("--grid", forceGrid, "force the grid solver for fine");

  auto* cmdApprox =
      app.add_subcommand("approx", "reduce a policy to a simple one");
  cmdApprox->add_option("--instance", instancePath, "instance JSON path")
      ->required();
  cmdApprox->add_option("--policy", policyText, "y=...,c=...,p=...")
      ->required();

  std::string valuesText, effsText, finesText, costsText, outPath;
  auto* cmdSweep = app.add_subcommand("sweep", "CSV over a (y,c) grid");
  cmdSweep->add_option("--instance", instancePath,
                       "instance JSON path (population source)");
  cmdSweep->add_option("--values", valuesText, "uniform:lo,hi,n | point:x");
  cmdSweep->add_option("--effs", effsText, "uniform:lo,hi,n | point:x");
  cmdSweep->add_option("--fines", finesText, "list:a,b,... | grid:lo,hi,n")
      ->required();
  cmdSweep->add_option("--costs", costsText, "list:a,b,... | grid:lo,hi,n")
      ->required();
  cmdSweep->add_option("--out", outPath, "output CSV path (default stdout)");

  double floorFlag = 0.0;
  bool floorGiven = false;
  auto* cmdCutoff = app.add_subcommand(
      "cutoff", "best cost level and the efficiency cutoff");
  cmdCutoff->add_option("--instance", instancePath, "instance JSON path");
  cmdCutoff->add_option("--values", valuesText, "uniform:lo,hi,n | point:x");
  cmdCutoff->add_option("--floor", floorFlag, "profit floor")
      ->each([&](const std::string&) { floorGiven = true; });

  std::string caseName = "all";
  double xParam = 0.0;
  bool xGiven = false, jsonOut = false;
  auto* cmdCase = app.add_subcommand("casebook", "run the case reports");
  cmdCase->add_option("name", caseName, "case name or 'all' (default)");
  cmdCase->add_option("--x", xParam, "parameter for parameterized cases")
      ->each([&](const std::string&) { xGiven = true; });
  cmdCase->add_flag("--json", jsonOut, "emit JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::Parse);
  }

  try {
    if (cmdEval->parsed()) {
      Instance inst = loadInstance(instancePath);
      Policy s = parsePolicyFlag(policyText);
      if (tie < 0.0 || tie > 1.0)
        throw PreconditionError("tie fraction must lie in [0,1]");
      printJson(outcomeToJson(
          evaluate(inst.population, s, parseMode(modeText), tie)));
      return 0;
    }
    if (cmdOpt->parsed()) {
      Instance inst = loadInstance(instancePath);
      SolveResult r;
      if (family == "cost")
        r = bestCostPolicy(inst, cfg);
      else if (family == "fine")
        r = forceGrid ? bestFinePolicyGrid(inst, cfg)
                      : bestFinePolicy(inst, cfg);
      else if (family == "general")
        r = bestGeneralPolicy(inst, cfg);
      else
        throw ParseError("family must be cost, fine, or general");
      printJson(solveResultToJson(r));
      return 0;
    }
    if (cmdApprox->parsed()) {
      Instance inst = loadInstance(instancePath);
      Policy s = parsePolicyFlag(policyText);
      ApproxResult res = approxRoutine(inst.population, s);
      MarketOutcome base = evaluate(inst.population, s);
      MarketOutcome out = evaluate(inst.population, res.policy,
                                   ExternalityMode::Conditional,
                                   res.tieFraction);
      Json j{{"input_policy", policyToJson(s)},
             {"base_outcome", outcomeToJson(base)},
             {"output_policy", policyToJson(res.policy)},
             {"tie_fraction", res.tieFraction},
             {"output_outcome", outcomeToJson(out)}};
      j["profit_ratio"] =
          base.profit > 0.0 ? Json(out.profit / base.profit) : Json(nullptr);
      j["externality_ratio"] = base.externality > 0.0
                                   ? Json(out.externality / base.externality)
                                   : Json(nullptr);
      j["trace"] = traceToJson(res.trace);
      printJson(j);
      return 0;
    }
    if (cmdSweep->parsed()) {
      SweepSpec spec;
      if (!instancePath.empty()) {
        spec.population = loadInstance(instancePath).population;
      } else {
        if (valuesText.empty() || effsText.empty())
          throw ParseError("sweep needs --instance or both --values/--effs");
        spec.population = Population{parseDistFlag(valuesText, "--values"),
                                     parseDistFlag(effsText, "--effs")};
      }
      spec.fines = parseGridFlag(finesText, "--fines");
      spec.costs = parseGridFlag(costsText, "--costs");
      std::string csv = sweepCsv(runSweep(spec));
      if (outPath.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(outPath);
        if (!out) throw IoError("cannot open output file: " + outPath);
        out << csv;
        if (!out.good()) throw IoError("write failed: " + outPath);
      }
      return 0;
    }
    if (cmdCutoff->parsed()) {
      DiscreteDistribution values = [&] {
        if (!instancePath.empty()) {
          Instance inst = loadInstance(instancePath);
          if (!floorGiven) floorFlag = inst.profitFloor;
          floorGiven = true;
          return inst.population.values;
        }
        if (valuesText.empty())
          throw ParseError("cutoff needs --instance or --values");
        return parseDistFlag(valuesText, "--values");
      }();
      if (!floorGiven) throw ParseError("cutoff needs --floor");
      double cs = cStar(values, floorFlag);
      Cutoff t = cutoffT(values, floorFlag);
      Json j{{"c_star", cs}, {"cutoff_finite", t.finite}};
      j["cutoff"] = t.finite ? Json(t.value) : Json(nullptr);
      printJson(j);
      return 0;
    }
    if (cmdCase->parsed()) {
      std::optional<double> x;
      if (xGiven) x = xParam;
      return runCasebook(caseName, x, jsonOut);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_status();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
