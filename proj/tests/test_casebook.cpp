#include <doctest.h>

#include <algorithm>

#include "externreg/casebook.hpp"
#include "externreg/errors.hpp"

using namespace externreg;

TEST_CASE("every reference case passes at default parameters") {
  for (const std::string& name : caseNames()) {
    CAPTURE(name);
    CaseReport r = runCase(name);
    CHECK(r.caseName == name);
    CHECK(r.checks.size() >= 3);
    for (const CaseCheck& c : r.checks) {
      CAPTURE(c.label);
      CAPTURE(c.expectedRelation);
      CAPTURE(c.computedValue);
      CHECK(c.pass);
    }
    CHECK(r.allPass);
  }
}

TEST_CASE("case list is stable and dispatch is exhaustive") {
  std::vector<std::string> names = caseNames();
  REQUIRE(names.size() == 4);
  CHECK(names[0] == "non-monotone-upgrade");
  CHECK(names[1] == "mixed-beats-simple");
  CHECK(names[2] == "simple-gap-lower-bound");
  CHECK(names[3] == "seller-best-response");
  CHECK_THROWS_AS(runCase("bogus"), UnknownCaseError);
  CHECK_THROWS_AS(runCase(""), UnknownCaseError);
}

TEST_CASE("the simple-policy gap grows with the efficiency scale") {
  CaseReport at4 = caseLowerBound(4.0);
  CaseReport at6 = caseLowerBound(6.0);
  CHECK(at4.allPass);
  CHECK(at6.allPass);
  auto ratioOf = [](const CaseReport& r) {
    for (const CaseCheck& c : r.checks) {
      if (c.label.find("factor") != std::string::npos) return c.computedValue;
    }
    return -1.0;
  };
  double r4 = ratioOf(at4);
  double r6 = ratioOf(at6);
  REQUIRE(r4 > 0.0);
  REQUIRE(r6 > 0.0);
  CHECK(r4 >= 4.0);
  CHECK(r6 >= 6.0);
  CHECK(r6 > r4);
  CHECK_THROWS_AS(caseLowerBound(9.0), PreconditionError);
  CHECK_THROWS_AS(caseLowerBound(1.5), PreconditionError);
}

TEST_CASE("the mixed-policy example still runs at moderate scale") {
  // Away from the default scale some strict separations legitimately close,
  // so only well-formedness is asserted, not allPass.
  CaseReport r = caseNewExample(120.0);
  CHECK(r.caseName == "mixed-beats-simple");
  CHECK(r.checks.size() >= 3);
  CHECK_THROWS_AS(caseNewExample(50.0), PreconditionError);
}
