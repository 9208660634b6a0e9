//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include <doctest.h>

#include "exmut/model.hpp"

using namespace exmut;

TEST_CASE("score renders half-up with two decimals") {
  CHECK(Score{246, 256}.render() == "96.09");
  CHECK(Score{3775, 4686}.render() == "80.56");
  CHECK(Score{2548, 3185}.render() == "80.00");
  CHECK(Score{1, 3}.render() == "33.33");
  CHECK(Score{2, 3}.render() == "66.67");
  CHECK(Score{1, 1}.render() == "100.00");
  CHECK(Score{0, 7}.render() == "0.00");
  // exact midpoint rounds up: 100*1/800 = 0.125 -> 0.13
  CHECK(Score{1, 800}.render() == "0.13");
}

TEST_CASE("undefined score") {
  Score s{0, 0};
  CHECK_FALSE(s.defined());
  CHECK(s.render() == "NA");
  CHECK_THROWS_AS(s.value(), InvalidCounts);
}

TEST_CASE("detected statuses group timeouts, crashes and build errors with kills") {
  CHECK(is_detected(MutantStatus::Killed));
  CHECK(is_detected(MutantStatus::TimedOut));
  CHECK(is_detected(MutantStatus::Crashed));
  CHECK(is_detected(MutantStatus::BuildError));
  CHECK_FALSE(is_detected(MutantStatus::Survived));
  CHECK_FALSE(is_detected(MutantStatus::NotCovered));
}

TEST_CASE("report count invariants") {
  EngineReport r;
  r.mutants_created = 4;
  r.mutants_covered = 4;
  r.mutants_killed = 2;
  CHECK_NOTHROW(r.check_count_invariants());

  r.mutants_killed = 5;
  CHECK_THROWS_AS(r.check_count_invariants(), InvalidCounts);

  r.mutants_killed = 2;
  r.mutants_covered = 6;
  CHECK_THROWS_AS(r.check_count_invariants(), InvalidCounts);
}

TEST_CASE("enum spellings used in reports") {
  CHECK(std::string(to_string(FunctionClassification::PseudoTested)) ==
        "PSEUDO_TESTED");
  CHECK(std::string(to_string(MutantStatus::BuildError)) == "BUILD_ERROR");
  CHECK(std::string(to_string(EngineKind::TraditionalLite)) == "traditional-lite");
}
