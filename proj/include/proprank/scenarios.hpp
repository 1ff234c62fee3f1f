#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proprank/core.hpp"

namespace proprank {

// The workbook of fixed instances used by the regression scenarios, the
// acceptance suite, and the `reproduce` CLI command.

// ex1: five candidates y1,y2,y3,x1,x2 (indices 0..4 in that order), all six
// orders of the y-block on top, weight 1/6 each. The ranking
// x1,x2,y1,y2,y3 has utility 1 for every input ranking yet cannot be priced:
// the best candidate-level payment is 7 out of 10.
Profile example_disjoint_blocs();
Ranking example_disjoint_blocs_output();  // x1,x2,y1,y2,y3

// ex2 / ex3: two rankings of five candidates with weights 3/5 and 2/5; the
// instance whose PSB and RMES traces are pinned digit by digit in the tests.
Profile example_two_rankings();

// ex4: 25 candidates, two blocs of four rankings (27/120 and 3/120 each) with
// cyclic x-blocks and opposed z-orders; sPJR fails for the heavy bloc.
Profile example_balanced_cycles();
Ranking example_balanced_cycles_psb();   // the pinned PSB output
Ranking example_balanced_cycles_rmes();  // the pinned RMES output

// ex5: four rankings of five candidates (7/20, 7/20, 3/20, 3/20) where the
// flow-based payment split differs from the proportional one in round one.
Profile example_flow_split();

// price-cap: two opposed rankings of six candidates at 47/60 and 13/60; the
// instance where dropping the utility cap from the RMES price minimum
// overcharges a ranking past its utility.
Profile example_price_cap();

// One registered scenario: run() executes the checks and returns pass/fail
// lines ("ok: ..." / "FAIL: ...").
struct ScenarioResult {
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what);
};

struct Scenario {
  std::string id;
  std::string description;
  ScenarioResult (*run)();
};

const std::vector<Scenario>& scenario_catalog();
const Scenario* find_scenario(const std::string& id);

}  // namespace proprank
