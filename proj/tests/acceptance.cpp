// Acceptance suite: one line per criterion, exit code 0 only when every
// criterion holds. Expected values come from the published study tables and
// from the independent oracles in oracles.hpp / choice_oracle.hpp.

#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "choice_oracle.hpp"
#include "morphsyn/aggregation.hpp"
#include "morphsyn/cli.hpp"
#include "morphsyn/improvement.hpp"
#include "morphsyn/synthesis.hpp"
#include "oracles.hpp"

namespace {

using morphsyn::ChoiceInstance;
using morphsyn::ChoiceItem;
using morphsyn::MorphModel;
using morphsyn::MultisetEstimate;
using morphsyn::Scale;
using morphsyn::Selection;

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  if (!ok) ++failures;
  std::cout << "criterion " << number << " " << (ok ? "PASS" : "FAIL") << ": " << name
            << (detail.empty() ? "" : " [" + detail + "]") << "\n";
}

bool scale_reproduction(std::string& detail) {
  const auto estimates = morphsyn::enumerate_scale(Scale{4, 3});
  std::set<std::vector<int>> got;
  for (const auto& e : estimates) got.insert(e.counts());
  const std::set<std::vector<int>> fig4 = {
      {3, 0, 0, 0}, {2, 1, 0, 0}, {1, 2, 0, 0}, {0, 3, 0, 0}, {1, 1, 1, 0}, {0, 2, 1, 0},
      {0, 1, 2, 0}, {0, 0, 3, 0}, {0, 1, 1, 1}, {0, 0, 2, 1}, {0, 0, 1, 2}, {0, 0, 0, 3}};
  detail = "count " + std::to_string(got.size());
  return got == fig4 && morphsyn::multiset_coefficient(4, 3) == 20;
}

bool proximity_oracle(std::string& detail) {
  const auto estimates = morphsyn::enumerate_scale(Scale{4, 3});
  int pairs = 0;
  for (const auto& a : estimates) {
    const auto distances = oracle::move_distances(a.counts());
    for (const auto& b : estimates) {
      ++pairs;
      const auto delta = morphsyn::proximity(a, b);
      if (delta.total() != distances.at(b.counts())) return false;
      const auto rel = morphsyn::dominates(b, a);
      const bool dominated_or_equal = rel == std::partial_ordering::greater ||
                                      rel == std::partial_ordering::equivalent;
      if ((delta.degradations == 0) != dominated_or_equal) return false;
    }
  }
  detail = std::to_string(pairs) + " ordered pairs";
  return pairs == 144;
}

bool median_oracle_equivalence(std::string& detail) {
  std::mt19937 rng(424243);
  int checked = 0;
  for (const Scale scale : {Scale{4, 3}, Scale{6, 5}}) {
    const oracle::MedianOracle reference(scale.levels, scale.cardinality);
    const auto pool = morphsyn::enumerate_scale(scale);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<MultisetEstimate> inputs;
      std::vector<oracle::Counts> raw;
      const int n = 2 + static_cast<int>(rng() % 7);
      for (int i = 0; i < n; ++i) {
        inputs.push_back(pool[rng() % pool.size()]);
        raw.push_back(inputs.back().counts());
      }
      const auto got = morphsyn::generalized_median(inputs);
      const auto [want_ties, want_deviation] = reference.median(raw);
      if (got.deviation != want_deviation) return false;
      std::vector<oracle::Counts> got_ties;
      for (const auto& t : got.ties) got_ties.push_back(t.counts());
      std::sort(got_ties.begin(), got_ties.end());
      if (got_ties != want_ties) return false;
      ++checked;
    }
  }
  detail = std::to_string(checked) + " random multisets over P4,3 and P6,5";
  return checked == 2000;
}

bool synthesis_golden(std::string& detail) {
  const MorphModel model = morphsyn::builtin_dataset();
  struct Golden {
    const char* composite;
    Selection selection;
    int w;
    const char* estimate;
  };
  // Published values where the tables are internally consistent, and the
  // brute-force-oracle values where they are not (w(E1), e(D2), e(F2)).
  const std::vector<Golden> golden = {
      {"D", {{"X", "X2"}, {"Y", "Y2"}, {"Z", "Z2"}}, 1, "(2,1,0,0)"},
      {"E", {{"I", "I1"}, {"Q", "Q1"}, {"G", "G4"}}, 4, "(2,1,0,0)"},
      {"F", {{"H", "H2"}, {"C", "C1"}, {"W", "W2"}}, 1, "(2,1,0,0)"},
      {"D", {{"X", "X3"}, {"Y", "Y3"}, {"Z", "Z3"}}, 2, "(0,2,1,0)"},
      {"E", {{"I", "I3"}, {"Q", "Q5"}, {"G", "G4"}}, 2, "(3,0,0,0)"},
      {"F", {{"H", "H3"}, {"C", "C1"}, {"W", "W2"}}, 3, "(2,1,0,0)"},
  };
  for (const Golden& g : golden) {
    const auto s = morphsyn::score(model, g.composite, g.selection);
    if (s.w != g.w || s.estimate().str() != g.estimate) {
      detail = std::string("mismatch on ") + g.composite;
      return false;
    }
  }
  // `check` must list the three annotation deviations.
  std::ostringstream out, err;
  if (morphsyn::cli::run({"check"}, out, err) != 0) {
    detail = "check exited non-zero";
    return false;
  }
  const std::string report = out.str();
  for (const char* needle :
       {"w(E1): computed 2", "e(D2): computed (0,2,1,0)", "e(F2): computed (2,1,0,0)"}) {
    if (report.find(needle) == std::string::npos) {
      detail = std::string("check report misses '") + needle + "'";
      return false;
    }
  }
  detail = "6 scores plus the deviations report";
  return true;
}

bool design_space(std::string& detail) {
  const auto n = morphsyn::design_space_size(morphsyn::builtin_dataset());
  detail = std::to_string(n);
  return n == 116640;
}

bool improvement_reproduction(std::string& detail) {
  const MorphModel model = morphsyn::builtin_dataset();
  const auto bundle = morphsyn::builtin_improvement();
  const auto f2 = morphsyn::score(model, bundle.composite, bundle.selection);

  const auto at1 = morphsyn::plan_improvement(model, f2, bundle.groups, 1);
  if (at1.choice.item_ids != std::vector<std::string>{"y11", "y21", "y32"}) return false;
  if (at1.improved.estimate().str() != "(2,1,0,0)") return false;

  const auto at45 = morphsyn::plan_improvement(model, f2, bundle.groups, 45);
  if (at45.choice.item_ids != std::vector<std::string>{"y12", "y22", "y34"}) return false;
  if (at45.choice.total_cost != 45) return false;
  if (at45.improved.estimate().str() != "(3,0,0,0)") return false;

  detail = "b=1 and b=45";
  return true;
}

bool aggregation_reproduction(std::string& detail) {
  const auto kernel = morphsyn::subsolution(morphsyn::builtin_solution_set());
  if (kernel.fixed !=
      std::map<std::string, std::string>{{"G", "G4"}, {"C", "C1"}, {"W", "W2"}})
    return false;
  const auto candidates = morphsyn::builtin_aggregation_candidates();

  const auto at42 = morphsyn::extend_kernel(kernel, candidates, 42);
  if (at42.choice.median.representative().str() != "(0,2,1,0)" || at42.choice.total_cost != 38)
    return false;

  const auto at87 = morphsyn::extend_kernel(kernel, candidates, 87);
  if (at87.choice.median.representative().str() != "(2,1,0,0)" || at87.choice.total_cost != 87)
    return false;

  const auto at53 = morphsyn::extend_kernel(kernel, candidates, 53);
  const Selection expected = {{"X", "X2"}, {"Y", "Y2"}, {"Z", "Z3"}, {"I", "I1"},
                              {"Q", "Q1"}, {"H", "H3"}, {"G", "G4"}, {"C", "C1"}, {"W", "W2"}};
  if (at53.combined != expected || at53.choice.total_cost != 53) return false;
  bool has_published_tie = false;
  for (const auto& t : at53.choice.median.ties)
    if (t.str() == "(1,2,0,0)") has_published_tie = true;
  if (!has_published_tie || at53.choice.median.ties.size() != 2) return false;

  detail = "kernel plus b=42, 53, 87";
  return true;
}

ChoiceInstance random_instance(std::mt19937& rng, const std::vector<MultisetEstimate>& pool) {
  ChoiceInstance instance;
  instance.scale = pool.front().scale();
  const int groups = 1 + static_cast<int>(rng() % 6);
  double cheapest_total = 0;
  for (int i = 0; i < groups; ++i) {
    std::vector<ChoiceItem> group;
    const int items = 1 + static_cast<int>(rng() % 5);
    double cheapest = 1e18;
    for (int j = 0; j < items; ++j) {
      const double cost = static_cast<double>(rng() % 30);
      cheapest = std::min(cheapest, cost);
      group.push_back({"g" + std::to_string(i) + "i" + std::to_string(j),
                       pool[rng() % pool.size()], cost});
    }
    cheapest_total += cheapest;
    instance.groups.push_back(std::move(group));
  }
  instance.budget = cheapest_total + static_cast<double>(rng() % 40);
  return instance;
}

bool property_suite(std::string& detail) {
  const MorphModel model = morphsyn::builtin_dataset();
  const auto pool = morphsyn::enumerate_scale(Scale{4, 3});
  std::mt19937 rng(777);

  // Budget monotonicity of the choice solver.
  for (int trial = 0; trial < 200; ++trial) {
    const ChoiceInstance narrow = random_instance(rng, pool);
    ChoiceInstance wide = narrow;
    wide.budget += static_cast<double>(rng() % 25);
    const auto before = morphsyn::solve(narrow);
    const auto after = morphsyn::solve(wide);
    if (morphsyn::dominates(before.front().median.representative(),
                            after.front().median.representative()) ==
        std::partial_ordering::greater) {
      detail = "budget monotonicity failed at trial " + std::to_string(trial);
      return false;
    }
  }

  // Pareto-front equivalence against flat enumeration for D, E, F.
  const oracle::MedianOracle medians(4, 3);
  for (const std::string composite : {"D", "E", "F"}) {
    const auto front = morphsyn::synthesize_component(model, composite);
    // Flat reference: every admissible combination, pairwise filtered.
    struct Entry {
      std::vector<std::string> picks;
      int w;
      oracle::Counts median;
    };
    std::vector<Entry> all;
    const auto& parts = model.component(composite).children;
    std::vector<std::size_t> at(parts.size(), 0);
    bool done = false;
    while (!done) {
      Entry entry;
      std::vector<oracle::Counts> raw;
      entry.w = model.nu;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& alt = model.component(parts[i]).alternatives[at[i]];
        entry.picks.push_back(alt.id);
        raw.push_back(alt.estimate.counts());
      }
      for (std::size_t i = 0; i < entry.picks.size(); ++i)
        for (std::size_t j = i + 1; j < entry.picks.size(); ++j)
          entry.w = std::min(entry.w,
                             model.compatibility.get(entry.picks[i], entry.picks[j]).value());
      if (entry.w >= 1) {
        auto [ties, deviation] = medians.median(raw);
        entry.median = ties.front();
        for (const auto& t : ties)
          if (choice_oracle::cumulative(t) > choice_oracle::cumulative(entry.median))
            entry.median = t;
        all.push_back(std::move(entry));
      }
      std::size_t slot = parts.size();
      done = true;
      while (slot > 0) {
        --slot;
        if (++at[slot] < model.component(parts[slot]).alternatives.size()) {
          done = false;
          break;
        }
        at[slot] = 0;
      }
    }
    std::set<std::pair<std::vector<std::string>, std::pair<int, oracle::Counts>>> reference;
    for (const Entry& s : all) {
      bool dominated = false;
      for (const Entry& t : all) {
        if (&t == &s) continue;
        const bool wge = t.w >= s.w;
        const bool ege = !choice_oracle::strictly_better(s.median, t.median) &&
                         (choice_oracle::strictly_better(t.median, s.median) ||
                          t.median == s.median);
        const bool strict = t.w > s.w || choice_oracle::strictly_better(t.median, s.median);
        if (wge && ege && strict) {
          dominated = true;
          break;
        }
      }
      if (!dominated) reference.insert({s.picks, {s.w, s.median}});
    }
    std::set<std::pair<std::vector<std::string>, std::pair<int, oracle::Counts>>> got;
    for (const auto& s : front.solutions) {
      std::vector<std::string> picks;
      for (const std::string& part : parts) picks.push_back(s.selection.at(part));
      got.insert({picks, {s.w, s.estimate().counts()}});
    }
    if (got != reference) {
      detail = "front mismatch on " + composite;
      return false;
    }
  }

  // Improvement never degrades, with a no-op in every group.
  const std::vector<Selection> starts = {
      {{"H", "H2"}, {"C", "C1"}, {"W", "W2"}},
      {{"H", "H3"}, {"C", "C1"}, {"W", "W2"}},
      {{"H", "H1"}, {"C", "C2"}, {"W", "W5"}},
      {{"H", "H1"}, {"C", "C3"}, {"W", "W1"}},
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Selection& selection = starts[trial % starts.size()];
    const auto solution = morphsyn::score(model, "F", selection);
    std::vector<morphsyn::ActionGroup> groups;
    for (const auto& [component, alternative] : selection) {
      morphsyn::ActionGroup group;
      group.target = alternative;
      group.actions.push_back({alternative + "_none", model.alternative(alternative).estimate, 0});
      const int extras = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < extras; ++k)
        group.actions.push_back({alternative + "_v" + std::to_string(k),
                                 pool[rng() % pool.size()],
                                 static_cast<double>(rng() % 25)});
      groups.push_back(std::move(group));
    }
    const auto plan = morphsyn::plan_improvement(model, solution, groups,
                                                 static_cast<double>(rng() % 50));
    if (morphsyn::dominates(plan.improved.estimate(), solution.estimate()) ==
        std::partial_ordering::less) {
      detail = "improvement degraded at trial " + std::to_string(trial);
      return false;
    }
  }

  detail = "200 monotonicity, 3 fronts, 200 improvement tables";
  return true;
}

}  // namespace

int main() {
  criterion(1, "scale reproduction (P4,3 estimates and multiset coefficient)", scale_reproduction);
  criterion(2, "proximity equals move-graph distance on all 144 ordered pairs", proximity_oracle);
  criterion(3, "generalized median equals exhaustive minimization", median_oracle_equivalence);
  criterion(4, "synthesis golden values and deviations report", synthesis_golden);
  criterion(5, "design space of the bundled dataset is 116640", design_space);
  criterion(6, "improvement table reproduction (b=1, b=45)", improvement_reproduction);
  criterion(7, "aggregation reproduction (kernel, b=42, 53, 87)", aggregation_reproduction);
  criterion(8, "property suite (monotonicity, fronts, never-degrades)", property_suite);
  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criterion(s) failed\n";
  return 1;
}
