#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "morphsyn/improvement.hpp"

using morphsyn::ActionGroup;
using morphsyn::Bottleneck;
using morphsyn::BottleneckKind;
using morphsyn::CompositeSolution;
using morphsyn::Errc;
using morphsyn::Error;
using morphsyn::MorphModel;
using morphsyn::MultisetEstimate;
using morphsyn::Scale;
using morphsyn::Selection;

namespace {

MultisetEstimate e43(std::vector<int> counts) {
  return MultisetEstimate(Scale{4, 3}, std::move(counts));
}

CompositeSolution published_f(const MorphModel& m, const char* h) {
  return morphsyn::score(m, "F", Selection{{"H", h}, {"C", "C1"}, {"W", "W2"}});
}

const Bottleneck* find_element(const std::vector<Bottleneck>& bs, const std::string& id) {
  for (const auto& b : bs)
    if (b.kind == BottleneckKind::element && b.subject == id) return &b;
  return nullptr;
}

const Bottleneck* find_pair(const std::vector<Bottleneck>& bs, std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  for (const auto& x : bs)
    if (x.kind == BottleneckKind::compatibility && x.subject == a && x.partner == b) return &x;
  return nullptr;
}

}  // namespace

TEST_CASE("bottlenecks of the published F solutions") {
  const MorphModel m = morphsyn::builtin_dataset();

  // F1 = H2*C1*W2: three below-ideal elements, three below-nu pairs.
  const auto f1 = morphsyn::find_bottlenecks(m, published_f(m, "H2"));
  CHECK(f1.size() == 6);
  for (const char* id : {"H2", "C1", "W2"}) {
    const Bottleneck* b = find_element(f1, id);
    REQUIRE(b != nullptr);
    CHECK(*b->current_estimate == e43({2, 1, 0, 0}));
    CHECK(*b->proposed_estimate == e43({3, 0, 0, 0}));
    CHECK(b->severity == 1);
  }
  REQUIRE(find_pair(f1, "H2", "C1") != nullptr);
  CHECK(find_pair(f1, "H2", "C1")->current_w == 1);
  REQUIRE(find_pair(f1, "H2", "W2") != nullptr);
  CHECK(find_pair(f1, "H2", "W2")->current_w == 3);
  REQUIRE(find_pair(f1, "C1", "W2") != nullptr);
  CHECK(find_pair(f1, "C1", "W2")->current_w == 3);
  for (const auto& b : f1)
    if (b.kind == BottleneckKind::compatibility) CHECK(b.proposed_w == 4);
  // Worst pair first.
  const auto first_pair = std::find_if(f1.begin(), f1.end(), [](const Bottleneck& b) {
    return b.kind == BottleneckKind::compatibility;
  });
  CHECK(first_pair->current_w == 1);

  // F2 = H3*C1*W2: H3 is the worst element, (H3,C1) = nu is no bottleneck.
  const auto f2 = morphsyn::find_bottlenecks(m, published_f(m, "H3"));
  CHECK(f2.size() == 5);
  CHECK(f2.front().kind == BottleneckKind::element);
  CHECK(f2.front().subject == "H3");
  CHECK(*f2.front().current_estimate == e43({0, 2, 1, 0}));
  CHECK(f2.front().severity == 4);
  REQUIRE(find_element(f2, "C1") != nullptr);
  REQUIRE(find_element(f2, "W2") != nullptr);
  CHECK(find_pair(f2, "H3", "C1") == nullptr);
  REQUIRE(find_pair(f2, "H3", "W2") != nullptr);
  CHECK(find_pair(f2, "H3", "W2")->current_w == 3);
  REQUIRE(find_pair(f2, "C1", "W2") != nullptr);
  CHECK(find_pair(f2, "C1", "W2")->current_w == 3);
}

TEST_CASE("no bottlenecks on an ideal solution") {
  const std::string text = R"({
    "scale": {"l": 2, "eta": 1}, "nu": 2,
    "components": {"id": "R", "children": [
      {"id": "U", "alternatives": [{"id": "u1", "estimate": [1,0]}]},
      {"id": "V", "alternatives": [{"id": "v1", "estimate": [1,0]}]}]},
    "compatibility": [{"a": "u1", "b": "v1", "w": 2}]
  })";
  const MorphModel m = morphsyn::parse_model(text);
  const auto s = morphsyn::score(m, "R", Selection{{"U", "u1"}, {"V", "v1"}});
  CHECK(morphsyn::find_bottlenecks(m, s).empty());
}

TEST_CASE("published improvement plans") {
  const MorphModel m = morphsyn::builtin_dataset();
  const auto plan_data = morphsyn::builtin_improvement();
  const auto f2 = morphsyn::score(m, plan_data.composite, plan_data.selection);
  CHECK(f2.estimate() == e43({2, 1, 0, 0}));

  const auto at1 = morphsyn::plan_improvement(m, f2, plan_data.groups, 1);
  CHECK(at1.applied == std::map<std::string, std::string>{
                           {"W2", "y11"}, {"C1", "y21"}, {"H3", "y32"}});
  CHECK(at1.improved.estimate() == e43({2, 1, 0, 0}));
  CHECK(at1.improved.median.deviation == 2);
  CHECK(at1.choice.total_cost == 1);

  const auto at45 = morphsyn::plan_improvement(m, f2, plan_data.groups, 45);
  CHECK(at45.applied == std::map<std::string, std::string>{
                            {"W2", "y12"}, {"C1", "y22"}, {"H3", "y34"}});
  CHECK(at45.choice.total_cost == 45);
  CHECK(at45.improved.estimate() == e43({3, 0, 0, 0}));
  CHECK(at45.improved.w == f2.w);

  const auto at0 = morphsyn::plan_improvement(m, f2, plan_data.groups, 0);
  CHECK(at0.applied == std::map<std::string, std::string>{
                           {"W2", "y11"}, {"C1", "y21"}, {"H3", "y31"}});
  CHECK(at0.improved.estimate() == f2.estimate());
  CHECK(at0.improved.median.deviation == f2.median.deviation);
}

TEST_CASE("plan validation") {
  const MorphModel m = morphsyn::builtin_dataset();
  const auto plan_data = morphsyn::builtin_improvement();
  const auto f2 = morphsyn::score(m, plan_data.composite, plan_data.selection);

  auto groups = plan_data.groups;
  groups[0].target = "H2";  // not selected in F2
  try {
    morphsyn::plan_improvement(m, f2, groups, 10);
    FAIL("expected UnknownTarget");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_target);
  }

  groups = plan_data.groups;
  groups[0].actions.erase(groups[0].actions.begin());  // drop the zero-cost action
  try {
    morphsyn::plan_improvement(m, f2, groups, 10);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_error);
  }

  groups = plan_data.groups;
  groups[1].target = "W2";  // duplicate target
  try {
    morphsyn::plan_improvement(m, f2, groups, 10);
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_id);
  }

  // Infeasible propagates when even the all-none plan does not fit.
  try {
    morphsyn::plan_improvement(m, f2, plan_data.groups, -1);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible);
  }
  CHECK_NOTHROW(morphsyn::plan_improvement(m, f2, plan_data.groups, 0));
}

TEST_CASE("applying the plan and rescoring reproduces the reported estimate") {
  const MorphModel base = morphsyn::builtin_dataset();
  const auto plan_data = morphsyn::builtin_improvement();
  const auto f2 = morphsyn::score(base, plan_data.composite, plan_data.selection);

  for (double budget : {0.0, 1.0, 8.0, 16.0, 30.0, 45.0, 100.0}) {
    const auto plan = morphsyn::plan_improvement(base, f2, plan_data.groups, budget);

    MorphModel patched = base;
    for (auto& component : patched.components)
      for (auto& alt : component.alternatives) {
        const auto hit = plan.new_estimates.find(alt.id);
        if (hit != plan.new_estimates.end()) alt.estimate = hit->second;
      }
    patched.reindex();
    const auto rescored = morphsyn::score(patched, "F", f2.selection);
    CHECK(rescored.estimate() == plan.improved.estimate());
    CHECK(rescored.median.deviation == plan.improved.median.deviation);
  }
}

TEST_CASE("improvement never degrades") {
  const MorphModel m = morphsyn::builtin_dataset();
  const auto scale_estimates = morphsyn::enumerate_scale(Scale{4, 3});
  std::mt19937 rng(2024);

  const std::vector<Selection> starts = {
      {{"H", "H2"}, {"C", "C1"}, {"W", "W2"}},
      {{"H", "H3"}, {"C", "C1"}, {"W", "W2"}},
      {{"H", "H1"}, {"C", "C3"}, {"W", "W4"}},
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Selection& selection = starts[trial % starts.size()];
    const auto solution = morphsyn::score(m, "F", selection);

    std::vector<ActionGroup> groups;
    for (const auto& [component, alternative] : selection) {
      ActionGroup group;
      group.target = alternative;
      group.actions.push_back(
          {alternative + "_keep", m.alternative(alternative).estimate, 0});
      const int extras = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < extras; ++k)
        group.actions.push_back({alternative + "_v" + std::to_string(k),
                                 scale_estimates[rng() % scale_estimates.size()],
                                 static_cast<double>(rng() % 20)});
      groups.push_back(std::move(group));
    }
    const double budget = static_cast<double>(rng() % 40);
    const auto plan = morphsyn::plan_improvement(m, solution, groups, budget);
    CHECK(morphsyn::dominates(plan.improved.estimate(), solution.estimate()) !=
          std::partial_ordering::less);
    CHECK(plan.choice.total_cost <= budget);
  }
}
