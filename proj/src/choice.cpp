#include "morphsyn/choice.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace morphsyn {

namespace {

struct Scored {
  std::vector<std::size_t> picks;
  double cost = 0.0;
  MedianResult median;
  MultisetEstimate integral{Scale{1, 1}, {1}};
};

void validate(const ChoiceInstance& instance) {
  if (instance.groups.empty()) fail(Errc::empty_input, "instance has no groups");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < instance.groups.size(); ++i) {
    if (instance.groups[i].empty())
      fail(Errc::empty_group, "group " + std::to_string(i + 1) + " is empty");
    for (const ChoiceItem& item : instance.groups[i]) {
      if (!(item.estimate.scale() == instance.scale))
        fail(Errc::scale_mismatch, "item '" + item.id + "' is on " +
                                       item.estimate.scale().str() + ", instance is on " +
                                       instance.scale.str());
      if (item.cost < 0)
        fail(Errc::schema_error, "item '" + item.id + "' has negative cost");
      if (!ids.insert(item.id).second)
        fail(Errc::duplicate_id, "item id '" + item.id + "' appears twice");
    }
  }
}

std::partial_ordering profile_order(const MultisetEstimate& a, const MultisetEstimate& b) {
  return dominates(a, b);
}

}  // namespace

std::weak_ordering rank_selection(const ChoiceSolution& a, const ChoiceSolution& b) {
  const auto median = profile_order(a.median.representative(), b.median.representative());
  if (median == std::partial_ordering::greater) return std::weak_ordering::greater;
  if (median == std::partial_ordering::less) return std::weak_ordering::less;

  const auto integral = profile_order(a.integral, b.integral);
  if (integral == std::partial_ordering::greater) return std::weak_ordering::greater;
  if (integral == std::partial_ordering::less) return std::weak_ordering::less;

  if (a.median.deviation != b.median.deviation)
    return a.median.deviation < b.median.deviation ? std::weak_ordering::greater
                                                   : std::weak_ordering::less;
  if (a.total_cost != b.total_cost)
    return a.total_cost > b.total_cost ? std::weak_ordering::greater : std::weak_ordering::less;
  if (a.item_ids != b.item_ids)
    return a.item_ids < b.item_ids ? std::weak_ordering::greater : std::weak_ordering::less;
  return std::weak_ordering::equivalent;
}

std::vector<ChoiceSolution> solve(const ChoiceInstance& instance) {
  validate(instance);
  const std::size_t m = instance.groups.size();

  std::vector<double> remaining_min(m + 1, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double cheapest = instance.groups[i].front().cost;
    for (const ChoiceItem& item : instance.groups[i]) cheapest = std::min(cheapest, item.cost);
    remaining_min[i] = remaining_min[i + 1] + cheapest;
  }
  if (remaining_min[0] > instance.budget)
    fail(Errc::infeasible, "cheapest selection costs more than the budget");

  const auto candidates = enumerate_scale(instance.scale);
  std::vector<Scored> feasible;
  std::vector<std::size_t> picks(m, 0);
  std::vector<MultisetEstimate> estimates;

  auto descend = [&](auto&& self, std::size_t depth, double cost) -> void {
    if (depth == m) {
      Scored s;
      s.picks = picks;
      s.cost = cost;
      s.median = generalized_median(estimates, candidates);
      s.integral = integrate(estimates);
      feasible.push_back(std::move(s));
      return;
    }
    for (std::size_t j = 0; j < instance.groups[depth].size(); ++j) {
      const ChoiceItem& item = instance.groups[depth][j];
      const double next = cost + item.cost;
      if (next + remaining_min[depth + 1] > instance.budget) continue;
      picks[depth] = j;
      estimates.push_back(item.estimate);
      self(self, depth + 1, next);
      estimates.pop_back();
    }
  };
  descend(descend, 0, 0.0);

  // Poset-maximal median representatives, best first. Distinct medians are
  // bounded by the scale size, so maximality is decided among those.
  std::vector<const MultisetEstimate*> distinct;
  for (const Scored& s : feasible) {
    const MultisetEstimate& rep = s.median.representative();
    if (std::none_of(distinct.begin(), distinct.end(),
                     [&](const MultisetEstimate* e) { return *e == rep; }))
      distinct.push_back(&rep);
  }
  std::vector<const MultisetEstimate*> maximal;
  for (const MultisetEstimate* rep : distinct) {
    const bool beaten = std::any_of(distinct.begin(), distinct.end(), [&](const MultisetEstimate* other) {
      return profile_order(*other, *rep) == std::partial_ordering::greater;
    });
    if (!beaten) maximal.push_back(rep);
  }
  std::sort(maximal.begin(), maximal.end(),
            [](const MultisetEstimate* a, const MultisetEstimate* b) {
              return a->cumulative_profile() > b->cumulative_profile();
            });

  std::vector<ChoiceSolution> out;
  for (const MultisetEstimate* rep : maximal) {
    std::vector<const Scored*> cls;
    for (const Scored& s : feasible)
      if (s.median.representative() == *rep) cls.push_back(&s);

    // Keep integral-maximal members, then minimal deviation, then the plans
    // that use the most budget.
    std::erase_if(cls, [&](const Scored* s) {
      return std::any_of(cls.begin(), cls.end(), [&](const Scored* t) {
        return profile_order(t->integral, s->integral) == std::partial_ordering::greater;
      });
    });
    long long best_deviation = cls.front()->median.deviation;
    for (const Scored* s : cls) best_deviation = std::min(best_deviation, s->median.deviation);
    std::erase_if(cls, [&](const Scored* s) { return s->median.deviation != best_deviation; });
    double best_cost = cls.front()->cost;
    for (const Scored* s : cls) best_cost = std::max(best_cost, s->cost);
    std::erase_if(cls, [&](const Scored* s) { return s->cost != best_cost; });

    std::vector<ChoiceSolution> winners;
    for (const Scored* s : cls) {
      ChoiceSolution solution;
      for (std::size_t i = 0; i < m; ++i)
        solution.item_ids.push_back(instance.groups[i][s->picks[i]].id);
      solution.total_cost = s->cost;
      solution.median = s->median;
      solution.integral = s->integral;
      winners.push_back(std::move(solution));
    }
    std::sort(winners.begin(), winners.end(), [](const ChoiceSolution& a, const ChoiceSolution& b) {
      auto sa = a.item_ids, sb = b.item_ids;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      return sa < sb;
    });
    out.insert(out.end(), winners.begin(), winners.end());
  }
  return out;
}

ChoiceInstance parse_choice_instance(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("choice instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("scale") || !doc.contains("budget") ||
      !doc.contains("groups"))
    fail(Errc::schema_error, "choice instance needs scale, budget and groups");

  ChoiceInstance instance;
  const auto& scale = doc["scale"];
  if (!scale.contains("l") || !scale.contains("eta"))
    fail(Errc::schema_error, "scale needs fields l and eta");
  instance.scale = Scale{scale["l"].get<int>(), scale["eta"].get<int>()};
  if (!doc["budget"].is_number()) fail(Errc::schema_error, "budget must be a number");
  instance.budget = doc["budget"].get<double>();
  if (!doc["groups"].is_array()) fail(Errc::schema_error, "groups must be an array");
  for (const auto& group : doc["groups"]) {
    if (!group.is_array()) fail(Errc::schema_error, "each group must be an array of items");
    std::vector<ChoiceItem> items;
    for (const auto& item : group) {
      if (!item.contains("id") || !item.contains("estimate") || !item.contains("cost"))
        fail(Errc::schema_error, "each item needs id, estimate and cost");
      std::vector<int> counts;
      for (const auto& c : item["estimate"]) counts.push_back(c.get<int>());
      items.push_back({item["id"].get<std::string>(),
                       MultisetEstimate(instance.scale, std::move(counts)),
                       item["cost"].get<double>()});
    }
    instance.groups.push_back(std::move(items));
  }
  return instance;
}

}  // namespace morphsyn
