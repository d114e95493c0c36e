#include "morphsyn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "morphsyn/aggregation.hpp"
#include "morphsyn/improvement.hpp"
#include "morphsyn/synthesis.hpp"

namespace morphsyn::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Options {
  bool as_json = false;
  bool builtin = false;
  int levels = 0;
  int eta = 0;
  bool hasse = false;
  std::string estimates;
  std::string model_path;
  std::string component;
  std::string actions_path;
  std::string solutions_path;
  std::string candidates_path;
  double budget = -1.0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) fail(Errc::schema_error, "cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Costs in all shipped tables are integral; render them without a trailing
// ".0" in both text and JSON output.
ordered_json cost_json(double value) {
  if (value == static_cast<double>(static_cast<long long>(value)))
    return static_cast<long long>(value);
  return value;
}

std::string cost_text(double value) {
  if (value == static_cast<double>(static_cast<long long>(value)))
    return std::to_string(static_cast<long long>(value));
  std::ostringstream s;
  s << value;
  return s.str();
}

ordered_json estimates_json(const std::vector<MultisetEstimate>& estimates) {
  ordered_json out = ordered_json::array();
  for (const auto& e : estimates) out.push_back(e.str());
  return out;
}

ordered_json median_json(const MedianResult& median) {
  ordered_json out;
  out["e"] = median.representative().str();
  out["e_ties"] = estimates_json(median.ties);
  out["deviation"] = median.deviation;
  return out;
}

void emit(std::ostream& out, const std::string& command, const ordered_json& inputs,
          const ordered_json& results, const std::vector<std::string>& deviations,
          bool as_json, const std::string& text) {
  if (as_json) {
    ordered_json report;
    report["command"] = command;
    report["inputs"] = inputs;
    report["results"] = results;
    report["deviations"] = deviations;
    out << report.dump(2) << "\n";
  } else {
    out << text;
    if (!deviations.empty()) {
      out << "deviations:\n";
      for (const std::string& d : deviations) out << "  " << d << "\n";
    }
  }
}

MorphModel load_model(const Options& options) {
  if (options.builtin) return builtin_dataset();
  if (options.model_path.empty())
    throw CLI::ValidationError("either --model FILE or --builtin is required");
  return parse_model(slurp(options.model_path));
}

std::string selection_text(const MorphModel& model, const std::string& composite,
                           const Selection& selection) {
  std::string out;
  for (const std::string& part : model.component(composite).children) {
    if (!out.empty()) out += '*';
    out += selection.at(part);
  }
  return out;
}

// ---- scale ----------------------------------------------------------------

int run_scale(const Options& options, std::ostream& out) {
  const Scale scale{options.levels, options.eta};
  const auto estimates = enumerate_scale(scale);

  std::string text;
  for (const auto& e : estimates) text += e.str() + "\n";
  ordered_json results;
  results["scale"] = scale.str();
  results["count"] = estimates.size();
  results["estimates"] = estimates_json(estimates);
  if (options.hasse) {
    const auto edges = hasse_edges(estimates);
    ordered_json cover = ordered_json::array();
    for (auto [above, below] : edges) {
      text += "cover: " + estimates[above].str() + " > " + estimates[below].str() + "\n";
      cover.push_back({estimates[above].str(), estimates[below].str()});
    }
    results["covers"] = std::move(cover);
  }

  ordered_json inputs;
  inputs["scale"] = scale.str();
  inputs["hasse"] = options.hasse;
  emit(out, "scale", inputs, results, {}, options.as_json, text);
  return 0;
}

// ---- median ---------------------------------------------------------------

int run_median(const Options& options, std::ostream& out) {
  std::vector<MultisetEstimate> inputs;
  std::string rest = options.estimates;
  while (!rest.empty()) {
    const std::size_t cut = rest.find(';');
    const std::string token = rest.substr(0, cut);
    if (token.find_first_not_of(" \t") != std::string::npos)
      inputs.push_back(MultisetEstimate::parse(token));
    rest = cut == std::string::npos ? std::string() : rest.substr(cut + 1);
  }
  if (inputs.empty()) fail(Errc::empty_input, "no estimates given");

  const MedianResult generalized = generalized_median(inputs);
  const MedianResult set = set_median(inputs);

  std::string text;
  text += "generalized median: " + generalized.representative().str() + "  deviation " +
          std::to_string(generalized.deviation) + "\n";
  if (generalized.ties.size() > 1) {
    text += "  ties:";
    for (const auto& t : generalized.ties) text += " " + t.str();
    text += "\n";
  }
  text += "set median: " + set.representative().str() + "  deviation " +
          std::to_string(set.deviation) + "\n";
  if (set.ties.size() > 1) {
    text += "  ties:";
    for (const auto& t : set.ties) text += " " + t.str();
    text += "\n";
  }

  ordered_json in;
  in["estimates"] = estimates_json(inputs);
  ordered_json results;
  results["generalized"] = median_json(generalized);
  results["set"] = median_json(set);
  emit(out, "median", in, results, {}, options.as_json, text);
  return 0;
}

// ---- synth ----------------------------------------------------------------

ordered_json front_json(const ParetoFront& front) {
  ordered_json node;
  node["component"] = front.component;
  ordered_json solutions = ordered_json::array();
  for (const CompositeSolution& s : front.solutions) {
    ordered_json item;
    item["label"] = s.label;
    item["selection"] = s.selection;
    item["w"] = s.w;
    item["e"] = s.estimate().str();
    item["e_ties"] = estimates_json(s.median.ties);
    item["deviation"] = s.median.deviation;
    solutions.push_back(std::move(item));
  }
  node["solutions"] = std::move(solutions);
  return node;
}

int run_synth(const Options& options, std::ostream& out) {
  const MorphModel model = load_model(options);
  const BottomUpResult result = bottom_up(model);

  std::vector<std::string> order = result.order;
  if (!options.component.empty()) {
    if (!result.fronts.count(options.component))
      fail(Errc::unknown_reference, "no composite '" + options.component + "' in the model");
    order = {options.component};
  }

  std::string text;
  ordered_json fronts = ordered_json::array();
  for (const std::string& id : order) {
    const ParetoFront& front = result.fronts.at(id);
    text += "component " + id + ": " + std::to_string(front.solutions.size()) +
            " Pareto solution(s)\n";
    for (const CompositeSolution& s : front.solutions) {
      text += "  " + s.label + "  " + selection_text(result.enriched, id, s.selection) +
              "  N=(" + std::to_string(s.w) + "; " + s.estimate().str() + ")  deviation " +
              std::to_string(s.median.deviation) + "\n";
    }
    fronts.push_back(front_json(front));
  }

  ordered_json inputs;
  inputs["model"] = options.builtin ? "builtin" : options.model_path;
  if (!options.component.empty()) inputs["component"] = options.component;
  emit(out, "synth", inputs, fronts, {}, options.as_json, text);
  return 0;
}

// ---- improve --------------------------------------------------------------

struct ImproveInput {
  std::string composite;
  Selection selection;
  std::vector<ActionGroup> groups;
  double budget = -1.0;
};

ImproveInput parse_actions_file(const std::string& text, const MorphModel& model) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("actions file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("solution_ref") || !doc.contains("groups"))
    fail(Errc::schema_error, "actions file needs solution_ref and groups");

  ImproveInput input;
  const json& ref = doc["solution_ref"];
  if (!ref.contains("component") || !ref.contains("selection"))
    fail(Errc::schema_error, "solution_ref needs component and selection");
  input.composite = ref["component"].get<std::string>();
  for (const auto& [component, alternative] : ref["selection"].items())
    input.selection.emplace(component, alternative.get<std::string>());
  if (doc.contains("budget")) input.budget = doc["budget"].get<double>();

  for (const json& group : doc["groups"]) {
    if (!group.contains("target") || !group.contains("actions"))
      fail(Errc::schema_error, "each group needs target and actions");
    ActionGroup g;
    g.target = group["target"].get<std::string>();
    for (const json& action : group["actions"]) {
      if (!action.contains("id") || !action.contains("estimate") || !action.contains("cost"))
        fail(Errc::schema_error, "each action needs id, estimate and cost");
      std::vector<int> counts;
      for (const auto& c : action["estimate"]) counts.push_back(c.get<int>());
      g.actions.push_back({action["id"].get<std::string>(),
                           MultisetEstimate(model.scale, std::move(counts)),
                           action["cost"].get<double>()});
    }
    input.groups.push_back(std::move(g));
  }
  return input;
}

int run_improve(const Options& options, std::ostream& out) {
  const MorphModel model = load_model(options);

  ImproveInput input;
  if (options.builtin && options.actions_path.empty()) {
    const BuiltinImprovement builtin = builtin_improvement();
    input.composite = builtin.composite;
    input.selection = builtin.selection;
    input.groups = builtin.groups;
  } else {
    if (options.actions_path.empty())
      throw CLI::ValidationError("--actions FILE is required (or --builtin)");
    input = parse_actions_file(slurp(options.actions_path), model);
  }
  double budget = options.budget >= 0 ? options.budget : input.budget;
  if (budget < 0) throw CLI::ValidationError("--budget B is required");

  const CompositeSolution solution = score(model, input.composite, input.selection);
  const std::vector<Bottleneck> bottlenecks = find_bottlenecks(model, solution);
  const ImprovementPlan plan = plan_improvement(model, solution, input.groups, budget);

  std::string text;
  text += "improving " + input.composite + " (" +
          selection_text(model, input.composite, input.selection) + "), budget " +
          cost_text(budget) + "\n";
  text += "bottlenecks:\n";
  ordered_json bottleneck_json = ordered_json::array();
  for (const Bottleneck& b : bottlenecks) {
    ordered_json row;
    row["composite"] = input.composite;
    std::string subject, change;
    if (b.kind == BottleneckKind::element) {
      subject = b.subject;
      change = b.current_estimate->str() + " => " + b.proposed_estimate->str();
      row["element"] = b.subject;
      row["current"] = b.current_estimate->str();
      row["proposed"] = b.proposed_estimate->str();
    } else {
      subject = "(" + b.subject + "," + b.partner + ")";
      change = std::to_string(b.current_w) + " => " + std::to_string(b.proposed_w);
      row["pair"] = {b.subject, b.partner};
      row["current"] = b.current_w;
      row["proposed"] = b.proposed_w;
    }
    text += "  " + input.composite + "  " + subject;
    text.append(subject.size() < 10 ? 10 - subject.size() : 1, ' ');
    text += change + "\n";
    bottleneck_json.push_back(std::move(row));
  }
  text += "plan:\n";
  ordered_json actions = ordered_json::array();
  for (std::size_t i = 0; i < input.groups.size(); ++i) {
    const ActionGroup& group = input.groups[i];
    const std::string& chosen = plan.choice.item_ids[i];
    const auto action = std::find_if(group.actions.begin(), group.actions.end(),
                                     [&](const ChoiceItem& a) { return a.id == chosen; });
    text += "  " + group.target + ": " + chosen + "  " +
            model.alternative(group.target).estimate.str() + " => " + action->estimate.str() +
            "  cost " + cost_text(action->cost) + "\n";
    ordered_json a;
    a["target"] = group.target;
    a["action"] = chosen;
    a["estimate"] = action->estimate.str();
    a["cost"] = cost_json(action->cost);
    actions.push_back(std::move(a));
  }
  text += "total cost " + cost_text(plan.choice.total_cost) + "\n";
  text += "estimate " + plan.before.representative().str() + " => " +
          plan.improved.estimate().str() + "\n";

  ordered_json inputs;
  inputs["model"] = options.builtin ? "builtin" : options.model_path;
  inputs["actions"] = options.actions_path.empty() ? "builtin" : options.actions_path;
  inputs["budget"] = cost_json(budget);
  ordered_json results;
  results["composite"] = input.composite;
  results["selection"] = input.selection;
  results["w"] = solution.w;
  results["bottlenecks"] = std::move(bottleneck_json);
  results["actions"] = std::move(actions);
  results["total_cost"] = cost_json(plan.choice.total_cost);
  results["before"] = median_json(plan.before);
  results["after"] = median_json(plan.improved.median);
  emit(out, "improve", inputs, results, {}, options.as_json, text);
  return 0;
}

// ---- aggregate ------------------------------------------------------------

int run_aggregate(const Options& options, std::ostream& out) {
  SolutionSet set;
  std::vector<AggregationCandidate> candidates;

  if (options.builtin && options.solutions_path.empty() && options.candidates_path.empty()) {
    set = builtin_solution_set();
    candidates = builtin_aggregation_candidates();
  } else {
    if (options.solutions_path.empty() || options.candidates_path.empty())
      throw CLI::ValidationError("--solutions FILE and --candidates FILE are required (or --builtin)");
    json doc;
    try {
      doc = json::parse(slurp(options.solutions_path));
    } catch (const json::exception& e) {
      fail(Errc::parse_error, std::string("solutions file is not valid JSON: ") + e.what());
    }
    const json& list = doc.is_array() ? doc : doc.at("solutions");
    for (const json& entry : list) {
      Selection s;
      for (const auto& [component, alternative] : entry.items())
        s.emplace(component, alternative.get<std::string>());
      set.selections.push_back(std::move(s));
    }
    json cdoc;
    try {
      cdoc = json::parse(slurp(options.candidates_path));
    } catch (const json::exception& e) {
      fail(Errc::parse_error, std::string("candidates file is not valid JSON: ") + e.what());
    }
    const json& clist = cdoc.is_array() ? cdoc : cdoc.at("candidates");
    for (const json& entry : clist) {
      std::vector<int> counts;
      for (const auto& c : entry.at("estimate")) counts.push_back(c.get<int>());
      const int levels = static_cast<int>(counts.size());
      int sum = 0;
      for (int c : counts) sum += c;
      candidates.push_back({entry.at("component").get<std::string>(),
                            entry.at("id").get<std::string>(),
                            MultisetEstimate(Scale{levels, sum}, std::move(counts)),
                            entry.at("cost").get<double>()});
    }
  }
  if (options.budget < 0) throw CLI::ValidationError("--budget B is required");

  const auto super = supersolution(set);
  const Kernel kernel = subsolution(set);
  const AggregationResult result = extend_kernel(kernel, candidates, options.budget);

  std::string text;
  text += "kernel:";
  for (const auto& [component, alternative] : kernel.fixed)
    text += " " + component + "=" + alternative;
  text += "\n";
  text += "open:";
  for (const auto& [component, variants] : kernel.open) {
    text += " " + component + "{";
    bool first = true;
    for (const std::string& v : variants) {
      if (!first) text += ",";
      text += v;
      first = false;
    }
    text += "}";
  }
  text += "\n";
  text += "chosen:";
  for (std::size_t i = 0; i < result.open_order.size(); ++i)
    text += " " + result.open_order[i] + "=" + result.choice.item_ids[i];
  text += "\n";
  text += "cost " + cost_text(result.choice.total_cost) + "\n";
  text += "estimate " + result.choice.median.representative().str() + "\n";
  if (result.choice.median.ties.size() > 1) {
    text += "  ties:";
    for (const auto& t : result.choice.median.ties) text += " " + t.str();
    text += "\n";
  }
  text += "combined:";
  for (const auto& [component, alternative] : result.combined)
    text += " " + component + "=" + alternative;
  text += "\n";

  ordered_json inputs;
  inputs["solutions"] = options.solutions_path.empty() ? "builtin" : options.solutions_path;
  inputs["candidates"] = options.candidates_path.empty() ? "builtin" : options.candidates_path;
  inputs["budget"] = cost_json(options.budget);
  ordered_json results;
  ordered_json super_json;
  for (const auto& [component, variants] : super)
    super_json[component] = std::vector<std::string>(variants.begin(), variants.end());
  results["supersolution"] = std::move(super_json);
  results["kernel"] = kernel.fixed;
  ordered_json open_json;
  for (const auto& [component, variants] : kernel.open)
    open_json[component] = std::vector<std::string>(variants.begin(), variants.end());
  results["open"] = std::move(open_json);
  ordered_json chosen;
  for (std::size_t i = 0; i < result.open_order.size(); ++i)
    chosen[result.open_order[i]] = result.choice.item_ids[i];
  results["chosen"] = std::move(chosen);
  results["total_cost"] = cost_json(result.choice.total_cost);
  results["median"] = median_json(result.choice.median);
  results["combined"] = result.combined;
  emit(out, "aggregate", inputs, results, {}, options.as_json, text);
  return 0;
}

// ---- check ----------------------------------------------------------------

struct GoldenScore {
  const char* label;
  const char* composite;
  Selection selection;
  int w;
  const char* estimate;
};

int run_check(const Options& options, std::ostream& out) {
  const MorphModel model = builtin_dataset();
  std::string text = "checking the bundled on-board telemetry dataset\n";
  ordered_json checks = ordered_json::array();
  std::vector<std::string> deviations;
  bool all_pass = true;

  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    all_pass = all_pass && pass;
    text += std::string("  ") + (pass ? "PASS " : "FAIL ") + name +
            (detail.empty() ? "" : " [" + detail + "]") + "\n";
    ordered_json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(std::move(c));
  };

  const auto scale_estimates = enumerate_scale(model.scale);
  record("scale P4,3 enumerates 12 interval estimates",
         scale_estimates.size() == 12 && scale_estimates.front().str() == "(3,0,0,0)",
         "count " + std::to_string(scale_estimates.size()));
  record("multiset coefficient of P4,3 is 20", multiset_coefficient(4, 3) == 20, "");
  record("design space holds 116640 combinations", design_space_size(model) == 116640,
         std::to_string(design_space_size(model)));

  // Computed quality of the well-known composite solutions, with the
  // dataset's published annotations compared on the side.
  const std::vector<GoldenScore> golden = {
      {"D1", "D", {{"X", "X2"}, {"Y", "Y2"}, {"Z", "Z2"}}, 1, "(2,1,0,0)"},
      {"D2", "D", {{"X", "X3"}, {"Y", "Y3"}, {"Z", "Z3"}}, 2, "(0,2,1,0)"},
      {"E1", "E", {{"I", "I3"}, {"Q", "Q5"}, {"G", "G4"}}, 2, "(3,0,0,0)"},
      {"E2", "E", {{"I", "I1"}, {"Q", "Q1"}, {"G", "G4"}}, 4, "(2,1,0,0)"},
      {"F1", "F", {{"H", "H2"}, {"C", "C1"}, {"W", "W2"}}, 1, "(2,1,0,0)"},
      {"F2", "F", {{"H", "H3"}, {"C", "C1"}, {"W", "W2"}}, 3, "(2,1,0,0)"},
  };
  const auto annotations = builtin_reference_annotations();
  for (const GoldenScore& g : golden) {
    const CompositeSolution computed = score(model, g.composite, g.selection);
    const std::string shown = "(" + std::to_string(computed.w) + "; " +
                              computed.estimate().str() + ")";
    record("score " + selection_text(model, g.composite, g.selection) + " = (" +
               std::to_string(g.w) + "; " + g.estimate + ")",
           computed.w == g.w && computed.estimate().str() == g.estimate, "computed " + shown);
    const auto annotation =
        std::find_if(annotations.begin(), annotations.end(),
                     [&](const ReferenceAnnotation& a) { return a.label == g.label; });
    if (annotation == annotations.end()) continue;
    if (annotation->w != computed.w)
      deviations.push_back("w(" + std::string(g.label) + "): computed " +
                           std::to_string(computed.w) + ", dataset annotation says " +
                           std::to_string(annotation->w) + " (selection " +
                           selection_text(model, g.composite, g.selection) + ")");
    if (!(annotation->estimate == computed.estimate()))
      deviations.push_back("e(" + std::string(g.label) + "): computed " +
                           computed.estimate().str() + ", dataset annotation says " +
                           annotation->estimate.str() + " (selection " +
                           selection_text(model, g.composite, g.selection) + ")");
  }
  deviations.push_back(
      "note: with computed estimates N(F2)=(3; (2,1,0,0)) dominates N(F1)=(1; (2,1,0,0)), "
      "so H2*C1*W2 does not appear on the computed F front");

  // Improvement of F2 under the published action table.
  const BuiltinImprovement improvement = builtin_improvement();
  const CompositeSolution f2 = score(model, improvement.composite, improvement.selection);
  const ImprovementPlan at1 = plan_improvement(model, f2, improvement.groups, 1);
  record("improvement b=1 applies y11,y21,y32 and reaches (2,1,0,0)",
         at1.choice.item_ids == std::vector<std::string>{"y11", "y21", "y32"} &&
             at1.improved.estimate().str() == "(2,1,0,0)",
         "estimate " + at1.improved.estimate().str());
  const ImprovementPlan at45 = plan_improvement(model, f2, improvement.groups, 45);
  record("improvement b=45 applies y12,y22,y34 at cost 45 and reaches (3,0,0,0)",
         at45.choice.item_ids == std::vector<std::string>{"y12", "y22", "y34"} &&
             at45.choice.total_cost == 45 && at45.improved.estimate().str() == "(3,0,0,0)",
         "estimate " + at45.improved.estimate().str());

  // Aggregation of the eight published systems.
  const Kernel kernel = subsolution(builtin_solution_set());
  record("kernel fixes exactly G4, C1, W2",
         kernel.fixed == std::map<std::string, std::string>{
                             {"G", "G4"}, {"C", "C1"}, {"W", "W2"}},
         "");
  const auto candidates = builtin_aggregation_candidates();
  const AggregationResult at42 = extend_kernel(kernel, candidates, 42);
  record("aggregation b=42 reaches (0,2,1,0) at cost 38",
         at42.choice.median.representative().str() == "(0,2,1,0)" &&
             at42.choice.total_cost == 38,
         "");
  const AggregationResult at53 = extend_kernel(kernel, candidates, 53);
  const bool ties_ok =
      at53.choice.median.ties.size() == 2 && at53.choice.median.ties[0].str() == "(2,1,0,0)" &&
      at53.choice.median.ties[1].str() == "(1,2,0,0)";
  record("aggregation b=53 costs 53 with median ties (2,1,0,0) and (1,2,0,0)",
         at53.choice.total_cost == 53 && ties_ok, "");
  const AggregationResult at87 = extend_kernel(kernel, candidates, 87);
  record("aggregation b=87 reaches (2,1,0,0) at cost 87",
         at87.choice.median.representative().str() == "(2,1,0,0)" &&
             at87.choice.total_cost == 87,
         "");

  ordered_json inputs;
  inputs["dataset"] = "builtin";
  ordered_json results;
  results["checks"] = std::move(checks);
  results["all_pass"] = all_pass;
  emit(out, "check", inputs, results, deviations, options.as_json, text);
  return all_pass ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"combinatorial synthesis of modular systems with interval multiset estimates"};
  app.require_subcommand(1);
  Options options;
  app.add_flag("--json", options.as_json, "emit one JSON report on stdout");
  app.add_flag("--builtin", options.builtin, "use the bundled on-board telemetry dataset");

  CLI::App* scale = app.add_subcommand("scale", "enumerate the interval estimates of a scale");
  scale->add_option("--l", options.levels, "number of ordinal grades")->required();
  scale->add_option("--eta", options.eta, "estimate cardinality")->required();
  scale->add_flag("--hasse", options.hasse, "also print the covering relations");

  CLI::App* median = app.add_subcommand("median", "generalized and set medians of estimates");
  median->add_option("--estimates", options.estimates,
                     "semicolon-separated estimates, e.g. \"(2,1,0,0);(0,2,1,0)\"")
      ->required();

  CLI::App* synth = app.add_subcommand("synth", "bottom-up Pareto synthesis of a model");
  synth->add_option("--model", options.model_path, "model file");
  synth->add_option("--component", options.component, "print only this composite's front");

  CLI::App* improve = app.add_subcommand("improve", "budgeted improvement of a solution");
  improve->add_option("--model", options.model_path, "model file");
  improve->add_option("--actions", options.actions_path, "actions file");
  improve->add_option("--budget", options.budget, "improvement budget");

  CLI::App* aggregate = app.add_subcommand("aggregate", "aggregate solutions via kernel extension");
  aggregate->add_option("--solutions", options.solutions_path, "solutions file");
  aggregate->add_option("--candidates", options.candidates_path, "candidates file");
  aggregate->add_option("--budget", options.budget, "extension budget");

  CLI::App* check = app.add_subcommand("check", "golden checks over the bundled dataset");
  (void)check;

  // Let --json / --builtin appear after the subcommand as well.
  for (CLI::App* sub : {scale, median, synth, improve, aggregate, check}) {
    sub->add_flag("--json", options.as_json, "emit one JSON report on stdout");
    sub->add_flag("--builtin", options.builtin, "use the bundled dataset");
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (scale->parsed()) return run_scale(options, out);
    if (median->parsed()) return run_median(options, out);
    if (synth->parsed()) return run_synth(options, out);
    if (improve->parsed()) return run_improve(options, out);
    if (aggregate->parsed()) return run_aggregate(options, out);
    return run_check(options, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace morphsyn::cli
