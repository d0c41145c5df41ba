// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "greedi/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "greedi/verify.hpp"

namespace greedi {

namespace {

template <typename T>
T parse_or_throw(std::string_view token, std::string_view what) {
  T out{};
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw PreconditionError("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string_view::npos ? at : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

bool parse_flag(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw PreconditionError("bad boolean '" + text + "'");
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      seeds.push_back(parse_or_throw<std::uint64_t>(item, "seed"));
      continue;
    }
    const auto lo = parse_or_throw<std::uint64_t>(trim(item.substr(0, dots)), "seed");
    const auto hi = parse_or_throw<std::uint64_t>(trim(item.substr(dots + 2)), "seed");
    if (hi < lo) throw PreconditionError("empty seed range '" + std::string(item) + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

std::vector<SweepPoint> parse_points(std::string_view text) {
  std::vector<SweepPoint> points;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() < 2 || parts.size() > 3) {
      throw PreconditionError("bad sweep point '" + std::string(item) +
                              "' (expected m:k[:kappa_factor])");
    }
    SweepPoint p;
    p.m = parse_or_throw<std::size_t>(trim(parts[0]), "machine count");
    p.k = parse_or_throw<std::size_t>(trim(parts[1]), "k");
    if (parts.size() == 3) p.kappa_factor = parse_or_throw<double>(trim(parts[2]), "kappa factor");
    points.push_back(p);
  }
  return points;
}

std::shared_ptr<const VectorDataset> vectors_for(const DatasetSpec& spec) {
  VectorDataset data;
  if (!spec.path.empty()) {
    const VectorFormat format = spec.format.empty() ? vector_format_for(spec.path)
                                                    : parse_vector_format(spec.format);
    data = load_vectors(spec.path, format);
  } else {
    Dataset d = gen_synthetic(spec.generator, spec.params, spec.seed);
    if (!std::holds_alternative<VectorDataset>(d)) {
      throw PreconditionError("generator '" + spec.generator + "' does not produce vectors");
    }
    data = std::move(std::get<VectorDataset>(d));
  }
  if (spec.normalize) data.normalize();
  data.validate();
  return std::make_shared<const VectorDataset>(std::move(data));
}

std::shared_ptr<const GraphDataset> graph_for(const DatasetSpec& spec) {
  GraphDataset g;
  if (!spec.path.empty()) {
    g = load_graph(spec.path, spec.undirected).graph;
  } else {
    Dataset d = gen_synthetic(spec.generator, spec.params, spec.seed);
    if (!std::holds_alternative<GraphDataset>(d)) {
      throw PreconditionError("generator '" + spec.generator + "' does not produce a graph");
    }
    g = std::move(std::get<GraphDataset>(d));
  }
  return std::make_shared<const GraphDataset>(std::move(g));
}

std::shared_ptr<const SetSystemDataset> sets_for(const DatasetSpec& spec) {
  SetSystemDataset s;
  if (!spec.path.empty()) {
    s = load_sets(spec.path).sets;
  } else {
    Dataset d = gen_synthetic(spec.generator, spec.params, spec.seed);
    if (!std::holds_alternative<SetSystemDataset>(d)) {
      throw PreconditionError("generator '" + spec.generator + "' does not produce sets");
    }
    s = std::move(std::get<SetSystemDataset>(d));
  }
  return std::make_shared<const SetSystemDataset>(std::move(s));
}

}  // namespace

ObjectiveInstance make_objective(const ObjectiveSpec& spec, const DatasetSpec& data) {
  if (data.path.empty() && data.generator.empty()) {
    throw PreconditionError("dataset needs a path or a generator");
  }
  ObjectiveInstance out;
  if (spec.kind == "exemplar") {
    const ExemplarObjective::Options options{.alpha_exp = spec.alpha_exp,
                                             .phantom_cost = {}};
    out.exemplar = std::make_shared<const ExemplarObjective>(vectors_for(data), options);
    out.objective = out.exemplar;
  } else if (spec.kind == "infogain") {
    out.objective = std::make_shared<const InfoGainObjective>(
        vectors_for(data), SEKernel(spec.bandwidth, spec.noise));
  } else if (spec.kind == "dpp") {
    out.objective =
        DppLogDetObjective::from_vectors(*vectors_for(data), spec.bandwidth, spec.ridge);
  } else if (spec.kind == "cut") {
    out.objective = std::make_shared<const GraphCutObjective>(graph_for(data));
  } else if (spec.kind == "coverage") {
    out.objective = std::make_shared<const CoverageObjective>(sets_for(data));
  } else {
    throw PreconditionError("unknown objective '" + spec.kind +
                            "' (expected exemplar|infogain|dpp|cut|coverage)");
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (sweep.empty()) throw PreconditionError("config has no sweep points");
  if (seeds.empty()) throw PreconditionError("config has no seeds");
  for (const SweepPoint& p : sweep) {
    if (p.m < 1 || p.k < 1) throw PreconditionError("sweep point needs m, k >= 1");
    if (!(p.kappa_factor > 0.0)) throw PreconditionError("kappa_factor must be positive");
  }
  if (decomposable && objective.kind != "exemplar") {
    throw PreconditionError("decomposable mode needs the exemplar objective");
  }
  if (mode == RunMode::kExact && decomposable) {
    throw PreconditionError("exact mode and decomposable mode are exclusive");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw PreconditionError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  static const std::map<std::string, std::vector<std::string>> kKeys = {
      {"objective", {"kind", "alpha_exp", "bandwidth", "noise", "ridge"}},
      {"dataset",
       {"path", "format", "generator", "params", "seed", "normalize", "undirected"}},
      {"sweep", {"points", "seeds"}},
      {"run",
       {"engine", "baselines", "mode", "decomposable", "local_evaluation", "workers",
        "centralized_trials", "eval_subset_size", "timing", "output"}},
  };
  for (const auto& [section, body] : tree) {
    const auto known = kKeys.find(section);
    if (known == kKeys.end()) throw PreconditionError("unknown config section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (std::find(known->second.begin(), known->second.end(), key) == known->second.end()) {
        throw PreconditionError("unknown key '" + key + "' in [" + section + "]");
      }
    }
  }

  auto get = [&](const std::string& path) { return tree.get_optional<std::string>(path); };
  ExperimentConfig c;
  if (auto v = get("objective.kind")) c.objective.kind = *v;
  if (auto v = get("objective.alpha_exp")) c.objective.alpha_exp = parse_or_throw<double>(*v, "alpha_exp");
  if (auto v = get("objective.bandwidth")) c.objective.bandwidth = parse_or_throw<double>(*v, "bandwidth");
  if (auto v = get("objective.noise")) c.objective.noise = parse_or_throw<double>(*v, "noise");
  if (auto v = get("objective.ridge")) c.objective.ridge = parse_or_throw<double>(*v, "ridge");

  if (auto v = get("dataset.path")) c.dataset.path = *v;
  if (auto v = get("dataset.format")) c.dataset.format = *v;
  if (auto v = get("dataset.generator")) c.dataset.generator = *v;
  if (auto v = get("dataset.params")) c.dataset.params = parse_params(*v);
  if (auto v = get("dataset.seed")) c.dataset.seed = parse_or_throw<std::uint64_t>(*v, "seed");
  if (auto v = get("dataset.normalize")) c.dataset.normalize = parse_flag(*v);
  if (auto v = get("dataset.undirected")) c.dataset.undirected = parse_flag(*v);

  if (auto v = get("sweep.points")) c.sweep = parse_points(*v);
  if (auto v = get("sweep.seeds")) c.seeds = parse_seeds(*v);

  if (auto v = get("run.engine")) c.engine = parse_engine_kind(*v);
  if (auto v = get("run.baselines")) {
    for (std::string_view name : split(*v, ',')) {
      name = trim(name);
      if (!name.empty()) c.baselines.push_back(parse_baseline_kind(name));
    }
  }
  if (auto v = get("run.mode")) {
    if (*v == "greedi") {
      c.mode = RunMode::kGreedi;
    } else if (*v == "exact") {
      c.mode = RunMode::kExact;
    } else {
      throw PreconditionError("unknown run mode '" + *v + "' (expected greedi|exact)");
    }
  }
  if (auto v = get("run.decomposable")) c.decomposable = parse_flag(*v);
  if (auto v = get("run.local_evaluation")) c.local_evaluation = parse_flag(*v);
  if (auto v = get("run.workers")) c.workers = parse_or_throw<std::size_t>(*v, "workers");
  if (auto v = get("run.centralized_trials")) {
    c.centralized_trials = parse_or_throw<std::size_t>(*v, "centralized_trials");
  }
  if (auto v = get("run.eval_subset_size")) {
    c.eval_subset_size = parse_or_throw<std::size_t>(*v, "eval_subset_size");
  }
  if (auto v = get("run.timing")) c.timing = parse_flag(*v);
  if (auto v = get("run.output")) c.output = *v;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError(path.string() + ": cannot open config");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

bool ResultRow::failed() const { return std::isnan(value); }

bool operator==(const ResultRow& a, const ResultRow& b) {
  auto same = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  const bool same_ms = a.ms.has_value() == b.ms.has_value() && (!a.ms || same(*a.ms, *b.ms));
  return a.method == b.method && a.m == b.m && a.k == b.k && a.kappa == b.kappa &&
         a.seed == b.seed && same(a.value, b.value) && same(a.ratio, b.ratio) &&
         a.oracle_calls == b.oracle_calls && same_ms;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  double value = 0.0;
  std::uint64_t calls = 0;
};

class Runner {
 public:
  explicit Runner(const ExperimentConfig& config) : config_(config) {
    if (config.objective.kind != "worstcase") {
      instance_ = make_objective(config.objective, config.dataset);
    }
  }

  ExperimentResult run() {
    ExperimentResult result;
    for (const SweepPoint& point : config_.sweep) {
      for (std::uint64_t seed : config_.seeds) run_cell(point, seed, result.rows);
    }
    append_summaries(result.rows);
    return result;
  }

 private:
  void run_cell(const SweepPoint& point, std::uint64_t seed, std::vector<ResultRow>& rows) {
    const std::size_t kappa = kappa_from_factor(point.k, point.kappa_factor);
    ResultRow base;
    base.m = point.m;
    base.k = point.k;
    base.kappa = kappa;
    base.seed = std::to_string(seed);

    std::optional<WorstCaseInstance> worst;
    const Objective* f = instance_.objective.get();
    if (!f) {
      worst = worst_case_instance(point.m, point.k);
      f = worst->objective.get();
    }

    double central = std::numeric_limits<double>::quiet_NaN();
    record(rows, base, "greedy", central, [&] {
      const Outcome o = centralized(*f, point.k, seed, worst.has_value());
      central = o.value;
      return o;
    });

    const Partition partition = worst ? worst->partition
                                      : partition_uniform(f->size(), point.m, seed);
    GreediConfig gc;
    gc.machines = point.m;
    gc.k = point.k;
    gc.kappa = kappa;
    gc.engine = config_.engine;
    gc.local_evaluation = config_.local_evaluation;
    gc.seed = seed;
    gc.workers = config_.workers;
    gc.eval_subset_size = config_.eval_subset_size;

    std::optional<GreediResult> greedi_run;
    if (config_.mode == RunMode::kExact) {
      record(rows, base, "exact_two_round", central, [&] {
        const GreediResult r = exact_two_round(*f, partition, point.k);
        return Outcome{r.solution.value, r.solution.oracle_calls};
      });
    } else if (config_.decomposable) {
      record(rows, base, "greedi_decomposable", central, [&] {
        const ExemplarDecomposition decomposition(instance_.exemplar);
        const GreediResult r = greedi_decomposable(decomposition, partition, gc);
        // Components are scaled by 1/phantom; report in the units of f.
        return Outcome{r.solution.value * instance_.exemplar->phantom_cost(),
                       r.solution.oracle_calls};
      });
    } else {
      record(rows, base, "greedi", central, [&] {
        greedi_run = greedi(*f, partition, gc);
        return Outcome{greedi_run->solution.value, greedi_run->solution.oracle_calls};
      });
    }
    for (BaselineKind kind : config_.baselines) {
      record(rows, base, std::string(to_string(kind)), central, [&] {
        // With kappa = k the GreeDi machine stage is the greedy_max run.
        if (kind == BaselineKind::kGreedyMax && greedi_run && kappa == point.k) {
          return greedy_max_outcome(greedi_run->trace);
        }
        const Solution s = baseline(kind, *f, partition, gc);
        return Outcome{s.value, s.oracle_calls};
      });
    }
  }

  static Outcome greedy_max_outcome(const GreediTrace& trace) {
    Outcome o;
    for (const MachineRecord& r : trace.machines) o.calls += r.solution.oracle_calls;
    o.value = trace.machines[trace.best_machine].solution.value;
    return o;
  }

  // Centralized greedy with budget k. Deterministic engines are solved once
  // per k; RandomGreedy averages `centralized_trials` seeded runs.
  Outcome centralized(const Objective& f, std::size_t k, std::uint64_t seed, bool fresh) {
    const std::vector<ElementId> ground = iota_ids(f.size());
    if (config_.engine == EngineKind::kRandomGreedy) {
      const std::size_t trials = std::max<std::size_t>(1, config_.centralized_trials);
      Outcome o;
      for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, (std::uint64_t{3} << 32) + t));
        const Solution s = random_greedy(f, ground, k, rng);
        o.value += s.value;
        o.calls += s.oracle_calls;
      }
      o.value /= static_cast<double>(trials);
      return o;
    }
    if (!fresh) {
      if (const auto it = central_cache_.find(k); it != central_cache_.end()) return it->second;
    }
    const Solution s = config_.engine == EngineKind::kGreedy ? greedy(f, ground, k)
                                                             : lazy_greedy(f, ground, k);
    const Outcome o{s.value, s.oracle_calls};
    if (!fresh) central_cache_[k] = o;
    return o;
  }

  template <typename Fn>
  void record(std::vector<ResultRow>& rows, const ResultRow& base, std::string method,
              double central, Fn&& fn) {
    ResultRow row = base;
    row.method = std::move(method);
    const auto start = Clock::now();
    try {
      const Outcome o = fn();
      row.value = o.value;
      row.oracle_calls = o.calls;
      if (row.method == "greedy") central = o.value;
      row.ratio = o.value / central;
      if (config_.timing) {
        row.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      }
    } catch (const std::exception& e) {
      std::cerr << "cell failed: method=" << row.method << " m=" << row.m
                << " k=" << row.k << " seed=" << row.seed << ": " << e.what() << '\n';
      row.value = std::numeric_limits<double>::quiet_NaN();
      row.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }

  static void append_summaries(std::vector<ResultRow>& rows) {
    struct Group {
      ResultRow key;
      std::vector<const ResultRow*> members;
    };
    std::vector<Group> groups;
    for (const ResultRow& r : rows) {
      if (r.failed()) continue;
      auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
        return g.key.method == r.method && g.key.m == r.m && g.key.k == r.k &&
               g.key.kappa == r.kappa;
      });
      if (it == groups.end()) {
        groups.push_back({r, {}});
        it = groups.end() - 1;
      }
      it->members.push_back(&r);
    }
    std::vector<ResultRow> summary;
    for (const Group& g : groups) {
      const auto count = static_cast<double>(g.members.size());
      double value_mean = 0.0;
      double ratio_mean = 0.0;
      for (const ResultRow* r : g.members) {
        value_mean += r->value;
        ratio_mean += r->ratio;
      }
      value_mean /= count;
      ratio_mean /= count;
      double value_var = 0.0;
      double ratio_var = 0.0;
      for (const ResultRow* r : g.members) {
        value_var += (r->value - value_mean) * (r->value - value_mean);
        ratio_var += (r->ratio - ratio_mean) * (r->ratio - ratio_mean);
      }
      const double dof = std::max(1.0, count - 1.0);
      ResultRow mean = g.key;
      mean.seed = "mean";
      mean.value = value_mean;
      mean.ratio = ratio_mean;
      mean.oracle_calls.reset();
      mean.ms.reset();
      ResultRow spread = mean;
      spread.seed = "std";
      spread.value = std::sqrt(value_var / dof);
      spread.ratio = std::sqrt(ratio_var / dof);
      summary.push_back(std::move(mean));
      summary.push_back(std::move(spread));
    }
    rows.insert(rows.end(), summary.begin(), summary.end());
  }

  const ExperimentConfig& config_;
  ObjectiveInstance instance_;
  std::map<std::size_t, Outcome> central_cache_;
};

std::string number_text(double v) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  return Runner(config).run();
}

std::string to_csv(const ExperimentResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRow& r : result.rows) {
    out += r.method + ',' + std::to_string(r.m) + ',' + std::to_string(r.k) + ',' +
           std::to_string(r.kappa) + ',' + r.seed + ',' + number_text(r.value) + ',' +
           number_text(r.ratio) + ',';
    if (r.oracle_calls) out += std::to_string(*r.oracle_calls);
    out += ',';
    if (r.ms) out += number_text(*r.ms);
    out += '\n';
  }
  return out;
}

ExperimentResult parse_csv(std::string_view text) {
  ExperimentResult result;
  const auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != kCsvHeader) {
    throw PreconditionError("CSV does not start with the result header");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    const std::string where = "CSV line " + std::to_string(i + 1);
    if (f.size() != 9) throw PreconditionError(where + ": expected 9 fields");
    ResultRow r;
    r.method = std::string(f[0]);
    r.m = parse_or_throw<std::size_t>(f[1], where + " m");
    r.k = parse_or_throw<std::size_t>(f[2], where + " k");
    r.kappa = parse_or_throw<std::size_t>(f[3], where + " kappa");
    r.seed = std::string(f[4]);
    r.value = parse_or_throw<double>(f[5], where + " value");
    r.ratio = parse_or_throw<double>(f[6], where + " ratio");
    if (!f[7].empty()) r.oracle_calls = parse_or_throw<std::uint64_t>(f[7], where + " oracle_calls");
    if (!f[8].empty()) r.ms = parse_or_throw<double>(f[8], where + " ms");
    result.rows.push_back(std::move(r));
  }
  return result;
}

void write_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError(path.string() + ": cannot write CSV");
  out << to_csv(result);
}

ExperimentResult read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError(path.string() + ": cannot open CSV");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_csv(text.str());
}

}  // namespace greedi
