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

#include "greedi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greedi/engines.hpp"

namespace greedi {

namespace {

class Exhaustive {
 public:
  Exhaustive(const Objective& f, std::vector<ElementId> ground, const Constraint* c)
      : f_(f), ground_(std::move(ground)), constraint_(c) {}

  Solution run() {
    std::vector<ElementId> current;
    visit(0, current);
    Solution out;
    out.elements = best_;
    out.value = best_value_;
    out.oracle_calls = calls_;
    out.provenance = "brute_force";
    return out;
  }

 private:
  void visit(std::size_t next, std::vector<ElementId>& current) {
    if (constraint_ != nullptr && !constraint_->is_feasible(current)) return;
    const double v = f_.eval(current);
    ++calls_;
    if (!found_ || v > best_value_) {
      found_ = true;
      best_value_ = v;
      best_ = current;
    }
    if (constraint_ != nullptr && current.size() >= constraint_->rho()) return;
    for (std::size_t i = next; i < ground_.size(); ++i) {
      current.push_back(ground_[i]);
      visit(i + 1, current);
      current.pop_back();
    }
  }

  const Objective& f_;
  std::vector<ElementId> ground_;
  const Constraint* constraint_;
  bool found_ = false;
  double best_value_ = 0.0;
  std::vector<ElementId> best_;
  std::uint64_t calls_ = 0;
};

}  // namespace

Solution brute_force_opt(const Objective& f, ElementSpan ground,
                         const Constraint* constraint) {
  const std::size_t n = ground.size();
  const bool small_budget = constraint != nullptr && constraint->rho() <= 4;
  if (n > 20 || (n > 14 && !small_budget)) {
    throw SizeLimitError("brute force needs n <= 14, or n <= 20 with rho <= 4 (n = " +
                         std::to_string(n) + ")");
  }
  std::vector<ElementId> sorted(ground.begin(), ground.end());
  std::sort(sorted.begin(), sorted.end());
  return Exhaustive(f, std::move(sorted), constraint).run();
}

Solution brute_force_opt(const Objective& f, ElementSpan ground, std::size_t k) {
  const CardinalityConstraint card(k);
  return brute_force_opt(f, ground, &card);
}

WorstCaseInstance worst_case_instance(std::size_t m, std::size_t k) {
  if (m < 2 || k < 2) throw PreconditionError("worst-case instance needs m >= 2, k >= 2");
  WorstCaseInstance w;
  w.m = m;
  w.k = k;
  auto sets = std::make_shared<SetSystemDataset>();
  sets->sets.resize(m * k + m);
  std::vector<std::vector<ElementId>> blocks(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto bit = static_cast<std::uint32_t>(i * k + j);
      sets->sets[w.x(i, j)] = {bit};
      sets->sets[w.y(i)].push_back(bit);
      blocks[i].push_back(w.x(i, j));
    }
    blocks[i].push_back(w.y(i));
  }
  w.sets = sets;
  w.objective = std::make_shared<CoverageObjective>(sets);
  w.partition = partition_from_blocks(std::move(blocks));
  return w;
}

BoundReport check_bound(std::string_view name, const BoundInputs& in) {
  const auto k = static_cast<double>(in.k);
  double factor = 0.0;
  if (name == "greedy") {
    factor = tau::kGreedyCardinality;
  } else if (name == "greedy_budget") {
    if (in.k == 0) throw PreconditionError("greedy_budget needs k >= 1");
    factor = 1.0 - std::exp(-static_cast<double>(in.q) / k);
  } else if (name == "greedi") {
    if (in.k == 0 || in.m == 0) throw PreconditionError("greedi bound needs k, m >= 1");
    factor = (1.0 - std::exp(-static_cast<double>(in.kappa) / k)) /
             static_cast<double>(std::min(in.m, in.k));
  } else if (name == "greedi_general") {
    if (in.rho == 0 || in.m == 0) {
      throw PreconditionError("greedi_general bound needs rho, m >= 1");
    }
    factor = in.tau / static_cast<double>(std::min(in.m, in.rho));
  } else {
    throw PreconditionError("unknown bound '" + std::string(name) + "'");
  }
  BoundReport r;
  r.bound_name = std::string(name);
  r.bound_value = factor * in.opt;
  r.achieved = in.achieved;
  r.satisfied = in.achieved >= r.bound_value - kValueTolerance;
  r.fingerprint = in.fingerprint;
  return r;
}

std::string format_report(const BoundReport& r) {
  return "bound=" + r.bound_name + " achieved=" + format_value(r.achieved) +
         " bound_value=" + format_value(r.bound_value) +
         " satisfied=" + (r.satisfied ? "yes" : "no") + " instance=" + r.fingerprint;
}

std::string_view to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::kCoverage: return "coverage";
    case InstanceFamily::kModular: return "modular";
    case InstanceFamily::kExemplar: return "exemplar";
    case InstanceFamily::kInfoGain: return "infogain";
    case InstanceFamily::kCut: return "cut";
    case InstanceFamily::kDpp: return "dpp";
  }
  return "unknown";
}

namespace {

std::shared_ptr<VectorDataset> random_points(std::size_t n, std::size_t d, Rng& rng) {
  auto data = std::make_shared<VectorDataset>();
  data->points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < data->points.rows(); ++i) {
    for (Eigen::Index j = 0; j < data->points.cols(); ++j) data->points(i, j) = rng.normal();
  }
  return data;
}

}  // namespace

std::shared_ptr<const Objective> random_instance(InstanceFamily family, std::size_t n,
                                                 Rng& rng) {
  if (n < 1) throw PreconditionError("random instance needs n >= 1");
  switch (family) {
    case InstanceFamily::kCoverage: {
      auto sets = std::make_shared<SetSystemDataset>();
      const std::size_t universe = 2 * n;
      sets->sets.resize(n);
      for (auto& s : sets->sets) {
        for (std::uint32_t item = 0; item < universe; ++item) {
          if (rng.bernoulli(0.25)) s.push_back(item);
        }
        if (s.empty()) s.push_back(static_cast<std::uint32_t>(rng.uniform_index(universe)));
      }
      return std::make_shared<CoverageObjective>(sets);
    }
    case InstanceFamily::kModular: {
      std::vector<double> w(n);
      for (double& x : w) x = rng.uniform();
      return std::make_shared<ModularObjective>(std::move(w));
    }
    case InstanceFamily::kExemplar:
      return std::make_shared<ExemplarObjective>(random_points(n, 3, rng));
    case InstanceFamily::kInfoGain:
      return std::make_shared<InfoGainObjective>(random_points(n, 2, rng),
                                                 SEKernel(0.75, 1.0));
    case InstanceFamily::kCut: {
      auto g = std::make_shared<GraphDataset>();
      g->nodes = n;
      for (ElementId u = 0; u < n; ++u) {
        for (ElementId v = 0; v < n; ++v) {
          if (u != v && rng.bernoulli(0.35)) g->arcs.push_back({u, v, rng.uniform(0.5, 2.0)});
        }
      }
      return std::make_shared<GraphCutObjective>(g);
    }
    case InstanceFamily::kDpp:
      return DppLogDetObjective::from_vectors(*random_points(n, 2, rng), 1.0, 0.5);
  }
  throw PreconditionError("unknown instance family");
}

namespace {

constexpr InstanceFamily kMonotoneFamilies[] = {
    InstanceFamily::kCoverage, InstanceFamily::kModular, InstanceFamily::kExemplar,
    InstanceFamily::kInfoGain};
constexpr InstanceFamily kAllFamilies[] = {
    InstanceFamily::kCoverage, InstanceFamily::kModular, InstanceFamily::kExemplar,
    InstanceFamily::kInfoGain, InstanceFamily::kCut,     InstanceFamily::kDpp};

std::string fingerprint(InstanceFamily family, std::size_t n, std::size_t seed) {
  return std::string(to_string(family)) + ":n=" + std::to_string(n) +
         ":seed=" + std::to_string(seed);
}

void add_report(std::vector<SuiteLine>& out, const BoundReport& r) {
  out.push_back({format_report(r), r.satisfied});
}

std::vector<SuiteLine> bounds_suite(std::size_t seeds) {
  std::vector<SuiteLine> out;
  for (std::size_t s = 0; s < seeds; ++s) {
    Rng rng(derive_seed(0xB0, s));
    const InstanceFamily family = kMonotoneFamilies[s % 4];
    const std::size_t n = 6 + s % 7;
    const std::size_t k = 1 + (s / 7) % 4;
    const auto f = random_instance(family, n, rng);
    const std::vector<ElementId> ground = iota_ids(n);
    const double opt = brute_force_opt(*f, ground, k).value;
    const std::string fp = fingerprint(family, n, s);

    BoundInputs in{.opt = opt, .k = k, .fingerprint = fp};
    in.achieved = greedy(*f, ground, k).value;
    add_report(out, check_bound("greedy", in));
    for (std::size_t q = 1; q <= std::min(2 * k, n); ++q) {
      in.q = q;
      in.achieved = greedy(*f, ground, q).value;
      add_report(out, check_bound("greedy_budget", in));
    }

    GreediConfig config;
    config.machines = 1 + s % 4;
    config.k = k;
    config.kappa = k + s % 3;
    config.seed = s;
    const Partition partition = partition_uniform(n, config.machines, s);
    const GreediResult r = greedi(*f, partition, config);
    in.m = config.machines;
    in.kappa = config.kappa;
    in.achieved = r.trace.final_kappa.value;
    add_report(out, check_bound("greedi", in));

    const CardinalityConstraint card(k);
    const auto engine = make_engine(EngineKind::kGreedy);
    const GreediResult g = greedi_general(*f, partition, card, *engine, config);
    in.rho = k;
    in.tau = engine->tau(card);
    in.achieved = g.solution.value;
    add_report(out, check_bound("greedi_general", in));
  }
  return out;
}

std::vector<SuiteLine> structure_suite(std::size_t seeds) {
  std::vector<SuiteLine> out;
  for (InstanceFamily family : kAllFamilies) {
    bool submodular = true;
    bool monotone = true;
    bool claims_monotone = false;
    for (std::size_t s = 0; s < seeds; ++s) {
      Rng rng(derive_seed(0x57, s));
      const auto f = random_instance(family, 4 + s % 5, rng);
      claims_monotone = f->monotone();
      submodular = submodular && verify_submodular(*f).holds;
      if (claims_monotone) monotone = monotone && verify_monotone(*f).holds;
    }
    std::string text = "structure objective=" + std::string(to_string(family)) +
                       " instances=" + std::to_string(seeds) +
                       " submodular=" + (submodular ? "pass" : "fail");
    if (claims_monotone) text += std::string(" monotone=") + (monotone ? "pass" : "fail");
    out.push_back({text, submodular && monotone});
  }

  auto pair = std::make_shared<GraphDataset>();
  pair->nodes = 2;
  pair->arcs = {{0, 1, 1.0}, {1, 0, 1.0}};
  const GraphCutObjective cut(pair);
  const StructureReport report = verify_monotone(cut);
  std::string text = "structure objective=cut monotone_counterexample=";
  if (report.witness) {
    text += "A={" + format_ids(report.witness->a) + "},B={" +
            format_ids(report.witness->b) + "}";
  } else {
    text += "none";
  }
  out.push_back({text, !report.holds && report.witness.has_value()});
  return out;
}

std::vector<SuiteLine> lipschitz_suite(std::size_t seeds) {
  std::vector<SuiteLine> out;
  constexpr std::size_t kTrials = 1000;
  constexpr std::size_t kSetSize = 3;
  for (std::size_t s = 0; s < seeds; ++s) {
    Rng rng(derive_seed(0x11, s));
    const auto data = random_points(30, 3, rng);
    const std::vector<ElementId> ground = iota_ids(data->size());
    const Metric metric = [&](ElementId a, ElementId b) {
      return euclidean_distance(*data, a, b);
    };
    const double radius = diameter(*data);
    auto probe = [&](const std::string& label, const Objective& f, double lambda) {
      const LipschitzProbe p = lipschitz_probe(f, metric, ground, kSetSize, kTrials, rng);
      const bool ok = p.max_ratio <= lambda + kValueTolerance;
      out.push_back({"lipschitz objective=" + label + " seed=" + std::to_string(s) +
                         " max_ratio=" + format_value(p.max_ratio) +
                         " lambda=" + format_value(lambda) +
                         " satisfied=" + (ok ? "yes" : "no"),
                     ok});
    };
    const ExemplarObjective linear(data, {.alpha_exp = 1.0, .phantom_cost = {}});
    probe("exemplar_d", linear, exemplar_lipschitz_bound(1.0, radius));
    const ExemplarObjective squared(data, {.alpha_exp = 2.0, .phantom_cost = {}});
    probe("exemplar_d2", squared, exemplar_lipschitz_bound(2.0, radius));
    const SEKernel kernel(0.75, 1.0);
    const InfoGainObjective info(data, kernel);
    probe("infogain", info, info_gain_lipschitz_bound(kernel, kSetSize));
  }
  return out;
}

std::vector<SuiteLine> worstcase_suite() {
  std::vector<SuiteLine> out;
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const WorstCaseInstance w = worst_case_instance(m, k);
      const GreediResult exact = exact_two_round(*w.objective, w.partition, k);
      const std::vector<ElementId> ground = w.partition.ground();
      const double opt = brute_force_opt(*w.objective, ground, k).value;
      const double distributed = exact.solution.value;
      const auto expected = static_cast<double>(std::min(m, k));
      const bool ok = opt == expected * distributed;
      out.push_back({"worstcase m=" + std::to_string(m) + " k=" + std::to_string(k) +
                         " opt=" + format_value(opt) +
                         " distributed=" + format_value(distributed) +
                         " ratio=" + format_value(opt / distributed) +
                         " expected=" + format_value(expected) +
                         " satisfied=" + (ok ? "yes" : "no"),
                     ok});
    }
  }
  return out;
}

}  // namespace

std::vector<SuiteLine> run_suite(std::string_view suite, std::size_t seeds) {
  if (suite == "bounds") return bounds_suite(seeds);
  if (suite == "structure") return structure_suite(seeds);
  if (suite == "lipschitz") return lipschitz_suite(seeds);
  if (suite == "worstcase") return worstcase_suite();
  throw PreconditionError("unknown suite '" + std::string(suite) +
                          "' (expected bounds|structure|lipschitz|worstcase)");
}

}  // namespace greedi
