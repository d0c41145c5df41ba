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

#include "greedi/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace greedi {

GroundSet::GroundSet(std::size_t n, PayloadKind kind) : n_(n), kind_(kind) {
  if (n == 0) throw PreconditionError("ground set must be nonempty");
}

std::vector<ElementId> GroundSet::elements() const { return iota_ids(n_); }

std::vector<ElementId> iota_ids(std::size_t n) {
  std::vector<ElementId> ids(n);
  std::iota(ids.begin(), ids.end(), ElementId{0});
  return ids;
}

ElementSet::ElementSet(std::size_t universe)
    : universe_(universe), bits_((universe + 63) / 64, 0) {}

bool ElementSet::insert(ElementId e) {
  if (e >= universe_) throw PreconditionError("element id out of range");
  if (contains(e)) return false;
  bits_[e >> 6] |= std::uint64_t{1} << (e & 63);
  order_.push_back(e);
  return true;
}

std::vector<ElementId> ElementSet::sorted() const {
  std::vector<ElementId> out = order_;
  std::sort(out.begin(), out.end());
  return out;
}

Objective::Objective(std::size_t n) : n_(n) {
  if (n == 0) throw PreconditionError("objective over an empty ground set");
}

double Objective::eval(ElementSpan s) const {
  charge(1);
  return evaluate(s);
}

namespace {

// Re-evaluates f from scratch for each query.
class GenericGainState final : public GainState {
 public:
  explicit GenericGainState(const Objective& f) : GainState(f) {
    count_evaluation();
    value_ = raw_eval(f, {});
  }

 protected:
  double marginal(ElementId e) override {
    scratch_ = selected();
    scratch_.push_back(e);
    return raw_eval(objective(), scratch_) - value_;
  }

  void accept(ElementId) override {
    count_evaluation();
    value_ = raw_eval(objective(), selected());
  }

 private:
  std::vector<ElementId> scratch_;
};

}  // namespace

std::unique_ptr<GainState> Objective::start() const {
  return std::make_unique<GenericGainState>(*this);
}

std::shared_ptr<const Objective> Objective::localized(ElementSpan) const {
  return nullptr;
}

GainState::GainState(const Objective& f) : objective_(f), selected_(f.size()) {}

double GainState::gain(ElementId e) {
  if (contains(e)) throw PreconditionError("gain of an already selected element");
  count_evaluation();
  return marginal(e);
}

void GainState::gains(ElementSpan es, std::span<double> out) {
  if (out.size() != es.size()) throw PreconditionError("gains: output size mismatch");
  for (ElementId e : es) {
    if (contains(e)) throw PreconditionError("gain of an already selected element");
  }
  calls_ += es.size();
  objective_.charge(es.size());
  marginals(es, out);
}

void GainState::marginals(ElementSpan es, std::span<double> out) {
  for (std::size_t i = 0; i < es.size(); ++i) out[i] = marginal(es[i]);
}

void GainState::add(ElementId e) {
  if (!selected_.insert(e)) throw PreconditionError("element added twice");
  accept(e);
}

void GainState::count_evaluation() {
  ++calls_;
  objective_.charge(1);
}

double marginal_gain(const Objective& f, ElementSpan s, ElementId e) {
  if (std::find(s.begin(), s.end(), e) != s.end()) {
    throw PreconditionError("marginal_gain: element already in the set");
  }
  std::vector<ElementId> with(s.begin(), s.end());
  with.push_back(e);
  return f.eval(with) - f.eval(s);
}

Solution make_solution(const Objective& f, std::vector<ElementId> elements,
                       std::string provenance, std::uint64_t oracle_calls) {
  Solution out;
  out.value = f.eval(elements);
  out.elements = std::move(elements);
  out.oracle_calls = oracle_calls;
  out.provenance = std::move(provenance);
  return out;
}

namespace {

std::vector<ElementId> mask_ids(std::uint32_t mask) {
  std::vector<ElementId> ids;
  for (ElementId i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) ids.push_back(i);
  }
  return ids;
}

std::vector<double> tabulate(const Objective& f) {
  const std::size_t n = f.size();
  if (n > kMaxExhaustiveSize) {
    throw SizeLimitError("exhaustive verification needs n <= 12, got " +
                         std::to_string(n));
  }
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = f.eval(mask_ids(mask));
  }
  return table;
}

}  // namespace

StructureReport verify_submodular(const Objective& f) {
  const std::vector<double> table = tabulate(f);
  const std::uint32_t n = static_cast<std::uint32_t>(f.size());
  const std::uint32_t full = (1U << n) - 1;
  for (std::uint32_t b = 0; b <= full; ++b) {
    for (std::uint32_t a = 0; a <= b; ++a) {
      if ((a | b) != b) continue;
      for (std::uint32_t e = 0; e < n; ++e) {
        const std::uint32_t bit = 1U << e;
        if (b & bit) continue;
        const double gain_a = table[a | bit] - table[a];
        const double gain_b = table[b | bit] - table[b];
        if (gain_a < gain_b - kValueTolerance) {
          return {false, StructureWitness{mask_ids(a), mask_ids(b), e}};
        }
      }
    }
  }
  return {};
}

StructureReport verify_monotone(const Objective& f) {
  const std::vector<double> table = tabulate(f);
  const std::uint32_t full = (1U << f.size()) - 1;
  for (std::uint32_t b = 0; b <= full; ++b) {
    for (std::uint32_t a = 0; a <= b; ++a) {
      if ((a | b) != b) continue;
      if (table[a] > table[b] + kValueTolerance) {
        return {false, StructureWitness{mask_ids(a), mask_ids(b), std::nullopt}};
      }
    }
  }
  return {};
}

std::string format_ids(ElementSpan ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string format_value(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace greedi
