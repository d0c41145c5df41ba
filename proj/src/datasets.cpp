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

#include "greedi/datasets.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <unordered_map>

#include "greedi/rng.hpp"

namespace greedi {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary-f32 files are read and written in host byte order");

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::ifstream open_input(const std::filesystem::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw PreconditionError(path.string() + ": cannot write file");
  return out;
}

VectorDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<double> values;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      const std::string_view token =
          trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
      double v = 0.0;
      if (!parse_number(token, v)) fail(path, number, "not a number: '" + std::string(token) + "'");
      if (!std::isfinite(v)) fail(path, number, "non-finite value");
      values.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) dim = fields;
    if (fields != dim) {
      fail(path, number, "expected " + std::to_string(dim) + " fields, found " +
                             std::to_string(fields));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(path.string() + ": no data");
  VectorDataset data;
  data.points = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
  return data;
}

VectorDataset load_binary(const std::filesystem::path& path) {
  std::ifstream in = open_input(path, true);
  std::uint32_t header[2] = {0, 0};
  if (!in.read(reinterpret_cast<char*>(header), sizeof(header))) {
    throw ParseError(path.string() + ": missing binary-f32 header");
  }
  const std::size_t n = header[0];
  const std::size_t d = header[1];
  if (n == 0 || d == 0) throw ParseError(path.string() + ": no data");
  std::vector<float> raw(n * d);
  if (!in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(raw.size() * sizeof(float)))) {
    throw ParseError(path.string() + ": truncated binary-f32 payload");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError(path.string() + ": trailing bytes after binary-f32 payload");
  }
  VectorDataset data;
  data.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const float v = raw[i * d + j];
      if (!std::isfinite(v)) {
        throw ParseError(path.string() + ": row " + std::to_string(i + 1) +
                         ": non-finite value");
      }
      data.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return data;
}

std::string number_text(double v) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

}  // namespace

VectorFormat parse_vector_format(std::string_view name) {
  if (name == "csv") return VectorFormat::kCsv;
  if (name == "binary-f32") return VectorFormat::kBinaryF32;
  throw PreconditionError("unknown vector format '" + std::string(name) +
                          "' (expected csv|binary-f32)");
}

VectorFormat vector_format_for(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".bin" || ext == ".f32" ? VectorFormat::kBinaryF32 : VectorFormat::kCsv;
}

VectorDataset load_vectors(const std::filesystem::path& path, VectorFormat format,
                           bool normalize) {
  VectorDataset data = format == VectorFormat::kCsv ? load_csv(path) : load_binary(path);
  if (normalize) data.normalize();
  return data;
}

void save_vectors(const std::filesystem::path& path, const VectorDataset& data,
                  VectorFormat format) {
  data.validate();
  if (format == VectorFormat::kBinaryF32) {
    std::ofstream out = open_output(path, true);
    const std::uint32_t header[2] = {static_cast<std::uint32_t>(data.size()),
                                     static_cast<std::uint32_t>(data.dim())};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
      for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
        const auto v = static_cast<float>(data.points(i, j));
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
      }
    }
    return;
  }
  std::ofstream out = open_output(path);
  for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
      if (j) out << ',';
      out << number_text(data.points(i, j));
    }
    out << '\n';
  }
}

LoadedGraph load_graph(const std::filesystem::path& path, bool undirected) {
  std::ifstream in = open_input(path);
  LoadedGraph out;
  std::unordered_map<std::string, ElementId> index;
  auto id_of = [&](std::string_view label) {
    auto [it, inserted] =
        index.emplace(std::string(label), static_cast<ElementId>(out.labels.size()));
    if (inserted) out.labels.emplace_back(label);
    return it->second;
  };
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto tokens = split_whitespace(text);
    if (tokens.size() < 2 || tokens.size() > 3) fail(path, number, "expected 'u v [w]'");
    double w = 1.0;
    if (tokens.size() == 3 && !parse_number(tokens[2], w)) {
      fail(path, number, "bad weight '" + std::string(tokens[2]) + "'");
    }
    if (!std::isfinite(w) || w < 0.0) fail(path, number, "weight must be finite and >= 0");
    if (tokens[0] == tokens[1]) fail(path, number, "self loop");
    const ElementId u = id_of(tokens[0]);
    const ElementId v = id_of(tokens[1]);
    out.graph.arcs.push_back({u, v, w});
    if (undirected) out.graph.arcs.push_back({v, u, w});
  }
  out.graph.nodes = out.labels.size();
  if (out.graph.nodes == 0) throw ParseError(path.string() + ": no data");
  return out;
}

void save_graph(const std::filesystem::path& path, const GraphDataset& graph) {
  std::ofstream out = open_output(path);
  for (const Arc& a : graph.arcs) {
    out << a.from << ' ' << a.to << ' ' << number_text(a.weight) << '\n';
  }
}

LoadedSets load_sets(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  LoadedSets out;
  std::unordered_map<std::string, std::uint32_t> index;
  std::string line;
  std::size_t lines = 0;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    ++lines;
    std::vector<std::uint32_t> items;
    for (std::string_view token : split_whitespace(line)) {
      auto [it, inserted] =
          index.emplace(std::string(token), static_cast<std::uint32_t>(out.items.size()));
      if (inserted) out.items.emplace_back(token);
      items.push_back(it->second);
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    out.sets.sets.push_back(std::move(items));
  }
  if (lines == 0) throw ParseError(path.string() + ": no data");
  return out;
}

void save_sets(const std::filesystem::path& path, const SetSystemDataset& sets) {
  std::ofstream out = open_output(path);
  for (const auto& s : sets.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out << ' ';
      out << s[i];
    }
    out << '\n';
  }
}

Params parse_params(std::string_view text) {
  Params out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view pair =
        trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (!pair.empty()) {
      const std::size_t eq = pair.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw PreconditionError("malformed parameter '" + std::string(pair) +
                                "' (expected key=value)");
      }
      out[std::string(trim(pair.substr(0, eq)))] = std::string(trim(pair.substr(eq + 1)));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

class ParamReader {
 public:
  ParamReader(std::string_view kind, const Params& params,
              std::initializer_list<std::string_view> allowed)
      : kind_(kind), params_(params) {
    for (const auto& [key, value] : params_) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw PreconditionError(std::string(kind_) + ": unknown parameter '" + key + "'");
      }
    }
  }

  std::size_t count(std::string_view key, std::size_t fallback) const {
    const auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    std::size_t v = 0;
    if (!parse_number(std::string_view(it->second), v)) bad(key, it->second);
    return v;
  }

  double real(std::string_view key, double fallback) const {
    const auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    double v = 0.0;
    if (!parse_number(std::string_view(it->second), v) || !std::isfinite(v)) {
      bad(key, it->second);
    }
    return v;
  }

 private:
  [[noreturn]] void bad(std::string_view key, const std::string& value) const {
    throw PreconditionError(std::string(kind_) + ": bad value '" + value + "' for " +
                            std::string(key));
  }

  std::string_view kind_;
  const Params& params_;
};

}  // namespace

VectorDataset gaussian_mixture(const GaussianMixtureSpec& spec, std::uint64_t seed) {
  if (spec.clusters < 1 || spec.n < 1 || spec.dim < 1 || !(spec.spread >= 0.0)) {
    throw PreconditionError("gaussian_mixture needs c, n, d >= 1 and spread >= 0");
  }
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(spec.dim);
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(spec.clusters), d);
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    for (Eigen::Index j = 0; j < d; ++j) centers(c, j) = rng.normal();
  }
  VectorDataset data;
  data.points.resize(static_cast<Eigen::Index>(spec.n), d);
  for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
    const auto c = static_cast<Eigen::Index>(rng.uniform_index(spec.clusters));
    for (Eigen::Index j = 0; j < d; ++j) {
      data.points(i, j) = centers(c, j) + spec.spread * rng.normal();
    }
  }
  return data;
}

GraphDataset random_graph(const RandomGraphSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || !(spec.p >= 0.0 && spec.p <= 1.0) || !(spec.weight_min >= 0.0) ||
      !(spec.weight_max >= spec.weight_min)) {
    throw PreconditionError(
        "random_graph needs n >= 1, 0 <= p <= 1 and 0 <= wmin <= wmax");
  }
  Rng rng(seed);
  GraphDataset g;
  g.nodes = spec.n;
  auto weight = [&] {
    return spec.weight_min == spec.weight_max ? spec.weight_min
                                              : rng.uniform(spec.weight_min, spec.weight_max);
  };
  for (ElementId u = 0; u < spec.n; ++u) {
    for (ElementId v = spec.directed ? 0 : u + 1; v < spec.n; ++v) {
      if (u == v || !rng.bernoulli(spec.p)) continue;
      const double w = weight();
      g.arcs.push_back({u, v, w});
      if (!spec.directed) g.arcs.push_back({v, u, w});
    }
  }
  return g;
}

SetSystemDataset random_sets(const RandomSetsSpec& spec, std::uint64_t seed) {
  if (spec.sets < 1 || spec.universe < 1 || !(spec.density >= 0.0 && spec.density <= 1.0)) {
    throw PreconditionError("random_sets needs n, universe >= 1 and 0 <= density <= 1");
  }
  Rng rng(seed);
  SetSystemDataset out;
  out.sets.resize(spec.sets);
  for (auto& s : out.sets) {
    for (std::uint32_t item = 0; item < spec.universe; ++item) {
      if (rng.bernoulli(spec.density)) s.push_back(item);
    }
  }
  return out;
}

Dataset gen_synthetic(std::string_view kind, const Params& params, std::uint64_t seed) {
  if (kind == "gaussian_mixture") {
    const ParamReader r(kind, params, {"c", "n", "d", "spread"});
    GaussianMixtureSpec spec;
    spec.clusters = r.count("c", spec.clusters);
    spec.n = r.count("n", spec.n);
    spec.dim = r.count("d", spec.dim);
    spec.spread = r.real("spread", spec.spread);
    return gaussian_mixture(spec, seed);
  }
  if (kind == "random_graph") {
    const ParamReader r(kind, params, {"n", "p", "wmin", "wmax", "directed"});
    RandomGraphSpec spec;
    spec.n = r.count("n", spec.n);
    spec.p = r.real("p", spec.p);
    spec.weight_min = r.real("wmin", spec.weight_min);
    spec.weight_max = r.real("wmax", std::max(spec.weight_min, spec.weight_max));
    spec.directed = r.count("directed", 0) != 0;
    return random_graph(spec, seed);
  }
  if (kind == "random_sets") {
    const ParamReader r(kind, params, {"n", "universe", "density"});
    RandomSetsSpec spec;
    spec.sets = r.count("n", spec.sets);
    spec.universe = r.count("universe", spec.universe);
    spec.density = r.real("density", spec.density);
    return random_sets(spec, seed);
  }
  throw PreconditionError("unknown generator '" + std::string(kind) +
                          "' (expected gaussian_mixture|random_graph|random_sets)");
}

void save_dataset(const std::filesystem::path& path, const Dataset& data) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, VectorDataset>) {
          save_vectors(path, d, vector_format_for(path));
        } else if constexpr (std::is_same_v<T, GraphDataset>) {
          save_graph(path, d);
        } else {
          save_sets(path, d);
        }
      },
      data);
}

}  // namespace greedi
