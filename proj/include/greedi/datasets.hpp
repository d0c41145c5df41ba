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

// Dataset files and seeded synthetic generators.
//
// Vector files are either CSV (one point per line, comma separated) or
// binary-f32: two little-endian uint32 values n and d followed by n * d
// float32 values in row-major order. Graph files hold one arc per line as
// "u v [w]". Set files hold one candidate set per line as whitespace
// separated items; an empty line is an empty set.

#ifndef GREEDI_DATASETS_HPP
#define GREEDI_DATASETS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greedi/objectives.hpp"

namespace greedi {

// Malformed input file; the message names the file and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VectorFormat { kCsv, kBinaryF32 };

/// "csv" or "binary-f32".
VectorFormat parse_vector_format(std::string_view name);
/// .bin and .f32 are binary-f32, anything else is CSV.
VectorFormat vector_format_for(const std::filesystem::path& path);

VectorDataset load_vectors(const std::filesystem::path& path, VectorFormat format,
                           bool normalize = false);
void save_vectors(const std::filesystem::path& path, const VectorDataset& data,
                  VectorFormat format);

struct LoadedGraph {
  GraphDataset graph;
  std::vector<std::string> labels;  // original node label of each id
};

/// Node labels are re-indexed in order of first appearance. With
/// `undirected` every line yields arcs in both directions.
LoadedGraph load_graph(const std::filesystem::path& path, bool undirected = false);
void save_graph(const std::filesystem::path& path, const GraphDataset& graph);

struct LoadedSets {
  SetSystemDataset sets;            // element i is line i
  std::vector<std::string> items;   // original label of each item id
};

LoadedSets load_sets(const std::filesystem::path& path);
void save_sets(const std::filesystem::path& path, const SetSystemDataset& sets);

using Params = std::map<std::string, std::string, std::less<>>;

/// "a=1,b=2" into {a: 1, b: 2}. Throws PreconditionError on a malformed pair.
Params parse_params(std::string_view text);

struct GaussianMixtureSpec {
  std::size_t clusters = 10;
  std::size_t n = 1000;
  std::size_t dim = 2;
  double spread = 0.1;  // per-coordinate standard deviation around a center
};

struct RandomGraphSpec {
  std::size_t n = 100;
  double p = 0.1;
  double weight_min = 1.0;
  double weight_max = 1.0;
  bool directed = false;
};

struct RandomSetsSpec {
  std::size_t sets = 100;
  std::size_t universe = 100;
  double density = 0.05;
};

/// Centers are standard normal; each point picks a uniformly random center.
VectorDataset gaussian_mixture(const GaussianMixtureSpec& spec, std::uint64_t seed);
/// Each node pair (each ordered pair when directed) is joined with
/// probability p; undirected edges become two arcs of equal weight.
GraphDataset random_graph(const RandomGraphSpec& spec, std::uint64_t seed);
SetSystemDataset random_sets(const RandomSetsSpec& spec, std::uint64_t seed);

using Dataset = std::variant<VectorDataset, GraphDataset, SetSystemDataset>;

/// kind is gaussian_mixture (c, n, d, spread), random_graph (n, p, wmin,
/// wmax, directed) or random_sets (n, universe, density). Unknown keys and
/// invalid values raise PreconditionError.
Dataset gen_synthetic(std::string_view kind, const Params& params, std::uint64_t seed);
void save_dataset(const std::filesystem::path& path, const Dataset& data);

}  // namespace greedi

#endif  // GREEDI_DATASETS_HPP
