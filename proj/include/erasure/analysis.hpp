#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "erasure/types.hpp"

namespace erasure::analysis {

enum class PerfLabel { GOOD, AVERAGE, POOR };
std::string_view to_string(PerfLabel l);

struct KMeansResult {
  /// Cluster of each input value, in input order. Clusters are numbered by
  /// ascending centroid.
  std::vector<std::size_t> assignment;
  std::vector<double> centroids;
  /// Sum of squared distances to the assigned centroid.
  double objective = 0.0;
};

/// Globally optimal 1-D k-means (sorted values, contiguous-partition DP).
/// Throws TooFewPoints if values.size() < k; InvalidConfig if k == 0.
KMeansResult kmeans_1d(std::span<const double> values, std::size_t k);

struct Column {
  std::string name;
  /// Numeric columns are clustered; boolean columns pass through.
  std::variant<std::vector<double>, std::vector<bool>> values;
};

struct ColumnLabels {
  std::string name;
  std::vector<PerfLabel> labels;
  std::vector<bool> flags;
  /// Set when a numeric column had fewer than three distinct values.
  std::optional<std::string> warning;
};

/// Three-way clustering per numeric column; smaller is better.
std::vector<ColumnLabels> label_results(const std::vector<Column>& columns);

enum class Level { HIGH, LOW };
enum class MemorySize { SMALL, LARGE };

struct UseCase {
  Level network_cost = Level::HIGH;
  MemorySize memory_size = MemorySize::SMALL;
  Level security_level = Level::HIGH;
  bool distant_attacker_resistance_required = false;
  bool has_hw_accelerator = false;
  /// Prover clock fast enough that labelling beats streaming on small memory.
  bool fast_device = false;
};

struct Recommendation {
  ProtocolId protocol;
  /// True when no table row covers the case and a fallback was chosen.
  bool extrapolated = false;
  std::string justification;
};

Recommendation recommend(const UseCase& use_case);

}  // namespace erasure::analysis
