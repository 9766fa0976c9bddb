#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tdc/metrics.hpp"
#include "tdc/model.hpp"
#include "tdc/weighting.hpp"

namespace tdc {

struct CrossMetricRow {
  NodeRef node;
  double closeness = 0.0;
  double betweenness = 0.0;
  double drop = 0.0;  // efficiency drop, raw ratio in [0, 1]
};

struct SweepResult {
  LayerId from;
  LayerId to;
  WeightingMode weighting = WeightingMode::Physical;
  std::vector<CrossMetricRow> rows;  // one per node of `from`, canonical order
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
  double base_efficiency = 0.0;
};

struct SweepOptions {
  unsigned jobs = 1;
  double tol_rel = kDefaultTolRel;
  std::uint64_t seed = 0;  // recorded in the result for provenance
  WeightingMode weighting_label = WeightingMode::Physical;
};

// Exhaustive one-node-at-a-time removal analysis for the direction
// layer_i -> layer_j. Closeness and betweenness come from the intact
// network; the drop column re-evaluates cross-efficiency on each removal
// view. layer_i == layer_j selects single-layer mode (closeness toward the
// remaining nodes, classic betweenness, within-layer efficiency).
SweepResult removal_sweep(const MultilayerNetwork& net, const LayerId& layer_i,
                          const LayerId& layer_j, const VoltagePolicy& k,
                          const SweepOptions& opts = {});

enum class RankMetric { Closeness, Betweenness, Drop };

RankMetric rank_metric_from_string(const std::string& s);
const char* to_string(RankMetric m);

// Descending by value, ties broken by ascending node name.
std::vector<std::pair<NodeRef, double>> rank_top(const SweepResult& result,
                                                 RankMetric metric,
                                                 std::size_t k);

struct HistogramSpec {
  std::vector<double> bin_edges;  // percent
  std::vector<std::size_t> counts;
};

// 1%-wide bins over [0, 10)% plus a single [10, 100]% tail.
std::vector<double> default_bin_edges();

// Bins the drop column (as percent). Half-open [lo, hi) bins, final bin
// closed; edges must be strictly increasing and cover [0, 100].
HistogramSpec histogram(const SweepResult& result,
                        const std::vector<double>& bin_edges);

struct GroupStats {
  std::string label;
  std::size_t count = 0;
  bool empty = false;
  // Drop statistics in percent. Quartiles use median-of-halves (the middle
  // element is excluded from both halves for odd counts); medians use the
  // midpoint convention for even counts.
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

using GroupPredicate = std::function<bool(const NodeRef&)>;

std::vector<GroupStats> group_stats(
    const SweepResult& result,
    const std::vector<std::pair<std::string, GroupPredicate>>& groups);

struct WeightingComparison {
  SweepResult unit;
  SweepResult physical;
  std::vector<std::pair<NodeRef, double>> unit_top;
  std::vector<std::pair<NodeRef, double>> physical_top;
  std::size_t overlap = 0;
};

// Runs the same sweep under unit and physical weighting (the input network
// must carry impedances) and reports the paired top-k drop rankings.
WeightingComparison compare_weightings(
    const MultilayerNetwork& net, const LayerId& layer_i,
    const LayerId& layer_j, const VoltagePolicy& k, std::size_t top_k = 10,
    NormalizationScope scope = NormalizationScope::PerLayer,
    const SweepOptions& opts = {});

}  // namespace tdc
