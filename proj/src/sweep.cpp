#include "tdc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "tdc/parallel.hpp"
#include "tdc/paths.hpp"

namespace tdc {

namespace {

constexpr std::size_t kSourceBlock = 32;

// Loose tolerance for the "v lies on a shortest p-q path" test; overcounting
// affected sources costs time, undercounting costs correctness.
double on_path_eps(double d) { return 1e-7 * std::max(1.0, d); }

struct Baseline {
  std::vector<std::int32_t> sources;
  std::vector<std::int32_t> targets;
  bool same_layer = false;
  std::vector<std::vector<double>> dist;  // per source, full supra distances
  std::vector<double> contrib;            // per source: sum_q k_p / d_pq
  std::vector<double> k_source;
  double total = 0.0;
  double denom = 0.0;
};

Baseline compute_baseline(const MultilayerNetwork& net, const LayerId& layer_i,
                          const LayerId& layer_j, const VoltagePolicy& k,
                          unsigned jobs) {
  Baseline b;
  b.sources = net.layer_nodes(layer_i);
  b.targets = net.layer_nodes(layer_j);
  b.same_layer = layer_i == layer_j;
  if (b.sources.empty()) throw EmptyLayer("empty layer " + layer_i.name);
  if (b.targets.empty()) throw EmptyLayer("empty layer " + layer_j.name);

  b.dist.resize(b.sources.size());
  b.contrib.assign(b.sources.size(), 0.0);
  b.k_source.resize(b.sources.size());
  double k_sum = 0.0;
  for (std::size_t i = 0; i < b.sources.size(); ++i) {
    b.k_source[i] = k.k_for(net, b.sources[i]);
    k_sum += b.k_source[i];
  }

  parallel_blocks(b.sources.size(), jobs, kSourceBlock,
                  [&](std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      dijkstra(net, b.sources[i], -1, b.dist[i]);
                      double sum = 0.0;
                      for (std::int32_t q : b.targets) {
                        if (q == b.sources[i]) continue;
                        double d = b.dist[i][q];
                        if (d == kUnreachable || d <= 0.0) continue;
                        sum += b.k_source[i] / d;
                      }
                      b.contrib[i] = sum;
                    }
                  });
  for (double c : b.contrib) b.total += c;

  double pairs = b.same_layer
                     ? static_cast<double>(b.sources.size()) *
                           static_cast<double>(b.sources.size() - 1)
                     : static_cast<double>(b.sources.size()) *
                           static_cast<double>(b.targets.size());
  b.denom = pairs * (k_sum / static_cast<double>(b.sources.size()));
  return b;
}

// Sum of k_p / d'(p, q) over all pairs on the removal view of v, computed
// source-side for the given subset of source slots.
double recompute_sources(const MultilayerNetwork& net, const Baseline& b,
                         const std::vector<std::size_t>& slots,
                         std::int32_t v, const std::vector<char>& target_mask,
                         std::size_t target_count, std::vector<double>& dist) {
  double sum = 0.0;
  for (std::size_t i : slots) {
    dijkstra(net, b.sources[i], v, dist, &target_mask, target_count);
    for (std::int32_t q : b.targets) {
      if (q == v || q == b.sources[i]) continue;
      double d = dist[q];
      if (d == kUnreachable || d <= 0.0) continue;
      sum += b.k_source[i] / d;
    }
  }
  return sum;
}

// Same sum over every remaining pair, computed target-side (cheaper when
// most sources are affected by the removal).
double recompute_targets(const MultilayerNetwork& net, const Baseline& b,
                         std::int32_t v, const std::vector<char>& source_mask,
                         std::size_t source_count, std::vector<double>& dist) {
  double sum = 0.0;
  for (std::size_t j = 0; j < b.targets.size(); ++j) {
    std::int32_t q = b.targets[j];
    if (q == v) continue;
    dijkstra(net, q, v, dist, &source_mask, source_count);
    for (std::size_t i = 0; i < b.sources.size(); ++i) {
      std::int32_t p = b.sources[i];
      if (p == v || p == q) continue;
      double d = dist[p];
      if (d == kUnreachable || d <= 0.0) continue;
      sum += b.k_source[i] / d;
    }
  }
  return sum;
}

}  // namespace

SweepResult removal_sweep(const MultilayerNetwork& net, const LayerId& layer_i,
                          const LayerId& layer_j, const VoltagePolicy& k,
                          const SweepOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Baseline b = compute_baseline(net, layer_i, layer_j, k, opts.jobs);
  if (b.total <= 0.0)
    throw ZeroBaseEfficiency("cross-efficiency of the intact network is zero");

  SweepResult result;
  result.from = layer_i;
  result.to = layer_j;
  result.weighting = opts.weighting_label;
  result.seed = opts.seed;
  result.base_efficiency = b.total / b.denom;
  result.rows.resize(b.sources.size());

  const double n_i = static_cast<double>(b.sources.size());
  const double n_j = static_cast<double>(b.targets.size());
  for (std::size_t i = 0; i < b.sources.size(); ++i) {
    auto& row = result.rows[i];
    row.node = net.ref_of(b.sources[i]);
    double sum = 0.0;
    for (std::int32_t q : b.targets) {
      if (q == b.sources[i]) continue;
      double d = b.dist[i][q];
      sum += d == kUnreachable ? (n_i + n_j - 1.0) : d;
    }
    if (sum == 0.0)
      throw DegenerateSum("all cross distances are zero for " +
                          to_string(row.node));
    row.closeness = n_j / sum;
  }

  std::vector<double> betw = betweenness_batch(net, layer_i, layer_j, opts.tol_rel);
  for (std::size_t i = 0; i < b.sources.size(); ++i)
    result.rows[i].betweenness = betw[i];

  std::vector<char> target_mask(net.node_count(), 0);
  for (std::int32_t q : b.targets) target_mask[q] = 1;
  std::vector<char> source_mask(net.node_count(), 0);
  for (std::int32_t p : b.sources) source_mask[p] = 1;

  parallel_blocks(
      b.sources.size(), opts.jobs, 8, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dist;
        std::vector<std::size_t> affected;
        for (std::size_t vi = begin; vi < end; ++vi) {
          std::int32_t v = b.sources[vi];
          const auto& dv = b.dist[vi];
          affected.clear();
          for (std::size_t i = 0; i < b.sources.size(); ++i) {
            if (i == vi) continue;
            double dpv = dv[b.sources[i]];
            if (dpv == kUnreachable) continue;
            // In single-layer mode v is itself a target, so every source
            // that reaches it loses that pair's term outright.
            if (b.same_layer) {
              affected.push_back(i);
              continue;
            }
            const auto& dp = b.dist[i];
            for (std::int32_t q : b.targets) {
              if (q == v || dv[q] == kUnreachable) continue;
              if (dpv + dv[q] <= dp[q] + on_path_eps(dp[q])) {
                affected.push_back(i);
                break;
              }
            }
          }
          double new_total;
          if (affected.size() <= b.targets.size()) {
            double unchanged = b.total - b.contrib[vi];
            for (std::size_t i : affected) unchanged -= b.contrib[i];
            new_total = unchanged + recompute_sources(net, b, affected, v,
                                                      target_mask,
                                                      b.targets.size(), dist);
          } else {
            new_total = recompute_targets(net, b, v, source_mask,
                                          b.sources.size(), dist);
          }
          double drop = (b.total - new_total) / b.total;
          result.rows[vi].drop = std::clamp(drop, 0.0, 1.0);
        }
      });

  auto t1 = std::chrono::steady_clock::now();
  result.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return result;
}

RankMetric rank_metric_from_string(const std::string& s) {
  if (s == "closeness") return RankMetric::Closeness;
  if (s == "betweenness") return RankMetric::Betweenness;
  if (s == "drop") return RankMetric::Drop;
  throw ParseError("unknown rank metric: " + s);
}

const char* to_string(RankMetric m) {
  switch (m) {
    case RankMetric::Closeness: return "closeness";
    case RankMetric::Betweenness: return "betweenness";
    case RankMetric::Drop: return "drop";
  }
  return "?";
}

std::vector<std::pair<NodeRef, double>> rank_top(const SweepResult& result,
                                                 RankMetric metric,
                                                 std::size_t k) {
  std::vector<std::pair<NodeRef, double>> items;
  items.reserve(result.rows.size());
  for (const auto& row : result.rows) {
    double v = metric == RankMetric::Closeness     ? row.closeness
               : metric == RankMetric::Betweenness ? row.betweenness
                                                   : row.drop;
    items.push_back({row.node, v});
  }
  std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    return l.first < r.first;
  });
  if (items.size() > k) items.resize(k);
  return items;
}

std::vector<double> default_bin_edges() {
  std::vector<double> edges;
  for (int i = 0; i <= 10; ++i) edges.push_back(static_cast<double>(i));
  edges.push_back(100.0);
  return edges;
}

HistogramSpec histogram(const SweepResult& result,
                        const std::vector<double>& bin_edges) {
  if (bin_edges.size() < 2) throw BadBinEdges("need at least two bin edges");
  for (std::size_t i = 1; i < bin_edges.size(); ++i)
    if (!(bin_edges[i] > bin_edges[i - 1]))
      throw BadBinEdges("bin edges must be strictly increasing");
  if (bin_edges.front() > 0.0 || bin_edges.back() < 100.0)
    throw BadBinEdges("bin edges must cover [0, 100]");
  HistogramSpec spec;
  spec.bin_edges = bin_edges;
  spec.counts.assign(bin_edges.size() - 1, 0);
  for (const auto& row : result.rows) {
    double pct = row.drop * 100.0;
    auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), pct);
    std::size_t bin = it == bin_edges.begin()
                          ? 0
                          : static_cast<std::size_t>(it - bin_edges.begin()) - 1;
    if (bin >= spec.counts.size()) bin = spec.counts.size() - 1;  // closed tail
    ++spec.counts[bin];
  }
  return spec;
}

namespace {

double midpoint_median(const std::vector<double>& sorted, std::size_t begin,
                       std::size_t end) {
  std::size_t n = end - begin;
  std::size_t mid = begin + n / 2;
  if (n % 2 == 1) return sorted[mid];
  return 0.5 * (sorted[mid - 1] + sorted[mid]);
}

}  // namespace

std::vector<GroupStats> group_stats(
    const SweepResult& result,
    const std::vector<std::pair<std::string, GroupPredicate>>& groups) {
  std::vector<GroupStats> out;
  for (const auto& [label, pred] : groups) {
    GroupStats gs;
    gs.label = label;
    std::vector<double> values;
    for (const auto& row : result.rows)
      if (pred(row.node)) values.push_back(row.drop * 100.0);
    gs.count = values.size();
    if (values.empty()) {
      gs.empty = true;
      out.push_back(std::move(gs));
      continue;
    }
    std::sort(values.begin(), values.end());
    gs.min = values.front();
    gs.max = values.back();
    gs.median = midpoint_median(values, 0, values.size());
    std::size_t half = values.size() / 2;
    if (half == 0) {
      gs.q1 = gs.q3 = values.front();
    } else {
      gs.q1 = midpoint_median(values, 0, half);
      gs.q3 = midpoint_median(values, values.size() - half, values.size());
    }
    out.push_back(std::move(gs));
  }
  return out;
}

WeightingComparison compare_weightings(const MultilayerNetwork& net,
                                       const LayerId& layer_i,
                                       const LayerId& layer_j,
                                       const VoltagePolicy& k,
                                       std::size_t top_k,
                                       NormalizationScope scope,
                                       const SweepOptions& opts) {
  WeightingComparison cmp;
  MultilayerNetwork unit_net = assign_weights(net, WeightingMode::Unit);
  MultilayerNetwork phys_net = assign_weights(net, WeightingMode::Physical, scope);
  SweepOptions unit_opts = opts;
  unit_opts.weighting_label = WeightingMode::Unit;
  SweepOptions phys_opts = opts;
  phys_opts.weighting_label = WeightingMode::Physical;
  cmp.unit = removal_sweep(unit_net, layer_i, layer_j, k, unit_opts);
  cmp.physical = removal_sweep(phys_net, layer_i, layer_j, k, phys_opts);
  cmp.unit_top = rank_top(cmp.unit, RankMetric::Drop, top_k);
  cmp.physical_top = rank_top(cmp.physical, RankMetric::Drop, top_k);
  std::set<NodeRef> unit_names;
  for (const auto& [ref, value] : cmp.unit_top) unit_names.insert(ref);
  for (const auto& [ref, value] : cmp.physical_top)
    cmp.overlap += unit_names.count(ref);
  return cmp;
}

}  // namespace tdc
