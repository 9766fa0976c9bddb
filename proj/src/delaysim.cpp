#include "tdc/delaysim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tdc/parallel.hpp"
#include "tdc/rng.hpp"

namespace tdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kNoRoute = -1;

// Layer-local routing graph: node ids are positions in the canonical layer
// node order, edges are the layer's intra edges.
struct RoutingGraph {
  std::vector<std::int32_t> nodes;  // local id -> network index
  std::vector<std::vector<int>> adj;

  std::size_t size() const { return nodes.size(); }
  std::size_t pair_count() const { return size() * (size() - 1) / 2; }
  // Flat index of pair (i, j), i < j, matching nested-loop order.
  std::size_t pair_index(std::size_t i, std::size_t j) const {
    return i * size() - i * (i + 1) / 2 + (j - i - 1);
  }
};

RoutingGraph routing_graph(const MultilayerNetwork& net, const LayerId& layer) {
  RoutingGraph g;
  g.nodes = net.layer_nodes(layer);
  std::vector<int> local(net.node_count(), -1);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) local[g.nodes[i]] = i;
  g.adj.resize(g.nodes.size());
  for (const auto& e : net.edges()) {
    if (e.kind != EdgeKind::Intra || e.a.layer != layer) continue;
    int a = local[net.require_index(e.a)];
    int b = local[net.require_index(e.b)];
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  return g;
}

// Hop counts from `source` to every local node, skipping `excluded`.
void bfs_hops(const RoutingGraph& g, int source, int excluded,
              std::vector<int>& hops) {
  hops.assign(g.size(), kNoRoute);
  if (source == excluded) return;
  hops[source] = 0;
  std::queue<int> frontier;
  frontier.push(source);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int nb : g.adj[v]) {
      if (nb == excluded || hops[nb] != kNoRoute) continue;
      hops[nb] = hops[v] + 1;
      frontier.push(nb);
    }
  }
}

double midpoint_median(std::vector<double>& vals) {
  std::sort(vals.begin(), vals.end());
  std::size_t n = vals.size();
  if (n % 2 == 1) return vals[n / 2];
  return 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

// Per-pair delay median for a route of `hops` hops. The per-trial stream is
// consumed in hop order: a route sharing a prefix length reuses the same
// draws, so growing the hop count can only add positive terms.
double pair_median(std::uint64_t pair_seed, int hops, const DelayModel& m) {
  std::vector<double> vals(m.trials);
  for (int t = 0; t < m.trials; ++t) {
    Rng stream(pair_seed + static_cast<std::uint64_t>(t));
    double sum = hops;
    for (int k = 0; k < hops; ++k)
      sum += stream.next_double() * m.jitter_fraction;
    vals[t] = sum * m.per_hop_base_ms;
  }
  return midpoint_median(vals);
}

std::uint64_t pair_seed_of(const DelayModel& m, const NodeRef& a,
                           const NodeRef& b) {
  return derive_seed(m.rng_seed, "delay:" + a.name + "," + b.name);
}

struct BaselineData {
  std::vector<int> hops;            // per pair, kNoRoute if unreachable
  std::vector<double> medians;      // per pair, only valid where reachable
  std::vector<std::uint64_t> seeds; // per pair
};

BaselineData compute_pairs(const RoutingGraph& g, const MultilayerNetwork& net,
                           const DelayModel& model) {
  BaselineData data;
  std::size_t n_pairs = g.pair_count();
  data.hops.assign(n_pairs, kNoRoute);
  data.medians.assign(n_pairs, 0.0);
  data.seeds.resize(n_pairs);
  std::vector<int> hops;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bfs_hops(g, i, -1, hops);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      std::size_t p = g.pair_index(i, j);
      data.seeds[p] = pair_seed_of(model, net.ref_of(g.nodes[i]),
                                   net.ref_of(g.nodes[j]));
      data.hops[p] = hops[j];
      if (hops[j] != kNoRoute)
        data.medians[p] = pair_median(data.seeds[p], hops[j], model);
    }
  }
  return data;
}

}  // namespace

void DelayModel::validate() const {
  if (!(per_hop_base_ms > 0.0) || !std::isfinite(per_hop_base_ms))
    throw Error("per-hop base delay must be a positive real");
  if (!(jitter_fraction >= 0.0 && jitter_fraction < 1.0))
    throw Error("jitter fraction must lie in [0, 1)");
  if (trials < 1) throw Error("trial count must be at least 1");
}

DelayBaseline simulate_delays(const MultilayerNetwork& net,
                              const LayerId& layer, const DelayModel& model) {
  model.validate();
  RoutingGraph g = routing_graph(net, layer);
  if (g.size() < 2) throw NoReachablePairs("layer " + layer.name +
                                           " has fewer than two nodes");
  BaselineData data = compute_pairs(g, net, model);

  DelayBaseline result;
  std::vector<double> medians;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      std::size_t p = g.pair_index(i, j);
      if (data.hops[p] == kNoRoute) {
        ++result.unreachable_pairs;
        continue;
      }
      ++result.reachable_pairs;
      medians.push_back(data.medians[p]);
      result.pairs.push_back({net.ref_of(g.nodes[i]), net.ref_of(g.nodes[j]),
                              static_cast<std::size_t>(data.hops[p]),
                              data.medians[p]});
    }
  if (medians.empty())
    throw NoReachablePairs("no reachable pair in layer " + layer.name);
  result.median_ms = midpoint_median(medians);
  return result;
}

DelayReport delay_impact_sweep(const MultilayerNetwork& net,
                               const LayerId& layer, const DelayModel& model,
                               unsigned jobs) {
  model.validate();
  RoutingGraph g = routing_graph(net, layer);
  if (g.size() < 2) throw NoReachablePairs("layer " + layer.name +
                                           " has fewer than two nodes");
  BaselineData base = compute_pairs(g, net, model);

  std::vector<double> base_medians;
  for (std::size_t p = 0; p < base.hops.size(); ++p)
    if (base.hops[p] != kNoRoute) base_medians.push_back(base.medians[p]);
  if (base_medians.empty())
    throw NoReachablePairs("no reachable pair in layer " + layer.name);

  DelayReport report;
  report.baseline_median_ms = midpoint_median(base_medians);
  report.rows.resize(g.size());

  parallel_blocks(g.size(), jobs, 4, [&](std::size_t lo, std::size_t hi) {
    std::vector<int> hops;
    std::vector<double> medians;
    for (std::size_t v = lo; v < hi; ++v) {
      DelayImpactRow row;
      row.node = net.ref_of(g.nodes[v]);
      medians.clear();
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == v) continue;
        bfs_hops(g, i, static_cast<int>(v), hops);
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          if (j == v) continue;
          std::size_t p = g.pair_index(i, j);
          if (base.hops[p] == kNoRoute) continue;  // was already unreachable
          if (hops[j] == kNoRoute) {
            ++row.newly_unreachable;
          } else if (hops[j] == base.hops[p]) {
            medians.push_back(base.medians[p]);  // route length unchanged
          } else {
            medians.push_back(pair_median(base.seeds[p], hops[j], model));
          }
        }
      }
      if (medians.empty()) {
        row.removed_median_ms = kInf;
        row.delta_ms = kInf;
      } else {
        row.removed_median_ms = midpoint_median(medians);
        row.delta_ms = row.removed_median_ms - report.baseline_median_ms;
      }
      report.rows[v] = row;
    }
  });

  std::sort(report.rows.begin(), report.rows.end(),
            [](const DelayImpactRow& a, const DelayImpactRow& b) {
              if (a.delta_ms != b.delta_ms) return a.delta_ms > b.delta_ms;
              if (a.newly_unreachable != b.newly_unreachable)
                return a.newly_unreachable > b.newly_unreachable;
              return a.node < b.node;
            });
  return report;
}

}  // namespace tdc
