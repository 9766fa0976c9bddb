#include "tdc/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace tdc {

DegreePmf degree_pmf(const MultilayerNetwork& net) {
  if (net.node_count() == 0) throw EmptyLayer("degree_pmf on empty network");
  DegreePmf pmf;
  pmf.n = net.node_count();
  std::map<int, std::size_t> counts;
  std::size_t intra_edges = 0;
  std::vector<int> deg(net.node_count(), 0);
  for (const auto& e : net.edges()) {
    if (e.kind != EdgeKind::Intra) continue;
    ++deg[net.index_of(e.a)];
    ++deg[net.index_of(e.b)];
    ++intra_edges;
  }
  for (int d : deg) {
    ++counts[d];
    pmf.k_max = std::max(pmf.k_max, d);
  }
  for (const auto& [d, c] : counts)
    pmf.bins[d] = static_cast<double>(c) / static_cast<double>(pmf.n);
  pmf.k_avg = 2.0 * static_cast<double>(intra_edges) / static_cast<double>(pmf.n);
  return pmf;
}

double network_efficiency(const MultilayerNetwork& net) {
  const auto n = net.node_count();
  if (n < 2) throw TooFewNodes("network efficiency needs at least 2 nodes");
  double sum = 0.0;
  std::vector<double> dist;
  for (std::size_t i = 0; i < n; ++i) {
    dijkstra(net, static_cast<std::int32_t>(i), -1, dist);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || dist[j] == kUnreachable || dist[j] == 0.0) continue;
      sum += 1.0 / dist[j];
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double cross_closeness(const MultilayerNetwork& net, const NodeRef& p,
                       const LayerId& target_layer) {
  std::int32_t src = net.require_index(p);
  const auto& targets = net.layer_nodes(target_layer);
  if (targets.empty()) throw EmptyLayer("empty layer " + target_layer.name);
  if (p.layer == target_layer)
    throw InvalidDirection("cross-closeness requires a different target layer");
  const double n_i =
      static_cast<double>(net.layer_nodes(p.layer).size());
  const double n_j = static_cast<double>(targets.size());
  std::vector<double> dist;
  dijkstra(net, src, -1, dist);
  double sum = 0.0;
  for (std::int32_t q : targets)
    sum += dist[q] == kUnreachable ? (n_i + n_j - 1.0) : dist[q];
  if (sum == 0.0)
    throw DegenerateSum("all cross distances are zero for " + to_string(p));
  return n_j / sum;
}

double VoltagePolicy::k_for(const MultilayerNetwork& net,
                            std::int32_t idx) const {
  if (!overrides.empty()) {
    auto it = overrides.find(net.ref_of(idx));
    if (it != overrides.end()) return it->second;
  }
  double v = net.attrs_of(idx).nominal_voltage_kv;
  return v > 0.0 ? v : comm_k;
}

std::vector<double> betweenness_batch(const MultilayerNetwork& net,
                                      const LayerId& layer_i,
                                      const LayerId& layer_j, double tol_rel) {
  const auto& sources = net.layer_nodes(layer_i);
  const auto& targets = net.layer_nodes(layer_j);
  if (sources.empty()) throw EmptyLayer("empty layer " + layer_i.name);
  if (targets.empty()) throw EmptyLayer("empty layer " + layer_j.name);
  std::vector<char> is_target(net.node_count(), 0);
  for (std::int32_t q : targets) is_target[q] = 1;
  ZeroPlateaus zp = zero_plateaus(net);
  std::vector<double> accum(net.node_count(), 0.0);
  for (std::int32_t p : sources)
    accumulate_dependencies(net, p, is_target, zp, tol_rel, accum);
  std::vector<double> out;
  out.reserve(sources.size());
  for (std::int32_t v : sources) out.push_back(accum[v]);
  return out;
}

std::vector<double> cross_betweenness(const MultilayerNetwork& net,
                                      const LayerId& layer_i,
                                      const LayerId& layer_j, double tol_rel) {
  if (layer_i == layer_j)
    throw InvalidDirection("cross-betweenness requires distinct layers");
  return betweenness_batch(net, layer_i, layer_j, tol_rel);
}

namespace {

struct EfficiencyContext {
  std::vector<std::int32_t> sources;  // V_i
  std::vector<std::int32_t> targets;  // V_j
  bool same_layer = false;
  double denom = 0.0;  // N_i * N_j * mean(k), or N (N-1) mean(k)
};

EfficiencyContext efficiency_context(const MultilayerNetwork& net,
                                     const LayerId& layer_i,
                                     const LayerId& layer_j,
                                     const VoltagePolicy& k) {
  EfficiencyContext ctx;
  ctx.sources = net.layer_nodes(layer_i);
  ctx.targets = net.layer_nodes(layer_j);
  ctx.same_layer = layer_i == layer_j;
  if (ctx.sources.empty()) throw EmptyLayer("empty layer " + layer_i.name);
  if (ctx.targets.empty()) throw EmptyLayer("empty layer " + layer_j.name);
  double k_sum = 0.0;
  for (std::int32_t p : ctx.sources) k_sum += k.k_for(net, p);
  double k_mean = k_sum / static_cast<double>(ctx.sources.size());
  double pairs = ctx.same_layer
                     ? static_cast<double>(ctx.sources.size()) *
                           static_cast<double>(ctx.sources.size() - 1)
                     : static_cast<double>(ctx.sources.size()) *
                           static_cast<double>(ctx.targets.size());
  ctx.denom = pairs * k_mean;
  return ctx;
}

double pair_sum(const MultilayerNetwork& net, const EfficiencyContext& ctx,
                const VoltagePolicy& k, std::int32_t excluded) {
  double sum = 0.0;
  std::vector<double> dist;
  for (std::int32_t p : ctx.sources) {
    if (p == excluded) continue;
    double kp = k.k_for(net, p);
    dijkstra(net, p, excluded, dist);
    for (std::int32_t q : ctx.targets) {
      if (q == excluded || q == p) continue;
      double d = dist[q];
      if (d == kUnreachable || d <= 0.0) continue;
      sum += kp / d;
    }
  }
  return sum;
}

}  // namespace

double cross_efficiency(const MultilayerNetwork& net, const LayerId& layer_i,
                        const LayerId& layer_j, const VoltagePolicy& k) {
  EfficiencyContext ctx = efficiency_context(net, layer_i, layer_j, k);
  if (ctx.denom <= 0.0) return 0.0;
  return pair_sum(net, ctx, k, -1) / ctx.denom;
}

double efficiency_drop(const MultilayerNetwork& net, const NodeRef& v,
                       const LayerId& layer_i, const LayerId& layer_j,
                       const VoltagePolicy& k) {
  std::int32_t vi = net.require_index(v);
  if (!(net.ref_of(vi).layer == layer_i))
    throw UnknownNode("node " + to_string(v) + " is not in layer " +
                      layer_i.name);
  EfficiencyContext ctx = efficiency_context(net, layer_i, layer_j, k);
  double base = pair_sum(net, ctx, k, -1);
  if (base <= 0.0)
    throw ZeroBaseEfficiency("cross-efficiency of the intact network is zero");
  double removed = pair_sum(net, ctx, k, vi);
  double drop = (base - removed) / base;
  return std::clamp(drop, 0.0, 1.0);
}

}  // namespace tdc
