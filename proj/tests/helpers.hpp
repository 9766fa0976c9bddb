#pragma once

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tdc/model.hpp"
#include "tdc/paths.hpp"
#include "tdc/rng.hpp"

namespace th {

using tdc::LayerId;
using tdc::MultilayerNetwork;
using tdc::NodeRef;

// Compact builder: nodes as (layer, name), edges as (layer_a, name_a,
// layer_b, name_b, weight).
inline MultilayerNetwork make_net(
    const std::vector<std::pair<std::string, std::string>>& nodes,
    const std::vector<std::tuple<std::string, std::string, std::string,
                                 std::string, double>>& edges) {
  std::vector<std::pair<NodeRef, tdc::NodeAttrs>> ns;
  for (const auto& [layer, name] : nodes)
    ns.push_back({{LayerId{layer}, name}, {}});
  std::vector<tdc::EdgeRecord> es;
  for (const auto& [la, na, lb, nb, w] : edges) {
    tdc::EdgeRecord e;
    e.a = {LayerId{la}, na};
    e.b = {LayerId{lb}, nb};
    e.weight = w;
    es.push_back(e);
  }
  return MultilayerNetwork::build(ns, es);
}

// Random two-layer graph for oracle tests. Weights come from a small fixed
// set; zero weight appears only with `zero_chance` per mille to keep
// zero-weight plateaus present but rare.
inline MultilayerNetwork random_net(tdc::Rng& rng, std::size_t max_nodes,
                                    int zero_chance_pct = 15) {
  std::size_t n = 2 + rng.next_below(max_nodes - 1);
  std::vector<std::pair<std::string, std::string>> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    std::string layer = rng.next_bool() ? "A" : "B";
    nodes.push_back({layer, std::to_string(i + 1)});
  }
  static const double kWeights[] = {0.5, 1.0, 1.0, 2.0};
  std::vector<std::tuple<std::string, std::string, std::string, std::string,
                         double>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.next_below(100) >= 35) continue;
      double w = static_cast<int>(rng.next_below(100)) < zero_chance_pct
                     ? 0.0
                     : kWeights[rng.next_below(4)];
      edges.push_back({nodes[i].first, nodes[i].second, nodes[j].first,
                       nodes[j].second, w});
    }
  return make_net(nodes, edges);
}

// Cubic all-pairs relaxation oracle over the supra-graph, optionally
// excluding one node index.
inline std::vector<std::vector<double>> apsp_oracle(
    const MultilayerNetwork& net, std::int32_t excluded = -1) {
  std::size_t n = net.node_count();
  std::vector<std::vector<double>> d(
      n, std::vector<double>(n, tdc::kUnreachable));
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<std::int32_t>(i) != excluded) d[i][i] = 0.0;
  for (const auto& e : net.edges()) {
    std::int32_t a = net.require_index(e.a);
    std::int32_t b = net.require_index(e.b);
    if (a == excluded || b == excluded) continue;
    d[a][b] = std::min(d[a][b], e.weight);
    d[b][a] = d[a][b];
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == tdc::kUnreachable) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[k][j] != tdc::kUnreachable)
          d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  return d;
}

// Exhaustive simple-path enumeration: returns, for each node, the number of
// minimal-weight simple paths from src that end there, and for each interior
// node the summed fraction-weighted presence. Exponential; small graphs only.
struct PathEnum {
  std::vector<double> best;    // minimal simple-path weight, inf if none
  std::vector<double> sigma;   // count of minimal-weight simple paths
  // dependency[v] = sum over targets q != src, q != v of
  //   (# minimal src-q paths with v interior) / (# minimal src-q paths)
  std::vector<double> dependency;
};

// Prefix property: with nonnegative weights, every prefix of a shortest
// path is itself shortest, so branches whose length exceeds the true
// distance (from the relaxation oracle) can be cut.
inline void enum_paths_rec(const MultilayerNetwork& net, std::int32_t v,
                           double len, const std::vector<double>& dist,
                           std::vector<char>& on_path,
                           std::vector<std::int32_t>& path, PathEnum& out,
                           std::vector<std::vector<std::vector<std::int32_t>>>&
                               minimal_paths,
                           double eps) {
  minimal_paths[v].push_back(path);
  for (auto* nb = net.neighbors_begin(v); nb != net.neighbors_end(v); ++nb) {
    if (on_path[nb->node]) continue;
    double next = len + nb->weight;
    if (dist[nb->node] == tdc::kUnreachable || next > dist[nb->node] + eps)
      continue;
    on_path[nb->node] = 1;
    path.push_back(nb->node);
    enum_paths_rec(net, nb->node, next, dist, on_path, path, out,
                   minimal_paths, eps);
    path.pop_back();
    on_path[nb->node] = 0;
  }
}

// target_mask restricts which endpoints q contribute to dependency[];
// sigma/best always cover every node.
inline PathEnum enumerate_paths(const MultilayerNetwork& net,
                                std::int32_t src,
                                const std::vector<double>& dist,
                                const std::vector<char>* target_mask = nullptr,
                                double eps = 1e-9) {
  std::size_t n = net.node_count();
  PathEnum out;
  out.best = dist;
  out.sigma.assign(n, 0.0);
  out.dependency.assign(n, 0.0);
  std::vector<std::vector<std::vector<std::int32_t>>> minimal_paths(n);
  std::vector<char> on_path(n, 0);
  std::vector<std::int32_t> path{src};
  on_path[src] = 1;
  enum_paths_rec(net, src, 0.0, dist, on_path, path, out, minimal_paths, eps);
  for (std::size_t q = 0; q < n; ++q) {
    out.sigma[q] = static_cast<double>(minimal_paths[q].size());
    if (static_cast<std::int32_t>(q) == src || minimal_paths[q].empty())
      continue;
    if (target_mask && !(*target_mask)[q]) continue;
    for (const auto& p : minimal_paths[q])
      for (std::size_t i = 1; i + 1 < p.size(); ++i)
        out.dependency[p[i]] += 1.0 / out.sigma[q];
  }
  return out;
}

}  // namespace th
