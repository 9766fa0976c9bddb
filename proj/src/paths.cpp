#include "tdc/paths.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace tdc {

namespace {

struct FindUnion {
  std::vector<std::int32_t> parent;
  explicit FindUnion(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::int32_t>(i);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

double tol_abs(double tol_rel, double len) {
  return tol_rel * std::max(1.0, len);
}

}  // namespace

ZeroPlateaus zero_plateaus(const MultilayerNetwork& net, std::int32_t excluded) {
  const auto n = static_cast<std::int32_t>(net.node_count());
  FindUnion fu(n);
  for (const auto& e : net.edges()) {
    if (e.weight != 0.0) continue;
    std::int32_t ia = net.index_of(e.a);
    std::int32_t ib = net.index_of(e.b);
    if (ia == excluded || ib == excluded) continue;
    fu.unite(ia, ib);
  }
  ZeroPlateaus zp;
  zp.comp.assign(n, -1);
  std::vector<std::int32_t> root_to_comp(n, -1);
  for (std::int32_t i = 0; i < n; ++i) {
    std::int32_t r = fu.find(i);
    if (root_to_comp[r] < 0) {
      root_to_comp[r] = static_cast<std::int32_t>(zp.members.size());
      zp.members.emplace_back();
    }
    zp.comp[i] = root_to_comp[r];
    zp.members[zp.comp[i]].push_back(i);
  }
  std::vector<std::size_t> zero_edge_count(zp.members.size(), 0);
  zp.zero_adj.assign(n, {});
  for (const auto& e : net.edges()) {
    if (e.weight != 0.0) continue;
    std::int32_t ia = net.index_of(e.a);
    std::int32_t ib = net.index_of(e.b);
    if (ia == excluded || ib == excluded) continue;
    ++zero_edge_count[zp.comp[ia]];
    zp.zero_adj[ia].push_back(ib);
    zp.zero_adj[ib].push_back(ia);
  }
  zp.cyclic.assign(zp.members.size(), false);
  for (std::size_t c = 0; c < zp.members.size(); ++c)
    zp.cyclic[c] = zero_edge_count[c] >= zp.members[c].size();
  return zp;
}

void dijkstra(const MultilayerNetwork& net, std::int32_t source,
              std::int32_t excluded, std::vector<double>& dist,
              const std::vector<char>* stop_targets, std::size_t target_count) {
  const auto n = net.node_count();
  dist.assign(n, kUnreachable);
  if (source == excluded) return;
  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  std::size_t settled_targets = 0;
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (stop_targets && (*stop_targets)[u]) {
      if (++settled_targets == target_count) return;
    }
    for (auto* nb = net.neighbors_begin(u); nb != net.neighbors_end(u); ++nb) {
      if (nb->node == excluded) continue;
      double nd = d + nb->weight;
      if (nd < dist[nb->node]) {
        dist[nb->node] = nd;
        pq.push({nd, nb->node});
      }
    }
  }
}

DistanceMap shortest_from(const MultilayerNetwork& net, const NodeRef& source) {
  DistanceMap dm;
  dm.source = net.require_index(source);
  dijkstra(net, dm.source, -1, dm.dist);
  return dm;
}

DistanceMap shortest_from(const RemovalView& view, const NodeRef& source) {
  std::int32_t src = view.base().require_index(source);
  if (src == view.excluded_index())
    throw UnknownNode("source is the excluded node: " + to_string(source));
  DistanceMap dm;
  dm.source = src;
  dijkstra(view.base(), src, view.excluded_index(), dm.dist);
  return dm;
}

namespace {

struct SigmaData {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<double> ext;  // path count entering each node from outside
                            // its plateau component
  std::vector<std::int32_t> comp_order;  // reachable components, by distance
};

// Distances, path counts, and plateau bookkeeping for one source.
SigmaData compute_sigma(const MultilayerNetwork& net, std::int32_t source,
                        std::int32_t excluded, const ZeroPlateaus& zp,
                        double tol_rel) {
  const auto n = static_cast<std::int32_t>(net.node_count());
  SigmaData sd;
  dijkstra(net, source, excluded, sd.dist);
  sd.sigma.assign(n, 0.0);
  sd.ext.assign(n, 0.0);

  // Component distance = distance of its members (equal when reachable).
  std::vector<double> comp_dist(zp.members.size(), kUnreachable);
  for (std::int32_t i = 0; i < n; ++i)
    if (sd.dist[i] < kUnreachable)
      comp_dist[zp.comp[i]] = std::min(comp_dist[zp.comp[i]], sd.dist[i]);
  for (std::size_t c = 0; c < zp.members.size(); ++c) {
    if (comp_dist[c] == kUnreachable) continue;
    if (zp.cyclic[c])
      throw AmbiguousZeroCycle(
          "zero-total-weight cycle reachable from source; shortest-path "
          "counts are unbounded");
    sd.comp_order.push_back(static_cast<std::int32_t>(c));
  }
  std::sort(sd.comp_order.begin(), sd.comp_order.end(),
            [&](std::int32_t a, std::int32_t b) {
              if (comp_dist[a] != comp_dist[b]) return comp_dist[a] < comp_dist[b];
              return a < b;
            });

  for (std::int32_t c : sd.comp_order) {
    double total = 0.0;
    for (std::int32_t w : zp.members[c]) {
      if (w == excluded || sd.dist[w] == kUnreachable) continue;
      double entering = 0.0;
      for (auto* nb = net.neighbors_begin(w); nb != net.neighbors_end(w); ++nb) {
        std::int32_t u = nb->node;
        if (u == excluded || zp.comp[u] == c) continue;
        if (sd.dist[u] == kUnreachable || sd.dist[u] >= sd.dist[w]) continue;
        if (std::abs(sd.dist[u] + nb->weight - sd.dist[w]) <=
            tol_abs(tol_rel, sd.dist[w]))
          entering += sd.sigma[u];
      }
      sd.ext[w] = entering;
      total += entering;
    }
    if (sd.dist[source] < kUnreachable && zp.comp[source] == c) total += 1.0;
    for (std::int32_t w : zp.members[c]) {
      if (w == excluded || sd.dist[w] == kUnreachable) continue;
      sd.sigma[w] = total;
    }
  }
  return sd;
}

}  // namespace

std::pair<DistanceMap, PathCounts> count_shortest(const MultilayerNetwork& net,
                                                  const NodeRef& source,
                                                  double tol_rel) {
  if (tol_rel <= 0.0) throw Error("tol_rel must be positive");
  std::int32_t src = net.require_index(source);
  ZeroPlateaus zp = zero_plateaus(net);
  SigmaData sd = compute_sigma(net, src, -1, zp, tol_rel);
  DistanceMap dm{src, std::move(sd.dist)};
  PathCounts pc{src, std::move(sd.sigma)};
  return {std::move(dm), std::move(pc)};
}

std::pair<DistanceMap, PathCounts> count_shortest(const RemovalView& view,
                                                  const NodeRef& source,
                                                  double tol_rel) {
  if (tol_rel <= 0.0) throw Error("tol_rel must be positive");
  std::int32_t src = view.base().require_index(source);
  if (src == view.excluded_index())
    throw UnknownNode("source is the excluded node: " + to_string(source));
  ZeroPlateaus zp = zero_plateaus(view.base(), view.excluded_index());
  SigmaData sd =
      compute_sigma(view.base(), src, view.excluded_index(), zp, tol_rel);
  DistanceMap dm{src, std::move(sd.dist)};
  PathCounts pc{src, std::move(sd.sigma)};
  return {std::move(dm), std::move(pc)};
}

void accumulate_dependencies(const MultilayerNetwork& net, std::int32_t source,
                             const std::vector<char>& is_target,
                             const ZeroPlateaus& zp, double tol_rel,
                             std::vector<double>& accum) {
  SigmaData sd = compute_sigma(net, source, -1, zp, tol_rel);
  const auto& dist = sd.dist;
  const auto& sigma = sd.sigma;

  // phi[w]: dependency credit per shortest path passing through w, as seen
  // by predecessors upstream. delta[w]: total dependency of w.
  std::vector<double> phi(net.node_count(), 0.0);
  std::vector<double> delta(net.node_count(), 0.0);

  auto successor_flow = [&](std::int32_t w) {
    double flow = 0.0;
    for (auto* nb = net.neighbors_begin(w); nb != net.neighbors_end(w); ++nb) {
      std::int32_t z = nb->node;
      if (zp.comp[z] == zp.comp[w]) continue;
      if (dist[z] == kUnreachable || dist[z] <= dist[w]) continue;
      if (std::abs(dist[w] + nb->weight - dist[z]) <= tol_abs(tol_rel, dist[z]))
        flow += phi[z];
    }
    return sigma[w] * flow;
  };

  for (auto it = sd.comp_order.rbegin(); it != sd.comp_order.rend(); ++it) {
    std::int32_t c = *it;
    const auto& members = zp.members[c];
    if (members.size() == 1) {
      std::int32_t w = members[0];
      if (sigma[w] <= 0.0) continue;
      double o = successor_flow(w);
      delta[w] = o;
      phi[w] = (o + (is_target[w] && w != source ? 1.0 : 0.0)) / sigma[w];
      continue;
    }

    // Plateau component (zero-weight tree at equal distance). sigma of every
    // member is the total count S entering the component; a shortest path
    // enters once and follows the unique zero-weight route to its endpoint.
    double total = 0.0;  // S
    for (std::int32_t w : members)
      if (sigma[w] > 0.0) {
        total = sigma[w];
        break;
      }
    if (total <= 0.0) continue;

    double target_count = 0.0;
    std::vector<std::pair<std::int32_t, double>> exits;  // (node, outflow)
    for (std::int32_t w : members) {
      if (sigma[w] <= 0.0) continue;
      if (is_target[w] && w != source) target_count += 1.0;
      double o = successor_flow(w);
      if (o > 0.0) exits.push_back({w, o});
    }
    double exit_sum = 0.0;
    for (const auto& [y, o] : exits) exit_sum += o;
    double g = (target_count + exit_sum) / total;
    for (std::int32_t w : members)
      if (sigma[w] > 0.0) phi[w] = g;

    // Distribute internal credit along the unique tree routes from each
    // entry to each in-component target and each exit.
    std::vector<std::pair<std::int32_t, double>> entries;
    for (std::int32_t w : members)
      if (sd.ext[w] > 0.0) entries.push_back({w, sd.ext[w]});
    if (zp.comp[source] == c && sigma[source] > 0.0)
      entries.push_back({source, 1.0});

    for (const auto& [x, wt] : entries) {
      // Parent pointers toward x over the zero-weight tree.
      std::vector<std::pair<std::int32_t, std::int32_t>> stack{{x, -1}};
      std::vector<std::int32_t> parent_of(members.size(), -1);
      // Map node -> local slot for parents.
      auto local = [&](std::int32_t node) {
        auto pos = std::lower_bound(members.begin(), members.end(), node);
        return static_cast<std::size_t>(pos - members.begin());
      };
      std::vector<std::int32_t> parent(members.size(), -2);
      parent[local(x)] = -1;
      while (!stack.empty()) {
        auto [v, par] = stack.back();
        stack.pop_back();
        for (std::int32_t nb : zp.zero_adj[v]) {
          if (nb == par || parent[local(nb)] != -2) continue;
          parent[local(nb)] = v;
          stack.push_back({nb, v});
        }
      }
      auto credit_path = [&](std::int32_t e, double value, bool skip_endpoint) {
        std::int32_t v = e;
        bool at_endpoint = true;
        while (v != -1) {
          if (!(v == source || (skip_endpoint && at_endpoint)))
            delta[v] += wt * value;
          at_endpoint = false;
          v = parent[local(v)];
        }
      };
      for (std::int32_t e : members) {
        if (sigma[e] <= 0.0) continue;
        if (is_target[e] && e != source) credit_path(e, 1.0 / total, true);
      }
      for (const auto& [y, o] : exits) credit_path(y, o / total, false);
    }
  }

  for (std::size_t v = 0; v < net.node_count(); ++v)
    if (static_cast<std::int32_t>(v) != source) accum[v] += delta[v];
}

std::vector<std::vector<double>> cross_distances(const MultilayerNetwork& net,
                                                 const LayerId& from_layer,
                                                 const LayerId& to_layer) {
  const auto& rows = net.layer_nodes(from_layer);
  const auto& cols = net.layer_nodes(to_layer);
  if (rows.empty()) throw EmptyLayer("empty layer " + from_layer.name);
  if (cols.empty()) throw EmptyLayer("empty layer " + to_layer.name);
  std::vector<std::vector<double>> out(rows.size(),
                                      std::vector<double>(cols.size()));
  std::vector<double> dist;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    dijkstra(net, rows[i], -1, dist);
    for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = dist[cols[j]];
  }
  return out;
}

}  // namespace tdc
