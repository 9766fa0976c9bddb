#pragma once

#include <map>

#include "tdc/model.hpp"
#include "tdc/paths.hpp"

namespace tdc {

struct DegreePmf {
  std::map<int, double> bins;  // degree -> probability mass
  std::size_t n = 0;
  double k_avg = 0.0;
  int k_max = 0;
};

// Empirical PMF of intra-layer degree over the given network's nodes.
// Pass a layer_subgraph() to get per-layer figures.
DegreePmf degree_pmf(const MultilayerNetwork& net);

// E(G) = mean over ordered distinct pairs of 1/d_ij; unreachable pairs
// contribute 0, zero-distance pairs are excluded from the sum.
double network_efficiency(const MultilayerNetwork& net);

// Eq-style cross-closeness of node p toward target_layer: N_j / sum(d_pq),
// with unreachable pairs contributing N_i + N_j - 1.
double cross_closeness(const MultilayerNetwork& net, const NodeRef& p,
                       const LayerId& target_layer);

// Per-node voltage coefficient: nominal voltage for power nodes, a
// configurable constant for communication nodes, with optional overrides.
struct VoltagePolicy {
  double comm_k = 1.0;
  std::map<NodeRef, double> overrides;

  double k_for(const MultilayerNetwork& net, std::int32_t idx) const;
};

// Batch cross-betweenness for every v in layer_i, summed over pairs
// (p in V_i, q in V_j, p != v != q) of the fraction of shortest p-q paths
// with v strictly interior. Result is aligned with layer_nodes(layer_i).
std::vector<double> cross_betweenness(const MultilayerNetwork& net,
                                      const LayerId& layer_i,
                                      const LayerId& layer_j,
                                      double tol_rel = kDefaultTolRel);

// Internal variant that also permits layer_i == layer_j (classic
// within-layer betweenness over ordered pairs); used by the sweep's
// single-layer comparison mode.
std::vector<double> betweenness_batch(const MultilayerNetwork& net,
                                      const LayerId& layer_i,
                                      const LayerId& layer_j,
                                      double tol_rel = kDefaultTolRel);

// E = sum over pairs (p in V_i, q in V_j, 0 < d < inf) of k_p / d_pq,
// normalized by N_i * N_j * mean(k). With layer_i == layer_j the sum runs
// over ordered distinct pairs and the normalization is N (N - 1) * mean(k).
double cross_efficiency(const MultilayerNetwork& net, const LayerId& layer_i,
                        const LayerId& layer_j, const VoltagePolicy& k);

// (E_G - E_G(V - v)) / E_G with the original normalization retained after
// removal; always in [0, 1].
double efficiency_drop(const MultilayerNetwork& net, const NodeRef& v,
                       const LayerId& layer_i, const LayerId& layer_j,
                       const VoltagePolicy& k);

}  // namespace tdc
