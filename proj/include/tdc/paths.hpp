#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "tdc/model.hpp"

namespace tdc {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultTolRel = 1e-9;

struct DistanceMap {
  std::int32_t source = -1;
  std::vector<double> dist;  // indexed by node index; kUnreachable sentinel
};

struct PathCounts {
  std::int32_t source = -1;
  std::vector<double> sigma;  // 0 for unreachable nodes
};

// Connected components of the zero-weight edge subgraph. Every multi-node
// component is an equal-distance plateau from any source that reaches it;
// shortest-path counts through a plateau are well defined only when the
// component is acyclic.
struct ZeroPlateaus {
  std::vector<std::int32_t> comp;                  // node -> component id
  std::vector<std::vector<std::int32_t>> members;  // component id -> nodes
  std::vector<bool> cyclic;                        // component id -> has cycle
  std::vector<std::vector<std::int32_t>> zero_adj; // zero-weight neighbors
                                                   // (multi-node comps only)
};

ZeroPlateaus zero_plateaus(const MultilayerNetwork& net,
                           std::int32_t excluded = -1);

// Exact nonnegative-weight single-source distances over the supra-graph.
// excluded >= 0 computes on the removal view of that node. If stop_targets
// is given, the search may stop once all reachable targets are settled;
// distances of other nodes are then lower bounds and must not be read.
void dijkstra(const MultilayerNetwork& net, std::int32_t source,
              std::int32_t excluded, std::vector<double>& dist,
              const std::vector<char>* stop_targets = nullptr,
              std::size_t target_count = 0);

DistanceMap shortest_from(const MultilayerNetwork& net, const NodeRef& source);
DistanceMap shortest_from(const RemovalView& view, const NodeRef& source);

// Distances plus shortest-path counts. Two lengths are equal when
// |len1 - len2| <= tol_rel * max(1, len1). Throws AmbiguousZeroCycle when a
// reachable zero-weight cycle makes counts unbounded.
std::pair<DistanceMap, PathCounts> count_shortest(const MultilayerNetwork& net,
                                                  const NodeRef& source,
                                                  double tol_rel = kDefaultTolRel);
std::pair<DistanceMap, PathCounts> count_shortest(const RemovalView& view,
                                                  const NodeRef& source,
                                                  double tol_rel = kDefaultTolRel);

// Brandes-style dependency accumulation for one source: adds to accum[v],
// for every v != source, the sum over reachable targets q (q != v, q != source)
// of sigma_pq(v) / sigma_pq. Plateau-aware; same tolerance semantics as
// count_shortest.
void accumulate_dependencies(const MultilayerNetwork& net, std::int32_t source,
                             const std::vector<char>& is_target,
                             const ZeroPlateaus& plateaus, double tol_rel,
                             std::vector<double>& accum);

// Entry (p, q) = supra-graph shortest distance from p in from_layer to q in
// to_layer; rows and columns follow the layers' canonical node order.
std::vector<std::vector<double>> cross_distances(const MultilayerNetwork& net,
                                                 const LayerId& from_layer,
                                                 const LayerId& to_layer);

}  // namespace tdc
