#pragma once

#include <cstdint>
#include <vector>

#include "tdc/model.hpp"

namespace tdc {

// Packet-delay proxy: minimal-hop routing with per-hop multiplicative
// jitter. Deliberately ignores queuing, bandwidth, and protocol behavior.
struct DelayModel {
  double per_hop_base_ms = 1.0;  // > 0
  double jitter_fraction = 0.1;  // in [0, 1)
  int trials = 100;              // >= 1
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct PairDelay {
  NodeRef a;
  NodeRef b;
  std::size_t hops = 0;
  double median_ms = 0.0;  // median over trials (midpoint for even counts)
};

struct DelayBaseline {
  double median_ms = 0.0;  // median over the per-pair medians
  std::size_t reachable_pairs = 0;
  std::size_t unreachable_pairs = 0;
  std::vector<PairDelay> pairs;  // reachable pairs, canonical order
};

struct DelayImpactRow {
  NodeRef node;
  double removed_median_ms = 0.0;  // +inf if no pair stays reachable
  double delta_ms = 0.0;           // removed - baseline; +inf as above
  std::size_t newly_unreachable = 0;
};

struct DelayReport {
  double baseline_median_ms = 0.0;
  std::vector<DelayImpactRow> rows;  // ranked by impact
};

// Median pairwise delivery delay between every two nodes of the layer,
// routing over the layer's intra edges with hop count as the metric.
// Per-hop jitter draws are keyed by (seed, pair, trial) and consumed in hop
// order, so a route that only gains hops can only gain delay.
DelayBaseline simulate_delays(const MultilayerNetwork& net,
                              const LayerId& layer, const DelayModel& model);

// Recomputes the median once per removed node and ranks nodes by
// (delay increase, newly unreachable pair count, name). Pairs that lose
// their last route are excluded from the median and counted separately.
DelayReport delay_impact_sweep(const MultilayerNetwork& net,
                               const LayerId& layer, const DelayModel& model,
                               unsigned jobs = 1);

}  // namespace tdc
