#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdc/errors.hpp"

namespace tdc {

struct LayerId {
  std::string name;  // canonical: "T", "D", "C"

  bool operator==(const LayerId& o) const = default;
  auto operator<=>(const LayerId& o) const = default;
};

enum class NodeKind { Substation, FeederNode, Der, Comm };

const char* to_string(NodeKind k);
NodeKind node_kind_from_string(const std::string& s);

// Orders dotted names numerically: "7" < "65" < "65.002" < "65.046".
// Falls back to lexicographic comparison for non-numeric segments.
bool natural_less(const std::string& a, const std::string& b);

struct NodeRef {
  LayerId layer;
  std::string name;  // substation "65"; feeder node "65.046"

  bool operator==(const NodeRef& o) const = default;
  bool operator<(const NodeRef& o) const {
    if (layer != o.layer) return layer < o.layer;
    return natural_less(name, o.name);
  }
};

std::string to_string(const NodeRef& ref);

struct NodeAttrs {
  double nominal_voltage_kv = 0.0;  // 0 means unset (comm nodes)
  NodeKind kind = NodeKind::Comm;
  std::optional<std::string> feeder_id;
  bool has_feeder = false;  // meaningful for substations only
};

enum class EdgeKind { Intra, Inter };

struct EdgeRecord {
  NodeRef a;
  NodeRef b;
  EdgeKind kind = EdgeKind::Intra;
  std::optional<double> resistance;
  std::optional<double> reactance;
  double weight = 0.0;
};

struct LayerStats {
  std::size_t node_count = 0;  // N
  std::size_t edge_count = 0;  // L (intra edges only)
};

struct Neighbor {
  std::int32_t node = -1;
  double weight = 0.0;
  std::int32_t edge = -1;  // index into edges()
};

class RemovalView;

// Immutable multilayer snapshot. Nodes are held in canonical (layer, name)
// order; the node index into that order is the identity used by the path and
// metric engines. Edges are normalized (a <= b) and canonically sorted.
class MultilayerNetwork {
 public:
  static MultilayerNetwork build(
      const std::vector<std::pair<NodeRef, NodeAttrs>>& nodes,
      const std::vector<EdgeRecord>& edges);

  std::size_t node_count() const { return refs_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<NodeRef>& node_refs() const { return refs_; }
  const std::vector<NodeAttrs>& node_attrs() const { return attrs_; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  const std::vector<LayerId>& layers() const { return layers_; }

  bool has_layer(const LayerId& layer) const;
  bool has_node(const NodeRef& ref) const;
  std::int32_t index_of(const NodeRef& ref) const;         // -1 if absent
  std::int32_t require_index(const NodeRef& ref) const;    // throws UnknownNode
  const NodeRef& ref_of(std::int32_t idx) const { return refs_[idx]; }
  const NodeAttrs& attrs_of(std::int32_t idx) const { return attrs_[idx]; }
  const NodeAttrs& attrs(const NodeRef& ref) const;

  const LayerId& layer_of(std::int32_t idx) const { return refs_[idx].layer; }
  std::int32_t layer_index_of(std::int32_t node_idx) const {
    return node_layer_idx_[node_idx];
  }
  std::int32_t layer_index(const LayerId& layer) const;  // throws UnknownLayer

  // Node indices of a layer, in canonical order.
  const std::vector<std::int32_t>& layer_nodes(const LayerId& layer) const;
  LayerStats layer_stats(const LayerId& layer) const;

  std::size_t degree(std::int32_t idx) const {
    return adj_off_[idx + 1] - adj_off_[idx];
  }
  std::size_t degree(const NodeRef& ref) const {
    return degree(require_index(ref));
  }
  // Neighbors of a node (all layers, inter edges included).
  const Neighbor* neighbors_begin(std::int32_t idx) const {
    return adj_.data() + adj_off_[idx];
  }
  const Neighbor* neighbors_end(std::int32_t idx) const {
    return adj_.data() + adj_off_[idx + 1];
  }

  MultilayerNetwork layer_subgraph(const LayerId& layer) const;
  RemovalView removal_view(const NodeRef& v) const;

  // Canonical JSON: sorted layers, nodes, edges; stable field set.
  // serialize(parse(s)) is byte-identical to serialize applied to the
  // original network.
  std::string to_json_string() const;
  static MultilayerNetwork from_json_string(const std::string& text);
  void save(const std::string& path) const;
  static MultilayerNetwork load(const std::string& path);

 private:
  MultilayerNetwork() = default;
  void index();

  std::vector<NodeRef> refs_;
  std::vector<NodeAttrs> attrs_;
  std::vector<EdgeRecord> edges_;
  std::vector<LayerId> layers_;
  std::vector<std::int32_t> node_layer_idx_;
  std::map<NodeRef, std::int32_t> node_index_;
  std::map<LayerId, std::vector<std::int32_t>> layer_nodes_;
  std::map<LayerId, std::size_t> layer_edge_counts_;
  std::vector<std::size_t> adj_off_;
  std::vector<Neighbor> adj_;
};

// Read-only exclusion wrapper; behaves as the base network without the
// excluded node and its incident edges. No copy of the graph is made.
class RemovalView {
 public:
  RemovalView(const MultilayerNetwork& base, const NodeRef& excluded)
      : base_(&base), excluded_(base.require_index(excluded)) {}

  const MultilayerNetwork& base() const { return *base_; }
  std::int32_t excluded_index() const { return excluded_; }
  const NodeRef& excluded_ref() const { return base_->ref_of(excluded_); }

  bool has_node(const NodeRef& ref) const {
    std::int32_t i = base_->index_of(ref);
    return i >= 0 && i != excluded_;
  }
  std::size_t node_count() const { return base_->node_count() - 1; }

  std::size_t degree(const NodeRef& ref) const;
  std::vector<NodeRef> neighbors(const NodeRef& ref) const;

 private:
  const MultilayerNetwork* base_;
  std::int32_t excluded_;
};

}  // namespace tdc
