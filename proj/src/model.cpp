#include "tdc/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tdc {

using json = nlohmann::ordered_json;

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Substation: return "substation";
    case NodeKind::FeederNode: return "feeder_node";
    case NodeKind::Der: return "der";
    case NodeKind::Comm: return "comm";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "substation") return NodeKind::Substation;
  if (s == "feeder_node") return NodeKind::FeederNode;
  if (s == "der") return NodeKind::Der;
  if (s == "comm") return NodeKind::Comm;
  throw ParseError("unknown node kind: " + s);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// -1, 0, +1 for one dotted segment.
int compare_segment(std::string_view a, std::string_view b) {
  if (all_digits(a) && all_digits(b) && a.size() <= 18 && b.size() <= 18) {
    std::string_view sa = a.substr(std::min(a.find_first_not_of('0'), a.size() - 1));
    std::string_view sb = b.substr(std::min(b.find_first_not_of('0'), b.size() - 1));
    if (sa.size() != sb.size()) return sa.size() < sb.size() ? -1 : 1;
    if (int c = sa.compare(sb); c != 0) return c < 0 ? -1 : 1;
  }
  if (int c = a.compare(b); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

std::vector<std::string_view> split_dots(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t dot = s.find('.', pos);
    if (dot == std::string_view::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, dot - pos));
    pos = dot + 1;
  }
  return parts;
}

// Feeder indices print inconsistently in source data ("65.02" vs "65.046");
// canonical form zero-pads the index to three digits.
std::string normalize_name(const std::string& name) {
  auto parts = split_dots(name);
  if (parts.size() == 2 && all_digits(parts[0]) && all_digits(parts[1]) &&
      parts[1].size() <= 3) {
    std::string idx(parts[1]);
    while (idx.size() < 3) idx.insert(idx.begin(), '0');
    return std::string(parts[0]) + "." + idx;
  }
  return name;
}

void check_name(const std::string& name) {
  if (name.empty()) throw BadName("empty node name");
  for (char c : name)
    if (c == ',' || c == '"' || std::isspace(static_cast<unsigned char>(c)))
      throw BadName("node name contains separator or whitespace: '" + name + "'");
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  auto pa = split_dots(a);
  auto pb = split_dots(b);
  for (std::size_t i = 0; i < std::min(pa.size(), pb.size()); ++i) {
    int c = compare_segment(pa[i], pb[i]);
    if (c != 0) return c < 0;
  }
  return pa.size() < pb.size();
}

std::string to_string(const NodeRef& ref) {
  return ref.layer.name + ":" + ref.name;
}

MultilayerNetwork MultilayerNetwork::build(
    const std::vector<std::pair<NodeRef, NodeAttrs>>& nodes,
    const std::vector<EdgeRecord>& edges) {
  MultilayerNetwork net;
  std::vector<std::pair<NodeRef, NodeAttrs>> sorted_nodes;
  sorted_nodes.reserve(nodes.size());
  for (const auto& [ref, attrs] : nodes) {
    if (ref.layer.name.empty()) throw BadName("empty layer id");
    check_name(ref.name);
    sorted_nodes.push_back({{ref.layer, normalize_name(ref.name)}, attrs});
  }
  std::sort(sorted_nodes.begin(), sorted_nodes.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 0; i + 1 < sorted_nodes.size(); ++i)
    if (sorted_nodes[i].first == sorted_nodes[i + 1].first)
      throw DuplicateNode("duplicate node " + to_string(sorted_nodes[i].first));

  for (auto& [ref, attrs] : sorted_nodes) {
    net.refs_.push_back(ref);
    net.attrs_.push_back(attrs);
  }

  net.edges_.reserve(edges.size());
  for (EdgeRecord e : edges) {
    e.a.name = normalize_name(e.a.name);
    e.b.name = normalize_name(e.b.name);
    if (e.a == e.b) throw SelfLoop("self loop at " + to_string(e.a));
    if (e.b < e.a) std::swap(e.a, e.b);
    e.kind = e.a.layer == e.b.layer ? EdgeKind::Intra : EdgeKind::Inter;
    if (!std::isfinite(e.weight) || e.weight < 0.0)
      throw NegativeWeight("bad weight on edge " + to_string(e.a) + " -- " +
                           to_string(e.b));
    net.edges_.push_back(std::move(e));
  }
  std::sort(net.edges_.begin(), net.edges_.end(),
            [](const EdgeRecord& l, const EdgeRecord& r) {
              if (!(l.a == r.a)) return l.a < r.a;
              return l.b < r.b;
            });
  for (std::size_t i = 0; i + 1 < net.edges_.size(); ++i)
    if (net.edges_[i].a == net.edges_[i + 1].a &&
        net.edges_[i].b == net.edges_[i + 1].b)
      throw DuplicateEdge("parallel edge " + to_string(net.edges_[i].a) +
                          " -- " + to_string(net.edges_[i].b));

  net.index();
  return net;
}

void MultilayerNetwork::index() {
  node_index_.clear();
  layer_nodes_.clear();
  layer_edge_counts_.clear();
  layers_.clear();
  node_layer_idx_.assign(refs_.size(), -1);
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    node_index_[refs_[i]] = static_cast<std::int32_t>(i);
    layer_nodes_[refs_[i].layer].push_back(static_cast<std::int32_t>(i));
  }
  for (const auto& [layer, ids] : layer_nodes_) layers_.push_back(layer);
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    auto it = std::lower_bound(layers_.begin(), layers_.end(), refs_[i].layer);
    node_layer_idx_[i] = static_cast<std::int32_t>(it - layers_.begin());
  }

  std::vector<std::size_t> deg(refs_.size(), 0);
  for (const auto& e : edges_) {
    auto ia = node_index_.find(e.a);
    auto ib = node_index_.find(e.b);
    if (ia == node_index_.end())
      throw DanglingEdge("edge endpoint not in node set: " + to_string(e.a));
    if (ib == node_index_.end())
      throw DanglingEdge("edge endpoint not in node set: " + to_string(e.b));
    ++deg[ia->second];
    ++deg[ib->second];
    if (e.kind == EdgeKind::Intra) ++layer_edge_counts_[e.a.layer];
  }
  adj_off_.assign(refs_.size() + 1, 0);
  for (std::size_t i = 0; i < refs_.size(); ++i)
    adj_off_[i + 1] = adj_off_[i] + deg[i];
  adj_.assign(adj_off_.back(), Neighbor{});
  std::vector<std::size_t> fill(adj_off_.begin(), adj_off_.end() - 1);
  for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
    const auto& e = edges_[ei];
    std::int32_t ia = node_index_[e.a];
    std::int32_t ib = node_index_[e.b];
    adj_[fill[ia]++] = {ib, e.weight, static_cast<std::int32_t>(ei)};
    adj_[fill[ib]++] = {ia, e.weight, static_cast<std::int32_t>(ei)};
  }
}

bool MultilayerNetwork::has_layer(const LayerId& layer) const {
  return layer_nodes_.count(layer) > 0;
}

bool MultilayerNetwork::has_node(const NodeRef& ref) const {
  return index_of(ref) >= 0;
}

std::int32_t MultilayerNetwork::index_of(const NodeRef& ref) const {
  NodeRef key{ref.layer, normalize_name(ref.name)};
  auto it = node_index_.find(key);
  return it == node_index_.end() ? -1 : it->second;
}

std::int32_t MultilayerNetwork::require_index(const NodeRef& ref) const {
  std::int32_t i = index_of(ref);
  if (i < 0) throw UnknownNode("unknown node " + to_string(ref));
  return i;
}

const NodeAttrs& MultilayerNetwork::attrs(const NodeRef& ref) const {
  return attrs_[require_index(ref)];
}

std::int32_t MultilayerNetwork::layer_index(const LayerId& layer) const {
  auto it = std::lower_bound(layers_.begin(), layers_.end(), layer);
  if (it == layers_.end() || !(*it == layer))
    throw UnknownLayer("unknown layer " + layer.name);
  return static_cast<std::int32_t>(it - layers_.begin());
}

const std::vector<std::int32_t>& MultilayerNetwork::layer_nodes(
    const LayerId& layer) const {
  auto it = layer_nodes_.find(layer);
  if (it == layer_nodes_.end())
    throw UnknownLayer("unknown layer " + layer.name);
  return it->second;
}

LayerStats MultilayerNetwork::layer_stats(const LayerId& layer) const {
  LayerStats s;
  s.node_count = layer_nodes(layer).size();
  auto it = layer_edge_counts_.find(layer);
  s.edge_count = it == layer_edge_counts_.end() ? 0 : it->second;
  return s;
}

MultilayerNetwork MultilayerNetwork::layer_subgraph(const LayerId& layer) const {
  const auto& ids = layer_nodes(layer);
  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  nodes.reserve(ids.size());
  for (std::int32_t i : ids) nodes.push_back({refs_[i], attrs_[i]});
  std::vector<EdgeRecord> sub_edges;
  for (const auto& e : edges_)
    if (e.kind == EdgeKind::Intra && e.a.layer == layer) sub_edges.push_back(e);
  return build(nodes, sub_edges);
}

RemovalView MultilayerNetwork::removal_view(const NodeRef& v) const {
  return RemovalView(*this, v);
}

std::size_t RemovalView::degree(const NodeRef& ref) const {
  std::int32_t i = base_->index_of(ref);
  if (i < 0 || i == excluded_)
    throw UnknownNode("node not in view: " + to_string(ref));
  std::size_t d = 0;
  for (auto* n = base_->neighbors_begin(i); n != base_->neighbors_end(i); ++n)
    if (n->node != excluded_) ++d;
  return d;
}

std::vector<NodeRef> RemovalView::neighbors(const NodeRef& ref) const {
  std::int32_t i = base_->index_of(ref);
  if (i < 0 || i == excluded_)
    throw UnknownNode("node not in view: " + to_string(ref));
  std::vector<NodeRef> out;
  for (auto* n = base_->neighbors_begin(i); n != base_->neighbors_end(i); ++n)
    if (n->node != excluded_) out.push_back(base_->ref_of(n->node));
  return out;
}

std::string MultilayerNetwork::to_json_string() const {
  json doc;
  json layers = json::array();
  for (const auto& layer : layers_) layers.push_back(layer.name);
  doc["layers"] = std::move(layers);

  json nodes = json::array();
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    json n;
    n["layer"] = refs_[i].layer.name;
    n["name"] = refs_[i].name;
    n["kind"] = to_string(attrs_[i].kind);
    if (attrs_[i].nominal_voltage_kv > 0.0)
      n["voltage_kv"] = attrs_[i].nominal_voltage_kv;
    if (attrs_[i].feeder_id) n["feeder_id"] = *attrs_[i].feeder_id;
    if (attrs_[i].has_feeder) n["has_feeder"] = true;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const auto& e : edges_) {
    json je;
    je["a"] = {{"layer", e.a.layer.name}, {"name", e.a.name}};
    je["b"] = {{"layer", e.b.layer.name}, {"name", e.b.name}};
    if (e.resistance) je["r"] = *e.resistance;
    if (e.reactance) je["x"] = *e.reactance;
    je["weight"] = e.weight;
    edges.push_back(std::move(je));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

MultilayerNetwork MultilayerNetwork::from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& ex) {
    throw ParseError(std::string("invalid network JSON: ") + ex.what());
  }
  try {
    std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
    for (const auto& n : doc.at("nodes")) {
      NodeRef ref{LayerId{n.at("layer").get<std::string>()},
                  n.at("name").get<std::string>()};
      NodeAttrs attrs;
      attrs.kind = node_kind_from_string(n.at("kind").get<std::string>());
      if (n.contains("voltage_kv") && !n["voltage_kv"].is_null())
        attrs.nominal_voltage_kv = n["voltage_kv"].get<double>();
      if (n.contains("feeder_id") && !n["feeder_id"].is_null())
        attrs.feeder_id = n["feeder_id"].get<std::string>();
      if (n.contains("has_feeder") && !n["has_feeder"].is_null())
        attrs.has_feeder = n["has_feeder"].get<bool>();
      nodes.push_back({std::move(ref), std::move(attrs)});
    }
    std::vector<EdgeRecord> edges;
    for (const auto& je : doc.at("edges")) {
      EdgeRecord e;
      e.a = {LayerId{je.at("a").at("layer").get<std::string>()},
             je.at("a").at("name").get<std::string>()};
      e.b = {LayerId{je.at("b").at("layer").get<std::string>()},
             je.at("b").at("name").get<std::string>()};
      if (je.contains("r") && !je["r"].is_null()) e.resistance = je["r"].get<double>();
      if (je.contains("x") && !je["x"].is_null()) e.reactance = je["x"].get<double>();
      e.weight = je.at("weight").get<double>();
      edges.push_back(std::move(e));
    }
    return build(nodes, edges);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad network document: ") + ex.what());
  }
}

void MultilayerNetwork::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << to_json_string();
  if (!out) throw Error("write failed: " + path);
}

MultilayerNetwork MultilayerNetwork::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

}  // namespace tdc
