#include "tdc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tdc/rng.hpp"

namespace tdc {

using json = nlohmann::json;

namespace {

std::string feeder_node_name(const std::string& substation, int index) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%03d", index);
  return substation + "." + buf;
}

}  // namespace

void FeederTemplate::validate() const {
  if (nodes.empty()) throw ParseError("feeder template '" + id + "' has no nodes");
  std::set<int> indices;
  for (const auto& n : nodes) {
    if (n.index < 1 || n.index > 999)
      throw ParseError("feeder node index out of range in '" + id + "'");
    if (!indices.insert(n.index).second)
      throw ParseError("duplicate feeder node index in '" + id + "'");
  }
  if (!indices.count(root))
    throw ParseError("feeder root " + std::to_string(root) +
                     " not among nodes of '" + id + "'");
  if (edges.size() != nodes.size() - 1)
    throw ParseError("feeder template '" + id + "' is not a tree (L != N - 1)");
  std::map<int, std::vector<int>> adj;
  for (const auto& e : edges) {
    if (!indices.count(e.a) || !indices.count(e.b))
      throw ParseError("feeder edge references unknown node in '" + id + "'");
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::set<int> seen{root};
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int nb : adj[v])
      if (seen.insert(nb).second) stack.push_back(nb);
  }
  if (seen.size() != nodes.size())
    throw ParseError("feeder template '" + id + "' is not connected");
}

FeederTemplate FeederTemplate::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feeder template: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& ex) {
    throw ParseError("invalid feeder template JSON in " + path + ": " +
                     ex.what());
  }
  FeederTemplate tmpl;
  try {
    tmpl.id = doc.at("id").get<std::string>();
    tmpl.root = doc.at("root").get<int>();
    for (const auto& n : doc.at("nodes"))
      tmpl.nodes.push_back({n.at("index").get<int>(),
                            n.value("voltage_kv", 12.47)});
    for (const auto& e : doc.at("edges"))
      tmpl.edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(),
                            e.at("r").get<double>(), e.at("x").get<double>()});
  } catch (const json::exception& ex) {
    throw ParseError("bad feeder template " + path + ": " + ex.what());
  }
  tmpl.validate();
  return tmpl;
}

MultilayerNetwork load_transmission(const std::string& path,
                                    const std::string& t_layer) {
  MultilayerNetwork net = MultilayerNetwork::load(path);
  if (net.layers().size() != 1 || net.layers()[0].name != t_layer)
    throw ParseError("transmission case must contain exactly layer '" +
                     t_layer + "'");
  for (std::size_t i = 0; i < net.node_count(); ++i)
    if (net.node_attrs()[i].nominal_voltage_kv <= 0.0)
      throw MissingVoltage("node " + to_string(net.node_refs()[i]) +
                           " lacks a nominal voltage");
  for (const auto& e : net.edges())
    if (!e.resistance || !e.reactance)
      throw MissingImpedance("branch " + to_string(e.a) + " -- " +
                             to_string(e.b) + " lacks impedance");
  return net;
}

MultilayerNetwork attach_feeders(
    const MultilayerNetwork& net,
    const std::map<std::string, FeederTemplate>& templates,
    const SynthConfig& config) {
  LayerId t_layer{config.t_layer};
  LayerId d_layer{config.d_layer};

  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  for (std::size_t i = 0; i < net.node_count(); ++i)
    nodes.push_back({net.node_refs()[i], net.node_attrs()[i]});
  std::vector<EdgeRecord> edges = net.edges();

  for (const auto& [substation, template_id] : config.feeder_assignments) {
    NodeRef sub_ref{t_layer, substation};
    std::int32_t sub_idx = net.index_of(sub_ref);
    if (sub_idx < 0)
      throw UnknownSubstation("assigned substation " + substation +
                              " is not in the transmission layer");
    if (net.attrs_of(sub_idx).has_feeder)
      throw DuplicateAssignment("substation " + substation +
                                " already has a feeder");
    auto it = templates.find(template_id);
    if (it == templates.end())
      throw ParseError("unknown feeder template '" + template_id + "'");
    const FeederTemplate& tmpl = it->second;
    tmpl.validate();

    for (auto& [ref, attrs] : nodes)
      if (ref == sub_ref) attrs.has_feeder = true;

    for (const auto& n : tmpl.nodes) {
      NodeAttrs attrs;
      attrs.kind = NodeKind::FeederNode;
      attrs.nominal_voltage_kv = n.voltage_kv;
      attrs.feeder_id = substation;
      nodes.push_back({{d_layer, feeder_node_name(substation, n.index)}, attrs});
    }
    for (const auto& e : tmpl.edges) {
      EdgeRecord rec;
      rec.a = {d_layer, feeder_node_name(substation, e.a)};
      rec.b = {d_layer, feeder_node_name(substation, e.b)};
      rec.resistance = e.r;
      rec.reactance = e.x;
      edges.push_back(rec);
    }
    EdgeRecord coupling;
    coupling.a = sub_ref;
    coupling.b = {d_layer, feeder_node_name(substation, tmpl.root)};
    coupling.weight = 0.0;
    edges.push_back(coupling);
  }
  return MultilayerNetwork::build(nodes, edges);
}

MultilayerNetwork place_ders(const MultilayerNetwork& net,
                             const SynthConfig& config) {
  LayerId t_layer{config.t_layer};
  LayerId d_layer{config.d_layer};

  // Feeder root = the D node coupled to the substation by an inter edge.
  std::map<std::string, std::string> root_of;
  for (const auto& e : net.edges()) {
    if (e.kind != EdgeKind::Inter) continue;
    if (e.a.layer == t_layer && e.b.layer == d_layer)
      root_of[e.a.name] = e.b.name;
    else if (e.b.layer == t_layer && e.a.layer == d_layer)
      root_of[e.b.name] = e.a.name;
  }

  std::map<std::string, std::vector<std::string>> feeder_members;
  if (net.has_layer(d_layer))
    for (std::int32_t i : net.layer_nodes(d_layer)) {
      const auto& attrs = net.attrs_of(i);
      if (attrs.feeder_id)
        feeder_members[*attrs.feeder_id].push_back(net.ref_of(i).name);
    }

  std::set<NodeRef> der_nodes;
  for (const auto& [substation, members] : feeder_members) {
    if (config.ders_per_feeder <= 0) continue;
    std::vector<std::string> eligible;
    auto root_it = root_of.find(substation);
    for (const auto& name : members)
      if (root_it == root_of.end() || name != root_it->second)
        eligible.push_back(name);
    if (eligible.size() < static_cast<std::size_t>(config.ders_per_feeder))
      throw TooFewNodes("feeder at substation " + substation +
                        " has too few nodes for " +
                        std::to_string(config.ders_per_feeder) + " DERs");
    Rng rng(derive_seed(config.rng_seed, "ders:" + substation));
    // Partial Fisher-Yates over the canonically ordered member list.
    for (int d = 0; d < config.ders_per_feeder; ++d) {
      std::size_t j = d + rng.next_below(eligible.size() - d);
      std::swap(eligible[d], eligible[j]);
      der_nodes.insert({d_layer, eligible[d]});
    }
  }

  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    NodeAttrs attrs = net.node_attrs()[i];
    if (der_nodes.count(net.node_refs()[i])) attrs.kind = NodeKind::Der;
    nodes.push_back({net.node_refs()[i], attrs});
  }
  return MultilayerNetwork::build(nodes, net.edges());
}

MultilayerNetwork build_comm_layer(const MultilayerNetwork& net,
                                   const SynthConfig& config) {
  LayerId t_layer{config.t_layer};
  LayerId d_layer{config.d_layer};
  LayerId c_layer{config.c_layer};
  if (config.rewire_fraction < 0.0 || config.rewire_fraction > 1.0)
    throw Error("rewire fraction must be within [0, 1]");

  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  for (std::size_t i = 0; i < net.node_count(); ++i)
    nodes.push_back({net.node_refs()[i], net.node_attrs()[i]});
  std::vector<EdgeRecord> edges = net.edges();

  auto add_inter = [&edges](const NodeRef& a, const NodeRef& b) {
    EdgeRecord e;
    e.a = a;
    e.b = b;
    e.weight = 0.0;
    edges.push_back(e);
  };
  auto add_comm_edge = [&edges, &c_layer](const std::string& a,
                                          const std::string& b) {
    EdgeRecord e;
    e.a = {c_layer, a};
    e.b = {c_layer, b};
    e.weight = 1.0;
    edges.push_back(e);
  };

  // Substation mirrors.
  std::vector<std::string> substations;
  for (std::int32_t i : net.layer_nodes(t_layer)) {
    const auto& name = net.ref_of(i).name;
    substations.push_back(name);
    NodeAttrs attrs;
    attrs.kind = NodeKind::Comm;
    attrs.has_feeder = net.attrs_of(i).has_feeder;
    nodes.push_back({{c_layer, name}, attrs});
    add_inter(net.ref_of(i), {c_layer, name});
  }

  // DER mirrors, linked to their substation's mirror.
  if (net.has_layer(d_layer))
    for (std::int32_t i : net.layer_nodes(d_layer)) {
      const auto& attrs = net.attrs_of(i);
      if (attrs.kind != NodeKind::Der) continue;
      const auto& name = net.ref_of(i).name;
      NodeAttrs mirror;
      mirror.kind = NodeKind::Comm;
      mirror.feeder_id = attrs.feeder_id;
      nodes.push_back({{c_layer, name}, mirror});
      add_inter(net.ref_of(i), {c_layer, name});
      if (!attrs.feeder_id)
        throw Error("DER node " + name + " lacks a feeder id");
      add_comm_edge(name, *attrs.feeder_id);
    }

  // Substation connectivity: transmission topology with a fraction of the
  // edges rewired, keeping one endpoint and redrawing the other.
  std::vector<std::pair<std::string, std::string>> comm_edges;
  for (const auto& e : net.edges())
    if (e.kind == EdgeKind::Intra && e.a.layer == t_layer)
      comm_edges.push_back({e.a.name, e.b.name});

  std::map<std::string, std::set<std::string>> adj;
  for (const auto& [a, b] : comm_edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }

  std::size_t n_rewire = static_cast<std::size_t>(
      std::ceil(config.rewire_fraction * static_cast<double>(comm_edges.size())));
  if (n_rewire > 0 && !comm_edges.empty()) {
    Rng rng(derive_seed(config.rng_seed, "rewire"));
    std::vector<std::size_t> ids(comm_edges.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    for (std::size_t d = 0; d < n_rewire; ++d) {
      std::size_t j = d + rng.next_below(ids.size() - d);
      std::swap(ids[d], ids[j]);
    }
    ids.resize(n_rewire);
    std::sort(ids.begin(), ids.end());
    for (std::size_t id : ids) {
      auto& [a, b] = comm_edges[id];
      bool keep_a = rng.next_bool();
      const std::string& kept = keep_a ? a : b;
      const std::string& old_other = keep_a ? b : a;
      constexpr int kMaxRetries = 1000;
      bool done = false;
      for (int attempt = 0; attempt < kMaxRetries && !done; ++attempt) {
        const std::string& cand =
            substations[rng.next_below(substations.size())];
        if (cand == kept || adj[kept].count(cand)) continue;
        adj[kept].erase(old_other);
        adj[old_other].erase(kept);
        adj[kept].insert(cand);
        adj[cand].insert(kept);
        comm_edges[id] = {kept, cand};
        done = true;
      }
      if (!done)
        throw RewireExhausted("no valid reassignment found for edge " + a +
                              " -- " + b);
    }
  }
  for (const auto& [a, b] : comm_edges) add_comm_edge(a, b);

  return MultilayerNetwork::build(nodes, edges);
}

MultilayerNetwork synthesize_testbed(
    const MultilayerNetwork& transmission,
    const std::map<std::string, FeederTemplate>& templates,
    const SynthConfig& config) {
  MultilayerNetwork net = attach_feeders(transmission, templates, config);
  net = place_ders(net, config);
  return build_comm_layer(net, config);
}

}  // namespace tdc
