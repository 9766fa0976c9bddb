#include "tdc/weighting.hpp"

#include <cmath>
#include <map>

namespace tdc {

WeightingMode weighting_mode_from_string(const std::string& s) {
  if (s == "physical") return WeightingMode::Physical;
  if (s == "unit") return WeightingMode::Unit;
  throw ParseError("unknown weighting mode: " + s);
}

const char* to_string(WeightingMode m) {
  return m == WeightingMode::Physical ? "physical" : "unit";
}

NormalizationScope normalization_scope_from_string(const std::string& s) {
  if (s == "per-layer") return NormalizationScope::PerLayer;
  if (s == "global") return NormalizationScope::Global;
  throw ParseError("unknown normalization scope: " + s);
}

const char* to_string(NormalizationScope s) {
  return s == NormalizationScope::PerLayer ? "per-layer" : "global";
}

double impedance_magnitude(double r, double x) {
  if (!std::isfinite(r) || !std::isfinite(x))
    throw NonFiniteInput("impedance components must be finite");
  return std::hypot(r, x);
}

MultilayerNetwork assign_weights(const MultilayerNetwork& net,
                                 WeightingMode mode,
                                 NormalizationScope scope) {
  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  nodes.reserve(net.node_count());
  for (std::size_t i = 0; i < net.node_count(); ++i)
    nodes.push_back({net.node_refs()[i], net.node_attrs()[i]});

  std::vector<EdgeRecord> edges = net.edges();

  if (mode == WeightingMode::Unit) {
    for (auto& e : edges)
      e.weight = e.kind == EdgeKind::Inter ? 0.0 : 1.0;
    return MultilayerNetwork::build(nodes, edges);
  }

  // A layer is impedance-weighted iff any of its intra edges carries (r, x);
  // in that case all of them must.
  std::map<LayerId, bool> has_impedance;
  for (const auto& e : edges)
    if (e.kind == EdgeKind::Intra && e.resistance && e.reactance)
      has_impedance[e.a.layer] = true;
  for (const auto& e : edges) {
    if (e.kind != EdgeKind::Intra) continue;
    if (has_impedance.count(e.a.layer) && !(e.resistance && e.reactance))
      throw MissingImpedance("edge " + to_string(e.a) + " -- " + to_string(e.b) +
                             " lacks impedance in impedance-weighted layer " +
                             e.a.layer.name);
  }

  // Mean |Z| per normalization population.
  std::map<LayerId, std::pair<double, std::size_t>> layer_sums;
  double global_sum = 0.0;
  std::size_t global_count = 0;
  for (const auto& e : edges) {
    if (e.kind != EdgeKind::Intra || !has_impedance.count(e.a.layer)) continue;
    double z = impedance_magnitude(*e.resistance, *e.reactance);
    auto& [sum, count] = layer_sums[e.a.layer];
    sum += z;
    ++count;
    global_sum += z;
    ++global_count;
  }

  auto mean_for = [&](const LayerId& layer) {
    double sum;
    std::size_t count;
    if (scope == NormalizationScope::Global) {
      sum = global_sum;
      count = global_count;
    } else {
      std::tie(sum, count) = layer_sums.at(layer);
    }
    double mean = sum / static_cast<double>(count);
    if (mean <= 0.0)
      throw ZeroMeanImpedance("all impedances are zero in layer " + layer.name);
    return mean;
  };

  for (auto& e : edges) {
    if (e.kind == EdgeKind::Inter) {
      e.weight = 0.0;
    } else if (has_impedance.count(e.a.layer)) {
      double z = impedance_magnitude(*e.resistance, *e.reactance);
      e.weight = z / mean_for(e.a.layer);
    } else {
      e.weight = 1.0;
    }
  }
  return MultilayerNetwork::build(nodes, edges);
}

}  // namespace tdc
