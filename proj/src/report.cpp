#include "tdc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tdc/rng.hpp"
#include "tdc/weighting.hpp"

namespace tdc {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string file_digest_hex(const std::string& path) {
  std::uint64_t h = fnv1a64(read_text_file(path));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

const NodeAttrs& attrs_for(const MultilayerNetwork& net, const NodeRef& ref) {
  return net.attrs_of(net.require_index(ref));
}

void node_columns(std::ostringstream& out, const MultilayerNetwork& net,
                  const NodeRef& ref) {
  const NodeAttrs& a = attrs_for(net, ref);
  out << ref.name << ',' << ref.layer.name << ','
      << fmt_double(a.nominal_voltage_kv) << ',' << (a.has_feeder ? 1 : 0)
      << ',' << (a.kind == NodeKind::Der ? 1 : 0);
}

}  // namespace

std::string sweep_csv(const MultilayerNetwork& net, const SweepResult& result) {
  std::ostringstream out;
  out << "name,layer,voltage_kv,has_feeder,is_der,closeness,betweenness,"
         "drop,drop_pct\n";
  for (const auto& row : result.rows) {
    node_columns(out, net, row.node);
    out << ',' << fmt_double(row.closeness) << ','
        << fmt_double(row.betweenness) << ',' << fmt_double(row.drop) << ','
        << fmt_double(row.drop * 100.0) << '\n';
  }
  return out.str();
}

std::string top_csv(const MultilayerNetwork& net,
                    const std::vector<std::pair<NodeRef, double>>& closeness,
                    const std::vector<std::pair<NodeRef, double>>& betweenness,
                    const std::vector<std::pair<NodeRef, double>>& drop) {
  std::ostringstream out;
  out << "rank,closeness_node,closeness,betweenness_node,betweenness,"
         "drop_node,drop,drop_pct\n";
  std::size_t n = std::max({closeness.size(), betweenness.size(), drop.size()});
  for (std::size_t i = 0; i < n; ++i) {
    out << (i + 1) << ',';
    if (i < closeness.size())
      out << closeness[i].first.name << ',' << fmt_double(closeness[i].second);
    else
      out << ',';
    out << ',';
    if (i < betweenness.size())
      out << betweenness[i].first.name << ','
          << fmt_double(betweenness[i].second);
    else
      out << ',';
    out << ',';
    if (i < drop.size())
      out << drop[i].first.name << ',' << fmt_double(drop[i].second) << ','
          << fmt_double(drop[i].second * 100.0);
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

std::string histogram_csv(const HistogramSpec& hist, std::size_t total) {
  std::ostringstream out;
  out << "bin_lo_pct,bin_hi_pct,count,fraction\n";
  for (std::size_t b = 0; b + 1 < hist.bin_edges.size(); ++b) {
    double frac = total == 0 ? 0.0
                             : static_cast<double>(hist.counts[b]) /
                                   static_cast<double>(total);
    out << fmt_double(hist.bin_edges[b]) << ','
        << fmt_double(hist.bin_edges[b + 1]) << ',' << hist.counts[b] << ','
        << fmt_double(frac) << '\n';
  }
  return out.str();
}

std::string groups_csv(const std::vector<GroupStats>& groups) {
  std::ostringstream out;
  out << "group,count,min_pct,q1_pct,median_pct,q3_pct,max_pct\n";
  for (const auto& g : groups) {
    out << g.label << ',' << g.count;
    if (g.empty) {
      out << ",,,,,\n";
    } else {
      out << ',' << fmt_double(g.min) << ',' << fmt_double(g.q1) << ','
          << fmt_double(g.median) << ',' << fmt_double(g.q3) << ','
          << fmt_double(g.max) << '\n';
    }
  }
  return out.str();
}

std::string props_csv(const MultilayerNetwork& net) {
  std::ostringstream out;
  out << "layer,n,l,k_avg,k_max,efficiency\n";
  for (const auto& layer : net.layers()) {
    LayerStats stats = net.layer_stats(layer);
    if (stats.node_count == 0) {
      out << layer.name << ",0,0,,,\n";
      continue;
    }
    MultilayerNetwork sub = net.layer_subgraph(layer);
    DegreePmf pmf = degree_pmf(sub);
    out << layer.name << ',' << stats.node_count << ',' << stats.edge_count
        << ',' << fmt_double(pmf.k_avg) << ',' << pmf.k_max << ',';
    // Hop-metric efficiency, matching the usual topological convention.
    if (stats.node_count >= 2)
      out << fmt_double(
          network_efficiency(assign_weights(sub, WeightingMode::Unit)));
    out << '\n';
  }
  return out.str();
}

std::string pmf_csv(const MultilayerNetwork& net) {
  std::ostringstream out;
  out << "layer,degree,pmf\n";
  for (const auto& layer : net.layers()) {
    if (net.layer_stats(layer).node_count == 0) continue;
    DegreePmf pmf = degree_pmf(net.layer_subgraph(layer));
    for (const auto& [k, mass] : pmf.bins)
      out << layer.name << ',' << k << ',' << fmt_double(mass) << '\n';
  }
  return out.str();
}

std::string compare_csv(const MultilayerNetwork& net,
                        const WeightingComparison& cmp) {
  std::ostringstream out;
  out << "rank,unit_node,unit_voltage_kv,unit_drop,unit_drop_pct,"
         "physical_node,physical_voltage_kv,physical_drop,"
         "physical_drop_pct\n";
  std::size_t n = std::max(cmp.unit_top.size(), cmp.physical_top.size());
  for (std::size_t i = 0; i < n; ++i) {
    out << (i + 1) << ',';
    if (i < cmp.unit_top.size()) {
      const auto& [node, drop] = cmp.unit_top[i];
      out << node.name << ','
          << fmt_double(attrs_for(net, node).nominal_voltage_kv) << ','
          << fmt_double(drop) << ',' << fmt_double(drop * 100.0);
    } else {
      out << ",,,";
    }
    out << ',';
    if (i < cmp.physical_top.size()) {
      const auto& [node, drop] = cmp.physical_top[i];
      out << node.name << ','
          << fmt_double(attrs_for(net, node).nominal_voltage_kv) << ','
          << fmt_double(drop) << ',' << fmt_double(drop * 100.0);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string delay_csv(const DelayReport& report) {
  std::ostringstream out;
  out << "node,baseline_ms,removed_median_ms,delta_ms,unreachable_pairs\n";
  for (const auto& row : report.rows)
    out << row.node.name << ',' << fmt_double(report.baseline_median_ms) << ','
        << fmt_double(row.removed_median_ms) << ',' << fmt_double(row.delta_ms)
        << ',' << row.newly_unreachable << '\n';
  return out.str();
}

std::string RunManifest::to_json_string() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["tool_version"] = tool_version;
  doc["seed"] = seed;
  doc["jobs"] = jobs;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) doc["config"][key] = value;
  doc["input_digests"] = nlohmann::ordered_json::object();
  for (const auto& [path, digest] : input_digests)
    doc["input_digests"][path] = digest;
  doc["outputs"] = outputs;
  doc["timestamp"] = timestamp;
  return doc.dump(2) + "\n";
}

std::string current_utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace tdc
