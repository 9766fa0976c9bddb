#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdc/delaysim.hpp"
#include "tdc/metrics.hpp"
#include "tdc/model.hpp"
#include "tdc/report.hpp"
#include "tdc/rng.hpp"
#include "tdc/sweep.hpp"
#include "tdc/synth.hpp"
#include "tdc/weighting.hpp"

namespace fs = std::filesystem;
using tdc::LayerId;
using tdc::MultilayerNetwork;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out_dir = ".";
};

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw tdc::IoError("cannot create output directory: " + dir);
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
  return (fs::path(g.out_dir) / name).string();
}

tdc::RunManifest make_manifest(const std::string& command, const GlobalOpts& g,
                               const std::vector<std::string>& inputs) {
  tdc::RunManifest m;
  m.command = command;
  m.tool_version = kVersion;
  m.seed = g.seed;
  m.jobs = g.jobs;
  for (const auto& path : inputs)
    m.input_digests[path] = tdc::file_digest_hex(path);
  m.timestamp = tdc::current_utc_timestamp();
  return m;
}

void emit(tdc::RunManifest& manifest, const GlobalOpts& g,
          const std::string& name, const std::string& content) {
  std::string path = out_path(g, name);
  tdc::write_text_file(path, content);
  manifest.outputs.push_back(name);
}

void write_manifest(const tdc::RunManifest& manifest, const GlobalOpts& g,
                    const std::string& name) {
  tdc::write_text_file(out_path(g, name), manifest.to_json_string());
}

// ---- build ----------------------------------------------------------------

struct BuildOpts {
  std::string transmission;
  std::string config;
  std::string out = "network.json";
  int ders = -1;          // -1: take from config
  double rewire = -1.0;   // <0: take from config
};

void run_build(const GlobalOpts& g, const BuildOpts& opts) {
  std::ifstream in(opts.config, std::ios::binary);
  if (!in) throw tdc::IoError("cannot open config: " + opts.config);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& ex) {
    throw tdc::ParseError("invalid config JSON in " + opts.config + ": " +
                          ex.what());
  }

  tdc::SynthConfig config;
  config.rng_seed = g.seed;
  std::map<std::string, std::string> template_paths;
  try {
    for (const auto& [id, path] : doc.at("templates").items()) {
      fs::path p(path.get<std::string>());
      if (p.is_relative()) p = fs::path(opts.config).parent_path() / p;
      template_paths[id] = p.string();
    }
    for (const auto& [substation, id] : doc.at("feeder_assignments").items())
      config.feeder_assignments[substation] = id.get<std::string>();
    config.ders_per_feeder = doc.value("ders_per_feeder", 3);
    config.rewire_fraction = doc.value("rewire_fraction", 0.10);
  } catch (const nlohmann::json::exception& ex) {
    throw tdc::ParseError("bad config " + opts.config + ": " + ex.what());
  }
  if (opts.ders >= 0) config.ders_per_feeder = opts.ders;
  if (opts.rewire >= 0.0) config.rewire_fraction = opts.rewire;

  std::map<std::string, tdc::FeederTemplate> templates;
  for (const auto& [id, path] : template_paths) {
    templates[id] = tdc::FeederTemplate::from_json_file(path);
    if (templates[id].id != id)
      throw tdc::ParseError("template id mismatch: config says '" + id +
                            "', file says '" + templates[id].id + "'");
  }

  MultilayerNetwork transmission = tdc::load_transmission(opts.transmission);
  MultilayerNetwork net =
      tdc::synthesize_testbed(transmission, templates, config);
  net = tdc::assign_weights(net, tdc::WeightingMode::Physical);

  ensure_out_dir(fs::path(opts.out).parent_path().string().empty()
                     ? "."
                     : fs::path(opts.out).parent_path().string());
  net.save(opts.out);

  std::vector<std::string> inputs{opts.transmission, opts.config};
  for (const auto& [id, path] : template_paths) inputs.push_back(path);
  tdc::RunManifest manifest = make_manifest("build", g, inputs);
  manifest.config["ders_per_feeder"] = std::to_string(config.ders_per_feeder);
  manifest.config["rewire_fraction"] = tdc::fmt_double(config.rewire_fraction);
  manifest.outputs.push_back(opts.out);
  tdc::write_text_file(opts.out + ".manifest.json", manifest.to_json_string());
}

// ---- props ----------------------------------------------------------------

void run_props(const GlobalOpts& g, const std::string& network_path) {
  MultilayerNetwork net = MultilayerNetwork::load(network_path);
  ensure_out_dir(g.out_dir);
  tdc::RunManifest manifest = make_manifest("props", g, {network_path});
  std::string props = tdc::props_csv(net);
  emit(manifest, g, "props.csv", props);
  emit(manifest, g, "pmf.csv", tdc::pmf_csv(net));
  write_manifest(manifest, g, "props_manifest.json");
  std::cout << props;
}

// ---- cross / sweep-all ----------------------------------------------------

struct CrossOpts {
  std::string network;
  std::string from = "T";
  std::string to = "C";
  std::string weighting = "physical";
  std::string normalize = "per-layer";
  double comm_k = 1.0;
  std::size_t top = 10;
};

void sweep_direction(const GlobalOpts& g, const MultilayerNetwork& weighted,
                     const CrossOpts& opts, const LayerId& from,
                     const LayerId& to, const std::string& prefix,
                     tdc::RunManifest& manifest) {
  tdc::VoltagePolicy policy;
  policy.comm_k = opts.comm_k;
  tdc::SweepOptions sweep_opts;
  sweep_opts.jobs = g.jobs;
  sweep_opts.seed = g.seed;
  sweep_opts.weighting_label =
      tdc::weighting_mode_from_string(opts.weighting);

  tdc::SweepResult result = tdc::removal_sweep(weighted, from, to, policy,
                                               sweep_opts);
  emit(manifest, g, prefix + "rows.csv", tdc::sweep_csv(weighted, result));

  tdc::HistogramSpec hist = tdc::histogram(result, tdc::default_bin_edges());
  emit(manifest, g, prefix + "hist.csv",
       tdc::histogram_csv(hist, result.rows.size()));

  std::vector<std::pair<std::string, tdc::GroupPredicate>> groups{
      {"feeder", [&weighted](const tdc::NodeRef& n) {
         return weighted.attrs(n).has_feeder;
       }},
      {"non_feeder", [&weighted](const tdc::NodeRef& n) {
         return !weighted.attrs(n).has_feeder;
       }}};
  emit(manifest, g, prefix + "groups.csv",
       tdc::groups_csv(tdc::group_stats(result, groups)));

  emit(manifest, g, prefix + "top.csv",
       tdc::top_csv(weighted,
                    tdc::rank_top(result, tdc::RankMetric::Closeness, opts.top),
                    tdc::rank_top(result, tdc::RankMetric::Betweenness,
                                  opts.top),
                    tdc::rank_top(result, tdc::RankMetric::Drop, opts.top)));
}

void run_cross(const GlobalOpts& g, const CrossOpts& opts) {
  if (opts.from == opts.to)
    throw tdc::InvalidDirection("--from and --to must name distinct layers");
  MultilayerNetwork net = MultilayerNetwork::load(opts.network);
  MultilayerNetwork weighted = tdc::assign_weights(
      net, tdc::weighting_mode_from_string(opts.weighting),
      tdc::normalization_scope_from_string(opts.normalize));
  ensure_out_dir(g.out_dir);
  tdc::RunManifest manifest = make_manifest("cross", g, {opts.network});
  manifest.config["from"] = opts.from;
  manifest.config["to"] = opts.to;
  manifest.config["weighting"] = opts.weighting;
  manifest.config["normalize"] = opts.normalize;
  manifest.config["comm_k"] = tdc::fmt_double(opts.comm_k);
  std::string prefix = "cross_" + opts.from + "_" + opts.to + "_";
  sweep_direction(g, weighted, opts, LayerId{opts.from}, LayerId{opts.to},
                  prefix, manifest);
  write_manifest(manifest, g, prefix + "manifest.json");
}

void run_sweep_all(const GlobalOpts& g, const CrossOpts& opts) {
  MultilayerNetwork net = MultilayerNetwork::load(opts.network);
  MultilayerNetwork weighted = tdc::assign_weights(
      net, tdc::weighting_mode_from_string(opts.weighting),
      tdc::normalization_scope_from_string(opts.normalize));
  ensure_out_dir(g.out_dir);
  tdc::RunManifest manifest = make_manifest("sweep-all", g, {opts.network});
  manifest.config["weighting"] = opts.weighting;
  manifest.config["normalize"] = opts.normalize;
  manifest.config["comm_k"] = tdc::fmt_double(opts.comm_k);
  for (const auto& from : weighted.layers())
    for (const auto& to : weighted.layers()) {
      if (from == to) continue;
      std::string prefix = "sweep_" + from.name + "_" + to.name + "_";
      sweep_direction(g, weighted, opts, from, to, prefix, manifest);
    }
  write_manifest(manifest, g, "sweep_all_manifest.json");
}

// ---- compare ---------------------------------------------------------------

struct CompareOpts {
  std::string network;
  std::string from = "T";
  std::string to = "T";  // same layer selects within-layer mode
  std::string normalize = "per-layer";
  double comm_k = 1.0;
  std::size_t top = 10;
};

void run_compare(const GlobalOpts& g, const CompareOpts& opts) {
  MultilayerNetwork net = MultilayerNetwork::load(opts.network);
  tdc::VoltagePolicy policy;
  policy.comm_k = opts.comm_k;
  tdc::SweepOptions sweep_opts;
  sweep_opts.jobs = g.jobs;
  sweep_opts.seed = g.seed;
  tdc::WeightingComparison cmp = tdc::compare_weightings(
      net, LayerId{opts.from}, LayerId{opts.to}, policy, opts.top,
      tdc::normalization_scope_from_string(opts.normalize), sweep_opts);

  ensure_out_dir(g.out_dir);
  tdc::RunManifest manifest = make_manifest("compare", g, {opts.network});
  manifest.config["from"] = opts.from;
  manifest.config["to"] = opts.to;
  manifest.config["normalize"] = opts.normalize;
  manifest.config["comm_k"] = tdc::fmt_double(opts.comm_k);
  manifest.config["top"] = std::to_string(opts.top);
  std::string prefix = "compare_" + opts.from + "_" + opts.to + "_";
  emit(manifest, g, prefix + "top.csv", tdc::compare_csv(net, cmp));
  std::string summary = "overlap,top_k\n" + std::to_string(cmp.overlap) + "," +
                        std::to_string(opts.top) + "\n";
  emit(manifest, g, prefix + "summary.csv", summary);
  write_manifest(manifest, g, prefix + "manifest.json");
}

// ---- delaysim --------------------------------------------------------------

struct DelayOpts {
  std::string network;
  std::string layer = "C";
  double hop_ms = 1.0;
  double jitter = 0.1;
  int trials = 100;
};

void run_delaysim(const GlobalOpts& g, const DelayOpts& opts) {
  MultilayerNetwork net = MultilayerNetwork::load(opts.network);
  tdc::DelayModel model;
  model.per_hop_base_ms = opts.hop_ms;
  model.jitter_fraction = opts.jitter;
  model.trials = opts.trials;
  model.rng_seed = tdc::derive_seed(g.seed, "delaysim");
  tdc::DelayReport report =
      tdc::delay_impact_sweep(net, LayerId{opts.layer}, model, g.jobs);

  ensure_out_dir(g.out_dir);
  tdc::RunManifest manifest = make_manifest("delaysim", g, {opts.network});
  manifest.config["layer"] = opts.layer;
  manifest.config["hop_ms"] = tdc::fmt_double(opts.hop_ms);
  manifest.config["jitter"] = tdc::fmt_double(opts.jitter);
  manifest.config["trials"] = std::to_string(opts.trials);
  emit(manifest, g, "delay.csv", tdc::delay_csv(report));
  write_manifest(manifest, g, "delay_manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilayer transmission/distribution/communication grid "
               "analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Top-level RNG seed");
  app.add_option("--jobs", g.jobs, "Worker thread count");

  BuildOpts build;
  auto* cmd_build = app.add_subcommand("build", "Synthesize the testbed");
  cmd_build->add_option("--transmission", build.transmission,
                        "Transmission case JSON")->required();
  cmd_build->add_option("--config", build.config, "Testbed config JSON")
      ->required();
  cmd_build->add_option("--out", build.out, "Output network JSON");
  cmd_build->add_option("--ders", build.ders, "DERs per feeder (overrides config)");
  cmd_build->add_option("--rewire", build.rewire,
                        "Rewired edge fraction (overrides config)");

  std::string props_network;
  auto* cmd_props = app.add_subcommand("props", "Per-layer property tables");
  cmd_props->add_option("network", props_network, "Network JSON")->required();
  cmd_props->add_option("--out-dir", g.out_dir, "Output directory");

  CrossOpts cross;
  auto* cmd_cross = app.add_subcommand("cross", "Removal sweep for one "
                                                "layer-pair direction");
  cmd_cross->add_option("network", cross.network, "Network JSON")->required();
  cmd_cross->add_option("--from", cross.from, "Source layer")->required();
  cmd_cross->add_option("--to", cross.to, "Target layer")->required();
  cmd_cross->add_option("--weighting", cross.weighting,
                        "physical or unit edge weights");
  cmd_cross->add_option("--normalize", cross.normalize,
                        "per-layer or global impedance normalization");
  cmd_cross->add_option("--comm-k", cross.comm_k,
                        "Voltage coefficient for communication nodes");
  cmd_cross->add_option("--top", cross.top, "Rows in the top-k table");
  cmd_cross->add_option("--out-dir", g.out_dir, "Output directory");

  CrossOpts sweep_all;
  auto* cmd_sweep = app.add_subcommand("sweep-all", "Removal sweeps for all "
                                                    "layer-pair directions");
  cmd_sweep->add_option("network", sweep_all.network, "Network JSON")
      ->required();
  cmd_sweep->add_option("--weighting", sweep_all.weighting,
                        "physical or unit edge weights");
  cmd_sweep->add_option("--normalize", sweep_all.normalize,
                        "per-layer or global impedance normalization");
  cmd_sweep->add_option("--comm-k", sweep_all.comm_k,
                        "Voltage coefficient for communication nodes");
  cmd_sweep->add_option("--top", sweep_all.top, "Rows in the top-k table");
  cmd_sweep->add_option("--out-dir", g.out_dir, "Output directory");

  CompareOpts compare;
  auto* cmd_compare = app.add_subcommand("compare", "Unit vs physical "
                                                    "weighting rankings");
  cmd_compare->add_option("network", compare.network, "Network JSON")
      ->required();
  cmd_compare->add_option("--from", compare.from, "Source layer");
  cmd_compare->add_option("--to", compare.to,
                          "Target layer (same as --from for within-layer)");
  cmd_compare->add_option("--normalize", compare.normalize,
                          "per-layer or global impedance normalization");
  cmd_compare->add_option("--comm-k", compare.comm_k,
                          "Voltage coefficient for communication nodes");
  cmd_compare->add_option("--top", compare.top, "Ranking depth");
  cmd_compare->add_option("--out-dir", g.out_dir, "Output directory");

  DelayOpts delay;
  auto* cmd_delay = app.add_subcommand("delaysim", "Packet-delay proxy sweep");
  cmd_delay->add_option("network", delay.network, "Network JSON")->required();
  cmd_delay->add_option("--layer", delay.layer, "Routing layer");
  cmd_delay->add_option("--hop-ms", delay.hop_ms, "Per-hop base delay (ms)");
  cmd_delay->add_option("--jitter", delay.jitter, "Per-hop jitter fraction");
  cmd_delay->add_option("--trials", delay.trials, "Trials per pair");
  cmd_delay->add_option("--out-dir", g.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
    if (cmd_build->parsed()) run_build(g, build);
    else if (cmd_props->parsed()) run_props(g, props_network);
    else if (cmd_cross->parsed()) run_cross(g, cross);
    else if (cmd_sweep->parsed()) run_sweep_all(g, sweep_all);
    else if (cmd_compare->parsed()) run_compare(g, compare);
    else if (cmd_delay->parsed()) run_delaysim(g, delay);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const tdc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const tdc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
