#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdc/delaysim.hpp"
#include "tdc/metrics.hpp"
#include "tdc/model.hpp"
#include "tdc/sweep.hpp"

namespace tdc {

// Deterministic decimal rendering ("%.12g"); "inf"/"nan" for non-finite.
std::string fmt_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string file_digest_hex(const std::string& path);  // fnv1a64, 16 hex chars

// CSV artifacts. All use '.' decimals, a header row, and carry raw ratios
// next to the "_pct" convenience columns.
std::string sweep_csv(const MultilayerNetwork& net, const SweepResult& result);
std::string top_csv(const MultilayerNetwork& net,
                    const std::vector<std::pair<NodeRef, double>>& closeness,
                    const std::vector<std::pair<NodeRef, double>>& betweenness,
                    const std::vector<std::pair<NodeRef, double>>& drop);
std::string histogram_csv(const HistogramSpec& hist, std::size_t total);
std::string groups_csv(const std::vector<GroupStats>& groups);
std::string props_csv(const MultilayerNetwork& net);
std::string pmf_csv(const MultilayerNetwork& net);
std::string compare_csv(const MultilayerNetwork& net,
                        const WeightingComparison& cmp);
std::string delay_csv(const DelayReport& report);

// Sidecar emitted with every report; records everything needed to repeat
// the run. The timestamp is informational and not part of any byte-level
// reproducibility contract.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::map<std::string, std::string> config;         // flag -> value
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
  std::vector<std::string> outputs;
  std::string timestamp;  // ISO 8601 UTC

  std::string to_json_string() const;
};

std::string current_utc_timestamp();

}  // namespace tdc
