#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdc/model.hpp"

namespace tdc {

// Radial distribution feeder template: a connected tree with per-node
// voltage and per-edge impedance. The root is the substation coupling point.
struct FeederTemplate {
  std::string id;
  struct TemplateNode {
    int index = 0;
    double voltage_kv = 12.47;
  };
  struct TemplateEdge {
    int a = 0;
    int b = 0;
    double r = 0.0;
    double x = 0.0;
  };
  std::vector<TemplateNode> nodes;
  std::vector<TemplateEdge> edges;
  int root = 1;

  void validate() const;  // connected tree, root present, L = N - 1
  static FeederTemplate from_json_file(const std::string& path);
};

struct SynthConfig {
  std::map<std::string, std::string> feeder_assignments;  // substation -> id
  int ders_per_feeder = 3;
  double rewire_fraction = 0.10;
  std::uint64_t rng_seed = 0;
  std::string t_layer = "T";
  std::string d_layer = "D";
  std::string c_layer = "C";
};

// Parses a transmission case in the canonical network JSON schema; the file
// must contain exactly the transmission layer with per-node voltage and
// per-edge impedance.
MultilayerNetwork load_transmission(const std::string& path,
                                    const std::string& t_layer = "T");

// One feeder instance per assignment. Feeder nodes are named
// "<substation>.<index zero-padded to 3>"; the feeder root is joined to its
// substation by a zero-weight inter-layer edge.
MultilayerNetwork attach_feeders(
    const MultilayerNetwork& net,
    const std::map<std::string, FeederTemplate>& templates,
    const SynthConfig& config);

// Flags ders_per_feeder distinct non-root nodes per feeder, drawn uniformly
// without replacement from the seeded generator.
MultilayerNetwork place_ders(const MultilayerNetwork& net,
                             const SynthConfig& config);

// Synthesizes the communication layer: one mirror node per substation and
// per DER; substation connectivity copies the transmission topology with
// ceil(rewire_fraction * L_T) edges rewired; DER mirrors link to their
// substation mirrors; all mirrors join their counterparts via zero-weight
// inter-layer edges.
MultilayerNetwork build_comm_layer(const MultilayerNetwork& net,
                                   const SynthConfig& config);

// attach_feeders + place_ders + build_comm_layer. Weights are not assigned;
// run assign_weights on the result.
MultilayerNetwork synthesize_testbed(
    const MultilayerNetwork& transmission,
    const std::map<std::string, FeederTemplate>& templates,
    const SynthConfig& config);

}  // namespace tdc
