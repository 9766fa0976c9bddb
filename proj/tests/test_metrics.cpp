#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "tdc/metrics.hpp"

using namespace tdc;
using th::make_net;

namespace {

// Rebuild the network without one node; the blunt counterpart of
// RemovalView used as an oracle.
MultilayerNetwork rebuilt_without(const MultilayerNetwork& net,
                                  const NodeRef& v) {
  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  for (std::size_t i = 0; i < net.node_count(); ++i)
    if (net.node_refs()[i] != v)
      nodes.push_back({net.node_refs()[i], net.node_attrs()[i]});
  std::vector<EdgeRecord> edges;
  for (const auto& e : net.edges())
    if (e.a != v && e.b != v) edges.push_back(e);
  return MultilayerNetwork::build(nodes, edges);
}

VoltagePolicy unit_k() { return {}; }

}  // namespace

TEST_CASE("degree pmf basics") {
  auto tri = make_net({{"T", "a"}, {"T", "b"}, {"T", "c"}},
                      {{"T", "a", "T", "b", 1.0}, {"T", "b", "T", "c", 1.0},
                       {"T", "a", "T", "c", 1.0}});
  auto pmf = degree_pmf(tri);
  CHECK(pmf.bins.at(2) == 1.0);
  CHECK(pmf.k_avg == doctest::Approx(2.0));
  CHECK(pmf.k_max == 2);

  auto star = make_net({{"T", "h"}, {"T", "l1"}, {"T", "l2"}, {"T", "l3"},
                        {"T", "l4"}},
                       {{"T", "h", "T", "l1", 1.0}, {"T", "h", "T", "l2", 1.0},
                        {"T", "h", "T", "l3", 1.0}, {"T", "h", "T", "l4", 1.0}});
  auto spmf = degree_pmf(star);
  CHECK(spmf.bins.at(1) == doctest::Approx(0.8));
  CHECK(spmf.bins.at(4) == doctest::Approx(0.2));
  double mass = 0.0;
  for (auto& [k, m] : spmf.bins) mass += m;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("network efficiency basics") {
  auto pair = make_net({{"T", "a"}, {"T", "b"}}, {{"T", "a", "T", "b", 1.0}});
  CHECK(network_efficiency(pair) == doctest::Approx(1.0));
  auto split = make_net({{"T", "a"}, {"T", "b"}}, {});
  CHECK(network_efficiency(split) == 0.0);
  auto one = make_net({{"T", "a"}}, {});
  CHECK_THROWS_AS(network_efficiency(one), TooFewNodes);
}

TEST_CASE("cross-closeness single unit path") {
  // Inter edge deliberately re-weighted to 1 so the only path has length 1.
  auto net = make_net({{"A", "p"}, {"B", "q"}}, {{"A", "p", "B", "q", 1.0}});
  CHECK(cross_closeness(net, {LayerId{"A"}, "p"}, LayerId{"B"}) ==
        doctest::Approx(1.0));
}

TEST_CASE("cross-closeness unreachable upper bound") {
  // N_A = 2, N_B = 2, fully disconnected: every d = 2+2-1 = 3, c = 2/6.
  auto net = make_net({{"A", "1"}, {"A", "2"}, {"B", "1"}, {"B", "2"}}, {});
  CHECK(cross_closeness(net, {LayerId{"A"}, "1"}, LayerId{"B"}) ==
        doctest::Approx(2.0 / 6.0));
}

TEST_CASE("cross-closeness against oracle distances") {
  Rng rng(808);
  for (int g = 0; g < 30; ++g) {
    auto net = th::random_net(rng, 10, 0);
    if (!net.has_layer(LayerId{"A"}) || !net.has_layer(LayerId{"B"}))
      continue;
    auto oracle = th::apsp_oracle(net);
    double n_a = net.layer_nodes(LayerId{"A"}).size();
    double n_b = net.layer_nodes(LayerId{"B"}).size();
    for (std::int32_t p : net.layer_nodes(LayerId{"A"})) {
      double sum = 0.0;
      for (std::int32_t q : net.layer_nodes(LayerId{"B"})) {
        double d = oracle[p][q];
        sum += d == kUnreachable ? (n_a + n_b - 1) : d;
      }
      if (sum == 0.0) continue;
      CHECK(cross_closeness(net, net.ref_of(p), LayerId{"B"}) ==
            doctest::Approx(n_b / sum).epsilon(1e-9));
    }
  }
}

TEST_CASE("cross-closeness rejects same-layer queries and degenerate sums") {
  auto net = make_net({{"A", "p"}, {"B", "q"}}, {{"A", "p", "B", "q", 0.0}});
  CHECK_THROWS_AS(cross_closeness(net, {LayerId{"A"}, "p"}, LayerId{"A"}),
                  InvalidDirection);
  // Only cross distance is 0 (mirror link): the sum degenerates.
  CHECK_THROWS_AS(cross_closeness(net, {LayerId{"A"}, "p"}, LayerId{"B"}),
                  DegenerateSum);
}

TEST_CASE("cross-betweenness: sole mediator") {
  auto net = make_net({{"A", "p"}, {"A", "v"}, {"B", "q"}},
                      {{"A", "p", "A", "v", 1.0}, {"A", "v", "B", "q", 1.0}});
  auto b = cross_betweenness(net, LayerId{"A"}, LayerId{"B"});
  const auto& order = net.layer_nodes(LayerId{"A"});
  for (std::size_t i = 0; i < order.size(); ++i) {
    double want = net.ref_of(order[i]).name == "v" ? 1.0 : 0.0;
    CHECK(b[i] == doctest::Approx(want));
  }
}

TEST_CASE("cross-betweenness: symmetric mediators get half each") {
  auto net = make_net({{"A", "p"}, {"A", "v1"}, {"A", "v2"}, {"B", "q"}},
                      {{"A", "p", "A", "v1", 1.0}, {"A", "p", "A", "v2", 1.0},
                       {"A", "v1", "B", "q", 1.0},
                       {"A", "v2", "B", "q", 1.0}});
  auto b = cross_betweenness(net, LayerId{"A"}, LayerId{"B"});
  const auto& order = net.layer_nodes(LayerId{"A"});
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string& name = net.ref_of(order[i]).name;
    double want = (name == "v1" || name == "v2") ? 0.5 : 0.0;
    CHECK(b[i] == doctest::Approx(want));
  }
}

TEST_CASE("cross-betweenness against the enumeration oracle") {
  Rng rng(909);
  int checked = 0;
  for (int g = 0; g < 60 && checked < 25; ++g) {
    auto net = th::random_net(rng, 9);
    if (!net.has_layer(LayerId{"A"}) || !net.has_layer(LayerId{"B"}))
      continue;
    auto plateaus = zero_plateaus(net);
    bool any_cyclic = false;
    for (bool c : plateaus.cyclic) any_cyclic |= c;
    if (any_cyclic) continue;
    ++checked;
    auto oracle = th::apsp_oracle(net);
    const auto& vi = net.layer_nodes(LayerId{"A"});
    const auto& vj = net.layer_nodes(LayerId{"B"});
    std::vector<char> mask(net.node_count(), 0);
    for (std::int32_t q : vj) mask[q] = 1;
    std::vector<double> want(net.node_count(), 0.0);
    for (std::int32_t p : vi) {
      auto pe = th::enumerate_paths(net, p, oracle[p], &mask);
      for (std::size_t v = 0; v < net.node_count(); ++v)
        if (static_cast<std::int32_t>(v) != p) want[v] += pe.dependency[v];
    }
    auto got = cross_betweenness(net, LayerId{"A"}, LayerId{"B"});
    for (std::size_t a = 0; a < vi.size(); ++a)
      CHECK(got[a] == doctest::Approx(want[vi[a]]).epsilon(1e-9));
  }
  CHECK(checked >= 25);
}

TEST_CASE("cross-efficiency basics") {
  auto net = make_net({{"A", "p"}, {"B", "q"}}, {{"A", "p", "B", "q", 1.0}});
  CHECK(cross_efficiency(net, LayerId{"A"}, LayerId{"B"}, unit_k()) ==
        doctest::Approx(1.0));

  auto split = make_net({{"A", "p"}, {"B", "q"}}, {});
  CHECK(cross_efficiency(split, LayerId{"A"}, LayerId{"B"}, unit_k()) == 0.0);
}

TEST_CASE("voltage scale cancels in cross-efficiency") {
  auto net = make_net({{"A", "p"}, {"A", "r"}, {"B", "q"}},
                      {{"A", "p", "B", "q", 1.0}, {"A", "r", "B", "q", 2.0}});
  VoltagePolicy k1;
  k1.overrides[{LayerId{"A"}, "p"}] = 230.0;
  k1.overrides[{LayerId{"A"}, "r"}] = 115.0;
  VoltagePolicy k2;
  k2.overrides[{LayerId{"A"}, "p"}] = 460.0;
  k2.overrides[{LayerId{"A"}, "r"}] = 230.0;
  double e1 = cross_efficiency(net, LayerId{"A"}, LayerId{"B"}, k1);
  double e2 = cross_efficiency(net, LayerId{"A"}, LayerId{"B"}, k2);
  CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
}

TEST_CASE("uniform k reduces to plain mean of 1/d") {
  Rng rng(321);
  for (int g = 0; g < 15; ++g) {
    auto net = th::random_net(rng, 10, 0);
    if (!net.has_layer(LayerId{"A"}) || !net.has_layer(LayerId{"B"}))
      continue;
    auto oracle = th::apsp_oracle(net);
    const auto& vi = net.layer_nodes(LayerId{"A"});
    const auto& vj = net.layer_nodes(LayerId{"B"});
    double sum = 0.0;
    for (std::int32_t p : vi)
      for (std::int32_t q : vj)
        if (oracle[p][q] != kUnreachable && oracle[p][q] > 0.0)
          sum += 1.0 / oracle[p][q];
    double want = sum / (static_cast<double>(vi.size()) * vj.size());
    CHECK(cross_efficiency(net, LayerId{"A"}, LayerId{"B"}, unit_k()) ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("bridge removal drops efficiency to zero") {
  auto net = make_net({{"A", "p"}, {"A", "v"}, {"B", "q"}, {"B", "r"}},
                      {{"A", "p", "A", "v", 1.0}, {"A", "v", "B", "q", 1.0},
                       {"B", "q", "B", "r", 1.0}});
  double drop =
      efficiency_drop(net, {LayerId{"A"}, "v"}, LayerId{"A"}, LayerId{"B"},
                      unit_k());
  CHECK(drop == doctest::Approx(1.0));
}

TEST_CASE("efficiency drop equals rebuild-and-recompute oracle") {
  Rng rng(646);
  int checked = 0;
  for (int g = 0; g < 80 && checked < 50; ++g) {
    auto net = th::random_net(rng, 12, 0);
    if (!net.has_layer(LayerId{"A"}) || !net.has_layer(LayerId{"B"}))
      continue;
    double base = cross_efficiency(net, LayerId{"A"}, LayerId{"B"}, unit_k());
    if (base <= 0.0) continue;
    ++checked;
    const auto& vi = net.layer_nodes(LayerId{"A"});
    double n_i = vi.size(), n_j = net.layer_nodes(LayerId{"B"}).size();
    for (std::int32_t v : vi) {
      double got = efficiency_drop(net, net.ref_of(v), LayerId{"A"},
                                   LayerId{"B"}, unit_k());
      CHECK(got >= 0.0);
      CHECK(got <= 1.0);
      // Oracle: rebuilt network, raw pair sum with the ORIGINAL denominator.
      auto rebuilt = rebuilt_without(net, net.ref_of(v));
      auto oracle = th::apsp_oracle(rebuilt);
      double sum = 0.0;
      for (std::int32_t p : rebuilt.has_layer(LayerId{"A"})
                                ? rebuilt.layer_nodes(LayerId{"A"})
                                : std::vector<std::int32_t>{})
        for (std::int32_t q : rebuilt.has_layer(LayerId{"B"})
                                  ? rebuilt.layer_nodes(LayerId{"B"})
                                  : std::vector<std::int32_t>{})
          if (oracle[p][q] != kUnreachable && oracle[p][q] > 0.0)
            sum += 1.0 / oracle[p][q];
      double removed = sum / (n_i * n_j);
      double want = std::clamp((base - removed) / base, 0.0, 1.0);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
  CHECK(checked >= 50);
}

TEST_CASE("efficiency drop validates its inputs") {
  auto net = make_net({{"A", "p"}, {"B", "q"}}, {{"A", "p", "B", "q", 1.0}});
  CHECK_THROWS_AS(efficiency_drop(net, {LayerId{"B"}, "q"}, LayerId{"A"},
                                  LayerId{"B"}, unit_k()),
                  UnknownNode);
  auto split = make_net({{"A", "p"}, {"B", "q"}}, {});
  CHECK_THROWS_AS(efficiency_drop(split, {LayerId{"A"}, "p"}, LayerId{"A"},
                                  LayerId{"B"}, unit_k()),
                  ZeroBaseEfficiency);
}
