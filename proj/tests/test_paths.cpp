#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tdc/paths.hpp"

using namespace tdc;
using th::make_net;

TEST_CASE("chain distances") {
  auto net = make_net({{"T", "a"}, {"T", "b"}, {"T", "c"}},
                      {{"T", "a", "T", "b", 1.0}, {"T", "b", "T", "c", 2.0}});
  auto d = shortest_from(net, {LayerId{"T"}, "a"});
  CHECK(d.dist[net.require_index({LayerId{"T"}, "c"})] == 3.0);
  CHECK(d.dist[d.source] == 0.0);
}

TEST_CASE("zero-weight mirror link gives distance zero") {
  auto net = make_net({{"T", "p"}, {"C", "p"}},
                      {{"T", "p", "C", "p", 0.0}});
  auto d = shortest_from(net, {LayerId{"T"}, "p"});
  CHECK(d.dist[net.require_index({LayerId{"C"}, "p"})] == 0.0);
}

TEST_CASE("unreachable carries the sentinel") {
  auto net = make_net({{"T", "a"}, {"T", "b"}}, {});
  auto d = shortest_from(net, {LayerId{"T"}, "a"});
  CHECK(d.dist[net.require_index({LayerId{"T"}, "b"})] == kUnreachable);
}

TEST_CASE("diamond counts two shortest paths") {
  auto net = make_net({{"T", "a"}, {"T", "b"}, {"T", "c"}, {"T", "d"}},
                      {{"T", "a", "T", "b", 1.0}, {"T", "a", "T", "c", 1.0},
                       {"T", "b", "T", "d", 1.0}, {"T", "c", "T", "d", 1.0}});
  auto [dist, counts] = count_shortest(net, {LayerId{"T"}, "a"});
  CHECK(counts.sigma[net.require_index({LayerId{"T"}, "d"})] == 2.0);
  CHECK(counts.sigma[net.require_index({LayerId{"T"}, "b"})] == 1.0);
  CHECK(counts.sigma[counts.source] == 1.0);
}

TEST_CASE("equal-length routes with different hop counts") {
  // a-b-c (1+1) vs a-c direct (2): sigma(a->c) = 2.
  auto net = make_net({{"T", "a"}, {"T", "b"}, {"T", "c"}},
                      {{"T", "a", "T", "b", 1.0}, {"T", "b", "T", "c", 1.0},
                       {"T", "a", "T", "c", 2.0}});
  auto [dist, counts] = count_shortest(net, {LayerId{"T"}, "a"});
  CHECK(counts.sigma[net.require_index({LayerId{"T"}, "c"})] == 2.0);
}

TEST_CASE("zero-weight cycle is rejected, not looped on") {
  auto net = make_net({{"T", "a"}, {"T", "b"}, {"T", "c"}},
                      {{"T", "a", "T", "b", 0.0}, {"T", "b", "T", "c", 0.0},
                       {"T", "a", "T", "c", 0.0}});
  CHECK_THROWS_AS(count_shortest(net, {LayerId{"T"}, "a"}),
                  AmbiguousZeroCycle);
  // Distances alone stay well defined.
  CHECK_NOTHROW(shortest_from(net, {LayerId{"T"}, "a"}));
}

TEST_CASE("unreachable zero cycle does not block counting") {
  auto net = make_net({{"T", "a"}, {"T", "b"},
                       {"T", "x"}, {"T", "y"}, {"T", "z"}},
                      {{"T", "a", "T", "b", 1.0},
                       {"T", "x", "T", "y", 0.0}, {"T", "y", "T", "z", 0.0},
                       {"T", "x", "T", "z", 0.0}});
  auto [dist, counts] = count_shortest(net, {LayerId{"T"}, "a"});
  CHECK(counts.sigma[net.require_index({LayerId{"T"}, "b"})] == 1.0);
}

TEST_CASE("sigma across a zero-weight tree plateau") {
  // p and its mirror m sit at distance 0; both reach q over weight-1 edges.
  auto net = make_net({{"T", "p"}, {"C", "m"}, {"T", "q"}},
                      {{"T", "p", "C", "m", 0.0}, {"T", "p", "T", "q", 1.0},
                       {"C", "m", "T", "q", 1.0}});
  auto [dist, counts] = count_shortest(net, {LayerId{"T"}, "p"});
  std::int32_t q = net.require_index({LayerId{"T"}, "q"});
  CHECK(dist.dist[q] == 1.0);
  // Two minimal simple paths: p-q and p-m-q.
  CHECK(counts.sigma[q] == 2.0);
}

TEST_CASE("distances match the relaxation oracle on random graphs") {
  Rng rng(2024);
  for (int g = 0; g < 200; ++g) {
    auto net = th::random_net(rng, 12);
    auto oracle = th::apsp_oracle(net);
    for (std::size_t s = 0; s < net.node_count(); ++s) {
      std::vector<double> dist;
      dijkstra(net, static_cast<std::int32_t>(s), -1, dist);
      for (std::size_t t = 0; t < net.node_count(); ++t) {
        if (oracle[s][t] == kUnreachable)
          CHECK(dist[t] == kUnreachable);
        else
          CHECK(dist[t] == doctest::Approx(oracle[s][t]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("symmetry of distances") {
  Rng rng(99);
  for (int g = 0; g < 20; ++g) {
    auto net = th::random_net(rng, 12);
    std::vector<std::vector<double>> all(net.node_count());
    for (std::size_t s = 0; s < net.node_count(); ++s)
      dijkstra(net, static_cast<std::int32_t>(s), -1, all[s]);
    for (std::size_t i = 0; i < net.node_count(); ++i)
      for (std::size_t j = 0; j < net.node_count(); ++j) {
        if (std::isinf(all[i][j])) {
          CHECK(std::isinf(all[j][i]));
          continue;
        }
        CHECK(all[i][j] == doctest::Approx(all[j][i]).epsilon(1e-12));
      }
  }
}

TEST_CASE("sigma matches exhaustive enumeration on random graphs") {
  Rng rng(31337);
  int checked = 0;
  for (int g = 0; g < 130 && checked < 100; ++g) {
    auto net = th::random_net(rng, 10);
    auto oracle = th::apsp_oracle(net);
    bool ambiguous = false;
    std::vector<std::pair<DistanceMap, PathCounts>> results;
    try {
      for (std::size_t s = 0; s < net.node_count(); ++s)
        results.push_back(count_shortest(net, net.ref_of(s)));
    } catch (const AmbiguousZeroCycle&) {
      ambiguous = true;
    }
    if (ambiguous) {
      // Only legal when a reachable zero-weight component is cyclic.
      auto plateaus = zero_plateaus(net);
      bool any_cyclic = false;
      for (bool c : plateaus.cyclic) any_cyclic |= c;
      CHECK(any_cyclic);
      continue;
    }
    ++checked;
    for (std::size_t s = 0; s < net.node_count(); ++s) {
      auto pe = th::enumerate_paths(net, static_cast<std::int32_t>(s),
                                    oracle[s]);
      for (std::size_t t = 0; t < net.node_count(); ++t)
        CHECK(results[s].second.sigma[t] == pe.sigma[t]);
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("dependency accumulation matches enumeration oracle") {
  Rng rng(777);
  int checked = 0;
  for (int g = 0; g < 80 && checked < 50; ++g) {
    auto net = th::random_net(rng, 9);
    auto plateaus = zero_plateaus(net);
    bool any_cyclic = false;
    for (bool c : plateaus.cyclic) any_cyclic |= c;
    if (any_cyclic) continue;
    ++checked;
    auto oracle = th::apsp_oracle(net);
    std::vector<char> is_target(net.node_count(), 1);
    for (std::size_t s = 0; s < net.node_count(); ++s) {
      std::vector<double> accum(net.node_count(), 0.0);
      accumulate_dependencies(net, static_cast<std::int32_t>(s), is_target,
                              plateaus, kDefaultTolRel, accum);
      auto pe = th::enumerate_paths(net, static_cast<std::int32_t>(s),
                                    oracle[s]);
      for (std::size_t v = 0; v < net.node_count(); ++v) {
        if (v == s) continue;
        CHECK(accum[v] == doctest::Approx(pe.dependency[v]).epsilon(1e-9));
      }
    }
  }
  CHECK(checked >= 50);
}

TEST_CASE("removal view distances equal rebuilt-network distances") {
  Rng rng(4242);
  for (int g = 0; g < 25; ++g) {
    auto net = th::random_net(rng, 10);
    std::int32_t excl = rng.next_below(net.node_count());
    auto oracle = th::apsp_oracle(net, excl);
    for (std::size_t s = 0; s < net.node_count(); ++s) {
      if (static_cast<std::int32_t>(s) == excl) continue;
      std::vector<double> dist;
      dijkstra(net, static_cast<std::int32_t>(s), excl, dist);
      for (std::size_t t = 0; t < net.node_count(); ++t) {
        if (static_cast<std::int32_t>(t) == excl) continue;
        if (oracle[s][t] == kUnreachable)
          CHECK(dist[t] == kUnreachable);
        else
          CHECK(dist[t] == doctest::Approx(oracle[s][t]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("cross-distance matrix against the oracle") {
  Rng rng(515);
  for (int g = 0; g < 20; ++g) {
    auto net = th::random_net(rng, 10);
    if (!net.has_layer(LayerId{"A"}) || !net.has_layer(LayerId{"B"}))
      continue;
    auto mat = cross_distances(net, LayerId{"A"}, LayerId{"B"});
    auto oracle = th::apsp_oracle(net);
    const auto& rows = net.layer_nodes(LayerId{"A"});
    const auto& cols = net.layer_nodes(LayerId{"B"});
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        double want = oracle[rows[i]][cols[j]];
        if (want == kUnreachable)
          CHECK(mat[i][j] == kUnreachable);
        else
          CHECK(mat[i][j] == doctest::Approx(want).epsilon(1e-9));
      }
  }
}

TEST_CASE("cross_distances validates layers") {
  auto net = make_net({{"A", "1"}}, {});
  CHECK_THROWS_AS(cross_distances(net, LayerId{"A"}, LayerId{"Z"}),
                  UnknownLayer);
}
