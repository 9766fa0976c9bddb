#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "tdc/model.hpp"

using namespace tdc;
using th::make_net;

TEST_CASE("natural ordering of dotted names") {
  CHECK(natural_less("7", "65"));
  CHECK(natural_less("65", "65.002"));
  CHECK(natural_less("65.002", "65.046"));
  CHECK(!natural_less("65.046", "65.002"));
  CHECK(natural_less("2", "10"));       // numeric, not lexicographic
  CHECK(natural_less("9.9", "10.1"));
  CHECK(!natural_less("a", "a"));
  CHECK(natural_less("a", "b"));        // non-numeric fallback
}

TEST_CASE("build validates structure") {
  CHECK_NOTHROW(make_net({{"T", "1"}, {"T", "2"}}, {{"T", "1", "T", "2", 1.0}}));

  CHECK_THROWS_AS(make_net({{"T", "1"}, {"T", "1"}}, {}), DuplicateNode);
  CHECK_THROWS_AS(make_net({{"T", "1"}}, {{"T", "1", "T", "999", 1.0}}),
                  DanglingEdge);
  CHECK_THROWS_AS(make_net({{"T", "1"}}, {{"T", "1", "T", "1", 1.0}}),
                  SelfLoop);
  CHECK_THROWS_AS(make_net({{"T", "1"}, {"T", "2"}},
                           {{"T", "1", "T", "2", 1.0},
                            {"T", "2", "T", "1", 2.0}}),
                  DuplicateEdge);
  CHECK_THROWS_AS(make_net({{"T", "1"}, {"T", "2"}},
                           {{"T", "1", "T", "2", -0.5}}),
                  NegativeWeight);
  CHECK_THROWS_AS(make_net({{"T", "a,b"}}, {}), BadName);
  CHECK_THROWS_AS(make_net({{"T", ""}}, {}), BadName);
}

TEST_CASE("smallest network counts") {
  auto net = make_net({{"T", "1"}, {"T", "2"}}, {{"T", "1", "T", "2", 1.0}});
  LayerStats s = net.layer_stats(LayerId{"T"});
  CHECK(s.node_count == 2);
  CHECK(s.edge_count == 1);
}

TEST_CASE("nodes are held in canonical order") {
  auto net = make_net({{"T", "10"}, {"T", "2"}, {"D", "2.005"}, {"T", "7"}},
                      {});
  // Layers alphabetical, names natural-numeric.
  CHECK(net.ref_of(0) == NodeRef{LayerId{"D"}, "2.005"});
  CHECK(net.ref_of(1) == NodeRef{LayerId{"T"}, "2"});
  CHECK(net.ref_of(2) == NodeRef{LayerId{"T"}, "7"});
  CHECK(net.ref_of(3) == NodeRef{LayerId{"T"}, "10"});
}

TEST_CASE("edge kind derived from endpoint layers") {
  auto net = make_net({{"T", "1"}, {"C", "1"}, {"T", "2"}},
                      {{"T", "1", "C", "1", 0.0}, {"T", "1", "T", "2", 1.0}});
  int inter = 0, intra = 0;
  for (const auto& e : net.edges())
    (e.kind == EdgeKind::Inter ? inter : intra)++;
  CHECK(inter == 1);
  CHECK(intra == 1);
}

TEST_CASE("average degree is 2L/N exactly") {
  auto net = make_net({{"T", "1"}, {"T", "2"}, {"T", "3"}},
                      {{"T", "1", "T", "2", 1.0}, {"T", "2", "T", "3", 1.0}});
  std::size_t deg_sum = 0;
  for (std::int32_t i : net.layer_nodes(LayerId{"T"})) deg_sum += net.degree(i);
  LayerStats s = net.layer_stats(LayerId{"T"});
  CHECK(deg_sum == 2 * s.edge_count);
}

TEST_CASE("layer_subgraph keeps only intra edges and attrs") {
  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  NodeAttrs t_attrs;
  t_attrs.kind = NodeKind::Substation;
  t_attrs.nominal_voltage_kv = 230.0;
  nodes.push_back({{LayerId{"T"}, "1"}, t_attrs});
  nodes.push_back({{LayerId{"T"}, "2"}, {}});
  nodes.push_back({{LayerId{"C"}, "1"}, {}});
  std::vector<EdgeRecord> edges(2);
  edges[0].a = {LayerId{"T"}, "1"};
  edges[0].b = {LayerId{"T"}, "2"};
  edges[0].weight = 1.0;
  edges[1].a = {LayerId{"T"}, "1"};
  edges[1].b = {LayerId{"C"}, "1"};
  edges[1].weight = 0.0;
  auto net = MultilayerNetwork::build(nodes, edges);

  auto sub = net.layer_subgraph(LayerId{"T"});
  CHECK(sub.node_count() == 2);
  CHECK(sub.edge_count() == 1);
  CHECK(sub.attrs({LayerId{"T"}, "1"}).nominal_voltage_kv == 230.0);
  CHECK_THROWS_AS(net.layer_subgraph(LayerId{"X"}), UnknownLayer);
}

TEST_CASE("removal view excludes the node and its edges") {
  auto net = make_net({{"T", "a"}, {"T", "v"}, {"T", "b"}},
                      {{"T", "a", "T", "v", 1.0}, {"T", "v", "T", "b", 1.0}});
  RemovalView view = net.removal_view({LayerId{"T"}, "v"});
  CHECK(view.node_count() == 2);
  CHECK(view.degree({LayerId{"T"}, "a"}) == 0);
  CHECK(view.neighbors({LayerId{"T"}, "a"}).empty());
  CHECK(!view.has_node({LayerId{"T"}, "v"}));
  CHECK_THROWS_AS(view.degree({LayerId{"T"}, "v"}), UnknownNode);
  CHECK_THROWS_AS(net.removal_view({LayerId{"T"}, "zz"}), UnknownNode);

  // Base untouched.
  CHECK(net.degree(NodeRef{LayerId{"T"}, "v"}) == 2);
}

TEST_CASE("removing an isolated node leaves the edge set") {
  auto net = make_net({{"T", "a"}, {"T", "b"}, {"T", "iso"}},
                      {{"T", "a", "T", "b", 1.0}});
  RemovalView view = net.removal_view({LayerId{"T"}, "iso"});
  CHECK(view.node_count() == 2);
  CHECK(view.degree({LayerId{"T"}, "a"}) == 1);
}

TEST_CASE("serialize -> parse -> serialize is byte-identical") {
  std::vector<std::pair<NodeRef, NodeAttrs>> nodes;
  NodeAttrs sub;
  sub.kind = NodeKind::Substation;
  sub.nominal_voltage_kv = 115.0;
  sub.has_feeder = true;
  nodes.push_back({{LayerId{"T"}, "65"}, sub});
  NodeAttrs fdr;
  fdr.kind = NodeKind::FeederNode;
  fdr.nominal_voltage_kv = 12.47;
  fdr.feeder_id = "65";
  nodes.push_back({{LayerId{"D"}, "65.001"}, fdr});
  std::vector<EdgeRecord> edges(1);
  edges[0].a = {LayerId{"T"}, "65"};
  edges[0].b = {LayerId{"D"}, "65.001"};
  edges[0].resistance = 0.01;
  edges[0].reactance = 0.08;
  edges[0].weight = 0.0;
  auto net = MultilayerNetwork::build(nodes, edges);

  std::string once = net.to_json_string();
  std::string twice = MultilayerNetwork::from_json_string(once).to_json_string();
  CHECK(once == twice);

  auto parsed = MultilayerNetwork::from_json_string(once);
  CHECK(parsed.attrs({LayerId{"D"}, "65.001"}).feeder_id == "65");
  CHECK(parsed.attrs({LayerId{"T"}, "65"}).has_feeder);
  CHECK(parsed.edges()[0].resistance == 0.01);
}

TEST_CASE("parse rejects malformed documents") {
  CHECK_THROWS_AS(MultilayerNetwork::from_json_string("{not json"), ParseError);
  CHECK_THROWS_AS(MultilayerNetwork::from_json_string("{\"nodes\": []}"),
                  ParseError);
}
