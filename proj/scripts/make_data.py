#!/usr/bin/env python3
"""Generates the bundled data files in data/.

The transmission case is a stand-in with the published aggregate shape
(111 nodes, 156 branches, max degree 8, unit-weight efficiency ~0.319);
feeder templates are random radial trees of 142 and 67 nodes. Everything is
seeded, so rerunning this script reproduces the files byte for byte.
"""

import json
import math
import random
from pathlib import Path

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import shortest_path

OUT = Path(__file__).resolve().parent.parent / "data"

T_NODES = 111
T_EDGES = 156
T_KMAX = 8
T_EFFICIENCY = 0.319

# Feeder assignments: substation -> template id.
ASSIGN_1 = ["65", "70", "18", "96", "12", "6", "7", "24", "78", "105",
            "14", "91", "73", "27", "108", "75", "13"]
ASSIGN_2 = ["92", "48", "60"]


def unit_efficiency(g):
    m = nx.to_scipy_sparse_array(g, nodelist=sorted(g.nodes()), format="csr")
    d = shortest_path(m, method="BF", unweighted=True, directed=False)
    n = d.shape[0]
    with np.errstate(divide="ignore"):
        inv = 1.0 / d
    inv[~np.isfinite(inv)] = 0.0
    return inv.sum() / (n * (n - 1))


def build_transmission(rng):
    """Connected graph with the target size, degree cap, and efficiency."""
    while True:
        g = nx.Graph()
        g.add_nodes_from(range(1, T_NODES + 1))
        order = list(range(2, T_NODES + 1))
        rng.shuffle(order)
        # Random recursive tree under the degree cap.
        attached = [1]
        for v in order:
            while True:
                u = rng.choice(attached)
                if g.degree(u) < T_KMAX:
                    break
            g.add_edge(u, v)
            attached.append(v)
        while g.number_of_edges() < T_EDGES:
            u, v = rng.sample(range(1, T_NODES + 1), 2)
            if g.has_edge(u, v) or g.degree(u) >= T_KMAX or g.degree(v) >= T_KMAX:
                continue
            g.add_edge(u, v)
        if max(dict(g.degree).values()) == T_KMAX:
            break

    # Single-edge rewires under the degree cap, hill-climbing toward the
    # target unit-weight efficiency.
    eff = unit_efficiency(g)
    nodes = list(g.nodes())
    stall = 0
    while abs(eff - T_EFFICIENCY) > 0.0015 and stall < 4000:
        a, b = rng.choice(list(g.edges()))
        c, d = rng.sample(nodes, 2)
        if g.has_edge(c, d) or g.degree(c) >= T_KMAX or g.degree(d) >= T_KMAX:
            stall += 1
            continue
        g.remove_edge(a, b)
        g.add_edge(c, d)
        if not nx.is_connected(g):
            g.remove_edge(c, d)
            g.add_edge(a, b)
            stall += 1
            continue
        new_eff = unit_efficiency(g)
        if abs(new_eff - T_EFFICIENCY) < abs(eff - T_EFFICIENCY):
            eff = new_eff
            stall = 0
        else:
            g.remove_edge(c, d)
            g.add_edge(a, b)
            stall += 1
    assert abs(eff - T_EFFICIENCY) <= 0.01, eff
    assert nx.is_connected(g)
    assert g.number_of_edges() == T_EDGES
    assert max(dict(g.degree).values()) == T_KMAX
    return g, eff


def impedance(rng, kv_a, kv_b):
    if kv_a >= 230 and kv_b >= 230:
        x = rng.uniform(0.02, 0.08)
    elif kv_a >= 230 or kv_b >= 230:
        x = rng.uniform(0.05, 0.15)
    else:
        x = rng.uniform(0.08, 0.30)
    return round(x / 4.0, 6), round(x, 6)


def write_transmission(rng):
    g, eff = build_transmission(rng)
    # Roughly a third of the grid at 230 kV, biased toward high degree.
    by_degree = sorted(g.nodes(), key=lambda v: (-g.degree(v), v))
    hv = set(by_degree[:36])
    volts = {v: (230.0 if v in hv else 115.0) for v in g.nodes()}

    nodes = [{"layer": "T", "name": str(v), "kind": "substation",
              "voltage_kv": volts[v]}
             for v in sorted(g.nodes())]
    edges = []
    for u, v in sorted(g.edges()):
        r, x = impedance(rng, volts[u], volts[v])
        edges.append({"a": {"layer": "T", "name": str(u)},
                      "b": {"layer": "T", "name": str(v)},
                      "r": r, "x": x, "weight": 1.0})
    doc = {"layers": ["T"], "nodes": nodes, "edges": edges}
    (OUT / "transmission_111.json").write_text(
        json.dumps(doc, indent=2) + "\n")
    print(f"transmission: N={g.number_of_nodes()} L={g.number_of_edges()} "
          f"kmax={max(dict(g.degree).values())} E={eff:.4f}")


def feeder_tree(rng, n):
    """Random radial tree rooted at 1 with degree cap 8.

    Breadth-biased: each new node hangs off the shallowest eligible parent,
    so the laterals fan out close to the head and interior branches stay
    small. A touch of randomness keeps sibling subtrees uneven.
    """
    g = nx.Graph()
    g.add_node(1)
    depth = {1: 0}
    for v in range(2, n + 1):
        candidates = [u for u in g.nodes() if g.degree(u) < T_KMAX]
        d_min = min(depth[u] for u in candidates)
        shallow = [u for u in candidates if depth[u] <= d_min + 1]
        u = rng.choice(shallow)
        g.add_edge(u, v)
        depth[v] = depth[u] + 1
    return g


def write_feeder(rng, name, template_id, n, force_kmax):
    g = feeder_tree(rng, n)
    if force_kmax and max(dict(g.degree).values()) < T_KMAX:
        # Re-hang leaves onto one hub until it reaches the cap.
        hub = max(g.nodes(), key=lambda v: (g.degree(v), -v))
        leaves = [v for v in g.nodes()
                  if g.degree(v) == 1 and not g.has_edge(hub, v) and v != hub]
        for leaf in leaves[:T_KMAX - g.degree(hub)]:
            parent = next(iter(g.neighbors(leaf)))
            g.remove_edge(leaf, parent)
            g.add_edge(hub, leaf)
    assert nx.is_tree(g)
    assert max(dict(g.degree).values()) <= T_KMAX
    nodes = [{"index": v, "voltage_kv": 12.47} for v in sorted(g.nodes())]
    edges = []
    for u, v in sorted(g.edges()):
        x = rng.uniform(0.1, 0.4)
        edges.append({"a": u, "b": v, "r": round(x / 2.0, 6),
                      "x": round(x, 6)})
    doc = {"id": template_id, "root": 1, "nodes": nodes, "edges": edges}
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")
    print(f"{template_id}: N={n} kmax={max(dict(g.degree).values())}")


def write_config():
    assignments = {s: "R5-12.47-1" for s in ASSIGN_1}
    assignments.update({s: "R5-12.47-2" for s in ASSIGN_2})
    doc = {
        "templates": {
            "R5-12.47-1": "feeder_r5-12.47-1.json",
            "R5-12.47-2": "feeder_r5-12.47-2.json",
        },
        "feeder_assignments": assignments,
        "ders_per_feeder": 3,
        "rewire_fraction": 0.10,
    }
    (OUT / "testbed_config.json").write_text(json.dumps(doc, indent=2) + "\n")


def write_two_voltage():
    """Two clusters joined by a short high-impedance 115 kV chain and a
    longer low-impedance 230 kV chain; hop-count routing and impedance
    routing prefer different bridges."""
    nodes, edges = [], []

    def node(name, kv):
        nodes.append({"layer": "T", "name": name, "kind": "substation",
                      "voltage_kv": kv})

    def edge(a, b, r, x):
        edges.append({"a": {"layer": "T", "name": a},
                      "b": {"layer": "T", "name": b},
                      "r": r, "x": x, "weight": 1.0})

    for i in range(1, 9):
        node(f"a{i}", 115.0)
        node(f"b{i}", 115.0)
    for i in range(1, 4):
        node(f"u{i}", 115.0)
    for i in range(1, 7):
        node(f"p{i}", 230.0)

    for i in range(2, 9):  # star clusters around a1 / b1
        edge("a1", f"a{i}", 0.18, 0.24)
        edge("b1", f"b{i}", 0.18, 0.24)
    # Short bridge, high impedance (|Z| = 1.0 per hop, 4 hops).
    edge("a1", "u1", 0.6, 0.8)
    edge("u1", "u2", 0.6, 0.8)
    edge("u2", "u3", 0.6, 0.8)
    edge("u3", "b1", 0.6, 0.8)
    # Long bridge, low impedance (|Z| = 0.05 per hop, 7 hops).
    edge("a1", "p1", 0.03, 0.04)
    for i in range(1, 6):
        edge(f"p{i}", f"p{i+1}", 0.03, 0.04)
    edge("p6", "b1", 0.03, 0.04)

    doc = {"layers": ["T"], "nodes": nodes, "edges": edges}
    (OUT / "two_voltage_test.json").write_text(json.dumps(doc, indent=2) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    rng = random.Random(20240817)
    write_transmission(rng)
    write_feeder(rng, "feeder_r5-12.47-1.json", "R5-12.47-1", 142, True)
    write_feeder(rng, "feeder_r5-12.47-2.json", "R5-12.47-2", 67, False)
    write_config()
    write_two_voltage()


if __name__ == "__main__":
    main()
