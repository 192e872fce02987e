"""Exhaustive check of the structure of p-edge-transitive graphs at small n:
each connected edge-transitive graph whose edge count is a prime power p^l is
bipartite, or vertex-transitive and a spanning edge-subgraph of the wreath
graph on p^k = n vertices."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..config import caps, check_cap
from ..graph import Graph, is_bipartite, is_connected, prime_power, wreath
from ..iso import enumerate_graphs, find_embedding, is_edge_transitive, is_vertex_transitive


@dataclass
class Classified:
    graph: Graph
    p: int
    branch: str  # "bipartite", "wreath" or "counterexample"
    wreath_map: tuple[int, ...] | None = None


@dataclass
class ClassificationReport:
    max_n: int
    graphs_scanned: int = 0
    per_n: dict[int, int] = field(default_factory=dict)
    candidates: list[Classified] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[Classified]:
        return [c for c in self.candidates if c.branch == "counterexample"]

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "graphs_scanned": self.graphs_scanned,
            "per_n": {str(n): c for n, c in self.per_n.items()},
            "candidates": len(self.candidates),
            "bipartite": sum(c.branch == "bipartite" for c in self.candidates),
            "wreath": sum(c.branch == "wreath" for c in self.candidates),
            "counterexamples": [{"n": c.graph.n, "edges": [list(e) for e in c.graph.edges]}
                                for c in self.counterexamples],
        }


def classify_graph(G: Graph) -> Classified | None:
    """None unless G is connected, edge-transitive with a prime-power edge count."""
    pp = prime_power(G.m)
    if pp is None or not is_connected(G) or not is_edge_transitive(G):
        return None
    p = pp[0]
    if is_bipartite(G):
        return Classified(G, p, "bipartite")
    npp = prime_power(G.n)
    if npp is not None and npp[0] == p and is_vertex_transitive(G):
        emb = find_embedding(G, wreath(p, npp[1]))
        if emb is not None:
            return Classified(G, p, "wreath", emb)
    return Classified(G, p, "counterexample")


def classify_p_edge_transitive(max_n: int, method: str | None = None) -> ClassificationReport:
    """Scan one representative per isomorphism class on n <= max_n vertices.

    The default enumeration buckets all labelled graphs for n <= 6 and grows
    classes vertex by vertex for larger n.
    """
    check_cap(max_n, caps.classify_vertices, "vertices for the classification scan")
    report = ClassificationReport(max_n)
    for n in range(1, max_n + 1):
        how = method or ("labeled" if n <= 6 else "extend")
        reps = enumerate_graphs(n, how)
        report.per_n[n] = len(reps)
        report.graphs_scanned += len(reps)
        for G in reps:
            c = classify_graph(G)
            if c is not None:
                report.candidates.append(c)
    return report
