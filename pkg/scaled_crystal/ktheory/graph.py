import logging
from dataclasses import dataclass, field

from ..exceptions import InputError, UnknownNameError
from .smith import IntMatrix

logger = logging.getLogger(__name__)

VERTEX = "vertex"
EDGE_RANGE = "edge_range"


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        for edge in self.edges:
            for v in (edge.source, edge.range):
                if v not in self.vertices:
                    raise UnknownNameError(v, "vertex")

    @classmethod
    def from_json(cls, data) -> "Graph":
        try:
            vertices = tuple(str(v) for v in data["vertices"])
            edges = tuple(Edge(str(e["name"]), str(e["source"]), str(e["range"])) for e in data["edges"])
        except (KeyError, TypeError) as e:
            raise InputError(f"malformed graph: {e!r}", "Graph.from_json") from e
        return cls(vertices, edges)

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": e.name, "source": e.source, "range": e.range} for e in self.edges],
        }

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise UnknownNameError(name, "vertex") from None

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise UnknownNameError(name, "edge")


@dataclass(frozen=True)
class Term:
    sign: int
    kind: str
    name: str


@dataclass
class Substitution:
    """
    Images of vertex projections ``q_v`` as signed sums of vertex projections
    and edge range projections ``t_h t_h*``. Vertices not listed are fixed.
    """

    images: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data) -> "Substitution":
        images = {}
        try:
            for item in data:
                terms = []
                for term in item["terms"]:
                    kind = term["kind"]
                    if kind not in (VERTEX, EDGE_RANGE):
                        raise InputError(f"unknown term kind {kind!r}", "Substitution.from_json")
                    terms.append(Term(int(term.get("sign", 1)), kind, str(term["name"])))
                images[str(item["vertex"])] = tuple(terms)
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed substitution: {e!r}", "Substitution.from_json") from e
        return cls(images)

    def to_json(self):
        return [
            {
                "vertex": v,
                "terms": [{"sign": t.sign, "kind": t.kind, "name": t.name} for t in terms],
            }
            for v, terms in sorted(self.images.items())
        ]

    def image(self, vertex: str) -> tuple:
        return self.images.get(vertex, (Term(1, VERTEX, vertex),))


def _class_vector(graph: Graph, terms, keep_edges: bool = True) -> list:
    # [t_h t_h*] = [t_h* t_h] = [q_source(h)] in K_0
    column = [0] * len(graph.vertices)
    for term in terms:
        if term.kind == VERTEX:
            column[graph.vertex_index(term.name)] += term.sign
        elif keep_edges:
            column[graph.vertex_index(graph.edge(term.name).source)] += term.sign
        else:
            graph.edge(term.name)
    return column


def _check_vertices(graph: Graph, substitution: Substitution) -> None:
    for v in substitution.images:
        graph.vertex_index(v)


def graph_substitution_matrix(graph: Graph, substitution: Substitution) -> IntMatrix:
    """The induced map on ``K_0 = Z^V``; column ``v`` is the class of the image of ``q_v``."""
    _check_vertices(graph, substitution)
    columns = [_class_vector(graph, substitution.image(v)) for v in graph.vertices]
    return IntMatrix.from_rows(zip(*columns), len(graph.vertices))


def crystal_substitution_matrix(graph: Graph, substitution: Substitution) -> IntMatrix:
    """The induced map on the vertex algebra, where every ``t_h t_h*`` term vanishes."""
    _check_vertices(graph, substitution)
    columns = [_class_vector(graph, substitution.image(v), keep_edges=False) for v in graph.vertices]
    return IntMatrix.from_rows(zip(*columns), len(graph.vertices))


def compose_substitutions(graph: Graph, first: Substitution, second: Substitution) -> Substitution:
    """``second ∘ first`` at the level of K_0 classes, written with vertex terms only."""
    _check_vertices(graph, first)
    _check_vertices(graph, second)
    images = {}
    for v in graph.vertices:
        column = _class_vector(graph, first.image(v))
        total = [0] * len(graph.vertices)
        for w, coefficient in zip(graph.vertices, column):
            if coefficient:
                for i, c in enumerate(_class_vector(graph, second.image(w))):
                    total[i] += coefficient * c
        images[v] = tuple(Term(c, VERTEX, w) for w, c in zip(graph.vertices, total) if c)
    return Substitution(images)


def graph_e() -> Graph:
    """Six vertices; ``e`` runs parallel to the unnamed edge from v1 to v2."""
    return Graph(
        ("v1", "v2", "v3", "v4", "v5", "v6"),
        (
            Edge("e", "v1", "v2"),
            Edge("f", "v2", "v4"),
            Edge("g", "v3", "v4"),
            Edge("h12", "v1", "v2"),
            Edge("h52", "v5", "v2"),
            Edge("h63", "v6", "v3"),
            Edge("h45", "v4", "v5"),
            Edge("h41", "v4", "v1"),
            Edge("h46", "v4", "v6"),
        ),
    )


def graph_f() -> Graph:
    """Graph E with the edge ``e`` re-ranged to v3."""
    e = graph_e()
    return Graph(e.vertices, tuple(Edge("e", "v1", "v3") if h.name == "e" else h for h in e.edges))


def edge_move_substitution() -> Substitution:
    """``q2 -> q2 + t_e t_e*``, ``q3 -> q3 - t_e t_e*``."""
    return Substitution(
        {
            "v2": (Term(1, VERTEX, "v2"), Term(1, EDGE_RANGE, "e")),
            "v3": (Term(1, VERTEX, "v3"), Term(-1, EDGE_RANGE, "e")),
        }
    )


GRAPHS = {"E": graph_e, "F": graph_f}


def named_graph(name: str) -> Graph:
    try:
        return GRAPHS[name]()
    except KeyError:
        raise UnknownNameError(name, "graph") from None
