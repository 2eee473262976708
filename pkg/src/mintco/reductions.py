"""Instance generators and solution back-mappings.

Random instances, plus two structured constructions: one embedding a
hitting-set instance via per-set topics replicated over special users, one
embedding a vertex-cover instance via a two-layer gadget with three topics
per edge. Both come with extractors that map feasible overlays back to
solutions of the source problem.
"""

import math
import random
from dataclasses import dataclass

from .core import FormatError, Instance, Overlay, is_topic_connected
from .hitting import HsInstance, emit_hs_instance, parse_hs_instance


def gen_random(
    n_users: int,
    n_topics: int,
    audience_min: int,
    audience_max: int,
    seed: int,
) -> Instance:
    """Random instance: per topic, a uniform audience size in [min, max]
    and members sampled without replacement. Deterministic per seed."""
    if not 0 <= audience_min <= audience_max <= n_users:
        raise ValueError("need 0 <= audience_min <= audience_max <= n_users")
    rng = random.Random(seed)
    audiences = [
        sorted(rng.sample(range(n_users), rng.randint(audience_min, audience_max)))
        for _ in range(n_topics)
    ]
    return Instance.build(n_users, audiences)


@dataclass(frozen=True)
class HsTcoMeta:
    """Bookkeeping for the hitting-set construction.

    Users are the source elements (same ids) followed by k special users;
    topic (i, j) pairs special user i with source set j.
    """

    source: HsInstance
    k: int

    @property
    def n_elements(self) -> int:
        return self.source.n_elements

    def element_user(self, element: int) -> int:
        return element

    def special_user(self, i: int) -> int:
        return self.n_elements + i

    def topic_index(self, i: int, j: int) -> int:
        return i * self.source.n_sets + j


def _build_hs_tco(source: HsInstance, k: int) -> Instance:
    n = source.n_elements
    audiences = [s + (n + i,) for i in range(k) for s in source.sets]
    return Instance(n + k, tuple(audiences))


def gen_from_hs(
    source: HsInstance,
    k_override: int | None = None,
    eps: float | None = None,
) -> tuple[Instance, HsTcoMeta]:
    """Embed a hitting-set instance as an overlay instance.

    Each source set S_j yields k topics with audience S_j plus one special
    user per copy, so the max audience is max set size + 1. k is taken
    directly (k_override) or as |X|^2 * ceil((1+eps)/eps).
    """
    if (k_override is None) == (eps is None):
        raise ValueError("give exactly one of k_override and eps")
    if source.has_empty_set:
        raise ValueError("source instance contains an empty set")
    if k_override is not None:
        k = k_override
    else:
        if eps <= 0:
            raise ValueError("eps must be positive")
        k = source.n_elements**2 * math.ceil((1 + eps) / eps)
    if k <= 0:
        raise ValueError(f"special-user count k={k} must be positive")
    meta = HsTcoMeta(source, k)
    return _build_hs_tco(source, k), meta


def extract_hs_solution(overlay: Overlay, meta: HsTcoMeta) -> list[int]:
    """Recover a hitting set from a feasible overlay of the construction.

    Edges are split into levels by incident special user (edges between two
    specials go to the lower level); the non-special endpoints of a smallest
    level (ties: lowest index) hit every source set, and k times the result
    size never exceeds the overlay cost.
    """
    inst = _build_hs_tco(meta.source, meta.k)
    if not is_topic_connected(inst, overlay)[0]:
        raise ValueError("overlay is not feasible for the generated instance")
    n = meta.n_elements
    levels: dict[int, list[tuple[int, int]]] = {i: [] for i in range(meta.k)}
    for a, b in overlay.edges:
        specials = [w - n for w in (a, b) if w >= n]
        if specials:
            levels[min(specials)].append((a, b))
    smallest = min(range(meta.k), key=lambda i: (len(levels[i]), i))
    return sorted({w for edge in levels[smallest] for w in edge if w < n})


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertices 0..n-1, canonical (u, v) edges."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if u < 0 or u >= v or v >= self.n_vertices:
                raise ValueError(f"bad edge ({u},{v})")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge")

    @classmethod
    def build(cls, n_vertices: int, pairs) -> "Graph":
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            edges.add((min(u, v), max(u, v)))
        return cls(n_vertices, tuple(sorted(edges)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class VcTcoMeta:
    """Bookkeeping for the vertex-cover construction.

    Vertex v appears twice: layer-1 user v and layer-2 user n + v. Edge
    index e owns topics 3e (all four copies), 3e+1 (layer 1), 3e+2 (layer 2).
    """

    graph: Graph

    def layer1(self, v: int) -> int:
        return v

    def layer2(self, v: int) -> int:
        return self.graph.n_vertices + v

    def edge_topics(self, e: int) -> tuple[int, int, int]:
        return (3 * e, 3 * e + 1, 3 * e + 2)


def _build_vc_tco(graph: Graph) -> Instance:
    n = graph.n_vertices
    audiences = []
    for u, v in graph.edges:
        audiences.append((u, v, n + u, n + v))
        audiences.append((u, v))
        audiences.append((n + u, n + v))
    return Instance(2 * n, tuple(audiences))


def gen_from_vc(graph: Graph) -> tuple[Instance, VcTcoMeta]:
    """Embed a vertex-cover instance as an overlay instance.

    Two user copies per vertex and three topics per edge {u,v}: one joining
    u and v within each layer (forcing both layer edges) and one spanning
    all four copies (satisfiable by a vertical edge at u or v). The optimum
    equals the cover optimum plus 2 |E'|.
    """
    return _build_vc_tco(graph), VcTcoMeta(graph)


def extract_vc_solution(overlay: Overlay, meta: VcTcoMeta) -> list[int]:
    """Recover a vertex cover from a feasible overlay of the construction.

    Each cross edge between layer-1 u and layer-2 v is rewritten to the
    vertical edge at u; vertices with a vertical edge form a cover of size
    at most cost - 2 |E'|.
    """
    inst = _build_vc_tco(meta.graph)
    if not is_topic_connected(inst, overlay)[0]:
        raise ValueError("overlay is not feasible for the generated instance")
    n = meta.graph.n_vertices
    cover = set()
    for a, b in overlay.edges:
        # vertical (b == n + a) keeps a; cross {a, v+n} rewrites to a's vertical
        if a < n <= b:
            cover.add(a)
    return sorted(cover)


def parse_graph(text: str) -> Graph:
    """Parse `p edge <n> <m>` plus `e <u> <v>` lines (1-based vertex ids)."""
    n_vertices = n_edges = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n_vertices is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(fields) != 4 or fields[1] != "edge":
                raise FormatError("expected 'p edge <n> <m>'", lineno)
            try:
                n_vertices, n_edges = int(fields[2]), int(fields[3])
            except ValueError:
                raise FormatError("non-integer counts", lineno) from None
        elif fields[0] == "e":
            if n_vertices is None:
                raise FormatError("edge line before problem line", lineno)
            if len(fields) != 3:
                raise FormatError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError("non-integer endpoint", lineno) from None
            if not (1 <= u <= n_vertices and 1 <= v <= n_vertices):
                raise FormatError(f"vertex out of range in edge ({u},{v})", lineno)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", lineno)
            pairs.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno)
    if n_vertices is None:
        raise FormatError("missing problem line")
    graph = Graph.build(n_vertices, pairs)
    if graph.n_edges != n_edges:
        raise FormatError(f"declared {n_edges} edges, found {graph.n_edges} distinct")
    return graph


def emit_graph(graph: Graph) -> str:
    lines = [f"p edge {graph.n_vertices} {graph.n_edges}"]
    for u, v in graph.edges:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def emit_hs_meta(meta: HsTcoMeta) -> str:
    """Sidecar for from-hs generation: version, k, then the source instance."""
    return f"v 1\nk {meta.k}\n" + emit_hs_instance(meta.source)


def parse_hs_meta(text: str) -> HsTcoMeta:
    k = None
    saw_version = False
    rest: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "v" and not saw_version:
            if fields != ["v", "1"]:
                raise FormatError("unsupported sidecar version", lineno)
            saw_version = True
        elif fields[0] == "k":
            if len(fields) != 2:
                raise FormatError("expected 'k <count>'", lineno)
            k = int(fields[1])
        else:
            rest.append(line)
    if not saw_version:
        raise FormatError("missing 'v 1' version line")
    if k is None or k <= 0:
        raise FormatError("missing or non-positive k line")
    return HsTcoMeta(parse_hs_instance("\n".join(rest)), k)


def emit_vc_meta(meta: VcTcoMeta) -> str:
    """Sidecar for from-vc generation: version line then the source graph."""
    return "v 1\n" + emit_graph(meta.graph)


def parse_vc_meta(text: str) -> VcTcoMeta:
    saw_version = False
    rest: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "v" and not saw_version:
            if fields != ["v", "1"]:
                raise FormatError("unsupported sidecar version", lineno)
            saw_version = True
        else:
            rest.append(line)
    if not saw_version:
        raise FormatError("missing 'v 1' version line")
    return VcTcoMeta(parse_graph("\n".join(rest)))
