"""Characteristic edge systems and the one-to-one reduction to hitting set.

For a vertex set V, the characteristic system is the family of cut-edge
sets of all bipartitions of V: an edge set connects V exactly when it hits
every member. Taking the union of these systems over all topic audiences
turns overlay construction into a hitting-set instance on edge ids.
"""

from dataclasses import dataclass, field

from .core import CapExceeded, FormatError, Instance, Overlay
from .hitting import HsInstance

AUDIENCE_CAP = 20


@dataclass(frozen=True)
class EdgeCodec:
    """Dense bijection between candidate edges and hitting-set element ids.

    The domain is every user pair sharing at least one topic; pairs with no
    common topic occur in no characteristic set and are never needed.
    """

    id_to_edge: tuple[tuple[int, int], ...]
    edge_to_id: dict[tuple[int, int], int] = field(compare=False)

    @classmethod
    def from_instance(cls, inst: Instance) -> "EdgeCodec":
        pairs = set()
        for aud in inst.audiences:
            for i, u in enumerate(aud):
                for v in aud[i + 1 :]:
                    pairs.add((u, v))
        id_to_edge = tuple(sorted(pairs))
        return cls(id_to_edge, {e: i for i, e in enumerate(id_to_edge)})

    def __len__(self) -> int:
        return len(self.id_to_edge)

    def encode(self, edge: tuple[int, int]) -> int:
        u, v = edge
        return self.edge_to_id[(min(u, v), max(u, v))]

    def decode(self, element_id: int) -> tuple[int, int]:
        return self.id_to_edge[element_id]

    def encode_edges(self, edges) -> frozenset[int]:
        return frozenset(self.encode(e) for e in edges)


def characteristic_system(
    vertices, cap: int = AUDIENCE_CAP
) -> list[frozenset[tuple[int, int]]]:
    """All bipartition cut-edge sets of the given vertices.

    One set per unordered bipartition (A, B) with both sides non-empty,
    enumerated with A ranging over the subsets containing the first vertex
    (full set excluded): 2^(n-1) - 1 sets, each of size at most
    floor(n/2) * ceil(n/2). Fewer than two vertices yield no sets.
    """
    vertices = list(vertices)
    n = len(vertices)
    if n < 2:
        return []
    if n > cap:
        raise CapExceeded(f"characteristic system on {n} > {cap} vertices")
    first, rest = vertices[0], vertices[1:]
    system = []
    for mask in range(2 ** (n - 1) - 1):
        side_a = [first] + [v for i, v in enumerate(rest) if mask >> i & 1]
        side_b = [v for i, v in enumerate(rest) if not mask >> i & 1]
        system.append(
            frozenset((min(a, b), max(a, b)) for a in side_a for b in side_b)
        )
    return system


def reduce_tco_to_hs(
    inst: Instance, cap: int = AUDIENCE_CAP
) -> tuple[HsInstance, EdgeCodec]:
    """Map an overlay instance to a hitting-set instance over candidate edges.

    Sets are the union, over topics, of the characteristic system on the
    topic's audience, deduplicated; an edge set is feasible for the overlay
    instance exactly when its element image hits every set.
    """
    if inst.max_audience > cap:
        raise CapExceeded(
            f"max audience {inst.max_audience} > {cap}; raise the cap to force"
        )
    codec = EdgeCodec.from_instance(inst)
    sets: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for aud in inst.audiences:
        for cut in characteristic_system(aud, cap=cap):
            ids = tuple(sorted(codec.encode(e) for e in cut))
            if ids not in seen:
                seen.add(ids)
                sets.append(ids)
    return HsInstance(len(codec), tuple(sets)), codec


def lift_hs_solution(codec: EdgeCodec, elements) -> Overlay:
    """Map chosen element ids back to an overlay edge set."""
    return Overlay(frozenset(codec.decode(e) for e in elements))


def emit_codec(codec: EdgeCodec) -> str:
    """Codec sidecar: a `v 1` version line then `x <id> <u> <v>` rows."""
    lines = ["v 1"]
    for i, (u, v) in enumerate(codec.id_to_edge):
        lines.append(f"x {i} {u} {v}")
    return "\n".join(lines) + "\n"


def parse_codec(text: str) -> EdgeCodec:
    entries: dict[int, tuple[int, int]] = {}
    saw_version = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "v":
            if fields != ["v", "1"]:
                raise FormatError("unsupported sidecar version", lineno)
            saw_version = True
        elif fields[0] == "x":
            if len(fields) != 4:
                raise FormatError("expected 'x <element_id> <u> <v>'", lineno)
            try:
                eid, u, v = int(fields[1]), int(fields[2]), int(fields[3])
            except ValueError:
                raise FormatError("non-integer field", lineno) from None
            if u >= v or u < 0:
                raise FormatError(f"edge ({u},{v}) not canonical", lineno)
            if eid in entries:
                raise FormatError(f"duplicate element id {eid}", lineno)
            entries[eid] = (u, v)
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno)
    if not saw_version:
        raise FormatError("missing 'v 1' version line")
    if sorted(entries) != list(range(len(entries))):
        raise FormatError("element ids not dense in [0, n)")
    id_to_edge = tuple(entries[i] for i in range(len(entries)))
    if len(set(id_to_edge)) != len(id_to_edge):
        raise FormatError("duplicate edge in codec")
    return EdgeCodec(id_to_edge, {e: i for i, e in enumerate(id_to_edge)})
