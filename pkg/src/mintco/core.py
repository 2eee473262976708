"""Instance and solution model for topic-connected overlay design.

An instance is a set of users plus, for every topic, the audience of users
subscribed to it. An overlay (a set of undirected user pairs) is feasible
when every topic's audience induces a connected subgraph, without relaying
through users outside the audience.
"""

from dataclasses import dataclass


class FormatError(ValueError):
    """Malformed instance/solution/sidecar text, with the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """A solver was invoked on an instance outside its special case."""


class CapExceeded(RuntimeError):
    """A search or reduction gave up after exhausting its resource cap."""


class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path compression."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        """Merge the sets of a and b; True if they were separate."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Instance:
    """Users 0..n_users-1 and one sorted audience tuple per topic."""

    n_users: int
    audiences: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_users < 0:
            raise ValueError("negative user count")
        for t, aud in enumerate(self.audiences):
            for prev, cur in zip((-1,) + aud, aud):
                if cur <= prev:
                    raise ValueError(f"audience of topic {t} not strictly increasing")
            if aud and (aud[0] < 0 or aud[-1] >= self.n_users):
                raise ValueError(f"audience of topic {t} out of range")

    @classmethod
    def build(cls, n_users: int, audiences) -> "Instance":
        """Construct from arbitrary iterables, sorting and deduplicating."""
        return cls(n_users, tuple(tuple(sorted(set(a))) for a in audiences))

    @property
    def n_topics(self) -> int:
        return len(self.audiences)

    @property
    def max_audience(self) -> int:
        return max((len(a) for a in self.audiences), default=0)

    def interest(self, user: int) -> frozenset[int]:
        """Topics the given user subscribes to."""
        return frozenset(t for t, aud in enumerate(self.audiences) if user in set(aud))

    def interest_sets(self) -> list[frozenset[int]]:
        """Interest sets of all users, indexed by user id."""
        sets: list[set[int]] = [set() for _ in range(self.n_users)]
        for t, aud in enumerate(self.audiences):
            for u in aud:
                sets[u].add(t)
        return [frozenset(s) for s in sets]


@dataclass(frozen=True)
class Overlay:
    """A set of undirected edges over users, stored as (min, max) pairs."""

    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if u < 0 or u >= v:
                raise ValueError(f"edge ({u},{v}) not canonical (need 0 <= u < v)")

    @classmethod
    def build(cls, pairs) -> "Overlay":
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop at user {u}")
            edges.add((min(u, v), max(u, v)))
        return cls(frozenset(edges))

    @property
    def cost(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solver run on one instance."""

    algo: str
    overlay: Overlay
    cost: int
    optimal: bool
    elapsed_ms: float
    seed: int | None = None
    notes: str = ""

    def __post_init__(self):
        if self.cost != self.overlay.cost:
            raise ValueError("report cost disagrees with overlay")


@dataclass(frozen=True)
class ValidationReport:
    """Feasibility verdict with per-topic detail.

    disconnected lists (topic_id, components) for every topic whose
    audience splits into two or more components under the overlay.
    """

    feasible: bool
    per_topic: tuple[bool, ...]
    disconnected: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]


def parse_instance(text: str) -> Instance:
    """Parse the line-oriented instance format.

    Lines: `c <comment>` (ignored), then exactly one `p tco <n> <t>`, then
    one `a <topic_id> <k> <u_1> .. <u_k>` per topic with topic ids ascending
    from 0. Audience lists are sorted and deduplicated on ingest.
    """
    n_users = n_topics = None
    audiences: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n_users is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(fields) != 4 or fields[1] != "tco":
                raise FormatError("expected 'p tco <n_users> <n_topics>'", lineno)
            try:
                n_users, n_topics = int(fields[2]), int(fields[3])
            except ValueError:
                raise FormatError("non-integer counts in problem line", lineno) from None
            if n_users < 0 or n_topics < 0:
                raise FormatError("negative counts in problem line", lineno)
        elif fields[0] == "a":
            if n_users is None:
                raise FormatError("audience line before problem line", lineno)
            try:
                values = [int(x) for x in fields[1:]]
            except ValueError:
                raise FormatError("non-integer field in audience line", lineno) from None
            if len(values) < 2:
                raise FormatError("expected 'a <topic_id> <k> <users...>'", lineno)
            topic_id, k, users = values[0], values[1], values[2:]
            if topic_id != len(audiences):
                raise FormatError(
                    f"topic id {topic_id} out of order (expected {len(audiences)})", lineno
                )
            if topic_id >= n_topics:
                raise FormatError(f"topic id {topic_id} >= declared {n_topics}", lineno)
            if len(users) != k:
                raise FormatError(f"audience declares {k} users, lists {len(users)}", lineno)
            for u in users:
                if u < 0 or u >= n_users:
                    raise FormatError(f"user {u} out of range [0, {n_users})", lineno)
            audiences.append(sorted(set(users)))
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno)
    if n_users is None:
        raise FormatError("missing problem line")
    if len(audiences) != n_topics:
        raise FormatError(f"declared {n_topics} topics, found {len(audiences)}")
    return Instance.build(n_users, audiences)


def emit_instance(inst: Instance) -> str:
    """Serialize to canonical form (sorted audiences, topics in index order)."""
    lines = [f"p tco {inst.n_users} {inst.n_topics}"]
    for t, aud in enumerate(inst.audiences):
        lines.append(" ".join(["a", str(t), str(len(aud))] + [str(u) for u in aud]))
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> Overlay:
    """Parse the solution format: `s tco <cost>` then `e <u> <v>` lines."""
    cost = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "s":
            if cost is not None:
                raise FormatError("duplicate solution header", lineno)
            if len(fields) != 3 or fields[1] != "tco":
                raise FormatError("expected 's tco <cost>'", lineno)
            try:
                cost = int(fields[2])
            except ValueError:
                raise FormatError("non-integer cost", lineno) from None
        elif fields[0] == "e":
            if len(fields) != 3:
                raise FormatError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError("non-integer endpoint", lineno) from None
            if u >= v or u < 0:
                raise FormatError(f"edge ({u},{v}) not canonical", lineno)
            edges.append((u, v))
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno)
    if cost is None:
        raise FormatError("missing solution header")
    overlay = Overlay.build(edges)
    if overlay.cost != cost:
        raise FormatError(f"header cost {cost} disagrees with {overlay.cost} edges")
    return overlay


def emit_solution(overlay: Overlay) -> str:
    lines = [f"s tco {overlay.cost}"]
    for u, v in sorted(overlay.edges):
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def _check_edge_range(inst: Instance, overlay: Overlay) -> None:
    for u, v in overlay.edges:
        if v >= inst.n_users:
            raise ValueError(f"edge ({u},{v}) outside user range [0, {inst.n_users})")


def _topic_components(audience: tuple[int, ...], overlay: Overlay) -> list[tuple[int, ...]]:
    """Connected components of the audience under intra-audience edges only."""
    members = set(audience)
    uf = UnionFind(audience)
    for u, v in overlay.edges:
        if u in members and v in members:
            uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for u in audience:
        groups.setdefault(uf.find(u), []).append(u)
    return [tuple(sorted(g)) for g in sorted(groups.values())]


def is_topic_connected(inst: Instance, overlay: Overlay) -> tuple[bool, list[bool]]:
    """Per-topic connectivity of the audience-induced subgraphs.

    Only edges with both endpoints inside the audience count; routing
    through non-interested users does not. Audiences of size 0 or 1 are
    vacuously connected.
    """
    _check_edge_range(inst, overlay)
    per_topic = [len(_topic_components(aud, overlay)) <= 1 for aud in inst.audiences]
    return all(per_topic), per_topic


def validate_solution(inst: Instance, overlay: Overlay) -> ValidationReport:
    """Feasibility report listing each disconnected topic's component split."""
    _check_edge_range(inst, overlay)
    per_topic = []
    disconnected = []
    for t, aud in enumerate(inst.audiences):
        components = _topic_components(aud, overlay)
        ok = len(components) <= 1
        per_topic.append(ok)
        if not ok:
            disconnected.append((t, tuple(components)))
    return ValidationReport(all(per_topic), tuple(per_topic), tuple(disconnected))


def upper_bound_spanning(inst: Instance) -> Overlay:
    """Feasible overlay from one path per topic over its sorted audience.

    Shared edges are deduplicated, so the cost is at most
    sum_t max(|U_t| - 1, 0).
    """
    edges = set()
    for aud in inst.audiences:
        for u, v in zip(aud, aud[1:]):
            edges.add((u, v))
    return Overlay(frozenset(edges))


@dataclass(frozen=True)
class DominationReduction:
    """Result of removing dominated users.

    reattach holds (removed_user, dominating_user) pairs in removal order,
    both original ids. index_map[new_id] = original id of each survivor.
    """

    reduced: Instance
    reattach: tuple[tuple[int, int], ...]
    index_map: tuple[int, ...]

    @property
    def n_removed(self) -> int:
        return len(self.reattach)


def preprocess_dominated(inst: Instance) -> DominationReduction:
    """Strip users whose interest set is contained in another user's.

    A user u is dominated by v when interest(u) is a subset of interest(v);
    of two users with equal interests the higher id is removed, and the
    recorded dominator is the lowest-id dominating user still present.
    Survivors form an antichain of interest sets and are re-indexed densely.
    """
    interests = inst.interest_sets()
    remaining = set(range(inst.n_users))
    reattach: list[tuple[int, int]] = []
    for u in range(inst.n_users - 1, -1, -1):
        dominators = [
            v
            for v in remaining
            if v != u
            and interests[u] <= interests[v]
            and (interests[u] != interests[v] or v < u)
        ]
        if dominators:
            reattach.append((u, min(dominators)))
            remaining.remove(u)
    index_map = tuple(sorted(remaining))
    new_id = {orig: new for new, orig in enumerate(index_map)}
    audiences = tuple(
        tuple(new_id[u] for u in aud if u in remaining) for aud in inst.audiences
    )
    reduced = Instance(len(index_map), audiences)
    return DominationReduction(reduced, tuple(reattach), index_map)


def reattach(overlay: Overlay, reduction: DominationReduction) -> Overlay:
    """Lift a reduced-instance overlay back to the original instance.

    Maps reduced ids through the index map, then adds one edge per removed
    user in reverse removal order; cost grows by exactly the removed count.
    """
    edges = {
        (min(a, b), max(a, b))
        for a, b in (
            (reduction.index_map[u], reduction.index_map[v]) for u, v in overlay.edges
        )
    }
    for u, v in reversed(reduction.reattach):
        edges.add((min(u, v), max(u, v)))
    return Overlay(frozenset(edges))
