"""Hitting-set engine: greedy approximations, exact branching, kernel rules.

An instance is a family of element-id sets over a universe 0..n_elements-1;
a solution is an element subset meeting every set. All solvers are
deterministic (lowest-index tie-breaking throughout).
"""

from dataclasses import dataclass

from .core import CapExceeded, FormatError

BRANCH_NODE_CAP = 10_000_000


@dataclass(frozen=True)
class HsInstance:
    """Set system over n_elements; each set a sorted tuple of distinct ids."""

    n_elements: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for j, s in enumerate(self.sets):
            for prev, cur in zip((-1,) + s, s):
                if cur <= prev:
                    raise ValueError(f"set {j} not strictly increasing")
            if s and (s[0] < 0 or s[-1] >= self.n_elements):
                raise ValueError(f"set {j} out of element range")

    @classmethod
    def build(cls, n_elements: int, sets) -> "HsInstance":
        return cls(n_elements, tuple(tuple(sorted(set(s))) for s in sets))

    @property
    def n_sets(self) -> int:
        return len(self.sets)

    @property
    def max_set_size(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    @property
    def has_empty_set(self) -> bool:
        return any(not s for s in self.sets)


@dataclass(frozen=True)
class HsSolution:
    """Chosen element ids (sorted) plus an optimality flag."""

    chosen: tuple[int, ...]
    optimal: bool

    @property
    def cost(self) -> int:
        return len(self.chosen)


def hits_all(inst: HsInstance, chosen) -> bool:
    """Whether the element set meets every set of the instance."""
    picked = set(chosen)
    return all(picked.intersection(s) for s in inst.sets)


def _require_hittable(inst: HsInstance) -> None:
    if inst.has_empty_set:
        raise ValueError("instance contains an empty set and is infeasible")


def hs_greedy_setwise(inst: HsInstance) -> HsSolution:
    """Take every element of each still-unhit set, scanning in index order.

    The picked sets are pairwise disjoint, so the cost is at most
    max_set_size times the optimum.
    """
    _require_hittable(inst)
    chosen: set[int] = set()
    for s in inst.sets:
        if not chosen.intersection(s):
            chosen.update(s)
    return HsSolution(tuple(sorted(chosen)), optimal=False)


def hs_greedy_frequency(inst: HsInstance) -> HsSolution:
    """Repeatedly take the element hitting the most unhit sets (ties: lowest id)."""
    _require_hittable(inst)
    unhit = [set(s) for s in inst.sets]
    chosen: list[int] = []
    while unhit:
        counts: dict[int, int] = {}
        for s in unhit:
            for e in s:
                counts[e] = counts.get(e, 0) + 1
        best = max(counts, key=lambda e: (counts[e], -e))
        chosen.append(best)
        unhit = [s for s in unhit if best not in s]
    return HsSolution(tuple(sorted(chosen)), optimal=False)


def hs_branch_exact(
    inst: HsInstance,
    budget: int | None = None,
    max_nodes: int = BRANCH_NODE_CAP,
) -> HsSolution | None:
    """Minimum hitting set by depth-first branching on a smallest unhit set.

    Bounded by the incumbent (seeded from the set-wise greedy) and, when
    given, by budget: returns None when no hitting set of size <= budget
    exists. Raises CapExceeded after max_nodes search nodes.
    """
    _require_hittable(inst)
    if not inst.sets:
        return HsSolution((), optimal=True)
    greedy = hs_greedy_setwise(inst).chosen
    best: tuple[int, ...] | None = greedy if budget is None or len(greedy) <= budget else None
    # bound = size of the smallest solution found so far that we still accept
    bound = len(greedy) if best is not None else budget + 1
    nodes = 0

    sets = [frozenset(s) for s in inst.sets]

    def descend(chosen: set[int]) -> None:
        nonlocal best, bound, nodes
        nodes += 1
        if nodes > max_nodes:
            raise CapExceeded(f"branching exceeded {max_nodes} nodes")
        unhit = [s for s in sets if not chosen.intersection(s)]
        if not unhit:
            best = tuple(sorted(chosen))
            bound = len(chosen)
            return
        if len(chosen) + 1 >= bound:
            return
        pivot = min(unhit, key=lambda s: (len(s), sorted(s)))
        for e in sorted(pivot):
            chosen.add(e)
            descend(chosen)
            chosen.remove(e)

    descend(set())
    if best is None or (budget is not None and len(best) > budget):
        return None
    return HsSolution(best, optimal=True)


def _superset_rule(sets: list[frozenset[int]], trace: list[str]) -> bool:
    """R1: drop any set containing another (equal sets keep the earlier)."""
    drop: set[int] = set()
    for i, si in enumerate(sets):
        if i in drop:
            continue
        for j, sj in enumerate(sets):
            if j == i or j in drop:
                continue
            if sj < si or (sj == si and j < i):
                drop.add(i)
                trace.append(f"R1 drop set {i} (superset of set {j})")
                break
    if drop:
        sets[:] = [s for i, s in enumerate(sets) if i not in drop]
    return bool(drop)


def _element_domination_rule(sets: list[frozenset[int]], trace: list[str]) -> bool:
    """R2: delete element x when every set containing x also contains some y."""
    occ: dict[int, set[int]] = {}
    for j, s in enumerate(sets):
        for e in s:
            occ.setdefault(e, set()).add(j)
    for x in sorted(occ):
        for y in sorted(occ):
            if y == x:
                continue
            if occ[x] <= occ[y] and (occ[x] != occ[y] or y < x):
                sets[:] = [s - {x} for s in sets]
                trace.append(f"R2 drop element {x} (dominated by {y})")
                return True
    return False


def _sunflower_rule(sets: list[frozenset[int]], k: int, trace: list[str]) -> bool:
    """R3: collapse > k sets sharing core C, pairwise disjoint outside C, to C.

    Any hitting set of size <= k must meet the core (pigeonhole over the
    petals), so replacing the group by C preserves all size-<= k solutions.
    Cores are taken greedily from pairwise intersections.
    """
    cores = sorted(
        {tuple(sorted(sets[i] & sets[j])) for i in range(len(sets)) for j in range(i + 1, len(sets))}
    )
    for core_t in cores:
        core = frozenset(core_t)
        picked: list[int] = []
        outside: set[int] = set()
        for j, s in enumerate(sets):
            petal = s - core
            if core <= s and not petal & outside:
                picked.append(j)
                outside |= petal
        keep = picked[0] if picked else None
        if len(picked) > k and (len(picked) > 1 or sets[keep] != core):
            dropped = set(picked[1:])
            sets[keep] = core
            sets[:] = [s for j, s in enumerate(sets) if j not in dropped]
            trace.append(f"R3 collapse {len(picked)} sets with core {sorted(core)}")
            return True
    return False


def hs_reduce_rules(inst: HsInstance, k: int) -> tuple[HsInstance, list[int], list[str]]:
    """Kernelize for parameter k with superset, domination and sunflower rules.

    Returns (kernel, forced, trace). The kernel admits a hitting set of size
    <= k iff the instance does, and is never larger. forced lists elements
    pinned by singleton kernel sets (mandatory in any hitting set); trace
    records each rule application.
    """
    if k < 0:
        raise ValueError("parameter k must be non-negative")
    sets = [frozenset(s) for s in inst.sets]
    trace: list[str] = []
    changed = True
    while changed:
        changed = _superset_rule(sets, trace)
        changed = _element_domination_rule(sets, trace) or changed
        changed = _sunflower_rule(sets, k, trace) or changed
    kernel = HsInstance.build(inst.n_elements, [sorted(s) for s in sets])
    forced = sorted({s[0] for s in kernel.sets if len(s) == 1})
    return kernel, forced, trace


def parse_hs_instance(text: str) -> HsInstance:
    """Parse `p hs <n_elements> <n_sets>` plus one `s <k> <ids...>` per set."""
    n_elements = n_sets = None
    sets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n_elements is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(fields) != 4 or fields[1] != "hs":
                raise FormatError("expected 'p hs <n_elements> <n_sets>'", lineno)
            try:
                n_elements, n_sets = int(fields[2]), int(fields[3])
            except ValueError:
                raise FormatError("non-integer counts", lineno) from None
        elif fields[0] == "s":
            if n_elements is None:
                raise FormatError("set line before problem line", lineno)
            try:
                values = [int(x) for x in fields[1:]]
            except ValueError:
                raise FormatError("non-integer field in set line", lineno) from None
            if not values:
                raise FormatError("expected 's <k> <ids...>'", lineno)
            k, ids = values[0], values[1:]
            if len(ids) != k:
                raise FormatError(f"set declares {k} elements, lists {len(ids)}", lineno)
            for e in ids:
                if e < 0 or e >= n_elements:
                    raise FormatError(f"element {e} out of range", lineno)
            sets.append(sorted(set(ids)))
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno)
    if n_elements is None:
        raise FormatError("missing problem line")
    if len(sets) != n_sets:
        raise FormatError(f"declared {n_sets} sets, found {len(sets)}")
    return HsInstance.build(n_elements, sets)


def emit_hs_instance(inst: HsInstance) -> str:
    lines = [f"p hs {inst.n_elements} {inst.n_sets}"]
    for s in inst.sets:
        lines.append(" ".join(["s", str(len(s))] + [str(e) for e in s]))
    return "\n".join(lines) + "\n"


def parse_hs_solution(text: str) -> list[int]:
    """Parse `s hs <cost>` plus one `v <element_id>` line per element."""
    cost = None
    chosen: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "s":
            if cost is not None:
                raise FormatError("duplicate solution header", lineno)
            if len(fields) != 3 or fields[1] != "hs":
                raise FormatError("expected 's hs <cost>'", lineno)
            cost = int(fields[2])
        elif fields[0] == "v":
            if len(fields) != 2:
                raise FormatError("expected 'v <element_id>'", lineno)
            chosen.append(int(fields[1]))
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno)
    if cost is None:
        raise FormatError("missing solution header")
    chosen = sorted(set(chosen))
    if len(chosen) != cost:
        raise FormatError(f"header cost {cost} disagrees with {len(chosen)} elements")
    return chosen


def emit_hs_solution(chosen) -> str:
    ids = sorted(set(chosen))
    lines = [f"s hs {len(ids)}"] + [f"v {e}" for e in ids]
    return "\n".join(lines) + "\n"
