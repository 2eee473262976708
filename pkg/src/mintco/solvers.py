"""Algorithm portfolio for minimum topic-connected overlay construction.

Special-case linear solvers, exact solvers (direct enumeration and via the
hitting-set reduction), the quadratic-ratio approximation, a component-merge
greedy baseline, and an automatic dispatcher.
"""

import math
import time
from itertools import combinations

from .charsys import AUDIENCE_CAP, EdgeCodec, lift_hs_solution, reduce_tco_to_hs
from .core import (
    CapExceeded,
    Instance,
    Overlay,
    PreconditionError,
    SolveReport,
    UnionFind,
    is_topic_connected,
    preprocess_dominated,
    reattach,
)
from .hitting import BRANCH_NODE_CAP, hs_branch_exact, hs_greedy_setwise

ENUM_STATE_CAP = 2**24
AUTO_SETS_CAP = 4096


def _report(algo, overlay, optimal, t0, seed=None, notes=""):
    elapsed = (time.perf_counter() - t0) * 1000.0
    return SolveReport(algo, overlay, overlay.cost, optimal, elapsed, seed, notes)


def shared_topic_witness(inst: Instance) -> tuple[int, int] | None:
    """A user pair subscribed to two or more common topics, if any."""
    seen: set[tuple[int, int]] = set()
    for aud in inst.audiences:
        for i, u in enumerate(aud):
            for v in aud[i + 1 :]:
                if (u, v) in seen:
                    return (u, v)
                seen.add((u, v))
    return None


def solve_trivial_pairs(inst: Instance) -> SolveReport:
    """Optimal solver for audiences of size at most two.

    Each two-user audience forces its direct edge, and those edges alone
    are feasible, so their union is the unique minimum solution.
    """
    t0 = time.perf_counter()
    if inst.max_audience > 2:
        raise PreconditionError(f"max audience {inst.max_audience} > 2")
    edges = {(aud[0], aud[1]) for aud in inst.audiences if len(aud) == 2}
    return _report("trivial-pairs", Overlay(frozenset(edges)), True, t0)


def solve_star_disjoint(inst: Instance) -> SolveReport:
    """Optimal solver when every user pair shares at most one topic.

    Builds a star per topic centered at its lowest-id subscriber. No edge
    can serve two topics, so per-topic spanning trees are optimal and the
    cost is sum_t max(|U_t| - 1, 0).
    """
    t0 = time.perf_counter()
    witness = shared_topic_witness(inst)
    if witness is not None:
        raise PreconditionError(f"users {witness[0]} and {witness[1]} share >= 2 topics")
    edges = set()
    for aud in inst.audiences:
        edges.update((aud[0], v) for v in aud[1:])
    return _report("star-disjoint", Overlay(frozenset(edges)), True, t0)


def solve_exact_enum(inst: Instance, cap: int = ENUM_STATE_CAP) -> SolveReport:
    """Exact solver by exhaustive edge-subset search of increasing size.

    Dominated users are stripped first and reattached afterwards; candidate
    edges are the co-topic pairs of the reduced instance, and subsets are
    enumerated lexicographically so the first feasible one is a minimum.
    Raises CapExceeded after cap feasibility checks.
    """
    t0 = time.perf_counter()
    reduction = preprocess_dominated(inst)
    reduced = reduction.reduced
    candidates = EdgeCodec.from_instance(reduced).id_to_edge
    # the optimum needs at most t*(m-1) edges: merged per-topic spanning trees
    i_max = min(len(candidates), reduced.n_topics * max(reduced.n_users - 1, 0))
    states = 0
    for i in range(i_max + 1):
        for combo in combinations(candidates, i):
            states += 1
            if states > cap:
                raise CapExceeded(f"enumeration exceeded {cap} states")
            overlay = Overlay(frozenset(combo))
            if is_topic_connected(reduced, overlay)[0]:
                full = reattach(overlay, reduction)
                return _report("exact-enum", full, True, t0, notes=f"states={states}")
    raise AssertionError("no feasible subset within the spanning-tree bound")


def solve_exact_hs(
    inst: Instance,
    budget: int | None = None,
    audience_cap: int = AUDIENCE_CAP,
    max_nodes: int = BRANCH_NODE_CAP,
) -> SolveReport | None:
    """Exact solver through the hitting-set reduction and branching.

    Returns None when a budget is given and no overlay of at most that many
    edges exists. Raises CapExceeded on audience or branch-node caps.
    """
    t0 = time.perf_counter()
    hs, codec = reduce_tco_to_hs(inst, cap=audience_cap)
    solution = hs_branch_exact(hs, budget=budget, max_nodes=max_nodes)
    if solution is None:
        return None
    overlay = lift_hs_solution(codec, solution.chosen)
    return _report("exact-hs", overlay, solution.optimal, t0)


def solve_approx_hs(inst: Instance, audience_cap: int = AUDIENCE_CAP) -> SolveReport:
    """Set-wise greedy hitting of the reduced instance.

    With d the maximum audience size, every characteristic set has at most
    floor(d/2)*ceil(d/2) elements, which bounds the approximation ratio.
    """
    t0 = time.perf_counter()
    hs, codec = reduce_tco_to_hs(inst, cap=audience_cap)
    solution = hs_greedy_setwise(hs)
    overlay = lift_hs_solution(codec, solution.chosen)
    return _report("approx-hs", overlay, False, t0)


def greedy_component_merge(inst: Instance) -> SolveReport:
    """Greedy baseline: repeatedly add the edge merging the most components.

    Tracks one union-find per topic; each step adds the co-topic edge with
    the largest total drop in audience component counts (ties: smallest
    edge), until every topic is connected.
    """
    t0 = time.perf_counter()
    finders = [UnionFind(aud) for aud in inst.audiences]
    pending = {t: len(aud) - 1 for t, aud in enumerate(inst.audiences) if len(aud) > 1}
    topics_of: dict[tuple[int, int], list[int]] = {}
    for t, aud in enumerate(inst.audiences):
        for i, u in enumerate(aud):
            for v in aud[i + 1 :]:
                topics_of.setdefault((u, v), []).append(t)
    candidates = sorted(topics_of)
    edges = set()
    while pending:
        best_edge, best_gain = None, 0
        for edge in candidates:
            u, v = edge
            gain = sum(
                1
                for t in topics_of[edge]
                if finders[t].find(u) != finders[t].find(v)
            )
            if gain > best_gain:
                best_edge, best_gain = edge, gain
        assert best_edge is not None, "disconnected topic with no merging edge"
        edges.add(best_edge)
        u, v = best_edge
        for t in topics_of[best_edge]:
            if finders[t].union(u, v):
                pending[t] -= 1
                if pending[t] == 0:
                    del pending[t]
    return _report("greedy-cm", Overlay(frozenset(edges)), False, t0)


def small_topic_threshold(n_users: int) -> int:
    """Largest topic count with the polynomial-time exhaustive-search bound.

    Evaluates floor((1 + eps(n))^-1 * loglog n) with the minimal admissible
    eps(n) = (3/2 logloglog n) / (loglog n - 3/2 logloglog n), binary logs.
    Advisory only; solve_exact_enum accepts any instance under its cap.
    """
    if n_users < 16:
        raise ValueError("threshold undefined for n < 16 (eps(n) <= 0)")
    loglog = math.log2(math.log2(n_users))
    logloglog = math.log2(loglog)
    eps = 1.5 * logloglog / (loglog - 1.5 * logloglog)
    return math.floor(loglog / (1.0 + eps))


def solve_auto(inst: Instance, include_greedy: bool = False) -> SolveReport:
    """Dispatch to the cheapest suitable algorithm.

    Audiences of size <= 2 route to the pair solver; pairwise shared-topic
    counts <= 1 route to the star solver; instances whose reduction stays
    small route to exact branching (falling back to the approximation on a
    cap); everything else is approximated.
    """
    if inst.max_audience <= 2:
        report = solve_trivial_pairs(inst)
    elif shared_topic_witness(inst) is None:
        report = solve_star_disjoint(inst)
    else:
        est_sets = sum(2 ** (len(a) - 1) - 1 for a in inst.audiences if len(a) > 1)
        report = None
        if inst.max_audience <= AUDIENCE_CAP and est_sets <= AUTO_SETS_CAP:
            try:
                report = solve_exact_hs(inst)
            except CapExceeded:
                report = None
        if report is None:
            report = solve_approx_hs(inst)
    notes = f"auto route={report.algo}"
    if include_greedy:
        notes += f" greedy-cm cost={greedy_component_merge(inst).cost}"
    return SolveReport(
        report.algo, report.overlay, report.cost, report.optimal,
        report.elapsed_ms, report.seed, notes,
    )
