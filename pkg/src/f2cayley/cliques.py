"""Exact clique, independence and chromatic computations on Cayley graphs.

A set X spans a clique iff all pairwise sums of distinct elements land in the
generator set; in particular a subspace H gives a clique on its members iff
every nonzero element of H is a generator.  `subspace_cliques` counts those
qualifying subspaces per dimension, and its deepest witness seeds the
branch-and-bound maximum clique search.  Budgets are counted in search-tree
nodes, never wall time, so runs are reproducible.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import PreconditionError
from .cayley import CayleyGraph
from .gf2 import ElemSet, Subspace, bits_of, rref_insert, xor_shift

__all__ = [
    "CliqueOutcome",
    "SubspaceCliqueReport",
    "subspace_cliques",
    "max_clique",
    "independence_number",
    "verify_clique",
    "verify_independent",
    "Coloring",
    "coset_coloring",
    "greedy_coloring",
    "verify_coloring",
    "ChromaticBracket",
    "chromatic_bracket",
]


@dataclass(frozen=True)
class CliqueOutcome:
    size: int
    witness: ElemSet
    optimal: bool
    method: str  # exact | subspace-seeded | budget-exhausted
    nodes: int


@dataclass(frozen=True)
class SubspaceCliqueReport:
    """Counts M_m of m-dimensional subspaces whose nonzero part is all-edges.

    M_0 = 1 (the zero subspace) always.  If the memory budget was hit,
    `complete` is False and counts are exact only for the dimensions present;
    deeper dimensions are absent rather than undercounted.
    """

    counts: Dict[int, int]
    max_dim: int
    complete: bool
    witness_basis: Tuple[int, ...]


def subspace_cliques(G: CayleyGraph, memory_budget: int = 256 * 1024 * 1024) -> SubspaceCliqueReport:
    """Count qualifying subspaces per dimension, level by level.

    Each level-d subspace carries W(H) = intersection over h in H of (A + h),
    the set of elements v with v + H entirely inside A; children are H plus a
    coset v + H for v in W(H) \\ H, deduplicated by canonical RREF basis.
    """
    n = G.n
    a_mask = G.generators.mask
    counts = {0: 1}
    witness: Tuple[int, ...] = ()
    complete = True
    entry_bytes = (1 << n) // 4 + 120  # members + W bitmasks plus dict overhead
    max_entries = max(memory_budget // (2 * entry_bytes), 64)

    level: Dict[Tuple[int, ...], Tuple[int, int]] = {(): (1, a_mask)}
    dim = 0
    while True:
        nxt: Dict[Tuple[int, ...], Tuple[int, int]] = {}
        overflow = False
        for basis, (members, w) in level.items():
            cand = w & ~members
            while cand:
                lsb = cand & -cand
                v = lsb.bit_length() - 1
                coset = xor_shift(members, v, n)
                cand &= ~coset
                child = rref_insert(basis, v)
                if child in nxt:
                    continue
                if len(nxt) >= max_entries:
                    overflow = True
                    break
                nxt[child] = (members | coset, w & xor_shift(w, v, n))
            if overflow:
                break
        if overflow:
            complete = False
            break
        if not nxt:
            break
        dim += 1
        counts[dim] = len(nxt)
        witness = next(iter(nxt))
        level = nxt
    return SubspaceCliqueReport(
        counts=counts, max_dim=max(counts), complete=complete, witness_basis=witness
    )


def _members_mask(basis: Tuple[int, ...], n: int) -> int:
    m = 1
    for b in basis:
        m |= xor_shift(m, b, n)
    return m


def verify_clique(G: CayleyGraph, X: ElemSet) -> bool:
    """Independent O(|X|^2) pairwise check."""
    els = X.elements()
    a = G.generators.mask
    return all((a >> (els[i] ^ els[j])) & 1 for i in range(len(els)) for j in range(i + 1, len(els)))


def verify_independent(G: CayleyGraph, X: ElemSet) -> bool:
    els = X.elements()
    a = G.generators.mask
    return not any(
        (a >> (els[i] ^ els[j])) & 1 for i in range(len(els)) for j in range(i + 1, len(els))
    )


class _Budget(Exception):
    pass


def max_clique(
    G: CayleyGraph,
    budget: Optional[int] = None,
    subspace_report: Optional[SubspaceCliqueReport] = None,
) -> CliqueOutcome:
    """Exact maximum clique by branch and bound with a greedy-coloring bound.

    The graph is vertex-transitive, so every maximum clique has a translate
    through vertex 0 and the root branches only inside the neighborhood of 0.
    The incumbent starts from the deepest subspace clique.  With a node
    budget the search may stop early, returning the incumbent with
    optimal=False.
    """
    n = G.n
    adj = G.adjacency_masks()
    rep = subspace_report if subspace_report is not None else subspace_cliques(G)
    seed_mask = _members_mask(rep.witness_basis, n)
    state = {"best_mask": seed_mask, "best_size": seed_mask.bit_count(), "nodes": 0}

    def color_order(P: int) -> Tuple[List[int], List[int]]:
        order: List[int] = []
        bound: List[int] = []
        color = 0
        while P:
            color += 1
            q = P
            while q:
                lsb = q & -q
                v = lsb.bit_length() - 1
                order.append(v)
                bound.append(color)
                P ^= lsb
                q = (q ^ lsb) & ~adj[v]
        return order, bound

    def expand(r_mask: int, r_size: int, P: int):
        order, bound = color_order(P)
        for i in range(len(order) - 1, -1, -1):
            if r_size + bound[i] <= state["best_size"]:
                return
            v = order[i]
            vb = 1 << v
            if not P & vb:
                continue
            state["nodes"] += 1
            if budget is not None and state["nodes"] > budget:
                raise _Budget
            P2 = P & adj[v]
            if P2:
                expand(r_mask | vb, r_size + 1, P2)
            elif r_size + 1 > state["best_size"]:
                state["best_size"] = r_size + 1
                state["best_mask"] = r_mask | vb
            P &= ~vb

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, (1 << n) + 200))
    try:
        expand(1, 1, adj[0])
        optimal = True
    except _Budget:
        optimal = False
    finally:
        sys.setrecursionlimit(old_limit)

    witness = ElemSet(n, state["best_mask"])
    assert verify_clique(G, witness)
    if optimal:
        method = "exact"
    elif state["best_mask"] == seed_mask:
        method = "subspace-seeded"
    else:
        method = "budget-exhausted"
    return CliqueOutcome(
        size=state["best_size"], witness=witness, optimal=optimal, method=method,
        nodes=state["nodes"],
    )


def independence_number(G: CayleyGraph, budget: Optional[int] = None) -> CliqueOutcome:
    """Maximum independent set = maximum clique of the complement Cayley graph."""
    out = max_clique(G.complement(), budget=budget)
    assert verify_independent(G, out.witness)
    return out


@dataclass(frozen=True)
class Coloring:
    colors: Tuple[int, ...]
    num_colors: int


def coset_coloring(G: CayleyGraph, V: Subspace) -> Coloring:
    """Color by cosets of an independent subspace V.

    Proper iff no generator lies in V \\ {0} (a within-coset pair (x, x+a)
    exists exactly when a is a nonzero element of V); violated preconditions
    report such a pair.  Uses 2^(n - dim V) colors.  Properness is re-checked
    edge-by-edge for n <= 10; beyond that the precondition already proves it.
    """
    if V.n != G.n:
        raise PreconditionError("subspace lives in the wrong ambient dimension")
    viol = _members_mask(V.basis, G.n) & ~1 & G.generators.mask
    if viol:
        s = (viol & -viol).bit_length() - 1
        raise PreconditionError(
            f"subspace is not independent: vertices 0 and {s} are adjacent with sum in V"
        )
    reps: Dict[int, int] = {}
    colors = []
    for x in range(1 << G.n):
        rep = V.reduce(x)
        colors.append(reps.setdefault(rep, len(reps)))
    col = Coloring(colors=tuple(colors), num_colors=len(reps))
    if G.n <= 10:
        assert verify_coloring(G, col)
    return col


def verify_coloring(G: CayleyGraph, coloring: Coloring) -> bool:
    colors = coloring.colors
    for x in range(1 << G.n):
        cx = colors[x]
        for a in bits_of(G.generators.mask):
            if colors[x ^ a] == cx:
                return False
    return True


def greedy_coloring(G: CayleyGraph) -> Coloring:
    """Deterministic saturation-guided greedy (plain greedy for n > 10)."""
    N = 1 << G.n
    adj = G.adjacency_masks()
    colors = [-1] * N
    if G.n > 10:
        for v in range(N):
            used = 0
            for u in bits_of(adj[v] & ((1 << v) - 1)):
                used |= 1 << colors[u]
            c = 0
            while (used >> c) & 1:
                c += 1
            colors[v] = c
    else:
        sat = [0] * N  # bitmask of neighbor colors
        for _ in range(N):
            v = max(
                (x for x in range(N) if colors[x] == -1),
                key=lambda x: (sat[x].bit_count(), -x),
            )
            c = 0
            while (sat[v] >> c) & 1:
                c += 1
            colors[v] = c
            for u in bits_of(adj[v]):
                sat[u] |= 1 << c
    col = Coloring(colors=tuple(colors), num_colors=max(colors) + 1)
    if G.n <= 10:
        assert verify_coloring(G, col)
    return col


@dataclass(frozen=True)
class ChromaticBracket:
    lower: int
    upper: int
    exact: Optional[int]
    nodes: int


class _Done(Exception):
    pass


def _exact_chromatic(adj: List[int], N: int, lower: int, upper: int, budget: Optional[int]):
    """DSATUR branch and bound; returns (chi or None, nodes used)."""
    best = upper
    colors = [-1] * N
    state = {"nodes": 0}

    def rec(colored: int, num_used: int) -> None:
        nonlocal best
        if num_used >= best:
            return
        if colored == N:
            best = num_used
            if best == lower:
                raise _Done
            return
        state["nodes"] += 1
        if budget is not None and state["nodes"] > budget:
            raise _Budget
        # most saturated uncolored vertex, then lowest index
        bv, bused, bsat = -1, 0, (-1, 0)
        for v in range(N):
            if colors[v] == -1:
                used = 0
                for u in bits_of(adj[v]):
                    if colors[u] >= 0:
                        used |= 1 << colors[u]
                key = (used.bit_count(), -v)
                if key > bsat:
                    bsat, bv, bused = key, v, used
        for c in range(min(num_used + 1, best - 1)):
            if not (bused >> c) & 1:
                colors[bv] = c
                rec(colored + 1, max(num_used, c + 1))
                colors[bv] = -1

    try:
        rec(0, 0)
    except _Done:
        pass
    except _Budget:
        return None, state["nodes"]
    return best, state["nodes"]


def chromatic_bracket(
    G: CayleyGraph,
    budget: Optional[int] = None,
    subspace_report: Optional[SubspaceCliqueReport] = None,
    clique: Optional[CliqueOutcome] = None,
) -> ChromaticBracket:
    """Bracket the chromatic number; exact by exhaustive search when n <= 5.

    lower = max(clique size found, ceil(N / alpha upper bound)); the alpha
    upper bound comes from the exact independence number when its search
    completes, else from a coset clique cover (N / 2^d cliques for a
    qualifying d-dimensional subspace).  upper = min(greedy colors, coset
    coloring over the best independent subspace of the complement).
    Callers that already hold the subspace report or the clique outcome for G
    can pass them in to skip recomputation.
    """
    n, N = G.n, 1 << G.n
    rep = subspace_cliques(G) if subspace_report is None else subspace_report
    omega = clique if clique is not None else max_clique(G, budget=budget, subspace_report=rep)
    comp = G.complement()
    comp_rep = subspace_cliques(comp)
    alpha = max_clique(comp, budget=budget, subspace_report=comp_rep)
    nodes = omega.nodes + alpha.nodes

    alpha_ub = N >> rep.max_dim  # cosets of a qualifying subspace cover V by cliques
    if alpha.optimal:
        alpha_ub = min(alpha_ub, alpha.size)
    lower = max(omega.size, -(-N // alpha_ub))

    greedy = greedy_coloring(G)
    upper = greedy.num_colors
    indep_sub = Subspace(n, comp_rep.witness_basis)
    if indep_sub.dim > 0:
        upper = min(upper, coset_coloring(G, indep_sub).num_colors)
    assert lower <= upper

    exact = None
    if lower == upper:
        exact = lower
    elif n <= 5:
        adj = G.adjacency_masks()
        exact, used = _exact_chromatic(adj, N, lower, upper, budget)
        nodes += used
        if exact is not None:
            lower = upper = exact
    return ChromaticBracket(lower=lower, upper=upper, exact=exact, nodes=nodes)
