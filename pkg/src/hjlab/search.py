"""Backtracking search: monochromatic-witness search over retraction
families, and exact small Hales-Jewett / van der Waerden numbers via proper
coloring of line hypergraphs.

The solver is a plain trail-based backtracker.  Propagation is the hypergraph
unit rule: an edge with all but one vertex colored alike prunes that color
from the remaining vertex, and singleton domains cascade.  Symmetry pruning
rejects partial colorings that are not lexicographically minimal in their
orbit, compared along one fixed decision order, which keeps the pruning sound
for SAT and UNSAT alike.
"""
from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from itertools import permutations, product as iproduct
from math import factorial

import numpy as np

from .instances import (
    VdwEncoding,
    decode_word,
    encode_word,
    enumerate_lines,
    line_count,
)
from .words import WordSemigroup, substitution_family

DEFAULT_NODE_BUDGET = 10 ** 9
DEFAULT_TIME_BUDGET = 600.0

SAT = "sat"
UNSAT = "unsat"
BUDGET = "budget"


@dataclass
class LineHypergraph:
    """Vertices are the n^N constant words (base-n encoded); edges are the
    point sets of the combinatorial lines."""

    n: int
    N: int
    edges: list

    @classmethod
    def build(cls, n, N):
        edges = [
            tuple(encode_word(p, n) for p in line.points)
            for line in enumerate_lines(n, N)
        ]
        return cls(n, N, edges)

    @property
    def num_vertices(self):
        return self.n ** self.N

    def check_shape(self):
        assert len(self.edges) == line_count(self.n, self.N)
        covered = set()
        for e in self.edges:
            assert len(set(e)) == self.n
            covered.update(e)
        assert covered == set(range(self.num_vertices))


def ap_edges(k, M):
    """All k-term arithmetic progressions inside [1..M], as 0-based tuples."""
    edges = []
    for d in range(1, M):
        for a in range(1, M + 1 - (k - 1) * d):
            edges.append(tuple(a - 1 + i * d for i in range(k)))
    return edges


@dataclass
class Symmetry:
    """A group of cell permutations paired with color permutations.

    ``cell_perms`` has one row per group element (the set is closed under
    inverses, so rows can be read in either direction); ``color_perms`` maps
    old colors to new.
    """

    cell_perms: np.ndarray  # (G, V)
    color_perms: np.ndarray  # (C, r)
    spec: tuple = ()


SYMMETRY_GROUP_LIMIT = 100_000


def hj_symmetry(n, N, r, include=("color", "coordinate", "alphabet")):
    # an oversized subgroup is dropped rather than enumerated: pruning less
    # is always sound, and N! * n! explodes quickly on wide alphabets
    include = set(include)
    if "coordinate" in include and factorial(N) > SYMMETRY_GROUP_LIMIT:
        include.discard("coordinate")
    if "alphabet" in include:
        width = factorial(n) * (factorial(N) if "coordinate" in include else 1)
        if width > SYMMETRY_GROUP_LIMIT:
            include.discard("alphabet")
    V = n ** N
    words = [decode_word(v, n, N) for v in range(V)]
    coord = list(permutations(range(N))) if "coordinate" in include else [tuple(range(N))]
    alpha = list(permutations(range(n))) if "alphabet" in include else [tuple(range(n))]
    seen = {}
    for cp in coord:
        for ap in alpha:
            arr = np.empty(V, dtype=np.int64)
            for v, w in enumerate(words):
                img = tuple(ap[w[cp[i]]] for i in range(N))
                arr[v] = encode_word(img, n)
            seen[arr.tobytes()] = arr
    cells = np.stack(list(seen.values()))
    colors = (
        np.array(list(permutations(range(r))), dtype=np.int64)
        if "color" in include
        else np.arange(r, dtype=np.int64)[None, :]
    )
    return Symmetry(cells, colors, tuple(sorted(include)))


def vdw_symmetry(M, r, include=("color", "reflection")):
    idx = np.arange(M, dtype=np.int64)
    rows = [idx]
    if "reflection" in include and M > 1:
        rows.append(idx[::-1].copy())
    colors = (
        np.array(list(permutations(range(r))), dtype=np.int64)
        if "color" in include
        else np.arange(r, dtype=np.int64)[None, :]
    )
    return Symmetry(np.stack(rows), colors, tuple(sorted(include)))


def canonical_prune(colors, order, symmetry):
    """True when the decided prefix of ``colors`` (along ``order``) is not
    lexicographically minimal in its orbit, so the node can be discarded.

    The comparison walks the fixed order and stops at the first position
    where either side is undecided; only a strict defined difference prunes.
    """
    colors = np.asarray(colors)
    order = np.asarray(order)
    decided = colors[order] >= 0
    d = int(np.argmin(decided)) if not decided.all() else len(order)
    if d == 0:
        return False
    sub = symmetry.cell_perms[:, order[:d]]  # (G, d) cells to read from
    av = colors[sub]  # (G, d) their colors, -1 undecided
    undef = av < 0
    t = symmetry.color_perms[:, np.maximum(av, 0)]  # (C, G, d)
    t = np.where(undef[None, :, :], -1, t)
    s = colors[order[:d]]
    stop = undef[None, :, :] | (t != s)
    any_stop = stop.any(axis=2)
    first = np.argmax(stop, axis=2)
    t_first = np.take_along_axis(t, first[:, :, None], axis=2)[:, :, 0]
    s_first = s[first]
    undef_first = np.take_along_axis(
        np.broadcast_to(undef[None, :, :], t.shape), first[:, :, None], axis=2
    )[:, :, 0]
    prune = any_stop & ~undef_first & (t_first < s_first)
    return bool(prune.any())


@dataclass
class ColoringResult:
    status: str  # sat | unsat | budget
    coloring: list | None
    nodes: int
    elapsed: float


class _BudgetHit(Exception):
    pass


class HypergraphSolver:
    """Proper-coloring backtracker over a hypergraph: no edge may end up
    with all its vertices the same color."""

    def __init__(
        self,
        num_vertices,
        edges,
        r,
        symmetry=None,
        budget_nodes=DEFAULT_NODE_BUDGET,
        budget_seconds=DEFAULT_TIME_BUDGET,
        symmetry_depth=None,
    ):
        self.V = num_vertices
        self.r = r
        self.edges = [tuple(e) for e in edges]
        self.edge_len = [len(e) for e in self.edges]
        self.vertex_edges = [[] for _ in range(num_vertices)]
        for ei, e in enumerate(self.edges):
            for v in e:
                self.vertex_edges[v].append(ei)
        degree = [len(self.vertex_edges[v]) for v in range(num_vertices)]
        self.order = sorted(range(num_vertices), key=lambda v: (-degree[v], v))
        self.order_np = np.array(self.order, dtype=np.int64)
        self.symmetry = symmetry
        self.symmetry_depth = num_vertices if symmetry_depth is None else symmetry_depth
        self.budget_nodes = budget_nodes
        self.budget_seconds = budget_seconds

    # -- state ---------------------------------------------------------
    def _reset(self):
        self.colors = np.full(self.V, -1, dtype=np.int64)
        self.domains = [(1 << self.r) - 1] * self.V
        self.counts = [[0] * self.r for _ in self.edges]
        self.uncolored = list(self.edge_len)
        self.trail = []
        self.forced = []
        self.nodes = 0
        self.deadline = time.monotonic() + self.budget_seconds

    def _assign(self, v, c):
        # all edge counters are updated before any conflict return, so the
        # trail undo (which reverses every edge of v) stays symmetric
        self.colors[v] = c
        self.trail.append((0, v, 0))
        conflict = False
        pending = []
        for ei in self.vertex_edges[v]:
            cnt = self.counts[ei]
            cnt[c] += 1
            self.uncolored[ei] -= 1
            if cnt[c] == self.edge_len[ei]:
                conflict = True  # monochromatic edge
            elif self.uncolored[ei] == 1 and cnt[c] == self.edge_len[ei] - 1:
                pending.append(ei)
        if conflict:
            return False
        for ei in pending:
            for u in self.edges[ei]:
                if self.colors[u] < 0:
                    break
            if not self._remove_color(u, c):
                return False
        return True

    def _remove_color(self, u, c):
        m = self.domains[u]
        bit = 1 << c
        if not (m & bit):
            return True
        self.trail.append((1, u, m))
        m &= ~bit
        self.domains[u] = m
        if m == 0:
            return False
        if m & (m - 1) == 0:
            self.forced.append((u, m.bit_length() - 1))
        return True

    def _undo(self, mark):
        while len(self.trail) > mark:
            kind, v, old = self.trail.pop()
            if kind == 0:
                c = int(self.colors[v])
                for ei in self.vertex_edges[v]:
                    self.counts[ei][c] -= 1
                    self.uncolored[ei] += 1
                self.colors[v] = -1
            else:
                self.domains[v] = old

    def _decide(self, v, c):
        """Assign + propagate; returns a trail mark, or None after undoing
        a failed branch."""
        mark = len(self.trail)
        self.forced = []
        ok = self._assign(v, c)
        while ok and self.forced:
            u, fc = self.forced.pop()
            if self.colors[u] >= 0:
                continue
            ok = self._assign(u, fc)
        if not ok:
            self._undo(mark)
            return None
        return mark

    def _pruned(self):
        if self.symmetry is None:
            return False
        decided = self.colors[self.order_np] >= 0
        d = int(np.argmin(decided)) if not decided.all() else self.V
        if d > self.symmetry_depth:
            return False
        return canonical_prune(self.colors, self.order_np, self.symmetry)

    def _charge_node(self):
        self.nodes += 1
        if self.nodes > self.budget_nodes:
            raise _BudgetHit
        if self.nodes % 2048 == 0 and time.monotonic() > self.deadline:
            raise _BudgetHit

    def _search(self, hint):
        d = hint
        while d < self.V and self.colors[self.order[d]] >= 0:
            d += 1
        if d == self.V:
            return [int(c) for c in self.colors]
        v = self.order[d]
        dom = self.domains[v]
        for c in range(self.r):
            if not (dom >> c) & 1:
                continue
            self._charge_node()
            mark = self._decide(v, c)
            if mark is None:
                continue
            if not self._pruned():
                res = self._search(d + 1)
                if res is not None:
                    return res
            self._undo(mark)
        return None

    def solve(self, prefix=()):
        """prefix: forced decisions [(vertex, color), ...] applied first,
        used by the parallel splitter."""
        self._reset()
        start = time.monotonic()
        try:
            for v, c in prefix:
                if self.colors[v] >= 0:
                    if int(self.colors[v]) == c:
                        continue
                    return ColoringResult(UNSAT, None, self.nodes, time.monotonic() - start)
                if not (self.domains[v] >> c) & 1:
                    return ColoringResult(UNSAT, None, self.nodes, time.monotonic() - start)
                self._charge_node()
                if self._decide(v, c) is None:
                    return ColoringResult(UNSAT, None, self.nodes, time.monotonic() - start)
                if self._pruned():
                    return ColoringResult(UNSAT, None, self.nodes, time.monotonic() - start)
            res = self._search(0)
        except _BudgetHit:
            return ColoringResult(BUDGET, None, self.nodes, time.monotonic() - start)
        elapsed = time.monotonic() - start
        if res is None:
            return ColoringResult(UNSAT, None, self.nodes, elapsed)
        return ColoringResult(SAT, res, self.nodes, elapsed)


def verify_proper_coloring(edges, coloring):
    """Full edge scan: no edge monochromatic, all vertices colored."""
    if any(c is None or c < 0 for c in coloring):
        return False
    for e in edges:
        first = coloring[e[0]]
        if all(coloring[u] == first for u in e[1:]):
            return False
    return True


def _solve_branch(payload):
    solver = _solver_from_payload(payload)
    res = solver.solve(prefix=payload["prefix"])
    return {"status": res.status, "coloring": res.coloring, "nodes": res.nodes}


def _solver_from_payload(payload):
    kind = payload["kind"]
    r = payload["r"]
    if kind == "hj":
        hg = LineHypergraph.build(payload["n"], payload["N"])
        V, edges = hg.num_vertices, hg.edges
        sym = hj_symmetry(payload["n"], payload["N"], r, payload["sym"]) if payload["sym"] else None
    else:
        V, edges = payload["M"], ap_edges(payload["k"], payload["M"])
        sym = vdw_symmetry(payload["M"], r, payload["sym"]) if payload["sym"] else None
    return HypergraphSolver(
        V,
        edges,
        r,
        symmetry=sym,
        budget_nodes=payload["budget_nodes"],
        budget_seconds=payload["budget_seconds"],
        symmetry_depth=payload["symmetry_depth"],
    )


def _solve_parallel(payload, threads):
    """Split on the first two decision positions; first SAT wins."""
    solver = _solver_from_payload(payload)
    split = [solver.order[i] for i in range(min(2, solver.V))]
    branches = [
        dict(payload, prefix=[(v, c) for v, c in zip(split, combo)])
        for combo in iproduct(range(payload["r"]), repeat=len(split))
    ]
    start = time.monotonic()
    total_nodes = 0
    sat = None
    budget_hit = False
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {pool.submit(_solve_branch, b): b for b in branches}
        pending = set(futures)
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                out = fut.result()
                total_nodes += out["nodes"]
                if out["status"] == SAT and sat is None:
                    sat = out["coloring"]
                elif out["status"] == BUDGET:
                    budget_hit = True
            if sat is not None:
                for fut in pending:
                    fut.cancel()
                break
    elapsed = time.monotonic() - start
    if sat is not None:
        return ColoringResult(SAT, sat, total_nodes, elapsed)
    if budget_hit:
        return ColoringResult(BUDGET, None, total_nodes, elapsed)
    return ColoringResult(UNSAT, None, total_nodes, elapsed)


def hj_check(
    n,
    r,
    N,
    budget_nodes=DEFAULT_NODE_BUDGET,
    budget_seconds=DEFAULT_TIME_BUDGET,
    symmetry=("color", "coordinate", "alphabet"),
    symmetry_depth=32,
    threads=1,
):
    """Decide whether some r-coloring of [n]^N avoids monochromatic lines.

    SAT results carry an explicit coloring, re-verified against the line
    hypergraph before return; UNSAT carries the node count of the completed
    backtracking; budget exhaustion is reported as its own status.
    """
    if n < 2 or N < 1 or r < 1:
        raise ValueError("need n >= 2, r >= 1, N >= 1")
    payload = {
        "kind": "hj",
        "n": n,
        "N": N,
        "r": r,
        "sym": tuple(symmetry) if symmetry else (),
        "budget_nodes": budget_nodes,
        "budget_seconds": budget_seconds,
        "symmetry_depth": symmetry_depth,
        "prefix": [],
    }
    if threads > 1:
        res = _solve_parallel(payload, threads)
    else:
        res = _solver_from_payload(payload).solve()
    if res.status == SAT:
        hg = LineHypergraph.build(n, N)
        assert verify_proper_coloring(hg.edges, res.coloring), "solver returned a bad coloring"
    return res


def vdw_check(
    k,
    r,
    M,
    budget_nodes=DEFAULT_NODE_BUDGET,
    budget_seconds=DEFAULT_TIME_BUDGET,
    symmetry=("color", "reflection"),
    symmetry_depth=32,
    threads=1,
):
    """Decide whether some r-coloring of [1..M] avoids k-term monochromatic
    arithmetic progressions."""
    if k < 2 or r < 1 or M < 1:
        raise ValueError("need k >= 2, r >= 1, M >= 1")
    payload = {
        "kind": "vdw",
        "k": k,
        "M": M,
        "r": r,
        "sym": tuple(symmetry) if symmetry else (),
        "budget_nodes": budget_nodes,
        "budget_seconds": budget_seconds,
        "symmetry_depth": symmetry_depth,
        "prefix": [],
    }
    if threads > 1:
        res = _solve_parallel(payload, threads)
    else:
        res = _solver_from_payload(payload).solve()
    if res.status == SAT:
        assert verify_proper_coloring(ap_edges(k, M), res.coloring), "solver returned a bad coloring"
    return res


@dataclass
class NumberResult:
    """Outcome of a least-N sweep: value if the threshold was reached,
    otherwise a lower bound; per-size results kept for certificates."""

    value: int | None
    lower_bound: int
    budget_hit: bool
    runs: list = field(default_factory=list)  # (size, ColoringResult)

    @property
    def decided(self):
        return self.value is not None


def hj_number(n, r, N_max, **kwargs):
    """Least N <= N_max with no line-free r-coloring of [n]^N."""
    runs = []
    for N in range(1, N_max + 1):
        res = hj_check(n, r, N, **kwargs)
        runs.append((N, res))
        if res.status == UNSAT:
            return NumberResult(N, N - 1, False, runs)
        if res.status == BUDGET:
            return NumberResult(None, N - 1, True, runs)
    return NumberResult(None, N_max, False, runs)


def vdw_number(k, r, M_max, **kwargs):
    """Least M <= M_max such that every r-coloring of [1..M] has a
    monochromatic k-term progression."""
    runs = []
    for M in range(1, M_max + 1):
        res = vdw_check(k, r, M, **kwargs)
        runs.append((M, res))
        if res.status == UNSAT:
            return NumberResult(M, M - 1, False, runs)
        if res.status == BUDGET:
            return NumberResult(None, M - 1, True, runs)
    return NumberResult(None, M_max, False, runs)


# -- witness search ------------------------------------------------------


@dataclass
class WitnessOutcome:
    status: str  # "found" | "exhausted"
    witness: object | None = None
    images: list | None = None
    color: int | None = None
    checked: int = 0
    budget_note: str = ""


def word_witness_search(ws, family, coloring, max_len=8):
    """First variable word (length-lexicographic) whose substitution images
    are monochromatic.  Exhausted only means the length budget ran out: the
    abstract theorem guarantees a witness at some finite length."""
    checked = 0
    for w in ws.iter_words(max_len, require_variable=True):
        checked += 1
        images = family.images(w)
        colors = {coloring.color_of(im) for im in images}
        if len(colors) == 1:
            return WitnessOutcome("found", w, images, colors.pop(), checked)
    return WitnessOutcome(
        "exhausted", checked=checked, budget_note=f"no witness up to length {max_len}"
    )


def finite_witness_search(S, family, coloring):
    """First element of R = S\\T (index order) with a monochromatic image
    set.  The scan is complete, so exhaustion here is a true negative."""
    checked = 0
    for v in family.view.complement():
        checked += 1
        images = family.images(v)
        colors = {coloring.color_of(x) for x in images}
        if len(colors) == 1:
            return WitnessOutcome("found", v, images, colors.pop(), checked)
    return WitnessOutcome("exhausted", checked=checked, budget_note="R exhausted")


@dataclass
class ViaHjOutcome:
    status: str
    word: tuple | None = None
    progression: list | None = None
    color: int | None = None
    checked: int = 0


def find_ap_via_words(k, integer_coloring, max_len=8):
    """Cross-validate the digit-sum reduction: pull an integer coloring back
    to words over [k], find a monochromatic line, and read off the
    arithmetic progression it projects to."""
    ws = WordSemigroup(k)
    family = substitution_family(ws)
    enc = VdwEncoding(k, max_len)
    pulled = enc.pullback(integer_coloring)
    out = word_witness_search(ws, family, pulled, max_len=max_len)
    if out.status != "found":
        return ViaHjOutcome("exhausted", checked=out.checked)
    ap = enc.line_image(out.witness)
    diffs = {b - a for a, b in zip(ap, ap[1:])}
    assert len(diffs) == 1 and diffs.pop() >= 1, "line image is not a progression"
    ap_colors = {integer_coloring.color_of(m) for m in ap}
    assert ap_colors == {out.color}, "projected progression is not monochromatic"
    return ViaHjOutcome("found", out.witness, ap, out.color, out.checked)
