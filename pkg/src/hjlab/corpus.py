"""Seeded corpus of small transformation semigroups.

Random Cayley tables are almost never associative, so test semigroups are
grown as subsemigroups of the full transformation monoid on a few points:
pick random functions, close under composition.  Associativity then holds by
construction and the validator merely re-confirms it.  The corpus feeds the
headline sweep: the fold-then-map tensor-power identity checked for every
endomorphism, every principal ultrafilter and k in {2, 3}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .semigroups import FiniteSemigroup
from .ultra import _power_member_vec, _tensor_member_vec


def compose(f, g):
    """f after g, on tuples: x -> f[g[x]]."""
    return tuple(f[y] for y in g)


def mulclose(gens, maxsize=None):
    """Close a set of transformations under composition.

    Returns the sorted element list, or None once the closure exceeds
    ``maxsize``.
    """
    els = set(gens)
    changed = True
    while changed:
        changed = False
        for a in list(els):
            for b in list(els):
                c = compose(a, b)
                if c not in els:
                    els.add(c)
                    changed = True
                    if maxsize is not None and len(els) > maxsize:
                        return None
    return sorted(els)


def transformation_semigroup(elements):
    """Tabulate a composition-closed set of transformations."""
    index = {f: i for i, f in enumerate(elements)}
    table = [[index[compose(a, b)] for b in elements] for a in elements]
    labels = ["".join(str(v) for v in f) for f in elements]
    return FiniteSemigroup(table, labels=labels)


@dataclass
class CorpusEntry:
    degree: int
    generators: list
    elements: list
    semigroup: FiniteSemigroup


def generate_corpus(count=50, max_order=6, max_degree=4, seed=0, max_attempts=50_000):
    """Deterministic corpus: same seed, same semigroups, same order."""
    rng = random.Random(seed)
    seen = set()
    out = []
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        degree = rng.randint(2, max_degree)
        gen_count = rng.randint(1, 2)
        gens = [
            tuple(rng.randrange(degree) for _ in range(degree))
            for _ in range(gen_count)
        ]
        els = mulclose(gens, maxsize=max_order)
        if els is None:
            continue
        key = (degree, tuple(els))
        if key in seen:
            continue
        seen.add(key)
        out.append(CorpusEntry(degree, gens, els, transformation_semigroup(els)))
    return out


def enumerate_endomorphisms(S):
    """All maps h: S -> S with h(a*b) = h(a)*h(b), by backtracking.

    Each product constraint is checked at the first depth where all three
    participating elements have images assigned.
    """
    n = S.order
    table = S.table.tolist()
    # pending[d]: the (a, b) pairs whose constraint becomes decidable once
    # element d receives its image
    pending = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            pending[max(a, b, table[a][b])].append((a, b))
    h = [-1] * n
    out = []

    def extend(i):
        if i == n:
            out.append(np.array(h, dtype=np.int64))
            return
        for v in range(n):
            h[i] = v
            ok = True
            for a, b in pending[i]:
                if h[table[a][b]] != table[h[a]][h[b]]:
                    ok = False
                    break
            if ok:
                extend(i + 1)
        h[i] = -1

    extend(0)
    return out


@dataclass
class CorpusFailure:
    entry_index: int
    endomorphism: tuple
    k: int
    v_point: int
    subset_mask: int


@dataclass
class CorpusReport:
    semigroups: int = 0
    endomorphisms: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def sweep_semigroups(semigroups, ks=(2, 3)):
    """Sweep bare FiniteSemigroup objects (no corpus bookkeeping)."""
    return sweep_tensor_power(
        [CorpusEntry(0, [], [], S) for S in semigroups], ks
    )


def sweep_tensor_power(entries, ks=(2, 3)):
    """Check the tensor-power identity across a corpus.

    For every entry, every endomorphism h, every k and every principal V the
    image of V's k-fold tensor power under (v1..vk) -> h(v1*...*vk) is
    compared, subset by subset, with the k-fold product power of h(V).  The
    subset tables are shared per semigroup, so the sweep stays fast even on
    endomorphism-rich semigroups.
    """
    report = CorpusReport(semigroups=len(entries))
    for idx, entry in enumerate(entries):
        S = entry.semigroup
        n = S.order
        masks = np.arange(1 << n)
        abits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
        prod_idx = {}
        if 2 in ks:
            prod_idx[2] = S.table.reshape(-1)
        if 3 in ks:
            prod_idx[3] = S.table[S.table].reshape(-1)
        endos = enumerate_endomorphisms(S)
        report.endomorphisms += len(endos)
        for h in endos:
            for k in ks:
                pre = abits[:, h[prod_idx[k]]]
                for vp in range(n):
                    report.checks += 1
                    lhs = _tensor_member_vec(pre, n, k, vp)
                    rhs = _power_member_vec(abits, S.table, h, vp, k)
                    diff = np.nonzero(lhs != rhs)[0]
                    if len(diff):
                        report.failures.append(
                            CorpusFailure(idx, tuple(int(x) for x in h), k, vp, int(diff[0]))
                        )
    return report
