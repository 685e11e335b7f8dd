"""Transformation-semigroup corpus: generation, endomorphism enumeration,
and the tensor-power sweep."""
import itertools

import pytest

from hjlab import (
    CorpusEntry,
    compose,
    enumerate_endomorphisms,
    generate_corpus,
    mulclose,
    sweep_semigroups,
    sweep_tensor_power,
    transformation_semigroup,
)

import oracles


def test_compose_is_function_composition():
    f, g = (1, 2, 0), (0, 0, 1)
    assert compose(f, g) == tuple(f[g[x]] for x in range(3))


def test_mulclose_is_closed():
    gens = [(1, 2, 0), (1, 0, 2)]
    els = mulclose(gens, 100)
    assert els is not None
    for a in els:
        for b in els:
            assert compose(a, b) in els
    assert len(els) == 6  # the two generators build S_3


def test_mulclose_overflow_returns_none():
    assert mulclose([(1, 2, 3, 0)], 3) is None


def test_transformation_semigroup_matches_composition():
    els = mulclose([(1, 2, 0)], 100)
    entry = transformation_semigroup(sorted(els))
    S = entry if not isinstance(entry, tuple) else entry[0]
    order = S.order
    elements = sorted(els)
    for i in range(order):
        for j in range(order):
            assert elements[S.mul(i, j)] == compose(elements[i], elements[j])


def test_corpus_is_seed_deterministic():
    a = generate_corpus(count=20, max_order=5, seed=7)
    b = generate_corpus(count=20, max_order=5, seed=7)
    assert [(e.degree, e.elements) for e in a] == [(e.degree, e.elements) for e in b]
    c = generate_corpus(count=20, max_order=5, seed=8)
    assert [(e.degree, e.elements) for e in a] != [(e.degree, e.elements) for e in c]


def test_corpus_respects_bounds_and_is_duplicate_free():
    entries = generate_corpus(count=30, max_order=6, max_degree=4, seed=3)
    assert len(entries) == 30
    seen = set()
    for e in entries:
        assert 1 <= len(e.elements) <= 6
        assert 2 <= e.degree <= 4
        key = (e.degree, tuple(e.elements))
        assert key not in seen
        seen.add(key)


def test_endomorphisms_match_naive_filter():
    entries = generate_corpus(count=25, max_order=4, seed=1)
    for e in entries:
        table = [[int(e.semigroup.mul(a, b)) for b in range(e.semigroup.order)]
                 for a in range(e.semigroup.order)]
        got = sorted(tuple(h) for h in enumerate_endomorphisms(e.semigroup))
        want = sorted(oracles.all_endomorphisms(table))
        assert got == want


def test_endomorphisms_of_left_zero_are_all_maps():
    from hjlab import FiniteSemigroup
    n = 3
    S = FiniteSemigroup([[a] * n for a in range(n)])
    assert len(list(enumerate_endomorphisms(S))) == n ** n


def test_sweep_is_clean_on_the_default_corpus():
    entries = generate_corpus(count=50, max_order=6, seed=0)
    report = sweep_tensor_power(entries, ks=(2, 3))
    assert report.ok
    assert report.semigroups == 50
    assert report.endomorphisms > 0
    assert report.checks >= report.endomorphisms
    assert report.failures == []


def test_sweep_semigroups_single_k():
    entries = generate_corpus(count=10, max_order=5, seed=0)
    report = sweep_semigroups([e.semigroup for e in entries], ks=(2,))
    assert report.ok and report.semigroups == 10
