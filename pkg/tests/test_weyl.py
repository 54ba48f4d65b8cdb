from collections import deque
from functools import lru_cache
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from agcycles import golden, weyl
from agcycles.weyl import AdmissiblePartition, FinalType, WeylElt


@lru_cache(maxsize=None)
def bfs_lengths(g):
    """Coxeter length as graph distance from the identity in the Cayley graph."""
    gens = [weyl.generator(g, i) for i in range(1, g + 1)]
    start = WeylElt.identity(g)
    dist = {start.perm: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            v = w * s
            if v.perm not in dist:
                dist[v.perm] = dist[w.perm] + 1
                queue.append(v)
    return dist


@pytest.mark.parametrize("g", range(1, 5))
def test_length_is_coxeter_length(g):
    dist = bfs_lengths(g)
    elems = weyl.all_weyl_elements(g)
    assert len(dist) == len(elems) == 2 ** g * factorial(g)
    for w in elems:
        assert weyl.length(w) == dist[w.perm]
        assert weyl.length(w) + weyl.codim(w) == g * g


@pytest.mark.parametrize("g", range(1, 5))
def test_longest_element(g):
    assert max(bfs_lengths(g).values()) == g * g


@pytest.mark.parametrize("g", range(1, 6))
def test_partition_bijections(g):
    parts = weyl.admissible_partitions(g)
    assert len(parts) == 2 ** g
    nus = {weyl.mu_to_nu(m).nu for m in parts}
    assert len(nus) == 2 ** g
    for m in parts:
        nu = weyl.mu_to_nu(m)
        assert weyl.nu_to_mu(nu) == m
        w = weyl.mu_to_weyl(m)
        word = weyl.reduced_word(m)
        assert weyl.evaluate_word(g, word) == w
        assert len(word) == weyl.length(w) == g * (g + 1) // 2 - m.area
        # the codimension statistic is offset from the area by g(g-1)/2
        assert weyl.codim(w) == m.area + g * (g - 1) // 2


@pytest.mark.parametrize("g", range(1, 5))
def test_reduced_words_are_reduced(g):
    dist = bfs_lengths(g)
    for m in weyl.admissible_partitions(g):
        word = weyl.reduced_word(m)
        assert dist[weyl.evaluate_word(g, word).perm] == len(word)


def test_g3_table():
    rows = weyl.enumerate_strata(3)
    got = {(r.mu.mu, r.nu.nu, r.weyl.perm, r.length, r.word) for r in rows}
    assert got == set(golden.PRINTED_WEYL_G3)
    assert len(rows) == 8
    assert [r.mu.mu for r in rows][0] == ()


def test_g1_rows():
    rows = {r.mu.mu: r for r in weyl.enumerate_strata(1)}
    assert rows[()].weyl.perm == (2, 1) and rows[()].length == 1
    assert rows[(1,)].weyl.perm == (1, 2) and rows[(1,)].length == 0
    assert rows[()].area == 0 and rows[(1,)].area == 1


@pytest.mark.parametrize("g", range(2, 6))
def test_generator_relations(g):
    e = WeylElt.identity(g)
    s = {i: weyl.generator(g, i) for i in range(1, g + 1)}
    for i in s:
        assert s[i] * s[i] == e
    for i in range(1, g - 1):
        assert s[i] * s[i + 1] * s[i] == s[i + 1] * s[i] * s[i + 1]
    assert s[g - 1] * s[g] * s[g - 1] * s[g] == s[g] * s[g - 1] * s[g] * s[g - 1]
    for i in range(1, g + 1):
        for j in range(i + 2, g + 1):
            assert s[i] * s[j] == s[j] * s[i]


@given(st.integers(1, 4).flatmap(lambda g: st.tuples(st.just(g), st.lists(st.integers(1, g), max_size=12))))
def test_word_evaluation_is_homomorphism(gw):
    g, word = gw
    k = len(word) // 2
    # letters relabel values left to right, so a later letter composes on the left
    assert weyl.evaluate_word(g, word) == weyl.evaluate_word(g, word[k:]) * weyl.evaluate_word(g, word[:k])
    w = weyl.evaluate_word(g, word)
    assert w * w.inverse() == WeylElt.identity(g)
    assert weyl.length(w) <= len(word)
    assert weyl.length(w) % 2 == len(word) % 2


@pytest.mark.parametrize("g", range(1, 5))
@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_batch_stats(g, backend):
    elems = weyl.all_weyl_elements(g)
    ell, cod = weyl.batch_stats(elems, backend=backend)
    assert np.array_equal(ell, [weyl.length(w) for w in elems])
    assert np.array_equal(cod, [weyl.codim(w) for w in elems])


def test_validation():
    with pytest.raises(ValueError):
        FinalType(3, (1, 3, 3))
    with pytest.raises(ValueError):
        AdmissiblePartition(3, (2, 2))
    with pytest.raises(ValueError):
        AdmissiblePartition(2, (3,))
    with pytest.raises(ValueError):
        WeylElt(2, (2, 1, 3, 4))
    with pytest.raises(ValueError):
        weyl.generator(2, 3)


def test_final_type_extension():
    f = FinalType(3, (0, 1, 2))
    assert f.extended() == (0, 0, 1, 2, 2, 2, 3)


def test_complement_and_order():
    m = AdmissiblePartition(3, (3, 1))
    assert m.complement() == AdmissiblePartition(3, (2,))
    assert AdmissiblePartition(3, (2,)) <= m
    assert not m <= AdmissiblePartition(3, (2, 1))


def test_examples():
    assert weyl.final_type_example_prank(3, 1).nu == (1, 1, 2)
    assert weyl.hyperelliptic_partition(4).mu == (4, 2)
    assert weyl.parse_partition(3, [1, 3]).mu == (3, 1)
    assert weyl.render_word(()) == "1"
    assert weyl.render_word((3, 2, 3)) == "s3s2s3"
