"""Character-sum oracle: exact counts, embeddings, towers, invariance."""

import pytest

from unitroots.errors import TooLarge
from unitroots.ffield import field, find_root, multiplicative_generator
from unitroots.gfpoly import find_irreducible
from unitroots.hyperg import LaurentSpec
from unitroots.oracle import (CycloInt, FqTower, _char_sum_slow, char_sum,
                              char_sum_table, embed_and_estimate, orbit_degree)
from unitroots.weights import ExponentSet

KLOOSTERMAN = ExponentSet(1, ((1,), (-1,)))
SINGLE = ExponentSet(1, ((1,),))
TRIANGLE = ExponentSet(2, ((1, 0), (0, 1), (-1, -1)))


def test_find_irreducible_examples():
    assert find_irreducible(2, 1) == (0, 1)          # t itself
    assert find_irreducible(3, 2) == (1, 0, 1)       # t^2 + 1
    assert find_irreducible(2, 2) == (1, 1, 1)       # t^2 + t + 1
    assert find_irreducible(5, 1) == (0, 1)


def test_orbit_degree():
    spec = LaurentSpec(KLOOSTERMAN, 3, 1, 1, ((1,), (2,)))
    assert orbit_degree(spec) == 1
    spec = LaurentSpec(KLOOSTERMAN, 3, 2, 1, ((0, 1), (1,)))
    assert orbit_degree(spec) == 2
    spec = LaurentSpec(KLOOSTERMAN, 3, 2, 1, ((1,), (2,)))
    assert orbit_degree(spec) == 1  # prime-field values in a quadratic presentation
    spec = LaurentSpec(SINGLE, 3, 1, 1, ((0,),))
    assert orbit_degree(spec) == 1  # zero vector


def test_char_sum_single_f3():
    spec = LaurentSpec(SINGLE, 3, 1, 1, ((1,),))
    row = char_sum(spec, 1)
    assert row.counts == (0, 1, 1)
    assert row.S == CycloInt.from_int(3, -1)
    table = char_sum_table(spec, 4)
    assert all(r.S == CycloInt.from_int(3, -1) for r in table.rows)


def test_char_sum_kloosterman_f3():
    spec = LaurentSpec(KLOOSTERMAN, 3, 1, 1, ((1,), (1,)))
    row = char_sum(spec, 1)
    assert row.counts == (0, 1, 1)  # x=1 -> 2, x=2 -> 1
    assert row.S == CycloInt.from_int(3, -1)


def test_kloosterman_p2_sums_match_quadratic():
    # frozen by hand from the L-polynomial z^2 + z + 2: S_l = -(a^l + b^l)
    spec = LaurentSpec(KLOOSTERMAN, 2, 1, 1, ((1,), (1,)))
    table = char_sum_table(spec, 6)
    ints = [r.S.counts[0] for r in table.rows]
    assert ints == [1, 3, -5, -1, 11, -9]


def test_count_conservation():
    spec = LaurentSpec(TRIANGLE, 2, 1, 1, ((1,), (1,), (1,)))
    table = char_sum_table(spec, 4)
    for row in table.rows:
        assert sum(row.counts) == (2 ** row.field_degree - 1) ** 2


def test_frobenius_invariance():
    # replacing lambda-bar by its q-power leaves every sum unchanged
    s1 = LaurentSpec(KLOOSTERMAN, 3, 2, 1, ((0, 1), (1,)))
    s2 = LaurentSpec(KLOOSTERMAN, 3, 2, 1, ((0, 2), (1,)))  # t -> t^3 = 2t
    t1 = char_sum_table(s1, 4)
    t2 = char_sum_table(s2, 4)
    for r1, r2 in zip(t1.rows, t2.rows):
        assert r1.S == r2.S


def test_embed_and_estimate_single(ring3):
    spec = LaurentSpec(SINGLE, 3, 1, 1, ((1,),))
    est = embed_and_estimate(char_sum_table(spec, 5), ring3)
    assert all(v == 0 for v in est.s_valuations)
    assert all(u == ring3.one() for u in est.ratios)


def test_embed_and_estimate_kloosterman(ring3):
    spec = LaurentSpec(KLOOSTERMAN, 3, 1, 1, ((1,), (1,)))
    est = embed_and_estimate(char_sum_table(spec, 6), ring3)
    assert all(v == 0 for v in est.s_valuations)
    # strictly increasing difference orders, then indistinguishable
    seen_none = False
    prev = None
    for v in est.ratio_diff_orders:
        if v is None:
            seen_none = True
            continue
        assert not seen_none
        if prev is not None:
            assert v > prev
        prev = v
    assert est.ratios[-1].rows == ((16,), (0,))


def test_fast_path_matches_slow_path():
    spec = LaurentSpec(TRIANGLE, 2, 1, 1, ((1,), (1,), (1,)))
    tower = FqTower(spec)
    row = char_sum(spec, 2, tower)
    F, lams = tower.level(2)
    slow = _char_sum_slow(F, lams, TRIANGLE.vectors, F.size - 1, 2)
    assert tuple(int(x) for x in slow) == row.counts


def test_zero_coefficient_contributes_trace_zero():
    spec = LaurentSpec(KLOOSTERMAN, 3, 1, 1, ((1,), (0,)))
    row = char_sum(spec, 1)
    # f = x over the torus of F_3
    assert row.S == CycloInt.from_int(3, -1)


def test_enumeration_guard():
    spec = LaurentSpec(TRIANGLE, 5, 1, 1, ((1,), (1,), (1,)))
    with pytest.raises(TooLarge):
        char_sum(spec, 6, guard=10 ** 6)


def test_tower_levels():
    spec = LaurentSpec(KLOOSTERMAN, 2, 2, 1, ((0, 1), (1,)))
    tower = FqTower(spec)
    assert tower.d == 2 and tower.base_degree == 2
    F, lams = tower.level(3)
    assert F.k == 6
    # the embedded coefficient satisfies the subfield polynomial
    acc = F.zero()
    for c in reversed(tower.sub_poly):
        acc = F.mul(acc, lams[0])
        acc = F.add(acc, F.elem((c,)))
    assert F.is_zero(acc)


def test_cycloint_arithmetic():
    a = CycloInt.from_counts(3, (4, 1, 1))
    assert a == CycloInt.from_int(3, 3)  # 4 + z + z^2 = 3 + (1+z+z^2)
    b = CycloInt.from_int(3, -3)
    assert (a + b).is_zero()


def test_ffield_basics():
    F4 = field(2, 2)
    g = multiplicative_generator(F4)
    assert F4.pow(g, 3) == F4.one() and F4.pow(g, 1) != F4.one()
    F9 = field(3, 2)
    # trace of t in F9 with t^2 = -1: t + t^3 = t + 2t = 0
    assert F9.trace((0, 1)) == 0
    assert F9.trace((1, 0)) == 2
    root = find_root(F9, find_irreducible(3, 2))
    acc = F9.zero()
    for c in reversed(find_irreducible(3, 2)):
        acc = F9.mul(acc, root)
        acc = F9.add(acc, F9.elem((c,)))
    assert F9.is_zero(acc)


def test_guard_override():
    spec = LaurentSpec(KLOOSTERMAN, 2, 1, 1, ((1,), (1,)))
    row = char_sum(spec, 3, guard=5, override=True)
    assert sum(row.counts) == 7
