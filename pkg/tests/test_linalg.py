"""Exact graded linear algebra: kernels, intersections, solving, canonicality."""

import random
from fractions import Fraction

import pytest

from superw.errors import AmbientMismatch, NoSolution
from superw.fields import QQ, PrimeField
from superw.linalg import (
    GradedMap,
    GradedSpace,
    Subspace,
    full_space,
    identity,
    kernel,
    rank,
    solve_right,
    zero_space,
)


def test_kernel_zero_and_identity():
    sp = GradedSpace(["a", "b", "c"], [0, 0, 1])
    zero = GradedMap(QQ, [[Fraction(0)] * 3 for _ in range(3)], sp, sp, parity=0)
    k = kernel(zero)
    assert k.dim == 3 and k.graded_dims() == (2, 1)
    ident = GradedMap(QQ, identity(QQ, 3), sp, sp, parity=0)
    assert kernel(ident).dim == 0


def test_kernel_ad_e12_on_gl2():
    # ad(E12) on gl(2) over Q, basis (E11, E12, E21, E22); kernel is
    # span{E12, E11+E22} by a hand 4x4 elimination.
    sp = GradedSpace(["E11", "E12", "E21", "E22"], [0, 0, 0, 0])
    cols = {
        0: [0, -1, 0, 0],   # [E12,E11] = -E12
        1: [0, 0, 0, 0],
        2: [1, 0, 0, -1],   # [E12,E21] = E11-E22
        3: [0, 1, 0, 0],    # [E12,E22] = E12
    }
    mat = [[Fraction(cols[j][i]) for j in range(4)] for i in range(4)]
    k = kernel(GradedMap(QQ, mat, sp, sp, parity=0))
    assert k.dim == 2
    assert k.contains([Fraction(0), Fraction(1), Fraction(0), Fraction(0)])
    assert k.contains([Fraction(1), Fraction(0), Fraction(0), Fraction(1)])


def test_intersect():
    sp = GradedSpace(["x", "y", "z"], [0, 0, 0])
    v = full_space(sp, QQ)
    assert v.intersect(v) == v
    a = Subspace(sp, QQ, [[Fraction(1), Fraction(0), Fraction(0)]])
    b = Subspace(sp, QQ, [[Fraction(0), Fraction(1), Fraction(0)]])
    assert a.intersect(b).dim == 0
    # two generic planes in 3-space meet in a line
    c = Subspace(sp, QQ, [[Fraction(1), Fraction(0), Fraction(1)],
                          [Fraction(0), Fraction(1), Fraction(1)]])
    d = Subspace(sp, QQ, [[Fraction(1), Fraction(1), Fraction(0)],
                          [Fraction(0), Fraction(0), Fraction(1)]])
    meet = c.intersect(d)
    assert meet.dim == 1
    assert c.dim + d.dim - c.sum(d).dim == 1
    other = GradedSpace(["u", "v"], [0, 0])
    with pytest.raises(AmbientMismatch):
        a.intersect(Subspace(other, QQ, []))


def test_solve_right():
    x, ker = solve_right(QQ, identity(QQ, 3), [Fraction(4), Fraction(-1), Fraction(2)])
    assert x == [Fraction(4), Fraction(-1), Fraction(2)] and ker == []
    with pytest.raises(NoSolution):
        solve_right(QQ, [[Fraction(0)] * 2 for _ in range(2)],
                    [Fraction(1), Fraction(0)])
    # overdetermined consistent 3x2: rows (1,0),(0,1),(1,1), rhs (2,3,5)
    mat = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)],
           [Fraction(1), Fraction(1)]]
    x, ker = solve_right(QQ, mat, [Fraction(2), Fraction(3), Fraction(5)])
    assert x == [Fraction(2), Fraction(3)] and ker == []


@pytest.mark.parametrize("field", [QQ, PrimeField(3), PrimeField(7)])
def test_rank_nullity_random(field):
    rng = random.Random(11)
    sp_cache = {}
    for _ in range(25):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        if field is QQ:
            mat = [[QQ.random(rng) for _ in range(n)] for _ in range(m)]
        else:
            mat = [[field.random(rng) for _ in range(n)] for _ in range(m)]
        sp = sp_cache.setdefault(n, GradedSpace([f"b{i}" for i in range(n)], [0] * n))
        f = GradedMap(field, mat,
                      sp, GradedSpace([f"c{i}" for i in range(m)], [0] * m))
        assert kernel(f).dim + rank(field, mat) == n


def test_canonical_echelon():
    rng = random.Random(5)
    sp = GradedSpace(list("abcde"), [0] * 5)
    base = [[QQ.random(rng) for _ in range(5)] for _ in range(3)]
    s1 = Subspace(sp, QQ, base)
    # random invertible recombinations generate the same subspace
    for _ in range(10):
        mix = []
        for _ in range(4):
            coeffs = [QQ.random(rng) for _ in base]
            v = [sum(c * row[i] for c, row in zip(coeffs, base)) for i in range(5)]
            mix.append(v)
        s2 = Subspace(sp, QQ, mix)
        if s2.dim == s1.dim:
            assert s1 == s2


def test_numpy_path_matches_generic():
    # force both code paths on the same data and compare canonical bases
    p = 5
    f = PrimeField(p)
    rng = random.Random(3)
    rows = [[f.random(rng) for _ in range(80)] for _ in range(70)]
    import superw.linalg as L
    old = L._NUMPY_MIN_CELLS
    try:
        L._NUMPY_MIN_CELLS = 1
        fast, piv_fast = L.rref(f, rows)
        L._NUMPY_MIN_CELLS = 10**9
        slow, piv_slow = L.rref(f, rows)
    finally:
        L._NUMPY_MIN_CELLS = old
    assert piv_fast == piv_slow
    assert [list(map(int, r)) for r in fast] == [list(map(int, r)) for r in slow]


def test_zero_space_and_graded_dims():
    sp = GradedSpace(["a", "b", "c"], [0, 1, 1])
    assert zero_space(sp, QQ).dim == 0
    assert full_space(sp, QQ).graded_dims() == (1, 2)
