"""sl2-triples, gradings, d-invariants, Darboux frames, the dimension bound."""

import pytest

from superw.algebra import build_gl, build_osp, catalog, jordan_nilpotent
from superw.dynkin import (
    DInvariants,
    complete_sl2,
    darboux_frame,
    frame_for,
    frame_gram_report,
    grade,
    invariants,
    kw_bound,
    reduce_algebra,
    reduce_frame,
    sl2_for_jordan,
)
from superw.errors import NotAdmissibleAtP, NotNilpotent
from superw.fields import QQ
from superw.linalg import vec_is_zero, vec_scale
from tests.test_algebra import osp12_named_basis


def test_sl2_jordan_gl21():
    g = build_gl(2, 1, QQ)
    t = sl2_for_jordan(g, [2], [1])
    assert t.e == g.element_from_name("E[1,2]")
    assert t.f == g.element_from_name("E[2,1]")
    hmat = g.matrix_of(t.h)
    assert [hmat[i][i] for i in range(3)] == [1, -1, 0]
    assert g.bracket(t.h, t.e) == vec_scale(QQ, QQ.from_int(2), t.e)
    assert g.bracket(t.e, t.f) == t.h


def test_complete_sl2_solver_matches_relations():
    g = build_osp(1, 2, QQ)
    named = osp12_named_basis(g)
    t = complete_sl2(g, named["e"])
    assert g.bracket(t.h, t.e) == vec_scale(QQ, QQ.from_int(2), t.e)
    assert g.bracket(t.h, t.f) == vec_scale(QQ, QQ.from_int(-2), t.f)
    assert g.bracket(t.e, t.f) == t.h
    assert g.form_value(t.e, t.f) * t.scale == 1
    with pytest.raises(NotNilpotent):
        complete_sl2(g, named["h"])


def test_zero_nilpotent_trivial():
    g = build_gl(1, 1, QQ)
    t = complete_sl2(g, [QQ.zero] * g.dim)
    assert vec_is_zero(QQ, t.e)
    gr = grade(g, t)
    assert list(gr.pieces) == [0] and gr.pieces[0].dim == g.dim
    d = invariants(gr)
    assert (d.d0, d.d1) == (0, 0)
    assert d.l == g.space.dim_even and d.q == g.space.dim_odd
    assert d.q_prime == d.q
    fr = darboux_frame(gr)
    assert fr.m.dim == 0 and fr.middle_norm is None


def test_osp12_regular_grading_and_invariants():
    g = build_osp(1, 2, QQ)
    fr = frame_for(g, e=osp12_named_basis(g)["e"])
    gr = fr.grading
    expect = {-2: (1, 0), -1: (0, 1), 0: (1, 0), 1: (0, 1), 2: (1, 0)}
    assert {i: gr.graded_dim(i) for i in gr.pieces} == expect
    d = fr.inv
    assert (d.d0, d.d1, d.r, d.s, d.l, d.q, d.q_prime) == (2, 1, 1, 0, 1, 1, 2)
    assert fr.m.graded_dims() == (1, 0)
    assert fr.m_prime.graded_dims() == (1, 1)
    # middle norm 2 is not a rational square; kept as data
    assert fr.middle_norm == 2
    assert all(ok for _, ok in frame_gram_report(fr))


def test_gl21_e12_frame():
    g = build_gl(2, 1, QQ)
    fr = frame_for(g, jordan=([2], [1]))
    d = fr.inv
    assert (d.d0, d.d1, d.r) == (2, 2, 2)
    assert d.r % 2 == 0
    assert fr.m.graded_dims() == (1, 1)
    assert fr.middle_norm is None
    assert all(ok for _, ok in frame_gram_report(fr))
    # hyperbolic v-pair: <v1, v2> = 1, both isotropic
    assert len(fr.v_basis) == 2


def test_kw_bound_values():
    assert kw_bound(DInvariants(2, 1, 1, 0, 1, 1), 3) == 6
    assert kw_bound(DInvariants(0, 0, 0, 0, 1, 1), 5) == 1
    assert kw_bound(DInvariants(2, 2, 2, 0, 3, 2), 5) == 10


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)])
def test_parity_identity_all_jordan_types(mn):
    m, n = mn
    g = build_gl(m, n, QQ)

    def partitions(k):
        if k == 0:
            yield ()
            return
        def gen(k, mx):
            if k == 0:
                yield ()
                return
            for first in range(min(k, mx), 0, -1):
                for rest in gen(k - first, first):
                    yield (first,) + rest
        yield from gen(k, k)

    for lam in partitions(m):
        for mu in partitions(n):
            fr = frame_for(g, jordan=(list(lam), list(mu)))
            d = fr.inv
            assert d.d0 % 2 == 0
            assert (d.d1 - d.r) % 2 == 0
            assert fr.m.graded_dims() == (d.d0 // 2, d.d1 // 2)
            assert all(ok for _, ok in frame_gram_report(fr))


def test_reduce_frame_osp12():
    g = build_osp(1, 2, QQ)
    fr = frame_for(g, e=osp12_named_basis(g)["e"])
    for p in (3, 5, 7):
        fp = reduce_frame(fr, p)
        assert fp.inv.as_dict() == fr.inv.as_dict()
        assert all(ok for _, ok in frame_gram_report(fp))
        if p == 7:
            # 2 = 3^2 mod 7: middle vector normalizes
            assert fp.middle_norm == 1
        else:
            assert fp.middle_norm == 2


def test_reduce_algebra_axioms():
    from superw.algebra import verify_axioms
    g = build_osp(1, 2, QQ)
    for p in (3, 5):
        rep = verify_axioms(reduce_algebra(g, p))
        assert rep.passed, rep.failures()


def test_grading_bracket_compatibility():
    g = build_gl(2, 1, QQ)
    fr = frame_for(g, jordan=([2], [1]))
    gr = fr.grading
    for i, pi in gr.pieces.items():
        for j, pj in gr.pieces.items():
            target = gr.piece(i + j)
            for a in pi.rows:
                for b in pj.rows:
                    w = g.bracket(list(a), list(b))
                    if vec_is_zero(QQ, w):
                        continue
                    assert target is not None and target.contains(w)
