"""MeatAxe splitting, baby Verma search, Jordan-Chevalley, Levi pipeline."""

import numpy as np
import pytest

from superw.algebra import (
    build_gl,
    build_osp,
    catalog,
    triangular_decomposition,
)
from superw.dynkin import frame_for, kw_bound, reduce_frame
from superw.errors import Unsupported
from superw.fields import QQ
from superw.modrep import (
    FpModule,
    claim_at_most_one_odd,
    endomorphism_dims,
    is_irreducible,
    jordan_chevalley,
    levi_bound_report,
    levi_decompose,
    min_dim_search,
    min_poly_matrix,
    module_from_induced,
    modules_isomorphic,
    poly_factor,
    replay_certificate,
    restricted_weights,
    split,
    standard_levis,
    summand_nilpotents,
)


def test_polynomials_mod_p():
    # (t^2+1)(t+2) over F_3 = t^3 + 2t^2 + t + 2
    from superw.modrep import poly_mul
    assert poly_mul([1, 0, 1], [2, 1], 3) == [2, 1, 2, 1]
    f = poly_factor([2, 1, 2, 1], 3)
    assert ([2, 1], 1) in f and ([1, 0, 1], 1) in f


def test_min_poly():
    # Jordan block J_2(1) over F_5: minpoly (t-1)^2
    m = np.array([[1, 1], [0, 1]], dtype=np.int64)
    assert min_poly_matrix(m, 5) == [1, 3, 1]  # (t-1)^2 = t^2 - 2t + 1


def test_split_one_dim():
    mod = FpModule(3, [np.array([[2]])], [0], [0])
    out = split(mod)
    assert len(out) == 1 and out[0]["module"].dim == 1
    assert replay_certificate(out[0]["module"], out[0]["certificate"])


def osp12_regular_setup(p):
    g = build_osp(1, 2, QQ)
    cartan, pos, neg = triangular_decomposition(g)
    e = next(v for wt, v in pos if wt == (2,))
    fr_q = frame_for(g, e=e)
    return g, fr_q, reduce_frame(fr_q, p)


@pytest.mark.parametrize("p", [3, 5])
def test_osp12_baby_verma_simple(p):
    """The baby Verma at the regular nilpotent is simple of dimension 2p."""
    g, fr_q, fr = osp12_regular_setup(p)
    report = min_dim_search(g, fr_q, p)
    assert report["bound"] == 2 * p == kw_bound(fr.inv, p)
    assert report["min_dim"] == 2 * p and report["attained"]
    assert report["all_divisible"]
    assert report["weights"] == p
    # every factor IS the whole baby Verma
    assert all(e["dim"] == 2 * p for e in report["factors"])


@pytest.mark.parametrize("kind", ["gl(2|1)", "sl(2|1)"])
@pytest.mark.parametrize("p", [3, 5])
def test_min_dim_gl21_sl21(kind, p):
    g = catalog(kind)
    fr_q = frame_for(g, jordan=([2], [1]))
    report = min_dim_search(g, fr_q, p)
    assert report["bound"] == 2 * p
    assert report["min_dim"] == 2 * p and report["attained"]
    assert report["all_divisible"]


def test_gl11_kac_module_splits():
    """chi = 0, weight 0: the induced module has a proper trivial quotient."""
    g = catalog("gl(1|1)")
    fr_q = frame_for(g, jordan=([1], [1]))  # e = 0
    report = min_dim_search(g, fr_q, 3)
    # U_0: the lambda = 0 Kac-type module splits into two 1-dim factors
    dims = sorted(e["dim"] for e in report["factors"])
    assert report["min_dim"] == 1
    assert report["bound"] == 1
    assert 1 in dims


def test_endomorphism_dims_type_q():
    """The regular module of the 2-dim Clifford superalgebra Q_1 is type Q."""
    p = 3
    # Q_1 = k[J], J odd, J^2 = 1 acting on itself: basis (1, J)
    one = np.array([[1, 0], [0, 1]], dtype=np.int64)
    jmat = np.array([[0, 1], [1, 0]], dtype=np.int64)
    mod = FpModule(p, [one, jmat], [0, 1], [0, 1])
    assert endomorphism_dims(mod) == (1, 1)
    ok, cert = is_irreducible(mod)
    assert ok


def test_module_iso_detects_weight_twist():
    g, fr_q, fr = osp12_regular_setup(3)
    report = min_dim_search(g, fr_q, 3)
    assert report is not None
    # same-dimension simples from different weights need not be isomorphic;
    # just check the iso test is reflexive on one of them
    from superw.modrep import baby_verma
    from superw.algebra import triangular_decomposition as tri
    cartan, pos, neg = tri(g)
    lam = [fr.alg.field.from_int(1)]
    z1 = module_from_induced(baby_verma(g, fr, cartan, pos, neg, lam))
    z2 = module_from_induced(baby_verma(g, fr, cartan, pos, neg, lam))
    assert modules_isomorphic(z1, z2)


def test_jordan_chevalley_gl2():
    g = build_gl(2, 0, QQ)
    f = QQ
    x = g.expand_matrix([[f.from_int(1), f.one], [f.zero, f.one]])
    s, n = jordan_chevalley(g, x)
    assert g.matrix_of(s) == [[f.one, f.zero], [f.zero, f.one]]
    assert g.matrix_of(n) == [[f.zero, f.one], [f.zero, f.zero]]
    # nilpotent input: s = 0
    e = g.element_from_name("E[1,2]")
    s, n = jordan_chevalley(g, e)
    assert all(c == 0 for c in s) and n == e
    # diagonal input: n = 0
    h = g.element_from_name("E[1,1]")
    s, n = jordan_chevalley(g, h)
    assert s == h and all(c == 0 for c in n)


def test_jordan_chevalley_fp():
    g = catalog("gl(2|1)", "Fp", 5)
    f = g.field
    mat = [[f.from_int(1), f.one, f.zero],
           [f.zero, f.from_int(1), f.zero],
           [f.zero, f.zero, f.from_int(2)]]
    x = g.expand_matrix(mat)
    s, n = jordan_chevalley(g, x)
    smat = g.matrix_of(s)
    nmat = g.matrix_of(n)
    assert nmat[0][1] == f.one and smat[0][1] == f.zero
    assert smat[0][0] == f.one and smat[2][2] == f.from_int(2)
    # [s, n] = 0
    assert g.bracket(s, n) == [f.zero] * g.dim


def test_levi_gl21_diag110():
    g = build_gl(2, 1, QQ)
    f = QQ
    s = g.expand_matrix([[f.one, f.zero, f.zero],
                         [f.zero, f.one, f.zero],
                         [f.zero, f.zero, f.zero]])
    datum = levi_decompose(g, s)
    assert datum.l_sub.graded_dims() == (5, 0)
    assert datum.u.graded_dims() == (0, 2)
    assert datum.summand_kinds() == ["sl(2|0)"]
    assert len(datum.toral) == 2


def test_levi_zero_s_whole_algebra():
    g = build_gl(2, 1, QQ)
    datum = levi_decompose(g, [QQ.zero] * g.dim)
    assert datum.l_sub.dim == g.dim
    assert datum.u.dim == 0
    assert datum.summand_kinds() == ["gl(2|1)"]


def test_standard_levis_osp12():
    g = build_osp(1, 2, QQ)
    levis = standard_levis(g)
    assert len(levis) == 2
    sizes = sorted(levi_decompose(g, lv["s"]).l_sub.dim for lv in levis)
    assert sizes == [1, 5]


def test_standard_levis_gl21():
    g = build_gl(2, 1, QQ)
    levis = standard_levis(g)
    assert len(levis) == 4
    dims = sorted(levi_decompose(g, lv["s"]).l_sub.dim for lv in levis)
    assert dims == [3, 5, 5, 9]


@pytest.mark.parametrize("kind", ["gl(2|1)", "osp(1|2)"])
def test_levi_bound_reports(kind):
    g = catalog(kind)
    for levi in standard_levis(g):
        for p in (3, 5):
            rep = levi_bound_report(g, levi["s"], p)
            assert rep["pass"], rep


@pytest.mark.parametrize("kind", ["gl(2|1)", "osp(1|2)", "gl(1|1)"])
def test_claim_at_most_one_odd(kind):
    rep = claim_at_most_one_odd(catalog(kind))
    assert rep["pass"], rep


def test_restricted_weight_count():
    g = catalog("gl(2|1)")
    fr_q = frame_for(g, jordan=([2], [1]))
    fr = reduce_frame(fr_q, 3)
    cartan, _, _ = triangular_decomposition(g)
    from superw.fields import reduce_fraction
    cart_p = [[reduce_fraction(c, 3) for c in v] for v in cartan]
    lams = restricted_weights(fr.alg, cart_p, fr.chi)
    assert len(lams) == 27
