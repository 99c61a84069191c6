"""Catalog constructors, axiom verification, centralizers, p-characters."""

from fractions import Fraction

import pytest

from superw.algebra import (
    PCharacter,
    SuperAlgebraData,
    build_gl,
    build_osp,
    build_sl,
    catalog,
    direct_sum,
    dual_element_of,
    jordan_nilpotent,
    pcharacter_from_element,
    verify_axioms,
)
from superw.errors import BadPrime, DegenerateForm
from superw.fields import QQ, PrimeField
from superw.linalg import unit_vector, vec_add


def test_gl11_structure():
    g = build_gl(1, 1, QQ)
    assert g.space.graded_dim() == (2, 2)
    e12 = g.element_from_name("E[1,2]")
    e21 = g.element_from_name("E[2,1]")
    lhs = g.bracket(e12, e21)
    expect = vec_add(QQ, g.element_from_name("E[1,1]"),
                     g.element_from_name("E[2,2]"))
    assert lhs == expect


# Hand-derived structure table for osp(1|2) in gl(1|2) with the split form:
# even part e = E23, h = E22-E33, f = E32; odd part E = E21-E13, F = E31+E12.
OSP12_TABLE = {
    ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1},
    ("h", "E"): {"E": 1}, ("h", "F"): {"F": -1},
    ("E", "E"): {"e": -2}, ("F", "F"): {"f": 2}, ("E", "F"): {"h": 1},
    ("e", "F"): {"E": 1}, ("f", "E"): {"F": 1},
    ("e", "E"): {}, ("f", "F"): {},
}


def osp12_named_basis(g):
    """Locate the hand basis inside the constructed osp(1|2)."""
    mats = {}
    f = g.field
    idx = {}
    want = {
        "e": [(1, 2, 1)], "h": [(1, 1, 1), (2, 2, -1)], "f": [(2, 1, 1)],
        "E": [(1, 0, 1), (0, 2, -1)], "F": [(2, 0, 1), (0, 1, 1)],
    }
    for name, entries in want.items():
        mat = [[f.zero] * 3 for _ in range(3)]
        for r, c, v in entries:
            mat[r][c] = f.from_int(v)
        idx[name] = g.expand_matrix(mat)
    return idx


def test_osp12_matches_hand_table():
    g = build_osp(1, 2, QQ)
    assert g.space.graded_dim() == (3, 2)
    named = osp12_named_basis(g)
    for (a, b), expect in OSP12_TABLE.items():
        got = g.bracket(named[a], named[b])
        want = [QQ.zero] * g.dim
        for nm, c in expect.items():
            want = vec_add(QQ, want, [QQ.from_int(c) * x for x in named[nm]])
        assert got == want, (a, b)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("kind", ["gl(1|1)", "gl(2|1)", "sl(2|1)", "osp(1|2)"])
def test_axioms_catalog_fp(kind, p):
    g = catalog(kind, "Fp", p)
    rep = verify_axioms(g)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("kind", ["gl(1|1)", "gl(2|1)", "sl(2|1)", "osp(1|2)", "gl(2|2)"])
def test_axioms_catalog_q(kind):
    rep = verify_axioms(catalog(kind))
    assert rep.passed, rep.failures()


def test_bad_prime_and_degenerate():
    with pytest.raises(BadPrime):
        catalog("sl(3|1)", "Fp", 2)
    with pytest.raises(BadPrime):
        catalog("sl(4|1)", "Fp", 3)
    with pytest.raises(DegenerateForm):
        catalog("sl(2|2)")


def test_corrupted_bracket_fails_jacobi():
    g = build_gl(1, 1, QQ)
    bad = {k: dict(v) for k, v in g.brackets.items()}
    i = g.space.names.index("E[1,2]")
    j = g.space.names.index("E[2,1]")
    bad[(i, j)] = {k: -c for k, c in bad[(i, j)].items()}  # one sign flipped
    broken = SuperAlgebraData(g.space, g.field, bad, g.form, g.pmap,
                              g.catalog_tag, g.matrices)
    rep = verify_axioms(broken)
    names = {c["check"]: c for c in rep.checks}
    assert not rep.passed
    assert not (names["super-jacobi"]["pass"]
                and names["super-anticommutativity"]["pass"])


def test_zero_form_fails_nondegeneracy():
    g = build_gl(1, 1, QQ)
    zform = [[QQ.zero] * g.dim for _ in range(g.dim)]
    broken = SuperAlgebraData(g.space, g.field, g.brackets, zform)
    rep = verify_axioms(broken)
    names = {c["check"]: c["pass"] for c in rep.checks}
    assert not names["form-nondegenerate"]


def test_centralizer_gl21():
    g = build_gl(2, 1, QQ)
    x = g.element_from_name("E[1,2]")
    c = g.centralizer(x)
    assert c.graded_dims() == (3, 2)
    assert c.contains(g.element_from_name("E[1,3]"))
    assert c.contains(g.element_from_name("E[3,2]"))
    assert c.contains(vec_add(QQ, g.element_from_name("E[1,1]"),
                              g.element_from_name("E[2,2]")))
    assert g.centralizer([QQ.zero] * g.dim).dim == g.dim


def test_centralizer_osp12():
    g = build_osp(1, 2, QQ)
    named = osp12_named_basis(g)
    c = g.centralizer(named["e"])
    assert c.graded_dims() == (1, 1)


def test_pcharacter_roundtrip():
    g = build_osp(1, 2, QQ)
    named = osp12_named_basis(g)
    chi = pcharacter_from_element(g, named["e"])
    # chi(f) = (e, f) = str(e f), and chi kills the odd part
    assert chi.value_on(named["f"], QQ) == g.form_value(named["e"], named["f"])
    assert chi.value_on(named["E"], QQ) == 0
    assert dual_element_of(g, chi) == named["e"]
    z = PCharacter.zero(g)
    assert all(v == 0 for v in z.values)


def test_jordan_nilpotent_and_pmap():
    g = catalog("gl(2|1)", "Fp", 5)
    e = jordan_nilpotent(g, [2], [1])
    assert e == g.element_from_name("E[1,2]")
    # p-map of a nilpotent matrix unit is zero; of a diagonal unit, itself
    assert g.pmap_element(e) == [g.field.zero] * g.dim
    h = g.element_from_name("E[1,1]")
    assert g.pmap_element(h) == h


def test_pmap_jacobson_path_matches_matrix_path():
    g = catalog("gl(2|1)", "Fp", 3)
    stripped = SuperAlgebraData(g.space, g.field, g.brackets, g.form, g.pmap,
                                g.catalog_tag, None)
    f = g.field
    import random
    rng = random.Random(7)
    evens = [i for i in range(g.dim) if g.space.parities[i] == 0]
    for _ in range(12):
        v = [f.zero] * g.dim
        for i in evens:
            v[i] = f.random(rng)
        assert stripped.pmap_element(v) == g.pmap_element(v)


def test_direct_sum_axioms():
    a = catalog("osp(1|2)", "Fp", 3)
    s = direct_sum(a, a)
    assert s.space.graded_dim() == (6, 4)
    rep = verify_axioms(s)
    assert rep.passed, rep.failures()


def test_json_roundtrip():
    for kind, fk, p in [("gl(1|1)", "Q", None), ("osp(1|2)", "Fp", 3)]:
        g = catalog(kind, fk, p)
        h = SuperAlgebraData.from_json(g.to_json())
        assert h.space == g.space
        assert h.brackets == g.brackets
        assert h.form == g.form
        if g.pmap is not None:
            assert ({i: t for i, t in h.pmap.items() if t}
                    == {i: t for i, t in g.pmap.items() if t})
        assert h.to_json() == SuperAlgebraData.from_json(h.to_json()).to_json()
