"""Module splitting and irreducibility over F_p (MeatAxe with Norton
certificates), minimal-dimension search over baby Vermas, Jordan-Chevalley
decomposition, Levi decomposition, and the refined direct-sum bound.

Graded composition factors are found by adjoining the parity involution to
the acting generators: invariant subspaces of the extended system are
exactly the graded submodules, so every factor is a simple supermodule and
carries a well-defined parity split (p > 2).
"""

from __future__ import annotations

import random

import numpy as np

from .algebra import (
    PCharacter,
    SuperAlgebraData,
    catalog,
    diagonal_cartan,
    jordan_nilpotent,
    triangular_decomposition,
    weight_spaces,
)
from .dynkin import (
    DInvariants,
    frame_for,
    invariants,
    kw_bound,
    reduce_frame,
    sl2_for_jordan,
    complete_sl2,
    grade,
)
from .envelope import induce
from .errors import (
    CapExceeded,
    NoSolution,
    NotSimpleInput,
    Unsupported,
    UnrecognizedSummand,
)
from .fields import PrimeField, QQ, reduce_fraction
from .linalg import EVEN, ODD, Subspace, unit_vector, vec_is_zero

# ---------------------------------------------------------------------------
# dense F_p numpy helpers


def mod_mat(a, p):
    return np.asarray(a, dtype=np.int64) % p


def matmul(a, b, p):
    return (a @ b) % p


def mat_pow(a, n, p):
    out = np.eye(a.shape[0], dtype=np.int64)
    while n:
        if n & 1:
            out = matmul(out, a, p)
        a = matmul(a, a, p)
        n >>= 1
    return out


def rref_np(a, p):
    a = a % p
    nrows, ncols = a.shape
    rank_ = 0
    pivots = []
    for col in range(ncols):
        nz = np.nonzero(a[rank_:, col])[0]
        if nz.size == 0:
            continue
        sel = rank_ + int(nz[0])
        if sel != rank_:
            a[[rank_, sel]] = a[[sel, rank_]]
        a[rank_] = a[rank_] * pow(int(a[rank_, col]), p - 2, p) % p
        other = np.nonzero(a[:, col])[0]
        other = other[other != rank_]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, col], a[rank_])) % p
        pivots.append(col)
        rank_ += 1
        if rank_ == nrows:
            break
    return a[:rank_], pivots


def nullspace_np(a, p):
    """Rows spanning the right nullspace of a."""
    if a.size == 0:
        return np.eye(a.shape[1] if a.ndim == 2 else 0, dtype=np.int64)
    rows, pivots = rref_np(a.copy(), p)
    n = a.shape[1]
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for r, piv in enumerate(pivots):
            out[k, piv] = (-int(rows[r, fc])) % p
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p (dense coefficient lists, low degree first)


def poly_trim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return poly_trim(out)


def poly_divmod(a, b, p):
    a = list(a)
    binv = pow(b[-1], p - 2, p)
    q = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        d = len(a) - len(b)
        c = a[-1] * binv % p
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % p
        a.pop()
    return poly_trim(q), poly_trim(a if a else [0])


def poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while any(b) and b != [0]:
        _, r = poly_divmod(a, b, p)
        a, b = b, r
    if a != [0]:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def poly_deriv(a, p):
    return poly_trim([(i * a[i]) % p for i in range(1, len(a))] or [0])


def poly_eval_mat(c, mat, p):
    n = mat.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for coef in c:
        if coef:
            out = (out + coef * power) % p
        power = matmul(power, mat, p)
    return out


def _monic_polys(p, deg):
    if deg == 0:
        yield [1]
        return
    for tail in _tuples(p, deg):
        yield list(tail) + [1]


def _tuples(p, k):
    if k == 0:
        yield ()
        return
    for rest in _tuples(p, k - 1):
        for a in range(p):
            yield rest + (a,)


_IRRED_CACHE = {}


def irreducibles_up_to(p, maxdeg):
    key = (p, maxdeg)
    if key in _IRRED_CACHE:
        return _IRRED_CACHE[key]
    irr = []
    for d in range(1, maxdeg + 1):
        for cand in _monic_polys(p, d):
            if len(cand) == 1:
                continue
            ok = True
            for f in irr:
                if len(f) - 1 > d // 2:
                    break
                _, r = poly_divmod(cand, f, p)
                if r == [0]:
                    ok = False
                    break
            if ok:
                irr.append(cand)
    _IRRED_CACHE[key] = irr
    return irr


def poly_factor(c, p):
    """Factor a monic polynomial over F_p by trial division (desk scale).
    Returns list of (irreducible, multiplicity)."""
    c = list(c)
    inv = pow(c[-1], p - 2, p)
    c = [x * inv % p for x in c]
    out = []
    for f in irreducibles_up_to(p, max(1, (len(c) - 1))):
        if len(c) == 1:
            break
        mult = 0
        while True:
            q, r = poly_divmod(c, f, p)
            if r == [0]:
                c = q
                mult += 1
            else:
                break
        if mult:
            out.append((f, mult))
    assert len(c) == 1, "factorization incomplete"
    return out


def min_poly_matrix(mat, p, rng=None):
    """Minimal polynomial as lcm of vector annihilators."""
    n = mat.shape[0]
    mp = [1]
    basis_order = list(range(n))
    for start in basis_order:
        v = np.zeros(n, dtype=np.int64)
        v[start] = 1
        # reduce v by current minpoly action: quick exit when mp annihilates
        acc = poly_eval_mat(mp, mat, p) @ v % p
        if not acc.any():
            continue
        krylov = [v]
        cur = v
        while True:
            cur = mat @ cur % p
            stack = np.array(krylov + [cur], dtype=np.int64)
            rows, piv = rref_np(stack.copy(), p)
            if len(piv) < len(krylov) + 1:
                break
            krylov.append(cur)
        k = len(krylov)
        a = np.array(krylov, dtype=np.int64).T
        b = cur
        sol_mat = np.concatenate([a, b.reshape(-1, 1)], axis=1)
        rows, piv = rref_np(sol_mat.copy(), p)
        coeffs = np.zeros(k, dtype=np.int64)
        for r, pv in zip(rows, piv):
            if pv < k:
                coeffs[pv] = r[k]
        ann = [(-int(c)) % p for c in coeffs] + [1]
        g = poly_gcd(mp, ann, p)
        q, _ = poly_divmod(ann, g, p)
        mp = poly_mul(mp, q, p)
        if len(mp) - 1 == n:
            break
    return poly_trim(mp)


# ---------------------------------------------------------------------------
# modules


class FpModule:
    """A module over F_p given by dense generator matrices with parities,
    plus a parity vector for the underlying space."""

    def __init__(self, p, gens, gen_parities, parities, tag=""):
        self.p = p
        self.gens = [mod_mat(g, p) for g in gens]
        self.gen_parities = list(gen_parities)
        self.parities = list(parities)
        self.dim = len(self.parities)
        self.tag = tag

    def graded_dim(self):
        odd = sum(self.parities)
        return (self.dim - odd, odd)

    def sigma(self):
        d = np.array([1 if par == EVEN else -1 for par in self.parities],
                     dtype=np.int64) % self.p
        return np.diag(d)

    def acting_matrices(self, with_sigma=True):
        out = list(self.gens)
        if with_sigma:
            out.append(self.sigma())
        return out


def module_from_induced(mod, vectors=None, tag=""):
    """Dense FpModule from an InducedModule (acting elements default to the
    original algebra basis)."""
    alg = mod.alg
    f = alg.field
    if vectors is None:
        vectors = [unit_vector(f, alg.dim, i) for i in range(alg.dim)]
        pars = list(alg.space.parities)
    else:
        pars = [alg.parity_of(v) for v in vectors]
    gens = []
    for v in vectors:
        gens.append(np.array(mod.dense_action_for_vector(v), dtype=np.int64))
    return FpModule(f.char, gens, pars, mod.parities, tag=tag)


def spin(mod: FpModule, seeds, with_sigma=True):
    """Smallest invariant subspace containing the seed vectors; returns an
    RREF basis (numpy rows)."""
    p = mod.p
    gens = mod.acting_matrices(with_sigma)
    rows = np.array(seeds, dtype=np.int64) % p
    basis, _ = rref_np(rows.copy(), p)
    frontier = [np.array(r, dtype=np.int64) for r in basis]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = g @ v % p
                stacked = np.vstack([basis, w])
                nb, piv = rref_np(stacked.copy(), p)
                if nb.shape[0] > basis.shape[0]:
                    basis = nb
                    new.append(w)
        frontier = new
    return basis


def _complete_basis(rows, p):
    n = rows.shape[1] if rows.size else 0
    basis = rows.copy()
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        stacked = np.vstack([basis, e]) if basis.size else e.reshape(1, -1)
        nb, _ = rref_np(stacked.copy(), p)
        if nb.shape[0] > basis.shape[0]:
            basis = np.vstack([basis, e.reshape(1, -1)]) if basis.size \
                else e.reshape(1, -1)
    return basis


def sub_quotient(mod: FpModule, sub_rows):
    """(sub, quotient) modules for an invariant graded subspace."""
    p = mod.p
    s = sub_rows.shape[0]
    full = _complete_basis(sub_rows, p)
    t = full.T % p
    tinv = _np_inverse(t, p)
    subpars, quopars = [], []
    for i in range(full.shape[0]):
        row = full[i]
        pars = {mod.parities[j] for j in range(mod.dim) if row[j]}
        assert len(pars) == 1, "graded subspace has mixed rows"
        (subpars if i < s else quopars).append(pars.pop())
    sub_gens, quo_gens = [], []
    for g in mod.gens:
        conj = tinv @ g @ t % p
        sub_gens.append(conj[:s, :s])
        quo_gens.append(conj[s:, s:])
    sub = FpModule(p, sub_gens, mod.gen_parities, subpars, tag=mod.tag + "/sub")
    quo = FpModule(p, quo_gens, mod.gen_parities, quopars, tag=mod.tag + "/quo")
    return sub, quo


def _np_inverse(a, p):
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    rows, piv = rref_np(aug, p)
    if piv != list(range(n)):
        raise NoSolution("singular matrix")
    return rows[:, n:]


class Certificate:
    """Replayable irreducibility witness: a word in the acting matrices, an
    irreducible factor of its minimal polynomial with nullity = degree, and
    the assertion that seed vectors on both sides spin to everything."""

    def __init__(self, word, factor, seed):
        self.word = list(word)
        self.factor = list(factor)
        self.seed = seed

    def as_dict(self):
        return {"word": self.word, "factor": self.factor, "seed": self.seed}


def _word_matrix(mod, word):
    gens = mod.acting_matrices(with_sigma=True)
    n = mod.dim
    out = np.zeros((n, n), dtype=np.int64)
    cur = np.eye(n, dtype=np.int64)
    for step in word:
        kind, payload = step
        if kind == "mul":
            cur = matmul(cur, gens[payload], mod.p)
        elif kind == "add":
            out = (out + payload * cur) % mod.p
            cur = np.eye(mod.dim, dtype=np.int64)
    return out


def _random_words(rng, ngens, count):
    for _ in range(count):
        word = []
        terms = rng.randint(1, 3)
        for _ in range(terms):
            ln = rng.randint(1, 3)
            for _ in range(ln):
                word.append(("mul", rng.randrange(ngens)))
            word.append(("add", rng.randint(1, 4)))
        yield word


def is_irreducible(mod: FpModule, seed=0, max_tries=80):
    """(True, Certificate) or (False, submodule-rows).  Norton's criterion
    with the nullity(f(theta)) = deg f refinement; submodules are graded
    (the parity involution is part of the acting set)."""
    p = mod.p
    if mod.dim == 0:
        raise NotSimpleInput("zero module")
    if mod.dim == 1:
        return True, Certificate([], [0, 1], seed)
    rng = random.Random(seed)
    ngens = len(mod.acting_matrices(True))
    tried = 0
    for word in _random_words(rng, ngens, max_tries):
        theta = _word_matrix(mod, word)
        mp = min_poly_matrix(theta, p)
        if len(mp) <= 1:
            continue
        tried += 1
        for f, mult in poly_factor(mp, p):
            fmat = poly_eval_mat(f, theta, p)
            ker = nullspace_np(fmat, p)
            if ker.shape[0] == 0:
                continue
            v = ker[0]
            w = spin(mod, [v])
            if w.shape[0] < mod.dim:
                return False, w
            if ker.shape[0] != len(f) - 1:
                continue  # need nullity == deg f for the dual certificate
            # transpose side
            kert = nullspace_np(fmat.T % p, p)
            dual = FpModule(p, [g.T % p for g in mod.gens],
                            mod.gen_parities, mod.parities)
            wt = spin(dual, [kert[0]])
            if wt.shape[0] < mod.dim:
                # perp of a dual submodule is a submodule
                perp = nullspace_np(wt, p)
                return False, rref_np(perp, p)[0]
            return True, Certificate(word, f, seed)
    raise Unsupported(f"no certifying word found after {tried} attempts")


def replay_certificate(mod: FpModule, cert: Certificate):
    p = mod.p
    theta = _word_matrix(mod, cert.word)
    f = cert.factor
    fmat = poly_eval_mat(f, theta, p)
    ker = nullspace_np(fmat, p)
    if mod.dim == 1:
        return True
    if ker.shape[0] != len(f) - 1:
        return False
    if spin(mod, [ker[0]]).shape[0] != mod.dim:
        return False
    dual = FpModule(p, [g.T % p for g in mod.gens], mod.gen_parities,
                    mod.parities)
    kert = nullspace_np(fmat.T % p, p)
    return spin(dual, [kert[0]]).shape[0] == mod.dim


def modules_isomorphic(m1: FpModule, m2: FpModule):
    if m1.dim != m2.dim or m1.p != m2.p:
        return False
    p = m1.p
    mats1 = m1.acting_matrices(True)
    mats2 = m2.acting_matrices(True)
    n = m1.dim
    rows = []
    for a, b in zip(mats1, mats2):
        # X a = b X: entries of X unknowns (n x n)
        for i in range(n):
            for j in range(n):
                row = np.zeros(n * n, dtype=np.int64)
                for k in range(n):
                    row[i * n + k] = (row[i * n + k] + a[k, j]) % p
                    row[k * n + j] = (row[k * n + j] - b[i, k]) % p
                rows.append(row)
    sols = nullspace_np(np.array(rows, dtype=np.int64), p)
    for s in sols:
        x = s.reshape(n, n) % p
        _, piv = rref_np(x.copy(), p)
        if len(piv) == n:
            return True
    # random combinations, deterministic seed
    rng = random.Random(0)
    for _ in range(20 * max(1, len(sols))):
        if len(sols) == 0:
            break
        acc = np.zeros((n, n), dtype=np.int64)
        for s in sols:
            acc = (acc + rng.randrange(p) * s.reshape(n, n)) % p
        _, piv = rref_np(acc.copy(), p)
        if len(piv) == n:
            return True
    return False


def split(mod: FpModule, seed=0, cap=5000):
    """Graded composition factors with multiplicities and certificates.
    Deterministic for a fixed seed."""
    if mod.dim > cap:
        raise CapExceeded(f"dim {mod.dim} exceeds cap {cap}")
    work = [mod]
    simples = []
    while work:
        cur = work.pop()
        verdict, data = is_irreducible(cur, seed=seed)
        if verdict:
            simples.append((cur, data))
        else:
            sub, quo = sub_quotient(cur, data)
            work.append(sub)
            work.append(quo)
    grouped = []
    for m, cert in simples:
        for entry in grouped:
            if modules_isomorphic(entry["module"], m):
                entry["multiplicity"] += 1
                break
        else:
            grouped.append({"module": m, "certificate": cert,
                            "multiplicity": 1})
    total = sum(e["module"].dim * e["multiplicity"] for e in grouped)
    assert total == mod.dim, "factor dimensions do not sum"
    grouped.sort(key=lambda e: e["module"].dim)
    return grouped


def endomorphism_dims(mod: FpModule):
    """(dim End_even, dim End_odd) over the acting generators (without the
    parity involution): even maps commute, odd maps commute with the sign
    twist (-1)^{|a|} and flip the grading."""
    p = mod.p
    n = mod.dim
    out = []
    for parity in (EVEN, ODD):
        rows = []
        for g, gp in zip(mod.gens, mod.gen_parities):
            sgn = -1 if (parity == ODD and gp == ODD) else 1
            for i in range(n):
                for j in range(n):
                    row = np.zeros(n * n, dtype=np.int64)
                    for k in range(n):
                        row[i * n + k] = (row[i * n + k] + g[k, j]) % p
                        row[k * n + j] = (row[k * n + j] - sgn * g[i, k]) % p
                    rows.append(row)
        # parity constraint on entries
        for i in range(n):
            for j in range(n):
                want = (mod.parities[i] + mod.parities[j]) % 2
                if want != parity:
                    row = np.zeros(n * n, dtype=np.int64)
                    row[i * n + j] = 1
                    rows.append(row)
        sols = nullspace_np(np.array(rows, dtype=np.int64), p)
        out.append(sols.shape[0])
    return tuple(out)


# ---------------------------------------------------------------------------
# baby Vermas and the minimal-dimension search


def restricted_weights(alg_p, cartan_vectors, xi):
    """All lambda on the Cartan basis with
    lambda(h)^p - lambda(h^[p]) = xi(h)^p per basis element."""
    f = alg_p.field
    p = f.char
    k = len(cartan_vectors)
    cart = Subspace(alg_p.space, f, cartan_vectors)
    pexp = []
    for h in cartan_vectors:
        img = alg_p.pmap_element(h)
        if not cart.contains(img):
            raise Unsupported("Cartan is not p-closed")
        from .linalg import solve_right
        cols = [[v[i] for v in cartan_vectors] for i in range(alg_p.dim)]
        x, _ = solve_right(f, cols, img)
        pexp.append(x)
    out = []
    for cand in _tuples(p, k):
        ok = True
        for i, h in enumerate(cartan_vectors):
            lam_ppow = f.zero
            for c, lam in zip(pexp[i], cand):
                lam_ppow = f.add(lam_ppow, f.mul(c, f.from_int(lam)))
            lhs = f.sub(f.pow(f.from_int(cand[i]), p), lam_ppow)
            if lhs != f.pow(xi.value_on(h, f), p):
                ok = False
                break
        if ok:
            out.append([f.from_int(c) for c in cand])
    return out


def baby_verma(alg_q, frame_p, cartan, pos, neg, lam):
    """Z_xi(lambda): induced from the Borel h + n^+ of the rational
    triangular decomposition, reduced mod p."""
    alg_p = frame_p.alg
    f = alg_p.field
    p = f.char

    def red(v):
        return [reduce_fraction(c, p) for c in v]

    sub_order = ([(red(v), alg_p.parity_of(red(v)), None) for v in cartan]
                 + [(red(v), alg_p.parity_of(red(v)), None) for _, v in pos])
    comp_order = [(red(v), alg_p.parity_of(red(v)), None) for _, v in neg]
    chi_s = list(lam) + [f.zero] * len(pos)
    return induce(alg_p, frame_p.chi, sub_order, comp_order, chi_s,
                  tag=f"baby-verma")


def min_dim_search(alg_q, frame_q, p, seed=0, cap=5000):
    """Split every restricted baby Verma for the frame's nilpotent
    p-character; returns the minimal simple dimension, the bound, the full
    factor census, and divisibility verdicts."""
    frame_p = reduce_frame(frame_q, p)
    alg_p = frame_p.alg
    cartan, pos, neg = triangular_decomposition(alg_q)
    cart_p = [[reduce_fraction(c, p) for c in v] for v in cartan]
    lams = restricted_weights(alg_p, cart_p, frame_p.chi)
    bound = kw_bound(frame_p.inv, p)
    found = []
    all_divisible = True
    for lam in lams:
        z = baby_verma(alg_q, frame_p, cartan, pos, neg, lam)
        dense = module_from_induced(z, tag=f"Z({lam})")
        for entry in split(dense, seed=seed, cap=cap):
            d = entry["module"].dim
            found.append({"dim": d, "weight": [int(c) for c in lam],
                          "multiplicity": entry["multiplicity"]})
            if d % bound != 0:
                all_divisible = False
    min_dim = min(e["dim"] for e in found) if found else None
    return {
        "bound": bound,
        "min_dim": min_dim,
        "attained": min_dim == bound,
        "all_divisible": all_divisible,
        "weights": len(lams),
        "factors": found,
    }


# ---------------------------------------------------------------------------
# Levi decomposition and the refined direct-sum bound


class LeviDatum:
    """Centralizer-of-semisimple data: l = g^s decomposed into derived-ideal
    summands plus a toral remainder, with the nilradicals u, u^- of the
    corresponding parabolic."""

    def __init__(self, **kw):
        self.s = kw["s"]
        self.l_sub = kw["l_sub"]
        self.l_alg = kw["l_alg"]
        self.l_basis = kw["l_basis"]
        self.summands = kw["summands"]   # list of dicts
        self.toral = kw["toral"]         # vectors in g-coordinates
        self.u = kw["u"]
        self.u_minus = kw["u_minus"]

    def summand_kinds(self):
        return [sm["kind"] for sm in self.summands]


_FINGERPRINTS = None


def _candidate_fingerprints():
    global _FINGERPRINTS
    if _FINGERPRINTS is None:
        cands = []
        for a in range(1, 4):
            for b in range(0, 3):
                if a + b > 4:
                    continue
                try:
                    g = catalog(f"gl({a}|{b})")
                    cands.append((f"gl({a}|{b})", _fingerprint_of(g)))
                except Exception:
                    pass
                try:
                    if not (a == b):
                        g = catalog(f"sl({a}|{b})")
                        cands.append((f"sl({a}|{b})", _fingerprint_of(g)))
                except Exception:
                    pass
        cands.append(("osp(1|2)", _fingerprint_of(catalog("osp(1|2)"))))
        _FINGERPRINTS = cands
    return _FINGERPRINTS


def _fingerprint_of(alg):
    der = alg.derived_subalgebra()
    return (alg.space.graded_dim(), der.graded_dims(), alg.center().dim)


def recognize_summand(sub_alg):
    fp = _fingerprint_of(sub_alg)
    for kind, cand in _candidate_fingerprints():
        if cand == fp:
            return kind
    raise UnrecognizedSummand(f"no catalog match for fingerprint {fp}")


def _closure_subspace(alg, seed_vec):
    from .linalg import identity
    f = alg.field
    sub = Subspace(alg.space, f, [seed_vec])
    basis = [unit_vector(f, alg.dim, i) for i in range(alg.dim)]
    changed = True
    while changed:
        changed = False
        gens = [list(r) for r in sub.rows]
        for v in gens:
            for b in basis:
                w = alg.bracket(b, v)
                if not vec_is_zero(f, w) and not sub.contains(w):
                    sub = Subspace(alg.space, f, [list(r) for r in sub.rows] + [w])
                    changed = True
    return sub


def levi_decompose(alg, s):
    """g^s with its ideal decomposition; characteristic 0, s with an integer
    diagonal matrix realization."""
    f = alg.field
    if f.char != 0:
        raise Unsupported("levi decomposition is computed over Q")
    l_sub = alg.centralizer(s)
    l_alg, l_basis = alg.restrict(l_sub)

    cartan = diagonal_cartan(alg)
    for row in cartan.rows:
        if not l_sub.contains(list(row)):
            raise Unsupported("semisimple element must centralize the "
                              "diagonal Cartan")
    cart_l = Subspace(l_alg.space, f,
                      [l_sub.coords_of(list(r)) for r in cartan.rows])
    roots = []
    for wt, vecs in weight_spaces(l_alg, cart_l):
        if any(w != 0 for w in wt):
            roots.extend(vecs)

    comps = []
    for v in roots:
        clo = _closure_subspace(l_alg, v)
        merged = clo
        keep = []
        for c in comps:
            if c.intersect(merged).dim > 0:
                merged = c.sum(merged)
            else:
                keep.append(c)
        comps = keep + [merged]

    summands = []
    covered = Subspace(l_alg.space, f, [])
    for c in comps:
        sub_alg, basis = l_alg.restrict(c)
        kind = recognize_summand(sub_alg)
        summands.append({
            "kind": kind,
            "subspace": c,
            "algebra": sub_alg,
            "basis_in_l": basis,
            "graded_dim": c.graded_dims(),
        })
        covered = covered.sum(c)
    # pairwise commuting, exactly
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            for a in comps[i].rows:
                for b in comps[j].rows:
                    if not vec_is_zero(f, l_alg.bracket(list(a), list(b))):
                        raise UnrecognizedSummand(
                            "ideal components fail to commute")
    center = l_alg.center()
    toral = []
    span = covered
    for row in center.rows:
        if not span.contains(list(row)):
            span = span.sum(Subspace(l_alg.space, f, [list(row)]))
            toral.append(list(row))
    if span.dim != l_alg.dim:
        raise UnrecognizedSummand("l is not (sum of ideals) + toral part")

    # u / u^- from the signed ad-s eigenvalues
    adm = alg.ad_matrix(s)
    pos_rows, neg_rows = [], []
    bound = 2 * alg.dim + 1
    total = l_sub.dim
    from .linalg import GradedMap, kernel
    for ev in range(-bound, bound + 1):
        if ev == 0:
            continue
        shifted = [[f.sub(adm[r][c], f.from_int(ev) if r == c else f.zero)
                    for c in range(alg.dim)] for r in range(alg.dim)]
        ker = kernel(GradedMap(f, shifted, alg.space, alg.space, parity=EVEN))
        if ker.dim:
            (pos_rows if ev > 0 else neg_rows).extend(
                [list(r) for r in ker.rows])
            total += ker.dim
        if total == alg.dim:
            break
    if total != alg.dim:
        raise Unsupported("ad s has non-integer spectrum")
    u = Subspace(alg.space, f, pos_rows)
    u_minus = Subspace(alg.space, f, neg_rows)
    if u.graded_dims() != u_minus.graded_dims():
        raise UnrecognizedSummand("dim u != dim u^-")
    return LeviDatum(s=s, l_sub=l_sub, l_alg=l_alg, l_basis=l_basis,
                     summands=summands, toral=toral, u=u, u_minus=u_minus)


def summand_nilpotents(sub_alg):
    """Representative nilpotents of a summand: sums over subsets of its
    positive root vectors (covers every Jordan type up to conjugacy at desk
    scale), each with its d-invariants."""
    f = sub_alg.field
    _, pos, _ = triangular_decomposition(sub_alg)
    out = []
    npos = len(pos)
    for mask in range(2 ** npos):
        e = [f.zero] * sub_alg.dim
        for k in range(npos):
            if mask & (1 << k):
                e = [f.add(a, b) for a, b in zip(e, pos[k][1])]
        triple = complete_sl2(sub_alg, e)
        gr = grade(sub_alg, triple)
        dinv = invariants(gr)
        out.append({"mask": mask, "e": e, "inv": dinv})
    return out


def refined_bound_value(d0_list, d1_list, p):
    """p^(sum d0 / 2) * 2^((sum d1 + #odd d1) / 2)."""
    l_odd = sum(1 for d in d1_list if d % 2 == 1)
    total0 = sum(d0_list)
    total1 = sum(d1_list)
    assert (total1 + l_odd) % 2 == 0
    return p ** (total0 // 2) * 2 ** ((total1 + l_odd) // 2), l_odd


def simple_roots(alg):
    """Simple positive roots of the rational triangular decomposition."""
    _, pos, _ = triangular_decomposition(alg)
    wts = []
    for wt, _ in pos:
        if wt not in wts:
            wts.append(wt)
    wtset = set(wts)
    simple = []
    for wt in wts:
        decomposable = any(
            tuple(x + y for x, y in zip(w1, w2)) == wt
            for w1 in wtset for w2 in wtset)
        if not decomposable:
            simple.append(wt)
    return simple, pos


def standard_levis(alg):
    """(subset, s) for every subset of simple roots: s is an integer point
    of the Cartan with alpha(s) = 0 exactly on the chosen simple roots and
    alpha(s) > 0 on the others."""
    f = alg.field
    simples, pos = simple_roots(alg)
    cartan = diagonal_cartan(alg).basis_vectors()
    k = len(cartan)
    out = []
    import itertools
    for rsub in range(2 ** len(simples)):
        chosen = [simples[i] for i in range(len(simples)) if rsub & (1 << i)]
        others = [simples[i] for i in range(len(simples))
                  if not rsub & (1 << i)]
        found = None
        for cand in itertools.product(range(0, 7), repeat=k):
            if all(sum(c * w for c, w in zip(cand, wt)) == 0 for wt in chosen) \
                    and all(sum(c * w for c, w in zip(cand, wt)) > 0
                            for wt in others):
                found = cand
                break
        if found is None:
            raise Unsupported("no integer point for this Levi subset")
        s = [f.zero] * alg.dim
        for c, h in zip(found, cartan):
            if c:
                s = [f.add(a, f.mul(f.from_int(c), b)) for a, b in zip(s, h)]
        out.append({"subset": [list(w) for w in chosen], "s": s})
    return out


def levi_bound_report(alg, s, p):
    """Criterion-level verification for one Levi: the dimension accounting,
    the at-most-one-odd count, and the induced-bound consistency
    bound(g) = refined(l) * p^(dim u_even) * 2^(dim u_odd) against the
    direct bound for x = s + n, for every combination of representative
    summand nilpotents."""
    f = alg.field
    datum = levi_decompose(alg, s)
    per_summand = []
    for sm in datum.summands:
        per_summand.append(summand_nilpotents(sm["algebra"]))
    u0, u1 = datum.u.graded_dims()
    records = []
    ok_all = True
    import itertools
    choicelists = [range(len(opts)) for opts in per_summand]
    for combo in itertools.product(*choicelists) if per_summand else [()]:
        d0s, d1s = [], []
        n_vec = [f.zero] * alg.dim
        for sm, opts, idx in zip(datum.summands, per_summand, combo):
            pick = opts[idx]
            d0s.append(pick["inv"].d0)
            d1s.append(pick["inv"].d1)
            # embed the summand nilpotent into g-coordinates
            e_l = [f.zero] * datum.l_alg.dim
            for c, bvec in zip(pick["e"], sm["basis_in_l"]):
                if c != f.zero:
                    e_l = [f.add(a, f.mul(c, b)) for a, b in zip(e_l, bvec)]
            e_g = [f.zero] * alg.dim
            for c, bvec in zip(e_l, datum.l_basis):
                if c != f.zero:
                    e_g = [f.add(a, f.mul(c, b)) for a, b in zip(e_g, bvec)]
            n_vec = [f.add(a, b) for a, b in zip(n_vec, e_g)]
        x = [f.add(a, b) for a, b in zip(s, n_vec)]
        cx = alg.centralizer(x)
        cl, cq = cx.graded_dims()
        d0g = alg.space.dim_even - cl
        d1g = alg.space.dim_odd - cq
        acc0 = (d0g - sum(d0s)) % 2 == 0 and (d0g - sum(d0s)) // 2 == u0
        acc1 = (d1g - sum(d1s)) % 2 == 0 and (d1g - sum(d1s)) // 2 == u1
        refined, l_odd = refined_bound_value(d0s, d1s, p)
        bound_g = refined * p ** u0 * 2 ** u1
        direct = p ** (d0g // 2) * 2 ** ((d1g + 1) // 2)
        consistent = (l_odd > 1) or (bound_g == direct)
        rec = {
            "combo": list(combo), "d0s": d0s, "d1s": d1s,
            "l_odd": l_odd, "accounting": bool(acc0 and acc1),
            "refined": refined, "bound_g": bound_g, "kw_direct": direct,
            "consistent": bool(consistent), "at_most_one_odd": l_odd <= 1,
        }
        ok_all = ok_all and rec["accounting"] and rec["consistent"] \
            and rec["at_most_one_odd"]
        records.append(rec)
    return {"pass": ok_all, "u": (u0, u1),
            "kinds": datum.summand_kinds(),
            "toral_dim": len(datum.toral), "records": records}


def claim_at_most_one_odd(alg):
    """For every standard Levi: the number of summands that admit a
    nilpotent with odd d1 is at most one."""
    reports = []
    ok = True
    for levi in standard_levis(alg):
        datum = levi_decompose(alg, levi["s"])
        odd_capable = 0
        kinds = []
        for sm in datum.summands:
            opts = summand_nilpotents(sm["algebra"])
            has_odd = any(o["inv"].d1 % 2 == 1 for o in opts)
            odd_capable += 1 if has_odd else 0
            kinds.append((sm["kind"], has_odd))
        ok = ok and odd_capable <= 1
        reports.append({"subset": levi["subset"], "kinds": kinds,
                        "odd_capable": odd_capable,
                        "pass": odd_capable <= 1})
    return {"pass": ok, "levis": reports}


# ---------------------------------------------------------------------------
# Jordan-Chevalley decomposition


def _minpoly_rational(mat):
    """Minimal polynomial over Q via Krylov (Fraction arithmetic)."""
    from .linalg import rref, solve_right
    n = len(mat)
    f = QQ
    mp = [f.one]

    def eval_poly_vec(poly, v):
        out = [f.zero] * n
        cur = list(v)
        for c in poly:
            if c != 0:
                out = [a + c * b for a, b in zip(out, cur)]
            cur = [sum(mat[i][j] * cur[j] for j in range(n)) for i in range(n)]
        return out

    for start in range(n):
        v = [f.zero] * n
        v[start] = f.one
        if all(x == 0 for x in eval_poly_vec(mp, v)):
            continue
        krylov = [v]
        cur = v
        while True:
            cur = [sum(mat[i][j] * cur[j] for j in range(n)) for i in range(n)]
            stack = krylov + [cur]
            from .linalg import rank
            if rank(f, stack) < len(stack):
                break
            krylov.append(cur)
        cols = [[krylov[k][i] for k in range(len(krylov))] for i in range(n)]
        x, _ = solve_right(f, cols, cur)
        ann = [-c for c in x] + [f.one]
        # lcm(mp, ann) over Q
        g = _poly_gcd_q(mp, ann)
        q, _ = _poly_divmod_q(ann, g)
        mp = _poly_mul_q(mp, q)
        if len(mp) - 1 == n:
            break
    return mp


def _poly_mul_q(a, b):
    out = [QQ.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod_q(a, b):
    a = list(a)
    q = [QQ.zero] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(x != 0 for x in a):
        if a[-1] == 0:
            a.pop()
            continue
        d = len(a) - len(b)
        c = a[-1] / b[-1]
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] -= c * y
        a.pop()
    if not a:
        a = [QQ.zero]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd_q(a, b):
    a, b = list(a), list(b)
    while any(x != 0 for x in b):
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    if any(x != 0 for x in a) and a[-1] != 1:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def jordan_chevalley(alg, x):
    """x = s + n on the defining matrix realization, via squarefree
    separation of the minimal polynomial (Hensel in F_p[t], factor-root
    splitting over Q).  Raises Unsupported (IrrationalSpectrum) when the
    rational spectrum is not rational at desk scale."""
    f = alg.field
    if alg.matrices is None:
        raise Unsupported("jordan_chevalley needs a matrix realization")
    X = alg.matrix_of(x)
    n = len(X)
    if f.char == 0:
        mp = _minpoly_rational(X)
        # rational roots with multiplicity
        roots = _rational_roots(mp)
        deg_check = sum(m for _, m in roots)
        if deg_check != len(mp) - 1:
            raise Unsupported("IrrationalSpectrum: minimal polynomial has "
                              "irrational factors")
        smat = _semisimple_part_q(X, roots)
    else:
        p = f.char
        Xp = np.array([[int(c) for c in row] for row in X], dtype=np.int64) % p
        mp = min_poly_matrix(Xp, p)
        factors = poly_factor(mp, p)
        smat_np = _semisimple_part_fp(Xp, factors, p)
        smat = [[f.from_int(int(c)) for c in row] for row in smat_np]
    s = alg.expand_matrix(smat)
    nmat = [[f.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(X, smat)]
    nvec = alg.expand_matrix(nmat)
    return s, nvec


def _rational_roots(mp):
    """Rational roots with multiplicities of a monic Q-polynomial."""
    from fractions import Fraction
    poly = list(mp)
    roots = []
    # clear denominators
    den = 1
    for c in poly:
        den = den * c.denominator // _gcd(den, c.denominator)
    ip = [int(c * den) for c in poly]
    lead = ip[-1]
    const = next((abs(c) for c in ip if c != 0), 1)
    cands = set()
    for a in _divisors(abs(const) if const else 1):
        for b in _divisors(abs(lead)):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    cands.add(Fraction(0))
    for r in sorted(cands):
        mult = 0
        cur = poly
        while True:
            val = QQ.zero
            for c in reversed(cur):
                val = val * r + c
            if val != 0:
                break
            cur, _ = _poly_divmod_q(cur, [-r, QQ.one])
            mult += 1
        if mult:
            roots.append((r, mult))
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    n = max(1, abs(n))
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _semisimple_part_q(X, roots):
    """CRT interpolation: s = H(X) with H = r on the r-primary component."""
    n = len(X)
    # primary projectors via partial fractions: for each root r with mult m,
    # P_r = prod_{r' != r} ((X - r')/(r - r'))^{m'} adjusted by Hensel in Q[t]
    # Desk scale: solve the linear system H(X) with H of degree < deg(mp)
    # such that (t - r)^m | (H - r) for each root.
    rows = []
    rhs = []
    deg = sum(m for _, m in roots)
    for r, m in roots:
        # conditions: d^k/dt^k (H - r) | t=r = 0 for k < m
        for k in range(m):
            row = []
            for j in range(deg):
                # d^k t^j / dt^k at r = j!/(j-k)! r^(j-k)
                if j < k:
                    row.append(QQ.zero)
                else:
                    coef = 1
                    for t in range(k):
                        coef *= (j - t)
                    row.append(QQ.from_int(coef) * (r ** (j - k)))
            rows.append(row)
            rhs.append(r if k == 0 else QQ.zero)
    from .linalg import solve_right
    hcoef, _ = solve_right(QQ, rows, rhs)
    out = [[QQ.zero] * n for _ in range(n)]
    power = [[QQ.one if i == j else QQ.zero for j in range(n)] for i in range(n)]
    from .linalg import mat_mul
    for c in hcoef:
        if c != 0:
            out = [[out[i][j] + c * power[i][j] for j in range(n)]
                   for i in range(n)]
        power = mat_mul(QQ, power, X)
    return out


def _semisimple_part_fp(X, factors, p):
    """Hensel-lift h with f(h) = 0 mod f^e and h = t mod f per factor, then
    CRT across factors; s = H(X)."""
    parts = []
    for f, e in factors:
        h = [0, 1]
        mod = [1]
        for _ in range(e):
            mod = poly_mul(mod, f, p)
        # Newton iterate h <- h - f(h) * f'(h)^{-1} mod f^e
        for _ in range(max(1, e.bit_length() + 1)):
            fh = _compose_mod(f, h, mod, p)
            if fh == [0]:
                break
            dfh = _compose_mod(poly_deriv(f, p), h, mod, p)
            inv = _poly_inverse_mod(dfh, mod, p)
            corr = _poly_mulmod(fh, inv, mod, p)
            h = poly_trim([(a - b) % p for a, b in
                           zip(h + [0] * len(mod), corr + [0] * len(mod))])
            _, h = poly_divmod(h, mod, p)
        parts.append((h, mod))
    # CRT
    total = [1]
    for _, m in parts:
        total = poly_mul(total, m, p)
    H = [0]
    for h, m in parts:
        rest, _ = poly_divmod(total, m, p)
        inv = _poly_inverse_mod(_poly_mod(rest, m, p), m, p)
        term = poly_mul(poly_mul(h, rest, p), inv, p)
        H = poly_add(H, term, p)
    _, H = poly_divmod(H, total, p)
    return poly_eval_mat(H, X, p)


def _poly_mod(a, m, p):
    _, r = poly_divmod(a, m, p)
    return r


def _poly_mulmod(a, b, m, p):
    return _poly_mod(poly_mul(a, b, p), m, p)


def _compose_mod(f, h, m, p):
    out = [0]
    for c in reversed(f):
        out = poly_add(_poly_mulmod(out, h, m, p), [c], p)
    return _poly_mod(out, m, p)


def _poly_inverse_mod(a, m, p):
    """Inverse of a mod m (they must be coprime): extended Euclid."""
    r0, r1 = list(m), list(a)
    s0, s1 = [0], [1]
    while any(r1) and r1 != [0]:
        q, r2 = poly_divmod(r0, r1, p)
        r0, r1 = r1, r2
        s2 = poly_add(s0, [(-c) % p for c in poly_mul(q, s1, p)], p)
        s0, s1 = s1, s2
    # r0 = gcd (unit)
    if len(r0) != 1 or r0[0] == 0:
        raise NoSolution("polynomials are not coprime")
    inv = pow(r0[0], p - 2, p)
    return poly_trim([c * inv % p for c in s0])
