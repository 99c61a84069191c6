"""PBW machinery: straightening products in U(g), reduced enveloping
algebras, induced modules with one-dimensional inducing characters (the
generalized Gelfand-Graev modules and baby Vermas), Whittaker invariants,
and Kazhdan-degree bookkeeping.

Monomials are exponent tuples against a fixed ordered basis; elements are
dicts monomial -> coefficient.  Straightening is recursive commutator
rewriting with memoization of (monomial, generator) normal forms.  In
reduced mode even p-th powers rewrite through x^p = x^[p] + xi(x)^p.
"""

from __future__ import annotations

import json

from .algebra import SuperAlgebraData
from .errors import (
    CharacterMismatch,
    DimensionMismatch,
    InvalidCharacter,
    NoGrading,
    Unsupported,
)
from .linalg import (
    EVEN,
    ODD,
    GradedSpace,
    Subspace,
    unit_vector,
    vec_is_zero,
    zeros,
)

UNIVERSAL = "universal"
REDUCED = "reduced"


class Envelope:
    """Straightening context for U(g) (universal mode, any field) or
    U_xi(g) (reduced mode over F_p)."""

    def __init__(self, alg: SuperAlgebraData, mode=UNIVERSAL, xi=None,
                 weights=None):
        self.alg = alg
        self.field = alg.field
        self.mode = mode
        self.weights = list(weights) if weights is not None else None
        if mode == REDUCED:
            if alg.field.char == 0:
                raise Unsupported("reduced mode needs positive characteristic")
            if xi is None:
                raise ValueError("reduced mode needs a p-character")
            self.xi_values = [xi.value_on(unit_vector(alg.field, alg.dim, i),
                                          alg.field)
                              if alg.space.parities[i] == EVEN else alg.field.zero
                              for i in range(alg.dim)]
        else:
            self.xi_values = None
        self._memo = {}
        self._zero_mono = tuple([0] * alg.dim)

    # -- element constructors -------------------------------------------------

    def one(self):
        return {self._zero_mono: self.field.one}

    def generator(self, i):
        m = [0] * self.alg.dim
        m[i] = 1
        return {tuple(m): self.field.one}

    def from_vector(self, vec):
        f = self.field
        out = {}
        for i, c in enumerate(vec):
            if c != f.zero:
                m = [0] * self.alg.dim
                m[i] = 1
                out[tuple(m)] = c
        return out

    # -- arithmetic -------------------------------------------------------------

    def add(self, a, b):
        f = self.field
        out = dict(a)
        for m, c in b.items():
            s = f.add(out.get(m, f.zero), c)
            if s == f.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def scale(self, c, a):
        f = self.field
        if c == f.zero:
            return {}
        return {m: f.mul(c, x) for m, x in a.items()}

    def _mono_times_gen(self, mono, g):
        """Normal form of (normal monomial) * w_g; memoized."""
        key = (mono, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        f = self.field
        alg = self.alg
        par = alg.space.parities
        top = -1
        for i in range(alg.dim - 1, -1, -1):
            if mono[i]:
                top = i
                break
        if top <= g:
            if par[g] == ODD and mono[g] == 1:
                # mono = m' w_g and w_g^2 = (1/2)[w_g, w_g]
                half = f.div(f.one, f.from_int(2))
                out = {}
                mprime = list(mono)
                mprime[g] = 0
                mprime = tuple(mprime)
                for k, c in alg.bracket_basis(g, g).items():
                    term = self._mono_times_gen(mprime, k)
                    out = self.add(out, self.scale(f.mul(half, c), term))
                self._memo[key] = out
                return out
            new = list(mono)
            new[g] += 1
            if (self.mode == REDUCED and par[g] == EVEN
                    and new[g] == f.char):
                new[g] = 0
                base = tuple(new)
                out = {}
                xv = self.xi_values[g]
                if xv != f.zero:
                    out = self.add(out, self.scale(f.pow(xv, f.char),
                                                   {base: f.one}))
                for k, c in self.alg.pmap_basis(g).items():
                    out = self.add(out, self.scale(
                        c, self._mono_times_gen(base, k)))
                self._memo[key] = out
                return out
            out = {tuple(new): f.one}
            self._memo[key] = out
            return out
        # top > g: mono = m' w_top; w_top w_g = sign w_g w_top + [w_top, w_g]
        mprime = list(mono)
        mprime[top] -= 1
        mprime = tuple(mprime)
        sign = f.neg(f.one) if (par[top] and par[g]) else f.one
        swapped = self._mono_times_gen(mprime, g)
        out = {}
        for m2, c in swapped.items():
            out = self.add(out, self.scale(f.mul(sign, c),
                                           self._mono_times_gen(m2, top)))
        for k, c in self.alg.bracket_basis(top, g).items():
            out = self.add(out, self.scale(c, self._mono_times_gen(mprime, k)))
        self._memo[key] = out
        return out

    def _elem_times_mono(self, a, mono):
        out = a
        for g, e in enumerate(mono):
            for _ in range(e):
                nxt = {}
                for m, c in out.items():
                    nxt = self.add(nxt, self.scale(c, self._mono_times_gen(m, g)))
                out = nxt
        return out

    def multiply(self, a, b):
        """Normal-ordered product of two elements."""
        f = self.field
        out = {}
        for mono, c in b.items():
            part = self._elem_times_mono(a, mono)
            out = self.add(out, self.scale(c, part))
        return out

    def power(self, a, n):
        out = self.one()
        for _ in range(n):
            out = self.multiply(out, a)
        return out

    def supercommutator(self, a, b):
        """[a,b] = ab - (-1)^{|a||b|} ba for parity-homogeneous a, b."""
        f = self.field
        pa, pb = self.parity(a), self.parity(b)
        if pa is None or pb is None:
            raise ValueError("supercommutator needs homogeneous elements")
        ab = self.multiply(a, b)
        ba = self.multiply(b, a)
        sgn = f.neg(f.one) if (pa and pb) else f.one
        return self.add(ab, self.scale(f.neg(sgn), ba))

    def parity(self, a):
        pars = {self.mono_parity(m) for m in a}
        if not pars:
            return EVEN
        if len(pars) > 1:
            return None
        return pars.pop()

    def mono_parity(self, mono):
        par = self.alg.space.parities
        return sum(e for i, e in enumerate(mono) if par[i]) % 2

    # -- degrees ------------------------------------------------------------------

    def mono_degree(self, mono):
        if self.weights is None:
            raise NoGrading("no Kazhdan weights attached")
        return sum(e * (self.weights[i] + 2) for i, e in enumerate(mono))

    def degree(self, a):
        if not a:
            return 0
        return max(self.mono_degree(m) for m in a)


def straighten(env: Envelope, a, b):
    """Product with the filtration bound asserted when weights are present."""
    out = env.multiply(a, b)
    if env.weights is not None and a and b and out:
        if env.degree(out) > env.degree(a) + env.degree(b):
            raise DimensionMismatch("Kazhdan degree grew under multiplication")
    return out


def kazhdan_degree(env: Envelope, x):
    if isinstance(x, tuple):
        return env.mono_degree(x)
    return env.degree(x)


def box_monomials(caps):
    """All exponent tuples below the given caps, last index fastest."""
    out = [()]
    for cap in caps:
        out = [m + (e,) for m in out for e in range(cap)]
    return out


class ReducedEnvAlgebra:
    """U_xi(g_k): PBW monomial basis with straightening product and p-power
    reduction.  dim = p^{dim g_even} * 2^{dim g_odd}."""

    def __init__(self, alg, xi, weights=None):
        if alg.field.char == 0:
            raise Unsupported("reduced enveloping algebras live over F_p")
        for i in range(alg.dim):
            if alg.space.parities[i] == ODD and xi.values[i] != alg.field.zero:
                raise InvalidCharacter("xi must vanish on the odd part")
        self.alg = alg
        self.xi = xi
        self.env = Envelope(alg, REDUCED, xi, weights)
        p = alg.field.char
        self.dim = (p ** alg.space.dim_even) * (2 ** alg.space.dim_odd)

    def basis(self):
        p = self.alg.field.char
        caps = [p if par == EVEN else 2 for par in self.alg.space.parities]
        return box_monomials(caps)

    def multiply(self, a, b):
        return self.env.multiply(a, b)


def reduced_env(alg, xi, weights=None):
    return ReducedEnvAlgebra(alg, xi, weights)


def regular_generator_matrices(red: ReducedEnvAlgebra):
    """Sparse left-multiplication matrices of the algebra generators on the
    PBW basis of U_xi; the independent oracle route for straightening."""
    basis = red.basis()
    index = {m: i for i, m in enumerate(basis)}
    mats = []
    f = red.alg.field
    for g in range(red.alg.dim):
        cols = {}
        for j, mono in enumerate(basis):
            prod = red.env.multiply(red.env.generator(g), {mono: f.one})
            col = {}
            for m, c in prod.items():
                col[index[m]] = c
            if col:
                cols[j] = col
        mats.append(cols)
    return basis, index, mats


def _gen_mono(n, g):
    m = [0] * n
    m[g] = 1
    return tuple(m)


def apply_sparse(field, cols, vec_dict):
    """cols: {col: {row: coeff}}; vec_dict: {index: coeff}."""
    out = {}
    for j, c in vec_dict.items():
        col = cols.get(j)
        if not col or c == field.zero:
            continue
        for i, a in col.items():
            s = field.add(out.get(i, field.zero), field.mul(a, c))
            if s == field.zero:
                out.pop(i, None)
            else:
                out[i] = s
    return out


class InducedModule:
    """U_xi(g) tensored over U_xi(s) with a one-dimensional character:
    a PBW-box basis in an adapted ordering (complement first, s last) and
    sparse action matrices for every adapted basis generator."""

    def __init__(self, alg, xi, adapted, to_new, n_comp, chi_s_values,
                 weights=None, tag=""):
        self.alg = alg                  # original algebra
        self.xi = xi
        self.adapted = adapted          # algebra in the adapted basis
        self.to_new = to_new            # old coords -> adapted coords
        self.n_comp = n_comp
        self.chi_s = chi_s_values       # scalars on adapted indices >= n_comp
        self.env = Envelope(adapted, REDUCED, _push_character(xi, to_new, adapted),
                            weights)
        p = alg.field.char
        caps = []
        for i in range(n_comp):
            caps.append(p if adapted.space.parities[i] == EVEN else 2)
        self.basis = box_monomials(caps)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.parities = [sum(e for k, e in enumerate(m)
                             if adapted.space.parities[k]) % 2
                         for m in self.basis]
        self.tag = tag
        self._actions = None

    @property
    def field(self):
        return self.alg.field

    def graded_space(self):
        names = ["*".join(f"w{k}^{e}" for k, e in enumerate(m) if e) or "1"
                 for m in self.basis]
        return GradedSpace(names, self.parities)

    def graded_dim(self):
        odd = sum(self.parities)
        return (self.dim - odd, odd)

    def project(self, elem):
        """Image of a U-element in the module: evaluate the s-tail of each
        normal monomial through the inducing character."""
        f = self.field
        out = {}
        for mono, c in elem.items():
            scalar = c
            head = mono[:self.n_comp]
            for k in range(self.n_comp, self.adapted.dim):
                e = mono[k]
                if e:
                    v = self.chi_s[k - self.n_comp]
                    if v == f.zero:
                        scalar = f.zero
                        break
                    scalar = f.mul(scalar, f.pow(v, e))
            if scalar == f.zero:
                continue
            i = self.index[head]
            s = f.add(out.get(i, f.zero), scalar)
            if s == f.zero:
                out.pop(i, None)
            else:
                out[i] = s
        return out

    def actions(self):
        """Sparse action matrices {col: {row: coeff}} for each adapted basis
        generator."""
        if self._actions is None:
            f = self.field
            mats = []
            for g in range(self.adapted.dim):
                cols = {}
                gen = self.env.generator(g)
                for j, mono in enumerate(self.basis):
                    full = mono + (0,) * (self.adapted.dim - self.n_comp)
                    prod = self.env.multiply(gen, {full: f.one})
                    col = self.project(prod)
                    if col:
                        cols[j] = col
                mats.append(cols)
            self._actions = mats
        return self._actions

    def act_matrix_for_vector(self, vec):
        """Sparse action of an original-coordinate algebra element."""
        from .linalg import mat_vec
        f = self.field
        coords = mat_vec(f, self.to_new, vec)
        mats = self.actions()
        out = {}
        for g, c in enumerate(coords):
            if c == f.zero:
                continue
            for j, col in mats[g].items():
                dst = out.setdefault(j, {})
                for i, a in col.items():
                    s = f.add(dst.get(i, f.zero), f.mul(c, a))
                    if s == f.zero:
                        dst.pop(i, None)
                    else:
                        dst[i] = s
        return {j: col for j, col in out.items() if col}

    def dense_action_for_vector(self, vec):
        f = self.field
        cols = self.act_matrix_for_vector(vec)
        mat = [[f.zero] * self.dim for _ in range(self.dim)]
        for j, col in cols.items():
            for i, c in col.items():
                mat[i][j] = c
        return mat

    def act_word(self, vec_list, state):
        """Apply the product of the given original-coordinate elements
        (leftmost acts last) to a sparse state {index: coeff}."""
        for vec in reversed(vec_list):
            state = apply_sparse(self.field, self.act_matrix_for_vector(vec),
                                 state)
        return state

    def to_json(self):
        f = self.field
        mats = self.actions()
        return json.dumps({
            "dim": self.dim,
            "parities": self.parities,
            "generators": self.adapted.space.names,
            "actions": [
                [[j, i, str(c)] for j, col in sorted(m.items())
                 for i, c in sorted(col.items())]
                for m in mats
            ],
        }, indent=1)


def _push_character(xi, to_new, adapted):
    """xi in adapted coordinates: values on the new basis vectors."""
    from .algebra import PCharacter
    from .linalg import mat_inverse, mat_vec
    f = adapted.field
    # to_new converts old->new; new basis vector j has old coords = column j
    # of the inverse.
    back = mat_inverse(f, to_new)
    vals = []
    for j in range(adapted.dim):
        old = [back[i][j] for i in range(adapted.dim)]
        vals.append(xi.value_on(old, f))
    vals = [v if adapted.space.parities[j] == EVEN else f.zero
            for j, v in enumerate(vals)]
    return PCharacter(vals)


def induce(alg, xi, sub_order, comp_order, chi_s_values, weights=None,
           check=True, tag=""):
    """Induced module from a restricted subalgebra s with one-dimensional
    character chi_s.

    sub_order/comp_order: ordered lists (vector, parity, weight) spanning s
    and a complement; chi_s_values: scalars aligned with sub_order.  The
    compatibility conditions are checked: chi_s kills [s,s] and odd
    elements, and chi_s(x)^p - chi_s(x^[p]) = xi(x)^p on even s-elements.
    """
    f = alg.field
    p = f.char
    vectors = [v for v, _, _ in comp_order] + [v for v, _, _ in sub_order]
    n_comp = len(comp_order)
    adapted, to_new = alg.change_basis(
        vectors, [f"c{i}" for i in range(n_comp)]
        + [f"s{i}" for i in range(len(sub_order))])
    wts = None
    if weights is None and all(w is not None for _, _, w in comp_order):
        wts = ([w for _, _, w in comp_order]
               + [w if w is not None else 0 for _, _, w in sub_order])
    elif weights is not None:
        wts = weights

    if check:
        sub = Subspace(alg.space, f, [v for v, _, _ in sub_order])
        nsub = len(sub_order)
        for a in range(nsub):
            va = sub_order[a][0]
            if sub_order[a][1] == ODD and chi_s_values[a] != f.zero:
                raise InvalidCharacter(f"odd s-element {a} has nonzero character")
            for b in range(nsub):
                w = alg.bracket(va, sub_order[b][0])
                if not vec_is_zero(f, w):
                    if not sub.contains(w):
                        raise InvalidCharacter("s is not a subalgebra")
                    val = _eval_on_sub(f, sub, sub_order, chi_s_values, w)
                    if val != f.zero:
                        raise InvalidCharacter(
                            f"chi_s does not kill [s,s]: pair ({a},{b})")
        for a in range(nsub):
            if sub_order[a][1] != EVEN:
                continue
            va = sub_order[a][0]
            img = alg.pmap_element(va)
            if not sub.contains(img):
                raise InvalidCharacter("s is not p-closed")
            lhs = f.sub(f.pow(chi_s_values[a], p),
                        _eval_on_sub(f, sub, sub_order, chi_s_values, img))
            rhs = f.pow(xi.value_on(va, f), p)
            if lhs != rhs:
                raise InvalidCharacter(
                    f"p-power compatibility fails on s-element {a}")

    mod = InducedModule(alg, xi, adapted, to_new, n_comp,
                        list(chi_s_values), wts, tag)
    expect = ((p ** alg.space.dim_even) * (2 ** alg.space.dim_odd)) // (
        (p ** sum(1 for _, par, _ in sub_order if par == EVEN))
        * (2 ** sum(1 for _, par, _ in sub_order if par == ODD)))
    if mod.dim != expect:
        raise DimensionMismatch(f"induced dim {mod.dim}, expected {expect}")
    return mod


def _eval_on_sub(f, sub, sub_order, chi_s_values, vec):
    """Value of the inducing character on an element of s, via the ordered
    s-basis (chi_s need not be linear in echelon coordinates)."""
    from .linalg import solve_right
    cols = [[v[i] for v, _, _ in sub_order] for i in range(len(vec))]
    x, _ = solve_right(f, cols, vec)
    acc = f.zero
    for c, val in zip(x, chi_s_values):
        if c != f.zero and val != f.zero:
            acc = f.add(acc, f.mul(c, val))
    return acc


def regular_module(alg, xi, weights=None):
    """U_xi(g) as a module over itself (s = 0)."""
    f = alg.field
    comp = [(unit_vector(f, alg.dim, i), alg.space.parities[i],
             weights[i] if weights is not None else None)
            for i in range(alg.dim)]
    return induce(alg, xi, [], comp, [], tag="regular")


def gelfand_graev_module(frame, eta=None, alg_p=None):
    """Q_chi^eta for a reduced frame: induced from m with the character
    chi restricted to m; eta must lie in chi + (m-perp)_even."""
    alg = frame.alg
    f = alg.field
    if f.char == 0:
        raise Unsupported("Q_chi^eta lives over F_p; reduce the frame first")
    if eta is None:
        eta = frame.chi
    check_eta(frame, eta)
    sub_order = list(frame.m_order)
    comp_order = frame.complement_order()
    chi_s = [frame.chi_value(v) for v, _, _ in sub_order]
    weights = [w for _, _, w in comp_order] + [w for _, _, w in sub_order]
    return induce(alg, eta, sub_order, comp_order, chi_s, weights=weights,
                  tag="gelfand-graev")


def check_eta(frame, eta):
    f = frame.alg.field
    for v, _, _ in frame.m_order:
        if eta.value_on(v, f) != frame.chi_value(v):
            raise CharacterMismatch("eta - chi does not vanish on m")


def whittaker_invariants(module: InducedModule, frame, eta):
    """M^m = {v : (x - eta(x)).v = 0 for x in a basis of m}, with the
    dimension identity dim M = dim M^m * dim U_eta(m) asserted."""
    f = module.field
    check_eta(frame, eta)
    rows = []
    for vec, _, _ in frame.m_order:
        mat = module.dense_action_for_vector(vec)
        c = eta.value_on(vec, f)
        if c != f.zero:
            for i in range(module.dim):
                mat[i][i] = f.sub(mat[i][i], c)
        rows.extend(mat)
    from .linalg import kernel_of_matrix
    space = module.graded_space()
    if rows:
        sub = Subspace(space, f, kernel_of_matrix(f, rows))
    else:
        from .linalg import full_space
        sub = full_space(space, f)
    p = f.char
    m_dims = frame.m.graded_dims()
    dim_um = p ** m_dims[0] * 2 ** m_dims[1]
    if sub.dim * dim_um != module.dim:
        raise DimensionMismatch(
            f"dim M^m = {sub.dim}, but dim M / dim U(m) = "
            f"{module.dim}/{dim_um}")
    return sub


def validate_module(alg, module: InducedModule, pairs="all"):
    """Action matrices respect brackets and p-powers:
    [rho(x), rho(y)] = rho([x,y]) on basis pairs, and
    rho(x)^p = rho(x^[p]) + xi(x)^p id for even basis x."""
    f = alg.field
    n = alg.dim
    p = f.char
    basis = [unit_vector(f, n, i) for i in range(n)]
    mats = [module.act_matrix_for_vector(b) for b in basis]

    def compose(a, b):
        out = {}
        for j, col in b.items():
            acc = apply_sparse(f, a, col)
            if acc:
                out[j] = acc
        return out

    def add_m(a, b, sgn=1):
        out = {j: dict(col) for j, col in a.items()}
        s = f.one if sgn > 0 else f.neg(f.one)
        for j, col in b.items():
            dst = out.setdefault(j, {})
            for i, c in col.items():
                v = f.add(dst.get(i, f.zero), f.mul(s, c))
                if v == f.zero:
                    dst.pop(i, None)
                else:
                    dst[i] = v
        return {j: col for j, col in out.items() if col}

    par = alg.space.parities
    for i in range(n):
        for j in range(n):
            lhs = compose(mats[i], mats[j])
            sgn = -1 if (par[i] and par[j]) else 1
            rhs2 = compose(mats[j], mats[i])
            comm = add_m(lhs, rhs2, -sgn)
            target = module.act_matrix_for_vector(alg.bracket(basis[i], basis[j]))
            if comm != target:
                return False, ("bracket", i, j)
    for i in range(n):
        if par[i] != EVEN:
            continue
        acc = mats[i]
        for _ in range(p - 1):
            acc = compose(acc, mats[i])
        target = module.act_matrix_for_vector(alg.pmap_element(basis[i]))
        c = f.pow(module.xi.value_on(basis[i], f), p)
        if c != f.zero:
            ident = {j: {j: c} for j in range(module.dim)}
            target = add_m(target, ident)
        if acc != target:
            return False, ("p-power", i)
    return True, None
