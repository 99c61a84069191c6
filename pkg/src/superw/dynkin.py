"""sl2-triples, Dynkin gradings, the d-invariants, Darboux-normalized bases
of g(-1), the subalgebras m, m', p-tilde, a, and the dimension lower bound
p^(d0/2) * 2^(ceil(d1/2)).

Floor/ceiling convention: everything in this package is written in standard
notation (floor(a) <= a <= ceil(a)).  Several classical sources for this
subject use the mirrored convention; every formula imported from such a
source is translated here, once:

    largest integer lower bound  -> floor
    least integer upper bound    -> ceil
    dim U_chi(m)  = p^(d0/2) * 2^floor(d1/2)
    dim U_chi(m') = p^(d0/2) * 2^ceil(d1/2)
    bound         = p^(d0/2) * 2^ceil(d1/2)

Gradings are computed over Q (integer ad-h eigenvalues) and carried to F_p
by reduction; this avoids the residue collisions of small primes.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import SuperAlgebraData, PCharacter, pcharacter_from_element
from .errors import (
    DegeneratePairing,
    DimensionMismatch,
    NonIntegerEigenvalue,
    NotAdmissibleAtP,
    NotNilpotent,
    NoTriple,
    NoSolution,
    ParityViolation,
    Unsupported,
)
from .fields import PrimeField, QQ, reduce_fraction
from .linalg import (
    EVEN,
    ODD,
    GradedMap,
    Subspace,
    identity,
    kernel,
    mat_mul,
    mat_vec,
    solve_right,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zeros,
)


class SL2Triple:
    """(e, h, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h, plus the factor
    `scale` applied to the supertrace form so that (e, f) = 1."""

    __slots__ = ("e", "h", "f", "scale")

    def __init__(self, e, h, f, scale):
        self.e = list(e)
        self.h = list(h)
        self.f = list(f)
        self.scale = scale

    def is_zero(self, field):
        return vec_is_zero(field, self.e)


class DynkinGrading:
    """g = sum of ad-h eigenspaces g(i), integer i."""

    __slots__ = ("alg", "triple", "pieces")

    def __init__(self, alg, triple, pieces):
        self.alg = alg
        self.triple = triple
        self.pieces = dict(pieces)

    def piece(self, i):
        return self.pieces.get(i)

    def weight_of(self, vec):
        """The unique i with vec in g(i); None for non-homogeneous vectors."""
        for i, sub in self.pieces.items():
            if sub.contains(vec):
                return i
        return None

    def graded_dim(self, i):
        sub = self.pieces.get(i)
        return sub.graded_dims() if sub else (0, 0)


class DInvariants:
    """The dimension data of a nilpotent: d_i = dim g_i - dim (g^e)_i plus
    the frame counts r, s, l, q and the derived q', t = floor(r/2),
    t_up = ceil(r/2)."""

    __slots__ = ("d0", "d1", "r", "s", "l", "q", "q_prime", "t", "t_up")

    def __init__(self, d0, d1, r, s, l, q):
        self.d0, self.d1, self.r, self.s, self.l, self.q = d0, d1, r, s, l, q
        self.q_prime = q + (r % 2)
        self.t = r // 2
        self.t_up = (r + 1) // 2

    def dim_m(self):
        """(even, odd) dimension of m: (d0/2, floor(d1/2))."""
        return (self.d0 // 2, self.d1 // 2)

    def as_dict(self):
        return {"d0": self.d0, "d1": self.d1, "r": self.r, "s": self.s,
                "l": self.l, "q": self.q, "q_prime": self.q_prime,
                "t": self.t, "t_up": self.t_up}


def kw_bound(dinv, p):
    """The divisibility bound p^(d0/2) * 2^(ceil(d1/2))."""
    if p <= 2:
        raise ValueError("odd prime required")
    return p ** (dinv.d0 // 2) * 2 ** ((dinv.d1 + 1) // 2)


def is_ad_nilpotent(alg, e):
    f = alg.field
    ad = alg.ad_matrix(e)
    v = identity(f, alg.dim)
    acc = ad
    for _ in range(alg.dim):
        if all(x == f.zero for row in acc for x in row):
            return True
        acc = mat_mul(f, acc, ad)
    return all(x == f.zero for row in acc for x in row)


def complete_sl2(alg: SuperAlgebraData, e) -> SL2Triple:
    """Extend an even ad-nilpotent e to an sl2-triple.

    h is found inside [e, g_even] (so the f-system is consistent), then f
    solves the two linear conditions [e,f] = h and [h,f] = -2f.
    """
    f = alg.field
    n = alg.dim
    if alg.parity_of(e) != EVEN:
        raise ValueError("e must be even")
    if vec_is_zero(f, e):
        return SL2Triple(zeros(f, n), zeros(f, n), zeros(f, n), f.one)
    if not is_ad_nilpotent(alg, e):
        raise NotNilpotent("ad e is not nilpotent")
    evens = [j for j in range(n) if alg.space.parities[j] == EVEN]
    ade = alg.ad_matrix(e)
    ade2 = mat_mul(f, ade, ade)
    # solve ad_e^2 w = -2 e over the even part
    cols = [[ade2[i][j] for j in evens] for i in range(n)]
    try:
        w_coords, _ = solve_right(f, cols, vec_scale(f, f.from_int(-2), e))
    except NoSolution as exc:
        raise NoTriple("no h candidate in [e, g_even]") from exc
    w = zeros(f, n)
    for c, j in zip(w_coords, evens):
        w[j] = c
    h = alg.bracket(e, w)
    adh = alg.ad_matrix(h)
    # stack [e,f] = h and ([h,.] + 2) f = 0, f even
    top = [[ade[i][j] for j in evens] for i in range(n)]
    bot = [[f.add(adh[i][j], f.from_int(2) if i == j else f.zero)
            for j in evens] for i in range(n)]
    rhs = list(h) + [f.zero] * n
    try:
        fcoords, _ = solve_right(f, top + bot, rhs)
    except NoSolution as exc:
        raise NoTriple("f-system inconsistent") from exc
    fvec = zeros(f, n)
    for c, j in zip(fcoords, evens):
        fvec[j] = c
    return SL2Triple(e, h, fvec, _normalizing_scale(alg, e, fvec))


def _normalizing_scale(alg, e, fvec):
    """1/(e,f) when the supertrace pairing of the triple is nonzero.  For
    nilpotents whose even and odd blocks cancel in the supertrace (possible
    in gl(n|n)-type algebras) no invariant form attains (e,f) = 1; the frame
    is still well defined and the scale stays 1."""
    ef = alg.form_value(e, fvec)
    return alg.field.one if ef == alg.field.zero else alg.field.inv(ef)


def sl2_for_jordan(alg, even_partition, odd_partition):
    """Closed-form triple for a Jordan-type nilpotent of gl/sl(m|n):
    h is the weighted diagonal (k-1, k-3, ..., 1-k) per block, f carries
    the coefficients i(k-i)."""
    from .algebra import jordan_nilpotent
    tag = alg.catalog_tag
    m, n = tag["params"]
    f = alg.field
    d = m + n
    e = jordan_nilpotent(alg, even_partition, odd_partition)
    if vec_is_zero(f, e):
        z = zeros(f, alg.dim)
        return SL2Triple(z, z, z, f.one)
    hmat = [[f.zero] * d for _ in range(d)]
    fmat = [[f.zero] * d for _ in range(d)]
    for base, parts in ((0, even_partition), (m, odd_partition)):
        row = base
        for part in parts:
            for i in range(part):
                hmat[row + i][row + i] = f.from_int(part - 1 - 2 * i)
            for i in range(1, part):
                fmat[row + i][row + i - 1] = f.from_int(i * (part - i))
            row += part
    h = alg.expand_matrix(hmat)
    fv = alg.expand_matrix(fmat)
    return SL2Triple(e, h, fv, _normalizing_scale(alg, e, fv))


def grade(alg, triple: SL2Triple) -> DynkinGrading:
    """Simultaneous integer eigenspace decomposition of ad h."""
    f = alg.field
    n = alg.dim
    if f.char != 0:
        raise Unsupported("gradings are computed over Q and reduced mod p")
    if triple.is_zero(f):
        from .linalg import full_space
        return DynkinGrading(alg, triple, {0: full_space(alg.space, f)})
    adh = alg.ad_matrix(triple.h)
    pieces = {}
    total = 0
    bound = 2 * n + 1
    for i in range(-bound, bound + 1):
        shifted = [[f.sub(adh[r][c], f.from_int(i) if r == c else f.zero)
                    for c in range(n)] for r in range(n)]
        ker = kernel(GradedMap(f, shifted, alg.space, alg.space, parity=EVEN))
        if ker.dim:
            pieces[i] = ker
            total += ker.dim
        if total == n:
            break
    if total != n:
        raise NonIntegerEigenvalue("ad h has non-integer spectrum")
    g = DynkinGrading(alg, triple, pieces)
    if not triple.is_zero(f):
        if not pieces.get(2) or not pieces[2].contains(triple.e):
            raise NonIntegerEigenvalue("e is not in g(2)")
        if not pieces.get(-2) or not pieces[-2].contains(triple.f):
            raise NonIntegerEigenvalue("f is not in g(-2)")
    return g


def invariants(grading: DynkinGrading) -> DInvariants:
    alg = grading.alg
    f = alg.field
    cent = alg.centralizer(grading.triple.e)
    l, q = cent.graded_dims()
    ge, go = alg.space.dim_even, alg.space.dim_odd
    d0, d1 = ge - l, go - q
    sm, r = grading.graded_dim(-1)
    if sm % 2 != 0:
        raise DegeneratePairing("g(-1) even part has odd dimension")
    if d0 % 2 != 0:
        raise ParityViolation("d0 is odd")
    if (d1 - r) % 2 != 0:
        raise ParityViolation("d1 and dim g(-1)_odd have different parities")
    return DInvariants(d0, d1, r, sm // 2, l, q)


class NilpotentFrame:
    """All basis data attached to a nilpotent: the triple and its grading,
    Darboux bases of g(-1), the subalgebras m (with an ordered basis used for
    PBW constructions), m', p-tilde, a, and the adapted x/y bases of p-tilde
    with their grading weights."""

    __slots__ = ("alg", "grading", "triple", "chi", "inv", "u_basis",
                 "v_basis", "middle_norm", "m", "m_prime", "p_tilde", "a",
                 "m_order", "x_basis", "x_weights", "y_basis", "y_weights",
                 "u_complement", "v_complement", "jordan")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    @property
    def field(self):
        return self.alg.field

    def complement_order(self):
        """Ordered PBW complement of m: x's, y's, u_1..u_s, v_1..v_t with the
        self-paired middle last; entries are (vector, parity, weight)."""
        out = []
        for vec, w in zip(self.x_basis, self.x_weights):
            out.append((vec, EVEN, w))
        for vec, w in zip(self.y_basis, self.y_weights):
            out.append((vec, ODD, w))
        for vec in self.u_complement:
            out.append((vec, EVEN, -1))
        for vec in self.v_complement:
            out.append((vec, ODD, -1))
        return out

    def m_prime_order(self):
        out = list(self.m_order)
        if self.inv.r % 2 == 1:
            out.append((self.v_complement[-1], ODD, -1))
        return out

    def chi_value(self, vec):
        return self.chi.value_on(vec, self.field)


def _pairing(alg, chi, x, y):
    return chi.value_on(alg.bracket(x, y), alg.field)


def _symplectic_gs(alg, chi, basis):
    """Darboux pairs (a_i, b_i) with <a_i, b_i> = -1, cross pairs zero."""
    f = alg.field
    remaining = [list(v) for v in basis]
    pairs = []
    while remaining:
        a = remaining.pop(0)
        idx = None
        for k, w in enumerate(remaining):
            if _pairing(alg, chi, a, w) != f.zero:
                idx = k
                break
        if idx is None:
            raise DegeneratePairing("symplectic pairing degenerate on g(-1)_even")
        b = remaining.pop(idx)
        c = _pairing(alg, chi, a, b)
        b = vec_scale(f, f.neg(f.inv(c)), b)  # <a, b> = -1
        new_rest = []
        for w in remaining:
            # alpha = -<w,b>, beta = <w,a>  so that w' kills both
            alpha = f.neg(_pairing(alg, chi, w, b))
            beta = _pairing(alg, chi, w, a)
            w2 = vec_add(f, w, vec_scale(f, alpha, a))
            w2 = vec_add(f, w2, vec_scale(f, beta, b))
            new_rest.append(w2)
        remaining = new_rest
        pairs.append((a, b))
    return pairs


def _rational_sqrt(c: Fraction):
    if c <= 0:
        return None
    num, den = c.numerator, c.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n):
    import math
    r = math.isqrt(n)
    return r if r * r == n else None


def _find_isotropic(alg, chi, vectors):
    """A nonzero isotropic vector in the span, or None if the (symmetric)
    form is anisotropic over the field on these generators."""
    f = alg.field
    for v in vectors:
        if _pairing(alg, chi, v, v) == f.zero:
            return v
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            a = _pairing(alg, chi, vectors[i], vectors[i])
            b = _pairing(alg, chi, vectors[i], vectors[j])
            c = _pairing(alg, chi, vectors[j], vectors[j])
            # q(t) = a + 2bt + c t^2
            if isinstance(f, PrimeField):
                for t in range(f.p):
                    if f.add(f.add(a, f.mul(f.from_int(2 * t), b)),
                             f.mul(f.from_int(t * t), c)) == f.zero:
                        return vec_add(f, vectors[i],
                                       vec_scale(f, f.from_int(t), vectors[j]))
            else:
                disc = b * b - a * c
                rt = _rational_sqrt(disc) if disc >= 0 else None
                if rt is not None and c != 0:
                    t = (-b + rt) / c
                    return vec_add(f, vectors[i], vec_scale(f, t, vectors[j]))
    return None


def _symmetric_hyperbolic(alg, chi, basis):
    """Hyperbolic pairs (x_i, y_i) with <x_i, y_i> = 1 and isotropic members,
    plus the left-over self-paired middle vector when the count is odd."""
    f = alg.field
    remaining = [list(v) for v in basis]
    pairs = []
    while len(remaining) >= 2:
        x = _find_isotropic(alg, chi, remaining)
        if x is None:
            raise DegeneratePairing(
                "odd pairing on g(-1) is not split over the base field")
        y = None
        for w in remaining:
            if _pairing(alg, chi, x, w) != f.zero:
                y = w
                break
        if y is None:
            raise DegeneratePairing("odd pairing degenerate on g(-1)_odd")
        y = vec_scale(f, f.inv(_pairing(alg, chi, x, y)), y)
        half = f.div(_pairing(alg, chi, y, y), f.from_int(2))
        y = vec_sub(f, y, vec_scale(f, half, x))
        new_rest = []
        for w in remaining:
            alpha = _pairing(alg, chi, w, y)
            beta = _pairing(alg, chi, w, x)
            w2 = vec_sub(f, w, vec_scale(f, alpha, x))
            w2 = vec_sub(f, w2, vec_scale(f, beta, y))
            if not vec_is_zero(f, w2):
                new_rest.append(w2)
        remaining = new_rest
        pairs.append((x, y))
    middle = remaining[0] if remaining else None
    return pairs, middle


def darboux_frame(grading: DynkinGrading, chi=None,
                  normalize_middle=True) -> NilpotentFrame:
    """Build the full frame.  chi defaults to the p-character of e for the
    rescaled form.  The self-paired middle vector is normalized to norm 1
    whenever its norm is a square in the base field; otherwise its norm is
    kept as frame data (downstream identities carry the factor)."""
    alg = grading.alg
    f = alg.field
    triple = grading.triple
    dinv = invariants(grading)
    if chi is None:
        chi = pcharacter_from_element(alg, triple.e, triple.scale)

    # Darboux bases of g(-1)
    u_pairs, v_pairs, v_middle, middle_norm = [], [], None, None
    gm1 = grading.piece(-1)
    if gm1 is not None and gm1.dim:
        ev, od = [], []
        for row in gm1.rows:
            (ev if alg.parity_of(list(row)) == EVEN else od).append(list(row))
        u_pairs = _symplectic_gs(alg, chi, ev)
        v_pairs, v_middle = _symmetric_hyperbolic(alg, chi, od)
    if v_middle is not None:
        middle_norm = _pairing(alg, chi, v_middle, v_middle)
        if middle_norm == f.zero:
            raise DegeneratePairing("middle vector has zero norm")
        if normalize_middle:
            root = None
            if isinstance(f, PrimeField):
                root = f.sqrt(middle_norm)
            elif f.char == 0:
                root = _rational_sqrt(middle_norm)
            if root is not None:
                v_middle = vec_scale(f, f.inv(root), v_middle)
                middle_norm = _pairing(alg, chi, v_middle, v_middle)

    s, r = dinv.s, dinv.r
    u_basis = [None] * (2 * s)
    for i, (a, b) in enumerate(u_pairs):
        u_basis[i] = a
        u_basis[2 * s - 1 - i] = b
    v_basis = [None] * r
    for i, (x, y) in enumerate(v_pairs):
        v_basis[i] = x
        v_basis[r - 1 - i] = y
    if v_middle is not None:
        v_basis[(r - 1) // 2] = v_middle

    # m = (sum of g(i), i <= -2) + second halves of the Darboux bases
    m_order = []
    for vec in u_basis[s:]:
        m_order.append((vec, EVEN, -1))
    for vec in v_basis[dinv.t_up:]:
        m_order.append((vec, ODD, -1))
    for i in sorted(k for k in grading.pieces if k <= -2):
        piece = grading.piece(i)
        for row in piece.rows:
            m_order.append((list(row), alg.parity_of(list(row)), i))
    m = Subspace(alg.space, f, [vec for vec, _, _ in m_order])
    if m.graded_dims() != dinv.dim_m():
        raise DimensionMismatch(
            f"dim m = {m.graded_dims()}, formula says {dinv.dim_m()}")
    mp_gens = [vec for vec, _, _ in m_order]
    if r % 2 == 1:
        mp_gens = mp_gens + [v_basis[(r - 1) // 2]]
    m_prime = Subspace(alg.space, f, mp_gens)

    # chi vanishes on [m, m]: checked exhaustively
    for va, _, _ in m_order:
        for vb, _, _ in m_order:
            if chi.value_on(alg.bracket(va, vb), f) != f.zero:
                raise DimensionMismatch("chi does not vanish on [m, m]")

    # adapted basis of p-tilde's non-negative part: centralizer first,
    # then completions from [f, g(i+2)]
    cent = alg.centralizer(triple.e)
    x_basis, x_weights, y_basis, y_weights = [], [], [], []
    comp_x, comp_xw, comp_y, comp_yw = [], [], [], []
    nonneg = sorted(k for k in grading.pieces if k >= 0)
    for i in nonneg:
        piece = grading.piece(i)
        cent_i = piece.intersect(cent)
        span_rows = [list(rw) for rw in cent_i.rows]
        for row in cent_i.rows:
            vv = list(row)
            if alg.parity_of(vv) == EVEN:
                x_basis.append(vv)
                x_weights.append(i)
            else:
                y_basis.append(vv)
                y_weights.append(i)
        upper = grading.piece(i + 2)
        span = Subspace(alg.space, f, span_rows)
        if upper is not None:
            for row in upper.rows:
                img = alg.bracket(triple.f, list(row))
                if vec_is_zero(f, img):
                    continue
                if not span.contains(img):
                    span = Subspace(alg.space, f, list(span.rows) + [img])
                    if alg.parity_of(img) == EVEN:
                        comp_x.append(img)
                        comp_xw.append(i)
                    else:
                        comp_y.append(img)
                        comp_yw.append(i)
        if span.dim != piece.dim:
            raise DimensionMismatch(
                f"g({i}) is not g^e({i}) + [f, g({i + 2})]")
    x_basis += comp_x
    x_weights += comp_xw
    y_basis += comp_y
    y_weights += comp_yw

    u_complement = u_basis[:s]
    v_complement = v_basis[:dinv.t_up]
    a_vecs = comp_x + comp_y + u_complement + v_basis[:dinv.t]
    a_sub = Subspace(alg.space, f, a_vecs)
    pt_gens = a_vecs + [list(rw) for rw in cent.rows]
    if r % 2 == 1:
        pt_gens.append(v_basis[(r - 1) // 2])
    p_tilde = Subspace(alg.space, f, pt_gens)
    if m.dim + p_tilde.dim != alg.dim or m.intersect(p_tilde).dim != 0:
        raise DimensionMismatch("g is not m + p-tilde")

    return NilpotentFrame(
        alg=alg, grading=grading, triple=triple, chi=chi, inv=dinv,
        u_basis=u_basis, v_basis=v_basis, middle_norm=middle_norm,
        m=m, m_prime=m_prime, p_tilde=p_tilde, a=a_sub, m_order=m_order,
        x_basis=x_basis, x_weights=x_weights,
        y_basis=y_basis, y_weights=y_weights,
        u_complement=u_complement, v_complement=v_complement)


def frame_gram_report(frame: NilpotentFrame):
    """Exact verification of the Gram conditions of the frame."""
    alg, chi, f = frame.alg, frame.chi, frame.field
    s = frame.inv.s
    r = frame.inv.r
    out = []
    for i in range(2 * s):
        for j in range(2 * s):
            want = f.zero
            if i + j == 2 * s - 1:
                want = f.neg(f.one) if i < s else f.one
            got = _pairing(alg, chi, frame.u_basis[i], frame.u_basis[j])
            out.append((f"u[{i + 1}],u[{j + 1}]", got == want))
    mid = (r - 1) // 2 if r % 2 == 1 else None
    for i in range(r):
        for j in range(r):
            if mid is not None and i == j == mid:
                want = frame.middle_norm
            elif i + j == r - 1 and i != j:
                want = f.one
            else:
                want = f.zero
            got = _pairing(alg, chi, frame.v_basis[i], frame.v_basis[j])
            out.append((f"v[{i + 1}],v[{j + 1}]", got == want))
    return out


def frame_for(alg, e=None, jordan=None):
    """Convenience: triple, grading, frame in one call (over Q)."""
    if jordan is not None:
        triple = sl2_for_jordan(alg, *jordan)
    else:
        triple = complete_sl2(alg, e)
    grading = grade(alg, triple)
    frame = darboux_frame(grading)
    frame.jordan = jordan
    return frame


# -- reduction to F_p -----------------------------------------------------------


def reduce_algebra(alg: SuperAlgebraData, p: int) -> SuperAlgebraData:
    """Reduce a Q-algebra's structure constants, form and realization mod p;
    the p-power map is recomputed from the matrices.  NotAdmissibleAtP when a
    denominator is divisible by p."""
    if alg.field.char != 0:
        raise Unsupported("reduce_algebra expects a Q-algebra")
    fp = PrimeField(p)

    def red(x):
        return reduce_fraction(x, p)

    brackets = {}
    for key, tab in alg.brackets.items():
        entry = {k: red(c) for k, c in tab.items()}
        entry = {k: c for k, c in entry.items() if c != 0}
        if entry:
            brackets[key] = entry
    form = [[red(c) for c in row] for row in alg.form]
    mats = None
    if alg.matrices is not None:
        mats = [[[red(c) for c in row] for row in mat] for mat in alg.matrices]
    out = SuperAlgebraData(alg.space, fp, brackets, form, None,
                           dict(alg.catalog_tag), mats)
    if mats is not None:
        pmap = {}
        for i in range(alg.dim):
            if alg.space.parities[i] != EVEN:
                continue
            img = out.pmap_element(unit_vector(fp, alg.dim, i))
            pmap[i] = {k: c for k, c in enumerate(img) if c != 0}
        out.pmap = pmap
    else:
        out.pmap = {}
        base = SuperAlgebraData(alg.space, fp, brackets, form, {},
                                dict(alg.catalog_tag), None)
        for i in range(alg.dim):
            if alg.space.parities[i] != EVEN:
                continue
            img = base._pmap_by_summands(unit_vector(fp, alg.dim, i))
            out.pmap[i] = {k: c for k, c in enumerate(img) if c != 0}
    return out


def reduce_frame(frame: NilpotentFrame, p: int,
                 alg_p: SuperAlgebraData = None) -> NilpotentFrame:
    """Carry a Q-frame to F_p.  All vectors reduce coordinatewise; the
    reduced centralizer and grading dimensions must match the rational ones
    (a jump means the prime is not admissible for this frame)."""
    if alg_p is None:
        alg_p = reduce_algebra(frame.alg, p)
    fp = alg_p.field

    def rv(vec):
        return [reduce_fraction(c, p) for c in vec]

    triple = SL2Triple(rv(frame.triple.e), rv(frame.triple.h),
                       rv(frame.triple.f), reduce_fraction(frame.triple.scale, p))
    pieces = {}
    for i, sub in frame.grading.pieces.items():
        rows = [rv(list(r)) for r in sub.rows]
        red = Subspace(alg_p.space, fp, rows)
        if red.dim != sub.dim:
            raise NotAdmissibleAtP(f"grading piece {i} degenerates mod {p}")
        pieces[i] = red
    grading = DynkinGrading(alg_p, triple, pieces)
    cent = alg_p.centralizer(triple.e)
    if cent.graded_dims() != (frame.inv.l, frame.inv.q):
        raise NotAdmissibleAtP(f"centralizer jumps mod {p}")
    chi = PCharacter([reduce_fraction(c, p) for c in frame.chi.values],
                     rv(frame.chi.dual_element))
    dinv = DInvariants(frame.inv.d0, frame.inv.d1, frame.inv.r, frame.inv.s,
                       frame.inv.l, frame.inv.q)

    u_basis = [rv(v) for v in frame.u_basis]
    v_basis = [rv(v) for v in frame.v_basis]
    middle_norm = None
    if frame.middle_norm is not None:
        middle_norm = reduce_fraction(frame.middle_norm, p)
        if middle_norm == 0:
            raise NotAdmissibleAtP("middle norm vanishes mod p")
        root = fp.sqrt(middle_norm)
        if root is not None and middle_norm != fp.one:
            mid = (dinv.r - 1) // 2
            v_basis[mid] = vec_scale(fp, fp.inv(root), v_basis[mid])
            middle_norm = _pairing(alg_p, chi, v_basis[mid], v_basis[mid])

    m_order = [(rv(v), par, w) for v, par, w in frame.m_order]
    # refresh the darboux-half entries in m_order from the reduced bases
    s = dinv.s
    for k in range(s):
        m_order[k] = (u_basis[s + k], EVEN, -1)
    for k in range(dinv.r - dinv.t_up):
        m_order[s + k] = (v_basis[dinv.t_up + k], ODD, -1)
    m = Subspace(alg_p.space, fp, [v for v, _, _ in m_order])
    mp_gens = [v for v, _, _ in m_order]
    if dinv.r % 2 == 1:
        mp_gens = mp_gens + [v_basis[(dinv.r - 1) // 2]]
    m_prime = Subspace(alg_p.space, fp, mp_gens)
    if m.graded_dims() != dinv.dim_m():
        raise NotAdmissibleAtP("m degenerates mod p")

    x_basis = [rv(v) for v in frame.x_basis]
    y_basis = [rv(v) for v in frame.y_basis]
    u_complement = u_basis[:s]
    v_complement = v_basis[:dinv.t_up]
    a_vecs = ([rv(v) for v in frame.x_basis[dinv.l:]]
              + [rv(v) for v in frame.y_basis[dinv.q:]]
              + u_complement + v_basis[:dinv.t])
    a_sub = Subspace(alg_p.space, fp, a_vecs)
    pt_rows = [rv(list(r)) for r in frame.p_tilde.rows]
    p_tilde = Subspace(alg_p.space, fp, pt_rows)
    if m.dim + p_tilde.dim != alg_p.dim or m.intersect(p_tilde).dim != 0:
        raise NotAdmissibleAtP("m + p-tilde decomposition degenerates mod p")

    return NilpotentFrame(
        alg=alg_p, grading=grading, triple=triple, chi=chi, inv=dinv,
        u_basis=u_basis, v_basis=v_basis, middle_norm=middle_norm,
        m=m, m_prime=m_prime, p_tilde=p_tilde, a=a_sub, m_order=m_order,
        x_basis=x_basis, x_weights=list(frame.x_weights),
        y_basis=y_basis, y_weights=list(frame.y_weights),
        u_complement=u_complement, v_complement=v_complement,
        jordan=frame.jordan)
