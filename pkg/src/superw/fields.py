"""Exact scalar arithmetic: rationals, prime fields F_p, quadratic extensions
F_{p^2}, and denominator-safe reduction from Q to F_p.

Scalars are plain python values (Fraction for Q, int for F_p, (int, int)
tuples for F_{p^2}); a Field object supplies the operations.  This keeps the
linear algebra generic while the F_p fast paths can work on raw ints.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotAdmissibleAtP, Unsupported

Rational = Fraction


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Common interface; subclasses fix the scalar representation."""

    char = 0

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, q):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def scalar_str(self, a):
        return str(a)


class RationalField(Field):
    """The field Q with Fraction scalars (arbitrary precision)."""

    char = 0
    extension_degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def random(self, rng, span=9):
        return Fraction(rng.randint(-span, span), rng.randint(1, 4))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class PrimeField(Field):
    """F_p for an odd prime p; scalars are ints in [0, p)."""

    extension_degree = 1

    def __init__(self, p):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"need an odd prime, got {p}")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        return reduce_fraction(q, self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def is_square(self, a):
        a %= self.p
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """Smallest square root of a in F_p, or None if a is a non-residue."""
        a %= self.p
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        # p is tiny at desk scale; scan deterministically.
        for s in range(1, self.p):
            if s * s % self.p == a:
                return s
        return None

    def smallest_nonresidue(self):
        for n in range(2, self.p):
            if not self.is_square(n):
                return n
        raise AssertionError("no quadratic non-residue found")

    def frobenius(self, a):
        return a % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class QuadExtField(Field):
    """F_{p^2} = F_p[x]/(x^2 - nu), nu the smallest quadratic non-residue.

    Scalars are pairs (a, b) meaning a + b*x.  Deterministic and
    reproducible: nu depends only on p.
    """

    extension_degree = 2

    def __init__(self, p):
        self.base = PrimeField(p)
        self.p = p
        self.char = p
        self.nu = self.base.smallest_nonresidue()
        self.zero = (0, 0)
        self.one = (1, 0)

    def from_int(self, n):
        return (n % self.p, 0)

    def from_fraction(self, q):
        return (reduce_fraction(q, self.p), 0)

    def from_base(self, a):
        return (a % self.p, 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def mul(self, a, b):
        return (
            (a[0] * b[0] + self.nu * a[1] * b[1]) % self.p,
            (a[0] * b[1] + a[1] * b[0]) % self.p,
        )

    def neg(self, a):
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def inv(self, a):
        # norm(a + bx) = a^2 - nu b^2, nonzero for a != 0 since nu is a
        # non-residue.
        n = (a[0] * a[0] - self.nu * a[1] * a[1]) % self.p
        if n == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}^2")
        ninv = self.base.inv(n)
        return ((a[0] * ninv) % self.p, (-a[1] * ninv) % self.p)

    def elements(self):
        return ((a, b) for a in range(self.p) for b in range(self.p))

    def random(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def frobenius(self, a):
        # x^p = -x since nu is a non-residue.
        return (a[0], (-a[1]) % self.p)

    def scalar_str(self, a):
        return f"{a[0]}+{a[1]}x"

    def __repr__(self):
        return f"GF({self.p}^2)"

    def __eq__(self, other):
        return isinstance(other, QuadExtField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp2", self.p))


def reduce_fraction(q, p):
    """Image of the rational q in F_p; NotAdmissibleAtP if p | denominator."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise NotAdmissibleAtP(f"denominator of {q} divisible by {p}")
    return q.numerator * pow(q.denominator, p - 2, p) % p


class FieldElement:
    """A scalar tagged with its field; thin convenience wrapper used at the
    public boundary (reduce_mod_p, sqrt_in_field, frobenius)."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    @property
    def modulus(self):
        return self.field.char

    @property
    def extension_degree(self):
        return self.field.extension_degree

    def __add__(self, other):
        a, b, f = _coerce(self, other)
        return FieldElement(f, f.add(a, b))

    def __sub__(self, other):
        a, b, f = _coerce(self, other)
        return FieldElement(f, f.sub(a, b))

    def __mul__(self, other):
        a, b, f = _coerce(self, other)
        return FieldElement(f, f.mul(a, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            a, b, _ = _coerce(self, other)
            return a == b
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field.scalar_str(self.value)} in {self.field!r}"


def _coerce(a, b):
    """Bring two FieldElements (or an int) into a common field."""
    if isinstance(b, int):
        return a.value, a.field.from_int(b), a.field
    fa, fb = a.field, b.field
    if fa == fb:
        return a.value, b.value, fa
    if isinstance(fa, QuadExtField) and isinstance(fb, PrimeField) and fa.p == fb.p:
        return a.value, fa.from_base(b.value), fa
    if isinstance(fb, QuadExtField) and isinstance(fa, PrimeField) and fa.p == fb.p:
        return fb.from_base(a.value), b.value, fb
    raise Unsupported(f"cannot mix scalars of {fa!r} and {fb!r}")


def reduce_mod_p(q, p):
    """Reduce a rational mod an odd prime.  NotAdmissibleAtP when p divides
    the denominator (the prime is excluded for the current computation)."""
    return FieldElement(PrimeField(p), reduce_fraction(q, p))


def sqrt_in_field(c):
    """A square root of c, in its own field when c is a square there and in
    the quadratic extension otherwise.  Deterministic: the representative
    with the smallest coordinate is chosen."""
    f = c.field
    if isinstance(f, PrimeField):
        s = f.sqrt(c.value)
        if s is not None:
            return FieldElement(f, min(s, (-s) % f.p) if s else 0)
        ext = QuadExtField(f.p)
        # c = (b x)^2 = b^2 nu; c/nu is a residue since c is not.
        b = f.sqrt(f.div(c.value, ext.nu))
        b = min(b, (-b) % f.p)
        return FieldElement(ext, (0, b))
    if isinstance(f, QuadExtField):
        for cand in f.elements():
            if f.mul(cand, cand) == c.value:
                return FieldElement(f, cand)
        raise AssertionError("unreachable: F_{p^2} contains all square roots"
                             " of its base field only")
    raise Unsupported("sqrt_in_field expects an F_p or F_{p^2} scalar")


def frobenius(c):
    """The p-power map; identity on F_p, conjugation a + bx -> a - bx on
    F_{p^2}."""
    return FieldElement(c.field, c.field.frobenius(c.value))


def field_for(kind, p=None):
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(p)
    if kind == "Fp2":
        return QuadExtField(p)
    raise ValueError(f"unknown field kind {kind!r}")


def scalar_to_string(field, a):
    """Serialize a scalar as the decimal string 'a' or 'a/b'."""
    if isinstance(field, RationalField):
        return str(a)
    if isinstance(field, PrimeField):
        return str(a)
    raise Unsupported("only Q and F_p scalars serialize")


def scalar_from_string(field, s):
    if isinstance(field, RationalField):
        return Fraction(s)
    if isinstance(field, PrimeField):
        return field.from_fraction(Fraction(s))
    raise Unsupported("only Q and F_p scalars parse")
