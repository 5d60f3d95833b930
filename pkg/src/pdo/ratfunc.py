"""The rational function field Q(z) and SL(2, Q) homographies.

A RatFunc is stored as scalar * N(z)/D(z) with N, D primitive integer
polynomials (ascending coefficients, positive leading coefficient, coprime);
the scalar is an exact Fraction.  This keeps every gcd inside Z[z], where
primitive pseudo-remainder sequences avoid the coefficient blow-up of
fraction-field Euclid.  The public ``num``/``den`` views present the
equivalent canonical reduced form with monic denominator, so equality is
structural.

GMatrix holds a determinant-one matrix acting on Q(z) by substitution
z -> (az+b)/(cz+d).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _intgcd
from math import lcm as _intlcm
from typing import Sequence, Union

from .errors import DivisionByZero

Scalar = Union[int, Fraction]
IntPoly = tuple[int, ...]

__all__ = ["RatFunc", "GMatrix", "mobius_compose"]


# -- integer polynomial helpers (ascending coefficients, no trailing zeros) --


def _itrim(p: list[int]) -> IntPoly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _iadd(p: IntPoly, q: IntPoly) -> IntPoly:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _itrim(out)


def _ineg(p: IntPoly) -> IntPoly:
    return tuple(-c for c in p)


def _imul(p: IntPoly, q: IntPoly) -> IntPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _itrim(out)


def _iscale(k: int, p: IntPoly) -> IntPoly:
    if k == 0:
        return ()
    return tuple(k * c for c in p)


def _ipow(p: IntPoly, n: int) -> IntPoly:
    out: IntPoly = (1,)
    base = p
    while n:
        if n & 1:
            out = _imul(out, base)
        base = _imul(base, base)
        n >>= 1
    return out


def _ideriv(p: IntPoly) -> IntPoly:
    return _itrim([i * c for i, c in enumerate(p)][1:])


def _icontent(p: IntPoly) -> int:
    g = 0
    for c in p:
        g = _intgcd(g, c)
    return g


def _iprim(p: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient; () for zero."""
    if not p:
        return ()
    g = _icontent(p)
    if p[-1] < 0:
        g = -g
    return tuple(c // g for c in p)


def _ipseudo_rem(p: IntPoly, q: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(q)^(deg p - deg q + 1) * p reduced modulo q."""
    rem = list(p)
    lq = q[-1]
    dq = len(q) - 1
    while len(rem) - 1 >= dq and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        shift = len(rem) - len(q)
        top = rem[-1]
        for i in range(len(rem)):
            rem[i] *= lq
        for i, c in enumerate(q):
            rem[shift + i] -= top * c
        rem.pop()
    return _itrim(rem)


def _igcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd in Z[z] via the primitive pseudo-remainder sequence."""
    a, b = _iprim(p), _iprim(q)
    while b:
        a, b = b, _iprim(_ipseudo_rem(a, b))
    return a


def _iexact_div(p: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient p/g (caller guarantees divisibility)."""
    if g == (1,):
        return p
    rem = list(p)
    out = [0] * (len(p) - len(g) + 1)
    lg = g[-1]
    while rem and len(rem) >= len(g):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - len(g)
        c, r = divmod(rem[-1], lg)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[shift] = c
        for i, gc in enumerate(g):
            rem[shift + i] -= c * gc
        rem.pop()
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _itrim(out)


def _clear_denoms(coeffs: Sequence[Scalar]) -> tuple[IntPoly, int]:
    """Return (integer poly, L) with poly/L equal to the input."""
    fracs = [Fraction(c) for c in coeffs]
    L = 1
    for c in fracs:
        L = _intlcm(L, c.denominator)
    return _itrim([int(c * L) for c in fracs]), L


class RatFunc:
    """Element of Q(z): a reduced fraction of polynomials.

    Canonically scalar * N/D with N, D coprime primitive integer polynomials
    of positive leading coefficient; zero is 0/1.  Supports field arithmetic,
    d/dz, and composition with homographies.
    """

    __slots__ = ("sc", "nump", "denp")

    def __init__(self, num: Sequence[Scalar], den: Sequence[Scalar] = (1,)):
        n, ln = _clear_denoms(num)
        d, ld = _clear_denoms(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        self.sc, self.nump, self.denp = _reduce(Fraction(ld, ln), n, d)

    @classmethod
    def _from_int(cls, sc: Fraction, nump: IntPoly, denp: IntPoly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.sc, obj.nump, obj.denp = _reduce(sc, nump, denp)
        return obj

    @classmethod
    def _raw(cls, sc: Fraction, nump: IntPoly, denp: IntPoly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.sc, obj.nump, obj.denp = sc, nump, denp
        return obj

    # -- constructors --

    @classmethod
    def const(cls, c: Scalar) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return cls._raw(Fraction(0), (), (1,))
        return cls._raw(c, (1,), (1,))

    @classmethod
    def z(cls) -> "RatFunc":
        return cls._raw(Fraction(1), (0, 1), (1,))

    # -- canonical fraction views (monic denominator) --

    @property
    def num(self) -> tuple[Fraction, ...]:
        lead = Fraction(self.denp[-1])
        return tuple(self.sc * lead * c for c in self.nump)

    @property
    def den(self) -> tuple[Fraction, ...]:
        lead = self.denp[-1]
        return tuple(Fraction(c, lead) for c in self.denp)

    # -- predicates --

    def is_zero(self) -> bool:
        return self.sc == 0

    def is_const(self) -> bool:
        return len(self.nump) <= 1 and len(self.denp) == 1

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.sc * (self.nump[0] if self.nump else 0) / self.denp[0]

    def is_polynomial(self) -> bool:
        return len(self.denp) == 1

    def poly_degree(self) -> int:
        """Degree of the numerator (the degree when polynomial); -1 for zero."""
        return len(self.nump) - 1

    # -- arithmetic --

    def __add__(self, other: "RatFunc | Scalar") -> "RatFunc":
        other = _coerce(other)
        if self.sc == 0:
            return other
        if other.sc == 0:
            return self
        a, b = self.sc, other.sc
        p = _iadd(
            _iscale(a.numerator * b.denominator, _imul(self.nump, other.denp)),
            _iscale(b.numerator * a.denominator, _imul(other.nump, self.denp)),
        )
        return RatFunc._from_int(
            Fraction(1, a.denominator * b.denominator),
            p,
            _imul(self.denp, other.denp),
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.sc, self.nump, self.denp)

    def __sub__(self, other: "RatFunc | Scalar") -> "RatFunc":
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> "RatFunc":
        return _coerce(other) - self

    def __mul__(self, other: "RatFunc | Scalar") -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0 or self.sc == 0:
                return RatFunc.const(0)
            return RatFunc._raw(self.sc * c, self.nump, self.denp)
        if self.sc == 0 or other.sc == 0:
            return RatFunc.const(0)
        # cross-reduction keeps the parts coprime without a full gcd
        g1 = _igcd(self.nump, other.denp)
        g2 = _igcd(other.nump, self.denp)
        n1 = _iexact_div(self.nump, g1) if g1 != (1,) else self.nump
        d2 = _iexact_div(other.denp, g1) if g1 != (1,) else other.denp
        n2 = _iexact_div(other.nump, g2) if g2 != (1,) else other.nump
        d1 = _iexact_div(self.denp, g2) if g2 != (1,) else self.denp
        return RatFunc._raw(self.sc * other.sc, _imul(n1, n2), _imul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.sc == 0:
            raise DivisionByZero("inverse of zero in Q(z)")
        sc = 1 / self.sc
        n, d = self.denp, self.nump
        if n[-1] < 0:
            n, d, sc = _ineg(n), _ineg(d), -sc
        return RatFunc._raw(sc, n, d)

    def __truediv__(self, other: "RatFunc | Scalar") -> "RatFunc":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "RatFunc":
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        if self.sc == 0:
            return RatFunc.const(0) if n else RatFunc.const(1)
        return RatFunc._raw(self.sc**n, _ipow(self.nump, n), _ipow(self.denp, n))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (
            self.sc == other.sc
            and self.nump == other.nump
            and self.denp == other.denp
        )

    def __hash__(self) -> int:
        return hash((self.sc, self.nump, self.denp))

    def deriv(self) -> "RatFunc":
        """d/dz by the quotient rule."""
        if self.sc == 0:
            return self
        n, d = self.nump, self.denp
        top = _iadd(_imul(_ideriv(n), d), _ineg(_imul(n, _ideriv(d))))
        return RatFunc._from_int(self.sc, top, _imul(d, d))

    def deriv_n(self, n: int) -> "RatFunc":
        f = self
        for _ in range(n):
            f = f.deriv()
        return f

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        num, den = self.num, self.den
        if den == (Fraction(1),):
            return _pstr(num)
        return f"({_pstr(num)})/({_pstr(den)})"


def _reduce(sc: Fraction, n: IntPoly, d: IntPoly) -> tuple[Fraction, IntPoly, IntPoly]:
    """Canonicalize scalar * n/d: coprime primitive parts, positive leads."""
    if not n or sc == 0:
        return Fraction(0), (), (1,)
    cn, cd = _icontent(n), _icontent(d)
    if n[-1] < 0:
        cn = -cn
    if d[-1] < 0:
        cd = -cd
    n = tuple(c // cn for c in n)
    d = tuple(c // cd for c in d)
    g = _igcd(n, d)
    if g != (1,):
        n = _iexact_div(n, g)
        d = _iexact_div(d, g)
    return sc * Fraction(cn, cd), n, d


def _coerce(x: "RatFunc | Scalar") -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc.const(x)


def _pstr(p: Sequence[Fraction]) -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*z" if c != 1 else "z")
        else:
            parts.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
    return " + ".join(parts).replace("+ -", "- ")


class GMatrix:
    """Element of SL(2, Q) acting on Q(z) by homographies."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix determinant must be 1")

    @classmethod
    def identity(cls) -> "GMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "GMatrix":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __matmul__(self, other: "GMatrix") -> "GMatrix":
        return GMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GMatrix":
        return GMatrix(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GMatrix):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def s(self) -> RatFunc:
        """The automorphy cocycle z -> cz + d."""
        return RatFunc((self.d, self.c))

    def __repr__(self) -> str:
        return f"GMatrix[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mobius_compose(f: RatFunc, g: GMatrix) -> RatFunc:
    """Right action of g on f: z -> f((az+b)/(cz+d)), reduced.

    Numerator and denominator are homogenised by (cz+d)^D with
    D = max(deg num, deg den); the uniform scale M^D from clearing the
    matrix entries' denominators cancels between them.
    """
    if f.sc == 0:
        return f
    M = _intlcm(*(x.denominator for x in (g.a, g.b, g.c, g.d)))
    top = _itrim([int(g.b * M), int(g.a * M)])  # M(az + b), ascending
    bot = _itrim([int(g.d * M), int(g.c * M)])  # M(cz + d)
    deg = max(len(f.nump), len(f.denp)) - 1
    top_pows = [_ipow(top, i) for i in range(deg + 1)]
    bot_pows = [_ipow(bot, i) for i in range(deg + 1)]

    def homog(coeffs: IntPoly) -> IntPoly:
        acc: IntPoly = ()
        for i, c in enumerate(coeffs):
            if c:
                acc = _iadd(acc, _iscale(c, _imul(top_pows[i], bot_pows[deg - i])))
        return acc

    return RatFunc._from_int(f.sc, homog(f.nump), homog(f.denp))
