"""Lifting maps from weighted coefficients to invariant series.

psi_m sends a weight-m coefficient f to sum_n alpha_m(n) f^{(n)} y^{m+2n};
assembling the psi_m over a weighted family and peeling them back by
valuation realises the transfer isomorphism between products of weight
spaces and series of nonnegative valuation.  The negative-even maps are
polynomial (hence exact); at negative odd weight no lifting map with unit
leading coefficient exists, which ``negodd_nonexistence`` certifies by
solving the equivariance constraints as an exact linear system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .coeffs import gbinom, lift_coeff, omega
from .errors import (
    NegativeOddWeight,
    NotAUnit,
    NotHomogeneous,
    OrderUnresolvable,
    ParityMismatch,
    ValuationTooLow,
)
from .ratfunc import GMatrix, RatFunc
from .rings import GradedRing, QZ
from .series import EXACT, PDSeries, series_inverse, series_mul
from .action import act_series, slash

__all__ = [
    "WeightedFamily",
    "psi",
    "psi_neg_via_xi",
    "pi_k",
    "psi_inverse",
    "psi_assemble",
    "closed_pairs",
    "equivariance_residual",
    "negodd_nonexistence",
    "NegOddReport",
]


class WeightedFamily:
    """A finitely supported map weight -> coefficient-ring element.

    In the graded model each nonzero component must be homogeneous of its
    index weight; over Q(z) the indices are formal.
    """

    def __init__(self, ring, components: Mapping[int, object], start: int | None = None):
        clean = {}
        for m, f in components.items():
            f = ring.coerce(f)
            if ring.is_zero(f):
                continue
            clean[m] = f
        self.ring = ring
        self.components = clean
        self.start = min(clean) if clean else (start if start is not None else 0)

    def component(self, m: int):
        return self.components.get(m, self.ring.zero())

    def items(self):
        return sorted(self.components.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedFamily):
            return NotImplemented
        return self.ring == other.ring and self.components == other.components

    def agree(self, other: "WeightedFamily", upto: int) -> bool:
        for m in set(self.components) | set(other.components):
            if m < upto and self.component(m) != other.component(m):
                return False
        return True

    def __repr__(self) -> str:
        inner = ", ".join(f"{m}: {f}" for m, f in self.items())
        return f"WeightedFamily({{{inner}}})"


def _ring_of(f, ring=None):
    if ring is not None:
        return ring
    if isinstance(f, RatFunc):
        return QZ
    return GradedRing(f.spec)


def psi(m: int, f, order: int | None = None, ring=None) -> PDSeries:
    """The weight-m lifting map: sum_n alpha_m(n) f^{(n)} y^{m+2n}.

    Defined for m >= 0 and negative even m; the latter is a polynomial map,
    so the result is EXACT (as it is for m = 0, the constant embedding).
    In the graded model f must be homogeneous of weight m.
    """
    if m < 0 and m % 2 != 0:
        raise NegativeOddWeight(f"no lifting map at weight {m}")
    ring = _ring_of(f, ring)
    f = ring.coerce(f)
    if ring.is_graded and not ring.is_zero(f) and not f.is_homogeneous(m):
        raise NotHomogeneous(f"lifting a weight-{m} coefficient needs weight-{m} input")
    exact = m <= 0 and m % 2 == 0
    if not exact and order is None:
        raise OrderUnresolvable(f"psi at weight {m} is an infinite series; pass an order")
    out = {}
    n = 0
    deriv = f
    while True:
        exp = m + 2 * n
        if exact:
            if m < 0 and n >= (-m) // 2:
                break
            if m == 0 and n >= 1:
                break
        elif exp >= order:
            break
        a = lift_coeff(m, n)
        if a != 0:
            out[exp] = a * deriv
        n += 1
        deriv = ring.deriv(deriv)
    return PDSeries(ring, out, EXACT if exact else order)


def psi_neg_via_xi(k: int, f, xi, order: int, ring=None) -> PDSeries:
    """Negative-weight lift psi_{-k}(f) = psi_{2k}(xi^{2k})^{-1} psi_k(f xi^{2k}).

    Needs an invertible weight-1 unit xi; the result has valuation -k with
    leading coefficient f.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    ring = _ring_of(f, ring)
    xi = ring.coerce(xi)
    if not ring.is_unit(xi):
        raise NotAUnit("xi must be an invertible unit")
    if ring.is_graded:
        if not xi.is_homogeneous(1):
            raise NotHomogeneous("xi must have weight 1")
        if not ring.is_zero(f) and not ring.coerce(f).is_homogeneous(-k):
            raise NotHomogeneous(f"input must be homogeneous of weight {-k}")
    xi2k = xi ** (2 * k)
    denom = psi(2 * k, xi2k, order + 3 * k, ring=ring)
    numer = psi(k, f * xi2k, order + 2 * k, ring=ring)
    return series_mul(series_inverse(denom), numer)


def pi_k(q: PDSeries, k: int):
    """Coefficient of y^k (the canonical projection on valuation >= k input)."""
    if q.valuation < k:
        raise ValuationTooLow(f"valuation {q.valuation} below projection index {k}")
    return q.coeff(k)


def psi_inverse(q: PDSeries, order: int | None = None) -> WeightedFamily:
    """Peel q into its weighted family: repeatedly strip psi_m of the
    leading coefficient.  Negative peeling indices must be even."""
    bound = q.order if q.order is not None else order
    if bound is not None and order is not None:
        bound = min(bound, order)
    current = q
    comps: dict[int, object] = {}
    while not current.is_zero():
        m = current.valuation
        if bound is not None and m >= bound:
            break
        if m < 0 and m % 2 != 0:
            raise NegativeOddWeight(f"cannot peel at negative odd exponent {m}")
        f = current.coeff(m)
        comps[m] = f
        if m > 0 and bound is None:
            raise OrderUnresolvable("peeling positive weights from an exact series needs an order")
        current = current - psi(m, f, bound, ring=q.ring)
    return WeightedFamily(q.ring, comps, start=0 if not comps else None)


def psi_assemble(F: WeightedFamily, order: int | None = None) -> PDSeries:
    """The transfer map: sum_m psi_m(f_m), truncated at `order`."""
    needs_order = any(m > 0 for m in F.components)
    if needs_order and order is None:
        raise OrderUnresolvable("assembling positive weights needs an order")
    acc = PDSeries.zero(F.ring, order)
    for m, f in F.items():
        if order is not None and m >= order:
            continue
        acc = acc + psi(m, f, order, ring=F.ring)
    return acc


# -- explicit even/odd coefficient conversions --


def _even_fwd_coeff(m: int, r: int) -> Fraction:
    return (
        Fraction(factorial(m - 1) * factorial(2 * m - 2 * r - 1))
        / (factorial(m - r - 1) * factorial(2 * m - r - 1))
    ) * gbinom(-m + r - 1, r)


def _even_bwd_coeff(n: int, r: int) -> Fraction:
    return (
        Fraction(factorial(n - 1), factorial(2 * n - 2))
        * Fraction(factorial(2 * n - 2 - r), factorial(n - 1 - r))
        * gbinom(n, r)
    )


def _odd_fwd_coeff(m: int, r: int) -> Fraction:
    return (
        Fraction(factorial(2 * m + 1) * factorial(2 * m), factorial(m) ** 2)
        * Fraction((-1) ** r * factorial(m - r) ** 2)
        / (16**r * factorial(r) * factorial(2 * m - 2 * r + 1) * factorial(2 * m - r))
    )


def _odd_bwd_coeff(n: int, r: int) -> Fraction:
    # (2n)!(2n+1)!/((2n-1)! n!^2) * (2n-1-r)!(n-r)!^2/(16^r (2n-2r)! r! (2n-2r+1)!)
    # with the factorial ratio (2n-1-r)!/(2n-1)! kept as a product of ratios so
    # the n = 0 boundary stays finite.
    acc = Fraction(factorial(2 * n) * factorial(2 * n + 1), factorial(n) ** 2)
    acc *= Fraction(factorial(n - r) ** 2)
    acc /= 16**r * factorial(2 * n - 2 * r) * factorial(r) * factorial(2 * n - 2 * r + 1)
    for j in range(r):
        acc /= 2 * n - 1 - j
    return acc


def closed_pairs(direction: str, family: WeightedFamily) -> WeightedFamily:
    """Convert between a weighted family and operator coefficients in closed form.

    even_fwd : {2n: f_2n, n>=1}      -> {m: h_m}     (x-exponent coefficients)
    even_bwd : {m: h_m, m>=1}        -> {2n: f_2n}
    odd_fwd  : {2n+1: f_{2n+1}}      -> {2m+1: h_{2m+1}} (y-exponent coefficients)
    odd_bwd  : {2m+1: h_{2m+1}}      -> {2n+1: f_{2n+1}}
    """
    ring = family.ring
    keys = sorted(family.components)
    out: dict[int, object] = {}
    if direction in ("even_fwd", "even_bwd"):
        if any(m % 2 != 0 or m <= 0 for m in keys) and direction == "even_fwd":
            raise ParityMismatch("even_fwd expects positive even weights")
        if direction == "even_bwd" and any(m <= 0 for m in keys):
            raise ParityMismatch("even_bwd expects positive operator exponents")
        if direction == "even_fwd":
            top = max((m // 2 for m in keys), default=0)
            for m in range(1, top + 1):
                acc = ring.zero()
                for r in range(m):
                    f = family.component(2 * m - 2 * r)
                    if ring.is_zero(f):
                        continue
                    acc = acc + _even_fwd_coeff(m, r) * _deriv_n(ring, f, r)
                out[m] = acc
        else:
            top = max(keys, default=0)
            for n in range(1, top + 1):
                acc = ring.zero()
                for r in range(n):
                    h = family.component(n - r)
                    if ring.is_zero(h):
                        continue
                    acc = acc + _even_bwd_coeff(n, r) * _deriv_n(ring, h, r)
                out[2 * n] = acc
        return WeightedFamily(ring, out)
    if direction in ("odd_fwd", "odd_bwd"):
        if any(m % 2 == 0 or m < 1 for m in keys):
            raise ParityMismatch(f"{direction} expects positive odd indices")
        top = max(((m - 1) // 2 for m in keys), default=-1)
        if direction == "odd_fwd":
            for m in range(top + 1):
                acc = ring.zero()
                for r in range(m + 1):
                    f = family.component(2 * m - 2 * r + 1)
                    if ring.is_zero(f):
                        continue
                    acc = acc + _odd_fwd_coeff(m, r) * _deriv_n(ring, f, r)
                out[2 * m + 1] = acc
        else:
            for n in range(top + 1):
                acc = ring.zero()
                for r in range(n + 1):
                    h = family.component(2 * n - 2 * r + 1)
                    if ring.is_zero(h):
                        continue
                    acc = acc + _odd_bwd_coeff(n, r) * _deriv_n(ring, h, r)
                out[2 * n + 1] = acc
        return WeightedFamily(ring, out)
    raise ValueError(f"unknown direction {direction!r}")


def _deriv_n(ring, f, n: int):
    for _ in range(n):
        f = ring.deriv(f)
    return f


def equivariance_residual(
    m: int, f: RatFunc, g: GMatrix, order: int, c: Fraction | int | None = None
) -> PDSeries:
    """psi_m(f|_m g) - (psi_m(f)).g, which the defining property makes zero.

    With `c` given (m = -2k only), tests the one-parameter deformation
    f -> psi_{-2k}(f) + c psi_{2k+2}(f^{(2k+1)}) instead.
    """

    def lift_map(h: RatFunc) -> PDSeries:
        base = psi(m, h, order)
        if c is None:
            return base
        if not (m < 0 and m % 2 == 0):
            raise ValueError("the deformed lift exists at negative even weight only")
        extra = psi(2 - m, h.deriv_n(1 - m), order)
        return base + extra.scale_left(Fraction(c))

    lifted = lift_map(slash(f, m, g))
    acted = act_series(lift_map(f), g, order)
    return lifted - acted


# -- nonexistence at negative odd weight --


@dataclass
class NegOddReport:
    k: int
    order: int
    nullity: int
    forced_zero_prefix: bool
    matches_shifted_lift: bool
    generators: Sequence[GMatrix] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.nullity == 1 and self.forced_zero_prefix and self.matches_shifted_lift

    def __bool__(self) -> bool:
        return self.ok


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact nullspace basis via Gauss-Jordan over Fraction."""
    mat = [row[:] for row in rows if any(row)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def negodd_nonexistence(
    k: int, order: int, gens: Sequence[GMatrix] | None = None
) -> NegOddReport:
    """Certify that no lifting map with unit leading term exists at weight -2k+1.

    Builds the linear constraints that equivariance against the generators
    imposes on candidate coefficients alpha(0..order), computes the exact
    nullspace, and checks: a one-dimensional solution space, alpha(r) = 0
    forced for all r < 2k, and the normalized solution equal to the
    weight-(2k+1) lift composed with the 2k-th derivative.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if gens is None:
        gens = [GMatrix(1, 1, 0, 1), GMatrix(1, 0, 1, 1)]
    m = -2 * k + 1
    ncols = order + 1
    rows: list[list[Fraction]] = []
    for g in gens:
        if g.c == 0:
            continue  # the unipotent generator imposes no constraints
        for u in range(order + 1):
            for r in range(u + 1):
                a = (
                    Fraction(factorial(u), factorial(r))
                    * gbinom(u + m - 1, u - r)
                    * (-1) ** (u - r)
                )
                b = omega(m + 2 * r, u - r)
                if a == 0 and b == 0:
                    continue
                row = [Fraction(0)] * ncols
                row[u] += a
                row[r] -= b
                rows.append(row)
    basis = _nullspace(rows, ncols)
    nullity = len(basis)
    forced = all(vec[r] == 0 for vec in basis for r in range(min(2 * k, ncols)))
    matches = False
    if nullity == 1 and forced and ncols > 2 * k and basis[0][2 * k] != 0:
        vec = basis[0]
        scale = 1 / vec[2 * k]
        matches = all(
            vec[n] * scale == lift_coeff(2 * k + 1, n - 2 * k)
            for n in range(2 * k, ncols)
        )
    return NegOddReport(k, order, nullity, forced, matches, list(gens))
