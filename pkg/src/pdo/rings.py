"""Coefficient-ring handles used by the series engine.

A handle bundles a coefficient domain with the distinguished derivations of
the operator rings: the plain derivative ``deriv`` (d/dz on Q(z), the formal
derivative on a graded ring), the series derivation ``d = -deriv`` and its
half ``delta = d/2`` driving the quadratic commutation law.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotAUnit, RingMismatch
from .graded import GradedElem, GradedRingSpec
from .ratfunc import RatFunc

__all__ = ["QzRing", "GradedRing", "QZ"]


class QzRing:
    """Q(z) with d = -d/dz."""

    is_graded = False

    def zero(self) -> RatFunc:
        return RatFunc(())

    def one(self) -> RatFunc:
        return RatFunc.const(1)

    def coerce(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        return RatFunc.const(Fraction(x))

    def is_element(self, x) -> bool:
        return isinstance(x, RatFunc)

    def is_zero(self, f: RatFunc) -> bool:
        return f.is_zero()

    def is_unit(self, f: RatFunc) -> bool:
        return not f.is_zero()

    def inv(self, f: RatFunc) -> RatFunc:
        return f.inverse()

    def deriv(self, f: RatFunc) -> RatFunc:
        return f.deriv()

    def d(self, f: RatFunc) -> RatFunc:
        return -f.deriv()

    def delta(self, f: RatFunc) -> RatFunc:
        return f.deriv() * Fraction(-1, 2)

    def delta_nilpotency(self, f: RatFunc) -> int | None:
        """Least u with delta^u(f) = 0, or None when no power vanishes."""
        if f.is_zero():
            return 0
        if f.is_polynomial():
            return f.poly_degree() + 1
        return None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QzRing)

    def __hash__(self) -> int:
        return hash("QzRing")

    def __repr__(self) -> str:
        return "QzRing()"


QZ = QzRing()


class GradedRing:
    """A free differential graded ring with d = -(formal derivative)."""

    is_graded = True

    def __init__(self, spec: GradedRingSpec):
        self.spec = spec

    def zero(self) -> GradedElem:
        return self.spec.zero()

    def one(self) -> GradedElem:
        return self.spec.one()

    def coerce(self, x) -> GradedElem:
        if isinstance(x, GradedElem):
            if x.spec != self.spec:
                raise RingMismatch("element belongs to a different graded ring")
            return x
        return self.spec.scalar(Fraction(x))

    def is_element(self, x) -> bool:
        return isinstance(x, GradedElem) and x.spec == self.spec

    def is_zero(self, f: GradedElem) -> bool:
        return f.is_zero()

    def is_unit(self, f: GradedElem) -> bool:
        if len(f.terms) != 1:
            return False
        try:
            f.inv_unit()
            return True
        except NotAUnit:
            return False

    def inv(self, f: GradedElem) -> GradedElem:
        return f.inv_unit()

    def deriv(self, f: GradedElem) -> GradedElem:
        return f.deriv()

    def d(self, f: GradedElem) -> GradedElem:
        return -f.deriv()

    def delta(self, f: GradedElem) -> GradedElem:
        return f.deriv() * Fraction(-1, 2)

    def delta_nilpotency(self, f: GradedElem) -> int | None:
        if f.is_zero():
            return 0
        if f.is_scalar():
            return 1
        return None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedRing) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(("GradedRing", self.spec))

    def __repr__(self) -> str:
        return f"GradedRing({self.spec!r})"
