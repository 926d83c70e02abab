"""
Exact rational-coefficient algebra for the semicircle decomposition.

Every area in the construction is a rational combination of nine basis
terms in the independent symbols a, b, c and u = theta/360 deg:

    PA = pi a^2    PB = pi b^2    PC = pi c^2
    UPA = pi a^2 u UPB = pi b^2 u UPC = pi c^2 u
    AB = ab        A3B = a^3 b / c^2    AB3 = a b^3 / c^2

Theta enters only through the three U* terms, so its cancellation in the
decomposition is a zero-coefficient statement rather than a float check.
The relation c = |AB| is applied only when an expression is evaluated.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import mpmath as mp
import sympy

from errors import DomainError
from region_model import WORK_DPS, RegionId

logger = logging.getLogger(__name__)

BISECTION_ITERATIONS = 200

Rational = Union[Fraction, int]


class BasisTerm(str, Enum):
    PA = "PA"
    PB = "PB"
    PC = "PC"
    UPA = "UPA"
    UPB = "UPB"
    UPC = "UPC"
    AB = "AB"
    A3B = "A3B"
    AB3 = "AB3"


# column order used by every printed table
BASIS_ORDER: Tuple[BasisTerm, ...] = tuple(BasisTerm)
THETA_TERMS = (BasisTerm.UPA, BasisTerm.UPB, BasisTerm.UPC)


@dataclass(frozen=True)
class SymbolicArea:
    """
    Exact rational combination of basis terms.

    Zero coefficients are never stored, so equality is coefficient-wise.
    """

    items: Tuple[Tuple[BasisTerm, Fraction], ...] = ()

    @classmethod
    def of(cls, coeffs: Mapping[BasisTerm, Rational]) -> "SymbolicArea":
        cleaned = {}
        for term, value in coeffs.items():
            value = Fraction(value)
            if value != 0:
                cleaned[BasisTerm(term)] = value
        return cls(tuple((term, cleaned[term]) for term in BASIS_ORDER if term in cleaned))

    @property
    def coeffs(self) -> Dict[BasisTerm, Fraction]:
        return dict(self.items)

    def coefficient(self, term: BasisTerm) -> Fraction:
        return self.coeffs.get(BasisTerm(term), Fraction(0))

    def __add__(self, other: "SymbolicArea") -> "SymbolicArea":
        total = self.coeffs
        for term, value in other.items:
            total[term] = total.get(term, Fraction(0)) + value
        return SymbolicArea.of(total)

    def __neg__(self) -> "SymbolicArea":
        return SymbolicArea.of({term: -value for term, value in self.items})

    def __sub__(self, other: "SymbolicArea") -> "SymbolicArea":
        return self + (-other)

    def scale(self, factor: Rational) -> "SymbolicArea":
        factor = Fraction(factor)
        return SymbolicArea.of({term: value * factor for term, value in self.items})

    def is_zero(self) -> bool:
        return not self.items

    def is_theta_free(self) -> bool:
        return all(self.coefficient(term) == 0 for term in THETA_TERMS)

    def format_row(self) -> List[str]:
        """Coefficients as strings in BASIS_ORDER; '0' for absent terms."""
        return [str(self.coefficient(term)) for term in BASIS_ORDER]

    def __str__(self) -> str:
        if not self.items:
            return "0"
        return " + ".join(f"({value})*{term.value}" for term, value in self.items)


ZERO = SymbolicArea()

_T = BasisTerm
_F = Fraction

_REGION_COEFFS: Dict[RegionId, Dict[BasisTerm, Fraction]] = {
    RegionId.RA: {_T.PC: _F(1, 8), _T.UPC: _F(-1, 2), _T.AB: _F(-1, 4)},
    RegionId.RB: {_T.UPC: _F(1, 2), _T.AB: _F(-1, 4)},
    RegionId.RC: {_T.PB: _F(1, 8), _T.UPB: _F(-1, 2), _T.AB3: _F(-1, 4)},
    RegionId.RD: {_T.UPB: _F(1, 2), _T.AB3: _F(-1, 4)},
    RegionId.RE: {_T.PA: _F(1, 8), _T.UPA: _F(-1, 2), _T.A3B: _F(-1, 4)},
    RegionId.RF: {_T.UPA: _F(1, 2), _T.A3B: _F(-1, 4)},
    RegionId.SA: {_T.PA: _F(1, 8)},
    RegionId.SB: {_T.PB: _F(1, 8)},
    RegionId.SC: {_T.PC: _F(1, 8)},
    RegionId.TRI_ABC: {_T.AB: _F(1, 2)},
    RegionId.TRI_AGC: {_T.AB3: _F(1, 2)},
    RegionId.TRI_CGB: {_T.A3B: _F(1, 2)},
}


def region_symbolic(region: RegionId) -> SymbolicArea:
    """
    Exact expansion of a region's closed form over the basis.

    For example RA = (pi c^2/4)(180 - 2 theta)/360 - ab/4
    = PC/8 - UPC/2 - AB/4.
    """
    return SymbolicArea.of(_REGION_COEFFS[RegionId(region)])


def decomposition_ledger() -> SymbolicArea:
    """SA + SB + RA + RB - RC - RD - RE - RF by exact coefficient addition."""
    R = RegionId
    added = [R.SA, R.SB, R.RA, R.RB]
    subtracted = [R.RC, R.RD, R.RE, R.RF]
    total = ZERO
    for region in added:
        total = total + region_symbolic(region)
    for region in subtracted:
        total = total - region_symbolic(region)
    return total


def boxed_result() -> SymbolicArea:
    """pi c^2/8 - ab/2 + ab(a^2 + b^2)/(2c^2), expanded over the basis."""
    return SymbolicArea.of({_T.PC: _F(1, 8), _T.AB: _F(-1, 2), _T.A3B: _F(1, 2), _T.AB3: _F(1, 2)})


def circle_pair_sums() -> Dict[str, SymbolicArea]:
    """Segment pairs sharing a circle; each one is already free of theta."""
    R = RegionId
    return {
        "D": region_symbolic(R.RA) + region_symbolic(R.RB),
        "E": region_symbolic(R.RC) + region_symbolic(R.RD),
        "F": region_symbolic(R.RE) + region_symbolic(R.RF),
    }


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")


def evaluate(expr: SymbolicArea, a: float, b: float, c: float, theta_deg: float) -> float:
    """
    Substitute numbers for the basis terms and sum.

    Args:
        expr: Symbolic area
        a, b, c: Positive lengths (c is not forced to equal |AB|)
        theta_deg: Angle in degrees, 0 < theta_deg < 90

    Returns:
        float: Value computed at WORK_DPS digits, rounded once
    """
    _check_positive(a=a, b=b, c=c)
    if not (isinstance(theta_deg, (int, float)) and 0.0 < theta_deg < 90.0):
        raise DomainError(f"theta_deg must lie in (0, 90), got {theta_deg!r}")

    with mp.workdps(WORK_DPS):
        a, b, c = mp.mpf(a), mp.mpf(b), mp.mpf(c)
        u = mp.mpf(theta_deg) / 360
        c2 = c * c
        values = {
            _T.PA: mp.pi * a * a,
            _T.PB: mp.pi * b * b,
            _T.PC: mp.pi * c2,
            _T.UPA: mp.pi * a * a * u,
            _T.UPB: mp.pi * b * b * u,
            _T.UPC: mp.pi * c2 * u,
            _T.AB: a * b,
            _T.A3B: a ** 3 * b / c2,
            _T.AB3: a * b ** 3 / c2,
        }
        total = mp.mpf(0)
        for term, coeff in expr.items:
            total += mp.mpf(coeff.numerator) / coeff.denominator * values[term]
        return float(total)


def theta_sweep(expr: SymbolicArea, a: float, b: float, c: float,
                thetas: Iterable[float]) -> List[float]:
    """Evaluate at several angles; constant when expr is theta-free."""
    return [evaluate(expr, a, b, c, theta) for theta in thetas]


def pythagoras_residual(a: float, b: float, c: float) -> float:
    """
    Decomposition total minus the direct semicircle area pi c^2/8.

    Equals (ab/2)((a^2 + b^2)/c^2 - 1), which vanishes exactly when
    a^2 + b^2 = c^2. The angle is irrelevant here because the difference
    has no theta terms; 45 deg is passed only to satisfy evaluate.
    """
    _check_positive(a=a, b=b, c=c)
    difference = decomposition_ledger() - region_symbolic(RegionId.SC)
    return evaluate(difference, a, b, c, 45.0)


def hypotenuse_root(a: float, b: float, iterations: int = BISECTION_ITERATIONS) -> float:
    """
    Root c* of pythagoras_residual(a, b, c) by bisection on [max(a, b), a + b].

    The residual is strictly decreasing in c, positive at max(a, b) and
    negative at a + b.
    """
    _check_positive(a=a, b=b)
    lo, hi = max(a, b), a + b
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if pythagoras_residual(a, b, mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def residual_polynomial_identity() -> bool:
    """
    Check a^3 b + a b^3 - a b c^2 = ab (a^2 + b^2 - c^2) over the integers.
    """
    a, b, c = sympy.symbols("a b c")
    lhs = sympy.Poly(a ** 3 * b + a * b ** 3 - a * b * c ** 2, a, b, c, domain="ZZ")
    rhs = sympy.Poly(a * b * (a ** 2 + b ** 2 - c ** 2), a, b, c, domain="ZZ")
    return (lhs - rhs).is_zero


def coefficient_table() -> List[Tuple[str, SymbolicArea]]:
    """Rows of the ledger table: every region followed by the decomposition."""
    rows = [(region.value, region_symbolic(region)) for region in RegionId]
    rows.append(("LEDGER", decomposition_ledger()))
    return rows


if __name__ == "__main__":
    ledger = decomposition_ledger()
    print("ledger:", ledger)
    print("theta free:", ledger.is_theta_free(), "| boxed:", ledger == boxed_result())
    print("residual(3, 4, 5) =", pythagoras_residual(3, 4, 5))
    print("root for (3, 4):", hypotenuse_root(3, 4))
