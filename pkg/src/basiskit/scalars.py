"""Scalar backends: exact rationals and tolerance-based floats.

Every numeric container in the package carries a :class:`Backend`.  The
exact backend computes with :class:`fractions.Fraction` and compares with
``==``; the approximate backend computes with ``float`` and compares within
a tolerance.  A single computation never mixes the two; binary operations
check for agreement and raise :class:`~basiskit.errors.BackendMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BackendMismatch, ParseError

__all__ = [
    "Scalar",
    "Backend",
    "EXACT",
    "APPROX",
    "approx",
    "scalar_to_json",
    "scalar_from_json",
]

Scalar = Union[Fraction, float]

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Backend:
    """Arithmetic regime: ``"exact"`` rationals or ``"approx"`` floats."""

    kind: str
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "approx"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "exact" and self.tolerance != 0.0:
            raise ValueError("exact backend takes no tolerance")
        if self.kind == "approx" and self.tolerance <= 0.0:
            raise ValueError("approximate backend needs a positive tolerance")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def coerce(self, value) -> Scalar:
        """Convert a number to this backend's scalar type.

        Exact accepts ints, Fractions and integral floats; a non-integral
        float would silently lose meaning, so it is rejected.
        """
        if self.is_exact:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, float):
                if value != int(value):
                    raise BackendMismatch(
                        f"non-integral float {value!r} cannot enter an exact computation"
                    )
                return Fraction(int(value))
            raise BackendMismatch(f"cannot coerce {value!r} to an exact scalar")
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise BackendMismatch(f"cannot coerce {value!r} to a float scalar")

    def zero(self) -> Scalar:
        return Fraction(0) if self.is_exact else 0.0

    def one(self) -> Scalar:
        return Fraction(1) if self.is_exact else 1.0

    def eq(self, x: Scalar, y: Scalar) -> bool:
        if self.is_exact:
            return x == y
        return abs(x - y) <= self.tolerance

    def is_zero(self, x: Scalar) -> bool:
        return self.eq(x, self.zero())

    def require_same(self, other: "Backend") -> None:
        if self != other:
            raise BackendMismatch(f"backends differ: {self} vs {other}")


EXACT = Backend("exact")


def approx(tolerance: float = DEFAULT_TOLERANCE) -> Backend:
    """Float backend with the given comparison tolerance."""
    return Backend("approx", tolerance)


APPROX = approx()


def scalar_to_json(x: Scalar, backend: Backend):
    """Render a scalar for a descriptor.

    Exact values emit as plain integers when whole and as ``"num/den"``
    strings otherwise; approx values emit as JSON numbers.
    """
    if backend.is_exact:
        f = backend.coerce(x)
        if f.denominator == 1:
            return int(f)
        return f"{f.numerator}/{f.denominator}"
    return float(x)


def scalar_from_json(value, backend: Backend) -> Scalar:
    """Parse a descriptor scalar.

    Exact accepts ``"num/den"`` strings and integers; approx accepts any
    JSON number and also fraction strings (evaluated to float).
    """
    if isinstance(value, str):
        try:
            f = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {value!r}: {exc}") from None
        return f if backend.is_exact else float(f)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"bad scalar literal {value!r}")
    try:
        return backend.coerce(value)
    except BackendMismatch as exc:
        raise ParseError(str(exc)) from None
