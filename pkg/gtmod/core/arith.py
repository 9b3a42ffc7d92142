"""Exact rationals and truncated Laurent series in eps ("jets")."""
from __future__ import annotations

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterator, Union

from .errors import (
    InputError,
    InsufficientTruncationError,
    JetZeroDivisionError,
    PoleOrderError,
)

log = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]

DEFAULT_TRUNC_ORDER = 2
DEFAULT_POLE_FLOOR = -4

_pole_floor: ContextVar[int] = ContextVar("gtmod_pole_floor", default=DEFAULT_POLE_FLOOR)
_trunc_order: ContextVar[int] = ContextVar("gtmod_trunc_order", default=DEFAULT_TRUNC_ORDER)


@contextmanager
def pole_floor(value: int) -> Iterator[int]:
    """Temporarily change the lowest eps exponent a jet result may need."""
    token = _pole_floor.set(int(value))
    try:
        yield value
    finally:
        _pole_floor.reset(token)


@contextmanager
def truncation(order: int) -> Iterator[int]:
    if order < 1:
        raise InputError(f"truncation order must be >= 1, got {order}")
    token = _trunc_order.set(int(order))
    try:
        yield order
    finally:
        _trunc_order.reset(token)


def current_pole_floor() -> int:
    return _pole_floor.get()


def current_trunc_order() -> int:
    return _trunc_order.get()


# ---------- Rationals ----------

def as_rational(value: object) -> Fraction:
    # floats are refused
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or "." in text or "e" in text.lower():
            raise InputError(f"not a rational literal: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"not a rational literal: {value!r}") from e
    raise InputError(f"not a rational: {value!r} (floating point is not accepted)")


def format_rational(value: Scalar) -> str:
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------- Jets ----------

# coefficients of eps**min_exp .. eps**trunc_order are exact; higher orders are unknown
@dataclass(frozen=True)
class Jet:
    min_exp: int
    coeffs: tuple[Fraction, ...]
    trunc_order: int

    def __post_init__(self) -> None:
        lo, hi = int(self.min_exp), int(self.trunc_order)
        width = max(0, hi - lo + 1)
        cs = [Fraction(c) for c in self.coeffs[:width]]
        cs += [Fraction(0)] * (width - len(cs))
        while cs and cs[0] == 0:
            cs.pop(0)
            lo += 1
        if not cs:
            lo = hi + 1
        object.__setattr__(self, "min_exp", lo)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc_order", hi)

    # -- constructors --

    @classmethod
    def constant(cls, value: Scalar, trunc_order: int = DEFAULT_TRUNC_ORDER) -> Jet:
        return cls(0, (Fraction(value),), trunc_order)

    @classmethod
    def zero(cls, trunc_order: int = DEFAULT_TRUNC_ORDER) -> Jet:
        return cls(trunc_order + 1, (), trunc_order)

    @classmethod
    def linear(cls, value: Scalar, slope: Scalar, trunc_order: int = DEFAULT_TRUNC_ORDER) -> Jet:
        """value + slope*eps."""
        return cls(0, (Fraction(value), Fraction(slope)), trunc_order)

    # -- queries --

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _raw(self, k: int) -> Fraction:
        if k < self.min_exp:
            return Fraction(0)
        return self.coeffs[k - self.min_exp]

    def terms(self) -> dict[int, Fraction]:
        return {self.min_exp + n: c for n, c in enumerate(self.coeffs) if c != 0}

    # -- exact transformations --

    def scaled(self, c: Scalar) -> Jet:
        c = Fraction(c)
        return Jet(self.min_exp, tuple(c * x for x in self.coeffs), self.trunc_order)

    def shifted(self, k: int) -> Jet:
        """Multiply by eps**k (exact)."""
        return _guard(Jet(self.min_exp + k, self.coeffs, self.trunc_order + k))

    def flipped(self) -> Jet:
        """Substitute eps -> -eps."""
        return Jet(
            self.min_exp,
            tuple(c if (self.min_exp + n) % 2 == 0 else -c for n, c in enumerate(self.coeffs)),
            self.trunc_order,
        )

    def truncated(self, trunc_order: int) -> Jet:
        return Jet(self.min_exp, self.coeffs, min(trunc_order, self.trunc_order))

    # -- operators --

    def _lift_scalar(self, other: object) -> Jet | None:
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Jet.constant(other, self.trunc_order)
        return None

    def __neg__(self) -> Jet:
        return self.scaled(-1)

    def __add__(self, other: object) -> Jet:
        o = self._lift_scalar(other)
        return NotImplemented if o is None else _add(self, o)

    __radd__ = __add__

    def __sub__(self, other: object) -> Jet:
        o = self._lift_scalar(other)
        return NotImplemented if o is None else _add(self, -o)

    def __rsub__(self, other: object) -> Jet:
        o = self._lift_scalar(other)
        return NotImplemented if o is None else _add(o, -self)

    def __mul__(self, other: object) -> Jet:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scaled(other)
        if isinstance(other, Jet):
            return _mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Jet:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = Jet.constant(1, self.trunc_order - min(self.min_exp, 0) * exponent)
        for _ in range(exponent):
            out = _mul(out, self)
        return out

    def __truediv__(self, other: object) -> Jet:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise JetZeroDivisionError("division of a jet by the scalar 0")
            return self.scaled(Fraction(1) / Fraction(other))
        if isinstance(other, Jet):
            return _div(self, other)
        return NotImplemented

    def __rtruediv__(self, other: object) -> Jet:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            # a scalar numerator is exact to every order
            return _div(Jet.constant(other, self.trunc_order - self.min_exp), self)
        return NotImplemented

    def __str__(self) -> str:
        parts = []
        for e, c in sorted(self.terms().items()):
            c_txt = format_rational(c)
            if e == 0:
                parts.append(c_txt)
            else:
                mono = "eps" if e == 1 else f"eps^{e}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c_txt}*{mono}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(eps^{self.trunc_order + 1})"


def _guard(j: Jet) -> Jet:
    floor = _pole_floor.get()
    if not j.is_zero and j.min_exp < floor:
        raise PoleOrderError(
            f"jet needs eps^{j.min_exp}, below the pole floor eps^{floor}: {j}"
        )
    return j


def _add(a: Jet, b: Jet) -> Jet:
    hi = min(a.trunc_order, b.trunc_order)
    lo = min(a.min_exp, b.min_exp, hi + 1)
    return _guard(Jet(lo, tuple(a._raw(e) + b._raw(e) for e in range(lo, hi + 1)), hi))


def _mul(a: Jet, b: Jet) -> Jet:
    hi = min(a.trunc_order + b.min_exp, b.trunc_order + a.min_exp)
    lo = a.min_exp + b.min_exp
    if a.is_zero or b.is_zero or hi < lo:
        return Jet.zero(hi)
    out = []
    for e in range(lo, hi + 1):
        acc = Fraction(0)
        for i in range(a.min_exp, min(a.trunc_order, e - b.min_exp) + 1):
            acc += a.coeffs[i - a.min_exp] * b._raw(e - i)
        out.append(acc)
    return _guard(Jet(lo, tuple(out), hi))


def _div(a: Jet, b: Jet) -> Jet:
    if b.is_zero:
        raise JetZeroDivisionError(f"division by the zero jet {b}")
    floor = _pole_floor.get()
    base = a.min_exp - b.min_exp
    rel_b = b.trunc_order - b.min_exp
    if a.is_zero:
        return Jet.zero(a.trunc_order - b.min_exp)
    if base < floor:
        raise PoleOrderError(f"quotient needs eps^{base}, below the pole floor eps^{floor}")
    rel = min(a.trunc_order - a.min_exp, rel_b)
    b0 = b.coeffs[0]
    out: list[Fraction] = []
    for m in range(rel + 1):
        acc = a.coeffs[m] if m < len(a.coeffs) else Fraction(0)
        for r in range(1, m + 1):
            if r < len(b.coeffs):
                acc -= b.coeffs[r] * out[m - r]
        out.append(acc / b0)
    return _guard(Jet(base, tuple(out), base + rel))


_OPS = {"add": _add, "sub": lambda a, b: _add(a, -b), "mul": _mul, "div": _div}


def jet_arith(op: str, a: Jet, b: Jet) -> Jet:
    try:
        fn = _OPS[op]
    except KeyError:
        raise InputError(f"unknown jet operation {op!r}") from None
    return fn(a, b)


def jet_coeff(a: Jet, k: int) -> Fraction:
    """Exact coefficient of eps**k."""
    if k > a.trunc_order:
        raise InsufficientTruncationError(
            f"eps^{k} requested but the jet is only known through eps^{a.trunc_order}"
        )
    return a._raw(k)


def jet_is_regular(a: Jet) -> bool:
    return a.is_zero or a.min_exp >= 0
