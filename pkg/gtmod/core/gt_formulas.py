"""Gelfand-Tsetlin coefficient functions at lambda^z = v + z, as jets.

With a singular pair the pair entries move along x = v+z+eps/2, y = v+z-eps/2,
so the eps^1 coefficient of a function is its D-derivative.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Callable, Literal, Union

from .arith import DEFAULT_TRUNC_ORDER, Jet, jet_coeff, jet_is_regular
from .errors import InputError, IrregularCoefficientError, PoleWithoutPathError
from .mutations import Mutation, is_active
from .tableaux import (
    Position,
    ShiftVector,
    SingularPair,
    Tableau,
    apply_shift,
    check_position,
    positions,
)

log = logging.getLogger(__name__)

Sign = Literal["+", "-"]
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class EvalContext:
    base: Tableau
    shift: ShiftVector
    pair: SingularPair | None = None
    trunc_order: int = DEFAULT_TRUNC_ORDER
    # evaluate tau.f instead of f: every entry reads the value at tau(position)
    swapped: bool = False

    def __post_init__(self) -> None:
        if self.base.n != self.shift.n:
            raise InputError(f"context size mismatch: base n={self.base.n}, shift n={self.shift.n}")
        if self.pair is not None:
            self.pair.validate_for(self.base.n)
            if self.base[self.pair.first] != self.base[self.pair.second]:
                raise InputError(
                    f"a path needs a 1-critical base point: v{self.pair.first} != v{self.pair.second}"
                )
        elif self.swapped:
            raise InputError("a swapped context needs a singular pair")
        if self.trunc_order < 0:
            raise InputError("truncation order must be non-negative")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def has_path(self) -> bool:
        return self.pair is not None

    @cached_property
    def assignment(self) -> dict[Position, Jet]:
        point = apply_shift(self.base, self.shift)
        out: dict[Position, Jet] = {}
        for p in positions(self.n):
            slope = Fraction(0)
            if self.pair is not None and p == self.pair.first:
                slope = _HALF
            elif self.pair is not None and p == self.pair.second:
                slope = -_HALF
            out[p] = Jet.linear(point[p], slope, self.trunc_order)
        if self.swapped:
            out = {p: out[self.pair.tau(p)] for p in out}
        return out

    def entry(self, k: int, i: int) -> Jet:
        return self.assignment[check_position(k, i, self.n)]

    def transposed(self) -> EvalContext:
        return replace(self, swapped=not self.swapped)


Evaluable = Union[Jet, Callable[[EvalContext], Jet]]


def _check_sign(sign: str) -> Sign:
    if sign not in ("+", "-"):
        raise InputError(f"sign must be '+' or '-', got {sign!r}")
    return sign  # type: ignore[return-value]


def _product(factors: list[Jet], trunc_order: int) -> Jet:
    out = Jet.constant(1, trunc_order)
    for f in factors:
        out = out * f
    return out


def eval_p(ctx: EvalContext, sign: Sign, k: int, i: int) -> Jet:
    """p^{+-}_{k,i}(lambda^z) = prod_j (lambda_{k,i} - lambda_{k+-1,j})."""
    sign = _check_sign(sign)
    check_position(k, i, ctx.n)
    if sign == "+":
        if k >= ctx.n:
            raise InputError(f"p+_{{{k},{i}}} needs k <= n-1")
        other = k + 1
        stop = k + 1
    else:
        other = k - 1
        stop = k - 1
        if stop >= 1 and is_active(Mutation.P_MINUS_FACTOR):
            stop -= 1
    x = ctx.entry(k, i)
    return _product([x - ctx.entry(other, j) for j in range(1, stop + 1)], ctx.trunc_order)


def eval_q(ctx: EvalContext, k: int, i: int) -> Jet:
    """q_{k,i}(lambda^z) = prod_{j != i} (lambda_{k,i} - lambda_{k,j})."""
    check_position(k, i, ctx.n)
    x = ctx.entry(k, i)
    out = _product([x - ctx.entry(k, j) for j in range(1, k + 1) if j != i], ctx.trunc_order)
    if out.is_zero and not ctx.has_path:
        raise PoleWithoutPathError(
            f"q_{{{k},{i}}} vanishes at {apply_shift(ctx.base, ctx.shift)}; attach a path"
        )
    return out


def eval_qstar(ctx: EvalContext, k: int, r: int) -> Jet:
    """q_{k,r} with the oriented factor (lambda_{k,r} - lambda_{k,r'}) of the pair removed."""
    pair = ctx.pair
    if pair is None:
        raise InputError("q* is only defined with a singular pair")
    if k != pair.k or r not in (pair.i, pair.j):
        raise InputError(f"q*_{{{k},{r}}} is only defined on the pair {pair.as_tuple()}")
    partner = pair.j if r == pair.i else pair.i
    x = ctx.entry(k, r)
    return _product(
        [x - ctx.entry(k, s) for s in range(1, k + 1) if s not in (r, partner)],
        ctx.trunc_order,
    )


def eval_rowsum(ctx: EvalContext, k: int) -> Jet:
    if not (0 <= k <= ctx.n):
        raise InputError(f"row index {k} out of range 0..{ctx.n}")
    out = Jet.constant(0, ctx.trunc_order)
    for i in range(1, k + 1):
        out = out + ctx.entry(k, i)
    return out


def eval_weight(ctx: EvalContext, t: int) -> Jet:
    """E_{t,t} eigenvalue |lambda^z|_t - |lambda^z|_{t-1} + t - 1."""
    if not (1 <= t <= ctx.n):
        raise InputError(f"weight index {t} out of range 1..{ctx.n}")
    return eval_rowsum(ctx, t) - eval_rowsum(ctx, t - 1) + (t - 1)


def _poly_mul(a: list[Jet], b: list[Jet], trunc_order: int) -> list[Jet]:
    out = [Jet.constant(0, trunc_order) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def eval_gamma(ctx: EvalContext, m: int, t: int) -> Jet:
    """gamma_{m,t}(lambda^z) = sum_i (l_{m,i}+m-1)^t prod_{j != i} (1 - 1/(l_{m,i} - l_{m,j})).

    Evaluated without division: with G(u) = (u+m-1)^t prod_j (u - l_{m,j} - 1),
    gamma = -sum_d [u^d]G * h_{d-m+1}(l_{m,1}, ..., l_{m,m}), h the complete
    homogeneous symmetric polynomials.  Equal entries in row m are fine.
    """
    if not (1 <= t <= m <= ctx.n):
        raise InputError(f"gamma_{{{m},{t}}} needs 1 <= t <= m <= n")
    trunc = ctx.trunc_order
    offset = 0 if is_active(Mutation.GAMMA_SHIFT) else m - 1
    row = [ctx.entry(m, i) for i in range(1, m + 1)]
    one = Jet.constant(1, trunc)

    g = [one]
    for _ in range(t):
        g = _poly_mul(g, [Jet.constant(offset, trunc), one], trunc)
    for x in row:
        g = _poly_mul(g, [-x - 1, one], trunc)

    # h[k] = h_k(row), k = 0..t+1
    h = [one] + [Jet.constant(0, trunc)] * (t + 1)
    for x in row:
        for k in range(1, t + 2):
            h[k] = h[k] + x * h[k - 1]

    total = Jet.constant(0, trunc)
    for d in range(m - 1, len(g)):
        total = total + g[d] * h[d - m + 1]
    return -total


def _as_jet(ctx: EvalContext, expr: Evaluable) -> Jet:
    return expr if isinstance(expr, Jet) else expr(ctx)


def d_of(ctx: EvalContext, expr: Evaluable) -> Fraction:
    """D(expr)(v + z): the eps^1 coefficient along the critical path."""
    j = _as_jet(ctx, expr)
    if not jet_is_regular(j):
        raise IrregularCoefficientError(f"D of an irregular expression: {j}", j)
    return jet_coeff(j, 1)


def value_of(ctx: EvalContext, expr: Evaluable) -> Fraction:
    j = _as_jet(ctx, expr)
    if not jet_is_regular(j):
        raise IrregularCoefficientError(f"value of an irregular expression: {j}", j)
    return jet_coeff(j, 0)
