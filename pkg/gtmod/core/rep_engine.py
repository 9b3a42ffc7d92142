"""Module families over gl(n) and the action of U(gl(n)) on them.

The 1-singular action is fold . GT . lift over jets, reduced at eps = 0.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import ClassVar, Iterable, Mapping, NamedTuple, Union

from .arith import Jet, Scalar, as_rational, current_pole_floor, current_trunc_order, jet_coeff, jet_is_regular
from .errors import InputError, IrregularCoefficientError, SpecError
from .gt_formulas import EvalContext, eval_p, eval_q, eval_weight, value_of
from .mutations import Mutation, active_mutation, is_active
from .tableaux import (
    ShiftVector,
    SingularPair,
    Tableau,
    apply_shift,
    classify,
    critical_representative,
    is_standard,
    is_tau_fixed,
    tau_apply,
)

log = logging.getLogger(__name__)


# ---------- Module specs ----------

@dataclass(frozen=True)
class FiniteDim:
    family: ClassVar[str] = "FiniteDim"
    weight: tuple[int, ...]

    def __post_init__(self) -> None:
        w = tuple(as_rational(x) for x in self.weight)
        if len(w) < 2:
            raise SpecError("a dominant weight needs n >= 2 entries")
        if any(x.denominator != 1 for x in w):
            raise SpecError(f"weight {self.weight} is not integral")
        w = tuple(int(x) for x in w)
        if any(a < b for a, b in zip(w, w[1:])):
            raise SpecError(f"weight {w} is not dominant (entries must be non-increasing)")
        object.__setattr__(self, "weight", w)

    @property
    def n(self) -> int:
        return len(self.weight)

    def top_row(self) -> tuple[int, ...]:
        return tuple(lam - i for i, lam in enumerate(self.weight))


@dataclass(frozen=True)
class Generic:
    family: ClassVar[str] = "Generic"
    v: Tableau

    def __post_init__(self) -> None:
        if not classify(self.v).generic:
            raise SpecError(f"tableau {self.v} is not generic")

    @property
    def n(self) -> int:
        return self.v.n


@dataclass(frozen=True)
class OneSingular:
    family: ClassVar[str] = "OneSingular"
    v: Tableau
    pair: SingularPair

    def __post_init__(self) -> None:
        self.pair.validate_for(self.v.n)
        c = classify(self.v)
        if c.singular_pairs != (self.pair.as_tuple(),):
            raise SpecError(
                f"{self.v} must have {self.pair.as_tuple()} as its only singular pair, "
                f"found {list(c.singular_pairs)}"
            )
        if self.v[self.pair.first] != self.v[self.pair.second]:
            raise SpecError(f"{self.v} is 1-singular but not critical; use OneSingular.normalized")

    @property
    def n(self) -> int:
        return self.v.n

    @classmethod
    def normalized(cls, v: Tableau, pair: SingularPair) -> tuple[OneSingular, ShiftVector]:
        """Move a 1-singular v to its critical representative.

        Returns the spec and the offset o with v + z = v' + (z + o), so a
        shift label z for v becomes z + o for the returned spec.
        """
        v_crit, m = critical_representative(v, pair)
        offset = ShiftVector.zero(v.n).with_entries({pair.first: m})
        return cls(v_crit, pair), offset


ModuleSpec = Union[FiniteDim, Generic, OneSingular]


# ---------- Basis tags ----------

@dataclass(frozen=True, order=True)
class Std:
    kind: ClassVar[str] = "Std"
    tableau: Tableau


@dataclass(frozen=True, order=True)
class Gen:
    kind: ClassVar[str] = "Gen"
    shift: ShiftVector


@dataclass(frozen=True, order=True)
class Sym:
    kind: ClassVar[str] = "Sym"
    shift: ShiftVector


@dataclass(frozen=True, order=True)
class Alt:
    kind: ClassVar[str] = "Alt"
    shift: ShiftVector


BasisTag = Union[Std, Gen, Sym, Alt]

_KIND_ORDER = {"Std": 0, "Gen": 1, "Sym": 2, "Alt": 3}


def tag_sort_key(tag: BasisTag) -> tuple:
    payload = tag.tableau if isinstance(tag, Std) else tag.shift
    return (_KIND_ORDER[tag.kind], payload)


def canonical_tag(spec: ModuleSpec, tag: BasisTag) -> tuple[BasisTag, int]:
    """Validate ``tag`` against ``spec``; return the canonical tag and a sign.

    The sign is 0 when the tag is the zero vector (A(z) with z = tau z).
    """
    if isinstance(spec, FiniteDim):
        if not isinstance(tag, Std):
            raise SpecError(f"{tag.kind} tag in a FiniteDim module")
        t = tag.tableau
        if t.n != spec.n or t.top_row != tuple(Fraction(x) for x in spec.top_row()):
            raise SpecError(f"tableau {t} does not have top row {spec.top_row()}")
        if not is_standard(t):
            raise SpecError(f"tableau {t} is not standard")
        return tag, 1
    if isinstance(spec, Generic):
        if not isinstance(tag, Gen):
            raise SpecError(f"{tag.kind} tag in a Generic module")
        if tag.shift.n != spec.n:
            raise SpecError(f"shift of size {tag.shift.n} in a module of size {spec.n}")
        return tag, 1
    if not isinstance(tag, (Sym, Alt)):
        raise SpecError(f"{tag.kind} tag in a OneSingular module")
    z = tag.shift
    if z.n != spec.n:
        raise SpecError(f"shift of size {z.n} in a module of size {spec.n}")
    pair = spec.pair
    if isinstance(tag, Alt) and is_tau_fixed(z, pair):
        return tag, 0
    if z[pair.first] >= z[pair.second]:
        return tag, 1
    flipped = tau_apply(z, pair)
    return (Sym(flipped), 1) if isinstance(tag, Sym) else (Alt(flipped), -1)


# ---------- Vectors ----------

@dataclass(frozen=True)
class ModuleVector:
    spec: ModuleSpec
    terms: tuple[tuple[BasisTag, Fraction], ...] = ()

    @classmethod
    def build(
        cls,
        spec: ModuleSpec,
        terms: Mapping[BasisTag, Scalar] | Iterable[tuple[BasisTag, Scalar]],
    ) -> ModuleVector:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisTag, Fraction] = {}
        for tag, c in items:
            canon, sign = canonical_tag(spec, tag)
            if sign:
                acc[canon] = acc.get(canon, Fraction(0)) + sign * as_rational(c)
        return cls._from_canonical(spec, acc)

    @classmethod
    def _from_canonical(cls, spec: ModuleSpec, acc: Mapping[BasisTag, Fraction]) -> ModuleVector:
        kept = [(t, c) for t, c in acc.items() if c != 0]
        kept.sort(key=lambda tc: tag_sort_key(tc[0]))
        return cls(spec, tuple(kept))

    @classmethod
    def basis(cls, spec: ModuleSpec, tag: BasisTag) -> ModuleVector:
        return cls.build(spec, [(tag, 1)])

    @classmethod
    def zero(cls, spec: ModuleSpec) -> ModuleVector:
        return cls(spec, ())

    def as_dict(self) -> dict[BasisTag, Fraction]:
        return dict(self.terms)

    def coeff(self, tag: BasisTag) -> Fraction:
        canon, sign = canonical_tag(self.spec, tag)
        return sign * self.as_dict().get(canon, Fraction(0))

    @property
    def support(self) -> list[BasisTag]:
        return [t for t, _ in self.terms]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check_same(self, other: ModuleVector) -> None:
        if other.spec != self.spec:
            raise SpecError("vectors live in different modules")

    def __add__(self, other: ModuleVector) -> ModuleVector:
        self._check_same(other)
        acc = self.as_dict()
        for t, c in other.terms:
            acc[t] = acc.get(t, Fraction(0)) + c
        return ModuleVector._from_canonical(self.spec, acc)

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        return self + other.scaled(-1)

    def __neg__(self) -> ModuleVector:
        return self.scaled(-1)

    def scaled(self, c: Scalar) -> ModuleVector:
        c = as_rational(c)
        return ModuleVector._from_canonical(self.spec, {t: c * x for t, x in self.terms})

    def __rmul__(self, c: Scalar) -> ModuleVector:
        return self.scaled(c)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{t.kind}[{tag_sort_key(t)[1]}]" for t, c in self.terms)


# ---------- Operators ----------

@dataclass(frozen=True)
class Generator:
    a: int
    b: int

    def validate_for(self, n: int) -> Generator:
        if not (1 <= self.a <= n and 1 <= self.b <= n):
            raise InputError(f"{self} is not a generator of gl({n})")
        return self

    @property
    def is_chevalley(self) -> bool:
        return abs(self.a - self.b) <= 1

    def __str__(self) -> str:
        return f"E({self.a},{self.b})"


@dataclass(frozen=True)
class Casimir:
    m: int
    t: int

    def validate_for(self, n: int) -> Casimir:
        if not (1 <= self.t <= self.m <= n):
            raise InputError(f"c_({self.m},{self.t}) needs 1 <= t <= m <= {n}")
        return self

    def __str__(self) -> str:
        return f"C({self.m},{self.t})"


Operator = Union[Generator, Casimir]


# ---------- Gelfand-Tsetlin formulas on the T-basis ----------

def gt_image(ctx: EvalContext, g: Generator) -> list[tuple[ShiftVector, Jet]]:
    n, z = ctx.n, ctx.shift
    a, b = g.a, g.b
    if a == b:
        return [(z, eval_weight(ctx, a))]
    if b == a + 1:
        t = a
        sign = 1 if is_active(Mutation.SIGN_E12) else -1
        return [
            (z + ShiftVector.delta(n, t, s), (eval_p(ctx, "+", t, s) / eval_q(ctx, t, s)).scaled(sign))
            for s in range(1, t + 1)
        ]
    if a == b + 1:
        t = b
        return [
            (z - ShiftVector.delta(n, t, s), eval_p(ctx, "-", t, s) / eval_q(ctx, t, s))
            for s in range(1, t + 1)
        ]
    raise InputError(f"{g} is not a Chevalley generator")


# ---------- The 1-singular lift and fold ----------

class LiftTerm(NamedTuple):
    """coeff * eps**eps_power * T(shift)."""

    shift: ShiftVector
    coeff: Fraction
    eps_power: int


_HALF = Fraction(1, 2)


def lift_tag(spec: OneSingular, tag: Sym | Alt) -> list[LiftTerm]:
    """Express S(z) or A(z) in the T-basis (x - y = eps along the path)."""
    z, pair = tag.shift, spec.pair
    tz = tau_apply(z, pair)
    if isinstance(tag, Sym):
        if tz == z:
            return [LiftTerm(z, Fraction(1), 0)]
        return [LiftTerm(z, _HALF, 0), LiftTerm(tz, _HALF, 0)]
    if tz == z:
        return []
    return [LiftTerm(z, _HALF, -1), LiftTerm(tz, -_HALF, -1)]


def fold_image(spec: OneSingular, image: Mapping[ShiftVector, Jet]) -> dict[BasisTag, Jet]:
    """Rewrite sum_w c_w T(w) as sum S/A terms, using T(u) = S(u) + eps*A(u)."""
    pair = spec.pair
    out: dict[BasisTag, Jet] = {}
    seen: set[ShiftVector] = set()
    for w in sorted(image):
        if w in seen:
            continue
        tw = tau_apply(w, pair)
        seen.update((w, tw))
        if tw == w:
            out[Sym(w)] = image[w]
            continue
        u, tu = (w, tw) if w[pair.first] >= w[pair.second] else (tw, w)
        cu, ctu = image.get(u), image.get(tu)
        if cu is None:
            cu = Jet.zero(ctu.trunc_order)
        if ctu is None:
            ctu = Jet.zero(cu.trunc_order)
        alt = (cu - ctu).shifted(1)
        if is_active(Mutation.TAU_ORIENTATION):
            alt = -alt
        out[Sym(u)] = cu + ctu
        out[Alt(u)] = alt
    return out


def singular_coefficient_jets(spec: OneSingular, g: Generator, tag: Sym | Alt) -> dict[BasisTag, Jet]:
    """Unreduced S/A coefficients of g applied to tag; all must be regular jets."""
    trunc = current_trunc_order()
    image: dict[ShiftVector, Jet] = {}
    for term in lift_tag(spec, tag):
        ctx = EvalContext(spec.v, term.shift, spec.pair, trunc)
        for w, c in gt_image(ctx, g):
            contrib = c.scaled(term.coeff).shifted(term.eps_power)
            image[w] = image[w] + contrib if w in image else contrib
    return fold_image(spec, image)


def _reduce(jets: Mapping[BasisTag, Jet], what: str) -> dict[BasisTag, Fraction]:
    out = {}
    for tag, j in jets.items():
        if not jet_is_regular(j):
            raise IrregularCoefficientError(
                f"{what}: coefficient of {tag.kind}{tag_sort_key(tag)[1]} has a pole: {j}", j
            )
        c = jet_coeff(j, 0)
        if c != 0:
            out[tag] = c
    return out


# ---------- Per-tag actions (cached) ----------

def _settings_key() -> tuple:
    return (current_trunc_order(), current_pole_floor(), active_mutation())


def _chevalley_on_tag(spec: ModuleSpec, g: Generator, tag: BasisTag) -> dict[BasisTag, Fraction]:
    if isinstance(spec, FiniteDim):
        w = tag.tableau
        ctx = EvalContext(w, ShiftVector.zero(spec.n), None, 0)
        out: dict[BasisTag, Fraction] = {}
        for shift, c in gt_image(ctx, g):
            target = apply_shift(w, shift)
            # non-standard tableaux are zero in V(lambda)
            if not is_standard(target):
                continue
            val = value_of(ctx, c)
            if val != 0:
                out[Std(target)] = out.get(Std(target), Fraction(0)) + val
        return out
    if isinstance(spec, Generic):
        ctx = EvalContext(spec.v, tag.shift, None, 0)
        return {Gen(shift): value_of(ctx, c) for shift, c in gt_image(ctx, g)}
    return _reduce(singular_coefficient_jets(spec, g, tag), f"{g} on {tag.kind}")


@lru_cache(maxsize=None)
def _tag_image(spec: ModuleSpec, g: Generator, tag: BasisTag, settings: tuple) -> tuple[tuple[BasisTag, Fraction], ...]:
    if g.is_chevalley:
        raw = _chevalley_on_tag(spec, g, tag)
        return ModuleVector._from_canonical(spec, raw).terms
    a, b = g.a, g.b
    m = b - 1 if a < b else b + 1
    basis = ModuleVector(spec, ((tag, Fraction(1)),))
    left, right = Generator(a, m), Generator(m, b)
    vec = act_general(act_general(basis, right), left) - act_general(act_general(basis, left), right)
    return vec.terms


@lru_cache(maxsize=None)
def _word_sums(spec: ModuleSpec, m: int, tag: BasisTag, settings: tuple, s: int) -> dict[tuple[int, int], ModuleVector]:
    """(a, b) -> sum of all words E_{a,i2} E_{i2,i3} ... E_{is,b} applied to tag."""
    idx = range(1, m + 1)
    if s == 1:
        basis = ModuleVector(spec, ((tag, Fraction(1)),))
        return {(a, b): act_general(basis, Generator(a, b)) for a in idx for b in idx}
    prev = _word_sums(spec, m, tag, settings, s - 1)
    return {
        (a, b): _sum(spec, (act_general(prev[c, b], Generator(a, c)) for c in idx))
        for a in idx
        for b in idx
    }


@lru_cache(maxsize=None)
def _casimir_image(spec: ModuleSpec, c: Casimir, tag: BasisTag, settings: tuple) -> tuple[tuple[BasisTag, Fraction], ...]:
    w = _word_sums(spec, c.m, tag, settings, c.t)
    return _sum(spec, (w[a, a] for a in range(1, c.m + 1))).terms


def _sum(spec: ModuleSpec, vecs: Iterable[ModuleVector]) -> ModuleVector:
    acc: dict[BasisTag, Fraction] = {}
    for vec in vecs:
        for t, x in vec.terms:
            acc[t] = acc.get(t, Fraction(0)) + x
    return ModuleVector._from_canonical(spec, acc)


def clear_caches() -> None:
    _tag_image.cache_clear()
    _word_sums.cache_clear()
    _casimir_image.cache_clear()


def _linear(vec: ModuleVector, image_of) -> ModuleVector:
    acc: dict[BasisTag, Fraction] = {}
    for tag, c in vec.terms:
        for t, x in image_of(tag):
            acc[t] = acc.get(t, Fraction(0)) + c * x
    return ModuleVector._from_canonical(vec.spec, acc)


# ---------- Public actions ----------

def act_chevalley(vec: ModuleVector, g: Generator) -> ModuleVector:
    g.validate_for(vec.spec.n)
    if not g.is_chevalley:
        raise InputError(f"{g} is not a Chevalley generator; use act_general")
    key = _settings_key()
    return _linear(vec, lambda tag: _tag_image(vec.spec, g, tag, key))


def act_general(vec: ModuleVector, g: Generator) -> ModuleVector:
    """E(a,b) for any a, b, via E(a,b) = [E(a,m), E(m,b)] with m adjacent to b."""
    g.validate_for(vec.spec.n)
    key = _settings_key()
    return _linear(vec, lambda tag: _tag_image(vec.spec, g, tag, key))


def act_casimir(vec: ModuleVector, m: int, t: int) -> ModuleVector:
    """c_{m,t} = sum over words E_{i1,i2} ... E_{it,i1}; the rightmost factor acts first."""
    c = Casimir(m, t).validate_for(vec.spec.n)
    key = _settings_key()
    return _linear(vec, lambda tag: _casimir_image(vec.spec, c, tag, key))


def act(vec: ModuleVector, op: Operator) -> ModuleVector:
    if isinstance(op, Casimir):
        return act_casimir(vec, op.m, op.t)
    return act_general(vec, op)


# ---------- Weights and finite-dimensional bases ----------

def eval_context_for(spec: ModuleSpec, tag: BasisTag) -> EvalContext:
    # without a path only the eps^0 coefficient is ever read
    if isinstance(spec, FiniteDim):
        return EvalContext(tag.tableau, ShiftVector.zero(spec.n), None, 0)
    if isinstance(spec, Generic):
        return EvalContext(spec.v, tag.shift, None, 0)
    return EvalContext(spec.v, tag.shift, spec.pair, current_trunc_order())


def weight_of(spec: ModuleSpec, tag: BasisTag) -> tuple[Fraction, ...]:
    canonical_tag(spec, tag)
    ctx = eval_context_for(spec, tag)
    return tuple(value_of(ctx, eval_weight(ctx, t)) for t in range(1, spec.n + 1))


def highest_weight_tableau(weight: Iterable[int]) -> Tableau:
    spec = FiniteDim(tuple(weight))
    top = spec.top_row()
    return Tableau(spec.n, tuple(top[:k] for k in range(1, spec.n + 1)))


def fd_basis(weight: Iterable[int]) -> list[Tableau]:
    """All standard tableaux with top row (l_1, l_2 - 1, ..., l_n - n + 1)."""
    spec = FiniteDim(tuple(weight))
    n = spec.n

    def below(row: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
        ranges = [range(row[i + 1] + 1, row[i] + 1) for i in range(len(row) - 1)]
        return itertools.product(*ranges)

    out = []

    def extend(prefix: list[tuple[int, ...]]) -> None:
        if len(prefix) == n:
            out.append(Tableau.from_top_rows(prefix))
            return
        for row in below(prefix[-1]):
            extend(prefix + [row])

    extend([spec.top_row()])
    out.sort()
    log.debug("fd_basis(%s): %d tableaux", spec.weight, len(out))
    return out


def weyl_dim(weight: Iterable[int]) -> int:
    lam = FiniteDim(tuple(weight)).weight
    n = len(lam)
    d = prod(
        (Fraction(lam[i] - lam[j] + j - i, j - i) for i in range(n) for j in range(i + 1, n)),
        start=Fraction(1),
    )
    return int(d)


def basis_tags(spec: FiniteDim) -> list[Std]:
    return [Std(t) for t in fd_basis(spec.weight)]
