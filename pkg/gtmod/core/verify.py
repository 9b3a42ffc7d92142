"""Exact identity checks over seeded instance families.

A failed identity is a failing ``CheckReport``, never an exception.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .arith import DEFAULT_TRUNC_ORDER, Jet, current_trunc_order, jet_coeff, jet_is_regular, truncation
from .codec import encode_operator, encode_shift, encode_spec, encode_tag, encode_vector
from .errors import GTModError, InputError
from .gt_formulas import EvalContext, d_of, eval_gamma, eval_p, eval_q, eval_qstar
from .mutations import Mutation, mutated
from .rep_engine import (
    Alt,
    BasisTag,
    Casimir,
    FiniteDim,
    Gen,
    Generator,
    Generic,
    ModuleSpec,
    ModuleVector,
    OneSingular,
    Std,
    Sym,
    act_casimir,
    act_general,
    basis_tags,
    canonical_tag,
    clear_caches,
    eval_context_for,
    fd_basis,
    singular_coefficient_jets,
    weight_of,
    weyl_dim,
)
from .tableaux import ShiftVector, SingularPair, Tableau, classify, is_tau_fixed, positions, tau_apply
from .utils import CheckReport, ReportSet, instance_key

log = logging.getLogger(__name__)

DEFAULT_RADIUS = 2
FD_TOP_ENTRY = 3
SINGULAR_PAIRS = {3: ((2, 1, 2),), 4: ((2, 1, 2), (3, 1, 3))}

IndexPair = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    n_max: int = 4
    radius: int = DEFAULT_RADIUS
    trunc_order: int = DEFAULT_TRUNC_ORDER
    # None checks every dominant weight with entries <= FD_TOP_ENTRY
    fd_count: int | None = None
    generic_count: int = 20
    singular_count: int = 10
    tags_per_instance: int = 3
    dlemma_count: int = 20
    casimir: bool = True
    mutation: Mutation | None = None

    def __post_init__(self) -> None:
        if self.n_max < 2:
            raise InputError(f"n-max must be at least 2, got {self.n_max}")
        if self.radius < 0:
            raise InputError("radius must be non-negative")
        if self.trunc_order < 2:
            # the eps^1 coefficient of an Alt image needs two orders past a simple pole
            raise InputError(f"verification needs truncation order >= 2, got {self.trunc_order}")
        if self.fd_count is not None and self.fd_count < 0:
            raise InputError("fd_count must be non-negative")
        for name in ("generic_count", "singular_count", "tags_per_instance", "dlemma_count"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be non-negative")


def _describe(spec: ModuleSpec, **extra) -> dict:
    d = {"family": spec.family, "n": spec.n, "spec": encode_spec(spec)}
    d.update(extra)
    return d


def _report(check: str, instance: dict, failure: dict | None, detail: str | None = None) -> CheckReport:
    if failure is None:
        log.debug("%s passed on %s", check, instance.get("family"))
        return CheckReport(check, instance, True, detail)
    log.warning("%s FAILED: %s", check, failure.get("identity", detail))
    return CheckReport(check, instance, False, detail or failure.get("identity"), failure)


def _all_generators(n: int) -> list[Generator]:
    return [Generator(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]


def _chevalley(n: int) -> list[Generator]:
    out = [Generator(t, t) for t in range(1, n + 1)]
    for t in range(1, n):
        out += [Generator(t, t + 1), Generator(t + 1, t)]
    return out


# ---------- Bracket relations ----------

def check_bracket_suite(
    spec: ModuleSpec,
    tags: Sequence[BasisTag],
    index_pairs: Iterable[IndexPair] | None = None,
) -> CheckReport:
    """[E(a,b), E(c,d)] = delta_bc E(a,d) - delta_da E(c,b) on every tag."""
    n = spec.n
    if index_pairs is None:
        gens = [(g.a, g.b) for g in _all_generators(n)]
        index_pairs = list(itertools.product(gens, gens))
    else:
        index_pairs = list(index_pairs)
    instance = _describe(spec, tags=[encode_tag(t) for t in tags], pairs=len(index_pairs))
    for tag in tags:
        basis = ModuleVector.basis(spec, tag)
        images: dict[tuple[int, int], ModuleVector] = {}

        def image(a: int, b: int) -> ModuleVector:
            if (a, b) not in images:
                images[(a, b)] = act_general(basis, Generator(a, b))
            return images[(a, b)]

        for (a, b), (c, d) in index_pairs:
            lhs = act_general(image(c, d), Generator(a, b)) - act_general(image(a, b), Generator(c, d))
            rhs = ModuleVector.zero(spec)
            if b == c:
                rhs = rhs + image(a, d)
            if d == a:
                rhs = rhs - image(c, b)
            if lhs != rhs:
                return _report("bracket", instance, {
                    "identity": f"[E({a},{b}),E({c},{d})] = {int(b == c)}*E({a},{d}) - {int(d == a)}*E({c},{b})",
                    "tag": encode_tag(tag),
                    "lhs": encode_vector(lhs),
                    "rhs": encode_vector(rhs),
                })
    return _report("bracket", instance, None)


# ---------- Casimir / gamma ----------

def _gamma_jet(spec: ModuleSpec, tag: BasisTag, m: int, t: int) -> Jet:
    return eval_gamma(eval_context_for(spec, tag), m, t)


def check_casimir(spec: ModuleSpec, m: int, t: int, tags: Sequence[BasisTag]) -> CheckReport:
    """c_{m,t} acts by gamma_{m,t}; on a 1-singular module through the 2x2 block on S/A."""
    instance = _describe(spec, m=m, t=t, tags=[encode_tag(x) for x in tags])
    op = encode_operator(Casimir(m, t))
    for tag in tags:
        basis = ModuleVector.basis(spec, tag)
        if basis.is_zero:
            continue
        canon, sign = basis.terms[0]
        got = act_casimir(basis, m, t)
        gamma = _gamma_jet(spec, canon, m, t)
        g0 = jet_coeff(gamma, 0)
        expected = basis.scaled(g0)
        if isinstance(canon, Alt):
            # c A(z) = gamma A(z) + D(gamma) S(z)
            expected = expected + ModuleVector.basis(spec, Sym(canon.shift)).scaled(sign * jet_coeff(gamma, 1))
        if got != expected:
            return _report("casimir", instance, {
                "identity": f"{op} on {canon.kind}",
                "tag": encode_tag(canon),
                "lhs": encode_vector(got),
                "rhs": encode_vector(expected),
            })
        if isinstance(spec, OneSingular) and m == spec.pair.k and not isinstance(canon, Std):
            failure = _nilpotent_block(spec, m, t, canon.shift, g0)
            if failure is not None:
                return _report("casimir", instance, failure)
    return _report("casimir", instance, None)


def _nilpotent_block(spec: OneSingular, m: int, t: int, z: ShiftVector, gamma0: Fraction) -> dict | None:
    # (c_{k,t} - gamma)^2 kills S(z) and A(z)
    for tag in (Sym(z), Alt(z)):
        vec = ModuleVector.basis(spec, tag)
        if vec.is_zero:
            continue
        for _ in range(2):
            vec = act_casimir(vec, m, t) - vec.scaled(gamma0)
        if not vec.is_zero:
            return {
                "identity": f"(C,{m},{t} - gamma)^2 = 0 on {tag.kind}",
                "tag": encode_tag(tag),
                "lhs": encode_vector(vec),
                "rhs": encode_vector(ModuleVector.zero(spec)),
            }
    return None


# ---------- Regularity of the 1-singular coefficients ----------

def raw_coefficient_jet(spec: OneSingular, z: ShiftVector | None = None) -> Jet:
    """1/q_{k,i} at v + z in the plain T-basis; has a pole whenever z is tau-fixed."""
    z = z if z is not None else ShiftVector.zero(spec.n)
    ctx = EvalContext(spec.v, z, spec.pair, DEFAULT_TRUNC_ORDER)
    return 1 / eval_q(ctx, spec.pair.k, spec.pair.i)


def check_regularity(spec: ModuleSpec, tags: Sequence[BasisTag]) -> CheckReport:
    instance = _describe(spec, tags=[encode_tag(x) for x in tags])
    if not isinstance(spec, OneSingular):
        return _report("regularity", instance, None, "no critical path; vacuously regular")
    control = raw_coefficient_jet(spec)
    if jet_is_regular(control):
        return _report("regularity", instance, {
            "identity": "1/q at a tau-fixed shift has a pole",
            "jet": str(control),
        })
    for tag in tags:
        if not isinstance(tag, (Sym, Alt)):
            continue
        canon, sign = canonical_tag(spec, tag)
        if not sign:
            continue
        for g in _chevalley(spec.n):
            for target, jet in singular_coefficient_jets(spec, g, canon).items():
                if not jet_is_regular(jet):
                    return _report("regularity", instance, {
                        "identity": f"{g} on {canon.kind}: coefficient of {target.kind} is regular",
                        "tag": encode_tag(canon),
                        "target": encode_tag(target),
                        "jet": str(jet),
                    })
    return _report("regularity", instance, None)


# ---------- Identities of the tau involution ----------

class SampleExpr(NamedTuple):
    label: str
    fn: Callable[[EvalContext], Jet]


def _x(ctx: EvalContext) -> Jet:
    return ctx.entry(*ctx.pair.first)


def _y(ctx: EvalContext) -> Jet:
    return ctx.entry(*ctx.pair.second)


def standard_exprs(spec: OneSingular) -> list[SampleExpr]:
    k, i = spec.pair.k, spec.pair.i
    return [
        SampleExpr("x", _x),
        SampleExpr("x+y", lambda c: _x(c) + _y(c)),
        SampleExpr("1/(x-y+1)", lambda c: 1 / (_x(c) - _y(c) + 1)),
        SampleExpr("p+/q*", lambda c: eval_p(c, "+", k, i) / eval_qstar(c, k, i)),
        SampleExpr(f"gamma_{k},2", lambda c: eval_gamma(c, k, 2)),
    ]


def random_expr(rng: random.Random, spec: OneSingular) -> SampleExpr:
    """A seeded rational function of the path entries, regular on x = y."""
    a, b, c = (_rand_rational(rng) for _ in range(3))
    d = _rand_rational(rng, nonzero=True)
    others = [p for p in positions(spec.n) if p not in (spec.pair.first, spec.pair.second)]
    w = rng.choice(others)
    shape = rng.randrange(4)
    if shape == 0:
        return SampleExpr(f"({a}x+{b}y+{c})/(x-y+{d})", lambda ctx: (_x(ctx) * a + _y(ctx) * b + c) / (_x(ctx) - _y(ctx) + d))
    if shape == 1:
        return SampleExpr(f"(x-v{tuple(w)})^2*(y+{c})", lambda ctx: (_x(ctx) - ctx.entry(*w)) ** 2 * (_y(ctx) + c))
    if shape == 2:
        return SampleExpr(f"{a}/((x-y)^2+{d}^2)", lambda ctx: a / ((_x(ctx) - _y(ctx)) ** 2 + d * d))
    return SampleExpr(f"{a}x^3+{b}xy", lambda ctx: _x(ctx) ** 3 * a + _x(ctx) * _y(ctx) * b)


def _same_jet(a: Jet, b: Jet) -> bool:
    top = min(a.trunc_order, b.trunc_order)
    lo = min(a.min_exp, b.min_exp, 0)
    return all(a._raw(e) == b._raw(e) for e in range(lo, top + 1))


def check_dlemma(spec: OneSingular, z: ShiftVector, exprs: Sequence[SampleExpr]) -> CheckReport:
    """(f - tau.f)/(x - y) is regular, even, and equals 2 D(f) on x = y."""
    instance = _describe(spec, shift=encode_shift(z), exprs=[e.label for e in exprs])
    if not is_tau_fixed(z, spec.pair):
        raise InputError("the divided-difference identity is checked on the critical locus: z must be tau-fixed")
    ctx = EvalContext(spec.v, z, spec.pair, current_trunc_order())
    for e in exprs:
        f = e.fn(ctx)
        lhs = (f - e.fn(ctx.transposed())) / (_x(ctx) - _y(ctx))
        rhs = 2 * d_of(ctx, f)
        if not jet_is_regular(lhs) or jet_coeff(lhs, 0) != rhs or jet_coeff(lhs, 1) != 0:
            return _report("dlemma", instance, {
                "identity": f"(f - tau.f)/(x-y) = 2D(f) for f = {e.label}",
                "lhs": str(lhs),
                "rhs": str(rhs),
            })
    return _report("dlemma", instance, None)


def check_tau_transport(spec: OneSingular, z: ShiftVector, exprs: Sequence[SampleExpr]) -> CheckReport:
    """tau.(f(lambda^z)) = (tau.f)(lambda^{tau z}), as jets under eps -> -eps."""
    instance = _describe(spec, shift=encode_shift(z), exprs=[e.label for e in exprs])
    ctx = EvalContext(spec.v, z, spec.pair, current_trunc_order())
    moved = EvalContext(spec.v, tau_apply(z, spec.pair), spec.pair, current_trunc_order(), swapped=True)
    for e in exprs:
        lhs = e.fn(ctx).flipped()
        rhs = e.fn(moved)
        if not _same_jet(lhs, rhs):
            return _report("tau_transport", instance, {
                "identity": f"tau-transport of {e.label}",
                "lhs": str(lhs),
                "rhs": str(rhs),
            })
    return _report("tau_transport", instance, None)


def check_tau_equivariance(spec: OneSingular, z: ShiftVector) -> CheckReport:
    """tau.p^{+-}_{t,s} = p^{+-}_{tau(t,s)} and tau.q_{t,s} = q_{tau(t,s)}."""
    instance = _describe(spec, shift=encode_shift(z))
    ctx = EvalContext(spec.v, z, spec.pair, current_trunc_order())
    swapped = ctx.transposed()
    n = spec.n
    cases: list[tuple[str, Jet, Jet]] = []
    for t, s in positions(n):
        tt, ss = spec.pair.tau((t, s))
        if t < n:
            cases.append((f"p+_{t},{s}", eval_p(swapped, "+", t, s), eval_p(ctx, "+", tt, ss)))
        cases.append((f"p-_{t},{s}", eval_p(swapped, "-", t, s), eval_p(ctx, "-", tt, ss)))
        cases.append((f"q_{t},{s}", eval_q(swapped, t, s), eval_q(ctx, tt, ss)))
    for label, lhs, rhs in cases:
        if not _same_jet(lhs, rhs):
            return _report("tau_equivariance", instance, {
                "identity": f"tau.{label} = {label} at tau(position)",
                "lhs": str(lhs),
                "rhs": str(rhs),
            })
    return _report("tau_equivariance", instance, None)


def check_symmetric_even(spec: OneSingular, z: ShiftVector) -> CheckReport:
    instance = _describe(spec, shift=encode_shift(z))
    ctx = EvalContext(spec.v, z, spec.pair, current_trunc_order())
    fixed = is_tau_fixed(z, spec.pair)
    for m in range(1, spec.n + 1):
        if m == spec.pair.k and not fixed:
            continue
        for t in range(1, m + 1):
            j = eval_gamma(ctx, m, t)
            odd = {e: c for e, c in j.terms().items() if e % 2}
            if odd:
                return _report("symmetric_even", instance, {
                    "identity": f"gamma_{m},{t} is even in eps",
                    "jet": str(j),
                })
    return _report("symmetric_even", instance, None)


# ---------- Weights and dimensions ----------

def check_weight_grading(spec: ModuleSpec, tags: Sequence[BasisTag]) -> CheckReport:
    """E(t,t) is diagonal with the weight; E(t,t+1) moves the weight by e_t - e_{t+1}."""
    instance = _describe(spec, tags=[encode_tag(x) for x in tags])
    n = spec.n
    for tag in tags:
        basis = ModuleVector.basis(spec, tag)
        if basis.is_zero:
            continue
        canon = basis.support[0]
        w = weight_of(spec, canon)
        for t in range(1, n + 1):
            got = act_general(basis, Generator(t, t))
            if got != basis.scaled(w[t - 1]):
                return _report("weight_grading", instance, {
                    "identity": f"E({t},{t}) acts by the weight",
                    "tag": encode_tag(canon),
                    "lhs": encode_vector(got),
                    "rhs": encode_vector(basis.scaled(w[t - 1])),
                })
        for t in range(1, n):
            shift = [Fraction(0)] * n
            shift[t - 1], shift[t] = Fraction(1), Fraction(-1)
            expected = tuple(a + b for a, b in zip(w, shift))
            for target in act_general(basis, Generator(t, t + 1)).support:
                got_w = weight_of(spec, target)
                if got_w != expected:
                    return _report("weight_grading", instance, {
                        "identity": f"E({t},{t + 1}) raises the weight by e_{t} - e_{t + 1}",
                        "tag": encode_tag(target),
                        "lhs": [str(x) for x in got_w],
                        "rhs": [str(x) for x in expected],
                    })
    return _report("weight_grading", instance, None)


def check_fd_dimension(weight: Sequence[int]) -> CheckReport:
    weight = tuple(weight)
    count, dim = len(fd_basis(weight)), weyl_dim(weight)
    instance = {"family": "FiniteDim", "n": len(weight), "weight": [str(x) for x in weight]}
    if count != dim:
        return _report("fd_dimension", instance, {
            "identity": "|basis| = Weyl dimension",
            "lhs": count,
            "rhs": dim,
        })
    return _report("fd_dimension", instance, None)


# ---------- Instance generation ----------

def _rand_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        if q or not nonzero:
            return q


def _rows_generic(v: Tableau, rows: Iterable[int]) -> bool:
    for k in rows:
        row = v.row(k)
        for a, b in itertools.combinations(row, 2):
            if (a - b).denominator == 1:
                return False
    return True


def random_generic(rng: random.Random, n: int) -> Generic:
    while True:
        v = Tableau(n, tuple(tuple(_rand_rational(rng) for _ in range(k)) for k in range(1, n + 1)))
        if _rows_generic(v, range(1, n + 1)):
            return Generic(v)


def random_one_singular(rng: random.Random, n: int, pair: SingularPair) -> OneSingular:
    """A 1-singular tableau for ``pair``, sometimes off the critical locus, then normalized."""
    while True:
        v = random_generic(rng, n).v
        offset = rng.choice((0, 0, 1, -1))
        v = v.with_entries({pair.second: v[pair.first] - offset})
        c = classify(v)
        if c.singular_pairs != (pair.as_tuple(),) or not _rows_generic(v, (n,)):
            continue
        spec, _ = OneSingular.normalized(v, pair)
        return spec


def dominant_weights(n: int, top: int) -> list[tuple[int, ...]]:
    return sorted(
        (w for w in itertools.product(range(top, -1, -1), repeat=n) if all(a >= b for a, b in zip(w, w[1:]))),
        reverse=True,
    )


def shift_ball(n: int, radius: int) -> list[ShiftVector]:
    free = [p for p in positions(n) if p.k < n]
    out = []
    for values in itertools.product(range(-radius, radius + 1), repeat=len(free)):
        if sum(abs(x) for x in values) <= radius:
            out.append(ShiftVector.from_entries(n, dict(zip(free, values))))
    out.sort()
    return out


def _sample(rng: random.Random, items: Sequence, k: int) -> list:
    if k >= len(items):
        return list(items)
    return sorted(rng.sample(list(items), k))


def sample_tags(rng: random.Random, spec: ModuleSpec, radius: int, count: int) -> list[BasisTag]:
    # finite-dimensional modules are checked on their whole basis
    if isinstance(spec, FiniteDim):
        return basis_tags(spec)
    ball = shift_ball(spec.n, radius)
    if isinstance(spec, Generic):
        return [Gen(z) for z in _sample(rng, ball, count)]
    tags: list[BasisTag] = [Sym(ShiftVector.zero(spec.n))]
    moving = [z for z in ball if not is_tau_fixed(z, spec.pair)]
    for z in _sample(rng, moving, count):
        tag = Alt(z) if rng.random() < 0.5 else Sym(z)
        canon, _ = canonical_tag(spec, tag)
        if canon not in tags:
            tags.append(canon)
    return tags


@dataclass(frozen=True)
class Instance:
    spec: ModuleSpec
    tags: tuple[BasisTag, ...]


def generate_instances(config: SuiteConfig) -> Iterator[Instance]:
    rng = random.Random(config.seed)
    for n in range(2, config.n_max + 1):
        weights = dominant_weights(n, FD_TOP_ENTRY)
        if config.fd_count is not None:
            weights = _sample(rng, weights, config.fd_count)
        for w in weights:
            spec = FiniteDim(w)
            yield Instance(spec, tuple(sample_tags(rng, spec, config.radius, config.tags_per_instance)))
        for _ in range(config.generic_count):
            spec = random_generic(rng, n)
            yield Instance(spec, tuple(sample_tags(rng, spec, config.radius, config.tags_per_instance)))
        for pair in SINGULAR_PAIRS.get(n, ()):
            for _ in range(config.singular_count):
                spec = random_one_singular(rng, n, SingularPair(*pair))
                yield Instance(spec, tuple(sample_tags(rng, spec, config.radius, config.tags_per_instance)))
        log.info("generated instances for gl(%d) from seed %d", n, config.seed)


# ---------- Runner ----------

class Task(NamedTuple):
    check: str
    instance: dict
    fn: Callable[[], CheckReport]


def _run(task: Task, seed: int) -> CheckReport:
    try:
        r = task.fn()
    except Exception as e:  # noqa: BLE001 - any escape is a failed check
        log.warning("%s raised %s: %s", task.check, type(e).__name__, e)
        kind = "input" if isinstance(e, InputError) else "arithmetic" if isinstance(e, (GTModError, ArithmeticError)) else "internal"
        r = CheckReport(task.check, task.instance, False, f"{kind} error {type(e).__name__}: {e}")
    r.instance = task.instance
    r.seed = seed
    return r


def _singular_tasks(config: SuiteConfig, rng: random.Random, spec: OneSingular, exprs: list[SampleExpr]) -> Iterator[Task]:
    labels = [e.label for e in exprs]
    ball = shift_ball(spec.n, config.radius)
    fixed = [z for z in ball if is_tau_fixed(z, spec.pair)]
    for z in _sample(rng, fixed, 2):
        shift = encode_shift(z)
        yield Task("dlemma", _describe(spec, shift=shift, exprs=labels), lambda z=z: check_dlemma(spec, z, exprs))
        yield Task("symmetric_even", _describe(spec, shift=shift), lambda z=z: check_symmetric_even(spec, z))
    for z in _sample(rng, ball, 2):
        shift = encode_shift(z)
        yield Task("tau_transport", _describe(spec, shift=shift, exprs=labels), lambda z=z: check_tau_transport(spec, z, exprs))
        yield Task("tau_equivariance", _describe(spec, shift=shift), lambda z=z: check_tau_equivariance(spec, z))


def plan_tasks(config: SuiteConfig) -> list[Task]:
    tasks: list[Task] = []
    for n in range(2, config.n_max + 1):
        for w in dominant_weights(n, FD_TOP_ENTRY):
            instance = {"family": "FiniteDim", "n": n, "weight": [str(x) for x in w]}
            tasks.append(Task("fd_dimension", instance, lambda w=w: check_fd_dimension(w)))

    rng = random.Random(config.seed ^ 0x5EED)
    instances = list(generate_instances(config))
    singular = sum(1 for inst in instances if isinstance(inst.spec, OneSingular))
    share = math.ceil(config.dlemma_count / max(1, singular))
    for inst in instances:
        spec, tags = inst.spec, list(inst.tags)
        base = _describe(spec, tags=[encode_tag(t) for t in tags])
        tasks.append(Task("bracket", dict(base, pairs=spec.n ** 4),
                          lambda spec=spec, tags=tags: check_bracket_suite(spec, tags)))
        tasks.append(Task("weight_grading", base, lambda spec=spec, tags=tags: check_weight_grading(spec, tags)))
        tasks.append(Task("regularity", base, lambda spec=spec, tags=tags: check_regularity(spec, tags)))
        if config.casimir:
            for m in range(1, spec.n + 1):
                for t in range(1, m + 1):
                    tasks.append(Task("casimir", dict(base, m=m, t=t),
                                      lambda spec=spec, tags=tags, m=m, t=t: check_casimir(spec, m, t, tags)))
        if isinstance(spec, OneSingular):
            exprs = standard_exprs(spec) + [random_expr(rng, spec) for _ in range(share)]
            tasks.extend(_singular_tasks(config, rng, spec, exprs))
    tasks.sort(key=lambda task: (task.check, instance_key(task.instance)))
    return tasks


def run_suites(config: SuiteConfig, sink: Callable[[CheckReport], None] | None = None) -> ReportSet:
    """Run every check; each report goes to ``sink`` as soon as it is done."""
    reports = ReportSet()
    log.info("verification start: seed=%d n<=%d radius=%d", config.seed, config.n_max, config.radius)
    with truncation(config.trunc_order), mutated(config.mutation):
        tasks = plan_tasks(config)
        current = None
        for task in tasks:
            if task.check != current:
                current = task.check
                log.info("running %s checks", current)
            r = _run(task, config.seed)
            reports.add(r)
            if sink is not None:
                sink(r)
    clear_caches()
    counts = reports.counts()
    log.info("verification done: %d checks, %d failed", counts["total"], counts["failed"])
    return reports
