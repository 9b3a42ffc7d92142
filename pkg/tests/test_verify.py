import io
import json
import random
from fractions import Fraction

import pytest

from gtmod.core.errors import InputError
from gtmod.core.mutations import Mutation, mutated
from gtmod.core.report import report_line, report_lines, write_jsonl
from gtmod.core.rep_engine import Alt, FiniteDim, Gen, Generic, OneSingular, Std, Sym, basis_tags
from gtmod.core.tableaux import ShiftVector, SingularPair, Tableau, classify
from gtmod.core.verify import (
    FD_TOP_ENTRY,
    SuiteConfig,
    check_bracket_suite,
    check_casimir,
    check_dlemma,
    check_fd_dimension,
    check_regularity,
    check_symmetric_even,
    check_tau_equivariance,
    check_tau_transport,
    check_weight_grading,
    dominant_weights,
    generate_instances,
    plan_tasks,
    random_generic,
    random_one_singular,
    raw_coefficient_jet,
    run_suites,
    sample_tags,
    shift_ball,
    standard_exprs,
)
from gtmod.core.arith import jet_coeff, jet_is_regular

GENERIC_GL3 = Tableau.from_top_rows([[3, 1, 0], [Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5)]])
SMALL = dict(n_max=3, fd_count=1, generic_count=1, singular_count=1, tags_per_instance=1, dlemma_count=2, radius=1)


def _z3(a, b, c=0):
    return ShiftVector.from_top_rows([[a, b], [c]])


@pytest.fixture
def singular_spec(critical_gl3, pair212):
    return OneSingular(critical_gl3, pair212)


# ---------- single checks ----------

def test_bracket_gl2_example():
    spec = FiniteDim((1, 0))
    r = check_bracket_suite(spec, basis_tags(spec), [((1, 2), (2, 1))])
    assert r.passed, r.evidence


def test_bracket_full_suite_generic_gl3():
    r = check_bracket_suite(Generic(GENERIC_GL3), [Gen(ShiftVector.zero(3))])
    assert r.passed, r.evidence


def test_bracket_full_suite_singular(singular_spec):
    r = check_bracket_suite(singular_spec, [Sym(ShiftVector.zero(3)), Alt(_z3(1, 0))])
    assert r.passed, r.evidence


@pytest.mark.parametrize("m, t", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_casimir_singular(singular_spec, m, t):
    tags = [Sym(ShiftVector.zero(3)), Alt(_z3(1, 0)), Sym(_z3(0, -1, 1))]
    r = check_casimir(singular_spec, m, t, tags)
    assert r.passed, r.evidence


def test_casimir_finite_dim():
    spec = FiniteDim((2, 1, 0))
    r = check_casimir(spec, 3, 2, basis_tags(spec))
    assert r.passed, r.evidence


def test_raw_coefficient_is_the_negative_control(singular_spec):
    raw = raw_coefficient_jet(singular_spec)
    assert not jet_is_regular(raw)
    assert jet_coeff(raw, -1) == 1


def test_regularity(singular_spec):
    assert check_regularity(singular_spec, [Sym(ShiftVector.zero(3)), Alt(_z3(1, 0))]).passed
    r = check_regularity(Generic(GENERIC_GL3), [Gen(ShiftVector.zero(3))])
    assert r.passed and "vacuous" in r.detail


def test_dlemma(singular_spec):
    assert check_dlemma(singular_spec, ShiftVector.zero(3), standard_exprs(singular_spec)).passed
    assert check_dlemma(singular_spec, _z3(1, 1, -1), standard_exprs(singular_spec)).passed


def test_dlemma_needs_a_fixed_shift(singular_spec):
    with pytest.raises(InputError):
        check_dlemma(singular_spec, _z3(1, 0), standard_exprs(singular_spec))


@pytest.mark.parametrize("z", [_z3(0, 0), _z3(1, 0), _z3(-1, 2, 1)])
def test_tau_identities(singular_spec, z):
    exprs = standard_exprs(singular_spec)
    assert check_tau_transport(singular_spec, z, exprs).passed
    assert check_tau_equivariance(singular_spec, z).passed
    assert check_symmetric_even(singular_spec, z).passed


def test_weight_grading(singular_spec):
    assert check_weight_grading(singular_spec, [Sym(ShiftVector.zero(3)), Alt(_z3(1, 0))]).passed
    spec = FiniteDim((2, 1, 0))
    assert check_weight_grading(spec, basis_tags(spec)).passed


@pytest.mark.parametrize("weight", [(1, 0), (2, 1, 0), (2, 2, 1, 0)])
def test_fd_dimension(weight):
    assert check_fd_dimension(weight).passed


def test_casimir_with_equal_top_row_entries():
    spec = Generic(Tableau.from_top_rows([[0, 0, 0], [Fraction(1, 2), 0], [Fraction(1, 4)]]))
    tags = [Gen(ShiftVector.zero(3)), Gen(_z3(1, -1, 2))]
    for m in range(1, 4):
        for t in range(1, m + 1):
            r = check_casimir(spec, m, t, tags)
            assert r.passed, r.evidence


# ---------- gl(4) ----------

GL4_PAIR = SingularPair(3, 1, 3)


@pytest.fixture
def singular_gl4():
    v = Tableau.from_top_rows([
        [Fraction(7, 2), Fraction(1, 3), 0, Fraction(-5, 2)],
        [1, Fraction(1, 2), 1],
        [Fraction(1, 3), Fraction(-1, 4)],
        [Fraction(1, 5)],
    ])
    return OneSingular(v, GL4_PAIR)


def _z4(row3, row2=(0, 0), row1=(0,)):
    return ShiftVector.from_top_rows([list(row3), list(row2), list(row1)])


def test_bracket_full_suite_singular_gl4(singular_gl4):
    tags = [Sym(ShiftVector.zero(4)), Alt(_z4((1, 0, 0))), Sym(_z4((1, -1, 1), (0, 1)))]
    r = check_bracket_suite(singular_gl4, tags)
    assert r.passed, r.evidence


@pytest.mark.parametrize("m, t", [(2, 2), (3, 1), (3, 2), (3, 3), (4, 2)])
def test_casimir_singular_gl4(singular_gl4, m, t):
    tags = [Sym(ShiftVector.zero(4)), Alt(_z4((1, 0, 0))), Alt(_z4((2, 0, 1), (1, 0)))]
    r = check_casimir(singular_gl4, m, t, tags)
    assert r.passed, r.evidence


def test_regularity_gl4(singular_gl4):
    tags = [Sym(ShiftVector.zero(4)), Sym(_z4((1, 0, 1), (0, -1))), Alt(_z4((1, 0, 0), (1, 0), (-1,)))]
    assert check_regularity(singular_gl4, tags).passed
    assert not jet_is_regular(raw_coefficient_jet(singular_gl4))


@pytest.mark.parametrize("z", [_z4((0, 0, 0)), _z4((1, 0, 1), (0, 1)), _z4((2, 0, 1), (1, 0), (1,))])
def test_tau_identities_gl4(singular_gl4, z):
    exprs = standard_exprs(singular_gl4)
    assert check_tau_transport(singular_gl4, z, exprs).passed
    assert check_tau_equivariance(singular_gl4, z).passed
    assert check_symmetric_even(singular_gl4, z).passed


def test_weight_grading_gl4(singular_gl4):
    assert check_weight_grading(singular_gl4, [Sym(ShiftVector.zero(4)), Alt(_z4((1, 0, 0)))]).passed


def test_bracket_full_suite_finite_dim_gl4():
    spec = FiniteDim((2, 1, 0, 0))
    r = check_bracket_suite(spec, basis_tags(spec))
    assert r.passed, r.evidence


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_casimir_finite_dim_gl4(t):
    spec = FiniteDim((1, 1, 0, 0))
    r = check_casimir(spec, 4, t, basis_tags(spec))
    assert r.passed, r.evidence


# ---------- mutations must be caught ----------

def test_sign_flip_breaks_the_bracket():
    spec = FiniteDim((1, 0))
    with mutated(Mutation.SIGN_E12):
        r = check_bracket_suite(spec, basis_tags(spec), [((1, 2), (2, 1))])
    assert not r.passed
    assert "lhs" in r.evidence and "rhs" in r.evidence


def test_gamma_shift_breaks_the_casimir():
    spec = Generic(Tableau.from_top_rows([[1, -1], [Fraction(1, 2)]]))
    with mutated(Mutation.GAMMA_SHIFT):
        r = check_casimir(spec, 2, 1, [Gen(ShiftVector.zero(2))])
    assert not r.passed


def test_p_minus_factor_breaks_the_bracket():
    with mutated(Mutation.P_MINUS_FACTOR):
        r = check_bracket_suite(Generic(GENERIC_GL3), [Gen(ShiftVector.zero(3))], [((2, 3), (3, 2))])
    assert not r.passed


def test_tau_orientation_breaks_the_diagonal(singular_spec):
    with mutated(Mutation.TAU_ORIENTATION):
        r = check_weight_grading(singular_spec, [Alt(_z3(1, 0))])
    assert not r.passed


def test_mutation_names():
    assert Mutation.parse("none") is None
    assert Mutation.parse("sign-e12") is Mutation.SIGN_E12
    with pytest.raises(InputError):
        Mutation.parse("nope")


# ---------- instance generation ----------

def test_shift_ball_sizes():
    assert len(shift_ball(2, 1)) == 3
    assert len(shift_ball(3, 1)) == 7
    assert shift_ball(3, 0) == [ShiftVector.zero(3)]


def test_dominant_weights():
    assert dominant_weights(2, 1) == [(1, 1), (1, 0), (0, 0)]


def test_random_instances_have_the_right_shape():
    rng = random.Random(7)
    g = random_generic(rng, 3)
    assert classify(g.v).generic
    pair = SingularPair(2, 1, 2)
    s = random_one_singular(rng, 3, pair)
    c = classify(s.v)
    assert c.critical_pairs == ((2, 1, 2),)


def test_sample_tags(singular_spec):
    rng = random.Random(0)
    tags = sample_tags(rng, singular_spec, 1, 3)
    assert tags[0] == Sym(ShiftVector.zero(3))
    assert all(isinstance(t, (Sym, Alt)) for t in tags)
    fd = sample_tags(rng, FiniteDim((2, 1, 0)), 1, 1)
    assert len(fd) == 8 and all(isinstance(t, Std) for t in fd)


def test_generate_instances_is_seeded():
    cfg = SuiteConfig(seed=3, **SMALL)
    first = [(i.spec, i.tags) for i in generate_instances(cfg)]
    second = [(i.spec, i.tags) for i in generate_instances(cfg)]
    assert first == second
    families = {i.spec.family for i in generate_instances(cfg)}
    assert families == {"FiniteDim", "Generic", "OneSingular"}


def test_finite_dim_instances_cover_every_weight_and_tableau():
    cfg = SuiteConfig(seed=4, n_max=3, generic_count=0, singular_count=0)
    instances = list(generate_instances(cfg))
    weights = [i.spec.weight for i in instances]
    assert weights == dominant_weights(2, FD_TOP_ENTRY) + dominant_weights(3, FD_TOP_ENTRY)
    assert max(max(w) for w in weights) == 3
    for inst in instances:
        assert list(inst.tags) == basis_tags(inst.spec)


def test_default_suite_reaches_gl4():
    cfg = SuiteConfig()
    assert cfg.n_max == 4 and cfg.fd_count is None
    tasks = plan_tasks(SuiteConfig(generic_count=0, singular_count=0, casimir=False))
    gl4 = [t for t in tasks if t.check == "bracket" and t.instance["n"] == 4]
    assert len(gl4) == len(dominant_weights(4, FD_TOP_ENTRY)) == 35
    assert any(len(t.instance["tags"]) == 64 for t in gl4)
    with pytest.raises(InputError):
        SuiteConfig(fd_count=-1)


def test_suite_config_validation():
    with pytest.raises(InputError):
        SuiteConfig(n_max=1)
    with pytest.raises(InputError):
        SuiteConfig(trunc_order=1)
    with pytest.raises(InputError):
        SuiteConfig(generic_count=-1)


# ---------- whole suite ----------

def test_run_suites_passes_and_is_deterministic():
    cfg = SuiteConfig(seed=11, **SMALL)
    first = run_suites(cfg)
    assert first.all_passed, [r.evidence or r.detail for r in first.failures()]
    assert report_lines(first) == report_lines(run_suites(cfg))
    checks = {r.check for r in first}
    assert {"bracket", "casimir", "regularity", "dlemma", "fd_dimension"} <= checks


def test_reports_stream_in_output_order():
    cfg = SuiteConfig(seed=8, **SMALL)
    streamed = []
    reports = run_suites(cfg, sink=streamed.append)
    assert [report_line(r) for r in streamed] == report_lines(reports)
    assert [(t.check, t.instance) for t in plan_tasks(cfg)] == [(r.check, r.instance) for r in streamed]


def test_run_suites_reports_a_mutation():
    reports = run_suites(SuiteConfig(seed=11, mutation=Mutation.SIGN_E12, casimir=False, **SMALL))
    assert not reports.all_passed
    assert any(r.check == "bracket" for r in reports.failures())


def test_jsonl_output_has_a_summary_and_no_floats():
    reports = run_suites(SuiteConfig(seed=5, n_max=2, fd_count=1, generic_count=1, tags_per_instance=1))
    buf = io.StringIO()
    write_jsonl(reports, buf, 5)
    lines = buf.getvalue().splitlines()
    last = json.loads(lines[-1])
    assert last == {"seed": 5, "summary": reports.counts()}

    def no_floats(obj):
        if isinstance(obj, float):
            return False
        if isinstance(obj, dict):
            return all(no_floats(v) for v in obj.values())
        if isinstance(obj, list):
            return all(no_floats(v) for v in obj)
        return True

    assert all(no_floats(json.loads(line)) for line in lines)
