from __future__ import annotations

import argparse
import logging
import os
import pathlib
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, TextIO

from .core.arith import DEFAULT_TRUNC_ORDER, as_rational, truncation
from .core.codec import (
    encode_classification,
    encode_operator,
    encode_tableau,
    encode_vector,
    load_json,
    parse_operator,
    parse_spec,
    parse_tableau,
    parse_vector,
)
from .core.errors import GTModError, InputError
from .core.mutations import Mutation, mutated
from .core.report import dumps, summary_line, with_seed, write_report_line, write_text
from .core.rep_engine import FiniteDim, act, fd_basis, weyl_dim
from .core.tableaux import classify
from .core.utils import ReportSet
from .core.verify import DEFAULT_RADIUS, SuiteConfig, run_suites

log = logging.getLogger("gtmod")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
SEED_ENV = "GTMOD_SEED"


# ------------------- run configuration -------------------
@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    radius: int = DEFAULT_RADIUS
    trunc: int = DEFAULT_TRUNC_ORDER
    n_max: int = 4
    out: Optional[str] = None
    tableau: Optional[str] = None
    spec: Optional[str] = None
    vector: Optional[str] = None
    generator: Optional[str] = None
    weight: Optional[str] = None
    mutation: Optional[Mutation] = None
    fd_count: Optional[int] = None
    generic_count: int = 20
    singular_count: int = 10
    tags: int = 3
    casimir: bool = True

    def __post_init__(self) -> None:
        if self.trunc < 2:
            raise InputError(f"--trunc must be at least 2, got {self.trunc}")
        if self.radius < 0:
            raise InputError(f"--radius must be non-negative, got {self.radius}")
        if self.n_max < 2:
            raise InputError(f"--n-max must be at least 2 (gl(n) needs n >= 2), got {self.n_max}")


def _resolve_seed(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        seed=_resolve_seed(args.seed),
        radius=args.radius,
        trunc=args.trunc,
        n_max=getattr(args, "n_max", 4),
        out=args.out,
        tableau=getattr(args, "tableau", None),
        spec=getattr(args, "spec", None),
        vector=getattr(args, "vector", None),
        generator=getattr(args, "generator", None),
        weight=getattr(args, "weight", None),
        mutation=Mutation.parse(getattr(args, "mutate", None)),
        fd_count=getattr(args, "fd_count", None),
        generic_count=getattr(args, "generic_count", 20),
        singular_count=getattr(args, "singular_count", 10),
        tags=getattr(args, "tags", 3),
        casimir=not getattr(args, "no_casimir", False),
    )


# ------------------- I/O helpers -------------------
def _read_json_arg(value: Optional[str], what: str) -> Any:
    """Inline JSON, '@path' for a file, or '-'/None for stdin."""
    if value is None or value == "-":
        text = sys.stdin.read()
    elif value.startswith("@"):
        path = pathlib.Path(value[1:])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read {what} from {path}: {e.strerror}") from None
    else:
        text = value
    return load_json(text)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        write_text(cfg.out, text)
        log.info("output written to %s", cfg.out)
    else:
        sys.stdout.write(text)


# ------------------- commands -------------------
def cmd_classify(cfg: RunConfig) -> int:
    v = parse_tableau(_read_json_arg(cfg.tableau, "tableau"))
    payload = {"tableau": encode_tableau(v), "classification": encode_classification(classify(v))}
    _emit(cfg, dumps(with_seed(payload, cfg.seed)) + "\n")
    return EXIT_OK


def cmd_act(cfg: RunConfig) -> int:
    if cfg.generator is None:
        raise InputError("act needs --generator 'E,a,b' or 'C,m,t'")
    op = parse_operator(cfg.generator)
    raw = _read_json_arg(cfg.vector, "vector")
    parsed = parse_spec(_read_json_arg(cfg.spec, "spec")) if cfg.spec is not None else None
    vec = parse_vector(raw, parsed)
    op.validate_for(vec.spec.n)
    with truncation(cfg.trunc):
        result = act(vec, op)
    payload = {"operator": encode_operator(op), "input": encode_vector(vec), "result": encode_vector(result)}
    _emit(cfg, dumps(with_seed(payload, cfg.seed)) + "\n")
    return EXIT_OK


def _parse_weight(text: Optional[str]) -> FiniteDim:
    if not text:
        raise InputError("basis needs --weight, e.g. --weight 2,1,0")
    return FiniteDim(tuple(as_rational(x.strip()) for x in text.split(",")))


def cmd_basis(cfg: RunConfig) -> int:
    spec = _parse_weight(cfg.weight)
    basis = fd_basis(spec.weight)
    payload = {
        "weight": [str(x) for x in spec.weight],
        "dimension": len(basis),
        "weyl_dimension": weyl_dim(spec.weight),
        "basis": [encode_tableau(t) for t in basis],
    }
    _emit(cfg, dumps(with_seed(payload, cfg.seed)) + "\n")
    return EXIT_OK


def _verify_to(suite: SuiteConfig, stream: TextIO) -> ReportSet:
    # one line per check as it completes, then the summary
    reports = run_suites(suite, sink=lambda r: write_report_line(r, stream))
    stream.write(summary_line(reports, suite.seed) + "\n")
    return reports


def cmd_verify(cfg: RunConfig) -> int:
    suite = SuiteConfig(
        seed=cfg.seed,
        n_max=cfg.n_max,
        radius=cfg.radius,
        trunc_order=cfg.trunc,
        fd_count=cfg.fd_count,
        generic_count=cfg.generic_count,
        singular_count=cfg.singular_count,
        tags_per_instance=cfg.tags,
        casimir=cfg.casimir,
        mutation=cfg.mutation,
    )
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            reports = _verify_to(suite, fh)
        log.info("reports written to %s", cfg.out)
    else:
        reports = _verify_to(suite, sys.stdout)
    counts = reports.counts()
    if not reports.all_passed:
        log.warning("%d of %d checks failed", counts["failed"], counts["total"])
        return EXIT_FAILED
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "classify": cmd_classify,
    "act": cmd_act,
    "basis": cmd_basis,
    "verify": cmd_verify,
}


# ------------------- CLI -------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"seed recorded in the output (env {SEED_ENV})")
    common.add_argument("--radius", type=int, default=DEFAULT_RADIUS, help="L1 radius of the sampled shift ball")
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNC_ORDER, help="jet truncation order (>= 2)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug (stderr)")

    ap = argparse.ArgumentParser(prog="gtmod", description="Gelfand-Tsetlin modules over gl(n) in exact arithmetic")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a tableau")
    p.add_argument("--tableau", default=None, help="tableau JSON, @file, or - for stdin")

    p = sub.add_parser("act", parents=[common], help="apply E(a,b) or c_(m,t) to a vector")
    p.add_argument("--spec", default=None, help="module spec JSON (overrides the vector's own)")
    p.add_argument("--vector", default=None, help="vector JSON, @file, or - for stdin")
    p.add_argument("--generator", required=True, help="'E,a,b' or 'C,m,t'")

    p = sub.add_parser("basis", parents=[common], help="enumerate the basis of V(lambda)")
    p.add_argument("--weight", required=True, help="dominant weight, e.g. 2,1,0")

    p = sub.add_parser("verify", parents=[common], help="run the identity suites")
    p.add_argument("--n-max", dest="n_max", type=int, default=4)
    p.add_argument("--fd-count", dest="fd_count", type=int, default=None,
                   help="finite-dimensional weights sampled per n (default: all)")
    p.add_argument("--mutate", default=None, choices=["none"] + [m.value for m in Mutation])
    p.add_argument("--generic-count", dest="generic_count", type=int, default=20)
    p.add_argument("--singular-count", dest="singular_count", type=int, default=10)
    p.add_argument("--tags", type=int, default=3, help="basis tags sampled per instance")
    p.add_argument("--no-casimir", dest="no_casimir", action="store_true")
    return ap


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        cfg = config_from_args(args)
        with mutated(cfg.mutation):
            return COMMANDS[cfg.command](cfg)
    except InputError as e:
        print(f"gtmod: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GTModError as e:
        log.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
