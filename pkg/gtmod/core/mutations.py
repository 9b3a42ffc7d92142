"""Seeded formula mutations that the verification suites must catch."""
from __future__ import annotations

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from enum import Enum
from typing import Iterator

from .errors import InputError

log = logging.getLogger(__name__)


class Mutation(str, Enum):
    SIGN_E12 = "sign-e12"              # flip the sign of the E_{k,k+1} coefficients
    GAMMA_SHIFT = "gamma-shift"        # drop the +m-1 inside gamma_{m,t}
    P_MINUS_FACTOR = "p-minus-factor"  # drop the last factor of p^-_{k,i}
    TAU_ORIENTATION = "tau-orientation"  # fold A(z) with the opposite orientation

    @classmethod
    def parse(cls, name: str | None) -> Mutation | None:
        if name is None or name == "none":
            return None
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(m.value for m in cls)
            raise InputError(f"unknown mutation {name!r} (known: {known})") from None


_active: ContextVar[Mutation | None] = ContextVar("gtmod_mutation", default=None)


@contextmanager
def mutated(mutation: Mutation | None) -> Iterator[Mutation | None]:
    token = _active.set(mutation)
    if mutation is not None:
        log.info("formula mutation %s active", mutation.value)
    try:
        yield mutation
    finally:
        _active.reset(token)


def active_mutation() -> Mutation | None:
    return _active.get()


def is_active(mutation: Mutation) -> bool:
    return _active.get() is mutation
