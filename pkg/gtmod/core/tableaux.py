"""Gelfand-Tsetlin tableaux, integer shift vectors and the tau involution."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

import networkx as nx

from .arith import Scalar, as_rational
from .errors import InputError

log = logging.getLogger(__name__)


class Position(NamedTuple):
    k: int
    i: int


def _check_n(n: int) -> int:
    if not isinstance(n, int) or n < 2:
        raise InputError(f"tableau size must be an integer n >= 2, got {n!r}")
    return n


def check_position(k: int, i: int, n: int) -> Position:
    if not (1 <= i <= k <= n):
        raise InputError(f"invalid position ({k},{i}) for n={n}")
    return Position(k, i)


def positions(n: int) -> Iterator[Position]:
    for k in range(1, n + 1):
        for i in range(1, k + 1):
            yield Position(k, i)


def phi_index(k: int, i: int, n: int) -> int:
    """Position of entry (k, i) in the enumeration x_1 = (n,n), x_2 = (n-1,n-1), ..."""
    check_position(k, i, n)
    return (k - i + 1) + (n - i) * (n - i + 1) // 2


def interlacing_relations(n: int) -> list[tuple[int, int, bool]]:
    """Standardness conditions as (t, s, strict): x_t - x_s in Z>=0 (or Z>0 if strict)."""
    out = []
    for k in range(2, n + 1):
        for i in range(1, k):
            out.append((phi_index(k, i, n), phi_index(k - 1, i, n), False))
            out.append((phi_index(k - 1, i, n), phi_index(k, i + 1, n), True))
    return out


def _is_int(q: Fraction) -> bool:
    return q.denominator == 1


# ---------- Tableaux ----------

# rows[k-1] holds row k; row n is the top row
@dataclass(frozen=True, order=True)
class Tableau:
    n: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        rows = tuple(tuple(as_rational(x) for x in row) for row in self.rows)
        if len(rows) != self.n or any(len(r) != k for k, r in enumerate(rows, start=1)):
            raise InputError(
                f"tableau of size {self.n} needs rows of lengths 1..{self.n}, "
                f"got {[len(r) for r in rows]}"
            )
        object.__setattr__(self, "rows", rows)
        # hashed once: tableaux key the action caches
        object.__setattr__(self, "_hash", hash((self.n, rows)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def from_top_rows(cls, rows: Iterable[Iterable[Scalar | str]]) -> Tableau:
        """Build from rows listed top (row n) first, the JSON order."""
        rows = [list(r) for r in rows]
        return cls(len(rows), tuple(tuple(r) for r in reversed(rows)))

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], Scalar]) -> Tableau:
        _check_n(n)
        try:
            return cls(n, tuple(tuple(entries[(k, i)] for i in range(1, k + 1)) for k in range(1, n + 1)))
        except KeyError as e:
            raise InputError(f"missing tableau entry {e.args[0]}") from None

    def __getitem__(self, pos: tuple[int, int]) -> Fraction:
        k, i = pos
        check_position(k, i, self.n)
        return self.rows[k - 1][i - 1]

    def row(self, k: int) -> tuple[Fraction, ...]:
        return self.rows[k - 1]

    @property
    def top_row(self) -> tuple[Fraction, ...]:
        return self.rows[-1]

    def top_rows(self) -> list[tuple[Fraction, ...]]:
        return list(reversed(self.rows))

    def entries(self) -> dict[Position, Fraction]:
        return {p: self.rows[p.k - 1][p.i - 1] for p in positions(self.n)}

    def with_entries(self, updates: Mapping[tuple[int, int], Scalar]) -> Tableau:
        e = self.entries()
        for (k, i), x in updates.items():
            check_position(k, i, self.n)
            e[Position(k, i)] = as_rational(x)
        return Tableau.from_entries(self.n, e)

    def __str__(self) -> str:
        return " ; ".join(",".join(str(x) for x in row) for row in self.top_rows())


# ---------- Shift vectors ----------

@dataclass(frozen=True, order=True)
class ShiftVector:
    """An element of Z^N_0: integer entries, top row identically zero."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        rows = tuple(tuple(self._as_int(x) for x in row) for row in self.rows)
        if len(rows) == self.n - 1:
            rows = rows + (tuple([0] * self.n),)
        if len(rows) != self.n or any(len(r) != k for k, r in enumerate(rows, start=1)):
            raise InputError(f"shift vector of size {self.n} has malformed rows")
        if any(rows[-1]):
            raise InputError("shift vectors must vanish on the top row")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", hash((self.n, rows)))

    def __hash__(self) -> int:
        return self._hash

    @staticmethod
    def _as_int(x: object) -> int:
        q = as_rational(x)
        if not _is_int(q):
            raise InputError(f"shift entries must be integers, got {x!r}")
        return int(q)

    @classmethod
    def zero(cls, n: int) -> ShiftVector:
        return cls(n, tuple(tuple([0] * k) for k in range(1, n + 1)))

    @classmethod
    def delta(cls, n: int, k: int, i: int) -> ShiftVector:
        check_position(k, i, n)
        if k == n:
            raise InputError("delta^{n,i} is not in Z^N_0 (top row is fixed)")
        return cls.zero(n).with_entries({(k, i): 1})

    @classmethod
    def from_top_rows(cls, rows: Iterable[Iterable[Scalar | str]]) -> ShiftVector:
        """Rows listed from row n-1 down to row 1 (the top row is implied zero)."""
        rows = [list(r) for r in rows]
        n = len(rows) + 1
        return cls(n, tuple(tuple(r) for r in reversed(rows)))

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], int]) -> ShiftVector:
        return cls(n, tuple(tuple(entries.get((k, i), 0) for i in range(1, k + 1)) for k in range(1, n + 1)))

    def __getitem__(self, pos: tuple[int, int]) -> int:
        k, i = pos
        check_position(k, i, self.n)
        return self.rows[k - 1][i - 1]

    def entries(self) -> dict[Position, int]:
        return {p: self.rows[p.k - 1][p.i - 1] for p in positions(self.n)}

    def with_entries(self, updates: Mapping[tuple[int, int], int]) -> ShiftVector:
        e = self.entries()
        for (k, i), x in updates.items():
            check_position(k, i, self.n)
            e[Position(k, i)] = x
        return ShiftVector.from_entries(self.n, e)

    def _combine(self, other: ShiftVector, sign: int) -> ShiftVector:
        if not isinstance(other, ShiftVector):
            return NotImplemented
        if other.n != self.n:
            raise InputError(f"shift size mismatch: {self.n} vs {other.n}")
        return ShiftVector(self.n, tuple(
            tuple(a + sign * b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        ))

    def __add__(self, other: ShiftVector) -> ShiftVector:
        return self._combine(other, 1)

    def __sub__(self, other: ShiftVector) -> ShiftVector:
        return self._combine(other, -1)

    def __neg__(self) -> ShiftVector:
        return ShiftVector(self.n, tuple(tuple(-a for a in r) for r in self.rows))

    def norm1(self) -> int:
        return sum(abs(a) for r in self.rows for a in r)

    def lower_rows(self) -> list[tuple[int, ...]]:
        """Rows n-1 .. 1, the JSON order."""
        return list(reversed(self.rows[:-1]))

    def __str__(self) -> str:
        return " ; ".join(",".join(str(x) for x in row) for row in self.lower_rows())


def apply_shift(v: Tableau, z: ShiftVector) -> Tableau:
    if v.n != z.n:
        raise InputError(f"size mismatch: tableau n={v.n}, shift n={z.n}")
    return Tableau(v.n, tuple(
        tuple(a + b for a, b in zip(rv, rz)) for rv, rz in zip(v.rows, z.rows)
    ))


# ---------- The singular pair and tau ----------

@dataclass(frozen=True, order=True)
class SingularPair:
    k: int
    i: int
    j: int

    def __post_init__(self) -> None:
        if not (1 <= self.i < self.j <= self.k):
            raise InputError(f"singular pair needs 1 <= i < j <= k, got {self.as_tuple()}")

    def validate_for(self, n: int) -> SingularPair:
        if self.k >= n:
            raise InputError(f"singular pair row k={self.k} must be below the top row n={n}")
        return self

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k, self.i, self.j)

    @property
    def first(self) -> Position:
        return Position(self.k, self.i)

    @property
    def second(self) -> Position:
        return Position(self.k, self.j)

    def tau(self, pos: tuple[int, int]) -> Position:
        p = Position(*pos)
        if p == self.first:
            return self.second
        if p == self.second:
            return self.first
        return p


def tau_apply(z: ShiftVector, pair: SingularPair) -> ShiftVector:
    pair.validate_for(z.n)
    a, b = z[pair.first], z[pair.second]
    return z.with_entries({pair.first: b, pair.second: a})


def tau_tableau(v: Tableau, pair: SingularPair) -> Tableau:
    pair.validate_for(v.n)
    a, b = v[pair.first], v[pair.second]
    return v.with_entries({pair.first: b, pair.second: a})


def is_tau_fixed(z: ShiftVector, pair: SingularPair) -> bool:
    return z[pair.first] == z[pair.second]


def critical_representative(v: Tableau, pair: SingularPair) -> tuple[Tableau, int]:
    """Return (v', m) with v'_{k,i} = v'_{k,j} and v = v' + m*delta^{k,i}."""
    pair.validate_for(v.n)
    diff = v[pair.first] - v[pair.second]
    if not _is_int(diff):
        raise InputError(f"entries {pair.first} and {pair.second} do not differ by an integer")
    m = int(diff)
    return v.with_entries({pair.first: v[pair.second]}), m


# ---------- Classification ----------

@dataclass(frozen=True)
class Classification:
    standard: bool
    generic: bool
    integral: bool
    singular_pairs: tuple[tuple[int, int, int], ...] = ()
    critical_pairs: tuple[tuple[int, int, int], ...] = ()
    integer_classes: tuple[tuple[int, tuple[int, ...]], ...] = field(default=())

    @property
    def singular(self) -> bool:
        return not self.generic

    @property
    def is_1_singular(self) -> bool:
        return len(self.singular_pairs) == 1

    @property
    def is_1_critical(self) -> bool:
        return len(self.critical_pairs) == 1


def is_standard(v: Tableau) -> bool:
    for k in range(2, v.n + 1):
        for i in range(1, k):
            a = v[k, i] - v[k - 1, i]
            b = v[k - 1, i] - v[k, i + 1]
            if not (_is_int(a) and a >= 0 and _is_int(b) and b > 0):
                return False
    return True


def _row_graph(v: Tableau, k: int) -> nx.Graph:
    g = nx.Graph()
    row = v.row(k)
    g.add_nodes_from(range(1, k + 1))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if _is_int(row[i - 1] - row[j - 1]):
                g.add_edge(i, j, critical=row[i - 1] == row[j - 1])
    return g


def classify(v: Tableau) -> Classification:
    singular: list[tuple[int, int, int]] = []
    critical: list[tuple[int, int, int]] = []
    classes: list[tuple[int, tuple[int, ...]]] = []
    for k in range(1, v.n):
        g = _row_graph(v, k)
        for i, j, data in sorted(g.edges(data=True)):
            singular.append((k, i, j))
            if data["critical"]:
                critical.append((k, i, j))
        for comp in sorted(nx.connected_components(g), key=min):
            if len(comp) > 1:
                classes.append((k, tuple(sorted(comp))))
    return Classification(
        standard=is_standard(v),
        generic=not singular,
        integral=all(_is_int(x) for x in v.entries().values()),
        singular_pairs=tuple(singular),
        critical_pairs=tuple(critical),
        integer_classes=tuple(classes),
    )

