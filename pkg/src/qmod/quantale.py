"""Finite commutative unital quantales as explicit tables, and matrices over them.

Elements are opaque string ids.  Internally every table and every matrix
stores element *indices* into ``Quantale.elements``; the order is derived
from the join table (``x <= y`` iff ``x v y == y``) and bottom is the
identity of join.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import OK, BoundaryError, InputError, Verdict, Violation

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Quantale:
    elements: tuple[str, ...]
    join_table: Table
    tensor_table: Table
    unit: int
    name: str = field(default="", compare=False)

    @classmethod
    def from_tables(
        cls,
        elements: Sequence[str],
        join,
        tensor,
        unit: str,
        name: str = "",
    ) -> Quantale:
        """Build from id-valued tables.

        ``join`` and ``tensor`` are either square lists of ids (row/column order
        = ``elements``) or nested mappings ``{x: {y: x op y}}``.  Missing entries
        raise :class:`InputError`; law failures are left to :func:`validate_quantale`.
        """
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise InputError(f"duplicate element ids in {elements!r}")
        if not elements:
            raise InputError("a quantale needs at least one element")
        pos = {e: i for i, e in enumerate(elements)}

        def lookup(v, where):
            try:
                return pos[str(v)]
            except KeyError:
                raise InputError(f"unknown element {v!r} in {where}") from None

        def read(tab, label) -> Table:
            rows = []
            for i, x in enumerate(elements):
                if isinstance(tab, Mapping):
                    row = tab.get(x)
                    if row is None:
                        raise InputError(f"{label} table: missing row {x!r}")
                    try:
                        cells = [row[y] for y in elements]
                    except KeyError as e:
                        raise InputError(f"{label} table: missing entry ({x!r}, {e.args[0]!r})") from None
                else:
                    if i >= len(tab) or len(tab[i]) != len(elements):
                        raise InputError(f"{label} table: row {x!r} has the wrong length")
                    cells = tab[i]
                rows.append(tuple(lookup(c, f"{label} table") for c in cells))
            if not isinstance(tab, Mapping) and len(tab) != len(elements):
                raise InputError(f"{label} table has {len(tab)} rows, expected {len(elements)}")
            return tuple(rows)

        return cls(elements, read(join, "join"), read(tensor, "tensor"), lookup(unit, "unit"), name)

    # -- index level -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, x: str) -> int:
        try:
            return self._pos[x]
        except KeyError:
            raise InputError(f"unknown element {x!r} of quantale {self.name or self.elements!r}") from None

    @cached_property
    def bottom(self) -> int:
        J = self.join_table
        n = len(self.elements)
        for b in range(n):
            if all(J[b][x] == x for x in range(n)):
                return b
        raise InputError("join table has no identity element (no bottom)")

    @cached_property
    def top(self) -> int:
        return self.join_idx(range(len(self.elements)))

    def leq_idx(self, x: int, y: int) -> bool:
        return self.join_table[x][y] == y

    def join_idx(self, xs: Iterable[int]) -> int:
        J = self.join_table
        acc = self.bottom
        for x in xs:
            acc = J[acc][x]
        return acc

    @cached_property
    def down_sets(self) -> tuple[tuple[int, ...], ...]:
        """``down_sets[x]`` lists every element below ``x``."""
        n = len(self.elements)
        return tuple(tuple(y for y in range(n) if self.leq_idx(y, x)) for x in range(n))

    @cached_property
    def height(self) -> int:
        """Length of the longest strictly increasing chain (number of steps)."""
        n = len(self.elements)
        order = sorted(range(n), key=lambda x: len(self.down_sets[x]))
        depth = [0] * n
        for x in order:
            depth[x] = max((depth[y] + 1 for y in self.down_sets[x] if y != x), default=0)
        return max(depth)

    # -- id level ------------------------------------------------------------

    def leq(self, x: str, y: str) -> bool:
        return self.leq_idx(self.index(x), self.index(y))

    def join(self, x: str, y: str) -> str:
        return self.elements[self.join_table[self.index(x)][self.index(y)]]

    def join_all(self, xs: Iterable[str]) -> str:
        return self.elements[self.join_idx(self.index(x) for x in xs)]

    def tensor(self, x: str, y: str) -> str:
        return self.elements[self.tensor_table[self.index(x)][self.index(y)]]

    @property
    def bottom_id(self) -> str:
        return self.elements[self.bottom]

    @property
    def unit_id(self) -> str:
        return self.elements[self.unit]

    def __repr__(self) -> str:
        return f"Quantale({self.name or '<table>'}, {len(self.elements)} elements)"


def leq(q: Quantale, x: str, y: str) -> bool:
    return q.leq(x, y)


def join_all(q: Quantale, xs: Iterable[str]) -> str:
    return q.join_all(xs)


def tensor(q: Quantale, x: str, y: str) -> str:
    return q.tensor(x, y)


def validate_quantale(q: Quantale) -> Verdict:
    """Exhaustively check the quantale laws over the finite carrier.

    Distributivity is checked over the empty join and all binary joins, which
    together with associativity of join covers every finite subset.  Each
    violated law is reported once, with its first witness (as element ids).
    """
    n = len(q.elements)
    E = q.elements
    J, T, u = q.join_table, q.tensor_table, q.unit
    found: dict[str, Violation] = {}

    def bad(law, *idx):
        if law not in found:
            found[law] = Violation(law, tuple(E[i] for i in idx))

    for x in range(n):
        if J[x][x] != x:
            bad("join idempotent", x)
        if T[u][x] != x or T[x][u] != x:
            bad("tensor unit", x)
    for x, y in product(range(n), repeat=2):
        if J[x][y] != J[y][x]:
            bad("join commutative", x, y)
        if T[x][y] != T[y][x]:
            bad("tensor commutative", x, y)
    for x, y, z in product(range(n), repeat=3):
        if J[J[x][y]][z] != J[x][J[y][z]]:
            bad("join associative", x, y, z)
        if T[T[x][y]][z] != T[x][T[y][z]]:
            bad("tensor associative", x, y, z)
        if T[x][J[y][z]] != J[T[x][y]][T[x][z]]:
            bad("tensor distributes over join", x, y, z)

    bottoms = [b for b in range(n) if all(J[b][x] == x for x in range(n))]
    if not bottoms:
        found["bottom exists"] = Violation("bottom exists", ())
    else:
        b = bottoms[0]
        for x in range(n):
            if T[x][b] != b:
                bad("tensor preserves empty join", x, b)
                break
    return Verdict(tuple(found.values())) if found else OK


# -- built-in instances -------------------------------------------------------

def boolean() -> Quantale:
    return Quantale(
        ("0", "1"),
        ((0, 1), (1, 1)),
        ((0, 0), (0, 1)),
        1,
        "bool",
    )


def chain(k: int) -> Quantale:
    """The chain 0 < 1 < ... < k-1 with tensor = min and unit = top."""
    if k < 2:
        raise InputError(f"chain:k needs k >= 2, got {k}")
    r = range(k)
    return Quantale(
        tuple(str(i) for i in r),
        tuple(tuple(max(i, j) for j in r) for i in r),
        tuple(tuple(min(i, j) for j in r) for i in r),
        k - 1,
        f"chain:{k}",
    )


def minplus(cap: int) -> Quantale:
    """Capped min-plus (tropical) quantale on {0..cap, inf}.

    Join is numeric min (so bottom is ``inf`` and the unit ``0`` is top);
    tensor is ``min(a + b, cap)`` with ``inf`` absorbing.
    """
    if cap < 1:
        raise InputError(f"minplus:cap needs cap >= 1, got {cap}")
    inf = cap + 1
    vals = list(range(cap + 1)) + [inf]

    def plus(a, b):
        return inf if inf in (a, b) else min(a + b, cap)

    return Quantale(
        tuple(str(v) for v in range(cap + 1)) + ("inf",),
        tuple(tuple(min(a, b) for b in vals) for a in vals),
        tuple(tuple(plus(a, b) for b in vals) for a in vals),
        0,
        f"minplus:{cap}",
    )


def diamond() -> Quantale:
    """The four-element Boolean lattice 0 < a, b < 1 with tensor = meet."""
    els = ("0", "a", "b", "1")
    bits = (0b00, 0b01, 0b10, 0b11)
    idx = {v: i for i, v in enumerate(bits)}
    return Quantale(
        els,
        tuple(tuple(idx[x | y] for y in bits) for x in bits),
        tuple(tuple(idx[x & y] for y in bits) for x in bits),
        3,
        "diamond",
    )


_BUILTIN = re.compile(r"^(bool|diamond|chain:(\d+)|minplus:(\d+))$")


def builtin_quantale(name: str) -> Quantale:
    m = _BUILTIN.match(name)
    if not m:
        raise InputError(f"unknown built-in quantale {name!r}")
    if name == "bool":
        return boolean()
    if name == "diamond":
        return diamond()
    if m.group(2) is not None:
        return chain(int(m.group(2)))
    return minplus(int(m.group(3)))


def is_builtin_name(name: str) -> bool:
    return bool(_BUILTIN.match(name))


# -- matrices -----------------------------------------------------------------

@dataclass(frozen=True)
class QMatrix:
    """A total matrix of element indices on named row and column index sets."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    data: Table

    def __post_init__(self):
        if len(self.data) != len(self.rows) or any(len(r) != len(self.cols) for r in self.data):
            raise BoundaryError(
                f"matrix data shape does not match {len(self.rows)}x{len(self.cols)} index sets"
            )

    @classmethod
    def constant(cls, rows, cols, value: int) -> QMatrix:
        return cls(tuple(rows), tuple(cols), tuple(tuple(value for _ in cols) for _ in rows))

    @classmethod
    def build(cls, rows, cols, fn) -> QMatrix:
        """``fn(i, j)`` gives the entry at row position i, column position j."""
        rows, cols = tuple(rows), tuple(cols)
        return cls(rows, cols, tuple(tuple(fn(i, j) for j in range(len(cols))) for i in range(len(rows))))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in self.cols))

    def with_labels(self, rows, cols) -> QMatrix:
        return QMatrix(tuple(rows), tuple(cols), self.data)

    def entry(self, q: Quantale, r: str, c: str) -> str:
        return q.elements[self.data[self.rows.index(r)][self.cols.index(c)]]

    def as_ids(self, q: Quantale) -> list[list[str]]:
        return [[q.elements[v] for v in row] for row in self.data]


def mat_compose(q: Quantale, m: QMatrix, n: QMatrix) -> QMatrix:
    """Join-of-tensors product: ``(m . n)(a, c) = V_b n(b, c) (x) m(a, b)``."""
    if m.cols != n.rows:
        raise BoundaryError(f"cannot compose: inner index sets {m.cols!r} and {n.rows!r} differ")
    J, T, bot = q.join_table, q.tensor_table, q.bottom
    inner = range(len(m.cols))
    ndata = n.data
    out = []
    for mrow in m.data:
        row = []
        for c in range(len(n.cols)):
            acc = bot
            for b in inner:
                acc = J[acc][T[ndata[b][c]][mrow[b]]]
            row.append(acc)
        out.append(tuple(row))
    return QMatrix(m.rows, n.cols, tuple(out))


def _check_same_shape(m: QMatrix, n: QMatrix) -> None:
    if m.rows != n.rows or m.cols != n.cols:
        raise BoundaryError("matrices are indexed by different sets")


def mat_join(q: Quantale, m: QMatrix, n: QMatrix) -> QMatrix:
    _check_same_shape(m, n)
    J = q.join_table
    return QMatrix(m.rows, m.cols, tuple(
        tuple(J[x][y] for x, y in zip(mr, nr)) for mr, nr in zip(m.data, n.data)
    ))


def mat_map(m: QMatrix, table: Sequence[int]) -> QMatrix:
    return QMatrix(m.rows, m.cols, tuple(tuple(table[x] for x in row) for row in m.data))


def mat_first_excess(q: Quantale, m: QMatrix, n: QMatrix) -> tuple[str, str] | None:
    """First ``(row, col)`` where ``m`` is not below ``n``, or None if ``m <= n``."""
    _check_same_shape(m, n)
    J = q.join_table
    for i, (mr, nr) in enumerate(zip(m.data, n.data)):
        for j, (x, y) in enumerate(zip(mr, nr)):
            if J[x][y] != y:
                return m.rows[i], m.cols[j]
    return None


def mat_leq(q: Quantale, m: QMatrix, n: QMatrix) -> bool:
    return mat_first_excess(q, m, n) is None


def first_difference(m: QMatrix, n: QMatrix) -> tuple[str, str] | None:
    _check_same_shape(m, n)
    for i, (mr, nr) in enumerate(zip(m.data, n.data)):
        for j, (x, y) in enumerate(zip(mr, nr)):
            if x != y:
                return m.rows[i], m.cols[j]
    return None


def identity_matrix(q: Quantale, index: Sequence[str]) -> QMatrix:
    """Unit on the diagonal, bottom elsewhere (the hom matrix of a discrete category)."""
    return QMatrix.build(index, index, lambda i, j: q.unit if i == j else q.bottom)


def kleene_ascent(q: Quantale, m: QMatrix, base: QMatrix) -> tuple[QMatrix, int]:
    """Iterate ``S <- base v m.S`` from ``S = base`` until stable.

    Returns the fixpoint and the number of iterations that changed ``S``.
    """
    if m.rows != m.cols:
        raise BoundaryError(f"star needs a square matrix, got {m.shape}")
    if base.rows != m.rows or base.cols != m.cols:
        raise BoundaryError("star base and matrix are indexed by different sets")
    s = base
    steps = 0
    while True:
        nxt = mat_join(q, base, mat_compose(q, m, s))
        if nxt == s:
            return s, steps
        s = nxt
        steps += 1


def matrix_star(q: Quantale, m: QMatrix, base: QMatrix) -> QMatrix:
    """Least ``S`` with ``S = base v (m . S)``; the geometric series of ``m`` over ``base``."""
    return kleene_ascent(q, m, base)[0]
