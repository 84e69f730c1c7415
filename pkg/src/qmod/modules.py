"""Modules (profunctors) between quantale-enriched categories.

Direction convention: a module ``m: B -> A`` stores ``m(a, b)`` with rows
indexed by the *target* A and columns by the *source* B.  It is contravariant
in ``a`` and covariant in ``b``.  Composition is the coend, which over a
quantale is a join of tensors::

    (m . n)(a, c) = V_b  n(b, c) (x) m(a, b)

2-cells are entrywise inequalities; they are never stored as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .enriched import (
    QCategory,
    QFunctor,
    _read_matrix,
    coproduct,
    same_base,
    tensor_product,
)
from .errors import OK, BoundaryError, Verdict, Violation, fail
from .quantale import (
    QMatrix,
    first_difference,
    mat_compose,
    mat_first_excess,
    mat_join,
)


@dataclass(frozen=True)
class QModule:
    source: QCategory
    target: QCategory
    matrix: QMatrix

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise BoundaryError("module source and target have different bases")
        if self.matrix.rows != self.target.objects or self.matrix.cols != self.source.objects:
            raise BoundaryError("module matrix must be indexed (target objects) x (source objects)")

    @classmethod
    def from_ids(cls, source: QCategory, target: QCategory, entries) -> QModule:
        """Entries as a list of rows (target x source) or ``{a: {b: id}}``;
        missing entries default to bottom."""
        m = _read_matrix(source.base, target.objects, source.objects, entries, "module entries")
        return cls(source, target, m)

    @property
    def base(self):
        return self.source.base

    def __call__(self, a: str, b: str) -> str:
        return self.matrix.entry(self.base, a, b)

    def __repr__(self) -> str:
        return f"QModule({list(self.source.objects)} -> {list(self.target.objects)})"


def validate_module(m: QModule) -> Verdict:
    q = m.base
    J, T = q.join_table, q.tensor_table
    M = m.matrix.data
    HA, HB = m.target.hom.data, m.source.hom.data
    na, nb = len(m.target), len(m.source)
    out = []
    for a2, a, b in product(range(na), range(na), range(nb)):
        if J[T[HA[a2][a]][M[a][b]]][M[a2][b]] != M[a2][b]:
            out.append(Violation("left action: A(a',a) (x) m(a,b) <= m(a',b)",
                                 (m.target.objects[a2], m.target.objects[a], m.source.objects[b])))
            break
    for a, b, b2 in product(range(na), range(nb), range(nb)):
        if J[T[HB[b][b2]][M[a][b]]][M[a][b2]] != M[a][b2]:
            out.append(Violation("right action: B(b,b') (x) m(a,b) <= m(a,b')",
                                 (m.target.objects[a], m.source.objects[b], m.source.objects[b2])))
            break
    return Verdict(tuple(out)) if out else OK


def compose(m: QModule, n: QModule) -> QModule:
    """``m . n`` for ``n: C -> B`` and ``m: B -> A``."""
    if n.target != m.source:
        raise BoundaryError("cannot compose modules: target of n is not the source of m")
    return QModule(n.source, m.target, mat_compose(m.base, m.matrix, n.matrix))


def compose_all(*ms: QModule) -> QModule:
    """Right-to-left composite ``ms[0] . ms[1] . ... . ms[-1]``."""
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    return out


def identity_module(A: QCategory) -> QModule:
    return QModule(A, A, A.hom)


def zero_module(source: QCategory, target: QCategory) -> QModule:
    q = same_base(source, target)
    return QModule(source, target, QMatrix.constant(target.objects, source.objects, q.bottom))


def lower_star(f: QFunctor) -> QModule:
    """``f_*(a, b) = A(a, f b)``, a module ``B -> A``."""
    HA = f.target.hom.data
    p = f.positions
    m = QMatrix.build(f.target.objects, f.source.objects, lambda a, b: HA[a][p[b]])
    return QModule(f.source, f.target, m)


def upper_star(f: QFunctor) -> QModule:
    """``f^*(b, a) = A(f b, a)``, a module ``A -> B``."""
    HA = f.target.hom.data
    p = f.positions
    m = QMatrix.build(f.source.objects, f.target.objects, lambda b, a: HA[p[b]][a])
    return QModule(f.target, f.source, m)


def join_modules(m: QModule, n: QModule) -> QModule:
    if (m.source, m.target) != (n.source, n.target):
        raise BoundaryError("join needs parallel modules")
    return QModule(m.source, m.target, mat_join(m.base, m.matrix, n.matrix))


def leq_2cell(m: QModule, n: QModule) -> bool:
    if (m.source, m.target) != (n.source, n.target):
        raise BoundaryError("2-cells only exist between parallel modules")
    return mat_first_excess(m.base, m.matrix, n.matrix) is None


def compare(law: str, lhs: QModule, rhs: QModule) -> Verdict:
    """Entrywise equality of two parallel modules, with the first differing entry."""
    if (lhs.source, lhs.target) != (rhs.source, rhs.target):
        return fail(law, (), "sides have different boundaries")
    d = first_difference(lhs.matrix, rhs.matrix)
    if d is None:
        return OK
    q = lhs.base
    return fail(law, d, f"lhs={lhs.matrix.entry(q, *d)} rhs={rhs.matrix.entry(q, *d)}")


def compare_leq(law: str, lhs: QModule, rhs: QModule) -> Verdict:
    d = mat_first_excess(lhs.base, lhs.matrix, rhs.matrix)
    if d is None:
        return OK
    q = lhs.base
    return fail(law, d, f"lhs={lhs.matrix.entry(q, *d)} not <= rhs={rhs.matrix.entry(q, *d)}")


def check_adjunction(m: QModule, r: QModule) -> Verdict:
    """Posetal adjunction ``m -| r`` for ``m: B -> A`` and ``r: A -> B``.

    Unit ``1_B <= r . m`` and counit ``m . r <= 1_A``; the triangle
    identities hold automatically when hom-categories are posets.
    """
    if m.source != r.target or m.target != r.source:
        raise BoundaryError("adjunction check needs modules with opposite boundaries")
    return (compare_leq("adjunction unit: 1_B <= r.m", identity_module(m.source), compose(r, m))
            + compare_leq("adjunction counit: m.r <= 1_A", compose(m, r), identity_module(m.target)))


def module_tensor(m: QModule, n: QModule) -> QModule:
    """``(m (x) n)((a,a'), (b,b')) = m(a,b) (x) n(a',b')``."""
    q = same_base(m, n)
    T = q.tensor_table
    M, N = m.matrix.data, n.matrix.data
    src = tensor_product(m.source, n.source)
    tgt = tensor_product(m.target, n.target)
    na2, nb2 = len(n.target), len(n.source)
    mat = QMatrix.build(tgt.objects, src.objects,
                        lambda i, j: T[M[i // na2][j // nb2]][N[i % na2][j % nb2]])
    return QModule(src, tgt, mat)


def direct_sum(m: QModule, n: QModule) -> QModule:
    """Block-diagonal module ``B + B' -> A + A'`` with bottom cross blocks."""
    q = same_base(m, n)
    src, _, _ = coproduct(m.source, n.source)
    tgt, _, _ = coproduct(m.target, n.target)
    M, N = m.matrix.data, n.matrix.data
    ra, cb = len(m.target), len(m.source)

    def entry(i, j):
        if i < ra and j < cb:
            return M[i][j]
        if i >= ra and j >= cb:
            return N[i - ra][j - cb]
        return q.bottom

    return QModule(src, tgt, QMatrix.build(tgt.objects, src.objects, entry))


def block(m: QModule, rows: QFunctor, cols: QFunctor) -> QModule:
    """The block ``rows^* . m . cols_*`` of a module between coproducts,
    read off directly as a sub-matrix."""
    M = m.matrix.data
    pr, pc = rows.positions, cols.positions
    mat = QMatrix.build(rows.source.objects, cols.source.objects, lambda i, j: M[pr[i]][pc[j]])
    return QModule(cols.source, rows.source, mat)


def direct_sum_check(A: QCategory, B: QCategory) -> Verdict:
    """Injections into ``A + B`` form a direct sum in Q-Mod.

    Units of ``in_* -| in^*`` are identities, the counits jointly cover
    the identity of ``A + B``, and cross composites vanish.
    """
    S, i0, j0 = coproduct(A, B)
    i_lo, i_up = lower_star(i0), upper_star(i0)
    j_lo, j_up = lower_star(j0), upper_star(j0)
    return (
        compare("direct sum: 1_A = i0^* . i0_*", identity_module(A), compose(i_up, i_lo))
        + compare("direct sum: 1_B = j0^* . j0_*", identity_module(B), compose(j_up, j_lo))
        + compare("direct sum: i0_* . i0^* v j0_* . j0^* = 1_{A+B}",
                  join_modules(compose(i_lo, i_up), compose(j_lo, j_up)), identity_module(S))
        + compare("direct sum: i0^* . j0_* = 0", compose(i_up, j_lo), zero_module(B, A))
        + compare("direct sum: j0^* . i0_* = 0", compose(j_up, i_lo), zero_module(A, B))
    )


def relabel_module(m: QModule, source: QCategory, target: QCategory) -> QModule:
    """Same matrix, re-indexed by categories with the same hom data."""
    return QModule(source, target, m.matrix.with_labels(target.objects, source.objects))
