"""Independent reference algorithms used to cross-check the main code paths.

None of these share code with the fixpoint or coend implementations: they
work on plain nested lists and integers.
"""

from __future__ import annotations

import math
from typing import Sequence


def warshall(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Reflexive-transitive closure of a 0/1 adjacency matrix."""
    n = len(adj)
    r = [[1 if i == j or adj[i][j] else 0 for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = 1
    return r


def floyd_warshall_capped(w: Sequence[Sequence[float]], cap: int) -> list[list[float]]:
    """All-pairs shortest paths with 0 on the diagonal and every finite
    distance clamped to ``cap``; ``math.inf`` marks a missing edge."""
    n = len(w)
    d = [[0 if i == j else w[i][j] for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return [[x if x == math.inf else min(x, cap) for x in row] for row in d]


def geometric_series(compose, join, base, m, bound: int):
    """``base v m.base v m.m.base v ...`` by explicit powers up to ``bound`` terms."""
    total = base
    power = base
    for _ in range(bound):
        power = compose(m, power)
        total = join(total, power)
    return total


def equivalence_classes(items, pairs) -> set[frozenset]:
    """Classes of the equivalence relation generated by ``pairs``, by
    repeated relational composition until the relation stops growing."""
    items = list(items)
    rel = {(x, x) for x in items}
    for a, b in pairs:
        rel.add((a, b))
        rel.add((b, a))
    while True:
        succ: dict = {}
        for a, b in rel:
            succ.setdefault(a, set()).add(b)
        new = {(a, c) for a, b in rel for c in succ[b]}
        if new <= rel:
            break
        rel |= new
    return {frozenset(b for a2, b in rel if a2 == a) for a in items}


def matrix_product(q, m: Sequence[Sequence[int]], n: Sequence[Sequence[int]]) -> list[list[int]]:
    """Triple-loop join-of-tensors product ``(m n)[i][j] = V_k m[i][k] (x) n[k][j]``
    on index tables, written without any shared helpers."""
    rows, inner, cols = len(m), len(n), len(n[0]) if n else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = q.bottom
            for k in range(inner):
                acc = q.join_table[acc][q.tensor_table[m[i][k]][n[k][j]]]
            row.append(acc)
        out.append(row)
    return out
