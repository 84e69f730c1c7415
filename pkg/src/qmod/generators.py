"""Seeded random instances that always pass their validators.

Every generator takes a ``random.Random``; callers derive one per case from
a string seed such as ``f"{suite}:{seed}:{case}"`` so that a case can be
reproduced in isolation and in any order.

Categories and modules are produced by *repair*: draw an arbitrary matrix,
then join-close it (categories under composition, modules under both
actions).  Rejection sampling almost never succeeds beyond two objects.
"""

from __future__ import annotations

import random
from itertools import product

from .collage import collage
from .enriched import QCategory, QFunctor, validate_functor
from .errors import InputError
from .homodular import PushoutSquare, square_from_modules
from .intcon import IntMorphism, IntObject
from .modules import QModule, compose, identity_module
from .quantale import QMatrix, Quantale, identity_matrix, matrix_star
from .setmod import FinCategory, FinFunctor, SetModule, identity_finfunctor


def _element(rng: random.Random, q: Quantale, sparsity: float = 0.45) -> int:
    if rng.random() < sparsity:
        return q.bottom
    return rng.randrange(len(q))


def _object_ids(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


def random_matrix(rng: random.Random, q: Quantale, rows, cols, sparsity: float = 0.45) -> QMatrix:
    return QMatrix.build(rows, cols, lambda i, j: _element(rng, q, sparsity))


def close_category(q: Quantale, raw: QMatrix) -> QMatrix:
    """Least hom matrix above ``raw`` containing the unit on the diagonal and
    closed under composition."""
    return matrix_star(q, raw, identity_matrix(q, raw.rows))


def random_category(rng: random.Random, q: Quantale, max_objects: int = 4, min_objects: int = 1,
                    prefix: str | None = None) -> QCategory:
    n = rng.randint(min_objects, max_objects)
    prefix = prefix if prefix is not None else rng.choice("abcdpqxyz")
    objs = _object_ids(prefix, n)
    raw = random_matrix(rng, q, objs, objs)
    return QCategory(q, objs, close_category(q, raw))


def close_module(m: QModule) -> QModule:
    """Least module above an arbitrary matrix: ``1_A . m . 1_B``."""
    return compose(identity_module(m.target), compose(m, identity_module(m.source)))


def random_module(rng: random.Random, source: QCategory, target: QCategory, sparsity: float = 0.55) -> QModule:
    raw = QModule(source, target, random_matrix(rng, source.base, target.objects, source.objects, sparsity))
    return close_module(raw)


def random_below(rng: random.Random, q: Quantale, x: int) -> int:
    return rng.choice(q.down_sets[x])


def random_functor(rng: random.Random, target: QCategory, max_objects: int = 4,
                   prefix: str = "s") -> QFunctor:
    """A random category with a functor into ``target``.

    Object images are drawn first; source homs are drawn below the pulled-back
    target homs and then closed, which keeps them below.
    """
    q = target.base
    if not target.objects:
        raise InputError("no functor into an empty category from a nonempty one")
    n = rng.randint(1, max_objects)
    objs = _object_ids(prefix, n)
    images = tuple(rng.choice(target.objects) for _ in objs)
    p = [target.position(t) for t in images]
    H = target.hom.data
    raw = QMatrix.build(objs, objs, lambda i, j: random_below(rng, q, H[p[i]][p[j]]))
    src = QCategory(q, objs, close_category(q, raw))
    return QFunctor(src, target, images)


def random_functor_between(rng: random.Random, source: QCategory, target: QCategory,
                           tries: int = 50) -> QFunctor | None:
    """Try random object maps until one satisfies the functor inequality."""
    for _ in range(tries):
        f = QFunctor(source, target, tuple(rng.choice(target.objects) for _ in source.objects))
        if validate_functor(f):
            return f
    return None


def random_extension(rng: random.Random, C: QCategory, max_extra: int = 2, prefix: str = "e") -> QFunctor:
    """An identity-on-objects functor from ``C`` into a random category with
    up to ``max_extra`` further objects whose homs lie above those of ``C``."""
    q = C.base
    extra = _object_ids(prefix, rng.randint(0, max_extra))
    objs = tuple(C.objects) + extra
    n = len(C)
    H = C.hom.data
    raw = QMatrix.build(objs, objs, lambda i, j: q.join_table[H[i][j]][_element(rng, q, 0.7)]
                        if i < n and j < n else _element(rng, q))
    B = QCategory(q, objs, close_category(q, raw))
    return QFunctor(C, B, tuple(C.objects))


def random_composable_functors(rng: random.Random, q: Quantale, max_objects: int = 4):
    """``g: B -> A`` and ``f: C -> B`` with random categories."""
    A = random_category(rng, q, max_objects, prefix="a")
    g = random_functor(rng, A, max_objects, prefix="b")
    f = random_functor(rng, g.source, max_objects, prefix="c")
    return g, f


def random_sieve(rng: random.Random, q: Quantale, max_objects: int = 4):
    """A category ``X`` (a random collage) and a sieve in it."""
    A = random_category(rng, q, max_objects, prefix="a")
    B = random_category(rng, q, max_objects, prefix="b")
    c = collage(random_module(rng, B, A))
    return c.total, c.i.object_map


def random_square(rng: random.Random, q: Quantale, max_objects: int = 4) -> PushoutSquare:
    A = random_category(rng, q, max_objects, prefix="a")
    B = random_category(rng, q, max_objects, prefix="b")
    C = random_category(rng, q, max_objects, prefix="c")
    return square_from_modules(random_module(rng, B, A), random_module(rng, A, C))


def random_int_object(rng: random.Random, q: Quantale, max_objects: int = 3, allow_empty: bool = True) -> IntObject:
    lo = 0 if allow_empty else 1
    X = random_category(rng, q, max_objects, lo, prefix="x")
    U = random_category(rng, q, max_objects, lo, prefix="u")
    return IntObject(X, U)


def random_int_morphism(rng: random.Random, src: IntObject, tgt: IntObject) -> IntMorphism:
    X, U, Y, V = src.pos, src.neg, tgt.pos, tgt.neg
    return IntMorphism(src, tgt, random_module(rng, X, Y), random_module(rng, V, Y),
                       random_module(rng, X, U), random_module(rng, V, U))


def random_digraph(rng: random.Random, q: Quantale, n: int, sparsity: float = 0.6) -> QMatrix:
    objs = _object_ids("n", n)
    return random_matrix(rng, q, objs, objs, sparsity)



# -- finite-set categories and modules ------------------------------------------

def random_concrete_category(rng: random.Random, max_objects: int = 3, max_hom: int = 3,
                             tries: int = 200) -> FinCategory:
    """A subcategory of finite sets: objects carry a size in {1, 2}, morphisms
    are functions (``"o0>o1:01"`` sends 0 to 0 and 1 to 1), closed under
    composition, with every hom set holding at most ``max_hom`` elements."""
    for _ in range(tries):
        n = rng.randint(1, max_objects)
        sizes = [rng.randint(1, 2) for _ in range(n)]
        objs = _object_ids("o", n)
        fns = {(i, i, tuple(range(sizes[i]))) for i in range(n)}
        for _ in range(rng.randint(0, n + 1)):
            s, t = rng.randrange(n), rng.randrange(n)
            fns.add((s, t, tuple(rng.randrange(sizes[t]) for _ in range(sizes[s]))))
        frontier = set(fns)
        while frontier:
            new = set()
            for (s, t, f), (s2, t2, g) in product(fns, repeat=2):
                if t == s2:
                    h = (s, t2, tuple(g[v] for v in f))
                    if h not in fns:
                        new.add(h)
            fns |= new
            frontier = new
        homs: dict = {}
        for s, t, f in fns:
            homs.setdefault((objs[s], objs[t]), []).append(f"{objs[s]}>{objs[t]}:{''.join(map(str, f))}")
        if max(len(v) for v in homs.values()) > max_hom:
            continue
        homs = {k: tuple(sorted(v)) for k, v in homs.items()}
        ident = {objs[i]: f"{objs[i]}>{objs[i]}:{''.join(map(str, range(sizes[i])))}" for i in range(n)}
        comp = {}
        for (s, t, f), (s2, t2, g) in product(fns, repeat=2):
            if t == s2:
                comp[(f"{objs[s2]}>{objs[t2]}:{''.join(map(str, g))}",
                      f"{objs[s]}>{objs[t]}:{''.join(map(str, f))}")] = \
                    f"{objs[s]}>{objs[t2]}:{''.join(str(g[v]) for v in f)}"
        return FinCategory.build(objs, homs, ident, comp)
    raise InputError("could not draw a small concrete category")


def full_fin_subcategory(D: FinCategory, objs) -> FinCategory:
    objs = tuple(objs)
    keep = set(objs)
    homs = {(a, b): D.homs[(a, b)] for a in objs for b in objs}
    comp = {(g, f): h for (g, f), h in D.comp.items()
            if D.dom(f) in keep and D.cod(f) in keep and D.cod(g) in keep}
    return FinCategory.build(objs, homs, {a: D.identities[a] for a in objs}, comp)


def fin_inclusion(D: FinCategory, sub: FinCategory) -> FinFunctor:
    return FinFunctor(sub, D, {a: a for a in sub.objects}, {f: f for f in sub.morphisms()})


def restricted_hom_module(D: FinCategory, A: FinCategory, B: FinCategory) -> SetModule:
    elements = {(a, b): D.homs[(a, b)] for a in A.objects for b in B.objects}
    left, right = {}, {}
    for (a, b), xs in elements.items():
        for x in xs:
            for alpha in A.morphisms():
                if A.cod(alpha) == a:
                    left[(alpha, x)] = D.compose(x, alpha)
            for beta in B.morphisms():
                if B.dom(beta) == b:
                    right[(x, beta)] = D.compose(beta, x)
    return SetModule(B, A, elements, left, right, {x: x for xs in elements.values() for x in xs})


def random_subset(rng: random.Random, objs, min_size: int = 1):
    k = rng.randint(min_size, len(objs))
    return tuple(sorted(rng.sample(list(objs), k)))


def random_restricted_chain(rng: random.Random, length: int, max_objects: int = 3):
    """Composable modules ``m_1: C_1 -> C_0, ..., m_k: C_k -> C_{k-1}`` restricted
    from one concrete category; returned in composition order ``m_1, m_2, ...``."""
    D = random_concrete_category(rng, max_objects)
    cats = [full_fin_subcategory(D, random_subset(rng, D.objects)) for _ in range(length + 1)]
    return [restricted_hom_module(D, cats[i], cats[i + 1]) for i in range(length)]


def free_dag_category(edges, objects) -> FinCategory:
    """Free category on a DAG; ``edges`` are ``(name, src, tgt)``.  A path is
    named by its edges, last first, joined with ``"."``; identities are ``"1_x"``."""
    objects = tuple(objects)
    out = {(o, o): [f"1_{o}"] for o in objects}
    ends = {f"1_{o}": (o, o) for o in objects}
    seq = {f"1_{o}": () for o in objects}
    frontier = [((), o, o) for o in objects]
    while frontier:
        nxt = []
        for p, s, t in frontier:
            for name, a, b in edges:
                if a == t:
                    q = (name,) + p
                    pid = ".".join(q)
                    out.setdefault((s, b), []).append(pid)
                    ends[pid] = (s, b)
                    seq[pid] = q
                    nxt.append((q, s, b))
        frontier = nxt
    by_seq = {v: k for k, v in seq.items()}
    comp = {}
    for g, (gs, gt) in ends.items():
        for f, (fs, ft) in ends.items():
            if ft == gs:
                comp[(g, f)] = by_seq[seq[g] + seq[f]] if seq[g] + seq[f] else f"1_{fs}"
    return FinCategory.build(objects, {k: tuple(v) for k, v in out.items()},
                             {o: f"1_{o}" for o in objects}, comp)


def _fn_image(D: FinCategory, B: FinCategory, obj_map, edge_img, path: str) -> str:
    s, _ = B.ends[path]
    if path.startswith("1_"):
        return D.identities[obj_map[s]]
    acc = None
    for e in reversed(path.split(".")):
        acc = edge_img[e] if acc is None else D.compose(edge_img[e], acc)
    return acc


def random_finfunctor(rng: random.Random, A: FinCategory, max_objects: int = 3,
                      max_hom: int = 3, tries: int = 100) -> FinFunctor:
    """A free DAG category with a functor into ``A``: objects land anywhere,
    edges pick any morphism with matching endpoints (the edge is dropped when
    there is none)."""
    for _ in range(tries):
        n = rng.randint(1, max_objects)
        objs = _object_ids("b", n)
        obj_map = {o: rng.choice(A.objects) for o in objs}
        edges, edge_img = [], {}
        for s in range(n):
            for t in range(s + 1, n):
                for k in range(rng.choice((0, 0, 1, 1, 2))):
                    cands = A.homs[(obj_map[objs[s]], obj_map[objs[t]])]
                    if cands:
                        name = f"e{s}{t}{k}"
                        edges.append((name, objs[s], objs[t]))
                        edge_img[name] = rng.choice(cands)
        B = free_dag_category(edges, objs)
        if max(len(v) for v in B.homs.values()) > max_hom:
            continue
        mor = {p: _fn_image(A, B, obj_map, edge_img, p) for p in B.morphisms()}
        return FinFunctor(B, A, obj_map, mor)
    raise InputError("could not draw a small functor")


def random_set_functor(rng: random.Random, max_objects: int = 3) -> FinFunctor:
    """Mix of free-category functors, identities and full inclusions."""
    A = random_concrete_category(rng, max_objects)
    r = rng.random()
    if r < 0.15:
        return identity_finfunctor(A)
    if r < 0.35:
        return fin_inclusion(A, full_fin_subcategory(A, random_subset(rng, A.objects)))
    return random_finfunctor(rng, A, max_objects)
