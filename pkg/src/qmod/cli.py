"""Command line entry point.

Exit status: 0 when every checked law holds, 1 when some law fails (a
counterexample is printed), 2 for unreadable or ill-formed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .claims import check_claims
from .collage import check_collage, check_coslice, check_sieve_pushout, collage, coslice, is_sieve, sieve_pushout
from .document import Document, emit, load, to_json, validate_document
from .enriched import QCategory, full_subcategory
from .errors import InputError, QmodError, Verdict
from .homodular import builtin_hom, check_H1, extend, extend_closed_form
from .intcon import check_snake, compare_int, int_compose, int_identity
from .modules import QModule, check_adjunction, compare, compose, lower_star, upper_star
from .quantale import builtin_quantale, matrix_star
from .suites import INT_QUANTALES, QUANTALES, SUITES, Report, Suite, run_suite, select


class Run:
    """Collects law verdicts and suite reports for one invocation."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out if out is not None else sys.stdout
        self.records: list[dict] = []
        self.failed = False

    def verdict(self, label: str, v: Verdict):
        ok = bool(v)
        self.failed |= not ok
        rec = {"check": label, "ok": ok}
        if not ok:
            w = v.first
            rec.update(law=w.law, witness=list(w.witness), detail=w.detail)
        self.records.append(rec)
        if self.fmt == "text":
            print(f"{'PASS' if ok else 'FAIL'} {label}", file=self.out)
            if not ok:
                print(f"    counterexample: {w.law} at {tuple(w.witness)}"
                      + (f"; {w.detail}" if w.detail else ""), file=self.out)

    def report(self, r: Report):
        self.failed |= not r.ok
        self.records.append(r.as_dict())
        if self.fmt == "text":
            print(r.line(), file=self.out)

    def finish(self, doc: Document | None = None, output: str | None = None, pretty=None) -> int:
        if doc is not None and output:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(emit(doc))
        if self.fmt == "json":
            payload: dict = {"checks": self.records}
            if doc is not None:
                payload["document"] = to_json(doc)
            json.dump(payload, self.out, indent=2)
            self.out.write("\n")
        elif pretty:
            for line in pretty:
                print(line, file=self.out)
        return 1 if self.failed else 0


# -- pretty printing ---------------------------------------------------------------

def matrix_lines(title: str, rows, cols, cells) -> list[str]:
    w = max([len(str(x)) for x in cols] + [len(str(c)) for r in cells for c in r] + [1])
    lw = max([len(str(r)) for r in rows] + [1])
    out = [title, " " * (lw + 2) + " ".join(str(c).rjust(w) for c in cols)]
    for r, row in zip(rows, cells):
        out.append(str(r).rjust(lw) + "  " + " ".join(str(c).rjust(w) for c in row))
    return out


def module_lines(name: str, m: QModule) -> list[str]:
    return matrix_lines(f"{name}: rows = target, columns = source", m.matrix.rows, m.matrix.cols,
                        m.matrix.as_ids(m.base))


def category_lines(name: str, c: QCategory) -> list[str]:
    return matrix_lines(f"{name}: hom(row, column)", c.objects, c.objects, c.hom.as_ids(c.base))


# -- helpers -------------------------------------------------------------------

def _need(args, what="--input"):
    if not args.input:
        raise InputError(f"this command needs {what}")
    return load(args.input)


def _get(section: dict, name: str | None, what: str):
    if name is None:
        if len(section) == 1:
            return next(iter(section.items()))
        raise InputError(f"name the {what} to use (the document has {len(section)})")
    if name not in section:
        raise InputError(f"unknown {what} {name!r}")
    return name, section[name]


def _out_doc(doc: Document) -> Document:
    """A fresh document that shares the input's quantale names."""
    out = Document()
    out.quantales.update(doc.quantales)
    return out


def _suites_for(prefixes: Sequence[str], quantale: str | None) -> list[Suite]:
    picked = select(list(prefixes))
    if quantale:
        picked = [s for s in picked if s.param in (None, quantale) or
                  (isinstance(s.param, str) and quantale in s.param.split(">"))]
    return picked


# -- verbs -------------------------------------------------------------------

def cmd_validate(args, run: Run):
    doc = load(args.input, check=False) if args.input else None
    if doc is None:
        raise InputError("validate needs --input")
    for where, v in validate_document(doc):
        run.verdict(f"{where} is well formed", v)
    for law, v in check_claims(doc):
        run.verdict(f"claim [{law}]", v)
    return run.finish()


def cmd_compose(args, run: Run):
    doc = _need(args)
    names = args.names or []
    if len(names) < 2:
        raise InputError("compose needs at least two module names (applied right to left)")
    ms = [_get(doc.modules, n, "module")[1] for n in names]
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    res = _out_doc(doc)
    name = res.add_module(out, "composite")
    return run.finish(res, args.output, module_lines(name, out))


def cmd_star(args, run: Run):
    doc = _need(args)
    name, m = _get(doc.modules, args.names[0] if args.names else None, "module")
    if m.source != m.target:
        raise InputError("star needs an endomodule")
    S = QModule(m.source, m.target, matrix_star(m.base, m.matrix, m.source.hom))
    res = _out_doc(doc)
    out = res.add_module(S, f"star({name})")
    return run.finish(res, args.output, module_lines(out, S))


def cmd_collage(args, run: Run):
    doc = _need(args)
    name, m = _get(doc.modules, args.names[0] if args.names else None, "module")
    c = collage(m)
    run.verdict(f"collage of {name}: validity, full faithfulness, recovery", check_collage(c))
    res = _out_doc(doc)
    cname = res.add_category(c.total, f"collage({name})")
    res.add_functor(c.i, f"i({name})")
    res.add_functor(c.j, f"j({name})")
    return run.finish(res, args.output, category_lines(cname, c.total))


def cmd_coslice(args, run: Run):
    doc = _need(args)
    if len(args.names or []) != 2:
        raise InputError("coslice needs two functor names u v with a shared source")
    (un, u), (vn, v) = (_get(doc.functors, n, "functor") for n in args.names)
    c = coslice(u, v)
    run.verdict(f"coslice of ({un}, {vn}): mate equality", check_collage(c) + check_coslice(u, v, c))
    res = _out_doc(doc)
    cname = res.add_category(c.total, f"coslice({un},{vn})")
    return run.finish(res, args.output, category_lines(cname, c.total))


def cmd_sieve_pushout(args, run: Run):
    doc = _need(args)
    if len(args.names or []) != 2:
        raise InputError("sieve-pushout needs a functor name f and a category name X")
    fn, f = _get(doc.functors, args.names[0], "functor")
    xn, X = _get(doc.categories, args.names[1], "category")
    po = sieve_pushout(f, X)
    run.verdict(f"pushout of {fn} along the sieve in {xn}: Beck-Chevalley", check_sieve_pushout(f, X, po))
    res = _out_doc(doc)
    qn = res.add_category(po.Q, "pushout")
    res.add_functor(po.k, "k")
    res.add_functor(po.h, "h")
    return run.finish(res, args.output, category_lines(qn, po.Q))


def cmd_adjoint_check(args, run: Run):
    doc = _need(args)
    names = args.names or []
    if len(names) == 1 and names[0] in doc.functors:
        f = doc.functors[names[0]]
        run.verdict(f"{names[0]}_* -| {names[0]}^*", check_adjunction(lower_star(f), upper_star(f)))
    elif len(names) == 2:
        (mn, m), (rn, r) = (_get(doc.modules, n, "module") for n in names)
        run.verdict(f"{mn} -| {rn}", check_adjunction(m, r))
    else:
        raise InputError("adjoint-check needs a functor name or two module names")
    return run.finish()


def cmd_homodular_check(args, run: Run):
    if not args.hom:
        raise InputError("homodular-check needs --hom")
    h = builtin_hom(args.hom)
    if args.input:
        doc = load(args.input)
        # every functor in the document that is a sieve inclusion
        for fn, f in doc.functors.items():
            X, objs = f.target, f.object_map
            if (X.base == h.source and len(set(objs)) == len(objs) and is_sieve(X, objs)
                    and f.source == full_subcategory(X, objs)):
                run.verdict(f"H1 for {fn}", check_H1(h, X, objs))
    for key in ("H1", "H2"):
        s = SUITES.get(f"{key}[{args.hom}]") or Suite(f"{key}[{args.hom}]", SUITES[f"{key}[id:bool]"].anchor,
                                                       "homodular", SUITES[f"{key}[id:bool]"].fn, args.hom)
        run.report(run_suite(s, args.seed, args.cases, args.max_objects))
    return run.finish()


def cmd_extend(args, run: Run):
    if not args.hom:
        raise InputError("extend needs --hom")
    h = builtin_hom(args.hom)
    doc = _need(args)
    name, m = _get(doc.modules, args.names[0] if args.names else None, "module")
    if m.base != h.source:
        raise InputError(f"module {name!r} is not over the source of {args.hom}")
    e = extend(h, m)
    run.verdict("extension agrees with entrywise base change", compare("closed form", e, extend_closed_form(h, m)))
    res = Document()
    out = res.add_module(e, f"extend({name})")
    return run.finish(res, args.output, module_lines(out, e))


def cmd_int(args, run: Run):
    sub = args.int_verb
    if sub in ("lemma61", "feedback"):
        qs = [args.quantale] if args.quantale else list(QUANTALES)
        for qn in qs:
            builtin_quantale(qn)
            for s in _suites_for(["feedback-"], qn):
                run.report(run_suite(s, args.seed, args.cases, args.max_objects))
        return run.finish()
    if sub == "snake":
        if args.input:
            doc = load(args.input)
            for n, ob in doc.int_objects.items():
                run.verdict(f"snake identities for {n}", check_snake(ob))
        else:
            qs = [args.quantale] if args.quantale else list(INT_QUANTALES)
            for qn in qs:
                builtin_quantale(qn)
                s = SUITES.get(f"int-snake[{qn}]") or Suite(f"int-snake[{qn}]", SUITES["int-snake[bool]"].anchor,
                                                            "int", SUITES["int-snake[bool]"].fn, qn, max_objects=3)
                run.report(run_suite(s, args.seed, args.cases, args.max_objects))
        return run.finish()
    doc = _need(args)
    if sub == "identity":
        name, ob = _get(doc.int_objects, args.names[0] if args.names else None, "Int object")
        R = int_identity(ob)
    elif sub == "compose":
        if len(args.names or []) != 2:
            raise InputError("int compose needs two Int morphism names S R (giving S . R)")
        (sn, S), (rn, R0) = (_get(doc.int_morphisms, n, "Int morphism") for n in args.names)
        R = int_compose(S, R0)
        name = f"{sn}.{rn}"
        run.verdict("composite has the expected boundary",
                    compare_int("boundary", int_compose(int_identity(S.target), R), R))
    else:
        raise InputError(f"unknown int command {sub!r}")
    res = _out_doc(doc)
    out = res.add_int_morphism(R, f"int({name})")
    pretty = []
    for label, blk in zip("ABCD", R.blocks):
        pretty += module_lines(f"{out} block {label}", blk)
    return run.finish(res, args.output, pretty)


def cmd_suite(args, run: Run):
    if args.input:
        doc = load(args.input, check=False)
        for where, v in validate_document(doc):
            run.verdict(f"{where} is well formed", v)
        for law, v in check_claims(doc):
            run.verdict(f"claim [{law}]", v)
    for s in _suites_for(args.names or [], args.quantale):
        run.report(run_suite(s, args.seed, args.cases, args.max_objects))
    return run.finish()


def cmd_list(args, run: Run):
    for s in SUITES.values():
        print(f"{s.name:34s} {s.family:10s} {s.anchor}", file=run.out)
    return 0


VERBS = {
    "validate": cmd_validate,
    "compose": cmd_compose,
    "star": cmd_star,
    "collage": cmd_collage,
    "coslice": cmd_coslice,
    "sieve-pushout": cmd_sieve_pushout,
    "adjoint-check": cmd_adjoint_check,
    "homodular-check": cmd_homodular_check,
    "extend": cmd_extend,
    "int": cmd_int,
    "suite": cmd_suite,
    "list-suites": cmd_list,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input document (JSON)")
    common.add_argument("--output", "-o", help="write the resulting document here")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=int, default=300)
    common.add_argument("--max-objects", type=int, default=4)
    common.add_argument("--quantale", help="restrict to one built-in quantale")
    common.add_argument("--hom", help="built-in quantale homomorphism, e.g. bool>chain:3")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="qmod", description="Quantale-enriched categories, modules and their laws.")
    sub = p.add_subparsers(dest="verb", required=True)
    helps = {
        "validate": "check every entity and claim of a document",
        "compose": "compose named modules (right to left)",
        "star": "free monad (Kleene star) of an endomodule",
        "collage": "collage of a module",
        "coslice": "coslice of a span of functors",
        "sieve-pushout": "pushout of a functor along a sieve inclusion",
        "adjoint-check": "check f_* -| f^* or a pair of modules",
        "homodular-check": "seeded H1/H2 suites for a homomorphism",
        "extend": "extend a module along a homomorphism",
        "suite": "run the seeded property suites (optionally checking --input first)",
        "list-suites": "list registered suites",
    }
    for verb, text in helps.items():
        sp = sub.add_parser(verb, parents=[common], help=text)
        sp.add_argument("names", nargs="*", help="entity names or suite name prefixes")
    ip = sub.add_parser("int", parents=[common], help="Int construction commands")
    ip.add_argument("int_verb", choices=("compose", "identity", "lemma61", "feedback", "snake"))
    ip.add_argument("names", nargs="*")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = Run(args.format)
    try:
        return VERBS[args.verb](args, run)
    except InputError as e:
        problems = getattr(e, "problems", None) or [str(e)]
        if args.format == "json":
            json.dump({"error": "input", "problems": problems}, sys.stdout, indent=2)
            sys.stdout.write("\n")
        for p in problems:
            print(f"input error: {p}", file=sys.stderr)
        if getattr(e, "witness", None) is not None:
            print(f"    witness: {e.witness}", file=sys.stderr)
        return 2
    except QmodError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
