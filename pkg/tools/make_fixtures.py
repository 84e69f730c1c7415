"""Regenerate the bundled fixtures under fixtures/.

The golden closure for the path digraph comes from the Warshall oracle, not
from the fixpoint code it is later compared against.
"""

import json
from pathlib import Path

from qmod.document import Document, emit
from qmod.enriched import QCategory
from qmod.modules import QModule
from qmod.oracles import warshall
from qmod.quantale import QMatrix, builtin_quantale

ROOT = Path(__file__).resolve().parent.parent / "fixtures"

BOOL = "bool"
CHAIN3_TABLE = {
    "elements": ["0", "h", "1"],
    "join": [["0", "h", "1"], ["h", "h", "1"], ["1", "1", "1"]],
    "tensor": [["0", "0", "0"], ["0", "h", "h"], ["0", "h", "1"]],
    "unit": "1",
}

# arrow category a -> b over sets
ARROW_SET = {
    "objects": ["a", "b"],
    "homs": [["a", "a", ["1a"]], ["b", "b", ["1b"]], ["a", "b", ["u"]]],
    "identities": {"a": "1a", "b": "1b"},
    "compose": [["1a", "1a", "1a"], ["1b", "1b", "1b"], ["u", "1a", "u"], ["1b", "u", "u"]],
}
POINT_SET = {
    "objects": ["*"],
    "homs": [["*", "*", ["1*"]]],
    "identities": {"*": "1*"},
    "compose": [["1*", "1*", "1*"]],
}


def example() -> dict:
    return {
        "quantales": {"B": BOOL, "C3": CHAIN3_TABLE, "M": "minplus:6", "D": "diamond"},
        "homs": {"up": "bool>chain:3", "clamp": "minplus:6>minplus:3"},
        "categories": {
            "U": {"quantale": "B", "objects": ["*"], "hom": [["1"]]},
            "Arrow": {"quantale": "B", "objects": ["a", "b"], "hom": {"a": {"a": "1", "b": "1"}, "b": {"b": "1"}}},
            "Two": {"quantale": "B", "objects": ["p", "q"], "hom": [["1", "0"], ["0", "1"]]},
            "Line": {"quantale": "M", "objects": ["x", "y", "z"],
                     "hom": [["0", "1", "3"], ["1", "0", "2"], ["3", "2", "0"]]},
            "Fuzzy": {"quantale": "C3", "objects": ["s", "t"], "hom": [["1", "h"], ["0", "1"]]},
            "E": {"quantale": "B", "objects": []},
            "Low": {"quantale": "B", "objects": ["a"], "hom": [["1"]]},
        },
        "functors": {
            "top": {"source": "U", "target": "Arrow", "map": {"*": "b"}},
            "bottom": {"source": "U", "target": "Arrow", "map": {"*": "a"}},
            "glue": {"source": "Low", "target": "U", "map": {"a": "*"}},
        },
        "modules": {
            "rel": {"source": "Two", "target": "Two", "entries": {"p": {"q": "1"}}},
            "m": {"source": "U", "target": "Arrow", "entries": {"a": {"*": "1"}}},
            "n": {"source": "Arrow", "target": "U", "entries": [["0", "1"]]},
            "zeroUU": {"source": "U", "target": "U"},
            "idU": {"source": "U", "target": "U", "entries": [["1"]]},
            "zeroUE": {"source": "U", "target": "E"},
            "zeroEU": {"source": "E", "target": "U"},
            "zeroEE": {"source": "E", "target": "E"},
        },
        "int": {
            "objects": {"P": {"pos": "U", "neg": "U"}, "I": {"pos": "U", "neg": "E"}},
            "morphisms": {
                "loop": {"source": "P", "target": "P", "A": "zeroUU", "B": "idU", "C": "idU", "D": "zeroUU"},
                "incl": {"source": "I", "target": "I", "A": "idU", "B": "zeroEU", "C": "zeroUE", "D": "zeroEE"},
            },
        },
        "set": {
            "categories": {"Arrow": ARROW_SET, "Point": POINT_SET},
            "functors": {"pick_b": {"source": "Point", "target": "Arrow",
                                    "objects": {"*": "b"}, "morphisms": {"1*": "1b"}}},
            "modules": {},
        },
        "claims": [
            {"law": "f_* -| f^*", "adjoint": ["lower(top)", "upper(top)"]},
            {"law": "unit law of composition", "equal": ["compose(id(Arrow), m)", "m"]},
            {"law": "free monad of a single step", "equal": ["star(rel)", "join(id(Two), rel)"]},
            {"law": "lower object is a sieve", "sieve": {"category": "Arrow", "objects": ["a"]}},
            {"law": "upper object is an opsieve", "opsieve": {"category": "Arrow", "objects": ["b"]}},
            {"law": "star of zero is the identity", "equal": ["star(zeroUU)", "id(U)"]},
            {"law": "extension along a homomorphism", "equal": ["extend(up, m)", "base(up, m)"]},
            {"law": "Int identity", "int_equal": ["compose(loop, id(P))", "loop"]},
            {"law": "inclusion preserves identities", "int_equal": ["include(idU)", "incl"]},
            {"law": "set-valued f_* -| f^*", "set_adjunction": "pick_b"},
        ],
    }


def path4() -> dict:
    objs = ["n0", "n1", "n2", "n3"]
    return {
        "quantales": {"B": BOOL},
        "categories": {"N": {"quantale": "B", "objects": objs,
                             "hom": [["1" if i == j else "0" for j in range(4)] for i in range(4)]}},
        "modules": {"R": {"source": "N", "target": "N",
                          "entries": {"n0": {"n1": "1"}, "n1": {"n2": "1"}, "n2": {"n3": "1"}}}},
    }


def path4_golden() -> str:
    """What `qmod star` must emit for path4.json, computed by Warshall."""
    q = builtin_quantale(BOOL)
    objs = ("n0", "n1", "n2", "n3")
    adj = [[1 if j == i + 1 else 0 for j in range(4)] for i in range(4)]
    closure = warshall(adj)
    N = QCategory(q, objs, QMatrix.build(objs, objs, lambda i, j: 1 if i == j else 0))
    doc = Document()
    doc.quantales["B"] = q
    doc.add_module(QModule(N, N, QMatrix(objs, objs, tuple(tuple(r) for r in closure))), "star(R)")
    return emit(doc)


def mutations() -> dict[str, dict]:
    out = {}
    bad = json.loads(json.dumps(CHAIN3_TABLE))
    bad["tensor"][1][1] = "1"
    out["quantale"] = {"quantales": {"Bad": bad}}
    out["category"] = {
        "quantales": {"B": BOOL},
        "categories": {"Arrow": {"quantale": "B", "objects": ["a", "b"], "hom": [["0", "1"], ["0", "1"]]}},
    }
    p = path4()
    p["modules"]["G"] = {"source": "N", "target": "N",
                         "entries": {"n0": {"n0": "1", "n1": "1", "n2": "1"}, "n1": {"n1": "1", "n2": "1", "n3": "1"},
                                     "n2": {"n2": "1", "n3": "1"}, "n3": {"n3": "1"}}}
    p["claims"] = [{"law": "matrix star as least fixpoint", "equal": ["star(R)", "G"]}]
    out["star"] = p
    # a relation leaving t unrelated: the unit 1 <= r.m fails at t
    out["modules"] = {
        "quantales": {"B": BOOL},
        "categories": {"D": {"quantale": "B", "objects": ["s", "t"], "hom": [["1", "0"], ["0", "1"]]},
                       "P": {"quantale": "B", "objects": ["p"], "hom": [["1"]]}},
        "modules": {"m": {"source": "D", "target": "P", "entries": {"p": {"s": "1"}}},
                    "r": {"source": "P", "target": "D", "entries": {"s": {"p": "1"}}}},
        "claims": [{"law": "adjunction unit and counit", "adjoint": ["m", "r"]}],
    }
    out["collage"] = {
        "quantales": {"B": BOOL},
        "categories": {"U": {"quantale": "B", "objects": ["*"], "hom": [["1"]]},
                       "X": {"quantale": "B", "objects": ["A:*", "B:*"], "hom": [["1", "0"], ["0", "1"]]}},
        "functors": {"i": {"source": "U", "target": "X", "map": {"*": "A:*"}},
                     "j": {"source": "U", "target": "X", "map": {"*": "B:*"}}},
        "modules": {"m": {"source": "U", "target": "U", "entries": [["1"]]}},
        "claims": [{"law": "collage recovery i^*.j_* = m", "equal": ["compose(upper(i), lower(j))", "m"]}],
    }
    # a commuting-looking square whose corner is a coproduct, not the pushout
    out["sieve"] = {
        "quantales": {"B": BOOL},
        "categories": {
            "A": {"quantale": "B", "objects": ["a"], "hom": [["1"]]},
            "X": {"quantale": "B", "objects": ["a", "x"], "hom": [["1", "1"], ["0", "1"]]},
            "Y": {"quantale": "B", "objects": ["y"], "hom": [["1"]]},
            "Q": {"quantale": "B", "objects": ["Y:y", "X:a", "X:x"],
                  "hom": [["1", "0", "0"], ["0", "1", "1"], ["0", "0", "1"]]},
        },
        "functors": {"i": {"source": "A", "target": "X", "map": {"a": "a"}},
                     "f": {"source": "A", "target": "Y", "map": {"a": "y"}},
                     "k": {"source": "Y", "target": "Q", "map": {"y": "Y:y"}},
                     "h": {"source": "X", "target": "Q", "map": {"a": "X:a", "x": "X:x"}}},
        "claims": [{"law": "Beck-Chevalley: f_*.i^* = k^*.h_*",
                    "equal": ["compose(lower(f), upper(i))", "compose(upper(k), lower(h))"]}],
    }
    out["homodular"] = dict(out["sieve"], claims=[{
        "law": "homodular H2: mate invertible",
        "equal": ["compose(lower(base(up, f)), upper(base(up, i)))",
                  "compose(upper(base(up, k)), lower(base(up, h)))"]}],
        homs={"up": "bool>chain:3"})
    out["hom"] = {"quantales": {"B": BOOL, "C": "chain:3"},
                  "homs": {"bad": {"source": "B", "target": "C", "map": {"0": "0", "1": "1/2"}}}}
    c3 = builtin_quantale("chain:3").elements
    out["hom"]["homs"]["bad"]["map"]["1"] = c3[1]
    out["int"] = {
        "quantales": {"B": BOOL},
        "categories": {"U": {"quantale": "B", "objects": ["*"], "hom": [["1"]]}},
        "modules": {"one": {"source": "U", "target": "U", "entries": [["1"]]},
                    "zero": {"source": "U", "target": "U", "entries": [["0"]]}},
        "int": {"objects": {"P": {"pos": "U", "neg": "U"}},
                "morphisms": {"R": {"source": "P", "target": "P", "A": "zero", "B": "one", "C": "one", "D": "zero"},
                              "Ibad": {"source": "P", "target": "P", "A": "one", "B": "zero", "C": "zero",
                                       "D": "zero"}}},
        "claims": [{"law": "Int identity law", "int_equal": ["compose(R, Ibad)", "R"]}],
    }
    out["set"] = {
        "set": {"categories": {"Arrow": ARROW_SET, "Point": POINT_SET},
                "functors": {"pick_a": {"source": "Point", "target": "Arrow",
                                        "objects": {"*": "a"}, "morphisms": {"1*": "1a"}}}},
        "claims": [{"law": "set-valued triangle identities", "set_adjunction": "pick_a", "counit": "swapped"}],
    }
    return out


def malformed() -> dict[str, str]:
    return {
        "syntax.json": '{"quantales": {"B": "bool"}, "categories": {',
        "dangling.json": json.dumps({"quantales": {"B": BOOL},
                                     "modules": {"m": {"source": "Nope", "target": "Nope"}}}, indent=2),
        "mismatch.json": json.dumps({
            "quantales": {"B": BOOL},
            "categories": {"U": {"quantale": "B", "objects": ["*"], "hom": [["1"]]},
                           "T": {"quantale": "B", "objects": ["p", "q"], "hom": [["1", "0"], ["0", "1"]]}},
            "modules": {"m": {"source": "U", "target": "T", "entries": [["1"], ["0"]]},
                        "n": {"source": "U", "target": "T", "entries": [["0"], ["1"]]}}}, indent=2),
    }


def write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def main():
    write(ROOT / "example.json", json.dumps(example(), indent=2) + "\n")
    write(ROOT / "path4.json", json.dumps(path4(), indent=2) + "\n")
    write(ROOT / "path4.closure.json", path4_golden())
    for name, d in mutations().items():
        write(ROOT / "mutations" / f"{name}.json", json.dumps(d, indent=2) + "\n")
    for name, text in malformed().items():
        write(ROOT / "malformed" / name, text + "\n")


if __name__ == "__main__":
    main()
