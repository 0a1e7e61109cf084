"""JSON forms of tensors, points and chase declarations.

Rationals are written as ``{"num": "...", "den": "..."}`` with decimal
strings; tensor entries are sorted by (monomial, slot).
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .les import Chase, FactRegistry
from .quotring import QuotientRing
from .fibers import PointOnX
from .tensors import PartialSymTensor, SymTensor


class FormatError(ValueError):
    pass


def rational(x: Fraction) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def parse_rational(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj.get("den", "1")))
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise FormatError(f"not a rational: {obj!r}")


def tensor_to_json(t: SymTensor | PartialSymTensor) -> dict[str, Any]:
    entries = []
    if isinstance(t, SymTensor):
        for m in sorted(t.entries):
            entries.append({"mono": list(m), **rational(t.entries[m])})
        kind = "sym"
    else:
        for (m, s) in sorted(t.entries):
            entries.append({"mono": list(m), "slot": s, **rational(t.entries[(m, s)])})
        kind = "partial"
    return {"n": t.n, "d": t.d, "kind": kind, "entries": entries}


def tensor_from_json(obj: dict) -> SymTensor | PartialSymTensor:
    try:
        n, d, kind = int(obj["n"]), int(obj["d"]), obj["kind"]
        raw = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed tensor: {exc}") from exc
    if kind == "sym":
        return SymTensor(n, d, {tuple(e["mono"]): parse_rational(e) for e in raw})
    if kind == "partial":
        return PartialSymTensor(n, d, {(tuple(e["mono"]), int(e["slot"])): parse_rational(e) for e in raw})
    raise FormatError(f"unknown tensor kind {kind!r}")


def basis_to_json(n: int, d: int, basis) -> dict[str, Any]:
    return {"n": n, "d": d, "kind": "basis", "dimension": str(len(basis)),
            "tensors": [tensor_to_json(b) for b in basis]}


def point_to_json(pt: PointOnX) -> dict[str, Any]:
    return {
        "modulus": [rational(c) for c in pt.modulus],
        "coords": [[rational(c) for c in x.coeffs] for x in pt.coords],
    }


def point_from_json(obj: dict) -> PointOnX:
    ring = QuotientRing([parse_rational(c) for c in obj["modulus"]])
    coords = tuple(ring([parse_rational(c) for c in x]) for x in obj["coords"])
    return PointOnX(ring, coords)


def load_tensor(path: str | Path) -> SymTensor | PartialSymTensor:
    return tensor_from_json(json.loads(Path(path).read_text()))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- chase declarations ----------------------------------------------------
#
# JSON:
#   {"facts": [{"label": L, "i": 0, "dim": 1, "citation": "..."}],
#    "bott": [{"label": L, "n": 4, "j": 1, "k": 3}],
#    "identify": [{"left": [i, L], "right": [j, M], "citation": "..."}],
#    "sequences": [{"name": N, "terms": [[L, i], [L, i, mult], 0, ...]}],
#    "les": [{"name": N, "sub": A, "mid": B, "quo": C, "top": k, "mults": [1, 5, 1]}],
#    "query": [[L, i], ...]}
#
# Text, one declaration per line (``#`` starts a comment):
#   fact <label> <i> <dim> <citation...>
#   bott <label> <n> <j> <k>
#   identify <i> <label> = <j> <label> : <citation...>
#   seq <name>: <label>@<i>[*mult], <label>@<i>, 0, ...
#   les <name>: <sub> ; <mid> ; <quo> ; top=<k> [; mults=a,b,c]
#   query <label>@<i>


def chase_from_json(obj: dict) -> tuple[Chase, list[tuple[str, int]]]:
    reg = FactRegistry()
    for f in obj.get("facts", []):
        if "citation" not in f:
            raise FormatError(f"fact {f.get('label')!r} has no citation")
        reg.add(f["label"], int(f["i"]), int(f["dim"]), f["citation"])
    for b in obj.get("bott", []):
        reg.add_bott(b["label"], int(b["n"]), int(b["j"]), int(b["k"]))
    for ident in obj.get("identify", []):
        left, right = ident["left"], ident["right"]
        reg.identify((int(left[0]), left[1]), (int(right[0]), right[1]), ident.get("citation", ""))
    ch = Chase(reg)
    for s in obj.get("sequences", []):
        groups = []
        for t in s["terms"]:
            if t == 0:
                reg.add("0", 0, 0, "zero object")
                groups.append(("0", 0, 1))
                continue
            if isinstance(t, (int, float)):
                raise FormatError("numeric terms other than 0 must be declared as cited facts")
            label, i = t[0], int(t[1])
            mult = int(t[2]) if len(t) > 2 else 1
            groups.append((label, i, mult))
        ch.sequence(s.get("name", ""), groups)
    for s in obj.get("les", []):
        mults = tuple(int(m) for m in s.get("mults", (1, 1, 1)))
        ch.les(s.get("name", ""), s["sub"], s["mid"], s["quo"], int(s["top"]), mults)
    queries = [(q[0], int(q[1])) for q in obj.get("query", [])]
    return ch, queries


def _term(tok: str) -> tuple[str, int, int]:
    tok = tok.strip()
    mult = 1
    if "*" in tok:
        tok, m = tok.rsplit("*", 1)
        mult = int(m)
    if "@" not in tok:
        raise FormatError(f"term {tok!r} must look like label@i")
    label, i = tok.rsplit("@", 1)
    return label.strip(), int(i), mult


def chase_from_text(text: str) -> tuple[Chase, list[tuple[str, int]]]:
    obj: dict[str, list] = {"facts": [], "bott": [], "identify": [], "sequences": [], "les": [], "query": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kw, _, rest = line.partition(" ")
        try:
            if kw == "fact":
                parts = rest.split(None, 3)
                if len(parts) < 4:
                    raise FormatError("fact needs label, i, dim and a citation")
                obj["facts"].append({"label": parts[0], "i": parts[1], "dim": parts[2],
                                     "citation": parts[3]})
            elif kw == "bott":
                label, n, j, k = rest.split()
                obj["bott"].append({"label": label, "n": n, "j": j, "k": k})
            elif kw == "identify":
                eq, _, cite = rest.partition(":")
                lhs, _, rhs = eq.partition("=")
                li, ll = lhs.split(None, 1)
                ri, rl = rhs.split(None, 1)
                obj["identify"].append({"left": [li, ll.strip()], "right": [ri, rl.strip()],
                                        "citation": cite.strip()})
            elif kw == "seq":
                name, _, body = rest.partition(":")
                terms: list = []
                for tok in body.split(","):
                    tok = tok.strip()
                    if tok == "0":
                        terms.append(0)
                    else:
                        label, i, mult = _term(tok)
                        terms.append([label, i, mult])
                obj["sequences"].append({"name": name.strip(), "terms": terms})
            elif kw == "les":
                name, _, body = rest.partition(":")
                parts = [p.strip() for p in body.split(";")]
                entry: dict[str, Any] = {"name": name.strip(), "sub": parts[0], "mid": parts[1], "quo": parts[2]}
                for extra in parts[3:]:
                    key, _, val = extra.partition("=")
                    if key.strip() == "top":
                        entry["top"] = int(val)
                    elif key.strip() == "mults":
                        entry["mults"] = [int(v) for v in val.split(",")]
                if "top" not in entry:
                    raise FormatError("les needs top=<k>")
                obj["les"].append(entry)
            elif kw == "query":
                label, i, _ = _term(rest)
                obj["query"].append([label, i])
            else:
                raise FormatError(f"unknown keyword {kw!r}")
        except (ValueError, IndexError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    return chase_from_json(obj)


def load_chase(path: str | Path) -> tuple[Chase, list[tuple[str, int]]]:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return chase_from_json(json.loads(text))
    return chase_from_text(text)
