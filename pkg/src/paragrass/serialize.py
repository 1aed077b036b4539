"""JSON/CSV/text encodings for scalars, elements and coefficient tables.

Exact scalars are written as ``{"re": [num, den], "im": [num, den]}``;
float scalars as ``{"re": x, "im": y}``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .algebra import Element, Monomial, _mon_str
from .scalars import EXACT, Backend, GaussianRational, get_backend


def scalar_to_json(value):
    if isinstance(value, GaussianRational):
        return {"re": [value.re.numerator, value.re.denominator],
                "im": [value.im.numerator, value.im.denominator]}
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return {"re": [value.numerator, value.denominator], "im": [0, 1]}
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def scalar_from_json(obj, backend: Backend | None = None):
    re, im = obj["re"], obj["im"]
    if isinstance(re, list):
        value = GaussianRational(Fraction(*re), Fraction(*im))
        return value if backend is None or backend.exact else complex(value)
    return complex(re, im)


def format_scalar(value) -> str:
    if isinstance(value, complex):
        if abs(value.imag) == 0:
            return f"{value.real:.12g}"
        return f"({value.real:.12g}{value.imag:+.12g}i)"
    return str(value)


# ---------------------------------------------------------------------------
# elements


def element_to_json(x: Element) -> dict:
    terms = []
    for mono, row, col, v in x.items():
        terms.append({
            "unstarred": list(mono.unstarred),
            "starred": list(mono.starred),
            "row": row,
            "col": col,
            "value": scalar_to_json(v),
        })
    return {"n": x.n, "kind": x.kind, "ngen": x.ngen, "backend": x.backend.name, "terms": terms}


def element_from_json(obj: dict) -> Element:
    backend = get_backend(obj.get("backend", "exact"))
    entries = {}
    for t in obj["terms"]:
        mono = Monomial(obj["n"], tuple(t["unstarred"]), tuple(t["starred"]))
        entries[(mono, t["row"], t["col"])] = scalar_from_json(t["value"], backend)
    return Element.from_terms(obj["n"], obj["kind"], entries, backend, obj.get("ngen", 1))


def _signed_terms(x: Element, row: int, col: int) -> str:
    parts = []
    for key in sorted(x.terms, key=lambda k: (_deg(k >> 16), k)):
        if (key >> 8) & 0xFF != row or key & 0xFF != col:
            continue
        v = x.terms[key]
        mon = _mon_str(key >> 16, x.ngen)
        coef = format_scalar(v)
        if mon == "1":
            parts.append(coef)
        elif coef == "1":
            parts.append(mon)
        elif coef == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"{coef} {mon}")
    text = " + ".join(parts).replace("+ -", "- ")
    return text or "0"


def _deg(mon: int) -> int:
    total = 0
    while mon:
        total += mon & 0xFF
        mon >>= 8
    return total


def format_element(x: Element) -> str:
    """Readable expansion grouped by payload entry, e.g. ``(1 - 1/2 ζ ζ*)|0⟩``."""
    if not x.terms:
        return "0"
    entries = sorted({((k >> 8) & 0xFF, k & 0xFF) for k in x.terms})
    if x.kind == "scalar":
        return _signed_terms(x, 0, 0)
    lines = []
    for row, col in entries:
        poly = _signed_terms(x, row, col)
        label = {"ket": f"|{row}⟩", "bra": f"⟨{col}|", "operator": f"|{row}⟩⟨{col}|"}[x.kind]
        lines.append(f"({poly}){label}")
    return "\n".join(lines)


def expansion_records(x: Element) -> list[dict]:
    """One record per (basis entry, monomial): the CLI ``expand`` payload."""
    records = []
    for mono, row, col, v in x.items():
        records.append({
            "row": row if x.kind in ("ket", "operator") else None,
            "col": col if x.kind in ("bra", "operator") else None,
            "unstarred": list(mono.unstarred),
            "starred": list(mono.starred),
            "monomial": str(mono),
            "value": scalar_to_json(v),
        })
    records.sort(key=lambda r: (r["row"] or 0, r["col"] or 0, sum(r["unstarred"]) + sum(r["starred"]),
                                r["unstarred"], r["starred"]))
    return records


# ---------------------------------------------------------------------------
# tables


def table_to_json(kind: str, n: int, entries, alpha=None) -> dict:
    return {
        "n": n,
        "kind": kind,
        "alpha": None if alpha is None else [scalar_to_json(a) for a in alpha],
        "entries": [scalar_to_json(v) for v in entries],
    }


def table_from_json(obj: dict, backend: Backend = EXACT):
    alpha = obj.get("alpha")
    return {
        "n": obj["n"],
        "kind": obj["kind"],
        "alpha": None if alpha is None else [scalar_from_json(a, backend) for a in alpha],
        "entries": [scalar_from_json(v, backend) for v in obj["entries"]],
    }


def table_to_csv(kind: str, n: int, entries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "n", "index", "re", "im"])
    for i, v in enumerate(entries):
        if isinstance(v, (GaussianRational, int, Fraction)):
            v = GaussianRational.coerce(v)
            writer.writerow([kind, n, i, str(v.re), str(v.im)])
        else:
            v = complex(v)
            writer.writerow([kind, n, i, repr(v.real), repr(v.imag)])
    return buf.getvalue()


def table_from_csv(text: str, backend: Backend = EXACT) -> dict:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty table")
    entries = []
    for r in rows:
        if backend.exact:
            entries.append(GaussianRational(Fraction(r["re"]), Fraction(r["im"])))
        else:
            entries.append(complex(float(r["re"]), float(r["im"])))
    return {"n": int(rows[0]["n"]), "kind": rows[0]["kind"], "alpha": None, "entries": entries}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
