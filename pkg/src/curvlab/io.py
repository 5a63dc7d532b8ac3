"""File formats and string forms.

Rationals interchange as "a/b" strings ("a" when the denominator is 1);
this is the bit-exact form used by every file format and report.  Model
files and metric files are declarative JSON documents with sparse entry
maps and 1-based indices; symmetry closure is applied on load with
conflict detection.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, MultiPoly
from .metrics import PolynomialMetric
from .modelspace import ModelSpace, z2_orbit

__all__ = [
    "rat_to_str",
    "str_to_rat",
    "FormatError",
    "parse_poly",
    "poly_to_str",
    "load_model",
    "dump_model",
    "load_metric",
    "dump_metric",
]


class FormatError(ValueError):
    """Malformed file content or polynomial/rational string."""


def rat_to_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def str_to_rat(s: str) -> Fraction:
    s = s.strip().replace("−", "-")
    m = re.fullmatch(r"(-?\d+)(?:\s*/\s*(\d+))?", s)
    if not m:
        raise FormatError(f"bad rational: {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise FormatError(f"zero denominator: {s!r}")
    return Fraction(num, den)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>[A-Za-z_]\w*)"
    r"|(?P<pow>\*\*|\^)|(?P<mul>[*·])|(?P<sign>[+−-]))"
)


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse a polynomial string like "-2*u1*t1 - 2*u2*t2 + 1/2*x1^3".

    Accepted syntax: terms joined by + or -, factors joined by *, integer
    powers via ^ or **, rational coefficients "a/b".
    """
    variables = tuple(variables)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise FormatError(f"bad polynomial syntax near {text[pos:pos + 12]!r}")
            break
        pos = m.end()
        for kind in ("num", "var", "pow", "mul", "sign"):
            if m.group(kind) is not None:
                tokens.append((kind, m.group(kind)))
                break
    result = MultiPoly.constant(0, variables)
    i = 0
    first_term = True
    while i < len(tokens):
        sign = Fraction(1)
        saw_sign = False
        while i < len(tokens) and tokens[i][0] == "sign":
            if tokens[i][1] != "+":
                sign = -sign
            saw_sign = True
            i += 1
        if not first_term and not saw_sign:
            raise FormatError("terms must be joined by + or -")
        if i >= len(tokens):
            raise FormatError("dangling sign")
        term = MultiPoly.constant(sign, variables)
        expect_factor = True
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "mul":
                if expect_factor:
                    raise FormatError("misplaced '*'")
                expect_factor = True
                i += 1
                continue
            if kind == "sign":
                break
            if not expect_factor:
                raise FormatError(f"missing operator before {val!r}")
            if kind == "num":
                term = term * str_to_rat(val)
                i += 1
            elif kind == "var":
                if val not in variables:
                    raise FormatError(f"unknown variable {val!r}")
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "pow":
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "num" or "/" in tokens[i][1]:
                        raise FormatError("power must be a plain integer")
                    power = int(tokens[i][1])
                    i += 1
                term = term * MultiPoly.var(val, variables) ** power
            else:
                raise FormatError(f"unexpected token {val!r}")
            expect_factor = False
        if expect_factor:
            raise FormatError("empty term")
        result = result + term
        first_term = False
    return result


def poly_to_str(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for expo, coeff in sorted(p.terms.items(), reverse=True):
        factors = []
        for v, e in zip(p.variables, expo):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, rat_to_str(mag))
        body = "*".join(factors)
        parts.append(("- " if coeff < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _parse_index_key(key: str, count: int, dim: int) -> tuple:
    parts = [p.strip() for p in key.split(",")]
    if len(parts) != count:
        raise FormatError(f"index key {key!r} must have {count} entries")
    try:
        idx = tuple(int(p) for p in parts)
    except ValueError:
        raise FormatError(f"non-integer index in {key!r}") from None
    if any(i < 1 or i > dim for i in idx):
        raise FormatError(f"index out of range in {key!r} (1..{dim})")
    return tuple(i - 1 for i in idx)


def load_model(source) -> ModelSpace:
    """Load a model file: dim, sparse metric, sparse curvature, optional aux.

    Metric entries get symmetric closure; curvature entries get full
    symmetry closure with conflict detection.
    """
    doc = _read_json(source)
    try:
        dim = int(doc["dim"])
        metric_map = doc["metric"]
        curv_map = doc.get("curvature", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad model document: {exc}") from exc
    metric = [[Fraction(0)] * dim for _ in range(dim)]
    seen = {}
    for key, sval in metric_map.items():
        i, j = _parse_index_key(key, 2, dim)
        val = str_to_rat(str(sval))
        for a, b in ((i, j), (j, i)):
            if (a, b) in seen and seen[(a, b)] != val:
                raise FormatError(f"metric conflict at {a + 1},{b + 1}")
            seen[(a, b)] = val
            metric[a][b] = val
    curv = [[[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
    placed: dict = {}
    for key, sval in curv_map.items():
        idx = _parse_index_key(key, 4, dim)
        val = str_to_rat(str(sval))
        for (a, b, c, d), v in z2_orbit(*idx, val).items():
            if (a, b, c, d) in placed and placed[(a, b, c, d)] != v:
                raise FormatError(
                    "curvature symmetry conflict at "
                    f"{a + 1},{b + 1},{c + 1},{d + 1}: {placed[(a, b, c, d)]} vs {v}"
                )
            placed[(a, b, c, d)] = v
            curv[a][b][c][d] = v
    aux = None
    if "aux_form" in doc:
        aux_entries = [[Fraction(0)] * dim for _ in range(dim)]
        for key, sval in doc["aux_form"].items():
            i, j = _parse_index_key(key, 2, dim)
            val = str_to_rat(str(sval))
            aux_entries[i][j] = aux_entries[j][i] = val
        aux = Matrix(aux_entries)
    return ModelSpace(Matrix(metric), curv, aux_form=aux)


def dump_model(m: ModelSpace) -> str:
    metric = {}
    for i in range(m.dim):
        for j in range(i, m.dim):
            if m.metric[i][j]:
                metric[f"{i + 1},{j + 1}"] = rat_to_str(m.metric[i][j])
    curv = {}
    emitted = set()
    for a, b, c, d, v in m.curv_nonzeros:
        if (a, b, c, d) in emitted:
            continue
        emitted.update(z2_orbit(a, b, c, d, v).keys())
        curv[f"{a + 1},{b + 1},{c + 1},{d + 1}"] = rat_to_str(v)
    doc = {"dim": m.dim, "metric": metric, "curvature": curv}
    if m.aux_form is not None:
        aux = {}
        for i in range(m.dim):
            for j in range(i, m.dim):
                if m.aux_form[i][j]:
                    aux[f"{i + 1},{j + 1}"] = rat_to_str(m.aux_form[i][j])
        doc["aux_form"] = aux
    return json.dumps(doc, indent=2, sort_keys=True)


def load_metric(source) -> PolynomialMetric:
    """Load a metric file: coords list plus sparse polynomial components."""
    doc = _read_json(source)
    try:
        coords = [str(c) for c in doc["coords"]]
        comp_map = doc["components"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad metric document: {exc}") from exc
    dim = len(coords)
    zero = MultiPoly.constant(0, coords)
    comps = [[zero] * dim for _ in range(dim)]
    for key, text in comp_map.items():
        i, j = _parse_index_key(key, 2, dim)
        p = parse_poly(str(text), coords)
        comps[i][j] = p
        comps[j][i] = p
    return PolynomialMetric(coords, comps)


def dump_metric(g: PolynomialMetric) -> str:
    comps = {}
    for i in range(g.dim):
        for j in range(i, g.dim):
            if not g.components[i][j].is_zero():
                comps[f"{i + 1},{j + 1}"] = poly_to_str(g.components[i][j])
    return json.dumps({"coords": list(g.coords), "components": comps}, indent=2, sort_keys=True)


def _read_json(source):
    if isinstance(source, (dict, list)):
        return source
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
        if not text.lstrip().startswith(("{", "[")):
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
