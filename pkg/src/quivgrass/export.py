"""Stable rendering of polynomial systems and CAS script generation."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .polyring import Poly, Var
from .polyring.poly import graded_key

Z_LABEL = "Z"


def canonical_list(polys: Iterable[Poly]) -> List[Poly]:
    """Integer-cleared, deduplicated, sorted by (degree, leading monomial)."""
    out = {}
    for p in polys:
        if p.is_zero():
            continue
        c = p.canonical()
        out[c] = None
    return sorted(out, key=_sort_key)


def _sort_key(p: Poly):
    lm = p.leading_monomial()
    return (p.total_degree(), graded_key(lm), str(p))


def rename(p: Poly, names: Mapping[Var, Var]) -> Poly:
    return p.subs({v: Poly.var(w) for v, w in names.items()}) if names else p


def z_alias(z: Var) -> Dict[Var, Var]:
    return {z: Var("Z", (), Z_LABEL)}


def ordered_variables(polys: Iterable[Poly], declared: Sequence[Var] = ()) -> List[Var]:
    vs = set(declared)
    for p in polys:
        vs.update(p.variables())
    return sorted(vs, key=lambda v: v.sort_key)


def poly_to_json(p: Poly) -> dict:
    terms = []
    for m, c in p.sorted_terms():
        terms.append({"monomial": [[str(v), e] for v, e in m], "coefficient": str(c)})
    return {"text": str(p), "terms": terms}


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


# CAS scripts ----------------------------------------------------------------------

def _cas_names(variables: Sequence[Var]) -> Dict[Var, str]:
    return {v: f"x{i}" for i, v in enumerate(variables, 1)}


def _cas_poly(p: Poly, names: Mapping[Var, str]) -> str:
    pieces = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        assert c.denominator == 1
        mono = "*".join(names[v] + (f"^{e}" if e > 1 else "") for v, e in m)
        mag = abs(c.numerator)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        if i == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces) if pieces else "0"


def mapping_table(variables: Sequence[Var]) -> List[Tuple[str, str]]:
    names = _cas_names(variables)
    return [(names[v], str(v)) for v in variables]


def export_cas(polys: Sequence[Poly], dialect: str, variables: Sequence[Var] = (),
               homogeneous: Optional[bool] = None, title: str = "") -> str:
    """A self-contained Macaulay2 or Singular script for the ideal of ``polys``."""
    polys = canonical_list(polys)
    variables = ordered_variables(polys, variables)
    if homogeneous is None:
        homogeneous = bool(polys) and all(p.is_homogeneous() for p in polys)
    names = _cas_names(variables)
    table = mapping_table(variables)
    body = [_cas_poly(p, names) for p in polys]
    if dialect in ("m2", "macaulay2"):
        return _m2(title, table, body, homogeneous)
    if dialect == "singular":
        return _singular(title, table, body, homogeneous)
    raise ValueError(f"unknown CAS dialect {dialect!r}")


def _m2(title, table, body, homogeneous) -> str:
    lines = []
    if title:
        lines.append(f"-- {title}")
    lines.append("-- variable map")
    lines += [f"--   {x} = {label}" for x, label in table]
    ring_vars = ", ".join(x for x, _ in table) or "dummy"
    lines.append(f"R = QQ[{ring_vars}];")
    if body:
        lines.append("I = ideal(" + ", ".join(body) + ");")
    else:
        lines.append("I = ideal(0_R);")
    lines.append("print minimalPrimes I;")
    lines.append("print primaryDecomposition I;")
    if homogeneous:
        lines.append("print isPrime I;")
    return "\n".join(lines) + "\n"


def _singular(title, table, body, homogeneous) -> str:
    lines = []
    if title:
        lines.append(f"// {title}")
    lines.append("// variable map")
    lines += [f"//   {x} = {label}" for x, label in table]
    lines.append('LIB "primdec.lib";')
    ring_vars = ",".join(x for x, _ in table) or "dummy"
    lines.append(f"ring R = 0,({ring_vars}),dp;")
    if body:
        lines.append("ideal I = " + ", ".join(body) + ";")
    else:
        lines.append("ideal I = 0;")
    lines.append("list P = minAssGTZ(I);")
    lines.append("P;")
    lines.append("list Q = primdecGTZ(I);")
    lines.append("Q;")
    if homogeneous:
        lines.append("int isprime = (size(Q) == 1);")
        lines.append("if (isprime) { isprime = (size(reduce(Q[1][2], std(I))) == 0); }")
        lines.append("isprime;")
    return "\n".join(lines) + "\n"


def parse_mapping(script: str) -> List[Tuple[str, str]]:
    """Recover the ``(cas name, engine name)`` table from a generated script."""
    out = []
    for line in script.splitlines():
        s = line.lstrip("-/ ").rstrip()
        if line.lstrip().startswith(("--", "//")) and " = " in s and s.startswith("x"):
            x, label = s.split(" = ", 1)
            out.append((x.strip(), label.strip()))
    return out
