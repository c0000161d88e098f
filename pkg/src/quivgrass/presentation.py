"""Text format for algebra presentations and skeleta.

Presentation files are line oriented::

    [quiver]
    vertex 1
    arrow a: 1 -> 1
    arrow b: 1 -> 1
    [relations]
    a*a
    a*b - b*a
    [loewy]
    L = 2
    [rules]
    a*b -> b*a
    a*a -> 0
    [order]
    a < b
    [options]
    self_injective = true
    alias α = a

``*`` is composition, ``p*q`` meaning ``p`` after ``q``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import (
    ClosureError,
    CompositionError,
    InputSyntaxError,
    LayerMismatchError,
    NonParallelRelationError,
    NonReducingRuleError,
    QuivGrassError,
    ReferenceError_,
)
from .paths import (
    Arrow,
    PathError,
    ProjPath,
    QPath,
    Quiver,
    Rewriter,
    TopFrame,
    is_parallel,
    lincomb_add,
)

Term = Tuple[QPath, Fraction]


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: Tuple[Tuple[Term, ...], ...]
    loewy: int
    rules: Tuple[Tuple[QPath, Tuple[Term, ...]], ...]
    order: Tuple[str, ...]
    options: Tuple[Tuple[str, str], ...] = ()
    aliases: Tuple[Tuple[str, str], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # orders ---------------------------------------------------------------
    @property
    def rank(self) -> Dict[str, int]:
        r = self._cache.get("rank")
        if r is None:
            r = self._cache["rank"] = {a: i for i, a in enumerate(self.order)}
        return r

    def path_key(self, p: QPath) -> tuple:
        """Canonical order: length, then lex on the traversed arrow sequence."""
        rank = self.rank
        return (p.length, tuple(rank[a] for a in reversed(p.word)))

    def proj_key(self, pp: ProjPath) -> tuple:
        return (pp.r,) + self.path_key(pp.path)

    # rewriting ------------------------------------------------------------
    @property
    def rewriter(self) -> Rewriter:
        rw = self._cache.get("rewriter")
        if rw is None:
            rw = self._cache["rewriter"] = Rewriter(
                [(lhs, dict(rhs)) for lhs, rhs in self.rules], self.loewy)
        return rw

    def normal_form(self, p: QPath) -> Dict[QPath, Fraction]:
        return self.rewriter.normal_form(p)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    def option(self, key: str, default: str | None = None) -> str | None:
        return dict(self.options).get(key, default)

    @property
    def self_injective(self) -> bool:
        return (self.option("self_injective", "false") or "").lower() in ("true", "yes", "1")

    def relation_dicts(self) -> List[Dict[QPath, Fraction]]:
        return [dict(rel) for rel in self.relations]

    def arrow_by_symbol(self, sym: str) -> str:
        sym = dict(self.aliases).get(sym, sym)
        if not self.quiver.has_arrow(sym):
            raise ReferenceError_(f"unknown arrow {sym!r}")
        return sym


# paths of the path algebra -------------------------------------------------

def all_paths(quiver: Quiver, max_length: int, start: str | None = None) -> List[QPath]:
    """Every path of length <= ``max_length`` (optionally from ``start``)."""
    layer = [quiver.trivial(v) for v in quiver.vertices if start is None or v == start]
    out = list(layer)
    for _ in range(max_length):
        nxt = []
        for p in layer:
            for a in quiver.arrows_from(p.end):
                nxt.append(QPath((a.name,) + p.word, p.verts + (a.target,)))
        out.extend(nxt)
        layer = nxt
    return out


def algebra_basis(pres: Presentation, start: str | None = None) -> List[QPath]:
    """Rule-irreducible paths of length <= L in canonical order."""
    rw = pres.rewriter
    paths = [p for p in all_paths(pres.quiver, pres.loewy, start) if rw.is_irreducible(p.word)]
    vindex = {v: i for i, v in enumerate(pres.vertices)}
    paths.sort(key=lambda p: (pres.path_key(p), vindex[p.start], vindex[p.end]))
    return paths


def boldP_basis(frame: TopFrame, pres: Presentation, big: bool = True) -> List[ProjPath]:
    """The path basis ``q*z_r`` of the cover, ordered by (r, length, lex)."""
    out = []
    for r in frame.tops(big):
        out.extend(ProjPath(r, q) for q in algebra_basis(pres, frame.e(r)))
    return out


# parsing ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<num>\d+(?:/\d+)?)|(?P<name>[^\W\d]\w*)|(?P<op>[*+\-<=:,;@]))"
)
_SECTIONS = ("quiver", "relations", "loewy", "rules", "order", "options")


def _tokens(text: str, lineno: int) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise InputSyntaxError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _LineParser:
    def __init__(self, text: str, lineno: int):
        self.toks = _tokens(text, lineno)
        self.i = 0
        self.lineno = lineno
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text.rstrip()) + 1)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = tok[1] if tok[0] else "end of line"
            raise InputSyntaxError(f"expected {want}, found {got!r}", self.lineno, tok[2])
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def expect_end(self):
        if not self.at_end():
            tok = self.peek()
            raise InputSyntaxError(f"unexpected {tok[1]!r}", self.lineno, tok[2])

    def word(self) -> Tuple[Tuple[str, ...], int]:
        _, name, col = self.take("name")
        names = [name]
        while self.peek()[0] == "op" and self.peek()[1] == "*" and self._next_is_name():
            self.take("op", "*")
            names.append(self.take("name")[1])
        return tuple(names), col

    def _next_is_name(self) -> bool:
        return self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "name"

    def combination(self, allow_zero: bool = False) -> List[Tuple[Tuple[str, ...], Fraction, int]]:
        """Signed sum of ``[coeff*]word`` terms; a bare ``0`` gives the empty sum."""
        terms = []
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.take()
        while True:
            tok = self.peek()
            coeff = Fraction(1)
            if tok[0] == "num":
                self.take()
                coeff = Fraction(tok[1])
                if self.peek()[0] == "op" and self.peek()[1] == "*":
                    self.take()
                elif coeff == 0 and allow_zero and not terms and self.at_end():
                    return []
                else:
                    raise InputSyntaxError("a coefficient must multiply a path", self.lineno, tok[2])
            w, col = self.word()
            terms.append((w, sign * coeff, col))
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                sign = -1 if tok[1] == "-" else 1
                self.take()
                continue
            return terms


def _split_sections(text: str):
    sections: Dict[str, List[Tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise InputSyntaxError("unterminated section header", lineno, len(line) + 1)
            name = stripped[1:-1].strip().lower()
            if name not in _SECTIONS:
                raise InputSyntaxError(f"unknown section [{name}]", lineno, line.index("[") + 1)
            if name in sections:
                raise InputSyntaxError(f"duplicate section [{name}]", lineno, line.index("[") + 1)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise InputSyntaxError("content before the first section header", lineno, 1)
        sections[current].append((lineno, line))
    return sections


def _build_path(quiver: Quiver, word, lineno: int) -> QPath:
    for name in word:
        if not quiver.has_arrow(name):
            raise ReferenceError_(f"line {lineno}: unknown arrow {name!r}")
    try:
        return quiver.path(word)
    except PathError as exc:
        raise CompositionError(f"line {lineno}: {exc}") from None


def parse_presentation(text: str) -> Presentation:
    sections = _split_sections(text)
    if "quiver" not in sections:
        raise InputSyntaxError("missing [quiver] section")
    if "loewy" not in sections:
        raise InputSyntaxError("missing [loewy] section")

    vertices: List[str] = []
    arrows: List[Arrow] = []
    for lineno, line in sections["quiver"]:
        p = _LineParser(line, lineno)
        kw = p.take("name")[1]
        if kw == "vertex":
            while not p.at_end():
                tok = p.peek()
                if tok[0] not in ("name", "num") or "/" in tok[1]:
                    raise InputSyntaxError("bad vertex name", lineno, tok[2])
                p.take()
                if tok[1] in vertices:
                    raise InputSyntaxError(f"duplicate vertex {tok[1]!r}", lineno, tok[2])
                vertices.append(tok[1])
        elif kw == "arrow":
            _, name, col = p.take("name")
            p.take("op", ":")
            src = _vertex_token(p, lineno)
            p.take("arrow")
            tgt = _vertex_token(p, lineno)
            p.expect_end()
            for v in (src, tgt):
                if v[0] not in vertices:
                    raise ReferenceError_(f"line {lineno}: arrow {name!r} references undeclared vertex {v[0]!r}")
            if any(a.name == name for a in arrows):
                raise InputSyntaxError(f"duplicate arrow {name!r}", lineno, col)
            if name in ("e", "ε"):
                raise InputSyntaxError(f"{name!r} is reserved for length-0 paths", lineno, col)
            arrows.append(Arrow(name, src[0], tgt[0]))
        else:
            raise InputSyntaxError(f"expected 'vertex' or 'arrow', found {kw!r}", lineno, 1)
    if not vertices:
        raise InputSyntaxError("the quiver has no vertices")
    quiver = Quiver(tuple(vertices), tuple(arrows))

    loewy = None
    for lineno, line in sections["loewy"]:
        p = _LineParser(line, lineno)
        if loewy is not None:
            raise InputSyntaxError("[loewy] takes a single line", lineno, 1)
        p.take("name", "L")
        p.take("op", "=")
        tok = p.take("num")
        if "/" in tok[1]:
            raise InputSyntaxError("the Loewy bound must be an integer", lineno, tok[2])
        p.expect_end()
        loewy = int(tok[1])
    if loewy is None:
        raise InputSyntaxError("[loewy] needs a line 'L = <int>'")

    order = [a.name for a in arrows]
    if "order" in sections:
        listed: List[str] = []
        for lineno, line in sections["order"]:
            p = _LineParser(line, lineno)
            while not p.at_end():
                tok = p.take()
                if tok[0] == "op" and tok[1] in "<,":
                    continue
                if tok[0] != "name":
                    raise InputSyntaxError(f"unexpected {tok[1]!r}", lineno, tok[2])
                if not quiver.has_arrow(tok[1]):
                    raise ReferenceError_(f"line {lineno}: unknown arrow {tok[1]!r} in [order]")
                if tok[1] in listed:
                    raise InputSyntaxError(f"arrow {tok[1]!r} listed twice", lineno, tok[2])
                listed.append(tok[1])
        if set(listed) != set(order):
            missing = sorted(set(order) - set(listed))
            raise InputSyntaxError(f"[order] must list every arrow; missing {missing}")
        order = listed
    rank = {a: i for i, a in enumerate(order)}

    def key(p: QPath):
        return (p.length, tuple(rank[a] for a in reversed(p.word)))

    relations = []
    for lineno, line in sections.get("relations", []):
        p = _LineParser(line, lineno)
        terms = p.combination()
        p.expect_end()
        comb: Dict[QPath, Fraction] = {}
        paths = []
        for w, c, _ in terms:
            qp = _build_path(quiver, w, lineno)
            paths.append(qp)
            lincomb_add(comb, qp, c)
        if not is_parallel(paths):
            raise NonParallelRelationError(f"line {lineno}: relation terms do not share source and target")
        if not comb:
            raise InputSyntaxError("relation is identically zero", lineno, 1)
        relations.append(tuple(sorted(comb.items(), key=lambda t: key(t[0]), reverse=True)))

    rules = []
    for lineno, line in sections.get("rules", []):
        p = _LineParser(line, lineno)
        lhs_terms = p.combination()
        if len(lhs_terms) != 1 or lhs_terms[0][1] != 1:
            raise InputSyntaxError("a rule's left side must be a single path", lineno, 1)
        p.take("arrow")
        rhs_terms = p.combination(allow_zero=True)
        p.expect_end()
        lhs = _build_path(quiver, lhs_terms[0][0], lineno)
        rhs: Dict[QPath, Fraction] = {}
        for w, c, _ in rhs_terms:
            qp = _build_path(quiver, w, lineno)
            if (qp.start, qp.end) != (lhs.start, lhs.end):
                raise NonParallelRelationError(f"line {lineno}: rule sides are not parallel")
            if not key(qp) < key(lhs):
                raise NonReducingRuleError(
                    f"line {lineno}: {qp} is not smaller than {lhs} in length-lex order")
            lincomb_add(rhs, qp, c)
        rules.append((lhs, tuple(sorted(rhs.items(), key=lambda t: key(t[0]), reverse=True))))

    options = []
    aliases = []
    for lineno, line in sections.get("options", []):
        body = line.strip()
        if body.startswith("alias"):
            m = re.fullmatch(r"alias\s+(\S+)\s*=\s*(\S+)", body)
            if not m:
                raise InputSyntaxError("expected 'alias <symbol> = <arrow>'", lineno, 1)
            if not quiver.has_arrow(m.group(2)):
                raise ReferenceError_(f"line {lineno}: alias for unknown arrow {m.group(2)!r}")
            aliases.append((m.group(1), m.group(2)))
            continue
        m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(\S+)", body)
        if not m:
            raise InputSyntaxError("expected 'key = value'", lineno, 1)
        options.append((m.group(1), m.group(2)))

    return Presentation(quiver, tuple(relations), loewy, tuple(rules), tuple(order),
                        tuple(options), tuple(aliases))


def _vertex_token(p: _LineParser, lineno: int):
    tok = p.peek()
    if tok[0] not in ("name", "num"):
        raise InputSyntaxError("expected a vertex name", lineno, tok[2])
    p.take()
    return tok[1], tok[2]


# printing ----------------------------------------------------------------------

def format_coeff_term(c: Fraction, p: QPath, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    body = str(p) if mag == 1 else f"{mag}*{p}"
    if first:
        return sign + body
    return f" {sign} {body}"


def format_combination(terms: Iterable[Term]) -> str:
    terms = list(terms)
    if not terms:
        return "0"
    return "".join(format_coeff_term(c, p, i == 0) for i, (p, c) in enumerate(terms))


def format_presentation(pres: Presentation) -> str:
    lines = ["[quiver]", "vertex " + " ".join(pres.vertices)]
    lines += [f"arrow {a.name}: {a.source} -> {a.target}" for a in pres.quiver.arrows]
    if pres.relations:
        lines.append("[relations]")
        lines += [format_combination(rel) for rel in pres.relations]
    lines += ["[loewy]", f"L = {pres.loewy}"]
    if pres.rules:
        lines.append("[rules]")
        lines += [f"{lhs} -> {format_combination(rhs)}" for lhs, rhs in pres.rules]
    lines += ["[order]", " < ".join(pres.order)]
    if pres.options or pres.aliases:
        lines.append("[options]")
        lines += [f"{k} = {v}" for k, v in pres.options]
        lines += [f"alias {s} = {a}" for s, a in pres.aliases]
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# skeleton files -----------------------------------------------------------------

_SKEL_ENTRY = re.compile(r"^\s*z(\d+)\s*@\s*(\S+?)\s*:(.*)$", re.S)


def _parse_skeleton_path(tok: str, pres: Presentation, vertex: str, where: str) -> QPath:
    tok = tok.strip()
    quiver = pres.quiver
    if tok in ("ε", "e") and not quiver.has_arrow(tok):
        return quiver.trivial(vertex)
    if "*" in tok:
        syms = [s.strip() for s in tok.split("*")]
    elif _symbol_known(tok, pres):
        syms = [tok]
    else:
        syms = list(tok)  # concatenated one-character arrow names
    if not syms or any(not s for s in syms):
        raise InputSyntaxError(f"{where}: malformed path {tok!r}")
    word = []
    for s in syms:
        try:
            word.append(pres.arrow_by_symbol(s))
        except ReferenceError_:
            raise ReferenceError_(f"{where}: unknown arrow {s!r} in path {tok!r}") from None
    try:
        return quiver.path(word, start=vertex)
    except PathError as exc:
        raise CompositionError(f"{where}: path {tok!r} is not composable from vertex {vertex}: {exc}") from None


def _symbol_known(sym: str, pres: Presentation) -> bool:
    return pres.quiver.has_arrow(sym) or sym in dict(pres.aliases)


def parse_skeleton(text: str, pres: Presentation, dimvec: Mapping[str, int] | None = None,
                   sseq=None):
    """Parse ``z<r> @ <vertex> : <paths>`` entries separated by ``;`` or newlines.

    Tops must be numbered 1..t; members are validated for composability,
    initial-subpath closure, the Loewy bound and (optionally) against a
    dimension vector or a semisimple sequence.
    """
    from .skeleta import Skeleton

    cleaned = "\n".join(l.split("#", 1)[0] for l in text.splitlines())
    chunks = [c for c in re.split(r"[;\n]", cleaned) if c.strip()]
    norms: Dict[int, str] = {}
    members: List[ProjPath] = []
    for chunk in chunks:
        m = _SKEL_ENTRY.match(chunk)
        if not m:
            raise InputSyntaxError(f"malformed skeleton entry {chunk.strip()!r}")
        r = int(m.group(1))
        vertex = m.group(2)
        if vertex not in pres.vertices:
            raise ReferenceError_(f"z{r}: unknown vertex {vertex!r}")
        if r in norms:
            raise InputSyntaxError(f"top z{r} listed twice")
        norms[r] = vertex
        where = f"z{r}"
        for tok in m.group(3).split(","):
            if not tok.strip():
                raise InputSyntaxError(f"{where}: empty path entry")
            members.append(ProjPath(r, _parse_skeleton_path(tok, pres, vertex, where)))
    if not norms:
        raise InputSyntaxError("empty skeleton")
    t = len(norms)
    if sorted(norms) != list(range(1, t + 1)):
        raise InputSyntaxError(f"tops must be numbered z1..z{t}")
    frame = TopFrame(tuple(norms[r] for r in range(1, t + 1)), t)
    return Skeleton.build(pres, frame, members, dimvec=dimvec, sseq=sseq)


def load_skeleton(path, pres: Presentation, **kw):
    with open(path, encoding="utf-8") as fh:
        return parse_skeleton(fh.read(), pres, **kw)
