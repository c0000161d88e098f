"""Quiver paths, projective-cover paths and normal forms modulo a rewrite system.

A path is stored in written order: the word ``("b", "a")`` is ``b*a``, i.e.
``b`` after ``a``; it traverses ``a`` first.  Alongside the word a path keeps
the vertices it visits in traversal order, so initial subpaths need no quiver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple


class PathError(ValueError):
    """Composability violation."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]  # type: ignore[attr-defined]
        except KeyError:
            raise PathError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name  # type: ignore[attr-defined]

    def arrows_from(self, vertex: str) -> Tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.source == vertex)

    def trivial(self, vertex: str) -> "QPath":
        if vertex not in self.vertices:
            raise PathError(f"unknown vertex {vertex!r}")
        return QPath((), (vertex,))

    def path(self, word: Sequence[str], start: str | None = None) -> "QPath":
        """Path with written word ``word``; ``start`` is required when empty."""
        word = tuple(word)
        if not word:
            if start is None:
                raise PathError("a length-0 path needs its vertex")
            return self.trivial(start)
        arrs = [self.arrow(n) for n in reversed(word)]
        verts = [arrs[0].source]
        for a in arrs:
            if a.source != verts[-1]:
                raise PathError(f"{a.name} cannot follow a path ending at {verts[-1]}")
            verts.append(a.target)
        if start is not None and verts[0] != start:
            raise PathError(f"path {'*'.join(word)} does not start at {start}")
        return QPath(word, tuple(verts))


@dataclass(frozen=True)
class QPath:
    word: Tuple[str, ...]
    verts: Tuple[str, ...]

    @property
    def start(self) -> str:
        return self.verts[0]

    @property
    def end(self) -> str:
        return self.verts[-1]

    @property
    def length(self) -> int:
        return len(self.word)

    def traversal(self) -> Tuple[str, ...]:
        return self.word[::-1]

    def prefix(self, k: int) -> "QPath":
        """Initial subpath of length ``k`` (the last ``k`` letters of the word)."""
        n = len(self.word)
        return QPath(self.word[n - k:], self.verts[: k + 1])

    def __str__(self) -> str:
        return "*".join(self.word) if self.word else f"e[{self.start}]"


def compose(p: QPath, q: QPath) -> QPath:
    """``p`` after ``q``."""
    if p.start != q.end:
        raise PathError(f"cannot compose {p} after {q}: {p.start} != {q.end}")
    return QPath(p.word + q.word, q.verts + p.verts[1:])


def arrow_path(a: Arrow) -> QPath:
    return QPath((a.name,), (a.source, a.target))


LinComb = Dict[QPath, Fraction]


def lincomb_add(target: Dict, key, coeff) -> None:
    """``target[key] += coeff`` keeping no zero entries."""
    c = target.get(key, 0) + coeff
    if c:
        target[key] = c
    else:
        target.pop(key, None)


def is_parallel(paths: Iterable[QPath]) -> bool:
    return len({(p.start, p.end) for p in paths}) <= 1


# rewriting ----------------------------------------------------------------

class Rewriter:
    """Normal forms of paths under ordered rules, killing length > ``loewy``.

    ``rules`` is a sequence of ``(lhs, rhs)`` with ``lhs`` a path and ``rhs``
    a mapping from parallel paths to coefficients.  Strategy: leftmost match
    in the written word, first listed rule wins.  Results are memoized.
    """

    def __init__(self, rules, loewy: int):
        self.rules = [(l, dict(r)) for l, r in rules]
        self.loewy = loewy
        self._memo: Dict[QPath, Dict[QPath, Fraction]] = {}

    def find_redex(self, word: Tuple[str, ...]):
        for i in range(len(word)):
            for lhs, rhs in self.rules:
                k = lhs.length
                if word[i:i + k] == lhs.word:
                    return i, lhs, rhs
        return None

    def is_irreducible(self, word: Tuple[str, ...]) -> bool:
        return self.find_redex(word) is None

    def normal_form(self, p: QPath) -> Dict[QPath, Fraction]:
        hit = self._memo.get(p)
        if hit is not None:
            return hit
        out: Dict[QPath, Fraction] = {}
        if p.length <= self.loewy:
            red = self.find_redex(p.word)
            if red is None:
                out[p] = Fraction(1)
            else:
                i, lhs, rhs = red
                k = lhs.length
                # the redex word[i:i+k] occupies traversal vertex slots lo..hi
                lo = p.length - i - k
                hi = lo + k
                for r, c in rhs.items():
                    q = QPath(p.word[:i] + r.word + p.word[i + k:],
                              p.verts[:lo] + r.verts + p.verts[hi + 1:])
                    for s, c2 in self.normal_form(q).items():
                        lincomb_add(out, s, c * c2)
        self._memo[p] = out
        return out

    def normal_form_comb(self, comb: Mapping[QPath, Fraction]) -> Dict[QPath, Fraction]:
        out: Dict[QPath, Fraction] = {}
        for p, c in comb.items():
            for q, c2 in self.normal_form(p).items():
                lincomb_add(out, q, c * c2)
        return out


# projective covers --------------------------------------------------------

@dataclass(frozen=True)
class TopFrame:
    """Top elements ``z_1..z_d`` with norming vertices; the first ``t`` span ``P``."""

    norms: Tuple[str, ...]
    t: int

    def __post_init__(self):
        if not 0 <= self.t <= len(self.norms):
            raise ValueError("t must lie between 0 and d")

    @property
    def d(self) -> int:
        return len(self.norms)

    def e(self, r: int) -> str:
        return self.norms[r - 1]

    def tops(self, big: bool = False) -> range:
        return range(1, (self.d if big else self.t) + 1)

    @classmethod
    def from_counts(cls, vertices: Sequence[str], top: Mapping[str, int],
                    dimvec: Mapping[str, int] | None = None) -> "TopFrame":
        """Frame whose first tops realize ``top``, padded up to ``dimvec``.

        Both blocks list vertices in declaration order.
        """
        norms = [v for v in vertices for _ in range(top.get(v, 0))]
        t = len(norms)
        if dimvec is not None:
            for v in vertices:
                extra = dimvec.get(v, 0) - top.get(v, 0)
                if extra < 0:
                    raise ValueError(f"top multiplicity at {v} exceeds the dimension vector")
                norms.extend([v] * extra)
        return cls(tuple(norms), t)

    def extended(self, dimvec: Mapping[str, int], vertices: Sequence[str]) -> "TopFrame":
        """Keep the first ``t`` tops and pad per vertex up to ``dimvec``."""
        top: Dict[str, int] = {}
        for v in self.norms[: self.t]:
            top[v] = top.get(v, 0) + 1
        base = list(self.norms[: self.t])
        for v in vertices:
            extra = dimvec.get(v, 0) - top.get(v, 0)
            if extra < 0:
                raise ValueError(f"top multiplicity at {v} exceeds the dimension vector")
            base.extend([v] * extra)
        return TopFrame(tuple(base), self.t)


@dataclass(frozen=True)
class ProjPath:
    """The element ``p*z_r`` of a projective cover."""

    r: int
    path: QPath

    @property
    def length(self) -> int:
        return self.path.length

    @property
    def end(self) -> str:
        return self.path.end

    def prefix(self, k: int) -> "ProjPath":
        return ProjPath(self.r, self.path.prefix(k))

    def extend(self, a: Arrow) -> "ProjPath":
        return ProjPath(self.r, compose(arrow_path(a), self.path))

    def after(self, q: QPath) -> "ProjPath":
        """``q`` applied to this element."""
        return ProjPath(self.r, compose(q, self.path))

    def __str__(self) -> str:
        if not self.path.word:
            return f"z{self.r}"
        return "*".join(self.path.word) + f"*z{self.r}"


def top_element(frame: TopFrame, r: int) -> ProjPath:
    return ProjPath(r, QPath((), (frame.e(r),)))


def normal_form(x: Mapping[ProjPath, Fraction], rewriter: Rewriter) -> Dict[ProjPath, Fraction]:
    """Rewrite every term; paths longer than the Loewy bound vanish."""
    out: Dict[ProjPath, Fraction] = {}
    for pp, c in x.items():
        for q, c2 in rewriter.normal_form(pp.path).items():
            lincomb_add(out, ProjPath(pp.r, q), c * c2)
    return out
