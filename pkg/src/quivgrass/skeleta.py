"""Semisimple sequences, skeleta, critical paths and their enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .errors import (
    ClosureError,
    InputSyntaxError,
    LayerMismatchError,
    PreconditionError,
    QuivGrassError,
)
from .linalg import rank
from .paths import ProjPath, QPath, TopFrame, arrow_path, compose, top_element


@dataclass(frozen=True)
class SemisimpleSequence:
    """Multiplicities ``grid[l][i]`` of the simple at vertex ``i`` in layer ``l``."""

    vertices: Tuple[str, ...]
    grid: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.grid:
            if len(row) != len(self.vertices):
                raise ValueError("every layer needs one entry per vertex")
            if any(x < 0 for x in row):
                raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def parse(cls, text: str, vertices: Sequence[str]) -> "SemisimpleSequence":
        """Layers separated by ``;``, entries within a layer by ``,`` or spaces."""
        rows = []
        for chunk in text.split(";"):
            parts = chunk.replace(",", " ").split()
            try:
                row = tuple(int(p) for p in parts)
            except ValueError:
                raise InputSyntaxError(f"bad semisimple sequence {text!r}") from None
            if len(row) != len(vertices):
                raise InputSyntaxError(
                    f"layer {chunk.strip()!r} needs {len(vertices)} entries")
            rows.append(row)
        return cls(tuple(vertices), tuple(rows))

    def m(self, l: int, v: str) -> int:
        if l >= len(self.grid):
            return 0
        return self.grid[l][self.vertices.index(v)]

    @property
    def top(self) -> Dict[str, int]:
        return {v: self.grid[0][i] for i, v in enumerate(self.vertices)} if self.grid else {}

    @property
    def dimvec(self) -> Dict[str, int]:
        return {v: sum(row[i] for row in self.grid) for i, v in enumerate(self.vertices)}

    @property
    def t(self) -> int:
        return sum(self.grid[0]) if self.grid else 0

    @property
    def d(self) -> int:
        return sum(map(sum, self.grid))

    def padded(self, layers: int) -> Tuple[Tuple[int, ...], ...]:
        zero = tuple(0 for _ in self.vertices)
        return self.grid + (zero,) * max(0, layers - len(self.grid))

    def __str__(self) -> str:
        return ";".join(",".join(map(str, row)) for row in self.grid)


def dominance_leq(s1: SemisimpleSequence, s2: SemisimpleSequence) -> bool:
    """``s1 <= s2``: every partial layer sum of ``s1`` is at least that of ``s2``."""
    if s1.vertices != s2.vertices or s1.dimvec != s2.dimvec:
        raise ValueError("dominance needs equal dimension vectors")
    n = max(len(s1.grid), len(s2.grid))
    g1, g2 = s1.padded(n), s2.padded(n)
    acc1 = [0] * len(s1.vertices)
    acc2 = [0] * len(s1.vertices)
    for l in range(n):
        for i in range(len(acc1)):
            acc1[i] += g1[l][i]
            acc2[i] += g2[l][i]
            if acc1[i] < acc2[i]:
                return False
    return True


@dataclass(frozen=True)
class Skeleton:
    """Members in canonical order (top index, length, lex); tops are 1..t."""

    frame: TopFrame
    members: Tuple[ProjPath, ...]
    vertices: Tuple[str, ...]
    loewy: int

    @classmethod
    def build(cls, pres, frame: TopFrame, members, dimvec=None, sseq=None) -> "Skeleton":
        members = list(members)
        seen = set()
        for b in members:
            if b in seen:
                raise InputSyntaxError(f"path {b} listed twice")
            seen.add(b)
            if not 1 <= b.r <= frame.t:
                raise QuivGrassError(f"{b}: top index outside 1..{frame.t}")
            if b.path.start != frame.e(b.r):
                raise QuivGrassError(f"{b} does not start at e({b.r}) = {frame.e(b.r)}")
            if b.length > pres.loewy:
                raise LayerMismatchError(f"{b} is longer than the Loewy bound {pres.loewy}")
        for b in members:
            for k in range(b.length):
                if b.prefix(k) not in seen:
                    raise ClosureError(f"{b} is present but its initial subpath {b.prefix(k)} is not")
        for r in frame.tops():
            if top_element(frame, r) not in seen:
                raise ClosureError(f"top z{r} has no paths")
        members.sort(key=pres.proj_key)
        sk = cls(frame, tuple(members), tuple(pres.vertices), pres.loewy)
        if dimvec is not None:
            got = sk.dimvec
            want = {v: dimvec.get(v, 0) for v in pres.vertices}
            if got != want:
                raise LayerMismatchError(f"dimension vector {got} differs from declared {want}")
        if sseq is not None:
            got_s = sk.layering()
            n = max(len(got_s.grid), len(sseq.grid))
            if got_s.padded(n) != sseq.padded(n):
                raise LayerMismatchError(f"radical layering {got_s} differs from declared {sseq}")
        return sk

    @property
    def d(self) -> int:
        return len(self.members)

    @property
    def t(self) -> int:
        return self.frame.t

    def __contains__(self, b) -> bool:
        return b in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_memberset")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_memberset", s)
        return s

    def index(self, b: ProjPath) -> int:
        """1-based position of ``b`` in the canonical enumeration ``b_1..b_d``."""
        return self.members.index(b) + 1

    @property
    def dimvec(self) -> Dict[str, int]:
        out = {v: 0 for v in self.vertices}
        for b in self.members:
            out[b.end] += 1
        return out

    def layering(self) -> SemisimpleSequence:
        depth = max((b.length for b in self.members), default=0)
        grid = [[0] * len(self.vertices) for _ in range(depth + 1)]
        for b in self.members:
            grid[b.length][self.vertices.index(b.end)] += 1
        return SemisimpleSequence(self.vertices, tuple(map(tuple, grid)))

    def tree(self, r: int) -> Tuple[ProjPath, ...]:
        return tuple(b for b in self.members if b.r == r)

    def format(self) -> str:
        """Skeleton file text; parses back to an equal skeleton."""
        lines = []
        for r in self.frame.tops():
            words = ["ε" if not b.path.word else "*".join(b.path.word) for b in self.tree(r)]
            lines.append(f"z{r} @ {self.frame.e(r)} : " + ", ".join(words))
        return " ;\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class CriticalPath:
    path: ProjPath
    companions: Tuple[ProjPath, ...]

    @property
    def length(self) -> int:
        return self.path.length

    def __str__(self) -> str:
        return str(self.path)


def big_frame(sk: Skeleton, dimvec: Mapping[str, int] | None = None) -> TopFrame:
    """Frame of the big cover: the skeleton's tops, padded up to ``dimvec``."""
    return sk.frame.extended(dimvec if dimvec is not None else sk.dimvec, sk.vertices)


def companions(sk: Skeleton, b: ProjPath) -> Tuple[ProjPath, ...]:
    return tuple(s for s in sk.members if s.end == b.end and s.length >= b.length)


def critical_paths(sk: Skeleton, pres, setting: str = "small",
                   dimvec: Mapping[str, int] | None = None) -> List[CriticalPath]:
    """σ-critical paths in canonical order.

    In the big setting the tops ``z_r`` with ``r > t`` of the padded frame are
    included; ``dimvec`` defaults to that of the skeleton.
    """
    if setting not in ("small", "big"):
        raise ValueError("setting must be 'small' or 'big'")
    found = []
    for b in sk.members:
        if b.length >= pres.loewy:
            continue
        for a in pres.quiver.arrows_from(b.end):
            p = b.extend(a)
            if p not in sk:
                found.append(p)
    found.sort(key=pres.proj_key)
    out = [CriticalPath(p, companions(sk, p)) for p in found]
    if setting == "big":
        frame = big_frame(sk, dimvec)
        for r in range(sk.t + 1, frame.d + 1):
            z = top_element(frame, r)
            out.append(CriticalPath(z, companions(sk, z)))
    return out


# enumeration -------------------------------------------------------------

def enumerate_skeleta(sseq: SemisimpleSequence, pres, dedup: bool = False) -> List[Skeleton]:
    """All skeleta in the small cover with radical layering ``sseq``."""
    return list(iter_skeleta(sseq, pres, dedup))


def iter_skeleta(sseq: SemisimpleSequence, pres, dedup: bool = False) -> Iterator[Skeleton]:
    if tuple(sseq.vertices) != tuple(pres.vertices):
        raise ValueError("semisimple sequence vertices differ from the quiver's")
    layers = len(sseq.grid)
    if any(any(sseq.grid[l]) for l in range(pres.loewy + 1, layers)):
        return
    frame = TopFrame.from_counts(pres.vertices, sseq.top)
    if frame.t == 0:
        return
    tops = [top_element(frame, r) for r in frame.tops()]
    seen = set()

    def rec(l: int, prev: List[ProjPath], acc: List[ProjPath]):
        if l >= layers or not any(sseq.grid[l]):
            if any(any(sseq.grid[k]) for k in range(l, layers)):
                return  # a nonzero layer after an empty one cannot be reached
            yield acc
            return
        cands: Dict[str, List[ProjPath]] = {}
        for b in prev:
            for a in pres.quiver.arrows_from(b.end):
                p = b.extend(a)
                cands.setdefault(p.end, []).append(p)
        choices = []
        for v in pres.vertices:
            k = sseq.m(l, v)
            pool = sorted(cands.get(v, []), key=pres.proj_key)
            if k > len(pool):
                return
            choices.append(list(itertools.combinations(pool, k)))
        for combo in itertools.product(*choices):
            layer = [p for part in combo for p in part]
            yield from rec(l + 1, layer, acc + layer)

    for members in rec(1, tops, list(tops)):
        sk = Skeleton.build(pres, frame, members)
        if dedup:
            key = _permutation_class(sk)
            if key in seen:
                continue
            seen.add(key)
        yield sk


def _permutation_class(sk: Skeleton):
    # trees as word sets, sorted within each norming vertex
    per_vertex: Dict[str, List[tuple]] = {}
    for r in sk.frame.tops():
        shape = tuple(sorted(b.path.word for b in sk.tree(r)))
        per_vertex.setdefault(sk.frame.e(r), []).append(shape)
    return tuple(sorted((v, tuple(sorted(s))) for v, s in per_vertex.items()))


# normalized skeleta --------------------------------------------------------

def is_normalized(sk: Skeleton, pres) -> Tuple[bool, Tuple[int, ...], Tuple[int, ...]]:
    """Split into depth <= 1 trees and full trees of Loewy-length-3 projectives.

    Returns ``(ok, tops in the first part, tops in the second part)``.
    """
    if not pres.self_injective:
        raise PreconditionError("the presentation is not flagged self_injective")
    if pres.loewy != 2:
        raise PreconditionError("normalized skeleta need Loewy bound L = 2")
    from .presentation import algebra_basis

    low, full = [], []
    for r in sk.frame.tops():
        tree = sk.tree(r)
        depth = max(b.length for b in tree)
        if depth <= 1:
            low.append(r)
            continue
        root = sk.frame.e(r)
        firsts = {b.path.word[0] for b in tree if b.length == 1}
        if firsts != {a.name for a in pres.quiver.arrows_from(root)}:
            return False, (), ()
        basis = algebra_basis(pres, root)
        if len(tree) != len(basis):
            return False, (), ()
        images = [pres.normal_form(b.path) for b in tree]
        if rank(images) != len(tree):
            return False, (), ()
        full.append(r)
    return True, tuple(low), tuple(full)


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def semisimple_sequences(vertices: Sequence[str], dimvec: Mapping[str, int],
                         layers: int) -> List[SemisimpleSequence]:
    """Every sequence with ``layers`` layers and the given dimension vector.

    Trailing zero layers are trimmed; sequences with a zero top are skipped.
    """
    per_vertex = [list(_compositions(dimvec.get(v, 0), layers)) for v in vertices]
    out = []
    seen = set()
    for combo in itertools.product(*per_vertex):
        grid = [tuple(combo[i][l] for i in range(len(vertices))) for l in range(layers)]
        while len(grid) > 1 and not any(grid[-1]):
            grid.pop()
        if not any(grid[0]):
            continue
        g = tuple(grid)
        if g not in seen:
            seen.add(g)
            out.append(SemisimpleSequence(tuple(vertices), g))
    return out


def all_skeleta(pres, dimvec: Mapping[str, int], dedup: bool = False) -> List[Skeleton]:
    """Skeleta of every radical layering with dimension vector ``dimvec``."""
    out = []
    for s in semisimple_sequences(pres.vertices, dimvec, pres.loewy + 1):
        out.extend(enumerate_skeleta(s, pres, dedup))
    return out
