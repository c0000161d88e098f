"""Exact Gaussian elimination over Q on sparse row vectors (dicts)."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


class EchelonSpan:
    """Incrementally maintained row-echelon basis of a subspace.

    Each stored row remembers how it was built from the inserted vectors,
    so membership queries also return coordinates.
    """

    def __init__(self):
        self.rows: List[Tuple[Hashable, Vec, Dict[int, Fraction]]] = []  # pivot, row, combo
        self.count = 0

    def _reduce(self, v: Mapping) -> Tuple[Vec, Dict[int, Fraction]]:
        v = {k: Fraction(c) for k, c in v.items() if c}
        combo: Dict[int, Fraction] = {}
        for pivot, row, rc in self.rows:
            c = v.get(pivot)
            if not c:
                continue
            for k, x in row.items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for i, x in rc.items():
                nc = combo.get(i, 0) - c * x
                if nc:
                    combo[i] = nc
                else:
                    combo.pop(i, None)
        return v, combo

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; return False (and store nothing) if it is dependent."""
        r, combo = self._reduce(v)
        idx = self.count
        if not r:
            return False
        self.count += 1
        combo[idx] = combo.get(idx, 0) + 1
        pivot = min(r, key=repr)
        c = r[pivot]
        r = {k: x / c for k, x in r.items()}
        combo = {i: x / c for i, x in combo.items()}
        # keep earlier rows reduced against the new pivot
        new_rows = []
        for p, row, rc in self.rows:
            f = row.get(pivot)
            if f:
                row = dict(row)
                for k, x in r.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                rc = dict(rc)
                for i, x in combo.items():
                    nc = rc.get(i, 0) - f * x
                    if nc:
                        rc[i] = nc
                    else:
                        rc.pop(i, None)
            new_rows.append((p, row, rc))
        new_rows.append((pivot, r, combo))
        self.rows = new_rows
        return True

    def contains(self, v: Mapping) -> bool:
        return not self._reduce(v)[0]

    def coordinates(self, v: Mapping) -> Optional[Dict[int, Fraction]]:
        """Coefficients ``k_i`` with ``v = sum k_i * (i-th accepted vector)``."""
        r, combo = self._reduce(v)
        if r:
            return None
        return {i: -x for i, x in combo.items()}

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Sequence[Mapping]) -> int:
    span = EchelonSpan()
    for v in vectors:
        span.add(v)
    return span.rank


def mat_mul(a: List[List[Fraction]], b: List[List[Fraction]]) -> List[List[Fraction]]:
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[Fraction(0)] * cols for _ in range(rows)]
    inner = len(b)
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def is_zero_matrix(m: List[List[Fraction]]) -> bool:
    return all(x == 0 for row in m for x in row)
