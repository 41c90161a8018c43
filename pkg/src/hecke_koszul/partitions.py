"""Partitions, Pieri rules and the hook-restricted Hom dimensions.

Simple comodules of the matrix bialgebra of a Hecke symmetry of birank
(m, n) are labelled by partitions in the (m, n)-hook; S^l and Lambda^k carry
the labels (l) and (1^k).  Tensoring with them is governed by the Pieri rules,
so Hom dimensions between such products reduce to counting common hook-valid
constituents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()):
        p = tuple(int(x) for x in parts)
        if any(x < 0 for x in p):
            raise ValueError(f"negative part in {p}")
        if any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"parts must be weakly decreasing: {p}")
        while p and p[-1] == 0:
            p = p[:-1]
        if 0 in p:
            raise ValueError(f"zero part inside {p}")
        object.__setattr__(self, "parts", p)

    @classmethod
    def rectangle(cls, width: int, height: int) -> "Partition":
        """(width^height): ``height`` rows of length ``width``."""
        return cls((width,) * height if width > 0 else ())

    def __getitem__(self, i: int) -> int:
        """Part i (1-based), zero past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __len__(self):
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for x in self.parts if x > j) for j in range(self.parts[0]))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def hook_valid(lam: Partition, m: int, n: int) -> bool:
    return lam[m + 1] <= n


def _sort(parts: Iterable[Partition]) -> list[Partition]:
    return sorted(set(parts), key=lambda p: p.parts, reverse=True)


def pieri_row(lam: Partition, l: int) -> list[Partition]:
    """Partitions obtained from lam by adding a horizontal strip of size l."""
    if l < 0:
        raise ValueError("l must be >= 0")
    old = lam.parts + (0,)
    out = []

    def grow(i, left, acc):
        if i == len(old):
            if left == 0:
                out.append(Partition(acc))
            return
        # row i may grow up to the old length of row i-1
        cap = left if i == 0 else min(left, old[i - 1] - old[i])
        for a in range(cap, -1, -1):
            grow(i + 1, left - a, acc + (old[i] + a,))

    grow(0, l, ())
    return _sort(out)


def pieri_col(lam: Partition, k: int) -> list[Partition]:
    """Partitions obtained from lam by adding a vertical strip of size k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _sort(g.conjugate() for g in pieri_row(lam.conjugate(), k))


@dataclass(frozen=True)
class HomQuery:
    alpha: Partition
    row: int
    beta: Partition
    col: int
    hook: tuple[int, int]

    def __post_init__(self):
        if self.row < 0 or self.col < 0 or min(self.hook) < 0:
            raise ValueError("row, col and hook entries must be >= 0")


def hom_dimension(query: HomQuery) -> int:
    """dim Hom(M_alpha (x) S^row, M_beta (x) Lambda^col) over hook-valid constituents."""
    m, n = query.hook
    left = set(pieri_row(query.alpha, query.row))
    right = pieri_col(query.beta, query.col)
    return sum(1 for g in right if g in left and hook_valid(g, m, n))


def birank_hom_queries(m: int, n: int) -> tuple[HomQuery, HomQuery, HomQuery]:
    alpha = Partition.rectangle(n + 1, m)
    beta = Partition.rectangle(n, m + 1)
    return (
        HomQuery(alpha, n, beta, m, (m, n)),
        HomQuery(alpha, n - 1, beta, m + 1, (m, n)),
        HomQuery(alpha, n + 1, beta, m + 1, (m, n)),
    )


def verify_theorem1_homs(m: int, n: int) -> tuple[int, int, int]:
    """The three Hom dimensions around the birank term; (1, 0, 0) is expected."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    return tuple(hom_dimension(qy) for qy in birank_hom_queries(m, n))
