"""Hodge-Deligne diamonds of a limiting mixed Hodge structure, by brute force.

Cells are (p, q) with 0 <= p, q <= n.  Constraints are plain predicates on a
diamond, so the result never depends on the order they are applied in.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable


@dataclass(frozen=True)
class HodgeDeligneDiamond:
    h: tuple            # ((p, q), dim) pairs with dim > 0, sorted
    n: int = 3

    @classmethod
    def from_dict(cls, d: dict, n: int = 3) -> "HodgeDeligneDiamond":
        for (p, q), v in d.items():
            if not (0 <= p <= n and 0 <= q <= n) or v < 0:
                raise ValueError(f"bad entry h^{p},{q} = {v}")
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)), n)

    def __getitem__(self, pq) -> int:
        return dict(self.h).get(tuple(pq), 0)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.h)

    def row(self, w: int) -> int:
        """dim Gr^W_w."""
        return sum(v for (p, q), v in self.h if p + q == w)

    def gr_f(self, p: int) -> int:
        return sum(v for (a, _), v in self.h if a == p)

    def is_symmetric(self) -> bool:
        return all(self[q, p] == v for (p, q), v in self.h)

    def rank_N(self) -> int:
        """Rank of N for an sl2-compatible weight filtration centred at n."""
        return self.total - self.row(self.n) - self.row(self.n + 1)

    def array(self) -> list[list[int]]:
        """Rows indexed by q = n..0, columns by p = 0..n."""
        return [[self[p, q] for p in range(self.n + 1)] for q in range(self.n, -1, -1)]

    def diamond_rows(self) -> list[list[int]]:
        """Rows of the usual diamond picture, top (h^{n,n}) to bottom, p decreasing."""
        n = self.n
        return [[self[p, w - p] for p in range(min(w, n), max(0, w - n) - 1, -1)]
                for w in range(2 * n, -1, -1)]

    def to_json(self) -> dict:
        return {"n": self.n, "h": {f"{p},{q}": v for (p, q), v in self.h},
                "rows": self.diamond_rows()}

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.array())


Constraint = Callable[[HodgeDeligneDiamond], bool]


def vanishing_rows(rows: Iterable[int]) -> Constraint:
    rows = tuple(rows)
    return lambda D: all(D.row(w) == 0 for w in rows)


def graded_f(dims) -> Constraint:
    """dim Gr_F^p = dims[p]; an int means the same for every p."""
    def ok(D):
        ds = [dims] * (D.n + 1) if isinstance(dims, int) else list(dims)
        return all(D.gr_f(p) == ds[p] for p in range(D.n + 1))
    return ok


def symmetric(D: HodgeDeligneDiamond) -> bool:
    return D.is_symmetric()


def weight_isomorphism(k: int) -> Constraint:
    """N^k : Gr_{n+k} -> Gr_{n-k} is an isomorphism, so the row totals agree."""
    return lambda D: D.row(D.n + k) == D.row(D.n - k)


def sl2_compatible(D: HodgeDeligneDiamond) -> bool:
    """Row totals symmetric about n and weakly decreasing away from the centre in steps of 2."""
    n = D.n
    for k in range(n + 1):
        if D.row(n + k) != D.row(n - k):
            return False
        if D.row(n + k) < D.row(n + k + 2):
            return False
    return True


def rank_N(r: int) -> Constraint:
    return lambda D: D.rank_N() == r


# the degeneration at psi = 0
DEGENERATION_CONSTRAINTS: tuple = (vanishing_rows((0, 1, 5, 6)), graded_f(1), symmetric,
                                   weight_isomorphism(1))
MUM_CONSTRAINTS: tuple = (graded_f(1), symmetric, sl2_compatible, rank_N(3))


def _compositions(total: int, cells: int):
    # stars and bars
    for bars in combinations(range(total + cells - 1), cells - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + cells - 1 - prev - 1)
        yield out


def lmhs_enumeration(total_dim: int = 4, constraints: Iterable[Constraint] = DEGENERATION_CONSTRAINTS,
                     n: int = 3) -> list[HodgeDeligneDiamond]:
    cells = [(p, q) for p in range(n + 1) for q in range(n + 1)]
    cons = list(constraints)
    out = []
    for comp in _compositions(total_dim, len(cells)):
        D = HodgeDeligneDiamond.from_dict(dict(zip(cells, comp)), n)
        if all(c(D) for c in cons):
            out.append(D)
    return sorted(out, key=lambda D: D.h)


# the three arrays, rows q = 3..0 and columns p = 0..3
PRINTED_DIAMONDS = (
    HodgeDeligneDiamond.from_dict({(2, 0): 1, (0, 2): 1, (3, 1): 1, (1, 3): 1}),
    HodgeDeligneDiamond.from_dict({(3, 0): 1, (0, 3): 1, (1, 1): 1, (2, 2): 1}),
    HodgeDeligneDiamond.from_dict({(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1}),
)
