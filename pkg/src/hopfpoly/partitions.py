"""Young diagrams.

Cells are 1-indexed ``(i, j)`` with ``i`` the row and ``j`` the column.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is the empty diagram."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text) -> "Partition":
        """Accept "3,1,1", "", a list, or another partition."""
        if isinstance(text, str):
            text = text.strip().strip("[]()").strip()
            if not text or text in ("-", "0", "•"):
                return cls()
            return cls(sorted((int(x) for x in text.split(",") if x.strip()), reverse=True))
        return cls(text)

    @property
    def size(self) -> int:
        return sum(self)

    def __len__(self) -> int:
        return tuple.__len__(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """lambda_i with the convention lambda_i = 0 for i > length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def __contains__(self, cell) -> bool:
        if isinstance(cell, tuple) and len(cell) == 2:
            i, j = cell
            return 1 <= i <= len(self) and 1 <= j <= self[i - 1]
        return tuple.__contains__(self, cell)

    def contains(self, other: "Partition") -> bool:
        """Diagram inclusion ``other ⊆ self``."""
        return len(other) <= len(self) and all(a <= b for a, b in zip(other, self))

    def text(self) -> str:
        return ",".join(str(x) for x in self)

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "(" + ",".join(str(x) for x in self) + ")" if self else "•"


EMPTY = Partition()


@lru_cache(maxsize=None)
def _conj(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x >= j) for j in range(1, parts[0] + 1))


def conjugate(lam) -> Partition:
    return Partition(_conj(tuple(lam)))


def dominance_leq(mu, lam) -> bool:
    """mu <= lam in dominance order (same size, prefix sums of mu bounded by lam)."""
    if sum(mu) != sum(lam):
        return False
    a = b = 0
    for k in range(max(len(mu), len(lam))):
        a += mu[k] if k < len(mu) else 0
        b += lam[k] if k < len(lam) else 0
        if a > b:
            return False
    return True


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, max_len: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order ([n] first, [1^n] last)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n) if max_len is None or len(p) <= max_len]


def partitions_up_to(n: int) -> list[Partition]:
    return [lam for k in range(n + 1) for lam in enumerate_partitions(k)]


def cell_stats(lam, cell: tuple[int, int]) -> tuple[int, int, int, int]:
    """(arm, leg, coarm, coleg) of a cell of ``lam``."""
    lam = Partition(lam)
    i, j = cell
    if (i, j) not in lam:
        raise ValueError(f"cell {cell} is outside {list(lam)}")
    conj = conjugate(lam)
    return lam[i - 1] - j, conj[j - 1] - i, j - 1, i - 1


def arm_leg(lam, i: int, j: int) -> tuple[int, int]:
    """Arm and leg of (i, j) allowing cells outside ``lam`` (then negative values occur)."""
    lam = Partition(lam)
    return lam.part(i) - j, conjugate(lam).part(j) - i


def n_of(lam) -> int:
    """n(lambda) = sum (i - 1) lambda_i."""
    return sum(i * x for i, x in enumerate(lam))


def z_lambda(lam) -> int:
    """Order of the centralizer of a permutation of cycle type ``lam``."""
    from math import factorial

    out = 1
    for k in set(lam):
        m = sum(1 for x in lam if x == k)
        out *= k ** m * factorial(m)
    return out


def multiplicities(lam) -> dict[int, int]:
    out: dict[int, int] = {}
    for x in lam:
        out[x] = out.get(x, 0) + 1
    return out


def gamma_factor(lam):
    """Gamma_lambda: each cell contributes ``-q^{lambda_i - j} t^{i - lambda^vee_j}``."""
    from .exactalg import RatFun

    lam = Partition(lam)
    conj = conjugate(lam)
    qe = te = 0
    sign = 1
    for i, j in lam.cells():
        qe += lam[i - 1] - j
        te += i - conj[j - 1]
        sign = -sign
    return RatFun.monomial({"qh": 2 * qe, "th": 2 * te}, sign)


def gamma_hat(lam):
    """Gamma_lambda at q = t, written in q: prod -q^{lambda_i - lambda^vee_j + i - j}."""
    from .exactalg import RatFun

    lam = Partition(lam)
    conj = conjugate(lam)
    e = 0
    sign = 1
    for i, j in lam.cells():
        e += lam[i - 1] - conj[j - 1] + i - j
        sign = -sign
    return RatFun.monomial({"qh": 2 * e}, sign)


def inversions(perm) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def inversion_generating_function(n: int):
    """sum over S_n of t^{inv(sigma)} as a RatFun."""
    from .exactalg import RatFun

    counts: dict[int, int] = {}
    for perm in permutations(range(n)):
        k = inversions(perm)
        counts[k] = counts.get(k, 0) + 1
    out = RatFun.coerce(0)
    for k, m in counts.items():
        out = out + RatFun.monomial({"th": 2 * k}, m)
    return out


def parse_range(text: str) -> list[int]:
    """"3" -> [3]; "0..5" -> [0, 1, 2, 3, 4, 5]."""
    text = str(text).strip()
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError(f"empty range {text}")
        return list(range(lo, hi + 1))
    return [int(text)]
