"""Tabulated Z~^inst_{lambda,mu}(t^N) as combinations of t-binomials.

Each table states  prefactor * (Z~_{row}) = M . v(N)  with qtilde symbolic
and Q = t^N.  Matrices are stored row-wise per Z~ (one row per lambda).

``TABLES`` holds the tables as tabulated; seven of them contain a slip that the
partition sum exposes.  ``CORRECTED`` holds the same tables with the smallest
change that makes them exact, and ``Table.erratum`` says what changed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import symbols as S
from .exactalg import RatFun
from .partitions import Partition
from .symfunc import qnumbers

q, t, th, qt = S.q, S.t, S.th, S.qtilde


def I(n: int, x=None) -> RatFun:
    return qnumbers("integer", n, t=x)


def B(n: int, r: int) -> RatFun:
    return qnumbers("binomial", n, r)


@dataclass(frozen=True)
class Table:
    name: str
    rows: tuple[tuple[Partition, Partition], ...]
    prefactor: RatFun
    matrix: tuple[tuple[RatFun, ...], ...]
    vector: Callable[[int], tuple[RatFun, ...]]
    erratum: str = ""

    def expected(self, N: int) -> dict[tuple[Partition, Partition], RatFun]:
        v = self.vector(N)
        out = {}
        for key, row in zip(self.rows, self.matrix):
            if len(row) != len(v):
                raise ValueError(f"table {self.name}: row length {len(row)} vs vector {len(v)}")
            acc = S.zero
            for a, b in zip(row, v):
                acc = acc + a * b
            out[key] = acc / self.prefactor
        return out


def _rows(lams, mu):
    return tuple((Partition(lam), Partition(mu)) for lam in lams)


def _T(rows_t):
    """Transpose a list of columns given row-wise (the tables print the transpose)."""
    return tuple(zip(*rows_t))


def _tables(fix: bool) -> list[Table]:
    Q = lambda N: t ** N  # noqa: E731
    q3 = I(3, qt)  # [3] in qtilde
    tabs: list[Table] = []

    def pick(as_tabulated, corrected):
        return corrected if fix else as_tabulated

    def note(text):
        return text if fix else ""

    tabs.append(Table("1,0", _rows([(1,)], ()), -th, ((t,),), lambda N: (I(N),)))
    tabs.append(Table(
        "1,1", _rows([(1,)], (1,)), S.one, ((S.one,),),
        lambda N: ((q * Q(N) + pick(I(N), t * I(N - 1))) * I(N),),
        note("[N] inside the bracket must be t[N-1]"),
    ))

    tabs.append(Table(
        "2,0", _rows([(2,), (1, 1)], ()), t,
        ((S.one, qt + t), (S.zero, S.one)),
        lambda N: (q * Q(N) * t * I(N), t ** 2 * B(N, 2)),
    ))
    tabs.append(Table(
        "2,1", _rows([(2,), (1, 1)], (1,)), -th,
        ((q, qt + q * (t - 1) + I(2), qt + t), (S.zero, S.one, S.one)),
        lambda N: (q ** 2 * Q(N) ** 2 * I(N), q * Q(N) * I(2) * B(N, 2), t ** 2 * I(3) * B(N, 3)),
    ))
    tabs.append(Table(
        "2,2", _rows([(2,), (1, 1)], (1, 1)), S.one,
        ((qt + q * t * I(2) + t, (qt + q * (t - 1)) * I(2) + I(3), qt + t), (S.one, pick(S.one, I(2)), S.one)),
        lambda N: (q ** 2 * Q(N) ** 2 / t ** 2 * B(N, 2), q * Q(N) / t * I(3) * B(N, 3), t ** 2 * B(4, 2) * B(N, 4)),
        note("middle entry of the 1^2 row must be [2], not 1"),
    ))
    tabs.append(Table(
        "2,3", _rows([(2,), (1, 1)], (1, 1, 1)), -1 / th,
        ((qt + (q * t + 1) * t, (qt + q * (t - 1)) * I(3) + I(4), qt + t), (S.one, I(3), S.one)),
        lambda N: (q ** 2 * Q(N) ** 2 / t ** 4 * I(3) * B(N, 3), q * Q(N) / t ** 2 * I(4) * B(N, 4),
                   t ** 2 * B(5, 3) * B(N, 5)),
    ))

    m30 = _T([
        (q * t, S.zero, S.zero),
        (qt * (qt + 1) + q * (t - 1) + t, S.one, S.zero),
        (qt ** 3 + qt * (qt + 1) * t * I(2) + t ** 3, qt + t * I(2), S.one),
    ])
    tabs.append(Table(
        "3,0", _rows([(3,), (2, 1), (1, 1, 1)], ()), -(th ** 3), m30,
        lambda N: (q ** 2 * Q(N) ** 2 * I(N), q * Q(N) * t * I(2) * B(N, 2), t ** 3 * B(N, 3)),
    ))

    m31 = _T([
        (q ** 2, S.zero, S.zero),
        (qt * (qt + 1) * (q * t + 1) + q ** 2 * (t - 1) * (q * t + I(2)) + (q * I(2) + 1) * t, q * t + 1, S.zero),
        (qt ** 3 + (qt * (qt + 1) + q * (t - 1)) * (q * (t - 1) + I(2)) * I(2) + t * I(3),
         qt + (q * (t - 1) + I(2)) * I(2), S.one),
        (qt ** 3 + qt * (qt + 1) * t * I(2) + t ** 3, qt + t * I(2), S.one),
    ])
    tabs.append(Table(
        "3,1", _rows([(3,), (2, 1), (1, 1, 1)], (1,)), t, m31,
        lambda N: (q ** 4 * Q(N) ** 3 * I(N), q ** 2 * Q(N) ** 2 / t * I(2) * B(N, 2), q * Q(N) * I(3) * B(N, 3),
                   t ** 3 * I(4) * B(N, 4)),
    ))

    m32 = _T([
        (pick(S.one, t ** -3) * (qt * (qt + 1) + q ** 2 * t ** 2 + q * (t - 1) + t), t ** -3, S.zero),
        (qt ** 3 + qt * (qt + 1) * (q * (t ** 2 + t - 1) + I(2)) * I(2)
         + q * t * (t - 1) * (q * I(2) * (q * t + I(2)) + 1) + q * t ** 3 * (t + 2) + t * I(3),
         qt + q * (t ** 2 + t - 1) * I(2) + I(2) ** 2, S.one),
        (qt ** 3 + (qt * (qt + 1) + q * (t - 1)) * (q * (t ** 2 - 1) + I(3)) + t * (t ** 2 + 1),
         qt + q * (t ** 2 - 1) + I(3), S.one),
        (qt ** 3 + qt * (qt + 1) * t * I(2) + t ** 3, qt + t * I(2), S.one),
    ])
    tabs.append(Table(
        "3,2", _rows([(3,), (2, 1), (1, 1, 1)], (1, 1)), -th, m32,
        lambda N: (q ** 4 * Q(N) ** 3 * I(2) * B(N, 2), q ** 2 * Q(N) ** 2 / t ** 3 * I(3) * B(N, 3),
                   q * Q(N) / t * I(3) * I(4) * B(N, 4), t ** 3 * B(5, 2) * B(N, 5)),
        note("first entry of the (3) row needs the factor t^-3 carried by its (2,1) neighbour"),
    ))

    m40 = _T([
        (q ** 3 * t, S.zero, S.zero, S.zero, S.zero),
        (qt ** 4 + qt ** 2 + qt * q3 * (q * I(2) + 1) * t + q ** 2 * (t - 1) * I(2) * (q * t + I(2))
         + (q * I(2) + 1) * t ** 2,
         qt + I(2) * t * q + t, S.one, S.zero, S.zero),
        (pick(q ** 2 * t, qt ** 2) * (qt * q3 + (qt ** 2 + 1) * t) + ((t - 1) * q + t) * (qt * q3 + (t - 1) * q) * I(2)
         + t ** 3,
         qt ** 2 + I(2) * (qt + (t - 1) * q + t), qt + t, S.one, S.zero),
        (qt ** 6 + qt * q3 * (qt ** 2 + t ** 2) * t * I(3) + (qt ** 4 + qt ** 2) * (t ** 4 + t ** 2) + t ** 6,
         qt ** 3 + qt * (qt + 1) * t * I(3) + qt * t ** 2 * (t ** 2 + 1) + t ** 3 * I(3),
         qt ** 2 + qt * t * I(3) + t ** 4 + t ** 2, qt + t * I(3), S.one),
    ])
    tabs.append(Table(
        "4,0", _rows([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)], ()), t ** 2, m40,
        lambda N: (q ** 3 * Q(N) ** 3 * I(N), q ** 2 * Q(N) ** 2 * B(N, 2), q * Q(N) * t * I(3) * B(N, 3),
                   t ** 4 * B(N, 4)),
        note("in the (4) row, third entry: the leading factor q^2 t must be qtilde^2"),
    ))

    def v22(N):
        QN = Q(N)
        return (
            q ** 6 * QN ** 3 * t * I(N)
            + (qt + t) ** 2 * t ** 4 * (t ** 2 + 1) * I(3) * B(N, 4)
            + q ** 2 * QN ** 2 * ((2 * qt * t + q * (q * t + I(2)) * (t - 1)) * q * I(2)
                                  + pick((qt ** 2 + t) ** 2, (qt + t) ** 2) + (q * t * I(2) + 1) * I(2)) * B(N, 2)
            + q * QN * t * ((qt + q * (t - 1)) * (qt + q * (t - 1) + I(2)) * I(2)
                            + pick(qt ** 2, qt) * (t ** 2 + 1) + t * (I(3) + 1)) * I(3) * B(N, 3),
        )

    tabs.append(Table(
        "(2),(2)", _rows([(2,)], (2,)), t ** 2, ((S.one,),), v22,
        note("(qtilde^2 + t)^2 must be (qtilde + t)^2 and qtilde^2 (t^2 + 1) must be qtilde (t^2 + 1)"),
    ))

    def v212(N):
        QN = Q(N)
        return (
            (qt + t * I(2)) * (qt + t) * (t ** 2 + 1) * t ** 5 * I(5) * B(N, 5)
            + q ** 4 * QN ** 3 / t * (qt + q * (t - 1) + q ** 2 * t ** 2 + I(2)) * I(2) * B(N, 2)
            + q ** 2 * QN ** 2 / t * (
                qt ** 2
                + q * pick(S.one, I(2)) * (qt + q ** 2 * t ** 2 + (q * t + 1) * I(2)) * (t - 1)
                + qt * (q * t ** 2 * (t + 2) + I(3) + 2 * t)
                + (I(3) + q * t ** 2 * I(2)) * I(2)
            ) * I(3) * B(N, 3)
            + q * QN * (
                (qt ** 2 + q * (q * I(2) * (t - 1) + qt * (t + 2) + I(2) ** 2) * (t - 1)) * I(3)
                + qt * (I(3) ** 2 + I(4)) + t * (I(3) ** 2 + I(2))
            ) * t * (t ** 2 + 1) * I(2) * B(N, 4),
        )

    tabs.append(Table(
        "(2,1),(2)", _rows([(2, 1)], (2,)), pick(th ** 5, -(th ** 5)), ((S.one,),), v212,
        note("the prefactor t^(5/2) must be -t^(5/2); in the q^2 Q^2 [3] coefficient the term "
             "q (qtilde + q^2 t^2 + (q t + 1)[2]) (t - 1) needs an extra factor [2]"),
    ))

    def v32(N):
        QN = Q(N)
        a = q ** 10 * QN ** 4 * B(N, 1) * t
        b = (qt ** 4 + qt ** 3 * t * (t + 2) + qt ** 2 * t * I(2) ** 2 + qt * t ** 2 * (2 * t + 1) + t ** 4) \
            * (t ** 2 + 1) * t ** 5 * I(5) * B(N, 5)
        c = q ** 4 * QN ** 3 / t * (
            qt ** 3
            + q * (qt * (qt + 2) + ((q ** 3 * t + 1) * (q * t + I(2)) + q ** 2 * t * I(2))) * (t - 1)
            + qt ** 2 * (q ** 2 * t ** 2 + t + 2)
            + qt * (2 * q ** 2 * t ** 2 + 2 * t + 1)
            + (q ** 2 * t ** 2 * I(2) + I(3))
        ) * I(2) * B(N, 2)
        d = q ** 2 * QN ** 2 / t * (
            qt ** 4
            + q * (q * t * (q * t + I(2)) + I(2)) * (qt ** 2 + q ** 2 * (t - 1)) * (t - 1) * I(2)
            + q * (
                qt ** 2 * (qt + 1) * I(2)
                + qt * ((2 * q * t * (q * t + I(2)) + 1) * I(2) + 2 * t)
                + ((2 * q ** 2 * t ** 2 + q * I(2) ** 2 + 2) * t * I(2) + 1)
            ) * (t - 1)
            + (
                qt ** 3 * (q * t ** 2 * (t + 2) + I(3) + 2 * t)
                + qt ** 2 * (I(3) + I(2) + q * t ** 2 * (t + 2)) * I(2)
                + qt * ((2 * t + 1) * I(3) + q * t ** 3 * (2 * t + 5))
                + (q * t ** 2 * I(2) ** 2 + I(4) + t) * t
            )
        ) * I(3) * B(N, 3)
        e = q * QN * (
            q ** 3 * I(2) * I(3) * (t - 1) ** 3
            + q ** 2 * (qt * (qt + 2) + I(2)) * I(2) * I(3) * (t - 1) ** 2
            + q * (qt ** 3 * (t + 2) + qt * (2 * I(3) + t) + qt ** 2 * I(2) * (t + 2) + t * (I(3) + 1)) * I(3) * (t - 1)
            + qt ** 4 * I(3)
            + qt ** 3 * (I(3) ** 2 + I(4))
            + qt * (I(4) * I(2) + I(3) * (t ** 2 + 2)) * t
            + (I(4) + t) * I(2) ** 2 * qt ** 2
            + (I(5) + t * I(2)) * t ** 2
        ) * t * I(4) * B(N, 4)
        return (a + b + c + d + e,)

    tabs.append(Table(
        "(3),(2)", _rows([(3,)], (2,)), pick(th ** 5, -(th ** 5)), ((S.one,),), v32,
        note("the prefactor t^(5/2) must be -t^(5/2)"),
    ))
    return tabs


TABLES = _tables(False)
CORRECTED = _tables(True)
TABLE_NAMES = tuple(tb.name for tb in TABLES)


def table(name: str, corrected: bool = False) -> Table:
    for tb in CORRECTED if corrected else TABLES:
        if tb.name == name:
            return tb
    raise KeyError(name)


def check_table(tb: Table, N_values=range(0, 6), compute=None) -> list[dict]:
    """Mismatches between a table and the partition sum (empty list = exact)."""
    if compute is None:
        from .hopf import z_inst

        def compute(lam, mu, N):
            return z_inst(lam, mu, "macdonald").at_tN(N)

    bad = []
    for N in N_values:
        for (lam, mu), want in tb.expected(N).items():
            got = compute(lam, mu, N)
            if got != want:
                bad.append({"table": tb.name, "lambda": list(lam), "mu": list(mu), "N": N, "difference": got - want})
    return bad
