import pytest

from hopfpoly import symbols as S
from hopfpoly.fixtures import CORRECTED, TABLE_NAMES, TABLES, B, I, check_table, table
from hopfpoly.hopf import antisym_at_tN, lambda_antisym_at_tN, z_inst
from hopfpoly.partitions import Partition

q, t, th, qt = S.q, S.t, S.th, S.qtilde

SLIPS = {"1,1", "2,2", "3,2", "4,0", "(2),(2)", "(2,1),(2)", "(3),(2)"}


def test_names_line_up():
    assert TABLE_NAMES == tuple(tb.name for tb in CORRECTED)
    assert len(TABLE_NAMES) == 13


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_corrected_tables_are_exact(name):
    assert check_table(table(name, corrected=True)) == []


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_slips_are_exactly_the_documented_ones(name):
    bad = check_table(table(name), N_values=range(0, 6))
    assert bool(bad) == (name in SLIPS)
    assert bool(table(name, corrected=True).erratum) == (name in SLIPS)
    assert table(name).erratum == ""


def test_single_box_against_closed_form():
    # independent of the partition sum: finite alphabet evaluation
    for N in range(0, 6):
        assert -th * antisym_at_tN(1, 0, N) == t * I(N)
        assert antisym_at_tN(1, 1, N) == (q * t**N + t * I(N - 1)) * I(N)


def test_one_one_table_misprint_at_N1():
    # as tabulated the N = 1 value is q t + 1, the sum gives q t
    assert table("1,1").expected(1)[(Partition((1,)), Partition((1,)))] == q * t + 1
    assert z_inst((1,), (1,), "macdonald").at_tN(1) == q * t


def test_two_two_row_against_closed_form():
    # (1,1),(1,1) is antisymmetric in both slots
    row = (Partition((1, 1)), Partition((1, 1)))
    for N in range(0, 5):
        assert table("2,2", corrected=True).expected(N)[row] == antisym_at_tN(2, 2, N)


def test_three_two_against_lambda_antisym():
    # schur slice qtilde = 0 of the corrected table versus the closed lambda formula
    tb = table("3,2", corrected=True)
    for N in range(0, 4):
        exp = tb.expected(N)
        for (lam, mu), v in exp.items():
            assert v.substitute({"qtilde": 0}) == lambda_antisym_at_tN(lam, 2, N)


def test_helpers():
    assert I(3) == 1 + t + t**2
    assert B(4, 2) == 1 + t + 2 * t**2 + t**3 + t**4
    assert I(2, qt) == 1 + qt


def test_custom_compute_hook():
    calls = []

    def fake(lam, mu, N):
        calls.append((lam, mu, N))
        return S.zero

    bad = check_table(TABLES[0], N_values=[2], compute=fake)
    assert calls == [(Partition((1,)), Partition(()), 2)]
    assert len(bad) == 1 and bad[0]["N"] == 2
