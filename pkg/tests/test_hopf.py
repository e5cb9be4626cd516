from fractions import Fraction

import pytest

from hopfpoly import symbols as S
from hopfpoly.exactalg import RatFun, TruncSeries, series_div
from hopfpoly.hopf import (
    HopfError,
    InvariantRecord,
    antisym_at_tN,
    check_conjecture_4_9,
    closed_antisym,
    closed_lambda_antisym,
    closed_qt,
    closed_qt_at_qN,
    general_via_H,
    h_pi_series,
    hopf_weight,
    hopf_weight_hook_route,
    hopf_weight_macdonald_route,
    lambda_antisym_at_tN,
    nekrasov_factor,
    positivity_report,
    qtilde_value,
    taki_crosscheck,
    to_bold,
    torus_knot_reduced,
    binomial_coefficients,
    z_inst,
    z_series,
)
from hopfpoly.partitions import Partition, enumerate_partitions
from hopfpoly.symfunc import Specialization, qnumbers

q, t, th, qh, Q = S.q, S.t, S.th, S.qh, S.Q


def qint(n):
    return qnumbers("integer", n)


def qbin(n, r):
    return qnumbers("binomial", n, r)


def pairs(total, lo=0):
    out = []
    for a in range(0, total + 1):
        for b in range(0, total + 1 - a):
            if a + b < lo:
                continue
            for lam in enumerate_partitions(a):
                for mu in enumerate_partitions(b):
                    out.append((lam, mu))
    return out


def has_negative(f: RatFun) -> bool:
    return any(c < 0 for c in f.num.terms.values())


# ---------------------------------------------------------------- weights


def test_weight_examples():
    assert hopf_weight(()).value == 1
    assert hopf_weight((1,), include_q=True).value == Q / ((1 - q) * (1 - 1 / t))
    assert hopf_weight((1,)).value == 1 / ((1 - q) * (1 - 1 / t))


@pytest.mark.parametrize("eta", [e for d in range(1, 5) for e in enumerate_partitions(d)])
def test_weight_routes_agree(eta):
    w = hopf_weight(eta, include_q=True).value
    assert w == hopf_weight_macdonald_route(eta)
    assert w == hopf_weight_hook_route(eta)


# ---------------------------------------------------------------- partition sums


def test_vacuum_series_is_exponential():
    D = 4
    pt = Specialization.principal(1, (), 0)
    log = [S.zero] + [
        (1 - t**n) / (1 - q**n) * pt.p(n) * (-pt.p(n)) * Fraction(1, n) for n in range(1, D + 1)
    ]
    assert z_series((), (), D=D) == TruncSeries.from_coeffs("Q", log).exp()


def test_trivial_instanton_part():
    assert z_inst((), ()).value == 1


@pytest.mark.parametrize("lam,mu", pairs(3, lo=1))
def test_deformed_coloring_at_zero_is_schur(lam, mu):
    a = z_inst(lam, mu, "macdonald").with_qtilde("zero").value
    assert a == z_inst(lam, mu).value


@pytest.mark.parametrize("r,s", [(1, 0), (2, 1), (1, 2), (3, 0)])
def test_antisymmetric_colorings_coincide(r, s):
    lam, mu = (1,) * r, (1,) * s
    assert z_inst(lam, mu, "macdonald").value == z_inst(lam, mu).value


@pytest.mark.parametrize("N", range(0, 5))
def test_single_box_tables(N):
    tN = t**N
    assert (-th * z_inst((1,), ()).at_tN(N)) == t * qint(N)
    # same value from the antisymmetric closed form: (q Q + t [N-1]) [N]
    expected = (q * tN + t * qint(N - 1)) * qint(N) if N else S.zero
    assert z_inst((1,), (1,)).at_tN(N) == expected
    assert antisym_at_tN(1, 1, N) == expected


@pytest.mark.parametrize("lam,mu", pairs(4, lo=1))
def test_polynomial_and_vanishing_at_one(lam, mu):
    rec = z_inst(lam, mu)
    lo, hi = rec.value.degree_range("Q")
    assert not rec.value.den.occurs("Q")
    assert hi <= lam.size + mu.size
    assert rec.flags["polynomiality"] and rec.flags["q1_vanishing"]
    assert rec.value.substitute({"Q": 1}).is_zero()


@pytest.mark.parametrize("lam,mu", pairs(3, lo=1))
def test_symmetry(lam, mu):
    assert z_inst(lam, mu).value == z_inst(mu, lam).value


@pytest.mark.parametrize("lam,mu", pairs(4, lo=1))
def test_vanishing_for_small_N(lam, mu):
    rec = z_inst(lam, mu)
    for N in range(0, max(len(lam), len(mu))):
        assert rec.at_tN(N).is_zero()


def test_guard_detects_truncation():
    # with no guard the check is vacuous but the value is unchanged
    assert z_inst((2,), (1,), guard=0).value == z_inst((2,), (1,)).value


def test_guard_failure_raises(monkeypatch):
    import hopfpoly.hopf as H

    real = H.z_series

    def corrupted(lam, mu, coloring="schur", D=None, qt_slice=False):
        s = real(lam, mu, coloring, D, qt_slice)
        if not lam and not mu:
            return s
        coeffs = list(s.coeffs)
        coeffs[-1] = coeffs[-1] + 1
        return TruncSeries("Q", tuple(coeffs))

    monkeypatch.setattr(H, "z_series", corrupted)
    H.z_inst.cache_clear()
    try:
        with pytest.raises(HopfError):
            H.z_inst((1,), ())
    finally:
        H.z_inst.cache_clear()


# ---------------------------------------------------------------- closed forms


def test_antisym_trivial():
    assert closed_antisym(0, 0).value == 1


@pytest.mark.parametrize("r,s", [(r, s) for r in range(0, 3) for s in range(0, 3) if r + s])
def test_antisym_matches_sum(r, s):
    assert closed_antisym(r, s).value == z_inst((1,) * r, (1,) * s).value


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_antisym_at_tN(r, s):
    rec = closed_antisym(r, s)
    for N in range(0, 5):
        val = rec.value.substitute({"Q": t**N})
        assert val == antisym_at_tN(r, s, N)
        signed = val * (-1) ** (r + s)
        assert signed.is_polynomial() and not has_negative(signed)
        if N < max(r, s):
            assert val.is_zero()


def test_closed_qt_trivial():
    assert closed_qt((), ()).value == 1


@pytest.mark.parametrize("lam,mu", pairs(3, lo=1))
def test_closed_qt_matches_sum(lam, mu):
    assert closed_qt(lam, mu).value == z_inst(lam, mu, qt_slice=True).value


@pytest.mark.parametrize("lam,mu", pairs(3, lo=1))
def test_closed_qt_at_qN(lam, mu):
    rec = closed_qt(lam, mu)
    for N in range(0, 4):
        val = rec.value.substitute({"Q": q**N})
        assert val == closed_qt_at_qN(lam, mu, N)
        signed = val * (-1) ** (lam.size + mu.size)
        assert signed.is_polynomial() and not has_negative(signed)
        if N < max(len(lam), len(mu)):
            assert val.is_zero()


@pytest.mark.parametrize("r,s", [(2, 1), (3, 0), (1, 2)])
def test_lambda_antisym_reduces(r, s):
    assert closed_lambda_antisym((1,) * r, s).value == closed_antisym(r, s).value


@pytest.mark.parametrize("lam", [(2,), (2, 1), (3,)])
@pytest.mark.parametrize("s", [0, 1])
def test_lambda_antisym_matches_sum(lam, s):
    lam = Partition(lam)
    rec = closed_lambda_antisym(lam, s)
    assert rec.value == z_inst(lam, (1,) * s).value
    for N in range(0, 4):
        val = lambda_antisym_at_tN(lam, s, N)
        assert val == rec.value.substitute({"Q": t**N})
        if N < max(len(lam), s):
            assert val.is_zero()


def test_lambda_antisym_deformed():
    rec = closed_lambda_antisym((2,), 1, coloring="macdonald")
    assert rec.value == z_inst((2,), (1,), "macdonald").value


def test_general_trivial():
    assert general_via_H((), ()).value == 1


@pytest.mark.parametrize("lam,mu", pairs(3, lo=1))
def test_general_matches_sum(lam, mu):
    rec = general_via_H(lam, mu)
    assert rec.value == z_inst(lam, mu).value
    assert rec.value.substitute({"Q": 1}).is_zero()


def test_general_deformed():
    assert general_via_H((2,), (1,), coloring="macdonald").value == z_inst((2,), (1,), "macdonald").value


@pytest.mark.parametrize("mu", [(), (1,), (2,)])
@pytest.mark.parametrize("s", [1, 2])
def test_h_on_cauchy_kernel(mu, s):
    lhs, rhs = h_pi_series(mu, s, 3)
    assert lhs == rhs


# ---------------------------------------------------------------- positivity


def test_negative_term_without_deformation():
    rep = positivity_report((3,), (), 2, "zero")
    entry = rep["by_N"][2]
    assert not rep["positive"]
    printed = q**3 * (t**6 + t**5) + q**2 * (t**5 - t**3) + q * (t**5 + t**4)
    assert entry["value"] * th**3 == printed
    assert [m for m, _ in entry["negative_terms"]] == ["q^2*t^(3/2)"]


def test_deformation_q_removes_negative_term():
    rep = positivity_report((3,), (), 2, "q")
    assert rep["positive"]
    printed = q**3 * (t**6 + t**5 + t**4 + t**3) + q * (q + 1) * (t**5 + t**4)
    assert rep["by_N"][2]["value"] * th**3 == printed


def test_generic_p_two_two():
    rep = positivity_report((2,), (2,), 2, "generic-p")
    assert rep["positive"]
    p = S.p
    printed = (
        p**2 * t**2
        + 2 * p * (q**2 * t**2 + q * t * (t**3 + t**2 + 1) + t**3)
        + q**4 * t**2 * (t**4 + t**3 + 1)
        + q**3 * t * (t**4 + 2 * t**3 + t**2 + 2)
        + q**2 * (t**5 + t**4 + 3 * t**3 + t**2 + 1)
        + q * t**2 * (t**3 + 2 * t**2 + t + 2)
        + t**2 * qint(3)
    )
    # the printed normalization divides by (q t)^2; the value matches after dividing by q^2
    assert rep["by_N"][2]["value"] / q**2 == printed
    same_q = q**4 * t**5 * qint(2) + q**3 * t**3 * (t**2 - 1) + q**2 * t**3 * (t**2 + 3 * t + 1) \
        + q * t**3 * (t**2 + 2 * t + 3) + t**2 * qint(3)
    assert positivity_report((2,), (2,), 2, "q")["by_N"][2]["value"] / q**2 == same_q


def test_qtilde_modes():
    assert qtilde_value("zero") == 0
    assert qtilde_value("q") == q
    assert qtilde_value("generic-p") == (1 + q * t) * q / t + S.p
    with pytest.raises(ValueError):
        qtilde_value("bogus")


# ---------------------------------------------------------------- conjectures and cross-checks


@pytest.mark.parametrize("d", [1, 2, 3])
def test_u_gamma_u_inverse_integrality(d):
    rep = check_conjecture_4_9(d)
    assert rep["pass"]
    assert rep["max_q_degree"] <= d * (d - 1) // 2
    assert rep["max_tinv_degree"] <= d * (d - 1) // 2


def test_nekrasov_examples():
    assert nekrasov_factor((), ()) == 1
    # mu empty: the t exponent mu^vee_1 - 1 + 1 is 0
    assert nekrasov_factor((1,), ()) == 1 - Q
    assert nekrasov_factor((), (1,)) == 1 - Q * t / q
    # one box each: exponents (0, 1) and (-1, 0)
    assert nekrasov_factor((1,), (1,)) == (1 - Q * t) * (1 - Q / q)
    # single column against the empty partition
    prod = S.one
    for i in range(1, 4):
        prod = prod * (1 - Q * t ** (1 - i))
    assert nekrasov_factor((1, 1, 1), ()) == prod


@pytest.mark.parametrize("r,s", [(0, 0), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_taki(r, s):
    rep = taki_crosscheck(r, s)
    assert rep["equal_up_to_monomial"]
    assert rep["printed_factor_matches"] == (s <= 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_torus_knot(n):
    val = torus_knot_reduced(n)
    prod = S.one
    for i in range(0, n - 1):
        prod = prod * (1 - q**i * t * Q) / (1 - q**i * t)
    assert val == prod


def test_torus_examples():
    assert torus_knot_reduced(1) == 1
    assert torus_knot_reduced(2) == (1 - t * Q) / (1 - t)
    with pytest.raises(ValueError):
        torus_knot_reduced(0)


# ---------------------------------------------------------------- records


def test_record_json_round_trip():
    rec = z_inst((2,), (1,), "macdonald").with_qtilde("q")
    data = rec.to_json()
    assert data["method"] == "sum"
    assert data["coloring"] == "macdonald"
    assert data["substitutions"] == {"qtilde": "q"}
    assert set(data["flags"]) == {"polynomiality", "q1_vanishing", "positivity"}
    assert InvariantRecord.from_json(data) == rec


def test_unknown_coloring():
    with pytest.raises(ValueError):
        z_inst((1,), (), "hall")


# ---------------------------------------------------------------- other presentations


@pytest.mark.parametrize("lam,mu", pairs(3, lo=1))
def test_binomial_coefficients_extrapolate(lam, mu):
    # fitted from N = 0..D, checked at N = D+1..D+3 where nothing was fitted
    rec = z_inst(lam, mu, "macdonald")
    D = lam.size + mu.size
    cs = binomial_coefficients(rec.value, D)
    assert len(cs) == D + 1
    for N in range(D + 1, D + 4):
        total = sum((c * qnumbers("binomial", N, j) for j, c in enumerate(cs)), S.zero)
        assert total == rec.at_tN(N)


def test_binomial_coefficients_single_box():
    # -t^(1/2) Z_{1,.}(t^N) = t [N]  and  [N] = [N, 1]
    assert binomial_coefficients(z_inst((1,), ()).value) == [S.zero, -S.th]


def test_binomial_rejects_rational_Q():
    with pytest.raises(ValueError):
        binomial_coefficients(1 / (1 - S.Q))


def test_bold_dictionary():
    a, qb, tb = S.var("a"), S.var("qb"), S.var("tb")
    assert to_bold(S.Q) == a**-2
    assert to_bold(S.th) == 1 / qb
    assert to_bold(-(S.th / S.qh)) == tb
    assert to_bold(S.q) == qb**-2 * tb**-2
    # a value keeps its shape: Q = 1 vanishing becomes a = 1 vanishing
    val = to_bold(z_inst((1,), (1,)).value)
    assert val.substitute({"a": 1}).is_zero()
