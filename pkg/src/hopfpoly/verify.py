"""Named verification suites.

Every suite is a list of independent checks.  A check returns ``(passed, detail)``;
an ``AssertionError`` raised by a cross-checked computation counts as a failed
check, anything else propagates.  Checks may run on worker threads
(HOPFPOLY_THREADS) but the report keeps the declaration order.

``max_size`` is the size bound of each suite:

* orthogonality: |lambda| for orthogonality and norms (the Cauchy, second scalar
  product and specialised identities stop at 4, 4 and 3).
* eigen: |lambda| for the operator identities (N <= 4); torus knots up to n = max_size + 2.
* closed-forms: |lambda| + |mu| for the q = t closed form, the general formula and
  the lambda-antisymmetric form; r, s <= max_size - 1 for the antisymmetric form.
* positivity: |lambda| + |mu| (N <= 4).
* conj34: |lambda|.   * conj49: d.   * appendixF: ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import symbols as S
from .exactalg import RatFun
from .fixtures import CORRECTED, TABLES, check_table
from .hopf import (
    _map,
    antisym_at_tN,
    closed_antisym,
    closed_lambda_antisym,
    closed_qt,
    closed_qt_at_qN,
    check_conjecture_4_9,
    general_via_H,
    h_pi_series,
    lambda_antisym_at_tN,
    positivity_report,
    taki_crosscheck,
    torus_knot_reduced,
    z_inst,
)
from .operators import (
    NVarPoly,
    apply_DNr,
    apply_HNr,
    check_conjecture_3_4,
    eigenvalue_DNr,
    eigenvalue_er,
)
from .partitions import Partition, conjugate, enumerate_partitions, gamma_hat
from .symfunc import (
    GENERIC,
    HALL_LITTLEWOOD,
    P_basis,
    Specialization,
    SymFun,
    cauchy_kernel_component,
    eval_at_spec,
    hall_littlewood_P,
    macdonald_norm,
    macdonald_p_coeffs,
    qnumbers,
    scalar_qt,
    schur,
    second_scalar,
    skew_schur,
    v_lambda,
)

SUITES = ("orthogonality", "eigen", "closed-forms", "appendixF", "positivity", "conj34", "conj49")
DEFAULT_SIZE = {
    "orthogonality": 5,
    "eigen": 4,
    "closed-forms": 4,
    "appendixF": 0,
    "positivity": 4,
    "conj34": 5,
    "conj49": 4,
}


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], tuple[bool, str]]


def _upto(n: int, lo: int = 1) -> list[Partition]:
    return [lam for d in range(lo, n + 1) for lam in enumerate_partitions(d)]


def _pairs(n: int) -> list[tuple[Partition, Partition]]:
    out = []
    for total in range(0, n + 1):
        for a in range(0, total + 1):
            for lam in enumerate_partitions(a):
                for mu in enumerate_partitions(total - a):
                    out.append((lam, mu))
    return out


def _col(r: int) -> Partition:
    return Partition((1,) * r)


def _ok(cond: bool, detail: str = "") -> tuple[bool, str]:
    return bool(cond), "" if cond else detail


def _nonneg_integer(f: RatFun) -> bool:
    return f.is_polynomial() and all(c.denominator == 1 and c >= 0 for c in f.num.terms.values())


# ---------------------------------------------------------------- orthogonality


def _orthogonality(d: int):
    parts = enumerate_partitions(d)
    for a in parts:
        for b in parts:
            ip = scalar_qt(P_basis(a), P_basis(b))
            if a == b and ip != macdonald_norm(a):
                return False, f"norm of P_{list(a)}"
            if a != b and not ip.is_zero():
                return False, f"<P_{list(a)}, P_{list(b)}> != 0"
    return True, ""


def _cauchy(d: int, params):
    kernel = cauchy_kernel_component(d, params)
    lhs: dict = {}
    for lam in enumerate_partitions(d):
        pc = macdonald_p_coeffs(lam, params)
        norm = macdonald_norm(lam, params)
        for r1, c1 in pc.items():
            for r2, c2 in pc.items():
                lhs[(r1, r2)] = lhs.get((r1, r2), S.zero) + c1 * c2 / norm
    for (r1, r2), v in lhs.items():
        want = kernel.get(r1, S.zero) if r1 == r2 else S.zero
        if v != want:
            return False, f"coefficient of p_{list(r1)}(x) p_{list(r2)}(y)"
    return True, ""


def _second_scalar(N: int, n: int):
    one = SymFun.scalar(1)
    parts = [lam for lam in _upto(n, lo=0) if len(lam) <= N]
    for a in parts:
        for b in parts:
            if b < a:
                continue
            fa = hall_littlewood_P(a) if a else one
            fb = hall_littlewood_P(b) if b else one
            val = second_scalar(fa, fb, N)
            want = qnumbers("factorial", N) / v_lambda(a, N) if a == b else S.zero
            if val != want:
                return False, f"<P_{list(a)}, P_{list(b)}>'' at N={N}"
    return True, ""


def _P_at(lam, spec, params=GENERIC):
    return eval_at_spec(P_basis(lam, params), spec) if lam else S.one


def _pdual(n: int):
    qh, th, q, t = S.qh, S.th, S.q, S.t
    for lam in _upto(n):
        inv_spec = Specialization.principal(1, lam, 0, qh=qh ** -1, th=th ** -1)
        dual_spec = Specialization.principal(1, conjugate(lam), 0, qh=th, th=qh).sign_flip()
        for mu in _upto(n):
            lhs = _P_at(conjugate(mu), dual_spec, (t, q))
            rhs = (qh / th) ** mu.size / macdonald_norm(mu) * _P_at(mu, inv_spec)
            if lhs != rhs:
                return False, f"lambda={list(lam)}, mu={list(mu)}"
    return True, ""


def _wsymm(N: int, n: int):
    parts = _upto(n, lo=0)
    L = S.t ** -N
    base = Specialization.principal(1, (), L)
    for lam in parts:
        for mu in parts:
            if mu <= lam:
                continue
            lhs = _P_at(lam, base) * _P_at(mu, Specialization.principal(1, lam, L))
            rhs = _P_at(mu, base) * _P_at(lam, Specialization.principal(1, mu, L))
            if lhs != rhs:
                return False, f"lambda={list(lam)}, mu={list(mu)}"
    return True, ""


def _cyclic(n: int):
    qh = S.qh

    def s_at(f, spec):
        if f.degree == 0:
            return f.coeffs.get(Partition(), S.zero)
        return eval_at_spec(f, spec)

    rho = Specialization.principal(1, (), 0, qh, qh)
    neg = Specialization.principal(1, (), 0, qh ** -1, qh ** -1)
    parts = _upto(n, lo=0)
    for lam in parts:
        for mu in parts:
            left = s_at(schur(lam), rho) * s_at(schur(mu), Specialization.principal(1, lam, 0, qh, qh))
            right = s_at(schur(mu), rho) * s_at(schur(lam), Specialization.principal(1, mu, 0, qh, qh))
            middle = S.zero
            for nu in parts:
                a, b = skew_schur(lam, nu), skew_schur(mu, nu)
                if a.is_zero() or b.is_zero():
                    continue
                middle = middle + s_at(a, neg) * s_at(b, neg)
            middle = gamma_hat(lam) * gamma_hat(mu) * middle
            if not (left == middle == right):
                return False, f"lambda={list(lam)}, mu={list(mu)}"
    return True, ""


def _orthogonality_suite(n: int) -> list[Check]:
    out = [Check(f"macdonald orthogonality and norms, |lambda|={d}", lambda d=d: _orthogonality(d)) for d in range(1, n + 1)]
    for d in range(1, min(n, 4) + 1):
        out.append(Check(f"Cauchy identity (q,t), degree {d}", lambda d=d: _cauchy(d, GENERIC)))
        out.append(Check(f"Cauchy identity (Hall-Littlewood), degree {d}", lambda d=d: _cauchy(d, HALL_LITTLEWOOD)))
    for N in range(1, 5):
        out.append(Check(f"Hall-Littlewood second scalar product, N={N}", lambda N=N: _second_scalar(N, min(n, 4))))
    m = min(n, 3)
    out.append(Check("dual specialisation P(-t^lambda' q^rho; t, q)", lambda: _pdual(m)))
    for N in range(1, 5):
        out.append(Check(f"evaluation symmetry, N={N}", lambda N=N: _wsymm(N, m)))
    out.append(Check("cyclic Schur identity", lambda: _cyclic(m)))
    return out


# ---------------------------------------------------------------- operators


def _poly(lam, N):
    return NVarPoly.from_symfun(P_basis(lam), N)


def _eigen_D(N: int, n: int):
    for lam in _upto(n):
        if len(lam) > N:
            continue
        f = _poly(lam, N)
        for r in range(0, N + 1):
            if apply_DNr(f, r) != f * eigenvalue_DNr(lam, N, r):
                return False, f"D_{N}^{r} on P_{list(lam)}"
    return True, ""


def _eigen_H(N: int, n: int):
    for lam in _upto(n):
        if len(lam) > N:
            continue
        f = _poly(lam, N)
        for r in range(0, N + 1):
            if apply_HNr(f, r) != f * eigenvalue_er(lam, r):
                return False, f"H_{N}^{r} on P_{list(lam)}"
    return True, ""


def _commute(N: int, n: int):
    for lam in _upto(n):
        f = _poly(lam, N)
        for r in range(1, N + 1):
            for s in range(r + 1, N + 1):
                if apply_DNr(apply_DNr(f, s), r) != apply_DNr(apply_DNr(f, r), s):
                    return False, f"D^{r} D^{s} on P_{list(lam)}"
    return True, ""


def _torus(n: int):
    torus_knot_reduced(n)  # raises on a disagreement between the two routes
    return True, ""


def _eigen_suite(n: int) -> list[Check]:
    out = []
    for N in range(1, 5):
        out.append(Check(f"D_N^r eigenvalues, N={N}", lambda N=N: _eigen_D(N, n)))
        out.append(Check(f"H_N^r eigenvalues, N={N}", lambda N=N: _eigen_H(N, n)))
        out.append(Check(f"D_N^r commute, N={N}", lambda N=N: _commute(N, n)))
    out += [Check(f"torus knot, n={k}", lambda k=k: _torus(k)) for k in range(1, n + 3)]
    return out


# ---------------------------------------------------------------- closed forms


def _structure(lam, mu):
    rec = z_inst(lam, mu)
    size = lam.size + mu.size
    return _ok(rec.q_degree <= size and rec.flags.get("polynomiality") and rec.flags.get("q1_vanishing", True),
               f"Q-degree {rec.q_degree}, flags {rec.flags}")


def _antisym(r: int, s: int):
    if closed_antisym(r, s).value != z_inst(_col(r), _col(s)).value:
        return False, "closed form differs from the partition sum"
    for N in range(0, 6):
        v = antisym_at_tN(r, s, N)
        if N < max(r, s) and not v.is_zero():
            return False, f"nonzero at N={N}"
        if not _nonneg_integer(v * (-1) ** (r + s)):
            return False, f"negative or fractional coefficient at N={N}"
    return True, ""


def _qt(lam, mu):
    if closed_qt(lam, mu).value != z_inst(lam, mu, qt_slice=True).value:
        return False, "closed form differs from the partition sum at q = t"
    bound = max(len(lam), len(mu))
    for N in range(0, 5):
        v = closed_qt_at_qN(lam, mu, N)
        if N < bound and not v.is_zero():
            return False, f"nonzero at N={N}"
        if not _nonneg_integer(v * (-1) ** (lam.size + mu.size)):
            return False, f"negative or fractional coefficient at N={N}"
    return True, ""


def _lambda_antisym(lam, s: int):
    if closed_lambda_antisym(lam, s).value != z_inst(lam, _col(s)).value:
        return False, "closed form differs from the partition sum"
    for N in range(0, 5):
        v = lambda_antisym_at_tN(lam, s, N)  # raises if the two lines differ
        if N < max(len(lam), s) and not v.is_zero():
            return False, f"nonzero at N={N}"
    return True, ""


def _general(lam, mu):
    general_via_H(lam, mu, check=True)
    return True, ""


def _taki(r: int, s: int):
    rep = taki_crosscheck(r, s)
    return _ok(rep["equal_up_to_monomial"], f"ratio {rep['ratio']}")


def _h_pi(mu, s: int):
    lhs, rhs = h_pi_series(mu, s, 3)
    return _ok(lhs == rhs, "series differ")


def _closed_suite(n: int) -> list[Check]:
    out = []
    for lam, mu in _pairs(n + 1):
        out.append(Check(f"structure {list(lam)},{list(mu)}", lambda a=lam, b=mu: _structure(a, b)))
    for r in range(0, n):
        for s in range(0, n):
            out.append(Check(f"antisymmetric closed form r={r}, s={s}", lambda r=r, s=s: _antisym(r, s)))
    for lam, mu in _pairs(n):
        out.append(Check(f"q = t closed form {list(lam)},{list(mu)}", lambda a=lam, b=mu: _qt(a, b)))
        out.append(Check(f"general formula {list(lam)},{list(mu)}", lambda a=lam, b=mu: _general(a, b)))
    for lam in _upto(n):
        for s in range(0, 3):
            out.append(Check(f"lambda-antisymmetric form {list(lam)}, s={s}",
                             lambda a=lam, s=s: _lambda_antisym(a, s)))
    for r in range(0, 3):
        for s in range(0, 3):
            out.append(Check(f"Taki form r={r}, s={s}", lambda r=r, s=s: _taki(r, s)))
    for mu in _upto(2, lo=0):
        for s in range(1, 3):
            out.append(Check(f"H^s on the Cauchy kernel, mu={list(mu)}, s={s}", lambda m=mu, s=s: _h_pi(m, s)))
    return out


# ---------------------------------------------------------------- tables and positivity


def _appendix(printed, corrected):
    bad = check_table(corrected)
    if bad:
        return False, f"{len(bad)} mismatches, first at N={bad[0]['N']}"
    if corrected.erratum:
        slips = len(check_table(printed))
        return True, f"exact after correction ({corrected.erratum}); as tabulated: {slips} mismatches"
    return True, "exact as tabulated"


def _appendix_suite(_n: int) -> list[Check]:
    return [Check(f"table {a.name}", lambda a=a, b=b: _appendix(a, b)) for a, b in zip(TABLES, CORRECTED)]


NEGATIVE_EXAMPLE = ["q^2*t^(3/2)"]


def _negative_example():
    rep = positivity_report((3,), (), 2, "zero")
    neg = [m for m, _ in rep["by_N"][2]["negative_terms"]]
    return _ok(neg == NEGATIVE_EXAMPLE, f"negative monomials {neg}")


def _positive(lam, mu, mode: str):
    rep = positivity_report(lam, mu, 4, mode)
    if rep["positive"]:
        return True, ""
    bad = {N: [m for m, _ in v["negative_terms"]] for N, v in rep["by_N"].items() if v["negative_terms"] or not v["polynomial"]}
    return False, f"negative terms {bad}"


def _positivity_suite(n: int) -> list[Check]:
    out = [Check("qtilde = 0 keeps the negative term at (3), N=2", _negative_example)]
    for lam, mu in _pairs(n):
        out.append(Check(f"qtilde generic-p {list(lam)},{list(mu)}", lambda a=lam, b=mu: _positive(a, b, "generic-p")))
    for lam in _upto(n, lo=0):
        for s in range(0, n - lam.size + 1):
            out.append(Check(f"qtilde = q {list(lam)},1^{s}", lambda a=lam, s=s: _positive(a, _col(s), "q")))
    return out


# ---------------------------------------------------------------- conjectures


def _conj34(lam):
    rep = check_conjecture_3_4(lam)
    return _ok(rep["all_vanish"] and rep["vanishes_at_c_1"], f"checks {rep['checks']}")


def _conj49(d: int):
    rep = check_conjecture_4_9(d)
    return _ok(rep["pass"], f"max q degree {rep['max_q_degree']}, max 1/t degree {rep['max_tinv_degree']}")


_BUILDERS = {
    "orthogonality": _orthogonality_suite,
    "eigen": _eigen_suite,
    "closed-forms": _closed_suite,
    "appendixF": _appendix_suite,
    "positivity": _positivity_suite,
    "conj34": lambda n: [Check(f"vanishing for {list(lam)}", lambda a=lam: _conj34(a)) for lam in _upto(n)],
    "conj49": lambda n: [Check(f"U Gamma U^-1, d={d}", lambda d=d: _conj49(d)) for d in range(1, n + 1)],
}


def checks(suite: str, max_size: int | None = None) -> list[Check]:
    if suite not in _BUILDERS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    return _BUILDERS[suite](DEFAULT_SIZE[suite] if max_size is None else max_size)


def _execute(check: Check) -> dict:
    try:
        passed, detail = check.run()
    except AssertionError as exc:
        passed, detail = False, str(exc)
    return {"name": check.name, "pass": bool(passed), "detail": detail}


def run_suite(suite: str, max_size: int | None = None) -> dict:
    items = checks(suite, max_size)
    results = _map(_execute, items)
    return {
        "suite": suite,
        "max_size": DEFAULT_SIZE[suite] if max_size is None else max_size,
        "passed": all(r["pass"] for r in results),
        "checks": results,
        "failures": [r["name"] for r in results if not r["pass"]],
    }


def run(suite: str, max_size: int | None = None) -> dict:
    if suite == "all":
        reports = [run_suite(name, max_size) for name in SUITES]
        return {
            "suite": "all",
            "passed": all(r["passed"] for r in reports),
            "suites": reports,
            "failures": [f"{r['suite']}: {f}" for r in reports for f in r["failures"]],
        }
    return run_suite(suite, max_size)
