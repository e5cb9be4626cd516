"""Macdonald difference operators and the constant-term functions Z~^lambda."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import symbols as S
from .exactalg import ExpansionSpec, Factor, MultiLaurent, RatFun, constant_term
from .partitions import Partition
from .symfunc import (
    SymFun,
    Specialization,
    e_basis,
    eval_at_spec,
    from_polynomial,
    to_polynomial,
    xvars,
)

ZERO = RatFun.coerce(0)
ONE = RatFun.coerce(1)


class OperatorError(AssertionError):
    """A result that should be exact was not (signals an asymmetric input or a bug)."""


@dataclass(frozen=True)
class NVarPoly:
    """A polynomial in x_1..x_N with coefficients in the parameter field."""

    N: int
    value: RatFun

    @classmethod
    def from_symfun(cls, f: SymFun, N: int | None = None) -> "NVarPoly":
        if N is None:
            N = max(f.degrees or [0])
        return cls(N, to_polynomial(f, N))

    def to_symfun(self) -> SymFun:
        return from_polynomial(self.value, self.N)

    def __add__(self, other: "NVarPoly") -> "NVarPoly":
        return NVarPoly(self.N, self.value + other.value)

    def __mul__(self, c) -> "NVarPoly":
        return NVarPoly(self.N, self.value * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NVarPoly):
            return NotImplemented
        return self.N == other.N and self.value == other.value

    def __hash__(self):
        return hash((self.N, self.value))

    def restrict(self) -> "NVarPoly":
        """Set x_N = 0."""
        if self.N == 0:
            raise ValueError("no variable to restrict")
        return NVarPoly(self.N - 1, self.value.substitute({f"x{self.N}": 0}))

    def is_symmetric(self) -> bool:
        names = xvars(self.N)
        for i in range(self.N - 1):
            swap = {names[i]: RatFun.symbol(names[i + 1]), names[i + 1]: RatFun.symbol(names[i])}
            if self.value.substitute(swap) != self.value:
                return False
        return True


def apply_DNr(f: NVarPoly, r: int, N: int | None = None) -> NVarPoly:
    """D_N^r f over the common denominator prod_{i<j} (x_i - x_j)."""
    N = f.N if N is None else N
    if N != f.N:
        raise ValueError("operator and polynomial disagree on N")
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return f
    if r > N or f.value.is_zero():
        return NVarPoly(N, ZERO)
    names = xvars(N)
    for x in names:
        if f.value.den.occurs(x) or f.value.num.exponent_range(x)[0] < 0:
            raise ValueError("argument must be polynomial in x")
    num = f.value.num
    X = [MultiLaurent.symbol(x) for x in names]
    tl = S.t.as_laurent()
    ql = S.q.as_laurent()
    vandermonde = MultiLaurent.const(1)
    for i in range(N):
        for j in range(i + 1, N):
            vandermonde = vandermonde * (X[i] - X[j])
    total = MultiLaurent.zero(num.vars)
    for subset in combinations(range(N), r):
        inside = set(subset)
        shifted = num.substitute({names[i]: RatFun.coerce(ql * X[i]) for i in subset}).as_laurent()
        coef = MultiLaurent.const(1)
        sign = 1
        for i in range(N):
            for j in range(i + 1, N):
                a, b = i in inside, j in inside
                if a and not b:
                    coef = coef * (tl * X[i] - X[j])
                elif b and not a:
                    # (t x_j - x_i)/(x_j - x_i) over the denominator (x_i - x_j)
                    coef = coef * (tl * X[j] - X[i])
                    sign = -sign
                else:
                    coef = coef * (X[i] - X[j])
        total = total + coef * shifted * sign
    try:
        quotient = total.exact_div(vandermonde)
    except ArithmeticError as exc:
        raise OperatorError("D_N^r numerator not divisible by the Vandermonde product") from exc
    value = RatFun.make(quotient, f.value.den) * S.t ** (r * (r - 1) // 2)
    return NVarPoly(N, value)


def e_r_t_rho(r: int) -> RatFun:
    """e_r(t^rho) = prod_{i=1}^r t^{1/2} / (t^i - 1)."""
    out = ONE
    for i in range(1, r + 1):
        out = out * S.th / (S.t ** i - 1)
    return out


def apply_HNr(f: NVarPoly, r: int, N: int | None = None) -> NVarPoly:
    """H_N^r = sum_{s=0}^{min(r,N)} t^{s/2 - rN} e_{r-s}(t^rho) D_N^s."""
    N = f.N if N is None else N
    out = NVarPoly(N, ZERO)
    for s in range(0, min(r, N) + 1):
        coef = S.th ** (s - 2 * r * N) * e_r_t_rho(r - s)
        out = out + apply_DNr(f, s, N) * coef
    return out


def eigenvalue_DNr(lam, N: int, r: int) -> RatFun:
    """e_r of the alphabet {q^{lambda_i} t^{N-i}}_{i=1..N}."""
    lam = Partition(lam)
    spec = Specialization.alphabet([S.q ** lam.part(i) * S.t ** (N - i) for i in range(1, N + 1)])
    return eval_at_spec(e_basis(r), spec) if r else ONE


def eigenvalue_er(lam, r: int) -> RatFun:
    """e_r(q^lambda t^rho)."""
    if r == 0:
        return ONE
    return eval_at_spec(e_basis(r), Specialization.principal(1, Partition(lam), 0))


# ---------------------------------------------------------------- Z~^lambda


def _z(k: int) -> str:
    return f"z{k}"


def hhpi_spec(lam, bounds: str = "explicit") -> tuple[ExpansionSpec, list[str]]:
    """Integrand of the |lambda|-fold constant term, z-variables in block order.

    Block i holds z^i_1..z^i_{lambda_i}; its alpha-th variable has global index
    alpha + lambda_1 + ... + lambda_{i-1}.  Factors:

      (1 - c/z_a) / (1 - z_a)                          every a
      (1 - z_a/z_b) / (1 - z_a/(t z_b))                a < b
      (1 - q z_a/(t z_b)) / (1 - q z_a/z_b)            a in an earlier block than b

    With ``bounds="explicit"`` each
    geometric series is cut at that global index; ``"auto"`` lets the engine
    choose the minimal bound.
    """
    lam = Partition(lam)
    n = lam.size
    names = [_z(k) for k in range(1, n + 1)]
    block = []
    for i, part in enumerate(lam):
        block.extend([i] * part)
    zs = [MultiLaurent.symbol(x) for x in names]
    c = S.c.as_laurent()
    tinv = (S.t ** -1).as_laurent()
    q = S.q.as_laurent()

    def bound(k):
        return k if bounds == "explicit" else None

    factors = []
    for a in range(n):
        factors.append(Factor(c * zs[a] ** -1, "polynomial"))
        factors.append(Factor(zs[a], "geometric", bound(a + 1)))
    for a in range(n):
        for b in range(a + 1, n):
            u = zs[a] * zs[b] ** -1
            factors.append(Factor(u, "polynomial"))
            factors.append(Factor(tinv * u, "geometric", bound(a + 1)))
            if block[a] < block[b]:
                # exp(sum (1 - t^-n)/n (q u)^n) = (1 - q u / t) / (1 - q u)
                factors.append(Factor(q * tinv * u, "polynomial"))
                factors.append(Factor(q * u, "geometric", bound(a + 1)))
    return ExpansionSpec(tuple(factors)), names


def hhpi_value(lam, bounds: str = "explicit") -> RatFun:
    """The constant term itself (before dividing out prod (1 - c/t^{j-1}))."""
    lam = Partition(lam)
    if not lam:
        return ONE
    spec, names = hhpi_spec(lam, bounds)
    return constant_term(spec, ONE, names)


def column_factor(lam) -> RatFun:
    """prod_{j=1}^{lambda_1} (1 - c / t^{j-1})."""
    lam = Partition(lam)
    out = ONE
    for j in range(1, (lam[0] if lam else 0) + 1):
        out = out * (1 - S.c * S.t ** (1 - j))
    return out


@dataclass(frozen=True)
class ZTildeResult:
    lam: Partition
    value: RatFun
    integrand_ct: RatFun
    degree_in_c: int
    vanishes_at: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "value": self.value.to_json(),
            "vanishes_at": [f"t^{n}" for n in self.vanishes_at],
        }


def ztilde(lam, bounds: str = "explicit") -> ZTildeResult:
    lam = Partition(lam)
    ct = hhpi_value(lam, bounds)
    value = ct / column_factor(lam)
    if not value.is_polynomial():
        raise OperatorError(f"constant term for {list(lam)} is not divisible by the column factor")
    _, deg = ct.degree_range("c") if not ct.is_zero() else (0, 0)
    vanish = tuple(N for N in range(0, (lam[0] if lam else 0)) if ct.substitute({"c": S.t ** N}).is_zero())
    return ZTildeResult(lam, value, ct, deg, vanish)


def check_conjecture_3_4(lam, bounds: str = "explicit") -> dict:
    """c = t^N for 0 <= N < lambda_1 (and c = 1) in the constant term."""
    lam = Partition(lam)
    ct = hhpi_value(lam, bounds)
    checks = {N: ct.substitute({"c": S.t ** N}).is_zero() for N in range(0, lam[0] if lam else 0)}
    return {
        "lambda": list(lam),
        "checks": checks,
        "vanishes_at_c_1": ct.substitute({"c": 1}).is_zero(),
        "all_vanish": all(checks.values()),
    }


def is_integral_in_q_tinv(f: RatFun) -> bool:
    """Polynomial in q and 1/t (and other symbols) with integer coefficients."""
    if not f.is_polynomial():
        return False
    vars = f.num.vars
    iq, it = vars.index("qh"), vars.index("th")
    for e, coef in f.num.terms.items():
        if coef.denominator != 1:
            return False
        if e[iq] % 2 or e[iq] < 0 or e[it] % 2 or e[it] > 0:
            return False
    return True
