"""Symmetric functions in the power-sum presentation.

Every symmetric function is stored internally by its power-sum coefficients,
``f = sum_rho f_rho p_rho``; the other bases (monomial, elementary, Schur,
Macdonald and its degenerations) are produced on demand and cached per
degree.  Parameters ``(q, t)`` of the Macdonald family are arbitrary elements
of the coefficient field, so ``(q, q)`` gives Schur functions, ``(0, t)``
Hall-Littlewood functions and ``(qtilde, 0)`` the q-Whittaker functions used
by the deformed coloring.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterable, Mapping, Sequence

import flint

from . import symbols as S
from .exactalg import ExpansionSpec, Factor, MultiLaurent, RatFun, constant_term
from .partitions import (
    Partition,
    conjugate,
    dominance_leq,
    enumerate_partitions,
    multiplicities,
    z_lambda,
)

ZERO = RatFun.coerce(0)
ONE = RatFun.coerce(1)

Params = tuple  # (q value, t value) as RatFun

GENERIC = (S.q, S.t)
HALL_LITTLEWOOD = (S.zero, S.t)
SCHUR = (S.q, S.q)
DEFORMED = (S.qtilde, S.zero)

BASES = ("p", "m", "e", "h", "s", "P")


def as_params(params) -> Params:
    a, b = params
    return (RatFun.coerce(a), RatFun.coerce(b))


def params_tag(params) -> str:
    qv, tv = as_params(params)
    if (qv, tv) == GENERIC:
        return "P(q,t)"
    if (qv, tv) == HALL_LITTLEWOOD:
        return "P(t)"
    if qv == tv:
        return "s"
    if (qv, tv) == DEFORMED:
        return "P(qtilde,0)"
    return f"P({qv},{tv})"


def _pkey(rho) -> Partition:
    return Partition(sorted(rho, reverse=True))


# ---------------------------------------------------------------- SymFun


class SymFun:
    """A symmetric function with coefficients in the coefficient field.

    ``basis`` records the basis the user asked for; ``coeffs`` holds the
    coefficients in that basis.  Arithmetic always happens in the power-sum
    basis and the result is reported in the basis of the left operand.
    """

    __slots__ = ("basis", "params", "coeffs")

    def __init__(self, coeffs: Mapping, basis: str = "p", params=None):
        self.basis = basis
        self.params = as_params(params) if params is not None else None
        clean = {}
        for lam, c in coeffs.items():
            c = RatFun.coerce(c)
            if not c.is_zero():
                lam = Partition(lam)
                clean[lam] = clean.get(lam, ZERO) + c
        self.coeffs = {k: v for k, v in clean.items() if not v.is_zero()}

    # ----------------------------------------------------------- basics
    @classmethod
    def zero(cls) -> "SymFun":
        return cls({})

    @classmethod
    def scalar(cls, c) -> "SymFun":
        return cls({Partition(): c})

    @property
    def degrees(self) -> list[int]:
        return sorted({lam.size for lam in self.coeffs})

    @property
    def degree(self) -> int | None:
        ds = self.degrees
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("inhomogeneous symmetric function")
        return ds[0]

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_p(self) -> dict[Partition, RatFun]:
        if self.basis == "p":
            return dict(self.coeffs)
        out: dict[Partition, RatFun] = {}
        for lam, c in self.coeffs.items():
            for rho, v in basis_element(self.basis, lam, self.params).items():
                out[rho] = out.get(rho, ZERO) + c * v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def in_basis(self, basis: str, params=None) -> "SymFun":
        return convert(self, basis, params)

    def homogeneous(self, d: int) -> "SymFun":
        return SymFun({k: v for k, v in self.coeffs.items() if k.size == d}, self.basis, self.params)

    def __add__(self, other):
        other = _as_symfun(other)
        a, b = self.to_p(), other.to_p()
        for k, v in b.items():
            a[k] = a.get(k, ZERO) + v
        return convert(SymFun(a), self.basis, self.params)

    __radd__ = __add__

    def __neg__(self):
        return SymFun({k: -v for k, v in self.coeffs.items()}, self.basis, self.params)

    def __sub__(self, other):
        return self + (-_as_symfun(other))

    def __rsub__(self, other):
        return _as_symfun(other) - self

    def __mul__(self, other):
        if not isinstance(other, SymFun):
            c = RatFun.coerce(other)
            return SymFun({k: v * c for k, v in self.coeffs.items()}, self.basis, self.params)
        a, b = self.to_p(), other.to_p()
        out: dict[Partition, RatFun] = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = _pkey(tuple(k1) + tuple(k2))
                out[k] = out.get(k, ZERO) + v1 * v2
        return convert(SymFun(out), self.basis, self.params)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFun):
            try:
                other = _as_symfun(other)
            except TypeError:
                return NotImplemented
        a, b = self.to_p(), other.to_p()
        keys = set(a) | set(b)
        return all(a.get(k, ZERO) == b.get(k, ZERO) for k in keys)

    def __hash__(self):
        return hash(tuple(sorted((tuple(k), hash(v)) for k, v in self.to_p().items())))

    def substitute(self, bindings) -> "SymFun":
        return SymFun({k: v.substitute(bindings) for k, v in self.coeffs.items()}, self.basis, self.params)

    def tag(self) -> str:
        return params_tag(self.params) if self.basis == "P" else self.basis

    def __repr__(self):
        terms = ", ".join(f"{k.text() or '-'}: {v}" for k, v in self.sorted_items())
        return f"SymFun[{self.tag()}]({{{terms}}})"

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (-kv[0].size, tuple(-x for x in kv[0])))

    def to_json(self) -> dict:
        deg = self.degrees
        return {
            "basis": self.tag(),
            "degree": deg[0] if len(deg) == 1 else deg,
            "coeffs": {k.text(): v.to_json() for k, v in self.sorted_items()},
        }


def _as_symfun(x) -> SymFun:
    if isinstance(x, SymFun):
        return x
    return SymFun.scalar(x)


# ---------------------------------------------------------------- integer tables


@lru_cache(maxsize=None)
def _p_in_m(d: int) -> dict[Partition, dict[Partition, int]]:
    """p_rho = sum_mu R[rho][mu] m_mu."""
    parts = enumerate_partitions(d)
    table = {}
    for rho in parts:
        row = {}
        for mu in parts:
            n = _count_fillings(tuple(rho), tuple(mu))
            if n:
                row[mu] = n
        table[rho] = row
    return table


def _count_fillings(rho: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of maps from the parts of rho to the rows of mu with row sums mu."""

    def rec(k, remaining):
        if k == len(rho):
            return 1 if not any(remaining) else 0
        total = 0
        for r in range(len(remaining)):
            if remaining[r] >= rho[k]:
                nxt = list(remaining)
                nxt[r] -= rho[k]
                total += rec(k + 1, nxt)
        return total

    return rec(0, list(mu))


@lru_cache(maxsize=None)
def _m_in_p(d: int) -> dict[Partition, dict[Partition, Fraction]]:
    parts = enumerate_partitions(d)
    n = len(parts)
    table = _p_in_m(d)
    mat = flint.fmpq_mat(n, n)
    for i, rho in enumerate(parts):
        for j, mu in enumerate(parts):
            mat[i, j] = table[rho].get(mu, 0)
    inv = mat.inv()
    # rows of R express p in m, so m_mu = sum_rho (R^{-1})[mu][rho] p_rho
    out = {}
    for j, mu in enumerate(parts):
        row = {}
        for i, rho in enumerate(parts):
            v = inv[j, i]
            if v != 0:
                row[rho] = Fraction(int(v.p), int(v.q))
        out[mu] = row
    return out


def _sign(rho) -> int:
    return (-1) ** (sum(rho) - len(rho))


@lru_cache(maxsize=None)
def _e_in_p(r: int) -> dict[Partition, Fraction]:
    return {rho: Fraction(_sign(rho), z_lambda(rho)) for rho in enumerate_partitions(r)}


@lru_cache(maxsize=None)
def _h_in_p(r: int) -> dict[Partition, Fraction]:
    return {rho: Fraction(1, z_lambda(rho)) for rho in enumerate_partitions(r)}


def _product_in_p(factors: Iterable[Mapping[Partition, Fraction]]) -> dict[Partition, Fraction]:
    out = {Partition(): Fraction(1)}
    for f in factors:
        nxt: dict[Partition, Fraction] = {}
        for k1, v1 in out.items():
            for k2, v2 in f.items():
                k = _pkey(tuple(k1) + tuple(k2))
                nxt[k] = nxt.get(k, 0) + v1 * v2
        out = {k: v for k, v in nxt.items() if v}
    return out


@lru_cache(maxsize=None)
def _jacobi_trudi(lam: Partition) -> dict[Partition, int]:
    """s_lam = det(e_{lam^vee_i - i + j}) expanded as sum_nu c_nu e_nu."""
    conj = conjugate(lam)
    n = len(conj)
    out: dict[Partition, int] = {}
    for perm in permutations(range(n)):
        idx = []
        ok = True
        for i in range(n):
            k = conj[i] - i + perm[i]
            if k < 0:
                ok = False
                break
            if k > 0:
                idx.append(k)
        if not ok:
            continue
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        key = _pkey(idx)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def _rat_in_p(f: Mapping[Partition, Fraction]) -> dict[Partition, RatFun]:
    return {k: RatFun.coerce(v) for k, v in f.items()}


@lru_cache(maxsize=None)
def _schur_in_p(lam: Partition) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for nu, c in _jacobi_trudi(lam).items():
        for rho, v in _product_in_p(_e_in_p(r) for r in nu).items():
            out[rho] = out.get(rho, 0) + c * v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------- Macdonald


def scalar_weight(rho, params) -> RatFun:
    """<p_rho, p_rho>_{q,t} = z_rho prod (1 - q^{rho_i}) / (1 - t^{rho_i})."""
    qv, tv = as_params(params)
    return _weight(Partition(rho), qv, tv)


@lru_cache(maxsize=None)
def _weight(rho: Partition, qv: RatFun, tv: RatFun) -> RatFun:
    w = RatFun.coerce(z_lambda(rho))
    if qv == tv:
        return w
    for k in rho:
        w = w * (1 - qv ** k) / (1 - tv ** k)
    return w


_gs_lock = threading.Lock()


@lru_cache(maxsize=None)
def _macdonald_block(d: int, qv: RatFun, tv: RatFun) -> dict[Partition, tuple[dict[Partition, RatFun], RatFun]]:
    """Gram-Schmidt on m_lambda, ascending in the reverse-lexicographic order.

    Lexicographic order refines dominance, so orthogonalising each m_lambda
    against all lexicographically smaller P_mu yields the Macdonald basis.
    """
    order = list(reversed(enumerate_partitions(d)))
    weights = {rho: _weight(rho, qv, tv) for rho in order}
    m_p = _m_in_p(d)
    done: dict[Partition, tuple[dict[Partition, RatFun], RatFun]] = {}
    for lam in order:
        vec = _rat_in_p(m_p[lam])
        for mu, (pmu, norm) in done.items():
            ip = ZERO
            for rho, c in m_p[lam].items():
                v = pmu.get(rho)
                if v is not None:
                    ip = ip + v * weights[rho] * c
            if ip.is_zero():
                continue
            coef = ip / norm
            for rho, v in pmu.items():
                vec[rho] = vec.get(rho, ZERO) - coef * v
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        norm = ZERO
        for rho, v in vec.items():
            norm = norm + v * v * weights[rho]
        done[lam] = (vec, norm)
    return done


def macdonald_block(d: int, params=GENERIC):
    qv, tv = as_params(params)
    with _gs_lock:
        return _macdonald_block(d, qv, tv)


def macdonald_P(lam, params=GENERIC) -> SymFun:
    """P_lambda(x; q, t) in the monomial basis."""
    lam = Partition(lam)
    vec, _ = macdonald_block(lam.size, params)[lam]
    return convert(SymFun(vec), "m")


def macdonald_p_coeffs(lam, params=GENERIC) -> dict[Partition, RatFun]:
    lam = Partition(lam)
    return macdonald_block(lam.size, params)[lam][0]


def macdonald_norm(lam, params=GENERIC) -> RatFun:
    """prod over cells of (1 - q^{a+1} t^l) / (1 - q^a t^{l+1})."""
    qv, tv = as_params(params)
    lam = Partition(lam)
    conj = conjugate(lam)
    out = ONE
    for i, j in lam.cells():
        a = lam[i - 1] - j
        leg = conj[j - 1] - i
        out = out * (1 - qv ** (a + 1) * tv ** leg) / (1 - qv ** a * tv ** (leg + 1))
    return out


def scalar_qt(f: SymFun, g: SymFun, params=GENERIC) -> RatFun:
    fp, gp = f.to_p(), g.to_p()
    out = ZERO
    for rho, v in fp.items():
        w = gp.get(rho)
        if w is not None:
            out = out + v * w * scalar_weight(rho, params)
    return out


# ---------------------------------------------------------------- bases


def basis_element(basis: str, lam, params=None) -> dict[Partition, RatFun]:
    """Power-sum coefficients of a basis element."""
    lam = Partition(lam)
    if basis == "p":
        return {lam: ONE}
    if basis == "m":
        return _rat_in_p(_m_in_p(lam.size)[lam])
    if basis == "e":
        return _rat_in_p(_product_in_p(_e_in_p(r) for r in lam))
    if basis == "h":
        return _rat_in_p(_product_in_p(_h_in_p(r) for r in lam))
    if basis == "s":
        return _rat_in_p(_schur_in_p(lam))
    if basis == "P":
        return macdonald_p_coeffs(lam, params if params is not None else GENERIC)
    raise ValueError(f"unknown basis {basis!r}")


def _leading(basis: str, lam: Partition) -> Partition:
    # e_nu has leading monomial m_{nu^vee}; the others are unitriangular
    return conjugate(lam) if basis == "e" else lam


@lru_cache(maxsize=None)
def _basis_in_m(basis: str, lam: Partition, params) -> dict[Partition, RatFun]:
    return p_to_m(basis_element(basis, lam, params))


def p_to_m(f: Mapping[Partition, RatFun]) -> dict[Partition, RatFun]:
    out: dict[Partition, RatFun] = {}
    for rho, c in f.items():
        for mu, n in _p_in_m(rho.size)[rho].items():
            out[mu] = out.get(mu, ZERO) + c * n
    return {k: v for k, v in out.items() if not v.is_zero()}


def convert(f: SymFun, target: str, params=None) -> SymFun:
    """Re-expand ``f`` in ``target`` (one of p, m, e, h, s, P)."""
    if target == "P" and params is None:
        params = GENERIC
    if target != "P":
        params = None
    else:
        params = as_params(params)
    fp = f.to_p()
    if target == "p":
        return SymFun(fp, "p")
    fm = p_to_m(fp)
    if target == "m":
        return SymFun(fm, "m")
    if target == "h":
        # h is not triangular against m; go through e via the involution omega
        om = {rho: v * _sign(rho) for rho, v in fp.items()}
        res = convert(SymFun(om), "e")
        return SymFun(res.coeffs, "h")
    # triangular elimination: pick the lexicographically largest monomial
    out: dict[Partition, RatFun] = {}
    lead_of = {}
    by_degree: dict[int, list[Partition]] = {}
    for mu in fm:
        by_degree.setdefault(mu.size, [])
    for d in by_degree:
        for lam in enumerate_partitions(d):
            lead_of[_leading(target, lam)] = lam
    rest = dict(fm)
    while rest:
        mu = max(rest, key=lambda k: (k.size, tuple(k)))
        lam = lead_of[mu]
        c = rest[mu]
        out[lam] = c
        for nu, v in _basis_in_m(target, lam, params).items():
            nv = rest.get(nu, ZERO) - c * v
            if nv.is_zero():
                rest.pop(nu, None)
            else:
                rest[nu] = nv
        if mu in rest:
            raise ArithmeticError(f"basis {target} is not unitriangular at {mu}")
    return SymFun(out, target, params)


def p_basis(lam) -> SymFun:
    return SymFun({Partition(lam): 1}, "p")


def m_basis(lam) -> SymFun:
    return SymFun({Partition(lam): 1}, "m")


def e_basis(lam) -> SymFun:
    lam = lam if not isinstance(lam, int) else (lam,)
    return SymFun({Partition(lam): 1}, "e")


def schur(lam) -> SymFun:
    return SymFun({Partition(lam): 1}, "s")


def P_basis(lam, params=GENERIC) -> SymFun:
    return SymFun({Partition(lam): 1}, "P", params)


def hall_littlewood_P(lam) -> SymFun:
    return P_basis(lam, HALL_LITTLEWOOD)


# ---------------------------------------------------------------- transitions


@lru_cache(maxsize=None)
def _transition_row(lam: Partition, source, target) -> dict[Partition, RatFun]:
    src = SymFun({lam: 1}, "P", source) if source is not None else schur(lam)
    return convert(src, "P", target).coeffs


def transition_U(lam, mu, source=SCHUR, target=GENERIC) -> RatFun:
    """U with P_lambda(source) = sum_mu U_{lambda mu} P_mu(target).

    ``source=SCHUR`` (any params with q = t) gives the Schur expansion."""
    lam, mu = Partition(lam), Partition(mu)
    src = as_params(source)
    if src[0] == src[1]:
        src = None
    return _transition_row(lam, src, as_params(target)).get(mu, ZERO)


def transition_U_matrix(d: int, source=SCHUR, target=GENERIC) -> dict[tuple[Partition, Partition], RatFun]:
    parts = enumerate_partitions(d)
    return {(a, b): transition_U(a, b, source, target) for a in parts for b in parts}


def transition_V(lam, mu) -> RatFun:
    """V with s_lambda = sum_mu V_{lambda mu} e_{mu^vee} (Jacobi-Trudi)."""
    lam, mu = Partition(lam), Partition(mu)
    return RatFun.coerce(_jacobi_trudi(lam).get(conjugate(mu), 0))


def transition_V_row(lam) -> dict[Partition, int]:
    """Nonzero V_{lambda mu} keyed by mu."""
    return {conjugate(nu): c for nu, c in _jacobi_trudi(Partition(lam)).items()}


def schur_expansion(f: SymFun) -> dict[Partition, RatFun]:
    return convert(f, "s").coeffs


def deformed_schur_row(lam, params=DEFORMED) -> dict[Partition, RatFun]:
    """Schur coefficients of P_lambda(x; qtilde, 0)."""
    return convert(P_basis(lam, params), "s").coeffs


def skew_schur(lam, nu) -> SymFun:
    """s_{lambda/nu} in the Schur basis via the Hall inner product."""
    lam, nu = Partition(lam), Partition(nu)
    if not lam.contains(nu):
        return SymFun({}, "s")
    d = lam.size - nu.size
    s_nu = SymFun(_rat_in_p(_schur_in_p(nu)))
    out = {}
    target = SymFun(_rat_in_p(_schur_in_p(lam)))
    for mu in enumerate_partitions(d):
        prod = s_nu * SymFun(_rat_in_p(_schur_in_p(mu)))
        c = scalar_qt(target, prod, SCHUR)
        if not c.is_zero():
            out[mu] = c
    return SymFun(out, "s")


# ---------------------------------------------------------------- q-numbers


def qnumbers(kind: str, N: int, r: int = 0, t=None) -> RatFun:
    """[N]_t, [N]_t! or the t-binomial; ``t`` defaults to the symbol t."""
    t = S.t if t is None else RatFun.coerce(t)
    if kind == "integer":
        return sum((t ** k for k in range(N)), ZERO) if N >= 0 else (1 - t ** N) / (1 - t)
    if kind == "factorial":
        out = ONE
        for k in range(1, N + 1):
            out = out * qnumbers("integer", k, t=t)
        return out
    if kind == "binomial":
        if r < 0 or (N >= 0 and r > N):
            return ZERO
        out = ONE
        for i in range(1, r + 1):
            out = out * (1 - t ** (N - r + i)) / (1 - t ** i)
        return out
    raise ValueError(f"unknown q-number kind {kind!r}")


# ---------------------------------------------------------------- specializations


class Specialization:
    """A ring map from symmetric functions, given by the image of each p_n."""

    def __init__(self, pn: Callable[[int], RatFun], label: str = ""):
        self._pn = pn
        self.label = label
        self._cache: dict[int, RatFun] = {}
        self._lock = threading.Lock()

    def p(self, n: int) -> RatFun:
        v = self._cache.get(n)
        if v is None:
            v = RatFun.coerce(self._pn(n))
            with self._lock:
                self._cache[n] = v
        return v

    def p_rho(self, rho) -> RatFun:
        out = ONE
        for k in rho:
            out = out * self.p(k)
        return out

    def __call__(self, f) -> RatFun:
        return eval_at_spec(f, self)

    def __add__(self, other: "Specialization") -> "Specialization":
        return Specialization(lambda n: self.p(n) + other.p(n), f"{self.label}+{other.label}")

    def __neg__(self) -> "Specialization":
        """Plethystic negative: p_n -> -p_n."""
        return Specialization(lambda n: -self.p(n), f"-({self.label})")

    def sign_flip(self) -> "Specialization":
        """Alphabet x -> -x: p_n -> (-1)^n p_n."""
        return Specialization(lambda n: (-1) ** n * self.p(n), f"(-1)*({self.label})")

    def scaled(self, c) -> "Specialization":
        c = RatFun.coerce(c)
        return Specialization(lambda n: c ** n * self.p(n), f"{c}*({self.label})")

    def substitute(self, bindings) -> "Specialization":
        return Specialization(lambda n: self.p(n).substitute(bindings), self.label)

    @classmethod
    def principal(cls, c=1, lam=(), L=0, qh=None, th=None) -> "Specialization":
        """p_n(c q^lam t^rho, L t^-rho)."""
        lam = Partition(lam)
        return cls(lambda n: spec_powersum(n, c, lam, L, qh, th), f"p({c} q^{lam} t^rho, {L} t^-rho)")

    @classmethod
    def alphabet(cls, xs: Sequence) -> "Specialization":
        xs = [RatFun.coerce(x) for x in xs]
        return cls(lambda n: sum((x ** n for x in xs), ZERO), "alphabet")

    @classmethod
    def values(cls, pn: Mapping[int, object] | Callable[[int], object], label="") -> "Specialization":
        if callable(pn):
            return cls(lambda n: RatFun.coerce(pn(n)), label)
        return cls(lambda n: RatFun.coerce(pn[n]), label)


def spec_powersum(n: int, c=1, lam=(), L=0, qh=None, th=None) -> RatFun:
    """c^n sum_i (q^{n lam_i} - 1) t^{n(1/2 - i)} + (c^n - L^n) / (t^{n/2} - t^{-n/2}).

    ``qh`` and ``th`` are the square roots of q and t (default: the symbols);
    passing ``(th, qh)`` swaps the roles of q and t.
    """
    if n < 1:
        raise ValueError("power sums are indexed by n >= 1")
    qh = S.qh if qh is None else RatFun.coerce(qh)
    th = S.th if th is None else RatFun.coerce(th)
    c = RatFun.coerce(c)
    L = RatFun.coerce(L)
    q = qh * qh
    cn = c ** n
    out = ZERO
    for i, part in enumerate(Partition(lam), start=1):
        out = out + cn * (q ** (n * part) - 1) * th ** (n * (1 - 2 * i))
    thn = th ** n
    return out + (cn - L ** n) * thn / (thn * thn - 1)


def eval_at_spec(f, spec: Specialization) -> RatFun:
    if isinstance(f, SymFun):
        fp = f.to_p()
    else:
        fp = f
    out = ZERO
    for rho, c in fp.items():
        out = out + c * spec.p_rho(rho)
    return out


def t_rho(L=0, c=1, lam=(), qh=None, th=None) -> Specialization:
    return Specialization.principal(c, lam, L, qh, th)


def principal_product(lam, L=0, qh=None, th=None) -> RatFun:
    """Closed form of P_lambda(t^rho, L t^-rho; q, t)."""
    qh = S.qh if qh is None else RatFun.coerce(qh)
    th = S.th if th is None else RatFun.coerce(th)
    L = RatFun.coerce(L)
    q, t = qh * qh, th * th
    lam = Partition(lam)
    conj = conjugate(lam)
    out = ONE
    for i, j in lam.cells():
        out = out * (-th) * q ** (j - 1) * (1 - L * q ** (1 - j) * t ** (i - 1)) \
            / (1 - q ** (lam[i - 1] - j) * t ** (conj[j - 1] - i + 1))
    return out


def hook_pair_product(lam, qh=None, th=None) -> RatFun:
    """Closed form of P_lambda(t^rho; q, t) P_{lambda^vee}(q^rho; t, q).

    Each cell contributes -(q/t)^{1/2} / ((1 - q^{-a} t^{-l-1})(1 - q^{a+1} t^l));
    the overall sign (-1)^{|lambda|} is what the two principal products give.
    """
    qh = S.qh if qh is None else RatFun.coerce(qh)
    th = S.th if th is None else RatFun.coerce(th)
    q, t = qh * qh, th * th
    lam = Partition(lam)
    conj = conjugate(lam)
    out = ONE
    for i, j in lam.cells():
        a = lam[i - 1] - j
        leg = conj[j - 1] - i
        out = out * (-qh / th) / ((1 - q ** (-a) * t ** (-leg - 1)) * (1 - q ** (a + 1) * t ** leg))
    return out


def elementary_product(r: int, L=0, th=None) -> RatFun:
    """e_r(t^rho, L t^-rho) = prod_{i=1}^r (-1) t^{1/2} (1 - L t^{i-1}) / (1 - t^i)."""
    th = S.th if th is None else RatFun.coerce(th)
    L = RatFun.coerce(L)
    t = th * th
    out = ONE
    for i in range(1, r + 1):
        out = out * (-th) * (1 - L * t ** (i - 1)) / (1 - t ** i)
    return out


# ---------------------------------------------------------------- finitely many variables


def xvars(N: int) -> list[str]:
    return [f"x{i}" for i in range(1, N + 1)]


def monomial_polynomial(mu, N: int, invert: bool = False) -> MultiLaurent:
    """m_mu(x_1..x_N) (or m_mu(1/x)) as a Laurent polynomial."""
    mu = Partition(mu)
    if len(mu) > N:
        return MultiLaurent.zero(xvars(N))
    exps = list(mu) + [0] * (N - len(mu))
    sign = -1 if invert else 1
    seen = set()
    names = xvars(N)
    terms = {}
    for perm in permutations(exps):
        if perm in seen:
            continue
        seen.add(perm)
        terms[tuple(sign * k for k in perm)] = 1
    return MultiLaurent.from_terms(terms, names)


def to_polynomial(f: SymFun, N: int, invert: bool = False) -> RatFun:
    """f(x_1..x_N) as a rational function (a Laurent polynomial in x)."""
    fm = convert(f, "m").coeffs
    out = ZERO
    for mu, c in fm.items():
        if len(mu) <= N:
            out = out + c * RatFun.coerce(monomial_polynomial(mu, N, invert))
    return out


def from_polynomial(f: RatFun, N: int) -> SymFun:
    """Read off the monomial coefficients of a symmetric polynomial in x_1..x_N."""
    if f.is_zero():
        return SymFun({}, "m")
    names = xvars(N)
    num = f.num
    den = f.den
    for x in names:
        if den.occurs(x):
            raise ValueError("not a polynomial in x")
    idx = [num.vars.index(x) for x in names]
    coeffs: dict[Partition, MultiLaurent] = {}
    by_exp: dict[tuple, dict] = {}
    for e, c in num.terms.items():
        xe = tuple(e[i] for i in idx)
        if any(k < 0 for k in xe):
            raise ValueError("negative power of x")
        if list(xe) != sorted(xe, reverse=True):
            continue
        rest = list(e)
        for i in idx:
            rest[i] = 0
        by_exp.setdefault(xe, {})[tuple(rest)] = c
    out = {}
    for xe, terms in by_exp.items():
        out[Partition(xe)] = RatFun.make(MultiLaurent.from_terms(terms, num.vars), den)
    return SymFun(out, "m")


def delta_spec(N: int, t=None) -> list[Factor]:
    """Factors of Delta(x; t) = prod_{i<j} (1 - x_i/x_j) sum_n (t x_i/x_j)^n."""
    t = S.t if t is None else RatFun.coerce(t)
    tl = t.as_laurent()
    names = xvars(N)
    out = []
    for i in range(N):
        for j in range(i + 1, N):
            u = MultiLaurent.monomial({names[i]: 1, names[j]: -1})
            out.append(Factor(u, "polynomial"))
            out.append(Factor(tl * u, "geometric"))
    return out


def second_scalar(f: SymFun, g: SymFun, N: int, t=None) -> RatFun:
    """<f, g>''_{N;t} = CT_x f(xbar^{-1}) Delta(x; t) g(x)."""
    fx = to_polynomial(f, N, invert=True)
    gx = to_polynomial(g, N)
    pre = fx * gx
    if pre.is_zero():
        return ZERO
    return constant_term(ExpansionSpec(tuple(delta_spec(N, t))), pre, xvars(N))


def v_lambda(lam, N: int, t=None) -> RatFun:
    """prod_{j >= 0} [m_j]_t! with m_0 = N - length."""
    lam = Partition(lam)
    m = multiplicities(lam)
    m[0] = N - len(lam)
    out = ONE
    for k in m.values():
        out = out * qnumbers("factorial", k, t=t)
    return out


def cauchy_kernel_component(d: int, params=GENERIC) -> dict[Partition, RatFun]:
    """Degree (d, d) part of exp(sum_n (1/n)(1 - t^n)/(1 - q^n) p_n(x) p_n(y)).

    Only the products p_rho(x) p_rho(y) occur; the value is keyed by rho and
    read off the exponential series factor by factor."""
    qv, tv = as_params(params)
    out = {}
    for rho in enumerate_partitions(d):
        c = ONE
        for k, m in multiplicities(rho).items():
            a = (1 - tv ** k) / (1 - qv ** k) * Fraction(1, k) if qv != tv else RatFun.coerce(Fraction(1, k))
            fact = 1
            for i in range(2, m + 1):
                fact *= i
            c = c * a ** m * Fraction(1, fact)
        out[rho] = c
    return out
