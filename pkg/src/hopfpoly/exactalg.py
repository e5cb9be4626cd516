"""Exact arithmetic over Q(q^(1/2), t^(1/2), Q, c, w, p, qtilde, ...).

Laurent polynomials are backed by FLINT multivariate polynomials over Q
together with an integer shift vector, so every stored exponent is an integer
and negative powers cost nothing extra.  The base symbols ``qh`` and ``th``
stand for q^(1/2) and t^(1/2); q and t are their squares.

Rational functions are kept reduced: numerator and denominator coprime, the
denominator a monic polynomial (graded-lex leading coefficient 1) that is not
divisible by any variable.  Equality is therefore structural.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import flint

SYMBOL_ORDER = ("qh", "th", "Q", "c", "w", "p", "qtilde")
_RANK = {name: i for i, name in enumerate(SYMBOL_ORDER)}
# symbols printed as the square of a base symbol
_HALF_DISPLAY = {"qh": "q", "th": "t"}
_LATEX_NAMES = {"qtilde": "\\tilde q", "a": "\\mathbf{a}", "qb": "\\mathbf{q}", "tb": "\\mathbf{t}"}


class OrderingError(ValueError):
    """A geometric factor cannot be expanded as a formal series in the z-order."""


class InsufficientBoundError(ValueError):
    """A requested truncation bound is below the degree budget."""


def _symbol_key(name: str):
    if name in _RANK:
        return (0, _RANK[name], "", 0)
    m = re.fullmatch(r"(.*?)(\d+)", name)
    if m:
        return (1, 0, m.group(1), int(m.group(2)))
    return (1, 0, name, -1)


def canonical_vars(names: Iterable[str]) -> tuple[str, ...]:
    """Standard symbols first (fixed order), then extra symbols in natural order."""
    extra = {n for n in names if n not in _RANK}
    return SYMBOL_ORDER + tuple(sorted(extra, key=_symbol_key))


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Rational):
        return flint.fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def _frac(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _monoms(poly) -> list[tuple[int, ...]]:
    return [tuple(int(k) for k in e) for e in poly.monoms()]


def _degrees(poly) -> tuple[int, ...]:
    return tuple(int(k) for k in poly.degrees())


def _add_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_vec(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _term_sort_key(e):
    return (sum(e), e)


class MultiLaurent:
    """Multivariate Laurent polynomial with rational coefficients.

    The value is ``poly * prod(x_i ** shift_i)`` where ``poly`` is not
    divisible by any variable.
    """

    __slots__ = ("vars", "_poly", "_shift")

    def __init__(self, vars, poly, shift):
        # internal; use the classmethods
        self.vars = vars
        self._poly = poly
        self._shift = shift

    # ------------------------------------------------------------ construction
    @classmethod
    def _make(cls, vars, poly, shift) -> "MultiLaurent":
        n = len(vars)
        if poly.is_zero():
            return cls(vars, poly, (0,) * n)
        tc = poly.term_content()
        e = _monoms(tc)[0]
        if any(e):
            poly = poly / tc
            shift = _add_vec(shift, e)
        return cls(vars, poly, tuple(shift))

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], object], vars: Sequence[str] | None = None) -> "MultiLaurent":
        """Build from ``{exponent vector: coefficient}`` over ``vars``."""
        given = tuple(vars) if vars is not None else SYMBOL_ORDER
        full = canonical_vars(given)
        pos = [full.index(v) for v in given]
        n = len(full)
        clean = {}
        for e, c in terms.items():
            if len(e) != len(given):
                raise ValueError("exponent vector length does not match vars")
            c = _fmpq(c)
            if c == 0:
                continue
            v = [0] * n
            for i, k in zip(pos, e):
                v[i] = int(k)
            clean[tuple(v)] = clean.get(tuple(v), flint.fmpq(0)) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        if not clean:
            return cls.zero(full)
        low = tuple(min(e[i] for e in clean) for i in range(n))
        ctx = _ctx(full)
        poly = ctx.from_dict({_sub_vec(e, low): c for e, c in clean.items()})
        return cls._make(full, poly, low)

    @classmethod
    def zero(cls, vars: Sequence[str] = SYMBOL_ORDER) -> "MultiLaurent":
        vars = canonical_vars(vars)
        return cls(vars, _ctx(vars).from_dict({}), (0,) * len(vars))

    @classmethod
    def const(cls, value, vars: Sequence[str] = SYMBOL_ORDER) -> "MultiLaurent":
        vars = canonical_vars(vars)
        n = len(vars)
        return cls._make(vars, _ctx(vars).from_dict({(0,) * n: _fmpq(value)}), (0,) * n)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "MultiLaurent":
        vars = canonical_vars(exps)
        n = len(vars)
        poly = _ctx(vars).from_dict({(0,) * n: _fmpq(coeff)})
        shift = tuple(int(exps.get(v, 0)) for v in vars)
        return cls._make(vars, poly, shift)

    @classmethod
    def symbol(cls, name: str) -> "MultiLaurent":
        return cls.monomial({name: 1})

    @classmethod
    def coerce(cls, x, vars: Sequence[str] = SYMBOL_ORDER) -> "MultiLaurent":
        if isinstance(x, MultiLaurent):
            return x
        if isinstance(x, RatFun):
            return x.as_laurent()
        return cls.const(x, vars)

    # ------------------------------------------------------------ vars
    def lift(self, vars: tuple[str, ...]) -> "MultiLaurent":
        if vars == self.vars:
            return self
        pos = [vars.index(v) for v in self.vars]
        n = len(vars)

        def remap(e):
            out = [0] * n
            for i, k in zip(pos, e):
                out[i] = k
            return tuple(out)

        ctx = _ctx(vars)
        poly = ctx.from_dict({remap(e): c for e, c in zip(_monoms(self._poly), self._poly.coeffs())})
        return MultiLaurent(vars, poly, remap(self._shift))

    def drop_vars(self, names: Iterable[str]) -> "MultiLaurent":
        """Forget variables that do not occur."""
        names = set(names)
        keep = canonical_vars(v for v in self.vars if v not in names)
        idx = [self.vars.index(v) for v in keep]
        terms = self.terms
        for e in terms:
            for i, v in enumerate(self.vars):
                if v in names and e[i] != 0:
                    raise ValueError(f"variable {v} occurs")
        return MultiLaurent.from_terms({tuple(e[i] for i in idx): c for e, c in terms.items()}, keep)

    def _align(self, other: "MultiLaurent"):
        if self.vars == other.vars:
            return self, other
        vars = canonical_vars(set(self.vars) | set(other.vars))
        return self.lift(vars), other.lift(vars)

    # ------------------------------------------------------------ inspection
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        s = self._shift
        return {_add_vec(e, s): _frac(c) for e, c in zip(_monoms(self._poly), self._poly.coeffs())}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]), reverse=True)

    def __len__(self):
        return len(self._poly)

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def is_constant(self) -> bool:
        return self._poly.is_constant() and not any(self._shift)

    def is_one(self) -> bool:
        return self.is_constant() and self._poly.is_one()

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def is_polynomial(self) -> bool:
        """No negative exponents."""
        return all(s >= 0 for s in self._shift)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return _frac(self._poly.leading_coefficient()) if not self.is_zero() else Fraction(0)

    def exponent_range(self, var: str) -> tuple[int, int]:
        if var not in self.vars or self.is_zero():
            return (0, 0)
        i = self.vars.index(var)
        return (self._shift[i], self._shift[i] + _degrees(self._poly)[i])

    def occurs(self, var: str) -> bool:
        lo, hi = self.exponent_range(var)
        return lo != 0 or hi != 0

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if self.is_zero():
            raise ValueError("zero has no leading term")
        return _add_vec(_monoms(self._poly)[0], self._shift), _frac(self._poly.leading_coefficient())

    def lowest_monomial(self) -> "MultiLaurent":
        """Smallest term under the canonical graded-lex order."""
        e, c = min(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))
        return MultiLaurent.from_terms({e: c}, self.vars)

    def coeff(self, var: str, k: int) -> "MultiLaurent":
        """Coefficient of ``var**k`` (a Laurent polynomial free of ``var``)."""
        if var not in self.vars:
            return self if k == 0 else MultiLaurent.zero(self.vars)
        i = self.vars.index(var)
        j = k - self._shift[i]
        if j < 0:
            return MultiLaurent.zero(self.vars)
        sel = {}
        for e, c in zip(_monoms(self._poly), self._poly.coeffs()):
            if e[i] == j:
                e = list(e)
                e[i] = 0
                sel[tuple(e)] = c
        shift = list(self._shift)
        shift[i] = 0
        if not sel:
            return MultiLaurent.zero(self.vars)
        return MultiLaurent._make(self.vars, _ctx(self.vars).from_dict(sel), tuple(shift))

    def truncate_above(self, var: str, k: int) -> "MultiLaurent":
        """Drop every term whose ``var`` exponent exceeds ``k``."""
        i = self.vars.index(var)
        j = k - self._shift[i]
        if _degrees(self._poly)[i] <= j:
            return self
        sel = {e: c for e, c in zip(_monoms(self._poly), self._poly.coeffs()) if e[i] <= j}
        return MultiLaurent._make(self.vars, _ctx(self.vars).from_dict(sel), self._shift)

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        if not isinstance(other, MultiLaurent):
            if isinstance(other, RatFun):
                return RatFun.coerce(self) + other
            other = MultiLaurent.const(other, self.vars)
        a, b = self._align(other)
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        vars = a.vars
        low = tuple(min(x, y) for x, y in zip(a._shift, b._shift))
        ctx = _ctx(vars)
        pa = a._poly
        da = _sub_vec(a._shift, low)
        if any(da):
            pa = pa * ctx.from_dict({da: 1})
        pb = b._poly
        db = _sub_vec(b._shift, low)
        if any(db):
            pb = pb * ctx.from_dict({db: 1})
        return MultiLaurent._make(vars, pa + pb, low)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent(self.vars, -self._poly, self._shift)

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return RatFun.coerce(self) - other
        return self + (-MultiLaurent.coerce(other, self.vars))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiLaurent):
            if isinstance(other, RatFun):
                return RatFun.coerce(self) * other
            c = _fmpq(other)
            if c == 0:
                return MultiLaurent.zero(self.vars)
            return MultiLaurent(self.vars, self._poly * c, self._shift)
        a, b = self._align(other)
        if a.is_zero() or b.is_zero():
            return MultiLaurent.zero(a.vars)
        # product of polynomials not divisible by a variable is again such
        return MultiLaurent(a.vars, a._poly * b._poly, _add_vec(a._shift, b._shift))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n >= 0:
            return MultiLaurent(self.vars, self._poly ** n, tuple(s * n for s in self._shift))
        if not self.is_monomial():
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        c = self._poly.leading_coefficient()
        ctx = _ctx(self.vars)
        poly = ctx.from_dict({(0,) * len(self.vars): (1 / c) ** (-n)})
        return MultiLaurent(self.vars, poly, tuple(s * n for s in self._shift))

    def __truediv__(self, other):
        return RatFun.coerce(self) / other

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / RatFun.coerce(self)

    def exact_div(self, other: "MultiLaurent") -> "MultiLaurent":
        """Quotient when ``other`` divides ``self`` in the Laurent ring."""
        a, b = self._align(MultiLaurent.coerce(other, self.vars))
        try:
            poly = a._poly / b._poly
        except Exception as exc:
            raise ArithmeticError("inexact Laurent division") from exc
        return MultiLaurent._make(a.vars, poly, _sub_vec(a._shift, b._shift))

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return other == self
        if not isinstance(other, MultiLaurent):
            try:
                other = MultiLaurent.const(other, self.vars)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a._shift == b._shift and a._poly == b._poly

    def __hash__(self):
        vars = tuple(v for v in self.vars)
        return hash((vars, tuple(self.sorted_terms())))

    def __bool__(self):
        return not self.is_zero()

    # ------------------------------------------------------------ substitution
    def substitute(self, bindings: Mapping[str, object]) -> "RatFun":
        return RatFun.coerce(self).substitute(bindings)

    # ------------------------------------------------------------ output
    def __repr__(self):
        return f"MultiLaurent({self})"

    def __str__(self):
        return _format_terms(self.sorted_terms(), self.vars)

    def latex(self) -> str:
        return _format_terms(self.sorted_terms(), self.vars, latex=True)

    def terms_json(self) -> list[dict]:
        return [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()]

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "num": self.terms_json(), "den": [{"e": [0] * len(self.vars), "c": "1"}]}


def _format_monomial(e, vars, latex=False) -> str:
    parts = []
    for k, v in zip(e, vars):
        if k == 0:
            continue
        if v in _HALF_DISPLAY:
            name = _HALF_DISPLAY[v]
            ex = Fraction(k, 2)
        else:
            name = _LATEX_NAMES.get(v, v) if latex else v
            ex = Fraction(k)
        if ex == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{ex}}}")
        elif ex.denominator == 1 and ex > 0:
            parts.append(f"{name}^{ex}")
        else:
            parts.append(f"{name}^({ex})")
    return (" " if latex else "*").join(parts)


def _format_terms(terms, vars, latex=False) -> str:
    if not terms:
        return "0"
    out = []
    for e, c in terms:
        mono = _format_monomial(e, vars, latex)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a) if not latex or a.denominator == 1 else f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
        elif a == 1:
            body = mono
        else:
            sa = str(a) if not latex or a.denominator == 1 else f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
            body = f"{sa}{' ' if latex else '*'}{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


class RatFun:
    """Reduced quotient of two Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiLaurent, den: MultiLaurent):
        # internal: assumes (num, den) already normalized
        self.num = num
        self.den = den

    # ------------------------------------------------------------ construction
    @classmethod
    def make(cls, num, den=1) -> "RatFun":
        num = MultiLaurent.coerce(num)
        den = MultiLaurent.coerce(den, num.vars)
        num, den = num._align(den)
        return cls._normalize(num.vars, num._poly, num._shift, den._poly, den._shift)

    @classmethod
    def _normalize(cls, vars, npoly, nshift, dpoly, dshift) -> "RatFun":
        ctx = _ctx(vars)
        zero = (0,) * len(vars)
        if dpoly.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if npoly.is_zero():
            return cls(MultiLaurent.zero(vars), MultiLaurent(vars, ctx.from_dict({zero: 1}), zero))
        tc = dpoly.term_content()
        e = _monoms(tc)[0]
        if any(e):
            dpoly = dpoly / tc
            dshift = _add_vec(dshift, e)
        shift = _sub_vec(nshift, dshift)
        if not dpoly.is_constant():
            g = npoly.gcd(dpoly)
            if not g.is_constant():
                npoly = npoly / g
                dpoly = dpoly / g
        lc = dpoly.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            npoly = npoly * inv
            dpoly = dpoly * inv
        return cls(MultiLaurent._make(vars, npoly, shift), MultiLaurent(vars, dpoly, zero))

    @classmethod
    def coerce(cls, x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, MultiLaurent):
            one = MultiLaurent.const(1, x.vars)
            if x.is_zero():
                return cls(x, one)
            # strip an overall rational content sign only via den=1
            return cls(x, one)
        return cls(MultiLaurent.const(x), MultiLaurent.const(1))

    @classmethod
    def symbol(cls, name: str) -> "RatFun":
        return cls.coerce(MultiLaurent.symbol(name))

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "RatFun":
        return cls.coerce(MultiLaurent.monomial(exps, coeff))

    # ------------------------------------------------------------ inspection
    @property
    def vars(self):
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        """Denominator is 1, i.e. the value is a Laurent polynomial."""
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def as_laurent(self) -> MultiLaurent:
        if not self.is_polynomial():
            raise ValueError(f"not a Laurent polynomial: {self}")
        return self.num

    def constant_value(self) -> Fraction:
        return self.as_laurent().constant_value()

    def occurs(self, var: str) -> bool:
        return self.num.occurs(var) or self.den.occurs(var)

    def coeff(self, var: str, k: int) -> "RatFun":
        """Coefficient of ``var**k``; the denominator must not involve ``var``."""
        if self.den.occurs(var):
            raise ValueError(f"denominator depends on {var}")
        return RatFun.make(self.num.coeff(var, k), self.den)

    def degree_range(self, var: str) -> tuple[int, int]:
        if self.den.occurs(var):
            raise ValueError(f"denominator depends on {var}")
        return self.num.exponent_range(var)

    # ------------------------------------------------------------ arithmetic
    def _pair(self, other):
        other = RatFun.coerce(other)
        if self.vars == other.vars:
            return self, other
        vars = canonical_vars(set(self.vars) | set(other.vars))
        return (RatFun(self.num.lift(vars), self.den.lift(vars)),
                RatFun(other.num.lift(vars), other.den.lift(vars)))

    def __add__(self, other):
        a, b = self._pair(other)
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        if a.den.is_one() and b.den.is_one():
            return RatFun.coerce(a.num + b.num)
        d1, d2 = a.den._poly, b.den._poly
        if d1 == d2:
            n = a.num + b.num
            return RatFun._normalize(a.vars, n._poly, n._shift, d1, a.den._shift)
        g = d1.gcd(d2)
        if not g.is_constant():
            c1 = d1 / g
            c2 = d2 / g
        else:
            c1, c2 = d1, d2
        vars = a.vars
        zero = (0,) * len(vars)
        n = a.num * MultiLaurent(vars, c2, zero) + b.num * MultiLaurent(vars, c1, zero)
        return RatFun._normalize(vars, n._poly, n._shift, d1 * c2, zero)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (RatFun, MultiLaurent)):
            c = _fmpq(other)
            if c == 0:
                return RatFun.coerce(MultiLaurent.zero(self.vars))
            return RatFun(self.num * c, self.den)
        a, b = self._pair(other)
        if a.is_zero() or b.is_zero():
            return RatFun.coerce(MultiLaurent.zero(a.vars))
        if a.den.is_one() and b.den.is_one():
            return RatFun(a.num * b.num, a.den)
        vars = a.vars
        # cross-cancel before multiplying
        n1, d1, n2, d2 = a.num._poly, a.den._poly, b.num._poly, b.den._poly
        if not d2.is_constant():
            g = n1.gcd(d2)
            if not g.is_constant():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_constant():
            g = n2.gcd(d1)
            if not g.is_constant():
                n2, d1 = n2 / g, d1 / g
        zero = (0,) * len(vars)
        num = MultiLaurent._make(vars, n1 * n2, _add_vec(a.num._shift, b.num._shift))
        den = d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        # num may have gained a variable factor already absorbed by _make
        return RatFun(num, MultiLaurent(vars, den, zero))

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        zero = (0,) * len(self.vars)
        return RatFun._normalize(self.vars, self.den._poly, zero, self.num._poly, self.num._shift)

    def __truediv__(self, other):
        other = RatFun.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n >= 0:
            if self.den.is_one():
                return RatFun(self.num ** n, self.den)
            return RatFun(self.num ** n, self.den ** n)
        return self.inverse() ** (-n)

    def __eq__(self, other):
        if not isinstance(other, (RatFun, MultiLaurent)):
            try:
                other = RatFun.coerce(MultiLaurent.const(other))
            except TypeError:
                return NotImplemented
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash((tuple(self.num.sorted_terms()), tuple(self.den.sorted_terms())))

    def __bool__(self):
        return not self.is_zero()

    # ------------------------------------------------------------ substitution
    def substitute(self, bindings: Mapping[str, object]) -> "RatFun":
        """Image under the ring map sending each named symbol to a value."""
        bindings = {k: RatFun.coerce(v) for k, v in bindings.items()}
        if not bindings:
            return self
        num = _subs_laurent(self.num, bindings)
        den = _subs_laurent(self.den, bindings)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes identically after substitution")
        return num / den

    # ------------------------------------------------------------ output
    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def latex(self) -> str:
        if self.den.is_one():
            return self.num.latex()
        return f"\\frac{{{self.num.latex()}}}{{{self.den.latex()}}}"

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "num": self.num.terms_json(), "den": self.den.terms_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFun":
        vars = data["vars"]
        num = MultiLaurent.from_terms({tuple(t["e"]): Fraction(t["c"]) for t in data["num"]}, vars)
        den = MultiLaurent.from_terms({tuple(t["e"]): Fraction(t["c"]) for t in data["den"]}, vars)
        return cls.make(num, den)


def _subs_laurent(f: MultiLaurent, bindings: Mapping[str, RatFun]) -> RatFun:
    """Substitute into a Laurent polynomial; values are rational functions."""
    active = [v for v in bindings if v in f.vars and f.occurs(v)]
    if not active:
        return RatFun.coerce(f)
    monomial_only = all(bindings[v].is_polynomial() and bindings[v].num.is_monomial() for v in active)
    if monomial_only:
        return RatFun.coerce(_subs_monomial(f, {v: bindings[v].num for v in active}))
    # clear denominators: x_i -> n_i/d_i, exponents in [lo_i, hi_i]
    idx = {v: f.vars.index(v) for v in active}
    ranges = {v: (min(f.exponent_range(v)[0], 0), max(f.exponent_range(v)[1], 0)) for v in active}
    rest_vars = f.vars
    total = MultiLaurent.zero(rest_vars)
    num_pows: dict = {}
    den_pows: dict = {}

    def npow(v, k):
        key = (v, k)
        if key not in num_pows:
            num_pows[key] = bindings[v].num ** k
        return num_pows[key]

    def dpow(v, k):
        key = (v, k)
        if key not in den_pows:
            den_pows[key] = bindings[v].den ** k
        return den_pows[key]

    # group terms by the exponents of the substituted variables
    groups: dict = {}
    for e, c in f.terms.items():
        key = tuple(e[idx[v]] for v in active)
        rest = list(e)
        for v in active:
            rest[idx[v]] = 0
        groups.setdefault(key, {})[tuple(rest)] = c
    for key, rest_terms in groups.items():
        piece = MultiLaurent.from_terms(rest_terms, rest_vars)
        for v, k in zip(active, key):
            lo, hi = ranges[v]
            piece = piece * npow(v, k - lo) * dpow(v, hi - k)
        total = total + piece
    den = MultiLaurent.const(1, rest_vars)
    for v in active:
        lo, hi = ranges[v]
        den = den * npow(v, -lo) * dpow(v, hi)
    return RatFun.make(total, den)


def _subs_monomial(f: MultiLaurent, bindings: Mapping[str, MultiLaurent]) -> MultiLaurent:
    vars = canonical_vars(set(f.vars).union(*(b.vars for b in bindings.values())))
    f = f.lift(vars)
    images = {}
    for v, b in bindings.items():
        b = b.lift(vars)
        (e, c), = b.terms.items()
        images[vars.index(v)] = (e, c)
    out: dict = {}
    for e, c in f.terms.items():
        new = list(e)
        coef = c
        for i, (be, bc) in images.items():
            k = e[i]
            new[i] -= k
            if k:
                new = [a + k * b for a, b in zip(new, be)]
                coef *= bc ** k
        key = tuple(new)
        out[key] = out.get(key, 0) + coef
    return MultiLaurent.from_terms(out, vars)


def ratfun_arith(a, b, op: str) -> RatFun:
    """Exact ``a op b`` for op in add/sub/mul/div."""
    a, b = RatFun.coerce(a), RatFun.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def substitute(f, bindings: Mapping[str, object]) -> RatFun:
    return RatFun.coerce(f).substitute(bindings)


# ---------------------------------------------------------------- power series


@dataclass(frozen=True)
class TruncSeries:
    """Power series in ``var`` known through degree ``order``."""

    var: str
    coeffs: tuple

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Iterable) -> "TruncSeries":
        return cls(var, tuple(RatFun.coerce(c) for c in coeffs))

    @classmethod
    def from_ratfun(cls, f, var: str, order: int) -> "TruncSeries":
        """Expand a rational function whose denominator is free of ``var``
        or has a nonzero constant term in it."""
        f = RatFun.coerce(f)
        if not f.den.occurs(var):
            lo, _ = f.num.exponent_range(var)
            if lo < 0:
                raise ValueError(f"negative power of {var}")
            return cls(var, tuple(f.coeff(var, k) for k in range(order + 1)))
        num = cls.from_ratfun(RatFun.coerce(f.num), var, order)
        den = cls.from_ratfun(RatFun.coerce(f.den), var, order)
        return series_div(num, den)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> RatFun:
        return self.coeffs[k]

    def _check(self, other: "TruncSeries"):
        if self.var != other.var:
            raise ValueError("series in different variables")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        d = min(self.order, other.order)
        return TruncSeries(self.var, tuple(self.coeffs[k] + other.coeffs[k] for k in range(d + 1)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        d = min(self.order, other.order)
        return TruncSeries(self.var, tuple(self.coeffs[k] - other.coeffs[k] for k in range(d + 1)))

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            other = RatFun.coerce(other)
            return TruncSeries(self.var, tuple(c * other for c in self.coeffs))
        self._check(other)
        d = min(self.order, other.order)
        out = []
        for k in range(d + 1):
            acc = RatFun.coerce(0)
            for j in range(k + 1):
                if self.coeffs[j].is_zero() or other.coeffs[k - j].is_zero():
                    continue
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return TruncSeries(self.var, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return series_div(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def exp(self) -> "TruncSeries":
        """exp of a series with vanishing constant term."""
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs a zero constant term")
        d = self.order
        b = [RatFun.coerce(1)]
        for k in range(1, d + 1):
            acc = RatFun.coerce(0)
            for j in range(1, k + 1):
                if not self.coeffs[j].is_zero():
                    acc = acc + self.coeffs[j] * b[k - j] * j
            b.append(acc * Fraction(1, k))
        return TruncSeries(self.var, tuple(b))

    def polynomial(self, degree: int | None = None) -> RatFun:
        """Sum of the terms through ``degree`` as a rational function."""
        d = self.order if degree is None else degree
        x = RatFun.symbol(self.var)
        out = RatFun.coerce(0)
        for k in range(d + 1):
            if not self.coeffs[k].is_zero():
                out = out + self.coeffs[k] * x ** k
        return out

    def __str__(self):
        parts = [f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts) + f" + O({self.var}^{self.order + 1})"


def series_div(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """c with a = b*c through min(order a, order b)."""
    a._check(b)
    if b.coeffs[0].is_zero():
        raise ZeroDivisionError("series constant term is not invertible")
    d = min(a.order, b.order)
    inv0 = b.coeffs[0].inverse()
    c = []
    for k in range(d + 1):
        acc = a.coeffs[k]
        for j in range(1, k + 1):
            if not b.coeffs[j].is_zero() and not c[k - j].is_zero():
                acc = acc - b.coeffs[j] * c[k - j]
        c.append(acc * inv0)
    return TruncSeries(a.var, tuple(c))


# ---------------------------------------------------------------- constant terms


@dataclass(frozen=True)
class Factor:
    """``(1 - u)`` when kind is "polynomial", ``sum_n u^n`` when "geometric"."""

    monomial: MultiLaurent
    kind: str = "geometric"
    n_max: int | None = None

    def __post_init__(self):
        if self.kind not in ("polynomial", "geometric"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if not isinstance(self.monomial, MultiLaurent):
            object.__setattr__(self, "monomial", MultiLaurent.coerce(self.monomial))
        if not self.monomial.is_monomial():
            raise ValueError("factor must be built on a monomial")


@dataclass(frozen=True)
class ExpansionSpec:
    factors: tuple[Factor, ...]


def _leading_z(u: MultiLaurent, z_vars: Sequence[str]):
    (e, _), = u.terms.items()
    for z in z_vars:
        if z in u.vars:
            k = e[u.vars.index(z)]
            if k != 0:
                return z, k
    return None, 0


def constant_term(spec: ExpansionSpec, prefactors, z_vars: Sequence[str]) -> RatFun:
    """z^0 coefficient of ``prefactors * prod(factors)``, all z at once.

    Geometric factors are expanded as formal series in their monomial; the
    lowest-indexed z occurring in each monomial must carry a positive
    exponent.  Variables are eliminated in the given order, and each series is
    cut off exactly at the degree that can still meet a negative power.
    """
    pre = RatFun.coerce(prefactors)
    for z in z_vars:
        if pre.den.occurs(z):
            raise ValueError(f"prefactor denominator depends on {z}")
    poly_by_z: dict[str, list] = {z: [] for z in z_vars}
    geo_by_z: dict[str, list] = {z: [] for z in z_vars}
    cur = pre.num
    for f in spec.factors:
        z, k = _leading_z(f.monomial, z_vars)
        if f.kind == "polynomial":
            if z is None:
                cur = cur * (1 - f.monomial)
            else:
                poly_by_z[z].append(f)
            continue
        if z is None or k <= 0:
            raise OrderingError(f"geometric factor 1/(1 - {f.monomial}) is not a series in the z-order")
        geo_by_z[z].append((f, k))
    vars = canonical_vars(set(cur.vars) | set(z_vars))
    cur = cur.lift(vars)
    for z in z_vars:
        for f in poly_by_z[z]:
            cur = cur * (1 - f.monomial)
        if cur.is_zero():
            break
        lo, _ = cur.exponent_range(z)
        budget = max(0, -lo)
        if geo_by_z[z]:
            g = MultiLaurent.const(1, vars)
            for f, k in geo_by_z[z]:
                need = budget // k
                if f.n_max is not None and f.n_max < need:
                    raise InsufficientBoundError(
                        f"bound {f.n_max} for 1/(1 - {f.monomial}) is below the budget {need}"
                    )
                n = need if f.n_max is None else f.n_max
                u = f.monomial.lift(vars)
                s = MultiLaurent.const(1, vars)
                un = MultiLaurent.const(1, vars)
                for _ in range(n):
                    un = un * u
                    s = s + un
                g = (g * s).truncate_above(z, budget)
            cur = cur * g
        cur = cur.coeff(z, 0)
    cur = cur.drop_vars(z_vars) if not cur.is_zero() else MultiLaurent.zero(canonical_vars(()))
    den = pre.den.drop_vars([z for z in z_vars if z in pre.den.vars])
    return RatFun.make(cur, den)
