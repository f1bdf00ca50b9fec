"""Exact rational functions over Q, kept in partially factored form.

A value is ``coeff * x^mono * prod(num) / prod(den)`` where ``mono`` is a
Laurent monomial and ``num``/``den`` map primitive polynomials (see
``poly_content``) to multiplicities.  Nothing is reduced by GCD; a factor is
cancelled only when the identical primitive polynomial sits on both sides.
Sums are formed over the LCM of the two factor multisets, so equality testing
(``a - b == 0``) is cross-multiplication without the blow-up of multiplying
full denominators together.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .poly import (
    REGISTRY,
    MultiPolynomial,
    Number,
    _norm_coeff,
    pack_sparse,
    poly_content,
    unpack,
    var_index,
)

Mono = tuple  # sorted tuple of (var index, nonzero exponent)


def _mono_from_packed(m: int) -> Mono:
    return tuple((i, e) for i, e in enumerate(unpack(m)) if e)


def _mono_add(a: Mono, b: Mono, scale: int = 1) -> Mono:
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + scale * e
        if s:
            d[v] = s
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


def _mono_split(mono: Mono) -> tuple[int, int, int, int]:
    """Positive part, its degree, negative part (as positive), its degree."""
    pos = [(v, e) for v, e in mono if e > 0]
    neg = [(v, -e) for v, e in mono if e < 0]
    return (pack_sparse(pos), sum(e for _, e in pos), pack_sparse(neg), sum(e for _, e in neg))


@lru_cache(maxsize=512)
def _expand_cached(key: frozenset) -> MultiPolynomial:
    out = MultiPolynomial.constant(1)
    for f, k in sorted(key, key=lambda fk: len(fk[0])):
        for _ in range(k):
            out = out * f
    return out


def _expand(factors: Mapping[MultiPolynomial, int]) -> MultiPolynomial:
    if not factors:
        return MultiPolynomial.constant(1)
    if len(factors) == 1:
        (f, k), = factors.items()
        if k == 1:
            return f
    return _expand_cached(frozenset(factors.items()))


class RationalFunction:
    """Immutable exact rational function (see module docstring)."""

    __slots__ = ("coeff", "mono", "num", "den")

    def __init__(self, coeff: Number = 0, mono: Mono = (), num=None, den=None):
        coeff = _norm_coeff(coeff)
        self.coeff = coeff
        if coeff:
            self.mono = mono
            self.num = num if num is not None else {}
            self.den = den if den is not None else {}
        else:
            self.mono, self.num, self.den = (), {}, {}

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "RationalFunction":
        return cls(c)

    @classmethod
    def var(cls, v: Union[str, int]) -> "RationalFunction":
        return cls(1, ((var_index(v), 1),))

    @classmethod
    def monomial(cls, exps: Mapping[Union[str, int], int], coeff: Number = 1) -> "RationalFunction":
        d: dict[int, int] = {}
        for v, e in exps.items():
            i = var_index(v)
            d[i] = d.get(i, 0) + e
        return cls(coeff, tuple(sorted((i, e) for i, e in d.items() if e)))

    @classmethod
    def from_poly(cls, p: MultiPolynomial) -> "RationalFunction":
        if p.is_zero():
            return ZERO
        c, m, q = poly_content(p)
        num = {} if q.is_constant() else {q: 1}
        return cls(c, _mono_from_packed(m), num, {})

    @classmethod
    def fraction(cls, numerator: MultiPolynomial, denominator: MultiPolynomial) -> "RationalFunction":
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls.from_poly(numerator) / cls.from_poly(denominator)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeff

    def __bool__(self) -> bool:
        return bool(self.coeff)

    def is_constant(self) -> bool:
        return not self.mono and not self.num and not self.den

    def is_laurent_monomial(self) -> bool:
        return not self.num and not self.den

    def constant_value(self) -> Number:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.coeff

    def variables(self) -> set[int]:
        out = {v for v, _ in self.mono}
        for f in self.num:
            out |= f.variables()
        for f in self.den:
            out |= f.variables()
        return out

    def variable_names(self) -> set[str]:
        return {REGISTRY.name(i) for i in self.variables()}

    @property
    def numerator(self) -> MultiPolynomial:
        pos, pdeg, _, _ = _mono_split(self.mono)
        return _expand(self.num).shift(pos, pdeg).scale(self.coeff)

    @property
    def denominator(self) -> MultiPolynomial:
        _, _, neg, ndeg = _mono_split(self.mono)
        return _expand(self.den).shift(neg, ndeg)

    def _key(self):
        return (self.coeff, self.mono, self.num, self.den)

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        if not self.coeff:
            return self
        return RationalFunction(-self.coeff, self.mono, self.num, self.den)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeff or not o.coeff:
            return ZERO
        coeff = self.coeff * o.coeff
        mono = _mono_add(self.mono, o.mono)
        if not o.num and not o.den:
            return RationalFunction(coeff, mono, self.num, self.den)
        if not self.num and not self.den:
            return RationalFunction(coeff, mono, o.num, o.den)
        num = dict(self.num)
        den = dict(self.den)
        _merge(num, den, o.num)
        _merge(den, num, o.den)
        return RationalFunction(coeff, mono, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.coeff:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(
            Fraction(1) / self.coeff, tuple((v, -e) for v, e in self.mono), self.den, self.num
        )

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        if k == 1:
            return self
        if not self.coeff:
            return ZERO
        return RationalFunction(
            self.coeff ** k,
            tuple((v, e * k) for v, e in self.mono),
            {f: m * k for f, m in self.num.items()},
            {f: m * k for f, m in self.den.items()},
        )

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeff:
            return o
        if not o.coeff:
            return self
        a, b = self, o
        if a.is_constant() and b.is_constant():
            return RationalFunction(a.coeff + b.coeff)
        # shared numerator factors stay outside the sum
        common = {f: min(k, b.num[f]) for f, k in a.num.items() if f in b.num}
        lcm = dict(a.den)
        for f, k in b.den.items():
            if lcm.get(f, 0) < k:
                lcm[f] = k
        da = dict(a.mono)
        db = dict(b.mono)
        mono_c = {}
        for v in set(da) | set(db):
            e = min(da.get(v, 0), db.get(v, 0))
            if e:
                mono_c[v] = e
        pa = _part(a, common, lcm, da, mono_c)
        pb = _part(b, common, lcm, db, mono_c)
        s = pa + pb
        if s.is_zero():
            return ZERO
        c, m, q = poly_content(s)
        mono = _mono_add(tuple(sorted(mono_c.items())), _mono_from_packed(m))
        num = dict(common)
        den = lcm
        if not q.is_constant():
            if q in den:
                if den[q] == 1:
                    del den[q]
                else:
                    den[q] -= 1
            else:
                num[q] = num.get(q, 0) + 1
        return RationalFunction(c, mono, num, den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._key() == o._key():
            return True
        return (self - o).is_zero()

    __hash__ = None  # equality is semantic, structure is not canonical

    # -- substitution / evaluation ------------------------------------------
    def subs(self, mapping: Mapping[Union[str, int], object]) -> "RationalFunction":
        """Substitute variables by rational functions (or numbers)."""
        m = {var_index(k): _coerce(v) for k, v in mapping.items()}
        if not self.coeff:
            return ZERO
        out = RationalFunction(self.coeff)
        for v, e in self.mono:
            base = m.get(v)
            if base is None:
                base = RationalFunction(1, ((v, 1),))
            out = out * base ** e
        for f, k in self.num.items():
            out = out * _poly_subs(f, m) ** k
        for f, k in self.den.items():
            val = _poly_subs(f, m)
            if val.is_zero():
                raise ZeroDivisionError("substitution makes a denominator vanish")
            out = out / val ** k
        return out

    def evaluate(self, values: Mapping[Union[str, int], Number]) -> Fraction:
        vals = {var_index(k): Fraction(v) for k, v in values.items()}
        out = Fraction(self.coeff)
        for v, e in self.mono:
            out *= vals[v] ** e
        for f, k in self.num.items():
            out *= Fraction(f.evaluate(vals)) ** k
        for f, k in self.den.items():
            d = Fraction(f.evaluate(vals))
            if not d:
                raise ZeroDivisionError("denominator vanishes at the evaluation point")
            out /= d ** k
        return out

    def to_laurent_polynomial(self) -> "RationalFunction":
        """Same value with an empty factored denominator.

        Raises ArithmeticError when the denominator does not divide the
        numerator exactly, i.e. when the value is not a Laurent polynomial.
        """
        if not self.den:
            return self
        q = _expand(self.num).exact_divide(_expand(self.den))
        return RationalFunction.from_poly(q) * RationalFunction(self.coeff, self.mono)

    def is_laurent_polynomial(self) -> bool:
        try:
            self.to_laurent_polynomial()
        except ArithmeticError:
            return False
        return True

    # -- text ---------------------------------------------------------------
    def canonical_str(self) -> str:
        if not self.coeff:
            return "0"
        mono = "*".join(f"{REGISTRY.name(v)}^{e}" for v, e in self.mono) or "1"
        num = sorted(f"({f.canonical_str()})^{k}" for f, k in self.num.items())
        den = sorted(f"({f.canonical_str()})^{k}" for f, k in self.den.items())
        return f"{self.coeff} * {mono} * [{' * '.join(num) or '1'}] / [{' * '.join(den) or '1'}]"

    def __repr__(self) -> str:
        return f"RationalFunction({self.canonical_str()})"


def _merge(target: dict, other_side: dict, add: Mapping[MultiPolynomial, int]) -> None:
    for f, k in add.items():
        d = other_side.get(f)
        if d:
            if d > k:
                other_side[f] = d - k
            elif d == k:
                del other_side[f]
            else:
                del other_side[f]
                target[f] = target.get(f, 0) + k - d
        else:
            target[f] = target.get(f, 0) + k


def _part(r: RationalFunction, common, lcm, mono_d, mono_c) -> MultiPolynomial:
    num = {f: k - common.get(f, 0) for f, k in r.num.items() if k - common.get(f, 0)}
    extra = {f: k - r.den.get(f, 0) for f, k in lcm.items() if k - r.den.get(f, 0)}
    p = _expand(num)
    if extra:
        p = p * _expand(extra)
    shift = [(v, e - mono_c.get(v, 0)) for v, e in mono_d.items()]
    shift += [(v, -e) for v, e in mono_c.items() if v not in mono_d]
    shift = [(v, e) for v, e in shift if e]
    if shift:
        p = p.shift(pack_sparse(shift), sum(e for _, e in shift))
    return p.scale(r.coeff)


def _poly_subs(p: MultiPolynomial, m: Mapping[int, RationalFunction]) -> RationalFunction:
    used = p.variables() & set(m)
    if not used:
        return RationalFunction.from_poly(p)
    vals = {v: m[v] for v in used}
    if all(val.is_laurent_monomial() for val in vals.values()):
        return _laurent_subs(p, vals)
    total = ZERO
    idxs = sorted(used)
    cache: dict[tuple[int, int], RationalFunction] = {}
    for exps, rest in sorted(p.split_by(idxs).items()):
        term = RationalFunction.from_poly(rest)
        for v, e in zip(idxs, exps):
            if e:
                key = (v, e)
                pw = cache.get(key)
                if pw is None:
                    pw = vals[v] ** e
                    cache[key] = pw
                term = term * pw
        total = total + term
    return total


def _laurent_subs(p: MultiPolynomial, vals: Mapping[int, RationalFunction]) -> RationalFunction:
    """Substitution where every value is ``c * (Laurent monomial)``."""
    acc: dict[tuple, Number] = {}
    for mono, c in p.items():
        exps = unpack(mono)
        d: dict[int, int] = {}
        coeff = c
        for i, e in enumerate(exps):
            if not e:
                continue
            val = vals.get(i)
            if val is None:
                d[i] = d.get(i, 0) + e
                continue
            coeff = coeff * val.coeff ** e
            for v, f in val.mono:
                d[v] = d.get(v, 0) + f * e
        key = tuple(sorted((v, e) for v, e in d.items() if e))
        acc[key] = acc.get(key, 0) + coeff
    acc = {k: c for k, c in acc.items() if c}
    if not acc:
        return ZERO
    mins: dict[int, int] = {}
    for key in acc:
        for v, e in key:
            if e < mins.get(v, 0):
                mins[v] = e
    terms: dict[int, Number] = {}
    for key, c in acc.items():
        d = dict(key)
        for v, e in mins.items():
            d[v] = d.get(v, 0) - e
        terms[pack_sparse((v, e) for v, e in d.items() if e)] = _norm_coeff(c)
    poly = MultiPolynomial(terms)
    shift = tuple(sorted((v, e) for v, e in mins.items() if e))
    return RationalFunction.from_poly(poly) * RationalFunction(1, shift)


def _coerce(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction(x)
    if isinstance(x, MultiPolynomial):
        return RationalFunction.from_poly(x)
    return None


def as_rf(x) -> RationalFunction:
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")
    return r


def rf_sum(items: Iterable) -> RationalFunction:
    total = ZERO
    for it in items:
        total = total + it
    return total


def rf_prod(items: Iterable) -> RationalFunction:
    total = ONE
    for it in items:
        total = total * it
    return total


def var(name: str) -> RationalFunction:
    return RationalFunction.var(name)


def symbols(names: str) -> list[RationalFunction]:
    return [RationalFunction.var(n) for n in names.replace(",", " ").split()]


ZERO = RationalFunction(0)
ONE = RationalFunction(1)
