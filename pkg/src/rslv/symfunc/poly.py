"""Sparse multivariate polynomials over Q.

Monomials are packed into a single Python int: variable ``i`` of the
registry owns bits ``[BITS*i, BITS*(i+1))``.  Multiplying monomials is then
one integer addition.  The top bit of every field is kept clear so that
divisibility can be tested with a single subtraction (see ``divides``).
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

BITS = 16
FIELD = (1 << BITS) - 1
_GUARD = 1 << (BITS - 1)
MAX_DEGREE = _GUARD - 1

Number = Union[int, Fraction]


class VariableRegistry:
    """Append-only bijection between variable names and indices."""

    def __init__(self) -> None:
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._lock = threading.Lock()

    def index(self, name: str) -> int:
        idx = self._index.get(name)
        if idx is not None:
            return idx
        with self._lock:
            idx = self._index.get(name)
            if idx is None:
                idx = len(self._names)
                self._names.append(name)
                self._index[name] = idx
        return idx

    def lookup(self, name: str) -> int | None:
        return self._index.get(name)

    def name(self, idx: int) -> str:
        return self._names[idx]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._index


REGISTRY = VariableRegistry()


def var_index(v: Union[str, int]) -> int:
    if isinstance(v, int):
        return v
    return REGISTRY.index(v)


def unpack(m: int) -> list[int]:
    """Exponent list of a packed monomial (trailing zeros dropped)."""
    out = []
    while m:
        out.append(m & FIELD)
        m >>= BITS
    return out


def pack(exps: Iterable[int]) -> int:
    m = 0
    shift = 0
    for e in exps:
        if e < 0 or e > MAX_DEGREE:
            raise OverflowError(f"exponent {e} outside [0, {MAX_DEGREE}]")
        m |= e << shift
        shift += BITS
    return m


def pack_sparse(pairs: Iterable[tuple[int, int]]) -> int:
    m = 0
    for i, e in pairs:
        if e < 0 or e > MAX_DEGREE:
            raise OverflowError(f"exponent {e} outside [0, {MAX_DEGREE}]")
        m += e << (BITS * i)
    return m


@lru_cache(maxsize=None)
def _guard_mask(nfields: int) -> int:
    h = 0
    for i in range(nfields):
        h |= _GUARD << (BITS * i)
    return h


def divides(m1: int, m2: int) -> bool:
    """True when monomial m1 divides monomial m2."""
    nf = max(m1.bit_length(), m2.bit_length()) // BITS + 1
    h = _guard_mask(nf)
    return ((m2 | h) - m1) & h == h


def total_degree(m: int) -> int:
    d = 0
    while m:
        d += m & FIELD
        m >>= BITS
    return d


def _norm_coeff(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MultiPolynomial:
    """Immutable sparse polynomial with rational coefficients.

    ``_terms`` maps packed monomials to nonzero ``int``/``Fraction``
    coefficients.  ``_deg`` is an upper bound on the total degree, used to
    refuse products whose exponents could overflow a packed field.
    """

    __slots__ = ("_terms", "_deg", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None, deg: int | None = None):
        if terms is None:
            terms = {}
        self._terms: dict[int, Number] = dict(terms)
        if deg is None:
            deg = max((total_degree(m) for m in self._terms), default=0)
        self._deg = deg
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[int, Number], deg: int) -> "MultiPolynomial":
        p = object.__new__(cls)
        p._terms = terms
        p._deg = deg
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "MultiPolynomial":
        c = _norm_coeff(c)
        return cls._raw({0: c} if c else {}, 0)

    @classmethod
    def variable(cls, v: Union[str, int]) -> "MultiPolynomial":
        i = var_index(v)
        return cls._raw({1 << (BITS * i): 1}, 1)

    @classmethod
    def monomial(cls, exps: Mapping[Union[str, int], int], coeff: Number = 1) -> "MultiPolynomial":
        pairs = [(var_index(v), e) for v, e in exps.items() if e]
        m = pack_sparse(pairs)
        coeff = _norm_coeff(coeff)
        return cls._raw({m: coeff} if coeff else {}, sum(e for _, e in pairs))

    @classmethod
    def from_exponents(cls, terms: Mapping[tuple[int, ...], Number]) -> "MultiPolynomial":
        """Build from ``{exponent tuple aligned with the registry: coeff}``."""
        out: dict[int, Number] = {}
        for exps, c in terms.items():
            if c:
                m = pack(exps)
                out[m] = out.get(m, 0) + c
        return cls({m: _norm_coeff(c) for m, c in out.items() if c})

    # -- inspection ---------------------------------------------------------
    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Number:
        return self._terms.get(0, 0)

    def degree(self) -> int:
        """Exact total degree (-1 for the zero polynomial)."""
        if not self._terms:
            return -1
        return max(total_degree(m) for m in self._terms)

    def degree_in(self, v: Union[str, int]) -> int:
        i = var_index(v)
        sh = BITS * i
        return max(((m >> sh) & FIELD for m in self._terms), default=-1)

    def variables(self) -> set[int]:
        acc = 0
        for m in self._terms:
            acc |= m
        out = set()
        i = 0
        while acc:
            if acc & FIELD:
                out.add(i)
            acc >>= BITS
            i += 1
        return out

    def leading(self) -> tuple[int, Number]:
        """Leading term under the order 'compare packed ints'.

        That order is lexicographic with the most recently registered
        variable most significant; it is a monomial order, which is all the
        division routine needs.
        """
        m = max(self._terms)
        return m, self._terms[m]

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "MultiPolynomial | None":
        if isinstance(other, MultiPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPolynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(self._terms) < len(o._terms):
            small, big = self._terms, o._terms
        else:
            small, big = o._terms, self._terms
        res = dict(big)
        for m, c in small.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                del res[m]
        return MultiPolynomial._raw(res, max(self._deg, o._deg))

    __radd__ = __add__

    def __neg__(self):
        return MultiPolynomial._raw({m: -c for m, c in self._terms.items()}, self._deg)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        res = dict(self._terms)
        for m, c in o._terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            else:
                del res[m]
        return MultiPolynomial._raw(res, max(self._deg, o._deg))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def scale(self, c: Number) -> "MultiPolynomial":
        c = _norm_coeff(c)
        if not c:
            return MultiPolynomial._raw({}, 0)
        if c == 1:
            return self
        return MultiPolynomial._raw({m: _norm_coeff(v * c) for m, v in self._terms.items()}, self._deg)

    def shift(self, mono: int, deg: int) -> "MultiPolynomial":
        """Multiply by the packed monomial ``mono`` of total degree ``deg``."""
        if not mono:
            return self
        if self._deg + deg > MAX_DEGREE:
            raise OverflowError("degree bound exceeded")
        return MultiPolynomial._raw({m + mono: c for m, c in self._terms.items()}, self._deg + deg)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        if self._deg + other._deg > MAX_DEGREE:
            raise OverflowError("degree bound exceeded")
        return MultiPolynomial._raw(_mul_terms(self._terms, other._terms), self._deg + other._deg)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = MultiPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            self._hash = h
        return h

    def exact_divide(self, divisor: "MultiPolynomial") -> "MultiPolynomial":
        """Quotient of an exact division; ArithmeticError if a remainder is left."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = divisor.leading()
        dterms = divisor._terms
        rem = dict(self._terms)
        quot: dict[int, Number] = {}
        while rem:
            m = max(rem)
            if not divides(lm, m):
                raise ArithmeticError("polynomial division is not exact")
            c = rem[m]
            if isinstance(c, int) and isinstance(lc, int):
                qq, r = divmod(c, lc)
                qc = qq if not r else Fraction(c, lc)
            else:
                qc = _norm_coeff(Fraction(c) / lc)
            qm = m - lm
            quot[qm] = qc
            for dm, dc in dterms.items():
                k = dm + qm
                s = rem.get(k, 0) - qc * dc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return MultiPolynomial._raw(quot, max(self._deg - divisor.degree(), 0))

    # -- substitution / evaluation ------------------------------------------
    def split_by(self, idxs: Iterable[int]) -> dict[tuple[int, ...], "MultiPolynomial"]:
        """Group terms by the exponents of ``idxs``; values hold the rest."""
        idxs = tuple(idxs)
        shifts = [BITS * i for i in idxs]
        mask = 0
        for s in shifts:
            mask |= FIELD << s
        groups: dict[tuple[int, ...], dict[int, Number]] = {}
        for m, c in self._terms.items():
            key = tuple((m >> s) & FIELD for s in shifts)
            rest = m & ~mask
            groups.setdefault(key, {})[rest] = c
        return {k: MultiPolynomial(v) for k, v in groups.items()}

    def evaluate(self, values: Mapping[int, Number]) -> Number:
        """Exact value with every variable of ``self`` given a number."""
        total: Number = 0
        cache: dict[tuple[int, int], Number] = {}
        for m, c in self._terms.items():
            v = c
            i = 0
            while m:
                e = m & FIELD
                if e:
                    key = (i, e)
                    p = cache.get(key)
                    if p is None:
                        p = Fraction(values[i]) ** e
                        cache[key] = p
                    v = v * p
                m >>= BITS
                i += 1
            total += v
        return _norm_coeff(Fraction(total)) if isinstance(total, Fraction) else total

    # -- text ---------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Number]]:
        """Terms in descending graded-lex order over the registry order."""
        n = len(REGISTRY)
        rows = []
        for m, c in self._terms.items():
            e = unpack(m)
            e = e + [0] * (n - len(e))
            rows.append((sum(e), tuple(e), c))
        rows.sort(key=lambda r: (r[0], r[1]), reverse=True)
        return [(e, c) for _, e, c in rows]

    def canonical_str(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                REGISTRY.name(i) if e == 1 else f"{REGISTRY.name(i)}^{e}"
                for i, e in enumerate(exps) if e
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPolynomial({self.canonical_str()})"


def _mul_terms(a: dict[int, Number], b: dict[int, Number]) -> dict[int, Number]:
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        (m1, c1), = a.items()
        if c1 == 1:
            return {m1 + m2: c2 for m2, c2 in b.items()}
        return {m1 + m2: _norm_coeff(c1 * c2) for m2, c2 in b.items()}
    res: dict[int, Number] = {}
    get = res.get
    bitems = list(b.items())
    for m1, c1 in a.items():
        for m2, c2 in bitems:
            m = m1 + m2
            res[m] = get(m, 0) + c1 * c2
    return {m: _norm_coeff(c) for m, c in res.items() if c}


def poly_content(p: MultiPolynomial) -> tuple[Fraction, int, MultiPolynomial]:
    """Split ``p`` as ``c * x^mono * q`` with ``q`` primitive.

    ``q`` has coprime integer coefficients, no monomial factor, and a
    positive leading coefficient; this makes it a canonical key for
    syntactic factor cancellation.
    """
    terms = p._terms
    if not terms:
        raise ValueError("zero polynomial has no content")
    # monomial content
    if 0 in terms:
        mono = 0
    else:
        it = iter(terms)
        mins = unpack(next(it))
        for m in it:
            if not any(mins):
                break
            e = unpack(m)
            if len(e) < len(mins):
                del mins[len(e):]
            for i in range(len(mins)):
                if e[i] < mins[i]:
                    mins[i] = e[i]
        mono = pack(mins)
    # rational content
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            d = c.denominator
            den = den * d // gcd(den, d)
    g = 0
    for c in terms.values():
        g = gcd(g, int(c * den))
        if g == 1:
            break
    lead = terms[max(terms)]
    if lead < 0:
        g = -g
    content = Fraction(g, den)
    mdeg = total_degree(mono)
    if den == 1:
        if g == 1 and not mono:
            return content, 0, p
        q = {m - mono: c // g for m, c in terms.items()}
    else:
        q = {m - mono: int(c * den) // g for m, c in terms.items()}
    return content, mono, MultiPolynomial._raw(q, p._deg - mdeg)
