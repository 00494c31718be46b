"""
Exact coefficients: rationals, the cyclotomic fields Q(zeta_d), and sparse
multivariate Laurent polynomials whose exponents live in (1/2)Z.

Cyclotomic numbers are kept in the power basis 1, z, ..., z^(phi(d)-1) of
Q[z]/Phi_d(z), so equality is coordinate-wise.  Inside a polynomial a
cyclotomic coefficient that happens to be rational is stored as a plain
rational; this keeps the common case fast and the representation canonical.

Exponents are stored doubled (``u^(1/2)`` has stored exponent 1).

>>> p = parse_poly("2*u^2 - u^4 + v^2")
>>> str(p * 1)
'2*u^2 - u^4 + v^2'
>>> str(parse_poly("(1 + z)*(1 + z^2)", d=3))
'1'
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Union

__all__ = [
    "CoefficientError", "OrderMismatchError", "NonInvertibleSubstitutionError",
    "CycNumber", "LaurentPoly", "Rational",
    "cyclotomic_polynomial", "euler_phi", "root_of_unity",
    "U", "V", "GAMMA", "ONE", "ZERO", "var", "xparam", "xparam_name",
    "parse_poly", "poly",
]

Rational = Union[int, Fraction]


class CoefficientError(ValueError):
    pass


class OrderMismatchError(CoefficientError):
    """Arithmetic between cyclotomic numbers of different orders."""


class NonInvertibleSubstitutionError(CoefficientError):
    """A negative or half power would have to be taken of a non-unit."""


# ---------------------------------------------------------------------------
# cyclotomic fields


def euler_phi(d: int) -> int:
    return sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, lowest degree first."""
    if d < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [-1] + [0] * (d - 1) + [1]  # z^d - 1
    for k in range(1, d):
        if d % k == 0:
            num = _exact_divide(num, cyclotomic_polynomial(k))
    return tuple(num)


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def _power_table(d: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of z^k for 0 <= k < 2*phi(d), reduced modulo Phi_d."""
    phi = euler_phi(d)
    cyc = cyclotomic_polynomial(d)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(2 * phi, d)):
        rows.append(tuple(cur))
        # multiply by z: shift up, then fold z^phi = -(lower part of Phi_d)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cyc[j]
    return tuple(rows)


class CycNumber:
    """An element of Q(zeta_d) in the power basis modulo Phi_d."""

    __slots__ = ("d", "coords", "_hash")

    def __init__(self, d: int, coords):
        phi = euler_phi(d)
        coords = tuple(coords)
        if len(coords) > phi:
            table = _power_table(d)
            red = [0] * phi
            for k, c in enumerate(coords):
                if c:
                    row = table[k] if k < len(table) else table[k % d]
                    for j in range(phi):
                        if row[j]:
                            red[j] += c * row[j]
            coords = tuple(red)
        elif len(coords) < phi:
            coords = coords + (0,) * (phi - len(coords))
        self.d = d
        self.coords = coords
        self._hash = None

    # -- helpers ----------------------------------------------------------
    def rational_part(self) -> Rational | None:
        """The value as a rational if it is one, else None."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _coerce(self, other) -> CycNumber | None:
        if isinstance(other, CycNumber):
            if other.d != self.d:
                # rationals are order-agnostic
                r = other.rational_part()
                if r is None:
                    if self.rational_part() is None:
                        raise OrderMismatchError(
                            f"cyclotomic orders differ: {self.d} vs {other.d}")
                    return None
                return CycNumber(self.d, (r,))
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.d, (other,))
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, CycNumber):
                return other + self.coords[0]
            return NotImplemented
        return CycNumber(self.d, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.d, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.d, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            if isinstance(other, CycNumber):
                return other * self.coords[0]
            return NotImplemented
        return cyc_mul(self, o)

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = len(self.coords)
        # columns: self * z^j; solve M x = e_0
        cols = []
        for j in range(phi):
            cols.append((self * root_of_unity(self.d, j)).coords)
        mat = [[Fraction(cols[j][i]) for j in range(phi)] + [Fraction(int(i == 0))]
               for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [x / pv for x in mat[c]]
            for r in range(phi):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return CycNumber(self.d, tuple(mat[i][phi] for i in range(phi)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.d, tuple(Fraction(a) / other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            if other.d != self.d:
                a, b = self.rational_part(), other.rational_part()
                return a is not None and a == b
            return self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.rational_part() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            r = self.rational_part()
            self._hash = hash(r) if r is not None else hash((self.d, self.coords))
        return self._hash

    def __repr__(self):
        return f"CycNumber({self.d}, {self.coords!r})"

    def __str__(self):
        return _format_cyc(self.coords)


def cyc_mul(a: CycNumber, b: CycNumber) -> CycNumber:
    """Product in Q(zeta_d); both factors must have the same order."""
    if a.d != b.d:
        raise OrderMismatchError(f"cyclotomic orders differ: {a.d} vs {b.d}")
    phi = len(a.coords)
    prod = [0] * (2 * phi - 1)
    for i, x in enumerate(a.coords):
        if x:
            for j, y in enumerate(b.coords):
                if y:
                    prod[i + j] += x * y
    return CycNumber(a.d, prod)


def root_of_unity(d: int, k: int = 1):
    """zeta_d^k, returned as a rational when it is one (d <= 2 or k = 0 mod d)."""
    k %= d
    if k == 0:
        return 1
    if 2 * k == d:
        return -1
    phi = euler_phi(d)
    coords = [0] * max(phi, k + 1)
    coords[k] = 1
    return CycNumber(d, coords)


def _normalize_coeff(c):
    if isinstance(c, CycNumber):
        r = c.rational_part()
        return r if r is not None else c
    return c


def _format_rational(r: Rational) -> str:
    if isinstance(r, Fraction) and r.denominator != 1:
        return f"{r.numerator}/{r.denominator}"
    return str(int(r))


def _format_cyc(coords) -> str:
    parts = []
    for k, c in enumerate(coords):
        if not c:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{_format_rational(abs(c))}*{mono}"
        else:
            body = _format_rational(abs(c))
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# variables and monomials

# fixed variable order: u, v, gamma, x-parameters by (k, a), then the rest by name
_XPARAM_RE = re.compile(r"^x\((-?\d+),(-?\d+)\)$")


@lru_cache(maxsize=None)
def _var_rank(name: str) -> tuple:
    if name == "u":
        return (0,)
    if name == "v":
        return (1,)
    if name == "gamma":
        return (2,)
    m = _XPARAM_RE.match(name)
    if m:
        return (3, int(m.group(1)), int(m.group(2)))
    return (4, name)


def xparam_name(k: int, a: int) -> str:
    if a == 0:
        raise ValueError("x_0 is fixed to 1 and has no variable")
    return f"x({k},{a})"


Monomial = tuple  # tuple[(var name, doubled exponent)], sorted by _var_rank


@lru_cache(maxsize=1 << 16)
def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        a, ea = m1[i]
        b, eb = m2[j]
        if a == b:
            if ea + eb:
                out.append((a, ea + eb))
            i += 1
            j += 1
        elif _var_rank(a) < _var_rank(b):
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_key(m: Monomial):
    return tuple((_var_rank(a), e) for a, e in m)


def _format_exp(e2: int) -> str:
    if e2 % 2 == 0:
        return str(e2 // 2)
    return f"({e2}/2)"


def _format_mono(m: Monomial) -> str:
    parts = []
    for name, e2 in m:
        parts.append(name if e2 == 2 else f"{name}^{_format_exp(e2)}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """
    Immutable sparse Laurent polynomial.

    ``terms`` maps a monomial (sorted tuple of ``(name, doubled exponent)``)
    to a nonzero coefficient (int, Fraction or irrational CycNumber).
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None, *, _trusted: bool = False):
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for m, c in (terms or {}).items():
                c = _normalize_coeff(c)
                if c != 0:
                    clean[m] = c
            self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------------
    @classmethod
    def constant(cls, c) -> LaurentPoly:
        c = _normalize_coeff(c)
        return cls({(): c} if c != 0 else {}, _trusted=True)

    @classmethod
    def monomial(cls, exps: Mapping[str, Rational], coeff=1) -> LaurentPoly:
        mono = []
        for name, e in exps.items():
            e2 = Fraction(e) * 2
            if e2.denominator != 1:
                raise CoefficientError(f"exponent {e} is not in (1/2)Z")
            if e2:
                mono.append((name, int(e2)))
        mono.sort(key=lambda t: _var_rank(t[0]))
        return cls({tuple(mono): coeff})

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise CoefficientError(f"{self} is not a constant")
        return self.terms.get((), 0)

    def variables(self) -> set[str]:
        return {name for m in self.terms for name, _ in m}

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic -----------------------------------------------------------
    @staticmethod
    def _lift(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction, CycNumber)):
            return LaurentPoly.constant(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction, CycNumber)):
                return NotImplemented
            other = LaurentPoly.constant(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = _normalize_coeff(s + c)
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
        return LaurentPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, (LaurentPoly, int, Fraction, CycNumber)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentPoly:
        c = _normalize_coeff(c)
        if c == 0:
            return ZERO
        if c == 1:
            return self
        out = {}
        for m, a in self.terms.items():
            p = _normalize_coeff(a * c)
            if p != 0:
                out[m] = p
        return LaurentPoly(out, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction, CycNumber)):
                return self.scale(other)
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((m2, c2),) = b.items()
            out = {}
            for m1, c1 in a.items():
                p = c1 * c2 if c2 != 1 else c1
                out[_mono_mul(m1, m2)] = _normalize_coeff(p)
            return LaurentPoly(out, _trusted=True)
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                s = get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        res = {}
        for m, c in out.items():
            c = _normalize_coeff(c)
            if c != 0:
                res[m] = c
        return LaurentPoly(res, _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> LaurentPoly:
        """Inverse of a unit (a single monomial with nonzero coefficient)."""
        if len(self.terms) != 1:
            raise NonInvertibleSubstitutionError(f"{self} is not a unit")
        ((m, c),) = self.terms.items()
        inv_c = c.inverse() if isinstance(c, CycNumber) else 1 / Fraction(c)
        if isinstance(inv_c, Fraction) and inv_c.denominator == 1:
            inv_c = int(inv_c)
        return LaurentPoly({tuple((n, -e) for n, e in m): inv_c}, _trusted=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, CycNumber):
            return self.scale(other.inverse())
        if isinstance(other, LaurentPoly):
            return self * other.inverse() if len(other.terms) == 1 else self.divide_exact(other)
        return NotImplemented

    def divide_exact(self, other: LaurentPoly) -> LaurentPoly:
        """
        The quotient ``self / other`` when it is a Laurent polynomial.

        Long division with respect to the lexicographic order on exponent
        vectors: every quotient term lies between min(self)/min(other) and
        max(self)/max(other), so leaving that window proves non-divisibility.
        """
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        names = sorted(self.variables() | other.variables(), key=_var_rank)

        def vec(m):
            d = dict(m)
            return tuple(d.get(n, 0) for n in names)

        def lead(p):
            m = max(p.terms, key=vec)
            return LaurentPoly({m: p.terms[m]}, _trusted=True), vec(m)

        def sub(a, b):
            return tuple(x - y for x, y in zip(a, b))

        lead_other, top_other = lead(other)
        inv_lead = lead_other.inverse()
        floor = sub(vec(min(self.terms, key=vec)), vec(min(other.terms, key=vec)))
        quotient, rest = ZERO, self
        while not rest.is_zero():
            lead_rest, top_rest = lead(rest)
            if sub(top_rest, top_other) < floor:
                raise NonInvertibleSubstitutionError(f"{other} does not divide {self}")
            step = lead_rest * inv_lead
            quotient = quotient + step
            rest = rest - step * other
        return quotient

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def half_power(self, e2: int) -> LaurentPoly:
        """self^(e2/2); odd e2 requires a monomial with coefficient 1 and even exponents."""
        if e2 % 2 == 0:
            return self ** (e2 // 2)
        if len(self.terms) != 1:
            raise NonInvertibleSubstitutionError(f"no square root of {self}")
        ((m, c),) = self.terms.items()
        if c != 1 or any(e % 2 for _, e in m):
            raise NonInvertibleSubstitutionError(f"no canonical square root of {self}")
        root = LaurentPoly({tuple((n, e // 2) for n, e in m): 1}, _trusted=True)
        return root ** e2

    # -- comparison --------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.terms == LaurentPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- substitution -------------------------------------------------------------
    def substitute(self, mapping: Mapping[str, object]) -> LaurentPoly:
        """Simultaneous substitution of variables by polynomials."""
        if not mapping:
            return self
        images = {k: self._lift(val) for k, val in mapping.items()}
        cache: dict = {}
        out = ZERO
        for m, c in self.terms.items():
            kept = []
            factor = ONE
            for name, e2 in m:
                if name in images:
                    key = (name, e2)
                    pw = cache.get(key)
                    if pw is None:
                        pw = images[name].half_power(e2)
                        cache[key] = pw
                    factor = factor * pw
                else:
                    kept.append((name, e2))
            out = out + factor * LaurentPoly({tuple(kept): c}, _trusted=True)
        return out

    # -- printing -------------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = _format_mono(m)
            if isinstance(c, CycNumber):
                body = f"({c})" + (f"*{mono}" if mono else "")
                sign = "+"
            else:
                sign = "+" if c > 0 else "-"
                a = abs(c)
                if mono:
                    body = mono if a == 1 else f"{_format_rational(a)}*{mono}"
                else:
                    body = _format_rational(a)
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly({}, _trusted=True)
ONE = LaurentPoly({(): 1}, _trusted=True)


def var(name: str, exp: Rational = 1) -> LaurentPoly:
    if _XPARAM_RE.match(name) and int(_XPARAM_RE.match(name).group(2)) == 0:
        raise ValueError("x(k,0) is fixed to 1 and is not a variable")
    return LaurentPoly.monomial({name: exp})


def xparam(k: int, a: int) -> LaurentPoly:
    """The symbolic trace parameter x_a^(k); x_0 is 1."""
    if a == 0:
        return ONE
    return var(xparam_name(k, a))


U = var("u")
V = var("v")
GAMMA = var("gamma")


def poly(x) -> LaurentPoly:
    """Coerce a scalar or polynomial to LaurentPoly."""
    return LaurentPoly._lift(x)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(x\(\s*-?\d+\s*,\s*-?\d+\s*\))|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("var", re.sub(r"\s+", "", m.group(2))))
        elif m.group(3):
            out.append(("var", m.group(3)))
        elif m.group(4) and not m.group(4).isspace():
            out.append(("op", m.group(4)))
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text: str, d: int | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.d = d
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise CoefficientError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LaurentPoly:
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise CoefficientError("division only by nonzero constants")
                acc = acc / rhs.constant_value()
        return acc

    def unary(self) -> LaurentPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def exponent(self) -> Fraction:
        if self.peek() == ("op", "("):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            num = self.take("num")[1]
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take("num")[1]
            self.take("op", ")")
            e = Fraction(num, den)
            return -e if neg else e
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        e = Fraction(self.take("num")[1])
        return -e if neg else e

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            e2 = e * 2
            if e2.denominator != 1:
                raise CoefficientError(f"exponent {e} not in (1/2)Z")
            return base.half_power(int(e2))
        return base

    def atom(self) -> LaurentPoly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return LaurentPoly.constant(val)
        if kind == "var":
            self.take()
            if val == "z":
                if self.d is None:
                    raise CoefficientError("'z' (root of unity) needs a cyclotomic order d")
                return LaurentPoly.constant(root_of_unity(self.d, 1))
            return var(val)
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        raise CoefficientError(f"unexpected {val!r} in {self.text!r}")


def parse_poly(text: str, d: int | None = None) -> LaurentPoly:
    """
    Parse the canonical text form (and ordinary arithmetic over it).

    ``z`` denotes the fixed primitive d-th root of unity and requires ``d``.
    """
    p = _Parser(text, d)
    out = p.expr()
    if p.peek()[0] != "end":
        raise CoefficientError(f"trailing input in {text!r}")
    return out
