"""
Normal-form arithmetic in the affine Yokonuma-Hecke algebra.

Elements are sparse combinations of the basis ``t^a X^lam g_w`` with
``a`` in (Z/dZ)^n, ``lam`` in Z^n and ``w`` in S_n (one-line, 1-based).
The affine Hecke algebra is the instance ``d = 1``.

A product is computed by pushing the right factor's letters through the left
factor's ``g_w``:

* ``g_w t_j = t_{w(j)} g_w``;
* ``g_w g_i = g_{w s_i}`` when the length goes up, otherwise
  ``u^2 g_{w s_i} + v e_{w(i), w(i+1)} g_w``;
* one ``X_j^{+-1}`` at a time, through a reduced word of ``w``, with

  - ``g_i X_i      = X_{i+1} g_i - v e_i X_{i+1}``
  - ``g_i X_{i+1}  = X_i g_i + v e_i X_{i+1}``
  - ``g_i X_i^-1   = X_{i+1}^-1 g_i + v e_i X_i^-1``
  - ``g_i X_{i+1}^-1 = X_i^-1 g_i - v e_i X_i^-1``
  - ``g_i X_j = X_j g_i`` otherwise.

These four rules follow from ``X_{i+1} = u^-2 g_i X_i g_i`` and the quadratic
relation; the test-suite re-derives them through the engine.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping

from .coeffring import ONE, U, V, ZERO, LaurentPoly, poly, root_of_unity
from .combinatorics import (
    Character, Perm, act, compose, identity, inverse, length, perm_reduced_word, times_s,
)

__all__ = ["YokonumaHecke", "YElement", "ChiElement", "affine_hecke"]

Key = tuple  # (a, lam, w)


def _add_into(acc: dict, key, c: LaurentPoly) -> None:
    old = acc.get(key)
    if old is None:
        if c:
            acc[key] = c
    else:
        s = old + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def _clean(terms: dict) -> dict:
    return {k: c for k, c in terms.items() if c}


class YokonumaHecke:
    """
    The algebra Y^_{d,n} over Q(zeta_d)[u^+-1, v^+-1, gamma^+-1, ...].

    Instances are interned per ``(d, n)`` so that caches are shared.
    """

    _instances: dict[tuple[int, int], "YokonumaHecke"] = {}

    def __new__(cls, d: int, n: int):
        if d < 1 or n < 1:
            raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
        key = (d, n)
        inst = cls._instances.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst.d = d
            inst.n = n
            inst._zero_a = (0,) * n
            inst._zero_lam = (0,) * n
            inst._id = identity(n)
            inst._commute: dict = {}
            inst._gmul: dict = {}
            inst._xtilde: dict = {}
            inst._u2 = U * U
            inst._inv_d = Fraction(1, d)
            cls._instances[key] = inst
        return inst

    def __reduce__(self):
        return (YokonumaHecke, (self.d, self.n))

    def __repr__(self):
        return f"YokonumaHecke(d={self.d}, n={self.n})"

    # ------------------------------------------------------------------
    # constructors

    def element(self, terms: Mapping[Key, object]) -> "YElement":
        return YElement(self, {k: poly(c) for k, c in terms.items()})

    def basis(self, a=None, lam=None, w=None, coeff=1) -> "YElement":
        a = tuple(x % self.d for x in a) if a is not None else self._zero_a
        lam = tuple(lam) if lam is not None else self._zero_lam
        w = tuple(w) if w is not None else self._id
        if len(a) != self.n or len(lam) != self.n or sorted(w) != list(self._id):
            raise ValueError("basis index has the wrong size")
        return YElement(self, {(a, lam, w): poly(coeff)})

    def zero(self) -> "YElement":
        return YElement(self, {})

    def one(self) -> "YElement":
        return self.basis()

    def scalar(self, c) -> "YElement":
        return self.basis(coeff=c)

    def _check(self, i: int, hi: int, name: str) -> None:
        if not 1 <= i <= hi:
            raise IndexError(f"{name}_{i} out of range for n={self.n}")

    def g(self, i: int) -> "YElement":
        self._check(i, self.n - 1, "g")
        return self.basis(w=times_s(self._id, i))

    def g_inv(self, i: int) -> "YElement":
        """g_i^-1 = u^-2 g_i - u^-2 v e_i."""
        self._check(i, self.n - 1, "g")
        u_2 = U ** -2
        return self.g(i) * u_2 - self.e(i) * (u_2 * V)

    def t(self, j: int, k: int = 1) -> "YElement":
        self._check(j, self.n, "t")
        a = [0] * self.n
        a[j - 1] = k
        return self.basis(a=a)

    def X(self, j: int, k: int = 1) -> "YElement":
        """The basis element X_j^k."""
        self._check(j, self.n, "X")
        lam = [0] * self.n
        lam[j - 1] = k
        return self.basis(lam=lam)

    def e_pair(self, j: int, k: int) -> "YElement":
        """e_{j,k} = (1/d) sum_s t_j^s t_k^-s."""
        self._check(j, self.n, "t")
        self._check(k, self.n, "t")
        return YElement(self, self._lmul_e({(self._zero_a, self._zero_lam, self._id): ONE}, j, k))

    def e(self, i: int) -> "YElement":
        self._check(i, self.n - 1, "e")
        return self.e_pair(i, i + 1)

    def E(self, chi: Character) -> "YElement":
        """The primitive idempotent E_chi = prod_j (1/d) sum_s chi(t_j)^-s t_j^s."""
        if len(chi) != self.n:
            raise ValueError("character has the wrong length")
        return ChiElement(self, {(tuple(chi), self._zero_lam, self._id): ONE}).to_y()

    def xtilde(self, i: int) -> "YElement":
        """X~_1 = X_1, X~_{i+1} = g_i^-1 X~_i g_i."""
        self._check(i, self.n, "X~")
        got = self._xtilde.get(i)
        if got is None:
            got = self.X(1) if i == 1 else self.g_inv(i - 1) * self.xtilde(i - 1) * self.g(i - 1)
            self._xtilde[i] = got
        return got

    def xtilde_power(self, i: int, k: int) -> "YElement":
        """X~_i^k for any integer k, via X~_{i+1}^k = g_i^-1 X~_i^k g_i."""
        self._check(i, self.n, "X~")
        key = (i, k)
        got = self._xtilde.get(key)
        if got is None:
            if i == 1:
                got = self.X(1, k)
            else:
                got = self.g_inv(i - 1) * self.xtilde_power(i - 1, k) * self.g(i - 1)
            self._xtilde[key] = got
        return got

    def from_generator(self, name: str, index: int = 1) -> "YElement":
        """Generator by name: 'g', 'g_inv', 't', 'X', 'X_inv'."""
        table = {
            "g": lambda: self.g(index),
            "g_inv": lambda: self.g_inv(index),
            "t": lambda: self.t(index),
            "X": lambda: self.X(index) if index == 1 else self._check_x1(index),
            "X_inv": lambda: self.X(1, -1) if index == 1 else self._check_x1(index),
        }
        if name not in table:
            raise ValueError(f"unknown generator {name!r}")
        return table[name]()

    def _check_x1(self, index):
        raise IndexError("the presentation generators are X_1^{+-1} only")

    # ------------------------------------------------------------------
    # term-level primitives (dicts key -> LaurentPoly)

    def _lmul_e(self, terms: Mapping, j: int, k: int) -> dict:
        """Left multiplication by e_{j,k}."""
        d = self.d
        if d == 1 or j == k:
            return dict(terms)
        out: dict = {}
        for (a, lam, w), c in terms.items():
            c = c.scale(self._inv_d)
            for s in range(d):
                b = list(a)
                b[j - 1] = (b[j - 1] + s) % d
                b[k - 1] = (b[k - 1] - s) % d
                _add_into(out, (tuple(b), lam, w), c)
        return out

    def _rmul_g(self, terms: Mapping, i: int) -> dict:
        out: dict = {}
        u2 = self._u2
        for (a, lam, w), c in terms.items():
            ws = times_s(w, i)
            if w[i - 1] < w[i]:
                _add_into(out, (a, lam, ws), c)
            else:
                _add_into(out, (a, lam, ws), c * u2)
                vc = c * V
                for key, c2 in self._lmul_e({(a, lam, w): vc}, w[i - 1], w[i]).items():
                    _add_into(out, key, c2)
        return out

    def _rmul_t(self, terms: Mapping, b: tuple) -> dict:
        if not any(b):
            return dict(terms)
        d = self.d
        out: dict = {}
        for (a, lam, w), c in terms.items():
            a2 = list(a)
            for j, bj in enumerate(b):
                if bj:
                    a2[w[j] - 1] = (a2[w[j] - 1] + bj) % d
            _add_into(out, (tuple(a2), lam, w), c)
        return out

    def _commute_unit(self, w: Perm, j: int, s: int) -> dict:
        """g_w X_j^s in normal form (s = +-1)."""
        key = (w, j, s)
        got = self._commute.get(key)
        if got is not None:
            return got
        n = self.n
        if w == self._id:
            lam = [0] * n
            lam[j - 1] = s
            res = {(self._zero_a, tuple(lam), w): ONE}
        else:
            # w = w' s_i with i a right descent
            i = next(i for i in range(1, n) if w[i - 1] > w[i])
            wp = times_s(w, i)
            if j != i and j != i + 1:
                res = self._rmul_g(self._commute_unit(wp, j, s), i)
            else:
                if s == 1:
                    # R1 / R2
                    passed = i + 1 if j == i else i
                    extra_j, sign = i + 1, (-1 if j == i else 1)
                else:
                    # R3 / R4
                    passed = i + 1 if j == i else i
                    extra_j, sign = i, (1 if j == i else -1)
                res = self._rmul_g(self._commute_unit(wp, passed, s), i)
                tail = self._lmul_e(self._commute_unit(wp, extra_j, s), wp[i - 1], wp[i])
                coef = V if sign == 1 else -V
                for k2, c2 in tail.items():
                    _add_into(res, k2, c2 * coef)
        self._commute[key] = res
        return res

    def _commute_vec(self, w: Perm, mu: tuple) -> dict:
        """g_w X^mu in normal form."""
        key = (w, mu)
        got = self._commute.get(key)
        if got is not None:
            return got
        if not any(mu):
            res = {(self._zero_a, self._zero_lam, w): ONE}
        else:
            j = max(k for k in range(self.n) if mu[k])
            s = 1 if mu[j] > 0 else -1
            rest = list(mu)
            rest[j] -= s
            prev = self._commute_vec(w, tuple(rest))
            res = {}
            for (a, lam, v), c in prev.items():
                for (b, lam2, v2), c2 in self._commute_unit(v, j + 1, s).items():
                    a3 = tuple((x + y) % self.d for x, y in zip(a, b)) if self.d > 1 else a
                    lam3 = tuple(x + y for x, y in zip(lam, lam2))
                    _add_into(res, (a3, lam3, v2), c * c2)
        self._commute[key] = res
        return res

    def _gg(self, w: Perm, v: Perm) -> dict:
        """g_w g_v in normal form."""
        key = (w, v)
        got = self._gmul.get(key)
        if got is not None:
            return got
        terms = {(self._zero_a, self._zero_lam, w): ONE}
        for i in perm_reduced_word(v):
            terms = self._rmul_g(terms, i)
        self._gmul[key] = terms
        return terms

    def _gxg(self, w: Perm, mu: tuple, v: Perm) -> list:
        """g_w X^mu g_v as a list of (a, lam, w', coeff)."""
        key = ("gxg", w, mu, v)
        got = self._commute.get(key)
        if got is not None:
            return got
        acc: dict = {}
        d = self.d
        for (b1, mu1, w1), c1 in self._commute_vec(w, mu).items():
            for (b2, _, w2), c2 in self._gg(w1, v).items():
                b = tuple((x + y) % d for x, y in zip(b1, b2)) if d > 1 else b1
                _add_into(acc, (b, mu1, w2), c1 * c2)
        res = [(k[0], k[1], k[2], c) for k, c in acc.items()]
        self._commute[key] = res
        return res

    def _mul_terms(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        d = self.d
        for (a, lam, w), cx in x.items():
            for (b, mu, v), cy in y.items():
                cxy = cx * cy
                # t^a X^lam g_w t^b = t^{a + w(b)} X^lam g_w
                if d > 1 and any(b):
                    a0 = list(a)
                    for j, bj in enumerate(b):
                        if bj:
                            a0[w[j] - 1] = (a0[w[j] - 1] + bj) % d
                else:
                    a0 = a
                for b2, mu2, w2, c2 in self._gxg(w, mu, v):
                    if d > 1:
                        a2 = tuple((p + q) % d for p, q in zip(a0, b2))
                    else:
                        a2 = a
                    lam2 = tuple(p + q for p, q in zip(lam, mu2)) if any(mu2) else lam
                    _add_into(out, (a2, lam2, w2), cxy * c2)
        return out


def affine_hecke(n: int) -> YokonumaHecke:
    """H^_n = Y^_{1,n}."""
    return YokonumaHecke(1, n)


class YElement:
    """An element of Y^_{d,n} in the basis t^a X^lam g_w."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: YokonumaHecke, terms: dict):
        self.alg = alg
        self.terms = _clean(terms)

    def _same(self, other: "YElement") -> None:
        if self.alg is not other.alg:
            raise ValueError(f"context mismatch: {self.alg} vs {other.alg}")

    def __add__(self, other):
        if not isinstance(other, YElement):
            other = self.alg.scalar(other)
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return YElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return YElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, YElement):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, YElement):
            self._same(other)
            return YElement(self.alg, self.alg._mul_terms(self.terms, other.terms))
        c = poly(other)
        return YElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = poly(other)
        return YElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, YElement):
            return self.alg is other.alg and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.alg.d, self.alg.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def map_coefficients(self, f) -> "YElement":
        return YElement(self.alg, {k: f(c) for k, c in self.terms.items()})

    def substitute(self, mapping) -> "YElement":
        return self.map_coefficients(lambda c: c.substitute(mapping))

    def embed(self, steps: int = 1) -> "YElement":
        """Image under Y^_{d,n} -> Y^_{d,n+steps} (pad a, lam by 0, w by fixed points)."""
        alg = YokonumaHecke(self.alg.d, self.alg.n + steps)
        n = self.alg.n
        pad0 = (0,) * steps
        padw = tuple(range(n + 1, n + steps + 1))
        return YElement(alg, {(a + pad0, lam + pad0, w + padw): c
                              for (a, lam, w), c in self.terms.items()})

    def x_degree(self) -> int:
        """Largest sum |lam_i| over the terms."""
        return max((sum(abs(x) for x in lam) for (_, lam, _) in self.terms), default=0)

    def to_chi(self) -> "ChiElement":
        """Rewrite in the basis E_chi X^lam g_w: t^a = sum_chi chi(t^a) E_chi."""
        alg = self.alg
        d, n = alg.d, alg.n
        out: dict = {}
        chars = list(iproduct(range(1, d + 1), repeat=n))
        for (a, lam, w), c in self.terms.items():
            for chi in chars:
                k = sum((col - 1) * aj for col, aj in zip(chi, a))
                _add_into(out, (chi, lam, w), c.scale(root_of_unity(d, k)) if k % d else c)
        return ChiElement(alg, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, lam, w), c in self.sorted_terms():
            parts.append(f"({c})*t^{list(a)}*X^{list(lam)}*g{list(w)}")
        return " + ".join(parts)

    __repr__ = __str__


class ChiElement:
    """An element of Y^_{d,n} in the basis E_chi X^lam g_w."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: YokonumaHecke, terms: dict):
        self.alg = alg
        self.terms = _clean(terms)

    @classmethod
    def basis(cls, alg: YokonumaHecke, chi, lam=None, w=None, coeff=1) -> "ChiElement":
        lam = tuple(lam) if lam is not None else alg._zero_lam
        w = tuple(w) if w is not None else alg._id
        return cls(alg, {(tuple(chi), lam, w): poly(coeff)})

    def to_y(self) -> YElement:
        """E_chi = d^-n sum_a chi(t^a)^-1 t^a."""
        alg = self.alg
        d, n = alg.d, alg.n
        scale = Fraction(1, d ** n)
        out: dict = {}
        avecs = list(iproduct(range(d), repeat=n))
        for (chi, lam, w), c in self.terms.items():
            cs = c.scale(scale)
            for a in avecs:
                k = -sum((col - 1) * aj for col, aj in zip(chi, a))
                _add_into(out, (a, lam, w), cs.scale(root_of_unity(d, k)) if k % d else cs)
        return YElement(alg, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return ChiElement(self.alg, out)

    def __sub__(self, other):
        return self + ChiElement(other.alg, {k: -c for k, c in other.terms.items()})

    def __mul__(self, c):
        c = poly(c)
        return ChiElement(self.alg, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ChiElement):
            return self.alg is other.alg and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*E{list(chi)}*X^{list(lam)}*g{list(w)}"
                          for (chi, lam, w), c in sorted(self.terms.items()))

    __repr__ = __str__
