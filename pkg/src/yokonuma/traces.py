"""
Markov traces.

* ``ocneanu_trace``: the Markov trace on the finite Hecke algebras H_m,
  normalised by tau_1(1) = 1.
* ``AffineTrace``: the Markov trace tau^x on the affine Hecke algebras
  H^_m with tau_m(X~_m^a h) = x_a tau_m(h) for h in H^_{m-1}.
* ``tensor_trace`` / ``rho_basic``: the basic traces rho^{S,tau} on
  Y^_{d,n}, evaluated through Psi and the matrix trace.
* ``rho_tilde``: the combination sum_S z0^{|S|-1} rho^S / |D|.

Throughout, ``z0 = v^-1 (1 - u^2)`` is the value forced on tau_{m}(y) /
tau_{m-1}(y) by the two Markov conditions and g^-1 = u^-2 g - u^-2 v.

Affine-trace evaluation on a basis element X^lam g_w of H^_m.  Write
``j = w^-1(m)``.

* ``j = m``: the element is ``c X_m^k`` with ``c`` in H^_{m-1}.  If ``k = 0``
  this is ``z0 tau_{m-1}(c)``.  Otherwise expand ``X~_m^k = X_m^k + R``;
  every term of ``R`` moves ``m`` and has its ``X_m``-exponent in
  ``[0, k)`` (``k > 0``) or ``[k, 0)`` (``k < 0``), so
  ``tau(c X_m^k) = x_k z0 tau_{m-1}(c) - tau(c R)`` only refers to the
  next case.  (This triangularity is checked on every use.)
* ``j < m``: ``g_w = g_w' g_{m-1} B`` with ``B = g_{m-2}...g_j``.  Cycling
  ``B`` to the front leaves elements ``X^mu X_m^k g_v g_{m-1}`` with
  ``v`` in S_{m-1}; these are peeled one power of ``X_m`` at a time with
  ``X_m g_{m-1} = g_{m-1} X_{m-1} + v X_m`` (and its inverse version),
  again cycling the produced ``X_{m-1}^{+-1}`` to the front, until the
  Markov rule ``tau_m(h g_{m-1}) = tau_{m-1}(h)`` applies.  Peeling only
  revisits the first case with exponents strictly closer to 0 than the
  one it started from (or equal to it for ``k > 0``, where the first case
  then drops strictly below ``k``), so the recursion terminates.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .algebra import YElement, YokonumaHecke, affine_hecke
from .coeffring import ONE, U, V, ZERO, LaurentPoly, poly, root_of_unity, xparam
from .combinatorics import (
    Composition, block_offsets, identity, inverse, perm_reduced_word, perm_from_word,
    socle_of, subset_to_socle, times_s,
)
from .isomorphism import BlockMatrix, HeckeTensor, ResourceError, block_diag_trace, psi

__all__ = [
    "Z0", "TraceParams", "MarkovSpec", "ReductionError",
    "ocneanu_trace", "AffineTrace", "affine_trace", "evaluator_for",
    "tensor_trace", "rho_basic", "rho_tilde", "rho_from_tilde", "x_ab",
    "DEFAULT_MAX_DEGREE",
]

Z0 = V ** -1 * (ONE - U * U)
DEFAULT_MAX_DEGREE = 6


class ReductionError(RuntimeError):
    """The affine-trace reduction met a configuration it cannot make progress on."""


@dataclass(frozen=True)
class TraceParams:
    """
    Parameters ``x_a`` of an affine Markov trace.

    Unset values default to the symbol ``x(label, a)``; ``x_0`` is always 1.
    ``label`` only names the symbols, so two colours may share one trace.
    """

    label: int = 1
    values: tuple = ()

    @classmethod
    def of(cls, label: int = 1, values: Mapping[int, object] | None = None) -> "TraceParams":
        vals = tuple(sorted((int(a), poly(c)) for a, c in (values or {}).items() if a != 0))
        return cls(label, vals)

    def x(self, a: int) -> LaurentPoly:
        if a == 0:
            return ONE
        for b, c in self.values:
            if b == a:
                return c
        return xparam(self.label, a)


@dataclass(frozen=True)
class MarkovSpec:
    """The data (d, S, tau) of a basic Markov trace rho^{S,tau}."""

    d: int
    S: frozenset
    params: tuple = ()

    @classmethod
    def make(cls, d: int, S: Iterable[int], params: Mapping[int, TraceParams] | None = None) -> "MarkovSpec":
        S = frozenset(S)
        subset_to_socle(S, d)  # validates
        params = dict(params or {})
        if not set(params) <= S:
            raise ValueError(f"trace parameters given for colours outside S={sorted(S)}")
        full = tuple((k, params.get(k, TraceParams(k))) for k in sorted(S))
        return cls(d, S, full)

    def trace_for(self, colour: int) -> TraceParams:
        for k, p in self.params:
            if k == colour:
                return p
        raise KeyError(colour)

    @property
    def socle(self) -> Composition:
        return subset_to_socle(self.S, self.d)


# ---------------------------------------------------------------------------
# finite Hecke algebra: the Ocneanu trace


_ocneanu_cache: dict = {}


def _ocneanu_basis(w: tuple) -> LaurentPoly:
    m = len(w)
    if m <= 1:
        return ONE
    got = _ocneanu_cache.get(w)
    if got is not None:
        return got
    j = inverse(w)[m - 1]
    if j == m:
        res = Z0 * _ocneanu_basis(w[:-1])
    else:
        # g_w = g_w' g_{m-1} g_{m-2} ... g_j ; Markov: tau_m(h g_{m-1} h') = tau_{m-1}(h h')
        wp = w
        for i in range(j, m):
            wp = times_s(wp, i)
        H = affine_hecke(m - 1)
        tail = perm_from_word(m - 1, range(m - 2, j - 1, -1))
        prod = H.basis(w=wp[:-1]) * H.basis(w=tail)
        res = ZERO
        for (_, _, v), c in prod.terms.items():
            res = res + c * _ocneanu_basis(v)
    _ocneanu_cache[w] = res
    return res


def ocneanu_trace(h: YElement) -> LaurentPoly:
    """tau_m on an X-free element of H_m (m = h.alg.n)."""
    if h.alg.d != 1:
        raise ValueError("the Ocneanu trace is defined on the d=1 algebra")
    out = ZERO
    for (_, lam, w), c in h.terms.items():
        if any(lam):
            raise ValueError("element has X-exponents; use an affine trace")
        out = out + c * _ocneanu_basis(w)
    return out


# ---------------------------------------------------------------------------
# affine Hecke algebra: tau^x


class AffineTrace:
    """
    The Markov trace tau^x on {H^_m}.

    ``strategy="canonical"`` evaluates basis elements directly.
    ``strategy="random"`` first rewrites each basis element as a random
    cyclic rotation (legal by the trace property) and processes terms in a
    random order, using a private cache; it exists to test that the result
    does not depend on the reduction path.
    """

    def __init__(self, params: TraceParams = TraceParams(), max_degree: int = DEFAULT_MAX_DEGREE,
                 strategy: str = "canonical", seed: int | None = None):
        if strategy not in ("canonical", "random"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.params = params
        self.max_degree = max_degree
        self.strategy = strategy
        self._rng = random.Random(seed)
        self._cache: dict = {}
        self._active: set = set()
        self._lock = threading.RLock()

    # -- public -------------------------------------------------------------

    def __call__(self, h: YElement) -> LaurentPoly:
        return self.trace(h)

    def trace(self, h: YElement) -> LaurentPoly:
        if h.alg.d != 1:
            raise ValueError("affine traces act on the d=1 algebra")
        m = h.alg.n
        items = list(h.terms.items())
        for (_, lam, _), _c in items:
            deg = sum(abs(x) for x in lam)
            if deg > self.max_degree:
                raise ResourceError(f"total X-degree {deg} exceeds the bound {self.max_degree}")
        if self.strategy == "random":
            self._rng.shuffle(items)
        out = ZERO
        with self._lock:
            for (_, lam, w), c in items:
                if self.strategy == "random":
                    out = out + c * self._rotated(m, lam, w)
                else:
                    out = out + c * self.basis_value(lam, w)
        return out

    def basis_value(self, lam: tuple, w: tuple) -> LaurentPoly:
        """tau_m(X^lam g_w) with m = len(w)."""
        return self._value(len(w), tuple(lam), tuple(w))

    # -- internals ----------------------------------------------------------

    def _rotated(self, m: int, lam: tuple, w: tuple) -> LaurentPoly:
        H = affine_hecke(m)
        word = perm_reduced_word(w)
        cut = self._rng.randint(0, len(word))
        w1 = perm_from_word(m, word[:cut])
        w2 = perm_from_word(m, word[cut:])
        lam_a = tuple(self._rng.randint(min(0, x), max(0, x)) for x in lam)
        lam_b = tuple(x - y for x, y in zip(lam, lam_a))
        # X^lam g_w = X^lam_a X^lam_b g_w1 g_w2  ~  X^lam_b g_w1 g_w2 X^lam_a  ~  g_w2 X^lam_a X^lam_b g_w1
        if self._rng.random() < 0.5:
            elem = H.basis(w=w2) * H.basis(lam=lam) * H.basis(w=w1)
        else:
            elem = H.basis(lam=lam_b, w=w) * H.basis(lam=lam_a)
        items = list(elem.terms.items())
        self._rng.shuffle(items)
        out = ZERO
        for (_, l2, v), c in items:
            out = out + c * self._value(m, l2, v)
        return out

    def _value(self, m: int, lam: tuple, w: tuple) -> LaurentPoly:
        if m == 0:
            return ONE
        key = (lam, w)
        got = self._cache.get(key)
        if got is not None:
            return got
        if key in self._active:
            raise ReductionError(f"reduction cycle at X^{lam} g{w}")
        self._active.add(key)
        try:
            res = self._compute(m, lam, w)
        finally:
            self._active.discard(key)
        self._cache[key] = res
        return res

    def _compute(self, m: int, lam: tuple, w: tuple) -> LaurentPoly:
        j = inverse(w)[m - 1]
        k = lam[m - 1]
        if j == m:
            lower = ONE if m == 1 else Z0 * self._value(m - 1, lam[:-1], w[:-1])
            if k == 0:
                return lower
            res = self.params.x(k) * lower
            if m == 1:
                return res
            H = affine_hecke(m)
            rest = H.xtilde_power(m, k) - H.X(m, k)
            cprod = H.basis(lam=lam[:-1] + (0,), w=w) * rest
            for (_, l2, v), c in cprod.terms.items():
                ok = 0 <= l2[m - 1] < k if k > 0 else k <= l2[m - 1] < 0
                if v[m - 1] == m or not ok:
                    raise ReductionError(
                        f"X~_{m}^{k} expansion is not triangular at X^{l2} g{v}")
                res = res - c * self._value(m, l2, v)
            return res
        # j < m: cycle B = g_{m-2}...g_j to the front
        wp = w
        for i in range(j, m):
            wp = times_s(wp, i)
        H1 = affine_hecke(m - 1)
        B = perm_from_word(m - 1, range(m - 2, j - 1, -1))
        prod = H1.basis(w=B) * H1.basis(lam=lam[:-1], w=wp[:-1])
        res = ZERO
        for (_, mu, v), c in prod.terms.items():
            res = res + c * self._peel(m, mu, v, k)
        return res

    def _peel(self, m: int, mu: tuple, v: tuple, k: int) -> LaurentPoly:
        """tau_m(X^mu X_m^k g_v g_{m-1}) for mu in Z^{m-1}, v in S_{m-1}."""
        total = ZERO
        mu = list(mu)
        vm = v + (m,)
        while k != 0:
            if k > 0:
                # X_m g = g X_{m-1} + v X_m
                total = total + V * self._value(m, tuple(mu) + (k,), vm)
                mu[m - 2] += 1
                k -= 1
            else:
                # X_m^-1 g = g X_{m-1}^-1 - v X_{m-1}^-1
                mu[m - 2] -= 1
                k += 1
                total = total - V * self._value(m, tuple(mu) + (k,), vm)
        return total + self._value(m - 1, tuple(mu), v)


_evaluators: dict = {}
_evaluators_lock = threading.Lock()


def evaluator_for(params: TraceParams, max_degree: int = DEFAULT_MAX_DEGREE) -> AffineTrace:
    """Shared canonical evaluator per parameter set (caches are reused)."""
    key = (params, max_degree)
    with _evaluators_lock:
        ev = _evaluators.get(key)
        if ev is None:
            ev = AffineTrace(params, max_degree)
            _evaluators[key] = ev
        return ev


def affine_trace(h: YElement, params: TraceParams = TraceParams(),
                 max_degree: int = DEFAULT_MAX_DEGREE) -> LaurentPoly:
    return evaluator_for(params, max_degree).trace(h)


# ---------------------------------------------------------------------------
# Y^_{d,n}: basic traces


def tensor_trace(t: HeckeTensor, spec: MarkovSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> LaurentPoly:
    """(tau^1_{mu_1} (x) ... (x) tau^d_{mu_d}) on a parabolic element of H^mu."""
    mu = t.mu
    if socle_of(mu) != spec.socle:
        return ZERO
    offs = block_offsets(mu)
    evals = [evaluator_for(spec.trace_for(a + 1), max_degree) if m else None
             for a, m in enumerate(mu)]
    out = ZERO
    for (_, lam, w), c in t.elem.terms.items():
        deg = sum(abs(x) for x in lam)
        if deg > max_degree:
            raise ResourceError(f"total X-degree {deg} exceeds the bound {max_degree}")
        val = c
        for a, m in enumerate(mu):
            if not m:
                continue
            o = offs[a]
            sub_lam = lam[o:o + m]
            sub_w = tuple(x - o for x in w[o:o + m])
            val = val * evals[a].basis_value(sub_lam, sub_w)
            if not val:
                break
        out = out + val
    return out


def rho_basic(x, spec: MarkovSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> LaurentPoly:
    """rho^{S,tau}(x) for x a YElement or its image BlockMatrix."""
    M = x if isinstance(x, BlockMatrix) else psi(x)
    if M.alg.d != spec.d:
        raise ValueError(f"element has d={M.alg.d} but the trace has d={spec.d}")
    soc = spec.socle
    out = ZERO
    for mu in sorted(M.blocks):
        if socle_of(mu) == soc:
            out = out + tensor_trace(block_diag_trace(M, mu), spec, max_degree)
    return out


def _nonempty_subsets(D):
    D = sorted(D)
    for r in range(1, len(D) + 1):
        yield from (frozenset(c) for c in combinations(D, r))


def rho_tilde(x, d: int, D: Iterable[int], xparams: Mapping[int, TraceParams] | None = None,
              max_degree: int = DEFAULT_MAX_DEGREE) -> LaurentPoly:
    """(1/|D|) sum_{S subset D} z0^{|S|-1} rho^{S,tau}(x), tau = tau^{x^(k)} in position k."""
    D = frozenset(D)
    if not D:
        raise ValueError("D must be non-empty")
    xparams = dict(xparams or {})
    M = x if isinstance(x, BlockMatrix) else psi(x)
    out = ZERO
    for S in _nonempty_subsets(D):
        spec = MarkovSpec.make(d, S, {k: xparams.get(k, TraceParams(k)) for k in S})
        val = rho_basic(M, spec, max_degree)
        if val:
            out = out + Z0 ** (len(S) - 1) * val
    return out.scale(Fraction(1, len(D)))


def rho_from_tilde(tilde_values: Mapping[frozenset, LaurentPoly], S: Iterable[int]) -> LaurentPoly:
    """Invert the change of basis: rho^S = z0^{1-|S|} sum_{D subset S} (-1)^{|S|-|D|} |D| rho~^D."""
    S = frozenset(S)
    out = ZERO
    for D in _nonempty_subsets(S):
        sign = -1 if (len(S) - len(D)) % 2 else 1
        out = out + tilde_values[D].scale(sign * len(D))
    return out.divide_exact(Z0 ** (len(S) - 1)) if len(S) > 1 else out


def x_ab(a: int, b: int, d: int, D: Iterable[int],
         xparams: Mapping[int, TraceParams] | None = None) -> LaurentPoly:
    """x_{a,b} = (1/|D|) sum_{k in D} x_a^(k) xi_k^b, with xi_k = zeta_d^(k-1)."""
    D = sorted(set(D))
    xparams = dict(xparams or {})
    out = ZERO
    for k in D:
        p = xparams.get(k, TraceParams(k))
        out = out + p.x(a).scale(root_of_unity(d, (k - 1) * b))
    return out.scale(Fraction(1, len(D)))
