"""
Framed affine braids and the link invariants P^{d,S,tau}_L(u, v, gamma).

A braid word is written ``"B<n>: tokens"`` with tokens

    s<i>  s<i>^-1     crossing sigma_i and its inverse (1 <= i < n)
    x     x^-1        the loop sigma_0 around the axis
    t<j>  t<j>^<k>    framing generator t_j (power taken mod d)

Evaluation runs row by row in the block picture: every letter sends a row
``chi`` to a single column, so the image of a braid has one nonzero entry
per row and only rows that return to themselves contribute to the trace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .algebra import YokonumaHecke, affine_hecke
from .coeffring import GAMMA, ONE, U, V, ZERO, LaurentPoly, poly, root_of_unity, var
from .combinatorics import (
    Character, act, comp_of, compositions, cycle_type, enumerate_characters, identity,
    inverse, is_refinement, perm_from_word, pi_chi, socle_of, subset_to_socle, transposition,
)
from .isomorphism import BlockMatrix, HeckeTensor
from .traces import (
    DEFAULT_MAX_DEGREE, Z0, MarkovSpec, TraceParams, tensor_trace,
)

__all__ = [
    "Sigma", "SigmaZero", "Tee", "BraidWord", "BraidSyntaxError", "parse_braid",
    "delta_image", "invariant_basic", "invariant_htilde", "jl_specialize",
    "markov_move", "components", "CheckReport", "check_prop_d_reduction",
    "check_component_vanishing", "check_phi_rescaling", "phi_rescaling_coefficients",
    "random_braid", "LAM", "Q", "DQ",
]

LAM = var("lam")
Q = var("q")
DQ = var("dq")  # stands for q - q^-1, kept as an independent unit


class BraidSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Sigma:
    i: int
    sign: int = 1

    def __str__(self):
        return f"s{self.i}" if self.sign == 1 else f"s{self.i}^-1"


@dataclass(frozen=True)
class SigmaZero:
    sign: int = 1

    def __str__(self):
        return "x" if self.sign == 1 else "x^-1"


@dataclass(frozen=True)
class Tee:
    j: int
    power: int = 1

    def __str__(self):
        return f"t{self.j}" if self.power == 1 else f"t{self.j}^{self.power}"


Letter = Union[Sigma, SigmaZero, Tee]


def _inverse_letter(a: Letter) -> Letter:
    if isinstance(a, Sigma):
        return Sigma(a.i, -a.sign)
    if isinstance(a, SigmaZero):
        return SigmaZero(-a.sign)
    return Tee(a.j, -a.power)


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise BraidSyntaxError("a braid needs at least one strand")
        for a in self.letters:
            if isinstance(a, Sigma):
                if not 1 <= a.i < self.n or a.sign not in (1, -1):
                    raise BraidSyntaxError(f"{a} is out of range on {self.n} strands")
            elif isinstance(a, SigmaZero):
                if a.sign not in (1, -1):
                    raise BraidSyntaxError(f"bad loop sign {a.sign}")
            elif isinstance(a, Tee):
                if not 1 <= a.j <= self.n:
                    raise BraidSyntaxError(f"{a} is out of range on {self.n} strands")
            else:
                raise BraidSyntaxError(f"unknown letter {a!r}")

    def __str__(self):
        body = " ".join(str(a) for a in self.letters)
        return f"B{self.n}: {body}" if body else f"B{self.n}:"

    def normalized(self, d: int) -> "BraidWord":
        """Framing powers reduced to 0..d-1; zero powers dropped."""
        out = []
        for a in self.letters:
            if isinstance(a, Tee):
                p = a.power % d
                if p:
                    out.append(Tee(a.j, p))
            else:
                out.append(a)
        return BraidWord(self.n, tuple(out))

    @property
    def permutation(self) -> tuple:
        """p_beta: sigma_i -> s_i, sigma_0 -> 1, t_j -> 1."""
        return perm_from_word(self.n, [a.i for a in self.letters if isinstance(a, Sigma)])

    def is_framed(self) -> bool:
        return any(isinstance(a, Tee) for a in self.letters)

    def is_affine(self) -> bool:
        return any(isinstance(a, SigmaZero) for a in self.letters)

    def x_degree(self) -> int:
        return sum(1 for a in self.letters if isinstance(a, SigmaZero))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)


_TOKEN = re.compile(r"^(?:s(\d+)(\^-1|\^1)?|x(\^-1|\^1)?|t(\d+)(?:\^(-?\d+))?)$")


def parse_braid(text: str, d: int | None = None) -> BraidWord:
    """Parse ``"B<n>: tokens"``; with ``d`` given, framing powers are reduced mod d."""
    m = re.match(r"^\s*B(\d+)\s*:(.*)$", text)
    if not m:
        raise BraidSyntaxError(f"expected 'B<n>: ...', got {text!r}")
    n = int(m.group(1))
    letters = []
    for tok in m.group(2).split():
        t = _TOKEN.match(tok)
        if not t:
            raise BraidSyntaxError(f"bad token {tok!r}")
        if t.group(1) is not None:
            letters.append(Sigma(int(t.group(1)), -1 if t.group(2) == "^-1" else 1))
        elif tok.startswith("x"):
            letters.append(SigmaZero(-1 if t.group(3) == "^-1" else 1))
        else:
            p = int(t.group(5)) if t.group(5) is not None else 1
            letters.append(Tee(int(t.group(4)), p))
    word = BraidWord(n, tuple(letters))
    return word.normalized(d) if d is not None else word


def components(beta: BraidWord) -> int:
    """Number of components of the closure: cycles of p_beta."""
    return len(cycle_type(beta.permutation))


# ---------------------------------------------------------------------------
# evaluation


def _step(alg: YokonumaHecke, a: Letter, chi: Character, gamma: LaurentPoly):
    """(column, factor) for one letter on row chi; factor is a scalar or an H^_n element."""
    d, n = alg.d, alg.n
    H = affine_hecke(n)
    if isinstance(a, Tee):
        return chi, root_of_unity(d, (chi[a.j - 1] - 1) * a.power)
    if isinstance(a, SigmaZero):
        k = inverse(pi_chi(chi, d))[0]
        return chi, H.X(k, a.sign)
    i = a.i
    if chi[i - 1] != chi[i]:
        col = act(transposition(n, i), chi)
        return col, (gamma * U if a.sign == 1 else (gamma * U) ** -1)
    k = inverse(pi_chi(chi, d))[i - 1]
    return chi, (H.g(k) if a.sign == 1 else H.g_inv(k))


def _final_column(beta: BraidWord, chi: Character) -> Character:
    col = chi
    for a in beta.letters:
        if isinstance(a, Sigma) and col[a.i - 1] != col[a.i]:
            col = act(transposition(beta.n, a.i), col)
    return col


def _row_entry(alg: YokonumaHecke, beta: BraidWord, chi: Character, gamma: LaurentPoly):
    H = affine_hecke(alg.n)
    col = chi
    entry = H.one()
    for a in beta.letters:
        col, f = _step(alg, a, col, gamma)
        entry = entry * f
    return col, entry


def delta_image(beta: BraidWord, alg: YokonumaHecke, gamma=GAMMA, mus=None,
                diagonal_only: bool = False) -> BlockMatrix:
    """Psi(delta(beta)) as a block matrix, one row at a time."""
    if beta.n != alg.n:
        raise ValueError(f"braid has {beta.n} strands but the algebra has n={alg.n}")
    beta = beta.normalized(alg.d)
    gamma = poly(gamma)
    mus = compositions(alg.d, alg.n) if mus is None else mus
    blocks: dict = {}
    for mu in mus:
        rows = {}
        for chi in enumerate_characters(alg.d, alg.n, mu):
            if diagonal_only and _final_column(beta, chi) != chi:
                continue
            col, e = _row_entry(alg, beta, chi, gamma)
            rows[chi] = {col: e}
        blocks[mu] = rows
    return BlockMatrix(alg, blocks)


def _diagonal_traces(beta: BraidWord, d: int, socles: Iterable, gamma, prune: bool = True) -> dict:
    """mu -> HeckeTensor of the matrix trace of block mu, for mu with the given socles."""
    alg = YokonumaHecke(d, beta.n)
    beta = beta.normalized(d)
    socles = set(socles)
    ctype = cycle_type(beta.permutation)
    mus = [mu for mu in compositions(d, beta.n)
           if socle_of(mu) in socles and (not prune or is_refinement(ctype, mu))]
    gamma = poly(gamma)
    H = affine_hecke(beta.n)
    out = {}
    for mu in mus:
        total = H.zero()
        for chi in enumerate_characters(d, beta.n, mu):
            if _final_column(beta, chi) != chi:
                continue
            _, e = _row_entry(alg, beta, chi, gamma)
            total = total + e
        out[mu] = HeckeTensor(mu, total)
    return out


def invariant_basic(beta: BraidWord, spec: MarkovSpec, gamma=GAMMA,
                    max_degree: int = DEFAULT_MAX_DEGREE, prune: bool = True) -> LaurentPoly:
    """P^{d,S,tau}_L for the closure L of beta (gamma symbolic unless given)."""
    diag = _diagonal_traces(beta, spec.d, [spec.socle], gamma, prune)
    out = ZERO
    for mu in sorted(diag):
        out = out + tensor_trace(diag[mu], spec, max_degree)
    return out


def _subsets(D):
    D = sorted(D)
    from itertools import combinations
    for r in range(1, len(D) + 1):
        for c in combinations(D, r):
            yield frozenset(c)


def invariant_htilde(beta: BraidWord, d: int, D: Iterable[int],
                     xparams: Mapping[int, TraceParams] | None = None, gamma=GAMMA,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> LaurentPoly:
    """P~^{d,D,x}_L = (1/|D|) sum_{S subset D} z0^{|S|-1} P^{d,S,tau^x}_L."""
    D = frozenset(D)
    if not D:
        raise ValueError("D must be non-empty")
    xparams = dict(xparams or {})
    subsets = list(_subsets(D))
    diag = _diagonal_traces(beta, d, [subset_to_socle(S, d) for S in subsets], gamma)
    out = ZERO
    for S in subsets:
        spec = MarkovSpec.make(d, S, {k: xparams.get(k, TraceParams(k)) for k in S})
        val = ZERO
        for mu, t in sorted(diag.items()):
            if socle_of(mu) == spec.socle:
                val = val + tensor_trace(t, spec, max_degree)
        if val:
            out = out + Z0 ** (len(S) - 1) * val
    return out.scale(Fraction(1, len(D)))


def jl_specialize(P: LaurentPoly, target: str = "phi") -> LaurentPoly:
    """
    Pass to the (q, z) conventions: u = lam^(1/2), v = lam^(1/2) dq and
    gamma = 1 (``"phi"``) or q^-1 (``"gamma"``).

    ``lam`` stands for lambda_D = (|D| z - dq) / (|D| z) and ``dq`` for
    q - q^-1; both stay symbolic.  Since lambda_N((d/N) z) = lambda_d(z), the
    rescaling z -> (d/N) z acts as the identity in these variables.
    """
    if target not in ("phi", "gamma", "none"):
        raise ValueError(f"unknown target {target!r}")
    if target == "none":
        return P
    root = LAM.half_power(1)
    mapping = {"u": root, "v": root * DQ, "gamma": ONE if target == "phi" else Q ** -1}
    return P.substitute(mapping)


# ---------------------------------------------------------------------------
# Markov moves


def markov_move(beta: BraidWord, move: str, arg=None) -> BraidWord:
    """
    ``conjugate`` by a letter (an index i means sigma_i): a^-1 beta a;
    ``stabilize`` with sign +-1: beta sigma_n^{+-1} on n+1 strands;
    ``destabilize``: inverse of stabilize.
    """
    if move == "conjugate":
        a = Sigma(arg) if isinstance(arg, int) else arg
        if a is None:
            raise ValueError("conjugation needs a letter")
        return BraidWord(beta.n, (_inverse_letter(a),) + beta.letters + (a,))
    if move == "stabilize":
        sign = 1 if arg is None else arg
        if sign not in (1, -1):
            raise ValueError("stabilization sign must be +-1")
        return BraidWord(beta.n + 1, beta.letters + (Sigma(beta.n, sign),))
    if move == "destabilize":
        n = beta.n
        if n < 2 or not beta.letters:
            raise ValueError("nothing to destabilize")
        last = beta.letters[-1]
        if not (isinstance(last, Sigma) and last.i == n - 1):
            raise ValueError("last letter must be sigma_{n-1}^{+-1}")
        rest = beta.letters[:-1]
        for a in rest:
            if (isinstance(a, Sigma) and a.i == n - 1) or (isinstance(a, Tee) and a.j == n):
                raise ValueError(f"strand {n} is used elsewhere in the word")
        if n == 1:
            raise ValueError("nothing to destabilize")
        return BraidWord(n - 1, rest)
    raise ValueError(f"unknown move {move!r}")


def random_braid(rng, n: int, length: int, d: int = 1, framed: bool = False,
                 affine: bool = False) -> BraidWord:
    kinds = ["s"] * 4 + (["x"] if affine else []) + (["t"] if framed else [])
    letters = []
    for _ in range(length):
        k = rng.choice(kinds)
        if k == "s" and n >= 2:
            letters.append(Sigma(rng.randint(1, n - 1), rng.choice((1, -1))))
        elif k == "x":
            letters.append(SigmaZero(rng.choice((1, -1))))
        elif k == "t" and d > 1:
            letters.append(Tee(rng.randint(1, n), rng.randint(1, d - 1)))
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# structural checks


@dataclass
class CheckReport:
    name: str
    passed: bool
    lhs: LaurentPoly | None = None
    rhs: LaurentPoly | None = None
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        s = f"[{status}] {self.name}"
        if self.detail:
            s += f": {self.detail}"
        return s


def check_prop_d_reduction(beta: BraidWord, S: Iterable[int], d: int,
                           traces: Sequence[TraceParams] | None = None, gamma=GAMMA) -> CheckReport:
    """P^{d,S,tau} against P^{|S|,{1..|S|},tau} with the same traces in the same order."""
    if beta.is_framed():
        raise ValueError("the d-reduction applies to non-framed words only")
    S = sorted(set(S))
    dp = len(S)
    traces = list(traces) if traces is not None else [TraceParams(a) for a in range(1, dp + 1)]
    if len(traces) != dp:
        raise ValueError("need one trace per element of S")
    lhs = invariant_basic(beta, MarkovSpec.make(d, S, dict(zip(S, traces))), gamma)
    rhs = invariant_basic(beta, MarkovSpec.make(dp, range(1, dp + 1),
                                                dict(zip(range(1, dp + 1), traces))), gamma)
    return CheckReport(f"d-reduction {beta} (d={d}, S={S}) vs (d={dp})", lhs == rhs, lhs, rhs)


def check_component_vanishing(beta: BraidWord, spec: MarkovSpec, gamma=GAMMA) -> CheckReport:
    N = components(beta)
    val = invariant_basic(beta, spec, gamma)
    if len(spec.S) > N:
        return CheckReport(f"vanishing {beta} |S|={len(spec.S)} > N={N}", val.is_zero(), val, ZERO)
    return CheckReport(f"vanishing {beta} |S|={len(spec.S)} <= N={N}", True, val, None,
                       "not required to vanish")


def phi_rescaling_coefficients(d: int, N: int) -> dict[int, Fraction]:
    """
    Coefficients c_k with Phi_d(z) = sum_{k<=N} c_k Phi_k((d/k) z) for classical
    N-component links, derived from the subset expansion and the vanishing of
    P^{(k)} for k > N.  The leading coefficient is (N/d) * C(d, N).
    """
    c: dict[int, Fraction] = {}
    for k in range(N, 0, -1):
        target = Fraction(comb(d, k), d)
        known = sum(c[j] * Fraction(comb(j, k), j) for j in range(k + 1, N + 1))
        c[k] = (target - known) * k
    return c


def check_phi_rescaling(beta: BraidWord, d: int, N: int | None = None,
                        target: str = "phi") -> CheckReport:
    """
    Phi_{d,{1..d}}(q,z)(L) = (N/d) C(d,N) Phi_{N,{1..N}}(q,(d/N)z)(L) for d > N.

    The report also records whether the full expansion with every
    lower-order term (``phi_rescaling_coefficients``) holds.
    """
    if beta.is_framed() or beta.is_affine():
        raise ValueError("the rescaling identity concerns classical non-framed links")
    Nc = components(beta)
    if N is not None and N != Nc:
        raise ValueError(f"word closes to {Nc} components, not {N}")
    N = Nc
    if d <= N:
        raise ValueError(f"need d > N, got d={d}, N={N}")
    phi = {k: jl_specialize(invariant_htilde(beta, k, range(1, k + 1), gamma=GAMMA), target)
           for k in range(1, N + 1)}
    lhs = jl_specialize(invariant_htilde(beta, d, range(1, d + 1), gamma=GAMMA), target)
    rhs = phi[N].scale(Fraction(N * comb(d, N), d))
    coeffs = phi_rescaling_coefficients(d, N)
    full = ZERO
    for k, ck in coeffs.items():
        full = full + phi[k].scale(ck)
    detail = ("full expansion " + " + ".join(f"({ck})*Phi_{k}" for k, ck in sorted(coeffs.items()))
              + (" holds" if lhs == full else " fails"))
    return CheckReport(f"Phi rescaling {beta} d={d} N={N}", lhs == rhs, lhs, rhs, detail)
