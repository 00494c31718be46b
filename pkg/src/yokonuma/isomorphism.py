"""
The isomorphism Psi: Y^_{d,n} -> (+)_mu Mat_{m_mu}(H^mu).

H^mu is realised inside the affine Hecke algebra H^_n as the parabolic
subalgebra spanned by X-bar^lam g-bar_w with w in the Young subgroup S^mu.
Rows and columns of the block mu are the characters chi with Comp(chi) = mu.

Matrices are sparse: ``blocks[mu][row][col]`` is a nonzero H^_n element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import ChiElement, YElement, YokonumaHecke, affine_hecke
from .coeffring import ONE, U, V, LaurentPoly, poly, root_of_unity
from .combinatorics import (
    Character, Composition, act, comp_of, compose, compositions, enumerate_characters,
    in_young_subgroup, inverse, length, pi_chi, transposition,
)

__all__ = [
    "HeckeTensor", "BlockMatrix", "ResourceError",
    "psi_generator_image", "psi_forward", "psi", "psi_inverse",
    "block_mul", "block_diag_trace", "verify_relations", "permute_exponents",
    "DEFAULT_RELATION_BUDGET",
]

DEFAULT_RELATION_BUDGET = 5000


class ResourceError(RuntimeError):
    """A configured computation budget would be exceeded."""


def permute_exponents(p, lam: tuple) -> tuple:
    """nu with nu[p(j)] = lam[j]: the exponent of X-bar after X_j -> X-bar_{p(j)}."""
    out = [0] * len(lam)
    for j, pj in enumerate(p):
        out[pj - 1] = lam[j]
    return tuple(out)


@dataclass(frozen=True)
class HeckeTensor:
    """An element of H^mu, stored as a parabolic element of H^_n."""

    mu: Composition
    elem: YElement

    def __post_init__(self):
        if self.elem.alg.d != 1 or self.elem.alg.n != sum(self.mu):
            raise ValueError("HeckeTensor entries live in the d=1 algebra on sum(mu) strands")
        for (_, _, w) in self.elem.terms:
            if not in_young_subgroup(w, self.mu):
                raise ValueError(f"permutation {w} is not in the Young subgroup of {self.mu}")

    def is_zero(self) -> bool:
        return self.elem.is_zero()


class BlockMatrix:
    """A sparse element of (+)_mu Mat_{m_mu}(H^mu)."""

    __slots__ = ("alg", "blocks")

    def __init__(self, alg: YokonumaHecke, blocks: Mapping):
        self.alg = alg
        clean = {}
        for mu, rows in blocks.items():
            rr = {}
            for r, cols in rows.items():
                cc = {c: e for c, e in cols.items() if not e.is_zero()}
                if cc:
                    rr[r] = cc
            if rr:
                clean[mu] = rr
        self.blocks = clean

    @property
    def hecke(self) -> YokonumaHecke:
        return affine_hecke(self.alg.n)

    @classmethod
    def identity(cls, alg: YokonumaHecke, mus: Iterable[Composition] | None = None) -> "BlockMatrix":
        H = affine_hecke(alg.n)
        one = H.one()
        mus = compositions(alg.d, alg.n) if mus is None else mus
        return cls(alg, {mu: {chi: {chi: one} for chi in enumerate_characters(alg.d, alg.n, mu)}
                         for mu in mus})

    @classmethod
    def scalar(cls, alg: YokonumaHecke, c, mus=None) -> "BlockMatrix":
        return cls.identity(alg, mus) * c

    def _same(self, other: "BlockMatrix") -> None:
        if self.alg is not other.alg:
            raise ValueError(f"context mismatch: {self.alg} vs {other.alg}")

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._same(other)
        out = {mu: {r: dict(cols) for r, cols in rows.items()} for mu, rows in self.blocks.items()}
        for mu, rows in other.blocks.items():
            bo = out.setdefault(mu, {})
            for r, cols in rows.items():
                ro = bo.setdefault(r, {})
                for c, e in cols.items():
                    ro[c] = ro[c] + e if c in ro else e
        return BlockMatrix(self.alg, out)

    def __neg__(self) -> "BlockMatrix":
        return self * -1

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        return self + (-other)

    def __mul__(self, other) -> "BlockMatrix":
        if isinstance(other, BlockMatrix):
            return block_mul(self, other)
        c = poly(other)
        return BlockMatrix(self.alg, {mu: {r: {k: e * c for k, e in cols.items()}
                                          for r, cols in rows.items()}
                                     for mu, rows in self.blocks.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.alg is other.alg and self.blocks == other.blocks

    def is_zero(self) -> bool:
        return not self.blocks

    def entry(self, mu, row, col) -> YElement:
        return self.blocks.get(mu, {}).get(row, {}).get(col, self.hecke.zero())

    def restrict(self, mus: Iterable[Composition]) -> "BlockMatrix":
        keep = set(mus)
        return BlockMatrix(self.alg, {mu: rows for mu, rows in self.blocks.items() if mu in keep})

    def max_row_support(self) -> int:
        return max((len(cols) for rows in self.blocks.values() for cols in rows.values()), default=0)

    def substitute(self, mapping) -> "BlockMatrix":
        return BlockMatrix(self.alg, {mu: {r: {c: e.substitute(mapping) for c, e in cols.items()}
                                          for r, cols in rows.items()}
                                     for mu, rows in self.blocks.items()})

    def __str__(self):
        lines = []
        for mu in sorted(self.blocks):
            for r in sorted(self.blocks[mu]):
                for c, e in sorted(self.blocks[mu][r].items()):
                    lines.append(f"{mu} {r}->{c}: {e}")
        return "\n".join(lines) if lines else "0"

    __repr__ = __str__


def block_mul(A: BlockMatrix, B: BlockMatrix) -> BlockMatrix:
    A._same(B)
    out = {}
    for mu, rows in A.blocks.items():
        bb = B.blocks.get(mu)
        if not bb:
            continue
        ob = {}
        for r, cols in rows.items():
            acc: dict = {}
            for k, e1 in cols.items():
                for c, e2 in bb.get(k, {}).items():
                    p = e1 * e2
                    acc[c] = acc[c] + p if c in acc else p
            ob[r] = acc
        out[mu] = ob
    return BlockMatrix(A.alg, out)


def block_diag_trace(M: BlockMatrix, mu: Composition) -> HeckeTensor:
    H = M.hecke
    total = H.zero()
    for r, cols in M.blocks.get(tuple(mu), {}).items():
        if r in cols:
            total = total + cols[r]
    return HeckeTensor(tuple(mu), total)


# ---------------------------------------------------------------------------
# the map on basis elements


def _forward_term(alg: YokonumaHecke, chi: Character, lam: tuple, v: tuple):
    """E_chi X^lam g_v -> (col, coefficient power of u, nu, sigma)."""
    d = alg.d
    w = inverse(v)
    col = act(w, chi)
    pc = pi_chi(chi, d)
    sigma = compose(compose(inverse(pc), v), pi_chi(col, d))
    nu = permute_exponents(inverse(pc), lam)
    return col, length(v) - length(sigma), nu, sigma


def psi_forward(x: ChiElement) -> BlockMatrix:
    alg = x.alg
    H = affine_hecke(alg.n)
    blocks: dict = {}
    for (chi, lam, v), c in x.terms.items():
        col, upow, nu, sigma = _forward_term(alg, chi, lam, v)
        mu = comp_of(chi, alg.d)
        if not in_young_subgroup(sigma, mu):
            raise AssertionError(f"inner permutation {sigma} escaped S^{mu}")
        coeff = c * U ** upow if upow else c
        e = H.basis(lam=nu, w=sigma, coeff=coeff)
        row = blocks.setdefault(mu, {}).setdefault(chi, {})
        row[col] = row[col] + e if col in row else e
    return BlockMatrix(alg, blocks)


def psi(x) -> BlockMatrix:
    """Psi on a YElement or ChiElement."""
    if isinstance(x, YElement):
        x = x.to_chi()
    return psi_forward(x)


def psi_inverse(M: BlockMatrix) -> ChiElement:
    alg = M.alg
    d = alg.d
    out: dict = {}
    for mu, rows in M.blocks.items():
        for chi, cols in rows.items():
            pc = pi_chi(chi, d)
            for col, entry in cols.items():
                pcol = pi_chi(col, d)
                for (_, nu, sigma), c in entry.terms.items():
                    if not in_young_subgroup(sigma, mu):
                        raise ValueError(f"entry permutation {sigma} is not in S^{mu}")
                    v = compose(compose(pc, sigma), inverse(pcol))
                    lam = permute_exponents(pc, nu)
                    upow = length(sigma) - length(v)
                    coeff = c * U ** upow if upow else c
                    key = (chi, lam, v)
                    out[key] = out[key] + coeff if key in out else coeff
    return ChiElement(alg, out)


# ---------------------------------------------------------------------------
# generator images


def _letter_rows(alg: YokonumaHecke, gen: str, index: int, mus=None):
    """Yield (mu, row, col, entry) for the monomial image of one generator."""
    d, n = alg.d, alg.n
    H = affine_hecke(n)
    mus = compositions(d, n) if mus is None else mus
    for mu in mus:
        for chi in enumerate_characters(d, n, mu):
            yield (mu, chi) + letter_action(alg, gen, index, chi)


def letter_action(alg: YokonumaHecke, gen: str, index: int, chi: Character,
                  gamma: LaurentPoly | None = None):
    """
    Row ``chi`` of the image of one generator: returns ``(col, entry)``.

    ``gen`` is one of 'g', 'g_inv', 't', 't_inv', 'X', 'X_inv', 'sigma',
    'sigma_inv' (the last two being the gamma-deformed crossing
    (gamma + (1 - gamma) e_i) g_i and its inverse).
    """
    d, n = alg.d, alg.n
    H = affine_hecke(n)
    if gen in ("t", "t_inv"):
        if not 1 <= index <= n:
            raise IndexError(f"t_{index} out of range for n={n}")
        k = chi[index - 1] - 1
        return chi, H.scalar(root_of_unity(d, k if gen == "t" else -k))
    if gen in ("X", "X_inv"):
        if not 1 <= index <= n:
            raise IndexError(f"X_{index} out of range for n={n}")
        p = inverse(pi_chi(chi, d))
        return chi, H.X(p[index - 1], 1 if gen == "X" else -1)
    if gen in ("g", "g_inv", "sigma", "sigma_inv"):
        i = index
        if not 1 <= i <= n - 1:
            raise IndexError(f"g_{i} out of range for n={n}")
        swapped = act(transposition(n, i), chi)
        if swapped != chi:
            c = U
            if gen == "sigma":
                c = (gamma if gamma is not None else ONE) * U
            elif gen == "g_inv":
                c = U ** -1
            elif gen == "sigma_inv":
                c = (gamma if gamma is not None else ONE) ** -1 * U ** -1
            return swapped, H.scalar(c)
        k = inverse(pi_chi(chi, d))[i - 1]
        return chi, (H.g(k) if gen in ("g", "sigma") else H.g_inv(k))
    raise ValueError(f"unknown generator {gen!r}")


def psi_generator_image(alg: YokonumaHecke, gen: str, index: int = 1, mus=None,
                        gamma: LaurentPoly | None = None) -> BlockMatrix:
    """Block image of a generator, built directly from the closed formulas."""
    d, n = alg.d, alg.n
    mus = compositions(d, n) if mus is None else mus
    blocks: dict = {}
    for mu in mus:
        for chi in enumerate_characters(d, n, mu):
            col, e = letter_action(alg, gen, index, chi, gamma)
            blocks.setdefault(mu, {})[chi] = {col: e}
    return BlockMatrix(alg, blocks)


def _relation_instances(alg: YokonumaHecke):
    """(name, lhs, rhs) block matrices for every defining relation."""
    d, n = alg.d, alg.n
    img = lambda gen, i=1: psi_generator_image(alg, gen, i)
    I = BlockMatrix.identity(alg)
    X1, X1i = img("X"), img("X_inv")
    g = {i: img("g", i) for i in range(1, n)}
    gi = {i: img("g_inv", i) for i in range(1, n)}
    t = {j: img("t", j) for j in range(1, n + 1)}
    yield "X1 X1^-1 = 1", X1 * X1i, I
    for i in range(1, n):
        yield f"g{i} g{i}^-1 = 1", g[i] * gi[i], I
        for j in range(i + 2, n):
            yield f"g{i} g{j} = g{j} g{i}", g[i] * g[j], g[j] * g[i]
        if i + 1 < n:
            yield (f"g{i} g{i+1} g{i} = g{i+1} g{i} g{i+1}",
                   g[i] * g[i + 1] * g[i], g[i + 1] * g[i] * g[i + 1])
        if i >= 2:
            yield f"X1 g{i} = g{i} X1", X1 * g[i], g[i] * X1
        e = psi(alg.e(i))
        yield f"g{i}^2 = u^2 + v e{i} g{i}", g[i] * g[i], I * (U * U) + e * g[i] * V
    if n >= 2:
        yield "X1 g1 X1 g1 = g1 X1 g1 X1", X1 * g[1] * X1 * g[1], g[1] * X1 * g[1] * X1
    for j in range(1, n + 1):
        power = I
        for _ in range(d):
            power = power * t[j]
        yield f"t{j}^{d} = 1", power, I
        yield f"X1 t{j} = t{j} X1", X1 * t[j], t[j] * X1
        for k in range(j + 1, n + 1):
            yield f"t{j} t{k} = t{k} t{j}", t[j] * t[k], t[k] * t[j]
        for i in range(1, n):
            target = j if j not in (i, i + 1) else (i + 1 if j == i else i)
            yield f"g{i} t{j} = t{target} g{i}", g[i] * t[j], t[target] * g[i]


def verify_relations(alg: YokonumaHecke, budget: int = DEFAULT_RELATION_BUDGET) -> dict[str, bool]:
    """Check every defining relation on the generator images; name -> passed."""
    from math import factorial
    size = alg.d ** alg.n * factorial(alg.n)
    if size > budget:
        raise ResourceError(f"d^n * n! = {size} exceeds the budget {budget}")
    return {name: lhs == rhs for name, lhs, rhs in _relation_instances(alg)}
