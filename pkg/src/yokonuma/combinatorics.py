"""
Type A combinatorics: permutations, d-compositions, socles, characters of
(Z/dZ)^n and their minimal coset representatives.

Permutations are tuples in one-line notation with 1-based images, so
``w[i - 1] == w(i)``.  Composition is ``(v * w)(i) = v(w(i))``.

A character is a tuple of colours in ``1..d``; position ``j`` holds ``a`` when
the character sends ``t_j`` to ``xi_a``.  Characters are ordered
lexicographically, which fixes row/column order of every matrix block.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

Perm = tuple[int, ...]
Composition = tuple[int, ...]
Character = tuple[int, ...]

__all__ = [
    "Perm", "Composition", "Character",
    "identity", "compose", "inverse", "length", "transposition", "perm_reduced_word",
    "perm_from_word", "all_perms", "cycle_type", "in_young_subgroup",
    "compositions", "m_mu", "socle_of", "subset_to_socle", "socle_to_subset",
    "is_refinement", "comp_of", "chi0", "act", "pi_chi", "enumerate_characters",
    "block_offsets",
]


# ---------------------------------------------------------------------------
# permutations


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(v: Perm, w: Perm) -> Perm:
    """(v w)(i) = v(w(i))."""
    return tuple(v[i - 1] for i in w)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, wi in enumerate(w, 1):
        out[wi - 1] = i
    return tuple(out)


@lru_cache(maxsize=None)
def length(w: Perm) -> int:
    """Coxeter length, i.e. the number of inversions."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


@lru_cache(maxsize=None)
def transposition(n: int, i: int) -> Perm:
    """s_i = (i, i+1) in S_n."""
    if not 1 <= i < n:
        raise IndexError(f"s_{i} is not a generator of S_{n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def times_s(w: Perm, i: int) -> Perm:
    """w s_i: swap the entries in positions i, i+1."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def s_times(i: int, w: Perm) -> Perm:
    """s_i w: swap the values i, i+1."""
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)


@lru_cache(maxsize=None)
def perm_reduced_word(w: Perm) -> tuple[int, ...]:
    """A reduced word i_1..i_r with w = s_{i_1} ... s_{i_r}."""
    word = []
    w = tuple(w)
    while True:
        for i in range(1, len(w)):
            if w[i - 1] > w[i]:
                word.append(i)
                w = times_s(w, i)
                break
        else:
            break
    return tuple(reversed(word))


def perm_from_word(n: int, word: Iterable[int]) -> Perm:
    w = identity(n)
    for i in word:
        w = times_s(w, i)
    return w


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(permutations(range(1, n + 1)))


def cycle_type(w: Perm) -> tuple[int, ...]:
    """Cycle lengths of w, largest first."""
    seen = [False] * len(w)
    out = []
    for start in range(len(w)):
        if seen[start]:
            continue
        k, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = w[j] - 1
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def block_offsets(mu: Composition) -> tuple[int, ...]:
    out, acc = [], 0
    for m in mu:
        out.append(acc)
        acc += m
    return tuple(out)


def in_young_subgroup(w: Perm, mu: Composition) -> bool:
    """True iff w permutes each block {off+1, ..., off+mu_a} into itself."""
    pos = 0
    for m in mu:
        lo, hi = pos + 1, pos + m
        for i in range(lo, hi + 1):
            if not lo <= w[i - 1] <= hi:
                return False
        pos = hi
    return True


# ---------------------------------------------------------------------------
# compositions and socles


@lru_cache(maxsize=None)
def compositions(d: int, n: int) -> tuple[Composition, ...]:
    """All d-compositions of n, in lexicographic order."""
    if d == 1:
        return ((n,),)
    out = []
    for first in range(n + 1):
        for rest in compositions(d - 1, n - first):
            out.append((first,) + rest)
    return tuple(out)


def m_mu(mu: Composition) -> int:
    """Index of the Young subgroup: n! / (mu_1! ... mu_d!)."""
    out = factorial(sum(mu))
    for m in mu:
        out //= factorial(m)
    return out


def socle_of(mu: Composition) -> Composition:
    return tuple(1 if m >= 1 else 0 for m in mu)


def subset_to_socle(S: Iterable[int], d: int) -> Composition:
    S = set(S)
    if not S:
        raise ValueError("the subset S must be non-empty")
    if not S <= set(range(1, d + 1)):
        raise ValueError(f"S={sorted(S)} is not a subset of 1..{d}")
    return tuple(1 if a in S else 0 for a in range(1, d + 1))


def socle_to_subset(soc: Composition) -> frozenset[int]:
    if any(p not in (0, 1) for p in soc) or not any(soc):
        raise ValueError(f"{soc} is not a socle")
    return frozenset(a for a, p in enumerate(soc, 1) if p)


def is_refinement(lam: Sequence[int], mu: Composition) -> bool:
    """
    Whether the parts of ``lam`` can be grouped into ``len(mu)`` (possibly
    empty) groups whose sums are ``mu`` part-wise.
    """
    if sum(lam) != sum(mu):
        return False
    parts = sorted((p for p in lam if p), reverse=True)
    remaining = [m for m in mu if m]

    def place(k: int) -> bool:
        if k == len(parts):
            return all(r == 0 for r in remaining)
        tried = set()
        for a, r in enumerate(remaining):
            if r >= parts[k] and r not in tried:
                tried.add(r)
                remaining[a] -= parts[k]
                if place(k + 1):
                    remaining[a] += parts[k]
                    return True
                remaining[a] += parts[k]
        return False

    return place(0)


# ---------------------------------------------------------------------------
# characters


def comp_of(chi: Character, d: int) -> Composition:
    counts = [0] * d
    for a in chi:
        counts[a - 1] += 1
    return tuple(counts)


def chi0(mu: Composition) -> Character:
    """The base character: colour 1 on the first mu_1 positions, and so on."""
    out: list[int] = []
    for a, m in enumerate(mu, 1):
        out.extend([a] * m)
    return tuple(out)


def act(w: Perm, chi: Character) -> Character:
    """w(chi)(t_i) = chi(t_{w^{-1}(i)})."""
    out = [0] * len(chi)
    for j, wj in enumerate(w):
        out[wj - 1] = chi[j]
    return tuple(out)


@lru_cache(maxsize=None)
def pi_chi(chi: Character, d: int | None = None) -> Perm:
    """
    The minimal-length permutation with pi(chi0(Comp(chi))) = chi.

    pi^{-1}(j) = (number of positions with a smaller colour) + (rank of j among
    positions of its own colour).
    """
    d = d if d is not None else max(chi, default=1)
    mu = comp_of(chi, d)
    offs = block_offsets(mu)
    seen = [0] * d
    pinv = []
    for a in chi:
        seen[a - 1] += 1
        pinv.append(offs[a - 1] + seen[a - 1])
    return inverse(tuple(pinv))


@lru_cache(maxsize=None)
def enumerate_characters(d: int, n: int, mu: Composition | None = None) -> tuple[Character, ...]:
    """All characters (lexicographic), or those with Comp(chi) = mu."""
    chars = product(range(1, d + 1), repeat=n)
    if mu is None:
        return tuple(chars)
    mu = tuple(mu)
    return tuple(c for c in chars if comp_of(c, d) == mu)
