"""
The ten acceptance criteria, each run at its stated size and time limit.

Every test records its outcome in ``conftest.ACCEPTANCE_RESULTS``; the
terminal summary then prints one PASS/FAIL line per criterion.
"""

import random
import time
from contextlib import contextmanager
from itertools import combinations

import pytest

from conftest import ACCEPTANCE_RESULTS
from yokonuma.algebra import ChiElement, YokonumaHecke, affine_hecke
from yokonuma.coeffring import GAMMA, ONE, U, V, ZERO, parse_poly
from yokonuma.combinatorics import all_perms, enumerate_characters
from yokonuma.invariants import (
    BraidWord, Sigma, SigmaZero, Tee, check_phi_rescaling, check_prop_d_reduction, components,
    delta_image, invariant_basic, markov_move, parse_braid, random_braid,
)
from yokonuma.isomorphism import psi, psi_forward, psi_inverse, verify_relations
from yokonuma.traces import (
    AffineTrace, MarkovSpec, affine_trace, ocneanu_trace, rho_basic, rho_tilde, x_ab,
)


@contextmanager
def criterion(k, limit, note=""):
    """Time the block, record PASS/FAIL and enforce the time limit."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        detail = f"{elapsed:.2f}s (limit {limit:g}s)"
        if note:
            detail += f"  {note}"
        if ok and not within:
            detail += "  TIME LIMIT EXCEEDED"
        ACCEPTANCE_RESULTS[k] = (ok and within, detail)
    assert within, f"criterion {k} took {elapsed:.1f}s, limit {limit}s"


def subsets(d):
    return [set(c) for r in range(1, d + 1) for c in combinations(range(1, d + 1), r)]


def random_lam(rng, n):
    lam = [0] * n
    if rng.random() < 0.6:
        lam[rng.randrange(n)] = rng.choice((-1, 1))
    return tuple(lam)


def random_monomial(rng, A):
    a = [rng.randrange(A.d) for _ in range(A.n)]
    return A.basis(a, random_lam(rng, A.n), rng.choice(all_perms(A.n)))


def test_criterion_01_unknot_normalization():
    with criterion(1, 1.0):
        unknot = parse_braid("B1:")
        for d in range(1, 5):
            for S in subsets(d):
                expected = ONE if len(S) == 1 else ZERO
                assert invariant_basic(unknot, MarkovSpec.make(d, S)) == expected, (d, S)


def test_criterion_02_classical_baseline():
    # Derivation at d=1: g^2 = u^2 + v g, hence g^3 = u^2 v + (u^2 + v^2) g.
    # With tau_2(1) = v^-1 (1 - u^2) and tau_2(g) = 1:
    #   trefoil: u^2 v * v^-1 (1 - u^2) + u^2 + v^2 = 2u^2 - u^4 + v^2
    #   Hopf:    u^2 * v^-1 (1 - u^2) + v
    with criterion(2, 1.0):
        spec = MarkovSpec.make(1, {1})
        assert invariant_basic(parse_braid("B2: s1 s1 s1"), spec) == parse_poly("2*u^2 - u^4 + v^2")
        hopf = U * U * V ** -1 * (ONE - U * U) + V
        assert invariant_basic(parse_braid("B2: s1 s1"), spec) == hopf


def test_criterion_03_skein():
    with criterion(3, 120.0):
        rng = random.Random(3)
        spec = MarkovSpec.make(1, {1})
        for _ in range(100):
            n = rng.randint(2, 4)
            beta = random_braid(rng, n, rng.randint(0, 8))
            i = rng.randint(1, n - 1)
            plus = invariant_basic(BraidWord(n, beta.letters + (Sigma(i),)), spec)
            minus = invariant_basic(BraidWord(n, beta.letters + (Sigma(i, -1),)), spec)
            assert plus - U * U * minus - V * invariant_basic(beta, spec) == ZERO, (beta, i)


def test_criterion_04_isomorphism():
    with criterion(4, 300.0):
        contexts = [(2, 2), (2, 3), (3, 2), (3, 3)]
        for d, n in contexts:
            report = verify_relations(YokonumaHecke(d, n))
            assert all(report.values()), (d, n, [k for k, ok in report.items() if not ok])
        for d, n in [(2, 2), (2, 3)]:
            A = YokonumaHecke(d, n)
            lams = [(0,) * n] + [tuple(s if k == j else 0 for k in range(n))
                                 for j in range(n) for s in (1, -1)]
            for chi in enumerate_characters(d, n):
                for lam in lams:
                    for w in all_perms(n):
                        x = ChiElement.basis(A, chi, lam, w)
                        assert psi_inverse(psi_forward(x)) == x
        rng = random.Random(4)
        for d, n in contexts:
            A = YokonumaHecke(d, n)
            chars = enumerate_characters(d, n)
            for _ in range(100):
                x, y = (ChiElement.basis(A, rng.choice(chars), random_lam(rng, n), rng.choice(all_perms(n)))
                        for _ in range(2))
                assert psi(x.to_y() * y.to_y()) == psi_forward(x) * psi_forward(y)


def test_criterion_05_trace_and_markov_axioms():
    with criterion(5, 300.0):
        rng = random.Random(5)
        for d in (1, 2):
            for S in subsets(d):
                spec = MarkovSpec.make(d, S)
                for gamma in (GAMMA, ONE):
                    for n in (1, 2, 3):
                        A, B = YokonumaHecke(d, n), YokonumaHecke(d, n + 1)
                        plus = delta_image(BraidWord(n + 1, (Sigma(n),)), B, gamma)
                        minus = delta_image(BraidWord(n + 1, (Sigma(n, -1),)), B, gamma)
                        crossings = [delta_image(BraidWord(n, (Sigma(i, s),)), A, gamma)
                                     for i in range(1, n) for s in (1, -1)]
                        for _ in range(6):
                            h = random_monomial(rng, A)
                            base = rho_basic(h, spec)
                            up = psi(h.embed())
                            assert rho_basic(up * plus, spec) == base
                            assert rho_basic(up * minus, spec) == base
                            M = psi(h)
                            others = [psi(random_monomial(rng, A))] + crossings
                            for N in others:
                                assert rho_basic(M * N, spec) == rho_basic(N * M, spec)


def test_criterion_06_markov_moves():
    with criterion(6, 600.0):
        rng = random.Random(6)
        done = 0
        while done < 200:
            d, n = rng.randint(1, 3), rng.randint(1, 4)
            beta = random_braid(rng, n, rng.randint(0, 10), d, framed=True, affine=True)
            if beta.x_degree() > 4:
                continue
            S = rng.sample(range(1, d + 1), rng.randint(1, min(2, d)))
            spec = MarkovSpec.make(d, S)
            base = invariant_basic(beta, spec)
            letters = ([Sigma(i, s) for i in range(1, n) for s in (1, -1)]
                       + [SigmaZero(1), SigmaZero(-1), Tee(rng.randint(1, n), 1)])
            conj = markov_move(beta, "conjugate", rng.choice(letters))
            assert invariant_basic(conj, spec) == base, (beta, conj)
            for sign in (1, -1):
                stab = markov_move(beta, "stabilize", sign)
                assert invariant_basic(stab, spec) == base, (beta, stab)
                assert markov_move(stab, "destabilize") == beta
            done += 1


def test_criterion_07_combined_trace_rule():
    with criterion(7, 300.0):
        d, D = 2, {1, 2}
        rng = random.Random(7)
        for n in (1, 2, 3):
            A = YokonumaHecke(d, n)
            if n == 1:
                samples = [A.one()]
            else:
                low = YokonumaHecke(d, n - 1)
                samples = [random_monomial(rng, low).embed() for _ in range(5)]
            for h in samples:
                base = rho_tilde(h, d, D)
                for a in (-1, 0, 1):
                    for b in (0, 1):
                        lhs = rho_tilde(A.xtilde_power(n, a) * A.t(n, b) * h, d, D)
                        assert lhs == x_ab(a, b, d, D) * base, (n, h, a, b)


def test_criterion_08_d_reduction():
    with criterion(8, 300.0):
        rng = random.Random(8)
        for _ in range(20):
            beta = random_braid(rng, rng.randint(1, 3), rng.randint(0, 8), affine=True)
            report = check_prop_d_reduction(beta, {1, 3}, 3)
            assert report.passed, str(report)


RESCALING_NOTE = (
    "the single-term identity misses lower-order terms: on 2-component links "
    "Phi_3 = 2 Phi_2(3z/2) - Phi_1(3z)"
)


@pytest.mark.xfail(strict=True, reason=RESCALING_NOTE)
def test_criterion_09_rescaling_identity():
    rng = random.Random(9)
    links = []
    while len(links) < 10:
        beta = random_braid(rng, rng.choice((2, 3)), rng.randint(1, 7))
        if components(beta) == 2:
            links.append(beta)
    reports = []
    with criterion(9, 300.0, note=RESCALING_NOTE):
        reports = [check_phi_rescaling(beta, 3) for beta in links]
        # the corrected expansion, with every lower-order term, must hold everywhere
        assert all("holds" in r.detail for r in reports)
        failures = [str(r.lhs - r.rhs) for r in reports if not r.passed]
        assert not failures, f"{len(failures)}/10 links violate the identity; first difference {failures[0]}"


def test_criterion_10_affine_trace_consistency():
    with criterion(10, 300.0):
        H3 = affine_hecke(3)
        for w in all_perms(3):
            h = H3.basis(w=w)
            assert affine_trace(h) == ocneanu_trace(h)
        rng = random.Random(10)
        shuffled = AffineTrace(strategy="random", seed=10)
        for _ in range(100):
            H = affine_hecke(rng.randint(1, 3))
            lam = [0] * H.n
            for _ in range(rng.randint(0, 3)):
                lam[rng.randrange(H.n)] += rng.choice((-1, 1))
            h = H.basis(lam=lam, w=rng.choice(all_perms(H.n)))
            assert shuffled(h) == affine_trace(h), h
