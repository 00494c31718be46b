"""
Command-line front end.

    yokonuma compute --d 1 --set 1 --braid "B2: s1 s1 s1"
    yokonuma table --d 2 --set 1,2 --input links.txt --output out.jsonl
    yokonuma verify iso --d 2 --n 3

Exit codes: 0 success, 1 a verification failed, 2 bad flags or input,
3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Sequence

from .algebra import ChiElement, YokonumaHecke, affine_hecke
from .coeffring import GAMMA, ONE, LaurentPoly, parse_poly
from .combinatorics import (
    all_perms, compositions, cycle_type, enumerate_characters, is_refinement,
)
from .invariants import (
    BraidSyntaxError, BraidWord, Sigma, SigmaZero, Tee, check_component_vanishing,
    check_phi_rescaling, check_prop_d_reduction, components, delta_image, invariant_basic,
    invariant_htilde, jl_specialize, markov_move, parse_braid, random_braid,
)
from .isomorphism import DEFAULT_RELATION_BUDGET, ResourceError, psi, psi_forward, psi_inverse, verify_relations
from .traces import DEFAULT_MAX_DEGREE, MarkovSpec, ReductionError, TraceParams, rho_basic

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration helpers


def parse_subset(text: str, d: int) -> list[int]:
    try:
        out = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"bad subset {text!r}; expected e.g. 1,2") from None
    if not out or not all(1 <= k <= d for k in out):
        raise UsageError(f"subset {text!r} must be non-empty inside 1..{d}")
    return out


def parse_gamma(text: str, d: int) -> LaurentPoly:
    if text in ("sym", "symbolic"):
        return GAMMA
    if text == "1":
        return ONE
    try:
        return parse_poly(text, d)
    except ValueError as exc:
        raise UsageError(f"bad --gamma value: {exc}") from None


_PARAM_LINE = re.compile(r"^\s*x\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*=\s*(.+?)\s*$")


def load_params(path: str | None, d: int) -> dict[int, TraceParams]:
    """Read lines ``x(k,a) = poly``; '#' starts a comment."""
    if not path:
        return {}
    table: dict[int, dict[int, LaurentPoly]] = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read parameter file: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PARAM_LINE.match(line)
        if not m:
            raise UsageError(f"{path}:{lineno}: expected 'x(k,a) = polynomial'")
        k, a = int(m.group(1)), int(m.group(2))
        if a == 0:
            raise UsageError(f"{path}:{lineno}: x(k,0) is fixed to 1")
        try:
            table.setdefault(k, {})[a] = parse_poly(m.group(3), d)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return {k: TraceParams.of(k, vals) for k, vals in table.items()}


def _gamma_label(text: str) -> str:
    return "symbolic" if text in ("sym", "symbolic") else text


def evaluate_record(name: str, braid_text: str, cfg: dict) -> dict:
    """One JSON record for one braid word (cfg holds plain, picklable values)."""
    d = cfg["d"]
    beta = parse_braid(braid_text, d)
    gamma = parse_gamma(cfg["gamma"], d)
    params = load_params(cfg.get("params"), d)
    budget = cfg.get("budget", DEFAULT_MAX_DEGREE)
    rec = {"name": name, "n": beta.n, "d": d}
    if cfg.get("dset"):
        D = cfg["dset"]
        P = invariant_htilde(beta, d, D, params, gamma, budget)
        rec["D"] = D
        if cfg.get("specialize"):
            P = jl_specialize(P, cfg["specialize"])
    else:
        S = cfg["set"]
        spec = MarkovSpec.make(d, S, {k: p for k, p in params.items() if k in S})
        P = invariant_basic(beta, spec, gamma, budget)
        rec["S"] = S
    rec["gamma"] = _gamma_label(cfg["gamma"])
    if cfg.get("specialize"):
        rec["specialization"] = cfg["specialize"]
    rec["components"] = components(beta)
    rec["polynomial"] = str(P)
    return rec


def _config(args) -> dict:
    d = args.d
    if d < 1:
        raise UsageError("--d must be positive")
    cfg = {"d": d, "gamma": args.gamma, "params": args.params, "budget": args.budget,
           "specialize": getattr(args, "specialize", None)}
    if args.dset:
        cfg["dset"] = parse_subset(args.dset, d)
        if args.set is not None:
            raise UsageError("give either --set or --dset, not both")
    else:
        cfg["set"] = parse_subset("1" if args.set is None else args.set, d)
        if cfg["specialize"]:
            raise UsageError("--specialize needs --dset")
    if cfg["specialize"] and args.gamma not in ("sym", "symbolic"):
        raise UsageError("--specialize substitutes gamma itself; leave --gamma symbolic")
    parse_gamma(args.gamma, d)
    return cfg


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args, out) -> int:
    cfg = _config(args)
    if not args.braid:
        raise UsageError("--braid is required")
    rec = evaluate_record(args.name, args.braid, cfg)
    out.write(json.dumps(rec) + "\n")
    return EXIT_OK


def read_corpus(path: str) -> list[tuple[str, str]]:
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    items = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name = f"line{lineno}"
        m = re.match(r"^([^=:]+?)\s*=\s*(B.*)$", line)
        if m:
            name, line = m.group(1).strip(), m.group(2)
        try:
            parse_braid(line)
        except BraidSyntaxError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
        items.append((name, line))
    return items


def _evaluate_star(item):
    return evaluate_record(*item)


def cmd_table(args, out) -> int:
    cfg = _config(args)
    if not args.input:
        raise UsageError("--input is required")
    items = read_corpus(args.input)
    jobs = [(name, text, cfg) for name, text in items]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            records = list(pool.map(_evaluate_star, jobs))
    else:
        records = [evaluate_record(*job) for job in jobs]
    text = "".join(json.dumps(r) + "\n" for r in records)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from None
    else:
        out.write(text)
    return EXIT_OK


# -- verification suites ------------------------------------------------------


def _random_chi_basis(rng, alg, max_lam=1):
    n = alg.n
    chi = tuple(rng.randint(1, alg.d) for _ in range(n))
    lam = [0] * n
    if max_lam and rng.random() < 0.6:
        lam[rng.randrange(n)] = rng.choice((1, -1))
    return ChiElement.basis(alg, chi, lam, rng.choice(all_perms(n)))


def suite_iso(args, rng):
    alg = YokonumaHecke(args.d, args.n)
    for name, ok in verify_relations(alg, args.max_size).items():
        yield f"relation {name}", ok
    ok = True
    for chi in product(range(1, alg.d + 1), repeat=alg.n):
        for lam in [(0,) * alg.n] + [tuple(s if k == j else 0 for k in range(alg.n))
                                     for j in range(alg.n) for s in (1, -1)]:
            for w in all_perms(alg.n):
                x = ChiElement.basis(alg, chi, lam, w)
                ok = ok and psi_inverse(psi_forward(x)) == x
    yield "inverse after forward on the basis with |lam| <= 1", ok
    for k in range(args.samples):
        x, y = _random_chi_basis(rng, alg), _random_chi_basis(rng, alg)
        yield f"morphism sample {k}", psi(x.to_y() * y.to_y()) == psi_forward(x) * psi_forward(y)


def suite_traces(args, rng):
    d, n = args.d, args.n
    S = parse_subset(args.set or ",".join(str(k) for k in range(1, d + 1)), d)
    spec = MarkovSpec.make(d, S)
    A, A1 = YokonumaHecke(d, n), YokonumaHecke(d, n + 1)
    for k in range(args.samples):
        x = _random_chi_basis(rng, A).to_y()
        y = _random_chi_basis(rng, A).to_y()
        yield f"trace property sample {k}", rho_basic(x * y, spec) == rho_basic(y * x, spec)
        r = rho_basic(x, spec)
        xe = x.embed()
        yield (f"Markov property sample {k}",
               rho_basic(xe * A1.g(n), spec) == r and rho_basic(xe * A1.g_inv(n), spec) == r)


def suite_markov(args, rng):
    for k in range(args.samples):
        d = rng.randint(1, max(1, args.d))
        n = rng.randint(1, 4)
        S = rng.sample(range(1, d + 1), rng.randint(1, min(2, d)))
        spec = MarkovSpec.make(d, S)
        beta = random_braid(rng, n, rng.randint(0, 10), d, framed=True, affine=True)
        while beta.x_degree() > 4:
            beta = random_braid(rng, n, rng.randint(0, 10), d, framed=True, affine=True)
        P = invariant_basic(beta, spec)
        conj = rng.choice([Sigma(i, rng.choice((1, -1))) for i in range(1, n)]
                          + [SigmaZero(rng.choice((1, -1))), Tee(rng.randint(1, n), 1)])
        same = all(invariant_basic(markov_move(beta, mv, a), spec) == P
                   for mv, a in (("conjugate", conj), ("stabilize", 1), ("stabilize", -1)))
        yield f"moves on {beta} (d={d}, S={sorted(S)})", same


def suite_skein(args, rng):
    spec = MarkovSpec.make(1, [1])
    from .coeffring import U, V
    for k in range(args.samples):
        n = rng.randint(2, 4)
        beta = random_braid(rng, n, rng.randint(0, 8))
        i = rng.randint(1, n - 1)
        plus = BraidWord(n, beta.letters + (Sigma(i, 1),))
        minus = BraidWord(n, beta.letters + (Sigma(i, -1),))
        lhs = invariant_basic(plus, spec) - U * U * invariant_basic(minus, spec)
        yield f"skein on {beta} at s{i}", lhs == V * invariant_basic(beta, spec)


PROPERTY_ALIASES = {"d-reduction": "6.1", "block-diagonals": "6.3", "vanishing": "6.4",
                    "rescaling": "6.6"}


def suite_props(args, rng):
    wanted = [PROPERTY_ALIASES.get(p.strip(), p.strip())
              for p in (args.prop or "6.1,6.3,6.4").split(",")]
    for p in wanted:
        if p not in ("6.1", "6.3", "6.4", "6.6"):
            raise UsageError(f"unknown property {p!r}; choose from 6.1, 6.3, 6.4, 6.6 "
                             f"or {', '.join(PROPERTY_ALIASES)}")
    for p in wanted:
        for k in range(args.samples):
            if p == "6.1":
                beta = random_braid(rng, rng.randint(1, 3), rng.randint(0, 8), affine=True)
                rep = check_prop_d_reduction(beta, [1, 3], 3)
                yield f"6.1 {beta}", rep.passed
            elif p == "6.3":
                d, n = rng.randint(1, 3), rng.randint(1, 3)
                beta = random_braid(rng, n, rng.randint(0, 8), d, framed=True, affine=True)
                M = delta_image(beta, YokonumaHecke(d, n))
                ctype = cycle_type(beta.permutation)
                ok = all(all(chi not in cols for chi, cols in M.blocks.get(mu, {}).items())
                         for mu in compositions(d, n) if not is_refinement(ctype, mu))
                ok = ok and M.max_row_support() <= 1
                yield f"6.3 {beta} (d={d})", ok
            elif p == "6.4":
                d = rng.randint(2, 3)
                beta = random_braid(rng, rng.randint(1, 3), rng.randint(0, 8), d, framed=True, affine=True)
                S = rng.sample(range(1, d + 1), rng.randint(1, d))
                rep = check_component_vanishing(beta, MarkovSpec.make(d, S))
                yield f"6.4 {beta} (d={d}, S={sorted(S)})", rep.passed
            else:
                beta = random_braid(rng, 3, rng.randint(1, 7))
                while components(beta) != 2:
                    n = rng.choice((2, 3))
                    beta = random_braid(rng, n, rng.randint(1, 7))
                rep = check_phi_rescaling(beta, 3)
                yield f"6.6 {beta} ({rep.detail})", rep.passed


SUITES = {"iso": suite_iso, "traces": suite_traces, "markov": suite_markov,
          "props": suite_props, "skein": suite_skein}


def cmd_verify(args, out) -> int:
    rng = random.Random(args.seed)
    passed = failed = 0
    for label, ok in SUITES[args.suite](args, rng):
        if ok:
            passed += 1
        else:
            failed += 1
            out.write(f"FAIL {label}\n")
    out.write(f"{args.suite}: {passed} passed, {failed} failed\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=1, help="order of the framing group")
    common.add_argument("--set", help="S for the basic invariant, e.g. 1,2")
    common.add_argument("--dset", help="D for the invariant P~^{d,D,x}")
    common.add_argument("--gamma", default="sym", help="'sym', '1' or a polynomial")
    common.add_argument("--params", help="trace-parameter file with lines x(k,a) = poly")
    common.add_argument("--budget", type=int, default=DEFAULT_MAX_DEGREE,
                        help="bound on the total X-degree handed to the affine trace")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="yokonuma", description=__doc__.split("\n\n")[0].strip())
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="invariant of one braid word")
    c.add_argument("--braid", help='e.g. "B2: s1 s1 s1"')
    c.add_argument("--name", default="braid")
    c.add_argument("--specialize", choices=("phi", "gamma"),
                   help="with --dset: pass to the (q, z) conventions")

    t = sub.add_parser("table", parents=[common], help="invariants of a corpus, JSON lines")
    t.add_argument("--input")
    t.add_argument("--output")
    t.add_argument("--specialize", choices=("phi", "gamma"))

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--prop", help="for 'props': comma list of 6.1 (d-reduction), "
                   "6.3 (block-diagonals), 6.4 (vanishing), 6.6 (rescaling)")
    v.add_argument("--max-size", type=int, default=DEFAULT_RELATION_BUDGET,
                   help="for 'iso': bound on d^n * n!")
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"compute": cmd_compute, "table": cmd_table, "verify": cmd_verify}[args.command]
    try:
        return handler(args, out)
    except ResourceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, BraidSyntaxError, ValueError, IndexError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ReductionError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
