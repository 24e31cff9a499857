"""Command-line interface.

Exit codes: 0 point found / success, 1 error, 2 proven empty,
3 out of guarantee and not found.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import fileformat as ff
from . import lattice, linalg, lp, oracles, solver
from .errors import EmptyPolytope, KnapsackError
from .generate import GEN_REGIMES, generate_instance
from .suite import verify_bounds

EXIT_OK, EXIT_ERROR, EXIT_EMPTY, EXIT_NOT_FOUND = 0, 1, 2, 3

log = logging.getLogger("knapsack_lll")


def _emit(text: str, path=None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _delta(args, file_delta):
    if args.delta is not None:
        return Fraction(args.delta)
    return file_delta if file_delta is not None else solver.DEFAULT_DELTA


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_check(args) -> int:
    A, b, fdelta = ff.read_instance(args.instance)
    delta = _delta(args, fdelta)
    m, n = len(A), len(A[0])
    print(f"shape: m={m} n={n}")
    if not 1 <= m < n:
        print("error: BadShape: need 1 <= m < n", file=sys.stderr)
        return EXIT_ERROR
    try:
        primitive = linalg.check_primitivity(A)
    except KnapsackError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    pointed = lp.check_pointed(A)
    print(f"primitive (gcd of maximal minors is 1): {primitive}")
    print(f"pointed (no nonzero x >= 0 with A x = 0): {pointed}")
    print(f"det(A A^T): {linalg.gram_det_sq(A)}")
    try:
        inst = solver.validate(A, b)
    except KnapsackError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    cls = solver.classify_regime(inst, delta)
    th = cls.thresholds
    print(f"delta: {th.delta}")
    print(f"cone offset t* (max t with b in t v + C): {cls.cone_offset}")
    print(f"THM1 offset^2 (mu(m,n)^2 det): {th.thm1_rhs_sq}")
    print(f"THM2 offset^2 (p(m,n)^2 det): {th.thm2_rhs_sq}")
    print(f"rho_k: {th.rho_k} (gamma exact: {th.gamma_exact_known}); large-det gate: {th.det_gate}")
    if inst.m == 1:
        a = inst.A[0]
        print(f"THM3_M1 threshold ~ {th.m1_threshold_float(solver.THM3_M1, a):.6g}")
        print(f"THM4_M1 threshold ~ {th.m1_threshold_float(solver.THM4_M1, a):.6g}")
    print(f"dfrob upper bound^2: {solver.dfrob_upper_bound_sq(inst)}")
    print(f"applicable: {', '.join(cls.applicable) or '-'}")
    print(f"regime: {cls.regime}")
    return EXIT_OK


def cmd_solve(args) -> int:
    A, b, fdelta = ff.read_instance(args.instance)
    delta = _delta(args, fdelta)
    inst = solver.validate(A, b)
    try:
        cert = solver.solve(inst, delta, m1_use_lp=args.m1_lp)
    except EmptyPolytope:
        log.info("P(A, b) has no real points")
        out = {"format": ff.CERTIFICATE_FORMAT, "instance": ff.instance_to_dict(inst.A, inst.b),
               "status": "empty_polytope"}
        code = EXIT_EMPTY if args.oracle_fallback else EXIT_NOT_FOUND
        out["exit_status"] = code
        _emit(ff.dumps(out), args.output)
        return code

    if args.verify:
        bad = [c.name for c in solver.verify_certificate(inst, cert) if not c.holds]
        if bad:
            print(f"error: certificate checks failed: {', '.join(bad)}", file=sys.stderr)
            return EXIT_ERROR

    code = EXIT_OK if cert.found else EXIT_NOT_FOUND
    out = None
    if not cert.found and args.oracle_fallback:
        res = oracles.enumerate_points(inst.A, inst.b, args.budget)
        if res.points:
            code = EXIT_OK
        elif res.exhaustive:
            code = EXIT_EMPTY
        out = ff.certificate_to_dict(inst, cert, code)
        out["oracle"] = {
            "exhaustive": res.exhaustive,
            "budget_used": res.budget_used,
            "points_found": len(res.points),
            "z": [ff.int_str(x) for x in res.points[0]] if res.points else None,
        }
    out = out or ff.certificate_to_dict(inst, cert, code)
    _emit(ff.dumps(out), args.output)
    return code


def cmd_reduce(args) -> int:
    basis, _ = ff.basis_from_dict(_load_json(args.basis))
    reduced, gs, U = lattice.lll_reduce(basis)
    size, lovasz = lattice.lll_conditions(gs)
    out = {
        "basis": [[ff.int_str(x) for x in r] for r in reduced.vectors],
        "transform": [[ff.int_str(x) for x in r] for r in U],
        "gs_norm_sq": [ff.rat_str(x) for x in gs.hat_norm_sq],
        "det_sq": ff.int_str(linalg.gram_det_sq(reduced.vectors)),
        "size_condition": size,
        "lovasz_condition": lovasz,
    }
    _emit(ff.dumps(out), args.output)
    return EXIT_OK


def cmd_babai(args) -> int:
    basis, target = ff.basis_from_dict(_load_json(args.basis))
    if args.target is not None:
        target = [Fraction(s) for s in args.target.split(",")]
    if target is None:
        print("error: no target given", file=sys.stderr)
        return EXIT_ERROR
    reduced, gs, _ = lattice.lll_reduce(basis)
    res = lattice.babai_nearest(reduced, target, gs)
    out = {
        "reduced_basis": [[ff.int_str(x) for x in r] for r in reduced.vectors],
        "coefficients": [ff.int_str(x) for x in res.coefficients],
        "point": [ff.int_str(x) for x in res.point],
        "error_sq": ff.rat_str(res.error_sq),
        "bound": ff.rat_str(res.bound),
    }
    _emit(ff.dumps(out), args.output)
    return EXIT_OK


def cmd_frobenius(args) -> int:
    res = oracles.frobenius(args.coins)
    print(f"frobenius: {res.value}")
    print(f"method: {res.method}")
    if args.scan:
        lo, hi = args.scan
        flags = oracles.feasibility_scan(args.coins, range(lo, hi + 1), res.residues)
        infeasible = [b for b, ok in zip(range(lo, hi + 1), flags) if not ok]
        print(f"infeasible in [{lo}, {hi}]: {' '.join(map(str, infeasible)) or '-'}")
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    summary = verify_bounds(args.trials, args.seed, args.max_n, args.max_k, args.max_entry,
                            minima=not args.no_minima, inject_bug=args.inject_bug)
    print(summary.table())
    for trial, c in summary.failures[:20]:
        print(f"FAILED trial {trial}: {c.name} lhs={c.lhs} rhs={c.rhs}", file=sys.stderr)
    return EXIT_OK if summary.ok else EXIT_ERROR


def cmd_gen(args) -> int:
    inst = generate_instance(args.m, args.n, args.max_entry, args.seed, args.regime, args.delta or solver.DEFAULT_DELTA)
    d = ff.instance_to_dict(inst.A, inst.b, Fraction(args.delta) if args.delta else None,
                            seed=args.seed, regime=args.regime)
    _emit(ff.dumps(d), args.output)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; argparse's default 2 would read as "proven empty"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knapsack-lll", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate an instance and report thresholds")
    s.add_argument("instance")
    s.add_argument("--delta")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="find an integer point and print a certificate")
    s.add_argument("instance")
    s.add_argument("--delta")
    s.add_argument("--oracle-fallback", action="store_true",
                   help="enumerate P(A,b) when the lattice step fails")
    s.add_argument("--verify", action="store_true", help="re-verify the certificate")
    s.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET)
    s.add_argument("--m1-lp", action="store_true", help="one-row instances: use the LP vertex, not the simplex centre")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("reduce", help="LLL-reduce a basis file")
    s.add_argument("basis")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("babai", help="nearest-plane lattice point to a target")
    s.add_argument("basis")
    s.add_argument("--target", help="comma separated rationals, e.g. 3/5,13/10 (use --target=-1/2,... for a leading minus)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_babai)

    s = sub.add_parser("frobenius", help="Frobenius number of coin values")
    s.add_argument("coins", type=int, nargs="+")
    s.add_argument("--scan", type=int, nargs=2, metavar=("LO", "HI"))
    s.set_defaults(func=cmd_frobenius)

    s = sub.add_parser("verify-bounds", help="check the lattice inequalities on random lattices")
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--max-k", type=int, default=4)
    s.add_argument("--max-entry", type=int, default=20)
    s.add_argument("--no-minima", action="store_true", help="skip successive-minima enumeration")
    s.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify_bounds)

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-entry", type=int, default=30)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--regime", choices=GEN_REGIMES, default="THM1")
    s.add_argument("--delta")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (KnapsackError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
