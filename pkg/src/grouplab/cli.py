"""Command-line entry point: ``grouplab <subcommand> [options]``.

Exit status: 0 every check passed, 2 a counterexample was found,
3 bad input (parse error, failed precondition, I/O error).
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import decaylab, extlab, harmonic, instances
from . import io as gio
from .errors import GroupLabError, ParseError
from .measures import RATIONAL, Measure, cesaro, delta, l1_norm, lazy, normalize_mode, power, pushforward

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT = 0, 2, 3


class Reporter:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def line(self, text: str):
        if not self.quiet:
            print(text)

    def check(self, name: str, ok: bool, detail: str = ""):
        self.line(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))


# -- argument helpers -------------------------------------------------------


def _int_list(text: str) -> list:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"expected nonnegative integers, got {text!r}")
    return values


def _rational(text: str) -> Fraction:
    try:
        return gio.parse_rational(text, "argument")
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--mode", choices=["exact", "rational", "real"], default=None)
    common.add_argument("--out", default=None, help="output file (or directory for equiv)")
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="grouplab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decay", parents=[common], help="decay norm of G_n*(delta_e - eta) and bounds (CSV)")
    p.add_argument("--n", type=_int_list, default=[500, 1000, 2000, 5000])
    p.add_argument("--f-exp", type=_rational, default=Fraction(1, 4))

    p = sub.add_parser("harmonic", parents=[common], help="exact basis of bounded P-harmonic functions")
    p.add_argument("--group", required=True)
    p.add_argument("--measure", required=True)

    p = sub.add_parser("equiv", parents=[common], help="verify a harmonic-space equivalence")
    p.add_argument("--transform", choices=["nu_t", "s_t", "sws"], required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--c", required=True, help="element as JSON, e.g. '[1,0]'")
    p.add_argument("--t", type=_rational, default=None)

    p = sub.add_parser("commute-check", parents=[common], help="BH_{s eta + t zeta} inside BH_eta ∩ BH_zeta")
    p.add_argument("--group", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--zeta", required=True)
    p.add_argument("--s", type=_rational, default=Fraction(1, 2))

    p = sub.add_parser("build-mu", parents=[common], help="extension measure with phi_* mu = (1-t) delta_e + t nu")
    p.add_argument("--group", required=True, help="total group spec")
    p.add_argument("--quotient", required=True, help="quotient group spec")
    p.add_argument("--nu", required=True)
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--kernel-radius", type=int, default=3, help="truncation of an infinite kernel enumeration")
    p.add_argument("--weight-rule", choices=["symmetric", "geometric"], default="symmetric")
    p.add_argument("--no-damping", action="store_true", help="skip the e^-|x| word-length factor")

    p = sub.add_parser("entropy", parents=[common], help="entropy curve H(mu^n) (CSV)")
    p.add_argument("--group", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("--prune", type=_nonneg_float, default=1e-15)
    p.add_argument("--support-cap", type=int, default=2_000_000)
    p.add_argument("--method", choices=["auto", "convolution", "lumped"], default="auto")

    p = sub.add_parser("series", parents=[common], help="upper central series of a finite group")
    p.add_argument("--group", required=True)

    p = sub.add_parser("suite", parents=[common], help="seeded randomized verification suite")
    p.add_argument("--name", choices=sorted(SUITES), required=True)
    p.add_argument("--instances", type=int, default=50)
    return parser


# -- output helpers ---------------------------------------------------------


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(v) -> str:
    return gio.format_rational(v) if isinstance(v, Fraction) else repr(float(v))


def _load_group(path):
    return gio.group_from_json(gio.read_json(path))


def _load_measure(path, group=None) -> Measure:
    try:
        return gio.measure_from_json(gio.read_json(path), group)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


# -- subcommands -------------------------------------------------------------


def cmd_decay(args, rep: Reporter) -> int:
    mode = normalize_mode(args.mode or "real")
    report = decaylab.decay_report(args.n, args.f_exp, mode)
    rows = [
        [n, _fmt(d), repr(c), repr(r), f"{ms:.3f}"]
        for n, d, c, r, ms in zip(report.n, report.decay_norm, report.coarse_bound,
                                  report.refined_bound, report.runtime_ms)
    ]
    out = _csv(["n", "decay_norm", "coarse_bound", "refined_bound", "cumulative_runtime_ms"], rows)
    if args.out:
        Path(args.out).write_text(out)
    elif not args.quiet:
        sys.stdout.write(out)
    violations = report.coarse_violations()
    rep.line(f"coarse bound violations: {violations if violations else 'none'}")
    if report.exponent is not None:
        rep.line(f"fitted exponent a = {report.exponent:.4f} (rms residual {report.residual:.4f})")
    return EXIT_OK


def cmd_harmonic(args, rep: Reporter) -> int:
    g = _load_group(args.group)
    P = _load_measure(args.measure, g)
    B = harmonic.harmonic_space(g, P)
    _emit(args, gio.dumps(gio.basis_to_json(B)))
    rep.line(f"dim BH = {B.dim} ({'Liouville' if B.dim == 1 else 'not Liouville'})")
    return EXIT_OK


def cmd_equiv(args, rep: Reporter) -> int:
    g = _load_group(args.group)
    P = _load_measure(args.measure, g)
    c = gio.element_from_json(g, args.c, "--c")
    if args.transform in ("nu_t", "s_t") and args.t is None:
        raise ParseError(f"--t is required for --transform {args.transform}")
    if args.t is not None and not 0 < args.t < 1:
        raise ParseError(f"--t must lie in (0, 1), got {args.t}")
    if P.mode != RATIONAL:
        raise ParseError("equivalence checks need a rational measure")
    spaces = {}
    checks = []
    if args.transform == "nu_t":
        spaces["mu_t"] = harmonic.harmonic_space(g, harmonic.mu_t(P, c, args.t))
        spaces["nu_t"] = harmonic.harmonic_space(g, harmonic.nu_t(P, c, args.t))
        checks.append(("BH(mu_t) = BH(nu_t)", "mu_t", "nu_t", True))
    elif args.transform == "s_t":
        S = harmonic.s_t_measure(g, P, args.t)
        spaces["mu_t"] = harmonic.harmonic_space(g, harmonic.mu_t(P, c, args.t))
        spaces["c_s_t"] = harmonic.harmonic_space(g, delta(g, c) * S)
        spaces["conjugate_product"] = harmonic.harmonic_space(g, harmonic.conjugate_product(g, S, c))
        checks.append(("BH(mu_t) = BH(delta_c*S_t)", "mu_t", "c_s_t", True))
        checks.append(("BH(mu_t) ⊆ BH(prod c^i S_t c^-i)", "mu_t", "conjugate_product", False))
    else:
        nu0, _, sandwich = harmonic.sws_measures(P, c)
        spaces["nu0_and_c"] = harmonic.common_harmonic_space(g, [nu0, delta(g, c)])
        spaces["sandwich"] = harmonic.harmonic_space(g, sandwich)
        checks.append(("BH(nu_0) ∩ BH(delta_c) ⊆ BH(rho*P*rho)", "nu0_and_c", "sandwich", False))
    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
        for name, B in spaces.items():
            gio.write_json(outdir / f"{name}.json", gio.basis_to_json(B))
    status = EXIT_OK
    for label, left, right, both_ways in checks:
        A, B = spaces[left], spaces[right]
        w = harmonic.witness(A, B)
        if w is None and both_ways:
            w = harmonic.witness(B, A)
        rep.check(label, w is None)
        if w is not None:
            status = EXIT_COUNTEREXAMPLE
            doc = gio.function_to_json(g, w)
            if outdir:
                gio.write_json(outdir / "witness.json", doc)
                rep.line(f"witness written to {outdir / 'witness.json'}")
            else:
                sys.stdout.write(gio.dumps(doc))
    return status


def cmd_commute(args, rep: Reporter) -> int:
    g = _load_group(args.group)
    eta = _load_measure(args.eta, g)
    zeta = _load_measure(args.zeta, g)
    if not 0 < args.s < 1:
        raise ParseError(f"--s must lie in (0, 1), got {args.s}")
    ok = harmonic.commuting_factor_check(g, eta, zeta, args.s, 1 - args.s)
    rep.check("BH(s eta + t zeta) ⊆ BH(eta) ∩ BH(zeta)", ok)
    if not ok:
        mu = eta.scale(args.s) + zeta.scale(1 - args.s)
        w = harmonic.witness(harmonic.harmonic_space(g, mu), harmonic.common_harmonic_space(g, [eta, zeta]))
        _emit(args, gio.dumps(gio.function_to_json(g, w)))
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_build_mu(args, rep: Reporter) -> int:
    total = _load_group(args.group)
    quotient = _load_group(args.quotient)
    nu = _load_measure(args.nu, quotient)
    if args.mode:
        nu = nu.to_mode(args.mode)
    if not 0 < args.t < 1:
        raise ParseError(f"--t must lie in (0, 1), got {args.t}")
    spec = extlab.extension_spec_for(total, quotient, args.kernel_radius)
    t = args.t if nu.mode == RATIONAL else float(args.t)
    mu = extlab.build_extension_measure(spec, nu, t, args.weight_rule, damping=not args.no_damping)
    _emit(args, gio.dumps(gio.measure_to_json(mu)))
    push = pushforward(spec.quotient_map, mu)
    expected = lazy(nu, 1 - t)
    ok = push == expected if mu.mode == RATIONAL else push.allclose(expected)
    rep.check("phi_* mu = (1-t) delta_e + t nu", ok)
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def cmd_entropy(args, rep: Reporter) -> int:
    g = _load_group(args.group)
    mu = _load_measure(args.measure, g)
    if args.steps < 0:
        raise ParseError("--steps must be nonnegative")
    p = extlab.detect_sws_lamplighter(mu)
    if args.method == "lumped" and p is None:
        raise ParseError("--method lumped needs a switch-walk-switch measure on the lamplighter")
    if args.method == "lumped" or (args.method == "auto" and p is not None):
        curve = extlab.lamplighter_sws_entropy(args.steps, float(p))
    else:
        curve = extlab.entropy_curve(mu, args.steps, args.prune, args.support_cap)
    rows = [[n, repr(h), repr(m)] for n, h, m in zip(curve.steps, curve.entropy, curve.pruned_mass)]
    out = _csv(["n", "entropy_nats", "pruned_mass"], rows)
    if args.out:
        Path(args.out).write_text(out)
    elif not args.quiet:
        sys.stdout.write(out)
    rep.line(f"method {curve.method}; steps computed {curve.steps[-1]}"
             + ("; support cap reached, curve is partial" if curve.capped else ""))
    return EXIT_OK


def cmd_series(args, rep: Reporter) -> int:
    g = _load_group(args.group)
    series = extlab.upper_central_series(g)
    doc = {
        "group": g.spec(),
        "orders": [len(s) for s in series],
        "series": [[g.serialize(x) for x in sorted(s, key=g.key)] for s in series],
    }
    _emit(args, gio.dumps(doc))
    rep.line("orders: " + " < ".join(str(len(s)) for s in series))
    return EXIT_OK


# -- randomized suites -------------------------------------------------------


def _suite_equiv_mu_nu(rng):
    inst = instances.equiv_instance(rng)
    return harmonic.equiv_mu_nu(inst.group, inst.P, inst.c, inst.t), str(inst.group)


def _suite_equiv_s_t(rng):
    inst = instances.equiv_instance(rng)
    return harmonic.equiv_s_t(inst.group, inst.P, inst.c, inst.t), str(inst.group)


def _suite_commute(rng):
    inst = instances.commuting_instance(rng)
    ok = harmonic.commuting_factor_check(inst.group, inst.eta, inst.zeta, inst.s, inst.t)
    return ok, f"{inst.group} [{inst.strategy}]"


def _suite_identities(rng):
    inst = instances.equiv_instance(rng)
    rho = harmonic.cyclic_average(inst.group, inst.c)
    ok = harmonic.nu_t(inst.P, inst.c, inst.t) * rho == inst.P * rho
    ok = ok and harmonic.sws_containment(inst.group, inst.P, inst.c)
    return ok, str(inst.group)


def _suite_telescoping(rng):
    g = instances.random_finite_group(rng)
    P = instances.random_probability(rng, g)
    n = rng.randint(1, 50)
    e = delta(g)
    lhs = l1_norm(cesaro(P, n) * (e - P))
    return lhs == l1_norm(e - power(P, n + 1)) / (n + 1), f"{g} n={n}"


SUITES = {
    "equiv_mu_nu": _suite_equiv_mu_nu,
    "equiv_s_t": _suite_equiv_s_t,
    "commute": _suite_commute,
    "identities": _suite_identities,
    "telescoping": _suite_telescoping,
}


def run_suite(name: str, count: int, seed: int) -> list:
    """[(index, ok, description)] in instance order; instance i uses seed (seed, i)."""
    fn = SUITES[name]
    return [(i, *fn(random.Random(f"{seed}:{i}"))) for i in range(count)]


def cmd_suite(args, rep: Reporter) -> int:
    results = run_suite(args.name, args.instances, args.seed)
    failures = [r for r in results if not r[1]]
    for i, ok, desc in results:
        if not ok:
            rep.check(f"{args.name}[{i}]", False, desc)
    rep.check(f"{args.name}: {len(results) - len(failures)}/{len(results)} instances", not failures)
    if args.out:
        Path(args.out).write_text(_csv(["index", "ok", "instance"], results))
    return EXIT_COUNTEREXAMPLE if failures else EXIT_OK


COMMANDS = {
    "decay": cmd_decay,
    "harmonic": cmd_harmonic,
    "equiv": cmd_equiv,
    "commute-check": cmd_commute,
    "build-mu": cmd_build_mu,
    "entropy": cmd_entropy,
    "series": cmd_series,
    "suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; the input-error status here is 3
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Reporter(args.quiet)
    try:
        return COMMANDS[args.command](args, rep)
    except (GroupLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
