"""``skewlab`` command line: example reproductions, custom scenarios, verification."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import scenarios as S
from .bounds import L_GE_M, L_GT_M, M_GE_L, WeightParams
from .errors import DominanceViolation, SkewlabError
from .sampling import resolve_seed
from .verify import VerifyOptions, run_verify


def _weights(args) -> tuple:
    return (WeightParams(args.M1, args.L1, M_GE_L),
            WeightParams(args.M2, args.L2, L_GE_M),
            WeightParams(args.M3, args.L3, L_GT_M))


def _theta(args) -> dict:
    return S.theta_grid(args.theta_steps)


def _plot(csv_path, x, cols, out, title, **kw):
    from .plotting import plot_columns

    return plot_columns(csv_path, x, cols, out, title=title, **kw)


def cmd_example1(args) -> int:
    out = Path(args.out)
    w = _weights(args)
    surface = S.example1_config(theta=_theta(args), beta=args.beta, gamma=args.gamma, weights=w)
    _, csv_surface = S.run_to_files(surface, out, "example1_surface",
                                    {"contents": "bounds and tight-minus-prior differences over (theta, alpha)"})
    slice_alpha = 1 / 3 if args.alpha is None else args.alpha
    sl = S.example1_config(alpha=slice_alpha, theta=_theta(args), beta=args.beta,
                           gamma=args.gamma, weights=w)
    _, csv_slice = S.run_to_files(sl, out, "example1_slice",
                                  {"contents": f"theta slice at alpha={slice_alpha!r}"})
    print(f"wrote {csv_surface}")
    print(f"wrote {csv_slice}")
    if args.svg:
        print("wrote", _plot(csv_slice, "theta", ["sum_k", "tight", "prior1", "prior2", "prior3"],
                             out / "example1_slice.svg", f"Observables, alpha = {slice_alpha:.4g}"))
        print("wrote", _plot(csv_slice, "theta",
                             ["diff_tight_prior1", "diff_tight_prior2", "diff_tight_prior3"],
                             out / "example1_slice_diff.svg", "tight minus prior bounds"))
    return 0


def cmd_example2(args) -> int:
    out = Path(args.out)
    alpha = 0.25 if args.alpha is None else args.alpha
    cfg = S.example2_config(alpha=alpha, q=args.q, theta=_theta(args), beta=args.beta,
                            gamma=args.gamma, weights=_weights(args))
    _, path = S.run_to_files(cfg, out, "example2", {"contents": "channel bounds and optimal-minus-prior differences over theta"})
    print(f"wrote {path}")
    if args.svg:
        print("wrote", _plot(path, "theta",
                             ["sum_k", "optimal", "prior", "prior3", "prior2", "prior1"],
                             out / "example2.svg", f"Channels, alpha = {alpha:.4g}, q = {args.q:.4g}"))
        print("wrote", _plot(path, "theta",
                             ["diff_optimal_prior", "diff_optimal_prior3", "diff_optimal_prior2"],
                             out / "example2_diff.svg", "optimal minus prior bounds"))
    return 0


def cmd_example3(args) -> int:
    out = Path(args.out)
    alphas = [0.2, 1 / 3] if args.alpha is None else [args.alpha]
    cfg = S.example3_config(alpha=alphas, theta=_theta(args), use_printed_u3=args.use_printed_u3,
                            beta=args.beta, gamma=args.gamma, weights=_weights(args))
    _, path = S.run_to_files(cfg, out, "example3",
                             {"contents": "unitary bounds over theta per alpha", "u3": "printed" if args.use_printed_u3 else "exp(i pi sigma3/8)"})
    print(f"wrote {path}")
    if args.svg:
        for a in alphas:
            tag = f"{a:.4f}".replace(".", "p")
            print("wrote", _plot(path, "theta", ["sum_k", "tight", "prior"],
                                 out / f"example3_alpha{tag}.svg", f"Unitaries, alpha = {a:.4g}",
                                 filter_col="alpha", filter_value=a))
    return 0


def cmd_run(args) -> int:
    if not args.scenario:
        raise SkewlabError("run needs --scenario <path.json>")
    cfg = S.load_scenario(args.scenario)
    out = Path(cfg.output.get("dir", args.out))
    stem = cfg.output.get("stem", cfg.name)
    _, path = S.run_to_files(cfg, out, stem)
    print(f"wrote {path}")
    if args.svg or cfg.output.get("svg"):
        cols = (["sum_k", "optimal", "prior"] if cfg.kind == "channels"
                else ["sum_k", "tight", "prior"])
        if cfg.alpha.size == 1:
            print("wrote", _plot(path, "theta", cols, out / f"{stem}.svg", cfg.name))
        else:
            for a in cfg.alpha:
                tag = f"{a:.4f}".replace(".", "p")
                print("wrote", _plot(path, "theta", cols, out / f"{stem}_alpha{tag}.svg",
                                     f"{cfg.name}, alpha = {a:.4g}",
                                     filter_col="alpha", filter_value=float(a)))
    return 0


def cmd_verify(args) -> int:
    seed = resolve_seed(args.seed)
    opts = VerifyOptions(seed=seed, count=args.count, expect_fail=args.expect_fail)
    if args.count < 1:
        raise SkewlabError("--count must be >= 1")
    print(f"skewlab verify: seed={seed} count={args.count}")
    results = run_verify(opts, out_dir=args.out)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"FAILED families: {', '.join(failed)} (seed={seed})")
        return 1
    print("all property families passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=None)
    common.add_argument("--beta", type=float, default=None,
                        help="fixed beta (default: 1 - alpha)")
    common.add_argument("--gamma", type=float, default=0.5)
    common.add_argument("--q", type=float, default=0.3, help="channel noise parameter")
    common.add_argument("--theta-steps", type=int, default=S.THETA_STEPS)
    for name, val in (("M1", 2.0), ("L1", 1.0), ("M2", 1.0), ("L2", 2.0), ("M3", 1.0), ("L3", 2.0)):
        common.add_argument(f"--{name}", type=float, default=val)
    common.add_argument("--scenario", default=None)
    common.add_argument("--out", default="out")
    common.add_argument("--svg", action="store_true")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (falls back to $SKEWLAB_SEED)")
    common.add_argument("--use-printed-u3", action="store_true",
                        help="use the z rotation matrix as typeset instead of exp(i pi sigma3/8)")

    parser = argparse.ArgumentParser(prog="skewlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("example1", parents=[common], help="Pauli observables on a pure qubit state")
    sub.add_parser("example2", parents=[common], help="damping and bit-flip channels")
    sub.add_parser("example3", parents=[common], help="pi/4 rotation unitaries")
    sub.add_parser("run", parents=[common], help="run a JSON scenario")
    v = sub.add_parser("verify", parents=[common], help="seeded property sweeps")
    v.add_argument("--count", type=int, default=500)
    v.add_argument("--expect-fail", action="store_true",
                   help="inject a failing family to exercise counterexample dumps")
    return parser


COMMANDS = {
    "example1": cmd_example1,
    "example2": cmd_example2,
    "example3": cmd_example3,
    "run": cmd_run,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except DominanceViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(exc.dump, indent=2), file=sys.stderr)
        return 3
    except SkewlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
