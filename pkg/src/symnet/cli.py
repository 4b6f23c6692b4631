"""Command-line front end.

Subcommands: symmetry, train, reproduce, arc, flowfield.  Exit codes:
0 success, 1 check failure, 2 usage or parse error, 3 numeric failure.
Every command writes a run manifest next to its artifacts.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io
from .analysis import fit_family, flow_field, spectrum, symmetry_deviation
from .errors import DivergenceError, NumericError, SymnetError
from .families import solve_linear_family
from .groups import PatternSet, as_pattern, orbits, symmetry_group
from .nets import Activation, build_template
from .training import TrainConfig, train

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def arc_predict(training: PatternSet, test):
    """Images of the test pattern under the training set's symmetry group.

    Returns [(permutation, image), ...] over the whole group; non-identity
    entries are the predictions.
    """
    test = as_pattern(test)
    if test.shape != (training.n,):
        raise ValueError("test pattern length does not match the training set")
    group = symmetry_group(training)
    out = []
    seen = []
    for s in group:
        img = s.act(test)
        if any(np.array_equal(img, p) for p in seen):
            continue
        seen.append(img)
        out.append((s, img))
    return out


def _default_seed(value):
    if value is not None:
        return value
    env = os.environ.get("SYMNET_SEED")
    return int(env) if env else 0


def _load_patterns(path) -> PatternSet:
    return io.pattern_set_from_json(io.load_json(path))


def _parse_pattern(text):
    return [float(v) for v in text.replace(",", " ").split()]


def _out_dir(args):
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    return out


def cmd_symmetry(args) -> int:
    x = _load_patterns(args.input)
    group = symmetry_group(x)
    orbit_partition = orbits(x, group)
    template = build_template(x.n, group)

    print(f"symmetry group ({len(group)} elements): {group}")
    print(f"orbits: {len(orbit_partition)}")
    for k, block in enumerate(orbit_partition):
        print(f"  orbit {k}: {[a.tolist() for a in block]}")
    print(f"template classes ({template.n_params} free parameters):")
    for name, cls in zip(template.param_names, template.classes):
        pairs = ", ".join(f"({i + 1},{j + 1})" for i, j in cls)
        print(f"  {name}: {pairs}")

    out = _out_dir(args)
    report = {
        "group": io.group_to_json(group),
        "group_display": [str(s) for s in group],
        "orbits": [io.pattern_set_to_json(b) for b in orbit_partition],
        "template_classes": [list(map(list, cls)) for cls in template.classes],
        "param_names": list(template.param_names),
    }
    report_path = os.path.join(out, "symmetry.json")
    io.dump_json(report_path, report)
    io.write_manifest(os.path.join(out, "symmetry_manifest.json"), "symmetry",
                      {"input": args.input}, [], [report_path])
    return EXIT_OK


def cmd_train(args) -> int:
    x = _load_patterns(args.input)
    act = Activation(args.activation, args.c)
    seed = _default_seed(args.seed)
    cfg = TrainConfig(optimizer=args.optimizer, lr=args.lr, max_epochs=args.epochs,
                      tol=args.tol, init=args.init, sigma=args.sigma, seed=seed,
                      l2=args.l2)
    result = train(cfg, x, act)

    group = symmetry_group(x)
    family = solve_linear_family(x)
    fit = fit_family(result.weights, family)
    spec = spectrum(result.weights)
    dev = symmetry_deviation(result.weights, group)

    print(f"converged={result.converged} after {result.epochs} epochs, "
          f"final loss={result.final_loss:.3e}")
    print(f"family params={np.round(fit.params, 6).tolist()}, residual={fit.residual:.3e}")
    print(f"eigenvalue moduli={np.round(np.abs(spec.eigenvalues), 6).tolist()}")
    print(f"symmetry deviation={dev:.3e}")

    out = _out_dir(args)
    result_path = os.path.join(out, "train_result.json")
    curve_path = os.path.join(out, "loss_curve.csv")
    summary_path = os.path.join(out, "train_summary.json")
    io.dump_json(result_path, io.train_result_to_json(result))
    io.write_loss_curve(curve_path, result.losses)
    io.dump_json(summary_path, {
        "family_params": fit.params.tolist(),
        "family_residual": fit.residual,
        "eigenvalues": [[v.real, v.imag] for v in spec.eigenvalues],
        "symmetry_deviation": dev,
        "activation": io.activation_to_json(act),
    })
    io.write_manifest(os.path.join(out, "train_manifest.json"), "train",
                      {"input": args.input, "activation": io.activation_to_json(act),
                       "config": io.train_config_to_json(cfg)},
                      [seed], [result_path, curve_path, summary_path])
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import DEFAULT_SEED, run_all

    seed = args.seed if args.seed is not None else DEFAULT_SEED
    out = _out_dir(args)
    checks = run_all(out_dir=out, quick=args.quick, seed=seed)
    for c in checks:
        print(c.line)
    io.write_manifest(os.path.join(out, "reproduce_manifest.json"), "reproduce",
                      {"quick": args.quick, "seed": seed}, [seed],
                      [os.path.join(out, "acceptance.txt")])
    n_failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - n_failed}/{len(checks)} checks passed")
    return EXIT_OK if n_failed == 0 else EXIT_CHECK_FAILED


def cmd_arc(args) -> int:
    training = _load_patterns(args.input)
    test = _parse_pattern(args.test)
    images = arc_predict(training, test)
    predictions = [(s, img) for s, img in images if not s.is_identity()]
    if not predictions:
        if len(symmetry_group(training)) == 1:
            print("warning: identity-only group, the training set has no "
                  "non-trivial symmetry", file=sys.stderr)
        print(f"prediction: {list(test)} (test pattern is fixed by the group)")
    else:
        for s, img in predictions:
            print(f"prediction via {s}: {img.tolist()}")
    out = _out_dir(args)
    report_path = os.path.join(out, "arc_prediction.json")
    io.dump_json(report_path, {
        "test": list(map(float, test)),
        "orbit": [{"rule": str(s), "image": img.tolist()} for s, img in images],
        "predictions": [img.tolist() for _, img in predictions],
    })
    io.write_manifest(os.path.join(out, "arc_manifest.json"), "arc",
                      {"input": args.input, "test": list(map(float, test))},
                      [], [report_path])
    return EXIT_OK


def cmd_flowfield(args) -> int:
    w = io.weights_from_json(io.load_json(args.weights))
    act = Activation(args.activation, args.c)
    field = flow_field(w, act, bounds=tuple(args.bounds), points=args.points,
                       n_steps=args.n)
    out = _out_dir(args)
    csv_path = os.path.join(out, "flowfield.csv")
    io.write_flow_field_csv(csv_path, field)
    print(f"{field.trajectories.shape[0]} trajectories of {args.n + 1} points -> {csv_path}")
    io.write_manifest(os.path.join(out, "flowfield_manifest.json"), "flowfield",
                      {"weights": args.weights, "activation": io.activation_to_json(act),
                       "points": args.points, "bounds": list(args.bounds), "n": args.n},
                      [], [csv_path])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symnet",
        description="Symmetry-constrained auto-associative networks: "
                    "analysis, training, and reproduction pipeline.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symmetry", help="group, orbits, and weight template of a pattern set")
    p.add_argument("--input", required=True, help="pattern-set JSON file")
    p.add_argument("--out", help="output directory (default: current)")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("train", help="train a network and summarize the result")
    p.add_argument("--input", required=True, help="pattern-set JSON file")
    p.add_argument("--activation", default="identity",
                   choices=["identity", "tanh", "sigmoid"])
    p.add_argument("--c", type=float, default=None,
                   help="activation shift (tanh) or gain (sigmoid)")
    p.add_argument("--optimizer", default="sgd", choices=["sgd", "adam"])
    p.add_argument("--init", default="zeros",
                   choices=["zeros", "ones", "uniform", "gaussian"])
    p.add_argument("--sigma", type=float, default=0.05, help="gaussian init std dev")
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (falls back to SYMNET_SEED, then 0)")
    p.add_argument("--lr", type=float, default=None)
    p.add_argument("--epochs", type=int, default=200000)
    p.add_argument("--tol", type=float, default=None, help="convergence threshold on loss")
    p.add_argument("--l2", type=float, default=0.0)
    p.add_argument("--out", help="output directory (default: current)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("reproduce", help="run the full reproduction battery")
    p.add_argument("--out", help="output directory (default: current)")
    p.add_argument("--quick", action="store_true",
                   help="smaller ensemble with looser mean tolerance")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("arc", help="predict the symmetry-rule image of a test pattern")
    p.add_argument("--input", required=True, help="training pattern-set JSON file")
    p.add_argument("--test", required=True, help="test pattern, e.g. '1,1,0'")
    p.add_argument("--out", help="output directory (default: current)")
    p.set_defaults(func=cmd_arc)

    p = sub.add_parser("flowfield", help="iterate a mesh of start states and export trajectories")
    p.add_argument("--weights", required=True, help="weight-matrix JSON file")
    p.add_argument("--activation", default="identity",
                   choices=["identity", "tanh", "sigmoid"])
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--points", type=int, default=5, help="mesh points per axis")
    p.add_argument("--bounds", type=float, nargs=2, default=[0.0, 1.0],
                   metavar=("LO", "HI"))
    p.add_argument("--n", type=int, default=6, help="iteration steps per trajectory")
    p.add_argument("--out", help="output directory (default: current)")
    p.set_defaults(func=cmd_flowfield)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DivergenceError, NumericError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError, KeyError, SymnetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
