"""JSON and CSV serialization for every file format the tool reads or writes.

Floats go through Python's shortest-round-trip repr (json default), so every
write-then-read round-trip is exact.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time

import numpy as np

from .families import LinearFamily
from .groups import PatternSet, Permutation, SymmetryGroup
from .nets import Activation
from .training import TrainConfig, TrainResult, RNG_ALGORITHM

TOOL_VERSION = "0.1.0"


# --- pattern sets ---------------------------------------------------------

def pattern_set_to_json(x: PatternSet) -> dict:
    return {"n": x.n, "items": [a.tolist() for a in x]}


def pattern_set_from_json(obj: dict) -> PatternSet:
    ps = PatternSet(obj["items"])
    if ps.n != obj["n"]:
        raise ValueError(f"declared n={obj['n']} does not match item length {ps.n}")
    return ps


# --- permutations and groups ---------------------------------------------

def permutation_to_json(s: Permutation) -> list:
    return list(s.map)


def permutation_from_json(obj) -> Permutation:
    return Permutation(tuple(obj))


def group_to_json(g: SymmetryGroup) -> list:
    return [permutation_to_json(s) for s in g]


def group_from_json(obj) -> SymmetryGroup:
    return SymmetryGroup([permutation_from_json(m) for m in obj])


# --- matrices and activations --------------------------------------------

def weights_to_json(w) -> dict:
    w = np.asarray(w, dtype=float)
    return {"n": w.shape[0], "rows": w.tolist()}


def weights_from_json(obj) -> np.ndarray:
    w = np.asarray(obj["rows"], dtype=float)
    if w.shape != (obj["n"], obj["n"]):
        raise ValueError(f"declared n={obj['n']} does not match rows shape {w.shape}")
    return w


def activation_to_json(act: Activation) -> dict:
    return {"kind": act.kind, "c": act.c}


def activation_from_json(obj) -> Activation:
    return Activation(obj["kind"], obj.get("c"))


# --- linear families ------------------------------------------------------

def family_to_json(f: LinearFamily) -> dict:
    return {
        "particular": weights_to_json(f.particular),
        "basis": [weights_to_json(b) for b in f.basis],
        "param_names": list(f.param_names),
        "training_set": pattern_set_to_json(f.training_set),
    }


def family_from_json(obj) -> LinearFamily:
    return LinearFamily(
        weights_from_json(obj["particular"]),
        tuple(weights_from_json(b) for b in obj["basis"]),
        tuple(obj["param_names"]),
        pattern_set_from_json(obj["training_set"]),
    )


# --- training configs and results ----------------------------------------

def train_config_to_json(cfg: TrainConfig) -> dict:
    return dataclasses.asdict(cfg)


def train_config_from_json(obj) -> TrainConfig:
    return TrainConfig(**obj)


def train_result_to_json(res: TrainResult) -> dict:
    return {
        "weights": weights_to_json(res.weights),
        "final_loss": res.final_loss,
        "epochs": res.epochs,
        "converged": res.converged,
        "seed": res.seed,
        "config": train_config_to_json(res.config),
    }


def train_result_from_json(obj) -> TrainResult:
    return TrainResult(
        weights_from_json(obj["weights"]),
        np.array([obj["final_loss"]]),
        obj["epochs"],
        obj["converged"],
        train_config_from_json(obj["config"]),
        obj["seed"],
    )


def write_loss_curve(path, losses):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "loss"])
        for epoch, loss in enumerate(losses):
            writer.writerow([epoch, repr(float(loss))])


def read_loss_curve(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        return np.array([float(row[1]) for row in reader])


# --- analysis artifacts ---------------------------------------------------

def write_flow_field_csv(path, field):
    """Columns: start_id, step, x1..xN."""
    n = field.trajectories.shape[2]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["start_id", "step"] + [f"x{i + 1}" for i in range(n)])
        for sid, traj in enumerate(field.trajectories):
            for step, state in enumerate(traj):
                writer.writerow([sid, step] + [repr(float(v)) for v in state])


def write_generalization_csv(path, rows_by_activation):
    """Table-1-style CSV: one row per pattern, one loss column per activation.

    rows_by_activation maps a column label to the row list produced by
    generalization_table; all lists must share the same pattern order.
    """
    labels = list(rows_by_activation)
    first = rows_by_activation[labels[0]]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pattern", "is_training"] + labels)
        for i, (pattern, is_train, _) in enumerate(first):
            losses = [repr(float(rows_by_activation[lab][i][2])) for lab in labels]
            pat = "/".join(str(int(v)) if v == int(v) else repr(v) for v in pattern)
            writer.writerow([pat, int(is_train)] + losses)


# --- run manifests --------------------------------------------------------

def write_manifest(path, command, config: dict, seeds, artifacts):
    manifest = {
        "command": command,
        "config": config,
        "seeds": list(seeds),
        "rng_algorithm": RNG_ALGORITHM,
        "artifacts": [str(p) for p in artifacts],
        "tool_version": TOOL_VERSION,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return manifest


def dump_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
