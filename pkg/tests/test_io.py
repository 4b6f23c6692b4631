import numpy as np

from symnet import io
from symnet.analysis import flow_field, generalization_table
from symnet.groups import PatternSet, Permutation
from symnet.nets import Activation, IDENTITY
from symnet.training import TrainConfig, TrainResult, train


def test_pattern_set_round_trip(x):
    assert io.pattern_set_from_json(io.pattern_set_to_json(x)) == x


def test_pattern_set_validation():
    import pytest
    with pytest.raises(ValueError):
        io.pattern_set_from_json({"n": 4, "items": [[1, 0, 1]]})


def test_group_round_trip(group):
    assert io.group_from_json(io.group_to_json(group)) == group


def test_permutation_round_trip():
    s = Permutation((2, 0, 1))
    assert io.permutation_from_json(io.permutation_to_json(s)) == s


def test_weights_round_trip_exact(tmp_path, rng):
    w = rng.normal(size=(3, 3))
    path = tmp_path / "w.json"
    io.dump_json(path, io.weights_to_json(w))
    back = io.weights_from_json(io.load_json(path))
    assert np.array_equal(back, w)  # bit-exact through repr round-trip


def test_activation_round_trip():
    for act in (IDENTITY, Activation("tanh", -0.25), Activation("sigmoid", 3.0)):
        back = io.activation_from_json(io.activation_to_json(act))
        assert back == act


def test_family_round_trip(fam_x):
    back = io.family_from_json(io.family_to_json(fam_x))
    assert np.array_equal(back.particular, fam_x.particular)
    assert all(np.array_equal(a, b) for a, b in zip(back.basis, fam_x.basis))
    assert back.param_names == fam_x.param_names


def test_train_config_round_trip():
    cfg = TrainConfig(optimizer="adam", lr=0.005, init="gaussian", seed=9, l2=0.01)
    assert io.train_config_from_json(io.train_config_to_json(cfg)) == cfg


def test_train_result_round_trip(x):
    res = train(TrainConfig(init="zeros", seed=1), x)
    back = io.train_result_from_json(io.train_result_to_json(res))
    assert np.array_equal(back.weights, res.weights)
    assert back.final_loss == res.final_loss
    assert back.epochs == res.epochs and back.converged == res.converged
    assert back.config == res.config


def test_loss_curve_round_trip(tmp_path, x):
    res = train(TrainConfig(init="ones", seed=0), x)
    path = tmp_path / "curve.csv"
    io.write_loss_curve(path, res.losses)
    back = io.read_loss_curve(path)
    assert np.array_equal(back, res.losses)


def test_flow_field_csv(tmp_path):
    field = flow_field(np.eye(3), IDENTITY, points=2, n_steps=3)
    path = tmp_path / "field.csv"
    io.write_flow_field_csv(path, field)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "start_id,step,x1,x2,x3"
    assert len(lines) == 1 + 8 * 4


def test_generalization_csv(tmp_path, xp):
    rows = {"id": generalization_table(np.eye(3), IDENTITY, xp)}
    path = tmp_path / "table.csv"
    io.write_generalization_csv(path, rows)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "pattern,is_training,id"
    assert len(lines) == 9
    assert lines[1].startswith("0/1/0,1,")


def test_manifest_contents(tmp_path):
    path = tmp_path / "manifest.json"
    io.write_manifest(path, "train", {"input": "x.json"}, [12345], ["a.json"])
    m = io.load_json(path)
    assert m["command"] == "train"
    assert m["seeds"] == [12345]
    assert m["rng_algorithm"] == "numpy PCG64"
    assert m["tool_version"] == io.TOOL_VERSION
    assert m["artifacts"] == ["a.json"]
    assert "timestamp" in m
