import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from fairaug import io
from fairaug.augment import PipelineConfig
from fairaug.errors import InputError
from fairaug.graph import build_graph


def test_edge_list_round_trip_keeps_isolated_tail(tmp_path):
    g = build_graph([(0, 3), (1, 2)], 6)
    io.write_edge_list(g, tmp_path / "g.txt")
    assert io.read_edge_list(tmp_path / "g.txt") == g


def test_edge_list_comments_and_explicit_count(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# some graph\n0 1  # first\n\n1 2\n2 1\n")
    g = io.read_edge_list(p, num_nodes=5)
    assert g.num_nodes == 5 and g.num_edges == 2


@pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "0 -1\n"])
def test_edge_list_malformed(tmp_path, text):
    p = tmp_path / "g.txt"
    p.write_text(text)
    with pytest.raises(InputError):
        io.read_edge_list(p)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 6), st.integers(1, 4)),
              elements=st.floats(-1e6, 1e6, allow_nan=False)))
def test_features_round_trip_exact(tmp_path_factory, X):
    p = tmp_path_factory.mktemp("f") / "x.csv"
    io.write_features(X, p)
    Y, cols = io.read_features(p)
    assert np.array_equal(X, Y) and cols == [f"f{i}" for i in range(X.shape[1])]


def test_features_reordered_ids(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("id,a,b\n1,3,4\n0,1,2\n")
    X, cols = io.read_features(p)
    assert X.tolist() == [[1, 2], [3, 4]] and cols == ["a", "b"]


@pytest.mark.parametrize("text", ["id,a\n0,1\n0,2\n", "id,a\n0,1\n2,2\n", "id,a\n0,x\n", "id,a\n0,nan\n"])
def test_features_bad(tmp_path, text):
    p = tmp_path / "x.csv"
    p.write_text(text)
    with pytest.raises(InputError):
        io.read_features(p)


def test_sensitive_round_trip(tmp_path):
    s = np.array([0, 1, 1, 0], dtype=np.int8)
    io.write_sensitive(s, tmp_path / "s.csv")
    assert np.array_equal(io.read_sensitive(tmp_path / "s.csv"), s)


def test_sensitive_multiclass_needs_positive_class(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("id,region\n0,north\n1,south\n2,east\n")
    with pytest.raises(InputError):
        io.read_sensitive(p)
    assert io.read_sensitive(p, "south").tolist() == [0, 1, 0]


def test_id_map_round_trip(tmp_path):
    io.write_id_map([3, 5, 9], tmp_path / "m.csv")
    assert io.read_id_map(tmp_path / "m.csv").tolist() == [3, 5, 9]


def test_predictions_node_and_edge(tmp_path):
    p = tmp_path / "p.csv"
    p.write_text("id,y,yhat,score\n0,1,1,0.9\n1,0,1,0.6\n")
    r = io.read_predictions(p)
    assert not r.is_edges and r.score.tolist() == [0.9, 0.6]
    p.write_text("src,dst,y,yhat\n0,1,1,0\n2,3,0,0\n")
    r = io.read_predictions(p)
    assert r.is_edges and r.ids.tolist() == [[0, 1], [2, 3]] and r.score is None


def test_predictions_bad_header(tmp_path):
    p = tmp_path / "p.csv"
    p.write_text("id,label,yhat\n0,1,1\n")
    with pytest.raises(InputError):
        io.read_predictions(p)


def test_config_parse_and_defaults():
    cfg = io.config_from_mapping(io.parse_config(
        "# comment\nenable_ns = false\nalpha=0.3\npi = 0.8\nphi=0.1\nseed=9\n"))
    assert cfg.enable_ns is False and cfg.enable_ed is True
    assert cfg.masking.alpha == 0.3 and cfg.deletion.pi == 0.8 and cfg.deletion.cap == 0.4
    assert cfg.sampling.phi == 0.1 and cfg.seed == 9
    assert io.config_from_mapping({}, seed=4) == PipelineConfig(seed=4)


@pytest.mark.parametrize("text", ["alpha 0.3", "beta=1", "enable_fm=maybe", "pi=2"])
def test_config_errors(text):
    with pytest.raises(InputError):
        io.config_from_mapping(io.parse_config(text))


def test_config_keys_cover_flat_snapshot():
    assert set(PipelineConfig().to_flat()) == set(io.CONFIG_KEYS)


def test_json_rounding_and_nonfinite():
    out = json.loads(io.dumps({"a": 1 / 3, "b": [np.float64(2 / 3), np.inf], "c": np.arange(2)}))
    assert out == {"a": 0.333333333333, "b": [0.666666666667, None], "c": [0, 1]}


def test_sha256_file(tmp_path):
    p = tmp_path / "a"
    p.write_bytes(b"abc")
    assert io.sha256_file(p).startswith("ba7816bf")
