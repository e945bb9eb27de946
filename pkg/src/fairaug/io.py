"""Plain-text formats: edge lists, feature/sensitive/id-map/prediction CSVs,
key=value pipeline configs and JSON reports."""

from __future__ import annotations

import csv
import hashlib
import json
import math
import re
from pathlib import Path

import numpy as np

from .augment import EdgeDeletionConfig, MaskingConfig, NodeSamplingConfig, PipelineConfig
from .errors import InputError
from .graph import Graph, build_graph, check_features
from .metrics import BinaryPredictions

JSON_DIGITS = 12


def _fmt(x: float) -> str:
    return repr(float(x))


_NODES_COMMENT = re.compile(r"^\s*#\s*nodes\s+(\d+)")


def read_edge_list(path, num_nodes: int | None = None) -> Graph:
    """Whitespace-separated id pairs, ``#`` comments ignored.

    The node count is, in order of preference: ``num_nodes``, a leading
    ``# nodes N`` comment (as written by :func:`write_edge_list`), or the
    largest id plus one.
    """
    pairs = []
    declared = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            head = _NODES_COMMENT.match(line)
            if head and declared is None:
                declared = int(head.group(1))
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"{path}:{lineno}: expected two node ids, got {line!r}")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise InputError(f"{path}:{lineno}: node ids must be integers") from None
    if num_nodes is None:
        num_nodes = declared if declared is not None else 1 + max((max(p) for p in pairs), default=-1)
    if any(min(p) < 0 for p in pairs):
        raise InputError(f"{path}: negative node id")
    return build_graph(np.array(pairs, dtype=np.int64).reshape(-1, 2), num_nodes)


def write_edge_list(graph: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# nodes {graph.num_nodes} edges {graph.num_edges}\n")
        for u, v in graph.edges:
            fh.write(f"{u} {v}\n")


def _read_rows(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise InputError(f"{path}: empty file")
    return rows[0], rows[1:]


def _dense_ids(ids, path):
    ids = np.asarray(ids, dtype=np.int64)
    if len(np.unique(ids)) != len(ids):
        raise InputError(f"{path}: duplicate node ids")
    if len(ids) and (ids.min() != 0 or ids.max() != len(ids) - 1):
        raise InputError(f"{path}: node ids must be exactly 0..{len(ids) - 1}")
    return np.argsort(ids)


def read_features(path):
    """Returns ``(X, column_names)``; rows are ordered by node id."""
    header, body = _read_rows(path)
    try:
        ids = [int(r[0]) for r in body]
        vals = np.array([[float(c) for c in r[1:]] for r in body], dtype=float)
    except (ValueError, IndexError):
        raise InputError(f"{path}: malformed feature row") from None
    vals = vals.reshape(len(body), len(header) - 1)
    order = _dense_ids(ids, path)
    return check_features(vals[order]), header[1:]


def write_features(X, path, columns=None) -> None:
    X = np.asarray(X, dtype=float)
    columns = list(columns) if columns is not None else [f"f{i}" for i in range(X.shape[1])]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id"] + columns)
        for i, row in enumerate(X):
            w.writerow([i] + [_fmt(v) for v in row])


def read_sensitive(path, positive_class: str | None = None) -> np.ndarray:
    """Two-column CSV (node id, value).

    Values other than 0/1 need ``positive_class``; the attribute is then
    one-vs-rest ``value == positive_class``.
    """
    _, body = _read_rows(path)
    try:
        ids = [int(r[0]) for r in body]
        raw = [r[1].strip() for r in body]
    except (ValueError, IndexError):
        raise InputError(f"{path}: malformed sensitive-attribute row") from None
    order = _dense_ids(ids, path)
    raw = [raw[i] for i in order]
    if positive_class is not None:
        return np.array([v == str(positive_class) for v in raw], dtype=np.int8)
    if not set(raw) <= {"0", "1"}:
        raise InputError(f"{path}: non-binary sensitive values; pass a positive class to binarize")
    return np.array([int(v) for v in raw], dtype=np.int8)


def write_sensitive(s, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "s"])
        for i, v in enumerate(np.asarray(s)):
            w.writerow([i, int(v)])


def write_id_map(id_map, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["new_id", "original_id"])
        for i, v in enumerate(np.asarray(id_map)):
            w.writerow([i, int(v)])


def read_id_map(path) -> np.ndarray:
    _, body = _read_rows(path)
    return np.array([int(r[1]) for r in body], dtype=np.int64)


def read_predictions(path) -> BinaryPredictions:
    """Node (``id,y,yhat[,score]``) or edge (``src,dst,y,yhat[,score]``) predictions."""
    header, body = _read_rows(path)
    cols = [h.strip().lower() for h in header]
    edge_mode = cols[:2] == ["src", "dst"]
    expected = (["src", "dst"] if edge_mode else ["id"]) + ["y", "yhat"]
    if cols[:len(expected)] != expected or len(cols) not in (len(expected), len(expected) + 1):
        raise InputError(f"{path}: header must be {','.join(expected)}[,score]")
    if len(cols) == len(expected) + 1 and cols[-1] != "score":
        raise InputError(f"{path}: optional last column must be 'score'")
    try:
        data = np.array([[float(c) for c in r] for r in body], dtype=float).reshape(-1, len(cols))
    except ValueError:
        raise InputError(f"{path}: non-numeric prediction row") from None
    k = 2 if edge_mode else 1
    ids = data[:, :2].astype(np.int64) if edge_mode else data[:, 0].astype(np.int64)
    score = data[:, k + 2] if len(cols) > k + 2 else None
    return BinaryPredictions(ids, data[:, k].astype(np.int8), data[:, k + 1].astype(np.int8), score)


_BOOL = {"true": True, "1": True, "yes": True, "on": True,
         "false": False, "0": False, "no": False, "off": False}
CONFIG_KEYS = ("enable_ns", "enable_ed", "enable_ea", "enable_fm", "alpha", "pi",
               "removal_cap", "min_fraction_chi", "min_fraction_omega", "phi", "seed")


def parse_config(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {lineno}: expected key=value")
        key, val = (p.strip() for p in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise InputError(f"config line {lineno}: unknown key {key!r}")
        try:
            if key.startswith("enable_"):
                out[key] = _BOOL[val.lower()]
            elif key == "seed":
                out[key] = int(val)
            else:
                out[key] = float(val)
        except (KeyError, ValueError):
            raise InputError(f"config line {lineno}: bad value for {key}: {val!r}") from None
    return out


def config_from_mapping(m: dict, seed: int | None = None) -> PipelineConfig:
    d = PipelineConfig()
    return PipelineConfig(
        enable_ns=m.get("enable_ns", d.enable_ns),
        enable_ed=m.get("enable_ed", d.enable_ed),
        enable_ea=m.get("enable_ea", d.enable_ea),
        enable_fm=m.get("enable_fm", d.enable_fm),
        masking=MaskingConfig(m.get("alpha", d.masking.alpha)),
        sampling=NodeSamplingConfig(
            m.get("min_fraction_chi", d.sampling.min_fraction_chi_dominant),
            m.get("min_fraction_omega", d.sampling.min_fraction_omega_dominant),
            m.get("phi", d.sampling.phi)),
        deletion=EdgeDeletionConfig(m.get("pi", d.deletion.pi), m.get("removal_cap")),
        seed=seed if seed is not None else m.get("seed", d.seed),
    )


def read_config(path, seed: int | None = None) -> PipelineConfig:
    return config_from_mapping(parse_config(Path(path).read_text()), seed)


def _round_floats(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{JSON_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round_floats(obj.tolist())
    if isinstance(obj, np.generic):
        return _round_floats(obj.item())
    return obj


def dumps(obj) -> str:
    return json.dumps(_round_floats(obj), indent=2, sort_keys=False) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
