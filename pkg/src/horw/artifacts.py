"""Deterministic artifact writers.

Every file starts with the same three-field metadata header (tool
version, hash of the resolved configuration, rng seed) so a result can
be traced back to the exact invocation. Writers avoid timestamps,
environment details and dict-order dependence; rerunning an experiment
with the same configuration must reproduce every byte.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import __version__
from .walk import RankResult


def config_hash(config: Mapping) -> str:
    """12-hex-digit digest of the canonical JSON form of a config dict."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def build_metadata(config: Mapping, rng_seed: int | None = None) -> dict:
    return {
        "tool_version": __version__,
        "config_hash": config_hash(config),
        "rng_seed": rng_seed,
    }


def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def _jsonable(obj):
    """Recursively make a payload JSON-safe (inf -> None, arrays -> lists)."""
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _jsonable(obj.tolist())
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def write_csv(
    path: Path, metadata: Mapping, columns: Sequence[str], rows: Iterable[Sequence]
) -> Path:
    lines = [f"# {k}: {v}" for k, v in metadata.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_json(path: Path, metadata: Mapping, payload: Mapping) -> Path:
    doc = {"metadata": dict(metadata)}
    doc.update(_jsonable(payload))
    path.write_text(
        json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n",
        encoding="utf-8",
    )
    return path


def write_jsonl(path: Path, metadata: Mapping, rows: Iterable[Mapping]) -> Path:
    """JSON-lines file; the first record carries the metadata."""
    out = [json.dumps({"metadata": dict(metadata)}, sort_keys=True, allow_nan=False)]
    for row in rows:
        out.append(json.dumps(_jsonable(row), sort_keys=True, allow_nan=False))
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path


def write_coo_text(path: Path, metadata: Mapping, matrix) -> Path:
    """Sparse matrix in coordinate text form: one 'row col value' per line,
    sorted by (row, col)."""
    coo = matrix.tocoo()
    order = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
    lines = [f"# {k}: {v}" for k, v in metadata.items()]
    lines.append(f"# shape: {matrix.shape[0]} {matrix.shape[1]}")
    for r, c, v in order:
        lines.append(f"{r} {c} {_fmt(v if v % 1 else int(v))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def rank_rows(result: RankResult) -> list[tuple[str, float, int]]:
    """(label, score, rank) rows in rank order, rank starting at 1."""
    rows = []
    for pos, node in enumerate(result.order, start=1):
        node = int(node)
        rows.append((result.labels[node], float(result.scores[node]), pos))
    return rows


def write_rank_csv(path: Path, metadata: Mapping, result: RankResult) -> Path:
    return write_csv(path, metadata, ("label", "score", "rank"), rank_rows(result))


def write_rank_json(path: Path, metadata: Mapping, result: RankResult) -> Path:
    payload = {
        "method": result.method,
        "s": result.s,
        "iterations": result.iterations,
        "residual": result.residual,
        "degenerate": result.degenerate,
        "nodes": [
            {"label": lab, "score": sc, "rank": rk} for lab, sc, rk in rank_rows(result)
        ],
    }
    return write_json(path, metadata, payload)
