"""2-D reduction views aligned index-for-index with a run archive.

A view holds one (points x 2) coordinate block per generation, ordered
parent-then-offspring exactly like the generation records. Views persist
beside the run as `view_<method>.jsonl`, one line per generation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .archive import RunArchive, dumps_canonical
from .pca import CovariancePca
from .tsne import ExactTsne

VIEW_METHODS = ("identity", "pca", "tsne")
_VIEW_FILE_RE = re.compile(r"view_([a-z0-9_]+)\.jsonl$")


@dataclass(eq=False)
class ReducedView:
    method: str
    coords: list[np.ndarray]  # one (n_points, 2) block per generation

    @property
    def generations(self) -> int:
        return len(self.coords)


def pooled_bcs(archive: RunArchive):
    """All archived BCs as one float matrix, plus per-generation point counts."""
    rows = []
    counts = []
    for record in archive.iter_generations():
        rows.append(np.asarray(record.parent_bc, dtype=np.float64))
        rows.extend(np.asarray(o.bc, dtype=np.float64) for o in record.offspring)
        counts.append(1 + len(record.offspring))
    if not rows:
        raise ValueError("archive has no readable generations")
    return np.vstack(rows), counts


def _split(coords: np.ndarray, counts: list[int]) -> list[np.ndarray]:
    out = []
    start = 0
    for c in counts:
        out.append(coords[start:start + c])
        start += c
    return out


def reduce_run(archive: RunArchive, method: str,
               options: dict | None = None) -> ReducedView:
    """Reduce every archived BC to 2-D under one method.

    identity requires 2-D BCs and copies them; pca fits one plane on the
    BCs pooled across all generations and projects everything onto it;
    tsne embeds the pooled matrix jointly. Options are forwarded to the
    reducer's constructor.
    """
    if method not in VIEW_METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {VIEW_METHODS}")
    options = dict(options or {})
    X, counts = pooled_bcs(archive)
    if method == "identity":
        if X.shape[1] != 2:
            raise ValueError(
                f"identity view requires 2-D BCs, run has bc_dimension "
                f"{X.shape[1]}")
        coords = X
    elif method == "pca":
        coords = CovariancePca(n_components=2, **options).fit(X).transform(X)
    else:
        coords = ExactTsne(**options).fit_transform(X)
    return ReducedView(method=method, coords=_split(coords, counts))


def view_filename(method: str) -> str:
    return f"view_{method}.jsonl"


def write_view(run_dir, view: ReducedView) -> Path:
    path = Path(run_dir) / view_filename(view.method)
    lines = []
    for g, block in enumerate(view.coords):
        lines.append(dumps_canonical(
            {"g": g, "coords": np.asarray(block, dtype=np.float64).tolist()}))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_view(run_dir, method: str) -> ReducedView:
    path = Path(run_dir) / view_filename(method)
    if not path.is_file():
        raise FileNotFoundError(f"no {path.name} in {run_dir}")
    coords = []
    with path.open() as fh:
        for g, raw in enumerate(fh):
            obj = json.loads(raw)
            if obj["g"] != g:
                raise ValueError(f"{path.name} line {g + 1} is generation "
                                 f"{obj['g']}, expected {g}")
            coords.append(np.asarray(obj["coords"], dtype=np.float64))
    return ReducedView(method=method, coords=coords)


def list_views(run_dir) -> list[str]:
    methods = []
    for path in sorted(Path(run_dir).glob("view_*.jsonl")):
        match = _VIEW_FILE_RE.search(path.name)
        if match:
            methods.append(match.group(1))
    return methods
