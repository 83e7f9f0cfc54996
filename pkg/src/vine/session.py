"""In-memory index over a loaded run and its reduction views.

A session is immutable after load: percentile bins, the fitness curve,
point slices and nearest-point queries are all pure reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from ._validation import check_vector
from .archive import RunArchive, read_run
from .views import ReducedView, list_views, read_view

BIN_COUNT = 5
PARENT_BIN = BIN_COUNT - 1  # parents are rendered distinctly, not by bin


def percentile_bins(fitnesses, bins: int = BIN_COUNT) -> np.ndarray:
    """Percentile bin label (0..bins-1) per fitness.

    Percentiles come from average ranks over (n-1) so ties share a bin and
    distinct fitnesses spread evenly; a single entry gets bin 0.
    """
    f = check_vector(fitnesses, name="fitnesses")
    n = f.shape[0]
    if n == 0:
        raise ValueError("fitnesses must be non-empty")
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    p = (rankdata(f, method="average") - 1.0) / (n - 1)
    return np.minimum(np.floor(p * bins), bins - 1).astype(np.int64)


@dataclass(eq=False)
class SlicePoint:
    index: int  # -1 = parent, 0..n-1 = offspring
    coords: np.ndarray
    fitness: float
    bin: int
    is_parent: bool


@dataclass(eq=False)
class PointSlice:
    g: int
    points: list[SlicePoint]


class Session:
    """One loaded run: archive records plus every persisted view."""

    def __init__(self, archive: RunArchive, records: list, views: dict):
        self.archive = archive
        self.records = records
        self.views = views

    @property
    def run_id(self) -> str:
        return self.archive.manifest.run_id

    @property
    def generations(self) -> int:
        return len(self.records)


def load_session(run_dir) -> Session:
    archive = read_run(run_dir)
    records = list(archive.iter_generations())
    views = {}
    for method in list_views(run_dir):
        view = read_view(run_dir, method)
        _check_alignment(view, records)
        views[method] = view
    return Session(archive, records, views)


def _check_alignment(view: ReducedView, records: list) -> None:
    if view.generations != len(records):
        raise ValueError(
            f"view {view.method!r} covers {view.generations} generations, "
            f"archive has {len(records)}")
    for g, (block, record) in enumerate(zip(view.coords, records)):
        expected = 1 + len(record.offspring)
        if block.shape != (expected, 2):
            raise ValueError(
                f"view {view.method!r} generation {g} has shape "
                f"{block.shape}, expected {(expected, 2)}")


def _check_generation(session: Session, g: int) -> None:
    if not 0 <= g < session.generations:
        raise IndexError(f"generation {g} out of range "
                         f"[0, {session.generations})")


def _get_view(session: Session, view_id: str) -> ReducedView:
    try:
        return session.views[view_id]
    except KeyError:
        raise ValueError(f"unknown view {view_id!r}, loaded views: "
                         f"{sorted(session.views)}") from None


def generation_points(session: Session, g: int, view_id: str) -> PointSlice:
    """Parent plus offspring of one generation under one view.

    Bins are percentiles over that generation's offspring fitnesses only;
    the parent is excluded from the pool and carries the top bin label.
    """
    _check_generation(session, g)
    view = _get_view(session, view_id)
    record = session.records[g]
    coords = view.coords[g]
    offspring_fitnesses = np.array([o.fitness for o in record.offspring])
    bins = percentile_bins(offspring_fitnesses)
    points = [SlicePoint(index=-1, coords=coords[0],
                         fitness=float(record.parent_fitness),
                         bin=PARENT_BIN, is_parent=True)]
    for i, entry in enumerate(record.offspring):
        points.append(SlicePoint(index=i, coords=coords[1 + i],
                                 fitness=float(entry.fitness),
                                 bin=int(bins[i]), is_parent=False))
    return PointSlice(g=g, points=points)


def fitness_curve(session: Session) -> np.ndarray:
    """Parent fitness per generation, in generation order."""
    return np.array([r.parent_fitness for r in session.records])


def nearest_point(session: Session, view_id: str, g: int, query) -> int:
    """Index of the point closest to the query coordinates.

    Ties break to the lowest index; the parent participates as index -1.
    """
    _check_generation(session, g)
    view = _get_view(session, view_id)
    coords = view.coords[g]
    q = check_vector(query, name="query", length=2)
    d2 = ((coords - q) ** 2).sum(axis=1)
    return int(np.argmin(d2)) - 1
