"""Finite semimetric spaces stored as distance matrices.

A space is a tuple of unique labels plus an ``n x n`` float matrix that is
symmetric, has a zero diagonal and is strictly positive off the diagonal.
Spaces are immutable; every transform returns a new space.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np

from .tolerance import REL_TOL, exceeds

__all__ = [
    "SpaceError",
    "NegativeEntry",
    "NonzeroDiagonal",
    "NonSymmetric",
    "NonpositiveOffDiagonal",
    "DuplicatePoint",
    "NotATree",
    "AlphaOutOfRange",
    "NonpositiveScale",
    "FiniteSemimetricSpace",
    "new_space",
    "is_metric",
    "is_ultrametric",
    "diameter",
    "from_points_lp",
    "gen_tree_metric",
    "random_tree_edges",
    "gen_random_tree_metric",
    "gen_random_metric",
    "gen_random_ultrametric",
    "gen_random_semimetric",
    "gen_random_points",
    "snowflake",
    "scale",
    "relabel",
    "space_to_dict",
    "space_from_dict",
    "to_json",
    "from_json",
    "to_csv",
    "from_csv",
    "load_space",
    "save_space",
]


class SpaceError(ValueError):
    """Base class for invalid space input."""


class _PairError(SpaceError):
    axiom = ""

    def __init__(self, pair: tuple[str, str], detail: str = ""):
        self.pair = pair
        msg = f"{self.axiom} violated at ({pair[0]}, {pair[1]})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NegativeEntry(_PairError):
    axiom = "nonnegativity"


class NonzeroDiagonal(_PairError):
    axiom = "axiom (i) d(x,x) = 0"


class NonSymmetric(_PairError):
    axiom = "axiom (ii) d(x,y) = d(y,x)"


class NonpositiveOffDiagonal(_PairError):
    axiom = "axiom (i) d(x,y) > 0 for x != y"


class DuplicatePoint(SpaceError):
    pass


class NotATree(SpaceError):
    pass


class AlphaOutOfRange(SpaceError):
    pass


class NonpositiveScale(SpaceError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteSemimetricSpace:
    """Labeled finite semimetric space.

    Parameters
    ----------
    labels : sequence of str
        Unique point names.
    dist : array_like, shape (n, n)
        Distance matrix. Validated on construction and stored read-only.
    """

    labels: tuple[str, ...]
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        d = np.array(self.dist, dtype=float, copy=True)
        n = len(labels)
        if n < 1:
            raise SpaceError("a space needs at least one point")
        if len(set(labels)) != n:
            raise SpaceError("labels must be unique")
        if d.shape != (n, n):
            raise SpaceError(f"distance matrix has shape {d.shape}, expected ({n}, {n})")
        if not np.all(np.isfinite(d)):
            i, j = np.argwhere(~np.isfinite(d))[0]
            raise SpaceError(f"non-finite distance at ({labels[i]}, {labels[j]})")

        def pair(ij):
            return labels[ij[0]], labels[ij[1]]

        bad = np.argwhere(d < 0)
        if bad.size:
            raise NegativeEntry(pair(bad[0]))
        bad = np.flatnonzero(np.diag(d) != 0)
        if bad.size:
            i = bad[0]
            raise NonzeroDiagonal((labels[i], labels[i]), f"d = {d[i, i]!r}")
        bad = np.argwhere(d != d.T)
        if bad.size:
            i, j = bad[0]
            raise NonSymmetric((labels[i], labels[j]), f"{d[i, j]!r} != {d[j, i]!r}")
        off = ~np.eye(n, dtype=bool)
        bad = np.argwhere(off & (d <= 0))
        if bad.size:
            raise NonpositiveOffDiagonal(pair(bad[0]))
        d.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, FiniteSemimetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.labels, self.dist.tobytes()))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def d(self, a, b) -> float:
        """Distance between two points given by index or label."""
        i = a if isinstance(a, (int, np.integer)) else self.index(a)
        j = b if isinstance(b, (int, np.integer)) else self.index(b)
        return float(self.dist[i, j])


def new_space(labels: Sequence[str], dist) -> FiniteSemimetricSpace:
    """Build and validate a space from labels and a distance matrix."""
    return FiniteSemimetricSpace(tuple(labels), np.asarray(dist, dtype=float))


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


def diameter(space: FiniteSemimetricSpace) -> float:
    return float(space.dist.max())


def _triples(d):
    # axes (x, y, z): d(x,y) on the left, d(x,z), d(z,y) on the right
    lhs = d[:, :, None]
    a = d[:, None, :]
    b = d.T[None, :, :]
    return lhs, a, b


def is_metric(space: FiniteSemimetricSpace, rtol: float = REL_TOL) -> bool:
    """True when d(x,y) <= d(x,z) + d(z,y) for every ordered triple."""
    lhs, a, b = _triples(space.dist)
    return not np.any(exceeds(lhs, a + b, rtol))


def is_ultrametric(space: FiniteSemimetricSpace, rtol: float = REL_TOL) -> bool:
    """True when d(x,y) <= max(d(x,z), d(z,y)) for every ordered triple."""
    lhs, a, b = _triples(space.dist)
    return not np.any(exceeds(lhs, np.maximum(a, b), rtol))


# --- constructors and generators -------------------------------------------


def from_points_lp(points, p: float = 2.0, labels: Sequence[str] | None = None) -> FiniteSemimetricSpace:
    """Space of pairwise l_p distances between points in R^k."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2:
        raise SpaceError("points must be a list of equal-length vectors")
    if not p >= 1:
        raise SpaceError(f"p must be >= 1, got {p}")
    diff = np.abs(pts[:, None, :] - pts[None, :, :])
    if np.isinf(p):
        d = diff.max(axis=-1)
    elif p == 1:
        d = diff.sum(axis=-1)
    elif p == 2:
        d = np.sqrt((diff**2).sum(axis=-1))
    else:
        d = (diff**p).sum(axis=-1) ** (1.0 / p)
    n = len(pts)
    dup = np.argwhere(np.triu(d == 0, k=1))
    if dup.size:
        i, j = dup[0]
        raise DuplicatePoint(f"points {i} and {j} coincide")
    return new_space(labels or _default_labels(n), d)


def gen_tree_metric(edges: Iterable[tuple[Hashable, Hashable, float]], leaves_only: bool = False) -> FiniteSemimetricSpace:
    """Path-length metric of a positively weighted tree.

    Parameters
    ----------
    edges : iterable of (u, v, weight)
    leaves_only : bool
        Restrict the metric to degree-one vertices instead of all vertices.
    """
    edges = list(edges)
    if not edges:
        raise NotATree("a tree needs at least one edge")
    adj: dict = {}
    for u, v, w in edges:
        if not w > 0:
            raise NotATree(f"edge ({u}, {v}) has nonpositive weight {w}")
        if u == v:
            raise NotATree(f"self-loop at {u}")
        adj.setdefault(u, []).append((v, float(w)))
        adj.setdefault(v, []).append((u, float(w)))
    verts = list(adj)
    if len(edges) != len(verts) - 1:
        raise NotATree(f"{len(edges)} edges on {len(verts)} vertices")
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    d = np.full((n, n), np.nan)
    for src in verts:
        row = d[pos[src]]
        row[pos[src]] = 0.0
        stack = [src]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if np.isnan(row[pos[v]]):
                    row[pos[v]] = row[pos[u]] + w
                    stack.append(v)
    if np.isnan(d).any():
        raise NotATree("graph is disconnected")
    # sums along a path depend on direction in floating point; mirror the upper triangle
    d = np.triu(d) + np.triu(d, 1).T
    keep = list(range(n))
    if leaves_only:
        keep = [pos[v] for v in verts if len(adj[v]) == 1]
    return new_space([str(verts[i]) for i in keep], d[np.ix_(keep, keep)])


def random_tree_edges(n_vertices: int, seed: int, wmin: float = 0.1, wmax: float = 1.0):
    """Random labeled tree: vertex k attaches to a uniformly chosen earlier vertex."""
    if n_vertices < 2:
        raise SpaceError("a tree needs at least two vertices")
    rng = np.random.default_rng(seed)
    edges = []
    for k in range(1, n_vertices):
        parent = int(rng.integers(0, k))
        edges.append((f"v{parent}", f"v{k}", float(rng.uniform(wmin, wmax))))
    return edges


def gen_random_tree_metric(n_vertices: int, seed: int, leaves_only: bool = False) -> FiniteSemimetricSpace:
    return gen_tree_metric(random_tree_edges(n_vertices, seed), leaves_only=leaves_only)


def _random_symmetric(n, rng, low, high):
    w = rng.uniform(low, high, size=(n, n))
    w = np.triu(w, k=1)
    return w + w.T


def gen_random_metric(n: int, seed: int) -> FiniteSemimetricSpace:
    """Shortest-path closure of a random positive symmetric matrix."""
    if n < 2:
        raise SpaceError("n must be >= 2")
    rng = np.random.default_rng(seed)
    d = _random_symmetric(n, rng, 0.1, 1.0)
    # Floyd-Warshall
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    np.fill_diagonal(d, 0.0)
    return new_space(_default_labels(n), d)


def gen_random_ultrametric(n: int, seed: int) -> FiniteSemimetricSpace:
    """Ultrametric from random agglomerative merges at increasing heights."""
    if n < 2:
        raise SpaceError("n must be >= 2")
    rng = np.random.default_rng(seed)
    clusters = [[i] for i in range(n)]
    d = np.zeros((n, n))
    height = 0.0
    while len(clusters) > 1:
        height += float(rng.uniform(0.1, 1.0))
        i, j = sorted(rng.choice(len(clusters), size=2, replace=False))
        a, b = clusters[i], clusters[j]
        d[np.ix_(a, b)] = height
        d[np.ix_(b, a)] = height
        clusters[i] = a + b
        del clusters[j]
    return new_space(_default_labels(n), d)


def gen_random_semimetric(n: int, seed: int, spread: float = 3.0) -> FiniteSemimetricSpace:
    """Symmetric matrix with log-uniform entries in [e^-spread, e^spread].

    No triangle inequality is imposed, so for n >= 3 the result is almost
    always a non-metric semimetric.
    """
    if n < 2:
        raise SpaceError("n must be >= 2")
    rng = np.random.default_rng(seed)
    d = np.exp(_random_symmetric(n, rng, -spread, spread))
    np.fill_diagonal(d, 0.0)
    return new_space(_default_labels(n), d)


def gen_random_points(n: int, dim: int, seed: int) -> np.ndarray:
    """Standard normal points; duplicates have probability zero."""
    return np.random.default_rng(seed).normal(size=(n, dim))


# --- transforms ------------------------------------------------------------


def snowflake(space: FiniteSemimetricSpace, alpha: float) -> FiniteSemimetricSpace:
    """Entrywise power ``d ** alpha`` for ``0 < alpha <= 1``."""
    if not 0 < alpha <= 1:
        raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1:
        return space
    return FiniteSemimetricSpace(space.labels, space.dist**alpha)


def scale(space: FiniteSemimetricSpace, lam: float) -> FiniteSemimetricSpace:
    if not lam > 0:
        raise NonpositiveScale(f"scale factor must be positive, got {lam}")
    return FiniteSemimetricSpace(space.labels, lam * space.dist)


def relabel(space: FiniteSemimetricSpace, perm: Sequence[int]) -> FiniteSemimetricSpace:
    """Isometric copy where source point ``i`` sits at index ``perm[i]``."""
    perm = np.asarray(perm, dtype=int)
    n = space.n
    if sorted(perm.tolist()) != list(range(n)):
        raise SpaceError(f"not a permutation of range({n}): {perm.tolist()}")
    inv = np.argsort(perm)
    labels = [space.labels[k] for k in inv]
    return FiniteSemimetricSpace(tuple(labels), space.dist[np.ix_(inv, inv)])


# --- serialization ---------------------------------------------------------


def space_to_dict(space: FiniteSemimetricSpace) -> dict:
    return {"labels": list(space.labels), "matrix": space.dist.tolist()}


def space_from_dict(obj: dict) -> FiniteSemimetricSpace:
    try:
        labels = obj["labels"]
        matrix = obj["matrix"]
    except (KeyError, TypeError) as exc:
        raise SpaceError(f"space JSON needs 'labels' and 'matrix': {exc}") from None
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SpaceError("'labels' must be a list of strings")
    if not isinstance(matrix, list) or any(not isinstance(r, list) or len(r) != len(labels) for r in matrix):
        raise SpaceError("'matrix' must be a square list of rows matching the labels")
    for row in matrix:
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise SpaceError(f"non-numeric matrix entry {v!r}")
    return new_space(labels, matrix)


def to_json(space: FiniteSemimetricSpace) -> str:
    # json uses repr(float), which round-trips float64 exactly
    return json.dumps(space_to_dict(space))


def from_json(text: str) -> FiniteSemimetricSpace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceError(f"invalid JSON: {exc}") from None
    return space_from_dict(obj)


def to_csv(space: FiniteSemimetricSpace, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(space.labels)
    for row in space.dist:
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def _parse_float(cell: str, r: int, c: int) -> float:
    try:
        return float(cell)
    except ValueError:
        raise SpaceError(f"row {r + 1}, column {c + 1}: not a number: {cell!r}") from None


def from_csv(text: str) -> FiniteSemimetricSpace:
    """Parse an n x n CSV matrix; a first row with any non-numeric cell is the header."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise SpaceError("empty CSV")
    rows = [[c.strip() for c in r] for r in rows]
    labels = None

    def numeric(cell):
        try:
            float(cell)
            return True
        except ValueError:
            return False

    if not all(numeric(c) for c in rows[0]):
        labels, rows = rows[0], rows[1:]
    width = len(labels) if labels is not None else len(rows[0]) if rows else 0
    for r, row in enumerate(rows):
        if len(row) != width:
            raise SpaceError(f"ragged CSV: data row {r + 1} has {len(row)} cells, expected {width}")
    if len(rows) != width:
        raise SpaceError(f"CSV matrix is {len(rows)} x {width}, not square")
    mat = [[_parse_float(c, r, k) for k, c in enumerate(row)] for r, row in enumerate(rows)]
    return new_space(labels or _default_labels(width), mat)


def load_space(path) -> FiniteSemimetricSpace:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return from_csv(text)
    return from_json(text)


def save_space(space: FiniteSemimetricSpace, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(to_csv(space))
    else:
        path.write_text(to_json(space) + "\n")
