"""Bijections between finite spaces, cross-ratios and quasisymmetry checks."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .funcdsl import MonadicControl, control
from .quad import CheckReport, Tetrad, UnvalidatedFunction, _report
from .space import (FiniteSemimetricSpace, SpaceError, relabel, scale, snowflake, space_from_dict,
                    space_to_dict)
from .tolerance import REL_TOL, exceeds

__all__ = [
    "NonDistinctTetrad",
    "TooFewPoints",
    "SpaceMap",
    "EnvelopePoint",
    "identity_map",
    "make_transform_map",
    "compose",
    "cross_ratio",
    "verify_quasisymmetric",
    "qs_envelope",
    "verify_quasimobius",
    "mobius_deviation",
    "verify_mobius",
    "map_to_dict",
    "map_from_dict",
    "envelope_to_csv",
]


class NonDistinctTetrad(ValueError):
    pass


class TooFewPoints(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SpaceMap:
    """Bijection ``f`` from ``source`` onto ``target``; ``forward[i]`` is the target index of source point ``i``."""

    source: FiniteSemimetricSpace
    target: FiniteSemimetricSpace
    forward: tuple[int, ...]

    def __post_init__(self):
        fw = tuple(int(i) for i in self.forward)
        if self.source.n != self.target.n:
            raise SpaceError(f"source has {self.source.n} points, target {self.target.n}")
        if sorted(fw) != list(range(self.source.n)):
            raise SpaceError(f"forward is not a bijection onto range({self.target.n}): {list(fw)}")
        object.__setattr__(self, "forward", fw)

    @property
    def n(self) -> int:
        return self.source.n

    def pulled_back(self) -> np.ndarray:
        """Matrix ``rho(f(i), f(j))`` indexed by source points."""
        fw = np.array(self.forward)
        return self.target.dist[np.ix_(fw, fw)]


def identity_map(space: FiniteSemimetricSpace) -> SpaceMap:
    return SpaceMap(space, space, tuple(range(space.n)))


def make_transform_map(space: FiniteSemimetricSpace, kind: str, param=None) -> SpaceMap:
    """Map from ``space`` onto a transformed copy.

    ``kind`` is ``"snowflake"`` (param alpha), ``"scale"`` (param lambda),
    ``"relabel"`` (param permutation) or ``"identity"``.
    """
    ident = tuple(range(space.n))
    if kind == "snowflake":
        return SpaceMap(space, snowflake(space, float(param)), ident)
    if kind == "scale":
        return SpaceMap(space, scale(space, float(param)), ident)
    if kind == "relabel":
        perm = tuple(int(i) for i in param)
        return SpaceMap(space, relabel(space, perm), perm)
    if kind == "identity":
        return identity_map(space)
    raise ValueError(f"unknown transform kind {kind!r}")


def compose(first: SpaceMap, second: SpaceMap) -> SpaceMap:
    """``second`` after ``first``; ``first.target`` must equal ``second.source``."""
    if first.target != second.source:
        raise SpaceError("cannot compose: first target differs from second source")
    fw = tuple(second.forward[i] for i in first.forward)
    return SpaceMap(first.source, second.target, fw)


def _cross_ratio_matrix(d: np.ndarray):
    # axes (x, y, z, t): d(x,y) d(t,z) / (d(x,z) d(t,y)); nan where points repeat
    r = np.arange(d.shape[0])
    x, y, z, t = r[:, None, None, None], r[None, :, None, None], r[None, None, :, None], r[None, None, None, :]
    mask = (x != y) & (x != z) & (x != t) & (y != z) & (y != t) & (z != t)
    num = d[x, y] * d[t, z]
    den = d[x, z] * d[t, y]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(mask, num / np.where(mask, den, 1.0), np.nan)
    return out, mask


def cross_ratio(space: FiniteSemimetricSpace, tetrad) -> float:
    """Absolute cross-ratio ``d(x,y) d(t,z) / (d(x,z) d(t,y))`` of a tetrad of distinct points."""
    x, y, z, t = (space.index(i) if isinstance(i, str) else int(i) for i in tetrad)
    if len({x, y, z, t}) != 4:
        raise NonDistinctTetrad(f"tetrad {(x, y, z, t)} repeats a point")
    d = space.dist
    return float(d[x, y] * d[t, z] / (d[x, z] * d[t, y]))


def _require_control(eta: MonadicControl):
    rep = eta.report
    if not rep.all_passed:
        bad = ", ".join(rep.failures)
        raise UnvalidatedFunction(f"control function {eta!r} fails: {bad}")


def _triple_data(m: SpaceMap):
    d = m.source.dist
    rho = m.pulled_back()
    n = m.n
    r = np.arange(n)
    x, a, b = r[:, None, None], r[None, :, None], r[None, None, :]
    mask = np.broadcast_to((a != x) & (b != x), (n, n, n))
    with np.errstate(divide="ignore", invalid="ignore"):
        tstar = np.where(mask, d[x, a] / np.where(mask, d[x, b], 1.0), 1.0)
        ratio = np.where(mask, rho[x, a] / np.where(mask, rho[x, b], 1.0), 1.0)
    return rho, x, a, b, mask, tstar, ratio


def verify_quasisymmetric(m: SpaceMap, eta, rtol: float = REL_TOL) -> CheckReport:
    """Check ``rho(fx, fa) <= eta(d(x,a)/d(x,b)) rho(fx, fb)`` on every triple with ``a, b != x``.

    For a strictly increasing ``eta`` the critical ratio ``t* = d(x,a)/d(x,b)``
    is the only value of ``t`` that needs checking: smaller ``t`` make the
    premise false and larger ones only loosen the bound.
    The witness is ``(x, a, b)``.
    """
    eta = control(eta)
    _require_control(eta)
    rho, x, a, b, mask, tstar, _ = _triple_data(m)
    lhs = np.broadcast_to(rho[x, a], mask.shape)
    rhs = eta(tstar) * rho[x, b]
    diff = np.where(mask, lhs - rhs, -np.inf)
    scanned = int(mask.sum())
    if scanned == 0:
        return _report(m.source, "quasisymmetric", True, -np.inf, None, 0, (None, None))
    k = np.unravel_index(int(np.argmax(diff)), diff.shape)
    passed = not np.any(exceeds(lhs, rhs, rtol) & mask)
    return _report(m.source, "quasisymmetric", passed, float(diff[k]), tuple(int(i) for i in k), scanned,
                   (float(lhs[k]), float(rhs[k])), details={"eta": eta.text})


@dataclass(frozen=True)
class EnvelopePoint:
    t: float
    r: float
    triple: tuple[int, int, int]


def qs_envelope(m: SpaceMap) -> list[EnvelopePoint]:
    """All ``(t*, r)`` pairs, ``r = rho(fx,fa)/rho(fx,fb)``, sorted by ``t`` then triple.

    Any control ``eta`` accepted by :func:`verify_quasisymmetric` lies on or
    above every point.
    """
    _, _, _, _, mask, tstar, ratio = _triple_data(m)
    pts = [EnvelopePoint(float(tstar[k]), float(ratio[k]), tuple(int(i) for i in k)) for k in zip(*np.nonzero(mask))]
    pts.sort(key=lambda p: (p.t, p.triple))
    return pts


def _require_four(m: SpaceMap):
    if m.n < 4:
        raise TooFewPoints(f"tetrads need at least 4 points, got {m.n}")


def verify_quasimobius(m: SpaceMap, eta, rtol: float = REL_TOL) -> CheckReport:
    """Check ``R(fT) <= eta(R(T))`` over every tetrad of distinct points; witness ``(x, y, z, t)``."""
    _require_four(m)
    eta = control(eta)
    _require_control(eta)
    rs, mask = _cross_ratio_matrix(m.source.dist)
    rt, _ = _cross_ratio_matrix(m.pulled_back())
    rhs = eta(np.where(mask, rs, 1.0))
    diff = np.where(mask, rt - rhs, -np.inf)
    k = np.unravel_index(int(np.argmax(diff)), diff.shape)
    passed = not np.any(exceeds(np.where(mask, rt, 0.0), rhs, rtol) & mask)
    return _report(m.source, "quasimobius", passed, float(diff[k]), tuple(int(i) for i in k), int(mask.sum()),
                   (float(rt[k]), float(rhs[k])), details={"eta": eta.text})


def mobius_deviation(m: SpaceMap) -> float:
    """``max |R(fT) - R(T)|`` over tetrads."""
    _require_four(m)
    rs, mask = _cross_ratio_matrix(m.source.dist)
    rt, _ = _cross_ratio_matrix(m.pulled_back())
    return float(np.max(np.abs(rt - rs)[mask]))


def verify_mobius(m: SpaceMap, tol: float = 1e-9) -> bool:
    return mobius_deviation(m) <= tol


# --- serialization ---------------------------------------------------------


def map_to_dict(m: SpaceMap) -> dict:
    return {"source": space_to_dict(m.source), "target": space_to_dict(m.target), "forward": list(m.forward)}


def map_from_dict(obj: dict) -> SpaceMap:
    try:
        fw = obj["forward"]
        src, tgt = obj["source"], obj["target"]
    except (KeyError, TypeError) as exc:
        raise SpaceError(f"map JSON needs 'source', 'target' and 'forward': {exc}") from None
    if not isinstance(fw, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in fw):
        raise SpaceError("'forward' must be a list of integers")
    return SpaceMap(space_from_dict(src), space_from_dict(tgt), tuple(fw))


def envelope_to_csv(m: SpaceMap, points: Sequence[EnvelopePoint] | None = None) -> str:
    points = qs_envelope(m) if points is None else points
    lab = m.source.labels
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "r", "x", "a", "b"])
    for p in points:
        x, a, b = p.triple
        w.writerow([repr(p.t), repr(p.r), lab[x], lab[a], lab[b]])
    return buf.getvalue()
