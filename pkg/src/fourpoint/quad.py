"""Exhaustive four-point inequality scans over finite spaces.

Every check iterates ordered quadruples of point indices in lexicographic
order, evaluates both sides of an inequality and reports the worst
quadruple. ``defect`` is the maximum of ``lhs - rhs``; a quadruple counts as
a violation when that difference exceeds the relative tolerance described in
:mod:`fourpoint.tolerance`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .funcdsl import DyadicFunction, dyadic, validate_pair
from .space import FiniteSemimetricSpace, diameter, is_metric, is_ultrametric
from .tolerance import REL_TOL, exceeds, close

__all__ = [
    "UnvalidatedFunction",
    "PreconditionUnmet",
    "QBelowOne",
    "Tetrad",
    "CheckReport",
    "check_quadruple_pair",
    "check_ptolemaic",
    "check_additive",
    "min_hyperbolicity_delta",
    "check_delta_hyperbolic",
    "check_roundness_at",
    "RoundnessResult",
    "roundness",
    "check_cat0_quadrilateral",
    "check_reshetnyak",
    "coincidence_patterns",
    "degenerate_suite",
    "SpaceClassification",
    "classify",
]


class UnvalidatedFunction(ValueError):
    pass


class PreconditionUnmet(ValueError):
    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"precondition unmet: {condition}" + (f" ({detail})" if detail else ""))


class QBelowOne(ValueError):
    pass


@dataclass(frozen=True)
class Tetrad:
    x: int
    y: int
    z: int
    t: int

    @property
    def distinct(self) -> bool:
        return len({self.x, self.y, self.z, self.t}) == 4

    def __iter__(self):
        return iter((self.x, self.y, self.z, self.t))


@dataclass
class CheckReport:
    """Outcome of one inequality scan.

    ``witness`` holds the point indices of the worst quadruple (or triple) in
    the order the inequality names them; ``lhs``/``rhs`` are both sides there.
    """

    property: str
    passed: bool
    defect: float
    witness: tuple[int, ...] | None
    witness_labels: tuple[str, ...] | None
    scanned: int
    lhs: float | None = None
    rhs: float | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "property": self.property,
            "pass": bool(self.passed),
            "defect": _json_float(self.defect),
            "witness": list(self.witness_labels) if self.witness_labels is not None else None,
            "scanned": int(self.scanned),
        }
        if self.details:
            out["details"] = self.details
        return out


def _json_float(x):
    if x is None or not math.isfinite(x):
        return None
    return float(x)


Sides = Callable[..., tuple[np.ndarray, np.ndarray]]

_CHUNK = 1 << 20


def _scan(space: FiniteSemimetricSpace, sides: Sides, prop: str, *, include_degenerate: bool = True,
          rtol: float = REL_TOL, witness_order=None, details=None) -> CheckReport:
    """Scan all ordered quadruples of ``space`` with ``sides(i0, i1, i2, i3)``.

    ``witness_order`` permutes the scan axes into the order the witness is
    reported in.
    """
    n = space.n
    rows = max(1, _CHUNK // max(1, n**3))
    r = np.arange(n)
    best = -np.inf
    best_at = None
    best_sides = (None, None)
    violated = False
    scanned = 0
    for start in range(0, n, rows):
        i0 = np.arange(start, min(n, start + rows))[:, None, None, None]
        i1 = r[None, :, None, None]
        i2 = r[None, None, :, None]
        i3 = r[None, None, None, :]
        lhs, rhs = sides(i0, i1, i2, i3)
        lhs, rhs = np.broadcast_arrays(lhs, rhs)
        diff = lhs - rhs
        if include_degenerate:
            mask = np.ones(diff.shape, dtype=bool)
        else:
            mask = (i0 != i1) & (i0 != i2) & (i0 != i3) & (i1 != i2) & (i1 != i3) & (i2 != i3)
            mask = np.broadcast_to(mask, diff.shape)
        cnt = int(mask.sum())
        if cnt == 0:
            continue
        scanned += cnt
        violated |= bool(np.any(exceeds(lhs, rhs, rtol) & mask))
        diff = np.where(mask, diff, -np.inf)
        k = int(np.argmax(diff))
        if diff.flat[k] > best:
            best = float(diff.flat[k])
            loc = np.unravel_index(k, diff.shape)
            best_at = (start + int(loc[0]), int(loc[1]), int(loc[2]), int(loc[3]))
            best_sides = (float(lhs[loc]), float(rhs[loc]))
    return _report(space, prop, not violated, best, best_at, scanned, best_sides, witness_order, details)


def _report(space, prop, passed, best, best_at, scanned, best_sides, witness_order=None, details=None):
    if best_at is not None and witness_order is not None:
        best_at = tuple(best_at[k] for k in witness_order)
    labels = None if best_at is None else tuple(space.labels[i] for i in best_at)
    return CheckReport(prop, passed, best, best_at, labels, scanned, best_sides[0], best_sides[1], details or {})


def _scan_indices(space, sides, prop, idx: np.ndarray, rtol=REL_TOL, details=None) -> CheckReport:
    """Scan an explicit ``(m, 4)`` array of quadruples in row order."""
    if len(idx) == 0:
        return _report(space, prop, True, -np.inf, None, 0, (None, None), details=details)
    lhs, rhs = sides(idx[:, 0], idx[:, 1], idx[:, 2], idx[:, 3])
    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    diff = lhs - rhs
    k = int(np.argmax(diff))
    passed = not np.any(exceeds(lhs, rhs, rtol))
    at = tuple(int(i) for i in idx[k])
    return _report(space, prop, passed, float(diff[k]), at, len(idx), (float(lhs[k]), float(rhs[k])), details=details)


# --- the generic engine ----------------------------------------------------


def _require_valid(phi: DyadicFunction, psi: DyadicFunction):
    for name in ("symmetry", "monotonicity"):
        if not phi.report.passed(name):
            raise UnvalidatedFunction(f"outer function {phi!r} fails {name}: {phi.report.verdicts[name].detail}")
    for name in ("symmetry", "monotonicity", "zero_origin"):
        if not psi.report.passed(name):
            raise UnvalidatedFunction(f"inner function {psi!r} fails {name}: {psi.report.verdicts[name].detail}")


def _pair_sides(d, phi, psi):
    def sides(x, y, z, t):
        lhs = psi(d[x, z], d[t, y])
        rhs = phi(psi(d[x, y], d[t, z]), psi(d[x, t], d[y, z]))
        return lhs, rhs

    return sides


def check_quadruple_pair(space: FiniteSemimetricSpace, phi, psi, include_degenerate: bool = True,
                         rtol: float = REL_TOL, validate: bool = True) -> CheckReport:
    """Check ``psi(d(x,z), d(t,y)) <= phi(psi(d(x,y), d(t,z)), psi(d(x,t), d(y,z)))``.

    Parameters
    ----------
    space : FiniteSemimetricSpace
    phi, psi : DyadicFunction or str
        Outer and inner functions. Both must be symmetric and monotone and
        ``psi(0, 0)`` must vanish; this is verified on the validation grid
        unless ``validate`` is false.
    include_degenerate : bool
        Scan quadruples with repeated points too (default). When false only
        mutually distinct quadruples are scanned.

    Returns
    -------
    CheckReport
        Witness is ``(x, y, z, t)``.

    Raises
    ------
    UnvalidatedFunction
        If ``phi`` or ``psi`` fails a prerequisite property.
    """
    phi, psi = dyadic(phi), dyadic(psi)
    if validate:
        _require_valid(phi, psi)
    return _scan(space, _pair_sides(space.dist, phi, psi), f"quadruple[phi={phi.text}, psi={psi.text}]",
                 include_degenerate=include_degenerate, rtol=rtol)


# --- specialized checkers --------------------------------------------------


def check_ptolemaic(space, include_degenerate: bool = True, rtol: float = REL_TOL) -> CheckReport:
    """``d(x,z) d(t,y) <= d(x,y) d(t,z) + d(x,t) d(y,z)``."""
    d = space.dist

    def sides(x, y, z, t):
        return d[x, z] * d[t, y], d[x, y] * d[t, z] + d[x, t] * d[y, z]

    return _scan(space, sides, "ptolemaic", include_degenerate=include_degenerate, rtol=rtol)


def _pairing_sums(d, x, y, z, t):
    return d[x, z] + d[t, y], d[x, y] + d[t, z], d[x, t] + d[y, z]


def check_additive(space, include_degenerate: bool = True, rtol: float = REL_TOL) -> CheckReport:
    """Four-point condition ``d(x,z)+d(t,y) <= max(d(x,y)+d(t,z), d(x,t)+d(y,z))``.

    ``details["two_largest_equal"]`` carries the verdict of the equivalent
    form (among the three pairing sums the two largest agree); it always
    matches ``passed``.
    """
    d = space.dist

    def sides(x, y, z, t):
        a, b, c = _pairing_sums(d, x, y, z, t)
        return a, np.maximum(b, c)

    rep = _scan(space, sides, "additive", include_degenerate=include_degenerate, rtol=rtol)
    s = _sorted_sums(d, include_degenerate)
    equal = bool(np.all(close(s[..., 2], s[..., 1], rtol))) if s.size else True
    rep.details["two_largest_equal"] = equal
    return rep


def _sorted_sums(d, include_degenerate=True):
    n = d.shape[0]
    r = np.arange(n)
    x, y, z, t = r[:, None, None, None], r[None, :, None, None], r[None, None, :, None], r[None, None, None, :]
    sums = np.stack(np.broadcast_arrays(*_pairing_sums(d, x, y, z, t)), axis=-1)
    if not include_degenerate:
        mask = (x != y) & (x != z) & (x != t) & (y != z) & (y != t) & (z != t)
        sums = sums[np.broadcast_to(mask, sums.shape[:-1])]
    return np.sort(sums, axis=-1)


def min_hyperbolicity_delta(space) -> float:
    """Smallest delta making the space delta-hyperbolic.

    Closed form: the maximum over quadruples of half the gap between the
    largest and second largest of the three pairing sums.
    """
    s = _sorted_sums(space.dist)
    return float(np.max((s[..., 2] - s[..., 1]) / 2))


def check_delta_hyperbolic(space, delta: float, include_degenerate: bool = True, rtol: float = REL_TOL) -> CheckReport:
    """``d(x,z)+d(t,y) <= 2 delta + max(d(x,y)+d(t,z), d(x,t)+d(y,z))``."""
    if delta < 0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    d = space.dist

    def sides(x, y, z, t):
        a, b, c = _pairing_sums(d, x, y, z, t)
        return a, 2 * delta + np.maximum(b, c)

    return _scan(space, sides, f"delta_hyperbolic[{delta!r}]", include_degenerate=include_degenerate, rtol=rtol)


def check_roundness_at(space, q: float, rtol: float = REL_TOL) -> CheckReport:
    """``d(x1,x2)^q + d(y1,y2)^q <= sum of the four cross terms d(xi,yj)^q``.

    All quadruples are scanned, repeated points included. The witness is
    ``(x1, x2, y1, y2)``.
    """
    if not q >= 1:
        raise QBelowOne(f"q must be >= 1, got {q}")
    p = space.dist**q

    def sides(x1, x2, y1, y2):
        return p[x1, x2] + p[y1, y2], p[x1, y1] + p[x1, y2] + p[x2, y1] + p[x2, y2]

    return _scan(space, sides, f"roundness_at[{q!r}]", rtol=rtol)


@dataclass
class RoundnessResult:
    """Largest ``q`` in ``[1, q_cap]`` passing the roundness inequality.

    ``value`` is ``nan`` when even ``q = 1`` fails (possible only for
    non-metric spaces). ``non_monotone`` flags a coarse-grid pass pattern
    that is not downward closed; ``first_failing_q`` is then the smallest
    failing grid value and ``value`` the boundary below it.
    """

    value: float
    at_cap: bool
    non_monotone: bool
    q_cap: float
    first_failing_q: float | None
    grid: np.ndarray = field(repr=False)
    grid_pass: np.ndarray = field(repr=False)

    def to_dict(self):
        return {
            "value": _json_float(self.value),
            "at_cap": self.at_cap,
            "non_monotone": self.non_monotone,
            "q_cap": self.q_cap,
            "first_failing_q": self.first_failing_q,
        }


def roundness(space, q_cap: float = 64.0, tol: float = 1e-6, grid_points: int = 64, rtol: float = REL_TOL) -> RoundnessResult:
    """Supremum of feasible ``q`` via a log-spaced grid followed by bisection."""
    if not q_cap > 1:
        raise QBelowOne(f"q_cap must exceed 1, got {q_cap}")
    grid = np.geomspace(1.0, q_cap, grid_points)
    ok = np.array([check_roundness_at(space, q, rtol).passed for q in grid])
    if ok.all():
        return RoundnessResult(float(q_cap), True, False, q_cap, None, grid, ok)
    k = int(np.argmin(ok))  # first failing grid index
    non_monotone = bool(ok[k:].any())
    first_fail = float(grid[k])
    if k == 0:
        return RoundnessResult(float("nan"), False, non_monotone, q_cap, first_fail, grid, ok)
    lo, hi = float(grid[k - 1]), first_fail
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if check_roundness_at(space, mid, rtol).passed:
            lo = mid
        else:
            hi = mid
    return RoundnessResult(lo, False, non_monotone, q_cap, first_fail, grid, ok)


def check_cat0_quadrilateral(space, rtol: float = REL_TOL) -> CheckReport:
    """``d(a,d)^2 + d(b,c)^2 <= d(a,b)^2 + d(b,d)^2 + d(d,c)^2 + d(c,a)^2``.

    Scanned in ``(a, d, b, c)`` order, which lines the witness up with
    :func:`check_roundness_at` at ``q = 2``; reported as ``(a, b, c, d)``.
    """
    s = space.dist**2

    def sides(a, d_, b, c):
        # same summation order as check_roundness_at so ties break identically
        return s[a, d_] + s[b, c], s[a, b] + s[a, c] + s[d_, b] + s[d_, c]

    return _scan(space, sides, "cat0_quadrilateral", rtol=rtol, witness_order=(0, 2, 3, 1))


def check_reshetnyak(space, rtol: float = REL_TOL) -> CheckReport:
    """``d(x1,x3)^2 + d(x2,x4)^2 <= d(x2,x3)^2 + d(x4,x1)^2 + 2 d(x1,x2) d(x3,x4)``."""
    d = space.dist
    s = d**2

    def sides(x1, x2, x3, x4):
        return s[x1, x3] + s[x2, x4], s[x2, x3] + s[x4, x1] + 2 * d[x1, x2] * d[x3, x4]

    return _scan(space, sides, "reshetnyak", rtol=rtol)


# --- coincident points -----------------------------------------------------


def coincidence_patterns(max_blocks: int = 3) -> list[tuple[int, ...]]:
    """Set partitions of the slots ``(x, y, z, t)`` as restricted growth strings.

    ``(0, 0, 1, 2)`` means ``x = y`` with ``z`` and ``t`` distinct from them
    and from each other. With ``max_blocks=3`` this yields the 14 patterns in
    which at least two slots coincide.
    """
    out = []
    for s in itertools.product(range(4), repeat=4):
        if s[0] != 0:
            continue
        if all(s[i] <= max(s[:i]) + 1 for i in range(1, 4)) and max(s) < max_blocks:
            out.append(s)
    return out


_PSI_FOR_MODE = {"multiplicative": "product", "additive": "sum"}


def degenerate_suite(space, phi, psi=None, mode: str = "general", rtol: float = REL_TOL) -> CheckReport:
    """Check the quadruple inequality on every quadruple with a repeated point.

    Parameters
    ----------
    mode : {"general", "multiplicative", "additive"}
        ``general`` needs ``a <= phi(0,a)``, ``psi`` a triangle function on
        ``space`` and ``psi(0,a) <= phi(0,a)``. ``multiplicative`` fixes
        ``psi = u*v`` and needs only ``a <= phi(0,a)``. ``additive`` fixes
        ``psi = u+v`` and additionally needs ``space`` to be metric. Under
        these conditions the inequality is known to hold for every such
        quadruple, so a failure signals a bug or a precondition slip.

    Raises
    ------
    PreconditionUnmet
        Names the missing condition.
    """
    phi = dyadic(phi)
    if mode in _PSI_FOR_MODE:
        fixed = dyadic(_PSI_FOR_MODE[mode])
        if psi is not None:
            psi = dyadic(psi)
            axis = np.linspace(0, 8, 17)
            U, V = np.meshgrid(axis, axis)
            if not np.all(close(psi(U, V, strict=False), fixed(U, V))):
                raise PreconditionUnmet(f"inner function is {fixed.text} in {mode} mode", f"got {psi.text}")
        psi = fixed
    elif mode == "general":
        if psi is None:
            raise ValueError("general mode needs an inner function")
        psi = dyadic(psi)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    try:
        _require_valid(phi, psi)
    except UnvalidatedFunction as exc:
        raise PreconditionUnmet("symmetric monotone functions with psi(0,0) = 0", str(exc)) from None
    if not phi.report.passed("zero_section_bound"):
        raise PreconditionUnmet("a <= phi(0, a) for all a > 0", phi.report.verdicts["zero_section_bound"].detail)
    if mode == "general":
        pair = validate_pair(phi, psi, space)
        if not pair.passed("triangle_function"):
            raise PreconditionUnmet("psi is a triangle function on the space", pair.verdicts["triangle_function"].detail)
        if not pair.passed("zero_section_order"):
            raise PreconditionUnmet("psi(0, a) <= phi(0, a) for all a > 0", pair.verdicts["zero_section_order"].detail)
    if mode == "additive" and not is_metric(space):
        raise PreconditionUnmet("the space is metric")

    n = space.n
    blocks = []
    covered = []
    for pat in coincidence_patterns():
        k = max(pat) + 1
        if k > n:
            continue
        assign = np.array(list(itertools.permutations(range(n), k)), dtype=int)
        blocks.append(assign[:, list(pat)])
        covered.append("".join("xyzt"[pat.index(b)] for b in pat))
    idx = np.concatenate(blocks) if blocks else np.empty((0, 4), dtype=int)
    details = {"mode": mode, "patterns": covered, "n_patterns": len(covered)}
    return _scan_indices(space, _pair_sides(space.dist, phi, psi), f"degenerate[{mode}]", idx, rtol, details)


# --- classification --------------------------------------------------------


@dataclass
class SpaceClassification:
    is_metric: bool
    is_ultrametric: bool
    is_additive: bool
    is_ptolemaic: bool
    delta_star: float
    diameter: float
    roundness: RoundnessResult

    def to_dict(self) -> dict:
        return {
            "is_metric": self.is_metric,
            "is_ultrametric": self.is_ultrametric,
            "is_additive": self.is_additive,
            "is_ptolemaic": self.is_ptolemaic,
            "delta_star": self.delta_star,
            "diameter": self.diameter,
            "roundness": self.roundness.to_dict(),
        }


def classify(space, rtol: float = REL_TOL, q_cap: float = 64.0, q_tol: float = 1e-6) -> SpaceClassification:
    metric = is_metric(space, rtol)
    return SpaceClassification(
        is_metric=metric,
        is_ultrametric=metric and is_ultrametric(space, rtol),
        is_additive=metric and check_additive(space, rtol=rtol).passed,
        is_ptolemaic=check_ptolemaic(space, rtol=rtol).passed,
        delta_star=min_hyperbolicity_delta(space),
        diameter=diameter(space),
        roundness=roundness(space, q_cap=q_cap, tol=q_tol, rtol=rtol),
    )
