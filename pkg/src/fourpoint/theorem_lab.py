"""Grid checks of the transfer hypotheses and end-to-end preservation experiments.

Each preservation result says: if the source space satisfies an inequality,
the map is quasisymmetric (or quasimobius) with control ``eta``, and a
one-dimensional implication about ``eta`` holds for all positive reals,
then the target satisfies the inequality too. The ``check_hyp_*`` functions
test that implication on a finite grid; a clean run means "no violation
found on the grid", not a proof.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import space as sp
from .funcdsl import PropertyReport, Verdict, control, dyadic
from .mappings import SpaceMap, make_transform_map, verify_quasimobius, verify_quasisymmetric
from .quad import CheckReport, UnvalidatedFunction, _require_valid, check_quadruple_pair
from .space import AlphaOutOfRange
from .tolerance import REL_TOL, allowance

__all__ = [
    "MapVerificationFailed",
    "t_grid",
    "HypothesisViolation",
    "HypothesisReport",
    "check_hyp_qs_general",
    "check_hyp_qs_additive",
    "check_hyp_qm",
    "check_hyp_ptolemy_qs",
    "verify_power_subadditivity",
    "ExperimentReport",
    "run_preservation_experiment",
    "THEOREMS",
    "default_battery",
    "run_battery",
]

THEOREMS = ("qs_general", "qs_additive", "qm_multiplicative", "ptolemy_qs")


class MapVerificationFailed(ValueError):
    pass


def t_grid(kmin: int = -6, kmax: int = 6) -> np.ndarray:
    """Per-axis grid ``{2^k : kmin <= k <= kmax}``."""
    return 2.0 ** np.arange(kmin, kmax + 1, dtype=float)


@dataclass(frozen=True)
class HypothesisViolation:
    t: tuple[float, ...]
    premise: tuple[float, float]  # (lhs, rhs), holds
    conclusion: tuple[float, float]  # (lhs, rhs), fails


@dataclass
class HypothesisReport:
    theorem: str
    grid_size: int
    premise_hits: int
    violations: list[HypothesisViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def summary(self) -> str:
        if self.passed:
            return f"no violation found on grid ({self.premise_hits}/{self.grid_size} premise hits)"
        return f"{len(self.violations)} violations on grid ({self.premise_hits}/{self.grid_size} premise hits)"

    def to_dict(self, max_violations: int | None = 100) -> dict:
        vs = self.violations if max_violations is None else self.violations[:max_violations]
        return {
            "theorem": self.theorem,
            "pass": self.passed,
            "grid_size": self.grid_size,
            "premise_hits": self.premise_hits,
            "n_violations": len(self.violations),
            "violations": [{"t": list(v.t), "premise": list(v.premise), "conclusion": list(v.conclusion)}
                           for v in vs],
            "summary": self.summary,
        }


def _grid(grid) -> np.ndarray:
    g = t_grid() if grid is None else np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0 or np.any(g <= 0):
        raise ValueError("grid must be a nonempty list of positive reals")
    return g


def _implication(theorem, axes, premise, conclusion, rtol=REL_TOL) -> HypothesisReport:
    """Evaluate ``premise => conclusion`` on the Cartesian product of ``axes``.

    Both callables take the tuple of broadcast grid arrays and return
    ``(lhs, rhs)`` of an inequality ``lhs <= rhs``. The premise holds within
    one tolerance; the conclusion fails only beyond ten.
    """
    mesh = np.meshgrid(*axes, indexing="ij")
    pl, pr = np.broadcast_arrays(*premise(mesh))
    cl, cr = np.broadcast_arrays(*conclusion(mesh))
    holds = pl <= pr + allowance(pl, pr, rtol)
    fails = cl > cr + 10 * allowance(cl, cr, rtol)
    bad = np.argwhere(holds & fails)
    vios = [
        HypothesisViolation(tuple(float(m[tuple(k)]) for m in mesh), (float(pl[tuple(k)]), float(pr[tuple(k)])),
                            (float(cl[tuple(k)]), float(cr[tuple(k)])))
        for k in bad
    ]
    return HypothesisReport(theorem, int(pl.size), int(holds.sum()), vios)


def _need_homogeneous(phi):
    if not phi.report.passed("homogeneity"):
        raise UnvalidatedFunction(f"{phi!r} is not homogeneous: {phi.report.verdicts['homogeneity'].detail}")


def _need_control(eta):
    if not eta.report.all_passed:
        raise UnvalidatedFunction(f"control function {eta!r} fails: {', '.join(eta.report.failures)}")


def check_hyp_qs_general(phi, psi, eta, grid=None, rtol: float = REL_TOL) -> HypothesisReport:
    """``1 <= phi(psi(1/t1, 1/t2), psi(1/t3, 1/t4))`` implies the same with every ``ti`` replaced by ``eta(ti)``."""
    phi, psi, eta = dyadic(phi), dyadic(psi), control(eta)
    _require_valid(phi, psi)
    _need_homogeneous(phi)
    _need_control(eta)
    g = _grid(grid)

    def side(f):
        def inner(m):
            t1, t2, t3, t4 = (f(x) for x in m)
            return 1.0, phi(psi(1 / t1, 1 / t2), psi(1 / t3, 1 / t4))
        return inner

    return _implication("qs_general", [g] * 4, side(lambda x: x), side(eta), rtol)


def check_hyp_qs_additive(phi, eta, grid=None, rtol: float = REL_TOL) -> HypothesisReport:
    """Premise ``1 + (1/t1)(1/t5) <= phi(1/t1 + 1/t2, 1/t3 + 1/t4)``;
    conclusion ``1 + eta(1/t1) eta(1/t5) <= phi(1/eta(t1) + 1/eta(t2), 1/eta(t3) + 1/eta(t4))``.
    """
    phi, eta = dyadic(phi), control(eta)
    _require_valid(phi, dyadic("sum"))
    _need_homogeneous(phi)
    _need_control(eta)
    g = _grid(grid)

    def premise(m):
        t1, t2, t3, t4, t5 = m
        return 1 + (1 / t1) * (1 / t5), phi(1 / t1 + 1 / t2, 1 / t3 + 1 / t4)

    def conclusion(m):
        t1, t2, t3, t4, t5 = m
        lhs = 1 + eta(1 / t1) * eta(1 / t5)
        return lhs, phi(1 / eta(t1) + 1 / eta(t2), 1 / eta(t3) + 1 / eta(t4))

    return _implication("qs_additive", [g] * 5, premise, conclusion, rtol)


def check_hyp_qm(phi, eta, grid=None, rtol: float = REL_TOL) -> HypothesisReport:
    """``1 <= phi(t1, t2)`` implies ``1 <= phi(1/eta(1/t1), 1/eta(1/t2))``."""
    phi, eta = dyadic(phi), control(eta)
    _require_valid(phi, dyadic("product"))
    _need_homogeneous(phi)
    _need_control(eta)
    g = _grid(grid)

    def premise(m):
        t1, t2 = m
        return 1.0, phi(t1, t2)

    def conclusion(m):
        t1, t2 = m
        return 1.0, phi(1 / eta(1 / t1), 1 / eta(1 / t2))

    return _implication("qm_multiplicative", [g] * 2, premise, conclusion, rtol)


def check_hyp_ptolemy_qs(eta, grid=None, rtol: float = REL_TOL) -> HypothesisReport:
    """``t1 t2 t3 t4 <= t1 t2 + t3 t4`` implies the same inequality for ``eta(ti)``."""
    eta = control(eta)
    _need_control(eta)
    g = _grid(grid)

    def side(f):
        def inner(m):
            a, b, c, e = (f(x) for x in m)
            return a * b * c * e, a * b + c * e
        return inner

    return _implication("ptolemy_qs", [g] * 4, side(lambda x: x), side(eta), rtol)


def verify_power_subadditivity(alpha: float, grid=None, rtol: float = REL_TOL) -> PropertyReport:
    """Grid check of ``(u+v)^alpha <= u^alpha + v^alpha`` for ``0 < alpha <= 1``.

    ``grid`` defaults to ``{0} U {2^k : k=-6..6}`` per axis. The report also
    records whether equality held everywhere (``equality``).
    """
    if not 0 < alpha <= 1:
        raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {alpha}")
    g = np.concatenate([[0.0], t_grid()]) if grid is None else np.asarray(grid, dtype=float)
    u, v = np.meshgrid(g, g, indexing="ij")
    lhs = (u + v) ** alpha
    rhs = u**alpha + v**alpha
    rep = PropertyReport(f"(u+v)^{alpha!r} <= u^{alpha!r} + v^{alpha!r}")
    bad = np.argwhere(lhs - rhs > allowance(lhs, rhs, rtol))
    if bad.size:
        i, j = bad[0]
        rep.verdicts["subadditivity"] = Verdict("fail", (float(g[i]), float(g[j])), f"{lhs[i, j]!r} > {rhs[i, j]!r}")
    else:
        rep.verdicts["subadditivity"] = Verdict("pass")
    eq = np.abs(lhs - rhs) <= allowance(lhs, rhs, rtol)
    rep.verdicts["equality"] = Verdict("pass") if eq.all() else Verdict(
        "fail", tuple(float(g[k]) for k in np.argwhere(~eq)[0]), "strict inequality somewhere")
    return rep


# --- experiments -----------------------------------------------------------


@dataclass
class ExperimentReport:
    theorem: str
    map_check: CheckReport
    premise_check: CheckReport
    hypothesis_check: HypothesisReport
    conclusion_check: CheckReport

    @property
    def premise_failed(self) -> bool:
        return not self.premise_check.passed

    @property
    def theorem_violation(self) -> bool:
        return (self.map_check.passed and self.premise_check.passed and self.hypothesis_check.passed
                and not self.conclusion_check.passed)

    @property
    def status(self) -> str:
        if self.theorem_violation:
            return "THEOREM VIOLATION"
        if self.premise_failed:
            return "premise_fail"
        if not self.hypothesis_check.passed:
            return "hypothesis_fail"
        return "conclusion_pass" if self.conclusion_check.passed else "conclusion_fail"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "theorem_violation": self.theorem_violation,
            "map_check": self.map_check.to_dict(),
            "premise_check": self.premise_check.to_dict(),
            "hypothesis_check": self.hypothesis_check.to_dict(max_violations=10),
            "conclusion_check": self.conclusion_check.to_dict(),
        }


_FIXED_INNER = {"qs_additive": "sum", "qm_multiplicative": "product", "ptolemy_qs": "product"}


def _hypothesis(theorem, phi, psi, eta, grid):
    if theorem == "qs_general":
        return check_hyp_qs_general(phi, psi, eta, grid)
    if theorem == "qs_additive":
        return check_hyp_qs_additive(phi, eta, grid)
    if theorem == "qm_multiplicative":
        return check_hyp_qm(phi, eta, grid)
    if theorem == "ptolemy_qs":
        return check_hyp_ptolemy_qs(eta, grid)
    raise ValueError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")


def run_preservation_experiment(source, map_kind, phi=None, psi=None, eta="t", grid=None,
                                theorem: str = "qs_general", hypothesis: HypothesisReport | None = None,
                                rtol: float = REL_TOL) -> ExperimentReport:
    """Premise on ``source``, hypothesis on the grid, conclusion on the image.

    Parameters
    ----------
    source : FiniteSemimetricSpace
    map_kind : SpaceMap or (kind, param)
        Map to test, or arguments for :func:`make_transform_map`.
    phi, psi : DyadicFunction or str
        ``psi`` is fixed to ``u+v`` for ``qs_additive`` and to ``u*v`` for
        ``qm_multiplicative``/``ptolemy_qs``; ``ptolemy_qs`` also fixes
        ``phi = u+v``.
    hypothesis : HypothesisReport, optional
        Reuse a grid result computed for the same functions.

    Raises
    ------
    MapVerificationFailed
        If the map is not quasisymmetric (quasimobius for
        ``qm_multiplicative``) with the given ``eta``.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")
    if isinstance(map_kind, SpaceMap):
        m = map_kind
    else:
        kind, param = map_kind
        m = make_transform_map(source, kind, param)
    if theorem == "ptolemy_qs":
        phi = "sum"
    psi = _FIXED_INNER.get(theorem, psi)
    if phi is None or psi is None:
        raise ValueError("phi and psi are required")
    phi, psi, eta = dyadic(phi), dyadic(psi), control(eta)

    if theorem == "qm_multiplicative":
        map_check = verify_quasimobius(m, eta, rtol)
    else:
        map_check = verify_quasisymmetric(m, eta, rtol)
    if not map_check.passed:
        raise MapVerificationFailed(f"map fails {map_check.property} with eta={eta.text}: defect {map_check.defect!r}")
    hyp = hypothesis if hypothesis is not None else _hypothesis(theorem, phi, psi, eta, grid)
    premise = check_quadruple_pair(m.source, phi, psi, rtol=rtol)
    conclusion = check_quadruple_pair(m.target, phi, psi, rtol=rtol)
    return ExperimentReport(theorem, map_check, premise, hyp, conclusion)


# --- battery ---------------------------------------------------------------


def default_battery() -> dict:
    """Experiments covering snowflake preservation, the quasimobius variant and additive metrics."""
    planar = {"kind": "lp-points", "count": 100, "n": [4, 10], "dim": 2, "p": 2, "seed": 0}
    exps = []
    for a in (0.3, 0.5, 0.9):
        exps.append({"name": f"ptolemy-snowflake-{a}", "theorem": "qs_general", "spaces": planar,
                     "map": {"kind": "snowflake", "param": a},
                     "functions": {"phi": "u+v", "psi": "u*v", "eta": f"t^{a}"}, "grid": {"kmin": -6, "kmax": 6}})
        exps.append({"name": f"ptolemy-qm-snowflake-{a}", "theorem": "qm_multiplicative", "spaces": planar,
                     "map": {"kind": "snowflake", "param": a},
                     "functions": {"phi": "u+v", "eta": f"t^{a}"}, "grid": {"kmin": -6, "kmax": 6}})
    exps.append({"name": "additive-tree-identity", "theorem": "qs_additive",
                 "spaces": {"kind": "tree", "count": 30, "n": [4, 12], "seed": 0},
                 "map": {"kind": "identity"}, "functions": {"phi": "max(u,v)", "eta": "t"},
                 "grid": {"kmin": -6, "kmax": 6}})
    return {"experiments": exps}


def generate_spaces(spec: dict) -> list:
    """Spaces from a generator spec ``{kind, count, n: [lo, hi] or int, seed, ...}``."""
    kind = spec.get("kind")
    count = int(spec.get("count", 1))
    n = spec.get("n", 6)
    lo, hi = (n, n) if isinstance(n, int) else (int(n[0]), int(n[1]))
    seed = int(spec.get("seed", 0))
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        k = int(rng.integers(lo, hi + 1))
        s = seed * 100003 + i
        if kind == "lp-points":
            pts = sp.gen_random_points(k, int(spec.get("dim", 2)), s)
            out.append(sp.from_points_lp(pts, float(spec.get("p", 2))))
        elif kind == "random":
            out.append(sp.gen_random_metric(k, s))
        elif kind == "ultrametric":
            out.append(sp.gen_random_ultrametric(k, s))
        elif kind == "semimetric":
            out.append(sp.gen_random_semimetric(k, s))
        elif kind == "tree":
            out.append(sp.gen_random_tree_metric(k, s, leaves_only=bool(spec.get("leaves_only", False))))
        else:
            raise ValueError(f"unknown space generator {kind!r}")
    return out


def run_battery(config: dict) -> dict:
    """Run each experiment of a battery config over its generated spaces.

    A config is either one experiment object or ``{"experiments": [...]}``.
    Each experiment has ``spaces`` (generator spec), ``map``
    (``{kind, param}``), ``functions`` (DSL strings ``phi``, ``psi``,
    ``eta``), optional ``theorem`` and ``grid`` (``{kmin, kmax}``).
    """
    exps = config["experiments"] if "experiments" in config else [config]
    results = []
    total_violations = 0
    for i, e in enumerate(exps):
        theorem = e.get("theorem", "qs_general")
        fn = e.get("functions", {})
        g = e.get("grid", {})
        grid = t_grid(int(g.get("kmin", -6)), int(g.get("kmax", 6)))
        mp = e.get("map", {"kind": "identity"})
        phi = fn.get("phi", "u+v")
        psi = fn.get("psi", _FIXED_INNER.get(theorem, "u*v"))
        eta = fn.get("eta", "t")
        if theorem == "ptolemy_qs":
            phi = "sum"
        hyp = _hypothesis(theorem, dyadic(phi), dyadic(_FIXED_INNER.get(theorem, psi)), control(eta), grid)
        statuses: dict[str, int] = {}
        violations = []
        for j, src in enumerate(generate_spaces(e["spaces"])):
            rep = run_preservation_experiment(src, (mp["kind"], mp.get("param")), phi, psi, eta,
                                              theorem=theorem, hypothesis=hyp)
            statuses[rep.status] = statuses.get(rep.status, 0) + 1
            if rep.theorem_violation:
                violations.append({"space_index": j, "report": rep.to_dict()})
        total_violations += len(violations)
        results.append({"name": e.get("name", f"experiment-{i}"), "theorem": theorem,
                        "hypothesis": hyp.to_dict(max_violations=10), "statuses": statuses,
                        "theorem_violations": violations})
    return {"pass": total_violations == 0, "theorem_violations": total_violations, "experiments": results}


def load_battery(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
