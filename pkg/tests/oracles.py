"""Slow pure-Python reference scans, independent of the vectorized engine."""
import itertools
import math

REL = 1e-9


def viol(lhs, rhs):
    return lhs - rhs > max(REL * max(abs(lhs), abs(rhs)), 1e-12)


def _d(space):
    return space.dist.tolist()


def quads(n, distinct=False):
    for q in itertools.product(range(n), repeat=4):
        if distinct and len(set(q)) < 4:
            continue
        yield q


def brute(space, sides, distinct=False):
    """Return (passed, defect) of a four-point inequality given by ``sides(d, *q)``."""
    d = _d(space)
    passed, defect = True, -math.inf
    for q in quads(space.n, distinct):
        lhs, rhs = sides(d, *q)
        defect = max(defect, lhs - rhs)
        if viol(lhs, rhs):
            passed = False
    return passed, defect


def ptolemy(d, x, y, z, t):
    return d[x][z] * d[t][y], d[x][y] * d[t][z] + d[x][t] * d[y][z]


def additive(d, x, y, z, t):
    return d[x][z] + d[t][y], max(d[x][y] + d[t][z], d[x][t] + d[y][z])


def hyperbolic(delta):
    def sides(d, x, y, z, t):
        return d[x][z] + d[t][y], 2 * delta + max(d[x][y] + d[t][z], d[x][t] + d[y][z])
    return sides


def roundness_at(q):
    def sides(d, x1, x2, y1, y2):
        p = lambda a, b: d[a][b] ** q
        return p(x1, x2) + p(y1, y2), p(x1, y1) + p(x1, y2) + p(x2, y1) + p(x2, y2)
    return sides


def delta_star(space):
    d = _d(space)
    best = 0.0
    for x, y, z, t in itertools.product(range(space.n), repeat=4):
        s = sorted([d[x][y] + d[z][t], d[x][z] + d[y][t], d[x][t] + d[y][z]])
        best = max(best, (s[2] - s[1]) / 2)
    return best


def is_metric(space):
    d = _d(space)
    return not any(viol(d[x][y], d[x][z] + d[z][y]) for x, y, z in itertools.product(range(space.n), repeat=3))


def is_ultrametric(space):
    d = _d(space)
    return not any(viol(d[x][y], max(d[x][z], d[z][y])) for x, y, z in itertools.product(range(space.n), repeat=3))
