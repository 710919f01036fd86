"""Shared DSL cases: expressions that must round-trip and inputs with known error offsets."""
import numpy as np

from fourpoint.funcdsl import ExprSyntaxError, UnknownVariable

VALID = [
    ("u+v", "uv"),
    ("max(u,v)", "uv"),
    ("u*v", "uv"),
    ("2*0.5+max(u,v)", "uv"),
    ("u^2+v^2", "uv"),
    ("(u+v)^0.5", "uv"),
    ("2^u^0.5", "uv"),
    ("u-v+u", "uv"),
    ("u-(v-u)", "uv"),
    ("u/(1+v)", "uv"),
    ("u/v/2", "uv"),
    ("(u*v)/(u+v+1)", "uv"),
    ("min(u,v)*3", "uv"),
    ("max(min(u,v), 0.5*u)", "uv"),
    ("1e-3*u + v", "uv"),
    ("(u^2)^0.5 + .5*v", "uv"),
    ("u*(v+2)^2", "uv"),
    ("t^0.5", "t"),
    ("3.*t/(1+t)", "t"),
    ("(t-1)^2 + t", "t"),
]

# (text, variables, exception type, byte offset)
ERRORS = [
    ("u+", "uv", ExprSyntaxError, 2),
    ("u+w", "uv", UnknownVariable, 2),
    ("t+u", "t", UnknownVariable, 2),
    ("max(u v)", "uv", ExprSyntaxError, 6),
    ("(u+v", "uv", ExprSyntaxError, 4),
    ("u $ v", "uv", ExprSyntaxError, 2),
    ("u+v)", "uv", ExprSyntaxError, 3),
    ("min(u,)", "uv", ExprSyntaxError, 6),
    ("-u", "uv", ExprSyntaxError, 0),
    # two no-break spaces are four bytes but two characters
    ("u+  v)", "uv", ExprSyntaxError, 7),
]


def random_points(n=100, seed=7):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.01, 4.0, size=(n, 2))


def bindings(variables, pts):
    if variables == "t":
        return {"t": pts[:, 0]}
    return {"u": pts[:, 0], "v": pts[:, 1]}
