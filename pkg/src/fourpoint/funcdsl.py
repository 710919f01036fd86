"""A tiny expression language for the functions used in four-point inequalities.

Two-argument functions are written in ``u`` and ``v`` (``"u*v"``,
``"2*0.5+max(u,v)"``); one-argument control functions in ``t``
(``"t^0.5"``). Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" factor)?
    atom   := NUMBER | IDENT | IDENT "(" expr "," expr ")" | "(" expr ")"

``IDENT`` is one of ``u, v, t, max, min``. Evaluation is vectorized over
numpy arrays.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Mapping, Union

import numpy as np

from .tolerance import REL_TOL, ABS_TOL, exceeds, close

__all__ = [
    "FuncDslError",
    "ExprSyntaxError",
    "UnknownVariable",
    "EvalError",
    "DivisionByZero",
    "DomainError",
    "NonFiniteResult",
    "Num",
    "Var",
    "BinOp",
    "Call",
    "FuncExpr",
    "parse",
    "parse_dyadic",
    "parse_monadic",
    "evaluate",
    "to_text",
    "DyadicFunction",
    "MonadicControl",
    "Verdict",
    "PropertyReport",
    "validation_grid",
    "validate_dyadic",
    "validate_pair",
    "validate_control",
    "dyadic",
    "control",
]


class FuncDslError(ValueError):
    pass


class ExprSyntaxError(FuncDslError):
    """Malformed expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class UnknownVariable(FuncDslError):
    def __init__(self, name: str, offset: int, allowed):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown variable {name!r} at offset {offset}; allowed: {', '.join(sorted(allowed))}")


class EvalError(FuncDslError):
    pass


class DivisionByZero(EvalError):
    pass


class DomainError(EvalError):
    pass


class NonFiniteResult(EvalError):
    pass


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "FuncExpr"
    right: "FuncExpr"


@dataclass(frozen=True)
class Call:
    name: str
    left: "FuncExpr"
    right: "FuncExpr"


FuncExpr = Union[Num, Var, BinOp, Call]

DYADIC_VARS = frozenset({"u", "v"})
MONADIC_VARS = frozenset({"t"})
_FUNCS = frozenset({"max", "min"})

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos), text)
        kind = m.lastgroup
        if kind != "ws":
            toks.append((kind, m.group(), pos))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, variables):
        self.text = text
        self.variables = variables
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(message, _byte_offset(self.text, tok[2]), self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] == "end":
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.advance()
            return BinOp("^", base, self.factor())
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "ident":
            self.advance()
            if value in _FUNCS:
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return Call(value, a, b)
            if value not in self.variables:
                raise UnknownVariable(value, _byte_offset(self.text, pos), self.variables)
            return Var(value)
        if value == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(f"expected a number, variable or '(' but found {value or 'end of input'!r}")


def parse(text: str, variables=DYADIC_VARS | MONADIC_VARS) -> FuncExpr:
    return _Parser(text, frozenset(variables)).parse()


def parse_dyadic(text: str) -> FuncExpr:
    """Parse a two-argument expression in ``u`` and ``v``."""
    return parse(text, DYADIC_VARS)


def parse_monadic(text: str) -> FuncExpr:
    """Parse a one-argument expression in ``t``."""
    return parse(text, MONADIC_VARS)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}


def to_text(node: FuncExpr) -> str:
    """Pretty-print with the minimal parentheses needed to re-parse the same tree."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}({to_text(node.left)}, {to_text(node.right)})"
    p = _PREC[node.op]
    left, right = to_text(node.left), to_text(node.right)
    lp = _PREC.get(getattr(node.left, "op", None), 4)
    rp = _PREC.get(getattr(node.right, "op", None), 4)
    # ^ is right associative, the others left associative
    if lp < p or (node.op == "^" and lp == p):
        left = f"({left})"
    if rp < p or (node.op != "^" and rp == p):
        right = f"({right})"
    if node.op == "^":
        return f"{left}^{right}"
    return f"{left} {node.op} {right}"


def evaluate(node: FuncExpr, bindings: Mapping[str, object], strict: bool = True):
    """Evaluate an expression; array bindings broadcast elementwise.

    With ``strict=True`` division by zero, ``0 ^ negative`` and non-finite
    results raise. With ``strict=False`` they yield ``inf``/``nan`` instead.
    """
    with np.errstate(all="ignore"):
        out = _eval(node, bindings, strict)
    if strict and not np.all(np.isfinite(out)):
        raise NonFiniteResult("expression evaluated to a non-finite value")
    if np.ndim(out) == 0:
        return float(out)
    return out


def _eval(node, env, strict):
    if isinstance(node, Num):
        return np.float64(node.value)
    if isinstance(node, Var):
        try:
            return np.asarray(env[node.name], dtype=float)
        except KeyError:
            raise EvalError(f"variable {node.name!r} is not bound") from None
    a = _eval(node.left, env, strict)
    b = _eval(node.right, env, strict)
    if isinstance(node, Call):
        return np.maximum(a, b) if node.name == "max" else np.minimum(a, b)
    op = node.op
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if strict and np.any(b == 0):
            raise DivisionByZero("division by zero")
        return a / b
    if strict:
        if np.any((a == 0) & (b < 0)):
            raise DomainError("zero raised to a negative power")
        if np.any((a < 0) & (b != np.round(b))):
            raise DomainError("negative base with non-integer exponent")
    return np.power(a, b)


def _free_vars(node) -> set:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    return _free_vars(node.left) | _free_vars(node.right)


# --- validated function objects --------------------------------------------


def _fmt(x: float) -> str:
    return repr(float(x))


_DYADIC_BUILTINS: dict[str, tuple[Callable, Callable]] = {
    # tag -> (numpy implementation factory, text factory)
    "sum": (lambda: lambda u, v: u + v, lambda: "u+v"),
    "max": (lambda: lambda u, v: np.maximum(u, v), lambda: "max(u,v)"),
    "product": (lambda: lambda u, v: u * v, lambda: "u*v"),
    "scaled_sum": (lambda k: lambda u, v: k * (u + v), lambda k: f"{_fmt(k)}*(u+v)"),
    "hyperbolic": (lambda d: lambda u, v: 2 * d + np.maximum(u, v), lambda d: f"2*{_fmt(d)}+max(u,v)"),
    "power_sum": (lambda q: lambda u, v: u**q + v**q, lambda q: f"u^{_fmt(q)}+v^{_fmt(q)}"),
}

_MONADIC_BUILTINS: dict[str, tuple[Callable, Callable]] = {
    "identity": (lambda: lambda t: t, lambda: "t"),
    "power": (lambda a: lambda t: t**a, lambda a: f"t^{_fmt(a)}"),
    "affine": (lambda a, b: lambda t: a * t + b, lambda a, b: f"{_fmt(a)}*t+{_fmt(b)}"),
}


class _Function:
    _builtins: dict = {}
    _vars: frozenset = frozenset()

    def __init__(self, spec, *params):
        if isinstance(spec, str) and spec in self._builtins:
            impl, text = self._builtins[spec]
            self.tag = spec
            self.params = tuple(float(p) for p in params)
            self._impl = impl(*self.params)
            self.text = text(*self.params)
            self.expr = parse(self.text, self._vars)
        else:
            if params:
                raise TypeError("parameters are only accepted for builtin tags")
            expr = parse(spec, self._vars) if isinstance(spec, str) else spec
            extra = _free_vars(expr) - self._vars
            if extra:
                name = sorted(extra)[0]
                raise UnknownVariable(name, -1, self._vars)
            self.tag = None
            self.params = ()
            self.expr = expr
            self.text = spec if isinstance(spec, str) else to_text(expr)
            self._impl = None

    def __repr__(self):
        if self.tag:
            args = ", ".join(_fmt(p) for p in self.params)
            return f"{type(self).__name__}({self.tag!r}{', ' + args if args else ''})"
        return f"{type(self).__name__}({self.text!r})"

    def __setattr__(self, name, value):
        if name in self.__dict__:
            raise AttributeError(f"{type(self).__name__} is immutable")
        super().__setattr__(name, value)


class DyadicFunction(_Function):
    """Two-argument function ``f(u, v)``: a builtin tag or a DSL expression.

    Builtin tags: ``sum``, ``max``, ``product``, ``scaled_sum(K)``,
    ``hyperbolic(delta)`` (``2*delta + max``) and ``power_sum(q)``.
    """

    _builtins = _DYADIC_BUILTINS
    _vars = DYADIC_VARS

    def __call__(self, u, v, strict: bool = True):
        if self._impl is not None:
            with np.errstate(all="ignore"):
                out = self._impl(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
            if strict and not np.all(np.isfinite(out)):
                raise NonFiniteResult(f"{self!r} is non-finite")
            return float(out) if np.ndim(out) == 0 else out
        return evaluate(self.expr, {"u": u, "v": v}, strict=strict)

    @cached_property
    def report(self) -> "PropertyReport":
        return validate_dyadic(self)


class MonadicControl(_Function):
    """Control function ``eta(t)``: builtin ``identity``, ``power(a)``, ``affine(a, b)`` or an expression in ``t``."""

    _builtins = _MONADIC_BUILTINS
    _vars = MONADIC_VARS

    def __call__(self, t, strict: bool = True):
        if self._impl is not None:
            with np.errstate(all="ignore"):
                out = self._impl(np.asarray(t, dtype=float))
            if strict and not np.all(np.isfinite(out)):
                raise NonFiniteResult(f"{self!r} is non-finite")
            return float(out) if np.ndim(out) == 0 else out
        return evaluate(self.expr, {"t": t}, strict=strict)

    @cached_property
    def report(self) -> "PropertyReport":
        return validate_control(self)


@lru_cache(maxsize=256)
def _cached(cls, spec, params):
    return cls(spec, *params)


def dyadic(spec, *params) -> DyadicFunction:
    """Coerce a tag, DSL string or existing function to ``DyadicFunction``.

    String specs are cached so repeated calls share one validation report.
    """
    if isinstance(spec, DyadicFunction):
        return spec
    if isinstance(spec, str):
        return _cached(DyadicFunction, spec, params)
    return DyadicFunction(spec, *params)


def control(spec, *params) -> MonadicControl:
    if isinstance(spec, MonadicControl):
        return spec
    if isinstance(spec, str):
        return _cached(MonadicControl, spec, params)
    return MonadicControl(spec, *params)


# --- property validation ---------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass" | "fail" | "not-checked"
    witness: tuple | None = None
    detail: str = ""


@dataclass
class PropertyReport:
    subject: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def passed(self, name: str) -> bool:
        return self.verdicts.get(name, Verdict("not-checked")).status == "pass"

    def status(self, name: str) -> str:
        return self.verdicts.get(name, Verdict("not-checked")).status

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v.status == "fail"]

    @property
    def all_passed(self) -> bool:
        return all(v.status == "pass" for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdicts": {
                k: {"status": v.status, "witness": list(v.witness) if v.witness is not None else None, "detail": v.detail}
                for k, v in self.verdicts.items()
            },
        }


GRID_EXPONENTS = range(-8, 9)
HOMOGENEITY_FACTORS = (0.5, 2.0, 3.0)
N_RANDOM = 200
GRID_SEED = 0


def validation_grid(seed: int = GRID_SEED) -> tuple[np.ndarray, np.ndarray]:
    """Axis values ``{0} U {2^k : k=-8..8}`` and 200 seeded points in ``(0, 256]^2``."""
    axis = np.concatenate([[0.0], 2.0 ** np.array(GRID_EXPONENTS, dtype=float)])
    rng = np.random.default_rng(seed)
    pts = 256.0 - rng.uniform(0.0, 256.0, size=(N_RANDOM, 2))
    return axis, pts


def _first(mask) -> tuple | None:
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if idx.size else None


def _pairs_dominated(pts):
    # mask[i, j]: pts[i] <= pts[j] componentwise
    return (pts[:, None, 0] <= pts[None, :, 0]) & (pts[:, None, 1] <= pts[None, :, 1])


def validate_dyadic(f, seed: int = GRID_SEED, rtol: float = REL_TOL) -> PropertyReport:
    """Check symmetry, monotonicity, zero at the origin, homogeneity and ``a <= f(0, a)`` on the grid.

    Properties are reported under the names ``finite``, ``symmetry``,
    ``monotonicity``, ``zero_origin``, ``homogeneity`` and
    ``zero_section_bound``.
    """
    f = dyadic(f)
    rep = PropertyReport(repr(f))
    axis, pts = validation_grid(seed)
    U, V = np.meshgrid(axis, axis, indexing="ij")
    F = f(U, V, strict=False)
    Fr = f(pts[:, 0], pts[:, 1], strict=False)

    bad = _first(~np.isfinite(F))
    if bad is None:
        k = _first(~np.isfinite(Fr))
        bad = None if k is None else tuple(pts[k[0]])
    else:
        bad = (axis[bad[0]], axis[bad[1]])
    if bad is not None:
        rep.verdicts["finite"] = Verdict("fail", tuple(float(x) for x in bad), "non-finite value")
        for name in ("symmetry", "monotonicity", "zero_origin", "homogeneity", "zero_section_bound"):
            rep.verdicts[name] = Verdict("not-checked", None, "function is not finite on the grid")
        return rep
    rep.verdicts["finite"] = Verdict("pass")

    # symmetry
    asym = ~close(F, F.T, rtol)
    Fs = f(pts[:, 1], pts[:, 0], strict=False)
    w = _first(asym)
    if w is not None:
        u, v = axis[w[0]], axis[w[1]]
        rep.verdicts["symmetry"] = Verdict("fail", (u, v), f"f(u,v)={F[w]!r} != f(v,u)={F.T[w]!r}")
    elif (k := _first(~close(Fr, Fs, rtol))) is not None:
        u, v = pts[k[0]]
        rep.verdicts["symmetry"] = Verdict("fail", (float(u), float(v)), "f(u,v) != f(v,u)")
    else:
        rep.verdicts["symmetry"] = Verdict("pass")

    # monotonicity: for axis values a_i <= a_j, f must not decrease along either argument
    le = axis[:, None] <= axis[None, :]
    drop_u = exceeds(F[:, None, :], F[None, :, :], rtol) & le[:, :, None]  # (i, j, v)
    drop_v = exceeds(F[:, :, None], F[:, None, :], rtol) & le[None, :, :]  # (u, i, j)
    dom = _pairs_dominated(pts)
    drop_r = exceeds(Fr[:, None], Fr[None, :], rtol) & dom
    if (w := _first(drop_u)) is not None:
        i, j, k = w
        rep.verdicts["monotonicity"] = Verdict(
            "fail", (axis[i], axis[k], axis[j], axis[k]), f"f decreases in u: {F[i, k]!r} > {F[j, k]!r}")
    elif (w := _first(drop_v)) is not None:
        k, i, j = w
        rep.verdicts["monotonicity"] = Verdict(
            "fail", (axis[k], axis[i], axis[k], axis[j]), f"f decreases in v: {F[k, i]!r} > {F[k, j]!r}")
    elif (w := _first(drop_r)) is not None:
        i, j = w
        rep.verdicts["monotonicity"] = Verdict(
            "fail", (*map(float, pts[i]), *map(float, pts[j])), f"{Fr[i]!r} > {Fr[j]!r}")
    else:
        rep.verdicts["monotonicity"] = Verdict("pass")

    f00 = F[0, 0]
    if abs(f00) <= ABS_TOL:
        rep.verdicts["zero_origin"] = Verdict("pass")
    else:
        rep.verdicts["zero_origin"] = Verdict("fail", (0.0, 0.0), f"f(0,0) = {f00!r}")

    # homogeneity: k f(u,v) = f(ku, kv)
    verdict = Verdict("pass")
    for kf in HOMOGENEITY_FACTORS:
        lhs = kf * F
        rhs = f(kf * U, kf * V, strict=False)
        w = _first(~close(lhs, rhs, rtol))
        if w is None:
            lr = kf * Fr
            rr = f(kf * pts[:, 0], kf * pts[:, 1], strict=False)
            k = _first(~close(lr, rr, rtol))
            if k is not None:
                u, v = pts[k[0]]
                verdict = Verdict("fail", (kf, float(u), float(v)), f"{kf}*f = {lr[k]!r} != f(ku,kv) = {rr[k]!r}")
                break
            continue
        u, v = axis[w[0]], axis[w[1]]
        verdict = Verdict("fail", (kf, u, v), f"{kf}*f(u,v) = {lhs[w]!r} != f(ku,kv) = {rhs[w]!r}")
        break
    rep.verdicts["homogeneity"] = verdict

    # a <= f(0, a) for a > 0
    a = np.concatenate([axis[1:], pts[:, 0]])
    f0a = f(np.zeros_like(a), a, strict=False)
    k = _first(exceeds(a, f0a, rtol))
    if k is None:
        rep.verdicts["zero_section_bound"] = Verdict("pass")
    else:
        rep.verdicts["zero_section_bound"] = Verdict(
            "fail", (0.0, float(a[k[0]])), f"a = {a[k]!r} > f(0,a) = {f0a[k]!r}")
    return rep


def validate_pair(phi, psi, space=None, seed: int = GRID_SEED, rtol: float = REL_TOL) -> PropertyReport:
    """Conditions tying the outer function ``phi`` to the inner ``psi``.

    * ``zero_section_order``: ``psi(0, a) <= phi(0, a)`` for ``a > 0``.
    * ``triangle_function``: ``d(x,y) <= psi(d(x,z), d(y,z))`` over every
      triple of ``space`` (not checked without a space).
    * ``ratio_multiplicativity``: ``psi(a/b, c/d) * psi(b, d) = psi(a, c)``.
    * ``ratio_quotient_printed``: ``psi(a/b, c/d) = psi(a, b) / psi(c, d)``,
      a variant reported for reference; ``u*v`` fails it.
    """
    phi, psi = dyadic(phi), dyadic(psi)
    rep = PropertyReport(f"phi={phi!r}, psi={psi!r}")
    axis, pts = validation_grid(seed)
    a = np.concatenate([axis[1:], pts[:, 0], pts[:, 1]])
    z = np.zeros_like(a)
    lhs, rhs = psi(z, a, strict=False), phi(z, a, strict=False)
    k = _first(exceeds(lhs, rhs, rtol) | ~np.isfinite(lhs) | ~np.isfinite(rhs))
    if k is None:
        rep.verdicts["zero_section_order"] = Verdict("pass")
    else:
        rep.verdicts["zero_section_order"] = Verdict(
            "fail", (0.0, float(a[k[0]])), f"psi(0,a) = {lhs[k]!r} > phi(0,a) = {rhs[k]!r}")

    if space is None:
        rep.verdicts["triangle_function"] = Verdict("not-checked", None, "no space given")
    else:
        d = space.dist
        dxy = d[:, :, None]
        dxz = d[:, None, :]
        dyz = d[None, :, :]
        bound = psi(dxz, dyz, strict=False)
        w = _first(exceeds(dxy, bound, rtol) | ~np.isfinite(bound))
        if w is None:
            rep.verdicts["triangle_function"] = Verdict("pass")
        else:
            x, y, zz = w
            lab = space.labels
            rep.verdicts["triangle_function"] = Verdict(
                "fail", (lab[x], lab[y], lab[zz]),
                f"d(x,y) = {d[x, y]!r} > psi(d(x,z), d(y,z)) = {float(bound[w])!r}")

    pos = 2.0 ** np.array(GRID_EXPONENTS, dtype=float)
    A, B, C, D = np.meshgrid(pos, pos, pos, pos, indexing="ij")
    left = psi(A / B, C / D, strict=False)
    r1 = left * psi(B, D, strict=False)
    r0 = psi(A, C, strict=False)
    w = _first(~close(r1, r0, rtol))
    if w is None:
        rep.verdicts["ratio_multiplicativity"] = Verdict("pass")
    else:
        wit = tuple(float(pos[i]) for i in w)
        rep.verdicts["ratio_multiplicativity"] = Verdict(
            "fail", wit, f"psi(a/b,c/d)*psi(b,d) = {r1[w]!r} != psi(a,c) = {r0[w]!r}")
    printed = psi(A, B, strict=False) / psi(C, D, strict=False)
    w = _first(~close(left, printed, rtol))
    if w is None:
        rep.verdicts["ratio_quotient_printed"] = Verdict("pass")
    else:
        wit = tuple(float(pos[i]) for i in w)
        rep.verdicts["ratio_quotient_printed"] = Verdict(
            "fail", wit, f"psi(a/b,c/d) = {left[w]!r} != psi(a,b)/psi(c,d) = {printed[w]!r}")
    return rep


def validate_control(eta, seed: int = GRID_SEED, rtol: float = REL_TOL) -> PropertyReport:
    """Check ``eta(0) = 0``, strict increase on the grid and ``eta(256) > 1``."""
    eta = control(eta)
    rep = PropertyReport(repr(eta))
    axis, pts = validation_grid(seed)
    t = np.unique(np.concatenate([axis, pts.ravel()]))
    y = eta(t, strict=False)
    bad = _first(~np.isfinite(y))
    if bad is not None:
        rep.verdicts["finite"] = Verdict("fail", (float(t[bad[0]]),), "non-finite value")
        for name in ("zero_origin", "strictly_increasing", "unbounded"):
            rep.verdicts[name] = Verdict("not-checked", None, "function is not finite on the grid")
        return rep
    rep.verdicts["finite"] = Verdict("pass")
    if abs(y[0]) <= ABS_TOL:
        rep.verdicts["zero_origin"] = Verdict("pass")
    else:
        rep.verdicts["zero_origin"] = Verdict("fail", (0.0,), f"eta(0) = {y[0]!r}")
    # t is sorted and strictly increasing; strict increase is transitive so adjacent pairs suffice
    k = _first(~(y[1:] > y[:-1]))
    if k is None:
        rep.verdicts["strictly_increasing"] = Verdict("pass")
    else:
        i = k[0]
        rep.verdicts["strictly_increasing"] = Verdict(
            "fail", (float(t[i]), float(t[i + 1])), f"eta({t[i]!r}) = {y[i]!r} >= eta({t[i + 1]!r}) = {y[i + 1]!r}")
    top = float(eta(np.float64(axis[-1]), strict=False))
    if top > 1:
        rep.verdicts["unbounded"] = Verdict("pass")
    else:
        rep.verdicts["unbounded"] = Verdict("fail", (float(axis[-1]),), f"eta({axis[-1]}) = {top!r} <= 1")
    return rep
