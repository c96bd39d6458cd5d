"""Exact parsing of cyclotomic literals and polynomial expressions in X, Y, Z.

Grammar: integers, ``a/b``, ``zeta(N)`` (optionally ``^k`` / ``**k``), the
variables X, Y, Z where allowed, combined with + - * / and parentheses.
Division is only by nonzero constants.
"""

from __future__ import annotations

import ast
from math import lcm

from .cyclo import CycloField, CycloNum, get_field
from .poly import Poly

VARIABLES = ("X", "Y", "Z")


class ExpressionError(ValueError):
    pass


def _parse(text: str) -> ast.expr:
    src = text.strip().replace("^", "**")
    if not src:
        raise ExpressionError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    return tree.body


def _zeta_orders(node: ast.AST) -> list[int]:
    out = []
    for sub in ast.walk(node):
        if isinstance(sub, ast.Call):
            if not (isinstance(sub.func, ast.Name) and sub.func.id == "zeta"):
                raise ExpressionError("only zeta(N) calls are allowed")
            if len(sub.args) != 1 or sub.keywords:
                raise ExpressionError("zeta takes exactly one integer argument")
            arg = sub.args[0]
            if not (isinstance(arg, ast.Constant) and type(arg.value) is int and arg.value >= 1):
                raise ExpressionError("zeta(N) needs a positive integer literal N")
            out.append(arg.value)
    return out


def required_order(text: str) -> int:
    """Smallest N such that every zeta(M) in the expression lives in Q(zeta_N)."""
    n = 1
    for m in _zeta_orders(_parse(text)):
        n = lcm(n, m)
    return n


class _Evaluator:
    def __init__(self, field: CycloField, allow_vars: bool):
        self.field = field
        self.allow_vars = allow_vars

    def const(self, value) -> Poly:
        return Poly.const(self.field, value, 3)

    def visit(self, node) -> Poly:
        f = self.field
        if isinstance(node, ast.Constant):
            if type(node.value) is not int:
                raise ExpressionError(f"unsupported literal {node.value!r}")
            return self.const(node.value)
        if isinstance(node, ast.Name):
            if node.id in VARIABLES and self.allow_vars:
                return Poly.var(f, VARIABLES.index(node.id), 3)
            raise ExpressionError(f"unknown name {node.id!r}")
        if isinstance(node, ast.Call):
            m = node.args[0].value
            if f.order % m:
                raise ExpressionError(f"zeta({m}) not in Q(zeta_{f.order})")
            return self.const(f.zeta(m))
        if isinstance(node, ast.UnaryOp):
            val = self.visit(node.operand)
            if isinstance(node.op, ast.USub):
                return -val
            if isinstance(node.op, ast.UAdd):
                return val
        if isinstance(node, ast.BinOp):
            left = self.visit(node.left)
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                    raise ExpressionError("exponents must be integer literals")
                k = sign * exp.value
                if k < 0:
                    return self.const(_as_constant(left) ** k)
                return left**k
            right = self.visit(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                d = _as_constant(right)
                if not d:
                    raise ExpressionError("division by zero")
                return left.scale(d.inverse())
        raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def _as_constant(p: Poly) -> CycloNum:
    if any(sum(e) for e in p.terms):
        raise ExpressionError("only constants may appear as divisors or with negative exponents")
    return p.constant_term()


def parse_polynomial(text: str, field: CycloField) -> Poly:
    """Parse an expression in X, Y, Z into a 3-variable Poly over ``field``."""
    node = _parse(text)
    _zeta_orders(node)
    return _Evaluator(field, True).visit(node)


def parse_number(text: str, field: CycloField | None = None) -> CycloNum:
    """Parse a constant literal such as '3/2' or 'zeta(8)^3 + 1'."""
    node = _parse(text)
    orders = _zeta_orders(node)
    if field is None:
        n = 1
        for m in orders:
            n = lcm(n, m)
        field = get_field(n)
    return _as_constant(_Evaluator(field, False).visit(node))
