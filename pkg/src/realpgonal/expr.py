"""Safe evaluation of the small integer expressions used in ledger data.

Supports integer literals, parameter names, + - * // / % **, comparisons,
``and``/``or``/``not``, conditional expressions and the helpers
``gcd``, ``inv`` (modular inverse), ``half`` (solution of 2x = k mod n)
and ``minus`` (p - 1, i.e. -1 mod p). ``/`` is exact integer division and
fails on a remainder.
"""

from __future__ import annotations

import ast
import math
import operator


class ExprError(ValueError):
    pass


def _exact_div(a: int, b: int) -> int:
    if b == 0 or a % b:
        raise ExprError(f"{a}/{b} is not an integer")
    return a // b


def _inv(a: int, n: int) -> int:
    try:
        return pow(a, -1, n)
    except ValueError:
        raise ExprError(f"{a} is not invertible mod {n}") from None


def _half(k: int, n: int) -> int:
    """Least x >= 0 with 2x = k (mod n)."""
    for x in range(n):
        if (2 * x - k) % n == 0:
            return x
    raise ExprError(f"2x = {k} has no solution mod {n}")


_FUNCS = {"gcd": math.gcd, "inv": _inv, "half": _half, "abs": abs, "min": min, "max": max}

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Div: _exact_div,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def _eval(node, env):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ExprError(f"unknown parameter {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        if isinstance(node.op, ast.Not):
            return not v
    if isinstance(node, ast.BoolOp):
        if isinstance(node.op, ast.And):
            return all(_eval(v, env) for v in node.values)
        return any(_eval(v, env) for v in node.values)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env)
        for op, comp in zip(node.ops, node.comparators):
            right = _eval(comp, env)
            if type(op) not in _CMPOPS or not _CMPOPS[type(op)](left, right):
                return False
            left = right
        return True
    if isinstance(node, ast.IfExp):
        return _eval(node.body if _eval(node.test, env) else node.orelse, env)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        return _FUNCS[node.func.id](*(_eval(a, env) for a in node.args))
    raise ExprError(f"unsupported expression element: {ast.dump(node)}")


def evaluate(text, env: dict):
    """Evaluate ``text`` (or pass through an int) against the parameters in ``env``."""
    if isinstance(text, bool) or isinstance(text, int):
        return text
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"bad expression {text!r}: {exc.msg}") from None
    return _eval(tree, env)
