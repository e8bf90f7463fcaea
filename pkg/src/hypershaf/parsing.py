"""Parsing of fields, elements, polynomials, binary forms and place lists.

Expressions are parsed with :mod:`ast` and evaluated by a whitelist walker,
so nothing user-supplied is ever executed.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

from .numberfield import NumberField, PlaceSet, UnsupportedFieldError, isprime

_FIELD_RE = re.compile(r"^\s*Q\s*\(\s*sqrt\s*\(\s*(-?\d+)\s*\)\s*\)\s*$")


def parse_field(text: str) -> NumberField:
    t = text.strip()
    if t in ("Q", "QQ"):
        return NumberField(0)
    if t.replace(" ", "") in ("Q(i)", "Q(I)"):
        return NumberField(1)
    m = _FIELD_RE.match(t)
    if not m:
        if t.startswith("Q(") or t.startswith("Q["):
            raise UnsupportedFieldError(f"unsupported field: {text!r}")
        raise ValueError(f"cannot parse field {text!r}")
    r = int(m.group(1))
    if r >= 0:
        raise UnsupportedFieldError(f"{text!r} is not Q or an imaginary quadratic field")
    return NumberField(-r)


# polynomial dicts: {(i, j): FieldElement} meaning coefficient of x^i y^j


def _pmul(p, q, K):
    out = {}
    for (i, j), a in p.items():
        for (k, l), b in q.items():
            key = (i + k, j + l)
            out[key] = out.get(key, K.zero) + a * b
    return {k: v for k, v in out.items() if v}


def _padd(p, q, K, sign=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, K.zero) + (v if sign > 0 else -v)
    return {k: v for k, v in out.items() if v}


class _Evaluator:
    def __init__(self, K: NumberField, variables: tuple[str, ...]):
        self.K = K
        self.vars = variables

    def const(self, c):
        return {(0, 0): c} if c else {}

    def eval(self, node):
        K = self.K
        if isinstance(node, ast.Expression):
            return self.eval(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(
            node.value, bool
        ):
            return self.const(K(node.value))
        if isinstance(node, ast.Name):
            if node.id in self.vars:
                idx = self.vars.index(node.id)
                return {(1, 0) if idx == 0 else (0, 1): K.one}
            if node.id in ("i", "I") and K.d == 1:
                return self.const(K.sqrt_neg_d)
            raise ValueError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.Call):
            if (
                isinstance(node.func, ast.Name)
                and node.func.id == "sqrt"
                and len(node.args) == 1
                and not node.keywords
            ):
                arg = self.eval(node.args[0])
                if set(arg) - {(0, 0)}:
                    raise ValueError("sqrt of a non-constant")
                v = arg.get((0, 0), K.zero)
                if v.b or v.a >= 0 or v.a.denominator != 1:
                    raise ValueError("only sqrt(-d) with integer d is supported")
                r = -int(v.a)
                if K.d == 0:
                    raise ValueError("sqrt(-d) is not in Q")
                # sqrt(-r) = k*sqrt(-d) when r = k^2 d
                q, rem = divmod(r, K.d)
                k = int(round(q**0.5)) if not rem else -1
                if rem or k * k != q:
                    raise ValueError(f"sqrt(-{r}) is not in {K}")
                return self.const(K(0, k))
            raise ValueError("unsupported function call")
        if isinstance(node, ast.UnaryOp):
            v = self.eval(node.operand)
            if isinstance(node.op, ast.USub):
                return {k: -c for k, c in v.items()}
            if isinstance(node.op, ast.UAdd):
                return v
            raise ValueError("unsupported unary operator")
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = self.eval(node.left)
                e = self.eval(node.right)
                if set(e) - {(0, 0)}:
                    raise ValueError("non-constant exponent")
                ev = e.get((0, 0), K.zero)
                if ev.b or ev.a.denominator != 1:
                    raise ValueError("exponent must be an integer")
                n = int(ev.a)
                if n < 0:
                    if set(base) - {(0, 0)}:
                        raise ValueError("negative power of a variable")
                    return self.const(base[(0, 0)] ** n)
                if n > 10_000:
                    raise ValueError("exponent too large")
                out = self.const(K.one)
                for _ in range(n):
                    out = _pmul(out, base, K)
                return out
            left = self.eval(node.left)
            right = self.eval(node.right)
            if isinstance(node.op, ast.Add):
                return _padd(left, right, K)
            if isinstance(node.op, ast.Sub):
                return _padd(left, right, K, -1)
            if isinstance(node.op, ast.Mult):
                return _pmul(left, right, K)
            if isinstance(node.op, ast.Div):
                if set(right) - {(0, 0)} or not right:
                    raise ValueError("division by a non-constant or zero")
                inv = right[(0, 0)].inverse()
                return {k: c * inv for k, c in left.items()}
            raise ValueError("unsupported operator")
        raise ValueError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _parse_expr(text: str, K: NumberField, variables=("x", "y")):
    src = text.strip().replace("^", "**")
    if not src:
        raise ValueError("empty expression")
    # implicit multiplication like 3x or 2 x^2
    src = re.sub(r"(\d)\s*([a-zA-Z(])", r"\1*\2", src)
    src = src.replace("sqrt*(", "sqrt(")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _Evaluator(K, variables).eval(tree)


def parse_element(text: str, K: NumberField):
    p = _parse_expr(text, K, variables=())
    if set(p) - {(0, 0)}:
        raise ValueError(f"{text!r} is not a constant")
    return p.get((0, 0), K.zero)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def parse_poly(text: str, K: NumberField):
    from .forms import Poly

    p = _parse_expr(text, K, variables=("x",))
    if not p:
        raise ValueError("zero polynomial")
    n = max(i for i, _ in p)
    return Poly(K, [p.get((i, 0), K.zero) for i in range(n + 1)])


def parse_form(text: str, K: NumberField, degree: int | None = None):
    from .forms import BinaryForm

    p = _parse_expr(text, K, variables=("x", "y"))
    if not p:
        raise ValueError("zero form")
    degs = {i + j for i, j in p}
    if len(degs) != 1:
        raise ValueError(f"{text!r} is not homogeneous")
    n = degs.pop()
    if degree is not None and degree != n:
        raise ValueError(f"form has degree {n}, expected {degree}")
    return BinaryForm(K, [p.get((n - i, i), K.zero) for i in range(n + 1)])


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses")
        if ch in ",;" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ValueError("unbalanced parentheses")
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_places(text: str, K: NumberField) -> PlaceSet:
    """Parse '2,3', '{2, 3}', '(2, 1+sqrt(-5)), (3)' or '' into a PlaceSet."""
    t = (text or "").strip()
    if t.startswith("{") and t.endswith("}"):
        t = t[1:-1]
    if t.lower() in ("", "none", "empty"):
        return PlaceSet(K, frozenset())
    primes = set()
    for item in _split_top(t):
        inner = item
        if inner.startswith("(") and inner.endswith(")"):
            inner = inner[1:-1]
        bits = _split_top(inner)
        try:
            ell = int(bits[0])
        except ValueError:
            raise ValueError(f"bad place {item!r}") from None
        if ell < 2 or not isprime(ell):
            raise ValueError(f"{ell} is not a prime")
        above = K.primes_above(ell)
        if len(bits) == 1:
            primes.update(above)
        elif len(bits) == 2:
            g = parse_element(bits[1], K)
            hits = [P for P in above if P.contains(g)]
            if len(hits) != 1:
                raise ValueError(f"{item!r} does not name a unique prime ideal")
            primes.add(hits[0])
        else:
            raise ValueError(f"bad place {item!r}")
    return PlaceSet(K, frozenset(primes))
