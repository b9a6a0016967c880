"""Text grammars: algebra tuples, 2-form literals, and parameter expressions.

Algebra text (whitespace ignored)::

    algebra     := '[' entry (',' entry)* ']'
    entry       := '0' | signed_term+          first sign optional
    signed_term := ('+'|'-')? term
    term        := (coeff '*')? pair
    coeff       := int | int '/' posint | exact_decimal
    pair        := digit digit, first < second, digits in 1..n

Catalog templates use the same shape but allow ``coeff`` to be an arithmetic
expression over named parameters, e.g. ``-(a+b)*16`` or ``(a+1)/3*16``.
Those expressions, as well as constraint strings such as
``0<abs(e)<=abs(c)<=1`` or ``a+b+c+e=-1``, are evaluated exactly by a small
whitelist interpreter over :mod:`ast`.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Mapping

from .errors import DimensionOutOfRange, NonAscendingPair, ParseError
from .exterior import MAX_DIM, Form, indices_to_mask

_INT = re.compile(r"\d+")
_FRACTION = re.compile(r"(\d+)/(\d+)")
_DECIMAL = re.compile(r"\d+\.\d+|\.\d+|\d+\.")


class _Text:
    """Whitespace-free view of a string that remembers original offsets."""

    def __init__(self, text: str, offset: int = 0):
        self.original = text
        chars, where = [], []
        for i, ch in enumerate(text):
            if not ch.isspace():
                chars.append(ch)
                where.append(i + offset)
        self.s = "".join(chars)
        self.where = where
        self.end = len(text) + offset

    def pos(self, i: int) -> int:
        return self.where[i] if i < len(self.where) else self.end


def _split_top(s: str, sep: str) -> list[tuple[int, str]]:
    """Split at ``sep`` outside parentheses, keeping start offsets."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((start, s[start:i]))
            start = i + 1
    out.append((start, s[start:]))
    return out


def _signed_terms(s: str) -> list[tuple[int, int, str]]:
    """Split an entry into (offset, sign, body) at top-level binary +/-."""
    out, depth, start, sign = [], 0, 0, 1
    i = 0
    if s[:1] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = i = 1
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and s[i - 1] not in "*/(":
            out.append((start, sign, s[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    out.append((start, sign, s[start:]))
    return out


def _strict_coefficient(text: str) -> Fraction | None:
    if _INT.fullmatch(text):
        return Fraction(int(text))
    m = _FRACTION.fullmatch(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            return None
        return Fraction(int(m.group(1)), den)
    if _DECIMAL.fullmatch(text):
        return Fraction(text)
    return None


def parse_terms(
    text: str,
    n: int,
    *,
    params: Mapping[str, Fraction] | None = None,
    blade_len: int | None = 2,
    offset: int = 0,
    full_text: str = "",
) -> Form:
    """Parse one sum of terms (an algebra entry or a form literal) into a Form.

    ``params`` switches on template mode, where coefficients may be expressions
    in the named parameters.  ``blade_len=None`` accepts blades of any grade.
    """
    t = _Text(text, offset)
    s = t.s
    src = full_text or text
    if not s:
        raise ParseError("empty entry", src, t.pos(0))
    if s == "0":
        return Form.zero(n)
    form = Form.zero(n)
    for start, sign, body in _signed_terms(s):
        if not body:
            raise ParseError("missing term after sign", src, t.pos(start))
        cut = body.rfind("*")
        # the blade is whatever follows the last '*' at depth zero
        depth_ok = cut >= 0 and body[:cut].count("(") == body[:cut].count(")")
        if cut >= 0 and depth_ok:
            coeff_text, blade_text, blade_at = body[:cut], body[cut + 1:], start + cut + 1
            if not coeff_text:
                raise ParseError("missing coefficient before '*'", src, t.pos(start))
            if params is None:
                coeff = _strict_coefficient(coeff_text)
                if coeff is None:
                    raise ParseError(f"bad coefficient {coeff_text!r}", src, t.pos(start))
            else:
                try:
                    coeff = evaluate(coeff_text, params)
                except ParseError as e:
                    raise ParseError(f"bad coefficient {coeff_text!r}: {e.reason}", src,
                                     t.pos(start)) from None
        else:
            coeff, blade_text, blade_at = Fraction(1), body, start
        if not blade_text.isdigit() or (blade_len is not None and len(blade_text) != blade_len):
            want = f"{blade_len} digits" if blade_len else "digits"
            raise ParseError(f"expected a blade of {want}, got {blade_text!r}", src, t.pos(blade_at))
        idx = [int(ch) for ch in blade_text]
        for j, i in enumerate(idx):
            if not 1 <= i <= n:
                raise ParseError(f"index {i} outside 1..{n}", src, t.pos(blade_at + j))
        for j in range(len(idx) - 1):
            if idx[j] >= idx[j + 1]:
                raise NonAscendingPair(f"indices {blade_text!r} not strictly ascending", src,
                                       t.pos(blade_at + j))
        form = form + Form(n, {indices_to_mask(idx): sign * coeff})
    return form


def parse_entries(text: str, *, params: Mapping[str, Fraction] | None = None) -> list[Form]:
    """Parse ``[e1,...,en]`` into the list of 2-forms d(alpha_k)."""
    t = _Text(text)
    s = t.s
    if not s.startswith("["):
        raise ParseError("expected '['", text, t.pos(0))
    if not s.endswith("]"):
        raise ParseError("expected ']'", text, t.pos(len(s)))
    pieces = _split_top(s[1:-1], ",")
    n = len(pieces)
    if n < 2 or n > MAX_DIM:
        raise DimensionOutOfRange(f"dimension {n} outside 2..{MAX_DIM}")
    forms = []
    for start, piece in pieces:
        begin = start + 1
        orig_start = t.pos(begin)
        orig_end = t.pos(begin + len(piece) - 1) + 1 if piece else orig_start
        forms.append(parse_terms(text[orig_start:orig_end], n, params=params,
                                 offset=orig_start, full_text=text))
    return forms


def parse_form(text: str, n: int, *, params: Mapping[str, Fraction] | None = None,
               blade_len: int | None = None) -> Form:
    """Parse a form literal such as ``16+23+45`` or ``2*12-1/3*36``."""
    return parse_terms(text, n, params=params, blade_len=blade_len)


# --- exact expression evaluation -------------------------------------------

_SINGLE_EQ = re.compile(r"(?<![<>!=])=(?!=)")
_DEC_LITERAL = re.compile(r"(?<![\w.])(\d+\.\d*|\.\d+)")

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}
_CMPOPS = {
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
    ast.Eq: lambda a, b: a == b,
    ast.NotEq: lambda a, b: a != b,
}


def _prepare(expr: str) -> str:
    expr = _SINGLE_EQ.sub("==", expr)
    # decimals become exact fractions before Python sees a float
    return _DEC_LITERAL.sub(lambda m: f"__dec__('{m.group(1)}')", expr)


def evaluate(expr: str, env: Mapping[str, object] | None = None):
    """Exactly evaluate an arithmetic/boolean expression over Fractions."""
    env = {k: Fraction(v) if not isinstance(v, bool) else v for k, v in (env or {}).items()}
    try:
        tree = ast.parse(_prepare(expr), mode="eval")
    except SyntaxError as e:
        raise ParseError(f"syntax error in expression {expr!r}", expr, (e.offset or 1) - 1) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"unsupported literal {node.value!r}", expr, node.col_offset)
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ParseError(f"unknown name {node.id!r}", expr, node.col_offset)
            return env[node.id]
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base, ex = ev(node.left), ev(node.right)
                if ex.denominator != 1:
                    raise ParseError("non-integer exponent", expr, node.col_offset)
                return base ** int(ex)
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ParseError("unsupported operator", expr, node.col_offset)
            return op(ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            if isinstance(node.op, ast.Not):
                return not v
            raise ParseError("unsupported unary operator", expr, node.col_offset)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                fn = _CMPOPS.get(type(op))
                if fn is None:
                    raise ParseError("unsupported comparison", expr, node.col_offset)
                if not fn(left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            if node.func.id == "__dec__" and len(node.args) == 1 and isinstance(node.args[0], ast.Constant):
                return Fraction(node.args[0].value)
            args = [ev(a) for a in node.args]
            if node.func.id == "abs" and len(args) == 1:
                return abs(args[0])
        raise ParseError(f"unsupported syntax {type(node).__name__}", expr, getattr(node, "col_offset", 0))

    return ev(tree)


def parse_rational(text: str) -> Fraction:
    """Parse '1/2', '-3', '0.5' (exact) into a Fraction."""
    v = evaluate(text.strip())
    if isinstance(v, bool):
        raise ParseError(f"not a number: {text!r}", text, 0)
    return v
