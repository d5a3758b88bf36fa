"""Minimal arithmetic grammar for table entries parameterised by n.

Grammar: integers, the variable n, +, -, *, /, parentheses.  Values are
exact rationals.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DatasetParse


def evaluate(expr, n: int | None = None) -> Fraction:
    """Evaluate an expression string (or int) at the given n."""
    if isinstance(expr, int):
        return Fraction(expr)
    text = str(expr)
    pos = 0

    def peek():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return text[pos] if pos < len(text) else ""

    def parse_sum() -> Fraction:
        nonlocal pos
        value = parse_product()
        while True:
            c = peek()
            if c == "+":
                pos += 1
                value = value + parse_product()
            elif c == "-":
                pos += 1
                value = value - parse_product()
            else:
                return value

    def parse_product() -> Fraction:
        nonlocal pos
        value = parse_atom()
        while True:
            c = peek()
            if c == "*":
                pos += 1
                value = value * parse_atom()
            elif c == "/":
                pos += 1
                den = parse_atom()
                if den == 0:
                    raise DatasetParse(f"division by zero in {text!r}")
                value = value / den
            else:
                return value

    def parse_atom() -> Fraction:
        nonlocal pos
        c = peek()
        if c == "(":
            pos += 1
            value = parse_sum()
            if peek() != ")":
                raise DatasetParse(f"unbalanced parentheses in {text!r}")
            pos += 1
            return value
        if c == "-":
            pos += 1
            return -parse_atom()
        if c == "n":
            if n is None:
                raise DatasetParse(f"expression {text!r} needs a value for n")
            pos += 1
            return Fraction(n)
        if c.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return Fraction(int(text[start:pos]))
        raise DatasetParse(f"unexpected character {c!r} in {text!r}")

    value = parse_sum()
    if peek():
        raise DatasetParse(f"trailing input in {text!r}")
    return value


def evaluate_int(expr, n: int | None = None) -> int:
    v = evaluate(expr, n)
    if v.denominator != 1:
        raise DatasetParse(f"expression {expr!r} is not integral at n={n}")
    return int(v)


def parse_monomial(text: str) -> tuple[int, int, int, int]:
    """Parse a compact monomial string like 'x2y3z' into exponents."""
    exps = [0, 0, 0, 0]
    names = {"x": 0, "y": 1, "z": 2, "t": 3}
    i = 0
    while i < len(text):
        c = text[i]
        if c not in names:
            raise DatasetParse(f"bad monomial {text!r}")
        i += 1
        start = i
        while i < len(text) and text[i].isdigit():
            i += 1
        exps[names[c]] += int(text[start:i]) if i > start else 1
    return tuple(exps)
