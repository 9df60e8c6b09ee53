"""Golden closed-form values and a small expression language for them.

Data file format (``data/golden.txt``), one entry per line::

    key | expression | value | source

``key`` is ``v<variant>:m=<m>:p=<p>`` optionally followed by ``:<tag>``.
``expression`` uses rationals, ``pi``, ``gamma``, ``e``, ``zeta(s)``,
``log(x)``, ``sqrt(x)``, ``+ - * / **`` and parentheses.  ``value`` is the
expression evaluated to double precision when the file was written; it is a
guard against transcription errors, not an input to any check.  Blank lines
and lines starting with ``#`` are ignored.

Expressions are kept as trees and evaluated on demand; nested radicals are
never flattened by hand.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .special import EULER_GAMMA, zeta

TABLE_VERSION = 1

_FUNCS = {"zeta": zeta, "log": math.log, "sqrt": math.sqrt}
_CONSTS = {"pi": math.pi, "gamma": EULER_GAMMA, "e": math.e}


class ExpressionError(ValueError):
    pass


def parse(expression: str) -> ast.Expression:
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {expression!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if isinstance(node, ast.Call):
            if not (isinstance(node.func, ast.Name) and node.func.id in _FUNCS) or len(node.args) != 1 or node.keywords:
                raise ExpressionError(f"unsupported call in {expression!r}")
        elif isinstance(node, ast.Name):
            if node.id not in _FUNCS and node.id not in _CONSTS:
                raise ExpressionError(f"unknown name {node.id!r} in {expression!r}")
        elif isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool):
                raise ExpressionError(f"only integer literals allowed in {expression!r}")
        elif not isinstance(node, (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Load,
                                   ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow,
                                   ast.USub, ast.UAdd)):
            raise ExpressionError(f"unsupported syntax {type(node).__name__} in {expression!r}")
    return tree


def _eval(node) -> float:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant):
        return float(node.value)
    if isinstance(node, ast.Name):
        return _CONSTS[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call):
        return _FUNCS[node.func.id](_eval(node.args[0]))
    a, b = _eval(node.left), _eval(node.right)
    op = node.op
    if isinstance(op, ast.Add):
        return a + b
    if isinstance(op, ast.Sub):
        return a - b
    if isinstance(op, ast.Mult):
        return a * b
    if isinstance(op, ast.Div):
        return a / b
    return a ** b


def evaluate(expression: str) -> float:
    """Evaluate an expression string to a float."""
    return _eval(parse(expression))


def _rational(node) -> Fraction | None:
    # exact value of a purely numeric subtree, None if it contains symbols
    if isinstance(node, ast.Constant):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp):
        v = _rational(node.operand)
        return None if v is None else (-v if isinstance(node.op, ast.USub) else v)
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
        a, b = _rational(node.left), _rational(node.right)
        if a is None or b is None:
            return None
        return {ast.Add: a + b, ast.Sub: a - b, ast.Mult: a * b,
                ast.Div: a / b if b else None}[type(node.op)]
    return None


def linear_coefficients(expression: str) -> dict[str, Fraction]:
    """Rational coefficients of a sum of ``rational * atom`` terms.

    Atoms are the non-rational factors rendered back to source, e.g.
    ``"zeta(3)"`` or ``"log(2)"``; the key ``"1"`` collects constants.
    """
    out: dict[str, Fraction] = {}

    def add(atom: str, c: Fraction):
        out[atom] = out.get(atom, Fraction(0)) + c

    def term(node, sign: Fraction):
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
            term(node.left, sign)
            term(node.right, sign if isinstance(node.op, ast.Add) else -sign)
            return
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            term(node.operand, -sign)
            return
        coeff, atoms = _split_product(node)
        add("*".join(sorted(atoms)) or "1", sign * coeff)

    term(parse(expression).body, Fraction(1))
    return {k: v for k, v in out.items() if v}


def _split_product(node) -> tuple[Fraction, list[str]]:
    r = _rational(node)
    if r is not None:
        return r, []
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        c1, a1 = _split_product(node.left)
        c2, a2 = _split_product(node.right)
        return c1 * c2, a1 + a2
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        den = _rational(node.right)
        if not den:
            raise ExpressionError(f"division by a symbolic factor in {ast.unparse(node)!r}")
        c, a = _split_product(node.left)
        return c / den, a
    return Fraction(1), [ast.unparse(node)]


# ---------------------------------------------------------------------------
# the table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GoldenEntry:
    variant: int
    m: int
    p: int
    tag: str
    expression: str
    value: float
    source: str

    @property
    def key(self) -> tuple[int, int, int, str]:
        return (self.variant, self.m, self.p, self.tag)

    @property
    def key_text(self) -> str:
        base = f"v{self.variant}:m={self.m}:p={self.p}"
        return f"{base}:{self.tag}" if self.tag else base

    def evaluate(self) -> float:
        return evaluate(self.expression)


@dataclass(frozen=True)
class GoldenTable:
    entries: tuple[GoldenEntry, ...]
    provenance: str = ""

    def __post_init__(self):
        keys = [e.key for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate golden keys")

    def get(self, variant: int, m: int, p: int, tag: str = "") -> GoldenEntry:
        for e in self.entries:
            if e.key == (variant, m, p, tag):
                return e
        raise KeyError((variant, m, p, tag))

    def select(self, variant: int | None = None, tag: str | None = "") -> list[GoldenEntry]:
        return [e for e in self.entries
                if (variant is None or e.variant == variant) and (tag is None or e.tag == tag)]


def _parse_key(text: str) -> tuple[int, int, int, str]:
    parts = text.split(":")
    if len(parts) not in (3, 4) or not parts[0].startswith("v"):
        raise ValueError(f"bad golden key {text!r}")
    variant = int(parts[0][1:])
    m = int(parts[1].removeprefix("m="))
    p = int(parts[2].removeprefix("p="))
    return variant, m, p, parts[3] if len(parts) == 4 else ""


def parse_table(text: str, provenance: str = "") -> GoldenTable:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 4:
            raise ValueError(f"line {lineno}: expected 4 '|'-separated fields, got {len(fields)}")
        key, expr, value, source = fields
        parse(expr)
        entries.append(GoldenEntry(*_parse_key(key), expr, float(value), source))
    return GoldenTable(tuple(entries), provenance)


def format_table(table: GoldenTable) -> str:
    lines = [f"# golden table v{TABLE_VERSION}", "# key | expression | value | source"]
    for e in table.entries:
        lines.append(f"{e.key_text} | {e.expression} | {e.value!r} | {e.source}")
    return "\n".join(lines) + "\n"


def load_table() -> GoldenTable:
    """The golden table shipped with the package."""
    text = resources.files("meanlog").joinpath("data/golden.txt").read_text(encoding="utf-8")
    return parse_table(text, provenance="meanlog/data/golden.txt")


# Second-power-logarithm coefficients at m = 2 after dropping signs and
# multiplying the zeta(j) coefficient by 2**(j-1); row p lists zeta(p) first
# and log 2 last.
TRANSFORMED_TRIANGLE = {
    1: (1,),
    2: (2, 2),
    3: (3, 6, 6),
    4: (8, 12, 20, 20),
    5: (15, 40, 45, 70, 70),
    6: (32, 90, 168, 168, 252, 252),
    7: (63, 224, 420, 672, 630, 924, 924),
}
