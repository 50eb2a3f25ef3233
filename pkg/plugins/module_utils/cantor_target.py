#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import os
import re
from bisect import bisect_right
from fractions import Fraction

from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    CantorException,
    DomainError,
    InvalidTarget,
    MissingInput,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    DEFAULT_PRECISION,
    RationalEnclosure,
    sqrt_enclosure,
    to_fraction,
)

try:
    import yaml
    HAS_YAML = True
except ImportError:
    HAS_YAML = False


TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^(),]))")

UNICODE_OPERATORS = {
    u"−": "-",
    u"×": "*",
    u"÷": "/",
}
RADICAL_OPERAND_RE = re.compile(r"√\s*([A-Za-z_][A-Za-z_0-9]*|\d+\.\d*|\.\d+|\d+)")

FUNCTIONS = {
    "sqrt": (1, 1),
    "min": (2, None),
    "max": (2, None),
}

TARGET_KINDS = ("expression", "tabulated", "envelope-of")


def tokenize(text):
    for k, v in UNICODE_OPERATORS.items():
        text = text.replace(k, v)
    text = RADICAL_OPERAND_RE.sub(r"sqrt(\1)", text).replace(u"√", "sqrt")
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("unexpected character '{0}' at offset {1}".format(text[pos:].strip()[:1], pos))
        pos = m.end()
        if m.group("num") is not None:
            tokens.append(("num", m.group("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


class _Parser(object):
    """
        Recursive descent over
            expr  => term (('+' | '-') term)*
            term  => unary (('*' | '/') unary)*
            unary => ('-' | '+') unary | power
            power => atom ('^' integer)?
            atom  => number | variable | func '(' expr (',' expr)* ')' | '(' expr ')'
    """

    def __init__(self, tokens, variable):
        self.tokens = tokens
        self.pos = 0
        self.variable = variable

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            expected = value or kind or "token"
            found = tok[1] if tok[0] else "end of input"
            raise ValueError("expected {0}, found {1}".format(expected, found))
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek()[0] is not None:
            raise ValueError("unexpected trailing input '{0}'".format(self.peek()[1]))
        return node

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exponent = self.take("num")[1]
            if not exponent.isdigit():
                raise ValueError("exponent must be a non negative integer, found {0}".format(exponent))
            node = ("pow", node, int(exponent))
        return node

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return ("num", Fraction(value))
        if kind == "name":
            self.take()
            if value == self.variable:
                return ("var",)
            if value not in FUNCTIONS:
                raise ValueError("unknown name '{0}', expected '{1}' or one of {2}".format(
                    value, self.variable, ", ".join(sorted(FUNCTIONS))))
            self.take("op", "(")
            args = [self.expr()]
            while self.peek() == ("op", ","):
                self.take()
                args.append(self.expr())
            self.take("op", ")")
            least, most = FUNCTIONS[value]
            if len(args) < least or (most is not None and len(args) > most):
                raise ValueError("wrong number of arguments for {0}: {1}".format(value, len(args)))
            return ("call", value, args)
        if (kind, value) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ValueError("unexpected {0}".format(value if kind else "end of input"))


def parse_expression(text, variable="x"):
    """Parse an expression into a tuple tree. Raises ValueError on malformed input."""
    if not text or not text.strip():
        raise ValueError("empty expression")
    return _Parser(tokenize(text), variable).parse()


def evaluate(node, value, algebra):
    """Evaluate a parsed tree in the given algebra (interval or polynomial)."""
    op = node[0]
    if op == "num":
        return algebra.const(node[1])
    if op == "var":
        return value
    if op == "neg":
        return algebra.neg(evaluate(node[1], value, algebra))
    if op in ("add", "sub", "mul", "div"):
        left = evaluate(node[1], value, algebra)
        right = evaluate(node[2], value, algebra)
        return getattr(algebra, op)(left, right)
    if op == "pow":
        return algebra.pow(evaluate(node[1], value, algebra), node[2])
    if op == "call":
        args = [evaluate(a, value, algebra) for a in node[2]]
        return getattr(algebra, "call_" + node[1])(*args)
    raise ValueError("unknown node {0}".format(op))


class IntervalAlgebra(object):

    def __init__(self, bits=DEFAULT_PRECISION):
        self.bits = bits

    def const(self, q):
        return RationalEnclosure(q)

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def pow(self, a, n):
        result = RationalEnclosure(1)
        if n % 2 == 0 and a.lo < 0 < a.hi:
            top = max(-a.lo, a.hi) ** n
            return RationalEnclosure(0, top)
        for _ in range(n):
            result = result * a
        return result

    def call_sqrt(self, a):
        if a.hi < 0:
            raise DomainError("square root of a negative enclosure", hi=str(a.hi))
        return RationalEnclosure(
            sqrt_enclosure(max(a.lo, Fraction(0)), self.bits).lo,
            sqrt_enclosure(a.hi, self.bits).hi,
        )

    def call_min(self, *args):
        return RationalEnclosure(min(a.lo for a in args), min(a.hi for a in args))

    def call_max(self, *args):
        return RationalEnclosure(max(a.lo for a in args), max(a.hi for a in args))


class TargetFunction(object):
    """
        f: [0, 1] -> [0, 1] given by an evaluator returning RationalEnclosure values.
        ``monotone_flag`` records the caller's assertion that f is non-increasing.
    """

    def __init__(self, kind, evaluator, monotone_flag=False, description=""):
        if kind not in TARGET_KINDS:
            raise InvalidTarget("unknown target kind '{0}'".format(kind))
        self.kind = kind
        self._evaluator = evaluator
        self.monotone_flag = bool(monotone_flag)
        self.description = description

    def __call__(self, x):
        x = Fraction(x)
        if x < 0 or x > 1:
            raise DomainError("target evaluated outside [0, 1]", x=str(x))
        try:
            value = self._evaluator(x)
        except InvalidTarget:
            raise
        except (CantorException, ValueError, ZeroDivisionError) as e:
            raise InvalidTarget("target '{0}' cannot be evaluated at x={1}: {2}".format(self.description, x, e))
        if value.hi < 0 or value.lo > 1:
            raise InvalidTarget("target '{0}' leaves [0, 1] at x={1}: {2}".format(self.description, x, value))
        return value.clip(Fraction(0), Fraction(1))

    def with_monotone_flag(self, flag=True):
        return TargetFunction(self.kind, self._evaluator, flag, self.description)

    def __repr__(self):
        return "TargetFunction({0}, {1!r}, monotone={2})".format(self.kind, self.description, self.monotone_flag)

    @classmethod
    def from_expression(cls, text, monotone_flag=False, bits=DEFAULT_PRECISION):
        try:
            tree = parse_expression(text, "x")
        except ValueError as e:
            raise InvalidTarget("invalid target expression '{0}': {1}".format(text, e))
        algebra = IntervalAlgebra(bits)

        def _evaluate(x):
            return evaluate(tree, RationalEnclosure(x), algebra)

        return cls("expression", _evaluate, monotone_flag, text.strip())

    @classmethod
    def constant(cls, value):
        value = Fraction(value)
        return cls("expression", lambda x: RationalEnclosure(value), True, str(value))

    @classmethod
    def from_table(cls, points, monotone_flag=False, description="table"):
        """
            Step function from below through the tabulated points: the node value on a node,
            the smaller neighbour between nodes, the end values outside the table.
        """
        try:
            table = sorted((to_fraction(x), to_fraction(y)) for x, y in points)
        except (TypeError, ValueError) as e:
            raise InvalidTarget("invalid target table: {0}".format(e))
        if not table:
            raise InvalidTarget("target table is empty")
        xs = [x for x, y in table]
        if len(set(xs)) != len(xs):
            raise InvalidTarget("target table has duplicated abscissae")
        ys = [y for x, y in table]

        def _evaluate(x):
            idx = bisect_right(xs, x)
            if idx == 0:
                return RationalEnclosure(ys[0])
            if xs[idx - 1] == x or idx == len(xs):
                return RationalEnclosure(ys[idx - 1])
            return RationalEnclosure(min(ys[idx - 1], ys[idx]))

        return cls("tabulated", _evaluate, monotone_flag, description)


def load_table(path):
    if not os.path.exists(path):
        raise MissingInput("target table {0} does not exist".format(path), path=path)
    if not HAS_YAML:
        raise CantorException("PyYAML is required to read target tables")
    with open(path, "r") as f:
        data = yaml.safe_load(f)
    if isinstance(data, dict):
        data = data.get("points")
    if not data:
        raise MissingInput("target table {0} is empty".format(path), path=path)
    return TargetFunction.from_table(data, description=os.path.basename(path))


def decreasing_envelope(g, grid):
    """
        h(s) = inf of g over [0, s], taken over the grid points not beyond s.
        Below the first grid point the enclosure is [h(grid[0]).lo, g(s).hi].
    """
    grid = sorted(Fraction(x) for x in grid)
    if not grid:
        raise DomainError("envelope grid is empty")
    if grid[0] <= 0 or grid[-1] > 1:
        raise DomainError("envelope grid must lie in (0, 1]", first=str(grid[0]), last=str(grid[-1]))

    values = [g(x) for x in grid]
    if len(grid) == 1:
        only = values[0]
        return TargetFunction("envelope-of", lambda s: only, True, "envelope({0})".format(g.description))

    run_lo, run_hi = [], []
    lo = hi = None
    for v in values:
        lo = v.lo if lo is None else min(lo, v.lo)
        hi = v.hi if hi is None else min(hi, v.hi)
        run_lo.append(lo)
        run_hi.append(hi)

    def _evaluate(s):
        idx = bisect_right(grid, s)
        if idx == 0:
            here = g(s)
            return RationalEnclosure(min(run_lo[0], here.hi), max(run_lo[0], here.hi))
        return RationalEnclosure(run_lo[idx - 1], run_hi[idx - 1])

    return TargetFunction("envelope-of", _evaluate, True, "envelope({0})".format(g.description))


def default_envelope_grid(depth, uniform=64):
    points = set(Fraction(k, uniform) for k in range(1, uniform + 1))
    points.update(Fraction(1, 2 ** k) for k in range(0, 4 * depth + 3))
    return sorted(points)


def monotone_violations(f, grid):
    """Sample pairs x < y where the enclosures prove f(x) < f(y)."""
    violations = []
    best_hi, best_x = None, None
    for x in sorted(Fraction(v) for v in grid):
        value = f(x)
        if best_hi is not None and value.lo > best_hi:
            violations.append((best_x, x))
        if best_hi is None or value.hi < best_hi:
            best_hi, best_x = value.hi, x
    return violations


def build_target(expression=None, table=None, monotone=False, depth=14, bits=DEFAULT_PRECISION, grid=None):
    """
        Target used by synthesis: the asserted-monotone target itself, or the decreasing
        envelope of it over ``grid`` (default ``default_envelope_grid(depth)``).
        Returns (original, synthesis_target).
    """
    if bool(expression) == bool(table):
        raise InvalidTarget("exactly one of a target expression or a target table is required")
    if expression:
        original = TargetFunction.from_expression(expression, monotone, bits)
    else:
        original = load_table(table).with_monotone_flag(monotone)
    if original.monotone_flag:
        return original, original
    return original, decreasing_envelope(original, grid or default_envelope_grid(depth))
