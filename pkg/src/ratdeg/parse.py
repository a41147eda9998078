"""Parsers for polynomial expressions and map files.

Expressions use identifiers, integer literals, ``+ - * ^`` and parentheses.
Multiplication must be written explicitly, ``^`` binds tighter than ``*``,
which binds tighter than ``+`` and ``-``, and unary minus is allowed.

A map file looks like::

    field: 7
    vars: X Y Z
    X^3, Y^3
    X*Y*Z

Components may be split over lines or separated by commas; ``#`` starts a
comment.
"""

import re

from .errors import (
    MixedDegrees,
    NotHomogeneous,
    ParseError,
)
from .field import ExtField, field_from_spec
from .poly import ZERO_DEGREE, Poly, PolyRing, is_homogeneous

MAX_EXPONENT = 64
MAX_DEPTH = 100
MAX_LITERAL_DIGITS = 200

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def tokenize(text, line=1, col0=1):
    """List of (kind, value, column); kind is 'int', 'ident', 'op' or 'end'."""
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), col0 + start))
        pos = m.end()
    tokens.append(("end", "", col0 + n))
    return tokens


class _Parser:
    def __init__(self, ring, tokens, line, constants):
        self.ring = ring
        self.tokens = tokens
        self.i = 0
        self.line = line
        self.constants = constants
        self.depth = 0
        self.index = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "ident") or tok[1] == "(":
                raise self.error("missing '*' (juxtaposition is not allowed)")
            raise self.error(f"unexpected {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() == ("op", "*", self.peek()[2]):
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            self._enter()
            try:
                return -self.unary()
            finally:
                self.depth -= 1
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "int":
                raise self.error("exponent must be a non-negative integer literal", etok)
            e = int(etok[1])
            if e > MAX_EXPONENT:
                raise self.error(f"exponent {e} exceeds the limit {MAX_EXPONENT}", etok)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                raise self.error("chained exponents need parentheses")
            return base**e
        return base

    def _const(self, c):
        return Poly(self.ring, {(0,) * self.ring.nvars: c} if c else {})

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            if len(val) > MAX_LITERAL_DIGITS:
                raise self.error("integer literal too long", tok)
            return self._const(self.ring.field.from_int(int(val)))
        if kind == "ident":
            if val in self.index:
                return self.ring.var(self.index[val])
            if val in self.constants:
                return self._const(self.constants[val])
            raise self.error(f"unknown variable {val!r}", tok)
        if kind == "op" and val == "(":
            self._enter()
            try:
                value = self.expr()
            finally:
                self.depth -= 1
            close = self.take()
            if close[1] != ")" or close[0] != "op":
                raise self.error("expected ')'", close)
            return value
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {val!r}", tok)


def _constants(ring):
    F = ring.field
    if isinstance(F, ExtField) and F.gen_name not in ring.names:
        return {F.gen_name: F.generator()}
    return {}


def parse_poly(text, ring, line=1, column=1):
    """Parse one polynomial expression over ``ring``."""
    tokens = tokenize(text, line, column)
    return _Parser(ring, tokens, line, _constants(ring)).parse()


def _strip_comment(raw):
    k = raw.find("#")
    return raw if k < 0 else raw[:k]


def _content_lines(text):
    """(line number, text without comment) for every non-blank line."""
    out = []
    for k, raw in enumerate(text.splitlines()):
        body = _strip_comment(raw)
        if body.strip():
            out.append((k + 1, body))
    return out


def _header(content, idx, key, last_line):
    """Return (line number, value text, value column) for 'key: value'."""
    if idx >= len(content):
        where = content[-1][0] + 1 if content else last_line + 1
        raise ParseError(f"missing '{key}:' line", where, 1)
    lineno, text = content[idx]
    m = re.match(rf"\s*{key}\s*:", text)
    if not m:
        raise ParseError(f"expected '{key}: ...'", lineno, 1)
    rest = text[m.end():]
    lead = len(rest) - len(rest.lstrip())
    return lineno, rest.strip(), m.end() + lead + 1


def parse_map_file(text):
    """Parse a map file into a validated :class:`RationalMap`."""
    from .ratmap import new_map

    content = _content_lines(text)
    last = len(text.splitlines())
    lineno, value, col = _header(content, 0, "field", last)
    try:
        F = field_from_spec(value)
    except ParseError as exc:
        raise ParseError(f"bad field specification {value!r}", lineno, col) from exc
    lineno, value, col = _header(content, 1, "vars", last)
    names = value.split()
    if len(names) < 2:
        raise ParseError("need at least two variables", lineno, col)
    seen = set()
    for name in names:
        if not IDENT.fullmatch(name):
            raise ParseError(f"bad variable name {name!r}", lineno, col + value.find(name))
        if name in seen:
            raise ParseError(f"duplicate variable {name!r}", lineno, col + value.find(name))
        seen.add(name)
    ring = PolyRing(F, names)
    comps = []
    spots = []
    for lineno, raw in content[2:]:
        start = 0
        pieces = raw.split(",")
        for j, piece in enumerate(pieces):
            if piece.strip():
                comps.append(parse_poly(piece, ring, lineno, start + 1))
                spots.append(lineno)
            elif j < len(pieces) - 1:
                # a trailing comma is fine, an empty slot between commas is not
                raise ParseError("empty component between commas", lineno, start + 1)
            start += len(piece) + 1
    if not comps:
        raise ParseError("no components", last + 1, 1)
    degree = None
    for i, f in enumerate(comps):
        d = is_homogeneous(f)
        if d is None:
            raise NotHomogeneous(f"component {i} (line {spots[i]}) is not homogeneous: {f}")
        if d is ZERO_DEGREE:
            continue
        if degree is None:
            degree = d
        elif d != degree:
            raise MixedDegrees(f"component {i} (line {spots[i]}) has degree {d}, expected {degree}")
    return new_map(comps, ring)


def format_map_file(f):
    """Inverse of :func:`parse_map_file` (up to whitespace)."""
    lines = [f"field: {f.field.spec()}", "vars: " + " ".join(f.ring.names)]
    lines += [str(c) for c in f.components]
    return "\n".join(lines) + "\n"
