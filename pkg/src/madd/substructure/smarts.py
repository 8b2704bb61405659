"""SMARTS parser for a practical subset of the language.

Supported atom primitives: element symbols (aliphatic uppercase, aromatic
lowercase), ``*`` (any), ``a``/``A`` (aromatic/aliphatic), ``#n`` atomic
number, ``D`` degree, ``H`` total hydrogen count, ``X`` total connections,
``R``/``R0``/``Rn`` ring membership, ``rn`` smallest-ring size, ``v``
valence, ``+``/``-`` charge, isotopes, ``!`` negation and the ``&``/``,``/
``;`` logical connectives.  Bond primitives: ``-``, ``=``, ``#``, ``:``,
``~`` (any), ``@`` (ring bond), and the default "single or aromatic".

Recursive SMARTS (``$(...)``), component-level grouping, and disconnected
patterns (``.``) are rejected with :class:`UnsupportedFeatureError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import (
    ParseError,
    UnbalancedBracketError,
    UnbalancedParenError,
    UnclosedRingError,
    UnsupportedFeatureError,
)
from ..molcore.elements import ATOMIC_WEIGHTS, AROMATIC_SYMBOLS, is_known_element

ATOMIC_NUMBERS = {sym: i + 1 for i, sym in enumerate(ATOMIC_WEIGHTS)}
_SYMBOL_BY_NUMBER = {z: sym for sym, z in ATOMIC_NUMBERS.items()}

# bond kinds
B_SINGLE = "single"
B_DOUBLE = "double"
B_TRIPLE = "triple"
B_AROMATIC = "aromatic"
B_ANY = "any"
B_RING = "ring"
B_DEFAULT = "default"  # single or aromatic


@dataclass(frozen=True)
class AtomPrimitive:
    """One atomic test, e.g. element, degree, or charge."""

    kind: str
    value: object = None
    negated: bool = False


@dataclass
class QueryAtom:
    # disjunctive normal form: list of AND-terms, each a list of primitives
    terms: list[list[AtomPrimitive]] = field(default_factory=list)
    source: str = ""


@dataclass(frozen=True)
class QueryBond:
    a: int
    b: int
    kind: str = B_DEFAULT


@dataclass
class SmartsPattern:
    query_atoms: list[QueryAtom]
    query_bonds: list[QueryBond]
    source: str

    @property
    def n_atoms(self) -> int:
        return len(self.query_atoms)

    def neighbors(self, idx: int) -> list[tuple[int, QueryBond]]:
        out = []
        for qb in self.query_bonds:
            if qb.a == idx:
                out.append((qb.b, qb))
            elif qb.b == idx:
                out.append((qb.a, qb))
        return out


_BOND_CHARS = {
    "-": B_SINGLE,
    "=": B_DOUBLE,
    "#": B_TRIPLE,
    ":": B_AROMATIC,
    "~": B_ANY,
    "@": B_RING,
    "/": B_SINGLE,
    "\\": B_SINGLE,
}

_TWO_LETTER_ORGANIC = ("Cl", "Br")


class _AtomExprParser:
    """Parses the expression inside a bracket atom into DNF terms."""

    def __init__(self, body: str, offset: int):
        self.body = body
        self.pos = 0
        self.offset = offset

    def fail(self, message: str, exc=ParseError):
        raise exc(message, self.offset + self.pos)

    def peek(self) -> str:
        return self.body[self.pos] if self.pos < len(self.body) else ""

    def take_int(self) -> int | None:
        m = re.match(r"\d+", self.body[self.pos :])
        if not m:
            return None
        self.pos += len(m.group())
        return int(m.group())

    def parse(self) -> list[list[AtomPrimitive]]:
        # precedence: ! > & (implicit) > , > ;
        # ';' groups are ANDed after each is reduced to DNF
        groups = [self._parse_or() ]
        while self.peek() == ";":
            self.pos += 1
            groups.append(self._parse_or())
        if self.pos != len(self.body):
            self.fail(f"unexpected '{self.peek()}' in atom expression")
        # AND the DNF groups together (cartesian product)
        terms = groups[0]
        for grp in groups[1:]:
            terms = [t1 + t2 for t1 in terms for t2 in grp]
        return terms

    def _parse_or(self) -> list[list[AtomPrimitive]]:
        terms = [self._parse_and()]
        while self.peek() == ",":
            self.pos += 1
            terms.append(self._parse_and())
        return terms

    def _parse_and(self) -> list[AtomPrimitive]:
        prims = [self._parse_primitive()]
        while True:
            ch = self.peek()
            if ch == "&":
                self.pos += 1
                prims.append(self._parse_primitive())
            elif ch and ch not in ",;":
                prims.append(self._parse_primitive())
            else:
                return prims

    def _parse_primitive(self) -> AtomPrimitive:
        negated = False
        while self.peek() == "!":
            negated = not negated
            self.pos += 1
        ch = self.peek()
        if not ch:
            self.fail("dangling '!' in atom expression")
        if ch == "$":
            self.fail("recursive SMARTS is not supported", UnsupportedFeatureError)
        if ch == "*":
            self.pos += 1
            return AtomPrimitive("any", negated=negated)
        if ch == "#":
            self.pos += 1
            z = self.take_int()
            if z is None or z not in _SYMBOL_BY_NUMBER:
                self.fail("'#' must be followed by a valid atomic number")
            return AtomPrimitive("element", _SYMBOL_BY_NUMBER[z], negated)
        if ch.isdigit():
            isotope = self.take_int()
            return AtomPrimitive("isotope", isotope, negated)
        if ch == "+" or ch == "-":
            sign = 1 if ch == "+" else -1
            self.pos += 1
            run = 1
            while self.peek() == ch:
                run += 1
                self.pos += 1
            n = self.take_int()
            charge = sign * (n if n is not None else run)
            return AtomPrimitive("charge", charge, negated)
        if ch == "@":
            # chirality: parsed, no semantics
            self.pos += 1
            if self.peek() == "@":
                self.pos += 1
            return AtomPrimitive("any", negated=False)
        if ch in "DHXRrvx":
            self.pos += 1
            n = self.take_int()
            if ch == "D":
                return AtomPrimitive("degree", n if n is not None else 1, negated)
            if ch == "H":
                return AtomPrimitive("hcount", n if n is not None else 1, negated)
            if ch in ("X", "x"):
                return AtomPrimitive("connections", n if n is not None else 1, negated)
            if ch == "R":
                if n == 0:
                    return AtomPrimitive("ring_member", False, negated)
                return AtomPrimitive("ring_member", True, negated)
            if ch == "r":
                if n is None:
                    return AtomPrimitive("ring_member", True, negated)
                return AtomPrimitive("ring_size", n, negated)
            if ch == "v":
                return AtomPrimitive("valence", n if n is not None else 1, negated)
        two = self.body[self.pos : self.pos + 2]
        if two in ("se", "as"):
            self.pos += 2
            return AtomPrimitive("element_aromatic", two.capitalize(), negated)
        if ch == "a":
            self.pos += 1
            return AtomPrimitive("aromatic", True, negated)
        if ch == "A":
            if len(two) == 2 and two[1].islower() and is_known_element(two):
                self.pos += 2
                return AtomPrimitive("element_aliphatic", two, negated)
            self.pos += 1
            return AtomPrimitive("aromatic", False, negated)
        # element symbols
        if len(two) == 2 and two[0].isupper() and two[1].islower() and is_known_element(two):
            self.pos += 2
            return AtomPrimitive("element_aliphatic", two, negated)
        if ch.isupper() and is_known_element(ch):
            self.pos += 1
            return AtomPrimitive("element_aliphatic", ch, negated)
        if ch.islower() and ch in AROMATIC_SYMBOLS:
            self.pos += 1
            return AtomPrimitive("element_aromatic", ch.upper(), negated)
        self.fail(f"unknown atom primitive '{ch}'")


class _SmartsParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.atoms: list[QueryAtom] = []
        self.bonds: list[QueryBond] = []
        self.prev: int | None = None
        self.pending: str | None = None
        self.stack: list[tuple[int | None, int]] = []
        self.ring_open: dict[int, tuple[int, str | None]] = {}

    def fail(self, message: str, exc=ParseError, offset=None):
        raise exc(message, self.pos if offset is None else offset)

    def add_atom(self, qa: QueryAtom) -> None:
        idx = len(self.atoms)
        self.atoms.append(qa)
        if self.prev is not None:
            kind = self.pending if self.pending is not None else B_DEFAULT
            self.bonds.append(QueryBond(self.prev, idx, kind))
        self.pending = None
        self.prev = idx

    def ring_closure(self, number: int) -> None:
        if self.prev is None:
            self.fail("ring closure before any atom")
        if number in self.ring_open:
            other, other_bond = self.ring_open.pop(number)
            kind = self.pending or other_bond or B_DEFAULT
            if self.pending and other_bond and self.pending != other_bond:
                self.fail(f"conflicting bond symbols for ring closure {number}")
            self.bonds.append(QueryBond(other, self.prev, kind))
        else:
            self.ring_open[number] = (self.prev, self.pending)
        self.pending = None

    def run(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "[":
                end = self._matching_bracket(self.pos)
                body = text[self.pos + 1 : end]
                if "$" in body:
                    self.fail(
                        "recursive SMARTS is not supported",
                        UnsupportedFeatureError,
                        self.pos,
                    )
                expr = _AtomExprParser(body, self.pos + 1)
                qa = QueryAtom(terms=expr.parse(), source=f"[{body}]")
                self.add_atom(qa)
                self.pos = end + 1
            elif ch in _BOND_CHARS:
                self.pending = _BOND_CHARS[ch]
                self.pos += 1
            elif ch == "(":
                if self.prev is None:
                    self.fail("component-level grouping is not supported", UnsupportedFeatureError)
                self.stack.append((self.prev, self.pos))
                self.pos += 1
            elif ch == ")":
                if not self.stack:
                    self.fail("unmatched ')'", UnbalancedParenError)
                self.prev, _ = self.stack.pop()
                self.pos += 1
            elif ch.isdigit():
                self.ring_closure(int(ch))
                self.pos += 1
            elif ch == "%":
                m = re.match(r"%(\d\d)", text[self.pos :])
                if not m:
                    self.fail("'%' must be followed by two digits")
                self.ring_closure(int(m.group(1)))
                self.pos += 3
            elif ch == ".":
                self.fail("disconnected patterns are not supported", UnsupportedFeatureError)
            elif ch == "$":
                self.fail("recursive SMARTS is not supported", UnsupportedFeatureError)
            else:
                self._parse_plain_atom()
        if self.stack:
            self.fail("unclosed '('", UnbalancedParenError, self.stack[-1][1])
        if self.ring_open:
            self.fail("unclosed ring bond", UnclosedRingError, len(text))
        if not self.atoms:
            self.fail("no atoms in pattern", ParseError, 0)

    def _matching_bracket(self, start: int) -> int:
        depth = 0
        for i in range(start, len(self.text)):
            if self.text[i] == "[":
                depth += 1
            elif self.text[i] == "]":
                depth -= 1
                if depth == 0:
                    return i
        self.fail("unclosed '['", UnbalancedBracketError, start)

    def _parse_plain_atom(self) -> None:
        text = self.text
        ch = text[self.pos]
        two = text[self.pos : self.pos + 2]
        if two in _TWO_LETTER_ORGANIC:
            prim = AtomPrimitive("element_aliphatic", two)
            self.pos += 2
        elif ch == "*":
            prim = AtomPrimitive("any")
            self.pos += 1
        elif ch == "a":
            prim = AtomPrimitive("aromatic", True)
            self.pos += 1
        elif ch == "A":
            prim = AtomPrimitive("aromatic", False)
            self.pos += 1
        elif ch.islower() and ch in AROMATIC_SYMBOLS:
            prim = AtomPrimitive("element_aromatic", ch.upper())
            self.pos += 1
        elif ch.isupper() and ch in "BCNOPSFI":
            prim = AtomPrimitive("element_aliphatic", ch)
            self.pos += 1
        else:
            self.fail(f"unexpected character '{ch}'")
        self.add_atom(QueryAtom(terms=[[prim]], source=ch))


def parse_smarts(text: str) -> SmartsPattern:
    """Parse a SMARTS pattern into a query graph.

    Raises :class:`UnsupportedFeatureError` for recursive SMARTS,
    component grouping, and disconnected patterns; other malformed input
    raises a :class:`ParseError` subclass with an offset.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty SMARTS input", 0)
    parser = _SmartsParser(stripped)
    parser.run()
    pattern = SmartsPattern(parser.atoms, parser.bonds, stripped)
    _check_connected(pattern)
    return pattern


def _check_connected(pattern: SmartsPattern) -> None:
    if pattern.n_atoms <= 1:
        return
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for nbr, _ in pattern.neighbors(cur):
            if nbr not in seen:
                seen.add(nbr)
                stack.append(nbr)
    if len(seen) != pattern.n_atoms:
        raise UnsupportedFeatureError("disconnected patterns are not supported", 0)
