"""SMILES parser producing an attributed molecular graph.

Implements an OpenSMILES subset: organic subset atoms, bracket atoms with
isotope/charge/H-count, ring closures (including %nn), branches, aromatic
lowercase forms, and multi-fragment input via '.'.  Stereo markers are
parsed and preserved as annotations but carry no further semantics here.
Wildcards, reaction arrows, and atom classes beyond parsing are rejected.
"""

from __future__ import annotations

import math
import re

from ..errors import (
    ParseError,
    UnbalancedBracketError,
    UnbalancedParenError,
    UnclosedRingError,
    UnknownElementError,
    ValenceViolationError,
)
from .elements import (
    AROMATIC_SYMBOLS,
    ORGANIC_SUBSET,
    allowed_valences,
    is_known_element,
)
from .graph import AROMATIC, DOUBLE, SINGLE, TRIPLE, Atom, Bond, Molecule

_BOND_ORDERS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}

_BRACKET_RE = re.compile(
    r"^(?P<isotope>\d+)?"
    r"(?P<element>\*|[A-Z][a-z]?|as|se|[bcnops])"
    r"(?P<stereo>@@?)?"
    r"(?P<hcount>H\d*)?"
    r"(?P<charge>\+\+?|--?|\+\d+|-\d+)?"
    r"(?::(?P<cls>\d+))?$"
)

# Charge-adjusted valences that the additive rule gets wrong.
_CHARGED_VALENCES = {
    ("C", 1): (3,), ("C", -1): (3,),
    ("N", 1): (4,), ("N", -1): (2,),
    ("O", 1): (3,), ("O", -1): (1,),
    ("S", 1): (3, 5), ("S", -1): (1,),
    ("P", 1): (4,), ("P", -1): (2,),
    ("B", -1): (4,),
}


def _valences(element: str, charge: int) -> tuple[int, ...]:
    if charge and (element, charge) in _CHARGED_VALENCES:
        return _CHARGED_VALENCES[(element, charge)]
    return allowed_valences(element, charge)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.atoms: list[Atom] = []
        self.bonds: list[tuple[int, int, int | None, str | None, int]] = []
        self.bracket_atoms: set[int] = set()
        self.prev: int | None = None
        self.pending_bond: int | None = None
        self.pending_stereo: str | None = None
        self.pending_offset = 0
        self.stack: list[tuple[int | None, int]] = []  # (prev atom, offset of '(')
        self.ring_open: dict[int, tuple[int, int | None, str | None, int]] = {}

    # -- low level -----------------------------------------------------

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, exc_type, message, offset=None):
        raise exc_type(message, self.pos if offset is None else offset)

    # -- atom handling -------------------------------------------------

    def add_atom(self, atom: Atom, offset: int, from_bracket: bool) -> None:
        idx = len(self.atoms)
        self.atoms.append(atom)
        if from_bracket:
            self.bracket_atoms.add(idx)
        if self.prev is not None:
            self.bonds.append(
                (self.prev, idx, self.pending_bond, self.pending_stereo, self.pending_offset)
            )
        self.pending_bond = None
        self.pending_stereo = None
        self.prev = idx

    def ring_closure(self, number: int, offset: int) -> None:
        if self.prev is None:
            self.fail(ParseError, "ring closure before any atom", offset)
        if number in self.ring_open:
            other, other_bond, other_stereo, other_off = self.ring_open.pop(number)
            bond = self.pending_bond if self.pending_bond is not None else other_bond
            if (
                self.pending_bond is not None
                and other_bond is not None
                and self.pending_bond != other_bond
            ):
                self.fail(ParseError, f"conflicting bond symbols for ring closure {number}", offset)
            if other == self.prev:
                self.fail(ParseError, f"ring closure {number} is a self-loop", offset)
            if any(
                {a, b} == {other, self.prev} for a, b, _, _, _ in self.bonds
            ):
                self.fail(ParseError, f"duplicate bond via ring closure {number}", offset)
            stereo = self.pending_stereo or other_stereo
            self.bonds.append((other, self.prev, bond, stereo, offset))
        else:
            self.ring_open[number] = (
                self.prev,
                self.pending_bond,
                self.pending_stereo,
                offset,
            )
        self.pending_bond = None
        self.pending_stereo = None

    # -- tokens --------------------------------------------------------

    def parse_bracket(self) -> None:
        start = self.pos
        end = self.text.find("]", self.pos)
        if end < 0:
            self.fail(UnbalancedBracketError, "unclosed '['", start)
        body = self.text[start + 1 : end]
        match = _BRACKET_RE.match(body)
        if not match:
            self.fail(ParseError, f"malformed bracket atom [{body}]", start)
        raw_element = match.group("element")
        if raw_element == "*":
            self.fail(UnknownElementError, "wildcard atoms are not supported", start)
        aromatic = raw_element in AROMATIC_SYMBOLS
        element = raw_element.capitalize() if aromatic else raw_element
        if not is_known_element(element):
            self.fail(UnknownElementError, f"unknown element '{raw_element}'", start)
        hcount = match.group("hcount")
        explicit_h = 0
        if hcount is not None:
            explicit_h = int(hcount[1:]) if len(hcount) > 1 else 1
        charge_txt = match.group("charge")
        charge = 0
        if charge_txt:
            if charge_txt in ("+", "-"):
                charge = 1 if charge_txt == "+" else -1
            elif charge_txt in ("++", "--"):
                charge = 2 if charge_txt == "++" else -2
            else:
                charge = int(charge_txt)
        isotope = int(match.group("isotope")) if match.group("isotope") else None
        atom = Atom(
            element=element,
            formal_charge=charge,
            isotope=isotope,
            aromatic=aromatic,
            explicit_h=explicit_h,
            stereo=match.group("stereo"),
        )
        self.add_atom(atom, start, from_bracket=True)
        self.pos = end + 1

    def parse_organic(self) -> None:
        start = self.pos
        two = self.text[self.pos : self.pos + 2]
        if two in ("Cl", "Br"):
            symbol, self.pos = two, self.pos + 2
        else:
            symbol = self.text[self.pos]
            self.pos += 1
        aromatic = symbol in AROMATIC_SYMBOLS
        element = symbol.upper() if aromatic and len(symbol) == 1 else symbol
        if aromatic:
            element = symbol.capitalize()
        if element not in ORGANIC_SUBSET:
            self.fail(UnknownElementError, f"'{symbol}' needs brackets or is unknown", start)
        self.add_atom(Atom(element=element, aromatic=aromatic), start, from_bracket=False)

    def run(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "[":
                self.parse_bracket()
            elif ch in "-=#:":
                self.pending_bond = _BOND_ORDERS[ch]
                self.pending_offset = self.pos
                self.pos += 1
            elif ch in "/\\":
                self.pending_bond = SINGLE
                self.pending_stereo = ch
                self.pending_offset = self.pos
                self.pos += 1
            elif ch == "(":
                if self.prev is None:
                    self.fail(UnbalancedParenError, "branch before any atom")
                self.stack.append((self.prev, self.pos))
                self.pos += 1
            elif ch == ")":
                if not self.stack:
                    self.fail(UnbalancedParenError, "unmatched ')'")
                self.prev, _ = self.stack.pop()
                self.pos += 1
            elif ch.isdigit():
                self.ring_closure(int(ch), self.pos)
                self.pos += 1
            elif ch == "%":
                m = re.match(r"%(\d\d)", text[self.pos :])
                if not m:
                    self.fail(ParseError, "'%' must be followed by two digits")
                self.ring_closure(int(m.group(1)), self.pos)
                self.pos += 3
            elif ch == ".":
                if self.pending_bond is not None:
                    self.fail(ParseError, "bond symbol before '.'")
                self.prev = None
                self.pos += 1
            elif ch in ">":
                self.fail(ParseError, "reaction SMILES is not supported")
            elif ch == "*":
                self.fail(UnknownElementError, "wildcard atoms are not supported")
            elif ch.isspace():
                break  # trailing title/comment section
            else:
                self.parse_organic()
        if self.stack:
            self.fail(UnbalancedParenError, "unclosed '('", self.stack[-1][1])
        if self.ring_open:
            number, (_, _, _, offset) = next(iter(self.ring_open.items()))
            self.fail(UnclosedRingError, f"unclosed ring bond {number}", len(text))
        if not self.atoms:
            self.fail(ParseError, "no atoms in input", 0)


def _resolve_bond_order(mol_atoms: list[Atom], a: int, b: int, order: int | None) -> int:
    if order is not None:
        return order
    if mol_atoms[a].aromatic and mol_atoms[b].aromatic:
        return AROMATIC
    return SINGLE


def _assign_implicit_h(mol: Molecule, bracket_atoms: set[int], text: str) -> None:
    for idx, atom in enumerate(mol.atoms):
        if idx in bracket_atoms:
            continue
        if atom.aromatic and atom.element not in ("C", "N"):
            continue
        bond_sum = math.ceil(mol.bond_order_sum(idx))
        candidates = _valences(atom.element, atom.formal_charge)
        if atom.aromatic:
            # lowercase atoms fill only the lowest valence state; e.g.
            # pyrrole-type nitrogens must be written [nH] explicitly
            candidates = candidates[:1]
        h = 0
        for v in candidates:
            if v >= bond_sum:
                h = v - bond_sum
                break
        if h > 0:
            mol.set_atom(idx, explicit_h=h)


def _effective_valence(mol: Molecule, idx: int) -> int:
    """Bond-order sum for valence checking.

    Aromatic bonds count 1 each plus one shared pi electron pair for
    carbons without another multiple bond; this matches the kekulized
    accounting where an exocyclic double bond (e.g. a ring carbonyl)
    consumes the atom's pi contribution.
    """
    aromatic_n = 0
    rest = 0.0
    has_multiple = False
    for _, bond in mol.neighbors(idx):
        if bond.order == AROMATIC:
            aromatic_n += 1
        else:
            rest += bond.order_value
            if bond.order in (DOUBLE, TRIPLE):
                has_multiple = True
    if aromatic_n == 0:
        return math.floor(rest)
    pi = 1 if mol.atoms[idx].element == "C" and not has_multiple else 0
    return aromatic_n + math.floor(rest) + pi


def _check_valences(mol: Molecule, text: str) -> None:
    for idx, atom in enumerate(mol.atoms):
        candidates = _valences(atom.element, atom.formal_charge)
        if not candidates:
            continue
        total = _effective_valence(mol, idx) + atom.explicit_h
        if total > max(candidates):
            raise ValenceViolationError(
                f"{atom.element}{'+' if atom.formal_charge > 0 else ''}"
                f"{atom.formal_charge or ''} exceeds valence "
                f"{max(candidates)} (has {total})",
                0,
            )


def parse_smiles(text: str) -> Molecule:
    """Parse one SMILES string into a Molecule.

    Raises a ParseError subclass (with byte offset) for malformed input,
    unknown elements, and valence violations.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty SMILES input", 0)
    parser = _Parser(stripped)
    parser.run()
    mol = Molecule(atoms=parser.atoms, source_smiles=stripped)
    for a, b, order, stereo, offset in parser.bonds:
        resolved = _resolve_bond_order(parser.atoms, a, b, order)
        mol.bonds.append(Bond(a=a, b=b, order=resolved, stereo=stereo))
    mol._neighbors = None
    _assign_implicit_h(mol, parser.bracket_atoms, stripped)
    _check_valences(mol, stripped)
    mol.fragment_count = len(mol.fragments())
    from .perception import perceive

    return perceive(mol)
