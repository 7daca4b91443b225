"""Text grammars for atoms, permutations, values, propositions and atom sets.

    perm   ::= "()" | cycle+              cycle ::= "(" atom* ")"
    value  ::= "atom" atom | "unit" | "nat" NUM | "inl" value | "inr" value
             | "pair" value value | "seq" "{" entries "}" tail
             | "abar" atom prop | "sub" atom prop | "(" value ")"
    tail   ::= "star" | "oracle" "(" NAME "," atom ")"
    prop   ::= "true" | "false" | "allzero" "(" NAME ")" | "oracle:" NAME
             | "not" prop | "(" prop [("and" | "or") prop] ")"
    set    ::= "{" [atom ("," atom)*] "}"
    spec   ::= "zeros" | "one@{" [NUM ("," NUM)*] "}" | "oracle:" NAME

Cycles in a permutation are applied left to right, so "(a0 a1)(a1 a2)" sends
a2 to a1. Whitespace between tokens is optional.
"""
import re
from typing import (
    TYPE_CHECKING,
    Any,
    Dict,
    FrozenSet,
    List,
    NamedTuple,
    Optional,
    Set,
    Tuple,
)

from .atoms import Atom
from .exceptions import ParseError
from .models import SeqSpec, SeqSpecKind
from .nomset import (
    STAR,
    AtomVal,
    CondSet,
    CondSetVal,
    CondShape,
    Entry,
    InlVal,
    InrVal,
    NatVal,
    NomValue,
    OracleTail,
    PairVal,
    SeqFun,
    SeqVal,
    TailSpec,
    UnitVal,
)
from .perm import FinPerm
from .props import FALSE, TRUE, Prop, conj, disj, negate

if TYPE_CHECKING:
    from .services.oracle_registry import OracleRegistry

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_\-]*)|(?P<punct>[(){},:*@])"
)
_ATOM = re.compile(r"a(\d+)$")
_ATOM_RUN = re.compile(r"(?:a\d+){2,}$")
_ATOM_PIECE = re.compile(r"a\d+")


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"Unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup or ""
        if kind == "name" and _ATOM_RUN.match(match.group()):
            # "a0a1" reads as two atoms
            for piece in _ATOM_PIECE.finditer(match.group()):
                tokens.append(Token("name", piece.group(), pos + piece.start()))
        elif kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    return tokens


def _resolve_registry(registry: Optional["OracleRegistry"]) -> "OracleRegistry":
    if registry is not None:
        return registry
    from .services.oracle_registry import get_oracle_registry

    return get_oracle_registry()


class Parser:
    """Recursive-descent parser over one input string"""

    def __init__(self, text: str, registry: Optional["OracleRegistry"] = None):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self._registry = registry

    @property
    def registry(self) -> "OracleRegistry":
        self._registry = _resolve_registry(self._registry)
        return self._registry

    # token helpers

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        if token is None:
            token = self.peek()
        pos = token.pos if token is not None else len(self.text)
        return ParseError(message, self.text, pos)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self, expected: str = "a token") -> Token:
        token = self.peek()
        if token is None:
            raise self.error(f"Expected {expected} but the input ended")
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        token = self.peek()
        if token is not None and token.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.next(f"'{text}'")
        if token.text != text:
            raise self.error(f"Expected '{text}', found '{token.text}'", token)
        return token

    def finish(self) -> None:
        token = self.peek()
        if token is not None:
            raise self.error(f"Unexpected trailing input '{token.text}'", token)

    # grammar

    def atom(self) -> Atom:
        token = self.next("an atom")
        match = _ATOM.match(token.text)
        if token.kind != "name" or match is None:
            raise self.error(f"Expected an atom like a0, found '{token.text}'", token)
        return Atom(int(match.group(1)))

    def number(self) -> int:
        token = self.next("a natural number")
        if token.kind != "num":
            raise self.error(f"Expected a natural number, found '{token.text}'", token)
        return int(token.text)

    def name(self) -> str:
        token = self.next("a name")
        if token.kind != "name":
            raise self.error(f"Expected a name, found '{token.text}'", token)
        return token.text

    def perm(self) -> FinPerm:
        cycles: List[Tuple[Atom, ...]] = []
        if self.peek() is None:
            raise self.error("Expected a permutation such as (a0 a1) or ()")
        while self.peek() is not None:
            self.expect("(")
            cycle: List[Atom] = []
            while not self.accept(")"):
                start = self.peek()
                a = self.atom()
                if a in cycle:
                    raise self.error(f"Atom {a} repeated within one cycle", start)
                cycle.append(a)
            cycles.append(tuple(cycle))
        return FinPerm.from_cycles(c for c in cycles if len(c) > 1)

    def value(self) -> NomValue:
        token = self.next("a value")
        word = token.text
        if word == "(":
            inner = self.value()
            self.expect(")")
            return inner
        if word == "atom":
            return AtomVal(self.atom())
        if word == "unit":
            return UnitVal()
        if word == "nat":
            return NatVal(self.number())
        if word == "inl":
            return InlVal(self.value())
        if word == "inr":
            return InrVal(self.value())
        if word == "pair":
            left = self.value()
            return PairVal(left, self.value())
        if word == "seq":
            entries = self.entries()
            return SeqVal(SeqFun.of(entries, self.tail()))
        if word in ("abar", "sub"):
            base = self.atom()
            shape = CondShape.ABAR if word == "abar" else CondShape.SUBSET
            return CondSetVal(CondSet(base, self.prop(), shape))
        raise self.error(f"Unknown value constructor '{word}'", token)

    def entries(self) -> Dict[int, Entry]:
        self.expect("{")
        entries: Dict[int, Entry] = {}
        if self.accept("}"):
            return entries
        while True:
            start = self.peek()
            n = self.number()
            if n in entries:
                raise self.error(f"Position {n} listed twice", start)
            self.expect(":")
            entries[n] = self.entry()
            if self.accept("}"):
                return entries
            self.expect(",")

    def entry(self) -> Entry:
        if self.accept("*"):
            return None
        return self.atom()

    def tail(self) -> TailSpec:
        token = self.next("a sequence tail")
        if token.text == "star":
            return STAR
        if token.text == "oracle":
            self.expect("(")
            oracle = self.registry.get(self.name())
            self.expect(",")
            a = self.atom()
            self.expect(")")
            return OracleTail(oracle, a)
        raise self.error(f"Expected 'star' or 'oracle(...)', found '{token.text}'", token)

    def prop(self) -> Prop:
        token = self.next("a proposition")
        word = token.text
        if word == "true":
            return TRUE
        if word == "false":
            return FALSE
        if word == "not":
            return negate(self.prop())
        if word in ("allzero", "oracle"):
            if word == "allzero":
                self.expect("(")
                name = self.name()
                self.expect(")")
            else:
                self.expect(":")
                name = self.name()
            return self.registry.all_zeros(name)
        if word == "(":
            left = self.prop()
            if self.accept("and"):
                left = conj(left, self.prop())
            elif self.accept("or"):
                left = disj(left, self.prop())
            self.expect(")")
            return left
        raise self.error(f"Unknown proposition '{word}'", token)

    def atom_set(self) -> FrozenSet[Atom]:
        self.expect("{")
        atoms: Set[Atom] = set()
        if self.accept("}"):
            return frozenset()
        while True:
            atoms.add(self.atom())
            if self.accept("}"):
                return frozenset(atoms)
            self.expect(",")


def _parse(text: str, rule: str, registry: Optional["OracleRegistry"] = None) -> Any:
    parser = Parser(text, registry)
    try:
        result = getattr(parser, rule)()
    except RecursionError:
        raise parser.error("Input nested too deeply") from None
    parser.finish()
    return result


def parse_atom(text: str) -> Atom:
    return _parse(text, "atom")


def parse_perm(text: str) -> FinPerm:
    return _parse(text, "perm")


def parse_value(text: str, registry: Optional["OracleRegistry"] = None) -> NomValue:
    return _parse(text, "value", registry)


def parse_prop(text: str, registry: Optional["OracleRegistry"] = None) -> Prop:
    return _parse(text, "prop", registry)


def parse_atom_set(text: str) -> FrozenSet[Atom]:
    return _parse(text, "atom_set")


def format_perm(pi: FinPerm) -> str:
    return str(pi)


def format_value(v: NomValue) -> str:
    return str(v)


_SPEC_ONE_AT = re.compile(r"\s*one\s*@\s*\{([\d\s,]*)\}\s*$")
_SPEC_ORACLE = re.compile(r"\s*oracle\s*:\s*([A-Za-z][A-Za-z0-9_\-]*)\s*$")


def parse_seq_spec(text: str, registry: Optional["OracleRegistry"] = None) -> SeqSpec:
    if text.strip() == "zeros":
        return SeqSpec(kind=SeqSpecKind.ZEROS)
    match = _SPEC_ONE_AT.match(text)
    if match is not None:
        body = match.group(1).strip()
        pieces = [p.strip() for p in body.split(",")] if body else []
        if any(not p.isdigit() for p in pieces):
            raise ParseError("Expected comma-separated positions", text, match.start(1))
        return SeqSpec(kind=SeqSpecKind.ONE_AT, positions=frozenset(int(p) for p in pieces))
    match = _SPEC_ORACLE.match(text)
    if match is not None:
        name = match.group(1)
        _resolve_registry(registry).get(name)
        return SeqSpec(kind=SeqSpecKind.REGISTERED, name=name)
    raise ParseError("Expected 'zeros', 'one@{n,...}' or 'oracle:<name>'", text, 0)
