"""The nominal value grammar and the permutation action on each construction.

Values are immutable. `act` is the group action, `eq` is proposition-valued
equality and `ambient_support` is a syntactic finite support of a value.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .atoms import Atom
from .exceptions import ShapeMismatchError
from .perm import FinPerm
from .props import (
    TRUE,
    BudgetMeter,
    Decided,
    Oracle,
    Prop,
    SemiAnswer,
    Truth,
    assume,
    conj,
    iff,
    negate,
)


@dataclass(frozen=True, eq=False)
class BinSeqOracle:
    """A total, deterministic binary sequence ℕ → {0, 1}, compared by identity."""

    query: Callable[[int], int]
    description: str
    _zeros: Dict[FrozenSet[int], Oracle] = field(
        default_factory=dict, init=False, repr=False
    )

    def __call__(self, n: int) -> int:
        return 1 if self.query(n) else 0

    def all_zeros(self, skip: Iterable[int] = ()) -> Oracle:
        """The proposition "α(n) = 0 for every n outside skip", one object per skip set"""
        key = frozenset(skip)
        if key not in self._zeros:
            label = self.description
            if key:
                label += " off {" + ",".join(map(str, sorted(key))) + "}"
            self._zeros[key] = Oracle(all_zeros_semi(self, key), f"allzero({label})")
        return self._zeros[key]

    def __str__(self) -> str:
        return self.description


def all_zeros_semi(
    oracle: BinSeqOracle, skip: FrozenSet[int] = frozenset()
) -> Callable[[int], SemiAnswer]:
    """Semi-decision of "∀n α(n) = 0": refuted by the first 1, never confirmed."""

    def semi(budget: int) -> SemiAnswer:
        queries = 0
        n = 0
        while queries < budget:
            if n not in skip:
                queries += 1
                if oracle(n):
                    return SemiAnswer(Truth.FALSE, queries, f"{oracle.description}({n}) = 1")
            n += 1
        return SemiAnswer(Truth.UNKNOWN, queries)

    return semi


class TailSpec:
    """What a sequence holds past its listed positions."""

    def value_at(self, n: int) -> Optional[Atom]:
        raise NotImplementedError

    def act(self, pi: FinPerm) -> "TailSpec":
        raise NotImplementedError

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset()


@dataclass(frozen=True)
class StarTail(TailSpec):
    def value_at(self, n: int) -> Optional[Atom]:
        return None

    def act(self, pi: FinPerm) -> "TailSpec":
        return self

    def __str__(self) -> str:
        return "star"


STAR = StarTail()


@dataclass(frozen=True)
class OracleTail(TailSpec):
    """Position n holds `atom` when the oracle says 1 and ∗ when it says 0."""

    oracle: BinSeqOracle
    atom: Atom

    def value_at(self, n: int) -> Optional[Atom]:
        return self.atom if self.oracle(n) else None

    def act(self, pi: FinPerm) -> "TailSpec":
        return OracleTail(self.oracle, pi(self.atom))

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset({self.atom})

    def __str__(self) -> str:
        return f"oracle({self.oracle.description}, {self.atom})"


Entry = Optional[Atom]  # None is ∗, the element of 1


def _show(entry: Entry) -> str:
    return "*" if entry is None else str(entry)


@dataclass(frozen=True)
class SeqFun:
    """An element of (𝔸+1)^ℕ: finitely many listed positions over a tail."""

    exceptions: Tuple[Tuple[int, Entry], ...] = ()
    tail: TailSpec = STAR

    def __post_init__(self) -> None:
        entries = dict(self.exceptions)
        if any(n < 0 for n in entries):
            raise ValueError("Sequence positions must be natural numbers")
        if isinstance(self.tail, StarTail):
            entries = {n: x for n, x in entries.items() if x is not None}
        object.__setattr__(self, "exceptions", tuple(sorted(entries.items())))

    @classmethod
    def of(
        cls, exceptions: Optional[Mapping[int, Entry]] = None, tail: TailSpec = STAR
    ) -> "SeqFun":
        return cls(tuple((exceptions or {}).items()), tail)

    @property
    def listed(self) -> Dict[int, Entry]:
        return dict(self.exceptions)

    def at(self, n: int) -> Entry:
        """The entry at position n, queried from the tail when not listed"""
        listed = self.listed
        if n in listed:
            return listed[n]
        return self.tail.value_at(n)

    def act(self, pi: FinPerm) -> "SeqFun":
        moved = tuple((n, None if x is None else pi(x)) for n, x in self.exceptions)
        return SeqFun(moved, self.tail.act(pi))

    def atoms(self) -> FrozenSet[Atom]:
        listed = frozenset(x for _, x in self.exceptions if x is not None)
        return listed | self.tail.atoms()

    def __str__(self) -> str:
        body = ", ".join(f"{n}:{_show(x)}" for n, x in self.exceptions)
        return f"{{{body}}} {self.tail}"


class CondShape(str, Enum):
    ABAR = "abar"  # {x ∈ {a} | φ} ∪ (𝔸 ∖ {a})
    SUBSET = "sub"  # {x ∈ {a} | φ}


@dataclass(frozen=True)
class CondSet:
    """A conditional set over one base atom; see `CondShape`."""

    base: Atom
    membership: Prop
    shape: CondShape = CondShape.SUBSET

    def contains(self, x: Atom) -> Prop:
        """Membership of x, as a proposition"""
        if x == self.base:
            return self.membership
        return Decided(self.shape is CondShape.ABAR)

    def act(self, pi: FinPerm) -> "CondSet":
        return CondSet(pi(self.base), self.membership, self.shape)

    def decided_members(self) -> Optional[FrozenSet[Atom]]:
        """Members of a SUBSET-shaped set when its guard is decided, else None."""
        if self.shape is not CondShape.SUBSET or not isinstance(self.membership, Decided):
            return None
        return frozenset({self.base}) if self.membership.value else frozenset()

    def __str__(self) -> str:
        return f"{self.shape.value} {self.base} {_wrap_prop(self.membership)}"


def _wrap_prop(p: Prop) -> str:
    text = p.describe()
    return f"({text})" if text.startswith("not ") else text


class NomValue:
    """Base class of the value grammar."""

    def act(self, pi: FinPerm) -> "NomValue":
        raise NotImplementedError

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset()


def _arg(v: NomValue) -> str:
    return str(v) if isinstance(v, UnitVal) else f"({v})"


@dataclass(frozen=True)
class AtomVal(NomValue):
    atom: Atom

    def act(self, pi: FinPerm) -> NomValue:
        return AtomVal(pi(self.atom))

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset({self.atom})

    def __str__(self) -> str:
        return f"atom {self.atom}"


@dataclass(frozen=True)
class UnitVal(NomValue):
    def act(self, pi: FinPerm) -> NomValue:
        return self

    def __str__(self) -> str:
        return "unit"


@dataclass(frozen=True)
class NatVal(NomValue):
    n: int

    def act(self, pi: FinPerm) -> NomValue:
        return self

    def __str__(self) -> str:
        return f"nat {self.n}"


@dataclass(frozen=True)
class InlVal(NomValue):
    value: NomValue

    def act(self, pi: FinPerm) -> NomValue:
        return InlVal(self.value.act(pi))

    def atoms(self) -> FrozenSet[Atom]:
        return self.value.atoms()

    def __str__(self) -> str:
        return f"inl {_arg(self.value)}"


@dataclass(frozen=True)
class InrVal(NomValue):
    value: NomValue

    def act(self, pi: FinPerm) -> NomValue:
        return InrVal(self.value.act(pi))

    def atoms(self) -> FrozenSet[Atom]:
        return self.value.atoms()

    def __str__(self) -> str:
        return f"inr {_arg(self.value)}"


@dataclass(frozen=True)
class PairVal(NomValue):
    left: NomValue
    right: NomValue

    def act(self, pi: FinPerm) -> NomValue:
        return PairVal(self.left.act(pi), self.right.act(pi))

    def atoms(self) -> FrozenSet[Atom]:
        return self.left.atoms() | self.right.atoms()

    def __str__(self) -> str:
        return f"pair {_arg(self.left)} {_arg(self.right)}"


@dataclass(frozen=True)
class SeqVal(NomValue):
    seq: SeqFun = field(default_factory=SeqFun)

    def act(self, pi: FinPerm) -> NomValue:
        return SeqVal(self.seq.act(pi))

    def atoms(self) -> FrozenSet[Atom]:
        return self.seq.atoms()

    def __str__(self) -> str:
        return f"seq {self.seq}"


@dataclass(frozen=True)
class CondSetVal(NomValue):
    cond: CondSet

    def act(self, pi: FinPerm) -> NomValue:
        return CondSetVal(self.cond.act(pi))

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset({self.cond.base})

    def __str__(self) -> str:
        return str(self.cond)


def act(pi: FinPerm, v: NomValue) -> NomValue:
    """The permutation action; the identity returns `v` itself."""
    if not pi:
        return v
    return v.act(pi)


def ambient_support(v: NomValue) -> FrozenSet[Atom]:
    """Every atom `v` mentions, a finite support of `v` by construction"""
    return v.atoms()


def is_oracle_free(v: NomValue) -> bool:
    """True when equality with `v` is always decided without queries"""
    if isinstance(v, (InlVal, InrVal)):
        return is_oracle_free(v.value)
    if isinstance(v, PairVal):
        return is_oracle_free(v.left) and is_oracle_free(v.right)
    if isinstance(v, SeqVal):
        return isinstance(v.seq.tail, StarTail)
    if isinstance(v, CondSetVal):
        return isinstance(v.cond.membership, Decided)
    return True


def tail_atoms(v: NomValue) -> FrozenSet[Atom]:
    """Atoms that some sequence in `v` repeats wherever an oracle says 1"""
    if isinstance(v, (InlVal, InrVal)):
        return tail_atoms(v.value)
    if isinstance(v, PairVal):
        return tail_atoms(v.left) | tail_atoms(v.right)
    if isinstance(v, SeqVal):
        return v.seq.tail.atoms()
    return frozenset()


@dataclass(frozen=True)
class SeqAgreement(Prop):
    """Both sequences agree at every position; refuted by scanning from 0."""

    left: SeqFun
    right: SeqFun

    @property
    def scans(self) -> bool:
        return True

    def _horizon(self) -> Optional[int]:
        if self.left.tail != self.right.tail:
            return None
        listed = set(self.left.listed) | set(self.right.listed)
        return max(listed) + 1 if listed else 0

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        horizon = self._horizon()
        left, right = self.left.listed, self.right.listed
        queries = 0
        n = 0
        while horizon is None or n < horizon:
            pending: List[BinSeqOracle] = []
            for listed, tail in ((left, self.left.tail), (right, self.right.tail)):
                if n not in listed and isinstance(tail, OracleTail):
                    if tail.oracle not in pending:
                        pending.append(tail.oracle)
            if len(pending) > meter.remaining:
                return SemiAnswer(Truth.UNKNOWN, queries)
            meter.charge(len(pending))
            queries += len(pending)
            x = left[n] if n in left else self.left.tail.value_at(n)
            y = right[n] if n in right else self.right.tail.value_at(n)
            if x != y:
                detail = f"position {n}: {_show(x)} vs {_show(y)}"
                return SemiAnswer(Truth.FALSE, queries, detail)
            n += 1
        return SemiAnswer(Truth.TRUE, queries)

    def describe(self) -> str:
        return f"agree(seq {self.left}, seq {self.right})"


def _seq_eq(s: SeqFun, t: SeqFun) -> Prop:
    if s == t:
        return TRUE
    left, right = s.listed, t.listed
    if isinstance(s.tail, StarTail) and isinstance(t.tail, StarTail):
        for n in sorted(set(left) | set(right)):
            x, y = left.get(n), right.get(n)
            if x != y:
                return Decided(False, f"position {n}: {_show(x)} vs {_show(y)}")
        return TRUE
    for n in sorted(set(left) & set(right)):
        if left[n] != right[n]:
            return Decided(False, f"position {n}: {_show(left[n])} vs {_show(right[n])}")
    if (
        isinstance(s.tail, OracleTail)
        and isinstance(t.tail, OracleTail)
        and s.tail.oracle is t.tail.oracle
        and left == right
    ):
        # the tails differ only in their atom
        return s.tail.oracle.all_zeros(left)
    return SeqAgreement(s, t)


def _cond_eq(c: CondSet, d: CondSet) -> Prop:
    if c.shape is not d.shape:
        return Decided(False, "an a-bar set is infinite, a subset of {a} is not")
    if c.base == d.base:
        return iff(c.membership, d.membership)
    if c.shape is CondShape.ABAR:
        # each base lies in the other set, so both memberships must hold
        return conj(c.membership, d.membership)
    return conj(negate(c.membership), negate(d.membership))


_COPRODUCT = (InlVal, InrVal)


def eq(v: NomValue, w: NomValue) -> Prop:
    """Equality of two values of one shape, as a proposition.

    Only oracle tails and undecided conditional-set guards leave it undecided.
    """
    if type(v) is not type(w):
        if isinstance(v, _COPRODUCT) and isinstance(w, _COPRODUCT):
            return Decided(False, f"{v} and {w} use different injections")
        raise ShapeMismatchError(
            f"Cannot compare {type(v).__name__} with {type(w).__name__}"
        )
    if isinstance(v, AtomVal) and isinstance(w, AtomVal):
        return TRUE if v.atom == w.atom else Decided(False, f"{v.atom} vs {w.atom}")
    if isinstance(v, UnitVal):
        return TRUE
    if isinstance(v, NatVal) and isinstance(w, NatVal):
        return TRUE if v.n == w.n else Decided(False, f"{v.n} vs {w.n}")
    if isinstance(v, (InlVal, InrVal)) and isinstance(w, (InlVal, InrVal)):
        return eq(v.value, w.value)
    if isinstance(v, PairVal) and isinstance(w, PairVal):
        first = eq(v.left, w.left)
        if isinstance(first, Decided) and not first.value:
            return first
        return conj(first, eq(v.right, w.right))
    if isinstance(v, SeqVal) and isinstance(w, SeqVal):
        return _seq_eq(v.seq, w.seq)
    if isinstance(v, CondSetVal) and isinstance(w, CondSetVal):
        return _cond_eq(v.cond, w.cond)
    raise ShapeMismatchError(f"Unknown value construction {type(v).__name__}")


def assume_in_value(v: NomValue, target: Prop, value: bool) -> NomValue:
    """The value with every conditional-set guard specialised to `target` = value."""
    if isinstance(v, CondSetVal):
        guard = assume(v.cond.membership, target, value)
        return CondSetVal(CondSet(v.cond.base, guard, v.cond.shape))
    if isinstance(v, InlVal):
        return InlVal(assume_in_value(v.value, target, value))
    if isinstance(v, InrVal):
        return InrVal(assume_in_value(v.value, target, value))
    if isinstance(v, PairVal):
        return PairVal(
            assume_in_value(v.left, target, value), assume_in_value(v.right, target, value)
        )
    return v
