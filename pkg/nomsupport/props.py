"""Propositions with budgeted, three-valued evaluation.

A `Prop` is either decided outright or backed by a semi-decision procedure that
is asked for an answer within a query budget. Answers are monotone in the
budget: once TRUE or FALSE, always TRUE or FALSE.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Optional


class Truth(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Truth":
        return cls.TRUE if value else cls.FALSE

    def __invert__(self) -> "Truth":
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return Truth.UNKNOWN

    def __and__(self, other: "Truth") -> "Truth":
        if self is Truth.FALSE or other is Truth.FALSE:
            return Truth.FALSE
        if self is Truth.UNKNOWN or other is Truth.UNKNOWN:
            return Truth.UNKNOWN
        return Truth.TRUE

    def __or__(self, other: "Truth") -> "Truth":
        if self is Truth.TRUE or other is Truth.TRUE:
            return Truth.TRUE
        if self is Truth.UNKNOWN or other is Truth.UNKNOWN:
            return Truth.UNKNOWN
        return Truth.FALSE


class SemiAnswer(NamedTuple):
    truth: Truth
    queries: int = 0
    evidence: Optional[str] = None


class BudgetMeter:
    """Per-call query accounting; one oracle query costs one unit."""

    def __init__(self, budget: int):
        if budget < 0:
            raise ValueError(f"Budget must be a natural number, got {budget}")
        self.budget = budget
        self.used = 0

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    @property
    def exhausted(self) -> bool:
        return self.used >= self.budget

    def charge(self, queries: int) -> None:
        self.used = min(self.budget, self.used + queries)


class Prop:
    """Base class; subclasses implement `decide`."""

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        raise NotImplementedError

    def evaluate(self, budget: int) -> SemiAnswer:
        return self.decide(BudgetMeter(budget))

    @property
    def scans(self) -> bool:
        """True when settling this proposition needs an open-ended sequence scan."""
        return False

    def assume(self, target: "Prop", value: bool) -> "Prop":
        """This proposition with `target` replaced by a decided value."""
        if self == target:
            return Decided(value)
        return self

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Decided(Prop):
    value: bool
    reason: str = field(default="", compare=False)

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        return SemiAnswer(Truth.of(self.value), 0, self.reason or None)

    def describe(self) -> str:
        return "true" if self.value else "false"


TRUE = Decided(True)
FALSE = Decided(False)


@dataclass(frozen=True, eq=False)
class Oracle(Prop):
    """Semi-decided proposition; equality is identity."""

    semi: Callable[[int], SemiAnswer]
    description: str

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        answer = self.semi(meter.remaining)
        meter.charge(answer.queries)
        return answer

    def describe(self) -> str:
        return self.description


@dataclass(frozen=True)
class Not(Prop):
    operand: Prop

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        answer = self.operand.decide(meter)
        return SemiAnswer(~answer.truth, answer.queries, answer.evidence)

    @property
    def scans(self) -> bool:
        return self.operand.scans

    def assume(self, target: Prop, value: bool) -> Prop:
        if self == target:
            return Decided(value)
        return negate(self.operand.assume(target, value))

    def describe(self) -> str:
        return f"not {self.operand.describe()}"


@dataclass(frozen=True)
class And(Prop):
    left: Prop
    right: Prop

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        first = self.left.decide(meter)
        if first.truth is Truth.FALSE:
            return first
        second = self.right.decide(meter)
        queries = first.queries + second.queries
        return SemiAnswer(first.truth & second.truth, queries, second.evidence)

    @property
    def scans(self) -> bool:
        return self.left.scans or self.right.scans

    def assume(self, target: Prop, value: bool) -> Prop:
        if self == target:
            return Decided(value)
        return conj(self.left.assume(target, value), self.right.assume(target, value))

    def describe(self) -> str:
        return f"({self.left.describe()} and {self.right.describe()})"


@dataclass(frozen=True)
class Or(Prop):
    left: Prop
    right: Prop

    def decide(self, meter: BudgetMeter) -> SemiAnswer:
        first = self.left.decide(meter)
        if first.truth is Truth.TRUE:
            return first
        second = self.right.decide(meter)
        queries = first.queries + second.queries
        return SemiAnswer(first.truth | second.truth, queries, second.evidence)

    @property
    def scans(self) -> bool:
        return self.left.scans or self.right.scans

    def assume(self, target: Prop, value: bool) -> Prop:
        if self == target:
            return Decided(value)
        return disj(self.left.assume(target, value), self.right.assume(target, value))

    def describe(self) -> str:
        return f"({self.left.describe()} or {self.right.describe()})"


def negate(p: Prop) -> Prop:
    if isinstance(p, Decided):
        return Decided(not p.value, p.reason)
    if isinstance(p, Not):
        # propositions built here are stable under double negation
        return p.operand
    return Not(p)


def _complementary(p: Prop, q: Prop) -> bool:
    return negate(p) == q or negate(q) == p


def conj(p: Prop, q: Prop) -> Prop:
    if isinstance(p, Decided):
        return q if p.value else p
    if isinstance(q, Decided):
        return p if q.value else q
    if p == q:
        return p
    if _complementary(p, q):
        return Decided(False, f"{p.describe()} contradicts its negation")
    return And(p, q)


def disj(p: Prop, q: Prop) -> Prop:
    if isinstance(p, Decided):
        return p if p.value else q
    if isinstance(q, Decided):
        return q if q.value else p
    if p == q:
        return p
    return Or(p, q)


def iff(p: Prop, q: Prop) -> Prop:
    if p == q:
        return TRUE
    if isinstance(p, Decided):
        return q if p.value else negate(q)
    if isinstance(q, Decided):
        return p if q.value else negate(p)
    return disj(conj(p, q), conj(negate(p), negate(q)))


def assume(p: Prop, target: Prop, value: bool) -> Prop:
    """Specialise `p` to the case where `target` has the given truth value.

    Assuming ¬q also fixes q, since the propositions here are stable under
    double negation.
    """
    result = p.assume(target, value)
    if isinstance(target, Not):
        result = result.assume(target.operand, not value)
    return result
