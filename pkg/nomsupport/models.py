from enum import Enum, IntEnum
from typing import Any, Dict, FrozenSet, List, Optional

from pydantic import BaseModel, Field, field_serializer

from .atoms import Atom, format_atoms
from .nomset import CondSet, NomValue
from .perm import FinPerm
from .props import Prop


class ExitStatus(IntEnum):
    OK = 0
    REFUTED = 2
    UNDECIDED = 3
    USAGE = 64


class Verdict(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    CONDITIONAL = "conditional"
    UNKNOWN = "unknown"


# Outcome of a claim inside a demo, ordered by how it maps onto exit statuses
class Outcome(str, Enum):
    VERIFIED = "verified"
    EXACT = "exact"
    HOLDS = "holds"
    REFUTED = "refuted"
    FAILS = "fails"
    CONDITIONAL = "conditional"
    CONDITIONAL_SET = "conditional-set"
    UNKNOWN = "unknown"

    @property
    def exit_status(self) -> ExitStatus:
        if self in (Outcome.VERIFIED, Outcome.EXACT, Outcome.HOLDS):
            return ExitStatus.OK
        if self in (Outcome.REFUTED, Outcome.FAILS):
            return ExitStatus.REFUTED
        return ExitStatus.UNDECIDED


def worst_status(statuses: List[ExitStatus]) -> ExitStatus:
    if ExitStatus.UNDECIDED in statuses:
        return ExitStatus.UNDECIDED
    if ExitStatus.REFUTED in statuses:
        return ExitStatus.REFUTED
    return ExitStatus.OK


class SupportReport(BaseModel):
    verdict: Verdict
    witness: Optional[FinPerm] = None
    detail: Optional[str] = None
    condition: Optional[Prop] = None
    budget_used: int = Field(default=0, ge=0)
    notes: List[str] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_serializer("witness")
    def _witness(self, witness: Optional[FinPerm]) -> Optional[str]:
        return None if witness is None else str(witness)

    @field_serializer("condition")
    def _condition(self, condition: Optional[Prop]) -> Optional[str]:
        return None if condition is None else condition.describe()

    @property
    def outcome(self) -> Outcome:
        return Outcome(self.verdict.value)

    @property
    def exit_status(self) -> ExitStatus:
        return self.outcome.exit_status

    def record(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)

    def summary(self) -> str:
        if self.verdict is Verdict.REFUTED:
            return f"refuted by {self.witness}: {self.detail}"
        if self.verdict is Verdict.CONDITIONAL:
            return f"conditional on {self.condition.describe() if self.condition else '?'}"
        if self.verdict is Verdict.UNKNOWN:
            return f"unknown after {self.budget_used} oracle queries"
        return "verified"


class LeastSupportKind(str, Enum):
    EXACT = "exact"
    CONDITIONAL_SET = "conditional-set"
    UNKNOWN = "unknown"


class LeastSupport(BaseModel):
    """Least finite support: an exact set, certain atoms plus one guarded atom, or unknown"""

    kind: LeastSupportKind
    atoms: FrozenSet[Atom] = Field(default_factory=frozenset)
    guarded: Optional[CondSet] = None
    undecided: FrozenSet[Atom] = Field(default_factory=frozenset)
    budget_used: int = Field(default=0, ge=0)

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_serializer("atoms", "undecided")
    def _atom_set(self, atoms: FrozenSet[Atom]) -> List[str]:
        return [str(a) for a in sorted(atoms)]

    @field_serializer("guarded")
    def _guarded(self, guarded: Optional[CondSet]) -> Optional[str]:
        return None if guarded is None else str(guarded)

    @property
    def outcome(self) -> Outcome:
        return Outcome(self.kind.value)

    @property
    def exit_status(self) -> ExitStatus:
        return self.outcome.exit_status

    def record(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)

    def summary(self) -> str:
        if self.kind is LeastSupportKind.EXACT:
            return format_atoms(self.atoms)
        if self.kind is LeastSupportKind.CONDITIONAL_SET:
            guarded = self.guarded
            condition = guarded.membership.describe() if guarded else "?"
            base = guarded.base if guarded else "?"
            return f"{format_atoms(self.atoms)} ∪ {{x ∈ {{{base}}} | {condition}}}"
        return (
            f"unknown: {format_atoms(self.atoms)} plus undecided "
            f"{format_atoms(self.undecided)} after {self.budget_used} oracle queries"
        )


class SeqSpecKind(str, Enum):
    ZEROS = "zeros"
    ONE_AT = "one-at"
    REGISTERED = "registered"


class SeqSpec(BaseModel):
    """A binary sequence: all zeros, ones at listed positions, or a registered oracle"""

    kind: SeqSpecKind
    positions: FrozenSet[int] = Field(default_factory=frozenset)
    name: Optional[str] = None

    class Config:
        frozen = True

    @property
    def is_decidable(self) -> bool:
        return self.kind is not SeqSpecKind.REGISTERED

    def __str__(self) -> str:
        if self.kind is SeqSpecKind.ZEROS:
            return "zeros"
        if self.kind is SeqSpecKind.ONE_AT:
            return "one@{" + ",".join(str(n) for n in sorted(self.positions)) + "}"
        return f"oracle:{self.name}"


class Claim(BaseModel):
    statement: str
    outcome: Outcome
    detail: Optional[str] = None
    record: Dict[str, Any] = Field(default_factory=dict)


class DemoReport(BaseModel):
    construction: str
    element: NomValue
    claims: List[Claim] = Field(default_factory=list)
    narrative: str = ""

    class Config:
        arbitrary_types_allowed = True

    @field_serializer("element")
    def _element(self, element: NomValue) -> str:
        return str(element)

    @property
    def exit_status(self) -> ExitStatus:
        return worst_status([claim.outcome.exit_status for claim in self.claims])

    def record(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


class FamilyMember(BaseModel):
    support: FrozenSet[Atom]
    guard: Prop
    report: SupportReport

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class SupportFamily(BaseModel):
    """The family of finite supports of an a-bar set: {a} always, ∅ when φ holds"""

    members: List[FamilyMember]
    intersection: CondSet
    demo: DemoReport

    class Config:
        arbitrary_types_allowed = True


class SuiteResult(BaseModel):
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def exit_status(self) -> ExitStatus:
        return ExitStatus.OK if self.passed else ExitStatus.REFUTED
