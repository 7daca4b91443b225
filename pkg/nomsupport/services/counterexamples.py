from typing import Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..atoms import Atom, format_atoms
from ..config import get_settings
from ..models import (
    Claim,
    DemoReport,
    FamilyMember,
    LeastSupport,
    Outcome,
    SeqSpec,
    SeqSpecKind,
    SupportFamily,
    SupportReport,
    Verdict,
)
from ..nomset import (
    CondSet,
    CondSetVal,
    CondShape,
    NomValue,
    OracleTail,
    PairVal,
    SeqFun,
    SeqVal,
    UnitVal,
)
from ..props import TRUE, Decided, Prop, conj, disj, negate
from .oracle_registry import OracleRegistry, get_oracle_registry
from .support_calculus import SupportCalculus, get_support_calculus

WLPO_NARRATIVE = (
    "Every alpha_a has {a} as a finite support, and alpha_a is equivariant exactly "
    "when alpha is all zeros. A total support function S on (A+1)^N would therefore "
    "decide 'for all n, alpha(n) = 0' for every alpha: a in S(alpha_a) means some "
    "alpha(n) is 1, a not in S(alpha_a) means alpha is all zeros. The rows above "
    "decide this only for decidable specs; registered oracles stay undecided at "
    "any finite budget unless a 1 shows up. The intersection of all finite supports "
    "of alpha_a is L = {x in {a} | not all zeros}, a subfinite support in both cases "
    "of its guard. A finite L would be decidable, and so would the all-zeros question."
)

ABAR_NARRATIVE = (
    "a-bar is {x in {a} | phi} together with every atom other than a. It is "
    "supported by {a} outright and by the empty set exactly when phi holds, so "
    "its least support is {x in {a} | not phi}. Deciding that set decides phi."
)

FAMILY_NARRATIVE = (
    "The family of finite supports of a-bar is {{a}} together with the empty set "
    "guarded by phi; in both cases the member is a finite support. Its intersection "
    "is {x in {a} | not phi}, which supports a-bar only in so far as "
    "'not not phi implies phi' is available. A least subfinite support would lie "
    "inside every finite support, so it would make that intersection a support too."
)

S1S2_NARRATIVE = (
    "With phi = psi or not psi, S1 = {x in {a} | psi} and S2 = {x in {a} | not psi} "
    "are both subfinite supports of a-bar, yet their intersection is empty since "
    "psi and not psi is false. The empty set supports a-bar only if psi or not psi "
    "holds, so supports are not closed under binary intersection constructively. "
    "Nor does a subfinite support always contain a finite one: finite supports "
    "inside S1 and S2 would meet in a finite support inside the empty set."
)


def _claim(statement: str, report: SupportReport) -> Claim:
    return Claim(
        statement=statement,
        outcome=report.outcome,
        detail=report.summary(),
        record=report.record(),
    )


def _least_claim(statement: str, least: LeastSupport) -> Claim:
    return Claim(
        statement=statement,
        outcome=least.outcome,
        detail=least.summary(),
        record=least.record(),
    )


def _cond_text(cond: CondSet) -> str:
    return f"{{x ∈ {{{cond.base}}} | {cond.membership.describe()}}}"


def _chain(values: Sequence[NomValue]) -> NomValue:
    """One value carrying all of `values`, as right-nested pairs"""
    if not values:
        return UnitVal()
    if len(values) == 1:
        return values[0]
    return PairVal(values[0], _chain(values[1:]))


class CounterexampleBuilder:
    """Builds the values on which least support stops being computable"""

    def __init__(
        self,
        calculus: Optional[SupportCalculus] = None,
        registry: Optional[OracleRegistry] = None,
    ):
        self.calculus = calculus or get_support_calculus()
        self.registry = registry or get_oracle_registry()

    def _budget(self, budget: Optional[int]) -> int:
        return get_settings().default_budget if budget is None else budget

    def all_zeros(self, spec: SeqSpec) -> Prop:
        """The proposition 'for all n, alpha(n) = 0' for a sequence spec"""
        if spec.kind is SeqSpecKind.ZEROS:
            return Decided(True, "zeros has no 1")
        if spec.kind is SeqSpecKind.ONE_AT:
            if not spec.positions:
                return Decided(True, f"{spec} has no 1")
            return Decided(False, f"{spec} has a 1 at position {min(spec.positions)}")
        return self.registry.all_zeros(spec.name or "")

    def make_alpha_a(self, spec: SeqSpec, a: Atom) -> NomValue:
        """alpha_a(n) is a where alpha(n) = 1 and ∗ elsewhere"""
        if spec.kind is SeqSpecKind.ZEROS:
            return SeqVal()
        if spec.kind is SeqSpecKind.ONE_AT:
            return SeqVal(SeqFun.of({n: a for n in spec.positions}))
        oracle = self.registry.get(spec.name or "")
        return SeqVal(SeqFun.of(tail=OracleTail(oracle, a)))

    def alpha_equivariance(self, spec: SeqSpec, a: Atom, budget: int) -> SupportReport:
        return self.calculus.is_equivariant(self.make_alpha_a(spec, a), budget)

    def l_set(self, spec: SeqSpec, a: Atom) -> CondSet:
        return CondSet(a, negate(self.all_zeros(spec)), CondShape.SUBSET)

    def make_abar(self, phi: Prop, a: Atom) -> CondSet:
        return CondSet(a, phi, CondShape.ABAR)

    def abar_demo(self, phi: Prop, a: Atom, budget: Optional[int] = None) -> DemoReport:
        budget = self._budget(budget)
        abar = CondSetVal(self.make_abar(phi, a))
        claims = [
            _claim("ā is equivariant", self.calculus.is_equivariant(abar, budget)),
            _least_claim("least support of ā", self.calculus.least_support(abar, budget)),
        ]
        return DemoReport(
            construction=f"ā for φ = {phi.describe()}",
            element=abar,
            claims=claims,
            narrative=ABAR_NARRATIVE,
        )

    def make_support_family(
        self, phi: Prop, a: Atom, budget: Optional[int] = None
    ) -> SupportFamily:
        """The finite supports of ā: {a} unconditionally, ∅ guarded by φ"""
        budget = self._budget(budget)
        abar = CondSetVal(self.make_abar(phi, a))
        members = [
            FamilyMember(
                support=frozenset({a}),
                guard=TRUE,
                report=self.calculus.is_support(abar, {a}, budget),
            )
        ]
        if not (isinstance(phi, Decided) and not phi.value):
            members.append(
                FamilyMember(
                    support=frozenset(),
                    guard=phi,
                    report=self.calculus.is_support(abar, frozenset(), budget),
                )
            )

        intersection = CondSet(a, negate(phi), CondShape.SUBSET)
        claims = []
        for member in members:
            guard = "" if member.guard is TRUE else f" (member when {member.guard})"
            statement = f"{format_atoms(member.support)} supports ā{guard}"
            claims.append(_claim(statement, member.report))
        common = self.calculus.is_subfinite_support(abar, intersection, budget)
        claims.append(_claim(f"⋂𝒮 = {_cond_text(intersection)} supports ā", common))

        demo = DemoReport(
            construction=f"𝒮 for ā with φ = {phi.describe()}",
            element=abar,
            claims=claims,
            narrative=FAMILY_NARRATIVE,
        )
        return SupportFamily(members=members, intersection=intersection, demo=demo)

    def make_s1_s2(
        self, psi: Prop, a: Atom, budget: Optional[int] = None
    ) -> Tuple[CondSet, CondSet, DemoReport]:
        budget = self._budget(budget)
        abar = CondSetVal(self.make_abar(disj(psi, negate(psi)), a))
        s1 = CondSet(a, psi, CondShape.SUBSET)
        s2 = CondSet(a, negate(psi), CondShape.SUBSET)
        common = CondSet(a, conj(s1.membership, s2.membership), CondShape.SUBSET)
        calculus = self.calculus

        empty = common.decided_members() == frozenset()
        claims = [
            Claim(
                statement="S₁ ∩ S₂ = ∅",
                outcome=Outcome.HOLDS if empty else Outcome.FAILS,
                detail=_cond_text(common),
            ),
            _claim("S₁ supports ā", calculus.is_subfinite_support(abar, s1, budget)),
            _claim("S₂ supports ā", calculus.is_subfinite_support(abar, s2, budget)),
            _claim("S₁ ∩ S₂ supports ā", calculus.is_support(abar, frozenset(), budget)),
        ]
        if not empty:
            logger.error(f"S₁ ∩ S₂ is not empty for ψ = {psi.describe()}")
        demo = DemoReport(
            construction=f"S₁, S₂ for ψ = {psi.describe()}",
            element=abar,
            claims=claims,
            narrative=S1S2_NARRATIVE,
        )
        return s1, s2, demo

    def wlpo_demo(self, specs: Sequence[SeqSpec], a: Atom, budget: int) -> DemoReport:
        """Tabulate least supports of alpha_a; decidable specs settle, oracles do not"""
        claims: List[Claim] = []
        alphas: List[NomValue] = []
        for spec in specs:
            logger.info(f"Computing least support of alpha_a for {spec}")
            alpha = self.make_alpha_a(spec, a)
            alphas.append(alpha)
            least = self.calculus.least_support(alpha, budget)
            l_set = self.l_set(spec, a)
            claim = _least_claim(f"least support of α_{a} for {spec}", least)
            claim.record["l_set"] = _cond_text(l_set)
            claims.append(claim)
            report = self.calculus.is_subfinite_support(alpha, l_set, budget)
            claims.append(_claim(f"L = {_cond_text(l_set)} supports α_{a} for {spec}", report))
        return DemoReport(
            construction=f"α_{a} over {len(specs)} sequence spec(s)",
            element=_chain(alphas),
            claims=claims,
            narrative=WLPO_NARRATIVE,
        )

    def intersection_demo(
        self,
        v: NomValue,
        first: Iterable[Atom],
        second: Iterable[Atom],
        budget: Optional[int] = None,
    ) -> DemoReport:
        budget = self._budget(budget)
        first, second = frozenset(first), frozenset(second)
        reports = [self.calculus.is_support(v, s, budget) for s in (first, second)]
        claims = [
            _claim(f"{format_atoms(s)} supports the value", report)
            for s, report in zip((first, second), reports)
        ]
        if all(report.verdict is Verdict.VERIFIED for report in reports):
            common, report = self.calculus.intersect_supports(v, first, second, budget)
            statement = f"{format_atoms(common)} = A ∩ B supports the value"
            claims.append(_claim(statement, report))
        else:
            logger.warning("Skipping A ∩ B: A and B are not both verified supports")
        return DemoReport(
            construction=f"{format_atoms(first)} ∩ {format_atoms(second)}",
            element=v,
            claims=claims,
            narrative="Finite supports of one element are closed under binary intersection.",
        )


# Global builder instance
counterexample_builder: Optional[CounterexampleBuilder] = None


def get_counterexample_builder() -> CounterexampleBuilder:
    global counterexample_builder
    if counterexample_builder is None:
        counterexample_builder = CounterexampleBuilder()
    return counterexample_builder
