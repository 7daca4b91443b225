from enum import Enum
from functools import reduce
from itertools import chain, combinations, permutations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..atoms import Atom, format_atoms, fresh
from ..config import get_settings
from ..exceptions import (
    PreconditionError,
    ShapeMismatchError,
    UniverseTooLargeError,
    UnsupportedFamilyError,
)
from ..models import LeastSupport, LeastSupportKind, SupportReport, Verdict
from ..nomset import (
    AtomVal,
    CondSet,
    CondShape,
    InlVal,
    InrVal,
    NatVal,
    NomValue,
    UnitVal,
    act,
    ambient_support,
    assume_in_value,
    eq,
    is_oracle_free,
    tail_atoms,
)
from ..perm import FinPerm, moved, transposition
from ..props import BudgetMeter, Decided, Prop, Truth, assume, conj, disj, negate

AtomSet = FrozenSet[Atom]


class ValueFamily(str, Enum):
    ATOMS = "atoms"
    NAT = "nat"
    UNIT = "unit"
    COPRODUCT_OF_DECIDABLE = "coproduct"
    SEQUENCES = "sequences"


class SupportCalculus:
    """Service for support checks, equivariance, intersections and least supports.

    Supporthood of a candidate S ⊆ A (A the ambient support) is checked with
    one transposition (a b) per a ∈ A ∖ S, b a fresh atom: every permutation
    fixing S is a product of transpositions of atoms outside S, and each of those
    conjugates through b.
    """

    def __init__(self, max_universe: Optional[int] = None):
        self.max_universe = (
            max_universe if max_universe is not None else get_settings().max_universe
        )

    def is_support(self, v: NomValue, candidate: Iterable[Atom], budget: int) -> SupportReport:
        report, _ = self._check(v, frozenset(candidate), BudgetMeter(budget))
        return report

    def is_equivariant(self, v: NomValue, budget: int) -> SupportReport:
        return self.is_support(v, frozenset(), budget)

    def _check(
        self, v: NomValue, candidate: AtomSet, meter: BudgetMeter
    ) -> Tuple[SupportReport, Optional[Prop]]:
        """Run the transposition checks; also return the undecided residual, if any"""
        ambient = ambient_support(v)
        notes: List[str] = []
        extra = candidate - ambient
        if extra:
            logger.warning(
                f"Discarding {format_atoms(extra)}: outside the ambient support of {v}"
            )
            notes.append(f"discarded {format_atoms(extra)} outside the ambient support")
        kept = candidate & ambient
        spare = fresh(ambient | candidate)
        start = meter.used
        residuals: List[Prop] = []
        scanned = False
        tails = tail_atoms(v)

        for a in sorted(ambient - kept):
            swap = transposition(a, spare)
            condition = eq(act(swap, v), v)
            answer = condition.decide(meter)
            if answer.truth is Truth.FALSE:
                detail = answer.evidence or f"{swap} moves the value"
                report = SupportReport(
                    verdict=Verdict.REFUTED,
                    witness=swap,
                    detail=detail,
                    budget_used=meter.used - start,
                    notes=notes,
                )
                return report, None
            if answer.truth is Truth.UNKNOWN:
                # swapping an oracle-tail atom leaves a sequence scan open
                scanned = scanned or condition.scans or a in tails
                if condition not in residuals:
                    residuals.append(condition)

        used = meter.used - start
        if not residuals:
            return SupportReport(verdict=Verdict.VERIFIED, budget_used=used, notes=notes), None
        residual = reduce(conj, residuals)
        if scanned:
            report = SupportReport(verdict=Verdict.UNKNOWN, budget_used=used, notes=notes)
        else:
            report = SupportReport(
                verdict=Verdict.CONDITIONAL, condition=residual, budget_used=used, notes=notes
            )
        return report, residual

    def intersect_supports(
        self, v: NomValue, first: Iterable[Atom], second: Iterable[Atom], budget: int
    ) -> Tuple[AtomSet, SupportReport]:
        """A ∩ B for two verified supports A and B, with its own support check"""
        first, second = frozenset(first), frozenset(second)
        for candidate in (first, second):
            report = self.is_support(v, candidate, budget)
            if report.verdict is not Verdict.VERIFIED:
                raise PreconditionError(
                    f"{format_atoms(candidate)} is not a verified support of {v}: "
                    f"{report.summary()}"
                )
        common = first & second
        report = self.is_support(v, common, budget)
        if report.verdict is Verdict.VERIFIED:
            logger.success(f"{format_atoms(common)} supports {v}")
        elif is_oracle_free(v):
            logger.error(f"Intersection {format_atoms(common)} of verified supports failed")
        return common, report

    def intersect_many(
        self, v: NomValue, supports: Sequence[Iterable[Atom]], budget: int
    ) -> Tuple[AtomSet, SupportReport]:
        """Iterated binary intersection of a finite, inhabited family of supports"""
        if not supports:
            raise PreconditionError("The family of supports must be inhabited")
        current = frozenset(supports[0])
        report = self.is_support(v, current, budget)
        if report.verdict is not Verdict.VERIFIED:
            raise PreconditionError(
                f"{format_atoms(current)} is not a verified support of {v}: {report.summary()}"
            )
        for other in supports[1:]:
            current, report = self.intersect_supports(v, current, other, budget)
            if report.verdict is not Verdict.VERIFIED:
                break
        return current, report

    def least_support(
        self, v: NomValue, budget: int, order: Optional[Sequence[Atom]] = None
    ) -> LeastSupport:
        """Greedy removal from the ambient support; undecided atoms stay, guarded"""
        meter = BudgetMeter(budget)
        ambient = ambient_support(v)
        current = set(ambient)
        guarded: Dict[Atom, Prop] = {}

        for a in order if order is not None else sorted(ambient):
            if a not in current:
                continue
            report, residual = self._check(v, frozenset(current - {a}), meter)
            if report.verdict is Verdict.VERIFIED:
                current.discard(a)
            elif residual is not None:
                guarded[a] = residual

        certain = frozenset(current) - frozenset(guarded)
        if not guarded:
            logger.info(f"Least support of {v}: {format_atoms(certain)}")
            return LeastSupport(
                kind=LeastSupportKind.EXACT, atoms=certain, budget_used=meter.used
            )
        if len(guarded) == 1:
            (a, residual), = guarded.items()
            # a belongs to the least support exactly when removing it fails
            cond = CondSet(a, negate(residual), CondShape.SUBSET)
            logger.warning(f"Least support of {v} depends on {residual.describe()}")
            return LeastSupport(
                kind=LeastSupportKind.CONDITIONAL_SET,
                atoms=certain,
                guarded=cond,
                budget_used=meter.used,
            )
        logger.warning(f"Least support of {v} undecided at budget {budget}")
        return LeastSupport(
            kind=LeastSupportKind.UNKNOWN,
            atoms=certain,
            undecided=frozenset(guarded),
            budget_used=meter.used,
        )

    def is_subfinite_support(
        self, v: NomValue, candidate: CondSet, budget: int
    ) -> SupportReport:
        """Supporthood of {x ∈ {b} | g}, by cases on the guard g"""
        if candidate.shape is not CondShape.SUBSET:
            raise ShapeMismatchError("A subfinite support must be a subset of {b}")
        meter = BudgetMeter(budget)
        guard = candidate.membership
        base = frozenset({candidate.base})
        answer = guard.decide(meter)
        if answer.truth is Truth.TRUE:
            return self._check(v, base, meter)[0]
        if answer.truth is Truth.FALSE:
            return self._check(v, frozenset(), meter)[0]

        inside, _ = self._check(v, base, meter)
        if inside.verdict is not Verdict.VERIFIED:
            return inside
        outside, residual = self._check(assume_in_value(v, guard, False), frozenset(), meter)
        if residual is not None:
            residual = assume(residual, guard, False)
        settled = isinstance(residual, Decided) and residual.value
        if outside.verdict is Verdict.VERIFIED or settled:
            return SupportReport(
                verdict=Verdict.VERIFIED,
                budget_used=meter.used,
                notes=[f"verified in both cases of {guard.describe()}"],
            )
        # without the guard the empty set must do, which needs the residual
        condition = guard if residual is None else disj(guard, residual)
        if condition.scans or outside.verdict is Verdict.UNKNOWN:
            return SupportReport(verdict=Verdict.UNKNOWN, budget_used=meter.used)
        return SupportReport(
            verdict=Verdict.CONDITIONAL, condition=condition, budget_used=meter.used
        )

    def brute_force_least_support(self, v: NomValue, universe: Iterable[Atom]) -> AtomSet:
        """Least support by enumerating every permutation of a small universe"""
        universe = frozenset(universe)
        ambient = ambient_support(v)
        if len(universe) > self.max_universe:
            raise UniverseTooLargeError(
                f"Universe of {len(universe)} atoms exceeds the limit of {self.max_universe}"
            )
        if not is_oracle_free(v):
            raise PreconditionError(f"{v} depends on an oracle")
        if not ambient <= universe:
            raise PreconditionError(
                f"Universe {format_atoms(universe)} misses {format_atoms(ambient - universe)}"
            )
        if ambient and universe == ambient:
            raise PreconditionError("The universe needs an atom outside the ambient support")

        atoms = sorted(universe)
        breaking: List[AtomSet] = []
        for image in permutations(atoms):
            pi = FinPerm(dict(zip(atoms, image)))
            if eq(act(pi, v), v).evaluate(0).truth is not Truth.TRUE:
                breaking.append(moved(pi))

        ordered = sorted(ambient)
        subsets = chain.from_iterable(
            combinations(ordered, size) for size in range(len(ordered) + 1)
        )
        # S supports v iff every permutation moving v moves some atom of S
        supports = [
            frozenset(s) for s in subsets if all(m.intersection(s) for m in breaking)
        ]
        return reduce(frozenset.intersection, supports, ambient)

    def support_function(self, family: ValueFamily) -> Callable[[NomValue], AtomSet]:
        if family is ValueFamily.SEQUENCES:
            raise UnsupportedFamilyError(
                "(A+1)^N has no constructive support function: one would decide "
                "'for all n, alpha(n) = 0' for every binary sequence alpha (WLPO)"
            )
        return lambda v: _least_support_in(family, v)


def _least_support_in(family: ValueFamily, v: NomValue) -> AtomSet:
    if family is ValueFamily.ATOMS and isinstance(v, AtomVal):
        return frozenset({v.atom})
    if family is ValueFamily.NAT and isinstance(v, NatVal):
        return frozenset()
    if family is ValueFamily.UNIT and isinstance(v, UnitVal):
        return frozenset()
    if family is ValueFamily.COPRODUCT_OF_DECIDABLE:
        if isinstance(v, (InlVal, InrVal)):
            return _least_support_in(family, v.value)
        if isinstance(v, AtomVal):
            return frozenset({v.atom})
        if isinstance(v, (NatVal, UnitVal)):
            return frozenset()
    raise ShapeMismatchError(f"{v} is not an element of the {family.value} family")


# Global calculus instance
support_calculus: Optional[SupportCalculus] = None


def get_support_calculus() -> SupportCalculus:
    global support_calculus
    if support_calculus is None:
        support_calculus = SupportCalculus()
    return support_calculus
