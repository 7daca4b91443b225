"""Seeded property suites behind the `suite` command.

Each suite draws its cases from `random.Random(seed)`, so a run is reproducible
from the seed alone, and reports how many cases were checked and which failed
first.
"""
import random
import time
from itertools import permutations
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence

from loguru import logger

from ..atoms import Atom
from ..config import get_settings
from ..models import (
    LeastSupportKind,
    Outcome,
    SeqSpec,
    SeqSpecKind,
    SuiteResult,
    Verdict,
)
from ..nomset import (
    AtomVal,
    CondSet,
    CondSetVal,
    CondShape,
    InlVal,
    InrVal,
    NatVal,
    NomValue,
    PairVal,
    SeqFun,
    SeqVal,
    UnitVal,
    act,
    ambient_support,
    eq,
)
from ..perm import (
    FinPerm,
    compose,
    compose_swaps,
    conjugation_split,
    decompose,
    identity,
    inverse,
    moved,
    transposition,
)
from ..props import FALSE, TRUE, Decided, Prop
from ..syntax import format_perm, format_value, parse_perm, parse_value
from .counterexamples import CounterexampleBuilder, get_counterexample_builder

# a case returns None when it passes, else a description of the failure
Case = Callable[[], Optional[str]]

ATOMS_8 = [Atom(i) for i in range(8)]
ATOMS_6 = [Atom(i) for i in range(6)]
UNIVERSE_5 = [Atom(i) for i in range(5)]
VALUE_ATOMS = UNIVERSE_5[:4]


def random_perm(rng: random.Random, atoms: Sequence[Atom]) -> FinPerm:
    image = list(atoms)
    rng.shuffle(image)
    return FinPerm(dict(zip(atoms, image)))


def random_value(rng: random.Random, atoms: Sequence[Atom], depth: int = 3) -> NomValue:
    """An oracle-free value of at most the given depth over the given atoms"""
    leaves = ["atom", "unit", "nat", "seq", "cond"]
    kind = rng.choice(leaves + (["inl", "inr", "pair", "pair"] if depth > 1 else []))
    if kind == "atom":
        return AtomVal(rng.choice(atoms))
    if kind == "unit":
        return UnitVal()
    if kind == "nat":
        return NatVal(rng.randrange(10))
    if kind == "seq":
        size = rng.randrange(4)
        entries = {rng.randrange(12): rng.choice(list(atoms)) for _ in range(size)}
        return SeqVal(SeqFun.of(entries))
    if kind == "cond":
        shape = rng.choice([CondShape.ABAR, CondShape.SUBSET])
        return CondSetVal(CondSet(rng.choice(atoms), rng.choice([TRUE, FALSE]), shape))
    if kind == "inl":
        return InlVal(random_value(rng, atoms, depth - 1))
    if kind == "inr":
        return InrVal(random_value(rng, atoms, depth - 1))
    return PairVal(random_value(rng, atoms, depth - 1), random_value(rng, atoms, depth - 1))


def random_subset(rng: random.Random, atoms: Sequence[Atom]) -> FrozenSet[Atom]:
    return frozenset(a for a in atoms if rng.random() < 0.5)


class SuiteRunner:
    """Runs the named property suites against the support calculus"""

    def __init__(
        self, seed: Optional[int] = None, builder: Optional[CounterexampleBuilder] = None
    ):
        self.seed = get_settings().suite_seed if seed is None else seed
        self.builder = builder or get_counterexample_builder()
        self.calculus = self.builder.calculus
        self._suites: Dict[str, Callable[[random.Random], Iterator[Case]]] = {
            "group-laws": self._group_laws,
            "decomposition": self._decomposition,
            "intersection": self._intersection,
            "least-support": self._least_support,
            "nocc": self._nocc,
            "lset": self._lset,
            "nointer": self._nointer,
            "monotonicity": self._monotonicity,
            "roundtrip": self._roundtrip,
        }

    def names(self) -> List[str]:
        return list(self._suites)

    def run(self, name: str) -> List[SuiteResult]:
        if name == "all":
            return [self.run_one(n) for n in self._suites]
        return [self.run_one(name)]

    def run_one(self, name: str) -> SuiteResult:
        if name not in self._suites:
            raise ValueError(f"Unknown suite '{name}' (known: {', '.join(self.names())}, all)")
        rng = random.Random(f"{self.seed}:{name}")
        start = time.perf_counter()
        cases = failures = 0
        first_failure: Optional[str] = None
        for case in self._suites[name](rng):
            cases += 1
            problem = case()
            if problem is not None:
                failures += 1
                first_failure = first_failure or problem
        result = SuiteResult(
            name=name,
            cases=cases,
            failures=failures,
            first_failure=first_failure,
            seconds=round(time.perf_counter() - start, 3),
        )
        if result.passed:
            logger.success(f"Suite {name}: {cases} cases passed")
        else:
            logger.error(f"Suite {name}: {failures}/{cases} failed, first: {first_failure}")
        return result

    # suites

    def _group_laws(self, rng: random.Random) -> Iterator[Case]:
        for _ in range(1000):
            p, q, r = (random_perm(rng, ATOMS_8) for _ in range(3))

            def case(p: FinPerm = p, q: FinPerm = q, r: FinPerm = r) -> Optional[str]:
                if compose(compose(p, q), r) != compose(p, compose(q, r)):
                    return f"associativity fails for {p}, {q}, {r}"
                if compose(p, identity()) != p or compose(identity(), p) != p:
                    return f"unit law fails for {p}"
                e = identity()
                if compose(p, inverse(p)) != e or compose(inverse(p), p) != e:
                    return f"inverse law fails for {p}"
                return None

            yield case

    def _decomposition(self, rng: random.Random) -> Iterator[Case]:
        for _ in range(500):
            p = random_perm(rng, ATOMS_8)

            def case(p: FinPerm = p) -> Optional[str]:
                swaps = decompose(p)
                if compose_swaps(swaps) != p:
                    return f"decompose({p}) does not compose back"
                if any(a not in moved(p) or b not in moved(p) for a, b in swaps):
                    return f"decompose({p}) uses a fixed atom"
                return None

            yield case

        for a, b, c in permutations(ATOMS_6, 3):

            def triple(a: Atom = a, b: Atom = b, c: Atom = c) -> Optional[str]:
                if compose_swaps(conjugation_split(a, b, c)) != transposition(a, b):
                    return f"({a} {b}) != ({b} {c})({a} {c})({b} {c})"
                return None

            yield triple

    def _intersection(self, rng: random.Random) -> Iterator[Case]:
        for _ in range(300):
            v = random_value(rng, UNIVERSE_5)
            ambient = sorted(ambient_support(v))
            least = self.calculus.least_support(v, 0).atoms
            first = least | random_subset(rng, ambient)
            second = least | random_subset(rng, ambient)

            def case(
                v: NomValue = v,
                first: FrozenSet[Atom] = first,
                second: FrozenSet[Atom] = second,
            ) -> Optional[str]:
                for s in (first, second):
                    if self.calculus.is_support(v, s, 0).verdict is not Verdict.VERIFIED:
                        return f"{sorted(s)} was expected to support {v}"
                common, report = self.calculus.intersect_supports(v, first, second, 0)
                if report.verdict is not Verdict.VERIFIED:
                    return f"{sorted(common)} does not support {v}"
                return None

            yield case

    def _least_support(self, rng: random.Random) -> Iterator[Case]:
        for _ in range(500):
            v = random_value(rng, VALUE_ATOMS)

            def case(v: NomValue = v) -> Optional[str]:
                least = self.calculus.least_support(v, 0)
                brute = self.calculus.brute_force_least_support(v, UNIVERSE_5)
                if least.kind is not LeastSupportKind.EXACT or least.atoms != brute:
                    return (
                        f"least support of {v}: {least.summary()} "
                        f"vs brute force {sorted(brute)}"
                    )
                return None

            yield case

    def _decidable_specs(self, rng: random.Random) -> List[SeqSpec]:
        specs = [SeqSpec(kind=SeqSpecKind.ZEROS), SeqSpec(kind=SeqSpecKind.ONE_AT)]
        for _ in range(200):
            positions = frozenset(n for n in range(21) if rng.random() < 0.1)
            specs.append(SeqSpec(kind=SeqSpecKind.ONE_AT, positions=positions))
        return specs

    def _nocc(self, rng: random.Random) -> Iterator[Case]:
        a = Atom(0)
        for spec in self._decidable_specs(rng):

            def case(spec: SeqSpec = spec) -> Optional[str]:
                report = self.builder.alpha_equivariance(spec, a, 25)
                empty = not spec.positions
                if (report.verdict is Verdict.VERIFIED) != empty:
                    return f"alpha_a for {spec}: {report.summary()}"
                if report.verdict is Verdict.REFUTED:
                    v = self.builder.make_alpha_a(spec, a)
                    replay = eq(act(report.witness or identity(), v), v)
                    if not (isinstance(replay, Decided) and not replay.value):
                        return f"witness {report.witness} does not replay for {spec}"
                return None

            yield case

        late = SeqSpec(kind=SeqSpecKind.REGISTERED, name="late-one")
        hidden = self.builder.registry.hidden_index["late-one"]
        for budget in (hidden - 1, hidden, hidden + 1):

            def semi(budget: int = budget) -> Optional[str]:
                verdict = self.builder.alpha_equivariance(late, a, budget).verdict
                expected = Verdict.REFUTED if budget > hidden else Verdict.UNKNOWN
                if verdict is not expected:
                    return f"late-one at budget {budget}: {verdict.value}"
                return None

            yield semi

    def _lset(self, rng: random.Random) -> Iterator[Case]:
        a = Atom(0)
        for spec in self._decidable_specs(rng):

            def case(spec: SeqSpec = spec) -> Optional[str]:
                least = self.calculus.least_support(self.builder.make_alpha_a(spec, a), 0)
                members = self.builder.l_set(spec, a).decided_members()
                if least.kind is not LeastSupportKind.EXACT or least.atoms != members:
                    return f"least support {least.summary()} vs L-set for {spec}"
                return None

            yield case

        collatz = SeqSpec(kind=SeqSpecKind.REGISTERED, name="collatz-flag")
        for budget in (0, 10, 100):

            def open_case(budget: int = budget) -> Optional[str]:
                alpha = self.builder.make_alpha_a(collatz, a)
                l_set = self.builder.l_set(collatz, a)
                least = self.calculus.least_support(alpha, budget)
                if least.guarded != l_set:
                    return f"least support {least.summary()} is not the L-set at {budget}"
                report = self.calculus.is_subfinite_support(alpha, l_set, budget)
                if report.verdict is not Verdict.VERIFIED:
                    return f"L-set does not support alpha_a at {budget}: {report.summary()}"
                return None

            yield open_case

    def _nointer(self, rng: random.Random) -> Iterator[Case]:
        a = Atom(0)
        undecided = self.builder.registry.all_zeros("collatz-flag")
        expected = {
            TRUE: Verdict.VERIFIED,
            FALSE: Verdict.REFUTED,
            undecided: Verdict.CONDITIONAL,
        }
        for phi, verdict in expected.items():

            def case(phi: Prop = phi, verdict: Verdict = verdict) -> Optional[str]:
                abar = CondSetVal(self.builder.make_abar(phi, a))
                report = self.calculus.is_equivariant(abar, 50)
                if report.verdict is not verdict:
                    return f"ā for {phi}: {report.summary()}"
                if verdict is Verdict.CONDITIONAL and report.condition != phi:
                    return f"ā for {phi} is conditional on {report.condition}"
                _, _, demo = self.builder.make_s1_s2(phi, a, 50)
                if demo.claims[0].outcome is not Outcome.HOLDS:
                    return f"S₁ ∩ S₂ is not empty for {phi}"
                if isinstance(phi, Decided):
                    family = self.builder.make_support_family(phi, a, 50)
                    if any(m.report.verdict is not Verdict.VERIFIED for m in family.members):
                        return f"a member of 𝒮 fails to support ā for {phi}"
                return None

            yield case

    def _monotonicity(self, rng: random.Random) -> Iterator[Case]:
        for _ in range(300):
            v = random_value(rng, UNIVERSE_5)
            ambient = sorted(ambient_support(v))
            smaller = random_subset(rng, ambient)
            larger = smaller | random_subset(rng, ambient)

            def case(
                v: NomValue = v,
                smaller: FrozenSet[Atom] = smaller,
                larger: FrozenSet[Atom] = larger,
            ) -> Optional[str]:
                if self.calculus.is_support(v, smaller, 0).verdict is not Verdict.VERIFIED:
                    return None
                if self.calculus.is_support(v, larger, 0).verdict is not Verdict.VERIFIED:
                    return f"{sorted(smaller)} supports {v} but {sorted(larger)} does not"
                return None

            yield case

    def _roundtrip(self, rng: random.Random) -> Iterator[Case]:
        for _ in range(200):
            p = random_perm(rng, ATOMS_8)
            v = random_value(rng, UNIVERSE_5)

            def case(p: FinPerm = p, v: NomValue = v) -> Optional[str]:
                if parse_perm(format_perm(p)) != p:
                    return f"{p} does not reparse"
                if parse_value(format_value(v)) != v:
                    return f"{v} does not reparse"
                return None

            yield case

