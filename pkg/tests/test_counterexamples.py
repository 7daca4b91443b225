import pytest
from hypothesis import given
from hypothesis import strategies as st

from nomsupport.atoms import Atom
from nomsupport.models import (
    ExitStatus,
    LeastSupportKind,
    Outcome,
    SeqSpec,
    SeqSpecKind,
    Verdict,
)
from nomsupport.nomset import (
    AtomVal,
    CondSet,
    CondSetVal,
    CondShape,
    OracleTail,
    PairVal,
    SeqFun,
    SeqVal,
    act,
    ambient_support,
    eq,
)
from nomsupport.perm import transposition
from nomsupport.props import FALSE, TRUE, Decided, Not
from nomsupport.services.oracle_registry import LATE_ONE_INDEX

a0, a1 = Atom(0), Atom(1)

ZEROS = SeqSpec(kind=SeqSpecKind.ZEROS)


def one_at(*positions: int) -> SeqSpec:
    return SeqSpec(kind=SeqSpecKind.ONE_AT, positions=frozenset(positions))


def registered(name: str) -> SeqSpec:
    return SeqSpec(kind=SeqSpecKind.REGISTERED, name=name)


one_at_specs = st.frozensets(st.integers(min_value=0, max_value=20), max_size=6).map(
    lambda positions: SeqSpec(kind=SeqSpecKind.ONE_AT, positions=positions)
)


class TestAlphaA:
    def test_shapes(self, builder, registry):
        assert builder.make_alpha_a(ZEROS, a0) == SeqVal()
        assert builder.make_alpha_a(one_at(5), a0) == SeqVal(SeqFun.of({5: a0}))
        alpha = builder.make_alpha_a(registered("collatz-flag"), a0)
        assert alpha == SeqVal(SeqFun.of(tail=OracleTail(registry.get("collatz-flag"), a0)))
        assert ambient_support(alpha) == {a0}

    def test_equivariance_examples(self, builder):
        assert builder.alpha_equivariance(ZEROS, a0, 0).verdict is Verdict.VERIFIED
        report = builder.alpha_equivariance(one_at(5), a0, 6)
        assert report.verdict is Verdict.REFUTED
        assert report.witness == transposition(a0, a1)
        assert "position 5" in report.detail

    def test_least_flagged_position_is_reported(self, builder):
        report = builder.alpha_equivariance(one_at(9, 4, 17), a0, 0)
        assert report.detail.startswith("position 4")

    @pytest.mark.parametrize("budget", [LATE_ONE_INDEX - 1, LATE_ONE_INDEX])
    def test_late_one_unknown_below_its_index(self, builder, budget):
        report = builder.alpha_equivariance(registered("late-one"), a0, budget)
        assert report.verdict is Verdict.UNKNOWN
        assert report.exit_status is ExitStatus.UNDECIDED

    @pytest.mark.parametrize("budget", [LATE_ONE_INDEX + 1, 2 * LATE_ONE_INDEX])
    def test_late_one_refuted_past_its_index(self, builder, budget):
        report = builder.alpha_equivariance(registered("late-one"), a0, budget)
        assert report.verdict is Verdict.REFUTED

    def test_open_oracle_never_verified(self, builder):
        for budget in (0, 10, 200):
            report = builder.alpha_equivariance(registered("collatz-flag"), a0, budget)
            assert report.verdict is Verdict.UNKNOWN

    @given(one_at_specs)
    def test_equivariant_iff_no_ones(self, builder, spec):
        report = builder.alpha_equivariance(spec, a0, 25)
        assert (report.verdict is Verdict.VERIFIED) == (not spec.positions)
        if report.verdict is Verdict.REFUTED:
            v = builder.make_alpha_a(spec, a0)
            assert eq(act(report.witness, v), v) == FALSE


class TestLSet:
    def test_examples(self, builder, registry):
        assert builder.l_set(ZEROS, a0).decided_members() == frozenset()
        assert builder.l_set(one_at(2), a0).decided_members() == {a0}
        open_set = builder.l_set(registered("collatz-flag"), a0)
        assert open_set.membership == Not(registry.all_zeros("collatz-flag"))
        assert open_set.decided_members() is None

    @given(one_at_specs)
    def test_agrees_with_least_support(self, builder, spec):
        least = builder.calculus.least_support(builder.make_alpha_a(spec, a0), 0)
        assert least.kind is LeastSupportKind.EXACT
        assert least.atoms == builder.l_set(spec, a0).decided_members()


class TestAbar:
    def test_three_way_equivariance(self, builder, registry):
        collatz = registry.all_zeros("collatz-flag")
        full = CondSetVal(builder.make_abar(TRUE, a0))
        assert builder.calculus.is_equivariant(full, 50).verdict is Verdict.VERIFIED
        cofinite = builder.calculus.is_equivariant(CondSetVal(builder.make_abar(FALSE, a0)), 50)
        assert cofinite.verdict is Verdict.REFUTED
        assert cofinite.witness == transposition(a0, a1)
        open_report = builder.calculus.is_equivariant(CondSetVal(builder.make_abar(collatz, a0)), 50)
        assert open_report.verdict is Verdict.CONDITIONAL
        assert open_report.condition is collatz

    def test_demo(self, builder, registry):
        demo = builder.abar_demo(registry.all_zeros("collatz-flag"), a0, 30)
        assert [c.outcome for c in demo.claims] == [Outcome.CONDITIONAL, Outcome.CONDITIONAL_SET]
        assert demo.exit_status is ExitStatus.UNDECIDED


class TestSupportFamily:
    def test_phi_true(self, builder):
        family = builder.make_support_family(TRUE, a0, 10)
        assert [m.support for m in family.members] == [{a0}, frozenset()]
        assert all(m.report.verdict is Verdict.VERIFIED for m in family.members)
        assert family.intersection.decided_members() == frozenset()
        assert family.demo.exit_status is ExitStatus.OK

    def test_phi_false(self, builder):
        family = builder.make_support_family(FALSE, a0, 10)
        assert [m.support for m in family.members] == [{a0}]
        assert family.members[0].report.verdict is Verdict.VERIFIED
        assert family.intersection.decided_members() == {a0}
        assert family.demo.claims[-1].outcome is Outcome.VERIFIED

    def test_phi_open(self, builder, registry):
        phi = registry.all_zeros("collatz-flag")
        family = builder.make_support_family(phi, a0, 10)
        assert len(family.members) == 2
        assert family.members[1].guard is phi
        assert family.members[1].report.verdict is Verdict.CONDITIONAL
        assert family.intersection == CondSet(a0, Not(phi), CondShape.SUBSET)
        assert family.demo.exit_status is ExitStatus.UNDECIDED


class TestS1S2:
    @pytest.mark.parametrize("psi_name", ["true", "false", "oracle"])
    def test_intersection_always_empty(self, builder, registry, psi_name):
        psi = {"true": TRUE, "false": FALSE, "oracle": registry.all_zeros("goldbach-flag")}[
            psi_name
        ]
        s1, s2, demo = builder.make_s1_s2(psi, a0, 10)
        assert s1.shape is CondShape.SUBSET and s2.shape is CondShape.SUBSET
        assert demo.claims[0].statement == "S₁ ∩ S₂ = ∅"
        assert demo.claims[0].outcome is Outcome.HOLDS

    def test_decided_psi(self, builder):
        s1, s2, demo = builder.make_s1_s2(TRUE, a0, 10)
        assert s1.decided_members() == {a0}
        assert s2.decided_members() == frozenset()
        assert demo.exit_status is ExitStatus.OK
        s1, s2, _ = builder.make_s1_s2(FALSE, a0, 10)
        assert s1.decided_members() == frozenset()
        assert s2.decided_members() == {a0}

    def test_open_psi(self, builder, registry):
        psi = registry.all_zeros("goldbach-flag")
        _, _, demo = builder.make_s1_s2(psi, a0, 10)
        outcomes = [c.outcome for c in demo.claims]
        assert outcomes == [
            Outcome.HOLDS,
            Outcome.VERIFIED,
            Outcome.VERIFIED,
            Outcome.CONDITIONAL,
        ]
        assert demo.claims[3].record["condition"] == (
            "(allzero(goldbach-flag) or not allzero(goldbach-flag))"
        )


class TestWlpoDemo:
    def test_rows(self, builder):
        specs = [ZEROS, one_at(0), registered("collatz-flag")]
        demo = builder.wlpo_demo(specs, a0, 100)
        least_rows = demo.claims[0::2]
        assert [c.detail for c in least_rows[:2]] == ["{}", "{a0}"]
        assert least_rows[2].outcome is Outcome.CONDITIONAL_SET
        assert least_rows[0].record["l_set"] == "{x ∈ {a0} | false}"
        assert all(c.outcome is Outcome.VERIFIED for c in demo.claims[1::2])
        assert demo.exit_status is ExitStatus.UNDECIDED
        assert "all zeros" in demo.narrative

    def test_oracle_least_support_is_the_l_set(self, builder, registry):
        spec = registered("collatz-flag")
        least = builder.calculus.least_support(builder.make_alpha_a(spec, a0), 100)
        assert least.guarded == builder.l_set(spec, a0)
        demo = builder.wlpo_demo([spec], a0, 100)
        assert demo.claims[0].record["l_set"] in demo.claims[0].detail
        assert demo.claims[1].statement.startswith("L = {x ∈ {a0} | not allzero(collatz-flag)}")

    def test_element_replays_each_claim(self, builder):
        specs = [ZEROS, one_at(3, 4), registered("late-one")]
        demo = builder.wlpo_demo(specs, a0, 10)
        first, second, third = (builder.make_alpha_a(spec, a0) for spec in specs)
        assert demo.element == PairVal(first, PairVal(second, third))
        for i, alpha in enumerate((first, second, third)):
            least = builder.calculus.least_support(alpha, 10)
            assert demo.claims[2 * i].detail == least.summary()

    def test_single_spec_element(self, builder):
        demo = builder.wlpo_demo([registered("collatz-flag")], a0, 10)
        assert demo.record()["element"] == "seq {} oracle(collatz-flag, a0)"

    def test_decidable_only_is_ok(self, builder):
        demo = builder.wlpo_demo([ZEROS, one_at(3, 4)], a0, 10)
        assert demo.exit_status is ExitStatus.OK
        record = demo.record()
        assert record["element"] == "pair (seq {} star) (seq {3:a0, 4:a0} star)"
        assert len(record["claims"]) == 4


def test_all_zeros(builder, registry):
    assert builder.all_zeros(ZEROS) == TRUE
    assert builder.all_zeros(one_at()) == TRUE
    assert builder.all_zeros(one_at(3)) == Decided(False)
    assert builder.all_zeros(registered("late-one")) is registry.all_zeros("late-one")


def test_intersection_demo(builder):
    v = PairVal(AtomVal(a0), SeqVal(SeqFun.of({2: a1})))
    demo = builder.intersection_demo(v, {a0, a1, Atom(2)}, {a0, a1, Atom(3)}, 0)
    assert demo.claims[-1].statement.startswith("{a0, a1} = A ∩ B")
    assert demo.exit_status is ExitStatus.OK
    refuted = builder.intersection_demo(v, {a0}, {a0, a1}, 0)
    assert len(refuted.claims) == 2
    assert refuted.exit_status is ExitStatus.REFUTED
