import pytest
from hypothesis import given

from nomsupport.atoms import Atom
from nomsupport.exceptions import ShapeMismatchError
from nomsupport.models import Verdict
from nomsupport.nomset import (
    STAR,
    AtomVal,
    BinSeqOracle,
    CondSet,
    CondSetVal,
    CondShape,
    InlVal,
    InrVal,
    NatVal,
    OracleTail,
    PairVal,
    SeqAgreement,
    SeqFun,
    SeqVal,
    UnitVal,
    act,
    ambient_support,
    assume_in_value,
    eq,
    is_oracle_free,
    tail_atoms,
)
from nomsupport.perm import compose, identity, transposition
from nomsupport.props import FALSE, TRUE, Decided, Truth, negate

from .strategies import perms, values

a0, a1, a2 = Atom(0), Atom(1), Atom(2)


@pytest.fixture
def late_oracle(registry):
    return registry.get("late-one")


class TestAction:
    def test_atoms_move(self):
        assert act(transposition(a0, a1), AtomVal(a0)) == AtomVal(a1)

    def test_discrete_values_are_fixed(self):
        assert act(transposition(a0, a1), NatVal(7)) == NatVal(7)
        assert act(transposition(a0, a1), UnitVal()) == UnitVal()

    def test_sequence_conjugation(self):
        seq = SeqVal(SeqFun.of({3: a0}))
        assert act(transposition(a0, a1), seq) == SeqVal(SeqFun.of({3: a1}))

    def test_oracle_tail_moves_its_atom(self, late_oracle):
        seq = SeqVal(SeqFun.of(tail=OracleTail(late_oracle, a0)))
        moved = act(transposition(a0, a2), seq)
        assert moved == SeqVal(SeqFun.of(tail=OracleTail(late_oracle, a2)))

    def test_condset_moves_its_base(self):
        abar = CondSetVal(CondSet(a0, FALSE, CondShape.ABAR))
        assert act(transposition(a0, a1), abar) == CondSetVal(CondSet(a1, FALSE, CondShape.ABAR))

    @given(values())
    def test_identity_acts_trivially(self, v):
        assert act(identity(), v) == v

    @given(perms(size=5), perms(size=5), values())
    def test_action_respects_composition(self, p, q, v):
        assert act(compose(p, q), v) == act(p, act(q, v))


class TestSeqFun:
    def test_star_entries_are_normalised_away(self):
        assert SeqFun.of({2: None, 4: a0}) == SeqFun.of({4: a0})

    def test_at_reads_exceptions_then_tail(self, late_oracle):
        seq = SeqFun.of({1: a2}, OracleTail(late_oracle, a0))
        assert seq.at(1) == a2
        assert seq.at(0) is None
        assert seq.at(1000) == a0

    def test_negative_positions_rejected(self):
        with pytest.raises(ValueError):
            SeqFun.of({-1: a0})

    def test_rendering(self):
        assert str(SeqVal(SeqFun.of({5: a2, 3: a0}))) == "seq {3:a0, 5:a2} star"
        assert str(SeqVal()) == "seq {} star"


class TestEquality:
    def test_reflexive_atoms(self):
        assert eq(AtomVal(a0), AtomVal(a0)) == TRUE

    def test_sequences_differing_at_a_position(self):
        p = eq(SeqVal(), SeqVal(SeqFun.of({2: a0})))
        assert isinstance(p, Decided) and not p.value
        assert "position 2" in p.reason

    def test_coproduct_injections_differ(self):
        assert eq(InlVal(UnitVal()), InrVal(UnitVal())) == FALSE

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            eq(AtomVal(a0), NatVal(0))

    def test_pairs(self):
        assert eq(PairVal(AtomVal(a0), NatVal(1)), PairVal(AtomVal(a0), NatVal(1))) == TRUE
        assert eq(PairVal(AtomVal(a0), NatVal(1)), PairVal(AtomVal(a1), NatVal(1))) == FALSE

    @given(perms(size=5))
    def test_full_abar_is_fixed_by_everything(self, pi):
        abar = CondSetVal(CondSet(a0, TRUE, CondShape.ABAR))
        assert eq(abar, act(pi, abar)) == TRUE

    def test_abar_with_oracle_guard(self, registry):
        phi = registry.all_zeros("collatz-flag")
        abar = CondSetVal(CondSet(a0, phi, CondShape.ABAR))
        assert eq(act(transposition(a0, a1), abar), abar) is phi

    def test_subsets_with_different_bases(self, registry):
        phi = registry.all_zeros("collatz-flag")
        left = CondSetVal(CondSet(a0, phi, CondShape.SUBSET))
        right = CondSetVal(CondSet(a1, phi, CondShape.SUBSET))
        assert eq(left, right) == negate(phi)

    def test_same_oracle_tails_reduce_to_all_zeros(self, late_oracle):
        seq = SeqVal(SeqFun.of(tail=OracleTail(late_oracle, a0)))
        p = eq(act(transposition(a0, a1), seq), seq)
        assert p is late_oracle.all_zeros()
        assert not p.scans
        assert p.evaluate(1000).truth is Truth.UNKNOWN
        refuted = p.evaluate(1001)
        assert refuted.truth is Truth.FALSE
        assert refuted.evidence == "late-one(1000) = 1"

    def test_shared_listed_positions_are_skipped(self):
        four = BinSeqOracle(lambda n: 1 if n == 4 else 0, "four")
        left = SeqVal(SeqFun.of({4: None}, OracleTail(four, a0)))
        right = SeqVal(SeqFun.of({4: None}, OracleTail(four, a1)))
        p = eq(left, right)
        assert p is four.all_zeros([4])
        assert p.describe() == "allzero(four off {4})"
        answer = p.evaluate(10)
        assert answer.truth is Truth.UNKNOWN
        assert answer.queries == 10

    def test_different_listed_positions_still_scan(self, late_oracle):
        left = SeqVal(SeqFun.of({2: None}, OracleTail(late_oracle, a0)))
        right = SeqVal(SeqFun.of(tail=OracleTail(late_oracle, a1)))
        p = eq(left, right)
        assert isinstance(p, SeqAgreement)
        assert p.scans
        assert p.evaluate(1001).evidence == "position 1000: a0 vs a1"

    def test_same_oracle_tail_settles_after_exceptions(self, late_oracle):
        tail = OracleTail(late_oracle, a0)
        p = eq(SeqVal(SeqFun.of({2: a1}, tail)), SeqVal(SeqFun.of({3: a1}, tail)))
        assert p.evaluate(10).truth is Truth.FALSE
        same = SeqAgreement(SeqFun.of({2: None}, tail), SeqFun.of({}, tail))
        assert same.evaluate(10).truth is Truth.TRUE


class TestAmbientSupport:
    def test_examples(self, late_oracle):
        assert ambient_support(NatVal(3)) == frozenset()
        alpha = SeqVal(SeqFun.of(tail=OracleTail(late_oracle, a0)))
        assert ambient_support(alpha) == {a0}
        assert ambient_support(PairVal(AtomVal(a0), AtomVal(a2))) == {a0, a2}

    def test_oracle_freedom(self, late_oracle, registry):
        assert is_oracle_free(PairVal(SeqVal(), CondSetVal(CondSet(a0, TRUE))))
        assert not is_oracle_free(InlVal(SeqVal(SeqFun.of(tail=OracleTail(late_oracle, a0)))))
        guarded = CondSetVal(CondSet(a0, registry.all_zeros("late-one")))
        assert not is_oracle_free(guarded)


def test_assume_in_value_rewrites_guards(registry):
    phi = registry.all_zeros("collatz-flag")
    v = PairVal(CondSetVal(CondSet(a0, phi, CondShape.ABAR)), NatVal(1))
    assumed = assume_in_value(v, phi, True)
    assert assumed == PairVal(CondSetVal(CondSet(a0, TRUE, CondShape.ABAR)), NatVal(1))
    assert assume_in_value(NatVal(1), phi, False) == NatVal(1)
    assert STAR.act(transposition(a0, a1)) is STAR


@given(values(), values(), perms())
def test_equality_is_equivariant(v, w, pi):
    try:
        expected = eq(v, w)
    except ShapeMismatchError:
        with pytest.raises(ShapeMismatchError):
            eq(act(pi, v), act(pi, w))
        return
    assert eq(act(pi, v), act(pi, w)) == expected


@given(values())
def test_ambient_support_is_a_support(calculus, v):
    assert calculus.is_support(v, ambient_support(v), 0).verdict is Verdict.VERIFIED


def test_tail_atoms(late_oracle):
    alpha = SeqVal(SeqFun.of({3: a2}, OracleTail(late_oracle, a0)))
    assert tail_atoms(PairVal(AtomVal(a1), InlVal(alpha))) == {a0}
    assert tail_atoms(SeqVal(SeqFun.of({3: a2}))) == frozenset()
