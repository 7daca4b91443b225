import pytest
from hypothesis import given
from hypothesis import strategies as st

from nomsupport.atoms import Atom, atom, atom_eq, format_atoms, fresh

from .strategies import atom_sets


def test_atom_equality():
    assert atom_eq(atom(0), atom(0))
    assert not atom_eq(atom(0), atom(1))
    assert atom_eq(atom(7), atom(7))


def test_atom_rendering():
    assert str(Atom(3)) == "a3"
    assert repr(Atom(3)) == "Atom(3)"


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        Atom(-1)


@pytest.mark.parametrize(
    "avoid, expected",
    [
        ([], 0),
        ([0, 1], 2),
        ([0, 2], 1),
        ([1, 2, 3], 0),
    ],
)
def test_fresh_takes_least_unused_index(avoid, expected):
    assert fresh(Atom(i) for i in avoid) == Atom(expected)


@given(atom_sets(size=8))
def test_fresh_avoids_and_ignores_order(avoid):
    b = fresh(avoid)
    assert b not in avoid
    assert fresh(sorted(avoid, reverse=True)) == b


@given(st.lists(st.integers(min_value=0, max_value=20)))
def test_format_atoms_sorted_without_duplicates(indices):
    text = format_atoms(Atom(i) for i in indices)
    expected = ", ".join(f"a{i}" for i in sorted(set(indices)))
    assert text == "{" + expected + "}"
