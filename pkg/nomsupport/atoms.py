"""The set of names: atoms indexed by naturals, with decidable equality."""
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, order=True)
class Atom:
    """A name; two atoms are equal exactly when their indices are."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"Atom index must be a natural number, got {self.index}")

    def __str__(self) -> str:
        return f"a{self.index}"

    def __repr__(self) -> str:
        return f"Atom({self.index})"


def atom(index: int) -> Atom:
    """Get the atom with the given index"""
    return Atom(index)


def atom_eq(a: Atom, b: Atom) -> bool:
    """Decidable equality of atoms"""
    return a.index == b.index


def fresh(avoid: Iterable[Atom]) -> Atom:
    """Least-index atom outside `avoid`; depends only on the set, not its order."""
    taken = {a.index for a in avoid}
    index = 0
    while index in taken:
        index += 1
    return Atom(index)


def format_atoms(atoms: Iterable[Atom]) -> str:
    """Render a set of atoms as {a0, a2}, sorted by index"""
    return "{" + ", ".join(str(a) for a in sorted(set(atoms))) + "}"
