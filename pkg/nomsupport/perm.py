"""Finite permutations of atoms.

Composition convention, used everywhere in the package:
``compose(pi, sigma)(a) == pi(sigma(a))``.
"""
from functools import reduce
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from .atoms import Atom
from .exceptions import DegenerateTripleError, InvalidPermutationError

Swap = Tuple[Atom, Atom]


class FinPerm:
    """A permutation of the atoms fixing all but finitely many.

    Stored as a fixed-point-free map, so structural and extensional equality agree.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Optional[Mapping[Atom, Atom]] = None):
        graph = {a: b for a, b in (mapping or {}).items() if a != b}
        if set(graph) != set(graph.values()) or len(set(graph.values())) != len(graph):
            raise InvalidPermutationError(
                f"Mapping {_format_mapping(graph)} is not a bijection of its own domain"
            )
        self._map: Dict[Atom, Atom] = graph
        self._hash = hash(frozenset(graph.items()))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[Atom]]) -> "FinPerm":
        """Product of cycles, the leftmost cycle applied first."""
        result = identity()
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                cycle_text = " ".join(map(str, cycle))
                raise InvalidPermutationError(f"Cycle ({cycle_text}) repeats an atom")
            graph = {x: y for x, y in zip(cycle, list(cycle[1:]) + list(cycle[:1]))}
            result = compose(cls(graph), result)
        return result

    @property
    def mapping(self) -> Mapping[Atom, Atom]:
        """The moved atoms and their images"""
        return dict(self._map)

    def __call__(self, a: Atom) -> Atom:
        return self._map.get(a, a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinPerm):
            return NotImplemented
        return self._map == other._map

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._map)

    def __iter__(self) -> Iterator[Tuple[Atom, Atom]]:
        return iter(sorted(self._map.items()))

    def cycles(self) -> List[Tuple[Atom, ...]]:
        """Disjoint cycles, each starting at its least atom, ordered by that atom."""
        seen = set()
        result = []
        for start in sorted(self._map):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self._map[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self._map[nxt]
            result.append(tuple(cycle))
        return result

    def __str__(self) -> str:
        if not self._map:
            return "()"
        return "".join("(" + " ".join(str(a) for a in c) + ")" for c in self.cycles())

    def __repr__(self) -> str:
        return f"FinPerm({self})"


def _format_mapping(graph: Mapping[Atom, Atom]) -> str:
    return "{" + ", ".join(f"{a}->{b}" for a, b in sorted(graph.items())) + "}"


_IDENTITY = FinPerm()


def identity() -> FinPerm:
    """The identity permutation"""
    return _IDENTITY


def transposition(a: Atom, b: Atom) -> FinPerm:
    """The swap (a b); the identity when a and b coincide"""
    if a == b:
        return _IDENTITY
    return FinPerm({a: b, b: a})


def apply(pi: FinPerm, a: Atom) -> Atom:
    """Image of a under pi"""
    return pi(a)


def compose(pi: FinPerm, sigma: FinPerm) -> FinPerm:
    """pi ∘ sigma: sigma first, then pi"""
    if not sigma:
        return pi
    if not pi:
        return sigma
    support = set(pi._map) | set(sigma._map)
    return FinPerm({a: pi(sigma(a)) for a in support})


def compose_all(perms: Iterable[FinPerm]) -> FinPerm:
    """p1 ∘ p2 ∘ ... ∘ pn; the empty product is the identity."""
    return reduce(compose, perms, _IDENTITY)


def compose_swaps(swaps: Iterable[Swap]) -> FinPerm:
    """Product of transpositions, in the same order as `compose_all`"""
    return compose_all(transposition(a, b) for a, b in swaps)


def inverse(pi: FinPerm) -> FinPerm:
    """The permutation undoing pi"""
    return FinPerm({b: a for a, b in pi._map.items()})


def moved(pi: FinPerm) -> FrozenSet[Atom]:
    """Atoms pi does not fix"""
    return frozenset(pi._map)


def fixes_pointwise(pi: FinPerm, atoms: Iterable[Atom]) -> bool:
    """True when pi fixes each of the atoms"""
    return all(pi(a) == a for a in atoms)


def decompose(pi: FinPerm) -> List[Swap]:
    """Transpositions whose left-to-right product is `pi`.

    Each cycle (c0 c1 ... ck) becomes (c0 ck) ∘ ... ∘ (c0 c1), so every atom used
    is moved by `pi`.
    """
    swaps: List[Swap] = []
    for cycle in pi.cycles():
        head = cycle[0]
        swaps.extend((head, c) for c in reversed(cycle[1:]))
    return swaps


def conjugation_split(a: Atom, b: Atom, c: Atom) -> List[Swap]:
    """(a b) = (b c) ∘ (a c) ∘ (b c) for pairwise distinct a, b, c."""
    if len({a, b, c}) != 3:
        raise DegenerateTripleError(f"Atoms {a}, {b}, {c} are not pairwise distinct")
    return [(b, c), (a, c), (b, c)]
