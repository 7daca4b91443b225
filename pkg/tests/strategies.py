from typing import List

from hypothesis import strategies as st

from nomsupport.atoms import Atom
from nomsupport.nomset import (
    AtomVal,
    CondSet,
    CondSetVal,
    CondShape,
    InlVal,
    InrVal,
    NatVal,
    PairVal,
    SeqFun,
    SeqVal,
    UnitVal,
)
from nomsupport.perm import FinPerm
from nomsupport.props import FALSE, TRUE


def atom_pool(size: int) -> List[Atom]:
    return [Atom(i) for i in range(size)]


def atoms(size: int = 8) -> st.SearchStrategy:
    return st.integers(min_value=0, max_value=size - 1).map(Atom)


def perms(size: int = 8) -> st.SearchStrategy:
    pool = atom_pool(size)
    return st.permutations(pool).map(lambda image: FinPerm(dict(zip(pool, image))))


def atom_sets(size: int = 5) -> st.SearchStrategy:
    return st.frozensets(atoms(size), max_size=size)


def values(size: int = 4, depth: int = 3) -> st.SearchStrategy:
    """Oracle-free values over the first `size` atoms"""
    pool = atoms(size)
    leaves = st.one_of(
        pool.map(AtomVal),
        st.just(UnitVal()),
        st.integers(min_value=0, max_value=9).map(NatVal),
        st.dictionaries(st.integers(min_value=0, max_value=11), pool, max_size=3).map(
            lambda entries: SeqVal(SeqFun.of(entries))
        ),
        st.builds(
            lambda a, guard, shape: CondSetVal(CondSet(a, guard, shape)),
            pool,
            st.sampled_from([TRUE, FALSE]),
            st.sampled_from(list(CondShape)),
        ),
    )
    if depth <= 1:
        return leaves
    inner = values(size, depth - 1)
    return st.one_of(
        leaves,
        inner.map(InlVal),
        inner.map(InrVal),
        st.builds(PairVal, inner, inner),
    )
