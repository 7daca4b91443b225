from typing import Callable, Dict, List, Optional

from loguru import logger

from ..exceptions import UnknownOracleError
from ..nomset import BinSeqOracle
from ..props import Oracle

LATE_ONE_INDEX = 1000
COLLATZ_STEP_CAP = 10_000


def late_one(n: int) -> int:
    return 1 if n == LATE_ONE_INDEX else 0


def collatz_flag(n: int) -> int:
    """1 iff the trajectory of n+1 does not reach 1 within the step cap"""
    value = n + 1
    for _ in range(COLLATZ_STEP_CAP):
        if value == 1:
            return 0
        value = value // 2 if value % 2 == 0 else 3 * value + 1
    return 1


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def goldbach_flag(n: int) -> int:
    """1 iff the even number 2n+4 is not a sum of two primes"""
    even = 2 * n + 4
    for p in range(2, even // 2 + 1):
        if _is_prime(p) and _is_prime(even - p):
            return 0
    return 1


class OracleRegistry:
    """Named binary-sequence oracles; immutable once the defaults are loaded"""

    def __init__(self) -> None:
        self._oracles: Dict[str, BinSeqOracle] = {}
        self.hidden_index: Dict[str, int] = {}

    def register(
        self, name: str, query: Callable[[int], int], hidden_index: Optional[int] = None
    ) -> BinSeqOracle:
        if name in self._oracles:
            raise ValueError(f"Oracle '{name}' is already registered")
        oracle = BinSeqOracle(query, name)
        self._oracles[name] = oracle
        if hidden_index is not None:
            self.hidden_index[name] = hidden_index
        logger.debug(f"Registered oracle: {name}")
        return oracle

    def get(self, name: str) -> BinSeqOracle:
        try:
            return self._oracles[name]
        except KeyError:
            known = ", ".join(self.names())
            raise UnknownOracleError(f"Unknown oracle '{name}' (known: {known})")

    def names(self) -> List[str]:
        return sorted(self._oracles)

    def all_zeros(self, name: str) -> Oracle:
        """The proposition "∀n α(n) = 0" for a registered α, one object per name"""
        return self.get(name).all_zeros()


def build_default_registry() -> OracleRegistry:
    registry = OracleRegistry()
    registry.register("late-one", late_one, hidden_index=LATE_ONE_INDEX)
    registry.register("collatz-flag", collatz_flag)
    registry.register("goldbach-flag", goldbach_flag)
    return registry


# Global registry instance
oracle_registry: Optional[OracleRegistry] = None


def get_oracle_registry() -> OracleRegistry:
    """Get the global oracle registry"""
    global oracle_registry
    if oracle_registry is None:
        oracle_registry = build_default_registry()
    return oracle_registry
