"""
Polycyclic presentation model.

A presentation fixes the prime p, the generator order exponents and the
class-2 commutator table. Commutators are stored as [x_j, x_i] with j > i
(0-based indices); the printed orientation [x_i, x_j] with i < j used in
files and constructors is converted in `from_printed`.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

from ..utils.validation import PresentationError, PresentationValidator

Element = Tuple[int, ...]
Pair = Tuple[int, int]


@dataclass(frozen=True)
class PcPresentation:
    """
    Class-2 polycyclic presentation with trivial power relations.

    Attributes:
        p: The prime
        exponents: e_1..e_d, generator x_i has order p^{e_i}
        relations: Sorted ((j, i), value) entries with j > i for the
            nontrivial commutators [x_j, x_i]
    """

    p: int
    exponents: Tuple[int, ...]
    relations: Tuple[Tuple[Pair, Element], ...] = ()
    _table: Dict[Pair, Element] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        PresentationValidator.validate_prime(self.p)
        PresentationValidator.validate_orders(self.exponents)
        table: Dict[Pair, Element] = {}
        for (j, i), value in self.relations:
            if not (0 <= i < j < self.d):
                raise PresentationError(
                    f"stored commutator key must satisfy 0 <= i < j < d, got {(j, i)}"
                )
            if (j, i) in table:
                raise PresentationError(f"duplicate commutator entry {(j, i)}")
            PresentationValidator.validate_vector(self.p, self.exponents, value)
            if any(value):
                table[(j, i)] = tuple(value)
        object.__setattr__(self, "relations", tuple(sorted(table.items())))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_commutators(
        cls, p: int, exponents: Tuple[int, ...], commutators: Mapping[Pair, Element]
    ) -> "PcPresentation":
        """Build from stored-orientation values [x_j, x_i], j > i."""
        return cls(p, tuple(exponents), tuple(sorted(commutators.items())))

    @classmethod
    def from_printed(
        cls, p: int, exponents: Tuple[int, ...], printed: Mapping[Pair, Element]
    ) -> "PcPresentation":
        """
        Build from printed values [x_i, x_j] = v with 1-based i < j.

        The stored value [x_j, x_i] is the inverse of v; commutator values
        are central, so inversion is coordinatewise negation.
        """
        moduli = [p**e for e in exponents]
        stored: Dict[Pair, Element] = {}
        for (i, j), value in printed.items():
            PresentationValidator.validate_pair(i, j, len(exponents))
            stored[(j - 1, i - 1)] = tuple(
                (-v) % m for v, m in zip(value, moduli)
            )
        return cls.from_commutators(p, tuple(exponents), stored)

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def moduli(self) -> Tuple[int, ...]:
        return tuple(self.p**e for e in self.exponents)

    @property
    def order_exponent(self) -> int:
        """log_p |G|."""
        return sum(self.exponents)

    @property
    def max_exponent(self) -> int:
        return max(self.exponents)

    @property
    def is_abelian(self) -> bool:
        return not self._table

    def identity(self) -> Element:
        return (0,) * self.d

    def generator(self, i: int) -> Element:
        """The exponent vector of x_{i+1}."""
        return tuple(int(k == i) for k in range(self.d))

    def comm(self, j: int, i: int) -> Element:
        """Stored value of [x_j, x_i] for j > i; identity when absent."""
        return self._table.get((j, i), self.identity())

    def commutator_of_generators(self, k: int, j: int) -> Element:
        """[x_k, x_j] for any k, j, using antisymmetry for k < j."""
        if k == j:
            return self.identity()
        if k > j:
            return self.comm(k, j)
        return tuple((-v) % m for v, m in zip(self.comm(j, k), self.moduli))

    def printed(self, i: int, j: int) -> Element:
        """[x_i, x_j] for 1-based i < j, as written in presentation files."""
        return self.commutator_of_generators(i - 1, j - 1)

    def nontrivial_pairs(self) -> List[Pair]:
        return [pair for pair, _ in self.relations]

    def replace_commutator(self, j: int, i: int, value: Element) -> "PcPresentation":
        """Copy with stored [x_j, x_i] set to value (no consistency check)."""
        table = dict(self._table)
        table[(j, i)] = tuple(value)
        return PcPresentation.from_commutators(self.p, self.exponents, table)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "orders": list(self.exponents),
            "commutators": [
                {"i": i + 1, "j": j + 1, "value": list(self.printed(i + 1, j + 1))}
                for (j, i), _ in self.relations
            ],
        }

    def __repr__(self) -> str:
        return (
            f"<PcPresentation(p={self.p}, orders={self.exponents}, "
            f"relations={len(self.relations)})>"
        )


@dataclass(frozen=True)
class ConsistencyFailure:
    """A failed consistency check with the generator indices that witness it."""

    check: str
    witness: Tuple[int, ...]
    detail: str = ""


@dataclass
class ConsistencyReport:
    failures: List[ConsistencyFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def checks_failed(self) -> List[str]:
        return sorted({failure.check for failure in self.failures})
