"""
Characteristic subgroups and abelian sections of a class-2 group.

Two linear models carry all computations:

* Subgroups containing gamma_2 are submodules of the exponent module
  M = (+)_m Z/p^{e_m}, because G -> G/gamma_2 is linear on exponent vectors.
* Central subgroups use the log map a -> a - B(a, a)/2 (B the collection
  correction), which turns multiplication of central elements into vector
  addition. At p = 2 the map is the identity and is only valid when the
  correction vanishes on the center; otherwise StructureError is raised.

Both live inside (Z/p^E)^d by scaling coordinate m with p^{E - e_m}.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union
import logging

from ..models.presentation import Element, PcPresentation
from ..models.subgroup import (
    AbelianSectionType,
    CentralSubgroup,
    SubgroupAboveDerived,
    SubgroupRelation,
)
from ..utils.modular import (
    howell_form,
    in_row_space,
    invariant_exponents,
    kernel_generators,
    local_smith,
    plog,
    span_exponent,
)
from ..utils.validation import CapExceededError, StructureError
from .collect_service import Collector, ElementCodec

logger = logging.getLogger(__name__)

Subgroup = Union[CentralSubgroup, SubgroupAboveDerived]

SECTIONS = ("G/gamma2", "Z", "gamma2", "G/Phi", "Z/gamma2", "G/Z")

DEFAULT_ENUMERATION_CAP = 5_000_000
DEFAULT_CENTER_CAP = 1_000_000


@dataclass(frozen=True)
class QuotientBasis:
    """
    Cyclic decomposition of G/gamma_2.

    generators[t] is a preimage of the t-th cyclic factor, of order
    orders[t]; `transform` maps exponent vectors to factor coordinates.
    """

    generators: Tuple[Element, ...]
    orders: Tuple[int, ...]
    transform: Tuple[Tuple[int, ...], ...]
    columns: Tuple[int, ...]

    def coordinates(self, vector: Sequence[int]) -> Tuple[int, ...]:
        out = []
        for column, order in zip(self.columns, self.orders):
            value = sum(a * row[column] for a, row in zip(vector, self.transform))
            out.append(value % order)
        return tuple(out)


class StructureAnalyzer:
    """
    Structure computations for one presentation.

    Results that do not depend on arguments are cached on the instance;
    presentations are immutable, so the cache never goes stale.
    """

    def __init__(
        self,
        presentation: PcPresentation,
        enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
        center_cap: int = DEFAULT_CENTER_CAP,
    ):
        self.presentation = presentation
        self.collector = Collector(presentation)
        self.p = presentation.p
        self.d = presentation.d
        self.E = presentation.max_exponent
        self.enumeration_cap = enumeration_cap
        self.center_cap = center_cap
        self._scales = [self.p ** (self.E - e) for e in presentation.exponents]
        self._halves = (
            [pow(2, -1, m) for m in presentation.moduli] if self.p != 2 else None
        )
        self._agemo: Dict[int, SubgroupAboveDerived] = {}

    # coordinates

    def scale(self, vector: Sequence[int]) -> Tuple[int, ...]:
        modulus = self.p**self.E
        return tuple((a * s) % modulus for a, s in zip(vector, self._scales))

    def unscale(self, vector: Sequence[int]) -> Element:
        return tuple(
            (y // s) % m
            for y, s, m in zip(vector, self._scales, self.presentation.moduli)
        )

    def log(self, a: Element) -> Element:
        """Central log coordinates of a central element."""
        if self._halves is None:
            return tuple(a)
        square = self.collector.correction(a, a)
        return self.collector.reduce(
            x - h * c for x, h, c in zip(a, self._halves, square)
        )

    def exp(self, y: Sequence[int]) -> Element:
        """Inverse of `log`."""
        if self._halves is None:
            return tuple(y)
        square = self.collector.correction(y, y)
        return self.collector.reduce(
            x + h * c for x, h, c in zip(y, self._halves, square)
        )

    def _ambient_generators(self, shift: int = 0) -> List[Tuple[int, ...]]:
        return [
            self.scale(tuple(self.p**shift if k == m else 0 for k in range(self.d)))
            for m in range(self.d)
        ]

    @cached_property
    def _derived_generators(self) -> List[Tuple[int, ...]]:
        return [self.scale(value) for _, value in self.presentation.relations]

    # central subgroups

    def _central_from_log_rows(self, rows: Sequence[Sequence[int]]) -> CentralSubgroup:
        """Sift scaled log generators into an independent basis."""
        form = howell_form(rows, self.p, self.E)
        if not form:
            return CentralSubgroup(self.p, (), (), (), self.E)
        reduction = local_smith(form, self.d, self.p, self.E)
        basis: List[Element] = []
        orders: List[int] = []
        for t, s in enumerate(reduction.valuations):
            if s >= self.E:
                continue
            y = [(self.p**s * x) % self.p**self.E for x in reduction.inverse[t]]
            basis.append(self.exp(self.unscale(y)))
            orders.append(self.p ** (self.E - s))
        return CentralSubgroup(
            self.p,
            tuple(basis),
            tuple(orders),
            tuple(tuple(row) for row in form),
            self.E,
        )

    def central_subgroup(self, elements: Sequence[Element]) -> CentralSubgroup:
        """The subgroup generated by central elements."""
        return self._central_from_log_rows([self.scale(self.log(z)) for z in elements])

    @cached_property
    def derived(self) -> CentralSubgroup:
        return self._central_from_log_rows(self._derived_generators)

    def derived_subgroup(self) -> CentralSubgroup:
        """gamma_2(G), sifted from the stored commutator values."""
        return self.derived

    @cached_property
    def _center_vectors(self) -> List[Element]:
        """Generators of the module of exponent vectors of central elements."""
        modulus = self.p**self.E
        pairing: List[List[int]] = [[] for _ in range(self.d)]
        for j in range(self.d):
            for m in range(self.d):
                for k in range(self.d):
                    value = self.presentation.commutator_of_generators(k, j)[m]
                    pairing[k].append((value * self._scales[m]) % modulus)
        kernel = kernel_generators(pairing, self.d, self.p, self.E)
        vectors = [self.collector.reduce(row) for row in kernel]
        vectors += [value for _, value in self.presentation.relations]
        return [v for v in vectors if any(v)]

    @cached_property
    def center_group(self) -> CentralSubgroup:
        vectors = self._center_vectors
        if self.p == 2:
            for a in vectors:
                for b in vectors:
                    if any(self.collector.reduce(self.collector.correction(a, b))):
                        raise StructureError(
                            "center is not linearizable at p = 2: "
                            f"collection correction B({a}, {b}) is nontrivial"
                        )
        # the log image of Z(G) equals its exponent-vector module since it contains gamma_2
        center = self._central_from_log_rows([self.scale(v) for v in vectors])
        logger.debug(f"Center of {self.presentation!r}: type {center.section_type}")
        return center

    def center(self) -> CentralSubgroup:
        """Z(G) from the kernel of the commutator pairing."""
        return self.center_group

    def omega_of_central(self, subgroup: CentralSubgroup, k: int) -> CentralSubgroup:
        """Elements of the central subgroup of order at most p^k."""
        if k <= 0:
            return CentralSubgroup(self.p, (), (), (), self.E)
        bound = self.p**k
        basis = [
            self.collector.power(b, order // bound) if order > bound else b
            for b, order in zip(subgroup.basis, subgroup.orders)
        ]
        return self.central_subgroup(basis)

    def agemo_of_central(self, subgroup: CentralSubgroup, i: int) -> CentralSubgroup:
        """The p^i-th powers of a central subgroup."""
        return self.central_subgroup(
            [self.collector.power(b, self.p**i) for b in subgroup.basis]
        )

    # subgroups above gamma_2

    def above_derived(self, elements: Sequence[Element]) -> SubgroupAboveDerived:
        """The subgroup generated by gamma_2 and the given elements."""
        rows = [self.scale(g) for g in elements] + self._derived_generators
        form = howell_form(rows, self.p, self.E)
        return SubgroupAboveDerived(
            self.p,
            tuple(tuple(row) for row in form),
            self.E,
            span_exponent(form, self.p, self.E),
            self.section_type("G/gamma2"),
        )

    def agemo_above_derived(self, i: int) -> SubgroupAboveDerived:
        """G^{p^i} gamma_2(G), the preimage of the p^i-th powers of G/gamma_2."""
        i = max(i, 0)
        if i not in self._agemo:
            powers = [
                tuple(self.p**i if k == m else 0 for k in range(self.d))
                for m in range(self.d)
            ]
            self._agemo[i] = self.above_derived(
                [self.collector.reduce(v) for v in powers]
            )
        return self._agemo[i]

    def frattini(self) -> SubgroupAboveDerived:
        return self.agemo_above_derived(1)

    def frattini_rank(self) -> int:
        """Rank of the elementary abelian quotient G/Phi(G)."""
        return self.presentation.order_exponent - self.frattini().size_exponent

    # sections

    def _quotient_type(
        self, numerator: Sequence[Sequence[int]], denominator: Sequence[Sequence[int]]
    ) -> AbelianSectionType:
        """Type of <numerator>/<denominator> for scaled generating sets."""
        form = howell_form(numerator, self.p, self.E)
        if not form:
            return AbelianSectionType(self.p, ())
        reduction = local_smith(form, self.d, self.p, self.E)
        rank = len(reduction.valuations)
        relations: List[List[int]] = []
        for t, s in enumerate(reduction.valuations):
            relations.append(
                [self.p ** (self.E - s) if u == t else 0 for u in range(rank)]
            )
        for z in denominator:
            w = [
                sum(a * row[t] for a, row in zip(z, reduction.transform))
                % self.p**self.E
                for t in range(rank)
            ]
            relations.append(
                [w[t] // self.p ** reduction.valuations[t] for t in range(rank)]
            )
        exponents = invariant_exponents(relations, rank, self.p, self.E + 1)
        return AbelianSectionType.from_exponents(self.p, exponents)

    def section_type(self, which: str) -> AbelianSectionType:
        """
        Invariant-factor type of an abelian section.

        Args:
            which: One of "G/gamma2", "Z", "gamma2", "G/Phi", "Z/gamma2", "G/Z"
        """
        ambient = self._ambient_generators()
        if which == "G/gamma2":
            return self._quotient_type(ambient, self._derived_generators)
        if which == "Z":
            return self.center().section_type
        if which == "gamma2":
            return self.derived.section_type
        if which == "G/Phi":
            return self._quotient_type(ambient, [list(r) for r in self.frattini().form])
        center_rows = [self.scale(v) for v in self._center_vectors]
        if which == "Z/gamma2":
            return self._quotient_type(center_rows, self._derived_generators)
        if which == "G/Z":
            return self._quotient_type(ambient, center_rows)
        raise ValueError(f"Unknown section {which!r}; expected one of {SECTIONS}")

    @cached_property
    def quotient_basis(self) -> QuotientBasis:
        """Cyclic generators of G/gamma_2 and the coordinate map onto them."""
        relations = [
            [self.p**e if k == m else 0 for k in range(self.d)]
            for m, e in enumerate(self.presentation.exponents)
        ]
        relations += [list(value) for _, value in self.presentation.relations]
        reduction = local_smith(relations, self.d, self.p, self.E + 1)
        generators, orders, columns = [], [], []
        for t, s in enumerate(reduction.valuations):
            if s == 0:
                continue
            generators.append(self.collector.reduce(reduction.inverse[t]))
            orders.append(self.p**s)
            columns.append(t)
        return QuotientBasis(
            tuple(generators),
            tuple(orders),
            tuple(tuple(row) for row in reduction.transform),
            tuple(columns),
        )

    def exponent(self) -> int:
        """
        Exponent of G.

        For odd p the maximum over generators and a basis of gamma_2 is
        exact in class 2; for p = 2 every element is visited under the cap.
        """
        if self.p != 2:
            candidates = [self.collector.generator(i) for i in range(self.d)]
            candidates += list(self.derived.basis)
            return max(self.collector.element_order(g) for g in candidates)
        size = self.p**self.presentation.order_exponent
        if size > self.enumeration_cap:
            raise CapExceededError("exponent enumeration", size, self.enumeration_cap)
        return max(self.collector.element_order(g) for g in self.all_elements())

    def exponent_balance(self) -> Tuple[int, int]:
        """(exp gamma_2, exp G/Z); the two agree for the groups in the dichotomy."""
        return self.derived.exponent, self.section_type("G/Z").exponent

    # enumeration

    def all_elements(self) -> Iterator[Element]:
        return product(*(range(m) for m in self.presentation.moduli))

    def enumerate_elements(
        self, cap: Optional[int] = None, keep: bool = False
    ) -> Tuple[int, Optional[Set[int]]]:
        """
        Breadth-first closure of the generators starting at the identity.

        Returns the element count and, with keep=True, the packed elements.
        """
        cap = cap if cap is not None else self.enumeration_cap
        expected = self.p**self.presentation.order_exponent
        if expected > cap:
            raise CapExceededError("element enumeration", expected, cap)
        codec = ElementCodec(self.presentation)
        gens = [self.collector.generator(i) for i in range(self.d)]
        seen = {codec.pack(self.collector.identity())}
        frontier = [self.collector.identity()]
        while frontier:
            following = []
            for g in frontier:
                for x in gens:
                    h = self.collector.multiply(g, x)
                    code = codec.pack(h)
                    if code not in seen:
                        if len(seen) >= cap:
                            raise CapExceededError("element enumeration", len(seen) + 1, cap)
                        seen.add(code)
                        following.append(h)
            frontier = following
        logger.info(f"Enumerated {len(seen)} elements of {self.presentation!r}")
        return len(seen), (seen if keep else None)

    def brute_force_center(self, cap: Optional[int] = None) -> Set[Element]:
        cap = cap if cap is not None else self.enumeration_cap
        size = self.p**self.presentation.order_exponent
        if size > cap:
            raise CapExceededError("center enumeration", size, cap)
        return {g for g in self.all_elements() if self.collector.is_central(g)}

    def omega_subgroup_of_group(self, i: int, cap: Optional[int] = None) -> int:
        """Order of the subgroup generated by elements of order at most p^i."""
        cap = cap if cap is not None else self.enumeration_cap
        size = self.p**self.presentation.order_exponent
        if size > cap:
            raise CapExceededError("omega enumeration", size, cap)
        bound = self.p**i
        small = [g for g in self.all_elements() if self.collector.element_order(g) <= bound]
        codec = ElementCodec(self.presentation)
        seen = {codec.pack(g) for g in small}
        frontier = list(small)
        while frontier:
            following = []
            for g in frontier:
                for x in small:
                    h = self.collector.multiply(g, x)
                    code = codec.pack(h)
                    if code not in seen:
                        seen.add(code)
                        following.append(h)
            frontier = following
        return len(seen)

    def element_height(self, g: Element) -> int:
        """Largest k with g gamma_2 in (G/gamma_2)^{p^k}; E+1 for elements of gamma_2."""
        for k in range(self.E + 1):
            if not self.contains(self.agemo_above_derived(k + 1), g):
                return k
        return self.E + 1

    # membership and comparison

    def contains(self, subgroup: Subgroup, g: Element) -> bool:
        if isinstance(subgroup, SubgroupAboveDerived):
            return in_row_space(self.scale(g), subgroup.form, self.p, self.E)
        if not self.collector.is_central(g):
            return False
        return in_row_space(self.scale(self.log(g)), subgroup.form, self.p, self.E)

    def generators(self, subgroup: Subgroup) -> List[Element]:
        if isinstance(subgroup, CentralSubgroup):
            return list(subgroup.basis)
        return [self.unscale(row) for row in subgroup.form]

    def is_subgroup(self, a: Subgroup, b: Subgroup) -> bool:
        if type(a) is type(b):
            return all(in_row_space(row, b.form, self.p, self.E) for row in a.form)
        return all(self.contains(b, g) for g in self.generators(a))

    def compare_subgroups(self, a: Subgroup, b: Subgroup) -> SubgroupRelation:
        a_in_b = self.is_subgroup(a, b)
        b_in_a = self.is_subgroup(b, a)
        if a_in_b and b_in_a:
            return SubgroupRelation.EQUAL
        if a_in_b:
            return SubgroupRelation.PROPER_SUBGROUP
        if b_in_a:
            return SubgroupRelation.PROPER_SUPERGROUP
        return SubgroupRelation.INCOMPARABLE

    def order_exponent(self, subgroup: Subgroup) -> int:
        return subgroup.size_exponent

    # purely non-abelian test

    def central_elements(
        self, subgroup: CentralSubgroup
    ) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Scaled log vector and basis coefficients of every element."""
        modulus = self.p**self.E
        logs = [self.scale(self.log(b)) for b in subgroup.basis]
        for coefficients in product(*(range(o) for o in subgroup.orders)):
            yield tuple(
                sum(t * y[m] for t, y in zip(coefficients, logs)) % modulus
                for m in range(self.d)
            ), coefficients

    def is_purely_nonabelian(self, cap: Optional[int] = None) -> bool:
        """
        True iff G has no nontrivial abelian direct factor.

        A cyclic factor of order p^k splits off exactly when some central z
        of order p^k has z^{p^{k-1}} outside G^{p^k} gamma_2; the center is
        searched element by element up to the cap.
        """
        cap = cap if cap is not None else self.center_cap
        center = self.center()
        size = self.p**center.size_exponent
        if size > cap:
            raise CapExceededError("center search", size, cap)
        modulus = self.p**self.E
        for y, coefficients in self.central_elements(center):
            if not any(y):
                continue
            order = max(
                o // gcd(t, o) for t, o in zip(coefficients, center.orders)
            )
            k = plog(order, self.p)
            power = tuple((self.p ** (k - 1) * x) % modulus for x in y)
            target = self.agemo_above_derived(k)
            if not in_row_space(power, target.form, self.p, self.E):
                logger.info(
                    f"Abelian direct factor of order {self.p}^{k} found in "
                    f"{self.presentation!r}"
                )
                return False
        return True
