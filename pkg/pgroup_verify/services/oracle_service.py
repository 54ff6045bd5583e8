"""
Brute-force automorphism enumeration for small groups.

Generator images are assigned in index order. A relation is checked as
soon as every generator it mentions has an image, and a branch dies once
the images of the Frattini basis generators become dependent mod Phi(G).
Candidate images are narrowed before the checks run: a basis generator
goes outside Phi(G), a generator that is a unit power of a commutator
times earlier generators is forced by that relation, and any other
generator must keep its image mod Phi(G) once that image is known.
"""

from collections import defaultdict
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging

from ..models.presentation import Element, PcPresentation
from ..models.verdict import OracleResult
from ..utils.modular import rank_mod_p
from ..utils.validation import CapExceededError, require
from .collect_service import Collector, FrattiniProjection

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 10_000
MAX_ORACLE_GENERATORS = 4


class AutomorphismOracle:
    def __init__(self, presentation: PcPresentation, keep_images: bool = False):
        self.presentation = presentation
        self.collector = Collector(presentation)
        self.projection = FrattiniProjection(presentation)
        self.keep_images = keep_images
        self.elements: List[Element] = list(_all_elements(presentation))
        self._checks = self._schedule()
        self._by_projection: Dict[Tuple[int, ...], List[Element]] = defaultdict(list)
        for g in self.elements:
            self._by_projection[self.projection.project(g)].append(g)
        self._outside_phi = [g for g in self.elements if any(self.projection.project(g))]
        self._forced = self._forcing_relations()

    def _schedule(self) -> List[List[tuple]]:
        """Relations (j, i) grouped by the last generator they mention."""
        d = self.presentation.d
        checks: List[List[tuple]] = [[] for _ in range(d)]
        for j in range(d):
            for i in range(j):
                value = self.presentation.comm(j, i)
                support = [m for m, c in enumerate(value) if c]
                checks[max([j] + support)].append((j, i))
        return checks

    def _forcing_relations(self) -> Dict[int, Tuple[int, int, Element, int]]:
        """
        Levels m with a relation [x_j, x_i] = w x_m^c, j < m, w in earlier
        generators and c a unit mod p; maps m to (j, i, value, c^-1).
        """
        p, moduli = self.presentation.p, self.presentation.moduli
        forced: Dict[int, Tuple[int, int, Element, int]] = {}
        for m, checks in enumerate(self._checks):
            for j, i in checks:
                value = self.presentation.comm(j, i)
                if j < m and value[m] % p:
                    forced[m] = (j, i, value, pow(value[m], -1, moduli[m]))
                    break
        return forced

    def _candidates(self, images: Sequence[Element], level: int) -> Sequence[Element]:
        collector = self.collector
        if level in self._forced:
            j, i, value, inverse = self._forced[level]
            lhs = collector.commutator(images[j], images[i])
            prefix = collector.word(images[:level], value[:level])
            target = collector.multiply(collector.inverse(prefix), lhs)
            return [collector.power(target, inverse)]
        if level in self.projection.basis:
            return self._outside_phi
        image = self._image_mod_phi(images, level)
        if image is None:
            return self.elements
        return self._by_projection.get(image, [])

    def _image_mod_phi(
        self, images: Sequence[Element], level: int
    ) -> Optional[Tuple[int, ...]]:
        """alpha(x_level) mod Phi(G), when the basis images it depends on are set."""
        p = self.presentation.p
        coordinates = self.projection.project(self.collector.generator(level))
        basis = self.projection.basis
        if any(c and basis[k] > level for k, c in enumerate(coordinates)):
            return None
        total = [0] * len(basis)
        for k, c in enumerate(coordinates):
            if c:
                row = self.projection.project(images[basis[k]])
                total = [(t + c * r) % p for t, r in zip(total, row)]
        return tuple(total)

    def _relations_hold(self, images: Sequence[Element], level: int) -> bool:
        collector = self.collector
        modulus = self.presentation.moduli[level]
        if any(collector.power(images[level], modulus)):
            return False
        for j, i in self._checks[level]:
            lhs = collector.commutator(images[j], images[i])
            if lhs != collector.word(images, self.presentation.comm(j, i)):
                return False
        return True

    def _independent(self, images: Sequence[Element], level: int) -> bool:
        if level not in self.projection.basis:
            return True
        rows = [
            self.projection.project(images[i])
            for i in self.projection.basis
            if i <= level
        ]
        return rank_mod_p(rows, self.presentation.p) == len(rows)

    def _is_central(self, images: Sequence[Element]) -> bool:
        collector = self.collector
        return all(
            collector.is_central(
                collector.multiply(collector.inverse(collector.generator(i)), image)
            )
            for i, image in enumerate(images)
        )

    def run(self) -> OracleResult:
        d = self.presentation.d
        result = OracleResult(0, 0)
        images: List[Element] = [self.collector.identity()] * d

        def extend(level: int) -> None:
            if level == d:
                result.automorphisms += 1
                if self._is_central(images):
                    result.central += 1
                if self.keep_images:
                    result.images.append(list(images))
                return
            for g in self._candidates(images, level):
                images[level] = g
                if self._independent(images, level) and self._relations_hold(
                    images, level
                ):
                    extend(level + 1)
            images[level] = self.collector.identity()

        extend(0)
        return result


def _all_elements(presentation: PcPresentation) -> Iterator[Element]:
    return product(*(range(m) for m in presentation.moduli))


def bruteforce_aut(
    presentation: PcPresentation,
    cap: int = DEFAULT_ORACLE_CAP,
    keep_images: bool = False,
) -> OracleResult:
    """
    |Aut(G)| by enumerating generator images.

    Raises:
        CapExceededError: |G| is above the cap
        PreconditionError: more than four generators
    """
    require(
        presentation.d <= MAX_ORACLE_GENERATORS,
        f"oracle handles at most {MAX_ORACLE_GENERATORS} generators, "
        f"got {presentation.d}",
    )
    size = presentation.p**presentation.order_exponent
    if size > cap:
        raise CapExceededError("automorphism oracle", size, cap)
    result = AutomorphismOracle(presentation, keep_images).run()
    logger.info(
        f"Oracle on {presentation!r}: |Aut| = {result.automorphisms}, "
        f"{result.central} central"
    )
    return result
