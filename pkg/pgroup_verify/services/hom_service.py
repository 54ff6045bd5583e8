"""
Hom groups between abelian sections and concrete central endomorphisms.

A central endomorphism is x -> x f(x) with f a homomorphism from
G/gamma_2(G) to Z(G); it is given by its generator images.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple
import logging
import random

from ..models.criteria import CentralAutomorphismCount, SanityReport
from ..models.presentation import Element, PcPresentation
from ..models.subgroup import AbelianSectionType
from ..utils.modular import det_is_unit_mod_p
from ..utils.validation import CapExceededError, require
from .collect_service import Collector, FrattiniProjection
from .structure_service import StructureAnalyzer

logger = logging.getLogger(__name__)

GeneratorImages = List[Element]

DEFAULT_HOM_CAP = 2**26


def hom_order(a: AbelianSectionType, b: AbelianSectionType) -> int:
    """log_p |Hom(A, B)| = sum over factor pairs of min(a_i, b_j)."""
    if a.p != b.p:
        raise ValueError(f"sections over different primes {a.p} and {b.p}")
    return sum(min(x, y) for x in a.exponents for y in b.exponents)


def autcent_order(analyzer: StructureAnalyzer) -> int:
    """log_p |Autcent(G)| = log_p |Hom(G/gamma_2, Z)| for purely non-abelian G."""
    require(
        analyzer.is_purely_nonabelian(),
        "Autcent order formula needs a purely non-abelian group; "
        "this group has an abelian direct factor",
    )
    return hom_order(analyzer.section_type("G/gamma2"), analyzer.section_type("Z"))


def evaluate_map(
    presentation: PcPresentation, images: Sequence[Element], g: Sequence[int]
) -> Element:
    """phi(g) = phi(x_1)^{g_1} ... phi(x_d)^{g_d}."""
    collector = Collector(presentation)
    return collector.word(images, g)


def is_endomorphism(presentation: PcPresentation, images: Sequence[Element]) -> bool:
    """Whether the images satisfy every power and commutator relation."""
    collector = Collector(presentation)
    for i, modulus in enumerate(presentation.moduli):
        if any(collector.power(images[i], modulus)):
            return False
    for j in range(presentation.d):
        for i in range(j):
            lhs = collector.commutator(images[j], images[i])
            rhs = collector.word(images, presentation.comm(j, i))
            if lhs != rhs:
                return False
    return True


def is_automorphism(presentation: PcPresentation, images: Sequence[Element]) -> bool:
    """An endomorphism is bijective iff it is invertible on G/Phi(G)."""
    return FrattiniProjection(presentation).is_invertible(images)


def compose_maps(
    presentation: PcPresentation, outer: Sequence[Element], inner: Sequence[Element]
) -> GeneratorImages:
    """Images of outer o inner."""
    collector = Collector(presentation)
    return [collector.word(outer, image) for image in inner]


def identity_map(presentation: PcPresentation) -> GeneratorImages:
    return [presentation.generator(i) for i in range(presentation.d)]


def maps_equal(
    presentation: PcPresentation, phi: Sequence[Element], psi: Sequence[Element]
) -> bool:
    """Maps agree iff their generator images agree in normal form."""
    collector = Collector(presentation)
    if len(phi) != len(psi):
        return False
    return all(collector.reduce(a) == collector.reduce(b) for a, b in zip(phi, psi))


def map_power(
    presentation: PcPresentation, images: Sequence[Element], n: int
) -> GeneratorImages:
    result = identity_map(presentation)
    for _ in range(n):
        result = compose_maps(presentation, images, result)
    return result


def central_hom_choices(analyzer: StructureAnalyzer) -> List[List[Element]]:
    """
    For each cyclic factor of G/gamma_2 of order p^s, the elements of
    Omega_s(Z) it may be sent to.
    """
    center = analyzer.center()
    collector = analyzer.collector
    choices = []
    for order in analyzer.quotient_basis.orders:
        basis, ranges = [], []
        for b, o in zip(center.basis, center.orders):
            if o > order:
                basis.append(collector.power(b, o // order))
                ranges.append(order)
            else:
                basis.append(b)
                ranges.append(o)
        choices.append(
            [collector.word(basis, k) for k in product(*(range(r) for r in ranges))]
        )
    return choices


def central_map(
    analyzer: StructureAnalyzer, targets: Sequence[Element]
) -> GeneratorImages:
    """x_j -> x_j f(x_j), f sending the t-th quotient generator to targets[t]."""
    collector = analyzer.collector
    basis = analyzer.quotient_basis
    images = []
    for j in range(analyzer.d):
        x = collector.generator(j)
        f = collector.word(targets, basis.coordinates(x))
        images.append(collector.multiply(x, f))
    return images


def _random_targets(analyzer: StructureAnalyzer, rng: random.Random) -> List[Element]:
    center = analyzer.center()
    collector = analyzer.collector
    targets = []
    for order in analyzer.quotient_basis.orders:
        factors = []
        for b, o in zip(center.basis, center.orders):
            if o > order:
                factors.append(collector.power(b, (o // order) * rng.randrange(order)))
            else:
                factors.append(collector.power(b, rng.randrange(o)))
        targets.append(collector.product(factors))
    return targets


def sample_central_endomorphism(
    analyzer: StructureAnalyzer, seed: int
) -> GeneratorImages:
    """A uniformly chosen central endomorphism, determined by the seed."""
    return central_map(analyzer, _random_targets(analyzer, random.Random(seed)))


def _sample_automorphism(
    analyzer: StructureAnalyzer, rng: random.Random, attempts: int = 100
) -> Optional[GeneratorImages]:
    for _ in range(attempts):
        images = central_map(analyzer, _random_targets(analyzer, rng))
        if is_automorphism(analyzer.presentation, images):
            return images
    return None


def central_sanity_suite(
    analyzer: StructureAnalyzer, trials: int, seed: int = 0
) -> SanityReport:
    """Sample pairs of central automorphisms; test commutation and f^p = id."""
    presentation = analyzer.presentation
    rng = random.Random(seed)
    report = SanityReport(trials=trials)
    identity = identity_map(presentation)
    for _ in range(trials):
        f = _sample_automorphism(analyzer, rng)
        g = _sample_automorphism(analyzer, rng)
        if f is None or g is None:
            report.skipped += 1
            continue
        if not maps_equal(
            presentation, compose_maps(presentation, f, g), compose_maps(presentation, g, f)
        ):
            report.non_commuting += 1
        f_to_p = map_power(presentation, f, presentation.p)
        if not maps_equal(presentation, f_to_p, identity):
            report.not_order_p += 1
    logger.info(
        f"Sanity suite on {presentation!r}: {trials} trials, "
        f"{report.non_commuting} non-commuting, {report.not_order_p} with f^p != id"
    )
    return report


@dataclass
class _SweepData:
    p: int
    rank: int
    contributions: List[List[Tuple[int, ...]]]


def _count_block(data: _SweepData, first: int) -> int:
    """Invertible induced maps with the first factor's choice fixed."""
    p = data.p
    head = data.contributions[0][first] if data.contributions else (0,) * data.rank**2
    count = 0
    for rest in product(*data.contributions[1:]):
        total = list(head)
        for part in rest:
            total = [(x + y) % p for x, y in zip(total, part)]
        r = data.rank
        matrix = [
            [(int(i == j) + total[i * r + j]) % p for j in range(r)] for i in range(r)
        ]
        if not r or det_is_unit_mod_p(matrix, p):
            count += 1
    return count


def count_central_automorphisms(
    analyzer: StructureAnalyzer,
    workers: int = 1,
    cap: int = DEFAULT_HOM_CAP,
) -> CentralAutomorphismCount:
    """
    Sweep every f in Hom(G/gamma_2, Z) and count the automorphisms x -> x f(x).

    Such a map is always an endomorphism; it is an automorphism iff
    I + F is invertible, F the matrix of the Frattini images of f on the
    generators forming a basis of G/Phi(G). The sweep is split on the
    image of the first quotient generator.
    """
    presentation = analyzer.presentation
    choices = central_hom_choices(analyzer)
    total = 1
    for options in choices:
        total *= len(options)
    if total > cap:
        raise CapExceededError("central hom sweep", total, cap)
    projection = FrattiniProjection(presentation)
    basis = analyzer.quotient_basis
    coordinates = [
        basis.coordinates(presentation.generator(i)) for i in projection.basis
    ]
    contributions: List[List[Tuple[int, ...]]] = []
    for t, options in enumerate(choices):
        block = []
        for z in options:
            pz = projection.project(z)
            block.append(
                tuple(
                    (coordinates[i][t] * pz[j]) % presentation.p
                    for i in range(projection.rank)
                    for j in range(projection.rank)
                )
            )
        contributions.append(block)
    data = _SweepData(presentation.p, projection.rank, contributions)
    heads = range(len(contributions[0])) if contributions else [0]
    if workers > 1 and contributions:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            counts = list(executor.map(_count_block, [data] * len(heads), heads))
    else:
        counts = [_count_block(data, h) for h in heads]
    automorphisms = sum(counts)
    logger.info(
        f"Central hom sweep on {presentation!r}: {automorphisms} of {total} maps invertible"
    )
    return CentralAutomorphismCount(total, automorphisms)
