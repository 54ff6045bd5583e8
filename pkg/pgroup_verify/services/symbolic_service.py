"""
Collection with polynomial exponents and derivation of the endomorphism
congruence system.

Exponent polynomials live in a sympy sparse ring over ZZ in the unknowns
a_ij and are never reduced; moduli only enter when equations are emitted.
"""

from typing import Dict, List, Optional, Sequence, Tuple
import logging

from sympy import ZZ
from sympy.polys.rings import PolyElement, ring

from ..models.presentation import Element, PcPresentation
from ..models.symbolic import (
    CongruenceSystem,
    Equation,
    InvertibilityPattern,
    Monomial,
    Variable,
    symmetric_residue,
)
from .collect_service import Collector, FrattiniProjection

logger = logging.getLogger(__name__)

SymElement = Tuple[PolyElement, ...]


def compile_poly(poly: PolyElement) -> Dict[Monomial, int]:
    """Sparse {((variable, power), ...): coefficient} form of a ring element."""
    out: Dict[Monomial, int] = {}
    for exponents, coefficient in poly.terms():
        monomial = tuple((v, k) for v, k in enumerate(exponents) if k)
        out[monomial] = int(coefficient)
    return out


def evaluate_poly(poly: PolyElement, values: Sequence[int]) -> int:
    total = 0
    for exponents, coefficient in poly.terms():
        product = int(coefficient)
        for v, k in enumerate(exponents):
            if k:
                product *= values[v] ** k
        total += product
    return total


class SymbolicCollector:
    """
    Class-2 collection on words whose exponents are polynomials.

    The formulas are the concrete ones from `Collector` with the commutator
    values taken as symmetric representatives, so that evaluating at
    integers and reducing reproduces concrete collection.
    """

    def __init__(self, presentation: PcPresentation):
        self.presentation = presentation
        self.p = presentation.p
        self.d = presentation.d
        names = ",".join(
            f"a{i + 1}{j + 1}" for i in range(self.d) for j in range(self.d)
        )
        self.ring, *self.symbols = ring(names, ZZ)
        moduli = presentation.moduli
        self._pairs: List[Tuple[int, int, Tuple[Tuple[int, int], ...]]] = [
            (
                k,
                j,
                tuple(
                    (m, symmetric_residue(c, moduli[m]))
                    for m, c in enumerate(value)
                    if c
                ),
            )
            for (k, j), value in presentation.relations
        ]

    def zero(self) -> SymElement:
        return tuple(self.ring.zero for _ in range(self.d))

    def constant(self, vector: Sequence[int]) -> SymElement:
        return tuple(self.ring(int(a)) for a in vector)

    def unknown_row(self, i: int) -> SymElement:
        """(a_i1, ..., a_id)."""
        return tuple(self.symbols[i * self.d + j] for j in range(self.d))

    def _correction(self, u: SymElement, v: SymElement) -> List[PolyElement]:
        out = [self.ring.zero for _ in range(self.d)]
        for k, j, value in self._pairs:
            if not u[k] or not v[j]:
                continue
            weight = u[k] * v[j]
            for m, c in value:
                out[m] += weight * c
        return out

    def sym_multiply(self, u: SymElement, v: SymElement) -> SymElement:
        extra = self._correction(u, v)
        return tuple(a + b + c for a, b, c in zip(u, v, extra))

    def sym_power(self, u: SymElement, n: int) -> SymElement:
        """u^n in closed form; n(n-1)/2 makes negative n valid too."""
        binomial = n * (n - 1) // 2
        extra = self._correction(u, u)
        return tuple(a * n + c * binomial for a, c in zip(u, extra))

    def sym_commutator(self, u: SymElement, v: SymElement) -> SymElement:
        forward = self._correction(u, v)
        backward = self._correction(v, u)
        return tuple(f - b for f, b in zip(forward, backward))

    def evaluate(self, element: SymElement, values: Sequence[int]) -> Element:
        return tuple(
            evaluate_poly(poly, values) % m
            for poly, m in zip(element, self.presentation.moduli)
        )


class SystemGenerator:
    """Builds the CongruenceSystem of a presentation."""

    def __init__(self, presentation: PcPresentation):
        self.presentation = presentation
        self.p = presentation.p
        self.d = presentation.d
        self.symbolic = SymbolicCollector(presentation)

    def images(self) -> List[SymElement]:
        """alpha(x_i) = x_i * x_1^{a_i1} ... x_d^{a_id}."""
        return [
            self.symbolic.sym_multiply(
                self.symbolic.constant(self.presentation.generator(i)),
                self.symbolic.unknown_row(i),
            )
            for i in range(self.d)
        ]

    def image_of_word(self, alpha: Sequence[SymElement], vector: Element) -> SymElement:
        """alpha(x_1^{c_1} ... x_d^{c_d}) with symmetric exponents."""
        result = self.symbolic.zero()
        for m, c in enumerate(vector):
            if c:
                exponent = symmetric_residue(c, self.presentation.moduli[m])
                result = self.symbolic.sym_multiply(
                    result, self.symbolic.sym_power(alpha[m], exponent)
                )
        return result

    def _emit(
        self,
        out: List[Equation],
        seen: set,
        element: SymElement,
        label: str,
    ) -> None:
        for m, poly in enumerate(element):
            equation = Equation.normalized(
                compile_poly(poly),
                self.presentation.exponents[m],
                self.p,
                f"{label} @ x{m + 1}",
            )
            if equation is not None and (equation.terms, equation.target) not in seen:
                seen.add((equation.terms, equation.target))
                out.append(equation)

    def relation_equations(self) -> List[Equation]:
        alpha = self.images()
        equations: List[Equation] = []
        seen: set = set()
        for i, e in enumerate(self.presentation.exponents):
            power = self.symbolic.sym_power(alpha[i], self.p**e)
            self._emit(equations, seen, power, f"x{i + 1}^(p^{e}) = 1")
        for j in range(self.d):
            for i in range(j):
                lhs = self.symbolic.sym_commutator(alpha[j], alpha[i])
                rhs = self.image_of_word(alpha, self.presentation.comm(j, i))
                difference = tuple(a - b for a, b in zip(lhs, rhs))
                self._emit(equations, seen, difference, f"[x{i + 1},x{j + 1}]")
        return equations

    def centrality_equations(self) -> List[Equation]:
        """e_{x_i} central: sum_k a_ik [x_k, x_j]_m = 0 mod p^{e_m} for all j, m."""
        equations: List[Equation] = []
        seen: set = set()
        for i in range(self.d):
            for j in range(self.d):
                for m, e in enumerate(self.presentation.exponents):
                    coefficients: Dict[Monomial, int] = {}
                    for k in range(self.d):
                        c = self.presentation.commutator_of_generators(k, j)[m]
                        if c:
                            coefficients[((i * self.d + k, 1),)] = c
                    equation = Equation.normalized(
                        coefficients, e, self.p, f"e_x{i + 1} commutes with x{j + 1} @ x{m + 1}"
                    )
                    if equation is not None and (equation.terms, equation.target) not in seen:
                        seen.add((equation.terms, equation.target))
                        equations.append(equation)
        return equations

    def invertibility_pattern(self) -> InvertibilityPattern:
        projection = FrattiniProjection(self.presentation)
        projections = [
            projection.project(self.presentation.generator(j)) for j in range(self.d)
        ]
        index = tuple(
            tuple(i * self.d + j for j in range(self.d)) for i in range(self.d)
        )
        return InvertibilityPattern(
            self.p, projection.basis, tuple(projections), index
        )

    def generate_system(self) -> CongruenceSystem:
        variables = tuple(
            Variable(i * self.d + j, i, j, e)
            for i in range(self.d)
            for j, e in enumerate(self.presentation.exponents)
        )
        equations = self.relation_equations()
        centrality = self.centrality_equations()
        inconsistent = any(eq.is_constant for eq in equations)
        logger.info(
            f"Generated {len(equations)} relation equations and "
            f"{len(centrality)} centrality equations for {self.presentation!r}"
        )
        return CongruenceSystem(
            self.p,
            self.d,
            variables,
            tuple(equations),
            tuple(centrality),
            self.invertibility_pattern(),
            inconsistent,
        )


def generate_system(presentation: PcPresentation) -> CongruenceSystem:
    return SystemGenerator(presentation).generate_system()


def concrete_images(
    presentation: PcPresentation, system: CongruenceSystem, values: Sequence[int]
) -> List[Element]:
    """Generator images alpha(x_i) = x_i e_{x_i} for an assignment."""
    collector = Collector(presentation)
    return [
        collector.multiply(collector.generator(i), collector.reduce(row))
        for i, row in enumerate(system.images(values))
    ]


def central_parts(
    presentation: PcPresentation, system: CongruenceSystem, values: Sequence[int]
) -> List[Element]:
    collector = Collector(presentation)
    return [collector.reduce(row) for row in system.images(values)]


def find_equation(system: CongruenceSystem, source_prefix: str) -> Optional[Equation]:
    return next(
        (eq for eq in system.equations if eq.source.startswith(source_prefix)), None
    )
