"""
Congruence-system models.

Equations are stored in a compiled sparse form, a tuple of
(coefficient, ((variable, power), ...)) terms, so that systems are plain
picklable data that worker processes can evaluate without sympy.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import multiplicity

from ..utils.modular import det_is_unit_mod_p

Monomial = Tuple[Tuple[int, int], ...]
Term = Tuple[int, Monomial]


def symmetric_residue(value: int, modulus: int) -> int:
    """Representative of value mod modulus in (-modulus/2, modulus/2]."""
    r = value % modulus
    return r - modulus if 2 * r > modulus else r


@dataclass(frozen=True)
class Variable:
    """
    Unknown a_ij: exponent of x_j in x_i^{-1} alpha(x_i).

    Attributes:
        index: Position in the system's variable list
        row: i, 0-based
        column: j, 0-based
        depth: e_j, the number of base-p digits
    """

    index: int
    row: int
    column: int
    depth: int

    @property
    def name(self) -> str:
        return f"a{self.row + 1}{self.column + 1}"


@dataclass(frozen=True)
class Equation:
    """
    F(a) = 0 mod p^target, with F in compiled sparse form.

    `source` names the relation and coordinate it came from.
    """

    terms: Tuple[Term, ...]
    target: int
    source: str = ""
    variables: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.variables:
            seen = sorted({v for _, monomial in self.terms for v, _ in monomial})
            object.__setattr__(self, "variables", tuple(seen))

    @classmethod
    def normalized(
        cls,
        coefficients: Mapping[Monomial, int],
        target: int,
        p: int,
        source: str = "",
    ) -> Optional["Equation"]:
        """
        Reduce coefficients mod p^target and divide out the p-content.

        p^s G = 0 mod p^t becomes G = 0 mod p^{t-s}; None when the
        equation holds identically.
        """
        modulus = p**target
        reduced = {
            monomial: symmetric_residue(c, modulus)
            for monomial, c in coefficients.items()
        }
        reduced = {m: c for m, c in reduced.items() if c}
        if not reduced:
            return None
        s = min(int(multiplicity(p, c)) for c in reduced.values())
        if s >= target:
            return None
        scale = p**s
        new_target = target - s
        terms = tuple(
            (symmetric_residue(c // scale, p**new_target), monomial)
            for monomial, c in sorted(reduced.items())
        )
        return cls(terms, new_target, source)

    @property
    def degree(self) -> int:
        return max((sum(k for _, k in m) for _, m in self.terms), default=0)

    @property
    def is_constant(self) -> bool:
        return not self.variables

    def evaluate(self, values: Sequence[int]) -> int:
        total = 0
        for c, monomial in self.terms:
            product = c
            for v, k in monomial:
                product *= values[v] ** k
                if not product:
                    break
            total += product
        return total

    def derivative(self, values: Sequence[int], variable: int) -> int:
        """Partial derivative in `variable`, evaluated at values."""
        total = 0
        for c, monomial in self.terms:
            product = 0
            for v, k in monomial:
                if v == variable:
                    product = c * k * values[v] ** (k - 1)
                    break
            if not product:
                continue
            for v, k in monomial:
                if v != variable:
                    product *= values[v] ** k
            total += product
        return total

    def holds(self, values: Sequence[int], p: int, level: Optional[int] = None) -> bool:
        """F(values) = 0 mod p^min(target, level)."""
        t = self.target if level is None else min(self.target, level)
        return self.evaluate(values) % p**t == 0

    def render(self, names: Sequence[str]) -> str:
        parts = []
        for c, monomial in self.terms:
            factors = [names[v] if k == 1 else f"{names[v]}^{k}" for v, k in monomial]
            parts.append("*".join([str(c)] + factors) if factors else str(c))
        return f"{' + '.join(parts) or '0'} = 0 mod p^{self.target}"


@dataclass(frozen=True)
class InvertibilityPattern:
    """
    The map induced on G/Phi(G) by the candidate images.

    G/Phi(G) is F_p^d modulo gamma_2 read mod p; `basis` lists the
    generators forming a basis of the quotient and `projections[j]` the
    coordinates of x_j in that basis. The induced matrix has rows
    pi(x_i) + sum_j a_ij pi(x_j) for i in basis.
    """

    p: int
    basis: Tuple[int, ...]
    projections: Tuple[Tuple[int, ...], ...]
    variable_index: Tuple[Tuple[int, ...], ...]

    def matrix(self, values: Sequence[int]) -> List[List[int]]:
        rows = []
        for i in self.basis:
            row = list(self.projections[i])
            for j, projection in enumerate(self.projections):
                a = values[self.variable_index[i][j]] % self.p
                if a:
                    row = [(x + a * y) % self.p for x, y in zip(row, projection)]
            rows.append(row)
        return rows

    def is_invertible(self, values: Sequence[int]) -> bool:
        if not self.basis:
            return True
        return det_is_unit_mod_p(self.matrix(values), self.p)

    @property
    def variables(self) -> Tuple[int, ...]:
        indices = {
            self.variable_index[i][j]
            for i in self.basis
            for j in range(len(self.projections))
        }
        return tuple(sorted(indices))


@dataclass(frozen=True)
class CongruenceSystem:
    """
    Relation-preservation equations for alpha(x_i) = x_i * prod_j x_j^{a_ij}.

    Every assignment with 0 <= a_ij < p^{e_j} satisfying `equations`
    is exactly one endomorphism; `centrality` holds iff it is central.
    """

    p: int
    d: int
    variables: Tuple[Variable, ...]
    equations: Tuple[Equation, ...]
    centrality: Tuple[Equation, ...]
    pattern: InvertibilityPattern
    inconsistent: bool = False

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    @property
    def max_depth(self) -> int:
        return max((v.depth for v in self.variables), default=0)

    def index_of(self, row: int, column: int) -> int:
        return row * self.d + column

    def satisfies(self, values: Sequence[int]) -> bool:
        return not self.inconsistent and all(
            eq.holds(values, self.p) for eq in self.equations
        )

    def is_central(self, values: Sequence[int]) -> bool:
        return all(eq.holds(values, self.p) for eq in self.centrality)

    def images(self, values: Sequence[int]) -> List[Tuple[int, ...]]:
        """Exponent vectors of e_{x_i} = x_i^{-1} alpha(x_i)."""
        return [
            tuple(values[self.index_of(i, j)] for j in range(self.d))
            for i in range(self.d)
        ]

    def by_name(self) -> Dict[str, int]:
        return {v.name: v.index for v in self.variables}


@dataclass(frozen=True)
class FixtureSet:
    """
    Hand-derived equations in the unknowns a_ij, read from a data file.

    The equations are kept as printed (no content normalization) and are
    only ever used as necessary conditions on solutions.
    """

    name: str
    d: int
    equations: Tuple[Equation, ...]
    notes: Tuple[str, ...] = ()

    def violated(self, values: Sequence[int], p: int, level: Optional[int] = None) -> List[str]:
        return [eq.source for eq in self.equations if not eq.holds(values, p, level)]


@dataclass
class FixtureSweep:
    """Fixture equations checked against the mod-p solutions of a system."""

    fixture: str
    solutions: int
    complete: bool
    invertible_only: bool = True
    violations: List[Tuple[List[int], List[str]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.complete and not self.violations

    @property
    def scope(self) -> str:
        return "invertible" if self.invertible_only else "all"
