"""
Normal-form arithmetic in a class-2 group given by a PcPresentation.

Products, powers and commutators are evaluated in closed form: moving
x_j^{v_j} left past x_k^{u_k} (k > j) emits [x_k, x_j]^{u_k v_j}, and
those corrections are central, so they simply add into the exponent vector.
"""

from math import comb
from typing import Iterable, List, Sequence, Tuple
import logging

from ..models.presentation import Element, PcPresentation
from ..utils.modular import det_is_unit_mod_p, rref_mod_p

logger = logging.getLogger(__name__)


class Collector:
    """
    Exact collection for one presentation.

    The stored commutator table is flattened once into (k, j, value)
    triples so every product is a short loop over nonzero entries.
    """

    def __init__(self, presentation: PcPresentation):
        self.presentation = presentation
        self.p = presentation.p
        self.d = presentation.d
        self.moduli = presentation.moduli
        self._pairs: List[Tuple[int, int, Tuple[Tuple[int, int], ...]]] = [
            (k, j, tuple((m, c) for m, c in enumerate(value) if c))
            for (k, j), value in presentation.relations
        ]

    def identity(self) -> Element:
        return (0,) * self.d

    def generator(self, i: int) -> Element:
        return self.presentation.generator(i)

    def reduce(self, vector: Iterable[int]) -> Element:
        return tuple(v % m for v, m in zip(vector, self.moduli))

    def correction(self, u: Sequence[int], v: Sequence[int]) -> List[int]:
        """Unreduced sum over k > j of u_k v_j [x_k, x_j]."""
        out = [0] * self.d
        for k, j, value in self._pairs:
            weight = u[k] * v[j]
            if weight:
                for m, c in value:
                    out[m] += weight * c
        return out

    def multiply(self, u: Element, v: Element) -> Element:
        extra = self.correction(u, v)
        return self.reduce(a + b + c for a, b, c in zip(u, v, extra))

    def inverse(self, u: Element) -> Element:
        # u^{-1} has vector -u + B(u, u) since u * (-u) collects to -B(u, u)
        extra = self.correction(u, u)
        return self.reduce(-a + c for a, c in zip(u, extra))

    def power(self, u: Element, n: int) -> Element:
        if n < 0:
            return self.power(self.inverse(u), -n)
        binomial = comb(n, 2)
        extra = self.correction(u, u)
        return self.reduce(n * a + binomial * c for a, c in zip(u, extra))

    def commutator(self, u: Element, v: Element) -> Element:
        """[u, v] = u^-1 v^-1 u v, bilinear in class 2."""
        forward = self.correction(u, v)
        backward = self.correction(v, u)
        return self.reduce(f - b for f, b in zip(forward, backward))

    def element_order(self, u: Element) -> int:
        """Least p^t with u^{p^t} = 1."""
        order = 1
        current = self.reduce(u)
        while any(current):
            current = self.power(current, self.p)
            order *= self.p
        return order

    def is_central(self, u: Element) -> bool:
        return all(
            not any(self.commutator(u, self.generator(i))) for i in range(self.d)
        )

    def product(self, elements: Iterable[Element]) -> Element:
        result = self.identity()
        for element in elements:
            result = self.multiply(result, element)
        return result

    def word(self, bases: Sequence[Element], exponents: Sequence[int]) -> Element:
        """bases[0]^{exponents[0]} * ... in order."""
        return self.product(
            self.power(base, n) for base, n in zip(bases, exponents) if n
        )


class ElementCodec:
    """
    Mixed-radix packing of exponent vectors into single integers.

    code = a_1 + a_2 * m_1 + a_3 * m_1 * m_2 + ..., with m_i = p^{e_i}.
    """

    def __init__(self, presentation: PcPresentation):
        self.moduli = presentation.moduli
        radix = 1
        self.radices: List[int] = []
        for m in self.moduli:
            self.radices.append(radix)
            radix *= m
        self.size = radix

    def pack(self, u: Element) -> int:
        return sum(a * r for a, r in zip(u, self.radices))

    def unpack(self, code: int) -> Element:
        out = []
        for m in self.moduli:
            code, a = divmod(code, m)
            out.append(a)
        return tuple(out)


class FrattiniProjection:
    """
    Linear map G -> G/Phi(G).

    G/Phi(G) is F_p^d modulo the commutator values read mod p. Generators
    at non-pivot columns of that row space form the quotient basis.
    """

    def __init__(self, presentation: PcPresentation):
        self.p = presentation.p
        self.d = presentation.d
        gamma = [list(value) for _, value in presentation.relations]
        self._rows, self._pivots = rref_mod_p(gamma, self.p)
        self.basis: Tuple[int, ...] = tuple(
            c for c in range(self.d) if c not in self._pivots
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def project(self, u: Sequence[int]) -> Tuple[int, ...]:
        v = [a % self.p for a in u]
        for row, c in zip(self._rows, self._pivots):
            if v[c]:
                q = v[c]
                v = [(x - q * y) % self.p for x, y in zip(v, row)]
        return tuple(v[b] for b in self.basis)

    def induced_matrix(self, images: Sequence[Element]) -> List[List[int]]:
        """Rows pi(alpha(x_i)) for the basis generators x_i."""
        return [list(self.project(images[i])) for i in self.basis]

    def is_invertible(self, images: Sequence[Element]) -> bool:
        if not self.basis:
            return True
        return det_is_unit_mod_p(self.induced_matrix(images), self.p)
