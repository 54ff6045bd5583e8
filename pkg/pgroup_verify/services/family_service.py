"""
Constructors for the group families and the small control groups.

All relations are entered in the printed orientation [x_i, x_j], i < j,
and converted once by PcPresentation.from_printed.
"""

from typing import Callable, Dict, Sequence, Tuple
import logging

from ..models.family import FamilyKind, FamilySpec
from ..models.presentation import Element, PcPresentation
from ..utils.validation import PreconditionError, PresentationValidator

logger = logging.getLogger(__name__)


def _power_of(d: int, m: int, exponent: int) -> Element:
    """Exponent vector of x_m^exponent (m 1-based)."""
    return tuple(exponent if k == m - 1 else 0 for k in range(d))


def family_a(p: int, n: int) -> PcPresentation:
    """
    Orders (p^n, p^4, p^4, p^2) with

    [x1,x2] = x2^{p^2}, [x1,x3] = x2^{p^2}, [x1,x4] = x3^{p^2},
    [x2,x3] = x1^{p^{n-2}}, [x2,x4] = x3^{p^2}, [x3,x4] = x2^{p^2}.
    """
    PresentationValidator.validate_prime(p)
    if n < 4:
        raise PreconditionError(f"family A needs n >= 4, got n = {n}")
    q = p**2
    printed = {
        (1, 2): _power_of(4, 2, q),
        (1, 3): _power_of(4, 2, q),
        (1, 4): _power_of(4, 3, q),
        (2, 3): _power_of(4, 1, p ** (n - 2)),
        (2, 4): _power_of(4, 3, q),
        (3, 4): _power_of(4, 2, q),
    }
    return PcPresentation.from_printed(p, (n, 4, 4, 2), printed)


def family_b(p: int) -> PcPresentation:
    """Orders (p^2, p^2, p^2, p^2, p); five generators, Phi(G) < Z(G)."""
    PresentationValidator.validate_prime(p)
    printed = {
        (1, 2): _power_of(5, 1, p),
        (1, 3): _power_of(5, 3, p),
        (1, 5): _power_of(5, 1, p),
        (2, 3): _power_of(5, 2, p),
        (2, 5): _power_of(5, 4, p),
        (3, 5): _power_of(5, 4, p),
    }
    return PcPresentation.from_printed(p, (2, 2, 2, 2, 1), printed)


def family_c(p: int) -> PcPresentation:
    """Orders (p^2, p^2, p^2, p^2); Z(G) = Phi(G) elementary abelian."""
    PresentationValidator.validate_prime(p)
    printed = {
        (1, 3): _power_of(4, 4, p),
        (1, 4): _power_of(4, 4, p),
        (2, 3): _power_of(4, 1, p),
        (2, 4): _power_of(4, 2, p),
        (3, 4): _power_of(4, 4, p),
    }
    return PcPresentation.from_printed(p, (2, 2, 2, 2), printed)


def heisenberg(p: int) -> PcPresentation:
    """Extraspecial group of order p^3: [x1, x2] = x3."""
    PresentationValidator.validate_prime(p)
    return PcPresentation.from_printed(p, (1, 1, 1), {(1, 2): (0, 0, 1)})


def heisenberg_times_cyclic(p: int) -> PcPresentation:
    """Heisenberg group times a detached central C_p (generator x4)."""
    PresentationValidator.validate_prime(p)
    return PcPresentation.from_printed(p, (1, 1, 1, 1), {(1, 2): (0, 0, 1, 0)})


def abelian(p: int, orders: Sequence[int]) -> PcPresentation:
    PresentationValidator.validate_prime(p)
    return PcPresentation(p, tuple(orders))


class FamilyFactory:
    """Builds the presentation described by a FamilySpec."""

    _builders: Dict[FamilyKind, Callable[[FamilySpec], PcPresentation]] = {
        FamilyKind.A: lambda spec: family_a(spec.p, spec.n if spec.n is not None else 4),
        FamilyKind.B: lambda spec: family_b(spec.p),
        FamilyKind.C: lambda spec: family_c(spec.p),
        FamilyKind.HEISENBERG: lambda spec: heisenberg(spec.p),
        FamilyKind.HEISENBERG_TIMES_CYCLIC: lambda spec: heisenberg_times_cyclic(spec.p),
        FamilyKind.ABELIAN: lambda spec: abelian(spec.p, spec.orders or (1,)),
    }

    @classmethod
    def build(cls, spec: FamilySpec) -> PcPresentation:
        builder = cls._builders.get(spec.family)
        if builder is None:
            raise ValueError(f"Family {spec.family.value!r} has no constructor")
        presentation = builder(spec)
        logger.debug(f"Built {spec.label}: {presentation!r}")
        return presentation

    @classmethod
    def available(cls) -> Tuple[str, ...]:
        return tuple(kind.value for kind in cls._builders)
