"""
The Hopf *-algebra D(H;G): functions on a normal subgroup H crossed with
the group algebra of G.

Basis labels are pairs (h, g), h in H, g in G, in lexicographic order.
"""

import logging
from dataclasses import dataclass
from typing import List

from app.core.algebra import StructureAlgebra
from app.core.elements import AlgebraElement
from app.core.groups import FiniteGroup, Subgroup, conjugate
from app.core.hopf import HopfStructure
from app.core.scalars import ONE, ZERO, rational
from app.core.verify import LawRecorder, LawResult

logger = logging.getLogger(__name__)


class DoubleAlgebra(StructureAlgebra):
    """Algebra part of D(H;G)."""

    def __init__(self, G: FiniteGroup, H: Subgroup):
        super().__init__()
        self.group = G
        self.subgroup = H
        self.name = f"D({H.label};{G.label})"

    def enumerate_labels(self):
        return [(h, g) for h in self.subgroup.members for g in self.group.elements]

    def basis_product(self, a, b):
        """(h1,g1)(h2,g2) = [h2 = g1^-1 h1 g1] (h1, g1 g2)."""
        (h1, g1), (h2, g2) = a, b
        if conjugate(self.group, g1, h1) != h2:
            return {}
        return {(h1, self.group.mul(g1, g2)): ONE}

    def unit_terms(self):
        e = self.group.identity
        return {(h, e): ONE for h in self.subgroup.members}

    def basis_star(self, a):
        """(h,g)* = (g^-1 h g, g^-1)."""
        h, g = a
        return {(conjugate(self.group, g, h), self.group.inv(g)): ONE}

    def render_label(self, label):
        h, g = label
        return f"({self.group.name(h)},{self.group.name(g)})"


class QuantumDouble(HopfStructure):
    """D(H;G) with Δ(h,g) = Σ_t (t,g)⊗(t^-1 h,g), ε(h,g) = [h=e], S(h,g) = (g^-1 h^-1 g, g^-1)."""

    def __init__(self, G: FiniteGroup, H: Subgroup):
        super().__init__(DoubleAlgebra(G, H))
        self.group = G
        self.subgroup = H

    def basis_comul(self, a):
        h, g = a
        G = self.group
        return {((t, g), (G.mul(G.inv(t), h), g)): ONE for t in self.subgroup.members}

    def basis_counit(self, a):
        return ONE if a[0] == self.group.identity else ZERO

    def basis_antipode(self, a):
        h, g = a
        G = self.group
        return {(conjugate(G, g, G.inv(h)), G.inv(g)): ONE}

    def element(self, h: int, g: int) -> AlgebraElement:
        return self.base.element((h, g))


def build_double(G: FiniteGroup, H: Subgroup, force: bool = False) -> QuantumDouble:
    """
    Construct D(H;G).

    Args:
        G: Ambient group
        H: Subgroup of G, normal unless force is set
        force: Build even for non-normal H so verifiers can exhibit failures

    Raises:
        SubgroupError: If H is not normal and force is False
    """
    if not force:
        H.require_normal()
    elif not H.normal:
        logger.info("Force-building D(%s;%s) for a non-normal subgroup", H.label, G.label)
    D = QuantumDouble(G, H)
    logger.debug("Built %s with %d basis elements", D.name, H.order * G.order)
    return D


@dataclass(frozen=True)
class Integral:
    """z = (1/|G|) Σ_g (e,g)."""

    double: QuantumDouble
    value: AlgebraElement

    def verify(self) -> List[LawResult]:
        """a·z = z·a = ε(a)z on every basis a, plus z² = z and z* = z."""
        D = self.double
        A = D.base
        z = self.value
        law = LawRecorder("integral", "exhaustive")
        for a in A.labels:
            x = A.element(a)
            target = z.scale(D.basis_counit(a))
            law.record(A.mul(x, z) == target and A.mul(z, x) == target,
                       lambda a=a: [A.render_label(a)])
        results = [law.done()]

        idem = LawRecorder("integral_idempotent", "exhaustive")
        idem.record(A.mul(z, z) == z, lambda: ["z"])
        results.append(idem.done())

        star = LawRecorder("integral_star_invariant", "exhaustive")
        star.record(A.star(z) == z, lambda: ["z"])
        results.append(star.done())
        return results


def integral_of(D: QuantumDouble) -> Integral:
    G = D.group
    c = rational(1, G.order)
    value = D.base.from_terms({(G.identity, g): c for g in G.elements})
    return Integral(D, value)
