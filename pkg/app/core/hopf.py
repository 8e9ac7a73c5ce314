"""
Hopf structures and module actions on top of StructureAlgebra.
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, Optional

from app.core.algebra import FunctionAlgebra, GroupAlgebra, StructureAlgebra, Terms
from app.core.elements import AlgebraElement, Label
from app.core.groups import FiniteGroup, Subgroup
from app.core.scalars import ONE, ZERO, Scalar

logger = logging.getLogger(__name__)


class TensorAlgebra(StructureAlgebra):
    """A⊗B with the componentwise product and star, over pair labels."""

    def __init__(self, left: StructureAlgebra, right: StructureAlgebra):
        super().__init__()
        self.left = left
        self.right = right
        self.name = f"{left.name}(x){right.name}"
        self.has_star = left.has_star and right.has_star

    def enumerate_labels(self):
        return [(a, b) for a in self.left.labels for b in self.right.labels]

    def basis_product(self, a, b):
        acc = {}
        for l, c in self.left.product_terms(a[0], b[0]).items():
            for r, d in self.right.product_terms(a[1], b[1]).items():
                acc[(l, r)] = c * d
        return acc

    def unit_terms(self):
        return {(l, r): c * d for l, c in self.left.unit_terms().items()
                for r, d in self.right.unit_terms().items()}

    def basis_star(self, a):
        return {(l, r): c * d for l, c in self.left.basis_star(a[0]).items()
                for r, d in self.right.basis_star(a[1]).items()}

    def render_label(self, label):
        return f"{self.left.render_label(label[0])} (x) {self.right.render_label(label[1])}"


class HopfStructure(ABC):
    """Comultiplication, counit and antipode on a StructureAlgebra."""

    def __init__(self, base: StructureAlgebra):
        self.base = base
        self._square: Optional[TensorAlgebra] = None

    @abstractmethod
    def basis_comul(self, a: Label) -> Terms:
        """Δ(a) over pair labels."""

    @abstractmethod
    def basis_counit(self, a: Label) -> Scalar:
        """ε(a)."""

    @abstractmethod
    def basis_antipode(self, a: Label) -> Terms:
        """S(a)."""

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def square(self) -> TensorAlgebra:
        if self._square is None:
            self._square = TensorAlgebra(self.base, self.base)
        return self._square

    def comul(self, x: AlgebraElement) -> AlgebraElement:
        acc: Dict = {}
        for a, c in x.coeffs.items():
            for pair, v in self.basis_comul(a).items():
                acc[pair] = acc[pair] + c * v if pair in acc else c * v
        return AlgebraElement(acc, self.square.space)

    def counit(self, x: AlgebraElement) -> Scalar:
        total = ZERO
        for a, c in x.coeffs.items():
            total = total + c * self.basis_counit(a)
        return total

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        acc: Dict = {}
        for a, c in x.coeffs.items():
            for label, v in self.basis_antipode(a).items():
                acc[label] = acc[label] + c * v if label in acc else c * v
        return AlgebraElement(acc, self.base.space)


class GroupHopf(HopfStructure):
    """Group algebra with Δg = g⊗g, εg = 1, Sg = g^-1."""

    def __init__(self, G: FiniteGroup, H: Optional[Subgroup] = None):
        super().__init__(GroupAlgebra(G, H))
        self.group = G

    def basis_comul(self, a):
        return {(a, a): ONE}

    def basis_counit(self, a):
        return ONE

    def basis_antipode(self, a):
        return {self.group.inv(a): ONE}


class DualHopf(HopfStructure):
    """Functions on a group with Δδ_g = Σ_t δ_t⊗δ_{t^-1 g}."""

    def __init__(self, G: FiniteGroup, H: Optional[Subgroup] = None):
        super().__init__(FunctionAlgebra(G, H))
        self.group = G
        self.members = self.base.members

    def basis_comul(self, a):
        G = self.group
        return {(t, G.mul(G.inv(t), a)): ONE for t in self.members}

    def basis_counit(self, a):
        return ONE if a == self.group.identity else ZERO

    def basis_antipode(self, a):
        return {self.group.inv(a): ONE}


def group_hopf(G: FiniteGroup, H: Optional[Subgroup] = None) -> GroupHopf:
    return GroupHopf(G, H)


def dual_hopf(G: FiniteGroup, H: Optional[Subgroup] = None) -> DualHopf:
    return DualHopf(G, H)


# ---------------------------------------------------------------------------
# Pairing and arrow actions between CG and its dual
# ---------------------------------------------------------------------------

def pairing(g: int, s: int) -> Scalar:
    """<g, δ_s> = δ_s(g)."""
    return ONE if g == s else ZERO


def arrow_on_dual(dual: DualHopf, g: int, s: int) -> Terms:
    """g ⇀ δ_s = Σ δ_{s(1)} <g, δ_{s(2)}>."""
    acc = {}
    for (s1, s2), c in dual.basis_comul(s).items():
        v = c * pairing(g, s2)
        if v:
            acc[s1] = acc.get(s1, ZERO) + v
    return acc


def arrow_on_group(group: GroupHopf, s: int, g: int) -> Terms:
    """δ_s ⇀ g = Σ g(1) <δ_s, g(2)>."""
    acc = {}
    for (g1, g2), c in group.basis_comul(g).items():
        v = c * pairing(g2, s)
        if v:
            acc[g1] = acc.get(g1, ZERO) + v
    return acc


# ---------------------------------------------------------------------------
# Module actions
# ---------------------------------------------------------------------------

class ModuleAction:
    """
    A left action of a Hopf structure on an algebra.

    act_basis(a, x) returns the terms of a·x for basis labels.
    """

    def __init__(self, acting: HopfStructure, space: StructureAlgebra,
                 act_basis: Callable[[Label, Label], Terms], name: str = "action"):
        self.acting = acting
        self.space = space
        self.act_basis = act_basis
        self.name = name

    def act(self, a: AlgebraElement, x: AlgebraElement) -> AlgebraElement:
        acc: Dict = {}
        for al, c in a.coeffs.items():
            for xl, d in x.coeffs.items():
                cd = c * d
                for label, v in self.act_basis(al, xl).items():
                    acc[label] = acc[label] + cd * v if label in acc else cd * v
        return AlgebraElement(acc, self.space.space)

    def act_label(self, a: Label, x: Label) -> AlgebraElement:
        return AlgebraElement(self.act_basis(a, x), self.space.space)


def trivial_action(acting: HopfStructure, space: StructureAlgebra) -> ModuleAction:
    """a·x = ε(a)x."""
    def act_basis(a, x):
        e = acting.basis_counit(a)
        return {x: e} if e else {}
    return ModuleAction(acting, space, act_basis, name="trivial")

