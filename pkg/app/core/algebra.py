"""
Structure-constant algebras.

A StructureAlgebra is a labeled basis plus basis-level product and star.
Everything else (bilinear product, conjugate-linear star, units) is derived
here. Concrete algebras subclass it the same way report renderers subclass
BaseTemplate.
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict, Hashable, List, Optional, Sequence

from app.core.elements import AlgebraElement, Label
from app.core.groups import FiniteGroup, Subgroup
from app.core.scalars import ONE, Scalar, conj

logger = logging.getLogger(__name__)

Terms = Dict[Hashable, Scalar]


class StructureAlgebra(ABC):
    """Abstract finite-dimensional algebra given on a basis."""

    name: str = "A"
    has_star: bool = True

    def __init__(self):
        self._labels: Optional[List[Label]] = None
        self._product_cache: Dict = {}

    # -- basis-level definitions ------------------------------------------

    @abstractmethod
    def enumerate_labels(self) -> List[Label]:
        """All basis labels in canonical order."""

    @abstractmethod
    def basis_product(self, a: Label, b: Label) -> Terms:
        """Structure constants of a*b."""

    @abstractmethod
    def unit_terms(self) -> Terms:
        """The unit as a linear combination of basis labels."""

    def basis_star(self, a: Label) -> Terms:
        raise NotImplementedError(f"{self.name} has no star structure")

    def render_label(self, label: Label) -> str:
        return str(label)

    # -- derived ------------------------------------------------------------

    @property
    def space(self) -> str:
        return self.name

    @property
    def labels(self) -> List[Label]:
        if self._labels is None:
            self._labels = list(self.enumerate_labels())
        return self._labels

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def element(self, label: Label, coeff: Scalar = ONE) -> AlgebraElement:
        return AlgebraElement({label: coeff}, self.space)

    def from_terms(self, terms: Terms) -> AlgebraElement:
        return AlgebraElement(terms, self.space)

    def zero(self) -> AlgebraElement:
        return AlgebraElement({}, self.space)

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self.unit_terms(), self.space)

    def product_terms(self, a: Label, b: Label) -> Terms:
        key = (a, b)
        cached = self._product_cache.get(key)
        if cached is None:
            cached = self.basis_product(a, b)
            self._product_cache[key] = cached
        return cached

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """Bilinear extension of basis_product."""
        x.check_space(y)
        acc: Dict = {}
        for a, c in x.coeffs.items():
            for b, d in y.coeffs.items():
                cd = c * d
                for label, v in self.product_terms(a, b).items():
                    term = cd * v
                    acc[label] = acc[label] + term if label in acc else term
        return AlgebraElement(acc, self.space)

    def product(self, factors: Sequence[AlgebraElement]) -> AlgebraElement:
        result = self.unit()
        for f in factors:
            result = self.mul(result, f)
        return result

    def star(self, x: AlgebraElement) -> AlgebraElement:
        """Conjugate-linear extension of basis_star."""
        acc: Dict = {}
        for a, c in x.coeffs.items():
            cc = conj(c)
            for label, v in self.basis_star(a).items():
                term = cc * v
                acc[label] = acc[label] + term if label in acc else term
        return AlgebraElement(acc, self.space)

    def render(self, x: AlgebraElement) -> str:
        return x.render(self.render_label)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} dim={self.dimension}>"


class TableAlgebra(StructureAlgebra):
    """
    An algebra frozen into explicit tables.

    Used to snapshot another algebra so single entries can be altered for
    mutation tests.
    """

    def __init__(self, name: str, labels: Sequence[Label], table: Dict, unit: Terms,
                 star: Optional[Dict] = None, render=None):
        super().__init__()
        self.name = name
        self._label_list = list(labels)
        self._table = dict(table)
        self._unit = dict(unit)
        self._star = star
        self.has_star = star is not None
        self._render = render

    @classmethod
    def snapshot(cls, algebra: StructureAlgebra, name: Optional[str] = None) -> "TableAlgebra":
        labels = algebra.labels
        table = {(a, b): dict(algebra.basis_product(a, b)) for a in labels for b in labels}
        star = {a: dict(algebra.basis_star(a)) for a in labels} if algebra.has_star else None
        return cls(name or algebra.name, labels, table, algebra.unit_terms(), star,
                   algebra.render_label)

    def corrupt(self, a: Label, b: Label, terms: Terms) -> "TableAlgebra":
        """Copy with the product a*b replaced."""
        table = dict(self._table)
        table[(a, b)] = dict(terms)
        return TableAlgebra(self.name + "~", self._label_list, table, self._unit, self._star,
                            self._render)

    def enumerate_labels(self):
        return self._label_list

    def basis_product(self, a, b):
        return self._table[(a, b)]

    def unit_terms(self):
        return self._unit

    def basis_star(self, a):
        return self._star[a]

    def render_label(self, label):
        return self._render(label) if self._render else str(label)


class GroupAlgebra(StructureAlgebra):
    """The group algebra of a subgroup (or the whole group), star g -> g^-1."""

    def __init__(self, G: FiniteGroup, H: Optional[Subgroup] = None, name: Optional[str] = None):
        super().__init__()
        self.group = G
        self.members = tuple(H.members) if H is not None else tuple(G.elements)
        self.name = name or f"C[{H.label if H is not None else G.label}]"

    def enumerate_labels(self):
        return list(self.members)

    def basis_product(self, a, b):
        return {self.group.mul(a, b): ONE}

    def unit_terms(self):
        return {self.group.identity: ONE}

    def basis_star(self, a):
        return {self.group.inv(a): ONE}

    def render_label(self, label):
        return self.group.name(label)


class FunctionAlgebra(StructureAlgebra):
    """Functions on a subset of group elements, basis of delta functions."""

    def __init__(self, G: FiniteGroup, H: Optional[Subgroup] = None, name: Optional[str] = None):
        super().__init__()
        self.group = G
        self.members = tuple(H.members) if H is not None else tuple(G.elements)
        self.name = name or f"C({H.label if H is not None else G.label})"

    def enumerate_labels(self):
        return list(self.members)

    def basis_product(self, a, b):
        return {a: ONE} if a == b else {}

    def unit_terms(self):
        return {g: ONE for g in self.members}

    def basis_star(self, a):
        return {a: ONE}

    def render_label(self, label):
        return f"d[{self.group.name(label)}]"


class MatrixAlgebra(StructureAlgebra):
    """Matrix units E_ij on an n-dimensional carrier; star is the adjoint."""

    def __init__(self, size: int, name: Optional[str] = None):
        super().__init__()
        self.size = size
        self.name = name or f"M{size}"

    def enumerate_labels(self):
        return [(i, j) for i in range(self.size) for j in range(self.size)]

    def basis_product(self, a, b):
        return {(a[0], b[1]): ONE} if a[1] == b[0] else {}

    def unit_terms(self):
        return {(i, i): ONE for i in range(self.size)}

    def basis_star(self, a):
        return {(a[1], a[0]): ONE}

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        by_row: Dict[int, list] = {}
        for (k, l), d in y.coeffs.items():
            by_row.setdefault(k, []).append((l, d))
        acc: Dict = {}
        for (i, j), c in x.coeffs.items():
            for l, d in by_row.get(j, ()):
                key = (i, l)
                term = c * d
                acc[key] = acc[key] + term if key in acc else term
        return AlgebraElement(acc, self.space)

    def identity(self) -> AlgebraElement:
        return self.unit()
