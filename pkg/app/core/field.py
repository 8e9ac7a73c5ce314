"""
The truncated field algebra F_H(Λ) of a G-spin chain.

Sites are stored as doubled integers: integer site x has code 2x and
half-integer site l has the odd code 2l. For an observable window [lo, hi]
the field window holds integer sites lo..hi and half sites lo-1/2..hi+1/2.

A basis monomial is a pair (deltas, rhos): one G element per integer site
and one H element per half site, read as
δ_{g_lo}(lo)···δ_{g_hi}(hi)·ρ_{h_0}(lo-1/2)···ρ_{h_k}(hi+1/2).
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from app.core.algebra import StructureAlgebra
from app.core.elements import AlgebraElement
from app.core.errors import ResourceCapError, SubgroupError, WindowError
from app.core.groups import FiniteGroup, Subgroup
from app.core.scalars import ONE

logger = logging.getLogger(__name__)

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
Site = Union[int, Fraction, str]


def site_code(site: Site) -> int:
    """Doubled code of a site given as int, Fraction or 'p/2' string."""
    value = Fraction(site) if not isinstance(site, Fraction) else site
    doubled = value * 2
    if doubled.denominator != 1:
        raise WindowError(f"Site {site} is neither an integer nor a half-integer")
    return int(doubled)


def format_site(code: int) -> str:
    return str(code // 2) if code % 2 == 0 else f"{code}/2"


@dataclass(frozen=True)
class LatticeWindow:
    """Observable window [lo, hi] and its flanked field window."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise WindowError(f"Empty window [{self.lo},{self.hi}]")

    @property
    def int_codes(self) -> Tuple[int, ...]:
        return tuple(2 * x for x in range(self.lo, self.hi + 1))

    @property
    def half_codes(self) -> Tuple[int, ...]:
        return tuple(range(2 * self.lo - 1, 2 * self.hi + 2, 2))

    def int_index(self, code: int) -> int:
        if code % 2 or not self.lo <= code // 2 <= self.hi:
            raise WindowError(f"Integer site {format_site(code)} outside window [{self.lo},{self.hi}]")
        return code // 2 - self.lo

    def half_index(self, code: int) -> int:
        if code % 2 == 0 or not 2 * self.lo - 1 <= code <= 2 * self.hi + 1:
            raise WindowError(f"Half site {format_site(code)} outside field window "
                              f"[{self.lo}-1/2,{self.hi}+1/2]")
        return (code - (2 * self.lo - 1)) // 2

    def contains(self, other: "LatticeWindow") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


class Generator(NamedTuple):
    """δ_g(x) with kind 'd' or ρ_h(l) with kind 'r'; site is a doubled code."""

    kind: str
    element: int
    site: int


def d(g: int, x: Site) -> Generator:
    return Generator("d", g, site_code(x))


def r(h: int, l: Site) -> Generator:
    return Generator("r", h, site_code(l))


def field_basis_size(G: FiniteGroup, H: Subgroup, window: LatticeWindow) -> int:
    k = window.hi - window.lo + 1
    return G.order ** k * H.order ** (k + 1)


class FieldAlgebra(StructureAlgebra):
    """F_H on a finite window with normal-ordered monomial basis."""

    def __init__(self, G: FiniteGroup, H: Subgroup, window: LatticeWindow):
        super().__init__()
        self.group = G
        self.subgroup = H
        self.window = window
        self.n_ints = len(window.int_codes)
        self.n_halves = len(window.half_codes)
        self.name = f"F({H.label};{G.label}){window}"
        self._merge_cache: Dict = {}
        self._prefix_cache: Dict = {}
        self._e_rhos = (G.identity,) * self.n_halves

    # -- label arithmetic ---------------------------------------------------

    def prefixes(self, rhos: Tuple[int, ...]) -> Tuple[int, ...]:
        """P_i = ordered product of the ρ entries below integer site i."""
        cached = self._prefix_cache.get(rhos)
        if cached is None:
            G = self.group
            acc = G.identity
            out = []
            for i in range(self.n_ints):
                acc = G.mul(acc, rhos[i])
                out.append(acc)
            cached = tuple(out)
            self._prefix_cache[rhos] = cached
        return cached

    def require_rho_label(self, h: int):
        """
        Check that ρ_h is a generator of this algebra.

        Raises:
            SubgroupError: If h is not in H, so ρ_h is not a generator
        """
        if h not in self.subgroup:
            raise SubgroupError(f"rho label {self.group.name(h)} is not in {self.subgroup.label}")

    def twist_of(self, rhos: Tuple[int, ...]) -> int:
        """Ordered product of all ρ entries."""
        return self.group.product(rhos)

    def merge_rhos(self, left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
        """Normal form of (ρ block)·(ρ block)."""
        key = (left, right)
        cached = self._merge_cache.get(key)
        if cached is None:
            G = self.group
            e = G.identity
            out = list(left)
            for j, b in enumerate(right):
                if b == e:
                    continue
                b_inv = G.inv(b)
                for k in range(j + 1, self.n_halves):
                    out[k] = G.mul(G.mul(b_inv, out[k]), b)
                out[j] = G.mul(out[j], b)
            cached = tuple(out)
            self._merge_cache[key] = cached
        return cached

    def rho_times(self, rhos: Tuple[int, ...], h: int, j: int) -> Tuple[int, ...]:
        """(ρ block)·ρ_h at half index j."""
        single = list(self._e_rhos)
        single[j] = h
        return self.merge_rhos(rhos, tuple(single))

    # -- StructureAlgebra ---------------------------------------------------

    def enumerate_labels(self):
        G, H = self.group, self.subgroup
        deltas = itertools.product(G.elements, repeat=self.n_ints)
        rhos = list(itertools.product(H.members, repeat=self.n_halves))
        return [(D, R) for D in deltas for R in rhos]

    def basis_product(self, a: Monomial, b: Monomial):
        label = self.monomial_product(a, b)
        return {label: ONE} if label is not None else {}

    def monomial_product(self, a: Monomial, b: Monomial) -> Optional[Monomial]:
        (D1, R1), (D2, R2) = a, b
        G = self.group
        pref = self.prefixes(R1)
        for i in range(self.n_ints):
            if D1[i] != G.mul(pref[i], D2[i]):
                return None
        return D1, self.merge_rhos(R1, R2)

    def required_deltas(self, a: Monomial) -> Tuple[int, ...]:
        """The only right-factor delta config with a nonzero product."""
        D1, R1 = a
        G = self.group
        pref = self.prefixes(R1)
        return tuple(G.mul(G.inv(pref[i]), D1[i]) for i in range(self.n_ints))

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        x.check_space(y)
        by_deltas: Dict[Tuple[int, ...], List] = {}
        for (D2, R2), c in y.coeffs.items():
            by_deltas.setdefault(D2, []).append((R2, c))
        acc: Dict = {}
        for a, c in x.coeffs.items():
            matches = by_deltas.get(self.required_deltas(a))
            if not matches:
                continue
            D1, R1 = a
            for R2, d in matches:
                key = (D1, self.merge_rhos(R1, R2))
                term = c * d
                acc[key] = acc[key] + term if key in acc else term
        return AlgebraElement(acc, self.space)

    def unit_terms(self):
        return {(D, self._e_rhos): ONE
                for D in itertools.product(self.group.elements, repeat=self.n_ints)}

    def basis_star(self, a: Monomial):
        """Reverse the word, invert the ρ's, and normal-order again."""
        D, R = a
        G = self.group
        rhos = self._e_rhos
        for j in range(self.n_halves - 1, -1, -1):
            if R[j] != G.identity:
                rhos = self.rho_times(rhos, G.inv(R[j]), j)
        pref = self.prefixes(rhos)
        deltas = tuple(G.mul(pref[i], D[i]) for i in range(self.n_ints))
        return {(deltas, rhos): ONE}

    def render_label(self, label: Monomial) -> str:
        D, R = label
        G = self.group
        tokens = [f"d[{G.name(g)}]@{format_site(c)}" for g, c in zip(D, self.window.int_codes)]
        tokens += [f"r[{G.name(h)}]@{format_site(c)}"
                   for h, c in zip(R, self.window.half_codes) if h != G.identity]
        return "".join(tokens)

    # -- generators -----------------------------------------------------------

    def _expand(self, partial: Dict[int, int], rhos: Tuple[int, ...]) -> Dict:
        slots = [[partial[i]] if i in partial else list(self.group.elements)
                 for i in range(self.n_ints)]
        return {(D, rhos): ONE for D in itertools.product(*slots)}

    def delta(self, g: int, x: Site) -> AlgebraElement:
        """δ_g(x) as an element."""
        i = self.window.int_index(site_code(x))
        return self.from_terms(self._expand({i: g}, self._e_rhos))

    def rho(self, h: int, l: Site) -> AlgebraElement:
        """ρ_h(l) as an element."""
        self.require_rho_label(h)
        j = self.window.half_index(site_code(l))
        rhos = list(self._e_rhos)
        rhos[j] = h
        return self.from_terms(self._expand({}, tuple(rhos)))

    def generator(self, gen: Generator) -> AlgebraElement:
        if gen.kind == "d":
            return self.delta(gen.element, Fraction(gen.site, 2))
        return self.rho(gen.element, Fraction(gen.site, 2))

    def word_of(self, label: Monomial) -> List[Generator]:
        """The generator word of a basis monomial (trivial ρ's omitted)."""
        D, R = label
        word = [Generator("d", g, c) for g, c in zip(D, self.window.int_codes)]
        word += [Generator("r", h, c) for h, c in zip(R, self.window.half_codes)
                 if h != self.group.identity]
        return word

    # -- normal ordering ------------------------------------------------------

    def normal_order(self, word: Sequence[Generator], strategy: str = "left") -> AlgebraElement:
        """
        Reduce a generator word to normal form.

        Args:
            word: Generators in product order
            strategy: 'left' absorbs generators left to right, 'right'
                absorbs them right to left

        Raises:
            WindowError: If a generator lies outside the field window
            SubgroupError: If a ρ generator carries a label outside H
        """
        G = self.group
        ints, halves = self.window, self.window
        deltas: Dict[int, int] = {}
        rhos = self._e_rhos
        sequence = list(word) if strategy == "left" else list(reversed(word))

        for gen in sequence:
            if gen.kind == "d":
                i = ints.int_index(gen.site)
                value = gen.element
                if strategy == "left":
                    value = G.mul(self.prefixes(rhos)[i], value)
                if deltas.get(i, value) != value:
                    return self.zero()
                deltas[i] = value
            elif gen.kind == "r":
                self.require_rho_label(gen.element)
                j = halves.half_index(gen.site)
                if strategy == "left":
                    rhos = self.rho_times(rhos, gen.element, j)
                else:
                    h = gen.element
                    deltas = {i: (G.mul(h, g) if i >= j else g) for i, g in deltas.items()}
                    below = G.product(rhos[:j])
                    conj_h = G.mul(G.mul(G.inv(below), h), below)
                    new = list(rhos)
                    new[j] = G.mul(conj_h, rhos[j])
                    rhos = tuple(new)
            else:
                raise ValueError(f"Unknown generator kind '{gen.kind}'")
        return self.from_terms(self._expand(deltas, rhos))

    def product_twist(self, label: Monomial) -> int:
        return self.twist_of(label[1])


def build_field(G: FiniteGroup, H: Subgroup, window: LatticeWindow, max_basis: int = 100_000,
                force: bool = False) -> FieldAlgebra:
    """
    Construct F_H(Λ) on the flanked field window of an observable window.

    Raises:
        SubgroupError: If H is not normal and force is False
        ResourceCapError: If the basis would exceed max_basis
    """
    if not force:
        H.require_normal()
    size = field_basis_size(G, H, window)
    if size > max_basis:
        raise ResourceCapError(
            f"Field algebra on window {window} would have {size} basis monomials "
            f"(cap {max_basis})")
    F = FieldAlgebra(G, H, window)
    logger.info("Built %s with %d basis monomials", F.name, size)
    return F


def normal_order(F: FieldAlgebra, word: Sequence[Generator], strategy: str = "left") -> AlgebraElement:
    return F.normal_order(word, strategy)


def star_field(F: FieldAlgebra, x: AlgebraElement) -> AlgebraElement:
    return F.star(x)


def embed_field(inner: FieldAlgebra, outer: FieldAlgebra, x: AlgebraElement) -> AlgebraElement:
    """
    Include a field element of a smaller window into a larger one.

    New integer sites are summed over G, new half sites carry ρ_e.
    """
    wi, wo = inner.window, outer.window
    if not wo.contains(wi):
        raise WindowError(f"Window {wi} is not inside {wo}")
    G = outer.group
    offset_int = wi.lo - wo.lo
    offset_half = wi.lo - wo.lo
    out: Dict = {}
    for (D, R), c in x.coeffs.items():
        rhos = list(outer._e_rhos)
        for j, h in enumerate(R):
            rhos[j + offset_half] = h
        partial = {i + offset_int: g for i, g in enumerate(D)}
        for label in outer._expand(partial, tuple(rhos)):
            out[label] = out[label] + c if label in out else c
    return outer.from_terms(out)
