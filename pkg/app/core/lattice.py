"""
Matrix oracle for the field algebra: functions on spin configurations.

The carrier is functions on G^S, S the integer sites of the window plus one
virtual site hi+1. δ_g(x) multiplies by [σ_x = g]; ρ_h(l) sends ψ to
σ ↦ ψ(σ') with σ'_x = h^-1 σ_x for every x > l.
"""

import itertools
import logging
from typing import Dict, List, Sequence, Tuple

from app.core.algebra import MatrixAlgebra
from app.core.elements import AlgebraElement
from app.core.errors import ResourceCapError
from app.core.field import FieldAlgebra, Generator, Monomial, format_site
from app.core.linalg import span_rank
from app.core.scalars import ONE
from app.core.verify import LawRecorder, LawResult, VerifyMode, check_law

logger = logging.getLogger(__name__)


class LatticeRepresentation:
    """Monomials of a FieldAlgebra as matrices on configuration space."""

    def __init__(self, field: FieldAlgebra):
        self.field = field
        self.group = field.group
        self.n_sites = field.n_ints + 1
        self.configs: List[Tuple[int, ...]] = list(
            itertools.product(self.group.elements, repeat=self.n_sites))
        self.index = {cfg: i for i, cfg in enumerate(self.configs)}
        self.matrices = MatrixAlgebra(len(self.configs), name=f"End(C^{len(self.configs)})")
        # site codes of the carrier, the virtual site last
        self.site_codes = field.window.int_codes + (2 * (field.window.hi + 1),)

    @property
    def carrier(self) -> int:
        return len(self.configs)

    def _operator(self, rule) -> AlgebraElement:
        entries = {}
        for cfg in self.configs:
            target = rule(cfg)
            if target is not None:
                entries[(self.index[cfg], self.index[target])] = ONE
        return self.matrices.from_terms(entries)

    def generator(self, gen: Generator) -> AlgebraElement:
        G = self.group
        if gen.kind == "d":
            i = self.field.window.int_index(gen.site)
            return self._operator(lambda cfg: cfg if cfg[i] == gen.element else None)
        self.field.window.half_index(gen.site)
        h_inv = G.inv(gen.element)
        shifted = [k for k, c in enumerate(self.site_codes) if c > gen.site]

        def rule(cfg):
            out = list(cfg)
            for k in shifted:
                out[k] = G.mul(h_inv, out[k])
            return tuple(out)

        return self._operator(rule)

    def monomial(self, label: Monomial) -> AlgebraElement:
        """Image of a basis monomial, computed in closed form."""
        D, R = label
        G = self.group
        pref = self.field.prefixes(R)
        total_inv = G.inv(self.field.twist_of(R))
        pref_inv = [G.inv(p) for p in pref] + [total_inv]
        entries = {}
        for cfg in self.configs:
            if any(cfg[i] != D[i] for i in range(len(D))):
                continue
            target = tuple(G.mul(pref_inv[k], cfg[k]) for k in range(self.n_sites))
            entries[(self.index[cfg], self.index[target])] = ONE
        return self.matrices.from_terms(entries)

    def image(self, x: AlgebraElement) -> AlgebraElement:
        acc: Dict = {}
        for label, c in x.coeffs.items():
            for key, v in self.monomial(label).coeffs.items():
                acc[key] = acc[key] + c * v if key in acc else c * v
        return self.matrices.from_terms(acc)

    def word(self, word: Sequence[Generator]) -> AlgebraElement:
        M = self.matrices
        result = M.unit()
        for gen in word:
            result = M.mul(result, self.generator(gen))
        return result

    # -- checks ---------------------------------------------------------------

    def verify_relations(self) -> List[LawResult]:
        """The defining relation families as exact matrix identities."""
        F = self.field
        G, H = F.group, F.subgroup
        M = self.matrices
        w = F.window
        I = M.unit()
        gen = self.generator
        results = []

        law = LawRecorder("delta_orthogonal", "exhaustive")
        for c in w.int_codes:
            total = M.zero()
            for g1 in G.elements:
                total = total + gen(Generator("d", g1, c))
                for g2 in G.elements:
                    lhs = M.mul(gen(Generator("d", g1, c)), gen(Generator("d", g2, c)))
                    rhs = gen(Generator("d", g1, c)) if g1 == g2 else M.zero()
                    law.record(lhs == rhs, lambda g1=g1, g2=g2, c=c: [
                        G.name(g1), G.name(g2), format_site(c)])
            law.record(total == I, lambda c=c: ["sum", format_site(c)])
        results.append(law.done())

        law = LawRecorder("rho_group_law", "exhaustive")
        for c in w.half_codes:
            law.record(gen(Generator("r", G.identity, c)) == I, lambda c=c: ["e", format_site(c)])
            for h1 in H.members:
                for h2 in H.members:
                    lhs = M.mul(gen(Generator("r", h1, c)), gen(Generator("r", h2, c)))
                    law.record(lhs == gen(Generator("r", G.mul(h1, h2), c)),
                               lambda h1=h1, h2=h2, c=c: [G.name(h1), G.name(h2), format_site(c)])
        results.append(law.done())

        law = LawRecorder("delta_commute", "exhaustive")
        for c1, c2 in itertools.combinations(w.int_codes, 2):
            for g1 in G.elements:
                for g2 in G.elements:
                    a, b = gen(Generator("d", g1, c1)), gen(Generator("d", g2, c2))
                    law.record(M.mul(a, b) == M.mul(b, a),
                               lambda g1=g1, g2=g2, c1=c1, c2=c2: [
                                   G.name(g1), format_site(c1), G.name(g2), format_site(c2)])
        results.append(law.done())

        law = LawRecorder("rho_delta_exchange", "exhaustive")
        for l in w.half_codes:
            for x in w.int_codes:
                for h in H.members:
                    for g in G.elements:
                        lhs = M.mul(gen(Generator("r", h, l)), gen(Generator("d", g, x)))
                        moved = G.mul(h, g) if l < x else g
                        rhs = M.mul(gen(Generator("d", moved, x)), gen(Generator("r", h, l)))
                        law.record(lhs == rhs, lambda h=h, l=l, g=g, x=x: [
                            G.name(h), format_site(l), G.name(g), format_site(x)])
        results.append(law.done())

        law = LawRecorder("rho_exchange", "exhaustive")
        for l, l2 in itertools.permutations(w.half_codes, 2):
            for h1 in H.members:
                for h2 in H.members:
                    lhs = M.mul(gen(Generator("r", h1, l)), gen(Generator("r", h2, l2)))
                    if l > l2:
                        conj = G.mul(G.mul(G.inv(h2), h1), h2)
                        rhs = M.mul(gen(Generator("r", h2, l2)), gen(Generator("r", conj, l)))
                    else:
                        conj = G.mul(G.mul(h1, h2), G.inv(h1))
                        rhs = M.mul(gen(Generator("r", conj, l2)), gen(Generator("r", h1, l)))
                    law.record(lhs == rhs, lambda h1=h1, h2=h2, l=l, l2=l2: [
                        G.name(h1), format_site(l), G.name(h2), format_site(l2)])
        results.append(law.done())

        law = LawRecorder("lattice_star", "exhaustive")
        for c in w.int_codes:
            for g in G.elements:
                op = gen(Generator("d", g, c))
                law.record(M.star(op) == op, lambda g=g, c=c: [G.name(g), format_site(c)])
        for c in w.half_codes:
            for h in H.members:
                law.record(M.star(gen(Generator("r", h, c))) == gen(Generator("r", G.inv(h), c)),
                           lambda h=h, c=c: [G.name(h), format_site(c)])
        results.append(law.done())
        return results

    def verify_homomorphism(self, mode: VerifyMode = VerifyMode()) -> List[LawResult]:
        """Monomial images agree with generator words and multiply like F."""
        F = self.field
        names = F.render_label
        m, tuples = mode.schedule([F.labels], salt="lattice-word")
        results = [check_law(
            "monomial_matches_word", m, tuples,
            lambda a: self.monomial(a) == self.word(F.word_of(a)),
            lambda a: [names(a)])]
        m, tuples = mode.schedule([F.labels] * 2, salt="lattice-hom")
        results.append(check_law(
            "lattice_homomorphism", m, tuples,
            lambda a, b: self.image(F.mul(F.element(a), F.element(b)))
            == self.matrices.mul(self.monomial(a), self.monomial(b)),
            lambda a, b: [names(a), names(b)]))
        return results

    def faithfulness_rank(self) -> int:
        return span_rank([self.monomial(label) for label in self.field.labels])


def lattice_representation(field: FieldAlgebra, max_carrier: int = 4096) -> LatticeRepresentation:
    """
    Build the configuration-space oracle for a field algebra.

    Raises:
        ResourceCapError: If |G|^(sites+1) exceeds max_carrier
    """
    size = field.group.order ** (field.n_ints + 1)
    if size > max_carrier:
        raise ResourceCapError(f"Lattice carrier would have dimension {size} (cap {max_carrier})")
    rep = LatticeRepresentation(field)
    logger.info("Lattice representation of %s on %d configurations", field.name, size)
    return rep
