"""
The D(H;G)-action on the field algebra, the integral projection, the v/w
generators and the map Φ from A_{2n,2m} onto the observable algebra.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.double import QuantumDouble, build_double, integral_of
from app.core.elements import AlgebraElement
from app.core.errors import WindowError
from app.core.field import (FieldAlgebra, Generator, LatticeWindow, Monomial, build_field, d,
                            embed_field, r)
from app.core.groups import FiniteGroup, Subgroup, subgroup_closure
from app.core.hopf import ModuleAction
from app.core.linalg import span_basis, span_contains, span_rank, spans_equal
from app.core.scalars import ONE, rational
from app.core.twisted import IteratedAlgebra, build_iterated, embed_window
from app.core.verify import LawRecorder, LawResult, VerifyMode, check_law

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# The action γ
# ---------------------------------------------------------------------------

class GammaAction(ModuleAction):
    """
    γ of D(H;G) on F_H.

    Closed form on monomials: (h,g)·M = [g·P(M)·g^-1 = h]·M', where P(M) is
    the ordered ρ product and M' has δ entries g·g_x and ρ entries g·h_l·g^-1.
    """

    def __init__(self, double: QuantumDouble, field: FieldAlgebra):
        super().__init__(double, field, self.closed_form, name="gamma")
        self.double = double
        self.field = field
        self.group = field.group

    def closed_form(self, a, label: Monomial) -> Dict:
        h, g = a
        G = self.group
        D, R = label
        g_inv = G.inv(g)
        if G.mul(G.mul(g, self.field.twist_of(R)), g_inv) != h:
            return {}
        deltas = tuple(G.mul(g, x) for x in D)
        rhos = tuple(G.mul(G.mul(g, y), g_inv) for y in R)
        return {(deltas, rhos): ONE}

    def on_generator(self, a, gen: Generator) -> AlgebraElement:
        """(h,g)δ_f(x) = [h=e]δ_{gf}(x); (h,g)ρ_t(l) = [h = g t g^-1]ρ_h(l)."""
        h, g = a
        G = self.group
        F = self.field
        site = Fraction(gen.site, 2)
        if gen.kind == "d":
            return F.delta(G.mul(g, gen.element), site) if h == G.identity else F.zero()
        if G.mul(G.mul(g, gen.element), G.inv(g)) != h:
            return F.zero()
        return F.rho(h, site)

    def via_coproduct(self, a, word: Sequence[Generator]) -> AlgebraElement:
        """a·(X1···Xk) = Σ (a(1)·X1)(a(2)·(X2···Xk)), down to a·1 = ε(a)1."""
        F = self.field
        if not word:
            return F.unit().scale(self.double.basis_counit(a))
        first, rest = word[0], word[1:]
        out = F.zero()
        for (a1, a2), c in self.double.basis_comul(a).items():
            left = self.on_generator(a1, first)
            if not left:
                continue
            right = self.via_coproduct(a2, rest)
            if right:
                out = out + F.mul(left, right).scale(c)
        return out

    def verify_closed_form(self, mode: VerifyMode = VerifyMode()) -> LawResult:
        D, F = self.double.base, self.field
        m, tuples = mode.schedule([D.labels, F.labels], salt="gamma-oracle")
        return check_law(
            "action_closed_form_matches_coproduct", m, tuples,
            lambda a, x: self.act_label(a, x) == self.via_coproduct(a, F.word_of(x)),
            lambda a, x: [D.render_label(a), F.render_label(x)])


def gamma_action(field: FieldAlgebra, force: bool = False) -> GammaAction:
    return GammaAction(build_double(field.group, field.subgroup, force=force), field)


def act(gamma: GammaAction, a: Tuple[int, int], label: Monomial) -> AlgebraElement:
    return gamma.act_label(a, label)


# ---------------------------------------------------------------------------
# Projections
# ---------------------------------------------------------------------------

def project_z(F: FieldAlgebra, x: AlgebraElement) -> AlgebraElement:
    """
    Action of the integral: monomials with trivial ρ product survive and are
    averaged over simultaneous G-translation and G-conjugation.
    """
    G = F.group
    weight = rational(1, G.order)
    acc: Dict = {}
    for (D, R), c in x.coeffs.items():
        if F.twist_of(R) != G.identity:
            continue
        term = c * weight
        for g in G.elements:
            g_inv = G.inv(g)
            key = (tuple(G.mul(g, v) for v in D), tuple(G.mul(G.mul(g, y), g_inv) for y in R))
            acc[key] = acc[key] + term if key in acc else term
    return F.from_terms(acc)


def project_z_via_double(gamma: GammaAction, x: AlgebraElement) -> AlgebraElement:
    return gamma.act(integral_of(gamma.double).value, x)


def project_trivial_twist(F: FieldAlgebra, x: AlgebraElement) -> AlgebraElement:
    """Keep the monomials whose ordered ρ product is e."""
    e = F.group.identity
    return F.from_terms({label: c for label, c in x.coeffs.items() if F.twist_of(label[1]) == e})


# ---------------------------------------------------------------------------
# v and w
# ---------------------------------------------------------------------------

class VWGenerators:
    """
    v_h(x) = Σ_k ρ_{k h^-1 k^-1}(x-1/2) δ_k(x) ρ_{k h k^-1}(x+1/2) for h in H and
    w_g(l) = Σ_k δ_k(l-1/2) δ_{kg}(l+1/2), as normal-form field elements.
    """

    def __init__(self, field: FieldAlgebra, subgroup: Optional[Subgroup] = None):
        self.field = field
        self.group = field.group
        self.subgroup = subgroup or field.subgroup
        self._cache: Dict = {}

    def v(self, h: int, x: int) -> AlgebraElement:
        key = ("v", h, x)
        if key not in self._cache:
            w = self.field.window
            if not w.lo <= x <= w.hi:
                raise WindowError(f"v at site {x} outside window {w}")
            if h not in self.subgroup:
                raise WindowError(f"v label {self.group.name(h)} is not in {self.subgroup.label}")
            G, F = self.group, self.field
            total = F.zero()
            for k in G.elements:
                k_inv = G.inv(k)
                word = [r(G.mul(G.mul(k, G.inv(h)), k_inv), Fraction(2 * x - 1, 2)),
                        d(k, x),
                        r(G.mul(G.mul(k, h), k_inv), Fraction(2 * x + 1, 2))]
                total = total + F.normal_order(word)
            self._cache[key] = total
        return self._cache[key]

    def w(self, g: int, l: Fraction) -> AlgebraElement:
        l = Fraction(l)
        key = ("w", g, l)
        if key not in self._cache:
            win = self.field.window
            if (l * 2).denominator != 1 or (l * 2) % 2 != 1 or not win.lo < l < win.hi:
                raise WindowError(f"w at {l} needs both neighbouring sites inside {win}")
            G, F = self.group, self.field
            total = F.zero()
            for k in G.elements:
                total = total + F.normal_order([d(k, l - Fraction(1, 2)),
                                                d(G.mul(k, g), l + Fraction(1, 2))])
            self._cache[key] = total
        return self._cache[key]

    def truncated_v(self, h: int, x: int) -> AlgebraElement:
        """v_h(x) with the ρ at x+1/2 dropped."""
        G, F = self.group, self.field
        total = F.zero()
        for k in G.elements:
            word = [r(G.mul(G.mul(k, G.inv(h)), G.inv(k)), Fraction(2 * x - 1, 2)), d(k, x)]
            total = total + F.normal_order(word)
        return total

    def v_sites(self) -> List[int]:
        return list(range(self.field.window.lo, self.field.window.hi + 1))

    def w_sites(self) -> List[Fraction]:
        return [Fraction(2 * x + 1, 2) for x in range(self.field.window.lo, self.field.window.hi)]

    def all(self) -> Dict[Tuple, AlgebraElement]:
        out = {}
        for x in self.v_sites():
            for h in self.subgroup.members:
                out[("v", h, x)] = self.v(h, x)
        for l in self.w_sites():
            for g in self.group.elements:
                out[("w", g, l)] = self.w(g, l)
        return out


def vw_generators(field: FieldAlgebra, subgroup: Optional[Subgroup] = None) -> VWGenerators:
    return VWGenerators(field, subgroup)


def verify_vw_relations(vw: VWGenerators) -> List[LawResult]:
    """Projection, unitarity, neighbour commutation and locality of v and w."""
    F, G, H = vw.field, vw.group, vw.subgroup
    unit = F.unit()
    mul, star = F.mul, F.star
    results = []

    law = LawRecorder("w_projections", "exhaustive")
    for l in vw.w_sites():
        total = F.zero()
        for g1 in G.elements:
            w1 = vw.w(g1, l)
            total = total + w1
            law.record(star(w1) == w1, lambda g1=g1, l=l: ["star", G.name(g1), str(l)])
            for g2 in G.elements:
                expected = w1 if g1 == g2 else F.zero()
                law.record(mul(w1, vw.w(g2, l)) == expected,
                           lambda g1=g1, g2=g2, l=l: [G.name(g1), G.name(g2), str(l)])
        law.record(total == unit, lambda l=l: ["sum", str(l)])
    results.append(law.done())

    law = LawRecorder("v_unitary_representation", "exhaustive")
    for x in vw.v_sites():
        for h1 in H.members:
            v1 = vw.v(h1, x)
            law.record(mul(star(v1), v1) == unit and mul(v1, star(v1)) == unit,
                       lambda h1=h1, x=x: ["unitary", G.name(h1), str(x)])
            for h2 in H.members:
                law.record(mul(v1, vw.v(h2, x)) == vw.v(G.mul(h1, h2), x),
                           lambda h1=h1, h2=h2, x=x: [G.name(h1), G.name(h2), str(x)])
    results.append(law.done())

    law = LawRecorder("v_w_neighbour_commutation", "exhaustive")
    for x in vw.v_sites():
        for h in H.members:
            v = vw.v(h, x)
            for g in G.elements:
                right = Fraction(2 * x + 1, 2)
                if right in vw.w_sites():
                    law.record(mul(v, vw.w(g, right)) == mul(vw.w(G.mul(h, g), right), v),
                               lambda h=h, g=g, x=x: ["right", G.name(h), G.name(g), str(x)])
                left = Fraction(2 * x - 1, 2)
                if left in vw.w_sites():
                    law.record(mul(v, vw.w(g, left)) == mul(vw.w(G.mul(g, G.inv(h)), left), v),
                               lambda h=h, g=g, x=x: ["left", G.name(h), G.name(g), str(x)])
    results.append(law.done())

    law = LawRecorder("vw_locality", "exhaustive")
    gens = vw.all()
    keys = sorted(gens, key=lambda k: (k[0], k[2], k[1]))
    for k1, k2 in itertools.combinations(keys, 2):
        kinds = (k1[0], k2[0])
        if kinds == ("v", "v") and k1[2] == k2[2]:
            continue
        if kinds == ("w", "w") and k1[2] == k2[2]:
            continue
        if kinds == ("v", "w") and abs(Fraction(k1[2]) - k2[2]) == Fraction(1, 2):
            continue
        a, b = gens[k1], gens[k2]
        law.record(mul(a, b) == mul(b, a),
                   lambda k1=k1, k2=k2: [_render_key(G, k1), _render_key(G, k2)])
    results.append(law.done())
    return results


def _render_key(G: FiniteGroup, key) -> str:
    kind, label, site = key
    return f"{kind}[{G.name(label)}]@{site}"


def verify_vw_fixed(vw: VWGenerators) -> LawResult:
    """z fixes every v and w of the window."""
    G = vw.group
    gens = vw.all()
    return check_law("vw_fixed_by_integral", "exhaustive", [(k,) for k in sorted(
        gens, key=lambda k: (k[0], Fraction(k[2]), k[1]))],
                     lambda k: project_z(vw.field, gens[k]) == gens[k],
                     lambda k: [_render_key(G, k)])


def verify_truncated_v(vw: VWGenerators) -> LawResult:
    """
    z-invariance of boundary-truncated v generators, h != e.

    Expected to fail: the truncated element has a nontrivial ρ product.
    """
    G, H = vw.group, vw.subgroup
    x = vw.field.window.hi
    cases = [(h,) for h in H.members if h != G.identity]
    return check_law(
        "truncated_v_fixed_by_integral", "exhaustive", cases,
        lambda h: project_z(vw.field, vw.truncated_v(h, x)) == vw.truncated_v(h, x),
        lambda h: [G.name(h), str(x)])


def verify_trivial_twist(vw: VWGenerators) -> List[LawResult]:
    """z factors through the trivial-twist projection, which fixes δ and v."""
    F, G = vw.field, vw.group
    results = [check_law(
        "integral_factors_through_trivial_twist", "exhaustive", [(a,) for a in F.labels],
        lambda a: project_z(F, project_trivial_twist(F, F.element(a))) == project_z(F, F.element(a)),
        lambda a: [F.render_label(a)])]
    fixed = [F.delta(g, x) for x in vw.v_sites() for g in G.elements]
    fixed += [vw.v(h, x) for x in vw.v_sites() for h in vw.subgroup.members]
    results.append(check_law(
        "trivial_twist_fixes_delta_and_v", "exhaustive", [(i,) for i in range(len(fixed))],
        lambda i: project_trivial_twist(F, fixed[i]) == fixed[i],
        lambda i: [f"generator {i}"]))
    return results


def verify_chain_formula(G: FiniteGroup, n: int, max_basis: int = 100_000) -> LawResult:
    """
    With H = G on window [1, n]:
    z·(δ_{g1}(1)···δ_{gn}(n)) = (1/|G|)·w_{g1^-1 g2}(3/2)···w_{g(n-1)^-1 gn}(n-1/2).
    """
    H = subgroup_closure(G, G.elements, G.label)
    F = build_field(G, H, LatticeWindow(1, n), max_basis=max_basis)
    vw = VWGenerators(F)
    weight = rational(1, G.order)

    def holds(gs):
        lhs = project_z(F, F.normal_order([d(g, i + 1) for i, g in enumerate(gs)]))
        rhs = F.unit()
        for i in range(n - 1):
            c = G.mul(G.inv(gs[i]), gs[i + 1])
            rhs = F.mul(rhs, vw.w(c, Fraction(2 * i + 3, 2)))
        return lhs == rhs.scale(weight)

    cases = [(gs,) for gs in itertools.product(G.elements, repeat=n)]
    return check_law(f"chain_formula[n={n}]", "exhaustive", cases, holds,
                     lambda gs: [G.name(g) for g in gs])


# ---------------------------------------------------------------------------
# Spans
# ---------------------------------------------------------------------------

def _normalized(x: AlgebraElement) -> AlgebraElement:
    first = x.coeffs[min(x.coeffs)]
    return x.scale(ONE / first) if first != ONE else x


def algebra_closure(F: FieldAlgebra, generators: Sequence[AlgebraElement],
                    max_rounds: int = 32) -> List[AlgebraElement]:
    """Span of all products of generators, by rounds until the rank is stable."""
    gens = [g for g in generators if g]
    basis = span_basis([F.unit()] + gens)
    for round_no in range(max_rounds):
        candidates = {}
        for b in basis:
            for g in gens:
                p = F.mul(b, g)
                if p:
                    p = _normalized(p)
                    candidates[p] = p
        new = span_basis(basis + list(candidates.values()))
        logger.debug("closure round %d: rank %d -> %d", round_no, len(basis), len(new))
        if len(new) == len(basis):
            return new
        basis = new
    logger.warning("Closure did not stabilise after %d rounds", max_rounds)
    return basis


@dataclass
class ObservableSpace:
    """Two computable spans of the finite-window observable algebra."""

    window: LatticeWindow
    z_image: List[AlgebraElement]
    vw_span: List[AlgebraElement]
    field_dimension: int
    inclusion: bool = dc_field(init=False)

    def __post_init__(self):
        self.inclusion = span_contains(self.z_image, self.vw_span)

    @property
    def dimensions(self) -> Dict[str, int]:
        return {"field": self.field_dimension, "z_image": len(self.z_image),
                "vw_span": len(self.vw_span)}


def z_image_basis(F: FieldAlgebra) -> List[AlgebraElement]:
    images = {}
    e = F.group.identity
    for label in F.labels:
        if F.twist_of(label[1]) != e:
            continue
        p = project_z(F, F.element(label))
        images[p] = p
    return span_basis(list(images.values()))


def observable_span(F: FieldAlgebra, subgroup: Optional[Subgroup] = None) -> ObservableSpace:
    """z-image and v/w closure of a field window."""
    z_image = z_image_basis(F)
    vw = VWGenerators(F, subgroup)
    closure = algebra_closure(F, list(vw.all().values()))
    space = ObservableSpace(F.window, z_image, closure, F.dimension)
    logger.info("Observable spans on %s: z-image %d, vw-span %d", F.window,
                len(z_image), len(closure))
    return space


def verify_span_fixed(F: FieldAlgebra, span: Sequence[AlgebraElement]) -> LawResult:
    return check_law("vw_span_fixed_by_integral", "exhaustive", [(i,) for i in range(len(span))],
                     lambda i: project_z(F, span[i]) == span[i], lambda i: [f"basis {i}"])


def verify_z_projection(F: FieldAlgebra, mode: VerifyMode = VerifyMode(),
                        count: int = 200) -> List[LawResult]:
    """Idempotence, star closure and multiplicative closure of the z-image."""
    sample = VerifyMode(kind="sampled", samples=count, seed=mode.seed)
    m, tuples = sample.schedule([F.labels], salt="z-idem")
    results = [check_law(
        "integral_projection_idempotent", m, tuples,
        lambda a: project_z(F, project_z(F, F.element(a))) == project_z(F, F.element(a)),
        lambda a: [F.render_label(a)])]
    m, tuples = sample.schedule([F.labels], salt="z-star")
    results.append(check_law(
        "integral_projection_star", m, tuples,
        lambda a: F.star(project_z(F, F.element(a))) == project_z(F, F.star(F.element(a))),
        lambda a: [F.render_label(a)]))
    m, tuples = sample.schedule([F.labels, F.labels], salt="z-mult")

    def closed(a, b):
        p = F.mul(project_z(F, F.element(a)), project_z(F, F.element(b)))
        return project_z(F, p) == p

    results.append(check_law("integral_image_multiplicative", m, tuples, closed,
                             lambda a, b: [F.render_label(a), F.render_label(b)]))
    return results


# ---------------------------------------------------------------------------
# Φ: A_{2n,2m} → F_H
# ---------------------------------------------------------------------------

class PhiMap:
    """Basis tuple ↦ ascending product of v_{x_i}(i/2) (even i) and w_{x_i}(i/2) (odd i)."""

    def __init__(self, iterated: IteratedAlgebra, field: FieldAlgebra):
        if (iterated.n, iterated.m) != (2 * field.window.lo, 2 * field.window.hi):
            raise WindowError(f"A[{iterated.n},{iterated.m}] does not match field window "
                              f"{field.window}")
        self.iterated = iterated
        self.field = field
        self.vw = VWGenerators(field)
        self._cache: Dict = {}

    def factor_image(self, i: int, x: int) -> AlgebraElement:
        if i % 2 == 0:
            return self.vw.v(x, i // 2)
        return self.vw.w(x, Fraction(i, 2))

    def apply_label(self, label: Tuple) -> AlgebraElement:
        cached = self._cache.get(label)
        if cached is None:
            F = self.field
            result = None
            for i, x in zip(self.iterated.indices, label):
                img = self.factor_image(i, x)
                result = img if result is None else F.mul(result, img)
            self._cache[label] = cached = result
        return cached

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        out = self.field.zero()
        for label, c in x.coeffs.items():
            out = out + self.apply_label(label).scale(c)
        return out

    def image_basis(self) -> List[AlgebraElement]:
        return [self.apply_label(t) for t in self.iterated.labels]

    def verify(self, mode: VerifyMode = VerifyMode(),
               vw_span: Optional[Sequence[AlgebraElement]] = None) -> List[LawResult]:
        """Unital, multiplicative, star-compatible, injective, image = v/w span."""
        A, F = self.iterated, self.field
        names = A.render_label
        results = [check_law("phi_unital", "exhaustive", [()],
                             lambda: self.apply(A.unit()) == F.unit(), lambda: ["1"])]

        m, tuples = mode.schedule([A.labels] * 2, salt="phi-mult")
        results.append(check_law(
            "phi_multiplicative", m, tuples,
            lambda a, b: self.apply(A.mul(A.element(a), A.element(b)))
            == F.mul(self.apply_label(a), self.apply_label(b)),
            lambda a, b: [names(a), names(b)]))

        results.append(check_law(
            "phi_star", "exhaustive", [(a,) for a in A.labels],
            lambda a: self.apply(A.star(A.element(a))) == F.star(self.apply_label(a)),
            lambda a: [names(a)]))

        images = self.image_basis()
        rank = span_rank(images)
        injective = LawRecorder("phi_injective", "exhaustive")
        injective.record(rank == A.dimension, lambda: [f"rank {rank}", f"dim {A.dimension}"])
        results.append(injective.done())

        if vw_span is None:
            vw_span = algebra_closure(F, list(self.vw.all().values()))
        onto = LawRecorder("phi_image_equals_vw_span", "exhaustive")
        onto.record(spans_equal(images, vw_span),
                    lambda: [f"image rank {rank}", f"vw-span rank {len(vw_span)}"])
        results.append(onto.done())
        return results


def phi_iso(G: FiniteGroup, H: Subgroup, n: int, m: int, max_basis: int = 100_000) -> PhiMap:
    """
    Φ from A_{2n,2m} into F_H on observable window [n, m].

    Raises:
        WindowError: If n > m
        ResourceCapError: If the field window exceeds max_basis
    """
    iterated = build_iterated(G, H, 2 * n, 2 * m)
    F = build_field(G, H, LatticeWindow(n, m), max_basis=max_basis)
    return PhiMap(iterated, F)


def verify_phi_tower(inner: PhiMap, outer: PhiMap) -> LawResult:
    """Φ_outer ∘ embed = field inclusion ∘ Φ_inner on inner basis tuples."""
    embedding = embed_window(inner.iterated, outer.iterated)
    A = inner.iterated
    return check_law(
        "phi_tower_consistency", "exhaustive", [(a,) for a in A.labels],
        lambda a: outer.apply(embedding.apply_label(a))
        == embed_field(inner.field, outer.field, inner.apply_label(a)),
        lambda a: [A.render_label(a)])


def verify_inclusion_in_AG(G: FiniteGroup, H: Subgroup, window: LatticeWindow,
                           max_basis: int = 100_000) -> Tuple[LawResult, Dict[str, int]]:
    """
    The H observable span lies inside the G observable span, both computed
    in F_G on the same window.
    """
    whole = subgroup_closure(G, G.elements, G.label)
    F = build_field(G, whole, window, max_basis=max_basis)
    h_span = algebra_closure(F, list(VWGenerators(F, H).all().values()))
    g_span = algebra_closure(F, list(VWGenerators(F, whole).all().values()))
    law = LawRecorder("observable_inclusion", "exhaustive")
    law.record(span_contains(g_span, h_span),
               lambda: [f"H-span {len(h_span)}", f"G-span {len(g_span)}"])
    return law.done(), {"h_span": len(h_span), "g_span": len(g_span), "field": F.dimension}
