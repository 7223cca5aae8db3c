"""
Tests unitarios para duality.esakia.
Verifica el espacio dual, la condición de Esakia y la correspondencia
contravariante entre homomorfismos y morfismos de Esakia.
"""

import pytest
import pytest_check as check

from algebra.heyting import from_upsets
from algebra.homomorphisms import enumerate_homomorphisms, is_homomorphism
from algebra.isomorphism import are_algebras_isomorphic
from constructions.named import bool2, chain_algebra, diamond, x2_algebra
from duality.esakia import (
    EsakiaMap,
    EsakiaMorphismError,
    compose,
    dual_map_of_homomorphism,
    dual_space,
    element_masks,
    enumerate_esakia_morphisms,
    homomorphism_of_dual_map,
    image_is_upset,
    is_esakia_morphism,
    prime_filters,
    require_esakia_morphism,
    upset_inclusion,
)
from poset.enumeration import enumerate_posets_up_to
from poset.finite_poset import antichain, chain
from poset.isomorphism import are_isomorphic
from utils.limits import ResourceCapError


@pytest.fixture
def small_algebras():
    """Fixture que retorna álgebras chicas con dual registrado."""
    return [bool2(), chain_algebra(3), diamond(), x2_algebra()]


class TestDualSpace:
    """Tests para dual_space y prime_filters."""

    def test_dual_space_should_return_antichain_when_algebra_is_diamond(self):
        """Verifica que los filtros primos del diamante son ↑p y ↑q."""
        space = dual_space(diamond())

        check.equal(space.generators, (1, 2))
        check.equal(space.poset.covers, ())
        check.equal(space.poset.labels, ("↑p", "↑q"))

    def test_dual_space_should_order_by_inclusion_when_algebra_is_chain(self):
        """Verifica que ↑1 ⊆ ↑c1 en la cadena de 3."""
        space = dual_space(chain_algebra(3))

        check.equal(space.generators, (1, 2))
        check.is_true(space.poset.leq(1, 0))
        check.is_false(space.poset.leq(0, 1))

    def test_prime_filters_should_recover_poset_when_algebra_is_built_from_upsets(self):
        """Verifica (P*)_* ≅ P para todos los posets con hasta 4 puntos."""
        for poset in enumerate_posets_up_to(4):
            check.is_true(are_isomorphic(prime_filters(from_upsets(poset)), poset))

    def test_from_upsets_should_recover_algebra_when_dual_is_computed(self, small_algebras):
        """Verifica (A_*)* ≅ A sin usar la procedencia."""
        for algebra in small_algebras:
            check.is_true(are_algebras_isomorphic(from_upsets(prime_filters(algebra)), algebra))

    def test_element_masks_should_raise_when_space_does_not_match(self):
        """Verifica que un espacio ajeno se rechaza."""
        with pytest.raises(ValueError):
            element_masks(diamond(), chain(3))


class TestEsakiaCondition:
    """Tests para is_esakia_morphism."""

    def test_is_esakia_morphism_should_hold_when_map_is_identity(self):
        """Verifica que la identidad es un morfismo de Esakia."""
        check.is_true(is_esakia_morphism((0, 1, 2), chain(3), chain(3)).holds)

    def test_is_esakia_morphism_should_hold_when_map_is_constant_top(self):
        """Verifica que el mapa constante al tope cumple f[↑x] = ↑f(x)."""
        check.is_true(is_esakia_morphism((1, 1), chain(2), chain(2)).holds)

    def test_is_esakia_morphism_should_report_back_condition_when_map_is_constant_bottom(self):
        """Verifica que colapsar todo en el punto de abajo falla el retroceso."""
        verdict = is_esakia_morphism((0, 0), chain(2), chain(2))

        check.equal(verdict.reason, "condición de retroceso")
        check.equal(verdict.witness, {"pair": (0, 1)})

    def test_is_esakia_morphism_should_report_monotonicity_when_map_reverses_order(self):
        """Verifica que invertir la 2-cadena no es monótono."""
        verdict = is_esakia_morphism((1, 0), chain(2), chain(2))

        check.equal(verdict.reason, "monotonía")
        check.equal(verdict.witness, {"pair": (0, 1)})

    def test_is_esakia_morphism_should_report_domain_when_length_is_wrong(self):
        """Verifica el error de dominio."""
        verdict = is_esakia_morphism((0,), chain(2), chain(2))

        check.equal(verdict.reason, "dominio")

    def test_require_esakia_morphism_should_raise_when_map_fails(self):
        """Verifica que require_esakia_morphism lanza con el veredicto."""
        f = EsakiaMap(source=chain(2), target=chain(2), map=(0, 0))

        with pytest.raises(EsakiaMorphismError) as exc_info:
            require_esakia_morphism(f)

        check.equal(exc_info.value.verdict.reason, "condición de retroceso")


class TestEnumeration:
    """Tests para enumerate_esakia_morphisms."""

    def test_enumerate_esakia_morphisms_should_mirror_homomorphisms_when_algebras_are_small(
        self, small_algebras
    ):
        """Verifica |Hom(A, B)| = |Esa(B_*, A_*)| para pares de álgebras chicas."""
        for source in small_algebras:
            for target in small_algebras:
                homs = enumerate_homomorphisms(source, target)
                maps = enumerate_esakia_morphisms(target.dual, source.dual)
                check.equal(len(homs), len(maps), f"{source} -> {target}")

    def test_enumerate_esakia_morphisms_should_have_upset_images(self, small_algebras):
        """Verifica que la imagen de cada morfismo es un upset."""
        for source in small_algebras:
            for f in enumerate_esakia_morphisms(source.dual, x2_algebra().dual):
                check.is_true(image_is_upset(f))

    def test_enumerate_esakia_morphisms_should_raise_cap_error_when_poset_is_large(self):
        """Verifica el límite de puntos."""
        with pytest.raises(ResourceCapError) as exc_info:
            enumerate_esakia_morphisms(antichain(11), chain(1))

        check.equal(exc_info.value.cap, "max_morphism_points")


class TestDualMaps:
    """Tests para los pasajes entre homomorfismos y mapas duales."""

    def test_dual_map_of_homomorphism_should_be_esakia_when_homomorphism_is_valid(self):
        """Verifica que el dual de cada homomorfismo D₂* -> 𝟐 es de Esakia."""
        source, target = diamond(), bool2()
        for h in enumerate_homomorphisms(source, target):
            f = dual_map_of_homomorphism(source, target, h)
            check.is_true(is_esakia_morphism(f.map, f.source, f.target).holds)

    def test_dual_map_of_homomorphism_should_swap_injective_and_surjective(self):
        """Verifica h inyectivo ⇔ h_* sobreyectivo y h sobreyectivo ⇔ h_* inyectivo, duales ≤ 3 puntos."""
        algebras = [from_upsets(poset) for poset in enumerate_posets_up_to(3) if poset.n > 0]

        for source in algebras:
            for target in algebras:
                for h in enumerate_homomorphisms(source, target):
                    f = dual_map_of_homomorphism(source, target, h)
                    injective = len(set(h)) == source.m
                    surjective = set(h) == set(range(target.m))

                    check.equal(injective, f.is_surjective, f"{source!r} -> {target!r}: {h}")
                    check.equal(surjective, f.is_injective, f"{source!r} -> {target!r}: {h}")

    def test_homomorphism_of_dual_map_should_be_homomorphism_when_map_is_inclusion(self):
        """Verifica que la inclusión de un upset da un homomorfismo sobreyectivo."""
        poset = x2_algebra().dual
        f = upset_inclusion(poset, poset.up[1])
        domain, codomain, mapping = homomorphism_of_dual_map(f)

        check.is_true(is_homomorphism(domain, codomain, mapping))
        check.equal(set(mapping), set(range(codomain.m)))

    def test_upset_inclusion_should_raise_when_mask_is_not_upset(self):
        """Verifica que un conjunto que no es upset se rechaza."""
        with pytest.raises(ValueError):
            upset_inclusion(chain(2), 0b01)

    def test_compose_should_apply_first_then_second(self):
        """Verifica el orden de composición."""
        inclusion = upset_inclusion(chain(3), 0b110)
        collapse = EsakiaMap(source=chain(3), target=chain(1), map=(0, 0, 0))
        composed = compose(inclusion, collapse)

        check.equal(composed.map, (0, 0))
        check.equal(composed.source, inclusion.source)
        check.is_true(is_esakia_morphism(composed.map, composed.source, composed.target).holds)
