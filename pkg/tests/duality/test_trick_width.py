"""
Tests unitarios para duality.trick_width.
Verifica la extracción de la copia de ↑f(⊥) y el reporte de cada hipótesis.
"""

import pytest
import pytest_check as check

from constructions.towers import doubled_fiber_map, r_n_partition, x_n_tower
from duality.esakia import EsakiaMap, EsakiaMorphismError, compose, upset_inclusion
from duality.partitions import quotient_map, quotient_space
from duality.trick_width import TrickWidthError, trick_width_subposet
from poset.finite_poset import FinitePoset, antichain, chain


@pytest.fixture
def doubled_tower_map():
    """
    Fixture que retorna f: Y -> X con X la torre X₂ de 3 copias con ⊤ e Y
    el upset ↑x2 con el punto x3 duplicado.
    """
    tower = x_n_tower(2, 3, with_top=True)
    inclusion = upset_inclusion(tower.poset, tower.poset.up[tower.point("x2")])
    doubled = doubled_fiber_map(inclusion.source, inclusion.source.labels.index("x3"))
    return compose(doubled, inclusion)


@pytest.fixture
def split_fiber_map():
    """Fixture que retorna r < p, q < t sobre la 3-cadena con p, q en la misma fibra."""
    domain = FinitePoset.from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], labels=["r", "p", "q", "t"])
    return EsakiaMap(source=domain, target=chain(3), map=(0, 1, 1, 2))


class TestTrickWidthSubposet:
    """Tests para trick_width_subposet."""

    def test_trick_width_subposet_should_skip_doubled_point_when_fiber_is_a_chain(
        self, doubled_tower_map
    ):
        """Verifica que Z elige el máximo de cada fibra y cubre ↑f(⊥) sin ⊤."""
        result = trick_width_subposet(doubled_tower_map, 2)
        doubled_point = doubled_tower_map.source.n - 1

        check.equal(len(result.image), 9)
        check.equal(len(result.subset), 9)
        check.is_not_in(doubled_point, result.subset)
        check.equal(result.to_dict()["image"], list(result.image))

    def test_trick_width_subposet_should_return_chain_when_map_is_identity(self):
        """Verifica el caso trivial de la identidad sobre la 3-cadena."""
        f = EsakiaMap(source=chain(3), target=chain(3), map=(0, 1, 2))
        result = trick_width_subposet(f, 1)

        check.equal(result.subset, (0, 1))
        check.equal(result.image, (0, 1))

    def test_trick_width_subposet_should_return_root_only_when_image_of_root_is_maximum(self):
        """Verifica que si f(⊥) es el máximo de X, Z se reduce a {⊥}."""
        f = EsakiaMap(source=chain(2), target=chain(2), map=(1, 1))
        result = trick_width_subposet(f, 1)

        check.equal(result.subset, (0,))
        check.equal(result.image, (1,))

    def test_trick_width_subposet_should_raise_when_fiber_is_not_a_chain(self, split_fiber_map):
        """Verifica el testigo de una fibra con dos puntos incomparables."""
        with pytest.raises(TrickWidthError) as exc_info:
            trick_width_subposet(split_fiber_map, 1)

        check.equal(exc_info.value.hypothesis, "fibra no es cadena")
        check.equal(exc_info.value.witness["pair"], (1, 2))

    def test_trick_width_subposet_should_raise_when_domain_has_no_minimum(self):
        """Verifica que un dominio sin mínimo viola la primera hipótesis."""
        f = EsakiaMap(source=antichain(2), target=chain(1), map=(0, 0))

        with pytest.raises(TrickWidthError) as exc_info:
            trick_width_subposet(f, 1)

        check.equal(exc_info.value.hypothesis, "mínimo")

    def test_trick_width_subposet_should_raise_antichain_when_quotient_is_a_chain(self):
        """Verifica que el cociente de la torre X₂ por R₂ no tiene anticadenas de 2."""
        tower = x_n_tower(2, 2, with_top=True)
        partition = r_n_partition(tower)
        f = EsakiaMap(
            source=tower.poset, target=quotient_space(partition), map=quotient_map(partition)
        )

        with pytest.raises(TrickWidthError) as exc_info:
            trick_width_subposet(f, 2)

        check.equal(exc_info.value.hypothesis, "anticadena")

    def test_trick_width_subposet_should_raise_when_map_is_not_esakia(self):
        """Verifica que primero se exige la condición de Esakia."""
        f = EsakiaMap(source=chain(2), target=chain(2), map=(0, 0))

        with pytest.raises(EsakiaMorphismError):
            trick_width_subposet(f, 1)
