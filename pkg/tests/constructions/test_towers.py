"""
Tests unitarios para constructions.towers.
Verifica etiquetas, medidas y corrección de las particiones de las torres.
"""

import pytest
import pytest_check as check

from algebra.heyting import from_upsets
from constructions.towers import (
    d2_partition,
    d2_tower_labeled,
    doubled_fiber_map,
    r_n_partition,
    x_n_tower,
)
from duality.esakia import is_esakia_morphism
from duality.partitions import (
    CorrectPartition,
    is_correct_partition,
    partition_to_subalgebra,
    quotient_space,
)
from poset.isomorphism import are_isomorphic


class TestXnTower:
    """Tests para x_n_tower y r_n_partition."""

    def test_x_n_tower_should_have_five_points_when_single_copy_with_top(self):
        """Verifica los puntos ⊥, x1, x2, y1 y ⊤."""
        tower = x_n_tower(2, 1, with_top=True)

        check.equal(tower.names, ("⊥", "x1", "x2", "y1", "⊤"))
        check.equal(tower.copy_index, (0, 0, 0, 0, -1))

    def test_x_n_tower_should_label_upper_copy_with_staggered_indices(self):
        """Verifica que la copia 1 de X₂ empieza en y2 y termina en x4."""
        tower = x_n_tower(2, 2, with_top=False)

        check.equal(tower.names[4:], ("y2", "x3", "x4", "y3"))
        check.is_true(tower.poset.leq(tower.point("x2"), tower.point("y2")))

    def test_x_n_tower_should_have_depth_two_per_copy_plus_top(self):
        """Verifica profundidad 2k + 1."""
        for n in (2, 3):
            for k in (1, 2, 3):
                check.equal(x_n_tower(n, k, with_top=True).poset.depth, 2 * k + 1)

    def test_r_n_partition_should_be_correct_for_small_towers(self):
        """Verifica la condición de retroceso con y sin ⊤."""
        for n in (2, 3):
            for k in (2, 3, 4):
                for with_top in (True, False):
                    partition = r_n_partition(x_n_tower(n, k, with_top=with_top))
                    check.is_true(is_correct_partition(partition).holds, (n, k, with_top))

    def test_r_n_partition_should_pair_x_and_y_labels_when_tower_has_top(self):
        """Verifica las clases {x_k, y_k} y {x_Kn, ⊤}."""
        tower = x_n_tower(2, 2, with_top=True)
        partition = r_n_partition(tower)
        named = {tuple(tower.names[p] for p in block) for block in partition.classes}

        check.equal(named, {("⊥",), ("x1", "y1"), ("x2", "y2"), ("x3", "y3"), ("x4", "⊤")})

    def test_r_n_partition_should_shrink_quotient_by_paired_points(self):
        """Verifica que el cociente pierde un punto por cada clase de dos."""
        tower = x_n_tower(2, 3, with_top=True)
        partition = r_n_partition(tower)
        pairs = sum(1 for block in partition.classes if len(block) == 2)

        check.equal(quotient_space(partition).n, tower.poset.n - pairs)

    def test_r_n_partition_should_induce_proper_subalgebra(self):
        """Verifica que la subálgebra asociada es propia."""
        tower = x_n_tower(2, 3, with_top=True)
        algebra = from_upsets(tower.poset)
        handle = partition_to_subalgebra(algebra, r_n_partition(tower))

        check.less(handle.size, algebra.m)
        check.is_true(handle.is_closed())

    def test_point_should_raise_key_error_when_name_is_unknown(self):
        """Verifica el error para un nombre inexistente."""
        with pytest.raises(KeyError):
            x_n_tower(2, 1).point("y9")


class TestD2Tower:
    """Tests para d2_tower_labeled y d2_partition."""

    def test_d2_partition_should_stagger_classes_when_tower_has_top(self):
        """Verifica {ℓ0}, {r0, ℓ1}, {r1, ℓ2} y {r2, ⊤} para tres copias."""
        tower = d2_tower_labeled(3, with_top=True)
        partition = d2_partition(tower)

        check.equal(partition.classes, ((0,), (1, 2), (3, 4), (5, 6)))

    def test_d2_partition_should_be_correct_for_small_towers(self):
        """Verifica la condición de retroceso con y sin ⊤."""
        for k in (2, 3, 4):
            for with_top in (True, False):
                partition = d2_partition(d2_tower_labeled(k, with_top=with_top))
                check.is_true(is_correct_partition(partition).holds, (k, with_top))

    def test_d2_partition_should_fail_back_condition_when_last_right_point_is_alone(self):
        """Verifica que dejar r2 solo en la torre con ⊤ no es correcto."""
        tower = d2_tower_labeled(3, with_top=True)
        partition = CorrectPartition.from_classes(tower.poset, [[0], [1, 2], [3, 4], [5], [6]])

        check.is_false(is_correct_partition(partition).holds)

    def test_d2_partition_should_recover_tower_when_partition_is_identity(self):
        """Verifica que el cociente por la identidad es la torre."""
        tower = d2_tower_labeled(2, with_top=True)

        check.is_true(are_isomorphic(quotient_space(CorrectPartition.identity(tower.poset)), tower.poset))

    def test_d2_partition_should_raise_when_tower_has_one_copy(self):
        """Verifica que se necesitan al menos dos copias."""
        with pytest.raises(ValueError):
            d2_partition(d2_tower_labeled(1))


class TestDoubledFiberMap:
    """Tests para doubled_fiber_map."""

    def test_doubled_fiber_map_should_be_non_injective_esakia_morphism(self):
        """Verifica que duplicar un punto de X₂ da un morfismo de Esakia no inyectivo."""
        tower = x_n_tower(2, 1, with_top=True)
        f = doubled_fiber_map(tower.poset, tower.point("x2"))

        check.equal(f.source.n, tower.poset.n + 1)
        check.is_false(f.is_injective)
        check.is_true(f.is_surjective)
        check.is_true(is_esakia_morphism(f.map, f.source, f.target).holds)
        check.equal(f.source.labels[-1], "x2'")
