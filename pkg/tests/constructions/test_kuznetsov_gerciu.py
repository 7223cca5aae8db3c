"""
Tests unitarios para constructions.kuznetsov_gerciu.
Verifica la descomposición en bloques uno-generados, las cotas de medida
y las álgebras Bₙ y D.
"""

import numpy as np
import pytest
import pytest_check as check

from algebra.heyting import alg_sum, alg_sum_all, product, verify_heyting
from algebra.isomorphism import are_algebras_isomorphic
from algebra.subalgebras import is_one_generated
from constructions.kuznetsov_gerciu import (
    KGDecompositionError,
    algebra_D,
    b_n_family,
    kg_decompose,
    kg_generator_sum,
    kg_measure_bounds,
    random_kg_sum,
    sum_components,
)
from constructions.named import bool2, chain_algebra, diamond, x2_algebra


@pytest.fixture
def rng():
    """Fixture que retorna un generador con semilla fija."""
    return np.random.default_rng(20240611)


class TestSumComponents:
    """Tests para sum_components."""

    def test_sum_components_should_name_blocks_from_top_to_bottom(self):
        """Verifica los nombres de 𝟐 + D₂* + X₂*."""
        algebra = alg_sum_all([bool2(), diamond(), x2_algebra()])

        check.equal([c.name for c in sum_components(algebra)], ["2", "diamond", "x2"])

    def test_sum_components_should_report_other_when_block_is_unknown(self):
        """Verifica que 𝟐 × C₃ no recibe un nombre conocido."""
        algebra = product(bool2(), chain_algebra(3))

        check.equal([c.name for c in sum_components(algebra)], ["other"])


class TestKGDecompose:
    """Tests para kg_decompose."""

    def test_kg_decompose_should_recover_blocks_when_sum_has_two_on_top(self):
        """Verifica que 𝟐 + ↓a2 + ↓a1 vuelve a sus tres bloques."""
        names = ["2", "a2", "a1"]
        blocks = kg_decompose(kg_generator_sum(names))

        check.equal(len(blocks), 3)
        for block, name in zip(blocks, names):
            check.is_true(are_algebras_isomorphic(block, kg_generator_sum([name])), name)

    def test_kg_decompose_should_round_trip_random_sums(self, rng):
        """Verifica la ida y vuelta para sumas aleatorias de hasta cuatro bloques."""
        for _ in range(15):
            count = int(rng.integers(1, 4))
            algebra, names = random_kg_sum(rng, count)
            blocks = kg_decompose(algebra)

            check.equal(len(blocks), len(names), names)
            check.is_true(are_algebras_isomorphic(alg_sum_all(blocks), algebra), names)

    def test_kg_decompose_should_reject_algebra_when_not_fsi(self):
        """Verifica la precondición sobre C₃ × C₃."""
        with pytest.raises(KGDecompositionError) as exc_info:
            kg_decompose(product(chain_algebra(3), chain_algebra(3)))

        check.is_in("precondición", str(exc_info.value))

    def test_kg_decompose_should_report_interval_when_block_is_not_one_generated(self):
        """Verifica que 𝟐 + 𝟐³ falla en el tramo booleano de 8 elementos."""
        algebra = alg_sum(bool2(), product(diamond(), bool2()))

        with pytest.raises(KGDecompositionError) as exc_info:
            kg_decompose(algebra)

        check.is_not_none(exc_info.value.interval)

    def test_kg_decompose_should_give_two_blocks_when_two_is_over_diamond(self):
        """Verifica 𝟐 + D₂* como dos bloques."""
        blocks = kg_decompose(alg_sum(bool2(), diamond()))

        check.equal([b.m for b in blocks], [2, 4])

    def test_kg_decompose_should_split_at_every_node_when_algebra_is_three_chain(self):
        """Verifica la descomposición más fina: la cadena de 3 da [𝟐, 𝟐]."""
        blocks = kg_decompose(chain_algebra(3))

        check.equal([b.m for b in blocks], [2, 2])
        check.is_not_none(is_one_generated(chain_algebra(3)))


class TestMeasureBounds:
    """Tests para kg_measure_bounds."""

    def test_kg_measure_bounds_should_hold_when_sum_is_kg_shaped(self, rng):
        """Verifica ancho e incomparabilidad ≤ 2 en sumas de generadores."""
        for _ in range(10):
            algebra, names = random_kg_sum(rng, 3)
            check.is_true(kg_measure_bounds(algebra).holds, names)

    def test_kg_measure_bounds_should_fail_width_when_block_is_boolean_eight(self):
        """Verifica que un bloque con tres átomos excede el ancho 2."""
        verdict = kg_measure_bounds(alg_sum(bool2(), product(diamond(), bool2())))

        check.is_false(verdict.holds)
        check.equal(verdict.reason, "ancho")


class TestContinuumAlgebras:
    """Tests para b_n_family y algebra_D."""

    def test_b_n_family_should_have_seven_elements_when_n_is_two(self):
        """Verifica |B2| = |𝟐| + |𝟐 × C₃| - 1."""
        algebra = b_n_family(2)

        check.equal(algebra.m, 7)
        check.is_true(verify_heyting(algebra).holds)

    def test_b_n_family_should_grow_by_three_per_diamond(self):
        """Verifica |Bₙ| = 7 + 3(n - 2)."""
        for n in (3, 4):
            check.equal(b_n_family(n).m, 7 + 3 * (n - 2))

    def test_b_n_family_should_raise_when_n_is_one(self):
        """Verifica la precondición n ≥ 2."""
        with pytest.raises(ValueError):
            b_n_family(1)

    def test_algebra_d_should_have_ten_elements(self):
        """Verifica D = 𝟐 + ↓a3 + 𝟐."""
        algebra = algebra_D()

        check.equal(algebra.m, 10)
        check.is_true(verify_heyting(algebra).holds)
