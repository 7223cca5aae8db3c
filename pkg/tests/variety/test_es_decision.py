"""
Tests unitarios para variety.es_decision.
Verifica la decisión ES sobre variedades finitamente generadas y la
búsqueda de certificados KG.
"""

import pytest
import pytest_check as check

from algebra.heyting import alg_sum
from constructions.named import bool2, chain_algebra, diamond
from poset.enumeration import enumerate_posets
from variety.epic import validate_witness
from variety.es_decision import es_property, kg_es_certificate, kg_test_sum
from variety.presentation import VarietyPresentation


@pytest.fixture
def two_diamonds():
    """Fixture que retorna V(D₂* + D₂*)."""
    return VarietyPresentation.of(alg_sum(diamond(), diamond()))


class TestEsProperty:
    """Tests para es_property."""

    def test_es_property_should_hold_with_empty_log_when_variety_is_boolean(self):
        """Verifica ES en V(𝟐), sin subálgebras propias que revisar."""
        result = es_property(VarietyPresentation.of(bool2()))

        check.is_true(result.holds)
        check.equal(len(result.rows), 0)

    def test_es_property_should_hold_when_generator_is_four_chain(self):
        """Verifica ES en V(cadena de 4)."""
        check.is_true(es_property(VarietyPresentation.of(chain_algebra(4))).holds)

    def test_es_property_should_log_witnesses_when_two_diamonds(self, two_diamonds):
        """Verifica que cada subálgebra propia trae un par separador válido."""
        result = es_property(two_diamonds)

        check.is_true(result.holds)
        check.greater(len(result.rows), 0)
        for row in result.rows:
            check.is_false(row.verdict.epic)
            check.is_true(validate_witness(row.verdict.witness).holds)

    def test_es_property_should_give_same_log_when_threads_are_used(self, two_diamonds):
        """Verifica que el registro no depende de la cantidad de workers."""
        serial = es_property(two_diamonds, threads=1)
        parallel = es_property(two_diamonds, threads=3)

        check.equal(
            [row.to_dict() for row in serial.rows], [row.to_dict() for row in parallel.rows]
        )

    def test_es_property_should_export_log_as_dataframe(self, two_diamonds):
        """Verifica las columnas del registro tabular."""
        frame = es_property(two_diamonds).to_frame()

        check.equal(
            list(frame.columns), ["member", "member_size", "subalgebra_size", "epic", "stage"]
        )
        check.is_false(bool(frame["epic"].any()))

    def test_es_property_should_hold_for_every_generator_when_dual_has_three_points(self):
        """Verifica ES en V(P*) para todo poset P de 1 a 3 puntos."""
        for n in range(1, 4):
            for poset in enumerate_posets(n):
                result = es_property(VarietyPresentation.from_posets([poset]))
                check.is_true(result.holds, poset)

    @pytest.mark.slow
    def test_es_property_should_hold_for_every_generator_when_dual_has_four_points(self):
        """Verifica ES en V(P*) para los 16 posets de 4 puntos."""
        for poset in enumerate_posets(4):
            check.is_true(es_property(VarietyPresentation.from_posets([poset])).holds, poset)


class TestKgEsCertificate:
    """Tests para kg_es_certificate."""

    def test_kg_es_certificate_should_give_level_one_when_variety_is_boolean(self):
        """Verifica que V(𝟐) excluye D₂* + 𝟐 y X₂* + 𝟐."""
        certificate = kg_es_certificate(VarietyPresentation.of(bool2()), 2)

        check.equal(certificate.level, 1)
        check.is_true(certificate.monotone)

    def test_kg_es_certificate_should_give_level_two_when_three_chain(self):
        """Verifica que D₂* + 𝟐 está en V(cadena de 3) y el nivel 2 se excluye."""
        certificate = kg_es_certificate(VarietyPresentation.of(chain_algebra(3)), 2)

        check.equal(certificate.level, 2)
        first = certificate.table[certificate.table["blocks"] == "diamond+2"]
        check.is_true(bool(first["member"].iloc[0]))

    def test_kg_es_certificate_should_give_level_two_when_diamond_over_two(self):
        """Verifica V(D₂* + 𝟐): contiene D₂* + 𝟐 y excluye el nivel 2."""
        certificate = kg_es_certificate(VarietyPresentation.of(alg_sum(diamond(), bool2())), 3)

        check.equal(certificate.level, 2)
        check.is_true(certificate.monotone)
        check.equal(len(certificate.table), 2 + 4 + 8)

    def test_kg_es_certificate_should_report_no_level_when_variety_contains_sums(self):
        """Verifica que V(D₂* + D₂* + 𝟐) contiene una suma de cada nivel hasta 2."""
        variety = VarietyPresentation.of(kg_test_sum(("diamond", "diamond")))
        certificate = kg_es_certificate(variety, 2)

        check.is_none(certificate.level)
        check.equal(certificate.label, "sin certificado")

    def test_kg_es_certificate_should_raise_when_level_is_out_of_range(self):
        """Verifica 1 ≤ n_max ≤ 4."""
        with pytest.raises(ValueError):
            kg_es_certificate(VarietyPresentation.of(bool2()), 5)

    def test_kg_test_sum_should_have_expected_size(self):
        """Verifica |D₂* + X₂* + 𝟐| = 4 + 8 + 2 - 2."""
        check.equal(kg_test_sum(("diamond", "x2")).m, 12)
