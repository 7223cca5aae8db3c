"""
Tests unitarios para variety.epic.
Verifica los testigos separadores de subálgebras no epic.
"""

from dataclasses import replace

import pytest
import pytest_check as check

from algebra.subalgebras import SubalgebraHandle, subalgebra_generated
from constructions.named import bool2, chain_algebra, diamond
from duality.partitions import CorrectPartition
from poset.finite_poset import chain
from variety.epic import (
    STAGE_AUTOMORPHISM,
    STAGE_FSI,
    is_epic,
    separating_pair,
    validate_witness,
)
from variety.presentation import VarietyMembershipError, VarietyPresentation


def _trivial_subalgebra(algebra):
    """Subálgebra {0, 1}."""
    return subalgebra_generated(algebra, [])


class TestIsEpic:
    """Tests para is_epic."""

    def test_is_epic_should_hold_when_subalgebra_is_everything(self):
        """Verifica que B es epic en sí misma."""
        algebra = diamond()
        whole = SubalgebraHandle(parent=algebra, members=(1 << algebra.m) - 1)

        verdict = is_epic(algebra, whole, VarietyPresentation.of(algebra))

        check.is_true(verdict.epic)
        check.is_none(verdict.witness)

    def test_is_epic_should_return_swap_when_diamond_and_trivial_subalgebra(self):
        """Verifica el par identidad / intercambio sobre la anticadena de 2."""
        algebra = diamond()
        verdict = is_epic(algebra, _trivial_subalgebra(algebra), VarietyPresentation.of(algebra))

        check.is_false(verdict.epic)
        check.equal(verdict.witness.stage, STAGE_AUTOMORPHISM)
        check.equal(verdict.witness.g, (0, 1))
        check.equal(verdict.witness.h, (1, 0))
        check.is_true(validate_witness(verdict.witness).holds)

    def test_is_epic_should_use_fsi_member_when_chain_has_no_automorphism(self):
        """Verifica que {0, 1} en la cadena de 3 se separa con la 2-cadena."""
        algebra = chain_algebra(3)
        verdict = is_epic(algebra, _trivial_subalgebra(algebra), VarietyPresentation.of(algebra))

        check.is_false(verdict.epic)
        check.equal(verdict.witness.stage, STAGE_FSI)
        check.equal(verdict.witness.space.n, 2)
        check.is_true(validate_witness(verdict.witness).holds)
        check.equal(verdict.to_dict()["witness"]["stage"], STAGE_FSI)

    def test_is_epic_should_raise_when_algebra_is_outside_variety(self):
        """Verifica la precondición B ∈ V."""
        algebra = chain_algebra(3)

        with pytest.raises(VarietyMembershipError):
            is_epic(algebra, _trivial_subalgebra(algebra), VarietyPresentation.of(bool2()))

    def test_is_epic_should_raise_when_subalgebra_belongs_to_other_algebra(self):
        """Verifica que A debe ser subálgebra de B."""
        with pytest.raises(ValueError):
            is_epic(diamond(), _trivial_subalgebra(diamond()), VarietyPresentation.of(diamond()))


class TestSeparatingPair:
    """Tests para separating_pair y validate_witness."""

    def test_separating_pair_should_return_first_divergent_pair_when_single_class(self):
        """Verifica g = id y h = constante en el tope sobre la 2-cadena."""
        space = chain(2)
        partition = CorrectPartition.from_classes(space, [[0, 1]])

        check.equal(separating_pair(space, partition), ((0, 1), (1, 1)))

    def test_separating_pair_should_return_none_when_partition_is_identity(self):
        """Verifica que la partición identidad fuerza g = h."""
        space = chain(3)

        check.is_none(separating_pair(space, CorrectPartition.identity(space)))

    def test_validate_witness_should_fail_when_maps_are_equal(self):
        """Verifica el rechazo de un testigo con g = h."""
        algebra = diamond()
        witness = is_epic(
            algebra, _trivial_subalgebra(algebra), VarietyPresentation.of(algebra)
        ).witness
        tampered = replace(witness, h=witness.g)

        verdict = validate_witness(tampered)

        check.is_false(verdict.holds)
        check.equal(verdict.reason, "mapas iguales")

    def test_validate_witness_should_fail_when_map_is_not_esakia(self):
        """Verifica el rechazo de un mapa no monótono."""
        algebra = chain_algebra(3)
        witness = is_epic(
            algebra, _trivial_subalgebra(algebra), VarietyPresentation.of(algebra)
        ).witness
        tampered = replace(witness, g=(1, 0))

        check.is_false(validate_witness(tampered).holds)
