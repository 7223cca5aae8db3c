"""
Tests unitarios para duality.congruences.
"""

import pytest_check as check

from algebra.homomorphisms import enumerate_congruences, quotient_algebra
from algebra.isomorphism import are_algebras_isomorphic
from constructions.named import chain_algebra, diamond, x2_algebra
from duality.congruences import congruence_of_upset, congruences_via_upsets


class TestCongruencesViaUpsets:
    """Tests para congruences_via_upsets."""

    def test_congruences_via_upsets_should_match_bruteforce_when_algebra_is_small(self):
        """Verifica que las congruencias por upsets coinciden con el oráculo."""
        for algebra in (chain_algebra(3), diamond(), x2_algebra()):
            via_upsets = {c.classes for c in congruences_via_upsets(algebra)}
            check.equal(via_upsets, set(enumerate_congruences(algebra)))

    def test_congruences_via_upsets_should_give_isomorphic_quotients(self):
        """Verifica que U* es isomorfa al cociente por la congruencia de U."""
        algebra = x2_algebra()
        for congruence in congruences_via_upsets(algebra):
            expected = quotient_algebra(algebra, congruence.classes)
            check.is_true(are_algebras_isomorphic(congruence.quotient, expected))

    def test_congruence_of_upset_should_collapse_everything_when_upset_is_empty(self):
        """Verifica que el upset vacío identifica todos los elementos."""
        algebra = diamond()
        classes = congruence_of_upset(algebra, algebra.element_upsets, 0)

        check.equal(classes, (0, 0, 0, 0))

    def test_congruence_of_upset_should_be_identity_when_upset_is_full(self):
        """Verifica que el espacio completo da la congruencia identidad."""
        algebra = diamond()
        classes = congruence_of_upset(algebra, algebra.element_upsets, algebra.dual.full_mask)

        check.equal(classes, (0, 1, 2, 3))
