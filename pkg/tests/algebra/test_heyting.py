"""
Tests unitarios para algebra.heyting.
Verifica construcción de tablas, axiomas, sumas, productos e intervalos.
"""

import numpy as np
import pytest
import pytest_check as check

from algebra.heyting import (
    HeytingAlgebra,
    HeytingValidationError,
    alg_sum,
    alg_sum_all,
    from_lattice_order,
    from_tables,
    from_upsets,
    interval_algebra,
    is_boolean,
    is_fsi,
    is_goedel,
    nodes,
    product,
    restrict,
    verify_heyting,
)
from algebra.isomorphism import are_algebras_isomorphic
from constructions.named import bool2, chain_algebra, diamond, x2_algebra
from duality.esakia import prime_filters
from poset.enumeration import enumerate_posets_up_to
from poset.finite_poset import FinitePoset, antichain, chain, poset_sum
from utils.limits import ResourceCapError


@pytest.fixture
def three_chain():
    """Fixture que retorna la cadena de 3 elementos."""
    return chain_algebra(3)


@pytest.fixture
def pentagon_order():
    """Fixture que retorna el orden de N5: 0 < a < c < 1 y 0 < b < 1."""
    # índices: 0, a, b, c, 1
    leq = np.eye(5, dtype=bool)
    for low, high in [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)]:
        leq[low, high] = True
    return leq


class TestFromUpsets:
    """Tests para from_upsets."""

    def test_from_upsets_should_build_two_element_algebra_when_poset_is_single_point(self):
        """Verifica que un punto da el álgebra de Boole de dos elementos."""
        algebra = from_upsets(chain(1))

        check.equal(algebra.m, 2)
        check.equal(algebra.labels, ("{}", "{0}"))
        check.is_true(is_boolean(algebra))

    def test_from_upsets_should_pass_verification_when_poset_is_small(self):
        """Verifica los axiomas sobre el álgebra de cada poset con hasta 4 puntos."""
        for poset in enumerate_posets_up_to(4):
            verdict = verify_heyting(from_upsets(poset))
            check.is_true(verdict.holds, f"{poset}: {verdict.reason}")

    def test_from_upsets_should_match_product_when_poset_is_antichain(self):
        """Verifica que D₂* ≅ 𝟐 × 𝟐."""
        check.is_true(are_algebras_isomorphic(from_upsets(antichain(2)), product(bool2(), bool2())))

    def test_from_upsets_should_give_trivial_algebra_when_poset_is_empty(self):
        """Verifica que el poset vacío produce el álgebra de un elemento."""
        algebra = from_upsets(FinitePoset.from_up_masks([]))

        check.equal(algebra.m, 1)
        check.equal(algebra.bottom, algebra.top)

    def test_from_upsets_should_raise_cap_error_when_table_is_too_large(self):
        """Verifica que 2^13 upsets superan el límite de tablas explícitas."""
        with pytest.raises(ResourceCapError) as exc_info:
            from_upsets(antichain(13))

        check.equal(exc_info.value.cap, "max_table_elements")
        check.equal(exc_info.value.value, 8192)

    def test_from_upsets_should_compute_implication_when_chain_has_three_elements(self, three_chain):
        """Verifica que en una cadena a → b vale 1 si a ≤ b y b en otro caso."""
        for a in range(3):
            for b in range(3):
                expected = three_chain.top if a <= b else b
                check.equal(int(three_chain.imp[a, b]), expected)


class TestVerifyHeyting:
    """Tests para verify_heyting y from_lattice_order."""

    def test_verify_heyting_should_report_residuation_when_implication_is_tampered(self):
        """Verifica que un → alterado en 𝟐 falla la residuación."""
        algebra = from_tables(
            leq=[[True, True], [False, True]],
            meet=[[0, 0], [0, 1]],
            join=[[0, 1], [1, 1]],
            imp=[[1, 1], [1, 1]],
            bottom=0,
            top=1,
        )

        verdict = verify_heyting(algebra)

        check.is_false(verdict.holds)
        check.equal(verdict.reason, "residuación")

    def test_verify_heyting_should_report_reflexivity_when_diagonal_is_missing(self):
        """Verifica que un orden sin diagonal falla la reflexividad."""
        algebra = from_tables(
            leq=[[False, True], [False, True]],
            meet=[[0, 0], [0, 1]],
            join=[[0, 1], [1, 1]],
            imp=[[1, 1], [0, 1]],
            bottom=0,
            top=1,
        )

        verdict = verify_heyting(algebra)

        check.equal(verdict.reason, "reflexividad")
        check.equal(verdict.witness, {"element": 0})

    def test_from_lattice_order_should_raise_when_lattice_is_not_distributive(self, pentagon_order):
        """Verifica que N5 se rechaza por distributividad."""
        with pytest.raises(HeytingValidationError) as exc_info:
            from_lattice_order(pentagon_order)

        check.equal(exc_info.value.verdict.reason, "distributividad")

    def test_from_lattice_order_should_match_from_upsets_when_order_is_a_diamond(self):
        """Verifica que el orden del diamante reconstruye las mismas tablas."""
        expected = diamond()
        algebra = from_lattice_order(expected.leq)

        check.is_true(np.array_equal(algebra.meet, expected.meet))
        check.is_true(np.array_equal(algebra.join, expected.join))
        check.is_true(np.array_equal(algebra.imp, expected.imp))


class TestPredicates:
    """Tests para is_fsi, nodes, is_boolean e is_goedel."""

    def test_is_fsi_should_return_true_when_algebra_is_chain(self, three_chain):
        """Verifica que una cadena es FSI."""
        check.is_true(is_fsi(three_chain))

    def test_is_fsi_should_return_false_when_algebra_is_diamond(self):
        """Verifica que p ∨ q = 1 con p, q ≠ 1 impide FSI."""
        check.is_false(is_fsi(diamond()))

    def test_is_fsi_should_return_false_when_algebra_is_trivial(self):
        """Verifica que el álgebra de un elemento no es FSI."""
        check.is_false(is_fsi(from_upsets(FinitePoset.from_up_masks([]))))

    def test_is_fsi_should_match_rooted_dual_when_algebras_are_swept(self):
        """Verifica is_fsi ⇔ dual enraizado sobre upsets, productos y sumas de posets chicos."""
        algebras = [from_upsets(poset) for poset in enumerate_posets_up_to(4)]
        nontrivial = [algebra for algebra in algebras if algebra.m > 1]
        algebras += [
            product(left, right)
            for left in nontrivial
            for right in nontrivial
            if left.m * right.m <= 16
        ]
        algebras += [alg_sum(upper, lower) for upper in nontrivial[:8] for lower in nontrivial[:8]]

        for algebra in algebras:
            check.equal(is_fsi(algebra), prime_filters(algebra).is_rooted, f"{algebra!r}")

    def test_nodes_should_return_bottom_and_top_when_algebra_is_diamond(self):
        """Verifica que los átomos del diamante no son nodos."""
        check.equal(nodes(diamond()), [0, 3])

    def test_is_goedel_should_distinguish_chain_from_x2_algebra(self, three_chain):
        """Verifica la prelinealidad en la cadena y su falla en X₂*."""
        check.is_true(is_goedel(three_chain))
        check.is_true(is_goedel(diamond()))
        check.is_false(is_goedel(x2_algebra()))

    def test_is_boolean_should_return_false_when_algebra_is_three_chain(self, three_chain):
        """Verifica que en la cadena de 3 el elemento medio no tiene complemento."""
        check.is_false(is_boolean(three_chain))
        check.equal(three_chain.negation(1), 0)


class TestSums:
    """Tests para alg_sum, alg_sum_all, product, interval_algebra y restrict."""

    def test_alg_sum_should_have_expected_size_when_pasting_diamond_over_two(self):
        """Verifica que |A + B| = |A| + |B| - 1 y que la suma es un álgebra."""
        algebra = alg_sum(diamond(), bool2())

        check.equal(algebra.m, 5)
        check.is_true(verify_heyting(algebra).holds)

    def test_alg_sum_should_be_fsi_when_upper_block_is_fsi(self):
        """Verifica que la suma es FSI exactamente cuando el bloque de arriba lo es."""
        check.is_true(is_fsi(alg_sum(bool2(), diamond())))
        check.is_false(is_fsi(alg_sum(diamond(), bool2())))

    def test_alg_sum_should_be_dual_to_poset_sum_when_both_have_duals(self, three_chain):
        """Verifica que (A + B)_* es A_* con B_* por encima."""
        upper, lower = diamond(), three_chain
        summed = alg_sum(upper, lower)
        dual = poset_sum(upper.dual, lower.dual)

        check.is_true(are_algebras_isomorphic(summed, from_upsets(dual)))

    def test_alg_sum_should_satisfy_axioms_when_blocks_are_small(self, three_chain):
        """Verifica los axiomas para todas las sumas de pares de bloques chicos."""
        blocks = [bool2(), three_chain, diamond(), x2_algebra()]
        for upper in blocks:
            for lower in blocks:
                verdict = verify_heyting(alg_sum(upper, lower))
                check.is_true(verdict.holds, verdict.reason)

    def test_alg_sum_all_should_be_associative_when_three_blocks_are_summed(self, three_chain):
        """Verifica que A + B + C no depende del agrupamiento."""
        a, b, c = diamond(), three_chain, x2_algebra()
        left = alg_sum(alg_sum(a, b), c)

        check.is_true(are_algebras_isomorphic(alg_sum_all([a, b, c]), left))

    def test_alg_sum_all_should_raise_when_no_blocks_are_given(self):
        """Verifica que la suma vacía se rechaza."""
        with pytest.raises(ValueError):
            alg_sum_all([])

    def test_product_should_have_componentwise_order_when_factors_are_chains(self, three_chain):
        """Verifica tamaño, axiomas y etiquetas del producto 𝟐 × C₃."""
        algebra = product(bool2(), three_chain)

        check.equal(algebra.m, 6)
        check.is_true(verify_heyting(algebra).holds)
        check.equal(algebra.labels[algebra.top], "(1,1)")

    def test_interval_algebra_should_return_chain_when_interval_of_chain(self):
        """Verifica que [c1, 1] en la cadena de 4 es la cadena de 3."""
        algebra = chain_algebra(4)
        sub, members = interval_algebra(algebra, 1, 3)

        check.equal(members, (1, 2, 3))
        check.is_true(verify_heyting(sub).holds)
        check.is_true(are_algebras_isomorphic(sub, chain_algebra(3)))

    def test_interval_algebra_should_raise_when_bounds_are_not_ordered(self):
        """Verifica que un intervalo con extremos incomparables se rechaza."""
        with pytest.raises(ValueError):
            interval_algebra(diamond(), 1, 2)

    def test_restrict_should_give_two_when_members_are_bounds(self):
        """Verifica que {0, 1} induce el álgebra 𝟐."""
        sub = restrict(diamond(), [3, 0])

        check.equal(sub.m, 2)
        check.is_true(verify_heyting(sub).holds)


class TestSerialization:
    """Tests para to_dict y from_dict."""

    def test_to_dict_should_use_dual_form_when_algebra_has_provenance(self, three_chain):
        """Verifica que el formato dual conserva las etiquetas."""
        data = three_chain.to_dict()
        restored = HeytingAlgebra.from_dict(data)

        check.is_in("dual", data)
        check.equal(restored.labels, three_chain.labels)
        check.is_true(np.array_equal(restored.imp, three_chain.imp))

    def test_to_dict_should_use_tables_when_algebra_has_no_provenance(self):
        """Verifica que una suma se serializa como tablas explícitas."""
        algebra = alg_sum(bool2(), diamond())
        data = algebra.to_dict()
        restored = HeytingAlgebra.from_dict(data)

        check.is_in("imp", data)
        check.is_true(np.array_equal(restored.leq, algebra.leq))
        check.is_true(np.array_equal(restored.imp, algebra.imp))

    def test_from_dict_should_raise_when_data_has_no_order(self):
        """Verifica que un JSON sin dual ni tablas se rechaza."""
        with pytest.raises(ValueError):
            HeytingAlgebra.from_dict({"labels": ["0"]})

    def test_index_of_should_raise_key_error_when_label_is_unknown(self):
        """Verifica el error para una etiqueta inexistente."""
        with pytest.raises(KeyError):
            diamond().index_of("z")
