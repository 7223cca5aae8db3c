"""
Escenarios de verificación a escala de escritorio.

Cada escenario arma un barrido de casos como DataFrame (una fila por
caso) y lo evalúa con los checks de quality.checks. Los barridos
aleatorios usan el generador del contexto, así que repetir un escenario
con la misma semilla da el mismo reporte.
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Sequence

import numpy as np
import pandas as pd

from algebra.heyting import alg_sum, alg_sum_all, from_upsets, is_fsi, nodes
from algebra.homomorphisms import enumerate_congruences
from algebra.isomorphism import are_algebras_isomorphic
from algebra.subalgebras import subalgebra_generated, subalgebras_bruteforce
from constructions.kuznetsov_gerciu import (
    algebra_D,
    kg_decompose,
    kg_generator_sum,
    random_kg_sum,
    sum_components,
)
from constructions.named import bool2, chain_algebra, diamond
from constructions.rieger_nishimura import (
    LemmaHypothesisError,
    lemma_kg_i_subalgebra,
    lemma_kg_ii_universe,
    rn_downset,
)
from constructions.towers import (
    d2_partition,
    d2_tower_labeled,
    doubled_fiber_map,
    r_n_partition,
    x_n_tower,
)
from duality.congruences import congruences_via_upsets
from duality.esakia import EsakiaMap, compose, dual_algebra, prime_filters, upset_inclusion
from duality.partitions import (
    enumerate_correct_partitions,
    is_correct_partition,
    partition_to_subalgebra,
    quotient_map,
    quotient_space,
    subalgebra_to_partition,
)
from duality.trick_width import TrickWidthError, trick_width_subposet
from poset.enumeration import (
    LABELED_COUNTS,
    UNLABELED_COUNTS,
    enumerate_labeled_posets,
    enumerate_posets,
)
from poset.finite_poset import (
    FinitePoset,
    has_depth_at_most,
    has_incomparability_at_most,
    has_width_at_most,
    poset_sum,
)
from poset.isomorphism import are_isomorphic
from quality.checks import (
    CheckResult,
    check_all,
    check_equal,
    check_equivalence,
    check_verdict,
    check_volume,
)
from quality.corpus import DEFAULT_SEED, make_rng, random_posets, random_small_algebra
from terms.evaluation import satisfies_all, validates
from terms.families import depth_term, sigma_axioms, three_way_prelinearity, width_term
from terms.syntax import Equation, One
from utils.logger import quality_logger as logger
from variety.epic import STAGE_AUTOMORPHISM, is_epic, validate_witness
from variety.es_decision import es_property, kg_es_certificate
from variety.presentation import VarietyPresentation


@dataclass(frozen=True)
class ScenarioContext:
    """
    Parámetros compartidos por los escenarios.

    Attributes:
        seed: Semilla de los barridos aleatorios
        max_points: Tamaño máximo de los posets del barrido exhaustivo
        sample_size: Cantidad de casos de los barridos aleatorios
        threads: Workers para es_property
    """

    seed: int = DEFAULT_SEED
    max_points: int = 4
    sample_size: int = 200
    threads: int = 1

    def rng(self) -> np.random.Generator:
        return make_rng(self.seed)


def _case(poset: FinitePoset) -> str:
    return f"n={poset.n} covers={list(poset.covers)}"


def _posets(max_points: int) -> List[FinitePoset]:
    return [p for n in range(1, max_points + 1) for p in enumerate_posets(n)]


def _blocks(labels: Sequence[int]) -> FrozenSet[FrozenSet[int]]:
    groups = {}
    for a, label in enumerate(labels):
        groups.setdefault(label, set()).add(a)
    return frozenset(frozenset(g) for g in groups.values())


def _labeled_class_count(m: int) -> int:
    """Cantidad de clases de isomorfismo entre los posets etiquetados de m puntos."""
    classes: List[FinitePoset] = []
    for poset in enumerate_labeled_posets(m):
        if not any(are_isomorphic(poset, other) is not None for other in classes):
            classes.append(poset)
    return len(classes)


def duality_roundtrip(ctx: ScenarioContext) -> List[CheckResult]:
    """P ≅ (P*)_* y A ≅ (A_*)* sobre todos los posets chicos y una muestra de 5 a 6 puntos."""
    counts = pd.DataFrame(
        [
            {"case": f"n={n}", "count": len(enumerate_posets(n)), "expected": UNLABELED_COUNTS[n]}
            for n in range(ctx.max_points + 1)
        ]
    )
    oracle_sizes = range(1, min(ctx.max_points, len(LABELED_COUNTS) - 1) + 1)
    oracle = pd.DataFrame(
        [
            {"case": f"m={m}", "count": len(enumerate_posets(m)), "expected": _labeled_class_count(m)}
            for m in oracle_sizes
        ]
    )

    posets = _posets(ctx.max_points) + random_posets(ctx.rng(), ctx.sample_size, 5, 6)
    rows = []
    for poset in posets:
        algebra = dual_algebra(poset)
        space = prime_filters(algebra)
        rows.append(
            {
                "case": _case(poset),
                "points": poset.n,
                "poset_roundtrip": are_isomorphic(space, poset) is not None,
                "algebra_roundtrip": are_algebras_isomorphic(dual_algebra(space), algebra),
            }
        )
    df = pd.DataFrame(rows)
    logger.debug(f"duality-roundtrip: {len(df)} posets")

    return [
        check_equivalence(counts, "count", "expected", "posets no etiquetados"),
        check_equivalence(oracle, "count", "expected", "clases de posets etiquetados"),
        check_all(df, "poset_roundtrip", "P ≅ (P*)_*"),
        check_all(df, "algebra_roundtrip", "A ≅ (A_*)*"),
        check_volume(df, "duality-roundtrip", min_expected=len(posets)),
    ]


def depth_width_axioms(ctx: ScenarioContext) -> List[CheckResult]:
    """d_n ≈ 1 sii profundidad ≤ n (n = 1..4) y w_n ≈ 1 sii ancho ≤ n (n = 1..3)."""
    rows = []
    for poset in _posets(ctx.max_points):
        algebra = from_upsets(poset)
        for n in range(1, 5):
            rows.append(
                {
                    "case": f"{_case(poset)} d{n}",
                    "kind": "depth",
                    "valid": validates(algebra, Equation(depth_term(n), One())).holds,
                    "measure": has_depth_at_most(poset, n),
                }
            )
        for n in range(1, 4):
            rows.append(
                {
                    "case": f"{_case(poset)} w{n}",
                    "kind": "width",
                    "valid": validates(algebra, Equation(width_term(n), One())).holds,
                    "measure": has_width_at_most(poset, n),
                }
            )
    df = pd.DataFrame(rows)
    return [
        check_equivalence(df[df["kind"] == "depth"], "valid", "measure", "d_n ≈ 1 vs profundidad"),
        check_equivalence(df[df["kind"] == "width"], "valid", "measure", "w_n ≈ 1 vs ancho"),
    ]


def sigma_axioms_scenario(ctx: ScenarioContext) -> List[CheckResult]:
    """Σₙ vale sii el grado de incomparabilidad es ≤ n, para n = 1, 2."""
    axioms = {n: sigma_axioms(n) for n in (1, 2)}
    rows = []
    for poset in _posets(ctx.max_points):
        algebra = from_upsets(poset)
        for n, equations in axioms.items():
            rows.append(
                {
                    "case": f"{_case(poset)} Σ{n}",
                    "valid": satisfies_all(algebra, equations).holds,
                    "measure": has_incomparability_at_most(poset, n),
                }
            )
    df = pd.DataFrame(rows)
    return [check_equivalence(df, "valid", "measure", "Σₙ vs grado de incomparabilidad")]


def correspondences(ctx: ScenarioContext) -> List[CheckResult]:
    """Subálgebras ↔ particiones correctas y congruencias ↔ upsets, con sus idas y vueltas."""
    rows = []
    for poset in _posets(ctx.max_points):
        algebra = from_upsets(poset)
        subalgebras = subalgebras_bruteforce(algebra)
        partitions = enumerate_correct_partitions(poset)
        congruences = enumerate_congruences(algebra)
        via_upsets = congruences_via_upsets(algebra)

        partition_roundtrip = all(
            subalgebra_to_partition(partition_to_subalgebra(algebra, p), poset).classes
            == p.classes
            for p in partitions
        )
        subalgebra_roundtrip = all(
            partition_to_subalgebra(algebra, subalgebra_to_partition(s, poset)).members
            == s.members
            for s in subalgebras
        )
        rows.append(
            {
                "case": _case(poset),
                "subalgebras": len(subalgebras),
                "partitions": len(partitions),
                "congruences": len(congruences),
                "upsets": len(poset.all_upsets()),
                "same_congruences": {_blocks(c) for c in congruences}
                == {_blocks(c.classes) for c in via_upsets},
                "roundtrip": partition_roundtrip and subalgebra_roundtrip,
            }
        )
    df = pd.DataFrame(rows)
    return [
        check_equivalence(df, "subalgebras", "partitions", "|Sub(A)| = |particiones correctas|"),
        check_equivalence(df, "congruences", "upsets", "|Con(A)| = |upsets del dual|"),
        check_all(df, "same_congruences", "congruencias vía upsets"),
        check_all(df, "roundtrip", "subálgebra ↔ partición"),
    ]


def sum_duality(ctx: ScenarioContext) -> List[CheckResult]:
    """(A + B)_* ≅ A_* + B_* (B_* arriba) para pares aleatorios de hasta 8 elementos."""
    rng = ctx.rng()
    rows = []
    for i in range(max(1, ctx.sample_size // 2)):
        upper = random_small_algebra(rng, 8)
        lower = random_small_algebra(rng, 8)
        expected = poset_sum(prime_filters(upper), prime_filters(lower))
        rows.append(
            {
                "case": f"par {i}: |A|={upper.m} |B|={lower.m}",
                "isomorphic": are_isomorphic(prime_filters(alg_sum(upper, lower)), expected)
                is not None,
            }
        )
    df = pd.DataFrame(rows)
    return [check_all(df, "isomorphic", "dual de la suma")]


def _tower_row(name: str, tower, partition) -> dict:
    algebra = from_upsets(tower.poset)
    handle = partition_to_subalgebra(algebra, partition)
    return {
        "case": name,
        "correct": is_correct_partition(partition).holds,
        "proper": handle.size < algebra.m,
    }


def rn_towers(ctx: ScenarioContext) -> List[CheckResult]:
    """Rₙ es una partición correcta de la torre de Xₙ con subálgebra propia."""
    rows = []
    for n in (2, 3):
        for k in (2, 3, 4):
            tower = x_n_tower(n, k, with_top=True)
            rows.append(_tower_row(f"X{n} × {k}", tower, r_n_partition(tower)))
    df = pd.DataFrame(rows)
    return [
        check_all(df, "correct", "Rₙ correcta"),
        check_all(df, "proper", "subálgebra inducida propia"),
    ]


def d2_tower(ctx: ScenarioContext) -> List[CheckResult]:
    """La partición escalonada de la torre de D₂ es correcta e induce una subálgebra propia."""
    rows = []
    for k in (2, 3, 4):
        tower = d2_tower_labeled(k, with_top=True)
        rows.append(_tower_row(f"D2 × {k}", tower, d2_partition(tower)))
    df = pd.DataFrame(rows)
    return [
        check_all(df, "correct", "partición de la torre D₂"),
        check_all(df, "proper", "subálgebra inducida propia"),
    ]


def trick_width(ctx: ScenarioContext) -> List[CheckResult]:
    """Z ⊆ Y es isomorfo a ↑f(⊥) sin ⊤ en torres de X₂ con y sin un punto duplicado."""
    rows = []
    for copies in (3, 4):
        tower = x_n_tower(2, copies, with_top=True)
        inclusion = upset_inclusion(tower.poset, tower.poset.up[tower.point("x2")])
        doubled = compose(
            doubled_fiber_map(inclusion.source, inclusion.source.labels.index("x3")), inclusion
        )
        for label, f in (("inclusión", inclusion), ("duplicado", doubled)):
            try:
                result = trick_width_subposet(f, 2)
                extracted, size = True, len(result.subset)
            except TrickWidthError as e:
                logger.warning(f"trick-width {label} con {copies} copias: {e}")
                extracted, size = False, 0
            rows.append(
                {
                    "case": f"X2 × {copies} {label}",
                    "extracted": extracted,
                    "size": size,
                    "expected": 1 + 4 * (copies - 1),
                }
            )
    df = pd.DataFrame(rows)

    tower = x_n_tower(2, 2, with_top=True)
    quotient = r_n_partition(tower)
    try:
        trick_width_subposet(
            EsakiaMap(source=tower.poset, target=quotient_space(quotient), map=quotient_map(quotient)),
            2,
        )
        rejected = ""
    except TrickWidthError as e:
        rejected = e.hypothesis

    return [
        check_all(df, "extracted", "isomorfismo de orden sobre Z"),
        check_equivalence(df, "size", "expected", "|Z| = |↑f(⊥)| - 1"),
        check_equal("cociente por R₂ viola la hipótesis de anticadena", rejected, "anticadena"),
    ]


def fg_es(ctx: ScenarioContext) -> List[CheckResult]:
    """ES para V(P*) con todo P de hasta 4 puntos, con cada testigo reverificado."""
    rows = []
    for poset in _posets(min(ctx.max_points, 4)):
        result = es_property(VarietyPresentation.from_posets([poset]), threads=ctx.threads)
        rows.append(
            {
                "case": _case(poset),
                "es": result.holds,
                "pairs": len(result.rows),
                "witnesses_valid": all(
                    validate_witness(row.verdict.witness).holds
                    for row in result.rows
                    if row.verdict.witness is not None
                ),
            }
        )
    df = pd.DataFrame(rows)

    algebra = diamond()
    verdict = is_epic(algebra, subalgebra_generated(algebra, []), VarietyPresentation.of(algebra))
    witness = verdict.witness
    swap = (
        (witness.stage, witness.g, witness.h) if witness is not None else (None, None, None)
    )

    return [
        check_all(df, "es", "ES en V(P*)"),
        check_all(df, "witnesses_valid", "testigos separadores"),
        check_equal("{0, 1} ≤ 𝟐 × 𝟐: identidad e intercambio", swap, (STAGE_AUTOMORPHISM, (0, 1), (1, 0))),
    ]


_LEMMA_I_TOPS = {1: ("a3", "a4", "w5", "a5"), 2: ("w7", "a6", "w8", "a7")}
_LEMMA_II_BLOCKS = {
    2: ["diamond"],
    3: ["x2"],
    4: ["diamond", "diamond"],
    6: ["x2", "diamond"],
    9: ["x2", "diamond", "diamond"],
}


def kg_lemma81(ctx: ScenarioContext) -> List[CheckResult]:
    """Subálgebras 𝟐 + D₂*ⁿ dentro de ↓b y conjuntos C con bloques X₂* y D₂*."""
    rows = []
    for n, tops in _LEMMA_I_TOPS.items():
        for top in tops:
            try:
                handle = lemma_kg_i_subalgebra(rn_downset(top), n)
                ok = handle.is_closed() and are_algebras_isomorphic(
                    handle.as_algebra(), alg_sum_all([bool2()] + [diamond()] * n)
                )
            except LemmaHypothesisError as e:
                logger.warning(f"kg-lemma81 ↓{top}, n={n}: {e}")
                ok = False
            rows.append({"case": f"↓{top} n={n}", "subalgebra": ok})
    first = pd.DataFrame(rows)

    rows = []
    for k in range(1, 10):
        handle = lemma_kg_ii_universe(rn_downset(f"a{k}"), q=k % 3)
        names = [c.name for c in sum_components(handle.as_algebra())]
        rows.append(
            {
                "case": f"C{k}",
                "closed": handle.is_closed(),
                "known_blocks": set(names) <= {"x2", "diamond"},
                "expected_blocks": names == _LEMMA_II_BLOCKS.get(k, names),
            }
        )
    second = pd.DataFrame(rows)
    return [
        check_all(first, "subalgebra", "𝟐 + D₂* + ⋯ + D₂* ≤ ↓b"),
        check_all(second, "closed", "C cerrado"),
        check_all(second, "known_blocks", "bloques de C en {X₂*, D₂*}"),
        check_all(second, "expected_blocks", "bloques de C esperados"),
    ]


def kg_decompose_scenario(ctx: ScenarioContext) -> List[CheckResult]:
    """kg_decompose recupera los sumandos de sumas aleatorias de 2 a 3 downsets."""
    rng = ctx.rng()
    rows = []
    for i in range(max(1, ctx.sample_size // 4)):
        algebra, names = random_kg_sum(rng, int(rng.integers(2, 4)))
        blocks = kg_decompose(algebra)
        recovered = len(blocks) == len(names) and all(
            are_algebras_isomorphic(block, kg_generator_sum([name]))
            for block, name in zip(blocks, names)
        )
        rows.append({"case": "+".join(names), "recovered": recovered})
    df = pd.DataFrame(rows)
    return [check_all(df, "recovered", "descomposición KG")]


def kg_cert(ctx: ScenarioContext) -> List[CheckResult]:
    """Niveles del certificado KG y su monotonía."""
    cases = [
        ("V(𝟐)", VarietyPresentation.of(bool2()), 2, 1),
        ("V(C₃)", VarietyPresentation.of(chain_algebra(3)), 2, 2),
        ("V(D₂* + 𝟐)", VarietyPresentation.of(alg_sum(diamond(), bool2())), 3, 2),
    ]
    rows = []
    for name, variety, n_max, expected in cases:
        certificate = kg_es_certificate(variety, n_max)
        rows.append(
            {
                "case": name,
                "level": certificate.level,
                "expected": expected,
                "monotone": certificate.monotone,
            }
        )
    df = pd.DataFrame(rows)
    return [
        check_equivalence(df, "level", "expected", "nivel del certificado"),
        check_all(df, "monotone", "monotonía"),
    ]


def algebra_d(ctx: ScenarioContext) -> List[CheckResult]:
    """La prelinealidad de tres variables falla en D = 𝟐 + ↓a3 + 𝟐, que es FSI."""
    algebra = algebra_D()
    verdict = validates(algebra, three_way_prelinearity())
    return [
        check_verdict("⋁(x → yᵢ) ∨ (yᵢ → x) ≈ 1 en D", verdict, expected=False),
        check_equal("D es FSI", is_fsi(algebra), True),
        check_equal("cantidad de nodos de D", len(nodes(algebra)), 4),
        check_equal("bloques de D", [c.name for c in sum_components(algebra)], ["2", "x2", "2"]),
    ]
