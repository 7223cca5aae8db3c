"""
Runner de escenarios que ejecuta los checks de cada barrido y produce
un reporte consolidado con el estado final para el CLI.
"""

import time
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional, Tuple

from quality.checks import CheckResult
from quality.corpus import DEFAULT_SEED
from quality.scenarios import (
    ScenarioContext,
    algebra_d,
    correspondences,
    d2_tower,
    depth_width_axioms,
    duality_roundtrip,
    fg_es,
    kg_cert,
    kg_decompose_scenario,
    kg_lemma81,
    rn_towers,
    sigma_axioms_scenario,
    sum_duality,
    trick_width,
)
from utils.logger import quality_logger as logger


class QualityCheckError(Exception):
    """Se lanza cuando checks críticos de un escenario fallan."""

    def __init__(self, report: "ScenarioReport"):
        self.report = report
        failed = [c["description"] for c in report.checks if not c["passed"]]
        super().__init__(f"Escenario '{report.scenario}' con checks críticos fallidos: {failed}")


ScenarioFn = Callable[[ScenarioContext], List[CheckResult]]

SCENARIOS: Dict[str, ScenarioFn] = {
    "duality-roundtrip": duality_roundtrip,
    "depth-width-axioms": depth_width_axioms,
    "sigma-axioms": sigma_axioms_scenario,
    "correspondences": correspondences,
    "sum-duality": sum_duality,
    "rn-towers": rn_towers,
    "d2-tower": d2_tower,
    "trick-width": trick_width,
    "fg-es": fg_es,
    "kg-lemma81": kg_lemma81,
    "kg-decompose": kg_decompose_scenario,
    "kg-cert": kg_cert,
    "algebra-d": algebra_d,
}


@dataclass
class ScenarioReport:
    """
    Reporte consolidado de un escenario.

    Attributes:
        scenario: Nombre del escenario
        description: Qué verifica el escenario
        generated_at: Timestamp de generación del reporte
        seed: Semilla usada por los barridos aleatorios
        elapsed_seconds: Duración de la ejecución
        total_checks: Cantidad total de checks ejecutados
        passed_checks: Cantidad de checks que pasaron
        failed_checks: Cantidad de checks que fallaron
        has_critical_failures: True si algún check crítico falló
        checks: Lista de resultados individuales serializados
    """

    scenario: str
    description: str
    generated_at: str
    seed: int
    elapsed_seconds: float
    total_checks: int
    passed_checks: int
    failed_checks: int
    has_critical_failures: bool
    checks: List[Dict[str, Any]]

    @property
    def passed(self) -> bool:
        return not self.has_critical_failures

    def to_dict(self) -> Dict[str, Any]:
        """Serializa el reporte completo a diccionario."""
        return {
            "scenario": self.scenario,
            "description": self.description,
            "generated_at": self.generated_at,
            "seed": self.seed,
            "elapsed_seconds": self.elapsed_seconds,
            "passed": self.passed,
            "total_checks": self.total_checks,
            "passed_checks": self.passed_checks,
            "failed_checks": self.failed_checks,
            "has_critical_failures": self.has_critical_failures,
            "checks": self.checks,
        }


class ScenarioRunner:
    """
    Orquestador de escenarios.

    Política de severidad:
    - critical + failed => el escenario falla (exit 1 en el CLI)
    - warning + failed => solo informativo
    """

    def __init__(
        self,
        seed: int = DEFAULT_SEED,
        max_points: int = 4,
        sample_size: int = 200,
        threads: int = 1,
    ):
        """
        Args:
            seed: Semilla de los barridos aleatorios
            max_points: Tamaño máximo de los barridos exhaustivos
            sample_size: Casos de los barridos aleatorios
            threads: Workers para las decisiones ES
        """
        self.context = ScenarioContext(
            seed=seed, max_points=max_points, sample_size=sample_size, threads=threads
        )

    @staticmethod
    def names() -> Tuple[str, ...]:
        return tuple(SCENARIOS)

    def run(self, name: str, seed: Optional[int] = None) -> ScenarioReport:
        """
        Ejecuta un escenario por nombre.

        Args:
            name: Nombre del escenario
            seed: Semilla para esta ejecución (por defecto la del runner)

        Returns:
            ScenarioReport consolidado

        Raises:
            KeyError: Si el escenario no existe
        """
        if name not in SCENARIOS:
            raise KeyError(f"Escenario desconocido: '{name}'. Disponibles: {', '.join(SCENARIOS)}")
        scenario = SCENARIOS[name]
        context = self.context if seed is None else replace(self.context, seed=seed)

        logger.info(f"Ejecutando escenario '{name}' (semilla {context.seed})")
        start = time.perf_counter()
        results = scenario(context)
        elapsed = time.perf_counter() - start

        return self._build_report(name, scenario, context.seed, elapsed, results)

    def run_all(self) -> List[ScenarioReport]:
        """Ejecuta todos los escenarios en el orden del catálogo."""
        return [self.run(name) for name in SCENARIOS]

    def run_or_raise(self, name: str) -> ScenarioReport:
        """
        Como run, pero lanza QualityCheckError si hay fallas críticas.
        """
        report = self.run(name)
        if report.has_critical_failures:
            raise QualityCheckError(report)
        return report

    def _build_report(
        self,
        name: str,
        scenario: ScenarioFn,
        seed: int,
        elapsed: float,
        results: List[CheckResult],
    ) -> ScenarioReport:
        """
        Construye el reporte consolidado a partir de resultados individuales.
        """
        total = len(results)
        passed = sum(1 for r in results if r.passed)
        failed = total - passed
        has_critical = any(not r.passed and r.severity == "critical" for r in results)

        description = (scenario.__doc__ or "").strip().splitlines()[0] if scenario.__doc__ else ""
        report = ScenarioReport(
            scenario=name,
            description=description,
            generated_at=datetime.now(timezone.utc).isoformat(),
            seed=seed,
            elapsed_seconds=round(elapsed, 3),
            total_checks=total,
            passed_checks=passed,
            failed_checks=failed,
            has_critical_failures=has_critical,
            checks=[r.to_dict() for r in results],
        )

        log = logger.info if report.passed else logger.warning
        log(
            f"Escenario '{name}': total={total}, passed={passed}, "
            f"failed={failed}, critical_failures={has_critical} ({report.elapsed_seconds}s)"
        )
        return report
