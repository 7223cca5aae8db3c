"""
Tests unitarios para quality.runner.
Verifica que el runner orquesta los escenarios y produce reportes
consolidados con la política de severidad correcta.
"""

import pytest
import pytest_check as check

from quality.checks import CheckResult
from quality.runner import SCENARIOS, QualityCheckError, ScenarioRunner


@pytest.fixture
def runner():
    """Fixture que retorna un ScenarioRunner con barridos chicos."""
    return ScenarioRunner(max_points=3, sample_size=6)


def _failing(severity):
    def scenario(ctx):
        """Escenario de prueba."""
        return [
            CheckResult(name="ok", passed=True, severity="critical", description="ok"),
            CheckResult(name="falla", passed=False, severity=severity, description="falla"),
        ]

    return scenario


class TestScenarioRunner:
    """Tests para ScenarioRunner.run y run_or_raise."""

    def test_names_should_list_the_thirteen_scenarios(self):
        """Verifica el catálogo completo."""
        check.equal(len(ScenarioRunner.names()), 13)
        check.is_in("algebra-d", ScenarioRunner.names())

    def test_run_should_raise_key_error_when_scenario_is_unknown(self, runner):
        """Verifica el error para nombres desconocidos."""
        with pytest.raises(KeyError) as exc_info:
            runner.run("no-existe")

        check.is_in("no-existe", str(exc_info.value))

    def test_run_should_pass_and_keep_falsifier_when_algebra_d(self, runner):
        """Verifica el escenario de D con el contraejemplo en el reporte."""
        report = runner.run("algebra-d")

        check.is_true(report.passed)
        check.equal(report.total_checks, 4)
        check.is_in("assignment", report.checks[0]["details"]["witness"])

    def test_run_should_pass_when_duality_roundtrip_is_small(self, runner):
        """Verifica la ida y vuelta de la dualidad en posets de hasta 3 puntos."""
        report = runner.run("duality-roundtrip")

        check.is_true(report.passed, report.checks)
        check.equal(report.failed_checks, 0)

    def test_run_should_be_deterministic_when_seed_is_fixed(self, runner):
        """Verifica que dos corridas con la misma semilla dan los mismos checks."""
        first = runner.run("sum-duality")
        second = runner.run("sum-duality")

        check.equal(first.checks, second.checks)
        check.equal(first.seed, second.seed)

    def test_run_should_use_given_seed_when_overridden(self, runner):
        """Verifica la semilla por ejecución."""
        check.equal(runner.run("sum-duality", seed=7).seed, 7)

    def test_run_should_pass_for_exhaustive_sweeps_when_posets_are_small(self, runner):
        """Verifica los barridos de axiomas y correspondencias hasta 3 puntos."""
        for name in ("depth-width-axioms", "sigma-axioms", "correspondences"):
            report = runner.run(name)
            check.is_true(report.passed, (name, report.checks))

    def test_run_should_pass_for_constructions(self, runner):
        """Verifica torres, trick-width y lemas de KG."""
        for name in ("rn-towers", "d2-tower", "trick-width", "kg-lemma81", "kg-decompose"):
            report = runner.run(name)
            check.is_true(report.passed, (name, report.checks))

    def test_run_should_pass_when_kg_certificates_are_computed(self, runner):
        """Verifica los niveles de certificado esperados."""
        check.is_true(runner.run("kg-cert").passed)

    def test_run_should_pass_when_es_is_checked_on_small_generators(self):
        """Verifica fg-es sobre generadores con dual de hasta 2 puntos."""
        report = ScenarioRunner(max_points=2).run("fg-es")

        check.is_true(report.passed, report.checks)

    def test_run_should_fail_report_when_critical_check_fails(self, runner, monkeypatch):
        """Verifica la política: critical + failed => reporte fallido."""
        monkeypatch.setitem(SCENARIOS, "prueba", _failing("critical"))

        report = runner.run("prueba")

        check.is_false(report.passed)
        check.equal(report.failed_checks, 1)
        check.equal(report.description, "Escenario de prueba.")

    def test_run_should_pass_report_when_only_warning_fails(self, runner, monkeypatch):
        """Verifica la política: warning + failed => no bloqueante."""
        monkeypatch.setitem(SCENARIOS, "prueba", _failing("warning"))

        report = runner.run("prueba")

        check.is_true(report.passed)
        check.equal(report.failed_checks, 1)

    def test_run_or_raise_should_raise_when_critical_check_fails(self, runner, monkeypatch):
        """Verifica QualityCheckError con el reporte adjunto."""
        monkeypatch.setitem(SCENARIOS, "prueba", _failing("critical"))

        with pytest.raises(QualityCheckError) as exc_info:
            runner.run_or_raise("prueba")

        check.equal(exc_info.value.report.scenario, "prueba")

    def test_to_dict_should_include_passed_flag(self, runner):
        """Verifica la serialización del reporte."""
        d = runner.run("algebra-d").to_dict()

        check.is_true(d["passed"])
        check.equal(d["scenario"], "algebra-d")

    @pytest.mark.slow
    def test_run_all_should_pass_every_scenario_when_defaults_are_used(self):
        """Verifica el catálogo completo con los tamaños por defecto."""
        reports = ScenarioRunner().run_all()

        check.equal([r.scenario for r in reports], list(SCENARIOS))
        for report in reports:
            check.is_true(report.passed, report.scenario)
