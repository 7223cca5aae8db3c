"""
Checks reutilizables para los escenarios de verificación.

Cada check retorna un resultado estructurado sin lanzar excepciones para
que el runner decida el estado final del escenario.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import pandas as pd

from utils.verdict import Verdict


@dataclass
class CheckResult:
    """
    Resultado estructurado de un check.

    Attributes:
        name: Identificador del check ejecutado
        passed: True si el check pasó
        severity: Nivel de severidad (critical, warning)
        description: Descripción legible del resultado
        affected_cases: Cantidad de casos que no cumplen
        details: Metadata adicional del check
        samples: Muestra de casos afectados para diagnóstico
    """

    name: str
    passed: bool
    severity: str
    description: str
    affected_cases: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    samples: List[Any] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el resultado a diccionario serializable."""
        return {
            "name": self.name,
            "passed": self.passed,
            "severity": self.severity,
            "description": self.description,
            "affected_cases": self.affected_cases,
            "details": self.details,
            "samples": self.samples,
        }


def _extract_samples(
    df: pd.DataFrame, mask: pd.Series, sample_size: int = 5
) -> List[Any]:
    """
    Extrae una muestra de la columna 'case' de los casos afectados.

    Returns:
        Lista de casos, limitada a sample_size
    """
    if "case" not in df.columns or df.empty or mask.sum() == 0:
        return []
    return df.loc[mask, "case"].head(sample_size).astype(str).tolist()


def check_all(
    df: pd.DataFrame,
    column: str,
    entity: str,
    severity: str = "critical",
    sample_size: int = 5,
) -> CheckResult:
    """
    Verifica que una columna booleana sea verdadera en todas las filas.

    Args:
        df: Tabla de casos (una fila por caso)
        column: Columna booleana a verificar
        entity: Nombre de lo verificado, para el reporte
        severity: Severidad del check (critical/warning)
        sample_size: Cantidad máxima de casos de ejemplo
    """
    if column not in df.columns:
        return CheckResult(
            name="check_all",
            passed=False,
            severity=severity,
            description=f"Columna ausente: '{column}'",
            affected_cases=len(df),
            details={"entity": entity, "column": column},
        )

    failing = ~df[column].astype(bool)
    affected = int(failing.sum())

    return CheckResult(
        name="check_all",
        passed=affected == 0,
        severity=severity,
        description=(
            f"'{column}' vale en los {len(df)} casos de {entity}"
            if affected == 0
            else f"'{column}' falla en {affected} de {len(df)} casos de {entity}"
        ),
        affected_cases=affected,
        details={"entity": entity, "column": column, "cases": len(df)},
        samples=_extract_samples(df, failing, sample_size),
    )


def check_equivalence(
    df: pd.DataFrame,
    left: str,
    right: str,
    entity: str,
    severity: str = "critical",
    sample_size: int = 5,
) -> CheckResult:
    """
    Verifica que dos columnas coincidan fila a fila (cero discrepancias).

    Args:
        df: Tabla de casos
        left: Columna calculada (por ejemplo la validez de una ecuación)
        right: Columna de referencia (por ejemplo una medida del dual)
        entity: Nombre de lo verificado, para el reporte
        severity: Severidad del check (critical/warning)
        sample_size: Cantidad máxima de casos de ejemplo
    """
    missing_columns = [col for col in (left, right) if col not in df.columns]
    if missing_columns:
        return CheckResult(
            name="check_equivalence",
            passed=False,
            severity=severity,
            description=f"Columnas ausentes: {missing_columns}",
            affected_cases=len(df),
            details={"entity": entity, "missing_columns": missing_columns},
        )

    mismatch = df[left] != df[right]
    affected = int(mismatch.sum())

    return CheckResult(
        name="check_equivalence",
        passed=affected == 0,
        severity=severity,
        description=(
            f"'{left}' ⟺ '{right}' sin discrepancias en {entity}"
            if affected == 0
            else f"{affected} discrepancias entre '{left}' y '{right}' en {entity}"
        ),
        affected_cases=affected,
        details={"entity": entity, "left": left, "right": right, "cases": len(df)},
        samples=_extract_samples(df, mismatch, sample_size),
    )


def check_equal(
    name: str, actual: Any, expected: Any, severity: str = "critical"
) -> CheckResult:
    """Verifica un valor puntual contra el esperado."""
    passed = actual == expected
    return CheckResult(
        name=name,
        passed=passed,
        severity=severity,
        description=(
            f"{name}: {actual}"
            if passed
            else f"{name}: se obtuvo {actual}, se esperaba {expected}"
        ),
        affected_cases=0 if passed else 1,
        details={"actual": actual, "expected": expected},
    )


def check_verdict(
    name: str, verdict: Verdict, expected: bool = True, severity: str = "critical"
) -> CheckResult:
    """
    Verifica que un Verdict tenga el valor esperado y adjunta su testigo.
    """
    passed = verdict.holds == expected
    return CheckResult(
        name=name,
        passed=passed,
        severity=severity,
        description=(
            f"{name}: {'vale' if verdict.holds else 'falla'}"
            + (f" ({verdict.reason})" if verdict.reason else "")
        ),
        affected_cases=0 if passed else 1,
        details=verdict.to_dict(),
    )


def check_volume(
    df: pd.DataFrame,
    entity: str,
    min_expected: int,
    severity: str = "warning",
) -> CheckResult:
    """
    Verifica que un barrido haya recorrido al menos min_expected casos.
    """
    actual = len(df)
    passed = actual >= min_expected

    return CheckResult(
        name="check_volume",
        passed=passed,
        severity=severity,
        description=(
            f"Volumen válido para '{entity}': {actual} >= {min_expected}"
            if passed
            else f"Volumen insuficiente para '{entity}': {actual} < {min_expected}"
        ),
        affected_cases=0 if passed else (min_expected - actual),
        details={
            "entity": entity,
            "actual_count": actual,
            "min_expected": min_expected,
        },
    )
