"""
Resultado estructurado de una pregunta sí/no.

Igual que los checks de calidad, las verificaciones retornan un Verdict
en lugar de lanzar excepciones: una respuesta negativa no es un error.
"""

from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass(frozen=True)
class Verdict:
    """
    Veredicto con testigo.

    Attributes:
        holds: True si la propiedad se cumple
        reason: Axioma o condición violada (vacío si holds)
        witness: Datos que justifican la respuesta negativa
    """

    holds: bool
    reason: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(holds=True)

    @classmethod
    def fail(cls, reason: str, **witness: Any) -> "Verdict":
        return cls(holds=False, reason=reason, witness=dict(witness))

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el veredicto a diccionario serializable."""
        return {"holds": self.holds, "reason": self.reason, "witness": self.witness}
