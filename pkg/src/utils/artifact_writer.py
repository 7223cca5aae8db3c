"""
Módulo para escribir artefactos (posets, álgebras, reportes, diagramas).
Maneja el árbol de directorios por tipo y los formatos (JSON, DOT, CSV).
"""

import json
import os
from typing import Any, Dict, List, Literal, Union

import pandas as pd

from utils.logger import storage_logger as logger

ArtifactData = Union[Dict[str, Any], List[Dict[str, Any]], str, pd.DataFrame]


class ArtifactWriter:
    """
    Escritor genérico de artefactos en disco.
    Cada tipo de artefacto vive en su propio subdirectorio de base_dir.
    """

    VALID_KINDS = {"posets", "algebras", "reports", "diagrams"}
    VALID_FORMATS = {"json", "dot", "csv"}

    def __init__(self, base_dir: str):
        """
        Args:
            base_dir: Directorio raíz de los artefactos
        """
        self.base_dir = base_dir

    def save(
        self,
        kind: Literal["posets", "algebras", "reports", "diagrams"],
        name: str,
        data: ArtifactData,
        format: Literal["json", "dot", "csv"] = "json",
    ) -> str:
        """
        Guarda un artefacto en <base_dir>/<kind>/<name>.<format>.

        Args:
            kind: Tipo de artefacto
            name: Nombre del archivo sin extensión
            data: Documento JSON, texto DOT o tabla
            format: Formato de salida

        Returns:
            Ruta del archivo escrito

        Raises:
            ValueError: Si kind o format son inválidos
            ValueError: Si data está vacío o no corresponde al formato
        """
        if kind not in self.VALID_KINDS:
            raise ValueError(f"Tipo inválido: {kind}. Debe ser uno de {self.VALID_KINDS}")
        path = self._build_path(kind, name, format)
        self.write(path, data, format)
        return path

    def write(
        self, path: str, data: ArtifactData, format: Literal["json", "dot", "csv"] = "json"
    ) -> str:
        """
        Escribe un artefacto en una ruta explícita (flags --out y --dot).

        Args:
            path: Ruta destino; se crean los directorios faltantes
            data: Documento JSON, texto DOT o tabla
            format: Formato de salida

        Returns:
            Ruta del archivo escrito
        """
        self._validate_inputs(format, data)

        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        if format == "json":
            self._save_as_json(path, data)
        elif format == "dot":
            self._save_as_dot(path, data)
        else:  # csv
            self._save_as_csv(path, data)

        logger.info(f"Artefacto guardado en {path} (formato: {format})")
        return path

    def _validate_inputs(self, format: str, data: ArtifactData) -> None:
        """Valida formato y contenido antes de escribir."""
        if format not in self.VALID_FORMATS:
            raise ValueError(
                f"Formato inválido: {format}. Debe ser uno de {self.VALID_FORMATS}"
            )

        if data is None or (isinstance(data, pd.DataFrame) and data.empty):
            raise ValueError("No hay datos para guardar")
        if not isinstance(data, pd.DataFrame) and not data:
            raise ValueError("No hay datos para guardar")

        if format == "dot" and not isinstance(data, str):
            raise ValueError("El formato dot requiere texto DOT")
        if format == "csv" and not isinstance(data, (pd.DataFrame, list)):
            raise ValueError("El formato csv requiere una tabla o lista de registros")

    def _build_path(self, kind: str, name: str, format: str) -> str:
        """Construye la ruta <base_dir>/<kind>/<name>.<format>."""
        return os.path.join(self.base_dir, kind, f"{name}.{format}")

    def _save_as_json(self, path: str, data: ArtifactData) -> None:
        if isinstance(data, pd.DataFrame):
            data = data.to_dict(orient="records")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=2)
            f.write("\n")

    def _save_as_dot(self, path: str, data: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(data)

    def _save_as_csv(self, path: str, data: ArtifactData) -> None:
        df = data if isinstance(data, pd.DataFrame) else pd.DataFrame(data)
        df.to_csv(path, index=False)
        logger.debug(f"{len(df)} filas y {len(df.columns)} columnas escritas en {path}")
