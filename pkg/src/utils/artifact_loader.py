"""
Módulo para leer artefactos escritos por ArtifactWriter o a mano.
Maneja listado por tipo y lectura de JSON y CSV.
"""

import glob
import json
import os
from typing import Any, List, Literal

import pandas as pd

from algebra.heyting import HeytingAlgebra
from poset.finite_poset import FinitePoset
from utils.logger import storage_logger as logger


class ArtifactLoader:
    """
    Lector de artefactos.
    Complemento de ArtifactWriter: lista y lee archivos del árbol por tipo.
    """

    VALID_KINDS = {"posets", "algebras", "reports", "diagrams"}

    def __init__(self, base_dir: str = "."):
        """
        Args:
            base_dir: Directorio raíz de los artefactos
        """
        self.base_dir = base_dir

    def list_artifacts(
        self, kind: Literal["posets", "algebras", "reports", "diagrams"], format: str = "json"
    ) -> List[str]:
        """
        Lista los artefactos de un tipo con la extensión indicada.

        Returns:
            Rutas ordenadas alfabéticamente

        Raises:
            ValueError: Si kind es inválido
        """
        if kind not in self.VALID_KINDS:
            raise ValueError(f"Tipo inválido: {kind}. Debe ser uno de {self.VALID_KINDS}")
        paths = sorted(glob.glob(os.path.join(self.base_dir, kind, f"*.{format}")))
        logger.debug(f"Encontrados {len(paths)} artefactos .{format} en {kind}/")
        return paths

    def load_json(self, path: str) -> Any:
        """
        Lee un documento JSON.

        Raises:
            FileNotFoundError: Si el archivo no existe
            ValueError: Si el contenido no es JSON válido
        """
        with open(path, encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"JSON inválido en '{path}': {e}") from e
        logger.debug(f"Documento leído desde '{path}'")
        return data

    def load_poset(self, path: str) -> FinitePoset:
        """Lee un poset {"points", "covers"}; valida el orden al construirlo."""
        return FinitePoset.from_dict(self.load_json(path))

    def load_algebra(self, path: str) -> HeytingAlgebra:
        """Lee un álgebra en forma dual {"dual": ...} o con tablas explícitas."""
        return HeytingAlgebra.from_dict(self.load_json(path))

    def load_csv(self, path: str) -> pd.DataFrame:
        df = pd.read_csv(path)
        logger.debug(f"Leídas {len(df)} filas desde '{path}'")
        return df

    def load_tables(self, kind: Literal["reports"] = "reports") -> pd.DataFrame:
        """
        Carga todas las tablas CSV de un tipo en un DataFrame consolidado.

        Returns:
            DataFrame con una columna 'source' por archivo de origen.
            DataFrame vacío si no hay archivos.
        """
        paths = self.list_artifacts(kind, format="csv")
        if not paths:
            logger.warning(f"No se encontraron tablas en {kind}/")
            return pd.DataFrame()

        dataframes = []
        for path in paths:
            try:
                df = self.load_csv(path)
            except Exception as e:
                logger.error(f"Error leyendo '{path}': {e}")
                continue
            if not df.empty:
                dataframes.append(df.assign(source=os.path.basename(path)))

        if not dataframes:
            logger.warning(f"Todas las tablas en {kind}/ estaban vacías o fallaron")
            return pd.DataFrame()

        consolidated = pd.concat(dataframes, ignore_index=True)
        logger.info(f"Cargadas {len(consolidated)} filas desde {len(dataframes)} tablas de {kind}/")
        return consolidated
