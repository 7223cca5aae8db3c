"""
Punto de entrada de línea de comandos.

Cada subcomando imprime un reporte JSON en stdout y retorna el código de
salida: 0 si el veredicto es verdadero, 1 si es falso (el reporte trae el
testigo), 2 ante errores de uso o de entrada, 3 si se excede un límite.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from algebra.heyting import HeytingAlgebra, HeytingValidationError, from_upsets
from algebra.subalgebras import subalgebra_generated
from constructions.kuznetsov_gerciu import algebra_D, b_n_family
from constructions.named import bool2, chain_algebra, d2_space, diamond, x_n_space
from constructions.rieger_nishimura import rn_downset
from constructions.towers import d2_partition, d2_tower_labeled, r_n_partition, x_n_tower
from duality.congruences import congruences_via_upsets
from duality.esakia import default_space, dual_space
from duality.partitions import (
    CorrectPartitionError,
    enumerate_subalgebras,
    subalgebra_to_partition,
)
from poset.dot import emit, morphism_to_dot
from poset.finite_poset import FinitePoset, PosetValidationError
from quality.runner import ScenarioRunner
from terms.evaluation import MissingVariableError, validates
from terms.families import NAMED_EQUATIONS
from terms.syntax import TermSyntaxError, parse_equation
from utils.artifact_loader import ArtifactLoader
from utils.artifact_writer import ArtifactWriter
from utils.limits import ResourceCapError
from utils.logger import cli_logger as logger
from variety.epic import is_epic, validate_witness
from variety.es_decision import es_property, kg_es_certificate
from variety.presentation import VarietyMembershipError, VarietyPresentation, contains

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

MAKE_NAMES = (
    "bool2",
    "chain",
    "diamond",
    "d2-space",
    "xn-space",
    "xn-tower",
    "d2-tower",
    "rn-downset",
    "bn",
    "algebra-d",
)

INPUT_ERRORS = (
    ValueError,
    KeyError,
    OSError,
    TermSyntaxError,
    MissingVariableError,
    PosetValidationError,
    HeytingValidationError,
    CorrectPartitionError,
    VarietyMembershipError,
)

Result = Tuple[int, Dict[str, Any]]


class UsageError(Exception):
    """Se lanza cuando faltan flags requeridos por un subcomando."""


def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"Tipo no serializable: {type(value).__name__}")


def _to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2, default=_json_default)


# ----------------------------------------------------------------------
# Carga de entradas
# ----------------------------------------------------------------------


def _load_algebra(loader: ArtifactLoader, path: str) -> HeytingAlgebra:
    """Acepta un álgebra o un poset; un poset se lee como su álgebra de upsets."""
    data = loader.load_json(path)
    if isinstance(data, dict) and "points" in data:
        return from_upsets(FinitePoset.from_dict(data))
    return HeytingAlgebra.from_dict(data)


def _load_space(loader: ArtifactLoader, args: argparse.Namespace) -> FinitePoset:
    if args.poset:
        return loader.load_poset(args.poset)
    if args.alg:
        return dual_space(_load_algebra(loader, args.alg)).poset
    raise UsageError("Se requiere --poset o --alg")


def _require(value: Any, flag: str) -> Any:
    if value is None or value == []:
        raise UsageError(f"Falta el flag {flag}")
    return value


def _variety(loader: ArtifactLoader, args: argparse.Namespace) -> VarietyPresentation:
    paths = _require(args.gens, "--gens")
    return VarietyPresentation.of(*(_load_algebra(loader, p) for p in paths))


def _subalgebra_generators(algebra: HeytingAlgebra, text: Optional[str]) -> List[int]:
    if not text:
        return []
    return [algebra.index_of(label.strip()) for label in text.split(",") if label.strip()]


# ----------------------------------------------------------------------
# Subcomandos
# ----------------------------------------------------------------------


def _make_object(args: argparse.Namespace) -> Tuple[Any, Optional[Any], Dict[str, Any]]:
    """
    Construye el objeto nombrado.

    Returns:
        (objeto, partición opcional, metadata extra del reporte)
    """
    name = args.name
    if name == "bool2":
        return bool2(), None, {}
    if name == "chain":
        return chain_algebra(_require(args.k, "--k")), None, {}
    if name == "diamond":
        return diamond(), None, {}
    if name == "d2-space":
        return d2_space(), None, {}
    if name == "xn-space":
        return x_n_space(_require(args.n, "--n")), None, {}
    if name == "xn-tower":
        t = x_n_tower(_require(args.n, "--n"), _require(args.k, "--k"), with_top=not args.no_top)
        return t.poset, r_n_partition(t), {"names": list(t.names)}
    if name == "d2-tower":
        t = d2_tower_labeled(_require(args.k, "--k"), with_top=not args.no_top)
        return t.poset, d2_partition(t), {"names": list(t.names)}
    if name == "rn-downset":
        return rn_downset(_require(args.element, "--element")), None, {}
    if name == "bn":
        return b_n_family(_require(args.n, "--n")), None, {}
    return algebra_D(), None, {}


def cmd_make(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    obj, partition, extra = _make_object(args)
    if isinstance(obj, FinitePoset):
        space = obj
        report: Dict[str, Any] = {"name": args.name, "kind": "poset", "points": obj.n, "object": obj.to_dict()}
    else:
        space = dual_space(obj).poset
        report = {"name": args.name, "kind": "algebra", "elements": obj.m, "object": obj.to_dict()}
    report.update(extra)

    classes = None
    if partition is not None:
        classes = [list(c) for c in partition.classes]
        report["partition"] = [[space.labels[p] for p in c] for c in classes]

    if args.out:
        writer.write(args.out, report["object"], "json")
    if args.dot:
        writer.write(args.dot, emit(space, classes), "dot")
    return EXIT_OK, report


def cmd_dualize(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    if args.alg:
        algebra = _load_algebra(loader, args.alg)
        result = dual_space(algebra).poset
        report = {"from": "algebra", "elements": algebra.m, "points": result.n, "dual": result.to_dict()}
        document = result.to_dict()
    elif args.poset:
        poset = loader.load_poset(args.poset)
        algebra = from_upsets(poset)
        report = {"from": "poset", "points": poset.n, "elements": algebra.m, "dual": algebra.to_dict()}
        document = algebra.to_dict()
    else:
        raise UsageError("Se requiere --poset o --alg")

    if args.out:
        writer.write(args.out, document, "json")
    return EXIT_OK, report


def cmd_check_eq(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    algebra = _load_algebra(loader, _require(args.alg, "--alg"))
    text = _require(args.eq, "--eq")
    equation = NAMED_EQUATIONS[text]() if text in NAMED_EQUATIONS else parse_equation(text)
    verdict = validates(algebra, equation)
    report = {"equation": equation.format(), "elements": algebra.m, **verdict.to_dict()}
    return (EXIT_OK if verdict.holds else EXIT_FALSE), report


def cmd_measures(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    space = _load_space(loader, args)
    report = {
        "points": space.n,
        "depth": space.depth,
        "width": space.width,
        "incomparability": space.incomparability_degree,
    }
    return EXIT_OK, report


def cmd_subalgebras(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    algebra = _load_algebra(loader, _require(args.alg, "--alg"))
    subalgebras = enumerate_subalgebras(algebra)
    report = {
        "elements": algebra.m,
        "count": len(subalgebras),
        "subalgebras": [s.to_dict()["elements"] for s in subalgebras],
    }
    if args.out:
        writer.write(args.out, report, "json")
    return EXIT_OK, report


def cmd_congruences(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    algebra = _load_algebra(loader, _require(args.alg, "--alg"))
    space, _ = default_space(algebra)
    rows = []
    for congruence in congruences_via_upsets(algebra):
        blocks: Dict[int, List[str]] = {}
        for a, representative in enumerate(congruence.classes):
            blocks.setdefault(representative, []).append(algebra.labels[a])
        rows.append(
            {
                "upset": [space.labels[p] for p in range(space.n) if congruence.upset >> p & 1],
                "classes": list(blocks.values()),
                "quotient_elements": congruence.quotient.m,
            }
        )
    report = {"elements": algebra.m, "count": len(rows), "congruences": rows}
    if args.out:
        writer.write(args.out, report, "json")
    return EXIT_OK, report


def _variety_es(args, loader, writer) -> Result:
    result = es_property(_variety(loader, args), threads=args.threads)
    report = {"command": "es", **result.to_dict()}
    if args.out:
        writer.write(args.out, report, "json")
    return (EXIT_OK if result.holds else EXIT_FALSE), report


def _variety_member(args, loader, writer) -> Result:
    variety = _variety(loader, args)
    verdict = contains(variety, _load_algebra(loader, _require(args.alg, "--alg")))
    return (EXIT_OK if verdict.holds else EXIT_FALSE), {"command": "member", **verdict.to_dict()}


def _variety_epic(args, loader, writer) -> Result:
    variety = _variety(loader, args)
    algebra = _load_algebra(loader, _require(args.alg, "--alg"))
    subalgebra = subalgebra_generated(algebra, _subalgebra_generators(algebra, args.sub))
    verdict = is_epic(algebra, subalgebra, variety)
    report: Dict[str, Any] = {
        "command": "epic",
        "subalgebra": subalgebra.to_dict()["elements"],
        **verdict.to_dict(),
    }
    if verdict.witness is not None:
        report["witness_check"] = validate_witness(verdict.witness).to_dict()
        if args.dot:
            witness = verdict.witness
            writer.write(args.dot, morphism_to_dot(witness.space, witness.target, [witness.g, witness.h]), "dot")
    return (EXIT_OK if verdict.epic else EXIT_FALSE), report


def _variety_kg_cert(args, loader, writer) -> Result:
    certificate = kg_es_certificate(_variety(loader, args), n_max=args.max_n or 3)
    if args.out:
        writer.write(args.out, certificate.table, "csv")
    return (EXIT_OK if certificate.level is not None else EXIT_FALSE), {"command": "kg-cert", **certificate.to_dict()}


VARIETY_COMMANDS: Dict[str, Callable[..., Result]] = {
    "es": _variety_es,
    "member": _variety_member,
    "epic": _variety_epic,
    "kg-cert": _variety_kg_cert,
}


def cmd_variety(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    return VARIETY_COMMANDS[args.action](args, loader, writer)


def cmd_scenario(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    options: Dict[str, Any] = {"threads": args.threads or 1}
    if args.seed is not None:
        options["seed"] = args.seed
    if args.max_n is not None:
        options["max_points"] = args.max_n
    if args.samples is not None:
        options["sample_size"] = args.samples
    runner = ScenarioRunner(**options)

    if args.name == "all":
        reports = runner.run_all()
    else:
        reports = [runner.run(args.name)]

    passed = all(r.passed for r in reports)
    report = {"passed": passed, "scenarios": [r.to_dict() for r in reports]}
    if args.out:
        writer.write(args.out, report, "json")
    return (EXIT_OK if passed else EXIT_FALSE), report


def cmd_emit_dot(args: argparse.Namespace, loader: ArtifactLoader, writer: ArtifactWriter) -> Result:
    classes = None
    if args.sub is not None:
        algebra = _load_algebra(loader, _require(args.alg, "--alg"))
        handle = subalgebra_generated(algebra, _subalgebra_generators(algebra, args.sub))
        partition = subalgebra_to_partition(handle)
        space = partition.space
        classes = [list(c) for c in partition.classes]
    else:
        space = _load_space(loader, args)

    text = emit(space, classes)
    report: Dict[str, Any] = {"points": space.n}
    if args.dot:
        report["path"] = writer.write(args.dot, text, "dot")
    else:
        report["dot"] = text
    return EXIT_OK, report


COMMANDS: Dict[str, Callable[..., Result]] = {
    "make": cmd_make,
    "dualize": cmd_dualize,
    "check-eq": cmd_check_eq,
    "measures": cmd_measures,
    "subalgebras": cmd_subalgebras,
    "congruences": cmd_congruences,
    "variety": cmd_variety,
    "scenario": cmd_scenario,
    "emit-dot": cmd_emit_dot,
}


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def _add_io_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alg", help="Álgebra JSON (forma dual o tablas)")
    parser.add_argument("--poset", help="Poset JSON {points, covers}")
    parser.add_argument("--out", help="Archivo de salida")
    parser.add_argument("--dot", help="Archivo DOT de salida")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heyting-es",
        description="Álgebras de Heyting finitas, espacios de Esakia y propiedad ES",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    make = sub.add_parser("make", help="Construye un objeto con nombre")
    make.add_argument("name", choices=MAKE_NAMES)
    make.add_argument("--n", type=int)
    make.add_argument("--k", type=int)
    make.add_argument("--element", help="Elemento de RN para rn-downset (por ejemplo a3)")
    make.add_argument("--no-top", action="store_true", help="Torre sin ⊤")
    make.add_argument("--out")
    make.add_argument("--dot")

    for name, help_text in (
        ("dualize", "Dual de un álgebra o álgebra de un poset"),
        ("check-eq", "Valida una ecuación en un álgebra"),
        ("measures", "Profundidad, ancho e incomparabilidad del dual"),
        ("subalgebras", "Subálgebras vía particiones correctas"),
        ("congruences", "Congruencias vía upsets del dual"),
        ("emit-dot", "Exporta el dual (y una partición) a DOT"),
    ):
        command = sub.add_parser(name, help=help_text)
        _add_io_flags(command)
        if name == "check-eq":
            command.add_argument("--eq", help='Ecuación o nombre (prelinearity, three-way-prelinearity, excluded-middle)')
        if name == "emit-dot":
            command.add_argument("--sub", help="Generadores de la subálgebra (etiquetas)")

    variety = sub.add_parser("variety", help="Decisiones sobre variedades generadas")
    variety.add_argument("action", choices=tuple(VARIETY_COMMANDS))
    variety.add_argument("--gens", nargs="+", help="Generadores (álgebras o posets JSON)")
    variety.add_argument("--sub", help="Generadores de la subálgebra para epic")
    variety.add_argument("--max-n", type=int, dest="max_n")
    variety.add_argument("--threads", type=int)
    _add_io_flags(variety)

    scenario = sub.add_parser("scenario", help="Ejecuta un escenario de verificación")
    scenario.add_argument("name", choices=ScenarioRunner.names() + ("all",))
    scenario.add_argument("--seed", type=int)
    scenario.add_argument("--max-n", type=int, dest="max_n", help="Tamaño de los barridos exhaustivos")
    scenario.add_argument("--samples", type=int, help="Casos de los barridos aleatorios")
    scenario.add_argument("--threads", type=int)
    scenario.add_argument("--out")

    return parser


# ----------------------------------------------------------------------
# Punto de entrada
# ----------------------------------------------------------------------


def run(argv: Optional[List[str]] = None) -> int:
    """
    Ejecuta un subcomando y escribe el reporte JSON en stdout.

    Args:
        argv: Argumentos sin el nombre del programa

    Returns:
        Código de salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    loader = ArtifactLoader()
    writer = ArtifactWriter(".")
    logger.info(f"=== heyting-es {args.command} ===")

    try:
        status, report = COMMANDS[args.command](args, loader, writer)
    except ResourceCapError as e:
        logger.error(f"Límite de recursos excedido: {e}")
        status, report = EXIT_CAP, {"error": "resource_cap", **e.to_dict()}
    except UsageError as e:
        logger.error(f"Error de uso: {e}")
        status, report = EXIT_USAGE, {"error": "usage", "message": str(e)}
    except INPUT_ERRORS as e:
        logger.error(f"Entrada inválida: {e}")
        status, report = EXIT_USAGE, {"error": "input", "message": str(e)}
    except Exception as e:
        logger.error(f"Error inesperado: {e}", exc_info=True)
        status, report = EXIT_USAGE, {"error": "unexpected", "message": str(e)}

    print(_to_json(report))
    logger.info(f"Subcomando {args.command} terminado con código {status}")
    return status


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
