"""
Exporta posets, particiones y morfismos a texto DOT de graphviz.

Para obtener una imagen:

    dot -Tpng -O poset.dot
"""

from typing import List, Optional, Sequence

from poset.finite_poset import FinitePoset

PALETTE = (
    "lightblue",
    "lightpink",
    "palegreen",
    "khaki",
    "plum",
    "lightsalmon",
    "lightcyan",
    "wheat",
)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _poset_body(poset: FinitePoset, prefix: str, indent: str) -> List[str]:
    lines = []
    for x in range(poset.n):
        lines.append(f"{indent}{prefix}{x} [label={_quote(poset.labels[x])}];")
    for x, y in poset.covers:
        lines.append(f"{indent}{prefix}{x} -> {prefix}{y};")
    return lines


def poset_to_dot(poset: FinitePoset, name: str = "poset") -> str:
    """
    Un nodo por punto y una arista por cubrimiento, de abajo hacia arriba.

    Args:
        poset: Poset a dibujar
        name: Nombre del grafo

    Returns:
        Texto DOT
    """
    lines = [f"digraph {_quote(name)} {{", "\trankdir=BT;", "\tnode [shape=circle];"]
    lines.extend(_poset_body(poset, "p", "\t"))
    lines.append("}")
    return "\n".join(lines) + "\n"


def partition_to_dot(
    poset: FinitePoset, classes: Sequence[Sequence[int]], name: str = "partition"
) -> str:
    """
    Dibuja el poset con cada clase no trivial como grupo coloreado.

    Args:
        poset: Espacio subyacente
        classes: Clases de la partición
        name: Nombre del grafo

    Returns:
        Texto DOT
    """
    lines = [f"digraph {_quote(name)} {{", "\trankdir=BT;", "\tnode [shape=circle];"]
    colored = [c for c in classes if len(c) > 1]
    for index, members in enumerate(colored):
        color = PALETTE[index % len(PALETTE)]
        lines.append(f"\tsubgraph cluster_{index} {{")
        lines.append(f"\t\tstyle=filled; color={color};")
        for x in members:
            lines.append(f"\t\tp{x};")
        lines.append("\t}")
    lines.extend(_poset_body(poset, "p", "\t"))
    lines.append("}")
    return "\n".join(lines) + "\n"


def morphism_to_dot(
    source: FinitePoset,
    target: FinitePoset,
    mappings: Sequence[Sequence[int]],
    name: str = "morphism",
) -> str:
    """
    Dibuja dominio y codominio lado a lado; cada mapa con aristas punteadas.

    Args:
        source: Dominio
        target: Codominio
        mappings: Uno o más mapas punto a punto (por ejemplo el par g, h)
        name: Nombre del grafo

    Returns:
        Texto DOT
    """
    lines = [f"digraph {_quote(name)} {{", "\trankdir=BT;", "\tnode [shape=circle];"]
    for tag, poset in (("s", source), ("t", target)):
        lines.append(f"\tsubgraph cluster_{tag} {{")
        lines.extend(_poset_body(poset, tag, "\t\t"))
        lines.append("\t}")
    for index, mapping in enumerate(mappings):
        color = PALETTE[index % len(PALETTE)]
        for x, y in enumerate(mapping):
            lines.append(
                f"\ts{x} -> t{y} [style=dashed, color={color}, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit(poset: FinitePoset, classes: Optional[Sequence[Sequence[int]]] = None) -> str:
    """Atajo: poset solo, o con partición si se indica."""
    if classes is None:
        return poset_to_dot(poset)
    return partition_to_dot(poset, classes)
