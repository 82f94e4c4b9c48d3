"""Versioned JSON interchange for every artifact type (format tag lcf/1).

Serialization is canonical: sorted keys, no whitespace, one trailing
newline.  Re-running any command on the same inputs produces byte-identical
files.  Rationals are written as two-element [numerator, denominator]
arrays.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .classical import ClassicalSubdivision, subdivide_classical
from .complexes import ChainComplex3, ClassicalCode, CodeReport
from .embedding import LatticeEmbedding
from .f2 import SparseBitMatrix
from .generalized import BoundaryComplex, BoundaryGraph
from .products import ActedBipartiteGraph, GroupTable, SquareComplex
from .subdivision import SubdividedComplex, subdivide

FORMAT = "lcf/1"


class SchemaError(ValueError):
    """Input JSON does not match the expected schema."""


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    if obj.get("format") != FORMAT:
        raise SchemaError(f"missing or unsupported format tag (expected {FORMAT!r})")
    return obj


def _frac(f: Fraction) -> list[int]:
    return [f.numerator, f.denominator]


def _unfrac(v: Any) -> Fraction:
    if isinstance(v, list) and len(v) == 2:
        return Fraction(v[0], v[1])
    raise SchemaError(f"expected [num, den] rational, got {v!r}")


def matrix_to_json(m: SparseBitMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [list(e) for e in m.sorted_entries()]}


def matrix_from_json(obj: dict) -> SparseBitMatrix:
    try:
        return SparseBitMatrix(obj["rows"], obj["cols"], (tuple(e) for e in obj["entries"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad matrix object: {exc}")


def complex_to_json(x: ChainComplex3) -> dict:
    out = {
        "format": FORMAT,
        "kind": "chain_complex",
        "sizes": list(x.sizes),
        "delta0": matrix_to_json(x.delta0),
        "delta1": matrix_to_json(x.delta1),
    }
    if x.labels:
        out["labels"] = {str(k): v for k, v in x.labels.items()}
    return out


def complex_from_json(obj: dict) -> ChainComplex3:
    x = ChainComplex3(matrix_from_json(obj["delta0"]), matrix_from_json(obj["delta1"]))
    if list(x.sizes) != obj.get("sizes"):
        raise SchemaError("declared sizes disagree with the matrices")
    return x


def classical_to_json(c: ClassicalCode) -> dict:
    return {"format": FORMAT, "kind": "classical_code", "h": matrix_to_json(c.h)}


def classical_from_json(obj: dict) -> ClassicalCode:
    return ClassicalCode(matrix_from_json(obj["h"]))


def group_to_json(g: GroupTable) -> dict:
    return {"format": FORMAT, "kind": "group", "order": g.order, "mul": [list(r) for r in g.mul]}


def group_from_json(obj: dict) -> GroupTable:
    g = GroupTable(tuple(tuple(r) for r in obj["mul"]))
    if g.order != obj.get("order"):
        raise SchemaError("declared order disagrees with the table")
    return g


def acted_graph_to_json(g: ActedBipartiteGraph) -> dict:
    return {
        "format": FORMAT,
        "kind": "acted_graph",
        "group": group_to_json(g.group),
        "left": g.n_left,
        "right": g.n_right,
        "edges": sorted(list(e) for e in g.edges),
        "action_left": [list(p) for p in g.action_left],
        "action_right": [list(p) for p in g.action_right],
    }


def acted_graph_from_json(obj: dict) -> ActedBipartiteGraph:
    return ActedBipartiteGraph(
        group=group_from_json(obj["group"]),
        n_left=obj["left"],
        n_right=obj["right"],
        edges=frozenset(tuple(e) for e in obj["edges"]),
        action_left=tuple(tuple(p) for p in obj["action_left"]),
        action_right=tuple(tuple(p) for p in obj["action_right"]),
    )


def square_to_json(sq: SquareComplex) -> dict:
    return {
        "format": FORMAT,
        "kind": "square_complex",
        "classes": list(sq.cls),
        "edges": sorted(list(e) for e in sq.edges),
        "faces": sorted(list(f) for f in sq.faces),
    }


def square_from_json(obj: dict) -> SquareComplex:
    sq = SquareComplex(
        cls=tuple(obj["classes"]),
        edges=frozenset(tuple(e) for e in obj["edges"]),
        faces=frozenset(tuple(f) for f in obj["faces"]),
    )
    sq.validate()
    return sq


def subdivided_to_json(sub: SubdividedComplex) -> dict:
    vertices = []
    for v in range(sub.n_vertices):
        i, j = sub.coords[v]
        vertices.append(
            {
                "cell": list(sub.owner[v]),
                "i": i,
                "j": j,
                "region": sub.region[v],
                "component": sub.component_of[v],
                "level": sub.level[v],
                "index": sub.level_index[v],
            }
        )
    return {
        "format": FORMAT,
        "kind": "subdivided_complex",
        "base_square": square_to_json(sub.base_square),
        "l": sub.l,
        "vertices": vertices,
        "complex": complex_to_json(sub.complex),
    }


def subdivided_from_json(obj: dict) -> SubdividedComplex:
    """Rebuild deterministically from the base and check the stored table."""
    sub = subdivide(square_from_json(obj["base_square"]), obj["l"])
    if complex_to_json(sub.complex) != obj["complex"]:
        raise SchemaError("stored parity complex does not match the reconstruction")
    if len(obj["vertices"]) != sub.n_vertices:
        raise SchemaError("stored vertex table has the wrong size")
    return sub


def boundary_complex_to_json(y: BoundaryComplex) -> dict:
    return {
        "format": FORMAT,
        "kind": "boundary_complex",
        "levels": [list(lv) for lv in y.levels],
        "deltas": [matrix_to_json(d) for d in y.deltas],
        "meta": [list(kv) for kv in y.meta],
    }


def boundary_complex_from_json(obj: dict) -> BoundaryComplex:
    y = BoundaryComplex(
        levels=tuple(tuple(lv) for lv in obj["levels"]),
        deltas=tuple(matrix_from_json(d) for d in obj["deltas"]),
        meta=tuple((k, v) for k, v in obj.get("meta", [])),
    )
    y.validate()
    return y


def boundary_graph_to_json(g: BoundaryGraph) -> dict:
    return {
        "format": FORMAT,
        "kind": "boundary_graph",
        "n": g.n,
        "edges": sorted(list(e) for e in g.edges),
        "boundary_mult": list(g.boundary_mult),
    }


def boundary_graph_from_json(obj: dict) -> BoundaryGraph:
    return BoundaryGraph(
        n=obj["n"],
        edges=frozenset(tuple(e) for e in obj["edges"]),
        boundary_mult=tuple(obj["boundary_mult"]),
    )


def report_to_json(r: CodeReport) -> dict:
    out: dict[str, Any] = {"format": FORMAT, "kind": "code_report", "n": r.n, "k": r.k}
    for name in ("d", "d_x", "d_z", "energy_barrier", "e_x", "e_z"):
        val = getattr(r, name)
        if val is not None:
            out[name] = val
    if r.soundness is not None:
        out["soundness"] = _frac(r.soundness)
    out["methods"] = dict(r.methods)
    return out


def report_from_json(obj: dict) -> CodeReport:
    r = CodeReport(n=obj["n"], k=obj["k"], methods=dict(obj.get("methods", {})))
    for name in ("d", "d_x", "d_z", "energy_barrier", "e_x", "e_z"):
        if name in obj:
            setattr(r, name, obj[name])
    if "soundness" in obj:
        r.soundness = _unfrac(obj["soundness"])
    return r


def embedding_to_json(emb: LatticeEmbedding) -> dict:
    return {
        "format": FORMAT,
        "kind": "embedding",
        "D": emb.dimension,
        "seed": emb.seed,
        "points": {str(v): list(p) for v, p in sorted(emb.points.items())},
        "a": emb.a,
        "a_sq": emb.a_sq,
        "b": emb.b,
        "edges": sorted(list(e) for e in emb.edges),
    }


def embedding_from_json(obj: dict) -> LatticeEmbedding:
    return LatticeEmbedding(
        dimension=obj["D"],
        seed=obj["seed"],
        points={int(v): tuple(p) for v, p in obj["points"].items()},
        a=obj["a"],
        a_sq=obj["a_sq"],
        b=obj["b"],
        edges=frozenset(tuple(e) for e in obj.get("edges", [])),
    )


def embedding_to_csv(emb: LatticeEmbedding) -> str:
    lines = ["vertex," + ",".join(f"x{i}" for i in range(emb.dimension))]
    for v, p in sorted(emb.points.items()):
        lines.append(f"{v}," + ",".join(str(c) for c in p))
    return "\n".join(lines) + "\n"


_LOADERS = {
    "chain_complex": complex_from_json,
    "classical_code": classical_from_json,
    "group": group_from_json,
    "acted_graph": acted_graph_from_json,
    "square_complex": square_from_json,
    "subdivided_complex": subdivided_from_json,
    "boundary_complex": boundary_complex_from_json,
    "boundary_graph": boundary_graph_from_json,
    "code_report": report_from_json,
    "embedding": embedding_from_json,
}


def load_any(text: str):
    obj = loads(text)
    kind = obj.get("kind")
    loader = _LOADERS.get(kind)
    if loader is None:
        raise SchemaError(f"unknown kind {kind!r}")
    return loader(obj)
