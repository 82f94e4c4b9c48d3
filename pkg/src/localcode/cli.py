"""Command-line surface: build, subdivide, embed, measure, check, report, stack.

Every command is a pure function of its input files and flags; outputs are
canonical JSON (see serialize) so re-running a command reproduces its output
byte for byte.  Exit codes: 0 pass, 1 usage or schema error, 2 a check ran
and failed (a machine-readable verdict is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import builders, serialize
from .classical import subdivide_classical, verify_classical_lemma
from .complexes import (
    ChainComplex3,
    ClassicalCode,
    GuardExceeded,
    bpt_bounds,
    check_small_set_expansion,
    classical_params,
    classical_soundness,
    measure,
    validate,
)
from .embedding import embed_graph, embed_subdivided, stack, verify_embedding
from .generalized import (
    check_boundary_expansion,
    check_functional_inequalities,
    generalized_repetition,
    generalized_surface,
)
from .products import check_cayley_iso
from .serialize import FORMAT, SchemaError
from .subdivision import (
    check_size_bounds,
    subdivide,
    verify_chain_map,
    verify_dimension_preservation,
)


@dataclass
class RunConfig:
    """Flags of one invocation; round-trips through JSON for reproducibility."""

    command: str
    inputs: list[str] = field(default_factory=list)
    out: Optional[str] = None
    l: Optional[int] = None
    d_dim: Optional[int] = None
    seed: Optional[int] = None
    what: Optional[str] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None
    gamma: Optional[str] = None
    eta: Optional[str] = None
    level: Optional[int] = None
    mode: str = "exhaustive"
    trials: int = 0
    copies: int = 1
    r_box: Optional[int] = None
    kind: Optional[str] = None
    force: bool = False
    csv: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunConfig":
        return RunConfig(**json.loads(text))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _frac_arg(s: Optional[str]) -> Optional[Fraction]:
    return None if s is None else Fraction(s)


def cmd_build(cfg: RunConfig) -> int:
    spec = json.loads(_read(cfg.inputs[0]))
    kind = spec.get("kind")
    if kind == "surface_code":
        out = serialize.complex_to_json(builders.surface_code_complex(spec["l"]))
    elif kind == "repetition_code":
        code = builders.repetition_code(spec["n"], spec.get("cyclic", False))
        out = serialize.classical_to_json(code)
    elif kind == "hypergraph_product":
        ha = serialize.matrix_from_json(spec["h_a"])
        hb = serialize.matrix_from_json(spec["h_b"])
        if spec.get("output") == "square":
            out = serialize.square_to_json(builders.hypergraph_product_square(ha, hb))
        else:
            out = serialize.complex_to_json(builders.hypergraph_product(ha, hb))
    elif kind == "cayley_complex":
        group = builders.group_from_spec(spec["group"])
        out = serialize.square_to_json(
            builders.cayley_square_complex(group, spec["a"], spec["b"])
        )
    elif kind == "cayley_balanced_square":
        group = builders.group_from_spec(spec["group"])
        out = serialize.square_to_json(
            builders.cayley_balanced_square(group, spec["a"], spec["b"])
        )
    elif kind == "toric":
        if spec.get("output") == "square":
            out = serialize.square_to_json(builders.toric_square_complex(spec["n"]))
        else:
            out = serialize.complex_to_json(builders.toric_complex(spec["n"]))
    elif kind == "generalized_repetition":
        out = serialize.boundary_complex_to_json(
            generalized_repetition(spec["l"], spec["branches"])
        )
    elif kind == "generalized_surface":
        out = serialize.boundary_complex_to_json(
            generalized_surface(spec["l"], spec["branches1"], spec["branches2"])
        )
    else:
        raise SchemaError(f"unknown build kind {kind!r}")
    _write(cfg.out, serialize.dumps(out))
    return 0


def cmd_subdivide(cfg: RunConfig) -> int:
    obj = serialize.load_any(_read(cfg.inputs[0]))
    if cfg.l is None:
        raise SchemaError("subdivide requires --L")
    if isinstance(obj, ClassicalCode):
        sub = subdivide_classical(obj, cfg.l)
        _write(cfg.out, serialize.dumps(serialize.classical_to_json(sub.code)))
        return 0
    sub = subdivide(obj, cfg.l)
    _write(cfg.out, serialize.dumps(serialize.subdivided_to_json(sub)))
    return 0


def cmd_embed(cfg: RunConfig) -> int:
    obj = serialize.load_any(_read(cfg.inputs[0]))
    if cfg.d_dim is None or cfg.seed is None:
        raise SchemaError("embed requires --D and --seed")
    if isinstance(obj, ClassicalCode):
        if cfg.l is None:
            raise SchemaError("embedding a classical code requires --L")
        n = obj.n + obj.m
        edges = [(c, obj.n + r) for r, c in obj.h.entries]
        emb = embed_graph(n, edges, cfg.l, cfg.d_dim, cfg.seed)
    else:
        emb = embed_subdivided(obj, cfg.d_dim, cfg.seed)
    _write(cfg.out, serialize.dumps(serialize.embedding_to_json(emb)))
    if cfg.csv:
        _write(cfg.csv, serialize.embedding_to_csv(emb))
    return 0


def cmd_measure(cfg: RunConfig) -> int:
    obj = serialize.load_any(_read(cfg.inputs[0]))
    if isinstance(obj, ClassicalCode):
        report = classical_params(obj, force=cfg.force)
        try:
            report.soundness = classical_soundness(obj, force=cfg.force)
            report.methods["soundness"] = "full 2^n scan"
        except GuardExceeded as exc:
            report.methods["soundness"] = f"skipped: {exc}"
    elif isinstance(obj, ChainComplex3):
        report = measure(obj, force=cfg.force)
    else:
        raise SchemaError("measure expects a chain complex or classical code")
    _write(cfg.out, serialize.dumps(serialize.report_to_json(report)))
    return 0


def _verdict(cfg: RunConfig, passed: bool, detail: dict) -> int:
    doc = {"format": FORMAT, "kind": "verdict", "what": cfg.what, "passed": passed}
    doc.update(detail)
    _write(cfg.out, serialize.dumps(doc))
    return 0 if passed else 2


def cmd_check(cfg: RunConfig) -> int:
    what = cfg.what
    if what == "validate":
        obj = serialize.load_any(_read(cfg.inputs[0]))
        diag = validate(obj)
        return _verdict(
            cfg,
            diag.ok,
            {
                "witness": list(diag.witness) if diag.witness else None,
                "max_row_degree": diag.max_row_degree,
                "max_col_degree": diag.max_col_degree,
            },
        )
    if what == "small-set-expansion":
        obj = serialize.load_any(_read(cfg.inputs[0]))
        detail = {}
        passed = True
        for side in ("coboundary", "boundary"):
            res = check_small_set_expansion(
                obj,
                _frac_arg(cfg.alpha) or Fraction(1),
                _frac_arg(cfg.beta) or Fraction(0),
                _frac_arg(cfg.gamma) or Fraction(0),
                side,
                force=cfg.force,
            )
            passed &= res.passed
            detail[side] = {
                "passed": res.passed,
                "witness": res.witness.to_list() if res.witness else None,
                "max_beta": serialize._frac(res.max_beta) if res.max_beta is not None else None,
            }
        return _verdict(cfg, passed, detail)
    if what == "boundary-expansion":
        obj = serialize.load_any(_read(cfg.inputs[0]))
        res = check_boundary_expansion(
            obj,
            cfg.level or 0,
            _frac_arg(cfg.beta) or Fraction(0),
            _frac_arg(cfg.eta) or Fraction(0),
            mode=cfg.mode,
            seed=cfg.seed or 0,
            trials=cfg.trials,
            force=cfg.force,
        )
        return _verdict(
            cfg,
            res.passed,
            {
                "checked": res.checked,
                "witness": res.witness.to_list() if res.witness else None,
                "max_beta": serialize._frac(res.max_beta) if res.max_beta is not None else None,
                "max_eta": serialize._frac(res.max_eta) if res.max_eta is not None else None,
            },
        )
    if what == "functional-inequalities":
        obj = serialize.load_any(_read(cfg.inputs[0]))
        res = check_functional_inequalities(
            obj, _frac_arg(cfg.alpha) or Fraction(0), _frac_arg(cfg.beta) or Fraction(0),
            force=cfg.force,
        )
        return _verdict(
            cfg,
            res.passed,
            {
                "witness": res.witness.to_list() if res.witness else None,
                "max_c": serialize._frac(res.max_c) if res.max_c else None,
                "max_c_boundary": serialize._frac(res.max_c_boundary)
                if res.max_c_boundary
                else None,
            },
        )
    if what == "cayley-iso":
        spec = json.loads(_read(cfg.inputs[0]))
        group = builders.group_from_spec(spec["group"])
        rep = check_cayley_iso(spec["a"], group, spec["b"])
        return _verdict(cfg, rep.ok, {"detail": rep.detail})
    if what == "chain-map":
        sub = serialize.load_any(_read(cfg.inputs[0]))
        rep = verify_chain_map(sub)
        return _verdict(
            cfg,
            rep.ok,
            {"failing_level": rep.failing_level, "failing_basis": rep.failing_basis},
        )
    if what == "dimension-preservation":
        sub = serialize.load_any(_read(cfg.inputs[0]))
        rep = verify_dimension_preservation(sub, force=cfg.force)
        return _verdict(
            cfg,
            rep.ok,
            {"k_base": rep.k_base, "k_sub": rep.k_sub, "failed": rep.failed},
        )
    if what == "size-bounds":
        sub = serialize.load_any(_read(cfg.inputs[0]))
        rep = check_size_bounds(sub)
        return _verdict(
            cfg,
            rep.ok_lower and rep.ok_upper and rep.component_formula_ok,
            {
                "delta_max": rep.delta_max,
                "per_level": [list(p) for p in rep.per_level],
                "component_formula_ok": rep.component_formula_ok,
            },
        )
    if what == "classical-lemma":
        code = serialize.load_any(_read(cfg.inputs[0]))
        if cfg.l is None:
            raise SchemaError("classical-lemma requires --L")
        rep = verify_classical_lemma(subdivide_classical(code, cfg.l), force=cfg.force)
        return _verdict(
            cfg,
            rep.ok,
            {
                "k": [rep.k_base, rep.k_sub],
                "d": [rep.d_base, rep.d_sub],
                "soundness": serialize._frac(rep.soundness_sub),
                "soundness_bound": serialize._frac(rep.soundness_bound),
            },
        )
    if what == "bpt":
        if cfg.l is None or cfg.d_dim is None or cfg.r_box is None or cfg.kind is None:
            raise SchemaError("bpt requires --L, --D, --r and --kind")
        bounds = bpt_bounds(cfg.l, cfg.d_dim, cfg.r_box, cfg.kind)
        detail = {"d_bound": bounds.d_bound, "e_bound": bounds.e_bound}
        passed = True
        if cfg.inputs:
            rep = serialize.load_any(_read(cfg.inputs[0]))
            checks = {}
            if rep.d is not None:
                checks["d"] = rep.d <= bounds.d_bound
            if rep.energy_barrier is not None:
                checks["energy_barrier"] = rep.energy_barrier <= bounds.e_bound
            if rep.d is not None:
                checks["k_tradeoff"] = bounds.k_bound_holds(rep.k, rep.d)
            passed = all(checks.values())
            detail["checks"] = checks
        return _verdict(cfg, passed, detail)
    if what == "embedding":
        emb = serialize.load_any(_read(cfg.inputs[0]))
        audit = verify_embedding(emb, emb.edges)
        return _verdict(
            cfg,
            audit.matches_stored,
            {
                "a": audit.a,
                "b": audit.b,
                "occupancy_histogram": {str(k): v for k, v in sorted(audit.occupancy_histogram.items())},
            },
        )
    raise SchemaError(f"unknown check {what!r}")


def cmd_stack(cfg: RunConfig) -> int:
    code = serialize.load_any(_read(cfg.inputs[0]))
    emb = serialize.load_any(_read(cfg.inputs[1]))
    stacked = stack(code, emb, cfg.copies)
    doc = {
        "format": FORMAT,
        "kind": "stacked_code",
        "copies": stacked.copies,
        "k_per_block": stacked.k_per_block,
        "complex": serialize.complex_to_json(stacked.complex),
        "embedding": serialize.embedding_to_json(stacked.embedding),
    }
    _write(cfg.out, serialize.dumps(doc))
    return 0


def cmd_report(cfg: RunConfig) -> int:
    """Full pipeline: build, subdivide, embed, measure, check, in one document."""
    spec = json.loads(_read(cfg.inputs[0]))
    group = builders.group_from_spec(spec["group"]) if "group" in spec else None
    if spec.get("base") == "cayley":
        square = builders.cayley_balanced_square(group, spec["a"], spec["b"])
    elif spec.get("base") == "toric":
        square = builders.toric_square_complex(spec["n"])
    elif spec.get("base") == "hypergraph_product":
        square = builders.hypergraph_product_square(
            serialize.matrix_from_json(spec["h_a"]), serialize.matrix_from_json(spec["h_b"])
        )
    elif spec.get("base") == "single_square":
        square = builders.single_square()
    else:
        raise SchemaError("report spec needs a 'base' of cayley/toric/hypergraph_product/single_square")
    l = spec.get("l", cfg.l)
    d_dim = spec.get("d", cfg.d_dim) or 3
    seed = spec.get("seed", cfg.seed) or 0
    sub = subdivide(square, l)
    emb = embed_subdivided(sub, d_dim, seed)
    base_report = measure(sub.base, force=cfg.force)
    sub_report = measure(sub.complex, force=cfg.force)
    chain = verify_chain_map(sub)
    dims = verify_dimension_preservation(sub, force=cfg.force)
    sizes = check_size_bounds(sub)
    doc = {
        "format": FORMAT,
        "kind": "pipeline_report",
        "base_square": serialize.square_to_json(square),
        "l": l,
        "base_report": serialize.report_to_json(base_report),
        "subdivided_report": serialize.report_to_json(sub_report),
        "chain_map_ok": chain.ok,
        "dimension_preserved": dims.ok,
        "size_bounds": {
            "lower": sizes.ok_lower,
            "upper": sizes.ok_upper,
            "delta_max": sizes.delta_max,
            "component_formula_ok": sizes.component_formula_ok,
        },
        "embedding": {
            "D": emb.dimension,
            "seed": emb.seed,
            "a": emb.a,
            "b": emb.b,
            "points": len(emb.points),
        },
    }
    ok = chain.ok and dims.ok
    _write(cfg.out, serialize.dumps(doc))
    return 0 if ok else 2


_COMMANDS = {
    "build": cmd_build,
    "subdivide": cmd_subdivide,
    "embed": cmd_embed,
    "measure": cmd_measure,
    "check": cmd_check,
    "stack": cmd_stack,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="localcode",
        description="Construct, subdivide, embed, and exactly verify geometrically local codes.",
    )
    sp = p.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        c = sp.add_parser(name)
        c.add_argument("inputs", nargs="*", help="input JSON files")
        c.add_argument("--out", default=None, help="output path (default stdout)")
        c.add_argument("--L", dest="l", type=int, default=None)
        c.add_argument("--D", dest="d_dim", type=int, default=None)
        c.add_argument("--seed", type=int, default=None)
        c.add_argument("--what", default=None, help="which check to run")
        c.add_argument("--alpha", default=None)
        c.add_argument("--beta", default=None)
        c.add_argument("--gamma", default=None)
        c.add_argument("--eta", default=None)
        c.add_argument("--level", type=int, default=None)
        c.add_argument("--mode", default="exhaustive", choices=["exhaustive", "sampled"])
        c.add_argument("--trials", type=int, default=0)
        c.add_argument("--copies", type=int, default=1)
        c.add_argument("--r", dest="r_box", type=int, default=None)
        c.add_argument("--kind", default=None, choices=[None, "quantum", "classical"])
        c.add_argument("--force", action="store_true")
        c.add_argument("--csv", default=None)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        inputs=list(args.inputs),
        out=args.out,
        l=args.l,
        d_dim=args.d_dim,
        seed=args.seed,
        what=args.what,
        alpha=args.alpha,
        beta=args.beta,
        gamma=args.gamma,
        eta=args.eta,
        level=args.level,
        mode=args.mode,
        trials=args.trials,
        copies=args.copies,
        r_box=args.r_box,
        kind=args.kind,
        force=args.force,
        csv=args.csv,
    )


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return _COMMANDS[cfg.command](cfg)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GuardExceeded as exc:
        print(f"error: {exc} (use --force to override)", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
