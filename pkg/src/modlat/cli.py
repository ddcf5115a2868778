"""Batch command-line front end.

Subcommands: lattice, classify, matlis (dual|zeta|audit), tower
(hs|tree|branching|pairgrowth|predict), zmod (decide|count|length|crosscheck)
and suite (run).  Output formats: text, structured (JSON) and dot where a
graph makes sense.  Identical configuration and seed produce byte-identical
structured output; every report embeds the tool version, a configuration
hash and the seed.

Exit codes: 0 success, 2 parse error, 3 budget exceeded, 4 invariant or
check failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .acceptance import run_suite
from .classify import classify
from .errors import BudgetExceeded, ModlatError, ParseError, TooLarge
from .io import load_module, load_tower
from .matlis import (
    continuity_audit,
    double_dual_certificate,
    matlis_dual,
    paired_lattice_dot,
    zeta,
)
from .modules import (
    FiniteModule,
    enumerate_submodules,
    lattice_dot,
    lattice_text,
    submodule_from_basis,
)
from .tower import (
    branching_report,
    hilbert_samuel_profile,
    ideal_tree,
    pair_growth,
    predict_cardinality,
    tree_dot,
    tree_text,
)
from .zmodule import (
    count_submodules,
    is_meager_z,
    is_minimax,
    ordinal_length_class,
    parse_descriptor,
    support_growth_shadow,
    truncation_crosscheck,
    uniserial_z,
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    verb: str | None = None
    module_path: str | None = None
    tower_path: str | None = None
    descriptor: str | None = None
    gens: str | None = None
    module_spec: str | None = None
    prime: int | None = None
    level: int | None = None
    depth: int = 4
    budget: int = 10**6
    format: str = "text"
    seed: int = 0
    out: str | None = None
    only: str | None = None

    def __post_init__(self):
        if self.budget <= 0 or self.depth <= 0:
            raise ParseError("<args>", "budgets and depths must be positive")


def config_hash(config: RunConfig) -> str:
    payload = json.dumps(asdict(config), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def _render(config: RunConfig, result: dict, text_body: str, dot_body: str | None = None) -> str:
    header = f"modlat {__version__} | config {config_hash(config)} | seed {config.seed}"
    if config.format == "structured":
        envelope = {
            "tool": "modlat",
            "version": __version__,
            "config_hash": config_hash(config),
            "seed": config.seed,
            "command": config.command + (f" {config.verb}" if config.verb else ""),
            "result": result,
        }
        return json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    if config.format == "dot":
        if dot_body is None:
            raise ParseError("<args>", f"no dot output for {config.command}")
        return f"// {header}\n" + dot_body
    return f"# {header}\n" + text_body


def _basis_rows(basis) -> list[str]:
    return ["".join(str(x) for x in row) for row in basis] or ["0"]


def _node_payload(node) -> list[str]:
    if isinstance(node, tuple):
        return [str(n) for n in node]
    if hasattr(node, "parts"):
        return [" | ".join(",".join(_basis_rows(s.basis)) for s in node.parts)]
    return [",".join(_basis_rows(node.basis))]


def _cmd_lattice(config: RunConfig):
    module = load_module(config.module_path)
    lattice = enumerate_submodules(module, limit=config.budget, search_budget=config.budget)
    result = {
        "submodules": len(lattice),
        "counts_by_dim": [list(pair) for pair in lattice.counts_by_dim],
        "hasse_covers": len(lattice.covers),
        "nodes": [_node_payload(n)[0] for n in lattice.nodes],
    }
    return 0, _render(config, result, lattice_text(lattice), lattice_dot(lattice))


def _cmd_classify(config: RunConfig):
    module = load_module(config.module_path)
    report = classify(module, limit=config.budget, search_budget=config.budget)
    witness = None
    if report.meager_witness is not None:
        witness = {
            "lower_dim": report.meager_witness.lower.dim,
            "upper_dim": report.meager_witness.upper.dim,
            "prime_factor": report.meager_witness.prime.factor,
        }
    result = {
        "uniserial": report.uniserial,
        "meager": report.meager,
        "single_associated_prime": report.single_associated_prime,
        "atom_count": len(report.atoms),
        "meager_witness": witness,
        "chain_lengths": [n.dim for n in report.chain] if report.chain else None,
    }
    lines = [
        f"uniserial: {report.uniserial}",
        f"meager: {report.meager}",
        f"single associated prime: {report.single_associated_prime}",
        f"atoms: {len(report.atoms)}",
    ]
    if witness:
        lines.append(
            f"square witness: N of length {witness['lower_dim']} inside P of length "
            f"{witness['upper_dim']} at factor {witness['prime_factor']}"
        )
    if report.chain:
        lines.append("chain lengths: " + ", ".join(str(n.dim) for n in report.chain))
    return 0, _render(config, result, "\n".join(lines) + "\n")


def _require_local(module, what: str) -> FiniteModule:
    if not isinstance(module, FiniteModule):
        raise ParseError("<args>", f"{what} needs a module over a local ring")
    return module


def _cmd_matlis(config: RunConfig):
    module = _require_local(load_module(config.module_path), "matlis")
    if config.verb == "dual":
        cert = double_dual_certificate(module)
        result = {
            "dim": module.dim,
            "dual_dim": cert.dual.module.dim,
            "double_dual_dim": cert.double.module.dim,
            "witness_invertible": True,
        }
        text = (
            f"dim M: {module.dim}\ndim T(M): {cert.dual.module.dim}\n"
            f"dim T(T(M)): {cert.double.module.dim}\nevaluation map: bijective\n"
        )
        return 0, _render(config, result, text, paired_lattice_dot(module))
    if config.verb == "zeta":
        if not config.gens:
            raise ParseError("<args>", "matlis zeta needs --gens with a JSON list of vectors")
        try:
            rows = json.loads(config.gens)
        except json.JSONDecodeError as err:
            raise ParseError("<args>", f"bad --gens: {err}")
        sub = submodule_from_basis(module, [tuple(r) for r in rows])
        dual = matlis_dual(module)
        image = zeta(dual, sub)
        result = {
            "submodule_dim": sub.dim,
            "orthogonal_dim": image.dim,
            "orthogonal_basis": _basis_rows(image.basis),
        }
        text = (
            f"submodule dim: {sub.dim}\northogonal dim: {image.dim}\n"
            f"orthogonal basis: {'; '.join(_basis_rows(image.basis))}\n"
        )
        return 0, _render(config, result, text)
    if config.verb == "audit":
        report = continuity_audit(module, limit=config.budget, search_budget=config.budget)
        result = {
            "submodules": report.submodule_count,
            "pairs": report.pairs_checked,
            "comparisons": report.comparisons,
            "violations": [list(v) for v in report.violations],
        }
        text = (
            f"submodules: {report.submodule_count}\npairs: {report.pairs_checked}\n"
            f"comparisons: {report.comparisons}\nviolations: {len(report.violations)}\n"
        )
        return (0 if report.clean else 4), _render(config, result, text)
    raise ParseError("<args>", f"unknown matlis verb {config.verb!r}")


def _cmd_tower(config: RunConfig):
    tower = load_tower(config.tower_path)
    if config.verb == "hs":
        profile = hilbert_samuel_profile(tower, max(config.depth, 4))
        result = {"lengths": list(profile.lengths), "krull_estimate": profile.krull_estimate}
        text = (
            f"lengths: {', '.join(str(x) for x in profile.lengths)}\n"
            f"krull estimate: {profile.krull_estimate}\n"
        )
        return 0, _render(config, result, text)
    if config.verb == "tree":
        tree = ideal_tree(tower, config.depth, search_budget=config.budget)
        result = {
            "depth": tree.depth,
            "level_sizes": list(tree.level_sizes()),
            "leaves": tree.leaf_count(),
        }
        return 0, _render(config, result, tree_text(tree), tree_dot(tree))
    if config.verb == "branching":
        report = branching_report(ideal_tree(tower, config.depth, search_budget=config.budget))
        result = {
            "verdict": report.verdict,
            "level_sizes": list(report.level_sizes),
            "branching_nodes_per_level": list(report.branching_nodes_per_level),
            "degree_histogram": [list(pair) for pair in report.degree_histogram],
            "min_internal_degree": report.min_internal_degree,
            "max_internal_degree": report.max_internal_degree,
            "leaves": report.leaf_count,
        }
        text = (
            f"verdict: {report.verdict}\n"
            f"level sizes: {', '.join(str(s) for s in report.level_sizes)}\n"
            f"branching nodes per level: "
            f"{', '.join(str(b) for b in report.branching_nodes_per_level)}\n"
            f"leaves: {report.leaf_count}\n"
        )
        return 0, _render(config, result, text)
    if config.verb == "pairgrowth":
        counts = pair_growth(tower, config.depth, search_budget=config.budget)
        result = {"counts": list(counts)}
        return 0, _render(config, result, f"counts: {', '.join(str(c) for c in counts)}\n")
    if config.verb == "predict":
        if not config.module_spec:
            raise ParseError("<args>", "tower predict needs --module-spec")
        prediction = predict_cardinality(
            tower, config.module_spec, depth=max(config.depth, 6), limit=config.budget
        )
        result = {
            "value": str(prediction.value),
            "tag": prediction.tag,
            "lengths": list(prediction.lengths),
            "module_spec": prediction.spec_label,
        }
        text = (
            f"module: {prediction.spec_label}\nvalue: {prediction.value}\n"
            f"tag: {prediction.tag}\nlengths: {', '.join(str(x) for x in prediction.lengths)}\n"
        )
        return 0, _render(config, result, text)
    raise ParseError("<args>", f"unknown tower verb {config.verb!r}")


def _cmd_zmod(config: RunConfig):
    if not config.descriptor:
        raise ParseError("<args>", "zmod needs --descriptor")
    try:
        descriptor = parse_descriptor(config.descriptor)
    except ValueError as err:
        raise ParseError("<descriptor>", str(err))
    if config.verb == "decide":
        chain = uniserial_z(descriptor)
        result = {
            "descriptor": descriptor.label(),
            "minimax": is_minimax(descriptor),
            "meager": is_meager_z(descriptor),
            "uniserial": chain.uniserial,
            "uniserial_case": chain.case,
            "uniserial_note": chain.note or None,
            "uniserial_witness": list(chain.witness) if chain.witness else None,
        }
        lines = [
            f"descriptor: {descriptor.label()}",
            f"minimax: {result['minimax']}",
            f"meager: {result['meager']}",
            f"uniserial: {chain.uniserial}" + (f" ({chain.case})" if chain.case else ""),
        ]
        if chain.witness:
            lines.append(f"incomparable pair: {chain.witness[0]} and {chain.witness[1]}")
        if chain.note:
            lines.append(f"note: {chain.note}")
        return 0, _render(config, result, "\n".join(lines) + "\n")
    if config.verb == "count":
        verdict = count_submodules(descriptor, limit=config.budget)
        result = {
            "descriptor": descriptor.label(),
            "value": str(verdict.value),
            "reason": verdict.reason,
        }
        text = f"descriptor: {descriptor.label()}\ncount: {verdict.value}\nreason: {verdict.reason}\n"
        return 0, _render(config, result, text)
    if config.verb == "length":
        cls = ordinal_length_class(descriptor)
        result = {"descriptor": descriptor.label(), "ordinal_length": str(cls)}
        return 0, _render(
            config, result, f"descriptor: {descriptor.label()}\nordinal length: {cls}\n"
        )
    if config.verb == "crosscheck":
        prime = config.prime or 2
        level = config.level or 4
        report = truncation_crosscheck(
            descriptor, prime, level, limit=config.budget, search_budget=config.budget
        )
        result = {
            "descriptor": report.descriptor,
            "prime": report.prime,
            "level": report.level,
            "module_length": report.module_length,
            "submodule_count": report.submodule_count,
            "checks": [
                {"name": name, "passed": ok, "detail": detail}
                for name, ok, detail in report.checks
            ],
            "consistent": report.consistent,
        }
        lines = [
            f"descriptor: {report.descriptor}",
            f"truncation: p={report.prime}, level={report.level}, length {report.module_length}",
            f"submodules: {report.submodule_count}",
        ]
        for name, ok, detail in report.checks:
            lines.append(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        support = {p for p, _ in descriptor.prufer}
        for entry in descriptor.localized:
            support.update(_SUPPORT_PRIMES if entry == "all" else entry)
        if len(support) >= 2:
            shadow = support_growth_shadow(descriptor, level)
            result["support_shadow"] = {
                "primes": list(shadow.primes),
                "submodule_count": shadow.submodule_count,
                "expected": shadow.expected,
                "consistent": shadow.consistent,
            }
            lines.append(
                f"support shadow over primes {shadow.primes}: {shadow.submodule_count} "
                f"subgroups (expected {shadow.expected})"
            )
        ok = report.consistent and result.get("support_shadow", {}).get("consistent", True)
        return (0 if ok else 4), _render(config, result, "\n".join(lines) + "\n")
    raise ParseError("<args>", f"unknown zmod verb {config.verb!r}")


_SUPPORT_PRIMES = (2, 3, 5, 7, 11, 13)


def _cmd_suite(config: RunConfig):
    results = run_suite(only=config.only, seed=config.seed)
    payload = [
        {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
    ]
    result = {
        "checks": payload,
        "total": len(results),
        "failed": sum(1 for r in results if not r.passed),
    }
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.2f}s): {r.detail}"
        for r in results
    ]
    lines.append(f"{len(results)} checks, {result['failed']} failed")
    code = 0 if result["failed"] == 0 else 4
    return code, _render(config, result, "\n".join(lines) + "\n")


_COMMANDS = {
    "lattice": _cmd_lattice,
    "classify": _cmd_classify,
    "matlis": _cmd_matlis,
    "tower": _cmd_tower,
    "zmod": _cmd_zmod,
    "suite": _cmd_suite,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one configured command; returns (exit code, rendered output)."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        raise ParseError("<args>", f"unknown command {config.command!r}")
    return handler(config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modlat",
        description="Exact submodule-lattice computations over finite local algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, module=False, tower=False, verb=None):
        if verb:
            sp.add_argument("verb", choices=verb)
        if module:
            sp.add_argument("--module", required=True, help="module definition file (TOML)")
        if tower:
            sp.add_argument("--spec", required=True, help="tower definition file (TOML)")
        sp.add_argument("--budget", type=int, default=10**6, help="enumeration cap")
        sp.add_argument("--depth", type=int, default=4, help="tower depth")
        sp.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
        sp.add_argument(
            "--format", choices=["text", "structured", "dot"], default="text"
        )
        sp.add_argument("--out", help="write the report to this path instead of stdout")

    common(sub.add_parser("lattice", help="enumerate a submodule lattice"), module=True)
    common(sub.add_parser("classify", help="uniserial/meager/atom report"), module=True)
    matlis_p = sub.add_parser("matlis", help="duality computations")
    common(matlis_p, module=True, verb=["dual", "zeta", "audit"])
    matlis_p.add_argument("--gens", help="JSON list of vectors spanning a submodule")
    tower_p = sub.add_parser("tower", help="truncation-tower computations")
    common(tower_p, tower=True, verb=["hs", "tree", "branching", "pairgrowth", "predict"])
    tower_p.add_argument("--module-spec", help="regular | quotient:m1,m2 | square:...")
    zmod_p = sub.add_parser("zmod", help="symbolic abelian-group decisions")
    common(zmod_p, verb=["decide", "count", "length", "crosscheck"])
    zmod_p.add_argument("--descriptor", required=True, help='e.g. "Z + Prufer(2)"')
    zmod_p.add_argument("--prime", type=int, help="truncation prime (crosscheck)")
    zmod_p.add_argument("--level", type=int, help="truncation level (crosscheck)")
    suite_p = sub.add_parser("suite", help="run the acceptance battery")
    common(suite_p, verb=["run"])
    suite_p.add_argument("--only", help="run only checks whose name contains this")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        verb=getattr(args, "verb", None),
        module_path=getattr(args, "module", None),
        tower_path=getattr(args, "spec", None),
        descriptor=getattr(args, "descriptor", None),
        gens=getattr(args, "gens", None),
        module_spec=getattr(args, "module_spec", None),
        prime=getattr(args, "prime", None),
        level=getattr(args, "level", None),
        depth=args.depth,
        budget=args.budget,
        format=args.format,
        seed=args.seed,
        out=args.out,
        only=getattr(args, "only", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        code, text = run(config)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except (BudgetExceeded, TooLarge) as err:
        print(f"budget error: {err}", file=sys.stderr)
        return 3
    except ModlatError as err:
        print(f"invariant violation: {err}", file=sys.stderr)
        return 4
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
