"""Truncation towers: finite-depth views of complete local rings.

A tower produces the compatible family of truncations of
F_p[[variables]]/(monomial relations) at every cap d: level(d) kills all
monomials of degree >= d.  Level bases are prefixes of one another, so the
projection level(d+1) -> level(d) is coordinate truncation.

On top of the tower sit the finite-depth shadows of the infinite-ring
results: the rooted tree of principal-ideal classes (x ~_n y iff x and y
generate the same ideal modulo the n-th maximal-ideal power), Krull-dimension
estimation by Hilbert-Samuel growth, the (1,b)-family counting that drives
the square-subquotient lower bound, and the symbolic submodule-cardinality
prediction for the supported module grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gfp
from .cardinal import ALEPH0, CONTINUUM, SymbolicCardinal
from .errors import (
    BudgetExceeded,
    InconsistentLevels,
    InvariantViolation,
    NotStabilized,
    UnsupportedSpec,
)
from .gfp import Mat, Vec
from .modules import (
    direct_sum,
    enumerate_submodules,
    make_module,
    quotient_ring_module,
    regular_module,
    span_submodule,
)
from .rings import (
    DEFAULT_SEARCH_BUDGET,
    LocalAlgebra,
    ideal_span,
    parse_monomial,
    truncated_polynomial_ring,
)


@dataclass(frozen=True)
class TowerSpec:
    p: int
    variables: tuple[str, ...]
    relations: tuple[str, ...] = ()
    name: str = ""

    def label(self) -> str:
        if self.name:
            return self.name
        rel = f"/({', '.join(self.relations)})" if self.relations else ""
        return f"F_{self.p}[[{', '.join(self.variables)}]]{rel}"


class Tower:
    """Lazy family of truncations with projection-compatibility checks."""

    def __init__(self, spec: TowerSpec):
        if not spec.variables:
            raise ValueError("a tower needs at least one variable")
        self.spec = spec
        self._levels: dict[int, LocalAlgebra] = {}

    def level(self, d: int) -> LocalAlgebra:
        if d < 1:
            raise ValueError("levels start at 1")
        if d not in self._levels:
            ring = truncated_polynomial_ring(
                self.spec.p, self.spec.variables, d, self.spec.relations
            )
            if ring.mpow(d) != ():
                raise InconsistentLevels(f"level {d} has a nonzero {d}-th power")
            below = self._levels.get(d - 1)
            if below is not None:
                _check_prefix_compatible(below, ring)
            above = self._levels.get(d + 1)
            if above is not None:
                _check_prefix_compatible(ring, above)
            self._levels[d] = ring
        return self._levels[d]

    def truncate(self, v: Vec, d_to: int) -> Vec:
        """Project an element of a deeper level to level d_to (coordinate prefix)."""
        return v[: self.level(d_to).dim]


def _check_prefix_compatible(small: LocalAlgebra, big: LocalAlgebra):
    n = small.dim
    if big.basis_labels[:n] != small.basis_labels:
        raise InconsistentLevels("level bases are not prefix-compatible")
    for i in range(n):
        for j in range(n):
            if tuple(big.struct[i][j][:n]) != small.struct[i][j]:
                raise InconsistentLevels("level multiplication tables disagree")


def make_tower(p: int, variables, relations=(), name: str = "") -> Tower:
    spec = TowerSpec(p, tuple(variables), tuple(relations), name)
    tower = Tower(spec)
    tower.level(1)  # fail fast on bad relations
    return tower


# ---------------------------------------------------------------------------
# Hilbert-Samuel growth


@dataclass(frozen=True)
class HilbertSamuelProfile:
    lengths: tuple[int, ...]
    krull_estimate: int


def growth_degree(lengths) -> int:
    """Least k whose k-th finite differences are equal over the last three levels."""
    seq = list(lengths)
    for k in range(len(lengths)):
        if len(seq) >= 3 and seq[-1] == seq[-2] == seq[-3]:
            return k
        seq = [b - a for a, b in zip(seq, seq[1:])]
    raise NotStabilized(len(lengths))


def hilbert_samuel_profile(tower: Tower, depth: int) -> HilbertSamuelProfile:
    """Lengths of the regular modules up the tower and the growth-degree estimate.

    The growth degree of d -> length(level(d)) is the standard effective
    stand-in for the Krull dimension of the limit ring; a sequence that has
    not stabilized raises rather than guessing.
    """
    if depth < 4:
        raise ValueError("depth must be >= 4")
    lengths = tuple(tower.level(d).dim for d in range(1, depth + 1))
    return HilbertSamuelProfile(lengths, growth_degree(lengths))


def quotient_lengths(tower: Tower, gens, depth: int) -> tuple[int, ...]:
    """Lengths of level(d)/(gens) for monomial generators, d = 1..depth."""
    out = []
    for d in range(1, depth + 1):
        ring = tower.level(d)
        vectors = [ring.monomial_vector(g) for g in gens]
        out.append(ring.dim - ideal_span(ring, vectors).dim)
    return tuple(out)


# ---------------------------------------------------------------------------
# the rooted tree of principal-ideal classes


@dataclass(frozen=True)
class TreeNode:
    level: int
    ideal: Mat  # canonical basis of (Rx + M^level) inside the level ring
    parent: int | None
    children: tuple[int, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class IdealTree:
    spec: TowerSpec
    depth: int
    levels: tuple[tuple[TreeNode, ...], ...]

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def leaf_count(self) -> int:
        return len(self.levels[-1])


def ideal_tree(tower: Tower, depth: int, search_budget: int = DEFAULT_SEARCH_BUDGET) -> IdealTree:
    """Classes of x ~_n y (same ideal modulo the n-th power) for n = 1..depth.

    The class of x at level n is canonically the principal ideal generated by
    the truncation of x in level(n).  Construction is top-down: the classes
    refining [x] at the next level are exactly the classes of x + z with z
    running over the n-th power of the maximal ideal, so each level is built
    from representatives of the previous one.
    """
    rings = [tower.level(n) for n in range(1, depth + 1)]
    p = rings[0].p
    root_key = ideal_span(rings[0], [gfp.zero_vec(rings[0].dim)]).basis
    levels_keys: list[list[Mat]] = [[root_key]]
    reps: list[list[Vec]] = [[gfp.zero_vec(rings[0].dim)]]
    parent_of: list[list[int]] = [[None]]  # type: ignore[list-item]

    for n in range(1, depth):
        ring_next = rings[n]
        layer = ring_next.mpow(n)  # the classes refining a level-n class differ by M^n
        if len(levels_keys[-1]) * p ** len(layer) > search_budget:
            raise BudgetExceeded(
                len(levels_keys[-1]) * p ** len(layer), search_budget, "ideal-tree level"
            )
        seen: dict[Mat, int] = {}
        keys: list[Mat] = []
        new_reps: list[Vec] = []
        parents: list[int] = []
        for idx, rep in enumerate(reps[-1]):
            lifted = tuple(rep) + gfp.zero_vec(ring_next.dim - len(rep))
            for coeffs in gfp.all_vectors(len(layer), p):
                z = gfp.zero_vec(ring_next.dim)
                for c, row in zip(coeffs, layer):
                    z = gfp.vec_add(z, gfp.vec_scale(c, row, p), p)
                y = gfp.vec_add(lifted, z, p)
                key = ideal_span(ring_next, [y]).basis
                known = seen.get(key)
                if known is None:
                    seen[key] = idx
                    keys.append(key)
                    new_reps.append(y)
                    parents.append(idx)
                elif known != idx:
                    raise InvariantViolation("ideal-tree", "class has two parents")
        order = sorted(range(len(keys)), key=lambda i: (len(keys[i]), keys[i]))
        levels_keys.append([keys[i] for i in order])
        reps.append([new_reps[i] for i in order])
        parent_of.append([parents[i] for i in order])

    finished: list[tuple[TreeNode, ...]] = []
    for n in range(depth):
        child_map: dict[int, list[int]] = {i: [] for i in range(len(levels_keys[n]))}
        if n + 1 < depth:
            for j, par in enumerate(parent_of[n + 1]):
                child_map[par].append(j)
        finished.append(
            tuple(
                TreeNode(
                    n + 1,
                    levels_keys[n][i],
                    parent_of[n][i],
                    tuple(child_map[i]),
                )
                for i in range(len(levels_keys[n]))
            )
        )
    if len(finished[0]) != 1:
        raise InvariantViolation("ideal-tree", "level one is not a single root")
    return IdealTree(tower.spec, depth, tuple(finished))


@dataclass(frozen=True)
class BranchingReport:
    depth: int
    verdict: str  # "EverywhereBranching" | "Comb" | "Chain"
    level_sizes: tuple[int, ...]
    branching_nodes_per_level: tuple[int, ...]
    degree_histogram: tuple[tuple[int, int], ...]  # (child degree, node count)
    min_internal_degree: int
    max_internal_degree: int
    leaf_count: int


def branching_report(tree: IdealTree) -> BranchingReport:
    """Child-degree census of the internal nodes and the branching verdict."""
    if tree.depth < 3:
        return BranchingReport(
            tree.depth, "Vacuous", tree.level_sizes(), (), (), 0, 0, tree.leaf_count()
        )
    degrees = []
    branching_per_level = []
    for level in tree.levels[:-1]:
        level_degrees = [len(node.children) for node in level]
        degrees.extend(level_degrees)
        branching_per_level.append(sum(1 for d in level_degrees if d >= 2))
    if all(d >= 2 for d in degrees):
        verdict = "EverywhereBranching"
    elif all(d == 1 for d in degrees):
        verdict = "Chain"
    else:
        verdict = "Comb"
    histogram: dict[int, int] = {}
    for d in degrees:
        histogram[d] = histogram.get(d, 0) + 1
    return BranchingReport(
        tree.depth,
        verdict,
        tree.level_sizes(),
        tuple(branching_per_level),
        tuple(sorted(histogram.items())),
        min(degrees),
        max(degrees),
        tree.leaf_count(),
    )


def tree_dot(tree: IdealTree, name: str = "ideal_tree") -> str:
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for n, level in enumerate(tree.levels):
        for i, node in enumerate(level):
            lines.append(f'  v{n}_{i} [label="L{n + 1} dim {len(node.ideal)}"];')
    for n, level in enumerate(tree.levels[1:], start=1):
        for i, node in enumerate(level):
            lines.append(f"  v{n - 1}_{node.parent} -> v{n}_{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_text(tree: IdealTree) -> str:
    report = branching_report(tree)
    lines = [
        f"tower: {tree.spec.label()}",
        f"depth: {tree.depth}",
        f"level sizes: {', '.join(str(s) for s in report.level_sizes)}",
        f"verdict: {report.verdict}",
        f"branching nodes per level: {', '.join(str(b) for b in report.branching_nodes_per_level)}",
        "degree histogram: "
        + ", ".join(f"{d}:{c}" for d, c in report.degree_histogram),
        f"leaves: {report.leaf_count}",
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the (1, b) family


def pair_growth(tower: Tower, depth: int, search_budget: int = DEFAULT_SEARCH_BUDGET) -> tuple[int, ...]:
    """Distinct submodules of level(d)^2 generated by (1, b), per level.

    (1, b) determines b, so the count equals the number of ring elements;
    that equality is the finite shadow of the square-subquotient continuum
    bound, and the acceptance suite asserts it exactly.
    """
    counts = []
    for d in range(1, depth + 1):
        ring = tower.level(d)
        if ring.p**ring.dim > search_budget:
            raise BudgetExceeded(0, search_budget, "pair-growth element space")
        square = direct_sum([regular_module(ring), regular_module(ring)])
        seen = set()
        for b in gfp.all_vectors(ring.dim, ring.p):
            vec = ring.unit + b
            seen.add(span_submodule(square, [vec]).basis)
        counts.append(len(seen))
    return tuple(counts)


# ---------------------------------------------------------------------------
# cardinality prediction


@dataclass(frozen=True)
class ModuleSpec:
    kind: str  # "regular" | "quotient" | "square"
    gens: tuple[str, ...] = ()
    inner: "ModuleSpec | None" = None

    def label(self) -> str:
        if self.kind == "regular":
            return "regular"
        if self.kind == "quotient":
            return f"quotient({', '.join(self.gens)})"
        return f"square of {self.inner.label()}"


def parse_module_spec(text: str) -> ModuleSpec:
    text = text.strip()
    if text == "regular":
        return ModuleSpec("regular")
    if text.startswith("square:"):
        return ModuleSpec("square", inner=parse_module_spec(text[len("square:") :]))
    if text.startswith("quotient:"):
        gens = tuple(g.strip() for g in text[len("quotient:") :].split(",") if g.strip())
        if not gens:
            raise UnsupportedSpec("quotient spec needs at least one monomial generator")
        return ModuleSpec("quotient", gens)
    raise UnsupportedSpec(f"unknown module spec {text!r}")


_TAG_VALUES = {
    "KrullDimGe2": "continuum",
    "SquareSubquotient": "continuum",
    "ChainOnly": "aleph0",
    "FiniteLength": "finite",
}


@dataclass(frozen=True)
class CardinalityPrediction:
    value: SymbolicCardinal
    tag: str
    lengths: tuple[int, ...]
    spec_label: str

    def __post_init__(self):
        if _TAG_VALUES[self.tag] != self.value.kind:
            raise InvariantViolation("cardinality", "tag inconsistent with value")


def predict_cardinality(
    tower: Tower,
    module_spec: ModuleSpec | str,
    depth: int = 6,
    limit: int = 10**6,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> CardinalityPrediction:
    """Symbolic count of submodules of the limit module described by the spec.

    Continuum when the Krull estimate reaches two (the ideal tree branches
    everywhere) or the spec is a square of an infinite-length module; Aleph0
    for a chain tower; an exact finite count for finite-length specs.  Specs
    outside this decidable fragment raise UnsupportedSpec.
    """
    if isinstance(module_spec, str):
        module_spec = parse_module_spec(module_spec)
    if module_spec.kind == "square" and module_spec.inner.kind == "square":
        raise UnsupportedSpec("nested squares are not part of the grammar")
    base = module_spec.inner if module_spec.kind == "square" else module_spec
    if base.kind == "regular":
        lengths = tuple(tower.level(d).dim for d in range(1, depth + 1))
    else:
        lengths = quotient_lengths(tower, base.gens, depth)
    degree = growth_degree(lengths)
    if degree >= 2:
        return CardinalityPrediction(CONTINUUM, "KrullDimGe2", lengths, module_spec.label())
    if module_spec.kind == "square":
        if degree >= 1:
            return CardinalityPrediction(
                CONTINUUM, "SquareSubquotient", lengths, module_spec.label()
            )
        count = _finite_count(tower, base, depth, square=True, limit=limit, search_budget=search_budget)
        return CardinalityPrediction(
            SymbolicCardinal.finite(count), "FiniteLength", lengths, module_spec.label()
        )
    if degree == 0:
        count = _finite_count(tower, base, depth, square=False, limit=limit, search_budget=search_budget)
        return CardinalityPrediction(
            SymbolicCardinal.finite(count), "FiniteLength", lengths, module_spec.label()
        )
    diffs = [b - a for a, b in zip(lengths, lengths[1:])]
    if diffs[-3:] == [1, 1, 1]:
        return CardinalityPrediction(ALEPH0, "ChainOnly", lengths, module_spec.label())
    raise UnsupportedSpec(
        "Krull estimate one but not a chain tower: outside the decidable grammar"
    )


def _finite_count(tower, base, depth, square, limit, search_budget) -> int:
    ring = tower.level(depth)
    if base.kind == "regular":
        module = regular_module(ring)
    else:
        module = quotient_ring_module(
            ring, ideal_span(ring, [ring.monomial_vector(g) for g in base.gens])
        )
    if square:
        module = direct_sum([module, module])
    return len(enumerate_submodules(module, limit, search_budget))


# ---------------------------------------------------------------------------
# square-ideal embedding (finite check of the two-generator ideal example)


@dataclass(frozen=True)
class EmbeddingReport:
    depth: int
    base_dim: int  # dimension of the one-variable truncation B
    ideal_dim: int
    injective: bool
    image_matches_ideal: bool
    equivariant: bool

    @property
    def ok(self) -> bool:
        return self.injective and self.image_matches_ideal and self.equivariant


def square_quotient_embedding(
    tower: Tower,
    depth: int,
    gens: tuple[str, str] = ("T*Y", "T^2"),
    killed: tuple[str, ...] = ("Y", "T"),
) -> EmbeddingReport:
    """Check that (a, b) -> a*g1 + b*g2 embeds B^2 onto the ideal (g1, g2).

    B is the truncation of the quotient by the killed variables, cut at the
    depth that keeps the map injective; the map is verified to be injective,
    onto the ideal, and equivariant for the action through the quotient map.
    """
    ring = tower.level(depth)
    variables = ring.variables
    killed_idx = [variables.index(v) for v in killed]
    for rel in tower.spec.relations:
        exps = parse_monomial(rel, variables)
        if not any(exps[i] for i in killed_idx):
            raise UnsupportedSpec("relations must involve the killed variables")
    gen_vecs = [ring.monomial_vector(g) for g in gens]
    if any(gfp.is_zero(v) for v in gen_vecs):
        raise UnsupportedSpec("generators vanish at this depth")
    gen_degree = max(sum(parse_monomial(g, variables)) for g in gens)
    cap_b = depth - gen_degree
    if cap_b < 1:
        raise UnsupportedSpec("depth too small for an injective embedding")
    kept = [v for v in variables if v not in killed]
    base = truncated_polynomial_ring(ring.p, kept, cap_b)

    def project(vec: Vec) -> Vec:
        out = [0] * base.dim
        for i, c in enumerate(vec):
            if not c:
                continue
            exps = ring.exponents[i]
            if any(exps[k] for k in killed_idx):
                continue
            kept_exps = tuple(e for j, e in enumerate(exps) if j not in killed_idx)
            if sum(kept_exps) >= cap_b:
                continue
            out[base.exponents.index(kept_exps)] = c
        return tuple(out)

    base_action = tuple(
        base.element_matrix(project(gfp.unit_vec(i, ring.dim))) for i in range(ring.dim)
    )
    base_module = make_module(ring, base.dim, base_action)
    square = direct_sum([base_module, base_module])

    columns = []
    for g in gen_vecs:
        for exps in base.exponents:
            full_exps = _merge_exponents(exps, variables, killed_idx)
            mono = ring.label_index.get(_label_for(full_exps, variables))
            lifted = gfp.unit_vec(mono, ring.dim)
            columns.append(ring.mult(lifted, g))
    phi = gfp.transpose(tuple(columns))

    injective = gfp.rank(columns, ring.p) == 2 * base.dim
    image = gfp.rref(columns, ring.p)
    ideal = ideal_span(ring, gen_vecs)
    image_matches = image == ideal.basis
    equivariant = all(
        gfp.mat_mul(ring.mult_mats[i], phi, ring.p)
        == gfp.mat_mul(phi, square.action[i], ring.p)
        for i in range(ring.dim)
    )
    return EmbeddingReport(depth, base.dim, ideal.dim, injective, image_matches, equivariant)


def _merge_exponents(kept_exps, variables, killed_idx) -> tuple[int, ...]:
    out = []
    k = 0
    for j in range(len(variables)):
        if j in killed_idx:
            out.append(0)
        else:
            out.append(kept_exps[k])
            k += 1
    return tuple(out)


def _label_for(exps, variables) -> str:
    from .rings import monomial_label

    return monomial_label(exps, variables)
