"""Matlis duality for finite local algebras.

E is realized as the dual space of R with transposed multiplication action;
for a finite-dimensional local algebra with residue field F_p this is an
injective hull of the residue field (the construction is checked, not
assumed: the socle must be one-dimensional, and the test suite verifies the
extension property dimension counts).

T(M) = Hom(M, E) carries the action (r.f)(x) = f(rx).  zeta sends a
submodule N <= M to its orthogonal {f : f(N) = 0}; it reverses inclusion and
squares to the identity under the double-dual identification, and those
facts are re-checked at runtime for every certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gfp
from .errors import InvariantViolation, MixedParents, NotBijective
from .gfp import Mat, Vec
from .modules import (
    FiniteModule,
    Submodule,
    SubmoduleLattice,
    enumerate_submodules,
    hom_space,
    ideal_kernel,
    socle,
    submodule_intersection,
)
from .rings import DEFAULT_SEARCH_BUDGET, LocalAlgebra


@dataclass(frozen=True)
class InjectiveHull:
    ring: LocalAlgebra
    module: FiniteModule

    @property
    def dim(self) -> int:
        return self.module.dim


def injective_hull(ring: LocalAlgebra) -> InjectiveHull:
    """The dual space of R with transposed action; socle is checked to be simple."""
    action = tuple(gfp.transpose(m) for m in ring.mult_mats)
    module = FiniteModule(ring, ring.dim, action)
    if socle(module).dim != 1:
        raise InvariantViolation("injective-hull", "socle is not one-dimensional")
    return InjectiveHull(ring, module)


@dataclass(frozen=True)
class MatlisDual:
    """T(M) together with the hom-basis identification used to compute it."""

    source: FiniteModule
    hull: InjectiveHull
    module: FiniteModule
    homs: tuple[Mat, ...]  # basis of Hom(source, E); coordinates of T(M)


def matlis_dual(module: FiniteModule, hull: InjectiveHull | None = None) -> MatlisDual:
    ring = module.ring
    if hull is None:
        hull = injective_hull(ring)
    elif hull.ring != ring:
        raise MixedParents("hull belongs to a different ring")
    homs = tuple(hom_space(module, hull.module))
    if len(homs) != module.dim:
        raise InvariantViolation("matlis-dual", "dim T(M) != dim M")
    action = []
    for i in range(ring.dim):
        cols = []
        for f in homs:
            shifted = gfp.mat_mul(f, module.action[i], ring.p)  # x -> f(b_i x)
            cols.append(_hom_coordinates(shifted, homs, ring.p))
        action.append(gfp.transpose(tuple(cols)))
    dual_module = FiniteModule(ring, len(homs), tuple(action))
    return MatlisDual(module, hull, dual_module, homs)


def _hom_coordinates(target: Mat, homs: tuple[Mat, ...], p: int) -> Vec:
    if not homs:
        return ()
    system = tuple(
        tuple(f[r][c] for f in homs)
        for r in range(len(target))
        for c in range(len(target[0]) if target else 0)
    )
    rhs = tuple(x for row in target for x in row)
    coords = gfp.solve(system, rhs, p)
    if coords is None:
        raise InvariantViolation("matlis-dual", "hom outside the hom-basis span")
    return coords


def zeta(dual: MatlisDual, sub: Submodule) -> Submodule:
    """The orthogonal {f in T(M) : f(N) = 0} as a submodule of T(M)."""
    if sub.parent != dual.source:
        raise MixedParents("submodule of a different module")
    p = dual.source.p
    rows = []
    for v in sub.basis:
        images = [gfp.mat_vec(f, v, p) for f in dual.homs]
        for r in range(dual.hull.dim):
            rows.append(tuple(img[r] for img in images))
    if not rows:
        return Submodule(dual.module, gfp.identity(dual.module.dim))
    return Submodule(dual.module, gfp.nullspace(tuple(rows), dual.module.dim, p))


@dataclass(frozen=True)
class DualityCertificate:
    source: FiniteModule
    dual: MatlisDual
    double: MatlisDual
    witness: Mat  # invertible module map source -> T(T(source))


def double_dual_certificate(module: FiniteModule, hull: InjectiveHull | None = None) -> DualityCertificate:
    """The canonical evaluation map M -> T(T(M)), verified bijective and a module map."""
    dual = matlis_dual(module, hull)
    double = matlis_dual(dual.module, dual.hull)
    p = module.p
    cols = []
    for c in range(module.dim):
        x = gfp.unit_vec(c, module.dim)
        eval_matrix = gfp.transpose(
            tuple(gfp.mat_vec(f, x, p) for f in dual.homs)
        )  # hull.dim x dim T(M): f-coordinates -> E
        cols.append(_hom_coordinates(eval_matrix, double.homs, p))
    witness = gfp.transpose(tuple(cols))
    if module.dim and gfp.rank(witness, p) != module.dim:
        raise NotBijective("evaluation map M -> T(T(M)) is not bijective")
    for i in range(module.ring.dim):
        lhs = gfp.mat_mul(double.module.action[i], witness, p)
        rhs = gfp.mat_mul(witness, module.action[i], p)
        if lhs != rhs:
            raise NotBijective("evaluation map is not a module homomorphism")
    return DualityCertificate(module, dual, double, witness)


def zeta_involution_holds(cert: DualityCertificate, sub: Submodule) -> bool:
    """zeta_{T(M)} o zeta_M is the identity under the double-dual identification."""
    first = zeta(cert.dual, sub)
    second = zeta(cert.double, first)
    inv = _inverse(cert.witness, cert.source.p)
    if inv is None:
        return False
    pulled = gfp.rref(
        [gfp.mat_vec(inv, z, cert.source.p) for z in second.basis], cert.source.p
    )
    return pulled == sub.basis


def _inverse(m: Mat, p: int) -> Mat | None:
    n = len(m)
    if n == 0:
        return ()
    aug = [tuple(row) + gfp.unit_vec(i, n) for i, row in enumerate(m)]
    red = gfp.rref(aug, p)
    if len(red) != n or any(gfp.pivot_column(r) != i for i, r in enumerate(red)):
        return None
    return tuple(row[n:] for row in red)


@dataclass(frozen=True)
class Distance:
    """exp(-exponent) with an exact integer exponent; None encodes distance zero."""

    exponent: int | None

    @property
    def value(self) -> float:
        return 0.0 if self.exponent is None else math.exp(-self.exponent)

    def at_most_exp_minus(self, n: int) -> bool:
        return self.exponent is None or self.exponent >= n

    def __str__(self) -> str:
        return "0" if self.exponent is None else f"exp(-{self.exponent})"


def submodule_distance(module: FiniteModule, left: Submodule, right: Submodule) -> Distance:
    """Ultrametric distance on Sub(M): exp(-sup{n : N, N' congruent mod M^n M})."""
    if left.parent != module or right.parent != module:
        raise MixedParents("submodules of a different module")
    if left == right:
        return Distance(None)
    p = module.p
    n = 0
    while True:
        layer = _mpow_module(module, n + 1)
        ok = gfp.contains(gfp.span_sum(right.basis, layer, p), left.basis, p) and gfp.contains(
            gfp.span_sum(left.basis, layer, p), right.basis, p
        )
        if not ok:
            return Distance(n)
        n += 1


def _mpow_module(module: FiniteModule, n: int) -> Mat:
    power = module.ring.mpow(n)
    vectors = [
        module.act(a, gfp.unit_vec(c, module.dim)) for a in power for c in range(module.dim)
    ]
    return gfp.rref(vectors, module.p)


@dataclass(frozen=True)
class ContinuityAuditReport:
    module: FiniteModule
    submodule_count: int
    pairs_checked: int
    comparisons: int
    violations: tuple[tuple[int, int, int], ...]  # (node index, node index, level n)

    @property
    def clean(self) -> bool:
        return not self.violations


def continuity_audit(
    module: FiniteModule,
    limit: int = 10**6,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> ContinuityAuditReport:
    """Check that close submodules have orthogonals agreeing on each socle layer.

    For every pair (N, N') and every n up to the nilpotency degree:
    d(N, N') <= exp(-n) must imply zeta(N) and zeta(N') cut the same
    submodule out of ann_{T(M)}(M^n).  Violations are collected, not thrown;
    none are expected.
    """
    ring = module.ring
    dual = matlis_dual(module)
    lattice: SubmoduleLattice = enumerate_submodules(module, limit, search_budget)
    orthogonals = [zeta(dual, node) for node in lattice.nodes]
    depth = ring.nilpotency_degree
    layers = [ideal_kernel(dual.module, (ring.mpow(n),)) for n in range(depth + 1)]
    violations = []
    pairs = comparisons = 0
    for i in range(len(lattice.nodes)):
        for j in range(i + 1, len(lattice.nodes)):
            pairs += 1
            dist = submodule_distance(module, lattice.nodes[i], lattice.nodes[j])
            for n in range(depth + 1):
                if not dist.at_most_exp_minus(n):
                    continue
                comparisons += 1
                left = submodule_intersection(orthogonals[i], layers[n])
                right = submodule_intersection(orthogonals[j], layers[n])
                if left != right:
                    violations.append((i, j, n))
    return ContinuityAuditReport(
        module, len(lattice.nodes), pairs, comparisons, tuple(violations)
    )


def paired_lattice_dot(module: FiniteModule, name: str = "duality") -> str:
    """DOT graph of Sub(M) and Sub(T(M)) joined by the zeta bijection."""
    dual = matlis_dual(module)
    lattice = enumerate_submodules(module)
    dual_lattice = enumerate_submodules(dual.module)
    index = {node: k for k, node in enumerate(dual_lattice.nodes)}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, node in enumerate(lattice.nodes):
        lines.append(f'  m{i} [label="dim {node.dim}"];')
    for low, high in lattice.covers:
        lines.append(f"  m{low} -> m{high};")
    for i, node in enumerate(dual_lattice.nodes):
        lines.append(f'  t{i} [label="dim {node.dim}"];')
    for low, high in dual_lattice.covers:
        lines.append(f"  t{low} -> t{high};")
    for i, node in enumerate(lattice.nodes):
        image = zeta(dual, node)
        lines.append(f"  m{i} -> t{index[image]} [style=dashed, dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
