"""Finite modules over local algebras and finite products of local algebras.

A module over a LocalAlgebra is an F_p-space with one action matrix per ring
basis element.  A module over a ProductRing is stored componentwise (one
FiniteModule per local factor); the factor idempotents force every submodule
to split along components, so submodules of product modules are tuples of
component submodules.  Elements of product modules are tuples of component
vectors.

Composition length equals F_p-dimension in each local component (the residue
field is F_p by construction), so `length` is a dimension count everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from . import gfp
from .errors import (
    ActionNotRepresentation,
    BudgetExceeded,
    DecompositionMismatch,
    InvariantViolation,
    MixedParents,
    NotSubmodule,
)
from .gfp import Mat, Vec
from .rings import DEFAULT_SEARCH_BUDGET, Ideal, LocalAlgebra, full_ideal

CLOSURE_CHECK_CAP = 150


@dataclass(frozen=True)
class ProductRing:
    """Finite product of local algebras; the non-local rings of this package."""

    factors: tuple[LocalAlgebra, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product ring needs at least one factor")

    def __repr__(self) -> str:
        return f"ProductRing({' x '.join(repr(f) for f in self.factors)})"


@dataclass(frozen=True)
class MaximalIdeal:
    """A maximal ideal, identified by the local factor that carries it."""

    ring: LocalAlgebra | ProductRing
    factor: int = 0

    @property
    def local_ideal(self) -> Ideal:
        return local_factor(self.ring, self.factor).maximal_ideal

    def __repr__(self) -> str:
        return f"MaximalIdeal(factor={self.factor})"


def local_factor(ring, index: int) -> LocalAlgebra:
    if isinstance(ring, ProductRing):
        return ring.factors[index]
    if index != 0:
        raise IndexError("local rings have a single factor")
    return ring


def maximal_ideals(ring) -> tuple[MaximalIdeal, ...]:
    if isinstance(ring, ProductRing):
        return tuple(MaximalIdeal(ring, i) for i in range(len(ring.factors)))
    return (MaximalIdeal(ring, 0),)


@dataclass(frozen=True)
class FiniteModule:
    """Module over a LocalAlgebra: F_p-space plus an action matrix per ring basis element."""

    ring: LocalAlgebra
    dim: int
    action: tuple[Mat, ...]

    @property
    def p(self) -> int:
        return self.ring.p

    @cached_property
    def generator_actions(self) -> tuple[Mat, ...]:
        """Action matrices of the algebra generators of the maximal ideal."""
        out = []
        for g in self.ring.generator_vectors:
            m = gfp.zero_mat(self.dim, self.dim)
            for i, gi in enumerate(g):
                if gi:
                    m = gfp.mat_add(m, gfp.mat_scale(gi, self.action[i], self.p), self.p)
            out.append(m)
        return tuple(out)

    def act_basis(self, i: int, v: Vec) -> Vec:
        return gfp.mat_vec(self.action[i], v, self.p)

    def act(self, r: Vec, v: Vec) -> Vec:
        out = gfp.zero_vec(self.dim)
        for i, ri in enumerate(r):
            if ri:
                out = gfp.vec_add(out, gfp.vec_scale(ri, self.act_basis(i, v), self.p), self.p)
        return out

    def element_count(self) -> int:
        return self.p**self.dim

    def __repr__(self) -> str:
        return f"FiniteModule(dim={self.dim} over {self.ring!r})"


@dataclass(frozen=True)
class ProductModule:
    """Module over a ProductRing, stored one component per local factor."""

    ring: ProductRing
    components: tuple[FiniteModule, ...]

    def __post_init__(self):
        if len(self.components) != len(self.ring.factors):
            raise ValueError("one component per ring factor required")
        for comp, fac in zip(self.components, self.ring.factors):
            if comp.ring != fac:
                raise ValueError("component ring does not match its factor")

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.components)

    def element_count(self) -> int:
        n = 1
        for c in self.components:
            n *= c.element_count()
        return n

    def __repr__(self) -> str:
        return f"ProductModule(dims={tuple(c.dim for c in self.components)})"


Module = FiniteModule | ProductModule


@dataclass(frozen=True)
class Submodule:
    """Submodule of a FiniteModule, stored as a reduced echelon basis."""

    parent: FiniteModule
    basis: Mat

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Vec) -> bool:
        return gfp.in_span(v, self.basis, self.parent.p)

    def contains(self, other: "Submodule") -> bool:
        return gfp.contains(self.basis, other.basis, self.parent.p)

    def sort_key(self):
        return (self.dim, self.basis)

    def __repr__(self) -> str:
        return f"Submodule(dim={self.dim})"


@dataclass(frozen=True)
class ProductSubmodule:
    parent: ProductModule
    parts: tuple[Submodule, ...]

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.parts)

    def contains(self, other: "ProductSubmodule") -> bool:
        return all(a.contains(b) for a, b in zip(self.parts, other.parts))

    def sort_key(self):
        return (self.dim, tuple(s.basis for s in self.parts))

    def __repr__(self) -> str:
        return f"ProductSubmodule(dims={tuple(s.dim for s in self.parts)})"


AnySubmodule = Submodule | ProductSubmodule


# ---------------------------------------------------------------------------
# constructors


def make_module(ring, dim_or_components, action=None) -> Module:
    """Validated module constructor.

    For a LocalAlgebra pass (ring, dim, action matrices); for a ProductRing
    pass (ring, list of component FiniteModules).
    """
    if isinstance(ring, ProductRing):
        return ProductModule(ring, tuple(dim_or_components))
    dim = int(dim_or_components)
    mats = tuple(tuple(tuple(int(x) % ring.p for x in row) for row in m) for m in action)
    if len(mats) != ring.dim or any(
        len(m) != dim or any(len(r) != dim for r in m) for m in mats
    ):
        raise ValueError("need one dim x dim matrix per ring basis element")
    if mats[0] != gfp.identity(dim):
        raise ActionNotRepresentation(0, 0)
    module = FiniteModule(ring, dim, mats)
    for i in range(ring.dim):
        for j in range(ring.dim):
            lhs = gfp.mat_mul(mats[i], mats[j], ring.p)
            rhs = gfp.zero_mat(dim, dim)
            for k, coeff in enumerate(ring.struct[i][j]):
                if coeff:
                    rhs = gfp.mat_add(rhs, gfp.mat_scale(coeff, mats[k], ring.p), ring.p)
            if lhs != rhs:
                raise ActionNotRepresentation(i, j)
    return module


def regular_module(ring) -> Module:
    """The ring acting on itself."""
    if isinstance(ring, ProductRing):
        return ProductModule(ring, tuple(regular_module(f) for f in ring.factors))
    return FiniteModule(ring, ring.dim, ring.mult_mats)


def zero_module(ring) -> Module:
    if isinstance(ring, ProductRing):
        return ProductModule(ring, tuple(zero_module(f) for f in ring.factors))
    return FiniteModule(ring, 0, tuple(() for _ in range(ring.dim)))


def quotient_ring_module(ring: LocalAlgebra, ideal: Ideal) -> FiniteModule:
    """R/I as a module over R."""
    if ideal.ring != ring:
        raise MixedParents("ideal does not belong to the ring")
    reg = regular_module(ring)
    q, _ = quotient(reg, Submodule(reg, ideal.basis))
    return q


def direct_sum(summands) -> Module:
    summands = list(summands)
    if not summands:
        raise ValueError("direct_sum needs at least one summand")
    ring = summands[0].ring
    if any(m.ring != ring for m in summands):
        raise MixedParents("direct summands live over different rings")
    if isinstance(ring, ProductRing):
        comps = tuple(
            direct_sum([m.components[i] for m in summands]) for i in range(len(ring.factors))
        )
        return ProductModule(ring, comps)
    dim = sum(m.dim for m in summands)
    action = []
    for i in range(ring.dim):
        blocks = [m.action[i] for m in summands]
        action.append(_block_diag(blocks, dim))
    return FiniteModule(ring, dim, tuple(action))


def _block_diag(blocks, dim: int) -> Mat:
    rows = []
    offset = 0
    for b in blocks:
        size = len(b)
        for r in b:
            rows.append((0,) * offset + tuple(r) + (0,) * (dim - offset - size))
        offset += size
    return tuple(rows)


# ---------------------------------------------------------------------------
# submodules


def zero_submodule(module: Module) -> AnySubmodule:
    if isinstance(module, ProductModule):
        return ProductSubmodule(module, tuple(zero_submodule(c) for c in module.components))
    return Submodule(module, ())


def full_submodule(module: Module) -> AnySubmodule:
    if isinstance(module, ProductModule):
        return ProductSubmodule(module, tuple(full_submodule(c) for c in module.components))
    return Submodule(module, gfp.identity(module.dim))


def span_submodule(module: Module, vectors) -> AnySubmodule:
    """Smallest submodule containing the vectors (closure under the ring action)."""
    if isinstance(module, ProductModule):
        parts = tuple(
            span_submodule(comp, [v[i] for v in vectors])
            for i, comp in enumerate(module.components)
        )
        return ProductSubmodule(module, parts)
    p = module.p
    basis = gfp.rref([tuple(int(x) % p for x in v) for v in vectors], p)
    while True:
        fresh = []
        for v in basis:
            for g in module.generator_actions:
                w = gfp.mat_vec(g, v, p)
                if not gfp.is_zero(w) and not gfp.in_span(w, basis, p):
                    fresh.append(w)
        if not fresh:
            return Submodule(module, basis)
        basis = gfp.rref(list(basis) + fresh, p)


def submodule_from_basis(module: Module, rows) -> AnySubmodule:
    """Wrap rows as a submodule, checking closure under the action."""
    candidate = span_submodule(module, rows)
    given_dim = (
        len(gfp.rref(rows, module.p))
        if isinstance(module, FiniteModule)
        else sum(len(gfp.rref([v[i] for v in rows], c.p)) for i, c in enumerate(module.components))
    )
    if candidate.dim != given_dim:
        raise NotSubmodule("row span is not closed under the ring action")
    return candidate


def submodule_sum(a: AnySubmodule, b: AnySubmodule) -> AnySubmodule:
    _check_same_parent(a, b)
    if isinstance(a, ProductSubmodule):
        return ProductSubmodule(
            a.parent, tuple(submodule_sum(x, y) for x, y in zip(a.parts, b.parts))
        )
    return Submodule(a.parent, gfp.span_sum(a.basis, b.basis, a.parent.p))


def submodule_intersection(a: AnySubmodule, b: AnySubmodule) -> AnySubmodule:
    _check_same_parent(a, b)
    if isinstance(a, ProductSubmodule):
        return ProductSubmodule(
            a.parent, tuple(submodule_intersection(x, y) for x, y in zip(a.parts, b.parts))
        )
    return Submodule(a.parent, gfp.span_intersection(a.basis, b.basis, a.parent.p))


def _check_same_parent(a, b):
    if a.parent != b.parent:
        raise MixedParents("submodules of different modules")


def submodule_as_module(sub: AnySubmodule):
    """View a submodule as a module in its own right.

    Returns (module, inclusion), where inclusion maps submodule coordinates
    to parent coordinates (a matrix for local modules, a tuple of matrices
    componentwise for product modules).
    """
    if isinstance(sub, ProductSubmodule):
        pieces = [submodule_as_module(s) for s in sub.parts]
        module = ProductModule(sub.parent.ring, tuple(m for m, _ in pieces))
        return module, tuple(inc for _, inc in pieces)
    parent = sub.parent
    p = parent.p
    include = gfp.transpose(sub.basis)  # columns are the basis rows
    action = []
    for i in range(parent.ring.dim):
        cols = []
        for row in sub.basis:
            image = parent.act_basis(i, row)
            cols.append(_coordinates(image, sub.basis, p))
        action.append(gfp.transpose(tuple(cols)))
    module = FiniteModule(parent.ring, sub.dim, tuple(action))
    return module, include


def _coordinates(v: Vec, echelon: Mat, p: int) -> Vec:
    coords = []
    w = list(v)
    for row in echelon:
        c = gfp.pivot_column(row)
        coef = w[c] % p
        coords.append(coef)
        if coef:
            w = [(x - coef * y) % p for x, y in zip(w, row)]
    if any(x % p for x in w):
        raise NotSubmodule("vector not inside the submodule")
    return tuple(coords)


def quotient(module: Module, sub: AnySubmodule):
    """Quotient module and its projection.

    Returns (quotient module, projection); the projection is a matrix for
    local modules and a tuple of component matrices for product modules.
    """
    if isinstance(module, ProductModule):
        if not isinstance(sub, ProductSubmodule) or sub.parent != module:
            raise NotSubmodule("submodule does not belong to the module")
        pieces = [quotient(c, s) for c, s in zip(module.components, sub.parts)]
        q = ProductModule(module.ring, tuple(m for m, _ in pieces))
        return q, tuple(pr for _, pr in pieces)
    if not isinstance(sub, Submodule) or sub.parent != module:
        raise NotSubmodule("submodule does not belong to the module")
    p = module.p
    pivots = set(gfp.pivot_columns(sub.basis))
    free = [c for c in range(module.dim) if c not in pivots]
    qdim = len(free)
    proj_rows = []
    for c in range(module.dim):
        reduced = gfp.reduce_mod(gfp.unit_vec(c, module.dim), sub.basis, p)
        proj_rows.append(tuple(reduced[f] for f in free))
    proj = gfp.transpose(tuple(proj_rows))  # qdim x dim
    lift = gfp.transpose(tuple(gfp.unit_vec(f, module.dim) for f in free))  # dim x qdim
    action = tuple(
        gfp.mat_mul(gfp.mat_mul(proj, module.action[i], p), lift, p)
        for i in range(module.ring.dim)
    )
    return FiniteModule(module.ring, qdim, action), proj


# ---------------------------------------------------------------------------
# structural invariants of a single module


def length(module: Module) -> int:
    """Composition length; equals total F_p-dimension since residue fields are F_p."""
    return module.dim


def hom_space(source: Module, target: Module):
    """Basis of the space of module homomorphisms source -> target.

    Local modules: a list of matrices.  Product modules: a list of tuples of
    component matrices (homomorphisms act componentwise).
    """
    if isinstance(source, ProductModule):
        if not isinstance(target, ProductModule) or target.ring != source.ring:
            raise MixedParents("hom_space needs modules over the same ring")
        comp_bases = [
            hom_space(s, t) for s, t in zip(source.components, target.components)
        ]
        out = []
        for i, basis in enumerate(comp_bases):
            for f in basis:
                tup = [
                    gfp.zero_mat(t.dim, s.dim)
                    for s, t in zip(source.components, target.components)
                ]
                tup[i] = f
                out.append(tuple(tup))
        return out
    if source.ring != target.ring:
        raise MixedParents("hom_space needs modules over the same ring")
    p = source.p
    n_s, n_t = source.dim, target.dim
    if n_s == 0 or n_t == 0:
        return []
    unknowns = n_t * n_s  # F[r][c], row-major
    rows = []
    for i in range(1, source.ring.dim):
        a_s, a_t = source.action[i], target.action[i]
        for r in range(n_t):
            for c in range(n_s):
                row = [0] * unknowns
                for k in range(n_s):
                    row[r * n_s + k] = (row[r * n_s + k] + a_s[k][c]) % p
                for k in range(n_t):
                    row[k * n_s + c] = (row[k * n_s + c] - a_t[r][k]) % p
                rows.append(tuple(row))
    basis = gfp.nullspace(tuple(rows), unknowns, p) if rows else gfp.identity(unknowns)
    return [
        tuple(tuple(x[r * n_s + c] for c in range(n_s)) for r in range(n_t)) for x in basis
    ]


def socle(module: Module, at: MaximalIdeal | None = None) -> AnySubmodule:
    """Elements killed by the maximal ideal (of one factor, or of every factor)."""
    if isinstance(module, ProductModule):
        if at is None:
            parts = tuple(socle(c) for c in module.components)
        else:
            parts = tuple(
                socle(c) if i == at.factor else zero_submodule(c)
                for i, c in enumerate(module.components)
            )
        return ProductSubmodule(module, parts)
    stacked = [row for g in module.generator_actions for row in g]
    if not stacked:  # the ring is a field
        return full_submodule(module)
    return Submodule(module, gfp.nullspace(tuple(stacked), module.dim, module.p))


def annihilator(module: Module):
    """Ring elements killing the module: an Ideal, or a tuple of Ideals componentwise."""
    if isinstance(module, ProductModule):
        return tuple(annihilator(c) for c in module.components)
    ring = module.ring
    if module.dim == 0:
        return full_ideal(ring)
    rows = []
    for c in range(module.dim):
        for r in range(module.dim):
            rows.append(tuple(module.action[i][r][c] for i in range(ring.dim)))
    basis = gfp.nullspace(tuple(rows), ring.dim, ring.p)
    return Ideal(ring, basis)


def associated_primes(module: Module) -> tuple[MaximalIdeal, ...]:
    """Maximal ideals whose socle piece is nonzero; empty exactly for the zero module."""
    if isinstance(module, ProductModule):
        return tuple(
            m for m in maximal_ideals(module.ring) if socle(module, m).dim > 0
        )
    return (MaximalIdeal(module.ring, 0),) if socle(module).dim > 0 else ()


def _ideal_parts(ring, selector) -> tuple[Mat, ...]:
    """Componentwise echelon bases of an ideal of a (product) ring.

    selector(i, factor) returns the echelon basis of the i-th part.
    """
    if isinstance(ring, ProductRing):
        return tuple(selector(i, f) for i, f in enumerate(ring.factors))
    return (selector(0, ring),)


def _module_components(module: Module) -> tuple[FiniteModule, ...]:
    return module.components if isinstance(module, ProductModule) else (module,)


def _wrap_parts(module: Module, parts) -> AnySubmodule:
    if isinstance(module, ProductModule):
        return ProductSubmodule(
            module, tuple(Submodule(c, b) for c, b in zip(module.components, parts))
        )
    return Submodule(module, parts[0])


def ideal_action_span(module: Module, ideal_parts: tuple[Mat, ...]) -> AnySubmodule:
    """The submodule I*M for a componentwise ideal I."""
    parts = []
    for comp, part in zip(_module_components(module), ideal_parts):
        vectors = [comp.act(a, gfp.unit_vec(c, comp.dim)) for a in part for c in range(comp.dim)]
        parts.append(gfp.rref(vectors, comp.p))
    return _wrap_parts(module, tuple(parts))


def ideal_kernel(module: Module, ideal_parts: tuple[Mat, ...]) -> AnySubmodule:
    """The submodule {x : I x = 0} for a componentwise ideal I."""
    parts = []
    for comp, part in zip(_module_components(module), ideal_parts):
        ring = comp.ring
        stacked = []
        for a in part:
            mat = gfp.zero_mat(comp.dim, comp.dim)
            for i, ai in enumerate(a):
                if ai:
                    mat = gfp.mat_add(mat, gfp.mat_scale(ai, comp.action[i], comp.p), comp.p)
            stacked.extend(mat)
        parts.append(
            gfp.nullspace(tuple(stacked), comp.dim, comp.p) if stacked else gfp.identity(comp.dim)
        )
    return _wrap_parts(module, tuple(parts))


def _prime_parts(prime: MaximalIdeal) -> tuple[Mat, ...]:
    ring = prime.ring

    def pick(i, factor):
        if i == prime.factor:
            return factor.maximal_ideal.basis
        return gfp.identity(factor.dim)

    return _ideal_parts(ring, pick)


def _ideal_parts_product(ring, many: list[tuple[Mat, ...]]) -> tuple[Mat, ...]:
    """Componentwise product of several ideals of the same (product) ring."""
    factors = ring.factors if isinstance(ring, ProductRing) else (ring,)
    current = tuple(gfp.identity(f.dim) for f in factors)
    for parts in many:
        nxt = []
        for fac, a, b in zip(factors, current, parts):
            prods = [fac.mult(u, v) for u in a for v in b]
            nxt.append(gfp.rref(prods, fac.p))
        current = tuple(nxt)
    return current


def primary_components(module: Module):
    """Primary decomposition across associated maximal ideals.

    Returns (components, witness) where components maps each associated
    maximal ideal P to the submodule M(P), and witness is the least n with
    (prod of associated primes)^n killing M.  Each M(P) is computed twice --
    as the P-power torsion and as (prod of the other primes)^n * M -- and the
    two must agree; a mismatch is an implementation bug, not a data error.
    """
    ring = module.ring
    asso = associated_primes(module)
    all_parts = [_prime_parts(pr) for pr in asso]
    full = _ideal_parts(ring, lambda i, f: gfp.identity(f.dim))

    radical = _ideal_parts_product(ring, all_parts) if all_parts else full
    witness = 0
    power = full
    while ideal_action_span(module, power).dim > 0:
        power = _ideal_parts_product(ring, [power, radical])
        witness += 1
        if witness > module.dim + 1:
            raise DecompositionMismatch("radical power chain failed to reach zero")

    components: dict[MaximalIdeal, AnySubmodule] = {}
    for prime in asso:
        prime_power = _ideal_parts_product(ring, [_prime_parts(prime)] * witness) if witness else full
        torsion = ideal_kernel(module, prime_power)
        others = [_prime_parts(q) for q in asso if q != prime]
        co_ideal = _ideal_parts_product(ring, others) if others else full
        co_power = _ideal_parts_product(ring, [co_ideal] * witness) if witness else full
        via_ideal = ideal_action_span(module, co_power)
        if torsion != via_ideal:
            raise DecompositionMismatch(
                f"torsion and ideal-power routes disagree at {prime!r}"
            )
        components[prime] = torsion

    total = sum(c.dim for c in components.values())
    if total != module.dim:
        raise DecompositionMismatch("component dimensions do not add up to the module")
    items = list(components.values())
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if submodule_intersection(items[i], items[j]).dim != 0:
                raise DecompositionMismatch("components overlap")
    for prime, comp in components.items():
        piece, _ = submodule_as_module(comp)
        if associated_primes(piece) != ((prime,) if comp.dim else ()):
            # for product modules the embedded component has the same prime support
            if isinstance(module, ProductModule):
                support = tuple(
                    m for m in maximal_ideals(ring) if comp.parts[m.factor].dim > 0
                )
                if support != (prime,):
                    raise DecompositionMismatch("component has wrong associated primes")
            else:
                raise DecompositionMismatch("component has wrong associated primes")
    return components, witness


# ---------------------------------------------------------------------------
# lattice enumeration


@dataclass(frozen=True)
class SubmoduleLattice:
    """The full submodule lattice: canonically sorted nodes plus Hasse covers."""

    module: Module
    nodes: tuple[AnySubmodule, ...]
    covers: tuple[tuple[int, int], ...]  # (lower index, upper index)
    counts_by_dim: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, sub: AnySubmodule) -> int:
        return self.nodes.index(sub)

    def atoms(self) -> tuple[AnySubmodule, ...]:
        return tuple(n for n in self.nodes if n.dim == 1)

    def is_chain(self) -> bool:
        return len(self.nodes) == self.module.dim + 1


def _local_submodule_bases(
    module: FiniteModule, limit: int, search_budget: int
) -> list[Mat]:
    if module.element_count() > search_budget:
        raise BudgetExceeded(0, search_budget, "submodule search space")
    cyclic = set()
    for v in gfp.normalized_vectors(module.dim, module.p):
        cyclic.add(span_submodule(module, [v]).basis)
    cyclic.discard(())
    seen = {()}
    frontier = [()]
    while frontier:
        fresh = []
        for base in frontier:
            for gen in cyclic:
                joined = gfp.span_sum(base, gen, module.p)
                if joined not in seen:
                    seen.add(joined)
                    if len(seen) > limit:
                        raise BudgetExceeded(len(seen), limit, "submodule enumeration")
                    fresh.append(joined)
        frontier = fresh
    return sorted(seen, key=lambda b: (len(b), b))


def enumerate_submodules(
    module: Module,
    limit: int = 10**6,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> SubmoduleLattice:
    """Complete submodule lattice with Hasse covers and per-dimension counts."""
    if isinstance(module, ProductModule):
        if module.element_count() > search_budget:
            raise BudgetExceeded(0, search_budget, "submodule search space")
        per_component = []
        for comp in module.components:
            per_component.append(_local_submodule_bases(comp, limit, search_budget))
        total = 1
        for bases in per_component:
            total *= len(bases)
            if total > limit:
                raise BudgetExceeded(total, limit, "submodule enumeration")
        nodes = [
            ProductSubmodule(
                module,
                tuple(Submodule(c, b) for c, b in zip(module.components, combo)),
            )
            for combo in iproduct(*per_component)
        ]
    else:
        bases = _local_submodule_bases(module, limit, search_budget)
        nodes = [Submodule(module, b) for b in bases]
    nodes.sort(key=lambda n: n.sort_key())
    covers = _hasse_covers(nodes)
    counts: dict[int, int] = {}
    for n in nodes:
        counts[n.dim] = counts.get(n.dim, 0) + 1
    lattice = SubmoduleLattice(
        module, tuple(nodes), covers, tuple(sorted(counts.items()))
    )
    _verify_lattice(lattice)
    return lattice


def _hasse_covers(nodes) -> tuple[tuple[int, int], ...]:
    # Jordan-Hoelder: N' covers N exactly when N <= N' with length difference 1.
    by_dim: dict[int, list[int]] = {}
    for idx, n in enumerate(nodes):
        by_dim.setdefault(n.dim, []).append(idx)
    covers = []
    for d, lower_idxs in sorted(by_dim.items()):
        upper_idxs = by_dim.get(d + 1, [])
        for i in lower_idxs:
            for j in upper_idxs:
                if nodes[j].contains(nodes[i]):
                    covers.append((i, j))
    return tuple(covers)


def _verify_lattice(lattice: SubmoduleLattice):
    nodes = lattice.nodes
    node_set = set(nodes)
    if zero_submodule(lattice.module) not in node_set:
        raise InvariantViolation("lattice", "zero submodule missing")
    if full_submodule(lattice.module) not in node_set:
        raise InvariantViolation("lattice", "full module missing")
    if len(nodes) > CLOSURE_CHECK_CAP:
        return
    for a in nodes:
        for b in nodes:
            if submodule_sum(a, b) not in node_set:
                raise InvariantViolation("lattice", "not closed under sum")
            if submodule_intersection(a, b) not in node_set:
                raise InvariantViolation("lattice", "not closed under intersection")


# ---------------------------------------------------------------------------
# independent oracle (kept separate from the BFS path; used by tests and `suite`)


def subspace_filter_submodules(module: Module) -> list[AnySubmodule]:
    """Enumerate every F_p-subspace and keep the action-closed ones.

    For product modules, same-characteristic components are flattened into a
    single space first, so the componentwise representation is itself under
    test rather than assumed.
    """
    if isinstance(module, FiniteModule):
        out = []
        for basis in gfp.all_echelon_bases(module.dim, module.p):
            if _closed_under_action(module, basis):
                out.append(Submodule(module, basis))
        out.sort(key=lambda n: n.sort_key())
        return out

    blocks: dict[int, list[int]] = {}
    for i, comp in enumerate(module.components):
        blocks.setdefault(comp.p, []).append(i)
    per_block: list[list[dict[int, Mat]]] = []
    for p, idxs in sorted(blocks.items()):
        comps = [module.components[i] for i in idxs]
        dim = sum(c.dim for c in comps)
        actions = []
        offset = 0
        for comp in comps:
            for i in range(comp.ring.dim):
                actions.append(_embed_block(comp.action[i], offset, dim))
            offset += comp.dim
        found = []
        for basis in gfp.all_echelon_bases(dim, p):
            if all(_rows_closed(basis, a, p) for a in actions):
                found.append(_split_block(basis, comps, idxs, p))
        per_block.append(found)
    out = []
    for combo in iproduct(*per_block):
        parts: dict[int, Mat] = {}
        for piece in combo:
            parts.update(piece)
        out.append(
            ProductSubmodule(
                module,
                tuple(
                    Submodule(c, parts[i]) for i, c in enumerate(module.components)
                ),
            )
        )
    out.sort(key=lambda n: n.sort_key())
    return out


def _embed_block(mat: Mat, offset: int, dim: int) -> Mat:
    rows = []
    for r in range(dim):
        if offset <= r < offset + len(mat):
            row = (0,) * offset + tuple(mat[r - offset]) + (0,) * (dim - offset - len(mat))
        else:
            row = (0,) * dim
        rows.append(row)
    return tuple(rows)


def _rows_closed(basis: Mat, action: Mat, p: int) -> bool:
    return all(gfp.in_span(gfp.mat_vec(action, v, p), basis, p) for v in basis)


def _split_block(basis: Mat, comps, idxs, p: int) -> dict[int, Mat]:
    # a closed subspace of the block splits along components (each component
    # identity is an idempotent of the ring and was included in the actions)
    parts: dict[int, Mat] = {}
    offset = 0
    for which, comp in zip(idxs, comps):
        rows = [row[offset : offset + comp.dim] for row in basis]
        parts[which] = gfp.rref(rows, p)
        offset += comp.dim
    if sum(len(b) for b in parts.values()) != len(basis):
        raise InvariantViolation("oracle", "closed block subspace failed to split")
    return parts


def _closed_under_action(module: FiniteModule, basis: Mat) -> bool:
    for i in range(1, module.ring.dim):
        if not _rows_closed(basis, module.action[i], module.p):
            return False
    return True


# ---------------------------------------------------------------------------
# exports


def lattice_dot(lattice: SubmoduleLattice, name: str = "lattice") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, node in enumerate(lattice.nodes):
        lines.append(f'  n{i} [label="{_node_label(node)}"];')
    for low, high in lattice.covers:
        lines.append(f"  n{low} -> n{high};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_text(lattice: SubmoduleLattice) -> str:
    lines = [
        f"submodules: {len(lattice.nodes)}",
        "counts by dimension: "
        + ", ".join(f"{d}:{c}" for d, c in lattice.counts_by_dim),
        f"hasse covers: {len(lattice.covers)}",
    ]
    for i, node in enumerate(lattice.nodes):
        lines.append(f"  [{i}] dim {node.dim}: {_node_label(node)}")
    return "\n".join(lines) + "\n"


def _node_label(node: AnySubmodule) -> str:
    if isinstance(node, ProductSubmodule):
        return " | ".join(_basis_label(s.basis) for s in node.parts)
    return _basis_label(node.basis)


def _basis_label(basis: Mat) -> str:
    if not basis:
        return "0"
    return "; ".join("".join(str(x) for x in row) for row in basis)
