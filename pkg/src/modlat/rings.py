"""Finite commutative local F_p-algebras and their ideals.

A ring here is a structure-constant algebra over F_p whose basis element 0 is
the unit and whose remaining basis elements span a nilpotent ideal.  That
ideal is then the unique maximal ideal and the residue field is F_p, so
composition length equals F_p-dimension throughout the package.

All ideals are kept in reduced echelon form, which is the canonical
representative of their span; every set-valued result is sorted by
(dimension, echelon rows) so outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from . import gfp
from .errors import (
    BudgetExceeded,
    MaximalIdealNotNilpotent,
    MixedParents,
    NoUnit,
    NonAssociative,
    NonCommutative,
    TooLarge,
)
from .gfp import Mat, Vec

DEFAULT_SEARCH_BUDGET = 2**20
DEFAULT_RING_DIM_CAP = 4096


@dataclass(frozen=True)
class LocalAlgebra:
    """Finite commutative local F_p-algebra given by structure constants.

    struct[i][j] is the coefficient vector of basis_i * basis_j.  Use
    :func:`make_local_algebra` or :func:`truncated_polynomial_ring` to get a
    validated instance.
    """

    p: int
    dim: int
    basis_labels: tuple[str, ...]
    struct: tuple[tuple[Vec, ...], ...]
    # set for monomial-basis rings; enables label arithmetic and tower maps
    variables: tuple[str, ...] | None = None
    exponents: tuple[tuple[int, ...], ...] | None = None

    @cached_property
    def mult_mats(self) -> tuple[Mat, ...]:
        """Left-multiplication matrix of each basis element (column c = b_i * b_c)."""
        return tuple(
            tuple(tuple(self.struct[i][c][r] for c in range(self.dim)) for r in range(self.dim))
            for i in range(self.dim)
        )

    def mult(self, u: Vec, v: Vec) -> Vec:
        acc = [0] * self.dim
        for i, ui in enumerate(u):
            if ui:
                row = self.struct[i]
                for j, vj in enumerate(v):
                    if vj:
                        c = ui * vj
                        w = row[j]
                        for k, wk in enumerate(w):
                            if wk:
                                acc[k] += c * wk
        return tuple(a % self.p for a in acc)

    def element_matrix(self, u: Vec) -> Mat:
        """Multiplication-by-u as a matrix."""
        m = gfp.zero_mat(self.dim, self.dim)
        for i, ui in enumerate(u):
            if ui:
                m = gfp.mat_add(m, gfp.mat_scale(ui, self.mult_mats[i], self.p), self.p)
        return m

    @property
    def unit(self) -> Vec:
        return gfp.unit_vec(0, self.dim)

    @cached_property
    def maximal_ideal(self) -> "Ideal":
        rows = [gfp.unit_vec(i, self.dim) for i in range(1, self.dim)]
        return Ideal(self, gfp.rref(rows, self.p))

    @cached_property
    def maximal_ideal_powers(self) -> tuple[Mat, ...]:
        """Echelon bases of M^0=R, M^1, ..., ending with the first zero power."""
        powers = [gfp.identity(self.dim), self.maximal_ideal.basis]
        while powers[-1]:
            # M^(n+1) = sum of g * M^n over the generators, since M^n is an ideal
            prods = [
                gfp.mat_vec(g, v, self.p) for g in self.generator_matrices for v in powers[-1]
            ]
            powers.append(gfp.rref(prods, self.p))
        return tuple(powers)

    def mpow(self, n: int) -> Mat:
        """Echelon basis of M^n (the zero space once n exceeds the nilpotency degree)."""
        powers = self.maximal_ideal_powers
        return powers[n] if n < len(powers) else ()

    @property
    def nilpotency_degree(self) -> int:
        """Least d >= 1 with M^d = 0."""
        return len(self.maximal_ideal_powers) - 1

    @cached_property
    def generator_vectors(self) -> tuple[Vec, ...]:
        """Basis vectors spanning M modulo M^2: algebra generators of M.

        Closing a subspace under multiplication by these is the same as
        closing it under the whole ring (every element of M is a combination
        of products of generators), but much cheaper.
        """
        # M^2 straight from the table to avoid depending on the power chain
        basis = gfp.rref(
            [self.struct[i][j] for i in range(1, self.dim) for j in range(i, self.dim)],
            self.p,
        )
        gens = []
        for i in range(1, self.dim):
            v = gfp.unit_vec(i, self.dim)
            if not gfp.in_span(v, basis, self.p):
                gens.append(v)
                basis = gfp.span_sum(basis, (v,), self.p)
        return tuple(gens)

    @cached_property
    def generator_matrices(self) -> tuple[Mat, ...]:
        return tuple(self.element_matrix(g) for g in self.generator_vectors)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.basis_labels)}

    def monomial_vector(self, expr: str) -> Vec:
        """Coefficient vector of a monomial like "T^2*Y" (zero if it died in the quotient)."""
        if self.variables is None:
            raise ValueError("ring was not built from a monomial basis")
        exps = parse_monomial(expr, self.variables)
        label = monomial_label(exps, self.variables)
        idx = self.label_index.get(label)
        return gfp.unit_vec(idx, self.dim) if idx is not None else gfp.zero_vec(self.dim)

    def describe(self) -> str:
        return f"F_{self.p} algebra of dim {self.dim}, basis [{', '.join(self.basis_labels)}]"

    def __repr__(self) -> str:  # struct tables are noisy; keep repr short
        return f"LocalAlgebra(p={self.p}, dim={self.dim})"


@dataclass(frozen=True)
class Ideal:
    """Ideal of a LocalAlgebra, stored as a reduced echelon basis."""

    ring: LocalAlgebra
    basis: Mat

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Vec) -> bool:
        return gfp.in_span(v, self.basis, self.ring.p)

    def contains(self, other: "Ideal") -> bool:
        return gfp.contains(self.basis, other.basis, self.ring.p)

    def is_zero(self) -> bool:
        return not self.basis

    def sort_key(self):
        return (self.dim, self.basis)

    def __repr__(self) -> str:
        return f"Ideal(dim={self.dim} of {self.ring!r})"


def _pairwise_product_span(ring: LocalAlgebra, a: Mat, b: Mat) -> Mat:
    prods = [ring.mult(u, v) for u in a for v in b]
    return gfp.rref(prods, ring.p)


def make_local_algebra(
    p: int,
    struct_consts,
    basis_labels=None,
    variables=None,
    exponents=None,
) -> LocalAlgebra:
    """Validate a structure-constant table and wrap it as a LocalAlgebra.

    Checks, exhaustively on basis elements: unitality of basis 0,
    commutativity, associativity on all triples, and nilpotency of the span
    of basis elements 1..dim-1.  Fails fast with the first violating tuple.
    """
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"p={p} is not prime")
    struct = tuple(tuple(tuple(int(x) % p for x in vec) for vec in row) for row in struct_consts)
    m = len(struct)
    if m == 0 or any(len(row) != m for row in struct) or any(
        len(vec) != m for row in struct for vec in row
    ):
        raise ValueError("structure-constant table is not an m x m table of m-vectors")
    labels = tuple(basis_labels) if basis_labels else tuple(f"e{i}" for i in range(m))
    labels = labels if len(labels) == m else tuple(f"e{i}" for i in range(m))
    ring = LocalAlgebra(p, m, labels, struct, variables, exponents)

    for j in range(m):
        if struct[0][j] != gfp.unit_vec(j, m) or struct[j][0] != gfp.unit_vec(j, m):
            raise NoUnit(j)
    for i in range(m):
        for j in range(i + 1, m):
            if struct[i][j] != struct[j][i]:
                raise NonCommutative(i, j)
    # exhaustive associativity on basis triples, in sparse form
    nz = [
        [tuple((k, c) for k, c in enumerate(vec) if c) for vec in row] for row in struct
    ]
    for i in range(m):
        for j in range(m):
            left = nz[i][j]
            for k in range(m):
                lhs: dict[int, int] = {}
                for l, c in left:
                    for r, c2 in nz[l][k]:
                        lhs[r] = (lhs.get(r, 0) + c * c2) % p
                rhs: dict[int, int] = {}
                for l, c in nz[j][k]:
                    for r, c2 in nz[i][l]:
                        rhs[r] = (rhs.get(r, 0) + c * c2) % p
                if {r: c for r, c in lhs.items() if c} != {r: c for r, c in rhs.items() if c}:
                    raise NonAssociative(i, j, k)

    # nilpotency of the would-be maximal ideal; full-basis products on purpose
    # (the generator shortcut is only sound once nilpotency is known)
    power = ring.maximal_ideal.basis
    seen_dims = {len(power)}
    while power:
        power = _pairwise_product_span(ring, ring.maximal_ideal.basis, power)
        if len(power) in seen_dims and power:
            raise MaximalIdealNotNilpotent(len(power))
        seen_dims.add(len(power))
    return ring


def monomial_label(exps: tuple[int, ...], variables) -> str:
    parts = []
    for var, e in zip(variables, exps):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(expr: str, variables) -> tuple[int, ...]:
    """Parse "T^2*Y" into an exponent tuple over the given variable order."""
    index = {v: i for i, v in enumerate(variables)}
    exps = [0] * len(variables)
    text = expr.replace(" ", "")
    if text in ("", "1"):
        return tuple(exps)
    for part in text.split("*"):
        if "^" in part:
            name, _, power = part.partition("^")
            e = int(power)
        else:
            name, e = part, 1
        if name not in index:
            raise ValueError(f"unknown variable {name!r} in monomial {expr!r}")
        if e < 0:
            raise ValueError(f"negative exponent in monomial {expr!r}")
        exps[index[name]] += e
    return tuple(exps)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def truncated_polynomial_ring(
    p: int,
    variables,
    cap: int,
    relations=(),
    max_dim: int = DEFAULT_RING_DIM_CAP,
) -> LocalAlgebra:
    """F_p[variables] modulo the given monomial relations and all monomials of degree >= cap.

    The basis is the set of surviving monomials of degree < cap in graded
    order (lexicographic within a degree, following the variable order), so
    basis element 0 is always the monomial 1.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    variables = tuple(variables)
    rel_exps = [
        parse_monomial(r, variables) if isinstance(r, str) else tuple(int(x) for x in r)
        for r in relations
    ]
    if any(sum(r) == 0 for r in rel_exps):
        raise ValueError("the monomial 1 cannot be a relation")

    monomials = []
    for degree in range(cap):
        layer = [
            e
            for e in iproduct(range(degree + 1), repeat=len(variables))
            if sum(e) == degree and not any(_divides(r, e) for r in rel_exps)
        ]
        layer.sort(key=lambda e: tuple(-x for x in e))
        monomials.extend(layer)
    m = len(monomials)
    if m > max_dim:
        raise TooLarge(m, max_dim)
    index = {e: i for i, e in enumerate(monomials)}

    struct = []
    for a in monomials:
        row = []
        for b in monomials:
            c = tuple(x + y for x, y in zip(a, b))
            if sum(c) >= cap or any(_divides(r, c) for r in rel_exps):
                row.append(gfp.zero_vec(m))
            else:
                row.append(gfp.unit_vec(index[c], m))
        struct.append(tuple(row))
    labels = tuple(monomial_label(e, variables) for e in monomials)
    return make_local_algebra(p, struct, labels, variables, tuple(monomials))


def chain_ring(p: int, length: int, var: str = "t") -> LocalAlgebra:
    """The chain ring of the given length over F_p, i.e. F_p[t]/t^length.

    This is the length-`length` truncation of a complete discrete valuation
    ring with residue field F_p.  It also serves as the stand-in for
    Z/p^length: for everything this package computes (submodule lattices,
    socle chains, duals, lengths, distances) the two are indistinguishable.
    """
    return truncated_polynomial_ring(p, [var], length, [])


def prime_field(p: int) -> LocalAlgebra:
    return chain_ring(p, 1)


def full_ideal(ring: LocalAlgebra) -> Ideal:
    return Ideal(ring, gfp.identity(ring.dim))


def zero_ideal(ring: LocalAlgebra) -> Ideal:
    return Ideal(ring, ())


def ideal_span(ring: LocalAlgebra, gens) -> Ideal:
    """Smallest ideal containing the generators.

    Closes the span under multiplication by the algebra generators of the
    maximal ideal, which closes it under every ring element.
    """
    gens = [tuple(int(x) % ring.p for x in g) for g in gens]
    if any(len(g) != ring.dim for g in gens):
        raise ValueError("generator length does not match ring dimension")
    basis = gfp.rref(gens, ring.p)
    while True:
        fresh = []
        for v in basis:
            for g in ring.generator_matrices:
                w = gfp.mat_vec(g, v, ring.p)
                if not gfp.is_zero(w) and not gfp.in_span(w, basis, ring.p):
                    fresh.append(w)
        if not fresh:
            return Ideal(ring, basis)
        basis = gfp.rref(list(basis) + fresh, ring.p)


def ideal_combine(kind: str, left: Ideal, other=None) -> Ideal:
    """Combine ideals: kind in {"sum", "product", "intersection", "power"}.

    For "power" pass the exponent as `other`; power(0) is the whole ring.
    """
    ring = left.ring
    if kind == "power":
        n = int(other)
        if n < 0:
            raise ValueError("power exponent must be >= 0")
        result = full_ideal(ring)
        for _ in range(n):
            result = ideal_combine("product", result, left)
        return result
    if not isinstance(other, Ideal):
        raise TypeError(f"second argument to {kind} must be an Ideal")
    if other.ring != ring:
        raise MixedParents(f"cannot {kind} ideals of different rings")
    if kind == "sum":
        return Ideal(ring, gfp.span_sum(left.basis, other.basis, ring.p))
    if kind == "product":
        return Ideal(ring, _pairwise_product_span(ring, left.basis, other.basis))
    if kind == "intersection":
        return Ideal(ring, gfp.span_intersection(left.basis, other.basis, ring.p))
    raise ValueError(f"unknown combination kind {kind!r}")


def graded_piece_dim(ring: LocalAlgebra, n: int) -> int:
    """dim of M^n / M^(n+1) over F_p; zero once M^n vanishes."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return len(ring.mpow(n)) - len(ring.mpow(n + 1))


def enumerate_ideals(
    ring: LocalAlgebra,
    limit: int = 10**6,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[Ideal]:
    """All ideals, canonically sorted by (dimension, echelon basis).

    Breadth-first closure over sums of principal ideals; every ideal is a sum
    of principal ones, so the closure is complete.
    """
    if ring.p**ring.dim > search_budget:
        raise BudgetExceeded(0, search_budget, "ideal search space")
    principal = {
        ideal_span(ring, [v]).basis for v in gfp.normalized_vectors(ring.dim, ring.p)
    }
    principal.discard(())
    seen = {()}
    frontier = [()]
    while frontier:
        fresh = []
        for base in frontier:
            for gen in principal:
                joined = gfp.span_sum(base, gen, ring.p)
                if joined not in seen:
                    seen.add(joined)
                    if len(seen) > limit:
                        raise BudgetExceeded(len(seen), limit, "ideal enumeration")
                    fresh.append(joined)
        frontier = fresh
    ideals = [Ideal(ring, b) for b in seen]
    ideals.sort(key=Ideal.sort_key)
    return ideals


def subspace_filter_ideals(ring: LocalAlgebra) -> list[Mat]:
    """Brute-force oracle: every subspace closed under every basis multiplication.

    Kept deliberately independent of enumerate_ideals; `modlat suite run`
    compares the two on all small rings.
    """
    found = []
    for basis in gfp.all_echelon_bases(ring.dim, ring.p):
        closed = all(
            gfp.in_span(gfp.mat_vec(ring.mult_mats[i], v, ring.p), basis, ring.p)
            for v in basis
            for i in range(1, ring.dim)
        )
        if closed:
            found.append(basis)
    found.sort(key=lambda b: (len(b), b))
    return found
