"""Decision procedures on finite modules: uniserial, meager, atoms.

A module is meager when no subquotient is a square of a simple module.  On a
finite module that is decidable by brute force (scan quotient socles over the
whole lattice) and by a structural fast path (primary components are all
chains); the two must always agree, and the acceptance suite checks that they
do on large random corpora.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gfp
from .errors import InvariantViolation, MultiplePrimes
from .modules import (
    AnySubmodule,
    MaximalIdeal,
    Module,
    ProductModule,
    SubmoduleLattice,
    associated_primes,
    enumerate_submodules,
    maximal_ideals,
    primary_components,
    quotient,
    socle,
    span_submodule,
    submodule_as_module,
    submodule_sum,
)
from .rings import DEFAULT_SEARCH_BUDGET


@dataclass(frozen=True)
class MeagerWitness:
    """Submodules N < P with P/N isomorphic to the square of the simple at `prime`."""

    lower: AnySubmodule
    upper: AnySubmodule
    prime: MaximalIdeal


@dataclass(frozen=True)
class ClassificationReport:
    uniserial: bool
    meager: bool
    single_associated_prime: bool
    atoms: tuple[AnySubmodule, ...]
    meager_witness: MeagerWitness | None
    chain: tuple[AnySubmodule, ...] | None

    def __post_init__(self):
        if self.meager == (self.meager_witness is not None):
            raise InvariantViolation("classification", "witness iff not meager")
        if self.uniserial and not self.meager:
            raise InvariantViolation("classification", "uniserial implies meager")


def is_uniserial(module: Module, limit: int = 10**6, search_budget: int = DEFAULT_SEARCH_BUDGET):
    """Whether the submodules form a chain; returns (flag, chain or None)."""
    lattice = enumerate_submodules(module, limit, search_budget)
    return uniserial_from_lattice(lattice)


def uniserial_from_lattice(lattice: SubmoduleLattice):
    if len(lattice.nodes) != lattice.module.dim + 1:
        return False, None
    chain = lattice.nodes  # sorted by dimension; one node per length
    for small, big in zip(chain, chain[1:]):
        if not big.contains(small):
            raise InvariantViolation("uniserial", "one node per length but not a chain")
    return True, chain


def is_meager(module: Module, limit: int = 10**6, search_budget: int = DEFAULT_SEARCH_BUDGET):
    """Brute-force meagerness; returns (flag, witness or None).

    Scans every submodule N in canonical order and every maximal ideal P; the
    first quotient with a 2-dimensional P-socle yields the witness.
    """
    lattice = enumerate_submodules(module, limit, search_budget)
    return meager_from_lattice(lattice)


def meager_from_lattice(lattice: SubmoduleLattice):
    module = lattice.module
    primes = maximal_ideals(module.ring)
    for node in lattice.nodes:
        quot, proj = quotient(module, node)
        for prime in primes:
            soc = socle(quot, prime)
            if soc.dim >= 2:
                upper = _lift_square(module, node, quot, proj, prime, soc)
                return False, MeagerWitness(node, upper, prime)
    return True, None


def _lift_square(module, node, quot, proj, prime, soc):
    """Preimage in the module of a 2-dimensional subspace of the quotient socle."""
    if isinstance(module, ProductModule):
        comp = quot.components[prime.factor]
        rows = soc.parts[prime.factor].basis[:2]
        comp_proj = proj[prime.factor]
        lifts = []
        for w in rows:
            x = gfp.solve(comp_proj, w, comp.p)
            assert x is not None  # projections are surjective
            vec = tuple(
                x if i == prime.factor else gfp.zero_vec(c.dim)
                for i, c in enumerate(module.components)
            )
            lifts.append(vec)
    else:
        rows = soc.basis[:2]
        lifts = []
        for w in rows:
            x = gfp.solve(proj, w, module.p)
            assert x is not None
            lifts.append(x)
    upper = submodule_sum(node, span_submodule(module, lifts))
    if upper.dim != node.dim + 2:
        raise InvariantViolation("meager-witness", "lifted square has wrong length")
    return upper


def meager_fast_path(module: Module, limit: int = 10**6, search_budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Structural route: meager iff every primary component is uniserial."""
    if module.dim == 0:
        return True
    components, _ = primary_components(module)
    for comp in components.values():
        piece, _ = submodule_as_module(comp)
        flag, _ = is_uniserial(_strip_empty_factors(piece), limit, search_budget)
        if not flag:
            return False
    return True


def _strip_empty_factors(module: Module) -> Module:
    # a primary component of a product module lives in one factor; dropping the
    # zero components keeps lattices small without changing the lattice
    if isinstance(module, ProductModule):
        live = [c for c in module.components if c.dim > 0]
        if len(live) == 1:
            return live[0]
    return module


def discriminating_atoms(module: Module) -> tuple[AnySubmodule, ...]:
    """The minimal nonzero submodules: the lines inside each prime's socle.

    Every nonzero submodule contains a simple submodule, every simple one is a
    line of some socle, so this family discriminates and is minimal.
    """
    atoms = []
    for prime in associated_primes(module):
        soc = socle(module, prime)
        if isinstance(module, ProductModule):
            part = soc.parts[prime.factor]
            comp = module.components[prime.factor]
            for coeffs in gfp.normalized_vectors(part.dim, comp.p):
                line = gfp.zero_vec(comp.dim)
                for c, row in zip(coeffs, part.basis):
                    line = gfp.vec_add(line, gfp.vec_scale(c, row, comp.p), comp.p)
                vec = tuple(
                    line if i == prime.factor else gfp.zero_vec(c2.dim)
                    for i, c2 in enumerate(module.components)
                )
                atoms.append(span_submodule(module, [vec]))
        else:
            for coeffs in gfp.normalized_vectors(soc.dim, module.p):
                line = gfp.zero_vec(module.dim)
                for c, row in zip(coeffs, soc.basis):
                    line = gfp.vec_add(line, gfp.vec_scale(c, row, module.p), module.p)
                atoms.append(span_submodule(module, [line]))
    atoms.sort(key=lambda a: a.sort_key())
    return tuple(atoms)


def classify_single_prime(module: Module, limit: int = 10**6, search_budget: int = DEFAULT_SEARCH_BUDGET) -> str:
    """For a module with one associated prime: "FiniteLengthChain" or "NotMeager".

    A finite meager module with a single associated prime is a chain; the two
    routes are asserted to agree.
    """
    primes = associated_primes(module)
    if len(primes) != 1:
        raise MultiplePrimes(len(primes))
    lattice = enumerate_submodules(module, limit, search_budget)
    meager, _ = meager_from_lattice(lattice)
    uniserial, _ = uniserial_from_lattice(lattice)
    if meager != uniserial:
        raise InvariantViolation(
            "single-prime", "meager and chain disagree on a single-prime module"
        )
    return "FiniteLengthChain" if meager else "NotMeager"


def classify(module: Module, limit: int = 10**6, search_budget: int = DEFAULT_SEARCH_BUDGET) -> ClassificationReport:
    lattice = enumerate_submodules(module, limit, search_budget)
    uniserial, chain = uniserial_from_lattice(lattice)
    meager, witness = meager_from_lattice(lattice)
    fast = meager_fast_path(module, limit, search_budget)
    if fast != meager:
        raise InvariantViolation("meager", "fast path disagrees with the lattice scan")
    return ClassificationReport(
        uniserial=uniserial,
        meager=meager,
        single_associated_prime=len(associated_primes(module)) == 1,
        atoms=discriminating_atoms(module),
        meager_witness=witness,
        chain=chain,
    )
