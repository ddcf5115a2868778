"""Shared deterministic corpora of rings and modules for tests and the suite."""

from __future__ import annotations

import random

from . import gfp
from .modules import (
    Module,
    ProductRing,
    direct_sum,
    make_module,
    quotient,
    regular_module,
    span_submodule,
)
from .rings import LocalAlgebra, chain_ring, truncated_polynomial_ring


def duality_rings() -> list[LocalAlgebra]:
    """Chain rings over F_2 and F_3, two-variable truncations, and Z/p^k stand-ins."""
    rings = []
    for p in (2, 3):
        for d in range(1, 6):
            rings.append(chain_ring(p, d))
    for d in (2, 3):
        rings.append(truncated_polynomial_ring(2, ["x", "y"], d))
    for p in (2, 3):
        for k in range(1, 5):
            rings.append(chain_ring(p, k, var="u"))  # Z/p^k model
    return rings


def decomposition_rings() -> list[ProductRing]:
    """Z/12, Z/36 and a two-characteristic product of truncations."""
    return [
        ProductRing((chain_ring(2, 2), chain_ring(3, 1))),
        ProductRing((chain_ring(2, 2), chain_ring(3, 2))),
        ProductRing((chain_ring(2, 3), chain_ring(3, 2))),
    ]


def meager_suite_rings() -> list:
    return [
        chain_ring(2, 3),
        chain_ring(3, 2),
        truncated_polynomial_ring(2, ["x", "y"], 2),
        ProductRing((chain_ring(2, 2), chain_ring(3, 1))),
        ProductRing((chain_ring(2, 1), chain_ring(3, 1), chain_ring(5, 1))),
        ProductRing((chain_ring(2, 2), chain_ring(2, 1))),
    ]


def random_local_module(ring: LocalAlgebra, rng: random.Random, max_dim: int = 6) -> Module:
    """A random quotient of a free module of rank 1 or 2."""
    rank = rng.choice((1, 2))
    free = direct_sum([regular_module(ring)] * rank)
    n_gens = rng.randint(0, 2)
    gens = [
        tuple(rng.randrange(ring.p) for _ in range(free.dim)) for _ in range(n_gens)
    ]
    sub = span_submodule(free, gens) if gens else span_submodule(free, [gfp.zero_vec(free.dim)])
    mod, _ = quotient(free, sub)
    if mod.dim > max_dim:
        # cut down by quotienting out a random cyclic submodule
        extra = span_submodule(mod, [tuple(rng.randrange(ring.p) for _ in range(mod.dim))])
        mod, _ = quotient(mod, extra)
    return mod


def random_module(ring, rng: random.Random, max_dim: int = 6) -> Module:
    if isinstance(ring, ProductRing):
        per = max(1, max_dim // len(ring.factors))
        comps = [random_local_module(f, rng, per) for f in ring.factors]
        return make_module(ring, comps)
    return random_local_module(ring, rng, max_dim)


def random_modules(rings, count: int, seed: int, max_dim: int = 6) -> list[Module]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        out.append(random_module(rings[i % len(rings)], rng, max_dim))
    return out


def small_module_zoo(ring: LocalAlgebra, max_dim: int = 4) -> list[Module]:
    """Deterministic small modules over a local ring.

    Cyclic quotients of the regular module and their pairwise sums, the
    maximal-ideal powers viewed as modules, and quotients of the rank-two
    free module by small cyclic submodules.
    """
    from .modules import submodule_as_module

    reg = regular_module(ring)
    cyclics = []
    for n in range(ring.nilpotency_degree + 1):
        power = ring.mpow(n)
        sub = span_submodule(reg, power) if power else span_submodule(reg, [gfp.zero_vec(ring.dim)])
        mod, _ = quotient(reg, sub)
        if 0 < mod.dim <= max_dim:
            cyclics.append(mod)
    zoo = list(cyclics)
    for a in cyclics:
        for b in cyclics:
            if a.dim + b.dim <= max_dim:
                zoo.append(direct_sum([a, b]))
    for n in range(1, ring.nilpotency_degree):
        power = ring.mpow(n)
        if power and len(power) <= max_dim:
            piece, _ = submodule_as_module(span_submodule(reg, power))
            zoo.append(piece)
    free2 = direct_sum([reg, reg])
    for g in ring.generator_vectors:
        rel = span_submodule(free2, [ring.unit + g])
        mod, _ = quotient(free2, rel)
        if 0 < mod.dim <= max_dim:
            zoo.append(mod)
    seen = set()
    unique = []
    for m in zoo:
        key = (m.dim, m.action)
        if key not in seen:
            seen.add(key)
            unique.append(m)
    return unique
