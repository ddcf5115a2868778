"""Symbolic minimax descriptors for abelian groups (modules over Z).

A descriptor is a finite formal sum of Z, Z/p^k, Prufer(p) = Z(p^infinity),
and Z[1/S] summands, with an optional infinite-multiplicity marker used to
express non-minimax examples, and the marker "all" on an inverted-prime set
standing for the rationals Q.  The grammar does not capture every abelian
group (no non-split extensions, no exotic rank-one types); it captures every
family the classification theorems in scope distinguish, and every
descriptor has a faithful finite truncation used for cross-checking.

Over Z the Loewy-dimension condition is automatic (the completions Z_p have
Krull dimension one), so countability of the submodule set reduces to:
minimax, and no repeated Prufer prime in the artinian quotient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cardinal import ALEPH0, CONTINUUM, SymbolicCardinal
from .classify import meager_from_lattice
from .errors import NotFinitelyGenerated, NotMinimax
from .modules import (
    ProductRing,
    direct_sum,
    enumerate_submodules,
    make_module,
    quotient_ring_module,
    regular_module,
)
from .rings import DEFAULT_SEARCH_BUDGET, chain_ring, ideal_span


class _Infinite:
    """Multiplicity marker for an infinite direct sum."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = _Infinite()
ALL_PRIMES = "all"

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class MinimaxDescriptor:
    """Formal direct sum: Z^free_rank + torsion + Prufer parts + inverted-prime parts.

    torsion: ((p, k, multiplicity), ...) for Z/p^k summands;
    prufer: ((p, multiplicity), ...);
    localized: one entry per rank-one summand Z[1/S], each a tuple of primes
    or the marker "all" (the rationals).  Multiplicities are positive ints or INF.
    """

    free_rank: int = 0
    torsion: tuple = ()
    prufer: tuple = ()
    localized: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        for p, k, mult in self.torsion:
            if not _is_prime(p) or k < 1 or not _valid_mult(mult):
                raise ValueError(f"bad torsion summand ({p}, {k}, {mult})")
        for p, mult in self.prufer:
            if not _is_prime(p) or not _valid_mult(mult):
                raise ValueError(f"bad Prufer summand ({p}, {mult})")
        for entry in self.localized:
            if entry != ALL_PRIMES and (
                not entry or any(not _is_prime(p) for p in entry)
            ):
                raise ValueError(f"bad inverted-prime set {entry!r}")

    def is_zero(self) -> bool:
        return not (self.free_rank or self.torsion or self.prufer or self.localized)

    def torsion_free_rank_one_count(self) -> int:
        return self.free_rank + len(self.localized)

    def label(self) -> str:
        parts = []
        if self.free_rank:
            parts += ["Z"] * self.free_rank
        for p, k, mult in self.torsion:
            term = f"Z/{p**k}"
            parts.append(f"inf*{term}" if mult is INF else "+".join([term] * mult) if mult > 1 else term)
        for p, mult in self.prufer:
            term = f"Prufer({p})"
            parts.append(f"inf*{term}" if mult is INF else "+".join([term] * mult) if mult > 1 else term)
        for entry in self.localized:
            if entry == ALL_PRIMES:
                parts.append("Q")
            else:
                parts.append("Z[1/{" + ",".join(str(p) for p in entry) + "}]")
        return " + ".join(parts) if parts else "0"


def _valid_mult(mult) -> bool:
    return mult is INF or (isinstance(mult, int) and mult >= 1)


def build_descriptor(free_rank=0, torsion=(), prufer=(), localized=()) -> MinimaxDescriptor:
    """Canonicalize summand lists: merge multiplicities, sort deterministically."""
    tors: dict[tuple[int, int], object] = {}
    for p, k, mult in torsion:
        tors[(p, k)] = _add_mult(tors.get((p, k), 0), mult)
    pruf: dict[int, object] = {}
    for p, mult in prufer:
        pruf[p] = _add_mult(pruf.get(p, 0), mult)
    loc = []
    for entry in localized:
        if entry == ALL_PRIMES:
            loc.append(ALL_PRIMES)
        else:
            loc.append(tuple(sorted(set(int(p) for p in entry))))
    loc.sort(key=lambda e: (0, ()) if e == ALL_PRIMES else (1, e))
    return MinimaxDescriptor(
        free_rank,
        tuple(sorted((p, k, m) for (p, k), m in tors.items())),
        tuple(sorted((p, m) for p, m in pruf.items())),
        tuple(loc),
    )


def _add_mult(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


_TERM_RE = re.compile(r"^(?:(inf|\d+)\*)?(.+)$")


def parse_descriptor(text: str) -> MinimaxDescriptor:
    """Parse e.g. "Z + Z/8 + 2*Prufer(3) + Z[1/{2,5}] + inf*Z/2" (or "0")."""
    text = text.strip()
    if text in ("", "0"):
        return MinimaxDescriptor()
    free = 0
    torsion = []
    prufer = []
    localized = []
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError("empty summand in descriptor")
        # Z[1/{a,b}] contains no '+', so splitting on '+' is safe
        match = _TERM_RE.match(term)
        mult_text, atom = match.group(1), match.group(2).strip()
        mult = INF if mult_text == "inf" else int(mult_text) if mult_text else 1
        if mult != INF and mult < 1:
            raise ValueError(f"multiplicity must be >= 1 in {term!r}")
        if atom == "Q":
            localized.extend([ALL_PRIMES] * _finite_copies(mult, term))
        elif atom == "Z":
            free += _finite_copies(mult, term)
        elif atom.startswith("Z[1/"):
            inner = atom[len("Z[1/") : -1]
            if not atom.endswith("]"):
                raise ValueError(f"unterminated inverted-prime set in {term!r}")
            inner = inner.strip()
            if inner.startswith("{"):
                if not inner.endswith("}"):
                    raise ValueError(f"unterminated prime set in {term!r}")
                primes = [int(x) for x in inner[1:-1].split(",") if x.strip()]
            else:
                primes = [int(inner)]
            localized.extend([tuple(primes)] * _finite_copies(mult, term))
        elif atom.startswith("Prufer(") and atom.endswith(")"):
            prufer.append((int(atom[len("Prufer(") : -1]), mult))
        elif atom.startswith("Z/"):
            n = int(atom[2:])
            if n < 2:
                raise ValueError(f"modulus must be >= 2 in {term!r}")
            for p, k in _prime_power_factors(n):
                torsion.append((p, k, mult))
        else:
            raise ValueError(f"unknown summand {atom!r}")
    return build_descriptor(free, torsion, prufer, localized)


def _finite_copies(mult, term) -> int:
    if mult is INF:
        raise ValueError(f"infinite multiplicity is only supported on torsion and Prufer summands ({term!r})")
    return mult


def _prime_power_factors(n: int):
    out = []
    d = 2
    while n > 1:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    return out


# ---------------------------------------------------------------------------
# decisions


def is_minimax(descriptor: MinimaxDescriptor) -> bool:
    """No infinite marker anywhere: finite sums of the allowed summands are
    noetherian-by-artinian, while an infinite marker realizes an infinite
    direct sum of nonzero modules (and Q realizes one inside Q/Z)."""
    if any(mult is INF for _, _, mult in descriptor.torsion):
        return False
    if any(mult is INF for _, mult in descriptor.prufer):
        return False
    if any(entry == ALL_PRIMES for entry in descriptor.localized):
        return False
    return True


def artinian_quotient(descriptor: MinimaxDescriptor) -> MinimaxDescriptor:
    """The divisible-plus-bounded tail Q with noetherian kernel.

    Z summands vanish, each Z[1/S] contributes the Prufer groups of S (the
    quotient Z[1/S]/Z), finite torsion and Prufer parts survive.  Q is
    canonical up to finite-length summands; this representative keeps them.
    """
    if not is_minimax(descriptor):
        raise NotMinimax("descriptor has an infinite marker")
    prufer = list(descriptor.prufer)
    for entry in descriptor.localized:
        for p in entry:
            prufer.append((p, 1))
    return build_descriptor(0, descriptor.torsion, prufer, ())


@dataclass(frozen=True)
class CountVerdict:
    value: SymbolicCardinal
    reason: str  # "not-minimax" | "prufer-square" | "infinite-minimax" | "finite"

    def __str__(self) -> str:
        return f"{self.value} ({self.reason})"


def count_submodules(
    descriptor: MinimaxDescriptor,
    limit: int = 10**6,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> CountVerdict:
    """Symbolic cardinality of the set of subgroups.

    Continuum when the descriptor is not minimax, or when the artinian
    quotient contains a repeated Prufer prime (an infinite-length square);
    Aleph0 for the remaining infinite descriptors; an exact count for finite
    groups, computed from the truncation lattices.
    """
    if not is_minimax(descriptor):
        return CountVerdict(CONTINUUM, "not-minimax")
    quotient_part = artinian_quotient(descriptor)
    prufer_mult: dict[int, int] = {}
    for p, mult in quotient_part.prufer:
        prufer_mult[p] = prufer_mult.get(p, 0) + mult
    if any(m >= 2 for m in prufer_mult.values()):
        return CountVerdict(CONTINUUM, "prufer-square")
    if descriptor.free_rank or descriptor.localized or descriptor.prufer:
        return CountVerdict(ALEPH0, "infinite-minimax")
    count = 1
    for p in sorted({p for p, _, _ in descriptor.torsion}):
        module = _torsion_module(descriptor, p, None)
        count *= len(enumerate_submodules(module, limit, search_budget))
    return CountVerdict(SymbolicCardinal.finite(count), "finite")


def is_meager_z(descriptor: MinimaxDescriptor) -> bool:
    """No square of a simple group as a subquotient.

    True exactly for: torsion descriptors with at most one summand per prime
    (counted with multiplicity, Prufer included), and single rank-one
    torsion-free summands (Z, Z[1/S] or Q).  A mixed descriptor always fails:
    a free or localized summand surjects onto Z/p for almost every p.
    """
    rank_one = descriptor.torsion_free_rank_one_count()
    if rank_one == 0:
        per_prime: dict[int, object] = {}
        for p, _, mult in descriptor.torsion:
            per_prime[p] = _add_mult(per_prime.get(p, 0), mult)
        for p, mult in descriptor.prufer:
            per_prime[p] = _add_mult(per_prime.get(p, 0), mult)
        return all(m is not INF and m <= 1 for m in per_prime.values())
    return rank_one == 1 and not descriptor.torsion and not descriptor.prufer


@dataclass(frozen=True)
class OrdinalLengthClass:
    kind: str  # "finite" | "omega" | "omega-plus-one" | "above"
    finite_length: int | None = None

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.finite_length})"
        return {"omega": "Omega", "omega-plus-one": "OmegaPlusOne", "above": "AboveOmegaPlusOne"}[
            self.kind
        ]


def ordinal_length_class(descriptor: MinimaxDescriptor) -> OrdinalLengthClass:
    """Transfinite length class of a finitely generated descriptor.

    Finite groups have their composition length; Z has length omega; Z plus
    one simple summand has omega + 1 (the simple part is forced to be the
    socle); anything larger, including Z^2 or Z + Z/4, lies above omega + 1.
    """
    if descriptor.prufer or descriptor.localized:
        raise NotFinitelyGenerated("divisible or localized summands present")
    if any(mult is INF for _, _, mult in descriptor.torsion):
        raise NotFinitelyGenerated("infinite torsion multiplicity")
    torsion_length = sum(k * mult for _, k, mult in descriptor.torsion)
    if descriptor.free_rank == 0:
        return OrdinalLengthClass("finite", torsion_length)
    if descriptor.free_rank == 1:
        if torsion_length == 0:
            return OrdinalLengthClass("omega")
        if torsion_length == 1:
            return OrdinalLengthClass("omega-plus-one")
    return OrdinalLengthClass("above")


@dataclass(frozen=True)
class UniserialVerdict:
    uniserial: bool
    case: str | None  # "FiniteChain" | "PruferCase" | "DVRCase"
    note: str = ""
    witness: tuple[str, str] | None = None


def uniserial_z(descriptor: MinimaxDescriptor) -> UniserialVerdict:
    """Whether the subgroups form a chain, with the classification case tag.

    Over Z only bounded cyclic p-groups and Prufer groups qualify (the
    DVRCase of the classification needs the rank-one quotient domain to be a
    discrete valuation ring, which Z is not: 2Z and 3Z are incomparable in Z,
    and Z and 3Z[1/2] are incomparable in Q).  Each localization of Z at one
    prime is a chain, so finite truncations cannot see the failure; the
    caveat is recorded on the verdict.
    """
    if descriptor.is_zero():
        return UniserialVerdict(True, "FiniteChain", note="zero module")
    if descriptor.torsion_free_rank_one_count() == 0 and not descriptor.prufer:
        if len(descriptor.torsion) == 1 and descriptor.torsion[0][2] == 1:
            return UniserialVerdict(True, "FiniteChain")
    if (
        not descriptor.torsion
        and not descriptor.localized
        and descriptor.free_rank == 0
        and len(descriptor.prufer) == 1
        and descriptor.prufer[0][1] == 1
    ):
        return UniserialVerdict(True, "PruferCase")
    if descriptor.torsion_free_rank_one_count() == 1 and not descriptor.torsion and not descriptor.prufer:
        if descriptor.free_rank == 1:
            witness = ("2Z", "3Z")
        elif descriptor.localized[0] == ALL_PRIMES:
            witness = ("Z", "3*Z[1/2]")
        else:
            missing = next(p for p in _SMALL_PRIMES if p not in descriptor.localized[0])
            witness = ("Z", f"{missing}*{descriptor.label()}")
        return UniserialVerdict(
            False,
            None,
            note=(
                "rank-one torsion-free over Z is never uniserial: Z is not a "
                "discrete valuation ring (every localization at a single prime "
                "is, so truncations are chains)"
            ),
            witness=witness,
        )
    return UniserialVerdict(
        False,
        None,
        note="multiple summands give incomparable subgroups",
        witness=_two_summand_witness(descriptor),
    )


def _two_summand_witness(descriptor: MinimaxDescriptor) -> tuple[str, str] | None:
    names = []
    names += ["Z"] * min(descriptor.free_rank, 2)
    for p, k, mult in descriptor.torsion:
        copies = 2 if mult is INF else min(mult, 2)
        names += [f"Z/{p**k}"] * copies
    for p, mult in descriptor.prufer:
        copies = 2 if mult is INF else min(mult, 2)
        names += [f"Prufer({p})"] * copies
    for entry in descriptor.localized:
        names.append("Q" if entry == ALL_PRIMES else "Z[1/...]")
    if len(names) >= 2:
        return (f"{names[0]} summand", f"{names[1]} summand")
    return None


# ---------------------------------------------------------------------------
# finite truncations


def _torsion_module(descriptor: MinimaxDescriptor, p: int, level: int | None):
    """The p-part of the descriptor as a module over the chain ring of length max exponent.

    With level=None only finite torsion is used (for exact subgroup counts of
    finite descriptors); with a level k, divisible and free summands
    contribute their depth-k layers and INF markers contribute k copies.
    """
    summands: list[tuple[int, int]] = []  # (exponent, copies)
    for q, k, mult in descriptor.torsion:
        if q != p:
            continue
        if mult is INF:
            if level is None:
                raise NotFinitelyGenerated("infinite marker needs a truncation level")
            summands.append((min(k, level), level))
        else:
            summands.append((min(k, level) if level is not None else k, mult))
    if level is not None:
        rank_like = descriptor.free_rank + len(descriptor.localized)
        for q, mult in descriptor.prufer:
            if q == p:
                summands.append((level, level if mult is INF else mult))
        if rank_like:
            summands.append((level, rank_like))
    depth = max((k for k, _ in summands), default=1)
    ring = chain_ring(p, depth)
    pieces = []
    for k, copies in summands:
        if k == depth:
            piece = regular_module(ring)
        else:
            piece = quotient_ring_module(
                ring, ideal_span(ring, [ring.monomial_vector(f"t^{k}" if k > 1 else "t")])
            )
        pieces.extend([piece] * copies)
    if not pieces:
        raise ValueError(f"descriptor has no {p}-part")
    return direct_sum(pieces)


@dataclass(frozen=True)
class CrosscheckReport:
    descriptor: str
    prime: int
    level: int
    module_length: int
    submodule_count: int
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def consistent(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def truncation_crosscheck(
    descriptor: MinimaxDescriptor,
    p: int,
    level: int,
    limit: int = 10**6,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> CrosscheckReport:
    """Compare symbolic decisions with the depth-`level` finite p-part.

    Chain verdicts must truncate to chains (count = length + 1), square-driven
    continuum verdicts must truncate to lattices of size at least 2^level, and
    exact finite counts must match once the level passes every exponent.
    """
    module = _torsion_module(descriptor, p, level)
    lattice = enumerate_submodules(module, limit, search_budget)
    count = len(lattice)
    checks = []

    verdict = count_submodules(descriptor)
    meager = is_meager_z(descriptor)
    chain = uniserial_z(descriptor)

    if chain.uniserial or (meager and verdict.value != CONTINUUM):
        checks.append(
            (
                "chain truncation grows linearly",
                count == module.dim + 1,
                f"count {count} vs length+1 = {module.dim + 1}",
            )
        )
    if verdict.reason == "prufer-square":
        checks.append(
            (
                "square truncation has at least 2^level submodules",
                count >= 2**level,
                f"count {count} vs 2^{level} = {2**level}",
            )
        )
    if verdict.reason == "not-minimax" and _has_infinite_p_marker(descriptor, p):
        checks.append(
            (
                "infinite-sum truncation has at least 2^level submodules",
                count >= 2**level,
                f"count {count} vs 2^{level} = {2**level}",
            )
        )
    if verdict.reason == "finite":
        max_exp = max((k for q, k, _ in descriptor.torsion if q == p), default=0)
        if level >= max_exp:
            finite_p = _torsion_module(descriptor, p, None)
            expected = len(enumerate_submodules(finite_p, limit, search_budget))
            checks.append(
                (
                    "finite descriptor truncates to the exact lattice",
                    count == expected,
                    f"count {count} vs exact {expected}",
                )
            )
    flag, _ = meager_from_lattice(lattice)
    if meager:
        checks.append(("meager descriptor truncates meager", flag, f"finite level meager: {flag}"))
    if not checks:
        checks.append(("truncation computed", True, f"count {count}"))
    return CrosscheckReport(
        descriptor.label(), p, level, module.dim, count, tuple(checks)
    )


def _has_infinite_p_marker(descriptor: MinimaxDescriptor, p: int) -> bool:
    return any(q == p and mult is INF for q, _, mult in descriptor.torsion) or any(
        q == p and mult is INF for q, mult in descriptor.prufer
    )


@dataclass(frozen=True)
class SupportGrowthReport:
    descriptor: str
    level: int
    primes: tuple[int, ...]
    submodule_count: int
    expected: int

    @property
    def consistent(self) -> bool:
        return self.submodule_count == self.expected == 2 ** len(self.primes)


def support_growth_shadow(descriptor: MinimaxDescriptor, level: int) -> SupportGrowthReport:
    """Finite shadow of the 2^gamma mechanism across the divisible support.

    For each of the first `level` primes in the divisible support, take one
    simple layer; the lattice of the direct sum over the product ring has
    exactly 2^(number of primes) subgroups, witnessing the exponent gamma.
    """
    support = set()
    for p, _ in descriptor.prufer:
        support.add(p)
    for entry in descriptor.localized:
        if entry == ALL_PRIMES:
            support.update(_SMALL_PRIMES)
        else:
            support.update(entry)
    primes = tuple(sorted(support))[:level]
    if not primes:
        raise ValueError("descriptor has no divisible support")
    ring = ProductRing(tuple(chain_ring(p, 1) for p in primes))
    module = make_module(ring, [regular_module(f) for f in ring.factors])
    count = len(enumerate_submodules(module))
    return SupportGrowthReport(descriptor.label(), level, primes, count, 2 ** len(primes))
