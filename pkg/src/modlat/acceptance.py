"""The acceptance battery: executable checks behind `modlat suite run`.

Each criterion returns a CheckResult; the pytest acceptance module asserts
them individually and the CLI prints one line per criterion.  Everything is
deterministic given the seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product as iproduct

from .classify import is_meager, meager_fast_path
from .corpus import (
    decomposition_rings,
    duality_rings,
    meager_suite_rings,
    random_modules,
    small_module_zoo,
)
from .matlis import continuity_audit, double_dual_certificate, zeta, zeta_involution_holds
from .modules import (
    direct_sum,
    enumerate_submodules,
    primary_components,
    regular_module,
    subspace_filter_submodules,
)
from .rings import (
    chain_ring,
    enumerate_ideals,
    subspace_filter_ideals,
    truncated_polynomial_ring,
)
from .tower import (
    branching_report,
    hilbert_samuel_profile,
    ideal_tree,
    make_tower,
    pair_growth,
    square_quotient_embedding,
)
from .zmodule import (
    count_submodules,
    parse_descriptor,
    support_growth_shadow,
    truncation_crosscheck,
)

DEFAULT_SEED = 20250810


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(name, fn):
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as err:  # a crash is a failure with the error as detail
        return CheckResult(name, False, f"raised {type(err).__name__}: {err}", time.perf_counter() - start)
    return CheckResult(name, passed, detail, time.perf_counter() - start)


def criterion_matlis_involution(seed: int = DEFAULT_SEED) -> CheckResult:
    """Double duals, lattice sizes and the zeta involution across the ring corpus."""

    def run():
        modules_checked = 0
        for ring in duality_rings():
            for module in small_module_zoo(ring, max_dim=4):
                cert = double_dual_certificate(module)
                if cert.dual.module.dim != module.dim:
                    return False, f"dim T(M) != dim M over {ring.describe()}"
                lattice = enumerate_submodules(module)
                dual_lattice = enumerate_submodules(cert.dual.module)
                if len(lattice) != len(dual_lattice):
                    return False, f"|Sub(M)| != |Sub(T(M))| over {ring.describe()}"
                images = [zeta(cert.dual, node) for node in lattice.nodes]
                if len(set(images)) != len(images):
                    return False, f"zeta not injective over {ring.describe()}"
                for node, image in zip(lattice.nodes, images):
                    if not zeta_involution_holds(cert, node):
                        return False, f"zeta squared is not the identity over {ring.describe()}"
                    for other, other_image in zip(lattice.nodes, images):
                        if other.contains(node) and not image.contains(other_image):
                            return False, f"zeta does not reverse order over {ring.describe()}"
                modules_checked += 1
        return True, f"{modules_checked} modules across {len(duality_rings())} rings"

    return _timed("matlis-involution", run)


def criterion_decomposition(seed: int = DEFAULT_SEED, count: int = 200) -> CheckResult:
    """Primary decomposition: torsion route equals ideal-power route, sum is direct."""

    def run():
        modules = random_modules(decomposition_rings(), count, seed)
        for module in modules:
            primary_components(module)  # raises DecompositionMismatch on any disagreement
        return True, f"{len(modules)} random modules, zero mismatches"

    return _timed("decomposition", run)


def criterion_meager_equivalence(seed: int = DEFAULT_SEED, count: int = 200) -> CheckResult:
    """Brute-force meagerness equals the componentwise-chain fast path."""

    def run():
        modules = random_modules(meager_suite_rings(), count, seed + 1)
        for module in modules:
            brute, _ = is_meager(module)
            if brute != meager_fast_path(module):
                return False, f"mismatch on a module of length {module.dim}"
        return True, f"{len(modules)} random modules, zero mismatches"

    return _timed("meager-equivalence", run)


def criterion_ideal_tree_dichotomy(seed: int = DEFAULT_SEED) -> CheckResult:
    """Chain tower: one branching class per level; two-variable tower: branches everywhere."""

    def run():
        chain_tree = ideal_tree(make_tower(2, ["t"]), 5)
        if chain_tree.level_sizes() != (1, 2, 3, 4, 5):
            return False, f"chain level sizes {chain_tree.level_sizes()}"
        chain_rep = branching_report(chain_tree)
        if chain_rep.branching_nodes_per_level != (1, 1, 1, 1):
            return False, f"chain branching profile {chain_rep.branching_nodes_per_level}"
        plane_tree = ideal_tree(make_tower(2, ["x", "y"]), 4)
        plane_rep = branching_report(plane_tree)
        if plane_rep.verdict != "EverywhereBranching" or plane_rep.min_internal_degree < 2:
            return False, f"two-variable verdict {plane_rep.verdict}"
        if plane_rep.leaf_count < 2**3:
            return False, f"two-variable leaf count {plane_rep.leaf_count}"
        return True, (
            f"chain levels {chain_tree.level_sizes()}, plane leaves {plane_rep.leaf_count}"
        )

    return _timed("ideal-tree-dichotomy", run)


def _monomial_count(nvars: int, cap: int, relations=()) -> int:
    count = 0
    for exps in iproduct(range(cap), repeat=nvars):
        if sum(exps) >= cap:
            continue
        if any(all(r <= e for r, e in zip(rel, exps)) for rel in relations):
            continue
        count += 1
    return count


def criterion_hilbert_samuel(seed: int = DEFAULT_SEED) -> CheckResult:
    """Growth-degree estimates and exact length sequences for the four towers."""

    def run():
        cases = [
            (make_tower(2, ["t"]), 1, 1, ()),
            (make_tower(2, ["x", "y"]), 2, 2, ()),
            (make_tower(2, ["x", "y", "z"]), 3, 3, ()),
            (
                make_tower(2, ["X", "Y", "T"], ["T^3", "T^2*Y", "T*Y^2"]),
                2,
                3,
                ((0, 0, 3), (0, 1, 2), (0, 2, 1)),
            ),
        ]
        for tower, expected, nvars, rels in cases:
            profile = hilbert_samuel_profile(tower, 6)
            if profile.krull_estimate != expected:
                return False, f"{tower.spec.label()}: estimate {profile.krull_estimate}"
            oracle = tuple(_monomial_count(nvars, d, rels) for d in range(1, 7))
            if profile.lengths != oracle:
                return False, f"{tower.spec.label()}: lengths {profile.lengths} vs {oracle}"
        two_var = hilbert_samuel_profile(make_tower(2, ["x", "y"]), 6).lengths[:4]
        if two_var != (1, 3, 6, 10):
            return False, f"two-variable prefix {two_var}"
        return True, "estimates 1, 2, 3, 2 with exact length sequences"

    return _timed("hilbert-samuel", run)


def criterion_pair_growth(seed: int = DEFAULT_SEED) -> CheckResult:
    """The (1,b) family is exactly 2^k strong, and the full square lattice beats it."""

    def run():
        tower = make_tower(2, ["t"])
        counts = pair_growth(tower, 6)
        if counts != tuple(2**k for k in range(1, 7)):
            return False, f"family counts {counts}"
        for k in range(1, 7):
            ring = tower.level(k)
            chain_count = k + 1
            if k <= 4:
                square = direct_sum([regular_module(ring), regular_module(ring)])
                total = len(enumerate_submodules(square))
            else:
                # the family, the zero module and the full module are distinct
                total = counts[k - 1] + 2
            if not (total > 2**k and total > chain_count):
                return False, f"k={k}: square count {total} not above 2^k={2**k} and {chain_count}"
        return True, f"family counts {counts}, square lattices strictly larger"

    return _timed("pair-growth", run)


def criterion_countability(seed: int = DEFAULT_SEED) -> CheckResult:
    """Symbolic countability verdicts with finite growth witnesses at level 4."""

    def run():
        aleph0 = ["Prufer(2)", "Z", "Z/2 + Prufer(3)"]
        for text in aleph0:
            verdict = count_submodules(parse_descriptor(text))
            if str(verdict.value) != "Aleph0":
                return False, f"{text}: {verdict.value}"
        continuum = ["2*Prufer(2)", "Z[1/2] + Prufer(2)", "Q", "inf*Z/2"]
        for text in continuum:
            descriptor = parse_descriptor(text)
            verdict = count_submodules(descriptor)
            if str(verdict.value) != "Continuum":
                return False, f"{text}: {verdict.value}"
            if text == "Q":
                shadow = support_growth_shadow(descriptor, 4)
                if not shadow.consistent or shadow.submodule_count < 2**4:
                    return False, f"Q support shadow count {shadow.submodule_count}"
            else:
                report = truncation_crosscheck(descriptor, 2, 4)
                if not report.consistent or report.submodule_count < 2**4:
                    return False, f"{text}: truncation count {report.submodule_count}"
        return True, "three Aleph0 and four Continuum verdicts, growth witnesses at level 4"

    return _timed("countability", run)


def criterion_continuity_audit(seed: int = DEFAULT_SEED) -> CheckResult:
    """No violations of the orthogonal-layer implication on the two named modules."""

    def run():
        chain_report = continuity_audit(regular_module(chain_ring(2, 4)))  # Z/16
        if not chain_report.clean:
            return False, f"Z/16 violations: {chain_report.violations}"
        plane_report = continuity_audit(
            regular_module(truncated_polynomial_ring(2, ["x", "y"], 3))
        )
        if not plane_report.clean:
            return False, f"two-variable violations: {plane_report.violations}"
        return True, (
            f"{chain_report.comparisons + plane_report.comparisons} comparisons, zero violations"
        )

    return _timed("continuity-audit", run)


def criterion_square_ideal_embedding(seed: int = DEFAULT_SEED) -> CheckResult:
    """The two-generator ideal of the relation ring is a free rank-2 module at depth 4."""

    def run():
        tower = make_tower(2, ["X", "Y", "T"], ["T^3", "T^2*Y", "T*Y^2"])
        report = square_quotient_embedding(tower, 4)
        if not report.ok:
            return False, (
                f"injective={report.injective} image={report.image_matches_ideal} "
                f"equivariant={report.equivariant}"
            )
        return True, f"B^2 of dim {2 * report.base_dim} onto the dim-{report.ideal_dim} ideal"

    return _timed("square-ideal-embedding", run)


def criterion_oracle_equivalence(seed: int = DEFAULT_SEED) -> CheckResult:
    """Fast enumerations agree with the brute-force subspace filters."""

    def run():
        modules_checked = 0
        for ring in duality_rings():
            for module in small_module_zoo(ring, max_dim=4):
                if module.element_count() > 2**6:
                    continue
                lattice = enumerate_submodules(module)
                oracle = subspace_filter_submodules(module)
                if [n.sort_key() for n in lattice.nodes] != [n.sort_key() for n in oracle]:
                    return False, f"submodule oracle mismatch over {ring.describe()}"
                modules_checked += 1
        rings_checked = 0
        for ring in [
            chain_ring(2, d) for d in range(1, 6)
        ] + [
            truncated_polynomial_ring(2, ["x", "y"], 2),
            truncated_polynomial_ring(2, ["x", "y", "z"], 2),
        ]:
            if ring.p != 2 or ring.dim > 5:
                continue
            fast = [i.basis for i in enumerate_ideals(ring)]
            slow = subspace_filter_ideals(ring)
            if fast != slow:
                return False, f"ideal oracle mismatch over {ring.describe()}"
            rings_checked += 1
        return True, f"{modules_checked} module lattices and {rings_checked} ideal lattices"

    return _timed("oracle-equivalence", run)


ALL_CRITERIA = (
    ("matlis-involution", criterion_matlis_involution),
    ("decomposition", criterion_decomposition),
    ("meager-equivalence", criterion_meager_equivalence),
    ("ideal-tree-dichotomy", criterion_ideal_tree_dichotomy),
    ("hilbert-samuel", criterion_hilbert_samuel),
    ("pair-growth", criterion_pair_growth),
    ("countability", criterion_countability),
    ("continuity-audit", criterion_continuity_audit),
    ("square-ideal-embedding", criterion_square_ideal_embedding),
    ("oracle-equivalence", criterion_oracle_equivalence),
)


def run_suite(only: str | None = None, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    results = []
    for name, fn in ALL_CRITERIA:
        if only and only not in name:
            continue
        results.append(fn(seed))
    return results
