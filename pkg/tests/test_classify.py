import pytest

from modlat.classify import (
    classify,
    classify_single_prime,
    discriminating_atoms,
    is_meager,
    is_uniserial,
    meager_fast_path,
)
from modlat.corpus import meager_suite_rings, random_modules
from modlat.errors import MultiplePrimes
from modlat.modules import (
    ProductRing,
    direct_sum,
    enumerate_submodules,
    quotient_ring_module,
    regular_module,
    zero_module,
)
from modlat.rings import chain_ring, ideal_span, prime_field, truncated_polynomial_ring

F2 = prime_field(2)
F3 = prime_field(3)
R22 = chain_ring(2, 2)
Z6 = ProductRing((F2, F3))


def z2_over_z4():
    return quotient_ring_module(R22, ideal_span(R22, [R22.monomial_vector("t")]))


def test_uniserial_chain():
    flag, chain = is_uniserial(regular_module(chain_ring(2, 3)))
    assert flag and len(chain) == 4


def test_uniserial_false_on_square():
    flag, chain = is_uniserial(direct_sum([regular_module(F2)] * 2))
    assert not flag and chain is None


def test_uniserial_false_on_xy():
    flag, _ = is_uniserial(regular_module(truncated_polynomial_ring(2, ["x", "y"], 2)))
    assert not flag


def test_meager_false_on_simple_square():
    flag, witness = is_meager(direct_sum([regular_module(F2)] * 2))
    assert not flag
    assert witness.lower.dim == 0  # smallest N in canonical order
    assert witness.upper.dim == 2


def test_meager_true_on_z4():
    flag, witness = is_meager(regular_module(R22))
    assert flag and witness is None


def test_meager_true_on_z2_plus_z3():
    flag, _ = is_meager(regular_module(Z6))
    assert flag


def test_fast_path_z12():
    z12 = ProductRing((R22, chain_ring(3, 1)))
    assert meager_fast_path(regular_module(z12))


def test_fast_path_false_z2_plus_z4():
    m = direct_sum([z2_over_z4(), regular_module(R22)])
    assert not meager_fast_path(m)


def test_fast_path_zero_module():
    assert meager_fast_path(zero_module(R22))


def test_fast_path_equals_brute_force_on_random_corpus():
    mods = random_modules(meager_suite_rings(), 40, seed=20250810)
    for m in mods:
        flag, _ = is_meager(m)
        assert meager_fast_path(m) == flag


def test_atoms_z6():
    atoms = discriminating_atoms(regular_module(Z6))
    assert len(atoms) == 2


def test_atoms_chain():
    atoms = discriminating_atoms(regular_module(chain_ring(2, 3)))
    assert len(atoms) == 1


def test_atoms_f2_squared():
    atoms = discriminating_atoms(direct_sum([regular_module(F2)] * 2))
    assert len(atoms) == 3


def test_atoms_p_plus_one_when_socle_two_dimensional():
    # over F_3 a 2-dimensional socle has 4 = p + 1 lines
    atoms = discriminating_atoms(direct_sum([regular_module(F3)] * 2))
    assert len(atoms) == 4


@pytest.mark.parametrize(
    "module",
    [
        regular_module(Z6),
        direct_sum([regular_module(R22), regular_module(R22)]),
        regular_module(truncated_polynomial_ring(2, ["x", "y"], 2)),
    ],
)
def test_every_nonzero_submodule_contains_an_atom(module):
    atoms = discriminating_atoms(module)
    lattice = enumerate_submodules(module)
    for node in lattice.nodes:
        if node.dim > 0:
            assert any(node.contains(a) for a in atoms)


def test_classify_single_prime_chain():
    assert classify_single_prime(regular_module(R22)) == "FiniteLengthChain"
    assert classify_single_prime(regular_module(chain_ring(2, 3))) == "FiniteLengthChain"


def test_classify_single_prime_not_meager():
    assert classify_single_prime(direct_sum([regular_module(F2)] * 2)) == "NotMeager"


def test_classify_single_prime_rejects_two_primes():
    with pytest.raises(MultiplePrimes):
        classify_single_prime(regular_module(Z6))
    with pytest.raises(MultiplePrimes):
        classify_single_prime(zero_module(R22))


def test_classify_report_meager_not_uniserial():
    # the strict gap between uniserial and meager
    report = classify(regular_module(Z6))
    assert report.meager and not report.uniserial
    assert report.meager_witness is None
    assert not report.single_associated_prime


def test_classify_report_uniserial_implies_meager():
    mods = random_modules(meager_suite_rings(), 25, seed=7)
    for m in mods:
        report = classify(m)
        if report.uniserial:
            assert report.meager
        if report.meager:
            # associated primes of a meager module are pairwise disjoint;
            # over product rings that means distinct factors
            from modlat.modules import associated_primes

            primes = associated_primes(m)
            assert len({p.factor for p in primes}) == len(primes)


def test_classify_witness_has_square_quotient():
    m = direct_sum([z2_over_z4(), regular_module(R22)])
    report = classify(m)
    assert not report.meager
    w = report.meager_witness
    assert w.upper.dim == w.lower.dim + 2
