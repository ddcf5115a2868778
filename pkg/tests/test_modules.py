import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat import gfp
from modlat.errors import ActionNotRepresentation, BudgetExceeded
from modlat.modules import (
    ProductRing,
    annihilator,
    associated_primes,
    direct_sum,
    enumerate_submodules,
    hom_space,
    length,
    make_module,
    primary_components,
    quotient,
    quotient_ring_module,
    regular_module,
    socle,
    span_submodule,
    submodule_as_module,
    submodule_intersection,
    submodule_sum,
    subspace_filter_submodules,
    zero_module,
    zero_submodule,
)
from modlat.rings import chain_ring, ideal_span, prime_field, truncated_polynomial_ring

R22 = chain_ring(2, 2)  # stand-in for Z/4
R23 = chain_ring(2, 3)  # stand-in for Z/8
F2 = prime_field(2)
F3 = prime_field(3)
XY2 = truncated_polynomial_ring(2, ["x", "y"], 2)
Z12 = ProductRing((R22, chain_ring(3, 1)))


def f2_squared():
    return direct_sum([regular_module(F2), regular_module(F2)])


def test_regular_module_dims():
    assert regular_module(R23).dim == 3
    assert length(regular_module(Z12)) == 3


def test_make_module_rejects_bad_action():
    # t must act nilpotently on a 1-dim module; identity action breaks t*t = t^2 = 0... build
    # an action where t acts as identity
    with pytest.raises(ActionNotRepresentation):
        make_module(R22, 1, [((1,),), ((1,),)])


def test_make_module_crt_z6_over_z12():
    two_part = quotient_ring_module(R22, ideal_span(R22, [R22.monomial_vector("t")]))
    three_part = regular_module(chain_ring(3, 1))
    z6 = make_module(Z12, [two_part, three_part])
    assert length(z6) == 2
    assert len(associated_primes(z6)) == 2


def test_span_submodule_t_in_chain():
    m = regular_module(R23)
    sub = span_submodule(m, [R23.monomial_vector("t")])
    # oracle: {0, t, t^2, t+t^2} as a set of vectors
    vectors = {v for v in itertools.product(range(2), repeat=3)}
    closed = {
        v
        for v in vectors
        if gfp.in_span(v, sub.basis, 2)
    }
    assert closed == {(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)}


def test_span_zero_is_zero():
    m = regular_module(R23)
    assert span_submodule(m, [(0, 0, 0)]).dim == 0


def test_span_diagonal_in_z4_squared():
    m = direct_sum([regular_module(R22), regular_module(R22)])
    sub = span_submodule(m, [(1, 0, 1, 0)])  # (1, 1) in Z/4 x Z/4
    assert sub.dim == 2  # cyclic of order 4


def test_quotient_by_zero_and_full():
    m = regular_module(R23)
    q0, _ = quotient(m, zero_submodule(m))
    assert q0.dim == m.dim
    qf, _ = quotient(m, span_submodule(m, [R23.unit]))
    assert qf.dim == 0


def test_quotient_z4_by_2z4():
    m = regular_module(R22)
    two = span_submodule(m, [R22.monomial_vector("t")])
    q, proj = quotient(m, two)
    assert q.dim == 1
    assert gfp.mat_vec(proj, R22.unit, 2) == (1,)


def brute_force_homs(source, target):
    # oracle: try every matrix and keep the ones commuting with the action
    p = source.p
    n_s, n_t = source.dim, target.dim
    found = []
    for entries in itertools.product(range(p), repeat=n_s * n_t):
        mat = tuple(
            tuple(entries[r * n_s + c] for c in range(n_s)) for r in range(n_t)
        )
        ok = all(
            gfp.mat_mul(mat, source.action[i], p) == gfp.mat_mul(target.action[i], mat, p)
            for i in range(source.ring.dim)
        )
        if ok:
            found.append(mat)
    return found


def test_hom_space_z2_into_z4():
    z2 = quotient_ring_module(R22, ideal_span(R22, [R22.monomial_vector("t")]))
    basis = hom_space(z2, regular_module(R22))
    assert len(basis) == 1
    # oracle: 2^(1*2) = 4 candidate matrices, exactly p of them commute
    assert len(brute_force_homs(z2, regular_module(R22))) == 2 ** len(basis)


def test_hom_space_into_zero():
    m = regular_module(R22)
    assert hom_space(m, zero_module(R22)) == []


@pytest.mark.parametrize("ring", [R23, XY2, F2])
def test_hom_from_regular_has_module_dimension(ring):
    reg = regular_module(ring)
    for target in [reg, quotient(reg, socle(reg))[0]]:
        assert len(hom_space(reg, target)) == target.dim


def brute_force_socle(module, gens):
    vectors = []
    for v in itertools.product(range(module.p), repeat=module.dim):
        if all(gfp.is_zero(module.act(g, v)) for g in gens):
            vectors.append(v)
    return gfp.rref(vectors, module.p)


def test_socle_xy_square():
    m = regular_module(XY2)
    s = socle(m)
    assert s.dim == 2
    gens = [XY2.monomial_vector("x"), XY2.monomial_vector("y")]
    assert s.basis == brute_force_socle(m, gens)


def test_socle_chain():
    m = regular_module(chain_ring(2, 4))
    s = socle(m)
    assert s.dim == 1
    assert s.basis == (gfp.unit_vec(3, 4),)


def test_socle_semisimple():
    m = f2_squared()
    assert socle(m).dim == 2


def test_length_examples():
    assert length(regular_module(truncated_polynomial_ring(2, ["x", "y"], 3))) == 6
    assert length(zero_module(R22)) == 0
    assert length(regular_module(R23)) == 3


def test_annihilator_regular_is_zero():
    assert annihilator(regular_module(XY2)).dim == 0


def test_annihilator_of_quotient_is_ideal():
    ring = chain_ring(2, 4)
    ideal = ideal_span(ring, [ring.monomial_vector("t^2")])
    q = quotient_ring_module(ring, ideal)
    assert annihilator(q).basis == ideal.basis


def test_annihilator_of_socle():
    ring = chain_ring(2, 4)
    s = socle(regular_module(ring))
    piece, _ = submodule_as_module(s)
    ann = annihilator(piece)
    assert ann.basis == ideal_span(ring, [ring.monomial_vector("t")]).basis


def test_associated_primes_zero_module_empty():
    assert associated_primes(zero_module(Z12)) == ()
    assert associated_primes(zero_module(XY2)) == ()


def test_associated_primes_local_nonzero_single():
    assert len(associated_primes(regular_module(XY2))) == 1


def test_primary_components_z12_regular():
    m = regular_module(Z12)
    comps, witness = primary_components(m)
    dims = {prime.factor: sub.dim for prime, sub in comps.items()}
    assert dims == {0: 2, 1: 1}
    assert witness >= 1


def brute_force_torsion(module, prime_factor, n):
    # oracle: elements killed by the n-th power of the prime, checked elementwise
    comps = module.components
    out = []
    for idx, comp in enumerate(comps):
        if idx == prime_factor:
            gens = [gfp.unit_vec(i, comp.ring.dim) for i in range(1, comp.ring.dim)]
            vectors = []
            for v in itertools.product(range(comp.p), repeat=comp.dim):
                images = {v}
                for _ in range(n):
                    images = {comp.act(g, w) for w in images for g in gens} or {
                        gfp.zero_vec(comp.dim)
                    }
                # v is torsion iff every length-n action word kills it
                if _killed_by_power(comp, gens, v, n):
                    vectors.append(v)
            out.append(gfp.rref(vectors, comp.p))
        else:
            out.append(())
    return out


def _killed_by_power(comp, gens, v, n):
    layer = [v]
    for _ in range(n):
        layer = [comp.act(g, w) for g in gens for w in layer]
    return all(gfp.is_zero(w) for w in layer)


def test_primary_components_sum_example():
    # Z/6 + Z/4 over Z/12: the 2-part has dim 3, the 3-part dim 1
    z2 = quotient_ring_module(R22, ideal_span(R22, [R22.monomial_vector("t")]))
    z4 = regular_module(R22)
    z3 = regular_module(chain_ring(3, 1))
    m = make_module(Z12, [direct_sum([z2, z4]), z3])
    comps, witness = primary_components(m)
    dims = {prime.factor: sub.dim for prime, sub in comps.items()}
    assert dims == {0: 3, 1: 1}
    torsion = brute_force_torsion(m, 0, witness)
    two_prime = [pr for pr in comps if pr.factor == 0][0]
    assert comps[two_prime].parts[0].basis == torsion[0]


def test_primary_components_local_single():
    m = regular_module(R23)
    comps, _ = primary_components(m)
    assert len(comps) == 1
    (sub,) = comps.values()
    assert sub.dim == m.dim


@pytest.mark.parametrize(
    "module,count",
    [
        (f2_squared(), 5),
        (regular_module(R23), 4),
        (direct_sum([regular_module(R22), regular_module(R22)]), 15),
    ],
)
def test_enumerate_submodules_counts(module, count):
    lattice = enumerate_submodules(module)
    assert len(lattice) == count


def test_chain_lattice_is_chain():
    lattice = enumerate_submodules(regular_module(R23))
    assert lattice.is_chain()
    for small, big in zip(lattice.nodes, lattice.nodes[1:]):
        assert big.contains(small)


def test_hasse_covers_f2_squared():
    lattice = enumerate_submodules(f2_squared())
    assert len(lattice.covers) == 6
    assert lattice.counts_by_dim == ((0, 1), (1, 3), (2, 1))


@pytest.mark.parametrize(
    "module",
    [
        f2_squared(),
        regular_module(truncated_polynomial_ring(2, ["x", "y"], 3)),
        regular_module(chain_ring(2, 5)),
        direct_sum([regular_module(R22), regular_module(R22)]),
        direct_sum([regular_module(R22), quotient_ring_module(R22, ideal_span(R22, [R22.monomial_vector("t")]))]),
        regular_module(truncated_polynomial_ring(3, ["x", "y"], 2)),
        direct_sum([regular_module(F3), regular_module(F3)]),
    ],
)
def test_enumeration_matches_subspace_filter(module):
    lattice = enumerate_submodules(module)
    oracle = subspace_filter_submodules(module)
    assert [n.sort_key() for n in lattice.nodes] == [n.sort_key() for n in oracle]


def test_enumeration_matches_oracle_dim4_f3():
    m = direct_sum([regular_module(chain_ring(3, 2))] * 2)
    lattice = enumerate_submodules(m)
    oracle = subspace_filter_submodules(m)
    assert [n.sort_key() for n in lattice.nodes] == [n.sort_key() for n in oracle]


def test_hom_space_product_ring():
    m = regular_module(Z12)
    basis = hom_space(m, m)
    # End(R) = R componentwise: F_2-dim 2 for the chain factor, 1 for F_3
    assert len(basis) == 3
    assert all(isinstance(f, tuple) and len(f) == 2 for f in basis)


def test_enumeration_matches_oracle_product_ring():
    # mixed characteristic: Z/6 x Z/4 over Z/12
    z2 = quotient_ring_module(R22, ideal_span(R22, [R22.monomial_vector("t")]))
    m = make_module(Z12, [direct_sum([z2, regular_module(R22)]), regular_module(chain_ring(3, 1))])
    lattice = enumerate_submodules(m)
    oracle = subspace_filter_submodules(m)
    assert [n.sort_key() for n in lattice.nodes] == [n.sort_key() for n in oracle]


def test_same_characteristic_product_oracle():
    # two factors sharing p = 2: the flattened-subspace oracle genuinely tests
    # that submodules split componentwise
    ring = ProductRing((F2, R22))
    m = regular_module(ring)
    lattice = enumerate_submodules(m)
    oracle = subspace_filter_submodules(m)
    assert [n.sort_key() for n in lattice.nodes] == [n.sort_key() for n in oracle]
    assert len(lattice) == 2 * 3


def test_chinese_remainder_decomposition():
    # every submodule equals the sum of its intersections with the primary parts
    m = regular_module(Z12)
    comps, _ = primary_components(m)
    lattice = enumerate_submodules(m)
    for node in lattice.nodes:
        pieces = [submodule_intersection(node, comp) for comp in comps.values()]
        total = zero_submodule(m)
        for piece in pieces:
            total = submodule_sum(total, piece)
        assert total == node


def test_quotient_rejects_foreign_submodule():
    from modlat.errors import NotSubmodule

    m1 = regular_module(R23)
    m2 = regular_module(R22)
    sub = span_submodule(m2, [R22.monomial_vector("t")])
    with pytest.raises(NotSubmodule):
        quotient(m1, sub)


def test_submodule_from_basis_rejects_unclosed_rows():
    from modlat.errors import NotSubmodule
    from modlat.modules import submodule_from_basis

    m = regular_module(R23)
    with pytest.raises(NotSubmodule):
        submodule_from_basis(m, [(1, 0, 0)])  # the unit generates everything


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        enumerate_submodules(f2_squared(), limit=2)
    with pytest.raises(BudgetExceeded):
        enumerate_submodules(regular_module(R23), search_budget=4)


@given(st.permutations(range(4)), st.integers(0, 2))
@settings(max_examples=20, deadline=None)
def test_span_generator_order_irrelevant(perm, which):
    modules = [
        regular_module(R23),
        direct_sum([regular_module(R22), regular_module(F2)][0:1] * 2),
        regular_module(XY2),
    ]
    m = modules[which]
    vecs = [gfp.unit_vec(i % m.dim, m.dim) if m.dim else () for i in range(2)]
    vecs += [tuple(1 for _ in range(m.dim)), gfp.zero_vec(m.dim)]
    shuffled = [vecs[i] for i in perm]
    assert span_submodule(m, shuffled) == span_submodule(m, vecs)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_modular_law(data):
    m = regular_module(XY2)
    lattice = enumerate_submodules(m)
    idx = st.integers(0, len(lattice.nodes) - 1)
    a = lattice.nodes[data.draw(idx)]
    b = lattice.nodes[data.draw(idx)]
    c = lattice.nodes[data.draw(idx)]
    if c.contains(a):
        left = submodule_sum(a, submodule_intersection(b, c))
        right = submodule_intersection(submodule_sum(a, b), c)
        assert left == right
