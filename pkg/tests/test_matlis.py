import itertools

import pytest

from modlat import gfp
from modlat.corpus import small_module_zoo
from modlat.matlis import (
    Distance,
    continuity_audit,
    double_dual_certificate,
    injective_hull,
    matlis_dual,
    paired_lattice_dot,
    submodule_distance,
    zeta,
    zeta_involution_holds,
)
from modlat.modules import (
    Submodule,
    annihilator,
    direct_sum,
    enumerate_submodules,
    hom_space,
    ideal_action_span,
    ideal_kernel,
    quotient,
    quotient_ring_module,
    regular_module,
    socle,
    span_submodule,
    submodule_as_module,
    zero_submodule,
)
from modlat.rings import chain_ring, ideal_span, prime_field, truncated_polynomial_ring

R22 = chain_ring(2, 2)
R24 = chain_ring(2, 4)
XY2 = truncated_polynomial_ring(2, ["x", "y"], 2)


def test_hull_of_field_is_itself():
    hull = injective_hull(prime_field(2))
    assert hull.dim == 1


def test_hull_of_chain_ring_is_free():
    # chain rings are self-injective: some hom R -> E is bijective
    hull = injective_hull(R22)
    assert hull.dim == 2
    homs = hom_space(regular_module(R22), hull.module)
    assert any(
        gfp.rank(_combine(homs, coeffs, 2), 2) == 2
        for coeffs in itertools.product(range(2), repeat=len(homs))
    )


def _combine(homs, coeffs, p):
    out = gfp.zero_mat(len(homs[0]), len(homs[0][0]))
    for c, f in zip(coeffs, homs):
        if c:
            out = gfp.mat_add(out, gfp.mat_scale(c, f, p), p)
    return out


def test_hull_xy_truncation():
    hull = injective_hull(XY2)
    assert hull.dim == 3
    assert socle(hull.module).dim == 1


@pytest.mark.parametrize("ring", [R22, R24, XY2, chain_ring(3, 3)])
def test_extension_property_dimension_counts(ring):
    # injectivity of E: Hom(-, E) is exact, so dims add along N <= M
    hull = injective_hull(ring)
    reg = regular_module(ring)
    lattice = enumerate_submodules(reg)
    for node in lattice.nodes:
        piece, _ = submodule_as_module(node)
        quot, _ = quotient(reg, node)
        d_m = len(hom_space(reg, hull.module))
        d_n = len(hom_space(piece, hull.module))
        d_q = len(hom_space(quot, hull.module))
        assert d_m == d_n + d_q


def test_dual_preserves_dimension_across_zoo():
    for ring in [R22, R24, XY2]:
        for module in small_module_zoo(ring, max_dim=4):
            assert matlis_dual(module).module.dim == module.dim


def test_dual_of_simple_is_simple():
    simple = quotient_ring_module(R22, R22.maximal_ideal)
    dual = matlis_dual(simple)
    assert dual.module.dim == 1


def test_dual_of_chain_layer_matches_annihilator():
    # T(R/t^2 over F_2[t]/t^4) has annihilator (t^2), pinning its chain type
    sub = ideal_span(R24, [R24.monomial_vector("t^2")])
    module = quotient_ring_module(R24, sub)
    dual = matlis_dual(module)
    assert dual.module.dim == 2
    assert annihilator(dual.module).basis == sub.basis


def test_dual_of_regular_is_hull():
    dual = matlis_dual(regular_module(XY2))
    hull = injective_hull(XY2)
    assert dual.module.dim == hull.dim
    homs = hom_space(dual.module, hull.module)
    assert any(
        gfp.rank(_combine(homs, coeffs, 2), 2) == hull.dim
        for coeffs in itertools.product(range(2), repeat=len(homs))
    )


def test_double_dual_certificates():
    for module in [
        quotient_ring_module(R22, R22.maximal_ideal),  # Z/2 over Z/4
        regular_module(XY2),
        direct_sum([regular_module(R22), quotient_ring_module(R22, R22.maximal_ideal)]),
    ]:
        cert = double_dual_certificate(module)
        assert len(cert.witness) == module.dim


def test_zeta_extremes():
    module = regular_module(R24)
    dual = matlis_dual(module)
    assert zeta(dual, zero_submodule(module)).dim == module.dim
    assert zeta(dual, span_submodule(module, [R24.unit])).dim == 0


def test_zeta_reverses_chain():
    module = regular_module(R22)
    dual = matlis_dual(module)
    lattice = enumerate_submodules(module)
    dims = [zeta(dual, node).dim for node in lattice.nodes]
    assert dims == [module.dim - node.dim for node in lattice.nodes]


@pytest.mark.parametrize(
    "module",
    [
        regular_module(R24),
        regular_module(XY2),
        direct_sum([regular_module(R22), regular_module(R22)]),
        regular_module(chain_ring(3, 2)),
    ],
)
def test_zeta_bijection_and_involution(module):
    cert = double_dual_certificate(module)
    lattice = enumerate_submodules(module)
    dual_lattice = enumerate_submodules(cert.dual.module)
    images = [zeta(cert.dual, node) for node in lattice.nodes]
    assert len(set(images)) == len(lattice.nodes) == len(dual_lattice.nodes)
    for node, img in zip(lattice.nodes, images):
        assert zeta_involution_holds(cert, node)
        for other, other_img in zip(lattice.nodes, images):
            if other.contains(node):
                assert img.contains(other_img)


def test_socle_cotop_exchange():
    for module in [regular_module(XY2), regular_module(R24)]:
        dual = matlis_dual(module)
        ring = module.ring
        cotop_codim = ideal_action_span(dual.module, (ring.maximal_ideal.basis,)).dim
        assert socle(module).dim == dual.module.dim - cotop_codim


def test_exactness_dimension_counts():
    module = regular_module(XY2)
    lattice = enumerate_submodules(module)
    for node in lattice.nodes:
        piece, _ = submodule_as_module(node)
        quot, _ = quotient(module, node)
        assert (
            matlis_dual(module).module.dim
            == matlis_dual(piece).module.dim + matlis_dual(quot).module.dim
        )


def test_socle_filtration_is_zeta_image_of_powers():
    for ring in [R24, XY2]:
        module = regular_module(ring)
        dual = matlis_dual(module)
        for n in range(ring.nilpotency_degree + 1):
            power_sub = Submodule(module, ring.mpow(n))
            layer = ideal_kernel(dual.module, (ring.mpow(n),))
            assert zeta(dual, power_sub) == layer
        # the layers exhaust T(M)
        assert ideal_kernel(dual.module, (ring.mpow(ring.nilpotency_degree),)).dim == module.dim


def test_distance_identical_is_zero():
    module = regular_module(R24)
    sub = span_submodule(module, [R24.monomial_vector("t")])
    assert submodule_distance(module, sub, sub) == Distance(None)
    assert submodule_distance(module, sub, sub).value == 0.0


def test_distance_chain_example():
    # Z/8: d((2), (4)) = exp(-1)
    module = regular_module(chain_ring(2, 3))
    ring = module.ring
    two = span_submodule(module, [ring.monomial_vector("t")])
    four = span_submodule(module, [ring.monomial_vector("t^2")])
    assert submodule_distance(module, two, four) == Distance(1)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_distance_to_last_power(d):
    ring = chain_ring(2, d)
    module = regular_module(ring)
    top = Submodule(module, ring.mpow(d - 1))
    assert submodule_distance(module, zero_submodule(module), top) == Distance(d - 1)


def test_continuity_audit_chain():
    report = continuity_audit(regular_module(R24))  # Z/16
    assert report.clean
    assert report.comparisons > 0


def test_continuity_audit_xy3():
    report = continuity_audit(regular_module(truncated_polynomial_ring(2, ["x", "y"], 3)))
    assert report.clean


def test_paired_lattice_dot_smoke():
    text = paired_lattice_dot(regular_module(R22))
    assert text.startswith("digraph")
    assert "style=dashed" in text
