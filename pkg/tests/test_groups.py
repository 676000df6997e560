import pytest

from brauerrel.errors import ResourceBoundError, ShapeError
from brauerrel.groups import (
    PermGroup,
    abelian_invariants,
    closure,
    cyclic_group,
    is_squarefree,
    p_part,
    prime_factors,
    semidirect_product,
)
from brauerrel.catalog import parse_group_spec
from brauerrel.perms import parse_cycles, perm_order


def test_closure_and_resource_bound():
    g = parse_cycles("(0 1 2 3 4)", 5)
    assert len(closure(5, [g])) == 5
    with pytest.raises(ResourceBoundError):
        closure(5, [g, parse_cycles("(0 1)", 5)], max_size=10)


@pytest.mark.parametrize(
    "spec,order,n_subs,n_classes",
    [
        ("A5", 60, 59, 9),
        ("S4", 24, 30, 11),
        ("Q8", 8, 6, 6),
        ("D8", 8, 10, 8),
        ("F20", 20, 14, 6),
        ("C12", 12, 6, 6),
    ],
)
def test_subgroup_enumeration_counts(spec, order, n_subs, n_classes):
    G = parse_group_spec(spec)
    assert G.order == order
    assert len(G.all_subgroups) == n_subs
    assert len(G.subgroup_classes) == n_classes


def test_class_ordering_trivial_first_full_last():
    G = parse_group_spec("S4")
    classes = G.subgroup_classes
    assert classes[0][0].order == 1
    assert classes[-1][0].order == 24
    orders = [cls[0].order for cls in classes]
    assert orders == sorted(orders)


def test_is_cyclic_needs_full_order_element():
    # exponent equals order without a generator: F20 has exponent 20
    F20 = parse_group_spec("F20")
    assert F20.exponent == 20
    assert not F20.is_cyclic()
    assert cyclic_group(20).is_cyclic()


def test_normal_subgroups_s4():
    G = parse_group_spec("S4")
    orders = sorted(N.order for N in G.normal_subgroups)
    assert orders == [1, 4, 12, 24]


def test_centre_and_frattini_d8():
    G = parse_group_spec("D8")
    assert G.centre().order == 2
    assert G.frattini_subgroup().elements == G.centre().elements


def test_sylow_subgroup():
    G = parse_group_spec("S4")
    assert G.sylow_subgroup(2).order == 8
    assert G.sylow_subgroup(3).order == 3


def test_quotient_s4_by_v4_is_s3():
    G = parse_group_spec("S4")
    V4 = next(N for N in G.normal_subgroups if N.order == 4)
    Q, phi = G.quotient(V4)
    assert Q.order == 6 and not Q.is_abelian()
    assert phi.kernel.elements == V4.elements
    # epimorphism is a homomorphism on a sample
    els = sorted(G.elements)[:8]
    from brauerrel.perms import mul

    for a in els:
        for b in els:
            assert phi.apply(mul(a, b)) == mul(phi.apply(a), phi.apply(b))


def test_epimorphism_image_preimage():
    G = parse_group_spec("D8")
    Z = G.centre()
    Q, phi = G.quotient(Z)
    H = next(h for h in G.all_subgroups if h.order == 4)
    img = phi.image(H)
    assert img.order == 2
    assert phi.preimage(img).order == 4


def test_handle_operations():
    G = parse_group_spec("D8")
    subs = {h.order: h for h in G.all_subgroups}
    Z = G.centre()
    C4 = next(h for h in G.all_subgroups if h.order == 4 and h.is_cyclic())
    assert C4.intersect(Z).order == 2
    assert C4.join(Z).order == 4
    assert Z.is_cyclic() and not G.full_subgroup().is_cyclic()
    assert subs[8].contains(C4)


def test_semidirect_product_validation():
    C5 = cyclic_group(5)
    C4 = cyclic_group(4)
    good = [tuple((2 * i) % 5 for i in range(5))]
    G = semidirect_product(C5, C4, good)
    assert G.order == 20
    # a non-automorphism action must be rejected
    with pytest.raises(ShapeError):
        semidirect_product(C5, C4, [parse_cycles("(0 1)", 5)])


def test_abelian_invariants():
    assert abelian_invariants(parse_group_spec("C2xC4")) == [4, 2]
    assert abelian_invariants(parse_group_spec("C2xC2")) == [2, 2]
    assert abelian_invariants(parse_group_spec("C6xC6")) == [6, 6]
    assert abelian_invariants(cyclic_group(12)) == [12]


def test_number_helpers():
    assert prime_factors(60) == [2, 3, 5]
    assert p_part(720, 2) == 16
    assert is_squarefree(30) and not is_squarefree(12)


def test_subgroup_bound_env(monkeypatch):
    monkeypatch.setenv("BRAUERREL_MAX_SUBGROUPS", "5")
    G = PermGroup(4, [parse_cycles("(0 1 2 3)", 4), parse_cycles("(0 1)", 4)])
    with pytest.raises(ResourceBoundError):
        _ = G.all_subgroups


def test_elementary_abelian_and_p_group():
    assert parse_group_spec("C2xC2").is_elementary_abelian_p(2)
    assert not parse_group_spec("C2xC4").is_elementary_abelian_p(2)
    isp, p = parse_group_spec("Q16").is_p_group()
    assert isp and p == 2
    isp, _ = parse_group_spec("S4").is_p_group()
    assert not isp


def test_element_orders():
    G = parse_group_spec("Q8")
    counts = {}
    for g in G.elements:
        counts[perm_order(g)] = counts.get(perm_order(g), 0) + 1
    assert counts == {1: 1, 2: 1, 4: 6}
