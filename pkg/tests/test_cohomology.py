"""Cocycle arithmetic and H^2 computation against brute-force enumeration."""

import json
from math import gcd

import pytest

from extlift import (BoundExceeded, InputError, NotACocycle, OneCochain,
                     ParentMismatch, Subgroup, TwoCochain, catalog,
                     coboundary_of, cohomology_group, extension_from,
                     is_two_cocycle, trivial_action, two_cocycle_defect)
from extlift.abelian import vec_add
from extlift.cohomology import class_eq, validate_action
from extlift.groups import center

from oracles import H2_SPACE_BOUND, brute_cohomology, h2_search_space

Z2 = catalog("cyclic", 2)
Z3 = catalog("cyclic", 3)
Z4 = catalog("cyclic", 4)
V4 = catalog("elementary_abelian", 2, 2)


@pytest.mark.parametrize("H,moduli", [
    (Z2, (2,)), (Z2, (3,)), (Z2, (4,)), (Z2, (12,)), (Z2, (2, 2)),
    (Z3, (2,)), (Z3, (3,)), (Z3, (9,)), (Z3, (2, 2)),
    (Z4, (2,)), (Z4, (3,)),
    (V4, (2,)), (V4, (3,)),
])
def test_orders_match_brute_force_trivial_action(H, moduli):
    assert h2_search_space(H.order, moduli) <= H2_SPACE_BOUND
    cg = cohomology_group(H, moduli)
    assert (cg.z2_order, cg.b2_order, cg.h2_order) == \
        brute_cohomology(H, moduli)


def _extension_cases():
    """Small extensions with nontrivial conjugation action."""
    from extlift import group_from_permutations
    from oracles import element_order
    d6 = catalog("dihedral", 6)
    d8 = catalog("dihedral", 8)
    d12 = catalog("dihedral", 12)
    a4 = group_from_permutations(4, [(1, 2, 0, 3), (0, 2, 3, 1)], name="alt4")
    klein = [g for g in range(12) if element_order(a4, g) <= 2]
    return [
        (d6, [0, 1, 2]),     # Z2 inverting Z3
        (d8, [0, 1, 2, 3]),  # Z2 inverting Z4
        (d12, [0, 1, 2, 3, 4, 5]),  # Z2 inverting Z6
        (a4, klein),         # Z3 permuting V4
    ]


@pytest.mark.parametrize("G,members", _extension_cases())
def test_orders_match_brute_force_conjugation_action(G, members):
    ext = extension_from(G, Subgroup(G, members))
    assert h2_search_space(ext.H.order, ext.moduli) <= H2_SPACE_BOUND
    cg = ext.cohomology
    assert (cg.z2_order, cg.b2_order, cg.h2_order) == \
        brute_cohomology(ext.H, ext.moduli, ext.action)


def test_pinned_klein_four_value():
    assert cohomology_group(V4, (2,)).h2_order == 8


def test_cyclic_coefficients_give_gcd():
    """H^2(Z_m, Z_n) with trivial action has gcd(m, n) elements."""
    for m in (2, 3, 4, 6, 8):
        for n in (2, 3, 4, 6, 9, 12):
            H = catalog("cyclic", m)
            assert cohomology_group(H, (n,)).h2_order == gcd(m, n)


def test_coprime_orders_trivialize():
    for H, moduli in ((Z3, (4,)), (Z4, (27,)), (V4, (9,)),
                      (catalog("cyclic", 5), (6,))):
        cg = cohomology_group(H, moduli)
        assert cg.h2_order == 1


def test_coboundaries_are_cocycles():
    d8 = catalog("dihedral", 8)
    ext = extension_from(d8, Subgroup(d8, [0, 1, 2, 3]))
    H, m, act = ext.H, ext.moduli, ext.action
    for x in range(H.order):
        vals = [(0,) * len(m) for _ in range(H.order)]
        if x:
            vals[x] = (1,)
        chi = OneCochain(H, m, vals)
        delta = coboundary_of(chi, act)
        assert is_two_cocycle(delta, act)
        assert two_cocycle_defect(delta, act) is None


def test_cocycle_defect_reports_triple():
    # indicator of (1, 1) fails the identity at (1, 1, 3)
    f = TwoCochain.from_function(Z4, (4,),
                                 lambda x, y: (1 if x == y == 1 else 0,))
    assert not is_two_cocycle(f, None)
    bad = two_cocycle_defect(f, None)
    assert bad is not None and len(bad) == 3
    x, y, z = bad
    lhs = vec_add(f(y, z), f(x, (y + z) % 4), (4,))
    rhs = vec_add(f((x + y) % 4, z), f(x, y), (4,))
    assert lhs != rhs


def test_mu_of_extension_is_cocycle():
    z4 = catalog("cyclic", 4)
    cases = [(z4, Subgroup(z4, [0, 2]))]
    for G in (catalog("dihedral", 8), catalog("quaternion", 8)):
        cases.append((G, center(G)))
    for G, Z in cases:
        ext = extension_from(G, Z)
        assert is_two_cocycle(ext.mu, ext.action)


def test_normalization_is_enforced():
    with pytest.raises(InputError):
        OneCochain(Z2, (3,), [(1,), (0,)])
    with pytest.raises(InputError):
        TwoCochain(Z2, (3,), [[(0,), (1,)], [(0,), (0,)]])


def test_cochain_arithmetic_and_parents():
    f = TwoCochain.from_function(Z3, (3,), lambda x, y: ((x * y) % 3,))
    g = TwoCochain.zero(Z3, (3,))
    assert (f + g) == f
    assert (f - f).is_zero()
    other = TwoCochain.zero(Z4, (3,))
    with pytest.raises(ParentMismatch):
        f + other


def test_cochain_json_round_trip():
    f = TwoCochain.from_function(V4, (2, 4), lambda x, y: (x & y & 1, (x * y) % 4))
    data = json.loads(json.dumps(f.to_json()))
    assert TwoCochain.from_json(V4, data) == f
    chi = OneCochain(Z4, (6,), [(0,), (2,), (4,), (3,)])
    assert OneCochain.from_json(Z4, json.loads(json.dumps(chi.to_json()))) == chi
    with pytest.raises(InputError):
        TwoCochain.from_json(V4, {"moduli": [2, 4], "values": {"9,0": [0, 0]}})


def test_class_of_and_solve_round_trip():
    cg = cohomology_group(V4, (2,))
    count_trivial = 0
    # walk every cocycle vector through class_of / coboundary_solve
    import itertools
    for combo in itertools.product(range(2), repeat=9):
        f = cg.cochain_of_vector(list(combo))
        if two_cocycle_defect(f, cg.action) is not None:
            continue
        cls = cg.class_of(f)
        chi = cg.coboundary_solve(f)
        if cls.is_trivial:
            count_trivial += 1
            assert chi is not None
            assert coboundary_of(chi, cg.action) == f
        else:
            assert chi is None
    assert count_trivial == cg.b2_order


def test_class_equality_requires_same_parent():
    cg1 = cohomology_group(V4, (2,))
    cg2 = cohomology_group(V4, (2,))
    with pytest.raises(ParentMismatch):
        class_eq(cg1.zero_class(), cg2.zero_class())
    assert class_eq(cg1.zero_class(), cg1.zero_class())


def test_solve_rejects_non_cocycles():
    cg = cohomology_group(Z4, (4,))
    f = TwoCochain.from_function(Z4, (4,),
                                 lambda x, y: (1 if x == y == 1 else 0,))
    assert two_cocycle_defect(f, cg.action) is not None
    with pytest.raises(NotACocycle):
        cg.coboundary_solve(f)
    with pytest.raises(NotACocycle):
        cg.class_of(f)


def test_action_validation():
    with pytest.raises(InputError):
        validate_action(Z2, (2,), [((1,),)])  # wrong length
    bad = [((1,),), ((0,),)]  # second matrix not invertible mod 2
    with pytest.raises(InputError):
        validate_action(Z2, (2,), bad)
    ta = trivial_action(Z3, (2, 4))
    validate_action(Z3, (2, 4), ta)


def test_unknown_bound_is_enforced():
    big = catalog("cyclic", 256)
    with pytest.raises(BoundExceeded):
        cohomology_group(big, (2,))


def test_h2_conjugation_classes_are_well_defined():
    d8 = catalog("dihedral", 8)
    ext = extension_from(d8, center(d8))
    cg = ext.cohomology
    cls = cg.class_of(ext.mu)
    shifted = ext.mu + coboundary_of(
        OneCochain(ext.H, ext.moduli, [(0,), (1,), (0,), (1,)]),
        ext.cocycle_action)
    assert class_eq(cg.class_of(shifted), cls)
