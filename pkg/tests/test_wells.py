"""Automorphism decomposition, difference cocycles and the two exact
sequences, checked against exhaustive scans of the full automorphism group."""

import itertools
import random

import pytest

from extlift import (DoesNotNormalize, InputError, NotCentral, NotCompatible,
                     OneCochain, ParentMismatch, Subgroup,
                     TripleConditionsFail, WellsTriple, abelian_structure,
                     aut_subgroups, automorphism_from_triple,
                     automorphism_group, catalog, compatible_pairs,
                     derivation_check, extend_automorphism, extension_from,
                     group_from_permutations, h2_conjugation_action,
                     is_compatible, is_two_cocycle, lambda1, lambda2,
                     lift_automorphism, lift_pair, random_transversal,
                     triple_of, verify_exactness, wells_cocycle_pair,
                     wells_cocycle_phi, wells_cocycle_theta)
from extlift.abelian import mat_vec
from extlift.groups import (GroupAutomorphism, all_subgroups, center,
                            derived_subgroup)

from oracles import (aut_normalizing, extension_witnesses, lift_witnesses,
                     pair_witnesses)


def _alt4():
    return group_from_permutations(4, [(1, 2, 0, 3), (0, 2, 3, 1)],
                                   name="alt4")


def _cases(max_order=16):
    """Extensions used across this module, all with abelian normal kernel."""
    s3 = catalog("dihedral", 6)
    d8 = catalog("dihedral", 8)
    q8 = catalog("quaternion", 8)
    z9 = catalog("cyclic", 9)
    a4 = _alt4()
    d12 = catalog("dihedral", 12)
    out = [
        (s3, Subgroup(s3, [0, 1, 2])),
        (d8, center(d8)),
        (d8, Subgroup(d8, [0, 1, 2, 3])),
        (q8, center(q8)),
        (z9, Subgroup(z9, [0, 3, 6])),
        (a4, derived_subgroup(a4)),
        (d12, Subgroup(d12, [0, 1, 2, 3, 4, 5])),
    ]
    return [(G, N) for G, N in out if G.order <= max_order]


def _theta_label_map(ext, theta):
    """theta as {G label of member -> G label of image member}."""
    mem = ext.N.members
    return {mem[i]: mem[theta(i)] for i in range(len(mem))}


def _coset_action_of_phi(ext, phi):
    """phi as the minimal-representative coset map the oracle compares."""
    G = ext.G
    minrep = {}
    for g in range(G.order):
        x = ext.pi(g)
        if x not in minrep:
            minrep[x] = min(G.mul(g, m) for m in ext.N.members)
    return {minrep[x]: minrep[phi(x)] for x in range(ext.H.order)}


def test_action_matrices_match_conjugation():
    for G, N in _cases(32):
        ext = extension_from(G, N)
        t = ext.transversal
        for x in range(ext.H.order):
            tx = t[x]
            for mem in N.members:
                conj = G.mul(G.inv(tx), G.mul(mem, tx))
                want = ext.coeffs.coords_of_member(conj)
                got = mat_vec(ext.action[x], ext.coeffs.coords_of_member(mem),
                              ext.moduli)
                assert got == want


def test_factor_set_matches_transversal_products():
    for G, N in _cases(32):
        ext = extension_from(G, N)
        t = ext.transversal
        for x in range(ext.H.order):
            for y in range(ext.H.order):
                g = G.mul(G.inv(t[ext.H.mul(x, y)]), G.mul(t[x], t[y]))
                assert ext.mu(x, y) == ext.coeffs.coords_of_member(g)
        assert is_two_cocycle(ext.mu, ext.cocycle_action)


def test_triple_round_trip_is_identity():
    for G, N in _cases(16):
        ext = extension_from(G, N)
        triples = {}
        for gamma in aut_subgroups(ext).aut_N_of_G:
            tr = triple_of(ext, gamma)
            back = automorphism_from_triple(ext, tr)
            assert back.image == gamma.image
            key = (tr.theta.image, tr.phi.image, tr.chi.values)
            assert key not in triples, "two automorphisms share a triple"
            triples[key] = gamma.image


def test_valid_triples_enumerate_the_normalizing_automorphisms():
    for G, N in _cases(12):
        ext = extension_from(G, N)
        pairs, _, _ = compatible_pairs(ext)
        h = ext.H.order
        values = list(itertools.product(*[range(m) for m in ext.moduli]))
        assert len(values) ** (h - 1) <= 512
        built = set()
        for theta, phi in pairs:
            for tail in itertools.product(values, repeat=h - 1):
                chi = OneCochain(ext.H, ext.moduli,
                                 [tuple([0] * len(ext.moduli))] + list(tail))
                try:
                    gamma = automorphism_from_triple(
                        ext, WellsTriple(theta, phi, chi))
                except TripleConditionsFail:
                    continue
                built.add(gamma.image)
        assert built == aut_normalizing(G, N)


def test_extend_agrees_with_exhaustive_scan():
    for G, N in _cases(16):
        ext = extension_from(G, N)
        for theta in automorphism_group(ext.n_group):
            witnesses = extension_witnesses(G, N, _theta_label_map(ext, theta))
            try:
                gamma = extend_automorphism(ext, theta)
            except NotCompatible:
                assert witnesses == []
                continue
            if gamma is None:
                assert witnesses == []
                assert not lambda1(ext, theta).is_trivial
            else:
                assert gamma.image in witnesses
                assert lambda1(ext, theta).is_trivial


def test_lift_agrees_with_exhaustive_scan():
    for G, N in _cases(16):
        ext = extension_from(G, N)
        for phi in automorphism_group(ext.H):
            witnesses = lift_witnesses(G, N, _coset_action_of_phi(ext, phi))
            try:
                gamma = lift_automorphism(ext, phi)
            except NotCompatible:
                assert witnesses == []
                continue
            if gamma is None:
                assert witnesses == []
                assert not lambda2(ext, phi).is_trivial
            else:
                assert gamma.image in witnesses
                assert lambda2(ext, phi).is_trivial


def test_pair_lift_agrees_with_exhaustive_scan_on_central_cases():
    for G, N in _cases(16):
        ext = extension_from(G, N)
        if not ext.central:
            continue
        pairs, _, _ = compatible_pairs(ext)
        for theta, phi in pairs:
            witnesses = pair_witnesses(G, N, _theta_label_map(ext, theta),
                                       _coset_action_of_phi(ext, phi))
            gamma = lift_pair(ext, theta, phi)
            if gamma is None:
                assert witnesses == []
            else:
                assert gamma.image in witnesses


def test_central_extension_pairs_are_the_full_product():
    for G, N in _cases(16):
        ext = extension_from(G, N)
        if not ext.central:
            continue
        pairs, c1, c2 = compatible_pairs(ext)
        n_auts = len(automorphism_group(ext.n_group))
        h_auts = len(automorphism_group(ext.H))
        assert len(pairs) == n_auts * h_auts
        assert len(c1) == n_auts and len(c2) == h_auts


def test_exactness_reports_are_clean():
    heis = catalog("heisenberg", 3)
    for G, N in _cases(16) + [(heis, center(heis))]:
        ext = extension_from(G, N)
        report = verify_exactness(ext)
        assert report["violations"] == []
        assert report["seq_1_1"] and report["seq_1_2"]
        assert report["seq_1_3"] is None or report["seq_1_3"]
        assert (report["seq_1_3"] is not None) == ext.central


def test_subgroup_orders_on_symmetric_example():
    # Aut of the 6 element dihedral group is inner; the rotation subgroup
    # is abelian, so exactly its 3 inner maps fix it pointwise.
    s3 = catalog("dihedral", 6)
    ext = extension_from(s3, Subgroup(s3, [0, 1, 2]))
    subs = aut_subgroups(ext)
    assert len(subs.aut_N_of_G) == 6
    assert len(subs.aut_upper_N) == 3
    assert len(subs.aut_N_H) == 6
    assert len(subs.aut_upper_N_H) == 3


def test_derivation_laws_hold():
    for G, N in _cases(12):
        ext = extension_from(G, N)
        report = derivation_check(ext)
        assert report["violations"] == []


def test_verdicts_stable_under_transversal_change():
    rng = random.Random(20240911)
    for G, N in _cases(16):
        ext = extension_from(G, N)
        thetas = automorphism_group(ext.n_group)
        phis = automorphism_group(ext.H)

        def verdicts(e):
            ext_ok, lift_ok = [], []
            for th in thetas:
                try:
                    ext_ok.append(extend_automorphism(e, th) is not None)
                except NotCompatible:
                    ext_ok.append(False)
            for ph in phis:
                try:
                    lift_ok.append(lift_automorphism(e, ph) is not None)
                except NotCompatible:
                    lift_ok.append(False)
            return ext_ok, lift_ok

        base = verdicts(ext)
        for _ in range(5):
            other = ext.with_transversal(random_transversal(ext, rng))
            assert verdicts(other) == base


def test_conjugation_action_on_classes():
    for G, N in _cases(16):
        ext = extension_from(G, N)
        cg = ext.cohomology
        cls = cg.class_of(ext.mu)
        _, c1, c2 = compatible_pairs(ext)
        assert h2_conjugation_action(ext, ext.id_N, cls) == cls
        assert h2_conjugation_action(ext, ext.id_H, cls) == cls
        for aut in list(c1[:4]) + list(c2[:4]):
            moved = h2_conjugation_action(ext, aut, cls)
            inv = [0] * len(aut.image)
            for i, v in enumerate(aut.image):
                inv[v] = i
            back = h2_conjugation_action(ext, GroupAutomorphism(aut.group, inv),
                                         moved)
            assert back == cls
            assert h2_conjugation_action(ext, aut, cg.zero_class()).is_trivial


def test_incompatible_theta_is_rejected():
    a4 = _alt4()
    ext = extension_from(a4, derived_subgroup(a4))
    swap = GroupAutomorphism(ext.n_group, [0, 2, 1, 3])
    assert not is_compatible(ext, swap, ext.id_H)
    with pytest.raises(NotCompatible):
        wells_cocycle_theta(ext, swap)
    phis = automorphism_group(ext.H)
    compatible_with_swap = [ph for ph in phis if is_compatible(ext, swap, ph)]
    assert compatible_with_swap, "swap should pair with some quotient map"


def test_pair_cocycle_requires_central_kernel():
    s3 = catalog("dihedral", 6)
    ext = extension_from(s3, Subgroup(s3, [0, 1, 2]))
    with pytest.raises(NotCentral):
        wells_cocycle_pair(ext, ext.id_N, ext.id_H)
    with pytest.raises(NotCentral):
        lift_pair(ext, ext.id_N, ext.id_H)


def test_triple_of_rejects_non_normalizing_automorphism():
    v4 = catalog("elementary_abelian", 2, 2)
    ext = extension_from(v4, Subgroup(v4, [0, 1]))
    moving = GroupAutomorphism(v4, [0, 2, 1, 3])
    with pytest.raises(DoesNotNormalize):
        triple_of(ext, moving)


def test_bad_triples_are_rejected():
    d8 = catalog("dihedral", 8)
    ext = extension_from(d8, center(d8))
    chi = OneCochain(ext.H, ext.moduli, [(0,), (1,), (0,), (0,)])
    with pytest.raises(TripleConditionsFail):
        automorphism_from_triple(ext, WellsTriple(ext.id_N, ext.id_H, chi))


def test_parent_checks_on_automorphism_arguments():
    d8 = catalog("dihedral", 8)
    ext = extension_from(d8, center(d8))
    z3 = catalog("cyclic", 3)
    alien = GroupAutomorphism(z3, [0, 2, 1])
    with pytest.raises(ParentMismatch):
        extend_automorphism(ext, alien)
    with pytest.raises(ParentMismatch):
        lift_automorphism(ext, alien)
    with pytest.raises(ParentMismatch):
        triple_of(ext, alien)


def test_transversal_validation():
    d8 = catalog("dihedral", 8)
    ext = extension_from(d8, center(d8))
    with pytest.raises(InputError):
        ext.with_transversal([1, 2, 3, 4])
    with pytest.raises(InputError):
        ext.with_transversal([0, 1])
    with pytest.raises(InputError):
        ext.with_transversal([0, 0, 0, 0])
    rng = random.Random(5)
    t = random_transversal(ext, rng)
    assert t[0] == 0
    other = ext.with_transversal(t)
    assert other.transversal == tuple(t)
    assert other.action is ext.action


def test_extension_requires_matching_parent_and_abelian_normal_kernel():
    d8 = catalog("dihedral", 8)
    other = catalog("dihedral", 8)
    with pytest.raises(ParentMismatch):
        extension_from(d8, Subgroup(other, [0, 2]))
    d16 = catalog("dihedral", 16)
    nonabelian = next(S for S in all_subgroups(d16)
                      if len(S.members) == 8 and not S.as_group().is_abelian)
    with pytest.raises(InputError):
        extension_from(d16, nonabelian)
    s3 = catalog("dihedral", 6)
    with pytest.raises(InputError):
        extension_from(s3, Subgroup(s3, [0, 3]))
