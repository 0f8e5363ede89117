"""Obstruction calculus for automorphisms of abelian-kernel group extensions.

Given G with an abelian normal subgroup N and quotient H = G/N, a transversal
t (t(1) = 1) yields the factor set mu(x,y) = t(xy)^-1 t(x) t(y) and the right
conjugation action of H on N.  An automorphism gamma of G normalizing N is
equivalent to a triple (theta, phi, chi) with

    gamma(t(x) n) = t(phi x) chi(x) theta(n),

where theta = gamma|_N, phi the induced map on H, and chi: H -> N measures
the transversal displacement.  The triple conditions, written additively in
N-coordinates (the single sign convention everything below reuses), are

    (2)  mu(phi x, phi y) - Theta mu(x, y) = chi(xy) - chi(y) - A(phi y) chi(x)
    (3)  Theta A(x) = A(phi x) Theta.

Whether a compatible (theta, phi) arises from some gamma is controlled by
cohomology classes of explicit difference cocycles; solving the coboundary
equation produces the witness chi constructively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .abelian import (AbelianStructure, Vector, abelian_structure, mat_mul,
                      mat_vec, matrix_of_endomorphism, restrict_to_matrix,
                      vec_sub)
from .cohomology import (CohomologyClass, CohomologyGroup, OneCochain,
                         TwoCochain, coboundary_of, is_two_cocycle,
                         two_cocycle_defect)
from .errors import (DoesNotNormalize, InputError, NotCentral, NotCompatible,
                     ParentMismatch, TripleConditionsFail)
from .groups import (FiniteGroup, GroupAutomorphism, GroupHomomorphism,
                     Subgroup, automorphism_group, center, quotient_group)

__all__ = [
    "ExtensionData",
    "CompatiblePair",
    "WellsTriple",
    "AutSubgroups",
    "extension_from",
    "random_transversal",
    "is_compatible",
    "compatible_pairs",
    "wells_cocycle_theta",
    "wells_cocycle_phi",
    "wells_cocycle_pair",
    "lambda1",
    "lambda2",
    "lambda_pair",
    "triple_of",
    "automorphism_from_triple",
    "extend_automorphism",
    "lift_automorphism",
    "lift_pair",
    "aut_subgroups",
    "verify_exactness",
    "h2_conjugation_action",
    "derivation_check",
]


class CompatiblePair(NamedTuple):
    theta: GroupAutomorphism
    phi: GroupAutomorphism


class WellsTriple(NamedTuple):
    theta: GroupAutomorphism  # automorphism of the standalone N group
    phi: GroupAutomorphism    # automorphism of H
    chi: OneCochain           # H -> N in coordinates


def _compose_images(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # image tuple of p after q
    return tuple(p[v] for v in q)


class ExtensionData:
    """A group G with abelian normal N, quotient H, transversal and factor set.

    The transversal defaults to the minimal G-index in each coset.  The
    conjugation action of H on N does not depend on the transversal (N is
    abelian), so rebuilding with a different transversal shares the
    coordinate structure, the action and the cohomology solver.
    """

    def __init__(self, G: FiniteGroup, N: Subgroup,
                 transversal: Optional[Sequence[int]] = None,
                 _share: Optional["ExtensionData"] = None):
        if N.group is not G:
            raise ParentMismatch("subgroup belongs to a different group")
        N.require_abelian()
        N.require_normal()
        self.G = G
        self.N = N
        if _share is not None:
            self.H = _share.H
            self.pi = _share.pi
            self.coeffs = _share.coeffs
            self.n_group = _share.n_group
            self.alpha = _share.alpha
            self.action = _share.action
            self.central = _share.central
            self._cohomology = _share._cohomology
        else:
            self.H, self.pi = quotient_group(G, N)
            self.coeffs: AbelianStructure = abelian_structure(N)
            self.n_group = self.coeffs.n_group
            self._cohomology: Optional[CohomologyGroup] = None
            self._build_action()
        h = self.H.order
        if transversal is None:
            t = [-1] * h
            for g in range(G.order):
                x = self.pi(g)
                if t[x] < 0:
                    t[x] = g
        else:
            t = [int(v) for v in transversal]
            if len(t) != h:
                raise InputError(f"transversal must list {h} elements")
            if t[0] != 0:
                raise InputError("transversal must send the identity to the identity")
            for x, g in enumerate(t):
                if not 0 <= g < G.order or self.pi(g) != x:
                    raise InputError(f"transversal value {g} is not in coset {x}")
        self.transversal = tuple(t)
        self.mu = self._build_mu()

    def _build_action(self) -> None:
        G, N = self.G, self.N
        pos = N.position
        alpha = []
        for x in range(self.H.order):
            tx = min(g for g in range(G.order) if self.pi(g) == x)
            alpha.append(tuple(pos[G.conjugate(m, tx)] for m in N.members))
        self.alpha = tuple(alpha)
        ident = tuple(range(self.n_group.order))
        self.central = all(a == ident for a in alpha)
        in_center = N.member_set <= center(G).member_set
        if self.central != in_center:
            raise AssertionError("centrality flag disagrees with the center test")
        self.action = tuple(matrix_of_endomorphism(self.coeffs, a) for a in alpha)

    def _build_mu(self) -> TwoCochain:
        G = self.G
        t = self.transversal
        h = self.H.order
        coords = self.coeffs.coords_of_member
        vals = [[None] * h for _ in range(h)]
        for x in range(h):
            for y in range(h):
                g = G.mul(G.inv(t[self.H.mul(x, y)]), G.mul(t[x], t[y]))
                vals[x][y] = coords(g)
        mu = TwoCochain(self.H, self.moduli, vals)
        defect = two_cocycle_defect(mu, self.cocycle_action)
        if defect is not None:
            raise AssertionError(f"factor set fails the cocycle identity at {defect}")
        return mu

    @property
    def moduli(self) -> Vector:
        return self.coeffs.invariant_factors

    @property
    def cocycle_action(self):
        """Action argument for cochain operations; None when conjugation is trivial."""
        return None if self.central else self.action

    @property
    def cohomology(self) -> CohomologyGroup:
        if self._cohomology is None:
            self._cohomology = CohomologyGroup(self.H, self.coeffs,
                                               self.cocycle_action)
        return self._cohomology

    def with_transversal(self, transversal: Sequence[int]) -> "ExtensionData":
        return ExtensionData(self.G, self.N, transversal, _share=self)

    @property
    def id_N(self) -> GroupAutomorphism:
        return GroupAutomorphism.identity(self.n_group)

    @property
    def id_H(self) -> GroupAutomorphism:
        return GroupAutomorphism.identity(self.H)

    def n_member(self, coords: Sequence[int]) -> int:
        return self.coeffs.member_of_coords(coords)

    def theta_on_member(self, theta: GroupAutomorphism, member: int) -> int:
        """Apply an automorphism of the standalone N group to a G-index in N."""
        return self.N.members[theta(self.N.position[member])]

    def __repr__(self) -> str:
        return (f"ExtensionData(|G|={self.G.order}, |N|={self.N.order}, "
                f"|H|={self.H.order}{', central' if self.central else ''})")


def extension_from(G: FiniteGroup, N: Subgroup) -> ExtensionData:
    """Extension data for abelian normal N <= G with the minimal transversal."""
    return ExtensionData(G, N)


def random_transversal(ext: ExtensionData, rng) -> list[int]:
    """A uniformly random transversal fixing the identity coset choice."""
    h = ext.H.order
    cosets: list[list[int]] = [[] for _ in range(h)]
    for g in range(ext.G.order):
        cosets[ext.pi(g)].append(g)
    return [0] + [rng.choice(cosets[x]) for x in range(1, h)]


def _check_theta(ext: ExtensionData, theta: GroupAutomorphism) -> None:
    if not isinstance(theta, GroupAutomorphism) or theta.group is not ext.n_group:
        raise ParentMismatch("theta must be an automorphism of the kernel group")


def _check_phi(ext: ExtensionData, phi: GroupAutomorphism) -> None:
    if not isinstance(phi, GroupAutomorphism) or phi.group is not ext.H:
        raise ParentMismatch("phi must be an automorphism of the quotient group")


def is_compatible(ext: ExtensionData, theta: GroupAutomorphism,
                  phi: GroupAutomorphism) -> bool:
    """Whether theta(n^x) = theta(n)^(phi x) for all x in H, n in N."""
    _check_theta(ext, theta)
    _check_phi(ext, phi)
    ti = theta.image
    for x in range(ext.H.order):
        if _compose_images(ti, ext.alpha[x]) != _compose_images(ext.alpha[phi(x)], ti):
            return False
    return True


def compatible_pairs(ext: ExtensionData, verify_closure: bool = True):
    """All compatible pairs C plus the slices C1 (phi = 1) and C2 (theta = 1)."""
    auts_n = automorphism_group(ext.n_group)
    auts_h = automorphism_group(ext.H)
    pairs = [CompatiblePair(th, ph) for th in auts_n for ph in auts_h
             if is_compatible(ext, th, ph)]
    c1 = [p.theta for p in pairs if p.phi.image == ext.id_H.image]
    c2 = [p.phi for p in pairs if p.theta.image == ext.id_N.image]
    if verify_closure:
        seen = {(p.theta.image, p.phi.image) for p in pairs}
        for p in pairs:
            for q in pairs:
                key = (_compose_images(p.theta.image, q.theta.image),
                       _compose_images(p.phi.image, q.phi.image))
                if key not in seen:
                    raise AssertionError("compatible pairs are not closed "
                                         "under composition")
    return pairs, c1, c2


def wells_cocycle_theta(ext: ExtensionData, theta: GroupAutomorphism) -> TwoCochain:
    """k_theta(x,y) = mu(x,y) - Theta mu(x,y); requires (theta, 1) compatible."""
    if not is_compatible(ext, theta, ext.id_H):
        raise NotCompatible("(theta, 1) is not a compatible pair")
    T = restrict_to_matrix(ext.coeffs, theta)
    m = ext.moduli
    mu = ext.mu

    def value(x: int, y: int) -> Vector:
        v = mu(x, y)
        return vec_sub(v, mat_vec(T, v, m), m)

    k = TwoCochain.from_function(ext.H, m, value)
    defect = two_cocycle_defect(k, ext.cocycle_action)
    if defect is not None:
        raise AssertionError(f"difference cocycle fails the identity at {defect}")
    return k


def wells_cocycle_phi(ext: ExtensionData, phi: GroupAutomorphism) -> TwoCochain:
    """k_phi(x,y) = mu(phi x, phi y) - mu(x,y); requires (1, phi) compatible."""
    if not is_compatible(ext, ext.id_N, phi):
        raise NotCompatible("(1, phi) is not a compatible pair")
    m = ext.moduli
    mu = ext.mu

    def value(x: int, y: int) -> Vector:
        return vec_sub(mu(phi(x), phi(y)), mu(x, y), m)

    k = TwoCochain.from_function(ext.H, m, value)
    defect = two_cocycle_defect(k, ext.cocycle_action)
    if defect is not None:
        raise AssertionError(f"difference cocycle fails the identity at {defect}")
    return k


def wells_cocycle_pair(ext: ExtensionData, theta: GroupAutomorphism,
                       phi: GroupAutomorphism) -> TwoCochain:
    """k(x,y) = mu(phi x, phi y) - Theta mu(x,y) for central extensions."""
    if not ext.central:
        raise NotCentral("the pair cocycle needs a central extension")
    _check_theta(ext, theta)
    _check_phi(ext, phi)
    T = restrict_to_matrix(ext.coeffs, theta)
    m = ext.moduli
    mu = ext.mu

    def value(x: int, y: int) -> Vector:
        return vec_sub(mu(phi(x), phi(y)), mat_vec(T, mu(x, y), m), m)

    k = TwoCochain.from_function(ext.H, m, value)
    defect = two_cocycle_defect(k, None)
    if defect is not None:
        raise AssertionError(f"difference cocycle fails the identity at {defect}")
    return k


def lambda1(ext: ExtensionData, theta: GroupAutomorphism) -> CohomologyClass:
    return ext.cohomology.class_of(wells_cocycle_theta(ext, theta))


def lambda2(ext: ExtensionData, phi: GroupAutomorphism) -> CohomologyClass:
    return ext.cohomology.class_of(wells_cocycle_phi(ext, phi))


def lambda_pair(ext: ExtensionData, theta: GroupAutomorphism,
                phi: GroupAutomorphism) -> CohomologyClass:
    return ext.cohomology.class_of(wells_cocycle_pair(ext, theta, phi))


def _triple_defect(ext: ExtensionData, theta: GroupAutomorphism,
                   phi: GroupAutomorphism, chi: OneCochain):
    """First violated triple condition as (name, where), or None."""
    T = restrict_to_matrix(ext.coeffs, theta)
    m = ext.moduli
    h = ext.H.order
    for x in range(h):
        lhs = mat_mul(T, ext.action[x], m)
        rhs = mat_mul(ext.action[phi(x)], T, m)
        if lhs != rhs:
            return ("(3)", x)
    mu = ext.mu
    mulH = ext.H.mul
    for x in range(h):
        for y in range(h):
            lhs = vec_sub(mu(phi(x), phi(y)), mat_vec(T, mu(x, y), m), m)
            rhs = vec_sub(vec_sub(chi(mulH(x, y)), chi(y), m),
                          mat_vec(ext.action[phi(y)], chi(x), m), m)
            if lhs != rhs:
                return ("(2)", (x, y))
    return None


def triple_of(ext: ExtensionData, gamma: GroupAutomorphism) -> WellsTriple:
    """Decompose an automorphism of G normalizing N into (theta, phi, chi)."""
    if not isinstance(gamma, GroupAutomorphism) or gamma.group is not ext.G:
        raise ParentMismatch("gamma must be an automorphism of G")
    G, N = ext.G, ext.N
    if {gamma(mem) for mem in N.members} != N.member_set:
        bad = next(mem for mem in N.members if gamma(mem) not in N.member_set)
        raise DoesNotNormalize(f"gamma({bad}) = {gamma(bad)} leaves the subgroup")
    pos = N.position
    theta = GroupAutomorphism(ext.n_group, [pos[gamma(mem)] for mem in N.members])
    phi = GroupAutomorphism(ext.H, [ext.pi(gamma(t)) for t in ext.transversal])
    t = ext.transversal
    chi_vals = []
    for x in range(ext.H.order):
        c = G.mul(G.inv(t[phi(x)]), gamma(t[x]))
        chi_vals.append(ext.coeffs.coords_of_member(c))
    chi = OneCochain(ext.H, ext.moduli, chi_vals)
    bad = _triple_defect(ext, theta, phi, chi)
    if bad is not None:
        raise AssertionError(f"decomposed triple violates condition {bad[0]} at {bad[1]}")
    return WellsTriple(theta, phi, chi)


def automorphism_from_triple(ext: ExtensionData,
                             triple: WellsTriple) -> GroupAutomorphism:
    """gamma with gamma(t(x) n) = t(phi x) chi(x) theta(n); conditions checked."""
    theta, phi, chi = triple
    _check_theta(ext, theta)
    _check_phi(ext, phi)
    if chi.group is not ext.H or chi.moduli != ext.moduli:
        raise ParentMismatch("chi does not live over this extension's data")
    bad = _triple_defect(ext, theta, phi, chi)
    if bad is not None:
        raise TripleConditionsFail(
            f"triple condition {bad[0]} fails at {bad[1]}")
    G, N = ext.G, ext.N
    t = ext.transversal
    img = [0] * G.order
    for x in range(ext.H.order):
        base = G.mul(t[phi(x)], ext.n_member(chi(x)))
        for i, mem in enumerate(N.members):
            img[G.mul(t[x], mem)] = G.mul(base, N.members[theta(i)])
    try:
        gamma = GroupAutomorphism(G, img)
    except InputError as exc:
        raise AssertionError(f"triple produced a non-automorphism: {exc}") from exc
    return gamma


def extend_automorphism(ext: ExtensionData,
                        theta: GroupAutomorphism) -> Optional[GroupAutomorphism]:
    """Automorphism of G restricting to theta and fixing H pointwise, if any.

    Exists iff the class of k_theta vanishes; the witness comes from the
    coboundary solver, so success is always certified.
    """
    k = wells_cocycle_theta(ext, theta)
    chi = ext.cohomology.coboundary_solve(k)
    if chi is None:
        return None
    gamma = automorphism_from_triple(ext, WellsTriple(theta, ext.id_H, chi))
    back = triple_of(ext, gamma)
    if back.theta.image != theta.image or back.phi.image != ext.id_H.image:
        raise AssertionError("extension witness does not invert the decomposition")
    return gamma


def lift_automorphism(ext: ExtensionData,
                      phi: GroupAutomorphism) -> Optional[GroupAutomorphism]:
    """Automorphism of G fixing N pointwise and inducing phi, if any."""
    k = wells_cocycle_phi(ext, phi)
    chi = ext.cohomology.coboundary_solve(k)
    if chi is None:
        return None
    gamma = automorphism_from_triple(ext, WellsTriple(ext.id_N, phi, chi))
    back = triple_of(ext, gamma)
    if back.theta.image != ext.id_N.image or back.phi.image != phi.image:
        raise AssertionError("lift witness does not invert the decomposition")
    return gamma


def lift_pair(ext: ExtensionData, theta: GroupAutomorphism,
              phi: GroupAutomorphism) -> Optional[GroupAutomorphism]:
    """Central extensions: automorphism inducing theta on N and phi on H."""
    k = wells_cocycle_pair(ext, theta, phi)
    chi = ext.cohomology.coboundary_solve(k)
    if chi is None:
        return None
    gamma = automorphism_from_triple(ext, WellsTriple(theta, phi, chi))
    back = triple_of(ext, gamma)
    if back.theta.image != theta.image or back.phi.image != phi.image:
        raise AssertionError("pair witness does not invert the decomposition")
    return gamma


@dataclass(frozen=True)
class AutSubgroups:
    """The four automorphism sets attached to (G, N), as sorted tuples."""
    aut_N_of_G: tuple        # normalize N
    aut_upper_N: tuple       # fix N pointwise
    aut_N_H: tuple           # normalize N and induce identity on H
    aut_upper_N_H: tuple     # both


def aut_subgroups(ext: ExtensionData) -> AutSubgroups:
    G, N = ext.G, ext.N
    auts = automorphism_group(G)
    member_set = N.member_set
    members = N.members
    pi = ext.pi
    t = ext.transversal
    h = ext.H.order

    def normalizes(g: GroupAutomorphism) -> bool:
        return {g(m) for m in members} == member_set

    def fixes_N(g: GroupAutomorphism) -> bool:
        return all(g(m) == m for m in members)

    def identity_on_H(g: GroupAutomorphism) -> bool:
        return all(pi(g(t[x])) == x for x in range(h))

    aut_N = tuple(g for g in auts if normalizes(g))
    aut_upper = tuple(g for g in aut_N if fixes_N(g))
    aut_N_H = tuple(g for g in aut_N if identity_on_H(g))
    aut_both = tuple(g for g in aut_upper if identity_on_H(g))
    return AutSubgroups(aut_N, aut_upper, aut_N_H, aut_both)


def verify_exactness(ext: ExtensionData) -> dict:
    """Elementwise exactness of the restriction/induction sequences.

    Checks, on actual element sets:
      - kernel of gamma -> theta on the H-fixing normalizers equals the
        subgroup fixing both N and H (first sequence), and its image equals
        the compatible thetas with trivial obstruction class;
      - kernel of gamma -> phi on the N-centralizers likewise, with image
        the compatible phis with trivial class;
      - for central extensions, gamma -> (theta, phi) on all of the
        N-normalizers has kernel as above and image the pairs with trivial
        pair class.
    """
    subs = aut_subgroups(ext)
    pairs, c1, c2 = compatible_pairs(ext)
    cg = ext.cohomology
    violations: list[str] = []

    both_keys = {g.image for g in subs.aut_upper_N_H}

    # gamma -> theta on automorphisms inducing the identity on H
    id_h = ext.id_H.image
    id_n = ext.id_N.image
    im1 = set()
    ker1 = set()
    for g in subs.aut_N_H:
        tr = triple_of(ext, g)
        if tr.phi.image != id_h:
            violations.append(f"automorphism {g.image} in the H-fixing set "
                              "induces a nonidentity quotient map")
        im1.add(tr.theta.image)
        if tr.theta.image == id_n:
            ker1.add(g.image)
    starred1 = {th.image for th in c1 if lambda1(ext, th).is_trivial}
    seq_1_1 = ker1 == both_keys and im1 == starred1
    if ker1 != both_keys:
        violations.append("kernel of the restriction map differs from the "
                          "N,H-fixing subgroup")
    if im1 != starred1:
        violations.append("image of the restriction map differs from the "
                          "unobstructed compatible thetas")

    # gamma -> phi on automorphisms fixing N pointwise
    im2 = set()
    ker2 = set()
    for g in subs.aut_upper_N:
        tr = triple_of(ext, g)
        if tr.theta.image != id_n:
            violations.append(f"automorphism {g.image} in the N-centralizing "
                              "set moves N")
        im2.add(tr.phi.image)
        if tr.phi.image == id_h:
            ker2.add(g.image)
    starred2 = {ph.image for ph in c2 if lambda2(ext, ph).is_trivial}
    seq_1_2 = ker2 == both_keys and im2 == starred2
    if ker2 != both_keys:
        violations.append("kernel of the induction map differs from the "
                          "N,H-fixing subgroup")
    if im2 != starred2:
        violations.append("image of the induction map differs from the "
                          "unobstructed compatible phis")

    # central case: gamma -> (theta, phi) on all N-normalizers
    seq_1_3 = None
    if ext.central:
        im3 = set()
        ker3 = set()
        for g in subs.aut_N_of_G:
            tr = triple_of(ext, g)
            im3.add((tr.theta.image, tr.phi.image))
            if tr.theta.image == id_n and tr.phi.image == id_h:
                ker3.add(g.image)
        starred3 = {(p.theta.image, p.phi.image) for p in pairs
                    if lambda_pair(ext, p.theta, p.phi).is_trivial}
        seq_1_3 = ker3 == both_keys and im3 == starred3
        if not seq_1_3:
            violations.append("central pair sequence fails exactness")

    return {
        "aut_N_order": len(subs.aut_N_of_G),
        "aut_upper_N_order": len(subs.aut_upper_N),
        "aut_N_H_order": len(subs.aut_N_H),
        "aut_upper_N_H_order": len(subs.aut_upper_N_H),
        "c_order": len(pairs),
        "c1_order": len(c1),
        "c2_order": len(c2),
        "z2_order": cg.z2_order,
        "b2_order": cg.b2_order,
        "h2_order": cg.h2_order,
        "seq_1_1": seq_1_1,
        "seq_1_2": seq_1_2,
        "seq_1_3": seq_1_3,
        "violations": violations,
    }


def h2_conjugation_action(ext: ExtensionData, aut: GroupAutomorphism,
                          cls: CohomologyClass) -> CohomologyClass:
    """Action of theta in C1 (pointwise) or phi in C2 (precomposition) on classes."""
    if cls.parent is not ext.cohomology:
        raise ParentMismatch("class belongs to a different cohomology group")
    rep = cls.representative
    m = ext.moduli
    if aut.group is ext.n_group:
        if not is_compatible(ext, aut, ext.id_H):
            raise NotCompatible("(theta, 1) is not compatible")
        T = restrict_to_matrix(ext.coeffs, aut)
        moved = TwoCochain.from_function(
            ext.H, m, lambda x, y: mat_vec(T, rep(x, y), m))
    elif aut.group is ext.H:
        if not is_compatible(ext, ext.id_N, aut):
            raise NotCompatible("(1, phi) is not compatible")
        moved = TwoCochain.from_function(
            ext.H, m, lambda x, y: rep(aut(x), aut(y)))
    else:
        raise ParentMismatch("expected an automorphism of the kernel or quotient")
    return ext.cohomology.class_of(moved)


def derivation_check(ext: ExtensionData) -> dict:
    """Composition laws of the difference cocycles, at cochain and class level.

    For theta's: k_(t1 t2) = k_t1 + T1 k_t2 pointwise, and coboundaries move
    to coboundaries under k -> T1 k.  For phi's: k_(p1 p2) = k_p2 + k_p1 o
    (p2 x p2), with coboundary invariance under precomposition.
    """
    _, c1, c2 = compatible_pairs(ext)
    m = ext.moduli
    H = ext.H
    cg = ext.cohomology
    violations: list[str] = []

    k1 = {th.image: wells_cocycle_theta(ext, th) for th in c1}
    for t1 in c1:
        T1 = restrict_to_matrix(ext.coeffs, t1)
        for t2 in c1:
            comp = t1.compose(t2)
            lhs = k1[comp.image]
            moved = TwoCochain.from_function(
                H, m, lambda x, y: mat_vec(T1, k1[t2.image](x, y), m))
            if lhs != k1[t1.image] + moved:
                violations.append(
                    f"theta derivation law fails at {t1.image} o {t2.image}")
            cls = cg.class_of(lhs)
            rhs_cls = cg.class_of(k1[t1.image] + moved)
            if cls != rhs_cls:
                violations.append(
                    f"theta class law fails at {t1.image} o {t2.image}")

    k2 = {ph.image: wells_cocycle_phi(ext, ph) for ph in c2}
    for p1 in c2:
        for p2 in c2:
            comp = p1.compose(p2)
            lhs = k2[comp.image]
            moved = TwoCochain.from_function(
                H, m, lambda x, y: k2[p1.image](p2(x), p2(y)))
            if lhs != k2[p2.image] + moved:
                violations.append(
                    f"phi derivation law fails at {p1.image} o {p2.image}")
            if cg.class_of(lhs) != cg.class_of(k2[p2.image] + moved):
                violations.append(
                    f"phi class law fails at {p1.image} o {p2.image}")

    # coboundary invariance under both actions, on the coboundary basis
    probe = [ch for ch in cg._chi_basis[:3]]
    for t1 in c1[:8]:
        T1 = restrict_to_matrix(ext.coeffs, t1)
        for chb in probe:
            delta = coboundary_of(chb, ext.cocycle_action)
            moved = TwoCochain.from_function(
                H, m, lambda x, y: mat_vec(T1, delta(x, y), m))
            chi2 = OneCochain(H, m, [mat_vec(T1, chb(x), m)
                                     for x in range(H.order)])
            if moved != coboundary_of(chi2, ext.cocycle_action):
                violations.append(
                    f"theta action does not preserve coboundaries at {t1.image}")
    for p1 in c2[:8]:
        for chb in probe:
            delta = coboundary_of(chb, ext.cocycle_action)
            moved = TwoCochain.from_function(
                H, m, lambda x, y: delta(p1(x), p1(y)))
            chi2 = OneCochain(H, m, [chb(p1(x)) for x in range(H.order)])
            if moved != coboundary_of(chi2, ext.cocycle_action):
                violations.append(
                    f"phi action does not preserve coboundaries at {p1.image}")

    return {
        "c1_order": len(c1),
        "c2_order": len(c2),
        "ok": not violations,
        "violations": violations,
    }
