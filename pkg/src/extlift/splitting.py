"""Starred compatible sets, split detection, and sections of the sequences.

The three short exact sequences built in wells restrict to the subsets with
trivial obstruction class: those starred sets are the exact images, so each
sequence is onto them.  When the underlying extension 1 -> N -> G -> H -> 1
itself splits, explicit sections exist (built here from a homomorphic
transversal); when it does not, a section can still exist, and a
backtracking search over generator fibers settles the question either way.

Extraspecial-shaped central extensions carry a commutator form on the
quotient; quotient maps induced from automorphisms of G preserve it, which
pins down the starred set on that family.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from . import config
from .abelian import vec_add, vec_neg
from .cohomology import TwoCochain
from .errors import (BoundExceeded, NotCentral, NotExtraspecialShape,
                     NotSplit, ParentMismatch)
from .groups import (FiniteGroup, GroupAutomorphism, GroupHomomorphism,
                     Subgroup, center, derived_subgroup, generating_set,
                     hom_by_generator_images)
from .wells import ExtensionData, aut_subgroups, compatible_pairs, lambda1, lambda2, \
    lambda_pair, triple_of

__all__ = [
    "SplitKernels",
    "SplitWitness",
    "Section",
    "CommutatorForm",
    "split_kernels",
    "is_split_extension",
    "canonical_sections",
    "section_search",
    "commutator_form",
    "is_form_preserving",
]


class SplitKernels(NamedTuple):
    """The compatible automorphisms whose obstruction class vanishes."""

    c1_star: tuple                 # automorphisms of the standalone N group
    c2_star: tuple                 # automorphisms of H
    c_star: Optional[tuple]        # (theta, phi) pairs; central extensions only


class SplitWitness(NamedTuple):
    """A homomorphic transversal and the complement subgroup it spans."""

    section: GroupHomomorphism     # H -> G with pi after it the identity
    complement: Subgroup


class Section(NamedTuple):
    """A homomorphic right inverse of one of the three projections.

    sequence selects the projection: 1 restricts to N, 2 induces on H,
    3 does both (central case, domain elements are pairs).  images[i] is
    the automorphism of G assigned to domain[i].
    """

    sequence: int
    domain: tuple
    images: tuple


class CommutatorForm(NamedTuple):
    """values[x][y] holds the N coordinates of [t(x), t(y)]."""

    group: FiniteGroup             # the quotient H
    moduli: tuple
    values: tuple

    def __call__(self, x: int, y: int):
        return self.values[x][y]


def split_kernels(ext: ExtensionData) -> SplitKernels:
    """Filter the compatible sets by obstruction triviality and verify orders.

    Exactness makes each starred set the image of a group under the
    projection, hence closed under composition, and forces the order
    identity |domain| = |kernel| * |starred set| for each sequence; both
    facts are rechecked here against the enumerated automorphism group.
    """
    pairs, c1, c2 = compatible_pairs(ext)
    c1_star = tuple(th for th in c1 if lambda1(ext, th).is_trivial)
    c2_star = tuple(ph for ph in c2 if lambda2(ext, ph).is_trivial)
    c_star = None
    if ext.central:
        c_star = tuple(pr for pr in pairs
                       if lambda_pair(ext, pr.theta, pr.phi).is_trivial)
    _require_closed([th.image for th in c1_star],
                    lambda a, b: _compose_images(a, b))
    _require_closed([ph.image for ph in c2_star],
                    lambda a, b: _compose_images(a, b))
    if c_star is not None:
        _require_closed([(pr.theta.image, pr.phi.image) for pr in c_star],
                        lambda a, b: (_compose_images(a[0], b[0]),
                                      _compose_images(a[1], b[1])))
    subs = aut_subgroups(ext)
    kernel = len(subs.aut_upper_N_H)
    if len(subs.aut_N_H) != kernel * len(c1_star):
        raise AssertionError("first sequence order identity fails")
    if len(subs.aut_upper_N) != kernel * len(c2_star):
        raise AssertionError("second sequence order identity fails")
    if c_star is not None and len(subs.aut_N_of_G) != kernel * len(c_star):
        raise AssertionError("pair sequence order identity fails")
    return SplitKernels(c1_star, c2_star, c_star)


def _compose_images(p, q):
    return tuple(p[v] for v in q)


def _require_closed(keys, mul) -> None:
    have = set(keys)
    for a in keys:
        for b in keys:
            if mul(a, b) not in have:
                raise AssertionError("starred set is not closed under composition")


def is_split_extension(ext: ExtensionData) -> tuple[bool, Optional[SplitWitness]]:
    """Decide whether the extension splits; on success return a complement.

    The factor set is a coboundary exactly when some transversal is a
    homomorphism.  Solving d(chi) = -mu makes t'(x) = t(x) n(-chi(x)) that
    transversal, and its image is a complement of N in G.
    """
    neg = TwoCochain.zero(ext.H, ext.moduli) - ext.mu
    chi = ext.cohomology.coboundary_solve(neg)
    if chi is None:
        return False, None
    G = ext.G
    members = [G.mul(ext.transversal[x],
                     ext.n_member(vec_neg(chi(x), ext.moduli)))
               for x in range(ext.H.order)]
    section = GroupHomomorphism(ext.H, G, members)
    complement = Subgroup(G, members)
    if complement.order != ext.H.order:
        raise AssertionError("complement has the wrong order")
    if any(ext.pi(members[x]) != x for x in range(ext.H.order)):
        raise AssertionError("complement transversal projects incorrectly")
    return True, SplitWitness(section, complement)


def _decompose(ext: ExtensionData, section: GroupHomomorphism, g: int) -> tuple[int, int]:
    """g = section(x) * n uniquely; returns (x, n) with n a G index in N."""
    x = ext.pi(g)
    n = ext.G.mul(ext.G.inv(section(x)), g)
    return x, n


def _projection_key(ext: ExtensionData, sequence: int, gamma: GroupAutomorphism):
    tr = triple_of(ext, gamma)
    if sequence == 1:
        return tr.theta.image
    if sequence == 2:
        return tr.phi.image
    return (tr.theta.image, tr.phi.image)


def _domain_key(sequence: int, member):
    if sequence == 3:
        return (member.theta.image, member.phi.image)
    return member.image


def _domain_compose(sequence: int, a, b):
    if sequence == 3:
        return (_compose_images(a[0], b[0]), _compose_images(a[1], b[1]))
    return _compose_images(a, b)


def _verify_section(ext: ExtensionData, sec: Section) -> None:
    """Check sec is a homomorphism landing in the right fiber everywhere."""
    index = {_domain_key(sec.sequence, m): i for i, m in enumerate(sec.domain)}
    for i, member in enumerate(sec.domain):
        if _projection_key(ext, sec.sequence, sec.images[i]) != \
                _domain_key(sec.sequence, member):
            raise AssertionError("section image projects to the wrong element")
    keys = [_domain_key(sec.sequence, m) for m in sec.domain]
    for i, a in enumerate(keys):
        for j, b in enumerate(keys):
            prod = index[_domain_compose(sec.sequence, a, b)]
            composed = _compose_images(sec.images[i].image, sec.images[j].image)
            if composed != sec.images[prod].image:
                raise AssertionError("section is not a homomorphism")


def canonical_sections(ext: ExtensionData) -> tuple[Section, Section, Optional[Section]]:
    """The explicit sections available once the extension itself splits.

    Writing every element as g = t'(x) n over a homomorphic transversal t',
    the first section keeps x and applies theta to n, the second applies
    phi to x and keeps n, and the central pair version does both.
    """
    ok, witness = is_split_extension(ext)
    if not ok:
        raise NotSplit("extension has no complement, canonical sections unavailable")
    stars = split_kernels(ext)
    G = ext.G
    section = witness.section
    parts = [_decompose(ext, section, g) for g in range(G.order)]

    def build(sequence: int, domain, image_of) -> Section:
        images = tuple(GroupAutomorphism(G, [image_of(m, x, n) for x, n in parts])
                       for m in domain)
        sec = Section(sequence, tuple(domain), images)
        _verify_section(ext, sec)
        return sec

    psi1 = build(1, stars.c1_star,
                 lambda th, x, n: G.mul(section(x), ext.theta_on_member(th, n)))
    psi2 = build(2, stars.c2_star,
                 lambda ph, x, n: G.mul(section(ph(x)), n))
    psi = None
    if ext.central:
        psi = build(3, stars.c_star,
                    lambda pr, x, n: G.mul(section(pr.phi(x)),
                                           ext.theta_on_member(pr.theta, n)))
    return psi1, psi2, psi


def _abstract_group(keys, compose) -> tuple[FiniteGroup, dict]:
    """Composition table over hashable keys; the identity is placed first."""
    idt = None
    for i, k in enumerate(keys):
        if all(compose(k, q) == q and compose(q, k) == q for q in keys):
            idt = i
            break
    if idt is None:
        raise AssertionError("candidate set has no identity element")
    ordering = [idt] + [i for i in range(len(keys)) if i != idt]
    ordered = [keys[i] for i in ordering]
    pos = {k: i for i, k in enumerate(ordered)}
    table = [[pos[compose(a, b)] for b in ordered] for a in ordered]
    return FiniteGroup(table, name=f"abstract{len(keys)}"), pos


def section_search(ext: ExtensionData, which: int) -> Optional[Section]:
    """Search for a homomorphic section of sequence 1, 2 or 3.

    Generators of the starred group get images from their projection
    fibers, constrained to matching element order (sections are injective),
    and each full assignment is extended by word closure; the first
    consistent extension is returned verified.  None means exhaustion, so
    the sequence genuinely does not split.
    """
    if which not in (1, 2, 3):
        raise ParentMismatch(f"sequence selector must be 1, 2 or 3, got {which}")
    if which == 3 and not ext.central:
        raise NotCentral("pair sequence only exists for central extensions")
    stars = split_kernels(ext)
    domain = {1: stars.c1_star, 2: stars.c2_star, 3: stars.c_star}[which]
    if len(domain) > config.DEFAULT_SECTION_BOUND:
        raise BoundExceeded(
            f"starred set of order {len(domain)} exceeds the section "
            f"search bound {config.DEFAULT_SECTION_BOUND}")
    subs = aut_subgroups(ext)
    cands = {1: subs.aut_N_H, 2: subs.aut_upper_N, 3: subs.aut_N_of_G}[which]

    keys = [_domain_key(which, m) for m in domain]
    S, spos = _abstract_group(keys, lambda a, b: _domain_compose(which, a, b))
    members = [None] * len(domain)
    for i, m in enumerate(domain):
        members[spos[keys[i]]] = m

    ckeys = [g.image for g in cands]
    T, cpos = _abstract_group(ckeys, _compose_images)
    tmembers = [None] * len(cands)
    for g in cands:
        tmembers[cpos[g.image]] = g

    proj = [spos[_projection_key(ext, which, tmembers[i])] for i in range(T.order)]
    fibers = [[i for i in range(T.order) if proj[i] == s] for s in range(S.order)]
    if any(not f for f in fibers):
        raise AssertionError("projection misses a starred element")

    gens = generating_set(S)
    s_orders = S.element_orders()
    t_orders = T.element_orders()
    choices = [[c for c in fibers[g] if t_orders[c] == s_orders[g]] for g in gens]

    def walk(depth: int, picked: list) -> Optional[dict]:
        if depth == len(gens):
            return hom_by_generator_images(S, T, list(zip(gens, picked)))
        for c in choices[depth]:
            got = walk(depth + 1, picked + [c])
            if got is not None:
                return got
        return None

    found = walk(0, [])
    if found is None:
        return None
    sec = Section(which,
                  tuple(members),
                  tuple(tmembers[found[i]] for i in range(S.order)))
    _verify_section(ext, sec)
    return sec


def commutator_form(ext: ExtensionData) -> CommutatorForm:
    """The pairing rho(x, y) = [t(x), t(y)] on extraspecial-shaped extensions.

    Requires N = Z(G) = [G, G] of order 2 with H elementary abelian of
    exponent 2; under those hypotheses rho is well defined on the quotient,
    bilinear and alternating, and all three facts are rechecked.
    """
    G = ext.G
    if ext.N.order != 2:
        raise NotExtraspecialShape(f"need |N| = 2, got {ext.N.order}")
    if ext.N.members != center(G).members:
        raise NotExtraspecialShape("N must be the center")
    if ext.N.members != derived_subgroup(G).members:
        raise NotExtraspecialShape("N must be the derived subgroup")
    if any(o > 2 for o in ext.H.element_orders()):
        raise NotExtraspecialShape("quotient must be elementary abelian of exponent 2")
    t = ext.transversal
    coords = ext.coeffs.coords_of_member
    h = ext.H.order
    values = tuple(tuple(coords(G.commutator(t[x], t[y])) for y in range(h))
                   for x in range(h))
    form = CommutatorForm(ext.H, ext.moduli, values)
    mul = ext.H.mul
    for x in range(h):
        if any(form(x, x)):
            raise AssertionError("form is not alternating")
        for y in range(h):
            for z in range(h):
                if form(mul(x, y), z) != vec_add(form(x, z), form(y, z), ext.moduli):
                    raise AssertionError("form is not linear in the first slot")
                if form(x, mul(y, z)) != vec_add(form(x, y), form(x, z), ext.moduli):
                    raise AssertionError("form is not linear in the second slot")
    return form


def is_form_preserving(ext: ExtensionData, phi: GroupAutomorphism) -> bool:
    """Whether phi respects the commutator pairing of the quotient."""
    if phi.group is not ext.H:
        raise ParentMismatch("automorphism must act on the quotient group")
    form = commutator_form(ext)
    h = ext.H.order
    return all(form(phi(x), phi(y)) == form(x, y)
               for x in range(h) for y in range(h))
