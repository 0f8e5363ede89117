"""Local-to-global reduction over Sylow subgroups of the quotient.

Lifting an automorphism of H = G/N, or extending an automorphism of N, is
settled prime by prime: the preimage P of a Sylow p-subgroup of H is again
an abelian extension of N, and the local answer on (P, N) controls the
global one.  The bridge is class arithmetic.  A local lift at p forces
[H : P/N] copies of the global obstruction class to vanish, and those
indices taken over all primes dividing |H| are coprime, so local successes
everywhere kill the class outright.

Local data is expressed in the same N coordinates as the ambient extension:
the members of N sit inside P in the same relative order as inside G, so
the standalone copies of N built from either side carry identical tables.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple, Optional

from .cohomology import CohomologyClass, TwoCochain
from .errors import (InputError, NotCharacteristic, NotCompatible,
                     ParentMismatch, SylowNotInvariant)
from .groups import (GroupAutomorphism, Subgroup, automorphism_group,
                     is_commuting_automorphism, is_nilpotent, prime_factors,
                     sylow_subgroup)
from .wells import (ExtensionData, extend_automorphism, lift_automorphism,
                    lift_pair, wells_cocycle_phi, wells_cocycle_theta)

__all__ = [
    "SylowReport",
    "SylowCheck",
    "LocalExtension",
    "quotient_sylows",
    "sylow_preimage",
    "local_extension",
    "restrict_to_quotient_sylow",
    "sylow_lift_check",
    "sylow_extend_check",
    "index_kill_check",
    "characteristic_restriction",
    "corollary_predicates",
]


class SylowReport(NamedTuple):
    """Outcome of one local problem at one prime."""

    prime: int
    subgroup: Subgroup                       # P <= G containing N
    index: int                               # [H : P/N]
    compatible: bool                         # local cocycle is defined at all
    local_ok: bool
    witness: Optional[GroupAutomorphism]     # automorphism of P as a group
    obstruction: Optional[CohomologyClass]   # local class when the solve fails


class SylowCheck(NamedTuple):
    """Aggregate verdict with one report per prime dividing |H|."""

    verdict: bool
    reports: tuple
    witness: Optional[GroupAutomorphism]     # global witness on G


class LocalExtension(NamedTuple):
    """Sub-extension on N <= P <= G together with the quotient embedding.

    embed sends P/N into H; it is the injective homomorphism induced by the
    inclusion of P in G, so restricting maps of H along it is plain
    precomposition.
    """

    subgroup: Subgroup
    ext: ExtensionData
    embed: tuple


def quotient_sylows(ext: ExtensionData, p: int) -> list[Subgroup]:
    """All Sylow p-subgroups of H, the deterministically grown one first."""
    first = sylow_subgroup(ext.H, p)
    out = [first]
    seen = {first.members}
    for g in range(ext.H.order):
        conj = first.conjugate_by(g)
        if conj.members not in seen:
            seen.add(conj.members)
            out.append(conj)
    return out


def sylow_preimage(ext: ExtensionData, p: int,
                   sylow: Optional[Subgroup] = None) -> Subgroup:
    """P = preimage in G of a Sylow p-subgroup of H; contains N by design."""
    if sylow is None:
        sylow = sylow_subgroup(ext.H, p)
    elif sylow.group is not ext.H:
        raise ParentMismatch("Sylow subgroup must live in the quotient group")
    members = [g for g in range(ext.G.order) if ext.pi(g) in sylow]
    return Subgroup(ext.G, members)


def local_extension(ext: ExtensionData, P: Subgroup) -> LocalExtension:
    """The induced extension 1 -> N -> P -> P/N -> 1 in shared coordinates."""
    if P.group is not ext.G:
        raise ParentMismatch("subgroup must live in the extension group")
    if not ext.N.member_set <= P.member_set:
        raise InputError("subgroup must contain N to induce a sub-extension")
    if P.order == ext.G.order:
        return LocalExtension(P, ext, tuple(range(ext.H.order)))
    P_grp = P.as_group()
    NP = Subgroup(P_grp, (P.position[m] for m in ext.N.members))
    sub = ExtensionData(P_grp, NP)
    if sub.n_group.table != ext.n_group.table or sub.moduli != ext.moduli:
        raise AssertionError("induced extension does not share the N coordinates")
    embed = tuple(ext.pi(P.members[g]) for g in sub.transversal)
    return LocalExtension(P, sub, embed)


def _local_theta(ext: ExtensionData, local: LocalExtension,
                 theta: GroupAutomorphism) -> GroupAutomorphism:
    # identical tables let the image tuple be reused verbatim
    if local.ext is ext:
        return theta
    return GroupAutomorphism(local.ext.n_group, theta.image)


def restrict_to_quotient_sylow(ext: ExtensionData, local: LocalExtension,
                               phi: GroupAutomorphism) -> Optional[GroupAutomorphism]:
    """phi pulled back along embed, or None when the image is not invariant."""
    back = {x: i for i, x in enumerate(local.embed)}
    images = []
    for i in range(local.ext.H.order):
        j = back.get(phi(local.embed[i]))
        if j is None:
            return None
        images.append(j)
    return GroupAutomorphism(local.ext.H, images)


def _leaves_invariant(phi: GroupAutomorphism, S: Subgroup) -> bool:
    return all(phi(s) in S.member_set for s in S.members)


def sylow_lift_check(ext: ExtensionData, phi: GroupAutomorphism) -> SylowCheck:
    """Settle the lifting of phi in Aut(H) prime by prime.

    For each prime dividing |H| the phi-invariant Sylow subgroups are tried
    in deterministic order until one admits a local lift; the first
    invariant failure is reported when none does.  A prime without any
    invariant Sylow raises SylowNotInvariant.  When every prime succeeds
    the global lift on (G, N) exists and is returned.
    """
    if phi.group is not ext.H:
        raise ParentMismatch("automorphism must act on the quotient group")
    reports = []
    for p in prime_factors(ext.H.order):
        report = None
        for S in quotient_sylows(ext, p):
            if not _leaves_invariant(phi, S):
                continue
            local = local_extension(ext, sylow_preimage(ext, p, S))
            rphi = restrict_to_quotient_sylow(ext, local, phi)
            index = ext.H.order // local.ext.H.order
            try:
                w = lift_automorphism(local.ext, rphi)
            except NotCompatible:
                cand = SylowReport(p, local.subgroup, index, False, False,
                                   None, None)
            else:
                if w is None:
                    cls = local.ext.cohomology.class_of(
                        wells_cocycle_phi(local.ext, rphi))
                    cand = SylowReport(p, local.subgroup, index, True, False,
                                       None, cls)
                else:
                    cand = SylowReport(p, local.subgroup, index, True, True,
                                       w, None)
            if report is None or cand.local_ok:
                report = cand
            if cand.local_ok:
                break
        if report is None:
            raise SylowNotInvariant(
                f"no Sylow {p}-subgroup of the quotient is invariant "
                f"under the automorphism")
        reports.append(report)
    verdict = all(r.local_ok for r in reports)
    witness = None
    if verdict:
        witness = lift_automorphism(ext, phi)
        if witness is None:
            raise AssertionError(
                "every local lift exists but the global lift is missing")
    return SylowCheck(verdict, tuple(reports), witness)


def sylow_extend_check(ext: ExtensionData, theta: GroupAutomorphism) -> SylowCheck:
    """Settle the extension of theta in Aut(N) prime by prime.

    Extensions centralizing the quotient preserve every subgroup between N
    and G, so the deterministic Sylow choice is as good as any and the local
    verdicts jointly match the global one in both directions; a mismatch
    would be a soundness bug and raises.
    """
    if theta.group is not ext.n_group:
        raise ParentMismatch("automorphism must act on the standalone N group")
    reports = []
    for p in prime_factors(ext.H.order):
        local = local_extension(ext, sylow_preimage(ext, p))
        th = _local_theta(ext, local, theta)
        index = ext.H.order // local.ext.H.order
        try:
            w = extend_automorphism(local.ext, th)
        except NotCompatible:
            reports.append(SylowReport(p, local.subgroup, index, False, False,
                                       None, None))
            continue
        if w is None:
            cls = local.ext.cohomology.class_of(
                wells_cocycle_theta(local.ext, th))
            reports.append(SylowReport(p, local.subgroup, index, True, False,
                                       None, cls))
        else:
            reports.append(SylowReport(p, local.subgroup, index, True, True,
                                       w, None))
    verdict = all(r.local_ok for r in reports)
    try:
        witness = extend_automorphism(ext, theta)
    except NotCompatible:
        witness = None
    if verdict != (witness is not None):
        raise AssertionError("local and global extension verdicts disagree")
    return SylowCheck(verdict, tuple(reports), witness if verdict else None)


def _scaled(f: TwoCochain, m: int) -> TwoCochain:
    vals = [[tuple(m * c for c in v) for v in row] for row in f.values]
    return TwoCochain(f.group, f.moduli, vals)


def index_kill_check(ext: ExtensionData, phi: GroupAutomorphism,
                     check: Optional[SylowCheck] = None) -> dict:
    """Expose the class arithmetic behind the lifting reduction.

    Whenever the local lift at p exists, [H : P/N] copies of the class of
    k_phi vanish; the entry for each prime records whether that held.  The
    indices attached to successful primes are jointly coprime exactly when
    every prime succeeds, which forces the class itself to die.
    """
    if phi.group is not ext.H:
        raise ParentMismatch("automorphism must act on the quotient group")
    k = wells_cocycle_phi(ext, phi)
    cg = ext.cohomology
    if check is None:
        check = sylow_lift_check(ext, phi)
    entries = []
    running = 0
    for r in check.reports:
        killed = cg.class_of(_scaled(k, r.index)).is_trivial
        entries.append({"p": r.prime, "index": r.index,
                        "local_lift": r.local_ok, "index_kill": killed})
        if r.local_ok:
            running = gcd(running, r.index)
    # no primes divide |H| = 1; the empty family is jointly coprime
    coprime = running == 1 if entries else True
    return {
        "class_trivial": cg.class_of(k).is_trivial,
        "primes": entries,
        "indices_coprime": coprime,
        "forced_trivial": check.verdict and coprime,
    }


def characteristic_restriction(ext: ExtensionData, gamma: GroupAutomorphism,
                               P: Subgroup) -> GroupAutomorphism:
    """Restrict a lift gamma to the preimage P of a characteristic subgroup.

    gamma must centralize N and P/N must be invariant under every
    automorphism of H; the restriction then lands in Aut(P) and is the
    local lift of the induced quotient map.
    """
    if gamma.group is not ext.G or P.group is not ext.G:
        raise ParentMismatch("automorphism and subgroup must live in G")
    if not ext.N.member_set <= P.member_set:
        raise InputError("subgroup must contain N")
    if any(gamma(m) != m for m in ext.N.members):
        raise InputError("automorphism must centralize N")
    quotient = Subgroup(ext.H, {ext.pi(m) for m in P.members})
    for a in automorphism_group(ext.H):
        for s in quotient.members:
            if a(s) not in quotient.member_set:
                raise NotCharacteristic(
                    f"quotient image of the subgroup is moved at element {s}")
    if any(gamma(m) not in P.member_set for m in P.members):
        raise AssertionError("lift moves the preimage of a characteristic subgroup")
    P_grp = P.as_group()
    images = tuple(P.position[gamma(m)] for m in P.members)
    return GroupAutomorphism(P_grp, images)


def corollary_predicates(ext: ExtensionData,
                         phi: Optional[GroupAutomorphism] = None,
                         theta: Optional[GroupAutomorphism] = None) -> dict:
    """Flags for the situations where the Sylow reduction needs no choices.

    quotient_nilpotent: every Sylow of H is unique, so any phi restricts
    everywhere and the local verdicts are an exact criterion.
    phi_commuting: phi(x) commutes with x for all x; such maps fix every
    Sylow subgroup setwise, reported alongside as sylows_phi_invariant.
    central_pair_mode: for central extensions with both maps supplied, runs
    the pair version on each Sylow preimage and cross-checks the global
    pair lift.
    """
    out = {
        "quotient_nilpotent": is_nilpotent(ext.H),
        "phi_commuting": None,
        "sylows_phi_invariant": None,
        "lift_verdict": None,
        "central_pair_mode": None,
    }
    if phi is not None:
        if phi.group is not ext.H:
            raise ParentMismatch("automorphism must act on the quotient group")
        out["phi_commuting"] = is_commuting_automorphism(ext.H, phi)
        out["sylows_phi_invariant"] = all(
            _leaves_invariant(phi, S)
            for p in prime_factors(ext.H.order)
            for S in quotient_sylows(ext, p))
        try:
            out["lift_verdict"] = sylow_lift_check(ext, phi).verdict
        except SylowNotInvariant:
            out["lift_verdict"] = None
    if ext.central and phi is not None and theta is not None:
        if theta.group is not ext.n_group:
            raise ParentMismatch("automorphism must act on the standalone N group")
        locals_ok = True
        per_prime = []
        for p in prime_factors(ext.H.order):
            found = None
            for S in quotient_sylows(ext, p):
                if not _leaves_invariant(phi, S):
                    continue
                local = local_extension(ext, sylow_preimage(ext, p, S))
                rphi = restrict_to_quotient_sylow(ext, local, phi)
                w = lift_pair(local.ext, _local_theta(ext, local, theta), rphi)
                found = w is not None
                if found:
                    break
            if found is None:
                raise SylowNotInvariant(
                    f"no Sylow {p}-subgroup of the quotient is invariant "
                    f"under the automorphism")
            per_prime.append({"p": p, "pair_lift": found})
            locals_ok = locals_ok and found
        global_w = lift_pair(ext, theta, phi)
        if locals_ok != (global_w is not None):
            raise AssertionError("local and global pair verdicts disagree")
        out["central_pair_mode"] = {
            "local_verdict": locals_ok,
            "primes": per_prime,
            "global_found": global_w is not None,
        }
    return out
