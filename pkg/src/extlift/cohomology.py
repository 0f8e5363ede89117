"""Normalized cochains of H with coefficients in a finite abelian group.

Coefficients live in Z/d_1 x ... x Z/d_k coordinates and H acts through
integer matrices A(x) (None meaning the trivial action), composed so that
A(xy) = A(y) A(x).  Cocycle and coboundary counts come from exact integer
linear algebra: the coboundary image is held in a triangular lattice whose
rows remember how they were assembled (giving constructive witnesses), and
the cocycle kernel is counted through the dual of the constraint system.

Unknowns are the values f(x, y) for x, y != 1 only; normalization fixes the
rest.  The cocycle system is first re-parametrized by the values f(x, s) on
a generating set of second arguments, which keeps the kernel computation
small even when |H| is large relative to |N|.
"""

from __future__ import annotations

from collections import deque
from typing import Optional, Sequence

import numpy as np

from . import config
from .abelian import (Matrix, Vector, mat_identity, mat_mul, mat_eq, mat_vec,
                      vec_add, vec_reduce, vec_sub)
from .errors import BoundExceeded, InputError, NotACocycle, ParentMismatch
from .groups import FiniteGroup, GroupAutomorphism, generating_set
from .intlin import TriangularLattice, kernel_order

__all__ = [
    "OneCochain",
    "TwoCochain",
    "CohomologyGroup",
    "CohomologyClass",
    "validate_action",
    "trivial_action",
    "act",
    "is_two_cocycle",
    "two_cocycle_defect",
    "coboundary_of",
    "cohomology_group",
    "coboundary_solve",
    "class_eq",
]

Action = Optional[tuple[Matrix, ...]]


def trivial_action(group: FiniteGroup, moduli: Sequence[int]) -> tuple[Matrix, ...]:
    return (mat_identity(len(moduli)),) * group.order


def validate_action(group: FiniteGroup, moduli: Sequence[int], action) -> None:
    """Check an H-indexed matrix family is a well-defined right action."""
    if action is None:
        return
    h = group.order
    k = len(moduli)
    if len(action) != h:
        raise InputError(f"expected {h} action matrices, got {len(action)}")
    for x, M in enumerate(action):
        if len(M) != k or any(len(row) != k for row in M):
            raise InputError(f"action matrix {x} is not {k}x{k}")
        for i in range(k):
            for j in range(k):
                if (M[i][j] * moduli[j]) % moduli[i]:
                    raise InputError(
                        f"action matrix {x} entry ({i},{j}) is not defined "
                        f"on Z/{moduli[j]} -> Z/{moduli[i]}")
    if not mat_eq(action[0], mat_identity(k), moduli):
        raise InputError("action at the identity must be the identity matrix")
    for x in range(h):
        for y in range(h):
            # composition convention for a right action
            if not mat_eq(action[group.mul(x, y)],
                          mat_mul(action[y], action[x], moduli), moduli):
                raise InputError(f"action is not multiplicative at ({x},{y})")


def act(action: Action, x: int, v: Vector, moduli: Sequence[int]) -> Vector:
    if action is None:
        return vec_reduce(v, moduli)
    return mat_vec(action[x], v, moduli)


class OneCochain:
    """Normalized map H -> N in coordinates; values(identity) = 0."""

    __slots__ = ("group", "moduli", "values")

    def __init__(self, group: FiniteGroup, moduli: Sequence[int], values):
        self.group = group
        self.moduli = tuple(moduli)
        vals = tuple(vec_reduce(v, self.moduli) for v in values)
        if len(vals) != group.order:
            raise InputError(f"expected {group.order} values, got {len(vals)}")
        if any(vals[0]):
            raise InputError("cochain must vanish at the identity")
        self.values = vals

    @classmethod
    def zero(cls, group: FiniteGroup, moduli: Sequence[int]) -> "OneCochain":
        z = (0,) * len(moduli)
        return cls(group, moduli, (z,) * group.order)

    def __call__(self, x: int) -> Vector:
        return self.values[x]

    def __eq__(self, other) -> bool:
        return (isinstance(other, OneCochain) and self.group is other.group
                and self.moduli == other.moduli and self.values == other.values)

    def __hash__(self):
        return hash((id(self.group), self.moduli, self.values))

    def __repr__(self) -> str:
        return f"OneCochain({list(self.values)})"

    def _binop(self, other: "OneCochain", op) -> "OneCochain":
        if not isinstance(other, OneCochain) or other.group is not self.group \
                or other.moduli != self.moduli:
            raise ParentMismatch("cochains live over different data")
        vals = tuple(op(a, b, self.moduli) for a, b in zip(self.values, other.values))
        return OneCochain(self.group, self.moduli, vals)

    def __add__(self, other):
        return self._binop(other, vec_add)

    def __sub__(self, other):
        return self._binop(other, vec_sub)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values)

    def to_json(self) -> dict:
        values = {str(x): list(v) for x, v in enumerate(self.values) if any(v)}
        return {"moduli": list(self.moduli), "values": values}

    @classmethod
    def from_json(cls, group: FiniteGroup, data: dict) -> "OneCochain":
        moduli, values = _parse_cochain_json(group, data, arity=1)
        vals = [(0,) * len(moduli)] * group.order
        for key, vec in values.items():
            vals[key[0]] = vec
        return cls(group, moduli, vals)


class TwoCochain:
    """Normalized map H x H -> N in coordinates; vanishes when either slot is 1."""

    __slots__ = ("group", "moduli", "values")

    def __init__(self, group: FiniteGroup, moduli: Sequence[int], values):
        self.group = group
        self.moduli = tuple(moduli)
        vals = tuple(tuple(vec_reduce(v, self.moduli) for v in row) for row in values)
        h = group.order
        if len(vals) != h or any(len(row) != h for row in vals):
            raise InputError(f"expected {h}x{h} values")
        zero = (0,) * len(self.moduli)
        if any(vals[0][y] != zero for y in range(h)) or \
                any(vals[x][0] != zero for x in range(h)):
            raise InputError("cochain must vanish when either argument is the identity")
        self.values = vals

    @classmethod
    def zero(cls, group: FiniteGroup, moduli: Sequence[int]) -> "TwoCochain":
        z = (0,) * len(moduli)
        row = (z,) * group.order
        return cls(group, moduli, (row,) * group.order)

    @classmethod
    def from_function(cls, group: FiniteGroup, moduli: Sequence[int], fn) -> "TwoCochain":
        h = group.order
        return cls(group, moduli, [[fn(x, y) for y in range(h)] for x in range(h)])

    def __call__(self, x: int, y: int) -> Vector:
        return self.values[x][y]

    def __eq__(self, other) -> bool:
        return (isinstance(other, TwoCochain) and self.group is other.group
                and self.moduli == other.moduli and self.values == other.values)

    def __hash__(self):
        return hash((id(self.group), self.moduli, self.values))

    def __repr__(self) -> str:
        nonzero = sum(1 for row in self.values for v in row if any(v))
        return f"TwoCochain(<{nonzero} nonzero values>)"

    def _binop(self, other: "TwoCochain", op) -> "TwoCochain":
        if not isinstance(other, TwoCochain) or other.group is not self.group \
                or other.moduli != self.moduli:
            raise ParentMismatch("cochains live over different data")
        vals = tuple(
            tuple(op(a, b, self.moduli) for a, b in zip(ra, rb))
            for ra, rb in zip(self.values, other.values))
        return TwoCochain(self.group, self.moduli, vals)

    def __add__(self, other):
        return self._binop(other, vec_add)

    def __sub__(self, other):
        return self._binop(other, vec_sub)

    def is_zero(self) -> bool:
        return not any(any(v) for row in self.values for v in row)

    def to_json(self) -> dict:
        values = {
            f"{x},{y}": list(v)
            for x, row in enumerate(self.values)
            for y, v in enumerate(row) if any(v)
        }
        return {"moduli": list(self.moduli), "values": values}

    @classmethod
    def from_json(cls, group: FiniteGroup, data: dict) -> "TwoCochain":
        moduli, values = _parse_cochain_json(group, data, arity=2)
        h = group.order
        zero = (0,) * len(moduli)
        vals = [[zero] * h for _ in range(h)]
        for key, vec in values.items():
            vals[key[0]][key[1]] = vec
        return cls(group, moduli, vals)


def _parse_cochain_json(group: FiniteGroup, data: dict, arity: int):
    if not isinstance(data, dict) or "moduli" not in data:
        raise InputError("cochain JSON needs 'moduli' and 'values'")
    moduli = data["moduli"]
    if not isinstance(moduli, list) or not all(
            isinstance(m, int) and m >= 1 for m in moduli):
        raise InputError("'moduli' must be a list of positive integers")
    raw = data.get("values", {})
    if not isinstance(raw, dict):
        raise InputError("'values' must be an object")
    out = {}
    for key, vec in raw.items():
        parts = str(key).split(",")
        if len(parts) != arity:
            raise InputError(f"bad cochain key {key!r}: expected {arity} indices")
        try:
            idx = tuple(int(p) for p in parts)
        except ValueError:
            raise InputError(f"bad cochain key {key!r}") from None
        if any(i < 0 or i >= group.order for i in idx):
            raise InputError(f"cochain key {key!r} out of range for |H|={group.order}")
        if not isinstance(vec, list) or len(vec) != len(moduli) or not all(
                isinstance(e, int) for e in vec):
            raise InputError(f"cochain value at {key!r} must be {len(moduli)} integers")
        out[idx] = tuple(vec)
    return tuple(moduli), out


def two_cocycle_defect(f: TwoCochain, action: Action):
    """First (x, y, z) where the cocycle identity fails, or None."""
    G = f.group
    m = f.moduli
    h = G.order
    mul = G.mul
    for x in range(1, h):
        for y in range(1, h):
            fxy = f.values[x][y]
            xy = mul(x, y)
            for z in range(1, h):
                lhs = vec_add(f.values[xy][z], act(action, z, fxy, m), m)
                rhs = vec_add(f.values[x][mul(y, z)], f.values[y][z], m)
                if lhs != rhs:
                    return (x, y, z)
    return None


def is_two_cocycle(f: TwoCochain, action: Action) -> bool:
    """True iff f(xy,z) + A(z) f(x,y) = f(x,yz) + f(y,z) for all x, y, z."""
    return two_cocycle_defect(f, action) is None


def coboundary_of(chi: OneCochain, action: Action,
                  phi: Optional[GroupAutomorphism] = None) -> TwoCochain:
    """The 2-cocycle (x,y) -> chi(xy) - chi(y) - A((phi)y) chi(x).

    With phi omitted this is the ordinary coboundary; the twisted variant
    appears when comparing factor sets across an automorphism of H.
    """
    G = chi.group
    m = chi.moduli
    mul = G.mul

    def value(x: int, y: int) -> Vector:
        ty = y if phi is None else phi(y)
        return vec_sub(vec_sub(chi.values[mul(x, y)], chi.values[y], m),
                       act(action, ty, chi.values[x], m), m)

    return TwoCochain.from_function(G, m, value)


class CohomologyClass:
    """A 2-cocycle up to coboundaries; identity is decided constructively."""

    __slots__ = ("parent", "representative", "key")

    def __init__(self, parent: "CohomologyGroup", representative: TwoCochain,
                 key: tuple[int, ...]):
        self.parent = parent
        self.representative = representative
        self.key = key

    @property
    def is_trivial(self) -> bool:
        return not any(self.key)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CohomologyClass)
                and self.parent is other.parent and self.key == other.key)

    def __hash__(self):
        return hash((id(self.parent), self.key))

    def __repr__(self) -> str:
        return f"CohomologyClass({'trivial' if self.is_trivial else 'nontrivial'})"


def class_eq(a: CohomologyClass, b: CohomologyClass) -> bool:
    if not isinstance(a, CohomologyClass) or not isinstance(b, CohomologyClass):
        raise ParentMismatch("expected cohomology classes")
    if a.parent is not b.parent:
        raise ParentMismatch("classes belong to different cohomology groups")
    return a.key == b.key


class CohomologyGroup:
    """Z^2, B^2 and H^2 of H with given coefficients, with witness recovery.

    Immutable after construction: the coboundary lattice and all three
    orders are computed eagerly, queries are pure.
    """

    def __init__(self, group: FiniteGroup, coeffs, action: Action = None):
        self.group = group
        self.coeffs = coeffs
        moduli = getattr(coeffs, "invariant_factors", None)
        self.moduli = tuple(moduli if moduli is not None else coeffs)
        validate_action(group, self.moduli, action)
        self.action = tuple(action) if action is not None else None
        h = group.order
        k = len(self.moduli)
        unknowns = (h - 1) * (h - 1) * k
        if unknowns > config.DEFAULT_MAX_UNKNOWNS:
            raise BoundExceeded(
                f"cocycle system has {unknowns} unknowns "
                f"(bound {config.DEFAULT_MAX_UNKNOWNS})")
        self._h = h
        self._k = k
        # ambient slots: pairs (x, y), x, y != 1, each k coordinates
        self._ambient_moduli = tuple(self.moduli[c]
                                     for _ in range((h - 1) * (h - 1))
                                     for c in range(k))
        self._lattice = TriangularLattice(self._ambient_moduli,
                                          expr_len=(h - 1) * k)
        self._chi_basis: list[OneCochain] = []
        zero = (0,) * k
        for x in range(1, h):
            for c in range(k):
                vals = [zero] * h
                vals[x] = tuple(1 if i == c else 0 for i in range(k))
                chi = OneCochain(group, self.moduli, vals)
                self._chi_basis.append(chi)
                delta = coboundary_of(chi, self.action)
                self._lattice.insert(self.vector_of(delta),
                                     _unit(len(self._chi_basis) - 1, (h - 1) * k))
        self.b2_order = self._lattice.span_order()
        self.z2_order = self._z2_order()
        if self.z2_order % self.b2_order:
            raise AssertionError("coboundary count must divide cocycle count")
        self.h2_order = self.z2_order // self.b2_order

    def __repr__(self) -> str:
        return (f"CohomologyGroup(|Z2|={self.z2_order}, |B2|={self.b2_order}, "
                f"|H2|={self.h2_order})")

    def vector_of(self, f: TwoCochain) -> list[int]:
        """Flatten a cochain over the nonidentity pair slots."""
        if f.group is not self.group or f.moduli != self.moduli:
            raise ParentMismatch("cochain does not live over this group's data")
        out = []
        for x in range(1, self._h):
            row = f.values[x]
            for y in range(1, self._h):
                out.extend(row[y])
        return out

    def cochain_of_vector(self, vec: Sequence[int]) -> TwoCochain:
        h, k = self._h, self._k
        zero = (0,) * k
        vals = [[zero] * h for _ in range(h)]
        pos = 0
        for x in range(1, h):
            for y in range(1, h):
                vals[x][y] = tuple(vec[pos:pos + k])
                pos += k
        return TwoCochain(self.group, self.moduli, vals)

    def coboundary_solve(self, f: TwoCochain) -> Optional[OneCochain]:
        """chi with coboundary_of(chi) = f, or None when f is not a coboundary."""
        if two_cocycle_defect(f, self.action) is not None:
            raise NotACocycle("coboundary_solve requires a 2-cocycle")
        expr = self._lattice.reduce(self.vector_of(f))
        if expr is None:
            return None
        h, k = self._h, self._k
        zero = (0,) * k
        vals = [zero] * h
        for x in range(1, h):
            base = (x - 1) * k
            vals[x] = tuple(expr[base + c] % self.moduli[c] for c in range(k))
        chi = OneCochain(self.group, self.moduli, vals)
        if coboundary_of(chi, self.action) != f:
            raise AssertionError("recovered witness does not reproduce the cocycle")
        return chi

    def class_of(self, f: TwoCochain) -> CohomologyClass:
        defect = two_cocycle_defect(f, self.action)
        if defect is not None:
            raise NotACocycle(f"cocycle identity fails at {defect}")
        key = self._lattice.remainder(self.vector_of(f))
        return CohomologyClass(self, f, key)

    def zero_class(self) -> CohomologyClass:
        return self.class_of(TwoCochain.zero(self.group, self.moduli))

    def _z2_order(self) -> int:
        h, k = self._h, self._k
        if h == 1 or k == 0:
            return 1
        G = self.group
        mul = G.mul
        d = np.array(self.moduli, dtype=np.int64)
        gens = generating_set(G)
        ns = len(gens)
        r = (h - 1) * ns * k
        gen_pos = {s: i for i, s in enumerate(gens)}
        if self.action is None:
            mats = [np.eye(k, dtype=np.int64)] * h
        else:
            mats = [np.array(M, dtype=np.int64) for M in self.action]

        # express every f(x, y) linearly in the slice values f(x, s), s a
        # generator, by peeling the second argument along a breadth-first
        # spanning tree: f(x, s w) = f(x s, w) + A(w) f(x, s) - f(s, w)
        dmod = d.reshape(1, k, 1)
        E: dict[int, np.ndarray] = {0: np.zeros((h, k, r), dtype=np.int64)}
        queue = deque([0])
        while queue:
            w = queue.popleft()
            for si, s in enumerate(gens):
                y = mul(s, w)
                if y in E:
                    continue
                if w == 0:
                    Ey = np.zeros((h, k, r), dtype=np.int64)
                    for x in range(1, h):
                        for c in range(k):
                            Ey[x, c, ((x - 1) * ns + si) * k + c] = 1
                else:
                    perm = np.fromiter((mul(x, s) for x in range(h)),
                                       dtype=np.int64, count=h)
                    Aw = mats[w]
                    Ey = (E[w][perm]
                          + np.einsum("ci,xir->xcr", Aw, E[s])
                          - E[w][s][None, :, :]) % dmod
                E[y] = Ey
                queue.append(y)
        if len(E) != h:
            raise AssertionError("generating set does not reach the whole group")

        col_moduli = np.tile(d, (h - 1) * ns)
        rows: list[np.ndarray] = []
        row_moduli: list[int] = []
        seen: set[bytes] = set()
        flat_mod = np.tile(d, h - 1)
        for y in range(1, h):
            Ey = E[y]
            for z in range(1, h):
                Ez = E[z]
                yz = mul(y, z)
                perm = np.fromiter((mul(x, y) for x in range(h)),
                                   dtype=np.int64, count=h)
                block = (Ez[perm]
                         + np.einsum("ci,xir->xcr", mats[z], Ey)
                         - E[yz]
                         - Ez[y][None, :, :])[1:]
                flat = block.reshape((h - 1) * k, r) % flat_mod[:, None]
                for i in range(flat.shape[0]):
                    row = flat[i]
                    if not row.any():
                        continue
                    key = row.tobytes() + bytes([i % k])
                    if key in seen:
                        continue
                    seen.add(key)
                    rows.append(row)
                    row_moduli.append(int(flat_mod[i]))
        domain = 1
        for m in col_moduli:
            domain *= int(m)
        if not rows:
            return domain
        return kernel_order(np.stack(rows), row_moduli, col_moduli)


def _unit(i: int, n: int) -> list[int]:
    e = [0] * n
    e[i] = 1
    return e


def cohomology_group(group: FiniteGroup, coeffs, action: Action = None) -> CohomologyGroup:
    """Z^2 / B^2 / H^2 orders plus a constructive coboundary solver."""
    return CohomologyGroup(group, coeffs, action)


def coboundary_solve(f: TwoCochain, cg: CohomologyGroup) -> Optional[OneCochain]:
    return cg.coboundary_solve(f)
