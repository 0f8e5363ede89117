"""Exact linear algebra layer, checked against closure enumeration."""

import itertools
import random
from math import gcd, prod

import pytest

from extlift.intlin import TriangularLattice, ext_gcd, kernel_order


def test_ext_gcd_bezout():
    cases = [(0, 0), (0, 5), (5, 0), (12, 18), (-12, 18), (12, -18),
             (-7, -21), (1, 1), (17, 1), (2 ** 70, 3 ** 45)]
    rng = random.Random(1)
    cases += [(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(-10 ** 6, 10 ** 6))
              for _ in range(200)]
    for a, b in cases:
        g, x, y = ext_gcd(a, b)
        assert g == gcd(a, b)
        assert a * x + b * y == g
        assert g >= 0


def span_by_closure(moduli, gens):
    """All elements of prod Z/m_i generated by gens, by plain BFS."""
    def red(v):
        return tuple(a % m for a, m in zip(v, moduli))

    seen = {tuple([0] * len(moduli))}
    frontier = [tuple([0] * len(moduli))]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = red([a + b for a, b in zip(cur, g)])
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


@pytest.mark.parametrize("moduli", [(2,), (6,), (2, 2), (2, 4), (4, 6), (3, 3, 9)])
def test_lattice_matches_closure(moduli):
    rng = random.Random(42 + len(moduli))
    for _ in range(25):
        gens = [tuple(rng.randrange(0, m) for m in moduli)
                for _ in range(rng.randrange(0, 4))]
        lat = TriangularLattice(moduli, expr_len=len(gens))
        for i, g in enumerate(gens):
            lat.insert(g, [1 if j == i else 0 for j in range(len(gens))])
        span = span_by_closure(moduli, gens)
        assert lat.span_order() == len(span)
        for vec in itertools.product(*[range(m) for m in moduli]):
            assert lat.contains(vec) == (vec in span)


def test_reduce_recovers_generator_expression():
    moduli = (4, 6, 8)
    rng = random.Random(9)
    gens = [tuple(rng.randrange(0, m) for m in moduli) for _ in range(4)]
    lat = TriangularLattice(moduli, expr_len=4)
    for i, g in enumerate(gens):
        lat.insert(g, [1 if j == i else 0 for j in range(4)])
    for _ in range(50):
        coeffs = [rng.randrange(-5, 6) for _ in range(4)]
        vec = [sum(c * g[j] for c, g in zip(coeffs, gens)) % m
               for j, m in enumerate(moduli)]
        expr = lat.reduce(vec)
        assert expr is not None
        rebuilt = [sum(e * g[j] for e, g in zip(expr, gens)) % m
                   for j, m in enumerate(moduli)]
        assert rebuilt == list(vec)


def test_remainder_is_canonical_on_cosets():
    moduli = (4, 4)
    lat = TriangularLattice(moduli)
    lat.insert((2, 1))
    span = span_by_closure(moduli, [(2, 1)])
    reps = {}
    for vec in itertools.product(range(4), range(4)):
        # coset key: the sorted orbit vec + span
        coset = frozenset(tuple((a + b) % 4 for a, b in zip(vec, s)) for s in span)
        r = lat.remainder(vec)
        assert tuple(a % 4 for a in r) in coset or lat.contains(
            [a - b for a, b in zip(vec, r)])
        if coset in reps:
            assert reps[coset] == r
        else:
            reps[coset] = r
    assert len(reps) == 16 // len(span)


def test_remainder_zero_iff_member():
    moduli = (2, 4, 3)
    lat = TriangularLattice(moduli)
    lat.insert((1, 2, 0))
    lat.insert((0, 2, 2))
    for vec in itertools.product(range(2), range(4), range(3)):
        assert (lat.remainder(vec) == (0,) * 3) == lat.contains(vec)


def test_insert_is_idempotent_on_det():
    lat = TriangularLattice((8, 8))
    lat.insert((2, 3))
    d = lat.det()
    lat.insert((2, 3))
    assert lat.det() == d


def test_lattice_input_validation():
    with pytest.raises(ValueError):
        TriangularLattice((0, 2))
    lat = TriangularLattice((2, 2))
    with pytest.raises(ValueError):
        lat.insert((1,))
    with pytest.raises(ValueError):
        lat.reduce((1, 0, 0))


def brute_kernel(rows, row_moduli, col_moduli):
    count = 0
    for v in itertools.product(*[range(m) for m in col_moduli]):
        if all(sum(r * x for r, x in zip(row, v)) % m == 0
               for row, m in zip(rows, row_moduli)):
            count += 1
    return count


def test_kernel_order_matches_enumeration():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randrange(1, 4)
        col = [rng.choice([2, 3, 4, 6]) for _ in range(k)]
        s = rng.randrange(1, 4)
        row_m = [rng.choice([2, 3, 4, 6]) for _ in range(s)]
        rows = []
        for m in row_m:
            # keep the system well defined: entry * col_modulus = 0 mod m
            row = []
            for cm in col:
                step = m // gcd(m, cm)
                row.append(step * rng.randrange(0, max(1, m // step)))
            rows.append(row)
        assert kernel_order(rows, row_m, col) == brute_kernel(rows, row_m, col)


def test_kernel_order_trivial_cases():
    assert kernel_order([], [], []) == 1
    assert kernel_order([[0, 0]], [5], [5, 5]) == 25
    assert kernel_order([[1]], [7], [7]) == 1
    total = prod([4, 6])
    assert kernel_order([[2, 0], [0, 3]], [4, 6], [4, 6]) == total // (2 * 2)
