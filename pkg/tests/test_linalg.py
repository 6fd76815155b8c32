import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zsmagic.linalg import egcd, howell_form, kernel_basis, lead_column, module_size, normalizing_unit
from zsmagic.solver import incidence_matrix, parametrize
from zsmagic.groups import GroupSpec

MODULI = [2, 3, 4, 6, 8, 9, 12]


def span(rows, n, cols):
    out = {tuple([0] * cols)}
    for r in rows:
        r = np.asarray(r, dtype=np.int64)
        new = set(out)
        for v in out:
            for t in range(1, n):
                new.add(tuple((np.asarray(v) + t * r) % n))
        out = new
    return out


def unique_combinations(basis, n):
    cols = basis.shape[1]
    ranges = [range(n // int(r[lead_column(r)])) for r in basis]
    seen = []
    for ts in itertools.product(*ranges):
        v = np.zeros(cols, dtype=np.int64)
        for t, r in zip(ts, basis):
            v = (v + t * r) % n
        seen.append(tuple(int(x) for x in v))
    return seen


@st.composite
def matrices(draw):
    n = draw(st.sampled_from(MODULI))
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    m = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return n, np.array(m, dtype=np.int64)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_egcd(a, b):
    g, s, t = egcd(a, b)
    assert s * a + t * b == g


@pytest.mark.parametrize("n", MODULI)
def test_normalizing_unit(n):
    import math

    for a in range(n):
        u = normalizing_unit(a, n)
        assert math.gcd(u, n) == 1
        assert (u * a) % n == (math.gcd(a, n) % n if a else 0)


@given(matrices())
def test_howell_form_spans_same_module(data):
    n, m = data
    h = howell_form(m, n)
    assert span(h, n, m.shape[1]) == span(m, n, m.shape[1])
    leads = [lead_column(r) for r in h]
    assert leads == sorted(leads) and len(set(leads)) == len(leads)
    for r in h:
        assert n % int(r[lead_column(r)]) == 0


@given(matrices())
def test_kernel_enumerates_each_solution_once(data):
    n, m = data
    cols = m.shape[1]
    brute = {x for x in itertools.product(range(n), repeat=cols)
             if not ((m @ np.array(x)) % n).any()}
    basis = kernel_basis(m, n)
    combos = unique_combinations(basis, n)
    assert len(combos) == len(set(combos)) == module_size(basis, n)
    assert set(combos) == brute


def test_kernel_of_triangle_incidence():
    from conftest import complete

    inc = incidence_matrix(complete(3))
    # all-equal labels a with 2a = 0
    assert module_size(kernel_basis(inc, 4), 4) == 2
    assert module_size(kernel_basis(inc, 3), 3) == 1


def test_parametrization_counts_solutions(fx):
    g = fx("K4")
    for spec in ("Z4", "Z2xZ3", "Z2^2"):
        group = GroupSpec.parse(spec)
        par = parametrize(g, group)
        inc = incidence_matrix(g)
        want = 1
        for n in group.moduli:
            want *= module_size(kernel_basis(inc, n), n)
        got = 1
        for k in par.orders:
            got *= k
        assert got == want
