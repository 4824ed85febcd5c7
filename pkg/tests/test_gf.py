import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rsrepair import linalg, poly
from rsrepair.gf import (
    FieldError, RankError, build_field, default_basis, dual_basis, enumerate_bases, field_from_descriptor,
    from_vector, is_irreducible, ordered_basis_count, random_basis, rank_of, subspace_polynomial,
    trace_recover, vector_rep, w_vector,
)
from rsrepair.subspaces import span

FIELDS = [(2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 2), (2, 2, 2), (5, 1, 2)]


def slow_trace(fld, a):
    """Sum of the q-power conjugates, by repeated multiplication."""
    acc, x = 0, a
    for _ in range(fld.ell):
        acc = fld.add(acc, x)
        y = 1
        for _ in range(fld.q):
            y = fld.mul(y, x)
        x = y
    return acc


def has_root(mod, p):
    return any(sum(c * x ** i for i, c in enumerate(mod)) % p == 0 for x in range(p))


# -- construction -------------------------------------------------------------------

def test_f4_default_modulus(f4):
    assert f4.modulus == (1, 1, 1)
    assert f4.size == 4 and f4.q == 2 and f4.ell == 2
    xi = f4.primitive
    assert xi == 2
    assert f4.mul(xi, xi) == 3  # xi^2 = xi + 1


def test_f8_modulus_has_no_roots(f8):
    assert f8.modulus == (1, 1, 0, 1)
    assert not has_root(f8.modulus, 2)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        build_field(2, 1, 2, modulus=[1, 0, 1])


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        build_field(4, 1, 2)


def test_irreducible_against_root_oracle_for_cubics():
    for tail in itertools.product(range(2), repeat=3):
        mod = list(tail) + [1]
        assert is_irreducible(mod, 2) == (not has_root(mod, 2))


@pytest.mark.parametrize("p,d,ell", FIELDS)
def test_log_exp_and_mul_against_raw(p, d, ell):
    fld = build_field(p, d, ell)
    # primitive element generates all of E*
    seen = {fld.exp(e) for e in range(fld.size - 1)}
    assert seen == set(fld.nonzero())
    for a in fld.nonzero():
        assert fld.mul(a, fld.inv(a)) == 1


@pytest.mark.parametrize("p,d,ell", FIELDS)
def test_subfield_is_fixed_field(p, d, ell):
    fld = build_field(p, d, ell)
    fixed = sorted(a for a in fld.elements() if fld.pow(a, fld.q) == a)
    assert tuple(fixed) == fld.subfield_elements()
    assert len(fixed) == fld.q


def test_descriptor_round_trip(f9):
    assert field_from_descriptor(f9.descriptor()) == f9
    assert f9.primitive == 4


# -- trace ------------------------------------------------------------------------

def test_trace_f4(f4):
    xi = f4.primitive
    assert f4.trace(0) == 0
    assert f4.trace(xi) == 1
    assert f4.trace(1) == 0


@pytest.mark.parametrize("p,d,ell", FIELDS)
def test_trace_matches_conjugate_sum(p, d, ell):
    fld = build_field(p, d, ell)
    for a in fld.elements():
        t = fld.trace(a)
        assert t == slow_trace(fld, a)
        assert fld.in_subfield(t)


@pytest.mark.parametrize("p,d,ell", FIELDS)
def test_trace_kernel_size(p, d, ell):
    fld = build_field(p, d, ell)
    assert sum(1 for a in fld.elements() if fld.trace(a) == 0) == fld.size // fld.q


# -- bases -----------------------------------------------------------------------------

def test_vector_rep_f4(f4):
    xi = f4.primitive
    B = dual_basis(f4, (1, xi))
    assert vector_rep(f4, B, 0) == (0, 0)
    assert vector_rep(f4, B, xi ^ 1) == (1, 1)


def test_dual_basis_f4(f4):
    xi = f4.primitive
    xi2 = f4.mul(xi, xi)
    assert dual_basis(f4, (1, xi)).dual == (xi ^ 1, 1)
    assert dual_basis(f4, (xi, xi2)).dual == (xi, xi2)
    with pytest.raises(RankError) as e:
        dual_basis(f4, (1, 1))
    assert e.value.rank == 1 and e.value.index == 1


def test_trace_recover_f4(f4):
    xi = f4.primitive
    B = dual_basis(f4, (1, xi))
    assert trace_recover(f4, B, (0, 0)) == 0
    traces = (f4.trace(xi), f4.trace(f4.mul(xi, xi)))
    assert traces == (1, 1)
    assert trace_recover(f4, B, traces) == xi


def test_w_vector_f4(f4):
    B = dual_basis(f4, (1, f4.primitive))
    assert w_vector(f4, B, 0) == (0, 0)
    assert w_vector(f4, B, 1) == (0, 1)


@pytest.mark.parametrize("p,d,ell", [(2, 1, 2), (2, 1, 3), (3, 1, 2)])
def test_dual_basis_brute_force(p, d, ell):
    """Each dual element is the unique a with Tr(b_i a) = delta_ij."""
    fld = build_field(p, d, ell)
    for elems in itertools.islice(enumerate_bases(fld, ordered=True), 40):
        B = dual_basis(fld, elems)
        for j in range(ell):
            want = tuple(1 if i == j else 0 for i in range(ell))
            hits = [a for a in fld.elements()
                    if tuple(fld.trace(fld.mul(b, a)) for b in elems) == want]
            assert hits == [B.dual[j]]
        assert dual_basis(fld, B.dual).dual == elems


@pytest.mark.parametrize("p,d,ell", FIELDS)
def test_round_trips_every_element(p, d, ell):
    fld = build_field(p, d, ell)
    B = random_basis(fld, random.Random(p * 100 + ell))
    for a in fld.elements():
        v = vector_rep(fld, B, a)
        assert from_vector(fld, B, v) == a
        assert trace_recover(fld, B, [fld.trace(fld.mul(b, a)) for b in B.elems]) == a


def test_ordered_basis_counts(f4, f8):
    assert ordered_basis_count(f4) == 6
    assert ordered_basis_count(f8) == 168
    assert sum(1 for _ in enumerate_bases(f8, ordered=True)) == 168


@pytest.mark.parametrize("p,d,ell", [(2, 1, 3), (3, 1, 2), (2, 1, 4)])
def test_rank_of_against_span_size(p, d, ell):
    """F-rank equals log_q of the brute-force span size."""
    fld = build_field(p, d, ell)
    rng = random.Random(7)
    F = fld.subfield_elements()
    for _ in range(30):
        elems = [rng.randrange(fld.size) for _ in range(rng.randrange(1, ell + 2))]
        sp = {0}
        for a in elems:
            sp = {fld.add(x, fld.mul(c, a)) for x in sp for c in F}
        r = rank_of(fld, elems)
        assert fld.q ** r == len(sp)


# -- subspace polynomials ---------------------------------------------------------

def test_subspace_polynomial_examples(f4, f8):
    assert subspace_polynomial(f4, [0]) == [0, 1]
    L = subspace_polynomial(f4, [0, 1])
    assert L == [0, 1, 1]
    assert {poly.evaluate(f4, L, a) for a in f4.elements()} == {0, 1}
    L8 = subspace_polynomial(f8, span(f8, [1]))
    assert span(f8, [poly.evaluate(f8, L8, a) for a in f8.elements()]).dim == 2


def test_subspace_polynomial_rejects_non_subspace(f4):
    with pytest.raises(ValueError):
        subspace_polynomial(f4, [0, 1, 2])


# -- properties -------------------------------------------------------------------------

F8 = build_field(2, 1, 3)
F9 = build_field(3, 1, 2)
F16 = build_field(2, 1, 4)


@given(st.sampled_from([F8, F9, F16]), st.data())
def test_field_axioms(fld, data):
    el = st.integers(0, fld.size - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))
    assert fld.add(a, fld.neg(a)) == 0
    assert fld.sub(fld.add(a, b), b) == a


@given(st.sampled_from([F8, F9, F16]), st.data())
def test_trace_is_f_linear(fld, data):
    el = st.integers(0, fld.size - 1)
    a, b = data.draw(el), data.draw(el)
    c = data.draw(st.sampled_from(fld.subfield_elements()))
    assert fld.trace(fld.add(a, fld.mul(c, b))) == fld.add(fld.trace(a), fld.mul(c, fld.trace(b)))


@given(st.data())
def test_w_vector_linear_in_gamma(data):
    fld = F8
    B = default_basis(fld)
    g1, g2 = data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7))
    lhs = w_vector(fld, B, fld.add(g1, g2))
    rhs = tuple(fld.add(x, y) for x, y in zip(w_vector(fld, B, g1), w_vector(fld, B, g2)))
    assert lhs == rhs


@settings(max_examples=50)
@given(st.sampled_from([F8, F9, F16]), st.integers(0, 2 ** 32))
def test_w_vector_gives_trace_of_product(fld, seed):
    """Tr(gamma a) = w^(gamma,B) . vector_rep(a)."""
    rng = random.Random(seed)
    B = random_basis(fld, rng)
    g, a = rng.randrange(fld.size), rng.randrange(fld.size)
    w, v = w_vector(fld, B, g), vector_rep(fld, B, a)
    assert fld.trace(fld.mul(g, a)) == fld.scale_sum(w, v)


@settings(max_examples=30)
@given(st.sampled_from([F8, F9, F16]), st.integers(0, 2 ** 32))
def test_subspace_polynomial_is_linear_with_kernel_w(fld, seed):
    rng = random.Random(seed)
    m = rng.randrange(0, fld.ell)
    W = span(fld, [rng.randrange(fld.size) for _ in range(m)])
    L = subspace_polynomial(fld, W)
    ev = {a: poly.evaluate(fld, L, a) for a in fld.elements()}
    assert {a for a, y in ev.items() if y == 0} == set(W.elements())
    a, b = rng.randrange(fld.size), rng.randrange(fld.size)
    c = rng.choice(fld.subfield_elements())
    assert ev[fld.add(a, fld.mul(c, b))] == fld.add(ev[a], fld.mul(c, ev[b]))
    assert span(fld, ev.values()).dim == fld.ell - W.dim


def test_linalg_rank_over_extension_field(f4):
    """Rank of a matrix with general E entries (no bit shortcut)."""
    xi = f4.primitive
    rows = [(1, xi), (xi, f4.mul(xi, xi))]
    assert linalg.rank(f4, rows) == 1
    assert linalg.rank(f4, [(1, xi), (1, 1)]) == 2
