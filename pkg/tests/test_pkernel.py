"""Tests for P-kernels, the bar bijection, and KLS functions.

The q-polynomial values are LaurentPoly objects read in the variable q;
monomial(1) is q.  The Kazhdan-Lusztig table of the regular module serves
as the oracle for the KLS computations.
"""

import json

import pytest

from ivhecke.coxeter import parse_system
from ivhecke.hecke import HeckeAlgebra
from ivhecke.laurent import ONE, ZERO, LaurentPoly, monomial
from ivhecke.pkernel import (
    BarMatrix,
    IncidenceFunction,
    NotParityCompatible,
    Poset,
    bar_from_kernel,
    check_grading,
    delta,
    hecke_bar_matrix,
    is_p_kernel,
    kernel_from_bar,
    kls_function,
    module_bar_matrix,
    poset_of_block,
)
from ivhecke.pkernel import _halve_exponents
from ivhecke.twisted import TwistedBlock

Q = monomial(1)  # the variable q


def chain(n):
    """A totally ordered n-element poset labeled 0..n-1."""
    return Poset(tuple(range(n)), tuple(tuple(j >= i for j in range(n)) for i in range(n)))


# ----------------------------------------------------------------------
# posets

def test_poset_validation():
    with pytest.raises(ValueError):  # not reflexive
        Poset(("x",), ((False,),))
    with pytest.raises(ValueError):  # not a linear extension
        Poset(("x", "y"), ((True, False), (True, True)))
    with pytest.raises(ValueError):  # not transitive
        Poset(
            ("x", "y", "z"),
            ((True, True, False), (False, True, True), (False, False, True)),
        )
    with pytest.raises(ValueError):  # shape mismatch
        Poset(("x", "y"), ((True, True),))


def test_poset_json_roundtrip():
    p = chain(3)
    again = Poset.from_json(json.loads(p.to_json()))
    assert again == p
    # tuple labels (words) survive the list round trip
    blk = TwistedBlock(parse_system("A2"), (0, 1))
    bp = poset_of_block(blk)
    again = Poset.from_json(json.loads(bp.to_json()))
    assert again == bp


def test_poset_pairs():
    p = chain(3)
    assert p.pairs() == [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2)]


def test_check_grading():
    p = chain(2)
    assert check_grading(p, [0, 5]) == (0, 5)
    with pytest.raises(ValueError):
        check_grading(p, [1, 1])
    with pytest.raises(ValueError):
        check_grading(p, [0])


# ----------------------------------------------------------------------
# incidence algebra

def test_incidence_validation():
    p = chain(2)
    with pytest.raises(ValueError):  # off-order pair
        IncidenceFunction(p, {(1, 0): ONE})
    with pytest.raises(ValueError):  # not a polynomial in q
        IncidenceFunction(p, {(0, 1): monomial(-1)})
    f = IncidenceFunction(p, {(0, 0): ONE, (0, 1): ZERO})
    assert (0, 1) not in f.values  # zeros are dropped
    assert f.value(0, 1) == ZERO


def test_convolution_unit_law():
    p = chain(3)
    f = IncidenceFunction(
        p, {(i, i): ONE for i in range(3)} | {(0, 1): Q, (1, 2): Q + 1, (0, 2): Q**2}
    )
    d = delta(p)
    assert f.convolve(d).values == f.values
    assert d.convolve(f).values == f.values
    assert d.convolve(d).values == d.values


def test_convolution_two_chain():
    p = chain(2)
    f = IncidenceFunction(p, {(0, 0): ONE, (1, 1): ONE, (0, 1): Q})
    assert f.convolve(f).value(0, 1) == 2 * Q


def test_convolution_associative():
    p = chain(3)
    f = IncidenceFunction(p, {(0, 0): ONE, (1, 1): 2 * ONE, (2, 2): ONE, (0, 1): Q})
    g = IncidenceFunction(p, {(i, i): ONE for i in range(3)} | {(1, 2): Q + 3})
    h = IncidenceFunction(p, {(i, i): Q for i in range(3)} | {(0, 2): ONE})
    assert (f * g) * h == f * (g * h)


def test_convolution_poset_mismatch():
    f = IncidenceFunction(chain(2), {(0, 0): ONE})
    g = IncidenceFunction(chain(3), {(0, 0): ONE})
    with pytest.raises(ValueError):
        f.convolve(g)


def test_incidence_json_roundtrip():
    p = chain(2)
    f = IncidenceFunction(p, {(0, 0): ONE, (0, 1): Q - 1, (1, 1): ONE})
    again = IncidenceFunction.from_json(json.loads(f.to_json()))
    assert again == f


# ----------------------------------------------------------------------
# the bijection on a hand-checked example

def test_two_chain_kernel_and_bar():
    # K = R-kernel of A1 in the abstract: diag 1, edge q - 1, gap 1
    p = chain(2)
    K = IncidenceFunction(p, {(0, 0): ONE, (1, 1): ONE, (0, 1): Q - 1})
    bm = bar_from_kernel(K, (0, 1))
    # v^1 * bar(v^2 - 1) = v(v^-2 - 1) = v^-1 - v
    assert bm.entry(0, 1) == monomial(-1) - monomial(1)
    assert bm.is_involution()
    assert is_p_kernel(K, (0, 1))
    assert kernel_from_bar(bm) == K
    gamma = kls_function(K, (0, 1))
    assert gamma.value(0, 1) == ONE and gamma.value(0, 0) == ONE


def test_two_chain_non_kernel():
    p = chain(2)
    K = IncidenceFunction(p, {(0, 0): ONE, (1, 1): ONE, (0, 1): ONE})
    assert not is_p_kernel(K, (0, 1))


def test_parity_failure_witness():
    # entry v^{r}+v^{r-1} mixes parities after the shift
    p = chain(2)
    bm = BarMatrix(
        p, (0, 2), {(0, 0): ONE, (1, 1): ONE, (0, 1): monomial(2) + monomial(1)}
    )
    with pytest.raises(NotParityCompatible) as exc:
        kernel_from_bar(bm)
    assert exc.value.witness["pair"] == [0, 1]
    # entry with exponent above the shift is outside the image too
    bm = BarMatrix(p, (0, 2), {(0, 1): monomial(4)})
    with pytest.raises(NotParityCompatible):
        kernel_from_bar(bm)


# ----------------------------------------------------------------------
# Hecke bridges

def test_hecke_kernel_a1():
    bm = hecke_bar_matrix(parse_system("A1"))
    K = kernel_from_bar(bm)
    assert K.value(0, 1) == Q - 1  # the R-polynomial of the edge
    assert K.value(0, 0) == ONE and K.value(1, 1) == ONE
    assert bar_from_kernel(K, bm.grading).entries == bm.entries


def test_hecke_kernel_roundtrips():
    for name in ("A2", "B2"):
        bm = hecke_bar_matrix(parse_system(name))
        K = kernel_from_bar(bm)
        assert is_p_kernel(K, bm.grading)
        assert bar_from_kernel(K, bm.grading).entries == bm.entries


def test_kls_equals_kl_polynomials():
    for name in ("A2", "B2"):
        sysm = parse_system(name)
        bm = hecke_bar_matrix(sysm)
        gamma = kls_function(kernel_from_bar(bm), bm.grading)
        table = HeckeAlgebra(sysm).kl_table()
        assert set(gamma.values) == set(table.entries)
        for (i, j), p in table.entries.items():
            gap = len(table.elements[j]) - len(table.elements[i])
            assert gamma.value(i, j) == _halve_exponents(p * monomial(gap))


def test_kls_a2_trivial():
    bm = hecke_bar_matrix(parse_system("A2"))
    gamma = kls_function(kernel_from_bar(bm), bm.grading)
    assert all(p == ONE for p in gamma.values.values())
    assert len(gamma.values) == len(bm.poset.pairs())


def test_total_acceptability():
    # (K gamma)(x, y) = q^{r(x,y)} * bar(gamma(x, y))
    for name in ("A2", "B2"):
        bm = hecke_bar_matrix(parse_system(name))
        K = kernel_from_bar(bm)
        gamma = kls_function(K, bm.grading)
        conv = K.convolve(gamma)
        for i, j in bm.poset.pairs():
            shift = bm.grading[j] - bm.grading[i]
            assert conv.value(i, j) == monomial(shift) * gamma.value(i, j).bar()


def test_block_modules_in_image():
    # both squared-parameter structures give kernels with r = length
    for name in ("A2", "B2"):
        sysm = parse_system(name)
        for label in ("pi", "pi_prime"):
            bm = module_bar_matrix(sysm, sysm.identity_perm(), label, "length")
            K = kernel_from_bar(bm)
            assert is_p_kernel(K, bm.grading)
            assert bar_from_kernel(K, bm.grading).entries == bm.entries


def test_block_module_kls_a1():
    sysm = parse_system("A1")
    bm = module_bar_matrix(sysm, sysm.identity_perm(), "pi", "length")
    gamma = kls_function(kernel_from_bar(bm), bm.grading)
    assert gamma.value(0, 1) == ONE


def test_iota_not_parity_compatible():
    sysm = parse_system("I2(4)")
    theta = sysm.identity_perm()
    for grading in ("length", "rho"):
        bm = module_bar_matrix(sysm, theta, "iota", grading)
        with pytest.raises(NotParityCompatible) as exc:
            kernel_from_bar(bm)
        assert "pair" in exc.value.witness and "entry" in exc.value.witness


def test_module_bar_matrix_bad_grading():
    sysm = parse_system("A2")
    with pytest.raises(ValueError):
        module_bar_matrix(sysm, sysm.identity_perm(), "pi", "height")


def test_halve_exponents():
    assert _halve_exponents(monomial(4) + 2 * monomial(2)) == monomial(2) + 2 * Q
    with pytest.raises(ValueError):
        _halve_exponents(monomial(3))
