import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normcompress.errors import BudgetExceeded, PreconditionError
from normcompress.hrnr import lambda_k_normal
from normcompress.normcomp import (
    barycentric_weights, construct_interlacing_compression, construct_partition_compression,
    construct_rank2_witness, fanpall_collinear_alternating, interlacing_check,
    necessary_condition_check, necessary_condition_pairs, witness_residual,
)
from normcompress.numkit import compress, haar_random_frame, hermitian_eigenvalues
from oracles import circle_spectrum

S = 1 / np.sqrt(2)


def test_partition_square_hand_values(square):
    w = construct_partition_compression(square, [(0, 2), (1, 3)], [0, 0])
    np.testing.assert_allclose(w.frame.columns, [[S, 0], [0, S], [S, 0], [0, S]], atol=1e-15)
    np.testing.assert_allclose(w.compression, np.zeros((2, 2)), atol=1e-15)


def test_partition_singletons_identity():
    z = np.array([0.5, -1.0, 2.0])
    w = construct_partition_compression(z, [(0,), (1,), (2,)], z)
    np.testing.assert_allclose(w.frame.columns, np.eye(3))


def test_partition_hermitian_certificate():
    z = np.arange(1.0, 6.0)
    w = construct_partition_compression(z, [(0, 4), (1, 3)], [3, 3])
    np.testing.assert_allclose(w.compression, 3 * np.eye(2), atol=1e-14)


def test_partition_reports_block():
    with pytest.raises(PreconditionError, match="block 1"):
        construct_partition_compression(np.array([1, 1j, -1, -1j]), [(0, 2), (1, 3)], [0, 0.5])


def test_least_norm_weights():
    # centre of a square: the symmetric weights have the least norm
    t = barycentric_weights([1, 1j, -1, -1j], 0)
    np.testing.assert_allclose(t, np.full(4, 0.25), atol=1e-14)
    t = barycentric_weights([0, 1, 2], 1.5)
    assert t @ np.array([0, 1, 2]) == pytest.approx(1.5)
    assert np.all(t >= 0)
    with pytest.raises(PreconditionError):
        barycentric_weights([0, 1], 2)
    with pytest.raises(BudgetExceeded):
        barycentric_weights(np.arange(15) * 1j, 1j)


def test_interlacing_examples():
    assert interlacing_check([1, 2, 3, 4, 5], [2, 4])
    assert interlacing_check([1, 2, 3], [1.5, 2.5])
    assert not interlacing_check([1, 2, 3], [0, 2])
    with pytest.raises(PreconditionError):
        interlacing_check([1, 2], [1, 1.5, 2])


def test_interlacing_construction_examples():
    f = construct_interlacing_compression([0, 2], [1])
    np.testing.assert_allclose(np.abs(f.columns[:, 0]) ** 2, [0.5, 0.5], atol=1e-15)
    assert compress(np.diag([0, 2.0]), f)[0, 0].real == pytest.approx(1.0)
    f = construct_interlacing_compression([1, 2, 3], [1.5, 2.5])
    np.testing.assert_allclose(hermitian_eigenvalues(compress(np.diag([1.0, 2, 3]), f)), [1.5, 2.5], atol=1e-8)
    a = np.array([0, 1, 4, 9.0])
    f = construct_interlacing_compression(a, [0.5, 2, 6])
    assert interlacing_check(a, hermitian_eigenvalues(compress(np.diag(a), f)))
    with pytest.raises(PreconditionError):
        construct_interlacing_compression([1, 2, 3], [2, 2.5])


def test_haar_compressions_interlace():
    a = np.arange(1.0, 7.0)
    for k in (2, 3, 5):
        for s in range(100):
            f = haar_random_frame(6, k, seed=1000 * k + s)
            assert interlacing_check(a, hermitian_eigenvalues(compress(np.diag(a), f)))


def test_fanpall_predicate():
    assert fanpall_collinear_alternating([0, 2, 4], [1, 3])
    assert not fanpall_collinear_alternating([0, 2, 4], [1, 1.5])
    assert not fanpall_collinear_alternating([0, 1 + 1j, 4], [1, 3])
    # rotated line
    r = np.exp(0.7j)
    assert fanpall_collinear_alternating(r * np.array([0, 2, 4]) + 1j, r * np.array([1, 3]) + 1j)
    with pytest.raises(PreconditionError):
        fanpall_collinear_alternating([0, 2, 4], [2, 3])


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_interlacing_output_is_collinear_alternating(n, seed):
    rng = np.random.default_rng(seed)
    a = np.sort(rng.uniform(-5, 5, n))
    if np.diff(a).min() < 1e-3:
        return
    b = a[:-1] + rng.uniform(0.1, 0.9, n - 1) * np.diff(a)
    f = construct_interlacing_compression(a, b)
    eig = hermitian_eigenvalues(compress(np.diag(a), f))
    assert fanpall_collinear_alternating(a, eig)


def test_necessary_condition(square):
    assert necessary_condition_check([square[0]], square) == (True, None)
    assert necessary_condition_check([0, 0], square) == (True, None)
    tri = np.array([1, 1j, -1])
    ok, bad = necessary_condition_check([tri.mean()] * 2, tri)
    assert not ok and len(bad) == 2
    assert necessary_condition_pairs(0, [0, 0.3], square).max() == 0.0
    assert necessary_condition_pairs(0.5, [0.5], square)[0] > 0
    with pytest.raises(BudgetExceeded):
        necessary_condition_check([0], np.arange(21))


def test_rank2_examples(square, pentagon):
    f = construct_rank2_witness(square, 0, 0)
    assert witness_residual(square, f, 0, 0) < 1e-12
    z6 = np.exp(2j * np.pi * np.arange(6) / 6)
    inner = lambda_k_normal(z6, 2).vertices
    f = construct_rank2_witness(z6, inner[0] * 0.5, inner[3] * 0.9)
    assert witness_residual(z6, f, inner[0] * 0.5, inner[3] * 0.9) < 1e-9
    f = construct_rank2_witness(pentagon, 0.1, 0.15j)
    assert witness_residual(pentagon, f, 0.1, 0.15j) < 1e-9
    assert witness_residual(pentagon, f.swapped(), 0.15j, 0.1) < 1e-9
    assert necessary_condition_check([0.1, 0.15j], pentagon)[0]


def test_rank2_preconditions(pentagon):
    with pytest.raises(PreconditionError, match="outside"):
        construct_rank2_witness(pentagon, 0.9, 0)
    with pytest.raises(PreconditionError, match="extreme"):
        construct_rank2_witness(np.append(pentagon, 0), 0, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 8), st.integers(0, 10**6))
def test_rank2_random(n, seed):
    rng = np.random.default_rng(seed)
    z = circle_spectrum(n, rng, min_gap=0.05)
    inner = lambda_k_normal(z, 2)
    a, b = rng.dirichlet(np.ones(len(inner)), 2) @ inner.vertices
    f = construct_rank2_witness(z, a, b)
    assert witness_residual(z, f, a, b) < 1e-9
