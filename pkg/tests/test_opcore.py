"""Matrix primitives: frozen small-case oracles plus randomized invariants."""

import numpy as np
import pytest

from krauslab import opcore


def test_norms_oracle_diagonal():
    # singular values 4 and 3: op 4, hs 5, tr 7
    n = opcore.norms(np.diag([3.0, 4.0]))
    assert n.op == pytest.approx(4.0, abs=1e-14)
    assert n.hs == pytest.approx(5.0, abs=1e-14)
    assert n.tr == pytest.approx(7.0, abs=1e-14)


def test_norms_oracle_nilpotent():
    # single singular value 1, so all three norms agree
    n = opcore.norms([[0.0, 1.0], [0.0, 0.0]])
    assert n.op == pytest.approx(1.0, abs=1e-14)
    assert n.hs == pytest.approx(1.0, abs=1e-14)
    assert n.tr == pytest.approx(1.0, abs=1e-14)


def test_norm_ordering_random():
    rng = np.random.default_rng(11)
    for _ in range(25):
        d = int(rng.integers(1, 7))
        x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        n = opcore.norms(x)
        assert n.op <= n.hs + 1e-12
        assert n.hs <= n.tr + 1e-12
        assert n.op == pytest.approx(opcore.op_norm(x), rel=1e-12)
        assert n.hs == pytest.approx(opcore.hs_norm(x), rel=1e-12)
        assert n.tr == pytest.approx(opcore.trace_norm(x), rel=1e-12)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        opcore.as_matrix([1.0, 2.0])
    with pytest.raises(ValueError):
        opcore.as_matrix(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        opcore.as_matrix([[np.nan, 0.0], [0.0, 1.0]])


def test_hs_inner_conjugate_linear_first_argument():
    rng = np.random.default_rng(12)
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    y = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    c = 0.7 - 1.3j
    assert opcore.hs_inner(c * x, y) == pytest.approx(np.conj(c) * opcore.hs_inner(x, y))
    assert opcore.hs_inner(x, c * y) == pytest.approx(c * opcore.hs_inner(x, y))
    assert opcore.hs_inner(x, x) == pytest.approx(opcore.hs_norm(x) ** 2)
    # tr(x* y) written out entrywise
    assert opcore.hs_inner(x, y) == pytest.approx(np.trace(x.conj().T @ y))


def test_hermitian_witness_and_symmetrized():
    h = np.array([[1.0, 2.0 + 1j], [2.0 - 1j, -3.0]])
    w = opcore.hermitian_witness(h)
    assert w.accepted and w.asymmetry == 0.0
    skew = h + np.array([[0.0, 1e-3], [0.0, 0.0]])
    assert not opcore.hermitian_witness(skew).accepted
    with pytest.raises(ValueError):
        opcore.symmetrized(skew)
    np.testing.assert_allclose(opcore.symmetrized(h), h)


def test_positive_part_oracle_and_decomposition():
    np.testing.assert_allclose(
        opcore.positive_part(np.diag([3.0, -2.0])), np.diag([3.0, 0.0]), atol=1e-14
    )
    rng = np.random.default_rng(13)
    for _ in range(10):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = (g + g.conj().T) / 2.0
        plus = opcore.positive_part(h)
        minus = opcore.positive_part(-h)
        np.testing.assert_allclose(plus - minus, h, atol=1e-12)
        assert np.linalg.eigvalsh(plus)[0] >= -1e-12
        # positive and negative parts are orthogonal pieces of h
        assert opcore.hs_norm(plus @ minus) <= 1e-12


def test_psd_sqrt_oracle_and_roundtrip():
    np.testing.assert_allclose(
        opcore.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14
    )
    rng = np.random.default_rng(14)
    for _ in range(10):
        g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        p = g.conj().T @ g
        r = opcore.psd_sqrt(p)
        np.testing.assert_allclose(r @ r, p, atol=1e-10 * (1 + opcore.op_norm(p)))
    with pytest.raises(ValueError):
        opcore.psd_sqrt(np.diag([1.0, -0.5]))


def test_vectorize_is_column_stacking():
    m = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(opcore.vectorize(m), [1.0, 3.0, 2.0, 4.0])
    np.testing.assert_array_equal(opcore.devectorize([1.0, 3.0, 2.0, 4.0], 2, 2), m)
    with pytest.raises(ValueError):
        opcore.devectorize([1.0, 2.0, 3.0], 2, 2)


def test_vectorize_kron_identity():
    # vec(A X B) = kron(B.T, A) vec(X), the convention everything relies on
    rng = np.random.default_rng(15)
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    x = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    b = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
    np.testing.assert_allclose(
        opcore.vectorize(a @ x @ b),
        np.kron(b.T, a) @ opcore.vectorize(x),
        atol=1e-12,
    )


def test_null_space_basis():
    k = opcore.null_space_basis(np.diag([1.0, 0.0]), 1e-12)
    assert k.shape == (2, 1)
    np.testing.assert_allclose(np.abs(k[:, 0]), [0.0, 1.0], atol=1e-14)
    # wide matrix: columns beyond the singular-value list are null directions
    wide = np.array([[1.0, 0.0, 0.0]])
    kw = opcore.null_space_basis(wide, 1e-12)
    assert kw.shape == (3, 2)
    np.testing.assert_allclose(wide @ kw, 0.0, atol=1e-14)
    np.testing.assert_allclose(kw.conj().T @ kw, np.eye(2), atol=1e-12)
    full = opcore.null_space_basis(np.eye(3), 1e-12)
    assert full.shape == (3, 0)


def test_linear_map_matrix_transpose_oracle():
    # the transpose on 2x2 permutes vec components 1 and 2
    t = opcore.linear_map_matrix(lambda m: m.T, 2, 2)
    perm = np.zeros((4, 4))
    perm[0, 0] = perm[3, 3] = perm[1, 2] = perm[2, 1] = 1.0
    np.testing.assert_allclose(t, perm, atol=1e-14)


def test_linear_map_matrix_matches_direct_application():
    rng = np.random.default_rng(16)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    mat = opcore.linear_map_matrix(lambda m: a @ m @ b, 3, 3)
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    np.testing.assert_allclose(
        mat @ opcore.vectorize(x), opcore.vectorize(a @ x @ b), atol=1e-12
    )


def test_matrix_json_roundtrip():
    rng = np.random.default_rng(17)
    m = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    obj = opcore.matrix_to_json(m)
    assert obj["rows"] == 2 and obj["cols"] == 3 and len(obj["data"]) == 6
    np.testing.assert_array_equal(opcore.matrix_from_json(obj), m)


@pytest.mark.parametrize(
    "obj",
    [
        "nope",
        {"rows": 2, "cols": 2},
        {"rows": 0, "cols": 2, "data": []},
        {"rows": 1, "cols": 1, "data": [[1.0]]},
        {"rows": 1, "cols": 1, "data": [[np.inf, 0.0]]},
        {"rows": 2, "cols": 1, "data": [[1.0, 0.0]]},
    ],
)
def test_matrix_from_json_rejects(obj):
    with pytest.raises(ValueError):
        opcore.matrix_from_json(obj)
