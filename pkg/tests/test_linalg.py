"""Dense F_q linear algebra helpers."""

import random

import numpy as np

from periodic_hall import linalg


def random_matrix(rng, rows, cols, q):
    return np.array(
        [rng.randrange(q) for _ in range(rows * cols)], dtype=np.int64
    ).reshape(rows, cols)


def test_rref_and_rank():
    a = np.array([[1, 2], [2, 4]], dtype=np.int64)
    assert linalg.rank(a, 5) == 1
    assert linalg.rank(a, 3) == 1
    assert linalg.rank(np.eye(3, dtype=np.int64), 2) == 3


def test_kernel_is_kernel():
    rng = random.Random(3)
    for q in (2, 3, 5):
        for _ in range(25):
            a = random_matrix(rng, rng.randint(0, 4), rng.randint(0, 4), q)
            k = linalg.kernel(a, q)
            assert a.shape[1] == k.shape[0] or a.shape[1] == 0
            if a.size and k.size:
                assert not ((a @ k) % q).any()
            assert linalg.rank(k, q) == k.shape[1]
            assert k.shape[1] == a.shape[1] - linalg.rank(a, q)


def test_solve():
    rng = random.Random(4)
    for q in (2, 3):
        for _ in range(25):
            a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), q)
            x = random_matrix(rng, a.shape[1], 2, q)
            b = (a @ x) % q
            got = linalg.solve(a, b, q)
            assert got is not None
            assert np.array_equal((a @ got) % q, b)
    # inconsistent system
    assert linalg.solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), 2) is None


def test_inverse():
    rng = random.Random(5)
    for q in (2, 3, 5):
        for _ in range(20):
            n = rng.randint(1, 4)
            a = random_matrix(rng, n, n, q)
            inv = linalg.inverse(a, q)
            if inv is None:
                assert linalg.rank(a, q) < n
            else:
                assert np.array_equal((a @ inv) % q, np.eye(n, dtype=np.int64))


def test_extend_row_basis():
    q = 2
    base = np.array([[1, 0, 0]], dtype=np.int64)
    ext = linalg.extend_row_basis(base, np.eye(3, dtype=np.int64), q)
    stacked = np.concatenate([base, ext])
    assert linalg.rank(stacked, q) == 3


def test_subspace_count_matches_gaussian_binomial():
    def gauss(n, k, q):
        num, den = 1, 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (k - i) - 1
        return num // den

    for q in (2, 3):
        for n in range(0, 4):
            for k in range(0, n + 1):
                subs = list(linalg.subspaces(n, k, q))
                assert len(subs) == gauss(n, k, q)
                seen = {m.tobytes() for m in subs}
                assert len(seen) == len(subs)
                for m in subs:
                    assert linalg.rank(m, q) == k
