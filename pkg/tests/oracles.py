"""Reference computations that share no code with the library."""

import itertools
import random
from fractions import Fraction


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= M[i][perm[i]]
            if term == 0:
                break
        total += term
    return total


def leading_minors(M):
    return [leibniz_det([row[:k] for row in M[:k]]) for k in range(1, len(M) + 1)]


def matmul(A, B):
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), 0) for j in range(len(B[0]))) for i in range(len(A)))


def random_rational_matrix(rng: random.Random, n: int):
    return tuple(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)) for _ in range(n))


def random_pivot_free(rng: random.Random, n: int):
    """Random rational matrix with every leading minor nonzero (rejection sampling)."""
    while True:
        A = random_rational_matrix(rng, n)
        if all(m != 0 for m in leading_minors(A)):
            return A


def random_square_pivot_matrix(rng: random.Random, n: int):
    """``L diag(q^2) U`` with unitriangular ``L``, ``U``: pivots are rational squares."""
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    U = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            L[i][j] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            U[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    D = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        D[i][i] = Fraction(rng.randint(1, 7), rng.randint(1, 4)) ** 2
    return matmul(matmul(L, D), U)


def with_zero_minor(rng: random.Random, n: int):
    """Random matrix whose k-th leading minor is forced to zero; returns (A, k)."""
    k = rng.randint(1, n)
    A = [list(r) for r in random_rational_matrix(rng, n)]
    if k == 1:
        A[0][0] = Fraction(0)
    else:
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        for j in range(k):
            A[k - 1][j] = c * A[0][j]
    return tuple(tuple(r) for r in A), k
