"""Ready-made groups used by tests, fixtures and the command line examples.

Split extensions of one cyclic group by another come in two flavours: the
twisted tuple backend (cheap, used for bulk randomized sweeps) and a
permutation realization of the same abstract group (exercises a second
backend on identical structure). A handful of small named groups round out
the corpus, including the standard refusal cases for the cyclic-by-cyclic
recognizer.
"""

from __future__ import annotations

from math import gcd

from .blackbox import GroupHandle, MatModBackend, PermBackend, ZmodBackend
from .orders import factorize


def _check_action(a: int, b: int, ell: int) -> int:
    ell %= b
    if gcd(ell, b) != 1:
        raise ValueError(f"action {ell} is not a unit mod {b}")
    if pow(ell, a, b) != 1:
        raise ValueError(f"action {ell} has order not dividing {a} mod {b}")
    return ell


def semidirect_zmod(a: int, b: int, ell: int) -> GroupHandle:
    """Z/a acting on Z/b by multiplication with ``ell``, as twisted tuples."""
    ell = _check_action(a, b, ell)
    backend = ZmodBackend([a, b], action=ell)
    return GroupHandle.root(backend, [(1, 0), (0, 1)], known_order=factorize(a * b))


def semidirect_perm(a: int, b: int, ell: int) -> GroupHandle:
    """The same split extension on ``a + b`` points.

    The first orbit is a plain ``a``-cycle marking the acting generator;
    on the second orbit that generator multiplies by ``ell`` while the
    normal generator adds one.
    """
    ell = _check_action(a, b, ell)
    backend = PermBackend(a + b)
    x = tuple((i + 1) % a for i in range(a)) + tuple(a + (ell * z) % b for z in range(b))
    y = tuple(range(a)) + tuple(a + (z + 1) % b for z in range(b))
    return GroupHandle.root(backend, [x, y], known_order=factorize(a * b))


def cyclic(n: int) -> GroupHandle:
    return GroupHandle.root(ZmodBackend([n]), [(1 % n,)], known_order=factorize(n))


def abelian(moduli) -> GroupHandle:
    """Direct product of cyclic groups with the standard unit vectors."""
    moduli = list(moduli)
    backend = ZmodBackend(moduli)
    gens = []
    for i in range(len(moduli)):
        vec = [0] * len(moduli)
        vec[i] = 1 % moduli[i]
        gens.append(tuple(vec))
    order = 1
    for m in moduli:
        order *= m
    return GroupHandle.root(backend, gens, known_order=factorize(order))


def gl3_541_example() -> GroupHandle:
    """Two matrices over F_541: one of order 108 conjugating the other,
    a transvection-like element of order 541, to a power of itself."""
    backend = MatModBackend(3, 541)
    x = ((11, 0, 0), (0, 0, 311), (0, 311, 0))
    y = ((1, 47, 494), (0, 1, 0), (0, 0, 1))
    return GroupHandle.root(backend, [x, y], known_order=factorize(108 * 541))


def sym3() -> GroupHandle:
    return GroupHandle.root(
        PermBackend(3), [(1, 0, 2), (1, 2, 0)], known_order=factorize(6)
    )


def sym3_times_z2() -> GroupHandle:
    gens = [(1, 2, 0, 3, 4), (1, 0, 2, 3, 4), (0, 1, 2, 4, 3)]
    return GroupHandle.root(PermBackend(5), gens, known_order=factorize(12))


def dihedral4() -> GroupHandle:
    """Symmetries of a square: order 8, non-cyclic Sylow 2-subgroup."""
    gens = [(1, 2, 3, 0), (2, 1, 0, 3)]
    return GroupHandle.root(PermBackend(4), gens, known_order=factorize(8))


def quaternion8() -> GroupHandle:
    """The quaternions as 2x2 matrices over F_5 (i -> diag(2,3), j -> symplectic)."""
    backend = MatModBackend(2, 5)
    i = ((2, 0), (0, 3))
    j = ((0, 4), (1, 0))
    return GroupHandle.root(backend, [i, j], known_order=factorize(8))


def q8_times_z3() -> GroupHandle:
    """Quaternions joined with a central cube root of unity over F_13."""
    backend = MatModBackend(2, 13)
    i = ((5, 0), (0, 8))
    j = ((0, 12), (1, 0))
    z = ((3, 0), (0, 3))
    return GroupHandle.root(backend, [i, j, z], known_order=factorize(24))


def z2_times_z4() -> GroupHandle:
    return abelian([2, 4])


def alternating5() -> GroupHandle:
    """Smallest non-solvable group; the solvable-series builder must refuse it."""
    gens = [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)]
    return GroupHandle.root(PermBackend(5), gens, known_order=factorize(60))
