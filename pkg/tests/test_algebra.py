import itertools

import numpy as np
import pytest

from conftest import (
    random_exact_matrix,
    random_exact_vector,
    random_jordan_matrix,
    random_unimodular,
    rng,
)
from cyclica.algebra import (
    CYCLIC,
    NOT_CYCLIC,
    UNDETERMINED,
    GeneratorSet,
    closure,
    find_cyclic_vector,
    is_cyclic_subspace,
    is_cyclic_vector,
    is_transitive,
    minimal_cyclic_dimension,
    orbit,
    single_generator_cyclic,
    vector_orbit,
)
from cyclica.linalg import Matrix, SpanBuilder, Subspace, rank
from cyclica.scalars import QQi

J3 = Matrix.exact([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
E12 = Matrix.exact([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
E13 = Matrix.exact([[0, 0, 1], [0, 0, 0], [0, 0, 0]])


def word_span_oracle(G, seed_vectors, max_len=None):
    """Independent check: span of w(b) over all explicit words w.

    Words are enumerated breadth-first to length n (the span filtration
    grows strictly until it stabilizes, so length n suffices for any word
    length bound); the last level is verified to add nothing, which proves
    stabilization.
    """
    n = G.n
    max_len = n if max_len is None else max_len
    sb = SpanBuilder(n, G.backend, G.tol)
    level = [tuple(v) for v in seed_vectors]
    for v in level:
        sb.add(v)
    for step in range(max_len):
        level = [A.apply(v) for A in G.gens for v in level]
        grew = False
        for v in level:
            grew |= sb.add(v)
        if step == max_len - 1:
            assert not grew, "word span not stabilized at the length bound"
    return sb.subspace()


def test_closure_no_generators():
    assert closure(GeneratorSet(3, [])).dim == 1


def test_closure_single_diagonal():
    G = GeneratorSet(2, [Matrix.exact([[1, 0], [0, 2]])])
    cl = closure(G)
    assert cl.dim == 2
    # independent word check: I, A, A^2, ... span the same thing
    sb = SpanBuilder(4, G.backend, None)
    P = Matrix.identity(2)
    for _ in range(5):
        sb.add(P.flatten())
        P = P @ G.gens[0]
    assert sb.dim == 2


def test_closure_random_pairs_full():
    r = rng(2)
    full = 0
    for _ in range(10):
        G = GeneratorSet(4, [random_exact_matrix(r, 4, 4) for _ in range(2)])
        if closure(G).dim == 16:
            full += 1
    assert full >= 9


def test_closure_unital_and_multiplicatively_closed():
    r = rng(4)
    G = GeneratorSet(3, [random_exact_matrix(r, 3, 3) for _ in range(2)])
    cl = closure(G)
    assert cl.contains(Matrix.identity(3))
    for A in G.gens:
        for M in cl.matrices:
            assert cl.contains(A @ M)


def test_closure_invariance_similarity_and_scaling():
    r = rng(6)
    for _ in range(5):
        gens = [random_exact_matrix(r, 3, 3) for _ in range(2)]
        G = GeneratorSet(3, gens)
        d = closure(G).dim
        U = random_unimodular(r, 3)
        Ui = U.inverse()
        G_sim = GeneratorSet(3, [U @ A @ Ui for A in gens])
        assert closure(G_sim).dim == d
        G_scaled = GeneratorSet(3, [gens[0].scale(QQi(7)), gens[1]])
        assert closure(G_scaled).dim == d


def test_orbit_jordan_chain():
    G = GeneratorSet(3, [J3])
    assert vector_orbit(G, (0, 0, 1)).is_full()


def test_orbit_first_row_generators_bounded():
    G = GeneratorSet(3, [E12, E13])
    r = rng(8)
    for _ in range(10):
        v = random_exact_vector(r, 3)
        assert vector_orbit(G, v).dim <= 2


def test_orbit_empty_generators_identity_action():
    B = Subspace.from_vectors(3, [[1, 2, 0]])
    assert orbit(GeneratorSet(3, []), B) == B


def test_orbit_is_invariant_fixed_point_and_contains_seed():
    r = rng(10)
    for _ in range(10):
        n = int(r.integers(2, 5))
        G = GeneratorSet(n, [random_exact_matrix(r, n, n) for _ in range(2)])
        B = Subspace.from_vectors(n, [random_exact_vector(r, n)])
        O = orbit(G, B)
        assert O.contains_subspace(B)
        for A in G.gens:
            for v in O.basis:
                assert O.contains(A.apply(v))


def test_orbit_monotone_in_seed():
    r = rng(12)
    for _ in range(10):
        G = GeneratorSet(4, [random_exact_matrix(r, 4, 4)])
        v1, v2 = random_exact_vector(r, 4), random_exact_vector(r, 4)
        B_small = Subspace.from_vectors(4, [v1])
        B_big = Subspace.from_vectors(4, [v1, v2])
        assert orbit(G, B_big).contains_subspace(orbit(G, B_small))


def test_orbit_matches_word_enumeration():
    r = rng(14)
    for _ in range(20):
        n = int(r.integers(2, 6))
        m = int(r.integers(1, 4))
        G = GeneratorSet(n, [random_exact_matrix(r, n, n) for _ in range(m)])
        b = random_exact_vector(r, n)
        assert vector_orbit(G, b) == word_span_oracle(G, [b])


def test_cyclic_vector_jordan_cases():
    G = GeneratorSet(3, [J3])
    cert = is_cyclic_vector(G, (0, 0, 1))
    assert cert.verdict == CYCLIC and cert.recheck(G)
    cert2 = is_cyclic_vector(G, (1, 0, 0))
    assert cert2.verdict == NOT_CYCLIC and cert2.orbit_dim == 1
    assert cert2.recheck(G)


def test_cyclic_subspace_obstruction_covector():
    G = GeneratorSet(3, [E12, E13])
    B = Subspace.from_vectors(3, [[1, 0, 0], [0, 0, 1]])
    cert = is_cyclic_subspace(G, B)
    assert cert.verdict == NOT_CYCLIC
    assert cert.orbit_dim == 2
    assert cert.obstruction_covector == (QQi(0), QQi(1), QQi(0))
    assert cert.recheck(G)


def test_zero_vector_not_cyclic():
    G = GeneratorSet(3, [J3])
    cert = is_cyclic_vector(G, (0, 0, 0))
    assert cert.verdict == NOT_CYCLIC and cert.orbit_dim == 0


def test_dimension_one_every_nonzero_vector_cyclic():
    G = GeneratorSet(1, [])
    assert is_cyclic_vector(G, (QQi(5),)).verdict == CYCLIC
    assert find_cyclic_vector(G, trials=1, seed=0).verdict == CYCLIC


def test_transitivity():
    assert is_transitive(
        GeneratorSet(2, [Matrix.exact([[0, 1], [0, 0]]), Matrix.exact([[0, 0], [1, 0]])])
    )
    assert not is_transitive(GeneratorSet(3, [J3]))
    assert not is_transitive(GeneratorSet(3, []))


def test_single_generator_companion_and_scalar():
    comp = Matrix.exact([[0, 0, -1], [1, 0, 0], [0, 1, 0]])
    assert single_generator_cyclic(comp)
    assert not single_generator_cyclic(Matrix.identity(2))


def test_find_cyclic_vector_dense_case():
    cert = find_cyclic_vector(GeneratorSet(3, [J3]), trials=16, seed=0)
    assert cert.verdict == CYCLIC
    assert cert.recheck(GeneratorSet(3, [J3]))


def test_find_cyclic_vector_obstruction_proof():
    cert = find_cyclic_vector(GeneratorSet(3, [E12, E13]), trials=8, seed=0)
    assert cert.verdict == NOT_CYCLIC
    mu, P = cert.obstruction_locus
    assert P.dim == 2
    assert cert.recheck(GeneratorSet(3, [E12, E13]))


def test_find_cyclic_vector_undetermined_when_no_proof():
    # three copies of an irreducible two-dimensional action: no cyclic
    # vector exists, the rank-drop locus is empty, and the Lie algebra is
    # not solvable, so sampling alone must stay undetermined
    e12 = Matrix.exact([[0, 1], [0, 0]])
    e21 = Matrix.exact([[0, 0], [1, 0]])
    A = Matrix.block_diag([e12] * 3)
    B = Matrix.block_diag([e21] * 3)
    G = GeneratorSet(6, [A, B])
    cert = find_cyclic_vector(G, trials=6, seed=0)
    assert cert.verdict == UNDETERMINED


def test_find_reproducible_across_runs():
    G = GeneratorSet(3, [J3])
    a = find_cyclic_vector(G, trials=16, seed=42)
    b = find_cyclic_vector(G, trials=16, seed=42)
    assert a.witness == b.witness and a.trials_used == b.trials_used


def test_single_generator_agrees_with_sampling():
    r = rng(21)
    for _ in range(25):
        n = int(r.integers(2, 7))
        A, nonderog = random_jordan_matrix(r, n)
        assert single_generator_cyclic(A) == nonderog
        found = find_cyclic_vector(GeneratorSet(n, [A]), trials=50, seed=3)
        assert found.is_cyclic == nonderog


def test_minimal_cyclic_dimension_repeated_eigenvalue():
    G = GeneratorSet(3, [Matrix.exact([[1, 0, 0], [0, 1, 0], [0, 0, 2]])])
    res = minimal_cyclic_dimension(G, trials=32, seed=1)
    assert res.r == 2 and res.lower_bound == 2 and res.certified and res.solvable


def test_minimal_cyclic_dimension_companion():
    # distinct roots: x^4 - 10x^2 + 1 has four distinct real roots
    comp = Matrix.exact(
        [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 10], [0, 0, 1, 0]]
    )
    res = minimal_cyclic_dimension(GeneratorSet(4, [comp]), trials=16, seed=0)
    assert res.r == 1 and res.certified


def test_minimal_cyclic_dimension_no_generators():
    res = minimal_cyclic_dimension(GeneratorSet(3, []), trials=4, seed=0)
    assert res.r == 3 and res.certified


def test_certificate_soundness_random_instances():
    r = rng(30)
    for _ in range(20):
        n = int(r.integers(2, 5))
        m = int(r.integers(0, 3))
        G = GeneratorSet(n, [random_exact_matrix(r, n, n) for _ in range(m)])
        b = random_exact_vector(r, n)
        cert = is_cyclic_vector(G, b)
        assert cert.recheck(G)
