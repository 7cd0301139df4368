"""Block-triangular decomposition and isotypic classification.

Every unital matrix algebra admits a basis in which all its elements are
simultaneously block upper-triangular with irreducible diagonal blocks (a
composition series of the natural module).  The block count and the multiset
of block dimensions are invariants of the input; the diagonal blocks group
into isomorphism classes, and comparing each class's block dimension with
its multiplicity is the d >= k sufficiency test for dense cyclic vectors.

Irreducibility of a diagonal block is certified only through the closure
dimension (dim d^2 iff the block acts irreducibly); a failed random search
never certifies anything.  When the probing budget runs out on a reducible
input the splitter raises :class:`InconclusiveError` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import GeneratorSet, closure, find_cyclic_vector, is_cyclic_vector, orbit, vector_orbit
from .linalg import (
    EXACT,
    FLOAT,
    Matrix,
    Polynomial,
    Subspace,
    annihilator,
    eigenvalues,
    kernel,
    min_poly,
    rank,
)
from .scalars import DEFAULT_TOL, QQI_ONE, QQI_ZERO, QQi


class InconclusiveError(RuntimeError):
    """Probing budget exhausted without a verdict; never a wrong answer."""


# ---------------------------------------------------------------------------
# invariant subspace search
# ---------------------------------------------------------------------------


def _rng(seed, index):
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,)))
    )


def _factor_exact(p: Polynomial):
    """Irreducible factors of an exact polynomial over the Gaussian rationals."""
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for k, c in enumerate(p.coeffs):
        term = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator
        )
        expr += term * x**k
    _, factors = sympy.factor_list(expr, x, gaussian=True)
    out = []
    for f, _mult in factors:
        coeffs = sympy.Poly(f, x).all_coeffs()[::-1]  # ascending
        qq = []
        for c in coeffs:
            re, im = sympy.re(c), sympy.im(c)
            qq.append(
                QQi(
                    Fraction(int(sympy.numer(re)), int(sympy.denom(re))),
                    Fraction(int(sympy.numer(im)), int(sympy.denom(im))),
                )
            )
        out.append(Polynomial(qq, EXACT))
    out.sort(key=lambda q: (q.degree, str([str(c) for c in q.coeffs])))
    return out


def _standard_vectors(n, backend, tol):
    eye = Matrix.identity(n, backend, tol)
    return eye.row_vectors()


def _proper(S: Subspace):
    return 0 < S.dim < S.ambient_dim


def _probe_vector(G, v):
    """Orbit of v if it is a proper invariant subspace, else None."""
    O = vector_orbit(G, v)
    return O if _proper(O) else None


def _probe_dual_vector(G_t, p):
    O = vector_orbit(G_t, p)
    if _proper(O):
        return annihilator(O)
    return None


def _eigen_probes_exact(G, G_t, R):
    """Probe kernels of irreducible factors of R's minimal polynomial."""
    p = min_poly(R)
    if p.degree < 1:
        return None
    for f in _factor_exact(p):
        if f.degree == 0:
            continue
        K = kernel(f(R))
        for v in K.basis:
            hit = _probe_vector(G, v)
            if hit is not None:
                return hit
        Kt = kernel(f(R.T))
        for q in Kt.basis:
            hit = _probe_dual_vector(G_t, q)
            if hit is not None:
                return hit
    return None


def _eigen_probes_float(G, G_t, R):
    tol = G.tol or DEFAULT_TOL
    for lam, _mult in eigenvalues(R, tol):
        shifted = Matrix(R.to_float().data - lam * np.eye(G.n), FLOAT, tol=tol)
        for v in kernel(shifted).basis:
            hit = _probe_vector(G, v)
            if hit is not None:
                return hit
        for q in kernel(shifted.T).basis:
            hit = _probe_dual_vector(G_t, q)
            if hit is not None:
                return hit
    return None


def _random_algebra_element(basis_matrices, rng, backend, tol):
    n = basis_matrices[0].rows
    acc = Matrix.zeros(n, n, backend, tol)
    for M in basis_matrices:
        if backend == EXACT:
            c = QQi(int(rng.integers(-3, 4)))
        else:
            c = complex(rng.standard_normal())
        acc = acc + M.scale(c)
    return acc


def find_invariant_subspace(G: GeneratorSet, retries=20, seed=0):
    """A proper nonzero subspace invariant under every generator, or None.

    None is certified: it is returned only when the algebra closure has full
    dimension n^2, which happens exactly for irreducible inputs.  The search
    escalates from orbits of coordinate vectors through eigenspace probing
    of random algebra elements to random vectors, and raises
    InconclusiveError when the budget is exhausted.
    """
    n = G.n
    cl = closure(G)
    if cl.dim == n * n:
        return None
    if n == 1:
        return None  # 1-dimensional module has no proper nonzero subspace
    G_t = G.transposed()
    # orbits of coordinate vectors, both sides
    for v in _standard_vectors(n, G.backend, G.tol):
        hit = _probe_vector(G, v)
        if hit is not None:
            return hit
    for p in _standard_vectors(n, G.backend, G.tol):
        hit = _probe_dual_vector(G_t, p)
        if hit is not None:
            return hit
    # eigenspace probing: generators and products first, then random elements
    probes = list(G.gens)
    for A in G.gens:
        for B in G.gens:
            probes.append(A @ B)
    for t in range(retries):
        rng = _rng(seed, t)
        probes.append(_random_algebra_element(cl.matrices, rng, G.backend, G.tol))
    seen = set()
    for idx, R in enumerate(probes):
        key = R if G.backend == EXACT else idx
        if key in seen:
            continue
        seen.add(key)
        if G.backend == EXACT:
            hit = _eigen_probes_exact(G, G_t, R)
        else:
            hit = _eigen_probes_float(G, G_t, R)
        if hit is not None:
            return hit
    # random vectors on both sides
    for t in range(retries):
        rng = _rng(seed, 10_000 + t)
        if G.backend == EXACT:
            v = tuple(QQi(int(x)) for x in rng.integers(-5, 6, size=n))
        else:
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        hit = _probe_vector(G, v)
        if hit is not None:
            return hit
        hit = _probe_dual_vector(G_t, v)
        if hit is not None:
            return hit
    raise InconclusiveError(
        "input is reducible (closure dimension below n^2) but no invariant "
        "subspace was found within the probing budget"
    )


# ---------------------------------------------------------------------------
# block triangular form
# ---------------------------------------------------------------------------


@dataclass
class BlockTriangularForm:
    generators: GeneratorSet
    change_of_basis: Matrix  # columns are the new basis, first blocks first
    block_dims: list
    transformed: list  # P^-1 A P for each generator

    @property
    def k(self):
        return len(self.block_dims)

    def offsets(self):
        offs = [0]
        for d in self.block_dims:
            offs.append(offs[-1] + d)
        return offs

    def diagonal_block_family(self, i):
        """The i-th diagonal block of every transformed generator."""
        offs = self.offsets()
        a, b = offs[i], offs[i + 1]
        return [T.block(a, b, a, b) for T in self.transformed]

    def lower_blocks_vanish(self):
        offs = self.offsets()
        tol = (self.generators.tol or DEFAULT_TOL).tau_rank
        for T in self.transformed:
            for i in range(1, self.k):
                blk = T.block(offs[i], offs[-1], 0, offs[i])
                if self.generators.backend == EXACT:
                    if not blk.is_zero():
                        return False
                else:
                    if blk.rows and blk.cols and np.max(np.abs(blk.data)) > 100 * tol:
                        return False
        return True


def _completion_basis(W: Subspace):
    """Columns: the subspace basis followed by unit vectors at free
    coordinates; always invertible."""
    n = W.ambient_dim
    pivots = set()
    for row in W.basis:
        if W.backend == EXACT:
            pivots.add(next(j for j, x in enumerate(row) if not x.is_zero()))
        else:
            pivots.add(int(np.argmax(np.abs(np.asarray(row) - 1.0) < 1e-12)))
    cols = list(W.basis)
    eye = Matrix.identity(n, W.backend, W.tol)
    for j in range(n):
        if j not in pivots:
            cols.append(eye.row(j))
    return Matrix.from_cols(cols, W.backend, tol=W.tol)


def block_triangularize(G: GeneratorSet, retries=20, seed=0) -> BlockTriangularForm:
    """Composition series: recursive splitting along invariant subspaces."""
    n = G.n
    P, dims = _triangularize_rec(G, retries, seed)
    P_inv = P.inverse()
    transformed = [P_inv @ A @ P for A in G.gens]
    return BlockTriangularForm(G, P, dims, transformed)


def _triangularize_rec(G, retries, seed):
    n = G.n
    if n == 0:
        return Matrix.identity(0, G.backend, G.tol), []
    W = find_invariant_subspace(G, retries, seed)
    if W is None:
        return Matrix.identity(n, G.backend, G.tol), [n]
    P = _completion_basis(W)
    P_inv = P.inverse()
    conj = [P_inv @ A @ P for A in G.gens]
    w = W.dim
    top = GeneratorSet(w, [A.block(0, w, 0, w) for A in conj], tol=G.tol)
    bottom = GeneratorSet(n - w, [A.block(w, n, w, n) for A in conj], tol=G.tol)
    P_top, dims_top = _triangularize_rec(top, retries, seed)
    P_bot, dims_bot = _triangularize_rec(bottom, retries, seed)
    P_total = P @ Matrix.block_diag([P_top, P_bot], G.backend, G.tol)
    return P_total, dims_top + dims_bot


# ---------------------------------------------------------------------------
# isotypic classification
# ---------------------------------------------------------------------------


@dataclass
class IsotypicClass:
    members: list  # block indices, increasing
    block_dim: int
    intertwiners: dict  # member index -> Matrix T with T A_member = A_first T

    @property
    def multiplicity(self):
        return len(self.members)


@dataclass
class IsotypicSummary:
    btf: BlockTriangularForm
    classes: list

    def class_of(self, block_index):
        for c, cls in enumerate(self.classes):
            if block_index in cls.members:
                return c
        raise KeyError(block_index)


def _intertwiner(family_a, family_b, backend, tol):
    """Nonzero X with X A = B X jointly over the families, or None.

    Between irreducible families a nonzero solution is automatically
    invertible; invertibility is verified anyway.
    """
    d = family_a[0].rows
    rows = []
    for A, B in zip(family_a, family_b):
        for r in range(d):
            for c in range(d):
                # coefficient of X[p][q] in (X A - B X)[r][c]
                coeff = {}
                for q in range(d):
                    coeff[(r, q)] = coeff.get((r, q), _zero(backend)) + A.entry(q, c)
                for p in range(d):
                    coeff[(p, c)] = coeff.get((p, c), _zero(backend)) - B.entry(r, p)
                row = [_zero(backend)] * (d * d)
                for (p, q), val in coeff.items():
                    row[p * d + q] = row[p * d + q] + val
                rows.append(row)
    M = Matrix.from_rows(rows, backend, tol=tol) if backend == EXACT else Matrix(
        np.array(rows, dtype=np.complex128), FLOAT, tol=tol
    )
    K = kernel(M)
    if K.dim == 0:
        return None
    X = Matrix.unflatten(K.basis[0], d, d, backend, tol)
    if rank(X) < d:
        return None
    return X


def _zero(backend):
    return QQI_ZERO if backend == EXACT else 0j


def classify_blocks(btf: BlockTriangularForm) -> IsotypicSummary:
    """Group diagonal blocks into isomorphism classes via joint intertwiners."""
    families = [btf.diagonal_block_family(i) for i in range(btf.k)]
    backend = btf.generators.backend
    tol = btf.generators.tol
    classes = []
    for i in range(btf.k):
        placed = False
        for cls in classes:
            first = cls.members[0]
            if btf.block_dims[first] != btf.block_dims[i]:
                continue
            X = _intertwiner(families[i], families[first], backend, tol)
            if X is not None:
                cls.members.append(i)
                cls.intertwiners[i] = X
                placed = True
                break
        if not placed:
            d = btf.block_dims[i]
            classes.append(
                IsotypicClass(
                    members=[i],
                    block_dim=d,
                    intertwiners={i: Matrix.identity(d, backend, tol)},
                )
            )
    return IsotypicSummary(btf, classes)


def multiplicity_condition(summary: IsotypicSummary) -> bool:
    """Every class has block dimension at least its multiplicity.

    True guarantees a dense open set of cyclic vectors.  False refutes
    existence only when the transformed generators are block-diagonal.
    """
    return all(cls.block_dim >= cls.multiplicity for cls in summary.classes)


def is_block_diagonal(btf: BlockTriangularForm) -> bool:
    offs = btf.offsets()
    tol = (btf.generators.tol or DEFAULT_TOL).tau_rank
    for T in btf.transformed:
        for i in range(btf.k):
            blk = T.block(offs[i], offs[i + 1], offs[i + 1], offs[-1])
            if btf.generators.backend == EXACT:
                if not blk.is_zero():
                    return False
            elif blk.rows and blk.cols and np.max(np.abs(blk.data)) > 100 * tol:
                return False
    return True


# ---------------------------------------------------------------------------
# constructive cyclic vector
# ---------------------------------------------------------------------------


def construct_cyclic_vector(btf: BlockTriangularForm, summary: IsotypicSummary,
                            trials=64, seed=0):
    """Cyclic vector built classwise and certified on the full generators.

    Within a class of multiplicity k and block dimension d (k <= d), the
    j-th member receives the component its intertwiner identifies with the
    j-th model basis vector, making the identified components linearly
    independent.  The assembled vector is certified by an orbit computation;
    on failure a randomized search supplies the witness instead, and if that
    also fails the call is inconclusive.
    """
    if not multiplicity_condition(summary):
        raise ValueError(
            "multiplicity condition fails: some class has more copies than "
            "its block dimension"
        )
    G = btf.generators
    n = G.n
    backend = G.backend
    offs = btf.offsets()
    if backend == EXACT:
        x_new = [QQI_ZERO] * n
    else:
        x_new = np.zeros(n, dtype=np.complex128)
    for cls in summary.classes:
        d = cls.block_dim
        for j, member in enumerate(sorted(cls.members)):
            T_inv = cls.intertwiners[member].inverse()
            model = [_zero(backend)] * d
            model[j] = QQI_ONE if backend == EXACT else 1.0 + 0j
            comp = T_inv.apply(tuple(model) if backend == EXACT else np.asarray(model))
            a = offs[member]
            for t in range(d):
                if backend == EXACT:
                    x_new[a + t] = comp[t]
                else:
                    x_new[a + t] = comp[t]
    x = btf.change_of_basis.apply(tuple(x_new) if backend == EXACT else x_new)
    cert = is_cyclic_vector(G, x)
    if cert.is_cyclic:
        return x
    fallback = find_cyclic_vector(G, trials=trials, seed=seed)
    if fallback.is_cyclic:
        return fallback.witness
    raise InconclusiveError(
        "constructed vector failed certification and randomized search "
        "found no witness"
    )


# ---------------------------------------------------------------------------
# orbit bound for block-diagonal inputs
# ---------------------------------------------------------------------------


def block_diagonal_orbit_bound(btf: BlockTriangularForm, summary: IsotypicSummary):
    """Largest possible single-vector orbit dimension for block-diagonal
    inputs: sum over classes of d * min(d, multiplicity).  None when the
    form is not block-diagonal (no bound claimed)."""
    if not is_block_diagonal(btf):
        return None
    return sum(
        cls.block_dim * min(cls.block_dim, cls.multiplicity)
        for cls in summary.classes
    )
