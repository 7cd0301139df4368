"""Popov-Hautus style rank tests for families of operators.

A tuple mu = (mu_1, ..., mu_m) is a rank-drop point when the stacked block
[A_1 - mu_1 I | ... | A_m - mu_m I] has rank below n, equivalently when the
common left-eigencovector space

    P_mu = { p : p (A_j - mu_j I) = 0 for all j }

is nonzero.  Each coordinate of a rank-drop tuple must be an eigenvalue of
its generator, so the locus is found by scanning the Cartesian product of
the spectra.  Covectors are reported as row vectors throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import EXACT, FLOAT, Matrix, SpanBuilder, Subspace, cluster_values, intersect, kernel
from .linalg import char_poly as _char_poly
from .scalars import DEFAULT_TOL, QQi

NO_CYCLIC_SUBSPACE = "no_cyclic_subspace"
GENERIC_CYCLIC_SUBSPACE = "generic_cyclic_subspace"
NECESSARY_HOLDS_ONLY = "necessary_holds_only"


@dataclass
class LocusEntry:
    mu: tuple  # one value per generator (QQi when verified exactly, else complex)
    covectors: Subspace  # P_mu, canonical, as row covectors
    rank_value: int  # n - dim P_mu
    exact: bool  # True when computed over the exact backend

    @property
    def dim_p(self):
        return self.covectors.dim


@dataclass
class RankDropLocus:
    n: int
    entries: list
    flags: list = field(default_factory=list)

    @property
    def max_drop(self):
        return max((e.dim_p for e in self.entries), default=0)

    def worst_entry(self):
        best = None
        for e in self.entries:
            if best is None or e.dim_p > best.dim_p:
                best = e
        return best

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


# ---------------------------------------------------------------------------
# spectra with exact verification
# ---------------------------------------------------------------------------

_SNAP_DENOM = 10**6


def _snap_candidates(z, gap):
    """Small-denominator Gaussian-rational guesses near the complex z."""
    re = Fraction(z.real).limit_denominator(_SNAP_DENOM)
    im = Fraction(z.imag).limit_denominator(_SNAP_DENOM)
    cands = [QQi(re, im)]
    if abs(z.imag) <= gap:
        cands.append(QQi(re, 0))
    if abs(z.real) <= gap:
        cands.append(QQi(0, im))
    if abs(z) <= gap:
        cands.append(QQi(0, 0))
    return cands


def generator_spectrum(A: Matrix, tol=None):
    """Distinct eigenvalue candidates of one generator.

    Returns a list of (value, multiplicity, exact_flag).  For exact-backend
    inputs each float cluster is snapped to a nearby Gaussian rational and
    kept exact only when the exact characteristic polynomial vanishes on it.
    """
    tol = tol or A.tol or DEFAULT_TOL
    vals = np.linalg.eigvals(A.to_float().data)
    clusters = cluster_values(vals.tolist(), tol.tau_gap)
    if A.backend != EXACT:
        return [(v, mult, False) for v, mult in clusters], any(m > 1 for _, m in clusters)
    cp = _char_poly(A)
    out = []
    for center, mult in clusters:
        exact_val = None
        for cand in _snap_candidates(center, tol.tau_gap):
            if cp(cand).is_zero():
                exact_val = cand
                break
        if exact_val is not None:
            out.append((exact_val, mult, True))
        else:
            out.append((center, mult, False))
    return out, False


def _shifted_left_kernel(A: Matrix, mu, exact):
    """Covectors p with p(A - mu I) = 0, i.e. the kernel of (A - mu I)^T."""
    n = A.rows
    if exact and A.backend == EXACT:
        shifted = A - Matrix.identity(n, EXACT).scale(mu)
        return kernel(shifted.T)
    Af = A.to_float()
    shifted = Matrix(Af.data - complex(mu) * np.eye(n), FLOAT, tol=Af.tol or DEFAULT_TOL)
    return kernel(shifted.T)


def rank_drop_locus(G) -> RankDropLocus:
    """All tuples mu with nonzero common left-eigencovector space.

    Tuples whose coordinates are all exactly verified eigenvalues are
    processed with exact kernels; any other tuple falls back to the float
    backend and marks the locus as partially numeric.
    """
    if G.m < 1:
        raise ValueError("rank-drop locus needs at least one generator")
    tol = G.tol or DEFAULT_TOL
    spectra = []
    flags = []
    for A in G.gens:
        spec, merged = generator_spectrum(A, tol)
        spectra.append(spec)
        if merged:
            flags.append("degenerate_spectrum")
    import itertools

    # left-kernels once per (generator, candidate), in both arithmetics
    exact_kernels = []
    float_kernels = []
    for j, spec in enumerate(spectra):
        ek, fk = [], []
        for value, _mult, is_exact in spec:
            fk.append(_shifted_left_kernel(G.gens[j], value, exact=False))
            ek.append(
                _shifted_left_kernel(G.gens[j], value, exact=True)
                if (is_exact and G.backend == EXACT)
                else None
            )
        exact_kernels.append(ek)
        float_kernels.append(fk)

    entries = []
    numeric_used = False
    for combo in itertools.product(*(range(len(s)) for s in spectra)):
        all_exact = G.backend == EXACT and all(
            exact_kernels[j][idx] is not None for j, idx in enumerate(combo)
        )
        kernels = exact_kernels if all_exact else float_kernels
        P = None
        for j, idx in enumerate(combo):
            K = kernels[j][idx]
            P = K if P is None else intersect(P, K)
            if P.dim == 0:
                break
        if P.dim > 0:
            mu = tuple(spectra[j][idx][0] for j, idx in enumerate(combo))
            entries.append(LocusEntry(mu, P, G.n - P.dim, all_exact))
            if not all_exact:
                numeric_used = True
    if numeric_used:
        flags.append("numeric_candidates")
    # deterministic order: exact entries first, then by coordinates
    def key(e):
        return tuple((complex(v).real, complex(v).imag) for v in e.mu)

    entries.sort(key=key)
    return RankDropLocus(G.n, entries, sorted(set(flags)))


def hautus_necessary(G, r: int) -> bool:
    """Necessary condition for an r-dimensional cyclic subspace: the rank of
    every stacked block stays at or above n - r."""
    if not 1 <= r <= G.n:
        raise ValueError("r out of range")
    return rank_drop_locus(G).max_drop <= r


# ---------------------------------------------------------------------------
# Lie closure and solvability
# ---------------------------------------------------------------------------


@dataclass
class LieClosure:
    generators: object
    basis: tuple  # Matrix elements spanning the Lie algebra
    span: Subspace
    derived_dims: list = field(default_factory=list)

    @property
    def dim(self):
        return self.span.dim


def _bracket(A, B):
    return (A @ B) - (B @ A)


def lie_closure(G) -> LieClosure:
    """Lie algebra generated by the operators, via bracket stabilization."""
    n = G.n
    sb = SpanBuilder(n * n, G.backend, G.tol)
    members = []

    def admit(M):
        if sb.add(M.flatten()):
            members.append(M)
            return True
        return False

    frontier = []
    for A in G.gens:
        if admit(A):
            frontier.append(A)
    while frontier:
        new = []
        for A in G.gens:
            for M in frontier:
                C = _bracket(A, M)
                if admit(C):
                    new.append(C)
        frontier = new
    L = LieClosure(G, tuple(members), sb.subspace())
    L.derived_dims = _derived_series_dims(L, G)
    return L


def _derived_series_dims(L: LieClosure, G):
    dims = [L.dim]
    basis = list(L.basis)
    n = G.n
    while dims[-1] > 0:
        sb = SpanBuilder(n * n, G.backend, G.tol)
        members = []
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                C = _bracket(basis[i], basis[j])
                if sb.add(C.flatten()):
                    members.append(C)
        d = sb.dim
        if d == dims[-1]:
            dims.append(d)
            break  # stabilized above zero: not solvable
        dims.append(d)
        basis = members
    return dims


def is_solvable(L: LieClosure) -> bool:
    """Derived series reaches zero."""
    return L.derived_dims[-1] == 0


def hautus_verdict(G, r: int) -> str:
    """Combined verdict for the existence of an r-dimensional cyclic subspace.

    no_cyclic_subspace: the rank condition fails, nothing of dimension r works.
    generic_cyclic_subspace: rank condition holds and the generated Lie
        algebra is solvable, so generic r-dimensional subspaces are cyclic.
    necessary_holds_only: the rank condition holds but sufficiency is not
        established by this criterion alone.
    """
    if not 1 <= r <= G.n:
        raise ValueError("r out of range")
    if not hautus_necessary(G, r):
        return NO_CYCLIC_SUBSPACE
    if is_solvable(lie_closure(G)):
        return GENERIC_CYCLIC_SUBSPACE
    return NECESSARY_HOLDS_ONLY
