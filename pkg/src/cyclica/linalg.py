"""Field-generic dense linear algebra over two scalar backends.

The exact backend works over the Gaussian rationals and decides rank, span
and divisibility questions with no tolerance at all.  The float backend
works over complex128 and pushes every such decision through an explicit
:class:`~cyclica.scalars.ToleranceContext`.

Subspaces are kept in a canonical form (reduced row echelon, pivots
normalized to 1, zero rows dropped) so two subspaces are equal exactly when
their stored bases are equal entrywise.
"""

from __future__ import annotations

import numpy as np

from .scalars import DEFAULT_TOL, QQI_ONE, QQI_ZERO, QQi, ToleranceContext, as_qqi

EXACT = "exact"
FLOAT = "float"


class BackendMixError(TypeError):
    """Raised when exact and float objects meet in one operation."""


def _same_backend(*objs):
    backends = {o.backend for o in objs}
    if len(backends) != 1:
        raise BackendMixError(f"mixed scalar backends: {sorted(backends)}")
    return backends.pop()


def _merge_tol(*objs):
    for o in objs:
        if getattr(o, "tol", None) is not None:
            return o.tol
    return DEFAULT_TOL


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense rows x cols matrix over one backend.

    Exact entries are QQi stored in nested tuples; float entries are a
    read-only complex128 array.  Instances are immutable.
    """

    __slots__ = ("rows", "cols", "backend", "data", "tol")

    def __init__(self, data, backend, tol=None, cols=None):
        if backend == EXACT:
            rows = tuple(tuple(as_qqi(x) for x in row) for row in data)
            ncols = len(rows[0]) if rows else (cols or 0)
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged matrix data")
            object.__setattr__(self, "data", rows)
            object.__setattr__(self, "rows", len(rows))
            object.__setattr__(self, "cols", ncols)
        elif backend == FLOAT:
            arr = np.array(data, dtype=np.complex128)
            if arr.ndim != 2:
                raise ValueError("matrix data must be two-dimensional")
            arr.setflags(write=False)
            object.__setattr__(self, "data", arr)
            object.__setattr__(self, "rows", arr.shape[0])
            object.__setattr__(self, "cols", arr.shape[1])
        else:
            raise ValueError(f"unknown backend {backend!r}")
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "tol", tol if backend == FLOAT else None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact(cls, data):
        return cls(data, EXACT)

    @classmethod
    def from_float(cls, data, tol=None):
        return cls(data, FLOAT, tol=tol or DEFAULT_TOL)

    @classmethod
    def identity(cls, n, backend=EXACT, tol=None):
        if backend == EXACT:
            return cls(
                [[QQI_ONE if i == j else QQI_ZERO for j in range(n)] for i in range(n)],
                EXACT,
            )
        return cls(np.eye(n), FLOAT, tol=tol or DEFAULT_TOL)

    @classmethod
    def zeros(cls, rows, cols, backend=EXACT, tol=None):
        if backend == EXACT:
            return cls([[QQI_ZERO] * cols for _ in range(rows)], EXACT, cols=cols)
        return cls(np.zeros((rows, cols)), FLOAT, tol=tol or DEFAULT_TOL)

    @classmethod
    def from_rows(cls, vectors, backend, tol=None):
        if backend == EXACT:
            return cls([list(v) for v in vectors], EXACT)
        return cls(np.array([np.asarray(v) for v in vectors]), FLOAT, tol=tol)

    @classmethod
    def from_cols(cls, vectors, backend, tol=None):
        return cls.from_rows(vectors, backend, tol=tol).transpose()

    # -- element access -----------------------------------------------------

    def entry(self, i, j):
        return self.data[i][j] if self.backend == EXACT else self.data[i, j]

    def row(self, i):
        return self.data[i] if self.backend == EXACT else self.data[i].copy()

    def col(self, j):
        if self.backend == EXACT:
            return tuple(r[j] for r in self.data)
        return self.data[:, j].copy()

    def row_vectors(self):
        return [self.row(i) for i in range(self.rows)]

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        _same_backend(self, other)

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        if self.backend == EXACT:
            return Matrix(
                [
                    [a + b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.data, other.data)
                ],
                EXACT,
            )
        return Matrix(self.data + other.data, FLOAT, tol=_merge_tol(self, other))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if self.backend == EXACT:
            return Matrix([[-a for a in row] for row in self.data], EXACT)
        return Matrix(-self.data, FLOAT, tol=self.tol)

    def scale(self, s):
        if self.backend == EXACT:
            s = as_qqi(s)
            return Matrix([[s * a for a in row] for row in self.data], EXACT)
        return Matrix(complex(s) * self.data, FLOAT, tol=self.tol)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        if self.backend == EXACT:
            bt = list(zip(*other.data)) if other.data else []
            out = [
                [
                    sum((a * b for a, b in zip(row, colt)), QQI_ZERO)
                    for colt in bt
                ]
                for row in self.data
            ]
            return Matrix(out, EXACT)
        return Matrix(self.data @ other.data, FLOAT, tol=_merge_tol(self, other))

    def apply(self, vec):
        """Matrix-vector product."""
        if self.backend == EXACT:
            return tuple(
                sum((a * x for a, x in zip(row, vec)), QQI_ZERO) for row in self.data
            )
        return self.data @ np.asarray(vec, dtype=np.complex128)

    def transpose(self):
        if self.backend == EXACT:
            return Matrix(list(zip(*self.data)) if self.data else [], EXACT)
        return Matrix(self.data.T.copy(), FLOAT, tol=self.tol)

    @property
    def T(self):
        return self.transpose()

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        if self.backend == EXACT:
            return sum((self.data[i][i] for i in range(self.rows)), QQI_ZERO)
        return complex(np.trace(self.data))

    def is_zero(self):
        if self.backend == EXACT:
            return all(x.is_zero() for row in self.data for x in row)
        tol = self.tol or DEFAULT_TOL
        return bool(np.all(np.abs(self.data) <= tol.tau_rank))

    def flatten(self):
        """Row-major flattening into an ambient rows*cols vector."""
        if self.backend == EXACT:
            return tuple(x for row in self.data for x in row)
        return self.data.reshape(-1).copy()

    @classmethod
    def unflatten(cls, vec, rows, cols, backend, tol=None):
        if backend == EXACT:
            vec = list(vec)
            return cls([vec[i * cols : (i + 1) * cols] for i in range(rows)], EXACT)
        return cls(np.asarray(vec).reshape(rows, cols), FLOAT, tol=tol)

    def block(self, r0, r1, c0, c1):
        """Submatrix with rows r0:r1 and columns c0:c1."""
        if self.backend == EXACT:
            return Matrix(
                [row[c0:c1] for row in self.data[r0:r1]], EXACT, cols=c1 - c0
            )
        return Matrix(self.data[r0:r1, c0:c1], FLOAT, tol=self.tol)

    @classmethod
    def block_diag(cls, blocks, backend=None, tol=None):
        blocks = list(blocks)
        backend = backend or blocks[0].backend
        n = sum(b.rows for b in blocks)
        if backend == EXACT:
            out = [[QQI_ZERO] * n for _ in range(n)]
        else:
            out = np.zeros((n, n), dtype=np.complex128)
        at = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    if backend == EXACT:
                        out[at + i][at + j] = b.entry(i, j)
                    else:
                        out[at + i, at + j] = b.entry(i, j)
            at += b.rows
        return cls(out, backend, tol=tol or (blocks[0].tol if backend == FLOAT else None))

    def to_float(self, tol=None):
        if self.backend == FLOAT:
            return self
        return Matrix(
            [[complex(x) for x in row] for row in self.data],
            FLOAT,
            tol=tol or DEFAULT_TOL,
        )

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        if self.backend == FLOAT:
            return Matrix(np.linalg.inv(self.data), FLOAT, tol=self.tol)
        # Gauss-Jordan on [A | I]
        aug = [list(row) + [QQI_ONE if i == j else QQI_ZERO for j in range(n)]
               for i, row in enumerate(self.data)]
        for c in range(n):
            piv = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = QQI_ONE / aug[c][c]
            aug[c] = [inv * x for x in aug[c]]
            for r in range(n):
                if r != c and not aug[r][c].is_zero():
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Matrix([row[n:] for row in aug], EXACT)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.backend != other.backend:
            return False
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if self.backend == EXACT:
            return self.data == other.data
        return bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        if self.backend == EXACT:
            return hash(self.data)
        return hash(self.data.tobytes())

    def allclose(self, other, atol=1e-9):
        a, b = self.to_float(), other.to_float()
        return bool(np.allclose(a.data, b.data, atol=atol))

    def __repr__(self):
        if self.backend == EXACT:
            body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
            return f"Matrix[{self.rows}x{self.cols} exact: {body}]"
        return f"Matrix[{self.rows}x{self.cols} float]\n{self.data}"


# ---------------------------------------------------------------------------
# echelon spans
# ---------------------------------------------------------------------------


def _vec_backend_zero(ambient, backend):
    if backend == EXACT:
        return (QQI_ZERO,) * ambient
    return np.zeros(ambient, dtype=np.complex128)


class SpanBuilder:
    """Incrementally maintained reduced row echelon span.

    Rows are kept fully reduced and pivot-normalized at all times, so the
    basis is canonical after every insertion and membership tests are a
    single reduction pass.
    """

    def __init__(self, ambient, backend, tol=None):
        self.ambient = ambient
        self.backend = backend
        self.tol = tol if backend == FLOAT else None
        self.rows = []  # list of vectors, sorted by pivot column
        self.pivots = []  # pivot column of each row

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        """Eliminate existing pivots from vec; returns the residual."""
        if self.backend == EXACT:
            v = list(vec)
            for row, p in zip(self.rows, self.pivots):
                c = v[p]
                if not c.is_zero():
                    for j in range(p, self.ambient):
                        v[j] = v[j] - c * row[j]
            return v
        v = np.array(vec, dtype=np.complex128)
        for row, p in zip(self.rows, self.pivots):
            v = v - v[p] * row
        return v

    def _pivot_of(self, v, scale):
        if self.backend == EXACT:
            for j, x in enumerate(v):
                if not x.is_zero():
                    return j
            return None
        tol = self.tol or DEFAULT_TOL
        mags = np.abs(v)
        j = int(np.argmax(mags))
        if mags[j] <= tol.tau_rank * max(scale, 1.0):
            return None
        return j

    def add(self, vec):
        """Insert vec's direction into the span; returns True if dim grew."""
        if self.backend == EXACT:
            scale = 1
        else:
            scale = float(np.max(np.abs(np.asarray(vec)))) if len(vec) else 0.0
        v = self._reduce(vec)
        p = self._pivot_of(v, scale)
        if p is None:
            return False
        if self.backend == EXACT:
            inv = QQI_ONE / v[p]
            v = tuple(inv * x for x in v)
            # clear the new pivot column from existing rows
            new_rows = []
            for row in self.rows:
                c = row[p]
                if c.is_zero():
                    new_rows.append(row)
                else:
                    new_rows.append(tuple(x - c * y for x, y in zip(row, v)))
            self.rows = new_rows
        else:
            v = v / v[p]
            v = np.where(np.abs(v) <= (self.tol or DEFAULT_TOL).tau_rank, 0.0, v)
            self.rows = [row - row[p] * v for row in self.rows]
        # insert keeping pivot order
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v if self.backend == EXACT else v)
        self.pivots.insert(at, p)
        return True

    def add_all(self, vectors):
        grew = False
        for v in vectors:
            grew |= self.add(v)
        return grew

    def contains(self, vec):
        if self.backend == EXACT:
            return all(x.is_zero() for x in self._reduce(vec))
        v = np.asarray(vec, dtype=np.complex128)
        scale = float(np.max(np.abs(v))) if v.size else 0.0
        if scale == 0.0:
            return True
        r = self._reduce(v)
        tol = self.tol or DEFAULT_TOL
        return bool(np.max(np.abs(r)) <= tol.tau_rank * max(scale, 1.0))

    def subspace(self):
        return Subspace._from_canonical(
            self.ambient, list(self.rows), self.backend, self.tol,
            pivots=list(self.pivots),
        )


class CombinationTracker:
    """Echelon span that remembers how each residual was formed.

    add(vec) returns None while vectors stay independent; for the first
    dependent vector it returns coefficients c with vec = sum c_i * v_i over
    the previously added vectors.  Exact backend only.
    """

    def __init__(self, ambient):
        self.ambient = ambient
        self.rows = []  # forward-eliminated residuals, one pivot each
        self.pivots = []
        self.combos = []  # rows[i] = sum_j combos[i][j] * original_j
        self.count = 0

    def add(self, vec):
        # invariant during reduction: v = vec + sum_j combo[j] * original_j
        v = list(vec)
        combo = [QQI_ZERO] * self.count
        for row, p, rc in zip(self.rows, self.pivots, self.combos):
            c = v[p]
            if not c.is_zero():
                for j in range(self.ambient):
                    v[j] = v[j] - c * row[j]
                for j in range(len(rc)):
                    combo[j] = combo[j] - c * rc[j]
        piv = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return [-c for c in combo]
        inv = QQI_ONE / v[piv]
        self.rows.append(tuple(inv * x for x in v))
        self.combos.append([inv * x for x in combo] + [inv])
        self.pivots.append(piv)
        self.count += 1
        return None


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of the ambient coordinate space, stored canonically.

    The basis rows are in reduced row echelon form with pivots 1, so
    equality of subspaces is equality of bases.
    """

    __slots__ = ("ambient_dim", "backend", "tol", "_rows", "_pivots")

    def __init__(self, *args, **kwargs):
        raise TypeError("use Subspace.from_vectors / zero / full")

    @classmethod
    def _from_canonical(cls, ambient, rows, backend, tol, pivots=None):
        self = object.__new__(cls)
        object.__setattr__(self, "ambient_dim", ambient)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "tol", tol if backend == FLOAT else None)
        if backend == EXACT:
            rows = tuple(tuple(r) for r in rows)
        else:
            rows = tuple(np.asarray(r, dtype=np.complex128) for r in rows)
        object.__setattr__(self, "_rows", rows)
        if pivots is None:
            pivots = []
            for r in rows:
                if backend == EXACT:
                    pivots.append(next(j for j, x in enumerate(r) if not x.is_zero()))
                else:
                    # pivot entries are normalized to exactly 1
                    pivots.append(int(np.argmax(np.abs(np.asarray(r) - 1.0) < 1e-12)))
        object.__setattr__(self, "_pivots", tuple(pivots))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient, vectors, backend=EXACT, tol=None):
        sb = SpanBuilder(ambient, backend, tol)
        for v in vectors:
            if backend == EXACT:
                sb.add(tuple(as_qqi(x) for x in v))
            else:
                sb.add(np.asarray(v, dtype=np.complex128))
        return sb.subspace()

    @classmethod
    def zero(cls, ambient, backend=EXACT, tol=None):
        return cls._from_canonical(ambient, [], backend, tol)

    @classmethod
    def full(cls, ambient, backend=EXACT, tol=None):
        eye = Matrix.identity(ambient, backend, tol)
        return cls._from_canonical(ambient, eye.row_vectors(), backend, tol)

    @property
    def dim(self):
        return len(self._rows)

    @property
    def basis(self):
        return self._rows

    def basis_matrix(self):
        if self.dim == 0:
            return Matrix.zeros(0, self.ambient_dim, self.backend, self.tol)
        return Matrix.from_rows(self._rows, self.backend, tol=self.tol)

    def builder(self):
        sb = SpanBuilder(self.ambient_dim, self.backend, self.tol)
        sb.rows = list(self._rows)
        sb.pivots = list(self._pivots)
        return sb

    def contains(self, vec):
        return self.builder().contains(vec)

    def contains_subspace(self, other):
        b = self.builder()
        return all(b.contains(v) for v in other.basis)

    def is_full(self):
        return self.dim == self.ambient_dim

    def is_zero(self):
        return self.dim == 0

    def union_span(self, other):
        """Smallest subspace containing both."""
        _same_backend(self, other)
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        sb = self.builder()
        sb.add_all(other.basis)
        return sb.subspace()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.backend != other.backend or self.ambient_dim != other.ambient_dim:
            return False
        if self.dim != other.dim:
            return False
        if self.backend == EXACT:
            return self._rows == other._rows
        tol = (self.tol or DEFAULT_TOL).tau_rank
        return all(
            bool(np.allclose(a, b, atol=10 * tol)) for a, b in zip(self._rows, other._rows)
        )

    def __hash__(self):
        if self.backend == EXACT:
            return hash((self.ambient_dim, self._rows))
        return hash((self.ambient_dim, self.dim))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim}, {self.backend})"


# ---------------------------------------------------------------------------
# rank / kernel / duality
# ---------------------------------------------------------------------------


def rank(M: Matrix) -> int:
    """Row rank; the float backend thresholds singular values at
    tau_rank relative to the largest one."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.backend == EXACT:
        sb = SpanBuilder(M.cols, EXACT)
        sb.add_all(M.row_vectors())
        return sb.dim
    tol = M.tol or DEFAULT_TOL
    s = np.linalg.svd(M.data, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.tau_rank * s[0]))


def kernel(M: Matrix) -> Subspace:
    """Canonical right kernel {v : Mv = 0}."""
    if M.backend == EXACT:
        sb = SpanBuilder(M.cols, EXACT)
        sb.add_all(M.row_vectors())
        pivots = set(sb.pivots)
        free = [j for j in range(M.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [QQI_ZERO] * M.cols
            v[f] = QQI_ONE
            for row, p in zip(sb.rows, sb.pivots):
                v[p] = -row[f]
            basis.append(tuple(v))
        return Subspace.from_vectors(M.cols, basis, EXACT)
    tol = M.tol or DEFAULT_TOL
    if M.rows == 0:
        return Subspace.full(M.cols, FLOAT, tol)
    u, s, vh = np.linalg.svd(M.data, full_matrices=True)
    cutoff = tol.tau_rank * (s[0] if s.size and s[0] > 0 else 1.0)
    r = int(np.sum(s > cutoff))
    return Subspace.from_vectors(M.cols, [vh[i].conj() for i in range(r, M.cols)],
                                 FLOAT, tol)


def annihilator(S: Subspace) -> Subspace:
    """Covectors p with p.v = 0 for every basis v of S, under the bilinear
    (unconjugated) pairing."""
    if S.dim == 0:
        return Subspace.full(S.ambient_dim, S.backend, S.tol)
    return kernel(S.basis_matrix())


def intersect(S1: Subspace, S2: Subspace) -> Subspace:
    """S1 intersected with S2 via annihilator duality."""
    _same_backend(S1, S2)
    if S1.ambient_dim != S2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    a = annihilator(S1).union_span(annihilator(S2))
    return annihilator(a)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Coefficients in ascending degree order over one backend."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs, backend=EXACT):
        if backend == EXACT:
            cs = [as_qqi(c) for c in coeffs]
            while cs and cs[-1].is_zero():
                cs.pop()
            self.coeffs = tuple(cs)
        else:
            cs = [complex(c) for c in coeffs]
            while cs and cs[-1] == 0:
                cs.pop()
            self.coeffs = tuple(cs)
        self.backend = backend

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return QQI_ZERO if self.backend == EXACT else 0j

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if self.backend == EXACT:
            inv = QQI_ONE / lead
            return Polynomial([inv * c for c in self.coeffs], EXACT)
        return Polynomial([c / lead for c in self.coeffs], FLOAT)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Polynomial([], self.backend)
        zero = QQI_ZERO if self.backend == EXACT else 0j
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, self.backend)

    def divmod(self, other):
        """Exact-backend polynomial division."""
        if self.backend != EXACT or other.backend != EXACT:
            raise ValueError("polynomial division requires the exact backend")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [QQI_ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.coeffs[-1]
        while len(rem) - 1 >= d and any(not c.is_zero() for c in rem):
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - f * c
            while rem and rem[-1].is_zero():
                rem.pop()
        return Polynomial(q, EXACT), Polynomial(rem, EXACT)

    def divides(self, other) -> bool:
        _, r = other.divmod(self)
        return r.is_zero()

    def __call__(self, x):
        """Evaluate at a scalar or a square Matrix (Horner)."""
        if isinstance(x, Matrix):
            n = x.rows
            acc = Matrix.zeros(n, n, x.backend, x.tol)
            eye = Matrix.identity(n, x.backend, x.tol)
            for c in reversed(self.coeffs):
                acc = (x @ acc) + eye.scale(c if x.backend == EXACT else complex(c))
            return acc
        acc = QQI_ZERO if self.backend == EXACT else 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_float(self):
        if self.backend == FLOAT:
            return self
        return Polynomial([complex(c) for c in self.coeffs], FLOAT)

    def roots(self):
        """Numeric roots (ascending by real part, then imaginary)."""
        p = self.to_float()
        if p.degree <= 0:
            return []
        arr = np.array(p.coeffs[::-1], dtype=np.complex128)
        rts = np.roots(arr)
        return sorted(rts.tolist(), key=lambda z: (z.real, z.imag))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.backend == other.backend and self.coeffs == other.coeffs

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = [f"({c})x^{k}" for k, c in enumerate(self.coeffs)]
        return "Polynomial(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# polynomial invariants of a matrix
# ---------------------------------------------------------------------------


def char_poly(A: Matrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - A), degree n."""
    if A.rows != A.cols:
        raise ValueError("characteristic polynomial of non-square matrix")
    n = A.rows
    if A.backend == EXACT:
        # Faddeev-LeVerrier; divisions are by integers only
        eye = Matrix.identity(n, EXACT)
        coeffs = [QQI_ONE]  # of x^n
        M = Matrix.zeros(n, n, EXACT)
        c = QQI_ONE
        for k in range(1, n + 1):
            M = A @ (M + eye.scale(c))
            c = -(M.trace() / k)
            coeffs.append(c)
        return Polynomial(coeffs[::-1], EXACT)
    eig = np.linalg.eigvals(A.data)
    cs = np.poly(eig)  # descending
    return Polynomial(cs[::-1].tolist(), FLOAT)


def min_poly(A: Matrix) -> Polynomial:
    """Monic minimal polynomial; exact backend only (its degree is a rank
    decision)."""
    if A.rows != A.cols:
        raise ValueError("minimal polynomial of non-square matrix")
    if A.backend != EXACT:
        raise ValueError("minimal polynomial requires the exact backend")
    n = A.rows
    tracker = CombinationTracker(n * n)
    power = Matrix.identity(n, EXACT)
    k = 0
    while True:
        combo = tracker.add(power.flatten())
        if combo is not None:
            # A^k = sum combo_i A^i  =>  min poly = x^k - sum combo_i x^i
            coeffs = [-c for c in combo] + [QQI_ONE]
            return Polynomial(coeffs, EXACT)
        power = power @ A
        k += 1
        if k > n:
            raise RuntimeError("minimal polynomial search exceeded degree bound")


def eigenvalues(A: Matrix, tol: ToleranceContext | None = None):
    """Eigenvalues with multiplicities, grouped within tau_gap.

    Returns a list of (value: complex, multiplicity: int) sorted by
    (real, imag) of the value.
    """
    if A.rows != A.cols:
        raise ValueError("eigenvalues of non-square matrix")
    tol = tol or A.tol or DEFAULT_TOL
    vals = np.linalg.eigvals(A.to_float().data)
    return cluster_values(vals.tolist(), tol.tau_gap)


def cluster_values(values, gap):
    """Group complex values by single-linkage within the given gap.

    Returns [(cluster mean, cluster size)] sorted by (real, imag).
    """
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= gap:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(values[i])
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out
