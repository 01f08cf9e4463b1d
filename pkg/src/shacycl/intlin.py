"""Exact linear algebra over the integers.

All heavy routines work on numpy arrays of ``dtype=object`` holding Python
ints, so arithmetic never overflows.  Matrices built from cochain
differentials are sparse and are kept in scipy CSR form (int64) until an
exact algorithm needs them dense.
"""
from __future__ import annotations

import contextvars
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "IntMatrix",
    "SmithForm",
    "FinAbGroup",
    "FinAbMap",
    "IllDefinedHomomorphism",
    "snf",
    "hnf",
    "kernel_basis",
    "cokernel_structure",
    "solve",
    "fin_ab_kernel",
    "as_object_array",
]

_INT64_SAFE = 2**62
SPARSE_DENSITY = 0.10


class IllDefinedHomomorphism(ValueError):
    """Raised when a matrix does not induce a map of finite abelian groups."""


class BudgetExceeded(RuntimeError):
    """The active time budget ran out inside an exact kernel."""


_deadline: contextvars.ContextVar[float | None] = contextvars.ContextVar("shacycl_deadline", default=None)


@contextmanager
def time_budget(seconds: float | None):
    """Abort SNF/HNF work with :class:`BudgetExceeded` after ``seconds``."""
    token = _deadline.set(None if seconds is None else time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)


def check_budget() -> None:
    d = _deadline.get()
    if d is not None and time.monotonic() > d:
        raise BudgetExceeded("time budget exceeded")


def as_object_array(a) -> np.ndarray:
    """Return a 2-d object array of Python ints (a copy)."""
    if isinstance(a, IntMatrix):
        return a.to_array()
    if sp.issparse(a):
        a = a.toarray()
    arr = np.array(a, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    flat = out.reshape(-1)
    for k, v in enumerate(arr.reshape(-1)):
        flat[k] = int(v)
    return out


def _eye(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _zeros(m: int, n: int) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out.fill(0)
    return out


def _fits_int64(arr: np.ndarray) -> bool:
    if arr.size == 0:
        return True
    return max(abs(int(x)) for x in arr.reshape(-1)) < _INT64_SAFE


class IntMatrix:
    """Immutable integer matrix of arbitrary precision.

    Stored dense (object array) by default.  Matrices whose density is below
    ``SPARSE_DENSITY`` and whose entries fit in int64 may be stored as a
    scipy CSR matrix; see :meth:`from_sparse`.
    """

    __slots__ = ("_dense", "_sparse", "rows", "cols")

    def __init__(self, data=None, *, rows: int | None = None, cols: int | None = None):
        if data is None:
            data = _zeros(rows or 0, cols or 0)
        if sp.issparse(data):
            csr = sp.csr_matrix(data, dtype=np.int64)
            csr.sum_duplicates()
            csr.eliminate_zeros()
            self._sparse = csr
            self._dense = None
            self.rows, self.cols = csr.shape
            return
        arr = as_object_array(data)
        if arr.ndim != 2:
            raise ValueError("IntMatrix needs 2-d data")
        if rows is not None and cols is not None and arr.size == 0:
            arr = _zeros(rows, cols)
        arr.flags.writeable = False
        self._dense = arr
        self._sparse = None
        self.rows, self.cols = arr.shape

    @classmethod
    def from_sparse(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        """Build from (row, col, value) triplets; duplicates are summed."""
        trip = list(triplets)
        if trip:
            r, c, v = zip(*trip)
        else:
            r, c, v = (), (), ()
        if any(abs(int(x)) >= _INT64_SAFE for x in v):
            dense = _zeros(rows, cols)
            for i, j, x in trip:
                dense[i, j] += int(x)
            return cls(dense)
        csr = sp.csr_matrix(
            (np.asarray(v, dtype=np.int64), (np.asarray(r, dtype=np.int64), np.asarray(c, dtype=np.int64))),
            shape=(rows, cols),
        )
        m = cls(csr)
        if rows * cols and m.nnz / (rows * cols) >= SPARSE_DENSITY:
            return cls(m.to_array())
        return m

    @classmethod
    def from_coo(cls, rows: int, cols: int, r: np.ndarray, c: np.ndarray, v: np.ndarray) -> "IntMatrix":
        """Build from int64 coordinate arrays; duplicates are summed."""
        csr = sp.csr_matrix(
            (np.asarray(v, dtype=np.int64), (np.asarray(r, dtype=np.int64), np.asarray(c, dtype=np.int64))),
            shape=(rows, cols),
        )
        m = cls(csr)
        if rows * cols and m.nnz / (rows * cols) >= SPARSE_DENSITY:
            return cls(m.to_array())
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(_eye(n))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(_zeros(m, n))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_sparse(self) -> bool:
        return self._sparse is not None

    @property
    def nnz(self) -> int:
        if self._sparse is not None:
            return int(self._sparse.nnz)
        return int(np.count_nonzero(self._dense))

    @property
    def entries(self) -> list[int]:
        """Row-major entries."""
        return [int(x) for x in self.to_array().reshape(-1)]

    def to_array(self) -> np.ndarray:
        """Writable dense object-array copy."""
        if self._sparse is not None:
            dense = _zeros(self.rows, self.cols)
            coo = self._sparse.tocoo()
            for i, j, v in zip(coo.row, coo.col, coo.data):
                dense[i, j] = int(v)
            return dense
        return self._dense.copy()

    def to_scipy(self) -> sp.csr_matrix:
        if self._sparse is not None:
            return self._sparse
        if not _fits_int64(self._dense):
            raise OverflowError("entries exceed int64")
        return sp.csr_matrix(self._dense.astype(np.int64))

    def __getitem__(self, idx):
        if self._sparse is not None:
            i, j = idx
            return int(self._sparse[i, j])
        return self._dense[idx]

    def column(self, j: int) -> list[int]:
        return [int(x) for x in self.to_array()[:, j]]

    def transpose(self) -> "IntMatrix":
        if self._sparse is not None:
            return IntMatrix(self._sparse.T.tocsr())
        return IntMatrix(self._dense.T.copy())

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            if self.is_sparse or other.is_sparse:
                try:
                    a, b = self.to_scipy(), other.to_scipy()
                except OverflowError:
                    a = b = None
                if a is not None:
                    bound = _abs_max(a) * _abs_max(b) * max(self.cols, 1)
                    if bound < _INT64_SAFE:
                        return IntMatrix(a @ b)
            return IntMatrix(self.to_array().dot(other.to_array()) if self.cols else _zeros(self.rows, other.cols))
        vec = np.array([int(x) for x in other], dtype=object)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        if self.cols == 0:
            return [0] * self.rows
        if self._sparse is not None:
            arr = self._sparse
            vmax = max((abs(int(x)) for x in vec), default=0)
            if vmax * _abs_max(arr) * max(self.cols, 1) < _INT64_SAFE:
                return [int(x) for x in arr @ vec.astype(np.int64)]
            out = [0] * self.rows
            for i in range(self.rows):
                lo, hi = arr.indptr[i], arr.indptr[i + 1]
                out[i] = sum(int(arr.data[k]) * vec[arr.indices[k]] for k in range(lo, hi))
            return out
        return [int(x) for x in self._dense.dot(vec)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.is_sparse and other.is_sparse:
            return (self._sparse != other._sparse).nnz == 0
        return bool(np.array_equal(self.to_array(), other.to_array()))

    def __hash__(self):
        return hash((self.shape, tuple(self.entries)))

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __repr__(self) -> str:
        kind = "sparse" if self.is_sparse else "dense"
        if self.rows * self.cols <= 36:
            return f"IntMatrix({self.to_array().tolist()})"
        return f"IntMatrix<{self.rows}x{self.cols}, {kind}, nnz={self.nnz}>"

    def to_json(self) -> dict:
        return {"rows": str(self.rows), "cols": str(self.cols), "entries": [str(x) for x in self.entries]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "IntMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = [int(x) for x in obj["entries"]]
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows*cols")
        arr = _zeros(rows, cols)
        if entries:
            arr[:, :] = np.array(entries, dtype=object).reshape(rows, cols)
        return cls(arr)


def _abs_max(a: sp.csr_matrix) -> int:
    return int(abs(a.data).max()) if a.nnz else 0


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == diag(d)`` with U, V unimodular.

    ``d`` has length ``min(rows, cols)``; unit factors come first and zeros
    last.  Either transform may be ``None`` when it was not requested.
    """

    d: tuple[int, ...]
    U: IntMatrix | None
    V: IntMatrix | None
    rank: int

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        D = _zeros(rows, cols)
        for i, x in enumerate(self.d):
            D[i, i] = x
        return IntMatrix(D)


def _swap_rows(M: np.ndarray | None, i: int, j: int) -> None:
    if M is not None and i != j:
        M[[i, j], :] = M[[j, i], :]


def _swap_cols(M: np.ndarray | None, i: int, j: int) -> None:
    if M is not None and i != j:
        M[:, [i, j]] = M[:, [j, i]]


def _nonzero_idx(vec: np.ndarray) -> np.ndarray:
    return np.flatnonzero(vec != 0)


def _row_axpy(M: np.ndarray, targets: np.ndarray, q: np.ndarray, src: int) -> None:
    """M[targets] -= q * M[src], touching only the support of M[src]."""
    support = _nonzero_idx(M[src])
    if support.size == 0 or targets.size == 0:
        return
    M[np.ix_(targets, support)] -= np.multiply.outer(q, M[src, support])


def _col_axpy(M: np.ndarray, targets: np.ndarray, q: np.ndarray, src: int) -> None:
    """M[:, targets] -= M[:, src] * q, touching only the support of M[:, src]."""
    support = _nonzero_idx(M[:, src])
    if support.size == 0 or targets.size == 0:
        return
    M[np.ix_(support, targets)] -= np.multiply.outer(M[support, src], q)


def _choose_pivot(sub: np.ndarray) -> tuple[int, int] | None:
    mask = sub != 0
    if not mask.any():
        return None
    rows, cols = np.nonzero(mask)
    vals = np.array([abs(v) for v in sub[rows, cols]], dtype=object)
    best = min(vals)
    cand = np.flatnonzero(vals == best)
    if cand.size == 1:
        k = cand[0]
    else:
        # Markowitz tie-break limits fill-in
        rnz = mask.sum(axis=1)
        cnz = mask.sum(axis=0)
        cost = (rnz[rows[cand]] - 1) * (cnz[cols[cand]] - 1)
        k = cand[int(np.argmin(cost))]
    return int(rows[k]), int(cols[k])


def _snf_arrays(A: np.ndarray, want_u: bool, want_v: bool):
    m, n = A.shape
    U = _eye(m) if want_u else None
    V = _eye(n) if want_v else None
    t = 0
    while t < min(m, n):
        check_budget()
        piv = _choose_pivot(A[t:, t:])
        if piv is None:
            break
        i, j = piv[0] + t, piv[1] + t
        _swap_rows(A, t, i)
        _swap_rows(U, t, i)
        _swap_cols(A, t, j)
        _swap_cols(V, t, j)
        while True:
            p = A[t, t]
            rows = _nonzero_idx(A[t + 1:, t]) + t + 1
            if rows.size:
                q = np.array([x // p for x in A[rows, t]], dtype=object)
                _row_axpy(A, rows, q, t)
                if U is not None:
                    _row_axpy(U, rows, q, t)
                left = rows[A[rows, t] != 0]
                if left.size:
                    k = left[int(np.argmin([abs(x) for x in A[left, t]]))]
                    _swap_rows(A, t, k)
                    _swap_rows(U, t, k)
                    continue
            cols = _nonzero_idx(A[t, t + 1:]) + t + 1
            if cols.size:
                q = np.array([x // p for x in A[t, cols]], dtype=object)
                _col_axpy(A, cols, q, t)
                if V is not None:
                    _col_axpy(V, cols, q, t)
                left = cols[A[t, cols] != 0]
                if left.size:
                    k = left[int(np.argmin([abs(x) for x in A[t, left]]))]
                    _swap_cols(A, t, k)
                    _swap_cols(V, t, k)
                    continue
            if abs(p) != 1 and t + 1 < m and t + 1 < n:
                rest = A[t + 1:, t + 1:]
                bad = np.argwhere(np.vectorize(lambda x: x % p != 0, otypes=[bool])(rest)) if rest.size else []
                if len(bad):
                    k = int(bad[0][0]) + t + 1
                    A[t, :] += A[k, :]
                    if U is not None:
                        U[t, :] += U[k, :]
                    continue
            break
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if U is not None:
                U[t, :] = -U[t, :]
        t += 1
    d = tuple(int(A[k, k]) for k in range(min(m, n)))
    return d, t, U, V


def snf(A, *, transforms: bool = True, want_u: bool | None = None, want_v: bool | None = None) -> SmithForm:
    """Smith normal form ``U @ A @ V = diag(d)``.

    Pivoting picks the smallest nonzero magnitude, ties broken by the
    Markowitz fill-in estimate.
    """
    arr = as_object_array(A)
    if arr.ndim != 2:
        arr = arr.reshape(0, 0)
    want_u = transforms if want_u is None else want_u
    want_v = transforms if want_v is None else want_v
    d, rank, U, V = _snf_arrays(arr, want_u, want_v)
    return SmithForm(
        d=d,
        U=IntMatrix(U) if U is not None else None,
        V=IntMatrix(V) if V is not None else None,
        rank=rank,
    )


def hnf(A, *, reduce: bool = True) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, T)`` with ``A @ T == H`` and ``T`` unimodular.  The nonzero
    columns of ``H`` come first; their leading rows strictly increase, leading
    entries are positive, and with ``reduce`` every entry to the left of a
    leading entry lies in ``[0, leading)``.
    """
    H = as_object_array(A)
    m, n = H.shape
    T = _eye(n)
    r = 0
    for i in range(m):
        if r >= n:
            break
        check_budget()
        while True:
            nz = _nonzero_idx(H[i, r:]) + r
            if nz.size == 0:
                break
            k = nz[int(np.argmin([abs(x) for x in H[i, nz]]))]
            _swap_cols(H, r, k)
            _swap_cols(T, r, k)
            others = _nonzero_idx(H[i, r + 1:]) + r + 1
            if others.size == 0:
                break
            p = H[i, r]
            q = np.array([x // p for x in H[i, others]], dtype=object)
            _col_axpy(H, others, q, r)
            _col_axpy(T, others, q, r)
        if H[i, r] == 0:
            continue
        if H[i, r] < 0:
            H[:, r] = -H[:, r]
            T[:, r] = -T[:, r]
        if reduce and r:
            p = H[i, r]
            left = np.arange(r)
            q = np.array([x // p for x in H[i, :r]], dtype=object)
            nzq = left[q != 0]
            if nzq.size:
                _col_axpy(H, nzq, q[nzq], r)
                _col_axpy(T, nzq, q[nzq], r)
        r += 1
    return IntMatrix(H), IntMatrix(T)


def kernel_basis(A) -> list[list[int]]:
    """Basis of the saturated lattice ``{v : A v = 0}``."""
    arr = as_object_array(A)
    n = arr.shape[1]
    if n == 0:
        return []
    H, T = hnf(arr, reduce=False)
    Harr = H.to_array()
    nonzero_cols = [j for j in range(n) if np.any(Harr[:, j] != 0)]
    rank = len(nonzero_cols)
    Tarr = T.to_array()
    out = []
    for j in range(rank, n):
        v = [int(x) for x in Tarr[:, j]]
        lead = next(x for x in v if x)
        out.append(v if lead > 0 else [-x for x in v])
    return out


@dataclass(frozen=True, eq=False)
class FinAbGroup:
    """Finitely generated abelian group ``Z/d_1 + ... + Z/d_k + Z^free_rank``.

    ``torsion`` holds the invariant factors, each at least 2 and dividing the
    next.  Build from arbitrary cyclic orders with :meth:`from_orders`.
    """

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        tors = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if any(x < 2 for x in tors):
            raise ValueError(f"invariant factors must be >= 2, got {tors}")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"invariant factors must divide each other, got {tors}")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FinAbGroup":
        """Canonical form of ``+ Z/o_i``; an order of 0 means a copy of Z."""
        orders = [abs(int(o)) for o in orders]
        diag = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        d = snf(diag, transforms=False).d if orders else ()
        free = sum(1 for x in d if x == 0)
        return cls(tuple(x for x in d if x > 1), free)

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    @classmethod
    def elementary(cls, p: int, k: int) -> "FinAbGroup":
        return cls((p,) * k)

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def relation_orders(self) -> tuple[int, ...]:
        """Order of each generator, 0 for free generators."""
        return self.torsion + (0,) * self.free_rank

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for x in self.torsion:
            out *= x
        return out

    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative: torsion coordinates reduced into [0, d)."""
        return tuple(int(c) % d if d else int(c) for c, d in zip(coords, self.relation_orders))

    def __eq__(self, other):
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return self.torsion == other.torsion and self.free_rank == other.free_rank

    def __hash__(self):
        return hash((self.torsion, self.free_rank))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FinAbGroup({self.torsion}, free_rank={self.free_rank})"

    def to_json(self) -> dict:
        return {"torsion": [str(x) for x in self.torsion], "free_rank": str(self.free_rank)}

    @classmethod
    def from_json(cls, obj: dict) -> "FinAbGroup":
        return cls(tuple(int(x) for x in obj["torsion"]), int(obj["free_rank"]))


@dataclass(frozen=True)
class DirectSum:
    """External direct sum kept as the list of its summands.

    Used as the target of a stacked map; it is deliberately not put into
    invariant-factor form so coordinates stay attached to each summand.
    """

    summands: tuple[FinAbGroup, ...]

    @property
    def ngens(self) -> int:
        return sum(S.ngens for S in self.summands)

    @property
    def relation_orders(self) -> tuple[int, ...]:
        return tuple(x for S in self.summands for x in S.relation_orders)

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(c) % d if d else int(c) for c, d in zip(coords, self.relation_orders))

    def canonical(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.relation_orders)


@dataclass(frozen=True)
class FinAbMap:
    """Homomorphism given on generator coordinates.

    ``matrix`` has ``target.ngens`` rows and ``source.ngens`` columns; it is
    only meaningful modulo the target relations.
    """

    source: FinAbGroup
    target: FinAbGroup | DirectSum
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.target.ngens}x{self.source.ngens}"
            )

    def is_well_defined(self) -> bool:
        M = self.matrix.to_array()
        for j, a in enumerate(self.source.relation_orders):
            for i, b in enumerate(self.target.relation_orders):
                v = a * M[i, j]
                if (v % b if b else v) != 0:
                    return False
        return True

    def __call__(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix @ list(coords))

    def compose(self, first: "FinAbMap") -> "FinAbMap":
        """``self ∘ first``."""
        if first.target != self.source:
            raise ValueError("cannot compose: groups differ")
        return FinAbMap(first.source, self.target, self.matrix @ first.matrix)

    def reduced_matrix(self) -> IntMatrix:
        M = self.matrix.to_array()
        for i, b in enumerate(self.target.relation_orders):
            if b:
                M[i, :] = [x % b for x in M[i, :]]
        return IntMatrix(M)

    def equals(self, other: "FinAbMap") -> bool:
        return (
            self.source == other.source
            and self.target == other.target
            and self.reduced_matrix() == other.reduced_matrix()
        )

    def is_zero(self) -> bool:
        return self.reduced_matrix().is_zero()

    @classmethod
    def stack(cls, maps: Sequence["FinAbMap"]) -> "FinAbMap":
        """The product map ``x -> (f_1(x), ..., f_k(x))`` into a direct sum."""
        if not maps:
            raise ValueError("nothing to stack")
        src = maps[0].source
        if any(f.source != src for f in maps):
            raise ValueError("stacked maps need a common source")
        blocks = [f.matrix.to_array() for f in maps]
        rows = sum(b.shape[0] for b in blocks)
        M = _zeros(rows, src.ngens)
        off = 0
        for b in blocks:
            M[off:off + b.shape[0], :] = b
            off += b.shape[0]
        return cls(src, DirectSum(tuple(f.target for f in maps)), IntMatrix(M))


class CokernelMap:
    """Coordinates of ambient vectors in ``Z^r / colspan(A)``."""

    def __init__(self, group: FinAbGroup, U: IntMatrix, d: tuple[int, ...], rank: int):
        self.group = group
        self._U = U.to_array()
        self._torsion_rows = [i for i, x in enumerate(d[:rank]) if x > 1]
        self._free_rows = list(range(rank, self._U.shape[0]))
        self._d = d

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        vec = np.array([int(x) for x in v], dtype=object)
        y = self._U.dot(vec) if len(vec) else np.zeros(0, dtype=object)
        coords = [int(y[i]) % self._d[i] for i in self._torsion_rows]
        coords += [int(y[i]) for i in self._free_rows]
        return tuple(coords)

    def is_zero_class(self, v: Sequence[int]) -> bool:
        return all(c == 0 for c in self(v))


def cokernel_structure(A) -> tuple[FinAbGroup, Callable[[Sequence[int]], tuple[int, ...]]]:
    """Structure of ``Z^rows / colspan(A)`` and the coordinate map onto it."""
    arr = as_object_array(A)
    m = arr.shape[0]
    s = snf(arr, want_u=True, want_v=False)
    d = s.d
    rank = s.rank
    torsion = tuple(x for x in d[:rank] if x > 1)
    group = FinAbGroup(torsion, m - rank)
    return group, CokernelMap(group, s.U, d, rank)


class LinearSolver:
    """Integer solutions of ``A x = b`` for many right-hand sides."""

    def __init__(self, A):
        arr = as_object_array(A)
        self.shape = arr.shape
        self._s = snf(arr)
        self._U = self._s.U.to_array()
        self._V = self._s.V.to_array()

    def __call__(self, b: Sequence[int]) -> list[int] | None:
        m, n = self.shape
        if len(b) != m:
            raise ValueError("dimension mismatch")
        s = self._s
        y = self._U.dot(np.array([int(t) for t in b], dtype=object)) if m else []
        x = _zeros(n, 1)[:, 0]
        for i in range(m):
            di = s.d[i] if i < s.rank else 0
            if di == 0:
                if y[i] != 0:
                    return None
            else:
                if y[i] % di:
                    return None
                x[i] = y[i] // di
        return [int(t) for t in self._V.dot(x)] if n else []


def solve(A, b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``A x = b``, or ``None`` if there is none."""
    return LinearSolver(A)(b)


def fin_ab_kernel(f: FinAbMap) -> tuple[FinAbGroup, list[tuple[int, ...]]]:
    """Kernel of ``f`` with generators given in source coordinates.

    The i-th generator has order ``group.torsion[i]`` (free generators follow).
    """
    if not f.is_well_defined():
        raise IllDefinedHomomorphism("ill-defined homomorphism")
    src, tgt = f.source, f.target
    s, t = src.ngens, tgt.ngens
    if s == 0:
        return FinAbGroup(), []
    F = f.matrix.to_array()
    a = src.relation_orders
    b = tgt.relation_orders
    # L = {x : F x in diag(b) Z^t}; kernel of [F | -diag(b)] projected to x
    big = _zeros(t, s + t)
    if t:
        big[:, :s] = F
        for j, bj in enumerate(b):
            big[j, s + j] = -bj
    gens = [v[:s] for v in kernel_basis(big)] if t else [[int(i == j) for i in range(s)] for j in range(s)]
    if not gens:
        gens = []
    # basis of L: nonzero columns of the HNF of its generators
    G = _zeros(s, len(gens))
    for j, v in enumerate(gens):
        G[:, j] = v
    H, _ = hnf(G) if len(gens) else (IntMatrix.zeros(s, 0), None)
    Harr = H.to_array()
    basis_cols = [j for j in range(Harr.shape[1]) if np.any(Harr[:, j] != 0)]
    B = Harr[:, basis_cols]
    k = B.shape[1]
    # source relations expressed in the L basis
    R = _zeros(k, s)
    for j, aj in enumerate(a):
        col = [aj if i == j else 0 for i in range(s)]
        c = solve(B, col)
        if c is None:
            raise IllDefinedHomomorphism("ill-defined homomorphism")
        R[:, j] = c
    sm = snf(R)
    Uinv = _unimodular_inverse(sm.U.to_array())
    torsion_idx = [i for i in range(sm.rank) if sm.d[i] > 1]
    free_idx = list(range(sm.rank, k))
    group = FinAbGroup(tuple(sm.d[i] for i in torsion_idx), len(free_idx))
    BU = B.dot(Uinv) if k else _zeros(s, 0)
    generators = [src.reduce([int(x) for x in BU[:, i]]) for i in torsion_idx + free_idx]
    return group, generators


def _unimodular_inverse(U: np.ndarray) -> np.ndarray:
    n = U.shape[0]
    if n == 0:
        return _zeros(0, 0)
    s = snf(U)
    if any(x != 1 for x in s.d):
        raise ValueError("matrix is not unimodular")
    # P U Q = I  =>  U^{-1} = Q P
    return s.V.to_array().dot(s.U.to_array())


def unimodular_inverse(U) -> IntMatrix:
    """Exact inverse of a unimodular matrix."""
    return IntMatrix(_unimodular_inverse(as_object_array(U)))


__all__.append("unimodular_inverse")
__all__.append("CokernelMap")


def det(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = as_object_array(A)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i, k] != 0), None)
            if swap is None:
                return 0
            M[[k, swap], :] = M[[swap, k], :]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i, j] = (M[i, j] * M[k, k] - M[i, k] * M[k, j]) // prev
        prev = M[k, k]
    return sign * int(M[n - 1, n - 1])


__all__ += ["det", "DirectSum", "LinearSolver", "BudgetExceeded", "time_budget", "check_budget"]
