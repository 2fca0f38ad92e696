"""Dense exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` integer arrays holding canonical
representatives ``0..p-1``.  Every routine pivots on the first nonzero
entry, so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_P = 101


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The prime field F_p."""

    p: int = DEFAULT_P

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field modulus must be prime, got {self.p}")

    def array(self, data, shape=None) -> np.ndarray:
        a = np.array(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return a % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def mul(self, *ms: np.ndarray) -> np.ndarray:
        out = ms[0]
        for m in ms[1:]:
            out = (out @ m) % self.p
        return out

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int], int]:
        """Reduced row-echelon form, pivot columns and rank."""
        p = self.p
        a = np.array(m, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if len(nz) == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = (a[r] * self.inv(a[r, c])) % p
            col = a[:, c].copy()
            col[r] = 0
            nzr = np.nonzero(col)[0]
            if len(nzr):
                a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
            pivots.append(c)
            r += 1
        return a, pivots, len(pivots)

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return self.rref(m)[2]

    def kernel_basis(self, m: np.ndarray) -> "Subspace":
        """Basis of the null space ``{x : m x = 0}``."""
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return Subspace.full(self, cols)
        r, pivots, rank = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        vecs = np.zeros((len(free), cols), dtype=np.int64)
        for i, fc in enumerate(free):
            vecs[i, fc] = 1
            for row, pc in enumerate(pivots):
                vecs[i, pc] = (-r[row, fc]) % self.p
        return self.span(vecs, cols)

    def span(self, vectors, ambient_dim: int | None = None) -> "Subspace":
        vecs = np.asarray(vectors, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = vecs.shape[1]
        if ambient_dim == 0 or vecs.size == 0:
            return Subspace.zero(self, ambient_dim)
        vecs = vecs.reshape(-1, ambient_dim) % self.p
        r, pivots, rank = self.rref(vecs)
        return Subspace(self, ambient_dim, r[:rank], tuple(pivots))

    def solve_affine(self, a: np.ndarray, b) -> tuple[np.ndarray, "Subspace"] | None:
        """Solve ``a x = b``.

        Returns a particular solution together with the kernel of ``a``,
        or ``None`` when ``b`` is outside the column space.
        """
        a = np.asarray(a, dtype=np.int64) % self.p
        b = np.asarray(b, dtype=np.int64).reshape(-1) % self.p
        rows, cols = a.shape
        if len(b) != rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {rows}")
        kernel = self.kernel_basis(a)
        if rows == 0:
            return np.zeros(cols, dtype=np.int64), kernel
        aug = np.concatenate([a, b[:, None]], axis=1)
        r, pivots, rank = self.rref(aug)
        if pivots and pivots[-1] == cols:
            return None
        x = np.zeros(cols, dtype=np.int64)
        for row, pc in enumerate(pivots):
            x[pc] = r[row, cols]
        return x, kernel

    def solve_matrix(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """Some ``x`` with ``a @ x = b`` (matrix right-hand side), or None."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        x = np.zeros((a.shape[1], b.shape[1]), dtype=np.int64)
        for j in range(b.shape[1]):
            sol = self.solve_affine(a, b[:, j])
            if sol is None:
                return None
            x[:, j] = sol[0]
        return x

    def column_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns of ``m`` at pivot positions: a basis of the column space."""
        m = np.asarray(m, dtype=np.int64) % self.p
        if m.size == 0:
            return np.zeros((m.shape[0], 0), dtype=np.int64)
        _, pivots, _ = self.rref(m)
        return m[:, pivots]

    def complement_rows(self, m: np.ndarray) -> np.ndarray:
        """Rows ``q`` spanning the left kernel ``{q : q m = 0}``."""
        m = np.asarray(m, dtype=np.int64)
        return self.kernel_basis(m.T).basis

    def extend_to_basis(self, cols: np.ndarray, n: int) -> np.ndarray:
        """Unit vectors completing the columns of ``cols`` to a basis of F_p^n."""
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64).reshape(n, -1)
        rank = self.rank(cols) if cols.size else 0
        chosen = []
        current = cols
        for i in range(n):
            if rank == n:
                break
            e = np.zeros((n, 1), dtype=np.int64)
            e[i, 0] = 1
            trial = np.concatenate([current, e], axis=1)
            if self.rank(trial) > rank:
                current = trial
                rank += 1
                chosen.append(i)
        out = np.zeros((n, len(chosen)), dtype=np.int64)
        for k, i in enumerate(chosen):
            out[i, k] = 1
        return out


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^n stored as a reduced row-echelon basis."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = ()

    @classmethod
    def full(cls, fld: Field, n: int) -> "Subspace":
        return cls(fld, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @classmethod
    def zero(cls, fld: Field, n: int) -> "Subspace":
        return cls(fld, n, np.zeros((0, n), dtype=np.int64), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v) -> np.ndarray | None:
        """Coefficients ``c`` with ``c @ basis == v``, or None if ``v`` is outside."""
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.field.p
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector has length {len(v)}, expected {self.ambient_dim}")
        c = v[list(self.pivots)]
        if np.any((c @ self.basis - v) % self.field.p):
            return None
        return c

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def membership(s: Subspace, v) -> bool:
    return v in s
