"""Dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries in ``range(p)``.  Sizes at
fixture scale are a few hundred rows at most, so plain Gauss-Jordan
elimination with vectorised row operations is plenty.
"""

from __future__ import annotations

import numpy as np


def as_matrix(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p and its pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = (m[r] * pow(lead, -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : a x = 0}``."""
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return eye(cols)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(cols, len(free))
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, fc]) % p
    return basis


def image_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``a`` at pivot positions: a basis of the column space."""
    if a.size == 0:
        return zeros(a.shape[0], 0)
    _, pivots = rref(a, p)
    return a[:, pivots] % p


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (``b`` a vector or matrix), or None."""
    vector = b.ndim == 1
    bb = b.reshape(-1, 1) if vector else b
    rows, cols = a.shape
    if rows == 0:
        x = zeros(cols, bb.shape[1])
        return x[:, 0] if vector else x
    aug = np.concatenate([a % p, bb % p], axis=1)
    r, pivots = rref(aug, p)
    if pivots and pivots[-1] >= cols:
        return None
    x = zeros(cols, bb.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if vector else x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.concatenate([a % p, eye(n)], axis=1), p)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def complete_basis(b: np.ndarray, p: int) -> np.ndarray:
    """Columns extending the independent columns of ``b`` to a basis of F_p^n."""
    n = b.shape[0]
    _, pivots = rref(np.concatenate([b % p, eye(n)], axis=1), p)
    k = b.shape[1]
    return eye(n)[:, [c - k for c in pivots if c >= k]]


def quotient_map(sub: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection onto ``F_p^n / span(sub)`` and a linear section of it.

    Returns ``(proj, section)`` with ``proj @ sub == 0`` and
    ``proj @ section == I``.
    """
    n = sub.shape[0]
    basis = image_basis(sub, p)
    comp = complete_basis(basis, p)
    full = np.concatenate([basis, comp], axis=1)
    inv = inverse(full, p) if n else zeros(0, 0)
    return inv[basis.shape[1]:, :], comp


def kernel_with_retraction(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis ``k`` of ``ker a`` (columns) and a left inverse ``r`` with ``r @ k == I``."""
    k = nullspace(a, p)
    return k, left_inverse(k, p)


def left_inverse(a: np.ndarray, p: int) -> np.ndarray:
    """Some ``r`` with ``r @ a == I`` for ``a`` of full column rank."""
    n, k = a.shape
    if k == 0:
        return zeros(0, n)
    comp = complete_basis(a, p)
    full = np.concatenate([a % p, comp], axis=1)
    if full.shape[1] != n:
        raise ValueError("columns are not independent")
    return inverse(full, p)[:k, :]


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    while True:
        m = random_matrix(rng, n, n, p)
        if is_invertible(m, p):
            return m


class MatrixEquations:
    """Linear equations whose unknowns are matrices.

    Each equation is ``sum(L_t @ H[key_t] @ R_t) == C``.  Unknowns are
    flattened row-major, so ``vec(L H R) = kron(L, R.T) vec(H)``.
    """

    def __init__(self, p: int):
        self.p = p
        self.shapes: dict = {}
        self.offsets: dict = {}
        self.size = 0
        self._rows: list[np.ndarray] = []
        self._rhs: list[np.ndarray] = []

    def unknown(self, key, rows: int, cols: int) -> None:
        if key in self.shapes:
            if self.shapes[key] != (rows, cols):
                raise ValueError(f"unknown {key!r} re-declared with another shape")
            return
        self.shapes[key] = (rows, cols)
        self.offsets[key] = self.size
        self.size += rows * cols

    def equation(self, terms, rhs: np.ndarray | None = None) -> None:
        """Add ``sum(L @ H[key] @ R for L, key, R in terms) == rhs``."""
        terms = [t for t in terms if t[1] in self.shapes]
        if not terms and rhs is None:
            return
        out_shape = None
        blocks = []
        for left, key, right in terms:
            r, c = self.shapes[key]
            if left is None:
                left = eye(r)
            if right is None:
                right = eye(c)
            out = (left.shape[0], right.shape[1])
            if out_shape is None:
                out_shape = out
            elif out != out_shape:
                raise ValueError("equation terms disagree in shape")
            blocks.append((key, np.kron(left % self.p, (right % self.p).T)))
        if out_shape is None:
            out_shape = rhs.shape
        n_eq = out_shape[0] * out_shape[1]
        if n_eq == 0:
            return
        row = zeros(n_eq, self.size)
        for key, block in blocks:
            o = self.offsets[key]
            row[:, o:o + block.shape[1]] += block
        self._rows.append(row % self.p)
        self._rhs.append(zeros(n_eq, 1) if rhs is None else (rhs.reshape(-1, 1) % self.p))

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        if not self._rows:
            return zeros(0, self.size), zeros(0, 1)
        # Rows were built before later unknowns were declared; pad them.
        rows = [np.pad(r, ((0, 0), (0, self.size - r.shape[1]))) for r in self._rows]
        return np.concatenate(rows, axis=0) % self.p, np.concatenate(self._rhs, axis=0)

    def unpack(self, vec: np.ndarray) -> dict:
        out = {}
        for key, (r, c) in self.shapes.items():
            o = self.offsets[key]
            out[key] = vec[o:o + r * c].reshape(r, c) % self.p
        return out

    def solve(self) -> dict | None:
        a, b = self.matrix()
        x = solve(a, b[:, 0], self.p)
        return None if x is None else self.unpack(x)

    def solution_space(self) -> list[dict]:
        """Basis of the homogeneous solution space, one dict per vector."""
        a, _ = self.matrix()
        basis = nullspace(a, self.p)
        return [self.unpack(basis[:, j]) for j in range(basis.shape[1])]

    def solution_dimension(self) -> int:
        a, _ = self.matrix()
        return self.size - rank(a, self.p)
