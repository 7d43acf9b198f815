"""Exact linear algebra over the Gaussian rationals.

Matrices keep an integer form (Gaussian-integer numerators over one common
positive denominator). Row reduction runs fraction-free on Gaussian-integer
rows, and only the final canonical rows are turned back into scalars.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidInput, NonSquareMatrix
from .scalar import ExactScalar, ScalarLike

# A Gaussian-integer row: parallel lists of real and imaginary parts.
IntRow = tuple[list[int], list[int]]


def _content(re: Sequence[int], im: Sequence[int]) -> int:
    return gcd(gcd(*re), gcd(*im)) if re else 0


def _reduce_row(re: list[int], im: list[int]) -> None:
    g = _content(re, im)
    if g > 1:
        for j in range(len(re)):
            re[j] //= g
            im[j] //= g


def _canonical_rref(rows: Iterable[IntRow], ncols: int) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(pivot_column, re, im)`` per nonzero row of the reduced echelon
    form, each row scaled to a primitive Gaussian-integer vector whose pivot is
    a positive integer. That scaling is unique, so the output is canonical.
    """
    work = [(list(re), list(im)) for re, im in rows if any(re) or any(im)]
    r = 0
    pivots: list[int] = []
    for col in range(ncols):
        if r >= len(work):
            break
        best = -1
        best_norm = 0
        for i in range(r, len(work)):
            a, b = work[i][0][col], work[i][1][col]
            if a or b:
                nrm = a * a + b * b
                if best < 0 or nrm < best_norm:
                    best, best_norm = i, nrm
        if best < 0:
            continue
        work[r], work[best] = work[best], work[r]
        prow_re, prow_im = work[r]
        for i in range(len(work)):
            if i == r:
                continue
            row_re, row_im = work[i]
            ar, ai = row_re[col], row_im[col]
            if not ar and not ai:
                continue
            pr, pi = prow_re[col], prow_im[col]
            g = gcd(gcd(pr, pi), gcd(ar, ai))
            if g > 1:
                pr, pi, ar, ai = pr // g, pi // g, ar // g, ai // g
            # row_i <- p * row_i - a * row_r
            for j in range(ncols):
                xr, xi = row_re[j], row_im[j]
                yr, yi = prow_re[j], prow_im[j]
                row_re[j] = pr * xr - pi * xi - (ar * yr - ai * yi)
                row_im[j] = pr * xi + pi * xr - (ar * yi + ai * yr)
            _reduce_row(row_re, row_im)
        pivots.append(col)
        r += 1
    out = []
    for (re, im), col in zip(work[:r], pivots):
        pr, pi = re[col], im[col]
        if pi or pr < 0:
            # multiply by conj(p): the pivot becomes |p|^2 > 0
            re, im = (
                [x * pr + y * pi for x, y in zip(re, im)],
                [y * pr - x * pi for x, y in zip(re, im)],
            )
        _reduce_row(re, im)
        out.append((col, tuple(re), tuple(im)))
    return out


class ExactMatrix:
    """Immutable ``rows x cols`` matrix over the Gaussian rationals."""

    __slots__ = ("rows", "cols", "_re", "_im", "_den", "_entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence[ScalarLike]) -> None:
        if rows <= 0 or cols <= 0:
            raise InvalidInput("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise InvalidInput(f"expected {rows * cols} entries, got {len(entries)}")
        scalars = [ExactScalar.coerce(e) for e in entries]
        den = reduce(lcm, (d for s in scalars for d in (s.re_den, s.im_den)), 1)
        re = [s.re_num * (den // s.re_den) for s in scalars]
        im = [s.im_num * (den // s.im_den) for s in scalars]
        self._init_int(rows, cols, re, im, den)

    def _init_int(self, rows: int, cols: int, re: list[int], im: list[int], den: int) -> None:
        if den < 0:
            den, re, im = -den, [-x for x in re], [-x for x in im]
        g = gcd(den, _content(re, im))
        if g > 1:
            den //= g
            re = [x // g for x in re]
            im = [x // g for x in im]
        self.rows = rows
        self.cols = cols
        self._re = tuple(re)
        self._im = tuple(im)
        self._den = den
        self._entries: tuple[ExactScalar, ...] | None = None
        self._hash: int | None = None

    @classmethod
    def _from_int(cls, rows: int, cols: int, re: list[int], im: list[int], den: int = 1) -> "ExactMatrix":
        obj = cls.__new__(cls)
        obj._init_int(rows, cols, re, im, den)
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "ExactMatrix":
        if not rows or not rows[0]:
            raise InvalidInput("matrix must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvalidInput("ragged rows")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        re = [1 if i == j else 0 for i in range(n) for j in range(n)]
        return cls._from_int(n, n, re, [0] * (n * n))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls._from_int(rows, cols, [0] * (rows * cols), [0] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> "ExactMatrix":
        n = len(values)
        zero = ExactScalar(0)
        return cls(n, n, [values[i] if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def block_diagonal(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        grid: list[list[ScalarLike]] = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(grid)

    @classmethod
    def from_json(cls, data: object) -> "ExactMatrix":
        if not isinstance(data, dict):
            raise InvalidInput("matrix JSON must be an object")
        try:
            rows, cols, entries = data["rows"], data["cols"], data["entries"]
        except KeyError as exc:
            raise InvalidInput(f"matrix JSON missing field {exc.args[0]!r}") from exc
        if not isinstance(rows, int) or not isinstance(cols, int) or not isinstance(entries, list):
            raise InvalidInput("matrix JSON fields have wrong types")
        if entries and isinstance(entries[0], list) and entries[0] and isinstance(entries[0][0], list):
            # nested per-row layout is tolerated
            entries = [e for row in entries for e in row]
        return cls(rows, cols, [ExactScalar.from_json(e) for e in entries])

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [e.to_json() for e in self.entries]}

    @property
    def entries(self) -> tuple[ExactScalar, ...]:
        if self._entries is None:
            d = self._den
            self._entries = tuple(
                ExactScalar(Fraction(a, d), Fraction(b, d)) for a, b in zip(self._re, self._im)
            )
        return self._entries

    def __getitem__(self, ij: tuple[int, int]) -> ExactScalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[ExactScalar]]:
        e = self.entries
        return [list(e[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def _int_rows(self) -> list[IntRow]:
        c = self.cols
        return [(list(self._re[i * c:(i + 1) * c]), list(self._im[i * c:(i + 1) * c])) for i in range(self.rows)]

    def _int_cols(self) -> list[IntRow]:
        c = self.cols
        return [(list(self._re[j::c]), list(self._im[j::c])) for j in range(c)]

    def transpose(self) -> "ExactMatrix":
        r, c = self.rows, self.cols
        re = [self._re[i * c + j] for j in range(c) for i in range(r)]
        im = [self._im[i * c + j] for j in range(c) for i in range(r)]
        return ExactMatrix._from_int(c, r, re, im, self._den)

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        d = lcm(self._den, other._den)
        fa, fb = d // self._den, sign * (d // other._den)
        re = [a * fa + b * fb for a, b in zip(self._re, other._re)]
        im = [a * fa + b * fb for a, b in zip(self._im, other._im)]
        return ExactMatrix._from_int(self.rows, self.cols, re, im, d)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._from_int(self.rows, self.cols, [-x for x in self._re], [-x for x in self._im], self._den)

    def scale(self, s: ScalarLike) -> "ExactMatrix":
        s = ExactScalar.coerce(s)
        d = lcm(s.re_den, s.im_den)
        sr, si = s.re_num * (d // s.re_den), s.im_num * (d // s.im_den)
        re = [sr * a - si * b for a, b in zip(self._re, self._im)]
        im = [sr * b + si * a for a, b in zip(self._re, self._im)]
        return ExactMatrix._from_int(self.rows, self.cols, re, im, self._den * d)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        are, aim, bre, bim = self._re, self._im, other._re, other._im
        re = [0] * (n * m)
        im = [0] * (n * m)
        for i in range(n):
            for t in range(k):
                xr, xi = are[i * k + t], aim[i * k + t]
                if not xr and not xi:
                    continue
                base = t * m
                out = i * m
                for j in range(m):
                    yr, yi = bre[base + j], bim[base + j]
                    re[out + j] += xr * yr - xi * yi
                    im[out + j] += xr * yi + xi * yr
        return ExactMatrix._from_int(n, m, re, im, self._den * other._den)

    def is_zero(self) -> bool:
        return not any(self._re) and not any(self._im)

    def trace(self) -> ExactScalar:
        self._require_square()
        n = self.cols
        return ExactScalar(
            Fraction(sum(self._re[i * n + i] for i in range(n)), self._den),
            Fraction(sum(self._im[i * n + i] for i in range(n)), self._den),
        )

    def _require_square(self) -> None:
        if not self.is_square:
            raise NonSquareMatrix(f"matrix is {self.rows}x{self.cols}, square required")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._den == other._den
            and self._re == other._re
            and self._im == other._im
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._den, self._re, self._im))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.row_list())
        return f"ExactMatrix[{body}]"


class Subspace:
    """A subspace of ``C^n`` stored as its canonical reduced echelon basis.

    Basis vectors are kept as primitive Gaussian-integer rows with a positive
    integer pivot; equal subspaces therefore have identical stored data.
    """

    __slots__ = ("ambient_dim", "_rows", "_basis")

    def __init__(self, ambient_dim: int, _rows: tuple = ()) -> None:
        if ambient_dim <= 0:
            raise InvalidInput("ambient dimension must be positive")
        self.ambient_dim = ambient_dim
        self._rows: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...] = _rows
        self._basis: tuple[tuple[ExactScalar, ...], ...] | None = None

    @classmethod
    def _from_int_rows(cls, ambient_dim: int, rows: Iterable[IntRow]) -> "Subspace":
        return cls(ambient_dim, tuple(_canonical_rref(rows, ambient_dim)))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[ScalarLike]]) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            m = ExactMatrix(1, ambient_dim, list(v))
            rows.append((list(m._re), list(m._im)))
        return cls._from_int_rows(ambient_dim, rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return kernel(ExactMatrix.zero(1, ambient_dim))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(r[0] for r in self._rows)

    @property
    def basis(self) -> tuple[tuple[ExactScalar, ...], ...]:
        """Reduced echelon basis, each vector scaled to pivot entry 1."""
        if self._basis is None:
            out = []
            for col, re, im in self._rows:
                p = re[col]
                out.append(tuple(ExactScalar(Fraction(a, p), Fraction(b, p)) for a, b in zip(re, im)))
            self._basis = tuple(out)
        return self._basis

    def _int_rows(self) -> list[IntRow]:
        return [(list(re), list(im)) for _, re, im in self._rows]

    def basis_matrix(self) -> ExactMatrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix (dim >= 1)."""
        if not self._rows:
            raise InvalidInput("zero subspace has no basis matrix")
        n, d = self.ambient_dim, self.dim
        re = [self._rows[j][1][i] for i in range(n) for j in range(d)]
        im = [self._rows[j][2][i] for i in range(n) for j in range(d)]
        return ExactMatrix._from_int(n, d, re, im)

    def contains(self, vector: Sequence[ScalarLike]) -> bool:
        return subspace_sum(self, Subspace.span(self.ambient_dim, [vector])).dim == self.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self._rows))

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim} in C^{self.ambient_dim}: {vecs})"

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": [[x.to_json() for x in v] for v in self.basis]}


def _null_rows(rref_rows: Sequence[tuple[int, tuple[int, ...], tuple[int, ...]]], ncols: int) -> list[IntRow]:
    pivcols = {col: (re, im) for col, re, im in rref_rows}
    if not rref_rows:
        scale = 1
    else:
        scale = reduce(lcm, (re[col] for col, re, _ in rref_rows), 1)
    out = []
    for f in range(ncols):
        if f in pivcols:
            continue
        vre, vim = [0] * ncols, [0] * ncols
        vre[f] = scale
        for col, (re, im) in pivcols.items():
            factor = scale // re[col]
            vre[col] = -re[f] * factor
            vim[col] = -im[f] * factor
        out.append((vre, vim))
    return out


def kernel(m: ExactMatrix) -> Subspace:
    """Null space ``{x : m x = 0}``."""
    rows = _canonical_rref(m._int_rows(), m.cols)
    return Subspace._from_int_rows(m.cols, _null_rows(rows, m.cols))


def range_space(m: ExactMatrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace._from_int_rows(m.rows, m._int_cols())


def rank(m: ExactMatrix) -> int:
    return len(_canonical_rref(m._int_rows(), m.cols))


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if not b.dim:
        return a
    if not a.dim:
        return b
    return Subspace._from_int_rows(a.ambient_dim, a._int_rows() + b._int_rows())


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """``a ∩ b`` as ``{x A : x A = y B}``, read off the left kernel of ``[A; -B]``."""
    _check_ambient(a, b)
    if not a.dim or not b.dim:
        return Subspace.zero(a.ambient_dim)
    n = a.ambient_dim
    arows = a._int_rows()
    stacked = arows + [([-x for x in re], [-x for x in im]) for re, im in b._int_rows()]
    k = len(stacked)
    # columns of the stacked matrix are the rows of its transpose
    trows = [([stacked[i][0][j] for i in range(k)], [stacked[i][1][j] for i in range(k)]) for j in range(n)]
    coeffs = _null_rows(_canonical_rref(trows, k), k)
    vectors = []
    for cre, cim in coeffs:
        vre, vim = [0] * n, [0] * n
        for i in range(a.dim):
            xr, xi = cre[i], cim[i]
            if not xr and not xi:
                continue
            are, aim = arows[i]
            for j in range(n):
                vre[j] += xr * are[j] - xi * aim[j]
                vim[j] += xr * aim[j] + xi * are[j]
        vectors.append((vre, vim))
    return Subspace._from_int_rows(n, vectors)


def matrix_power(m: ExactMatrix, n: int) -> ExactMatrix:
    m._require_square()
    if n < 0:
        raise InvalidInput("negative matrix power")
    out = ExactMatrix.identity(m.rows)
    base = m
    while n:
        if n & 1:
            out = out @ base
        n >>= 1
        if n:
            base = base @ base
    return out


def inverse(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse; raises ZeroDivisionError for singular input."""
    m._require_square()
    n = m.rows
    rows = []
    for i, (re, im) in enumerate(m._int_rows()):
        ext = [0] * n
        ext[i] = m._den
        rows.append((re + ext, im + [0] * n))
    red = _canonical_rref(rows, 2 * n)
    if len(red) < n or red[n - 1][0] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    den = reduce(lcm, (re[col] for col, re, _ in red), 1)
    re_out: list[int] = []
    im_out: list[int] = []
    for col, re, im in red:
        f = den // re[col]
        re_out.extend(x * f for x in re[n:])
        im_out.extend(x * f for x in im[n:])
    return ExactMatrix._from_int(n, n, re_out, im_out, den)


def charpoly(m: ExactMatrix) -> list[ExactScalar]:
    """Coefficients of ``det(x I - m)``, highest degree first (Faddeev-LeVerrier).

    Runs on the integer numerator ``A = d m`` where every step divides exactly,
    then rescales: the coefficient of ``x^(n-k)`` is ``c_k(A) / d^k``.
    """
    m._require_square()
    n, d = m.rows, m._den
    are, aim = m._re, m._im
    coeffs_re = [1]
    coeffs_im = [0]
    # M_k stored as flat lists; M_0 = 0 so that A M_0 + c I = I gives M_1
    mre = [0] * (n * n)
    mim = [0] * (n * n)
    cre, cim = 1, 0
    for k in range(1, n + 1):
        for i in range(n):
            mre[i * n + i] += cre
            mim[i * n + i] += cim
        # P = A M_k
        pre = [0] * (n * n)
        pim = [0] * (n * n)
        for i in range(n):
            for t in range(n):
                xr, xi = are[i * n + t], aim[i * n + t]
                if not xr and not xi:
                    continue
                for j in range(n):
                    yr, yi = mre[t * n + j], mim[t * n + j]
                    pre[i * n + j] += xr * yr - xi * yi
                    pim[i * n + j] += xr * yi + xi * yr
        tr_re = sum(pre[i * n + i] for i in range(n))
        tr_im = sum(pim[i * n + i] for i in range(n))
        if tr_re % k or tr_im % k:
            raise ArithmeticError("inexact Faddeev-LeVerrier step")
        cre, cim = -tr_re // k, -tr_im // k
        coeffs_re.append(cre)
        coeffs_im.append(cim)
        mre, mim = pre, pim
    return [
        ExactScalar(Fraction(coeffs_re[k], d**k), Fraction(coeffs_im[k], d**k)) for k in range(n + 1)
    ]


def determinant(m: ExactMatrix) -> ExactScalar:
    c = charpoly(m)[-1]
    return c if m.rows % 2 == 0 else -c

