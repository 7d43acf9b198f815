"""Independent reference implementations used to check the package.

Nothing here imports spectral_chain internals. Gaussian rationals are plain
``(Fraction, Fraction)`` pairs and matrices are nested lists of them.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

G = tuple[Fraction, Fraction]
Mat = list[list[G]]

ZERO: G = (Fraction(0), Fraction(0))
ONE: G = (Fraction(1), Fraction(0))


def g(re, im=0) -> G:
    return (Fraction(re), Fraction(im))


def gadd(a: G, b: G) -> G:
    return (a[0] + b[0], a[1] + b[1])


def gsub(a: G, b: G) -> G:
    return (a[0] - b[0], a[1] - b[1])


def gmul(a: G, b: G) -> G:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def ginv(a: G) -> G:
    n = a[0] * a[0] + a[1] * a[1]
    return (a[0] / n, -a[1] / n)


def is_zero(a: G) -> bool:
    return a[0] == 0 and a[1] == 0


# ---------------------------------------------------------------- matrices


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Mat, b: Mat) -> Mat:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                acc = gadd(acc, gmul(row[k], b[k][j]))
            new.append(acc)
        out.append(new)
    return out


def matpow(a: Mat, n: int) -> Mat:
    out = identity(len(a))
    for _ in range(n):
        out = matmul(out, a)
    return out


def matsub(a: Mat, b: Mat) -> Mat:
    return [[gsub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rank(a: Mat) -> int:
    """Rank by plain Gaussian elimination."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ginv(m[r][c])
        m[r] = [gmul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [gsub(x, gmul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
    return r


def invert(a: Mat) -> Mat:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(a)
    m = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if piv is None:
            raise ZeroDivisionError("singular")
        m[c], m[piv] = m[piv], m[c]
        inv = ginv(m[c][c])
        m[c] = [gmul(inv, x) for x in m[c]]
        for i in range(n):
            if i != c and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [gsub(x, gmul(f, y)) for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def _to_gaussian_integers(a: Mat) -> list[list[tuple[int, int]]]:
    den = 1
    for row in a:
        for re, im in row:
            den = den * re.denominator // gcd(den, re.denominator)
            den = den * im.denominator // gcd(den, im.denominator)
    return [[(int(re * den), int(im * den)) for re, im in row] for row in a]


def _imatmul(a, b):
    n, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(cols):
            re = im = 0
            for k in range(inner):
                x, y = a[i][k], b[k][j]
                re += x[0] * y[0] - x[1] * y[1]
                im += x[0] * y[1] + x[1] * y[0]
            row.append((re, im))
        out.append(row)
    return out


def _irank(a) -> int:
    """Fraction-free (Bareiss) elimination over the Gaussian integers."""
    m = [row[:] for row in a]
    rows, cols = len(m), len(m[0])
    prev = (1, 0)
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != (0, 0)), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        pn = prev[0] * prev[0] + prev[1] * prev[1]
        for i in range(r + 1, rows):
            f = m[i][c]
            new = []
            for j in range(cols):
                x, y = m[i][j], m[r][j]
                # (p*x - f*y) / prev, exact in Z[i]
                re = p[0] * x[0] - p[1] * x[1] - (f[0] * y[0] - f[1] * y[1])
                im = p[0] * x[1] + p[1] * x[0] - (f[0] * y[1] + f[1] * y[0])
                qr, qi = re * prev[0] + im * prev[1], im * prev[0] - re * prev[1]
                assert qr % pn == 0 and qi % pn == 0
                new.append((qr // pn, qi // pn))
            m[i] = new
        prev = p
        r += 1
    return r


def chain_dims(a: Mat) -> tuple[list[int], list[int]]:
    """``c_n`` from ranks of powers and ``c'_n`` from nullities, ``n = 0..dim``."""
    n = len(a)
    t = _to_gaussian_integers(a)
    power = [[(1, 0) if i == j else (0, 0) for j in range(n)] for i in range(n)]
    ranks = []
    for _ in range(n + 2):
        ranks.append(_irank(power))
        power = _imatmul(power, t)
    c = [ranks[j] - ranks[j + 1] for j in range(n + 1)]
    nullity = [n - r for r in ranks]
    c_prime = [nullity[j + 1] - nullity[j] for j in range(n + 1)]
    return c, c_prime


def jordan_block(lam: G, size: int) -> Mat:
    return [[lam if i == j else (ONE if j == i + 1 else ZERO) for j in range(size)] for i in range(size)]


def block_diag(blocks: Sequence[Mat]) -> Mat:
    n = sum(len(b) for b in blocks)
    out = [[ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def random_gaussian(rng: random.Random, span: int = 3, dens: Sequence[int] = (1, 1, 2, 3)) -> G:
    return (
        Fraction(rng.randint(-span, span), rng.choice(dens)),
        Fraction(rng.randint(-span, span), rng.choice(dens)) if rng.random() < 0.5 else Fraction(0),
    )


def random_unimodular(rng: random.Random, n: int) -> tuple[Mat, Mat]:
    """A random invertible matrix and its inverse, as a product of unit triangulars."""
    lower = [[ONE if i == j else (random_gaussian(rng, 2) if j < i else ZERO) for j in range(n)] for i in range(n)]
    upper = [[ONE if i == j else (random_gaussian(rng, 2) if j > i else ZERO) for j in range(n)] for i in range(n)]
    p = matmul(lower, upper)
    return p, invert(p)


def random_jordan_blocks(rng: random.Random, n: int) -> list[tuple[G, int]]:
    """Random list of ``(eigenvalue, block size)`` with sizes summing to ``n``."""
    pool = [g(rng.randint(-2, 2), rng.choice([0, 0, 1, -1])) for _ in range(3)]
    blocks = []
    left = n
    while left:
        size = rng.randint(1, left)
        blocks.append((rng.choice(pool), size))
        left -= size
    return blocks


def conjugated_jordan(rng: random.Random, blocks: list[tuple[G, int]]) -> Mat:
    j = block_diag([jordan_block(lam, s) for lam, s in blocks])
    p, pinv = random_unimodular(rng, len(j))
    return matmul(matmul(p, j), pinv)


def largest_blocks(blocks: list[tuple[G, int]]) -> dict[G, int]:
    out: dict[G, int] = {}
    for lam, s in blocks:
        out[lam] = max(out.get(lam, 0), s)
    return out


def brute_force_rational_roots(coeffs: Sequence[G], bound: int = 4, dens: Sequence[int] = (1, 2, 3, 4)) -> set[G]:
    """All roots ``a/d + i b/d`` on a small grid; coefficients are highest degree first."""
    roots = set()
    for d in dens:
        for a in range(-bound * d, bound * d + 1):
            for b in range(-bound * d, bound * d + 1):
                z = (Fraction(a, d), Fraction(b, d))
                acc = ZERO
                for c in coeffs:
                    acc = gadd(gmul(acc, z), c)
                if is_zero(acc):
                    roots.add(z)
    return roots


# ---------------------------------------------------------------- plane sets
# Shapes are tuples: ("point", z), ("segment", a, b), ("circle", c, r),
# ("disk", c, r) with z, a, b, c complex pairs of Fractions and r a Fraction.

Pt = tuple[Fraction, Fraction]


def _d2(p: Pt, q: Pt) -> Fraction:
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def shape_contains(shape: tuple, z: Pt) -> bool:
    kind = shape[0]
    if kind == "point":
        return shape[1] == z
    if kind == "segment":
        a, b = shape[1], shape[2]
        cross = (b[0] - a[0]) * (z[1] - a[1]) - (b[1] - a[1]) * (z[0] - a[0])
        if cross != 0:
            return False
        t = (z[0] - a[0]) * (b[0] - a[0]) + (z[1] - a[1]) * (b[1] - a[1])
        return 0 <= t <= _d2(a, b)
    if kind == "circle":
        return _d2(shape[1], z) == shape[2] ** 2
    return _d2(shape[1], z) <= shape[2] ** 2


def union_contains(shapes: Sequence[tuple], z: Pt) -> bool:
    return any(shape_contains(s, z) for s in shapes)


def _unit_circle(level: int) -> Iterator[Pt]:
    # rational parametrisation t -> ((1-t²)/(1+t²), 2t/(1+t²)) plus the point -1
    yield (Fraction(-1), Fraction(0))
    steps = 4 * 2**level
    for k in range(-steps, steps + 1):
        t = Fraction(k, 2**level)
        den = 1 + t * t
        yield ((1 - t * t) / den, 2 * t / den)


def sample_shape(shape: tuple, level: int) -> Iterator[Pt]:
    """Rational points lying on ``shape``, denser as ``level`` grows."""
    kind = shape[0]
    if kind == "point":
        yield shape[1]
        return
    if kind == "segment":
        a, b = shape[1], shape[2]
        steps = 4 * 2**level
        for k in range(steps + 1):
            t = Fraction(k, steps)
            yield (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        return
    c, r = shape[1], shape[2]
    if kind == "circle":
        for u in _unit_circle(level):
            yield (c[0] + r * u[0], c[1] + r * u[1])
        return
    steps = 2 + level
    for k in range(steps + 1):
        s = Fraction(k, steps)
        for u in _unit_circle(level):
            yield (c[0] + r * s * u[0], c[1] + r * s * u[1])


def sampled_subset(a: Sequence[tuple], b: Sequence[tuple], max_level: int = 5) -> bool:
    """Adaptive sampling verdict on ``A ⊆ B``.

    Refines the sample of ``A`` until a witness outside ``B`` shows up or
    the level budget runs out, in which case the answer is "subset".
    """
    for level in range(max_level + 1):
        for shape in a:
            for z in sample_shape(shape, level):
                if not union_contains(b, z):
                    return False
    return True


def random_shape(rng: random.Random, kinds: Sequence[str] = ("point", "segment", "circle", "disk")) -> tuple:
    def coord():
        return Fraction(rng.randint(-4, 4), rng.choice([1, 2]))

    kind = rng.choice(kinds)
    c = (coord(), coord())
    if kind == "point":
        return ("point", c)
    if kind == "segment":
        while True:
            d = (coord(), coord())
            if d != c:
                return ("segment", c, d)
    return (kind, c, Fraction(rng.randint(1, 6), rng.choice([1, 2])))


def random_shapes(rng: random.Random, count: int | None = None, **kw) -> list[tuple]:
    return [random_shape(rng, **kw) for _ in range(count if count is not None else rng.randint(1, 4))]
