"""Kernel/range chain invariants, Drazin data and pole classification.

Every quantity with two defining formulas is computed both ways and the
results are cross-asserted; a disagreement raises InternalInvariantViolated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IncompleteFactorization, InternalInvariantViolated
from .linalg import (
    ExactMatrix,
    charpoly,
    inverse,
    kernel,
    matrix_power,
    range_space,
    rank,
    subspace_intersect,
    subspace_sum,
)
from .scalar import ExactScalar, ScalarLike


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InternalInvariantViolated(message)


@dataclass(frozen=True)
class ChainReport:
    """Chain dimensions of one square matrix, truncated at ``n = dim``.

    ``essential_ascent`` and ``essential_descent`` are always 0: in finite
    dimension every ``c_n`` and ``c'_n`` is finite, so the essential versions
    carry no information. They are reported, not computed.
    """

    dim: int
    c: tuple[int, ...]
    c_prime: tuple[int, ...]
    k: tuple[int, ...]
    ascent: int
    descent: int
    uniform_descent_degree: int
    drazin_index: int
    essential_ascent: int = 0
    essential_descent: int = 0

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "c": list(self.c),
            "c_prime": list(self.c_prime),
            "k": list(self.k),
            "ascent": self.ascent,
            "descent": self.descent,
            "uniform_descent_degree": self.uniform_descent_degree,
            "drazin_index": self.drazin_index,
            "essential_ascent": self.essential_ascent,
            "essential_descent": self.essential_descent,
        }


def chain_report(m: ExactMatrix) -> ChainReport:
    m._require_square()
    n = m.rows
    powers = [ExactMatrix.identity(n)]
    for _ in range(n + 1):
        powers.append(powers[-1] @ m)
    ranges = [range_space(p) for p in powers]
    kernels = [kernel(p) for p in powers]
    r1, n1 = ranges[1], kernels[1]

    c: list[int] = []
    c_prime: list[int] = []
    for j in range(n + 1):
        # codim(R(T) + N(T^j)) against dim R(T^j)/R(T^{j+1})
        c_sum = n - subspace_sum(r1, kernels[j]).dim
        c_quot = ranges[j].dim - ranges[j + 1].dim
        _require(c_sum == c_quot, f"c_{j}: sum form {c_sum} != quotient form {c_quot}")
        # dim(N(T) ∩ R(T^j)) against dim N(T^{j+1})/N(T^j)
        cp_int = subspace_intersect(n1, ranges[j]).dim
        cp_quot = kernels[j + 1].dim - kernels[j].dim
        _require(cp_int == cp_quot, f"c'_{j}: intersection form {cp_int} != quotient form {cp_quot}")
        c.append(c_sum)
        c_prime.append(cp_int)

    k = []
    for j in range(n):
        kj = c[j] - c[j + 1]
        _require(kj == c_prime[j] - c_prime[j + 1], f"k_{j}: telescoping differences disagree")
        _require(kj >= 0, f"k_{j} negative")
        k.append(kj)

    _require(c[n] == 0 and c_prime[n] == 0, "chains did not stabilize by n = dim")
    descent = next(j for j, v in enumerate(c) if v == 0)
    ascent = next(j for j, v in enumerate(c_prime) if v == 0)
    _require(ascent == descent, f"ascent {ascent} != descent {descent}")
    # R(T^n) = R(T^{n+1}) exactly when c_n = 0
    _require(ranges[descent] == ranges[descent + 1], "descent does not match range equality")
    _require(kernels[ascent] == kernels[ascent + 1], "ascent does not match kernel equality")
    udd = 0
    for j in range(n - 1, -1, -1):
        if k[j] != 0:
            udd = j + 1
            break
    return ChainReport(
        dim=n,
        c=tuple(c),
        c_prime=tuple(c_prime),
        k=tuple(k),
        ascent=ascent,
        descent=descent,
        uniform_descent_degree=udd,
        drazin_index=ascent,
    )


def _index(m: ExactMatrix) -> int:
    """Least ``j`` with ``rank T^j = rank T^{j+1}``."""
    prev = m.rows
    p = ExactMatrix.identity(m.rows)
    j = 0
    while True:
        p = p @ m
        r = rank(p)
        if r == prev:
            return j
        prev = r
        j += 1


@dataclass(frozen=True)
class DrazinData:
    index: int
    inverse: ExactMatrix
    core_part: ExactMatrix
    nilpotent_part: ExactMatrix

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "inverse": self.inverse.to_json(),
            "core_part": self.core_part.to_json(),
            "nilpotent_part": self.nilpotent_part.to_json(),
        }


def drazin(m: ExactMatrix) -> DrazinData:
    """Drazin inverse via the split ``C^n = R(T^k) ⊕ N(T^k)`` at the index ``k``.

    In a basis adapted to that split, ``T`` is ``diag(C, N)`` with ``C``
    invertible and ``N`` nilpotent; the inverse is ``P diag(C^-1, 0) P^-1``.
    """
    m._require_square()
    n = m.rows
    k = _index(m)
    tk = matrix_power(m, k)
    r, nk = range_space(tk), kernel(tk)
    _require(r.dim + nk.dim == n, "range and kernel of T^k are not complementary")
    if r.dim == 0:
        d = ExactMatrix.zero(n)
    else:
        vectors = list(r.basis) + list(nk.basis)
        p = ExactMatrix(n, n, [vectors[j][i] for i in range(n) for j in range(n)])
        p_inv = inverse(p)
        t_adapted = p_inv @ m @ p
        rd = r.dim
        core_block = ExactMatrix(rd, rd, [t_adapted[i, j] for i in range(rd) for j in range(rd)])
        for i in range(rd):
            for j in range(rd, n):
                _require(t_adapted[i, j].is_zero() and t_adapted[j, i].is_zero(), "split is not invariant")
        ci = inverse(core_block)
        padded = ExactMatrix(
            n, n, [ci[i, j] if i < rd and j < rd else 0 for i in range(n) for j in range(n)]
        )
        d = p @ padded @ p_inv
    core = m @ d @ m
    nil = m - core
    _require(d @ m == m @ d, "Drazin inverse does not commute")
    _require(d @ m @ d == d, "DTD != D")
    _require(matrix_power(m, k + 1) @ d == tk, "T^{k+1} D != T^k")
    _require((core @ nil).is_zero() and (nil @ core).is_zero(), "core and nilpotent parts do not annihilate")
    _require(matrix_power(nil, k).is_zero() if k else nil.is_zero(), "nilpotent part has wrong order")
    return DrazinData(index=k, inverse=d, core_part=core, nilpotent_part=nil)


@dataclass(frozen=True)
class PointClassification:
    lam: ExactScalar
    in_spectrum: bool
    pole_order: int
    algebraic_multiplicity: int
    chain: ChainReport

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "in_spectrum": self.in_spectrum,
            "pole_order": self.pole_order,
            "algebraic_multiplicity": self.algebraic_multiplicity,
            "chain": self.chain.to_json(),
        }


def shifted(m: ExactMatrix, lam: ScalarLike) -> ExactMatrix:
    """``m - lam I``."""
    return m - ExactMatrix.identity(m.rows).scale(lam)


def classify_point(m: ExactMatrix, lam: ScalarLike) -> PointClassification:
    m._require_square()
    lam = ExactScalar.coerce(lam)
    a = shifted(m, lam)
    report = chain_report(a)
    in_spec = kernel(a).dim > 0
    _require(in_spec == (report.ascent >= 1), "spectral membership disagrees with pole order")
    mult = kernel(matrix_power(a, m.rows)).dim
    return PointClassification(
        lam=lam,
        in_spectrum=in_spec,
        pole_order=report.ascent,
        algebraic_multiplicity=mult,
        chain=report,
    )


@dataclass(frozen=True)
class EigenvalueReport:
    """Gaussian-rational roots of the characteristic polynomial.

    ``complete`` is true when the multiplicities add up to the dimension,
    i.e. the polynomial splits into linear factors over Q(i).
    """

    eigenvalues: tuple[tuple[ExactScalar, int], ...]
    complete: bool
    charpoly: tuple[ExactScalar, ...] = field(default=())

    def values(self) -> list[ExactScalar]:
        return [v for v, _ in self.eigenvalues]

    def to_json(self) -> dict:
        return {
            "eigenvalues": [{"value": v.to_json(), "multiplicity": k} for v, k in self.eigenvalues],
            "complete": self.complete,
            "charpoly": [c.to_json() for c in self.charpoly],
        }


def _sympy_number(z: ExactScalar):
    import sympy

    return sympy.Rational(z.re_num, z.re_den) + sympy.I * sympy.Rational(z.im_num, z.im_den)


def _to_scalar(value) -> ExactScalar:
    import sympy

    re, im = sympy.re(value), sympy.im(value)
    return ExactScalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _horner(coeffs: list[ExactScalar], z: ExactScalar) -> ExactScalar:
    acc = ExactScalar(0)
    for c in coeffs:
        acc = acc * z + c
    return acc


def _snap(x: float, max_den: int) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def _candidate_roots(coeffs: list[ExactScalar]) -> list[ExactScalar]:
    """Exactly verified roots of a square-free polynomial, proposed numerically.

    Floating-point roots are only candidates: each is snapped to a nearby
    Gaussian rational and kept only if the polynomial vanishes there exactly.
    """
    import numpy as np

    approx = np.roots([complex(float(c.re), float(c.im)) for c in coeffs])
    found: list[ExactScalar] = []
    for max_den in (64, 4096):
        for r in approx:
            z = ExactScalar(_snap(r.real, max_den), _snap(r.imag, max_den))
            if z not in found and _horner(coeffs, z).is_zero():
                found.append(z)
        if len(found) == len(coeffs) - 1:
            break
    return found


def gaussian_rational_roots(coeffs: list[ExactScalar]) -> tuple[list[tuple[ExactScalar, int]], int]:
    """Roots in Q(i) with multiplicity, plus the total degree of linear factors.

    sympy's ``QQ_I`` domain splits the polynomial into square-free parts.
    Each part first gets cheap numerically proposed, exactly checked roots;
    only when those do not exhaust its degree is it fully factored over Q(i),
    so a missing root is never due to rounding.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([_sympy_number(c) for c in coeffs], x, domain=sympy.QQ_I)
    if poly.degree() <= 0:
        return [], 0
    _, parts = poly.sqf_list()
    roots: dict[ExactScalar, int] = {}
    for part, mult in parts:
        deg = part.degree()
        if deg == 1:
            a, b = part.all_coeffs()
            simple = [_to_scalar(sympy.expand(-b / a))]
        else:
            simple = _candidate_roots([_to_scalar(c) for c in part.all_coeffs()])
            if len(simple) < deg:
                simple = []
                for factor, _ in part.factor_list()[1]:
                    if factor.degree() == 1:
                        a, b = factor.all_coeffs()
                        simple.append(_to_scalar(sympy.expand(-b / a)))
        for root in simple:
            roots[root] = roots.get(root, 0) + mult
    found = sum(roots.values())
    return sorted(roots.items(), key=lambda kv: kv[0].sort_key()), found


def rational_eigenvalues(m: ExactMatrix) -> EigenvalueReport:
    m._require_square()
    coeffs = charpoly(m)
    roots, found = gaussian_rational_roots(coeffs)
    return EigenvalueReport(eigenvalues=tuple(roots), complete=found == m.rows, charpoly=tuple(coeffs))


def point_spectrum_region(m: ExactMatrix):
    """The spectrum of ``m`` as a finite point region."""
    from .region import Point, SpectralRegion

    rep = rational_eigenvalues(m)
    if not rep.complete:
        raise IncompleteFactorization(
            "characteristic polynomial does not split over the Gaussian rationals",
            found=sum(k for _, k in rep.eigenvalues),
            dim=m.rows,
        )
    return SpectralRegion.from_primitives([Point(v) for v in rep.values()])


def spectrum_classification(m: ExactMatrix) -> list[PointClassification]:
    return [classify_point(m, v) for v in rational_eigenvalues(m).values()]
