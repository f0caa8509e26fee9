"""Hilbert matrix polynomials, alternating inversion and complexity."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import sympy

from .engine import AlgebraModel
from .presentation import Automorphism
from .report import Report
from .stability import StabilityCertificate

DEFAULT_TRUNCATION = 64
SLOPE_RESIDUAL = 0.25

_t = sympy.Symbol("t")


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zero(n: int) -> list[list[int]]:
    return [[0] * n for _ in range(n)]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][s] * b[s][j] for s in range(k) if a[i][s]) for j in range(m)]
            for i in range(n)]


def matadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def norm(a) -> int:
    """Sum of all entries."""
    return sum(sum(row) for row in a)


@dataclass(frozen=True)
class IntMatrixPoly:
    """sum_k coeffs[k] t^k with n x n integer matrix coefficients."""

    coeffs: tuple

    def __init__(self, coeffs):
        mats = [tuple(tuple(int(x) for x in row) for row in c) for c in coeffs]
        while len(mats) > 1 and not any(any(row) for row in mats[-1]):
            mats.pop()
        object.__setattr__(self, "coeffs", tuple(mats))

    @property
    def n(self) -> int:
        return len(self.coeffs[0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return [list(r) for r in self.coeffs[k]]
        return zero(self.n)

    def at_minus_t(self) -> "IntMatrixPoly":
        return IntMatrixPoly([[[(-1) ** k * x for x in row] for row in c]
                              for k, c in enumerate(self.coeffs)])

    def __mul__(self, other: "IntMatrixPoly") -> "IntMatrixPoly":
        n = self.n
        out = [zero(n) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = matadd(out[i + j], matmul(a, b))
        return IntMatrixPoly(out)

    def to_sympy(self) -> sympy.Matrix:
        n = self.n
        return sympy.Matrix(n, n, lambda i, j: sum(c[i][j] * _t ** k
                                                   for k, c in enumerate(self.coeffs)))

    def determinant(self) -> sympy.Poly:
        return sympy.Poly(self.to_sympy().det(method="berkowitz"), _t)

    def scalar_if_single_vertex(self):
        if self.n == 1:
            return [c[0][0] for c in self.coeffs]
        return None

    def format(self) -> str:
        lines = []
        for k, c in enumerate(self.coeffs):
            lines.append(f"t^{k} = " + str([list(r) for r in c]).replace(" ", ""))
        return "\n".join(lines) + "\n"


def hilbert_poly(m: AlgebraModel) -> IntMatrixPoly:
    if not m.finite:
        raise ValueError("Hilbert polynomial needs a finite-dimensional model")
    return IntMatrixPoly(m.degree_dims())


def poly_from_scalars(cs: list[int]) -> IntMatrixPoly:
    return IntMatrixPoly([[[c]] for c in cs])


class NegativeCoefficient(ArithmeticError):
    def __init__(self, r: int, entry: tuple, value: int):
        super().__init__(f"inverse series coefficient A_{r} has entry {entry} = {value} < 0")
        self.r, self.entry, self.value = r, entry, value


@dataclass
class SeriesCoefficients:
    R: int
    matrices: list = field(default_factory=list)

    @property
    def norms(self) -> list[int]:
        return [norm(a) for a in self.matrices]

    def __getitem__(self, r):
        return self.matrices[r]


def invert_alternating(hp: IntMatrixPoly, R: int = DEFAULT_TRUNCATION,
                       allow_negative: bool = False) -> SeriesCoefficients:
    """Coefficients A_0..A_R of H(-t)^-1."""
    n = hp.n
    if [list(r) for r in hp.coeffs[0]] != identity(n):
        raise ValueError("constant term of the Hilbert polynomial is not the identity")
    neg = hp.at_minus_t()
    mats = [identity(n)]
    for r in range(1, R + 1):
        acc = zero(n)
        for k in range(1, min(r, neg.degree) + 1):
            acc = matadd(acc, matmul(neg.coefficient(k), mats[r - k]))
        a = [[-x for x in row] for row in acc]
        if not allow_negative:
            for i, row in enumerate(a):
                for j, x in enumerate(row):
                    if x < 0:
                        raise NegativeCoefficient(r, (i, j), x)
        mats.append(a)
    return SeriesCoefficients(R, mats)


def permutation_factor(cert: StabilityCertificate, sigma: Automorphism | None = None):
    """0/1 matrix with a 1 at (target, source) of each returning arrow.

    The returning arrow at vertex j ends at tau(pi^-1(j)), pi the vertex
    permutation of sigma, so row i carries its 1 in column pi(tau^-1(i)).
    """
    q = cert.model.quiver
    idx = q.vertex_index
    n = q.n
    p = zero(n)
    pinv = {w: v for v, w in sigma.vertex_map.items()} if sigma else {v: v for v in q.vertices}
    for j in q.vertices:
        p[idx[cert.tau[pinv[j]]]][idx[j]] = 1
    return p


def verify_extension_hilbert(m: AlgebraModel, cert: StabilityCertificate,
                             sigma: Automorphism | None, ext: AlgebraModel,
                             factor=None) -> Report:
    rep = Report("hilbert-factorization")
    h = hilbert_poly(m)
    p = factor if factor is not None else permutation_factor(cert, sigma)
    rhs = h * IntMatrixPoly([identity(h.n), p])
    lhs = hilbert_poly(ext)
    witnesses = [] if lhs == rhs else ["extension:\n" + lhs.format(), "product:\n" + rhs.format()]
    rep.add("hilbert_factorization", lhs == rhs, f"degree {lhs.degree}", witnesses)
    return rep


def partial_sum_report(base: SeriesCoefficients, ext: SeriesCoefficients) -> Report:
    rep = Report("partial-sums")
    R = min(base.R, ext.R)
    bn, en = base.norms, ext.norms
    bad = [r for r in range(R + 1) if en[r] != sum(bn[: r + 1])]
    rep.add("partial_sum_law", not bad, f"r <= {R}",
            [f"r={r}: {en[r]} != {sum(bn[: r + 1])}" for r in bad])
    return rep


# -------------------------------------------------------------- complexity

@dataclass
class ComplexityReport:
    d: int | None  # None means infinite
    method: str
    period: int | None = None
    leading: list = field(default_factory=list)
    residual: float | None = None
    notes: list = field(default_factory=list)

    @property
    def infinite(self) -> bool:
        return self.d is None

    def records(self) -> list[tuple[str, str]]:
        out = [("complexity", "infinite" if self.d is None else str(self.d)),
               ("method", self.method)]
        if self.period is not None:
            out.append(("period", str(self.period)))
        if self.leading:
            out.append(("leading", " ".join(str(x) for x in self.leading)))
        if self.residual is not None:
            out.append(("residual", f"{self.residual:.6f}"))
        out.extend(("note", n) for n in self.notes)
        return out


class TruncationTooShort(ValueError):
    def __init__(self, need: int, got: int):
        super().__init__(f"need at least {need} coefficients, got {got}; raise R")
        self.need = need


def cyclotomic_order(f: sympy.Poly) -> int | None:
    """k with f = +-Phi_k, or None."""
    d = f.degree()
    for k in range(1, 2 * d * d + 3):
        if sympy.totient(k) != d:
            continue
        phi = sympy.Poly(sympy.cyclotomic_poly(k, _t), _t)
        if f == phi or f == -phi:
            return k
    return None


def norm_generating_function(hp: IntMatrixPoly):
    """(numerator, denominator) of sum_r ||A_r|| t^r in lowest terms."""
    mat = hp.at_minus_t().to_sympy()
    det = mat.det(method="berkowitz")
    adj = mat.adjugate(method="berkowitz")
    num = sympy.expand(sum(adj))
    ratio = sympy.cancel(num / det)
    n, d = sympy.fraction(ratio)
    return sympy.Poly(n, _t), sympy.Poly(d, _t)


def _exact_complexity(norms: list[int], hp: IntMatrixPoly) -> ComplexityReport:
    num, den = norm_generating_function(hp)
    _, factors = sympy.factor_list(den.as_expr(), _t)
    period, mult = 1, 0
    for f, e in factors:
        fp = sympy.Poly(f, _t)
        if fp.degree() == 0:
            continue
        k = cyclotomic_order(fp)
        if k is None:
            roots = sympy.Poly(f, _t).nroots()
            if min(abs(complex(z)) for z in roots) < 1 - 1e-12:
                return ComplexityReport(None, "exact-quasipolynomial",
                                        notes=[f"factor {f} has a root inside the unit disc"])
            raise ValueError(f"unrecognised denominator factor {f}")
        period = math.lcm(period, k)
        mult = max(mult, e)
    if mult == 0:
        return ComplexityReport(0, "exact-quasipolynomial", period=1,
                                notes=["sequence is eventually zero"])
    r0 = max(0, num.degree() - den.degree() + 1)
    need = r0 + period * (mult + 1)
    if len(norms) < need:
        raise TruncationTooShort(need, len(norms))
    top, leading = -1, []
    for c in range(period):
        seq = norms[r0 + c::period]
        deg, lead = _difference_degree(seq[: mult + 1])
        leading.append(lead)
        top = max(top, deg)
    d = 0 if top < 0 else top + 1
    return ComplexityReport(d, "exact-quasipolynomial", period=period, leading=leading)


def _difference_degree(seq: list[int]) -> tuple[int, int]:
    """Degree of the polynomial through seq (-1 for all zero) and its top difference."""
    diffs = list(seq)
    deg, lead = -1, 0
    k = 0
    while diffs:
        if any(diffs):
            deg, lead = k, diffs[0]
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        k += 1
    return deg, lead


def _empirical_complexity(norms: list[int]) -> ComplexityReport:
    tail = [(r, x) for r, x in enumerate(norms) if r >= max(2, len(norms) // 2)]
    if not tail or all(x == 0 for _, x in tail):
        return ComplexityReport(0, "empirical-slope", residual=0.0)
    if any(x == 0 for _, x in tail):
        return ComplexityReport(None, "empirical-slope",
                                notes=["tail mixes zero and nonzero terms"])
    xs = [math.log(r) for r, _ in tail]
    ys = [math.log(x) for _, x in tail]
    slope, _ = statistics.linear_regression(xs, ys)
    d = max(0, round(slope + 1))
    residual = abs(slope + 1 - d)
    notes = [] if residual <= SLOPE_RESIDUAL else [f"residual above {SLOPE_RESIDUAL}"]
    return ComplexityReport(d, "empirical-slope", leading=[round(slope, 6)],
                            residual=residual, notes=notes)


def complexity_of(norms: list[int], hp: IntMatrixPoly | None = None) -> ComplexityReport:
    """Polynomial growth degree of a norm sequence.

    With ``hp`` the sequence is taken to be the norms of H(-t)^-1 and the
    answer is exact; otherwise a log-log slope fit over the tail is used.
    """
    if hp is not None:
        return _exact_complexity(list(norms), hp)
    return _empirical_complexity(list(norms))


def algebra_complexity(m: AlgebraModel, R: int = DEFAULT_TRUNCATION) -> ComplexityReport:
    hp = hilbert_poly(m)
    return complexity_of(invert_alternating(hp, R).norms, hp)
