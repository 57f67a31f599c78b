"""Rational curves as projections of the rational normal curve.

Projecting C_d from a vertex P(T) with P(T) disjoint from C_d gives a
degree-d curve in P^s, s = d - e - 1.  Its restricted tangent bundle splits
as a sum of O(a_i); the twists follow from the numerical type of T, and
independently from the dimensions h_k = h^0 of the bundle twisted by O(-k).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .classify import (
    DEFAULT_COEFF_BOUND,
    DEFAULT_RETRY_BUDGET,
    InternalInconsistency,
    NumericalType,
    RetryBudgetExhausted,
    numerical_type,
)
from .forms import (
    BinaryForm,
    FormSubspace,
    annihilator,
    derivative_system,
    dual_multiply,
    off_secant,
    pair,
    partial_inv,
)
from .linalg import Mat, rank, span_sum
from .strata import enumerate_types


@dataclass(frozen=True)
class SplittingType:
    """Twists a_1 >= ... >= a_s of the restricted tangent bundle of a degree-d curve."""

    twists: tuple[int, ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted(self.twists, reverse=True)))

    @property
    def s(self) -> int:
        return len(self.twists)

    @property
    def e(self) -> int:
        return self.d - self.s - 1

    def violations(self) -> list[str]:
        problems = []
        if self.s < 1:
            problems.append("at least one twist is required")
            return problems
        if self.s > self.d - 1:
            problems.append(f"target dimension s = {self.s} exceeds d - 1 = {self.d - 1}")
        if self.twists[-1] < self.d + 1:
            problems.append(f"smallest twist {self.twists[-1]} is below d + 1 = {self.d + 1}")
        total = (self.d - self.e) * self.d
        if sum(self.twists) != total:
            problems.append(
                f"twists sum to {sum(self.twists)} but (d - e) d = {total} for s = {self.s} (e = {self.e})"
            )
        return problems

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise ValueError(f"inadmissible splitting type {list(self.twists)} for d = {self.d}: " + "; ".join(problems))

    def vertex_type(self) -> NumericalType:
        """The type (-1, b_1, ..., b_r) with b_i = a_i - d - 2 over twists a_i >= d + 2."""
        self.validate()
        return NumericalType(-1, tuple(a - self.d - 2 for a in self.twists if a >= self.d + 2))

    def to_json(self) -> list[int]:
        return list(self.twists)


@dataclass(frozen=True)
class CurveMap:
    d: int
    s: int
    components: tuple[BinaryForm, ...]
    vertex: FormSubspace

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "components": [c.to_json() for c in self.components],
            "vertex": self.vertex.to_json(),
        }

    def __call__(self, u, v) -> tuple[Fraction, ...]:
        u, v = Fraction(u), Fraction(v)
        d = self.d
        return tuple(sum((c * u ** (d - i) * v**i for i, c in enumerate(g.coeffs)), Fraction(0)) for g in self.components)


def _poly_divmod_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # coefficient lists, lowest degree first, b has nonzero leading coefficient
    a = a[:]
    while len(a) >= len(b):
        if a[-1]:
            q = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] -= q * x
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


def poly_gcd(polys: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Monic gcd of univariate polynomials given lowest degree first."""
    g: list[Fraction] = []
    for p in polys:
        a, b = g, _strip(p)
        while b:
            a, b = b, _poly_divmod_rem(a, b)
        g = a
    if g:
        g = [x / g[-1] for x in g]
    return g


def _strip(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def base_point_free(components: Sequence[BinaryForm]) -> bool:
    """No common zero of the components on P^1."""
    if not components:
        return False
    # the point (u:v) = (0:1) is a common zero iff every v^d coefficient vanishes
    if all(not g.coeffs[-1] for g in components):
        return False
    # on u != 0 set t = v/u; the coefficient of u^(d-i) v^i becomes that of t^i
    g = poly_gcd([g.coeffs for g in components])
    return len(g) == 1


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Resultant of two binary forms via the Sylvester determinant."""
    m, n = f.degree, g.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(f.coeffs) + [Fraction(0)] * (n - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(g.coeffs) + [Fraction(0)] * (m - 1 - i))
    return _det(rows)


def _det(rows: list[list[Fraction]]) -> Fraction:
    rows = [r[:] for r in rows]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det *= p
        for i in range(col + 1, n):
            f = rows[i][col] / p
            if f:
                for k in range(col, n):
                    rows[i][k] -= f * rows[col][k]
    return det


def project_curve(T: FormSubspace) -> CurveMap:
    """Parametrization of the projection of C_d from P(T).

    Component j is u, v -> <phi_j, (u x + v y)^d> for the RREF basis phi_j of
    the annihilator of T.
    """
    d = T.degree
    if T.dim > d - 1:
        raise ValueError(f"vertex of dimension {T.dim} leaves no curve in degree {d}")
    tau = numerical_type(T)
    if tau.a >= 0:
        raise ValueError(f"vertex of type {tau} meets the rational normal curve; the projection degenerates")
    ann = annihilator(T)
    components = []
    for phi in ann.space.basis:
        coeffs = tuple(comb(d, i) * pair(phi, BinaryForm.monomial(d, i)) for i in range(d + 1))
        components.append(BinaryForm(d, coeffs))
    curve = CurveMap(d, len(components) - 1, tuple(components), T)
    if rank(Mat(tuple(c.coeffs for c in components), d + 1)) != len(components):
        raise InternalInconsistency("curve components are linearly dependent")
    if not base_point_free(components):
        raise InternalInconsistency(f"vertex of type {tau} gave a curve with base points")
    return curve


def splitting_from_type(tau: NumericalType, d: int) -> SplittingType:
    if tau.a != -1:
        raise ValueError(f"type {tau} has a >= 0: the vertex meets C_d")
    if tau.dim == 0:
        raise ValueError("empty vertex: no projection, use project_curve on T = 0 directly")
    if not tau.admissible(d):
        raise ValueError(f"type {tau} is not admissible in degree {d}")
    s = d - tau.dim
    twists = tuple(b + d + 2 for b in tau.bs) + (d + 1,) * (s - tau.r)
    st = SplittingType(twists, d)
    st.validate()
    return st


@dataclass(frozen=True)
class CohomologyProfile:
    """h_k = h^0 of the restricted tangent bundle twisted by O(-k), for k = 1..k_max."""

    d: int
    e: int
    values: tuple[int, ...]
    route_a: tuple[int, ...]
    route_b: tuple[int, ...]

    def h(self, k: int) -> int:
        if k < 1:
            raise IndexError("profile starts at k = 1")
        if k > len(self.values):
            if self.values and self.values[-1] == 0:
                return 0
            raise IndexError(f"profile computed only up to k = {len(self.values)}")
        return self.values[k - 1]

    def to_json(self) -> dict:
        return {"d": self.d, "e": self.e, "h": list(self.values)}


def cohomology_profile(T: FormSubspace, k_max: int | None = None) -> CohomologyProfile:
    """h_k for k = 1..k_max; for k >= d+2 computed by two independent routes.

    Route A uses dim d^(-(k-d-2)) T, route B uses k - 1 minus the dimension of
    T^perp times S^(k-d-2) U*.  Any disagreement raises InternalInconsistency.
    When ``k_max`` is omitted the profile runs to the first zero for k >= d+2.
    """
    d = T.degree
    e = T.dim - 1
    values = [(d - e) * (d - k + 1) + (k - 1) for k in range(1, d + 2)]
    ann = annihilator(T)
    route_a, route_b = [], []
    k = d + 2
    inv = T
    limit = k_max if k_max is not None else 2 * d + 4
    while k <= limit:
        j = k - d - 2
        if j:
            inv = partial_inv(inv)
        a_val = inv.dim
        b_val = k - 1 - dual_multiply(ann, j).dim
        if a_val != b_val:
            raise InternalInconsistency(f"h_{k}: route A gives {a_val}, route B gives {b_val}")
        route_a.append(a_val)
        route_b.append(b_val)
        values.append(a_val)
        if k_max is None and a_val == 0:
            break
        k += 1
    else:
        if k_max is None:
            raise ValueError("profile does not reach zero; does the vertex meet C_d?")
    if k_max is not None:
        values = values[:k_max]
    return CohomologyProfile(d, e, tuple(values), tuple(route_a), tuple(route_b))


def splitting_from_cohomology(profile: CohomologyProfile | Sequence[int], d: int, s: int) -> SplittingType:
    """Recover twists from h_k = sum max(a_i - k + 1, 0)."""
    h = list(profile.values if isinstance(profile, CohomologyProfile) else profile)
    if len(h) < d + 2 or h[d + 1] == 0:
        raise ValueError("profile needs h_(d+2) = dim T > 0")
    if h[-1] != 0:
        raise ValueError("profile must extend to a zero value")
    h = h + [0, 0]
    # count[k] = #{a_i >= k} = h_k - h_(k+1), for k = 1..len
    count = {k: h[k - 1] - h[k] for k in range(1, len(h))}
    twists = []
    for k in range(1, len(h) - 1):
        if count[k] < 0 or count[k] < count[k + 1]:
            raise ValueError(f"profile is not non-increasing and convex at k = {k}")
        twists.extend([k] * (count[k] - count[k + 1]))
    if len(twists) != s:
        raise ValueError(f"profile encodes {len(twists)} twists, expected s = {s}")
    st = SplittingType(tuple(twists), d)
    st.validate()
    return st


def curve_splitting(T: FormSubspace) -> SplittingType:
    return splitting_from_cohomology(cohomology_profile(T), T.degree, T.degree - T.dim)


def construct_with_splitting(
    target: SplittingType,
    rng: random.Random,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    bound: int = DEFAULT_COEFF_BOUND,
) -> tuple[FormSubspace, CurveMap]:
    """Vertex T and curve with restricted tangent bundle of the given splitting type."""
    target.validate()
    d = target.d
    tau = target.vertex_type()
    if not tau.admissible(d):
        raise ValueError(f"vertex type {tau} is not admissible in degree {d}")
    for _ in range(retry_budget):
        fs = [
            BinaryForm(d + b, tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d + b + 1)))
            for b in tau.bs
        ]
        if not all(off_secant(f, b) for f, b in zip(fs, tau.bs)):
            continue
        dparts = [derivative_system(f, b + 1).space for f, b in zip(fs, tau.bs)]
        if span_sum(*dparts).dim != sum(b + 2 for b in tau.bs):
            continue
        T = FormSubspace(d, span_sum(*(derivative_system(f, b).space for f, b in zip(fs, tau.bs))))
        got = numerical_type(T)
        if got != tau:
            raise InternalInconsistency(f"constructed vertex has type {got}, expected {tau}")
        curve = project_curve(T)
        recovered = curve_splitting(T)
        if recovered != target:
            raise InternalInconsistency(f"constructed curve has splitting {recovered.twists}, expected {target.twists}")
        return T, curve
    raise RetryBudgetExhausted(f"no generic forms found for splitting {list(target.twists)} in {retry_budget} draws")


def splitting_types(d: int) -> list[SplittingType]:
    """All splitting types of non-degenerate degree-d rational curves in P^s, 1 <= s <= d-1."""
    out = []
    for e in range(0, d - 1):
        for tau in enumerate_types(d, e):
            if tau.a == -1:
                out.append(splitting_from_type(tau, d))
    return out
