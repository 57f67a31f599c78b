"""Binary forms, derivations, contraction spaces and apolarity.

A form of degree d is stored by its coefficients in the monomial basis
x^d, x^(d-1) y, ..., y^d.  The dual space uses the basis
dx^(d-i) dy^i in the same order, paired with the monomials through

    <dx^(d-i) dy^i, x^(d-j) y^j> = delta_ij (d-i)! i!

which is the action of the differential operator.  With these weights the
adjunction <f l, g> = <f, D_l g> holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .linalg import (
    Mat,
    Subspace,
    annihilator_rows,
    canonicalize,
    format_rational,
    image,
    kernel,
    rank,
    span_sum,
    to_rational,
)

DX = (Fraction(1), Fraction(0))
DY = (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"a form of degree {self.degree} needs {self.degree + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def of(cls, coeffs: Iterable) -> BinaryForm:
        cs = tuple(to_rational(c) for c in coeffs)
        return cls(len(cs) - 1, cs)

    @classmethod
    def monomial(cls, d: int, i: int) -> BinaryForm:
        """x^(d-i) y^i."""
        if not 0 <= i <= d:
            raise ValueError(f"monomial index {i} out of range for degree {d}")
        return cls(d, tuple(Fraction(int(j == i)) for j in range(d + 1)))

    @classmethod
    def power_of_linear(cls, alpha, beta, d: int) -> BinaryForm:
        """(alpha x + beta y)^d."""
        a, b = to_rational(alpha), to_rational(beta)
        return cls(d, tuple(comb(d, i) * a ** (d - i) * b**i for i in range(d + 1)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> BinaryForm:
        c = to_rational(c)
        return BinaryForm(self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: BinaryForm) -> BinaryForm:
        return BinaryForm(self.degree + other.degree, convolve(self.coeffs, other.coeffs))

    def derive(self, direction=DX) -> BinaryForm:
        return BinaryForm(self.degree - 1, derivation_matrix(self.degree, direction).apply(self.coeffs))

    def partial_xy(self, i: int, j: int) -> BinaryForm:
        """dx^i dy^j applied to the form."""
        f = self
        for _ in range(i):
            f = f.derive(DX)
        for _ in range(j):
            f = f.derive(DY)
        return f

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> BinaryForm:
        form = cls.of(data["coeffs"])
        if form.degree != data["degree"]:
            raise ValueError(f"degree {data['degree']} does not match {len(data['coeffs'])} coefficients")
        return form

    def __str__(self):
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(
                p for p in (_power("x", d - i), _power("y", i)) if p
            )
            terms.append(f"({format_rational(c)})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) or "0"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def convolve(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return tuple(out)


class _GradedSubspace:
    """Shared behaviour of subspaces of S^d U and S^d U*."""

    degree: int
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.degree + 1:
            raise ValueError(f"degree {self.degree} needs ambient dimension {self.degree + 1}, got {self.space.ambient_dim}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_full(self) -> bool:
        return self.space.is_full()

    def basis_forms(self) -> list[BinaryForm]:
        return [BinaryForm(self.degree, row) for row in self.space.basis]

    def to_json(self) -> dict:
        return {"degree": self.degree, "basis": self.space.to_json()}

    @classmethod
    def from_json(cls, data: dict):
        d = data["degree"]
        return cls(d, canonicalize(data["basis"], d + 1))

    @classmethod
    def span(cls, d: int, rows: Iterable[Sequence]):
        return cls(d, canonicalize(list(rows), d + 1))

    @classmethod
    def zero(cls, d: int):
        return cls(d, Subspace.zero(d + 1))

    @classmethod
    def full(cls, d: int):
        return cls(d, Subspace.full(d + 1))

    def __le__(self, other) -> bool:
        return self.degree == other.degree and self.space <= other.space


@dataclass(frozen=True)
class FormSubspace(_GradedSubspace):
    degree: int
    space: Subspace

    @classmethod
    def from_forms(cls, forms: Sequence[BinaryForm], degree: int | None = None) -> FormSubspace:
        if degree is None:
            if not forms:
                raise ValueError("degree is required for an empty list of forms")
            degree = forms[0].degree
        if any(f.degree != degree for f in forms):
            raise ValueError("forms of mixed degree")
        return cls.span(degree, [f.coeffs for f in forms])

    @classmethod
    def monomials(cls, d: int, ys: Iterable[int]) -> FormSubspace:
        """Span of x^(d-i) y^i for i in ``ys``."""
        return cls.from_forms([BinaryForm.monomial(d, i) for i in ys], d)

    def __add__(self, other: FormSubspace) -> FormSubspace:
        if self.degree != other.degree:
            raise ValueError("cannot add subspaces of different degree")
        return FormSubspace(self.degree, span_sum(self.space, other.space))


@dataclass(frozen=True)
class DualFormSubspace(_GradedSubspace):
    degree: int
    space: Subspace


def derivation_matrix(d: int, direction=DX) -> Mat:
    """Matrix of alpha*dx + beta*dy from S^d U to S^(d-1) U."""
    alpha, beta = (to_rational(c) for c in direction)
    if d < 1:
        raise ValueError("derivations are defined on forms of degree >= 1")
    if not alpha and not beta:
        raise ValueError("direction must be nonzero")
    zero = Fraction(0)
    rows = []
    for j in range(d):
        row = [zero] * (d + 1)
        row[j] = alpha * (d - j)
        row[j + 1] = beta * (j + 1)
        rows.append(tuple(row))
    return Mat(tuple(rows), d + 1)


def partial(T: FormSubspace) -> FormSubspace:
    """The span of all first derivatives of T, a subspace of S^(d-1) U."""
    d = T.degree
    if d < 1:
        raise ValueError("partial is undefined in degree 0")
    dx, dy = derivation_matrix(d, DX), derivation_matrix(d, DY)
    rows = [dx.apply(v) for v in T.space.basis] + [dy.apply(v) for v in T.space.basis]
    return FormSubspace(d - 1, canonicalize(rows, d))


def partial_power(T: FormSubspace, h: int) -> FormSubspace:
    for _ in range(h):
        T = partial(T)
    return T


def partial_inv(T: FormSubspace, directions=(DX, DY)) -> FormSubspace:
    """Largest W in S^(d+1) U whose derivatives all land in T.

    Any two independent directions give the same answer; the default pair is
    (dx, dy).
    """
    d = T.degree
    if T.is_full():
        return FormSubspace.full(d + 1)
    if T.dim == 0:
        return FormSubspace.zero(d + 1)
    first, second = directions
    if rank(Mat.from_rows([first, second])) != 2:
        raise ValueError("directions must be linearly independent")
    ann = annihilator_rows(T.space)
    stacked = (ann @ derivation_matrix(d + 1, first)).vstack(ann @ derivation_matrix(d + 1, second))
    return FormSubspace(d + 1, kernel(stacked))


def partial_inv_power(T: FormSubspace, k: int) -> FormSubspace:
    for _ in range(k):
        T = partial_inv(T)
    return T


def _partial_rows(g: BinaryForm, r: int) -> list[tuple[Fraction, ...]]:
    # dx^(r-i) dy^i g for i = 0..r, reusing dx^(r-i) g along the way.
    xs = [g]
    for _ in range(r):
        xs.append(xs[-1].derive(DX))
    rows = []
    for i in range(r + 1):
        f = xs[r - i]
        for _ in range(i):
            f = f.derive(DY)
        rows.append(f.coeffs)
    return rows


def derivative_system(g: BinaryForm, r: int) -> FormSubspace:
    """Span of the r-th partial derivatives of g, inside S^(deg g - r) U."""
    if r == -1:
        return FormSubspace.zero(g.degree + 1)
    if not 0 <= r <= g.degree:
        raise ValueError(f"order {r} out of range for a form of degree {g.degree}")
    return FormSubspace.span(g.degree - r, _partial_rows(g, r))


def catalecticant(g: BinaryForm, r: int) -> Mat:
    """(r+1) x (d-r+1) matrix whose row i holds dx^(r-i) dy^i g."""
    if not 1 <= r <= g.degree:
        raise ValueError(f"catalecticant order {r} out of range for degree {g.degree}")
    return Mat(tuple(_partial_rows(g, r)), g.degree - r + 1)


def secant_member(g: BinaryForm, r: int) -> bool:
    """Whether [g] lies on the (r-1)-th secant variety of the rational normal curve."""
    if g.is_zero():
        raise ValueError("secant membership is undefined for the zero form")
    if not 1 <= r <= g.degree:
        raise ValueError(f"secant order {r} out of range for degree {g.degree}")
    if 2 * r - 1 >= g.degree:
        return True
    return rank(catalecticant(g, r)) <= r


def off_secant(f: BinaryForm, b: int) -> bool:
    """[f] outside Sec^b of C_deg, i.e. the (b+1)-th partials of f are independent."""
    if f.is_zero() or b + 1 > f.degree:
        return False
    return not secant_member(f, b + 1)


def pairing_weights(d: int) -> tuple[int, ...]:
    return tuple(factorial(d - i) * factorial(i) for i in range(d + 1))


def pair(phi: Sequence[Fraction], g: BinaryForm) -> Fraction:
    """Apolarity pairing of a dual form (coefficient vector) with a form."""
    if len(phi) != g.degree + 1:
        raise ValueError("degree mismatch in pairing")
    return sum((p * c * w for p, c, w in zip(phi, g.coeffs, pairing_weights(g.degree))), Fraction(0))


def annihilator(T: FormSubspace) -> DualFormSubspace:
    d = T.degree
    if T.dim == 0:
        return DualFormSubspace.full(d)
    weights = pairing_weights(d)
    weighted = Mat(tuple(tuple(c * w for c, w in zip(row, weights)) for row in T.space.basis), d + 1)
    return DualFormSubspace(d, kernel(weighted))


def dual_multiply(W: DualFormSubspace, k: int) -> DualFormSubspace:
    """W times S^k U*: span of products of a basis of W with all degree-k monomials."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n = W.degree + k + 1
    rows = []
    for row in W.space.basis:
        for shift in range(k + 1):
            padded = [Fraction(0)] * n
            padded[shift : shift + len(row)] = row
            rows.append(padded)
    return DualFormSubspace(W.degree + k, canonicalize(rows, n))


def symmetric_power(g: Sequence[Sequence], d: int) -> Mat:
    """Matrix of S^d(g) on S^d U, where g sends x to g00 x + g10 y and y to g01 x + g11 y."""
    (a, b), (c, e) = [[to_rational(x) for x in row] for row in g]
    gx = BinaryForm(1, (a, c))
    gy = BinaryForm(1, (b, e))
    columns = []
    for i in range(d + 1):
        f = BinaryForm(0, (Fraction(1),))
        for _ in range(d - i):
            f = f * gx
        for _ in range(i):
            f = f * gy
        columns.append(f.coeffs)
    return Mat(tuple(zip(*columns)), d + 1)


def transform(T: FormSubspace, g: Sequence[Sequence]) -> FormSubspace:
    return FormSubspace(T.degree, image(symmetric_power(g, T.degree), T.space))
