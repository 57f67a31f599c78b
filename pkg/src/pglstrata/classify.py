"""Numerical type of a subspace T of S^d U.

The type (a, b_1, ..., b_r) is read off the dimensions n_h of the iterated
inverse contractions d^(-h) T.  The Kronecker left minimal indices of the
pencil lambda*dx + mu*dy : T -> dT give an independent route to the b_i.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .forms import (
    DX,
    DY,
    BinaryForm,
    FormSubspace,
    derivation_matrix,
    derivative_system,
    off_secant,
    partial,
    partial_inv,
    partial_power,
)
from .linalg import Mat, Subspace, coordinates, rank, span_sum

DEFAULT_COEFF_BOUND = 100
DEFAULT_RETRY_BUDGET = 32


class InternalInconsistency(RuntimeError):
    """Two routes that must agree by theorem disagreed."""


class RetryBudgetExhausted(RuntimeError):
    """Every random draw landed in the degenerate locus."""


@dataclass(frozen=True, order=True)
class NumericalType:
    a: int
    bs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bs", tuple(self.bs))
        if self.a < -1:
            raise ValueError("a must be >= -1")
        if any(b < 0 for b in self.bs):
            raise ValueError("b_i must be >= 0")
        if list(self.bs) != sorted(self.bs, reverse=True):
            raise ValueError(f"b_i must be non-increasing, got {self.bs}")

    @classmethod
    def of(cls, a: int, *bs: int) -> NumericalType:
        return cls(a, tuple(sorted(bs, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> NumericalType:
        """Parse "a,b1,b2,..." (parentheses optional)."""
        parts = [p.strip() for p in text.strip().strip("()").split(",") if p.strip()]
        if not parts:
            raise ValueError("empty type")
        nums = [int(p) for p in parts]
        return cls.of(nums[0], *nums[1:])

    @property
    def r(self) -> int:
        return len(self.bs)

    @property
    def dim(self) -> int:
        """dim T = e + 1."""
        return self.a + 1 + self.r + sum(self.bs)

    @property
    def budget(self) -> int:
        """a + 1 + sum(b_i + 2); admissible in degree d iff this is <= d."""
        return self.a + 1 + sum(b + 2 for b in self.bs)

    def admissible(self, d: int) -> bool:
        return self.budget <= d

    def to_json(self) -> dict:
        return {"a": self.a, "bs": list(self.bs)}

    @classmethod
    def from_json(cls, data: dict) -> NumericalType:
        return cls.of(data["a"], *data["bs"])

    def __str__(self):
        return "(" + ",".join(str(x) for x in (self.a, *self.bs)) + ")"


def _check_proper(T: FormSubspace) -> None:
    if T.is_full():
        raise ValueError("T = S^d U is the only subspace with dim dT = dim T - 1 and has no numerical type")


def inverse_profile(T: FormSubspace) -> tuple[list[int], list[FormSubspace]]:
    """Dimensions n_h = dim d^(-h) T until two steps past stabilization.

    Returns the profile n_0, ..., n_(h*+2) and the spaces d^(-h) T for the same
    range, where h* is the first index with n_(h*+1) = n_(h*).
    """
    _check_proper(T)
    spaces = [T]
    dims = [T.dim]
    while True:
        spaces.append(partial_inv(spaces[-1]))
        dims.append(spaces[-1].dim)
        if dims[-1] == dims[-2]:
            break
        if len(dims) > T.degree + 3:
            raise InternalInconsistency(f"inverse profile {dims} failed to stabilize")
    spaces.append(partial_inv(spaces[-1]))
    dims.append(spaces[-1].dim)
    if dims[-1] != dims[-2]:
        raise InternalInconsistency(f"inverse profile {dims} moved after stabilizing")
    return dims, spaces


def type_from_profile(dims: list[int]) -> NumericalType:
    h_star = len(dims) - 3
    counts = {}
    for h in range(h_star):
        m = dims[h] - 2 * dims[h + 1] + dims[h + 2]
        if m < 0:
            raise InternalInconsistency(f"negative multiplicity in profile {dims}")
        if m:
            counts[h] = m
    bs = sorted((b for b, m in counts.items() for _ in range(m)), reverse=True)
    return NumericalType(dims[h_star] - 1, tuple(bs))


def numerical_type(T: FormSubspace) -> NumericalType:
    return classify(T).type


@dataclass(frozen=True)
class Classification:
    type: NumericalType
    profile: tuple[int, ...]
    dim_partial: int


def classify(T: FormSubspace) -> Classification:
    """Numerical type plus the inverse profile, with the r = dim dT - dim T check."""
    dims, _ = inverse_profile(T)
    tau = type_from_profile(dims)
    dim_partial = partial(T).dim if T.degree >= 1 else 0
    if tau.r != dim_partial - T.dim:
        raise InternalInconsistency(f"profile gives r = {tau.r} but dim dT - dim T = {dim_partial - T.dim}")
    if tau.dim != T.dim:
        raise InternalInconsistency(f"type {tau} has dimension {tau.dim}, T has {T.dim}")
    return Classification(tau, tuple(dims), dim_partial)


def c_generated_part(T: FormSubspace) -> FormSubspace:
    """The smallest subspace containing the scheme P(T) cap C_d."""
    dims, spaces = inverse_profile(T)
    h = len(dims) - 3
    S = partial_power(spaces[h], h)
    if S.dim != dims[h]:
        raise InternalInconsistency(f"C_d-generated part has dimension {S.dim}, expected {dims[h]}")
    if S.dim and partial(S).dim != S.dim:
        raise InternalInconsistency("C_d-generated part does not satisfy dim dS = dim S")
    if not S <= T:
        raise InternalInconsistency("C_d-generated part is not contained in T")
    return S


@dataclass(frozen=True)
class Decomposition:
    S: FormSubspace
    fs: tuple[BinaryForm, ...]
    type: NumericalType

    def summands(self) -> list[FormSubspace]:
        return [self.S] + [derivative_system(f, b) for f, b in zip(self.fs, self.type.bs)]

    def assemble(self) -> FormSubspace:
        d = self.S.degree
        return FormSubspace(d, span_sum(*(s.space for s in self.summands())))

    def to_json(self) -> dict:
        return {
            "S": self.S.to_json(),
            "fs": [f.to_json() for f in self.fs],
            "type": self.type.to_json(),
        }


def random_combination(W: Subspace, rng: random.Random, bound: int = DEFAULT_COEFF_BOUND) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * W.ambient_dim
    for row in W.basis:
        c = rng.randint(-bound, bound)
        if c:
            for k, x in enumerate(row):
                if x:
                    out[k] += c * x
    return tuple(out)


def check_decomposition(T: FormSubspace, S: FormSubspace, fs, bs) -> bool:
    """All invariants of a representation T = S + sum d^(b_i)(f_i), with both sums direct."""
    if not all(off_secant(f, b) for f, b in zip(fs, bs)):
        return False
    parts = [S.space] + [derivative_system(f, b).space for f, b in zip(fs, bs)]
    total = span_sum(*parts)
    if total.dim != sum(p.dim for p in parts) or total != T.space:
        return False
    if T.degree == 0:
        return True
    dparts = [partial(S).space] + [derivative_system(f, b + 1).space for f, b in zip(fs, bs)]
    dtotal = span_sum(*dparts)
    return dtotal.dim == sum(p.dim for p in dparts) and dtotal == partial(T).space


def decompose(
    T: FormSubspace,
    rng: random.Random,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    bound: int = DEFAULT_COEFF_BOUND,
) -> Decomposition:
    """Random representation of T as S plus derivative systems of forms f_i.

    Each f_i is drawn from d^(-b_i) T; a draw is accepted once every
    directness and secant condition has been checked.
    """
    dims, spaces = inverse_profile(T)
    tau = type_from_profile(dims)
    S = c_generated_part(T)
    pools = {b: spaces[b] for b in set(tau.bs)}
    for _ in range(retry_budget):
        fs = tuple(BinaryForm(T.degree + b, random_combination(pools[b].space, rng, bound)) for b in tau.bs)
        if check_decomposition(T, S, fs, tau.bs):
            return Decomposition(S, fs, tau)
    raise RetryBudgetExhausted(f"no valid decomposition of a type {tau} space in {retry_budget} draws")


@dataclass(frozen=True)
class Pencil:
    """lambda*A + mu*B, both m x n."""

    A: Mat
    B: Mat

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise ValueError(f"pencil matrices differ in shape: {self.A.shape} vs {self.B.shape}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    def at(self, lam, mu) -> Mat:
        lam, mu = Fraction(lam), Fraction(mu)
        return Mat(
            tuple(tuple(lam * a + mu * b for a, b in zip(ra, rb)) for ra, rb in zip(self.A.rows, self.B.rows)),
            self.A.ncols,
        )

    def normal_rank(self) -> int:
        # A rank drop happens at no more than min(m, n) values of lambda/mu.
        m, n = self.shape
        return max(rank(self.at(1, t)) for t in range(min(m, n) + 1))


def pencil_of(T: FormSubspace) -> Pencil:
    """Matrices of dx and dy restricted to T, as maps T -> dT in RREF bases."""
    _check_proper(T)
    dT = partial(T)
    d = T.degree
    cols = {}
    for name, direction in (("A", DX), ("B", DY)):
        D = derivation_matrix(d, direction)
        images = [coordinates(dT.space, D.apply(v)) for v in T.space.basis]
        cols[name] = Mat(tuple(zip(*images)), T.dim) if images else Mat.zeros(dT.dim, 0)
    return Pencil(cols["A"], cols["B"])


def _left_kernel_dim(P: Pencil, j: int) -> int:
    """Dimension of homogeneous degree-j rows w with w (lambda A + mu B) = 0."""
    m, n = P.shape
    # unknowns: w_0..w_j (each length m), w = sum w_k lambda^(j-k) mu^k.
    # coefficient of lambda^(j+1-t) mu^t: w_t A + w_(t-1) B = 0, t = 0..j+1.
    At = P.A.transpose().rows
    Bt = P.B.transpose().rows
    zero = Fraction(0)
    rows = []
    for t in range(j + 2):
        for col in range(n):
            row = [zero] * ((j + 1) * m)
            if t <= j:
                row[t * m : (t + 1) * m] = At[col]
            if t >= 1:
                row[(t - 1) * m : t * m] = Bt[col]
            rows.append(row)
    if not rows:
        return (j + 1) * m
    return (j + 1) * m - rank(Mat(tuple(tuple(r) for r in rows), (j + 1) * m))


def kronecker_left_indices(P: Pencil) -> Counter:
    """Multiset of left minimal indices of the pencil."""
    m, n = P.shape
    expected = m - P.normal_rank()
    found = Counter()
    ell = {-2: 0, -1: 0}
    j = 0
    while sum(found.values()) < expected:
        if j > n + 1:
            raise InternalInconsistency(f"only {sum(found.values())} of {expected} left indices found")
        ell[j] = _left_kernel_dim(P, j)
        mult = ell[j] - 2 * ell[j - 1] + ell[j - 2]
        if mult:
            found[j] = mult
        j += 1
    return found


def kronecker_check(T: FormSubspace, tau: NumericalType | None = None) -> bool:
    """Left minimal indices of the pencil of T equal {b_i + 1}."""
    if tau is None:
        tau = numerical_type(T)
    return kronecker_left_indices(pencil_of(T)) == Counter(b + 1 for b in tau.bs)
