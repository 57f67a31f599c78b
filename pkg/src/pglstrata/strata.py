"""Strata of the Grassmannian Gr(e+1, S^d U) by numerical type."""

from __future__ import annotations

from dataclasses import dataclass

from .classify import NumericalType, numerical_type
from .forms import FormSubspace


def _double_sum(bs: tuple[int, ...]) -> int:
    return sum(bj - bi + 1 for bi in bs for bj in bs if bj >= bi)


def _is_full_space_type(tau: NumericalType, d: int) -> bool:
    return tau.r == 0 and tau.a == d


def _require_admissible(tau: NumericalType, d: int) -> None:
    if not tau.admissible(d) and not _is_full_space_type(tau, d):
        raise ValueError(f"type {tau} is not admissible in degree {d}: a+1+sum(b_i+2) = {tau.budget} > {d}")


def _partitions(total: int, max_part: int):
    """Partitions of ``total`` into positive parts, each part at most ``max_part``."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def enumerate_types(d: int, e: int) -> list[NumericalType]:
    """All numerical types of (e+1)-dimensional subspaces of S^d U, sorted."""
    k = e + 1
    if k < 0 or k > d + 1:
        raise ValueError(f"e + 1 = {k} is out of range for degree {d}")
    if k == d + 1:
        return [NumericalType(d)]
    found = set()
    for a in range(-1, k):
        # r + sum(b_i) = k - (a+1); each entry b_i + 1 >= 1, so (b_i + 1) is a partition.
        rest = k - (a + 1)
        for parts in _partitions(rest, rest):
            tau = NumericalType(a, tuple(p - 1 for p in parts))
            if tau.admissible(d):
                found.add(tau)
    return sorted(found)


def dim_VT(tau: NumericalType) -> int:
    """Dimension of the variety of representations of a space of type tau."""
    return tau.r * tau.a + _double_sum(tau.bs)


def dim_stratum(tau: NumericalType, d: int) -> int:
    """Dimension of the locus G_tau in Gr(e+1, S^d U)."""
    _require_admissible(tau, d)
    if _is_full_space_type(tau, d):
        return 0
    value = tau.dim + tau.r * (d - tau.a - 1) - _double_sum(tau.bs)
    alt = tau.a + 1 + tau.r * d + sum(tau.bs) - dim_VT(tau)
    if value != alt:
        raise AssertionError(f"dimension formulas disagree for {tau}: {value} vs {alt}")
    return value


def grassmannian_dim(d: int, e: int) -> int:
    return (e + 1) * (d - e)


def generic_type(d: int, e: int) -> NumericalType:
    """Type of a general (e+1)-dimensional subspace of S^d U."""
    k = e + 1
    if k < 0 or k > d + 1:
        raise ValueError(f"e + 1 = {k} is out of range for degree {d}")
    if k == d + 1:
        tau = NumericalType(d)
    elif k == d:
        tau = NumericalType(d - 1)
    elif 2 * k <= d:
        tau = NumericalType(-1, (0,) * k)
    else:
        r = d - k
        s = 2 * k - d
        q, h = divmod(s, r)
        tau = NumericalType(-1, (q + 1,) * h + (q,) * (r - h))
    if sum(b + 1 for b in tau.bs) + tau.a + 1 != k:
        raise AssertionError(f"generic type {tau} has the wrong dimension")
    if dim_stratum(tau, d) != grassmannian_dim(d, e):
        raise AssertionError(f"generic type {tau} does not fill Gr({k}, {d + 1})")
    return tau


def monomial_fixture(d: int, tau: NumericalType) -> FormSubspace:
    """Monomial subspace of type tau: a run x^d..x^(d-a) y^a, then one run per b_i.

    Runs are separated by a single skipped monomial.
    """
    if not tau.admissible(d):
        raise ValueError(f"type {tau} is not admissible in degree {d}")
    ys = list(range(tau.a + 1))
    start = tau.a + 2
    for b in tau.bs:
        ys.extend(range(start, start + b + 1))
        start += b + 2
    T = FormSubspace.monomials(d, ys)
    got = numerical_type(T)
    if got != tau:
        raise AssertionError(f"monomial fixture for {tau} classified as {got}")
    return T


@dataclass(frozen=True)
class StratumReport:
    tau: NumericalType
    d: int
    dim_G: int
    dim_VT: int
    is_generic: bool

    @property
    def e(self) -> int:
        return self.tau.dim - 1

    @property
    def codim(self) -> int:
        return grassmannian_dim(self.d, self.e) - self.dim_G

    def to_json(self) -> dict:
        return {
            "tau": self.tau.to_json(),
            "d": self.d,
            "e": self.e,
            "dim_G": self.dim_G,
            "dim_VT": self.dim_VT,
            "codim": self.codim,
            "is_generic": self.is_generic,
        }


def strata_table(d: int, e: int) -> list[StratumReport]:
    generic = generic_type(d, e)
    reports = [
        StratumReport(tau, d, dim_stratum(tau, d), dim_VT(tau) if tau.admissible(d) else 0, tau == generic)
        for tau in enumerate_types(d, e)
    ]
    if sum(rep.codim == 0 for rep in reports) != 1:
        raise AssertionError(f"expected exactly one open stratum for d={d}, e={e}")
    return reports
