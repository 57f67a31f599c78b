"""Batch invariant suite behind the ``verify`` command.

Work is split into independent units (one random trial, or the static checks
for one degree).  Each unit draws from its own stream derived from the master
seed and the unit label, so results do not depend on scheduling.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .classify import (
    InternalInconsistency,
    NumericalType,
    RetryBudgetExhausted,
    classify,
    decompose,
    kronecker_left_indices,
    numerical_type,
    pencil_of,
)
from .curves import (
    SplittingType,
    cohomology_profile,
    project_curve,
    splitting_from_cohomology,
    splitting_from_type,
)
from .forms import (
    BinaryForm,
    FormSubspace,
    annihilator,
    derivative_system,
    dual_multiply,
    pair,
    partial,
    partial_inv,
    partial_inv_power,
    secant_member,
    transform,
)
from .linalg import Mat, canonicalize, intersect, kernel, rank, span_sum
from .sampling import random_direction_pair, random_form, random_gl2, random_subspace, trial_rng
from .strata import dim_stratum, dim_VT, enumerate_types, generic_type, grassmannian_dim, monomial_fixture


class Recorder:
    def __init__(self):
        self.checked = Counter()
        self.failures = defaultdict(list)

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checked[name] += 1
        if not ok:
            self.failures[name].append(detail)

    def guard(self, name: str, fn, detail: str = "") -> None:
        """Run a check that may also fail by raising."""
        try:
            ok = fn()
        except (InternalInconsistency, AssertionError, ValueError) as exc:
            self.check(name, False, f"{detail}: {type(exc).__name__}: {exc}")
            return
        self.check(name, bool(ok), detail)

    def as_dict(self) -> dict:
        return {name: {"checked": self.checked[name], "failures": list(self.failures[name])} for name in self.checked}


def type_law_holds(T: FormSubspace, tau: NumericalType) -> bool:
    d = T.degree
    return (
        tau.a >= -1
        and all(b >= 0 for b in tau.bs)
        and tau.budget <= d
        and T.dim == tau.a + 1 + tau.r + sum(tau.bs)
        and tau.r == partial(T).dim - T.dim
    )


def shifted_type(tau: NumericalType) -> NumericalType:
    """Type of d^(-1) T predicted from the type of T."""
    return NumericalType(tau.a, tuple(b - 1 for b in tau.bs if b >= 1))


def sum_of_powers(d: int, k: int, rng) -> BinaryForm:
    """Sum of k random d-th powers of linear forms."""
    g = BinaryForm(d, (Fraction(0),) * (d + 1))
    for _ in range(k):
        g = g + BinaryForm.power_of_linear(rng.randint(-9, 9), rng.randint(1, 9), d)
    return g


def random_direct_pair(d: int, rng):
    """A, B built from derivative systems with random orders, plus their summed types."""
    while True:
        b1, b2 = rng.randint(0, 2), rng.randint(0, 2)
        if b1 + b2 + 4 <= d:
            break
        if d < 4:
            b1 = b2 = 0
            break
    f = random_form(d + b1, rng)
    g = random_form(d + b2, rng)
    return derivative_system(f, b1), derivative_system(g, b2)


def trial(d: int, e: int, index: int, seed: int) -> dict:
    rng = trial_rng(seed, "trial", d, e, index)
    rec = Recorder()
    T = random_subspace(d, e + 1, rng)
    label = f"d={d} e={e} trial={index}"

    # exact linear algebra
    B = random_subspace(d, rng.randint(0, d + 1), rng)
    rec.check(
        "linalg.modular_law",
        span_sum(T.space, B.space).dim + intersect(T.space, B.space).dim == T.dim + B.dim,
        label,
    )
    rows = []
    for row in T.space.basis:
        c = rng.choice([-3, -2, -1, 1, 2, 3, 5, 7])
        rows.append(tuple(c * x for x in row))
    rng.shuffle(rows)
    canon = canonicalize(rows, d + 1)
    rec.check("linalg.canonicalize", canon == T.space and canonicalize(canon.basis, d + 1) == canon, label)
    M = Mat.from_rows([[rng.randint(-3, 3) for _ in range(d + 1)] for _ in range(rng.randint(1, d + 1))])
    rec.check("linalg.rank_nullity", rank(M) + kernel(M).dim == M.ncols, label)

    # forms
    inv = partial_inv(T)
    rec.check("forms.partial_inv_directions", inv == partial_inv(T, random_direction_pair(rng)), label)
    dT = partial(T)
    rec.check("forms.inclusions", partial(inv) <= T and T <= partial_inv(dT), label)
    for k in range(1, 4):
        rec.check(
            "forms.annihilator_lemma",
            annihilator(partial_inv_power(T, k)) == dual_multiply(annihilator(T), k),
            f"{label} k={k}",
        )
    f = random_form(d - 1, rng)
    l = (Fraction(0), Fraction(0))
    while not any(l):
        l = (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)))
    g = random_form(d, rng)
    lf = BinaryForm(1, l) * f
    rec.check("forms.adjunction", pair(lf.coeffs, g) == pair(f.coeffs, g.derive(l)), label)
    k = rng.randint(1, d)
    h = sum_of_powers(d, k, rng)
    if not h.is_zero():
        member = [secant_member(h, r) for r in range(1, d + 1)]
        rec.check("forms.secant_filtration", all(not a or b for a, b in zip(member, member[1:])), label)
        rec.check(
            "forms.derivative_system_rank",
            all((derivative_system(h, r).dim == r + 1) == (not member[r - 1]) for r in range(1, d + 1)),
            label,
        )
    A, Bd = random_direct_pair(d, rng)
    if intersect(A.space, Bd.space).dim == 0 and intersect(partial(A).space, partial(Bd).space).dim == 0:
        total = A + Bd
        if not total.is_full():
            pa, pb = partial_inv(A), partial_inv(Bd)
            rec.check(
                "forms.direct_sum_inverse",
                partial_inv(total) == pa + pb and intersect(pa.space, pb.space).dim == 0,
                label,
            )

    # classification
    try:
        cl = classify(T)
    except InternalInconsistency as exc:
        rec.check("classify.type_law", False, f"{label}: {exc}")
        return rec.as_dict()
    tau = cl.type
    rec.check("classify.type_law", type_law_holds(T, tau), f"{label} type={tau}")
    gmat = random_gl2(rng)
    rec.guard("classify.pgl_invariance", lambda: numerical_type(transform(T, gmat)) == tau, label)
    P = pencil_of(T)
    rec.guard(
        "classify.kronecker",
        lambda: kronecker_left_indices(P) == Counter(b + 1 for b in tau.bs),
        f"{label} type={tau}",
    )
    rec.check("classify.normal_rank", P.normal_rank() == T.dim, label)
    if inv.dim:
        rec.guard("classify.inverse_shift", lambda: numerical_type(inv) == shifted_type(tau), label)
    rec.guard("classify.decompose_roundtrip", lambda: decompose(T, rng).assemble() == T, label)
    rec.check("strata.empirical_generic", tau == generic_type(d, e), f"{label} type={tau}")

    # curves
    if tau.a == -1 and T.dim >= 1:
        rec.guard("curves.theorem", lambda: _curve_checks(T, tau), f"{label} type={tau}")
    return rec.as_dict()


def _curve_checks(T: FormSubspace, tau: NumericalType) -> bool:
    d = T.degree
    profile = cohomology_profile(T)
    s = d - T.dim
    st = splitting_from_cohomology(profile, d, s)
    if st != splitting_from_type(tau, d):
        return False
    if not euler_identity(st):
        return False
    if sum(st.twists) != (d - st.e) * d:
        return False
    curve = project_curve(T)
    return len(curve.components) == s + 1


def euler_identity(st: SplittingType) -> bool:
    d, e = st.d, st.e
    return all(
        sum(max(a - k + 1, 0) for a in st.twists) == (d - e) * (d - k + 1) + (k - 1) for k in range(1, d + 2)
    )


def fixture_sweep(d: int) -> dict:
    """Static checks over every admissible type in degree d."""
    rec = Recorder()
    for e in range(-1, d + 1):
        types = enumerate_types(d, e)
        generic = generic_type(d, e)
        open_types = [tau for tau in types if dim_stratum(tau, d) == grassmannian_dim(d, e)]
        rec.check("strata.unique_open", open_types == [generic], f"d={d} e={e} open={open_types}")
        for tau in types:
            if not tau.admissible(d):
                continue
            label = f"d={d} type={tau}"
            T = monomial_fixture(d, tau)
            direct = sum(partial_inv_power(T, b).dim - 1 for b in tau.bs)
            rec.check("strata.dim_VT_fixture", dim_VT(tau) == direct, label)
            rec.guard(
                "classify.kronecker_fixtures",
                lambda: kronecker_left_indices(pencil_of(T)) == Counter(b + 1 for b in tau.bs),
                label,
            )
            if tau.a == -1 and tau.dim >= 1:
                rec.guard("curves.theorem_fixtures", lambda: _curve_checks(T, tau), label)
    return rec.as_dict()


def _run_unit(unit):
    kind, args = unit
    try:
        if kind == "trial":
            return trial(*args)
        return fixture_sweep(*args)
    except (ArithmeticError, AssertionError, InternalInconsistency, RetryBudgetExhausted, ValueError) as exc:
        # a crash is a failed check, not a usage error
        return {"suite.unexpected_error": {"checked": 1, "failures": [f"{kind} {args}: {type(exc).__name__}: {exc}"]}}


def run_suite(d_min: int, d_max: int, seed: int, samples: int = 5, workers: int = 1) -> dict:
    """Run every invariant for d_min <= d <= d_max; returns a JSON-ready report."""
    units = [("fixtures", (d,)) for d in range(d_min, d_max + 1)]
    units += [
        ("trial", (d, e, i, seed))
        for d in range(d_min, d_max + 1)
        for e in range(0, d - 1)
        for i in range(samples)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_unit, units))
    else:
        results = [_run_unit(u) for u in units]
    checks = defaultdict(lambda: {"checked": 0, "failures": []})
    for res in results:
        for name, data in res.items():
            checks[name]["checked"] += data["checked"]
            checks[name]["failures"].extend(data["failures"])
    for data in checks.values():
        data["failures"].sort()
    ok = all(not data["failures"] for data in checks.values())
    return {
        "seed": seed,
        "d_min": d_min,
        "d_max": d_max,
        "samples": samples,
        "checks": dict(sorted(checks.items())),
        "ok": ok,
    }
