"""Verification suites behind ``quadcr verify``.

Each suite runs a battery of identity checks and returns a JSON-serializable
verdict: ``{"suite", "pass", "seed", "tolerances", "checks": [...]}`` with one
entry per check.  Identical inputs produce identical verdicts; all random
draws come from a seeded generator recorded in the output.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import operators, positivity, spectral, weights
from .errors import NotMOrderedError, PreconditionError
from .quadgraph import QuadGraph, ZdLabeling
from .spectral import SpectralData
from .weights import WeightFunction

VERDICT_FORMAT = "quadcr.verdict/1"

DEFAULT_TOLERANCES = {
    "cr": 1e-11,
    "sigma": 1e-12,
    "tau": 1e-12,
    "positivity": 1e-12,
    "theorem": 1e-12,
}

SUITES = ("cr", "sigma", "tau", "positivity", "theorem")


def _random_z(rng: np.random.Generator, scale: float) -> complex:
    """A spectral point away from the marked circle, zero and infinity."""
    r = scale * rng.uniform(1.3, 4.0)
    t = rng.uniform(0.0, 2.0 * math.pi)
    return r * cmath.exp(1j * t)


def _random_n(rng: np.random.Generator, d: int, span: int = 4):
    return tuple(int(v) for v in rng.integers(-span, span + 1, d))


def _check(name: str, ok: bool, **detail) -> dict:
    entry = {"name": name, "pass": bool(ok)}
    entry.update({k: detail[k] for k in sorted(detail)})
    return entry


def _scale_of(data: SpectralData) -> float:
    return data.C if data.C is not None else max(abs(a) for a in data.alpha)


# ---------------------------------------------------------------------------
# Individual suites
# ---------------------------------------------------------------------------


def suite_cr(
    data: SpectralData,
    q: QuadGraph,
    labeling: ZdLabeling,
    tol: float,
    rng: np.random.Generator,
    samples: int = 20,
    w: WeightFunction | None = None,
) -> list[dict]:
    """Cauchy-Riemann residuals of the wave function on every face.

    With ``w`` supplied (e.g. read back from a weights CSV) the residuals are
    evaluated against those weights, so corrupted values surface here with
    the worst face named.
    """
    if w is None:
        w = weights.weight_function(data, q, labeling)
    scale = _scale_of(data)
    worst, worst_face = 0.0, None
    for idx in range(len(q.faces)):
        face = q.faces[idx]
        for _ in range(samples):
            z = _random_z(rng, scale)
            f = {v: spectral.wave(data, labeling.coords[v], z) for v in face}
            res = operators.cr_residual(q, w, f, idx)
            ref = max(abs(x) for x in f.values()) * (
                1.0 + abs(w(face[0], face[2]))
            )
            rel = abs(res) / ref
            if rel > worst:
                worst, worst_face = rel, idx
    return [
        _check(
            "cr_residual",
            worst <= tol,
            worst_relative_residual=worst,
            worst_face=worst_face,
            samples_per_face=samples,
        )
    ]


def suite_sigma(
    data: SpectralData, tol: float, rng: np.random.Generator, trials: int = 200
) -> list[dict]:
    """Central-symmetry consequences at randomized lattice points."""
    worst = 0.0
    for _ in range(trials):
        n = _random_n(rng, data.d)
        z = _random_z(rng, _scale_of(data))
        rep = spectral.check_central_symmetry(data, n, z, tol)
        worst = max(worst, rep.max_deviation)
    return [_check("central_symmetry", worst <= tol, max_deviation=worst, trials=trials)]


def suite_tau(
    data: SpectralData, tol: float, rng: np.random.Generator, trials: int = 200
) -> list[dict]:
    """Reflection/reality identities; fails fast when tau symmetry is absent."""
    if not data.tau_symmetric:
        return [
            _check(
                "tau_precondition",
                False,
                reason="tau_symmetric requires all |alpha_j| equal to a declared C",
            )
        ]
    checks = [_check("tau_precondition", True)]
    worst = 0.0
    for _ in range(trials):
        n = _random_n(rng, data.d)
        z = _random_z(rng, data.C)
        rep = spectral.check_reality_condition(data, n, z, tol)
        worst = max(worst, rep.max_deviation)
    checks.append(_check("reflection_identity", worst <= tol, max_deviation=worst,
                         trials=trials))
    worst_circle = 0.0
    for _ in range(trials // 2):
        n = _random_n(rng, data.d)
        theta = rng.uniform(0, 2 * math.pi)
        z = data.C * cmath.exp(1j * theta)
        if any(abs(z - a) < 1e-3 or abs(z + a) < 1e-3 for a in data.alpha):
            continue
        wz = spectral.wave(data, n, z)
        if abs(wz) == 0.0:
            continue
        bad = abs(wz.imag) if sum(n) % 2 == 0 else abs(wz.real)
        worst_circle = max(worst_circle, bad / abs(wz))
    checks.append(
        _check("on_circle_parity", worst_circle <= tol, max_deviation=worst_circle)
    )
    return checks


def _order_or_fail(data: SpectralData) -> tuple[positivity.OvalOrder | None, dict]:
    try:
        order = positivity.oval_order(data)
    except (PreconditionError, NotMOrderedError) as exc:
        return None, _check("half_circle_order", False, reason=str(exc))
    return order, _check("half_circle_order", True, permutation=list(order.permutation))


def suite_positivity(
    data: SpectralData, q: QuadGraph, labeling: ZdLabeling, tol: float
) -> list[dict]:
    """Half-circle order plus the combinatorial consistency verdict."""
    del tol
    order, order_check = _order_or_fail(data)
    if order is None:
        return [order_check]
    report = positivity.check_positive_consistency(q, labeling, order)
    return [
        order_check,
        _check(
            "positive_consistency",
            report.consistent,
            pairs_checked=report.pairs_checked,
            violations=[v.as_dict() for v in report.violations],
        ),
    ]


def suite_theorem(
    data: SpectralData, q: QuadGraph, labeling: ZdLabeling, tol: float
) -> list[dict]:
    """Cross-validate the combinatorial verdict against direct weight signs.

    Passes iff the two verdicts agree; the verdict body records both so a
    consistent-and-negative instance is distinguishable from a mixed one.
    """
    del tol
    try:
        rep = positivity.check_criterion(data, q, labeling)
    except (PreconditionError, NotMOrderedError) as exc:
        return [_check("criterion_agreement", False, reason=str(exc))]
    body = rep.as_dict()
    return [
        _check(
            "criterion_agreement",
            rep.agree,
            consistent=body["consistent"],
            sign=body["sign"],
            violations=body["violations"],
            weight_is_real=rep.weight_is_real,
        )
    ]


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def run_suite(
    suite: str,
    data: SpectralData | None = None,
    q: QuadGraph | None = None,
    labeling: ZdLabeling | None = None,
    tol: float | None = None,
    seed: int = 0,
    weights_override: WeightFunction | None = None,
) -> dict:
    """Run one named suite (or "all") and assemble the verdict document."""
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise PreconditionError(f"unknown suite {name!r}")
    if data is None:
        raise PreconditionError("a spectral document is required for every suite")
    graph_needed = {"cr", "positivity", "theorem"}
    if graph_needed.intersection(names) and (q is None or labeling is None):
        missing = sorted(graph_needed.intersection(names))
        raise PreconditionError(f"suites {missing} require a graph document")

    tolerances = {}
    checks: list[dict] = []
    for name in names:
        t = tol if tol is not None else DEFAULT_TOLERANCES[name]
        tolerances[name] = t
        rng = np.random.default_rng(seed)
        if name == "cr":
            entries = suite_cr(data, q, labeling, t, rng, w=weights_override)
        elif name == "sigma":
            entries = suite_sigma(data, t, rng)
        elif name == "tau":
            entries = suite_tau(data, t, rng)
        elif name == "positivity":
            entries = suite_positivity(data, q, labeling, t)
        else:
            entries = suite_theorem(data, q, labeling, t)
        for entry in entries:
            entry["suite"] = name
        checks.extend(entries)

    return {
        "format": VERDICT_FORMAT,
        "suite": suite,
        "pass": all(c["pass"] for c in checks),
        "seed": seed,
        "tolerances": tolerances,
        "checks": checks,
    }
