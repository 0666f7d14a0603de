"""Genus-zero spectral data on the Riemann sphere and the discrete exponential.

The data is a collection of marked points alpha_1, ..., alpha_d (paired with
their antipodes -alpha_j) together with an optional circle radius C.  The
associated wave function is the discrete exponential

    W(n; z) = prod_j ((z + alpha_j) / (z - alpha_j))^(n_j),    n in Z^d,

normalized so that W(n; infinity) = 1.  Two symmetries organize everything:

  * central symmetry  z -> -z   with fixed points 0 and infinity, under which
    W(n; -z) = 1 / W(n; z) and W(n; 0) = (-1)^(n_1 + ... + n_d);
  * circle reflection z -> C^2 / conj(z)  when all |alpha_j| = C, under which
    W(n; C^2/conj(z)) = (-1)^(|n|) * conj(W(n; z)).

On the invariant circle |z| = C the local parameter

    t_j(z) = -i C (z - alpha_j) / (z + alpha_j)

is real, vanishes at alpha_j, and intertwines the reflection with complex
conjugation.  Leading coefficients of W and of its central reflection in this
parameter drive all sign bookkeeping downstream; they have the closed forms
implemented by :func:`leading_coeff` and :func:`leading_coeff_dual`.

Residues are taken against the meromorphic differential -dz/(2z), whose
residues at infinity and 0 are +1/2 and -1/2.  Its density in the parameter
t_j at alpha_j equals -i/C independently of j.

Everything here is a pure function of immutable :class:`SpectralData`;
integer powers use exact repeated squaring so no branch cuts enter.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import (
    NotMOrderedError,
    PoleError,
    PreconditionError,
    ResidueOrderError,
    SpectralDataError,
)

#: Relative tolerance used for construction-time degeneracy checks.
_REL_EPS = 1e-12

#: The value domain of the wave function: an ordinary complex number.
#: Points at infinity are passed as complex("inf"); poles raise PoleError
#: from plain evaluation and are described by Jet from order-aware evaluation.
WaveValue = complex


class Jet(NamedTuple):
    """Leading term of a function at a point: f(z) ~ coeff * (z - z0)**order."""

    order: int
    coeff: complex


def _ipow(base: complex, k: int) -> complex:
    """base**k for integer k by repeated squaring (no logarithms)."""
    if k == 0:
        return 1.0 + 0.0j
    if k < 0:
        base = 1.0 / base
        k = -k
    result = 1.0 + 0.0j
    while k:
        if k & 1:
            result *= base
        base *= base
        k >>= 1
    return result


def _is_infinite(z: complex) -> bool:
    z = complex(z)
    return math.isinf(z.real) or math.isinf(z.imag)


@dataclass(frozen=True)
class SpectralData:
    """Marked points alpha_1..alpha_d on the sphere, optional circle radius C.

    The marked-point pairs are (alpha_j, -alpha_j).  Construction enforces:
    alpha_j nonzero and finite, pairwise distinct, no pair alpha_j = -alpha_k,
    and pairwise linear independence over the reals (no two on a common line
    through 0).  If ``C`` is given, every |alpha_j| must equal C to within
    1e-12 relative; the data is then reflection-symmetric and real weights
    and real-on-circle parameters become available.
    """

    alpha: tuple[complex, ...]
    C: float | None = None
    d: int = field(init=False)

    def __post_init__(self):
        alpha = tuple(complex(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "d", len(alpha))
        if not alpha:
            raise SpectralDataError("at least one marked point required")
        scale = max(abs(a) for a in alpha)
        for j, a in enumerate(alpha):
            if _is_infinite(a) or a == 0:
                raise SpectralDataError(f"alpha_{j + 1} must be finite and nonzero")
        for j in range(len(alpha)):
            for k in range(j + 1, len(alpha)):
                aj, ak = alpha[j], alpha[k]
                if abs(aj - ak) <= _REL_EPS * scale:
                    raise SpectralDataError(f"alpha_{j + 1} and alpha_{k + 1} coincide")
                if abs(aj + ak) <= _REL_EPS * scale:
                    raise SpectralDataError(
                        f"alpha_{j + 1} and -alpha_{k + 1} coincide (antipodal pair)"
                    )
                # Linear dependence over R <=> Im(aj * conj(ak)) == 0.
                if abs((aj * ak.conjugate()).imag) <= _REL_EPS * abs(aj) * abs(ak):
                    raise SpectralDataError(
                        f"alpha_{j + 1} and alpha_{k + 1} are linearly dependent over R"
                    )
        if self.C is not None:
            C = float(self.C)
            if not (C > 0):
                raise SpectralDataError("circle radius C must be positive")
            object.__setattr__(self, "C", C)
            for j, a in enumerate(alpha):
                if abs(abs(a) - C) > _REL_EPS * C:
                    raise SpectralDataError(
                        f"|alpha_{j + 1}| = {abs(a)!r} differs from C = {C!r}; "
                        "either fix the data or drop C"
                    )

    # -- symmetry flags -------------------------------------------------

    @property
    def sigma_symmetric(self) -> bool:
        """Central symmetry holds by construction: marked pairs are (a, -a)."""
        return True

    @property
    def tau_symmetric(self) -> bool:
        """True when a common circle radius C was declared (and verified)."""
        return self.C is not None

    @property
    def m_curve_ordered(self) -> bool:
        """True when the given indexing already realizes the circular block order.

        The 2d points alpha_1..alpha_d, -alpha_1..-alpha_d must appear on the
        circle in exactly that cyclic sequence, i.e. the arguments of the
        alpha_j fit in an open half-circle and increase with j.
        """
        try:
            perm = half_circle_order(self.alpha)
        except NotMOrderedError:
            return False
        return perm == tuple(range(1, self.d + 1))

    def reflect(self, z: complex) -> complex:
        """The circle reflection z -> C^2 / conj(z) (fixed on |z| = C)."""
        if self.C is None:
            raise PreconditionError("reflection needs tau symmetry (a declared C)")
        z = complex(z)
        if z == 0:
            return complex("inf")
        if _is_infinite(z):
            return 0.0 + 0.0j
        return self.C * self.C / z.conjugate()


def half_circle_order(alpha: Sequence[complex]) -> tuple[int, ...]:
    """Renumbering that sorts the marked points along the circle, if one exists.

    Returns a permutation (1-based indices) such that the arguments of
    alpha_perm[0], ..., alpha_perm[-1] are strictly increasing inside an open
    half-circle.  Equivalently the 2d points +-alpha_j then appear in the
    block order  A_perm(1)..A_perm(d), -A_perm(1)..-A_perm(d).  Raises
    NotMOrderedError when no half-circle contains all points, i.e. when some
    antipode -alpha_k separates two of the alpha_j.
    """
    d = len(alpha)
    args = [cmath.phase(complex(a)) for a in alpha]
    order = sorted(range(d), key=lambda j: args[j])
    if d == 1:
        return (1,)
    # Largest circular gap between consecutive arguments; all points fit in
    # an open half-circle iff that gap exceeds pi.
    best_gap, best_at = -1.0, 0
    for i in range(d):
        a0 = args[order[i]]
        a1 = args[order[(i + 1) % d]] + (2 * math.pi if i == d - 1 else 0.0)
        gap = a1 - a0
        if gap > best_gap:
            best_gap, best_at = gap, i
    if best_gap <= math.pi:
        raise NotMOrderedError(
            "marked points do not fit in an open half-circle; some antipode "
            "separates two of them"
        )
    start = (best_at + 1) % d
    perm = tuple(order[(start + i) % d] + 1 for i in range(d))
    return perm


# ---------------------------------------------------------------------------
# Wave function evaluation
# ---------------------------------------------------------------------------


def _ratio(z: complex, a: complex) -> complex:
    """(z + a) / (z - a), with the exact value -1 at z == 0."""
    if z == 0:
        # Algebraically a / (-a) = -1; floating division would leave
        # O(eps) imaginary dirt that powers then amplify.
        return -1.0 + 0.0j
    return (z + a) / (z - a)


def _check_n(data: SpectralData, n: Sequence[int]) -> tuple[int, ...]:
    n = tuple(int(v) for v in n)
    if len(n) != data.d:
        raise PreconditionError(f"lattice vector has length {len(n)}, expected {data.d}")
    return n


def wave(data: SpectralData, n: Sequence[int], z: complex) -> WaveValue:
    """Evaluate the discrete exponential W(n; z).

    W(0; z) = 1 identically and W(n; infinity) = 1 (normalization point).
    Evaluation exactly at a pole (z == alpha_j with n_j > 0, or z == -alpha_j
    with n_j < 0) raises PoleError carrying the order; use :func:`wave_jet`
    for order-aware values.  Zeros evaluate to 0.
    """
    n = _check_n(data, n)
    z = complex(z)
    if _is_infinite(z):
        return 1.0 + 0.0j
    result = 1.0 + 0.0j
    for nj, a in zip(n, data.alpha):
        if nj == 0:
            continue
        if z == a:
            if nj > 0:
                raise PoleError(nj)
            result *= 0.0  # zero of order -nj
            continue
        if z == -a:
            if nj < 0:
                raise PoleError(-nj)
            result *= 0.0
            continue
        result *= _ipow(_ratio(z, a), nj)
    return result


def dual_wave(data: SpectralData, n: Sequence[int], z: complex) -> WaveValue:
    """The centrally reflected wave W(n; -z); equals 1 / W(n; z)."""
    z = complex(z)
    if _is_infinite(z):
        return 1.0 + 0.0j
    return wave(data, n, -z)


def wave_jet(data: SpectralData, n: Sequence[int], z0: complex) -> Jet:
    """Leading term of W(n; .) at z0: W(n; z) ~ coeff * (z - z0)**order.

    At a regular point this is (0, value).  At z0 == +-alpha_j the order is
    -+n_j and the coefficient collects the remaining factors, e.g. at alpha_j

        coeff = (2 alpha_j)**n_j * prod_{k != j} ratio_k(alpha_j)**n_k.

    At infinity the jet is taken in the parameter 1/z and equals (0, 1).
    """
    n = _check_n(data, n)
    z0 = complex(z0)
    if _is_infinite(z0):
        return Jet(0, 1.0 + 0.0j)
    order = 0
    coeff = 1.0 + 0.0j
    for nj, a in zip(n, data.alpha):
        if nj == 0:
            continue
        if z0 == a:
            order -= nj
            coeff *= _ipow(2 * a, nj)
        elif z0 == -a:
            order += nj
            coeff *= _ipow(-2 * a, -nj)
        else:
            coeff *= _ipow(_ratio(z0, a), nj)
    return Jet(order, coeff)


# ---------------------------------------------------------------------------
# Symmetry reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryReport:
    """Outcome of a symmetry verification; max_deviation aggregates components."""

    max_deviation: float
    components: dict[str, float]
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.tol


def _parity(n: Sequence[int]) -> int:
    return -1 if sum(n) % 2 else 1


def omega_residues() -> tuple[float, float]:
    """Residues of the differential -dz/(2z) at (infinity, 0): (+1/2, -1/2)."""
    return (0.5, -0.5)


def check_central_symmetry(
    data: SpectralData, n: Sequence[int], z: complex, tol: float = 1e-12
) -> SymmetryReport:
    """Verify consequences of the central symmetry z -> -z.

    Checks, at the supplied generic z:
      * W(n; z) * W(n; -z) = 1  (the central reflection inverts the wave);
      * W(n; 0) = (-1)^(n_1 + ... + n_d), exact by the closed form;
      * the residues of -dz/(2z) at (infinity, 0) equal (+1/2, -1/2),
        re-derived here by a small contour quadrature around 0.

    Report-only: returns the worst deviation, never raises on mismatch.
    """
    n = _check_n(data, n)
    z = complex(z)
    comp: dict[str, float] = {}

    wz = wave(data, n, z)
    comp["inversion"] = abs(wz * wave(data, n, -z) - 1.0)
    comp["value_at_zero"] = abs(wave(data, n, 0.0) - _parity(n))
    comp["normalization"] = abs(wave(data, n, complex("inf")) - 1.0)

    # Contour quadrature of -1/(2z) around 0; trapezoid on a circle is exact
    # for Laurent polynomials up to the node count.
    m = 32
    acc = 0.0 + 0.0j
    for k in range(m):
        t = cmath.exp(2j * math.pi * k / m) * 0.37
        acc += (-1.0 / (2.0 * t)) * t
    comp["residue_at_zero"] = abs(acc / m - (-0.5))

    return SymmetryReport(max(comp.values()), comp, tol)


def check_reality_condition(
    data: SpectralData, n: Sequence[int], z: complex, tol: float = 1e-12
) -> SymmetryReport:
    """Verify W(n; C^2/conj(z)) = (-1)^|n| * conj(W(n; z)) at the given point.

    Requires reflection symmetry (a declared C).  The deviation is relative
    to |W(n; z)|.  On the circle |z| = C itself the identity forces W to be
    real for even |n| and purely imaginary for odd |n|; the report includes
    that component when z lies on the circle.
    """
    if not data.tau_symmetric:
        raise PreconditionError("reality condition needs tau symmetry (declared C)")
    n = _check_n(data, n)
    z = complex(z)
    wz = wave(data, n, z)
    scale = abs(wz)
    if scale == 0:
        raise PreconditionError("z is a zero of the wave; pick a generic point")
    comp: dict[str, float] = {}
    wrefl = wave(data, n, data.reflect(z))
    comp["reflection_identity"] = abs(wrefl - _parity(n) * wz.conjugate()) / scale
    if abs(abs(z) - data.C) <= 1e-9 * data.C:
        if _parity(n) == 1:
            comp["on_circle_reality"] = abs(wz.imag) / scale
        else:
            comp["on_circle_imaginarity"] = abs(wz.real) / scale
    return SymmetryReport(max(comp.values()), comp, tol)


# ---------------------------------------------------------------------------
# Local parameters and leading coefficients
# ---------------------------------------------------------------------------


def local_parameter(data: SpectralData, j: int, z: complex) -> complex:
    """The circle-real parameter t_j(z) = -iC (z - alpha_j)/(z + alpha_j).

    Vanishes at alpha_j, is exactly real on |z| = C, and satisfies
    t_j(C^2/conj(z)) = conj(t_j(z)).  ``j`` is 1-based.  Raises PoleError at
    z == -alpha_j (the parameter's pole).
    """
    if not data.tau_symmetric:
        raise PreconditionError("local parameters need tau symmetry (declared C)")
    a = data.alpha[j - 1]
    z = complex(z)
    if _is_infinite(z):
        return complex(0, -data.C)
    if z == -a:
        raise PoleError(1, "local parameter pole at the antipodal point")
    return -1j * data.C * (z - a) / (z + a)


def local_parameter_dual(data: SpectralData, j: int, z: complex) -> complex:
    """Parameter at the antipodal point -alpha_j: t_j composed with z -> -z."""
    z = complex(z)
    if _is_infinite(z):
        return complex(0, -data.C)
    return local_parameter(data, j, -z)


def leading_coeff(data: SpectralData, n: Sequence[int], j: int) -> complex:
    """Leading coefficient r_j(n) of W(n; .) at alpha_j in the parameter t_j.

        W(n; t_j) = r_j(n) t_j^(-n_j) + O(t_j^(-n_j + 1)),
        r_j(n) = (-iC)^(n_j) * prod_{k != j} ((alpha_j + alpha_k)/(alpha_j - alpha_k))^(n_k).

    Nonzero for all n.  For even n_1 + ... + n_d the value is real, for odd
    purely imaginary (to rounding), because W is real or imaginary on the
    circle and t_j is real there.
    """
    if not data.tau_symmetric:
        raise PreconditionError("leading coefficients need tau symmetry (declared C)")
    n = _check_n(data, n)
    a_j = data.alpha[j - 1]
    out = _ipow(complex(0, -data.C), n[j - 1])
    for k, (nk, a_k) in enumerate(zip(n, data.alpha), start=1):
        if k == j or nk == 0:
            continue
        out *= _ipow((a_j + a_k) / (a_j - a_k), nk)
    return out


def leading_coeff_dual(data: SpectralData, n: Sequence[int], j: int) -> complex:
    """Leading coefficient of the reflected wave W(n; -.) at alpha_j.

        W(n; -t_j...) = r+_j(n) t_j^(n_j) + ...,
        r+_j(n) = (-iC)^(-n_j) * prod_{k != j} ((alpha_k - alpha_j)/(-alpha_j - alpha_k))^(n_k).

    Satisfies r_j(n) * r+_j(n) = 1 identically for this genus-zero family,
    which realizes the positivity r_j r+_j > 0 needed by the sign analysis.
    """
    if not data.tau_symmetric:
        raise PreconditionError("leading coefficients need tau symmetry (declared C)")
    n = _check_n(data, n)
    a_j = data.alpha[j - 1]
    out = _ipow(complex(0, -data.C), -n[j - 1])
    for k, (nk, a_k) in enumerate(zip(n, data.alpha), start=1):
        if k == j or nk == 0:
            continue
        out *= _ipow((-a_j + a_k) / (-a_j - a_k), nk)
    return out


def marked_point_density(data: SpectralData, j: int) -> complex:
    """Density of -dz/(2z) at alpha_j in the parameter t_j; equals -i/C.

    Writing -dz/(2z) = f(t_j) dt_j near alpha_j, this returns f(0).  The
    value is independent of j: substituting the parameter inverse
    z = alpha_j (iC - t_j)/(iC + t_j) gives f(t) = -iC/(C^2 + t^2).
    """
    if not data.tau_symmetric:
        raise PreconditionError("marked-point density needs tau symmetry (declared C)")
    del j  # all marked points share the value
    return complex(0, -1.0 / data.C)


# ---------------------------------------------------------------------------
# Residue pairings of W(n_p; z) * W(n_q; -z) * (-dz / 2z)
# ---------------------------------------------------------------------------


def residue_pairing(
    data: SpectralData, n_p: Sequence[int], n_q: Sequence[int], at: complex
) -> complex:
    """Residue of the differential W(n_p; z) W(n_q; -z) (-dz/2z) at ``at``.

    Since W(n_q; -z) = 1/W(n_q; z), the product is W(m; z) with
    m = n_p - n_q, and the residue is evaluated in closed form from that
    rational function.  Recognized points: +-alpha_j, 0 and infinity.  For
    lattice neighbors n_p = n_q + e_j the residue at alpha_j equals -1 and
    the residues at infinity and 0 are both +1/2.

    Raises ResidueOrderError when the pole at ``at`` is absent or of higher
    order, and PreconditionError for an unrecognized point.
    """
    n_p = _check_n(data, n_p)
    n_q = _check_n(data, n_q)
    m = tuple(p - q for p, q in zip(n_p, n_q))
    at = complex(at)

    if _is_infinite(at):
        # In w = 1/z the differential reads W(m; 1/w) dw/(2w): residue 1/2.
        return 0.5 + 0.0j
    if at == 0:
        return complex(-0.5 * _parity(m))

    scale = max(abs(a) for a in data.alpha)
    for j, a in enumerate(data.alpha, start=1):
        if abs(at - a) <= 1e-9 * scale:
            order = m[j - 1]
            if order != 1:
                raise ResidueOrderError(order)
            out = -1.0 + 0.0j
            for k, (mk, ak) in enumerate(zip(m, data.alpha), start=1):
                if k == j or mk == 0:
                    continue
                out *= _ipow(_ratio(a, ak), mk)
            return out
        if abs(at + a) <= 1e-9 * scale:
            order = -m[j - 1]
            if order != 1:
                raise ResidueOrderError(order)
            out = -1.0 + 0.0j
            for k, (mk, ak) in enumerate(zip(m, data.alpha), start=1):
                if k == j or mk == 0:
                    continue
                out *= _ipow(_ratio(-a, ak), mk)
            return out
    raise PreconditionError(f"unrecognized pairing point {at!r}")
