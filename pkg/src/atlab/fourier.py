"""Probability measures on the circle represented by truncated Fourier tables.

A table stores c(n) for |n| <= N together with an explicit upper bound on
the l1 mass of the dropped coefficients (``tail_bound``).  All transforms
propagate that bound so every downstream certificate stays honest about
truncation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh, toeplitz

# minimal Toeplitz eigenvalue may dip this far below 0 and still count as PSD
PSD_TOL = -1e-8

_HERM_TOL = 1e-12


class InvariantViolation(ValueError):
    """A coefficient table breaks one of the probability-measure invariants."""


@dataclass(frozen=True)
class FourierTable:
    """Finite table c(n), |n| <= half_width, of a circle probability measure.

    ``coeffs`` has length 2N+1; entry [n + N] holds c(n).  Instances are
    immutable; build them with :meth:`from_nonneg` or the module constructors.
    """

    coeffs: np.ndarray
    tail_bound: float = 0.0
    label: str = ""

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", arr)
        if arr.ndim != 1 or arr.size % 2 != 1:
            raise InvariantViolation("coeffs must be a 1-d array of odd length")
        N = self.half_width
        if abs(arr[N] - 1.0) > _HERM_TOL:
            raise InvariantViolation("c(0) = 1 violated (not a probability measure)")
        if not np.allclose(arr, arr[::-1].conj(), rtol=0.0, atol=_HERM_TOL):
            raise InvariantViolation("Hermitian symmetry c(-n) = conj(c(n)) violated")
        if np.any(np.abs(arr) > 1.0 + _HERM_TOL):
            raise InvariantViolation("|c(n)| <= 1 violated")
        if self.tail_bound < 0.0:
            raise InvariantViolation("tail_bound must be nonnegative")
        arr.setflags(write=False)

    @classmethod
    def from_nonneg(cls, nonneg, tail_bound: float = 0.0, label: str = "") -> "FourierTable":
        """Build a table from c(0..N); the negative side is filled by conjugation."""
        nn = np.asarray(nonneg, dtype=complex)
        full = np.concatenate([nn[:0:-1].conj(), nn])
        return cls(full, tail_bound=tail_bound, label=label)

    @property
    def half_width(self) -> int:
        return (self.coeffs.size - 1) // 2

    def at(self, n: int) -> complex:
        """c(n), or 0 outside the stored support (covered by tail_bound)."""
        if abs(n) > self.half_width:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + self.half_width])

    def in_support(self, n: int) -> bool:
        return abs(n) <= self.half_width

    def nonneg(self) -> np.ndarray:
        """The c(0..N) half of the table (read-only view)."""
        return self.coeffs[self.half_width:]

    def density(self, thetas: np.ndarray) -> np.ndarray:
        """Evaluate d(theta) = sum c(n) e^{2 pi i n theta}; real by symmetry."""
        N = self.half_width
        ns = np.arange(-N, N + 1)
        th = np.atleast_1d(np.asarray(thetas, dtype=float))
        out = np.empty(th.size)
        # chunk the phase matrix so wide tables stay within memory
        step = max(1, 2**22 // (2 * N + 1))
        for i in range(0, th.size, step):
            ph = np.exp(2j * np.pi * np.outer(th[i:i + step], ns))
            out[i:i + step] = np.real(ph @ self.coeffs)
        return out


@dataclass(frozen=True)
class DensityBoundReport:
    grid_size: int
    sup_estimate: float
    certified_upper: float


def lebesgue_table(N: int) -> FourierTable:
    """Lebesgue measure: c(0)=1, all other coefficients 0."""
    if N < 0:
        raise ValueError("N must be >= 0")
    nn = np.zeros(N + 1, dtype=complex)
    nn[0] = 1.0
    return FourierTable.from_nonneg(nn, tail_bound=0.0, label="lebesgue")


def dirac_table(N: int) -> FourierTable:
    """Point mass at 0: c(n) = 1 for all n.  Handy non-Rajchman witness."""
    return FourierTable.from_nonneg(np.ones(N + 1, dtype=complex), label="dirac")


def power_subsample(t: FourierTable, m: int) -> FourierTable:
    """Table of c(m n): the spectral picture of the m-th power of the system."""
    if m < 1:
        raise ValueError("m must be >= 1")
    N = t.half_width
    M = N // m
    nn = np.array([t.at(m * n) for n in range(M + 1)], dtype=complex)
    # dropped terms all have |index| > N, so the old tail bound still covers them
    return FourierTable.from_nonneg(
        nn, tail_bound=t.tail_bound, label=f"{t.label}^(sub {m})"
    )


def l1_tail(t: FourierTable) -> float:
    """Sum of |c(n)| over n != 0, including the out-of-support bound."""
    N = t.half_width
    s = float(np.sum(np.abs(t.coeffs))) - abs(t.coeffs[N])
    return s + t.tail_bound


def density_sup(t: FourierTable, grid_size: int) -> DensityBoundReport:
    """Certified upper bound for sup of the (truncated) density.

    The grid maximum is promoted to a sup bound via the Bernstein-type
    derivative estimate |d'| <= 2 pi sum |n||c(n)|.
    """
    N = t.half_width
    if grid_size < 4 * N + 4:
        raise ValueError(f"grid_size must be >= 4N+4 = {4 * N + 4}")
    thetas = np.arange(grid_size) / grid_size
    vals = t.density(thetas)
    sup_est = float(np.max(vals))
    ns = np.arange(-N, N + 1)
    deriv_sup = 2.0 * math.pi * float(np.sum(np.abs(ns) * np.abs(t.coeffs)))
    margin = deriv_sup / (2.0 * grid_size)
    return DensityBoundReport(
        grid_size=grid_size,
        sup_estimate=sup_est,
        certified_upper=sup_est + t.tail_bound + margin,
    )


def _require_real_open_unit(t: FourierTable) -> np.ndarray:
    arr = t.coeffs.copy()
    N = t.half_width
    off = np.abs(np.arange(-N, N + 1)) > 0
    if np.any(np.abs(arr.imag[off]) > _HERM_TOL):
        raise ValueError("arcsine transforms need real coefficients off n=0")
    if np.any(np.abs(arr.real[off]) >= 1.0):
        raise ValueError("arcsine transforms need |c(n)| < 1 for n != 0")
    return arr.real


def arcsine_transform(t: FourierTable) -> FourierTable:
    """(2/pi) arcsin(c(n)) off the origin: correlation table of the sign process."""
    re = _require_real_open_unit(t)
    out = (2.0 / math.pi) * np.arcsin(re)
    N = t.half_width
    out[N] = 1.0
    # |(2/pi) arcsin x| <= |x|, so the old tail bound is still valid
    return FourierTable(out.astype(complex), tail_bound=t.tail_bound,
                        label=f"arcsine({t.label})")


def arcsine_fourth_transform(t: FourierTable) -> FourierTable:
    """(16/pi^4) arcsin^4(c(n)) off the origin: sign correlations of the 4-fold product."""
    re = _require_real_open_unit(t)
    out = (16.0 / math.pi**4) * np.arcsin(re) ** 4
    N = t.half_width
    out[N] = 1.0
    # |(16/pi^4) arcsin^4 x| <= x^4 <= |x| on [-1,1]
    return FourierTable(out.astype(complex), tail_bound=t.tail_bound,
                        label=f"arcsine4({t.label})")


def riesz_product(amplitudes, frequencies, N: int) -> FourierTable:
    """Riesz product prod_j (1 + a_j cos(2 pi lambda_j x)) as a coefficient table.

    Lacunarity lambda_{j+1} >= 3 lambda_j makes every frequency
    n = sum eps_j lambda_j, eps_j in {-1,0,1}, uniquely representable, so the
    coefficients below are exact.
    """
    a = [float(x) for x in amplitudes]
    lam = [int(x) for x in frequencies]
    if len(a) != len(lam):
        raise ValueError("amplitudes and frequencies must have equal length")
    if any(abs(x) > 1.0 for x in a):
        raise ValueError("amplitudes must lie in [-1, 1]")
    if any(l <= 0 for l in lam):
        raise ValueError("frequencies must be positive")
    for j in range(len(lam) - 1):
        if lam[j + 1] < 3 * lam[j]:
            raise ValueError("lacunarity violated: need lambda_{j+1} >= 3 lambda_j")
    nn = np.zeros(N + 1, dtype=complex)
    nn[0] = 1.0
    # walk all sign patterns; uniqueness of representations means each
    # positive n is produced by at most one pattern
    nn_pos = np.zeros(N + 1, dtype=complex)

    def expand_signed(j, freq, coeff):
        if j == len(lam):
            if 0 < freq <= N:
                nn_pos[freq] += coeff
            return
        expand_signed(j + 1, freq, coeff)
        expand_signed(j + 1, freq + lam[j], coeff * a[j] / 2.0)
        expand_signed(j + 1, freq - lam[j], coeff * a[j] / 2.0)

    expand_signed(0, 0, 1.0)
    nn[1:] = nn_pos[1:]
    return FourierTable.from_nonneg(
        nn, tail_bound=0.0,
        label=f"riesz(a={a}, freq={lam})",
    )


def sqrt_template(c: float, N: int) -> FourierTable:
    """Coefficient template c(n) = c/sqrt(|n|).

    This is only a template: positive semidefiniteness is NOT guaranteed and
    must be checked with :func:`is_positive_definite` before the table is
    treated as a measure.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError("need 0 <= c <= 1")
    ns = np.arange(N + 1, dtype=float)
    nn = np.ones(N + 1, dtype=complex)
    nn[1:] = c / np.sqrt(ns[1:])
    return FourierTable.from_nonneg(
        nn, tail_bound=0.0,
        label=f"sqrt-template(c={c}) [coefficient template; PSD not certified]",
    )


def is_positive_definite(t: FourierTable, k: int) -> tuple[bool, float]:
    """PSD check of the k x k Toeplitz matrix [c(i-j)]; returns (pass, min eig)."""
    if k < 1 or k > t.half_width + 1:
        raise ValueError("need 1 <= k <= half_width + 1")
    col = t.nonneg()[:k]
    T = toeplitz(col, col.conj())
    lam_min = float(eigvalsh(T)[0])
    return lam_min >= PSD_TOL, lam_min


# ---------------------------------------------------------------------------
# JSON measure format: {"label", "half_width", "tail_bound",
#                       "coeffs": [[n, re, im], ...]}  with n >= 0 only.

def table_to_json_obj(t: FourierTable) -> dict:
    nn = t.nonneg()
    return {
        "label": t.label,
        "half_width": t.half_width,
        "tail_bound": t.tail_bound,
        "coeffs": [[int(n), float(nn[n].real), float(nn[n].imag)]
                   for n in range(t.half_width + 1)],
    }


def table_from_json_obj(obj: dict) -> FourierTable:
    try:
        N = int(obj["half_width"])
        tail = float(obj["tail_bound"])
        rows = obj["coeffs"]
        label = str(obj.get("label", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvariantViolation(f"malformed measure object: {exc}") from exc
    nn = np.zeros(N + 1, dtype=complex)
    last = -1
    for row in rows:
        n, re, im = int(row[0]), float(row[1]), float(row[2])
        if n < 0:
            raise InvariantViolation("coefficients must be listed for n >= 0 only")
        if n <= last:
            raise InvariantViolation("coefficients must be sorted by n, no duplicates")
        if n > N:
            raise InvariantViolation("coefficient index exceeds half_width")
        last = n
        nn[n] = re + 1j * im
    # the FourierTable constructor re-checks c(0)=1, |c|<=1, tail_bound >= 0
    return FourierTable.from_nonneg(nn, tail_bound=tail, label=label)


def write_measure(t: FourierTable, path) -> None:
    with open(path, "w") as fh:
        json.dump(table_to_json_obj(t), fh, indent=1)
        fh.write("\n")


def read_measure(path) -> FourierTable:
    with open(path) as fh:
        return table_from_json_obj(json.load(fh))
