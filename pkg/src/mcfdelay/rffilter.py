"""Incoherent FIR filter built from per-core group delays.

Each core acts as one tap: an amplitude plus an absolute delay.  The complex
baseband transfer function is

    H(f) = sum_k a_k * exp(-1j * 2 * pi * f * tau_k)

and magnitudes are reported in dB normalized to the grid peak.  For N equal
taps on an exact delay grid with increment dtau the magnitude follows the
Dirichlet kernel with free spectral range 1/dtau and a first sidelobe about
12.7 dB below the passband; bend-induced tap-delay deviations raise that
sidelobe floor.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .delays import PerturbationMode, delay_deviation
from .deployment import DeploymentProfile
from .fiber import FiberSpec

DB_FLOOR = -200.0
_MIN_POINTS_PER_PERIOD = 50


@dataclass(frozen=True)
class Tap:
    """One filter tap: non-negative amplitude and absolute delay in seconds."""

    amplitude: float
    delay: float

    def __post_init__(self):
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValueError(f"tap amplitude must be finite and >= 0, got {self.amplitude}")
        if not math.isfinite(self.delay):
            raise ValueError(f"tap delay must be finite, got {self.delay}")


@dataclass(frozen=True)
class FilterSpec:
    """A delay-line FIR filter plus its nominal tap spacing."""

    taps: tuple[Tap, ...]
    base_delay_increment: float  # s, nominal spacing between adjacent taps

    def __post_init__(self):
        if not self.taps:
            raise ValueError("filter must contain at least one tap")
        if self.base_delay_increment <= 0:
            raise ValueError(
                f"base delay increment must be > 0, got {self.base_delay_increment}"
            )


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    """Magnitude response on a frequency grid, dB relative to the grid peak."""

    frequencies: np.ndarray  # Hz, strictly increasing
    magnitude_db: np.ndarray
    n_taps: int | None = None  # tap count of the generating filter, if known

    def __post_init__(self):
        if self.frequencies.shape != self.magnitude_db.shape:
            raise ValueError("frequency and magnitude arrays must have the same shape")
        if self.frequencies.size < 2:
            raise ValueError("a response needs at least two grid points")
        if np.any(np.diff(self.frequencies) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        if abs(float(self.magnitude_db.max())) > 1e-12:
            raise ValueError("magnitude must be normalized to a 0 dB peak")


def build_filter_from_fiber(
    fiber: FiberSpec,
    profile: DeploymentProfile,
    delta_tau: float,
    amplitudes: list[float] | tuple[float, ...] | np.ndarray,
    mode: PerturbationMode = PerturbationMode.FIRST_ORDER,
) -> FilterSpec:
    """Map per-core delays onto FIR taps.

    Tap k (ordered by core id) gets the nominal delay k * delta_tau plus the
    core's bend/twist delay deviation over the profile.  A straight profile
    therefore yields the exact uniform delay grid.
    """
    if delta_tau <= 0:
        raise ValueError(f"delta_tau must be > 0, got {delta_tau}")
    cores = sorted(fiber.cores, key=lambda core: core.id)
    if len(amplitudes) != len(cores):
        raise ValueError(
            f"got {len(amplitudes)} amplitudes for {len(cores)} cores"
        )
    mismatch = abs(profile.total_length - fiber.length)
    if mismatch > 1e-9 * fiber.length:
        raise ValueError(
            f"profile length {profile.total_length} m does not cover the fiber "
            f"length {fiber.length} m"
        )
    taps = []
    for k, core in enumerate(cores):
        deviation = delay_deviation(core, profile, mode)
        taps.append(Tap(amplitude=float(amplitudes[k]), delay=k * delta_tau + deviation))
    return FilterSpec(taps=tuple(taps), base_delay_increment=delta_tau)


def complex_response(spec: FilterSpec, frequencies: np.ndarray) -> np.ndarray:
    """Complex transfer function H(f) on an arbitrary frequency array."""
    freqs = np.asarray(frequencies, dtype=float)
    amps = np.array([tap.amplitude for tap in spec.taps])
    delays = np.array([tap.delay for tap in spec.taps])
    phases = -2j * np.pi * freqs[..., None] * delays
    return (amps * np.exp(phases)).sum(axis=-1)


def transfer_function(
    spec: FilterSpec, f_start: float, f_stop: float, n_points: int
) -> FrequencyResponse:
    """Normalized magnitude response on a uniform grid.

    Magnitudes are 20*log10(|H| / max |H|) clipped at -200 dB, so the grid
    peak sits at exactly 0 dB.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    if f_start < 0 or f_stop <= f_start:
        raise ValueError(
            f"need 0 <= f_start < f_stop, got f_start={f_start}, f_stop={f_stop}"
        )
    if all(tap.amplitude == 0.0 for tap in spec.taps):
        raise ValueError("degenerate filter: all tap amplitudes are zero")
    freqs = np.linspace(f_start, f_stop, n_points)
    magnitude = np.abs(complex_response(spec, freqs))
    peak = float(magnitude.max())
    if peak == 0.0:
        raise ValueError("degenerate filter: response vanishes on the whole grid")
    ratio = np.maximum(magnitude / peak, 10.0 ** (DB_FLOOR / 20.0))
    return FrequencyResponse(
        frequencies=freqs,
        magnitude_db=20.0 * np.log10(ratio),
        n_taps=len(spec.taps),
    )


def _grid_step(resp: FrequencyResponse) -> float:
    f = resp.frequencies
    return float(f[-1] - f[0]) / (f.size - 1)


def _peak_indices(resp: FrequencyResponse, tol_db: float) -> np.ndarray:
    """Indices of local maxima at or above -tol_db, endpoints included."""
    m = resp.magnitude_db
    keep = []
    if m[0] >= m[1] and m[0] >= -tol_db:
        keep.append(0)
    interior = np.nonzero((m[1:-1] > m[:-2]) & (m[1:-1] >= m[2:]))[0] + 1
    keep.extend(int(i) for i in interior if m[i] >= -tol_db)
    last = m.size - 1
    if m[last] >= m[last - 1] and m[last] >= -tol_db:
        keep.append(last)
    return np.asarray(keep, dtype=int)


def fsr_estimate(resp: FrequencyResponse, peak_tol_db: float = 3.0) -> float:
    """Free spectral range estimated from the spacing of the passband peaks.

    Passband peaks are local maxima within ``peak_tol_db`` of the 0 dB
    normalization; the estimate is the median spacing between consecutive
    ones, which tolerates the peak shifts that ps-scale tap deviations cause.
    Raises ValueError when the grid does not expose at least two peaks.
    """
    peaks = _peak_indices(resp, peak_tol_db)
    if peaks.size < 2:
        raise ValueError(
            f"found {peaks.size} passband peak(s) within {peak_tol_db} dB of the "
            "top; the grid must span at least two"
        )
    return float(np.median(np.diff(resp.frequencies[peaks])))


def sidelobe_level(resp: FrequencyResponse, fsr_hint: float) -> float | None:
    """Highest sidelobe in dB, or None when no sidelobe exists.

    Main lobes are the regions within +-(fsr_hint / n_taps) of every integer
    multiple of ``fsr_hint``; the sidelobe level is the largest local maximum
    outside them.  A two-tap filter has no sidelobes, hence the None return.
    The response must span at least one full period and resolve it with at
    least 50 grid points.
    """
    if fsr_hint <= 0:
        raise ValueError(f"fsr_hint must be > 0, got {fsr_hint}")
    if resp.n_taps is None or resp.n_taps < 1:
        raise ValueError("response carries no tap-count metadata")
    span = float(resp.frequencies[-1] - resp.frequencies[0])
    if span < fsr_hint * (1.0 - 1e-12):
        raise ValueError(
            f"grid span {span} Hz does not cover one full period {fsr_hint} Hz"
        )
    step = _grid_step(resp)
    if fsr_hint / step < _MIN_POINTS_PER_PERIOD:
        raise ValueError(
            f"grid resolves only {fsr_hint / step:.1f} points per period, "
            f"need at least {_MIN_POINTS_PER_PERIOD}"
        )
    f = resp.frequencies
    m = resp.magnitude_db
    nearest_multiple = np.round(f / fsr_hint) * fsr_hint
    near_main = np.abs(f - nearest_multiple) <= fsr_hint / resp.n_taps
    is_max = (m[1:-1] > m[:-2]) & (m[1:-1] >= m[2:])
    candidates = np.nonzero(is_max & ~near_main[1:-1])[0] + 1
    if candidates.size == 0:
        return None
    return float(m[candidates].max())
