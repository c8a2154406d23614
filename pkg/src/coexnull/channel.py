"""Array geometry, synthetic multipath channels, and the link budget.

Unit conventions: configuration enters in engineering units (dBm, GHz,
microseconds) only at the CLI boundary; everything in this module works
in linear SI units (watts, hertz, joules) and dimensionless path gains.
dB conversions happen through :func:`db_to_linear` / :func:`linear_to_db`
at module boundaries, never inside Monte Carlo loops.

The uniform rectangular array lies in the x-z plane: columns step the
horizontal (azimuth) phase, rows step the vertical (elevation) phase.
Elements are isotropic; directional element patterns would only rescale
per-victim gains without changing the nulling math, so they are absorbed
into the gain parameters of the synthetic channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_complex_vector

DB_FLOOR = -250.0


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float, floor_db: float = DB_FLOOR) -> float:
    """10*log10(x), clamped to a finite floor so zeros never emit -inf/NaN."""
    if x <= 0.0:
        return floor_db
    return max(10.0 * math.log10(x), floor_db)


def dbm_to_watts(p_dbm: float) -> float:
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform rectangular transmit array; n_tx = rows * cols."""

    rows: int
    cols: int
    element_spacing: float = 0.5  # in wavelengths

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be >= 1")
        if self.element_spacing <= 0.0:
            raise ValueError("element_spacing must be > 0")

    @property
    def n_tx(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class LinkBudget:
    """Physical radio parameters and the derived per-link energies.

    Three receiver roles carry distinct noise figures: the base station
    (uplink preamble detection and channel estimation), the protected
    victim terminal (interference scoring), and the served handheld user
    (downlink SNR).  The published link equations reuse one noise-energy
    symbol for all roles; keeping them separate here just means each
    metric reads its own receiver's figure.
    """

    carrier_hz: float = 10e9
    bandwidth_hz: float = 100e6
    tx_power_w: float = 1.0  # base-station downlink, 30 dBm
    victim_tx_power_w: float = 1.0  # uplink preamble, 30 dBm
    preamble_duration_s: float = 20e-6
    noise_psd_w_per_hz: float = dbm_to_watts(-174.0)
    noise_figure_bs: float = db_to_linear(3.0)
    noise_figure_victim: float = db_to_linear(2.0)
    noise_figure_ue: float = db_to_linear(7.0)

    def __post_init__(self):
        for name in (
            "carrier_hz",
            "bandwidth_hz",
            "tx_power_w",
            "victim_tx_power_w",
            "preamble_duration_s",
            "noise_psd_w_per_hz",
            "noise_figure_bs",
            "noise_figure_victim",
            "noise_figure_ue",
        ):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")

    @property
    def energy_dl_j(self) -> float:
        """Downlink energy per complex symbol at Nyquist rate (P/B)."""
        return self.tx_power_w / self.bandwidth_hz

    @property
    def energy_ul_j(self) -> float:
        """Total energy of the uplink preamble (P * T_pre)."""
        return self.victim_tx_power_w * self.preamble_duration_s

    @property
    def noise_energy_bs_j(self) -> float:
        return self.noise_psd_w_per_hz * self.noise_figure_bs

    @property
    def noise_energy_victim_j(self) -> float:
        return self.noise_psd_w_per_hz * self.noise_figure_victim

    @property
    def noise_energy_ue_j(self) -> float:
        return self.noise_psd_w_per_hz * self.noise_figure_ue


def default_link_budget() -> LinkBudget:
    """Reference budget: 10 GHz carrier, 100 MHz, 30 dBm both links,
    20 us preamble, -174 dBm/Hz PSD, noise figures 3/2/7 dB."""
    return LinkBudget()


@dataclass(frozen=True)
class PathSpec:
    """One propagation path: arrival direction plus complex amplitude."""

    azimuth_rad: float
    elevation_rad: float
    complex_gain: complex

    def __post_init__(self):
        if not -math.pi <= self.azimuth_rad <= math.pi:
            raise ValueError("azimuth must lie in [-pi, pi]")
        if not -math.pi / 2 <= self.elevation_rad <= math.pi / 2:
            raise ValueError("elevation must lie in [-pi/2, pi/2]")


@dataclass(frozen=True)
class ChannelSet:
    """Channels of one scenario instance: served user plus victims."""

    desired: np.ndarray
    victims: list = field(default_factory=list)

    def __post_init__(self):
        object.__setattr__(self, "desired", as_complex_vector(self.desired))
        object.__setattr__(self, "victims", [as_complex_vector(v) for v in self.victims])
        n = self.desired.size
        for v in self.victims:
            if v.size != n:
                raise ValueError("all channels must share the array dimension")

    @property
    def victim_gains(self) -> list:
        """Average per-antenna path gain ||h||^2 / n_tx of each victim."""
        n = self.desired.size
        return [float(np.vdot(v, v).real) / n for v in self.victims]


def steering_vector(geom: ArrayGeometry, azimuth_rad: float, elevation_rad: float) -> np.ndarray:
    """Unit-magnitude array response; boresight (0, 0) is the all-ones vector.

    Element (m, n) = (column m, row n) gets phase
    2*pi*spacing*(m*sin(az)*cos(el) + n*sin(el)), flattened row-major so
    columns vary fastest.  ||a||^2 = n_tx always.
    """
    if not -math.pi <= azimuth_rad <= math.pi:
        raise ValueError("azimuth must lie in [-pi, pi]")
    if not -math.pi / 2 <= elevation_rad <= math.pi / 2:
        raise ValueError("elevation must lie in [-pi/2, pi/2]")
    m = np.arange(geom.cols)
    n = np.arange(geom.rows)
    horiz = m * (math.sin(azimuth_rad) * math.cos(elevation_rad))
    vert = n * math.sin(elevation_rad)
    phase = 2.0 * math.pi * geom.element_spacing * (horiz[None, :] + vert[:, None])
    return np.exp(1j * phase).ravel()


def synth_channel(geom: ArrayGeometry, paths) -> np.ndarray:
    """Sum of per-path steering vectors scaled by their complex gains."""
    paths = list(paths)
    if not paths:
        raise ValueError("at least one path is required")
    h = np.zeros(geom.n_tx, dtype=np.complex128)
    for p in paths:
        h = h + p.complex_gain * steering_vector(geom, p.azimuth_rad, p.elevation_rad)
    return h


def sample_multipath(
    geom: ArrayGeometry,
    gain_db: float,
    n_paths: int,
    rng: np.random.Generator,
    azimuth_range_rad: tuple = (-math.pi / 3.0, math.pi / 3.0),
    elevation_range_rad: tuple = (-math.pi / 6.0, 0.0),
    dominant_fraction_min: float = 0.7,
) -> np.ndarray:
    """Draw a random channel: one dominant path plus up to two weaker ones.

    Path powers sum to 10^(gain_db/10) exactly, with the dominant path
    holding at least ``dominant_fraction_min`` of the total, so the
    expected per-antenna gain matches ``gain_db`` up to the zero-mean
    cross terms between paths.  The default angle ranges mimic a
    downtilted macro sector.  Deterministic under a fixed generator
    state; the draw count depends only on ``n_paths`` so paired
    scenarios stay aligned across array sizes.
    """
    if not 1 <= n_paths <= 3:
        raise ValueError("n_paths must be in 1..3")
    g_total = db_to_linear(gain_db)
    az = rng.uniform(azimuth_range_rad[0], azimuth_range_rad[1], n_paths)
    el = rng.uniform(elevation_range_rad[0], elevation_range_rad[1], n_paths)
    if n_paths == 1:
        powers = np.array([g_total])
    else:
        f = rng.uniform(dominant_fraction_min, 1.0)
        weak = rng.uniform(0.0, 1.0, n_paths - 1)
        weak_sum = weak.sum()
        if weak_sum == 0.0:
            weak = np.full(n_paths - 1, 1.0)
            weak_sum = float(weak.sum())
        powers = np.concatenate(([f], (1.0 - f) * weak / weak_sum)) * g_total
    phases = rng.uniform(0.0, 2.0 * math.pi, n_paths)
    paths = [
        PathSpec(float(az[p]), float(el[p]), math.sqrt(powers[p]) * np.exp(1j * phases[p]))
        for p in range(n_paths)
    ]
    return synth_channel(geom, paths)


def path_gain(h: np.ndarray) -> float:
    """Average per-antenna gain G = ||h||^2 / n_tx."""
    h = as_complex_vector(h)
    return float(np.vdot(h, h).real) / h.size


def uplink_snr_per_antenna(budget: LinkBudget, g: float) -> float:
    """Per-antenna training SNR of the uplink preamble at the base station."""
    if g < 0.0:
        raise ValueError("path gain must be >= 0")
    return budget.energy_ul_j * g / budget.noise_energy_bs_j


def gain_for_uplink_snr(budget: LinkBudget, gamma_u: float) -> float:
    """Invert the per-antenna training SNR to a path gain."""
    if gamma_u < 0.0:
        raise ValueError("gamma_u must be >= 0")
    return gamma_u * budget.noise_energy_bs_j / budget.energy_ul_j


def energy_ratio_db(budget: LinkBudget) -> float:
    """Downlink-symbol to uplink-preamble energy ratio, in dB."""
    return 10.0 * math.log10(budget.energy_dl_j / budget.energy_ul_j)
