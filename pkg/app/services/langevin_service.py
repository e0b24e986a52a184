"""
Servicio de Langevin: ensambles de Ornstein-Uhlenbeck complejos para modos desnudos
y polaritónicos, balance de calor/trabajo y espectro de emisión
"""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import curve_fit
from scipy.signal import periodogram

from app.core.config import Config
from app.core.errors import ConfigValidationError, IntegrationError
from app.models.polariton import PolaritonSpectrum
from app.models.stochastic import FrequencySchedule, NoiseSpec, TrajectoryEnsemble
from app.processors.ou_stepper import Moments, check_stability, step_coefficients, trajectory_normals

logger = logging.getLogger(__name__)

ScheduleLike = Union[float, FrequencySchedule]

# pasos de ruido que cada trayectoria genera por tanda
NOISE_CHUNK = 256


class LangevinService:
    """Servicio para simulaciones estocásticas semiclásicas de las ecuaciones de Langevin"""

    def __init__(self, config: Config = None):
        if config is None:
            raise ValueError("config es requerido - use build_services() para crear instancias")
        self.config = config

    # ------------------------------------------------------------------
    # Parámetros efectivos
    # ------------------------------------------------------------------

    @staticmethod
    def effective_damping(spectrum: PolaritonSpectrum, branch: str = "A", gamma0: float = 1.0,
                          gamma_m: float = 0.01) -> float:
        """γ_eff = |X_a|²γ0 + (|X_c|² + |X_d|²)γ_m"""
        weights = spectrum.weights(branch) ** 2
        return float(weights[0] * gamma0 + (weights[1] + weights[2]) * gamma_m)

    @staticmethod
    def effective_occupation(spectrum: PolaritonSpectrum, bare_occupations: Sequence[float],
                             branch: str = "A") -> float:
        """n̄_eff = Σ|X_k|²n̄_k, la ocupación que fija el ruido mezclado de la rama"""
        return float(np.dot(spectrum.weights(branch) ** 2, np.asarray(bare_occupations, dtype=float)))

    # ------------------------------------------------------------------
    # Simulación
    # ------------------------------------------------------------------

    @staticmethod
    def _as_schedules(frequencies: Sequence[ScheduleLike]):
        return [f if isinstance(f, FrequencySchedule) else FrequencySchedule.constant(float(f)) for f in frequencies]

    def simulate(self, noise: NoiseSpec, frequencies: Sequence[ScheduleLike], horizon: float, dt: float,
                 n_traj: int, record_every: int = 1, method: str = "euler_maruyama",
                 initial_occupation: Optional[Sequence[float]] = None,
                 initial_amplitude: Optional[Sequence[complex]] = None,
                 record_amplitudes: bool = False) -> TrajectoryEnsemble:
        """
        Integra n_traj trayectorias independientes, cada una con su propia subsemilla
        de noise.seed; el tamaño de bloque no cambia ningún resultado.

        Args:
            initial_occupation: estado inicial térmico con esas ocupaciones medias
            initial_amplitude: amplitud inicial determinista (prioridad sobre la térmica)
        """
        schedules = self._as_schedules(frequencies)
        n_modes = noise.n_modes
        if len(schedules) != n_modes:
            raise ValueError(f"Se esperaban {n_modes} frecuencias, se recibieron {len(schedules)}")
        if n_traj < 1 or dt <= 0 or horizon <= 0 or record_every < 1:
            raise ValueError("n_traj, dt, horizon y record_every deben ser positivos")

        gamma = np.asarray(noise.damping)
        check_stability(dt, max(s.max_abs for s in schedules), float(gamma.max()), self.config.stability_limit)

        n_steps = int(round(horizon / dt))
        if n_steps < record_every:
            raise ConfigValidationError(
                f"El horizonte ({n_steps} pasos) debe cubrir al menos un intervalo de registro ({record_every} pasos)",
                horizon=horizon, dt=dt, record_every=record_every,
            )
        step_times = dt * np.arange(n_steps + 1)
        omega_grid = np.column_stack([s(step_times) for s in schedules])
        n_records = n_steps // record_every + 1
        record_times = step_times[::record_every][:n_records]

        # una subsemilla por trayectoria; los bloques solo agrupan trabajo
        block_size = self.config.langevin_block_size
        children = np.random.SeedSequence(noise.seed).spawn(n_traj)
        totals = {
            "occupation": Moments((n_records, n_modes)),
            "cross": Moments((n_records, n_modes, n_modes), dtype=complex),
            "energy": Moments(n_records),
            "heat": Moments(n_records - 1),
            "work": Moments(n_records - 1),
            "cumulative_heat": Moments(n_records),
            "cumulative_work": Moments(n_records),
            "closure": Moments(n_records),
        }
        amplitudes = np.empty((n_traj, n_records, n_modes), dtype=complex) if record_amplitudes else None
        for start in range(0, n_traj, block_size):
            rngs = [np.random.default_rng(child) for child in children[start:start + block_size]]
            records, block_amplitudes = self._simulate_block(
                rngs, noise, omega_grid, dt, n_steps, record_every, n_records,
                method, initial_occupation, initial_amplitude, record_amplitudes,
            )
            for key, values in records.items():
                totals[key].add(values)
            if record_amplitudes:
                amplitudes[start:start + len(rngs)] = block_amplitudes

        stats = {key: moments.finalize(n_traj) for key, moments in totals.items()}
        if not np.all(np.isfinite(stats["occupation"][0])):
            raise IntegrationError("Ocupaciones no finitas en el ensamble de Langevin")

        logger.debug(f"Langevin: {n_traj} trayectorias, {n_steps} pasos, bloques de {block_size} ({method})")
        return TrajectoryEnsemble(
            labels=noise.mode_labels,
            n_traj=n_traj,
            dt=dt,
            horizon=n_steps * dt,
            record_every=record_every,
            seed=noise.seed,
            method=method,
            times=record_times,
            frequencies=omega_grid[::record_every][:n_records],
            occupation_mean=stats["occupation"][0],
            occupation_sem=stats["occupation"][1],
            cross_mean=stats["cross"][0],
            cross_sem=stats["cross"][1],
            energy_mean=stats["energy"][0],
            energy_sem=stats["energy"][1],
            heat_mean=stats["heat"][0],
            heat_sem=stats["heat"][1],
            work_mean=stats["work"][0],
            work_sem=stats["work"][1],
            cumulative_heat_mean=stats["cumulative_heat"][0],
            cumulative_heat_sem=stats["cumulative_heat"][1],
            cumulative_work_mean=stats["cumulative_work"][0],
            cumulative_work_sem=stats["cumulative_work"][1],
            closure_mean=stats["closure"][0],
            closure_sem=stats["closure"][1],
            amplitudes=amplitudes,
        )

    @staticmethod
    def _simulate_block(rngs: Sequence[np.random.Generator], noise: NoiseSpec, omega_grid: np.ndarray,
                        dt: float, n_steps: int, record_every: int, n_records: int, method: str,
                        initial_occupation, initial_amplitude, record_amplitudes: bool):
        """Integra un bloque; devuelve los registros por trayectoria (trayectorias en el eje 0)"""
        size = len(rngs)
        n_modes = noise.n_modes
        gamma = np.asarray(noise.damping)
        occupation = np.asarray(noise.occupations)

        if initial_amplitude is not None:
            x = np.broadcast_to(np.asarray(initial_amplitude, dtype=complex), (size, n_modes)).copy()
        elif initial_occupation is not None:
            x = np.sqrt(np.asarray(initial_occupation, dtype=float)) * trajectory_normals(rngs, n_modes)
        else:
            x = np.zeros((size, n_modes), dtype=complex)

        records = {
            "occupation": np.empty((size, n_records, n_modes)),
            "cross": np.empty((size, n_records, n_modes, n_modes), dtype=complex),
            "energy": np.empty((size, n_records)),
            "heat": np.empty((size, n_records - 1)),
            "work": np.empty((size, n_records - 1)),
            "cumulative_heat": np.empty((size, n_records)),
            "cumulative_work": np.empty((size, n_records)),
            "closure": np.empty((size, n_records)),
        }
        amplitudes = np.empty((size, n_records, n_modes), dtype=complex) if record_amplitudes else None

        heat_window = np.zeros(size)
        work_window = np.zeros(size)
        heat_total = np.zeros(size)
        work_total = np.zeros(size)
        population = x.real ** 2 + x.imag ** 2
        energy_start = (population * omega_grid[0]).sum(axis=1)

        def record(r: int) -> None:
            energy = (population * omega_grid[r * record_every]).sum(axis=1)
            records["occupation"][:, r] = population
            records["cross"][:, r] = np.conj(x)[:, :, None] * x[:, None, :]
            records["energy"][:, r] = energy
            records["cumulative_heat"][:, r] = heat_total
            records["cumulative_work"][:, r] = work_total
            records["closure"][:, r] = energy - energy_start - heat_total + work_total
            if record_amplitudes:
                amplitudes[:, r] = x

        record(0)
        kicks = None
        for k in range(n_steps):
            if k % NOISE_CHUNK == 0:
                kicks = trajectory_normals(rngs, (min(NOISE_CHUNK, n_steps - k), n_modes))
            omega_now = omega_grid[k]
            omega_next = omega_grid[k + 1]
            propagator, noise_std = step_coefficients(omega_next, gamma, occupation, dt, method)

            work_step = -(population * (omega_next - omega_now)).sum(axis=1)
            drift = x * propagator
            injected = noise_std * kicks[:, k % NOISE_CHUNK]
            # calor: pérdida por amortiguamiento más inyección del ruido, a ω fija
            damping = drift.real ** 2 + drift.imag ** 2 - population
            exchange = 2.0 * (np.conj(drift) * injected).real + injected.real ** 2 + injected.imag ** 2
            heat_step = ((damping + exchange) * omega_next).sum(axis=1)
            x = drift + injected
            population = x.real ** 2 + x.imag ** 2

            heat_window += heat_step
            work_window += work_step
            heat_total += heat_step
            work_total += work_step

            if (k + 1) % record_every == 0:
                r = (k + 1) // record_every
                records["heat"][:, r - 1] = heat_window
                records["work"][:, r - 1] = work_window
                heat_window[:] = 0.0
                work_window[:] = 0.0
                record(r)

        return records, amplitudes

    def simulate_bare(self, noise: NoiseSpec, frequencies: Sequence[ScheduleLike], horizon: float, dt: float,
                      n_traj: int, **kwargs) -> TrajectoryEnsemble:
        """Modos desnudos (a, c, d o subconjunto) con ruidos independientes"""
        return self.simulate(noise, frequencies, horizon, dt, n_traj, **kwargs)

    def simulate_polariton(self, frequency: ScheduleLike, gamma_eff: float, n_eff: float, horizon: float,
                           dt: float, n_traj: int, seed: int = None, label: str = "A",
                           **kwargs) -> TrajectoryEnsemble:
        """Rama polaritónica como OU único con γ_eff y ruido de intensidad γ_eff·n̄_eff"""
        noise = NoiseSpec(
            occupations=[n_eff],
            damping=[gamma_eff],
            seed=self.config.default_seed if seed is None else seed,
            labels=[label],
        )
        return self.simulate(noise, [frequency], horizon, dt, n_traj, **kwargs)

    # ------------------------------------------------------------------
    # Termodinámica y espectro
    # ------------------------------------------------------------------

    @staticmethod
    def heat_work_rates(ensemble: TrajectoryEnsemble) -> pd.DataFrame:
        """
        Tasas medias por intervalo de registro: dW/dt, dQ/dt y dE/dt = dQ/dt − dW/dt,
        fechadas en el punto medio del intervalo
        """
        interval = ensemble.record_dt
        midpoints = 0.5 * (ensemble.times[1:] + ensemble.times[:-1])
        energy_rate = np.diff(ensemble.energy_mean) / interval
        return pd.DataFrame({
            "t": midpoints,
            "dW_dt": ensemble.work_mean / interval,
            "dW_dt_sem": ensemble.work_sem / interval,
            "dQ_dt": ensemble.heat_mean / interval,
            "dQ_dt_sem": ensemble.heat_sem / interval,
            "dE_dt": energy_rate,
            "n": 0.5 * (ensemble.occupation_mean[1:, 0] + ensemble.occupation_mean[:-1, 0]),
        })

    @staticmethod
    def emission_spectrum(ensemble: TrajectoryEnsemble, mode: int = 0) -> Tuple[np.ndarray, np.ndarray]:
        """
        Periodograma promediado sobre trayectorias, en frecuencia angular ν tal que
        una amplitud e^{−iωt} aparece en ν = +ω
        """
        if ensemble.amplitudes is None:
            raise ValueError("El ensamble no guardó amplitudes (use record_amplitudes=True)")
        signal = ensemble.amplitudes[:, :, mode]
        freqs, power = periodogram(
            signal, fs=1.0 / ensemble.record_dt, return_onesided=False, detrend=False, axis=-1
        )
        nu = -2.0 * np.pi * freqs
        density = power.mean(axis=0) / (2.0 * np.pi)
        order = np.argsort(nu)
        return nu[order], density[order]

    @staticmethod
    def lorentzian(nu, amplitude, center, hwhm, floor):
        return amplitude * hwhm ** 2 / ((nu - center) ** 2 + hwhm ** 2) + floor

    @staticmethod
    def sampled_lorentzian(nu, amplitude, center, hwhm, floor, record_dt: float, n_samples: int):
        """
        Periodograma esperado de un OU muestreado cada record_dt durante n_samples
        registros (ventana rectangular, con aliasing); tiende a `lorentzian` cuando
        record_dt → 0 y n_samples·record_dt → ∞
        """
        hwhm = np.abs(hwhm)
        q = np.exp((1j * (np.asarray(nu) - center) - hwhm) * record_dt)
        tail = q / (1.0 - q) - q * (1.0 - q ** n_samples) / (n_samples * (1.0 - q) ** 2)
        return amplitude * 0.5 * hwhm * record_dt * (1.0 + 2.0 * tail).real + floor

    def fit_lorentzian(self, nu: np.ndarray, density: np.ndarray, window: float = 10.0,
                       record_dt: Optional[float] = None,
                       n_samples: Optional[int] = None) -> Tuple[float, float, float]:
        """
        (centro, semiancho, amplitud) de un ajuste Lorentziano alrededor del pico.

        Con record_dt y n_samples se ajusta la forma que deja la ventana finita del
        registro, sin el ensanchamiento de Fejér de la Lorentziana pura.
        """
        peak = int(np.argmax(density))
        half = density[peak] / 2.0
        above = np.nonzero(density >= half)[0]
        width_guess = max(0.5 * (nu[above[-1]] - nu[above[0]]), abs(nu[1] - nu[0]))
        mask = np.abs(nu - nu[peak]) <= window * width_guess

        model = self.lorentzian
        if record_dt is not None and n_samples is not None:
            def model(x, amplitude, center, hwhm, floor):
                return self.sampled_lorentzian(x, amplitude, center, hwhm, floor, record_dt, n_samples)

        popt, _ = curve_fit(
            model,
            nu[mask],
            density[mask],
            p0=[density[peak], nu[peak], width_guess, 0.0],
            maxfev=10_000,
        )
        amplitude, center, hwhm, _ = popt
        return float(center), float(abs(hwhm)), float(amplitude)

    def fit_emission(self, ensemble: TrajectoryEnsemble, mode: int = 0) -> Tuple[float, float, float]:
        """Espectro de emisión del modo y su ajuste con la ventana del propio registro"""
        nu, density = self.emission_spectrum(ensemble, mode)
        return self.fit_lorentzian(nu, density, record_dt=ensemble.record_dt, n_samples=len(ensemble.times))
