"""ODE integration, equilibrium refinement, itinerary and dwell-time analysis.

Integration uses an adaptive embedded Runge-Kutta 4(5) pair.  The
default absolute tolerance is essentially zero so that pure relative
control resolves near-saddle passages all the way down to denormal
floats; trajectories collapsing onto invariant coordinate planes by
underflow are genuine behavior near attracting cycles and are reported
as such instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

COLLAPSE_MESSAGE = "numerical collapse onto invariant set (step size underflow)"


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (n, len(times))
    dense: object
    method: str
    rtol: float
    atol: float
    collapsed: bool = False
    message: str = ""

    @property
    def n(self) -> int:
        return self.states.shape[0]

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("trajectory times must be strictly increasing")

    def at(self, t):
        return self.dense(t)

    def to_csv_rows(self):
        for i, t in enumerate(self.times):
            yield [t, *self.states[:, i]]


def integrate(sys, x0, t_end: float, tol: float = 1e-8, atol: float | None = None,
              t_eval=None, max_step: float = np.inf) -> Trajectory:
    """Adaptive RK45 solution of dx/dt = rhs(x) from x0 over [0, t_end].

    ``tol`` is the per-step relative error target.  Stiffness-driven step
    underflow is reported through ``Trajectory.collapsed``, never
    silently truncated.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if atol is None:
        atol = 1e-300  # relative control all the way down to denormals
    x0 = np.asarray(x0, dtype=float)
    with np.errstate(under="ignore", divide="ignore", invalid="ignore"):
        sol = solve_ivp(lambda t, x: sys.rhs(x), (0.0, float(t_end)), x0, method="RK45",
                        rtol=tol, atol=atol, dense_output=True, t_eval=t_eval,
                        max_step=max_step)
    if sol.status == -1:
        return Trajectory(sol.t, sol.y, sol.sol, "RK45", tol, atol,
                          collapsed=True, message=COLLAPSE_MESSAGE)
    if sol.status != 0:
        raise RuntimeError(f"integration failed: {sol.message}")
    return Trajectory(sol.t, sol.y, sol.sol, "RK45", tol, atol)


@dataclass(frozen=True)
class EquilibriumReport:
    x: np.ndarray
    residual: float
    eigenvalues: np.ndarray
    hyperbolic: bool


def refine_equilibrium(sys, x_guess, tol: float = 1e-12, max_iter: int = 60,
                       hyperbolicity_floor: float = 1e-8) -> EquilibriumReport:
    """Newton refinement of an equilibrium plus its linear stability data."""
    x = np.asarray(x_guess, dtype=float).copy()
    for _ in range(max_iter):
        f = sys.rhs(x)
        if np.max(np.abs(f)) < tol:
            break
        J = sys.jacobian(x)
        try:
            step = np.linalg.solve(J, f)
        except np.linalg.LinAlgError as exc:
            raise RuntimeError("singular Jacobian during equilibrium refinement") from exc
        x = x - step
        if not np.all(np.isfinite(x)):
            raise RuntimeError("Newton iteration diverged")
    else:
        raise RuntimeError(f"no convergence to an equilibrium after {max_iter} iterations")
    eigs = np.linalg.eigvals(sys.jacobian(x))
    hyperbolic = bool(np.min(np.abs(eigs.real)) > hyperbolicity_floor)
    return EquilibriumReport(x, float(np.max(np.abs(sys.rhs(x)))), eigs, hyperbolic)


@dataclass(frozen=True)
class Episode:
    equilibrium_id: int  # 1-based index into the equilibria list
    entry_time: float
    dwell_time: float
    censored: bool = False  # trajectory ended (or collapsed) inside the ball

    def to_json(self) -> dict:
        return {"id": self.equilibrium_id, "entry": self.entry_time,
                "dwell": self.dwell_time, "censored": self.censored}


@dataclass(frozen=True)
class Itinerary:
    episodes: tuple[Episode, ...]
    delta_dwell: float

    def ids(self) -> tuple[int, ...]:
        return tuple(e.equilibrium_id for e in self.episodes)

    def dwells(self, complete_only: bool = False) -> np.ndarray:
        eps = [e for e in self.episodes if not (complete_only and e.censored)]
        return np.array([e.dwell_time for e in eps])

    def __len__(self) -> int:
        return len(self.episodes)

    def to_json(self) -> dict:
        return {"delta_dwell": self.delta_dwell,
                "episodes": [e.to_json() for e in self.episodes]}


def default_dwell_radius(equilibria) -> float:
    eqs = [np.asarray(e, dtype=float) for e in equilibria]
    sep = min(np.linalg.norm(p - q) for i, p in enumerate(eqs) for q in eqs[i + 1:])
    return 0.05 * sep


def _refine_crossing(dense, t_out, t_in, dist, radius, tol=1e-9):
    """Bisect the crossing of dist(x(t)) = radius between t_out and t_in."""
    a, b = t_out, t_in
    fa = dist(dense(a)) - radius
    for _ in range(80):
        m = 0.5 * (a + b)
        fm = dist(dense(m)) - radius
        if abs(b - a) < tol * max(1.0, abs(b)):
            break
        if (fa > 0) == (fm > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def extract_itinerary(traj: Trajectory, equilibria: Sequence, delta_dwell: float) -> Itinerary:
    """Maximal near-equilibrium intervals of a trajectory, in time order.

    ``delta_dwell`` must be positive and below half of the smallest
    pairwise distance between the supplied equilibria, so the detection
    balls cannot overlap.
    """
    eqs = [np.asarray(e, dtype=float) for e in equilibria]
    if delta_dwell <= 0:
        raise ValueError("delta_dwell must be positive")
    if len(eqs) >= 2:
        sep = min(np.linalg.norm(p - q) for i, p in enumerate(eqs) for q in eqs[i + 1:])
        if delta_dwell >= 0.5 * sep:
            raise ValueError("detection balls overlap: delta_dwell >= half the "
                             "minimal equilibrium separation")

    # sample on a grid no coarser than the solver's own steps
    base = traj.times
    grid = np.union1d(base, np.linspace(base[0], base[-1], min(20000, 4 * len(base))))
    X = traj.dense(grid)
    dists = np.stack([np.linalg.norm(X.T - e, axis=1) for e in eqs])
    inside = dists.min(axis=0) < delta_dwell
    owner = dists.argmin(axis=0)

    episodes: list[Episode] = []
    i = 0
    K = len(grid)
    while i < K:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < K and inside[j + 1] and owner[j + 1] == owner[i]:
            j += 1
        eq_id = int(owner[i])
        dist = lambda x, _e=eqs[eq_id]: float(np.linalg.norm(np.asarray(x) - _e))
        t_entry = grid[i]
        if i > 0:
            t_entry = _refine_crossing(traj.dense, grid[i - 1], grid[i], dist, delta_dwell)
        censored = j == K - 1
        t_exit = grid[j]
        if not censored:
            t_exit = _refine_crossing(traj.dense, grid[j + 1], grid[j], dist, delta_dwell)
        episodes.append(Episode(eq_id + 1, float(t_entry), float(t_exit - t_entry),
                                censored=censored))
        i = j + 1

    merged: list[Episode] = []
    for ep in episodes:  # merge grid-induced splits of one passage
        if merged and merged[-1].equilibrium_id == ep.equilibrium_id and \
                ep.entry_time - (merged[-1].entry_time + merged[-1].dwell_time) < 1e-9:
            last = merged.pop()
            merged.append(Episode(last.equilibrium_id, last.entry_time,
                                  ep.entry_time + ep.dwell_time - last.entry_time,
                                  censored=ep.censored))
        else:
            merged.append(ep)
    return Itinerary(tuple(merged), float(delta_dwell))


@dataclass(frozen=True)
class DwellStats:
    ratios: np.ndarray
    asymptote: float

    def to_json(self) -> dict:
        return {"ratios": self.ratios.tolist(), "asymptote": self.asymptote}


def dwell_growth(itinerary: Itinerary) -> DwellStats:
    """Successive dwell-time ratios and an asymptote estimate.

    The asymptote is compared by callers against the saddle-value
    prediction from the equilibrium Jacobians.  Censored final episodes
    are excluded.
    """
    dwells = itinerary.dwells(complete_only=True)
    if len(dwells) < 4:
        raise ValueError("need at least 4 complete dwell episodes")
    ratios = dwells[1:] / dwells[:-1]
    return DwellStats(ratios, float(ratios[-1]))


def saddle_ratio_prediction(sys, x_eq) -> float:
    """Saddle value -lambda_contracting / lambda_expanding at an equilibrium.

    Uses the weakest contracting and the strongest expanding eigenvalue;
    this is the limit of successive dwell-time ratios along an
    attracting cycle through saddles of this type.
    """
    eigs = np.linalg.eigvals(sys.jacobian(np.asarray(x_eq, dtype=float))).real
    contracting = eigs[eigs < 0]
    expanding = eigs[eigs > 0]
    if len(contracting) == 0 or len(expanding) == 0:
        raise ValueError("equilibrium is not a saddle")
    return float(-np.max(contracting) / np.max(expanding))


def trajectory_drift(traj: Trajectory, partition) -> float:
    """Maximal deviation of a trajectory from a synchrony pattern."""
    return max(partition.subspace_distance(traj.states[:, i])
               for i in range(traj.states.shape[1]))
