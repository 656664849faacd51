"""Scalar regularization functions r(lambda) and frequency responses
g(lambda) = 1/r(lambda) for the supported filter families.

Families
--------
regularized_laplacian   r = 1 + s*lam                      (s > 0)
diffusion               r = exp(s*lam)                     (s > 0)
p_step_random_walk      r = (a - lam)^(-p)                 (a >= 2 guaranteed monotone)
cosine                  r = 1 / cos(lam*pi/4)
chebynet                r = 1 / sum_k theta_k lam^k        (analysis form)
gcn                     r = 1 / (theta * (1 - lam))
graphheat               r = 1 / (theta0 + theta1 * exp(-s*lam))
igcn                    r = 1 / (theta * (1 - lam))^K

A filter behaves as a low-pass when r is monotone increasing over the
spectrum, equivalently when g is monotone decreasing. Poles are signaled
with +/-inf rather than raising, so curves can be tabulated right up to
them; the monotonicity verdict is computed over the finite grid values with
every non-finite point reported separately.

The ``c`` field is a plain positive multiplier on r used by the analysis
curves; it rescales plots and never changes monotonicity.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

FAMILIES = (
    "regularized_laplacian",
    "diffusion",
    "p_step_random_walk",
    "cosine",
    "chebynet",
    "gcn",
    "graphheat",
    "igcn",
)

# families whose published form is the response g (reciprocals of the rows above)
RESPONSE_DEFINED = ("chebynet", "gcn", "graphheat", "igcn")

_POLE_EPS = 1e-14


@dataclass(frozen=True)
class FilterSpec:
    """One named r(lambda)/g(lambda) pair with its hyperparameters.

    Fields irrelevant to a family are ignored. ``theta`` holds the scaling
    coefficients: a single scalar for most families, K coefficients for
    chebynet, (theta0, theta1) for graphheat.
    """

    family: str
    s: float | None = None
    a: float | None = None
    p: int | None = None
    K: int | None = None
    theta: tuple = (1.0,)
    c: float = 1.0
    label: str | None = None

    def __post_init__(self):
        fam = self.family
        if fam not in FAMILIES:
            raise ValueError(f"unknown filter family {fam!r}")
        object.__setattr__(self, "theta", tuple(float(t) for t in self.theta))
        if not self.theta:
            raise ValueError("theta must be non-empty")
        if self.c <= 0:
            raise ValueError("curve multiplier c must be positive")
        if fam in ("regularized_laplacian", "diffusion"):
            if self.s is None or self.s <= 0:
                raise ValueError(f"{fam} requires s > 0")
        if fam == "graphheat":
            if self.s is None or self.s < 0:
                raise ValueError("graphheat requires s >= 0")
            if len(self.theta) != 2:
                raise ValueError("graphheat takes theta = (theta0, theta1)")
        if fam == "p_step_random_walk":
            if self.a is None:
                raise ValueError("p_step_random_walk requires the offset a")
            if self.p is None or int(self.p) < 1:
                raise ValueError("p_step_random_walk requires integer p >= 1")
            object.__setattr__(self, "p", int(self.p))
        if fam == "igcn":
            if self.K is None or int(self.K) < 1:
                raise ValueError("igcn requires integer K >= 1")
            object.__setattr__(self, "K", int(self.K))
        if self.K is not None and int(self.K) < 0:
            raise ValueError("K must be non-negative")

    @property
    def monotone_guaranteed(self):
        """Whether the hyperparameters sit in the guaranteed low-pass range."""
        if self.family == "p_step_random_walk":
            return self.a is not None and self.a >= 2
        return self.family in ("regularized_laplacian", "diffusion", "cosine")

    def name(self):
        if self.label:
            return self.label
        parts = [self.family]
        for attr in ("s", "a", "p", "K"):
            v = getattr(self, attr)
            if v is not None:
                parts.append(f"{attr}{v:g}")
        if self.theta != (1.0,) and self.family != "graphheat":
            parts.append("theta" + "_".join(f"{t:g}" for t in self.theta))
        if self.c != 1.0:
            parts.append(f"c{self.c:g}")
        return "_".join(parts)

    def with_label(self, label):
        return replace(self, label=label)


def _reciprocal(denom, scale=1.0):
    """scale / denom with poles signaled as signed infinities."""
    denom = np.asarray(denom, dtype=np.float64)
    near = np.abs(denom) < _POLE_EPS
    safe = np.where(near, 1.0, denom)
    out = np.where(near, np.copysign(np.inf, denom), scale / safe)
    return out


def _poly_eval(theta, lam):
    out = np.zeros_like(lam)
    for coef in reversed(theta):
        out = out * lam + coef
    return out


def regularization_fn(spec, lam):
    """Penalty r(lambda); scalar in, scalar out, arrays pass through."""
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=np.float64))
    fam = spec.family
    c = spec.c
    if fam == "regularized_laplacian":
        out = c * (1.0 + spec.s * lam_arr)
    elif fam == "diffusion":
        out = c * np.exp(spec.s * lam_arr)
    elif fam == "p_step_random_walk":
        out = _reciprocal((spec.a - lam_arr) ** spec.p, c)
    elif fam == "cosine":
        out = _reciprocal(np.cos(lam_arr * np.pi / 4.0), c)
    elif fam == "chebynet":
        out = _reciprocal(_poly_eval(spec.theta, lam_arr), c)
    elif fam == "gcn":
        out = _reciprocal(spec.theta[0] * (1.0 - lam_arr), c)
    elif fam == "graphheat":
        t0, t1 = spec.theta
        out = _reciprocal(t0 + t1 * np.exp(-spec.s * lam_arr), c)
    elif fam == "igcn":
        out = _reciprocal((spec.theta[0] * (1.0 - lam_arr)) ** spec.K, c)
    else:  # pragma: no cover - guarded by FilterSpec
        raise ValueError(fam)
    return float(out[0]) if np.ndim(lam) == 0 else out


def frequency_response(spec, lam):
    """Filter gain g(lambda) = 1/r(lambda).

    For the response-defined families this is the published form evaluated
    directly; for the rest it is the closed-form reciprocal of r.
    """
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=np.float64))
    fam = spec.family
    c = spec.c
    if fam == "regularized_laplacian":
        out = _reciprocal(c * (1.0 + spec.s * lam_arr))
    elif fam == "diffusion":
        out = np.exp(-spec.s * lam_arr) / c
    elif fam == "p_step_random_walk":
        out = (spec.a - lam_arr) ** spec.p / c
    elif fam == "cosine":
        out = np.cos(lam_arr * np.pi / 4.0) / c
    elif fam == "chebynet":
        out = _poly_eval(spec.theta, lam_arr) / c
    elif fam == "gcn":
        out = spec.theta[0] * (1.0 - lam_arr) / c
    elif fam == "graphheat":
        t0, t1 = spec.theta
        out = (t0 + t1 * np.exp(-spec.s * lam_arr)) / c
    elif fam == "igcn":
        out = (spec.theta[0] * (1.0 - lam_arr)) ** spec.K / c
    else:  # pragma: no cover
        raise ValueError(fam)
    return float(out[0]) if np.ndim(lam) == 0 else out


@dataclass(frozen=True)
class MonotoneReport:
    """Verdict of a grid monotonicity check on r(lambda)."""

    monotone: bool
    first_violation: tuple | None  # (lam_prev, lam_next, r_prev, r_next)
    poles: tuple = ()              # grid points with non-finite r

    def __bool__(self):
        return self.monotone


def check_monotone_increasing(spec, lambda_max, grid_points=1001, tol=1e-12):
    """Check that r is non-decreasing on a uniform grid over [0, lambda_max].

    Non-finite grid values are excluded from the pairwise comparison and
    reported as poles; the verdict covers the finite values only, so a
    penalty that climbs into a pole at the right end still counts as
    monotone (with the pole flagged).
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    grid = np.linspace(0.0, lambda_max, grid_points)
    r = regularization_fn(spec, grid)
    finite = np.isfinite(r)
    poles = tuple(float(x) for x in grid[~finite])
    xs, vals = grid[finite], r[finite]
    drops = np.flatnonzero(vals[1:] < vals[:-1] - tol)
    if drops.size:
        i = int(drops[0])
        return MonotoneReport(False,
                              (float(xs[i]), float(xs[i + 1]),
                               float(vals[i]), float(vals[i + 1])),
                              poles)
    return MonotoneReport(True, None, poles)


@dataclass
class CurveTable:
    """Regularization curves tabulated on a shared lambda grid."""

    header: list
    grid: np.ndarray
    columns: np.ndarray  # shape (len(grid), n_specs)

    def to_csv_text(self):
        lines = [",".join(self.header)]
        for i, lam in enumerate(self.grid):
            cells = [f"{lam:.9g}"]
            for v in self.columns[i]:
                cells.append(f"{v:.9g}" if math.isfinite(v) else "")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def emit_curves(specs, lambda_max, grid_points):
    """Tabulate r(lambda) for each spec; poles become empty CSV cells."""
    specs = list(specs)
    grid = np.linspace(0.0, lambda_max, grid_points)
    cols = np.empty((grid_points, len(specs)))
    for j, spec in enumerate(specs):
        cols[:, j] = regularization_fn(spec, grid)
    header = ["lambda"] + [s.name() for s in specs]
    return CurveTable(header, grid, cols)


def _exp_series_coeffs(order=16):
    return tuple(1.0 / math.factorial(k) for k in range(order))


def figure_presets():
    """Curve grids for the bundled figures.

    ``families``: the four proposed regularization functions over their
    plotted hyperparameter grids. ``gcnn``: the analysis-form penalties of
    common GCNN filters (chebynet via its exponential-series coefficients,
    gcn/igcn via their exponential approximations exp(k*lambda), graphheat
    exactly), each swept over the constant c.
    """
    s_grid = (0.5, 1.0, 1.5, 2.0)
    a_grid = (2.0, 3.0, 4.0, 5.0)
    c_grid = (0.2, 0.5, 1.0, 1.5)
    exp_coeffs = _exp_series_coeffs()
    families = {
        "regularized_laplacian": [
            FilterSpec("regularized_laplacian", s=s, label=f"s{s:g}") for s in s_grid],
        "diffusion": [
            FilterSpec("diffusion", s=s, label=f"s{s:g}") for s in s_grid],
        "one_step_random_walk": [
            FilterSpec("p_step_random_walk", a=a, p=1, label=f"a{a:g}") for a in a_grid],
        "two_step_random_walk": [
            FilterSpec("p_step_random_walk", a=a, p=2, label=f"a{a:g}") for a in a_grid],
        "inverse_cosine": [FilterSpec("cosine", label="cosine")],
    }
    gcnn = {
        "chebynet": [
            FilterSpec("chebynet", theta=exp_coeffs, c=c, label=f"c{c:g}") for c in c_grid],
        "gcn": [
            FilterSpec("diffusion", s=1.0, c=c, label=f"c{c:g}") for c in c_grid],
        "graphheat": [
            FilterSpec("graphheat", s=1.0, theta=(1.0, 1.0), c=c, label=f"c{c:g}")
            for c in c_grid],
        "igcn_k2": [
            FilterSpec("diffusion", s=2.0, c=c, label=f"c{c:g}") for c in c_grid],
        "igcn_k3": [
            FilterSpec("diffusion", s=3.0, c=c, label=f"c{c:g}") for c in c_grid],
    }
    return {"families": families, "gcnn": gcnn}
