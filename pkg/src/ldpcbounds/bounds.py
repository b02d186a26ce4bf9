"""Rate-vs-distance bounds for binary codes and LDPC duals.

All curves map relative distance delta in [0, 1/2] to a rate in [0, 1].
The linear-programming bound jpl2 is the standard explicit expression

    min over u in (0, 1-2d] of  1 + g(u^2) - g(u^2 + 2du + 2d),
    g(x) = H((1 - sqrt(1-x)) / 2),

frozen here as the definition of R_LP; the shortening-based curves and
the crossover locations downstream inherit that choice.  Its endpoint
u = 1-2d evaluates to jpl1 exactly, so the two coincide wherever the
endpoint is optimal (numerically: delta >= 0.273).

One-dimensional minimizations use a coarse grid followed by golden
section refinement; curves are smooth and unimodal in practice and the
grid guards against a wrong basin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .normalize4 import quad_cap_probability
from .partition import chernoff_constant

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
R3_PLATEAU_EDGE = 0.5 - math.sqrt(2.0) / 3.0  # below this, r3 is constant
COINCIDENCE_TOL = 1e-9


@dataclass(frozen=True)
class OptimizationSettings:
    """Grid sizes and tolerances for the inner 1-D minimizations.

    The u-minimization inside jpl2 uses the full grid_points; the outer
    shortening variable t gets a coarser bracket grid (its basin is wide
    and golden section does the precision work either way).
    """

    grid_points: int = 2048
    shortening_grid: int = 256
    var_tol: float = 1e-9
    value_tol: float = 1e-10
    max_iter: int = 200
    sign_grid: int = 33
    crossover_tol: float = 1e-5
    sign_tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.var_tol <= 0 or self.value_tol <= 0 or self.crossover_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.grid_points < 8 or self.sign_grid < 3 or self.shortening_grid < 8:
            raise ValueError("grids too small")


DEFAULT_SETTINGS = OptimizationSettings()


def entropy(p: float) -> float:
    """Binary entropy in bits, with H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"entropy argument outside [0, 1]: {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _entropy_arr(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    mask = (p > 0.0) & (p < 1.0)
    q = p[mask]
    out[mask] = -q * np.log2(q) - (1.0 - q) * np.log2(1.0 - q)
    return out


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"delta outside [0, 1/2]: {delta}")


def rho_of_delta(delta: float) -> float:
    """The ball radius fraction 1/2 - sqrt(delta (1 - delta))."""
    _check_delta(delta)
    return 0.5 - math.sqrt(delta * (1.0 - delta))


def gv(delta: float) -> float:
    """Gilbert-Varshamov lower bound 1 - H(delta), floored at zero."""
    _check_delta(delta)
    return max(0.0, 1.0 - entropy(delta))


def jpl1(delta: float) -> float:
    """First linear-programming bound H(1/2 - sqrt(delta(1-delta)))."""
    return entropy(rho_of_delta(delta))


def _g(x: float) -> float:
    return entropy((1.0 - math.sqrt(max(1.0 - x, 0.0))) / 2.0)


def _g_arr(x: np.ndarray) -> np.ndarray:
    return _entropy_arr((1.0 - np.sqrt(np.clip(1.0 - x, 0.0, None))) / 2.0)


def golden_section(f, lo: float, hi: float, tol: float = 1e-9, max_iter: int = 200):
    """Golden-section minimization of a unimodal f on [lo, hi].

    Returns (x, f(x)) for the best probed point.
    """
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def jpl2(delta: float, settings: OptimizationSettings = DEFAULT_SETTINGS) -> float:
    """Second linear-programming bound, clamped to [0, jpl1(delta)]."""
    _check_delta(delta)
    if delta == 0.5:
        return 0.0
    if delta == 0.0:
        return 1.0
    hi = 1.0 - 2.0 * delta
    n = settings.grid_points
    u = np.linspace(hi / n, hi, n)
    vals = 1.0 + _g_arr(u * u) - _g_arr(u * u + 2.0 * delta * u + 2.0 * delta)
    i = int(np.argmin(vals))
    best = float(vals[i])

    def objective(uu: float) -> float:
        return 1.0 + _g(uu * uu) - _g(uu * uu + 2.0 * delta * uu + 2.0 * delta)

    lo_u = u[max(i - 1, 0)]
    hi_u = u[min(i + 1, n - 1)]
    _, refined = golden_section(objective, lo_u, hi_u, settings.var_tol, settings.max_iter)
    best = min(best, refined)
    return max(0.0, min(best, jpl1(delta)))


def _jpl2_coarse(deltas: np.ndarray, settings: OptimizationSettings) -> np.ndarray:
    """Grid-only jpl2 for a batch of deltas (used to bracket outer optima).

    Matches jpl2 exactly wherever the endpoint is the minimizer (the grid
    contains the endpoint and the result is clamped the same way).
    """
    n = settings.grid_points
    base = np.linspace(1.0 / n, 1.0, n)
    out = np.empty_like(deltas)
    chunk = max(1, (1 << 21) // n)
    for s in range(0, deltas.size, chunk):
        d = deltas[s : s + chunk, None]
        u = (1.0 - 2.0 * d) * base[None, :]
        vals = 1.0 + _g_arr(u * u) - _g_arr(u * u + 2.0 * d * u + 2.0 * d)
        out[s : s + chunk] = vals.min(axis=1)
    rho = 0.5 - np.sqrt(deltas * (1.0 - deltas))
    return np.clip(out, 0.0, _entropy_arr(rho))


def r3_bound(delta: float) -> float:
    """Rate ceiling for duals spanned by weight-<=3 vectors.

    Constant 1/3 + H(1/3)/2 on [0, 1/2 - sqrt(2)/3], then
    rho + H(2 rho)/2 with rho = rho_of_delta.
    """
    rho = rho_of_delta(delta)
    if rho > 1.0 / 3.0:
        return 1.0 / 3.0 + entropy(1.0 / 3.0) / 2.0
    return rho + entropy(2.0 * rho) / 2.0


def r4_bound(delta: float) -> float:
    """Rate ceiling for duals spanned by weight-<=4 vectors."""
    rho = rho_of_delta(delta)
    if rho == 0.0:
        return 0.0
    return entropy(rho) + (rho / 2.0) * math.log2(quad_cap_probability(rho))


def lp_chernoff_bound(w: int, delta: float) -> float:
    """jpl1 minus the w-dependent ball-shrinkage constant, floored at 0."""
    if w < 3:
        raise ValueError(f"need w >= 3, got {w}")
    rho = rho_of_delta(delta)
    if rho == 0.0:
        return 0.0
    return max(0.0, jpl1(delta) - chernoff_constant(w, rho))


def _r3_arr(deltas: np.ndarray) -> np.ndarray:
    rho = 0.5 - np.sqrt(deltas * (1.0 - deltas))
    plateau = 1.0 / 3.0 + entropy(1.0 / 3.0) / 2.0
    vals = rho + _entropy_arr(2.0 * rho) / 2.0
    return np.where(rho > 1.0 / 3.0, plateau, vals)


def _r4_arr(deltas: np.ndarray) -> np.ndarray:
    rho = 0.5 - np.sqrt(deltas * (1.0 - deltas))
    base = (1 - rho) ** 4 + 4 * rho * (1 - rho) ** 3 + 6 * rho**2 * (1 - rho) ** 2
    out = _entropy_arr(rho) + (rho / 2.0) * np.log2(base)
    return np.where(rho == 0.0, 0.0, out)


def _lp_chernoff_arr(w: int, deltas: np.ndarray) -> np.ndarray:
    rho = 0.5 - np.sqrt(deltas * (1.0 - deltas))
    c = (math.log2(math.e) / (8 * w * w)) * (rho**w / 2.0) ** (w + 1)
    return np.clip(_entropy_arr(rho) - c, 0.0, None)


def _inner_bound(w: int, mode: str, settings: OptimizationSettings):
    """Exact and batched forms of the shortened-code inner bound.

    mode "plain" is jpl2 alone.  "strict" substitutes the w-specific
    curves only where jpl1 and jpl2 coincide (within 1e-9); "lax"
    substitutes everywhere.
    """

    def special(dp: float) -> float:
        if w == 3:
            return r3_bound(dp)
        if w == 4:
            return min(r4_bound(dp), lp_chernoff_bound(4, dp))
        return lp_chernoff_bound(w, dp)

    def special_arr(dps: np.ndarray) -> np.ndarray:
        if w == 3:
            return _r3_arr(dps)
        if w == 4:
            return np.minimum(_r4_arr(dps), _lp_chernoff_arr(4, dps))
        return _lp_chernoff_arr(w, dps)

    if mode == "plain":
        return (lambda dp: jpl2(dp, settings)), (lambda dps: _jpl2_coarse(dps, settings))

    def exact(dp: float) -> float:
        base = jpl2(dp, settings)
        if mode == "lax" or abs(jpl1(dp) - base) <= COINCIDENCE_TOL:
            return min(base, special(dp))
        return base

    def batched(dps: np.ndarray) -> np.ndarray:
        base = _jpl2_coarse(dps, settings)
        sub = np.minimum(base, special_arr(dps))
        if mode == "lax":
            return sub
        rho = 0.5 - np.sqrt(dps * (1.0 - dps))
        coincide = np.abs(_entropy_arr(rho) - base) <= COINCIDENCE_TOL
        return np.where(coincide, sub, base)

    return exact, batched


def _minimize_shortening(
    delta: float,
    penalty: float,
    inner_exact,
    inner_batched,
    settings: OptimizationSettings,
) -> float:
    """min over t in [0, 1-2 delta] of (1-t) inner(delta/(1-t)) + penalty t."""
    hi = 1.0 - 2.0 * delta
    if hi <= 0.0:
        return inner_exact(0.5)
    n = settings.shortening_grid
    ts = np.linspace(0.0, hi, n + 1)
    dps = np.minimum(delta / (1.0 - ts[:-1]), 0.5)
    dps = np.append(dps, 0.5)  # t = hi maps to delta' = 1/2 exactly
    vals = (1.0 - ts) * inner_batched(dps) + penalty * ts
    i = int(np.argmin(vals))

    def objective(t: float) -> float:
        dp = min(delta / (1.0 - t), 0.5) if t < 1.0 else 0.5
        return (1.0 - t) * inner_exact(dp) + penalty * t

    lo_t = ts[max(i - 2, 0)]
    hi_t = ts[min(i + 2, n)]
    _, refined = golden_section(objective, lo_t, hi_t, settings.var_tol, settings.max_iter)
    return min(objective(float(ts[i])), refined)


def bh_bound(
    variant: int,
    w: int,
    delta: float,
    settings: OptimizationSettings = DEFAULT_SETTINGS,
) -> float:
    """Shortening/covering bounds for weight-w duals, variants 1, 4 and 5.

    Variant 1 is closed form; variants 4 and 5 minimize the shortened-code
    combination of jpl2 with linear penalty t - t/w (variant 4) or
    t - t/(w-1) (variant 5, which needs every parity-check column to have
    weight at least two).
    """
    if w < 3:
        raise ValueError(f"need w >= 3, got {w}")
    _check_delta(delta)
    if variant == 1:
        if delta == 0.0:
            raise ValueError("variant 1 is undefined at delta = 0")
        num = entropy(delta / 2.0)
        den = entropy((1.0 - (1.0 - delta) ** w) / 2.0)
        return 1.0 - num / den
    if variant in (4, 5):
        penalty = 1.0 - (1.0 / w if variant == 4 else 1.0 / (w - 1))
        inner_exact, inner_batched = _inner_bound(w, "plain", settings)
        return _minimize_shortening(delta, penalty, inner_exact, inner_batched, settings)
    raise ValueError(f"unknown variant {variant}; pick 1, 4 or 5")


def improved_bound(
    variant: int,
    w: int,
    delta: float,
    mode: str = "strict",
    settings: OptimizationSettings = DEFAULT_SETTINGS,
) -> float:
    """Variant 4/5 with the inner LP bound replaced by the w-specific curve.

    mode "strict" substitutes only where jpl1 and jpl2 coincide (the
    substitution provably keeps the shortening argument valid there);
    "lax" substitutes at every inner distance.
    """
    if variant not in (4, 5):
        raise ValueError(f"improved bound exists for variants 4 and 5, got {variant}")
    if w < 3:
        raise ValueError(f"need w >= 3, got {w}")
    if mode not in ("strict", "lax"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_delta(delta)
    penalty = 1.0 - (1.0 / w if variant == 4 else 1.0 / (w - 1))
    inner_exact, inner_batched = _inner_bound(w, mode, settings)
    return _minimize_shortening(delta, penalty, inner_exact, inner_batched, settings)


class CrossoverError(RuntimeError):
    """Sign structure on the bracket does not allow bisection."""

    def __init__(self, message: str, pattern: str):
        super().__init__(f"{message}; sign pattern {pattern}")
        self.pattern = pattern


@dataclass(frozen=True)
class CrossoverResult:
    delta: float
    value_a: float
    value_b: float


def crossover(
    curve_a,
    curve_b,
    lo: float,
    hi: float,
    settings: OptimizationSettings = DEFAULT_SETTINGS,
) -> CrossoverResult:
    """Locate the single sign change of curve_a - curve_b on [lo, hi].

    Differences within sign_tol count as zero, so a curve that merges into
    the other (rather than crossing it transversally) is located too.  A
    bracket with no sign change, or more than one at grid resolution, is
    an error carrying the observed sign pattern.
    """
    if not lo < hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")

    def sign_at(d: float) -> int:
        diff = curve_a(d) - curve_b(d)
        if abs(diff) <= settings.sign_tol:
            return 0
        return 1 if diff > 0 else -1

    grid = np.linspace(lo, hi, settings.sign_grid)
    signs = [sign_at(float(d)) for d in grid]
    changes = [i for i in range(len(signs) - 1) if signs[i] != signs[i + 1]]
    pattern = "".join({1: "+", 0: "0", -1: "-"}[s] for s in signs)
    if not changes:
        raise CrossoverError("curves do not cross on the bracket", pattern)
    if len(changes) > 1:
        raise CrossoverError("multiple sign changes at grid resolution", pattern)
    i = changes[0]
    a, b = float(grid[i]), float(grid[i + 1])
    s_left = signs[i]
    while b - a > settings.crossover_tol:
        mid = (a + b) / 2.0
        if sign_at(mid) == s_left:
            a = mid
        else:
            b = mid
    mid = (a + b) / 2.0
    return CrossoverResult(delta=mid, value_a=curve_a(mid), value_b=curve_b(mid))


@dataclass(frozen=True)
class BoundCurve:
    """One named bound sampled on an increasing delta grid."""

    kind: str
    w: int | None
    deltas: tuple[float, ...]
    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.deltas) != len(self.rates):
            raise ValueError("grid and samples differ in length")
        if any(b <= a for a, b in zip(self.deltas, self.deltas[1:])):
            raise ValueError("delta grid must be strictly increasing")
        if any(not 0.0 <= d <= 0.5 for d in self.deltas):
            raise ValueError("delta grid must lie in [0, 1/2]")
        if any(not 0.0 <= r <= 1.0 for r in self.rates):
            raise ValueError("rates must lie in [0, 1]")


CURVE_NAMES = (
    "gv", "jpl1", "jpl2", "r3", "r4", "lpchernoff",
    "bh1", "bh4", "bh5", "improved4", "improved5",
)


def curve_function(
    name: str,
    w: int = 3,
    mode: str = "strict",
    settings: OptimizationSettings = DEFAULT_SETTINGS,
):
    """Callable delta -> rate for a named curve."""
    simple = {
        "gv": gv,
        "jpl1": jpl1,
        "jpl2": lambda d: jpl2(d, settings),
        "r3": r3_bound,
        "r4": r4_bound,
        "lpchernoff": lambda d: lp_chernoff_bound(w, d),
        "bh1": lambda d: bh_bound(1, w, d, settings),
        "bh4": lambda d: bh_bound(4, w, d, settings),
        "bh5": lambda d: bh_bound(5, w, d, settings),
        "improved4": lambda d: improved_bound(4, w, d, mode, settings),
        "improved5": lambda d: improved_bound(5, w, d, mode, settings),
    }
    if name not in simple:
        raise ValueError(f"unknown curve {name!r}; known: {', '.join(CURVE_NAMES)}")
    return simple[name]


def default_curves(w: int) -> tuple[str, ...]:
    special = {3: "r3", 4: "r4"}.get(w, "lpchernoff")
    return ("jpl1", "jpl2", special, "bh1", "bh4", "bh5", "improved4", "improved5")


def sample_curve(
    name: str,
    deltas,
    w: int = 3,
    mode: str = "strict",
    settings: OptimizationSettings = DEFAULT_SETTINGS,
) -> BoundCurve:
    fn = curve_function(name, w=w, mode=mode, settings=settings)
    rates = tuple(min(1.0, max(0.0, fn(float(d)))) for d in deltas)
    wants_w = name in ("lpchernoff", "bh1", "bh4", "bh5", "improved4", "improved5")
    return BoundCurve(kind=name, w=w if wants_w else None,
                      deltas=tuple(float(d) for d in deltas), rates=rates)


def curves_csv(curves: list[BoundCurve]) -> str:
    """CSV table: header `delta,<names>`, nine significant digits."""
    if not curves:
        raise ValueError("no curves to emit")
    grid = curves[0].deltas
    for c in curves[1:]:
        if c.deltas != grid:
            raise ValueError("curves sampled on different grids")
    lines = ["delta," + ",".join(c.kind for c in curves)]
    for i, d in enumerate(grid):
        row = [f"{d:.9g}"] + [f"{c.rates[i]:.9g}" for c in curves]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def curves_json(curves: list[BoundCurve], settings: OptimizationSettings,
                metadata: dict | None = None) -> str:
    payload = {
        "metadata": {
            "settings": {
                "grid_points": settings.grid_points,
                "var_tol": settings.var_tol,
                "value_tol": settings.value_tol,
            },
            **(metadata or {}),
        },
        "curves": [
            {"kind": c.kind, "w": c.w, "delta": list(c.deltas), "rate": list(c.rates)}
            for c in curves
        ],
    }
    return json.dumps(payload, indent=2) + "\n"
