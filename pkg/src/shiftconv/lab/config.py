"""Sweep configuration: ``key = value`` files with ``tol.`` overrides."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from ..errors import ArgumentError, RangeError

KEYS = ("x_min", "x_max", "grid_points", "theta", "gl3_mode", "seed", "output_dir")
MIN_X = 2 ** 10

# named gates of the verification suite; overridable with tol.<name> = value
DEFAULT_TOLERANCES = {
    "delta_discrete": 1e-9,
    "delta_integral": 5e-3,
    "charsum": 1e-8,
    "weil": 1e-9,
    "gl2_voronoi": 1e-3,
    "d3_voronoi": 1e-2,
    "d3_voronoi_q1": 1e-3,
    "rankin_selberg": 0.05,
    "poisson_schwartz": 1e-12,
    "poisson_ap": 1e-10,
    "g_pm": 1e-6,
    "integral_bound": 10.0,
    "sweep_exponent": 0.95,
}


@dataclass(frozen=True)
class SweepConfig:
    x_min: int = 2 ** 14
    x_max: int = 2 ** 20
    grid_points: int = 7
    theta: float = 0.5
    gl3_mode: str = "d3"
    seed: int = 0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_dir: Path = Path("sweep_out")

    def __post_init__(self):
        if self.x_min < MIN_X:
            raise RangeError(f"x_min must be >= {MIN_X}")
        if self.x_max < self.x_min:
            raise RangeError("x_max must be >= x_min")
        if self.grid_points < 3:
            raise ArgumentError("grid_points must be >= 3")
        if not 0.0 < self.theta <= 1.0:
            raise ArgumentError("theta must lie in (0, 1]")
        if self.gl3_mode not in ("d3", "sym2"):
            raise ArgumentError("gl3_mode must be d3 or sym2")
        if not 0 <= self.seed < 2 ** 64:
            raise ArgumentError("seed must be a 64-bit unsigned integer")

    def grid(self) -> list[int]:
        """Geometric grid of X values, rounded to integers."""
        r = (self.x_max / self.x_min) ** (1.0 / (self.grid_points - 1))
        return sorted({int(round(self.x_min * r ** i)) for i in range(self.grid_points)})

    def H(self, X: int) -> int:
        """H = ceil(X^theta), guarded against float round-up at exact powers."""
        h = X ** self.theta
        return int(round(h)) if abs(h - round(h)) < 1e-9 * h else int(-(-h // 1))

    def table_limit(self) -> int:
        """Coefficient range needed by the largest cell: 2 x_max + 2 H(x_max)."""
        return 2 * self.x_max + 2 * self.H(self.x_max)

    def check_table(self, limit: int) -> None:
        if self.table_limit() > limit:
            raise RangeError(f"coefficient table limit {limit} below the required {self.table_limit()}")


def _coerce(key: str, raw: str):
    if key in ("x_min", "x_max", "grid_points", "seed"):
        return int(raw, 0)
    if key == "theta":
        return float(raw)
    if key == "output_dir":
        return Path(raw)
    return raw


def parse_config(text: str, base: SweepConfig | None = None) -> SweepConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values, tols = {}, dict(DEFAULT_TOLERANCES)
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArgumentError(f"line {lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key.startswith("tol."):
            name = key[4:]
            if not name:
                raise ArgumentError(f"line {lineno}: empty tolerance name")
            tols[name] = float(raw)
        elif key in KEYS:
            try:
                values[key] = _coerce(key, raw)
            except ValueError as exc:
                raise ArgumentError(f"line {lineno}: bad value for {key}: {raw!r}") from exc
        else:
            raise ArgumentError(f"line {lineno}: unknown key {key!r}")
    base = base or SweepConfig()
    return replace(base, tolerances=tols, **values)


def load_config(path) -> SweepConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return parse_config(text)
