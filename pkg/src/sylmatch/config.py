"""Run configuration: command-line flags over a flat ``key = value`` file over defaults.

Config file format: one ``key = value`` per line, ``#`` starts a comment,
keys use either dashes or underscores (``n-max = 30`` or ``n_max = 30``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .corpus import UnknownPolicy
from .errors import ConfigurationError
from .matching import DEFAULT_N_MAX, Boundary


def parse_q_range(text: str) -> tuple[int, int]:
    """``"1..30"`` -> (1, 30)."""
    try:
        lo, hi = (int(part) for part in str(text).split(".."))
    except ValueError:
        raise ConfigurationError(f"q-range must look like A..B, got {text!r}") from None
    return lo, hi


def read_config_file(path: str | Path) -> dict[str, str]:
    values = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{line_no}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...] = ()
    labels: tuple[str, ...] = ()
    lexicon: str | None = None
    abbreviations: str | None = None
    sequences: bool = False
    boundary: Boundary = Boundary.PERIODIC
    n_max: int = DEFAULT_N_MAX
    k_max: int | None = None
    q_range: tuple[int, int] | None = None
    unknown: UnknownPolicy = UnknownPolicy.LOG_SKIP
    seed: int = 0
    out: str = "out"
    extra: dict = field(default_factory=dict)

    @property
    def effective_k_max(self) -> int:
        return self.n_max if self.k_max is None else self.k_max

    @property
    def effective_q_range(self) -> tuple[int, int]:
        return self.q_range if self.q_range is not None else (1, min(DEFAULT_N_MAX, self.n_max))

    def validate(self) -> "RunConfig":
        if self.n_max < 1:
            raise ConfigurationError(f"n-max must be >= 1, got {self.n_max}")
        if not (1 <= self.effective_k_max <= self.n_max):
            raise ConfigurationError(f"k-max must lie in 1..n-max, got {self.effective_k_max}")
        lo, hi = self.effective_q_range
        if not (1 <= lo <= hi <= self.n_max):
            raise ConfigurationError(f"q-range {lo}..{hi} not inside 1..{self.n_max}")
        if self.labels and len(self.labels) != len(self.inputs):
            raise ConfigurationError(f"{len(self.labels)} labels for {len(self.inputs)} inputs")
        labels = self.resolved_labels()
        if len(set(labels)) != len(labels):
            raise ConfigurationError(f"labels must be unique, got {labels}")
        for label in labels:
            if not label or "/" in label or label in (".", ".."):
                raise ConfigurationError(f"label {label!r} is not usable as a directory name")
        for path in self.inputs:
            if not Path(path).is_file():
                raise ConfigurationError(f"input file not found: {path}")
        for name in ("lexicon", "abbreviations"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise ConfigurationError(f"{name} file not found: {path}")
        return self

    def resolved_labels(self) -> list[str]:
        return list(self.labels) if self.labels else [Path(p).stem for p in self.inputs]


_CONVERTERS = {
    "boundary": Boundary.parse,
    "n_max": int,
    "k_max": int,
    "q_range": parse_q_range,
    "unknown": UnknownPolicy.parse,
    "seed": int,
    "sequences": lambda v: str(v).lower() in ("1", "true", "yes", "on"),
}


def build_config(flags: dict, config_file: str | None = None) -> RunConfig:
    """Merge explicit flags (None = not given) over the config file over defaults."""
    known = {f.name for f in fields(RunConfig)}
    file_values = read_config_file(config_file) if config_file else {}
    merged: dict = {}
    extra: dict = {}
    for source in (file_values, {k: v for k, v in flags.items() if v is not None}):
        for key, value in source.items():
            if key in known:
                merged[key] = value
            else:
                extra[key] = value
    values = {}
    try:
        for key, value in merged.items():
            if key in ("inputs", "labels"):
                values[key] = tuple(value) if not isinstance(value, str) else tuple(value.split())
            elif key in _CONVERTERS and isinstance(value, str):
                values[key] = _CONVERTERS[key](value)
            else:
                values[key] = value
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None
    return replace(RunConfig(), extra=extra, **values)
