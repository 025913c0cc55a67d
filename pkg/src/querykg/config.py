"""Pipeline configuration: defaults, key=value config files, flag overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

_INT_FIELDS = {"topk", "chunk", "conv_kernel", "conv_stride", "seed"}
_OPT_INT_FIELDS = {"max_tokens", "max_triples"}
_FLOAT_FIELDS = {"tau_node", "tau_edge", "tau_rel"}
_PATH_FIELDS = {"stopwords_path", "verbs_path"}


@dataclass(frozen=True)
class PipelineConfig:
    """Every tunable in one place.

    Thresholds live in [0, 1.01]: 1.01 is a deliberate off-switch, above any
    attainable cosine, so merging or relevance filtering can be disabled.
    """

    tau_node: float = 0.85
    tau_edge: float = 0.85
    tau_rel: float = 0.30
    max_tokens: int | None = None
    max_triples: int | None = None
    topk: int = 100
    chunk: int = 256
    conv_kernel: int = 3
    conv_stride: int = 3
    seed: int = 0
    stopwords_path: str | None = None
    verbs_path: str | None = None

    def __post_init__(self):
        for name in sorted(_FLOAT_FIELDS):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.01:
                raise ValueError(f"{name} must be in [0, 1.01], got {value}")
        for name in sorted(_INT_FIELDS - {"seed"}):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        for name in sorted(_OPT_INT_FIELDS):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive when set, got {value}")

    def merged(self, **overrides) -> "PipelineConfig":
        """New config with the non-None overrides applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes) if changes else self

    def provenance(self) -> dict:
        """Config as written into output provenance.

        Path-valued fields are excluded so identical logical runs from
        different working directories stay byte-identical.
        """
        out = {}
        for f in dataclasses.fields(self):
            if f.name in _PATH_FIELDS:
                continue
            out[f.name] = getattr(self, f.name)
        return out

    @classmethod
    def from_file(cls, path, base: "PipelineConfig | None" = None) -> "PipelineConfig":
        """Parse a flat key=value file over ``base`` (default: the defaults).

        Blank lines and '#' comments are skipped. Values: integers for count
        fields, floats for thresholds, paths verbatim; 'none' (any case)
        clears an optional field. Unknown keys are errors naming the line.
        """
        path = Path(path)
        known = {f.name for f in dataclasses.fields(cls)}
        values: dict = {}
        for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                values[key] = _parse_value(key, value)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
        merged = dataclasses.asdict(base if base is not None else cls())
        merged.update(values)
        return cls(**merged)


def _parse_value(key: str, value: str):
    if value.lower() == "none" or value == "":
        if key in _OPT_INT_FIELDS or key in _PATH_FIELDS:
            return None
        raise ValueError(f"{key} cannot be none")
    if key in _FLOAT_FIELDS:
        try:
            return float(value)
        except ValueError:
            raise ValueError(f"{key} expects a real number, got {value!r}") from None
    if key in _INT_FIELDS or key in _OPT_INT_FIELDS:
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"{key} expects an integer, got {value!r}") from None
    return value
