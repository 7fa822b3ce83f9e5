"""Run configuration: one TOML file with [pipeline], [model] and [scorer] tables."""

from __future__ import annotations

import sys
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import tomli_w

from arghelp.argscore import RemoteConfig
from arghelp.corpus import PipelineConfig
from arghelp.model import Hyperparams

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class ModelSettings:
    alphas: tuple[float, ...] = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2)
    epsilons: tuple[float, ...] = (0.01, 0.1)
    epochs: int = 5
    eta0: float = 1.0
    average: bool = True


@dataclass(frozen=True)
class ScorerSettings:
    kind: str = "lexicon"
    endpoint: str = "http://localhost:8080"
    timeout: float = 30.0
    retries: int = 3
    max_in_flight: int = 4
    threshold: float = 0.0

    def remote(self) -> RemoteConfig:
        return RemoteConfig(
            endpoint=self.endpoint,
            timeout=self.timeout,
            retries=self.retries,
            max_in_flight=self.max_in_flight,
        )


@dataclass(frozen=True)
class RunConfig:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    model: ModelSettings = field(default_factory=ModelSettings)
    scorer: ScorerSettings = field(default_factory=ScorerSettings)

    def grid(self) -> list[Hyperparams]:
        m = self.model
        return [
            Hyperparams(alpha=a, epsilon=e, epochs=m.epochs, eta0=m.eta0,
                        seed=self.pipeline.seed, average=m.average)
            for a in m.alphas
            for e in m.epsilons
        ]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["model"]["alphas"] = list(self.model.alphas)
        d["model"]["epsilons"] = list(self.model.epsilons)
        return d

    def to_toml(self) -> str:
        return tomli_w.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        def build(kind, section):
            known = {f.name for f in fields(kind)}
            extra = set(section) - known
            if extra:
                raise ValueError(f"unknown config keys in [{kind.__name__}]: {sorted(extra)}")
            vals = dict(section)
            for key in ("alphas", "epsilons"):
                if key in vals:
                    vals[key] = tuple(float(x) for x in vals[key])
            return kind(**vals)

        unknown = set(d) - {"pipeline", "model", "scorer"}
        if unknown:
            raise ValueError(f"unknown config tables: {sorted(unknown)}")
        return cls(
            build(PipelineConfig, d.get("pipeline", {})),
            build(ModelSettings, d.get("model", {})),
            build(ScorerSettings, d.get("scorer", {})),
        )

    def with_overrides(self, **kw) -> "RunConfig":
        """Apply CLI overrides; keys are ``section__field`` and None means unset."""
        cfg = self
        for key, value in kw.items():
            if value is None:
                continue
            section, name = key.split("__")
            cfg = replace(cfg, **{section: replace(getattr(cfg, section), **{name: value})})
        return cfg


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    with open(path, "rb") as fh:
        return RunConfig.from_dict(tomllib.load(fh))
