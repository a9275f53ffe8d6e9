"""Six-feature encoding of model characteristics and the model registry.

Each model is described by its architecture category (label-encoded),
three pre-training-domain flags, a from-scratch flag, and a bucketed
parameter count.  The bundled registry file carries the descriptors for
the 19 surveyed models and can be extended with new ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ..metrics import Scores

CATEGORIES = ("AutoEncoding", "AutoRegressive", "TextToText")
FEATURE_NAMES = ("category", "general", "medical", "social", "from_scratch", "size_bucket")


@dataclass(frozen=True)
class FeatureVector:
    category: int
    general: int
    medical: int
    social: int
    from_scratch: int
    size_bucket: int

    def __post_init__(self):
        if self.category not in (0, 1, 2):
            raise ValueError(f"category code must be 0..2, got {self.category}")
        for name in ("general", "medical", "social", "from_scratch"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        if self.size_bucket not in (0, 1, 2):
            raise ValueError(f"size_bucket must be 0..2, got {self.size_bucket}")

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, name) for name in FEATURE_NAMES)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @classmethod
    def from_mapping(cls, values) -> "FeatureVector":
        return cls(**{name: int(values[name]) for name in FEATURE_NAMES})


@dataclass(frozen=True)
class ModelDescriptor:
    name: str
    category: str
    from_scratch: bool
    general: bool
    medical: bool
    social: bool
    size_millions: int


@dataclass(frozen=True)
class RunRecord:
    """One (model, seed, dataset) evaluation outcome with its descriptor."""

    model_name: str
    features: FeatureVector
    seed: int
    dataset: str
    scores_relaxed: Scores
    scores_strict: Scores

    @property
    def run_id(self) -> str:
        return f"{self.model_name}:{self.dataset}:{self.seed}"


def size_bucket(size_millions: int) -> int:
    """Parameter-count bucket: <100M -> 0, 100M-130M -> 1, >130M -> 2."""
    if size_millions < 100:
        return 0
    if size_millions <= 130:
        return 1
    return 2


def encode_features(descriptor: ModelDescriptor) -> FeatureVector:
    if descriptor.category not in CATEGORIES:
        raise ValueError(f"unknown category {descriptor.category!r}")
    return FeatureVector(
        category=CATEGORIES.index(descriptor.category),
        general=int(descriptor.general),
        medical=int(descriptor.medical),
        social=int(descriptor.social),
        from_scratch=int(descriptor.from_scratch),
        size_bucket=size_bucket(descriptor.size_millions),
    )


def load_registry(path: str | Path | None = None) -> dict[str, ModelDescriptor]:
    """Load model descriptors, bundled registry by default."""
    if path is None:
        raw = resources.files("ade_eval.data").joinpath("model_registry.json").read_text("utf-8")
    else:
        raw = Path(path).read_text("utf-8")
    payload = json.loads(raw)
    registry = {}
    for entry in payload["models"]:
        desc = ModelDescriptor(
            name=entry["name"],
            category=entry["category"],
            from_scratch=bool(entry["from_scratch"]),
            general=bool(entry["general"]),
            medical=bool(entry["medical"]),
            social=bool(entry["social"]),
            size_millions=int(entry["size_millions"]),
        )
        if desc.name in registry:
            raise ValueError(f"duplicate model {desc.name!r} in registry")
        registry[desc.name] = desc
    return registry
