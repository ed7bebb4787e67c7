"""
Образцы и описания наборов данных.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional

from ..errors import ArgumentError, ConfigError
from ..imaging import Image

REAL = "real"
FAKE_FAMILIES = ("fakeA", "fakeB")
EXTERNAL = "external"


@dataclass(eq=False)
class Sample:
    """Изображение с меткой (0 - настоящее, 1 - сгенерированное) и семейством"""
    image: Image
    label: int
    family: str
    sample_id: str = ""

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ArgumentError(f"label must be 0 or 1, got {self.label}")
        if (self.family == REAL) != (self.label == 0) and self.family != EXTERNAL:
            raise ArgumentError(f"family {self.family!r} is inconsistent with label {self.label}")


@dataclass
class DatasetSpec:
    """synthetic: числа образцов по семействам; directory: корень с real/ и fake/"""
    kind: str = "synthetic"
    counts: Dict[str, int] = field(default_factory=lambda: {REAL: 100, "fakeA": 100})
    size: int = 64
    seed: int = 0
    root: Optional[str] = None
    checker_amplitude: float = 0.03
    sine_amplitude: float = 0.045
    quant_strength: float = 0.02

    def validate(self) -> None:
        if self.kind not in ("synthetic", "directory"):
            raise ConfigError(f"dataset kind must be synthetic or directory, got {self.kind!r}")
        if self.kind == "directory":
            if not self.root:
                raise ConfigError("directory datasets need a root path")
            return
        if self.size < 16:
            raise ConfigError(f"synthetic image size must be at least 16, got {self.size}")
        for family, count in self.counts.items():
            if family != REAL and family not in FAKE_FAMILIES:
                raise ConfigError(f"unknown family {family!r}")
            if count < 0:
                raise ConfigError(f"count for {family} must be non-negative, got {count}")
