"""
Конфигурация извлечения условной информации.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import ConfigError
from ..imaging.highpass import FILTER_SETS


@dataclass
class CilConfig:
    """Размер патча, бюджет патчей, каналы CNN и набор фильтров"""
    cond_patch: int = 32
    # None - выводится из размера вида: (view_size // cond_patch)^2
    n_patches: Optional[int] = None
    channels: Tuple[int, ...] = (16, 32, 64, 64)
    filter_set: str = "srm3"
    use_forgery: bool = True
    use_image: bool = True
    gated: bool = True

    @property
    def in_channels(self) -> int:
        return 3 * len(FILTER_SETS[self.filter_set])

    def patch_budget(self, view_size: int) -> int:
        if self.n_patches is not None:
            return self.n_patches
        return (view_size // self.cond_patch) ** 2

    def validate(self, view_size: Optional[int] = None) -> None:
        if self.cond_patch < 1:
            raise ConfigError(f"cond_patch must be positive, got {self.cond_patch}")
        if self.filter_set not in FILTER_SETS:
            raise ConfigError(f"unknown filter set {self.filter_set!r}")
        if len(self.channels) < 1 or any(c < 1 for c in self.channels):
            raise ConfigError(f"invalid CNN channels {self.channels}")
        if self.n_patches is not None and self.n_patches < 1:
            raise ConfigError(f"n_patches must be at least 1, got {self.n_patches}")
        if view_size is not None:
            if view_size < self.cond_patch:
                raise ConfigError(f"view_size {view_size} is smaller than cond_patch {self.cond_patch}")
            if self.n_patches is not None and self.n_patches > (view_size // self.cond_patch) ** 2:
                raise ConfigError(f"n_patches {self.n_patches} exceeds the patches of a {view_size} view")
