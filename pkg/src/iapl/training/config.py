"""
Конфигурация обучения и значения функции потерь.
"""
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import torch

from ..errors import ConfigError


@dataclass
class TrainConfig:
    """Параметры цикла обучения (настольный масштаб)"""
    lr: float = 1e-3
    batch: int = 16
    epochs: int = 3
    betas: Tuple[float, float] = (0.9, 0.999)
    eps: float = 1e-8
    aux_weight: float = 1.0
    seed: int = 0
    freeze_backbone: bool = False
    flip: bool = True
    progress: bool = False

    def validate(self) -> None:
        # lr = 0 допустим: прогон без изменения параметров
        if self.lr < 0:
            raise ConfigError(f"lr must be non-negative, got {self.lr}")
        if self.batch < 1:
            raise ConfigError(f"batch must be at least 1, got {self.batch}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be non-negative, got {self.epochs}")
        if self.aux_weight < 0:
            raise ConfigError(f"aux_weight must be non-negative, got {self.aux_weight}")
        if len(self.betas) != 2 or not all(0.0 <= b < 1.0 for b in self.betas):
            raise ConfigError(f"betas must be two values in [0, 1), got {self.betas}")
        if self.eps <= 0:
            raise ConfigError(f"eps must be positive, got {self.eps}")


class LossValues(NamedTuple):
    """total = l_cls + aux_weight * l_aux"""
    l_cls: torch.Tensor
    l_aux: torch.Tensor
    total: torch.Tensor
