"""
Конфигурация адаптации токенов на тесте и результат предсказания.
"""
from dataclasses import dataclass

from ..errors import ConfigError

LOSS_KINDS = ("averaged", "pointwise")


@dataclass
class TtaConfig:
    """N_v видов, m уверенных, T шагов Adam с шагом lr"""
    n_views: int = 32
    m: int = 6
    steps: int = 2
    lr: float = 5e-3
    loss_kind: str = "averaged"
    enabled: bool = True
    ovs: bool = True
    conf_sel: bool = True

    def validate(self) -> None:
        if self.n_views < 1:
            raise ConfigError(f"n_views must be at least 1, got {self.n_views}")
        if not 1 <= self.m <= self.n_views:
            raise ConfigError(f"m must lie in [1, n_views], got {self.m}")
        if self.steps < 0:
            raise ConfigError(f"steps must be non-negative, got {self.steps}")
        if self.lr < 0:
            raise ConfigError(f"lr must be non-negative, got {self.lr}")
        if self.loss_kind not in LOSS_KINDS:
            raise ConfigError(f"loss_kind must be one of {LOSS_KINDS}, got {self.loss_kind!r}")


@dataclass
class Prediction:
    """Итоговое решение по изображению; label_hat = [prob >= 0.5]"""
    logit: float
    prob: float
    confidence: float
    view_index: int
    label_hat: int
    loss_before: float = float("nan")
    loss_after: float = float("nan")
    tuned: bool = False
