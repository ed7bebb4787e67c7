"""
Конфигурация кодировщика: размеры трансформера, адаптеров и обучаемых токенов.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import ConfigError

PROMPT_MODES = ("adaptive", "tokens", "none")


@dataclass
class EncoderConfig:
    """Параметры кодировщика; значения по умолчанию соответствуют настольному масштабу"""
    depth: int = 6
    dim: int = 64
    heads: int = 4
    patch: int = 8
    view_size: int = 64
    adapter_dim: int = 8
    adapter_scale: float = 0.1
    n_adapters: int = 3
    last_token_block: int = 4
    n_tokens: int = 2
    dropout_p: float = 0.1
    # (start, end, stride), 1-based включительно; None - равные интервалы
    adapter_span: Optional[Tuple[int, int, int]] = None
    use_adapters: bool = True
    use_tokens: bool = True
    # adaptive - A и условия; tokens - только A; none - без подсказки
    prompt_mode: str = "adaptive"

    @property
    def grid(self) -> int:
        return self.view_size // self.patch

    @property
    def n_image_tokens(self) -> int:
        return self.grid ** 2

    @property
    def patch_features(self) -> int:
        return 3 * self.patch * self.patch

    def validate(self) -> None:
        """Проверяет инварианты, при нарушении бросает ConfigError"""
        if self.depth < 1 or self.dim < 1 or self.heads < 1:
            raise ConfigError("depth, dim and heads must be positive")
        if self.dim % self.heads != 0:
            raise ConfigError(f"dim {self.dim} is not divisible by heads {self.heads}")
        if not 1 <= self.adapter_dim < self.dim:
            raise ConfigError(f"adapter_dim must satisfy 1 <= adapter_dim < dim, got {self.adapter_dim}")
        if not 1 <= self.n_adapters <= self.depth:
            raise ConfigError(f"n_adapters must lie in [1, depth], got {self.n_adapters}")
        if self.use_tokens and not 2 <= self.last_token_block <= self.depth:
            raise ConfigError(f"last_token_block must lie in [2, depth], got {self.last_token_block}")
        if self.n_tokens < 1:
            raise ConfigError(f"n_tokens must be positive, got {self.n_tokens}")
        if self.patch < 1 or self.view_size < self.patch or self.view_size % self.patch != 0:
            raise ConfigError(f"view_size {self.view_size} must be a multiple of patch {self.patch}")
        if not 0.0 <= self.dropout_p < 1.0:
            raise ConfigError(f"dropout_p must lie in [0, 1), got {self.dropout_p}")
        if self.adapter_span is not None:
            if len(self.adapter_span) != 3:
                raise ConfigError("adapter_span must be (start, end, stride)")
            start, end, stride = self.adapter_span
            if not 1 <= start <= end <= self.depth or stride < 1:
                raise ConfigError(f"invalid adapter_span {self.adapter_span} for depth {self.depth}")
        if self.prompt_mode not in PROMPT_MODES:
            raise ConfigError(f"prompt_mode must be one of {PROMPT_MODES}, got {self.prompt_mode!r}")
        if self.prompt_mode != "none" and self.use_tokens and self.n_tokens != 2:
            raise ConfigError("the first-block prompt has 2 rows, so n_tokens must be 2 when prompts and tokens are both used")
