"""
Типы данных кодировщика.
"""
from dataclasses import dataclass
from typing import NamedTuple, Optional

import torch


@dataclass
class TokenSeq:
    """Последовательность токенов: подсказки, CLS, токены изображения (по батчу)"""
    prompts: Optional[torch.Tensor]
    cls: torch.Tensor
    image_tokens: torch.Tensor

    @property
    def n_prompts(self) -> int:
        return 0 if self.prompts is None else self.prompts.shape[1]

    def concat(self) -> torch.Tensor:
        parts = [self.cls, self.image_tokens]
        if self.prompts is not None:
            parts.insert(0, self.prompts)
        return torch.cat(parts, dim=1)


class EncoderOutput(NamedTuple):
    logits: torch.Tensor
    features: torch.Tensor
