"""
CNN-экстрактор условий по высокочастотным остаткам.
Каждая ступень: свертка 3x3 с шагом 2 и ReLU; затем глобальное среднее и линейный слой в D.
"""
import math
from typing import Optional, Sequence, Union

import numpy as np
import torch
import torch.nn as nn

from ..errors import ArgumentError
from ..imaging import ResidualStack


class ResidualCNN(nn.Module):
    def __init__(self, in_channels: int, channels: Sequence[int], dim: int):
        super().__init__()
        self.in_channels = in_channels
        layers = []
        prev = in_channels
        for c in channels:
            layers += [nn.Conv2d(prev, c, kernel_size=3, stride=2, padding=1), nn.ReLU()]
            prev = c
        self.stages = nn.Sequential(*layers)
        self.proj = nn.Linear(prev, dim)

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        """Равномерно в +-1/sqrt(fan_in) для весов и смещений каждого слоя"""
        with torch.no_grad():
            for module in list(self.stages) + [self.proj]:
                if isinstance(module, nn.Conv2d):
                    fan_in = module.in_channels * module.kernel_size[0] * module.kernel_size[1]
                elif isinstance(module, nn.Linear):
                    fan_in = module.in_features
                else:
                    continue
                bound = 1.0 / math.sqrt(fan_in)
                module.weight.uniform_(-bound, bound, generator=generator)
                module.bias.uniform_(-bound, bound, generator=generator)

    def forward(self, residuals: torch.Tensor) -> torch.Tensor:
        if residuals.dim() != 4 or residuals.shape[1] != self.in_channels:
            raise ArgumentError(f"expected residuals with {self.in_channels} planes, got {tuple(residuals.shape)}")
        features = self.stages(residuals).mean(dim=(2, 3))
        return self.proj(features)


def residual_tensor(stacks: Sequence[ResidualStack], dtype: torch.dtype = torch.float32) -> torch.Tensor:
    """Набор остатков в тензор (B, 3K, h, w)"""
    return torch.from_numpy(np.stack([s.residuals for s in stacks])).to(dtype)


def cnn_forward(residuals: Union[ResidualStack, torch.Tensor], cnn: ResidualCNN) -> torch.Tensor:
    """Вектор условия R^D для одного набора остатков"""
    if isinstance(residuals, ResidualStack):
        x = residual_tensor([residuals], dtype=next(cnn.parameters()).dtype)
    else:
        x = residuals.unsqueeze(0) if residuals.dim() == 3 else residuals
    return cnn(x).squeeze(0)
