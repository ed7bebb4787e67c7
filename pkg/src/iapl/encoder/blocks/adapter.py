"""
MLP-адаптер: понижающая проекция, ReLU, dropout, повышающая проекция, масштаб s.
"""
import math
from typing import Optional

import torch
import torch.nn as nn
import torch.nn.functional as F


def adapter_forward(x: torch.Tensor, down: torch.Tensor, up: torch.Tensor, scale: float,
                    dropout_p: float = 0.0, training: bool = False) -> torch.Tensor:
    """delta = s * dropout(ReLU(x @ W_down)) @ W_up; в режиме оценки dropout тождественен"""
    hidden = F.dropout(F.relu(x @ down), p=dropout_p, training=training)
    return scale * (hidden @ up)


class MLPAdapter(nn.Module):
    """Параллельный адаптер при MLP блока"""

    def __init__(self, dim: int, adapter_dim: int, scale: float = 0.1, dropout_p: float = 0.1):
        super().__init__()
        self.scale = scale
        self.dropout_p = dropout_p
        self.down = nn.Parameter(torch.empty(dim, adapter_dim))
        self.up = nn.Parameter(torch.zeros(adapter_dim, dim))

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        """Kaiming-uniform (a=sqrt(5)) по входной размерности D для W_down, нули для W_up"""
        fan_in = self.down.shape[0]
        gain = math.sqrt(2.0 / (1.0 + 5.0))
        bound = gain * math.sqrt(3.0 / fan_in)
        with torch.no_grad():
            self.down.uniform_(-bound, bound, generator=generator)
            self.up.zero_()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return adapter_forward(x, self.down, self.up, self.scale, self.dropout_p, self.training)
