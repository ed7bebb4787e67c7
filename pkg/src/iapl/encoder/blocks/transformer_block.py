"""
Блок трансформера с pre-norm и необязательным адаптером при MLP.
"""
from typing import Optional

import torch
import torch.nn as nn

from .adapter import MLPAdapter
from .attention import Attention


class MLP(nn.Module):
    def __init__(self, dim: int, hidden: int):
        super().__init__()
        self.fc1 = nn.Linear(dim, hidden)
        self.act = nn.GELU()
        self.fc2 = nn.Linear(hidden, dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.fc2(self.act(self.fc1(x)))


class TransformerBlock(nn.Module):
    """x + attn(norm1(x)), затем x + mlp(norm2(x)) + adapter(norm2(x))"""

    def __init__(self, dim: int, heads: int, mlp_ratio: int = 4,
                 adapter: Optional[MLPAdapter] = None):
        super().__init__()
        self.norm1 = nn.LayerNorm(dim)
        self.attn = Attention(dim, heads)
        self.norm2 = nn.LayerNorm(dim)
        self.mlp = MLP(dim, mlp_ratio * dim)
        self.adapter = adapter

    @property
    def has_adapter(self) -> bool:
        return self.adapter is not None

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        x = x + self.attn(self.norm1(x))
        h = self.norm2(x)
        out = self.mlp(h)
        if self.adapter is not None:
            out = out + self.adapter(h)
        return x + out
