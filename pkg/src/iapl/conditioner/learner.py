"""
Conditional Information Learner.
Из самого насыщенного патча вида извлекаются условие подделки C_f и условие изображения C_i;
вместе с адаптивными токенами A они образуют подсказку первого блока.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import torch
import torch.nn as nn

from ..errors import ArgumentError
from ..imaging import Image, ResidualStack, highpass_residual, partition_patches, select_richest_patch
from ..imaging.dtype import PatchGrid
from .config import CilConfig
from .extractor import ResidualCNN, residual_tensor


@dataclass
class ConditionPair:
    """Условия одного вида (или батча видов) и позиция выбранного патча"""
    c_f: torch.Tensor
    c_i: torch.Tensor
    source_position: Tuple[int, int] = (0, 0)


def select_condition_patch(view: Image, cfg: CilConfig) -> Tuple[Image, Tuple[int, int]]:
    """Самый насыщенный патч среди первых N_p патчей вида"""
    if view.height < cfg.cond_patch or view.width < cfg.cond_patch:
        raise ArgumentError(f"view {view.height}x{view.width} is smaller than cond_patch {cfg.cond_patch}")
    grid = partition_patches(view, cfg.cond_patch)
    budget = cfg.patch_budget(min(view.height, view.width))
    if budget < len(grid):
        grid = PatchGrid(grid.patches[:budget], grid.positions[:budget], grid.patch, grid.rows, grid.cols)
    return select_richest_patch(grid)


def view_residuals(view: Image, cfg: CilConfig) -> Tuple[ResidualStack, Tuple[int, int]]:
    patch, position = select_condition_patch(view, cfg)
    return highpass_residual(patch, cfg.filter_set), position


def aux_logit(c_f: torch.Tensor, head: nn.Linear) -> torch.Tensor:
    """w_aux . C_f + b_aux"""
    return head(c_f).squeeze(-1)


def build_prompt(cond: ConditionPair, adaptive_tokens: torch.Tensor,
                 alpha_f: torch.Tensor, alpha_i: torch.Tensor) -> torch.Tensor:
    """Строка 0: alpha_f * C_f + A[0]; строка 1: alpha_i * C_i + A[1]"""
    D = adaptive_tokens.shape[-1]
    if adaptive_tokens.shape != (2, D):
        raise ArgumentError(f"adaptive tokens must have shape (2, D), got {tuple(adaptive_tokens.shape)}")
    for name, t in (("C_f", cond.c_f), ("C_i", cond.c_i)):
        if t.shape[-1] != D:
            raise ArgumentError(f"{name} has dimension {t.shape[-1]}, expected {D}")
    for name, t in (("alpha_f", alpha_f), ("alpha_i", alpha_i)):
        if t.shape != (D,):
            raise ArgumentError(f"{name} must have shape ({D},), got {tuple(t.shape)}")
    row_f = alpha_f * cond.c_f + adaptive_tokens[0]
    row_i = alpha_i * cond.c_i + adaptive_tokens[1]
    return torch.stack([row_f, row_i], dim=-2)


class ConditionalInformationLearner(nn.Module):
    """Два CNN одинаковой архитектуры с раздельными параметрами и вспомогательная голова"""

    def __init__(self, cfg: CilConfig, dim: int):
        super().__init__()
        cfg.validate()
        self.cfg = cfg
        self.forgery = ResidualCNN(cfg.in_channels, cfg.channels, dim)
        self.image = ResidualCNN(cfg.in_channels, cfg.channels, dim)
        self.aux = nn.Linear(dim, 1)

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        self.forgery.reset_parameters(generator)
        self.image.reset_parameters(generator)
        bound = 1.0 / math.sqrt(self.aux.in_features)
        with torch.no_grad():
            self.aux.weight.uniform_(-bound, bound, generator=generator)
            self.aux.bias.uniform_(-bound, bound, generator=generator)

    def residuals(self, views: Sequence[Image]) -> Tuple[torch.Tensor, List[Tuple[int, int]]]:
        """Остатки самого насыщенного патча каждого вида, тензор (B, 3K, p, p)"""
        stacks, positions = [], []
        for view in views:
            stack, position = view_residuals(view, self.cfg)
            stacks.append(stack)
            positions.append(position)
        return residual_tensor(stacks, dtype=self.aux.weight.dtype), positions

    def forward(self, residuals: torch.Tensor) -> Tuple[torch.Tensor, torch.Tensor]:
        return self.forgery(residuals), self.image(residuals)

    def extract_conditions(self, view: Image) -> ConditionPair:
        """Условия одного вида: C_f и C_i размерности D"""
        residuals, positions = self.residuals([view])
        c_f, c_i = self(residuals)
        return ConditionPair(c_f=c_f[0], c_i=c_i[0], source_position=positions[0])
