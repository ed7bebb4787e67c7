"""
Оптимизатор Adam с проверкой конечности градиентов.
"""
from typing import Iterable, List, Tuple

import torch
import torch.nn as nn

from ..errors import TrainingError


class AdamState:
    """Именованные параметры и состояние Adam (моменты, счетчик шагов)"""

    def __init__(self, named_params: Iterable[Tuple[str, nn.Parameter]], lr: float,
                 betas: Tuple[float, float] = (0.9, 0.999), eps: float = 1e-8):
        named = list(named_params)
        self.names: List[str] = [name for name, _ in named]
        self.params: List[nn.Parameter] = [p for _, p in named]
        self.optimizer = torch.optim.Adam(self.params, lr=lr, betas=tuple(betas), eps=eps)
        self.steps = 0

    def zero_grad(self) -> None:
        self.optimizer.zero_grad(set_to_none=True)

    def moments(self, name: str) -> Tuple[torch.Tensor, torch.Tensor]:
        """Первый и второй моменты параметра"""
        state = self.optimizer.state[self.params[self.names.index(name)]]
        return state["exp_avg"], state["exp_avg_sq"]


def adam_step(state: AdamState) -> None:
    """Один шаг Adam с поправкой смещения; нечисловой градиент - TrainingError с именем тензора"""
    for name, param in zip(state.names, state.params):
        if param.grad is not None and not torch.isfinite(param.grad).all():
            raise TrainingError(f"non-finite gradient in {name}", tensor_name=name)
    state.optimizer.step()
    state.steps += 1
