"""
Канальный гейт, передающий подсказки предыдущего блока в следующий.
"""
import torch

from ...errors import ArgumentError


def gated_fuse(prev_prompts: torch.Tensor, tokens: torch.Tensor, alpha: torch.Tensor) -> torch.Tensor:
    """P = alpha * prev + T; alpha размера D применяется к каждой строке"""
    if prev_prompts.shape[-2:] != tokens.shape[-2:]:
        raise ArgumentError(f"prompt shape {tuple(prev_prompts.shape)} does not match tokens {tuple(tokens.shape)}")
    if alpha.dim() != 1 or alpha.shape[0] != prev_prompts.shape[-1]:
        raise ArgumentError(f"gate must have shape ({prev_prompts.shape[-1]},), got {tuple(alpha.shape)}")
    return alpha * prev_prompts + tokens
