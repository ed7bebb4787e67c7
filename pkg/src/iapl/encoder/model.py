"""
Трансформер с адаптерами, обучаемыми токенами и подсказкой на входе первого блока.
Последовательность блока: [подсказки; CLS; токены изображения].
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import torch
import torch.nn as nn

from ..errors import ArgumentError
from ..imaging import Image
from .blocks import MLPAdapter, TransformerBlock, gated_fuse
from .config import EncoderConfig
from .dtype import EncoderOutput, TokenSeq

logger = logging.getLogger(__name__)

GATE_INIT = 1e-6

# группы параметров, которые не относятся к основе трансформера
_ADAPTED_PREFIXES = ("tokens.", "gates.", "head.")


def adapter_schedule(depth: int, n_adapters: int,
                     span: Optional[Tuple[int, int, int]] = None) -> Tuple[int, ...]:
    """Номера блоков (с 1) с адаптерами: round(k*depth/N_a) либо явный (start, end, stride)"""
    if span is not None:
        start, end, stride = span
        if not 1 <= start <= end <= depth or stride < 1:
            raise ArgumentError(f"invalid adapter span {span} for depth {depth}")
        return tuple(range(start, end + 1, stride))
    if not 1 <= n_adapters <= depth:
        raise ArgumentError(f"n_adapters must lie in [1, {depth}], got {n_adapters}")
    # округление половины вверх в целых числах
    blocks = [(2 * k * depth + n_adapters) // (2 * n_adapters) for k in range(1, n_adapters + 1)]
    return tuple(sorted(set(blocks)))


def to_pixels(views: Sequence[Image], dtype: torch.dtype = torch.float32) -> torch.Tensor:
    """Список изображений (H, W, 3) в тензор (B, 3, H, W)"""
    if len(views) == 0:
        raise ArgumentError("no views given")
    stacked = np.stack([v.data for v in views]).transpose(0, 3, 1, 2)
    return torch.from_numpy(np.ascontiguousarray(stacked)).to(dtype)


def patchify(pixels: torch.Tensor, patch: int) -> torch.Tensor:
    """(B, 3, H, W) -> (B, N, 3*p*p); патч разворачивается по каналам, затем построчно"""
    B, C, H, W = pixels.shape
    rows, cols = H // patch, W // patch
    x = pixels.reshape(B, C, rows, patch, cols, patch)
    return x.permute(0, 2, 4, 1, 3, 5).reshape(B, rows * cols, C * patch * patch)


class PromptedViT(nn.Module):
    """Кодировщик-классификатор: логит и признак CLS после финальной нормализации"""

    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        cfg.validate()
        self.cfg = cfg
        D = cfg.dim

        self.embed = nn.Linear(cfg.patch_features, D)
        self.cls = nn.Parameter(torch.zeros(1, D))
        self.pos = nn.Parameter(torch.zeros(cfg.n_image_tokens, D))

        self.schedule = adapter_schedule(cfg.depth, cfg.n_adapters, cfg.adapter_span) if cfg.use_adapters else ()
        self.blocks = nn.ModuleList([self._build_block(j) for j in range(1, cfg.depth + 1)])

        token_blocks = range(2, cfg.last_token_block + 1) if cfg.use_tokens else ()
        self.tokens = nn.ParameterDict({str(j): nn.Parameter(torch.zeros(cfg.n_tokens, D)) for j in token_blocks})
        self.gates = nn.ParameterDict({str(j): nn.Parameter(torch.zeros(D)) for j in token_blocks})

        self.norm = nn.LayerNorm(D)
        self.head = nn.Linear(D, 1)

    def _build_block(self, j: int) -> TransformerBlock:
        cfg = self.cfg
        adapter = None
        if j in self.schedule:
            adapter = MLPAdapter(cfg.dim, cfg.adapter_dim, cfg.adapter_scale, cfg.dropout_p)
        return TransformerBlock(cfg.dim, cfg.heads, adapter=adapter)

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        """Равномерно в +-1/sqrt(D), кроме адаптеров, гейтов, нормализаций и нулевого классификатора"""
        bound = 1.0 / math.sqrt(self.cfg.dim)
        norms = {id(p) for m in self.modules() if isinstance(m, nn.LayerNorm) for p in m.parameters()}
        with torch.no_grad():
            for name, param in self.named_parameters():
                if ".adapter." in name:
                    continue
                if id(param) in norms:
                    param.fill_(1.0 if name.endswith("weight") else 0.0)
                elif name.startswith("gates."):
                    param.fill_(GATE_INIT)
                elif name.startswith("head."):
                    param.zero_()
                else:
                    param.uniform_(-bound, bound, generator=generator)
            for block in self.blocks:
                if block.has_adapter:
                    block.adapter.reset_parameters(generator)

    def is_backbone(self, name: str) -> bool:
        """Параметр основы: все, кроме адаптеров, токенов, гейтов и классификатора"""
        return ".adapter." not in name and not name.startswith(_ADAPTED_PREFIXES)

    def patch_embed(self, pixels: torch.Tensor) -> TokenSeq:
        """Линейная проекция патчей плюс позиционные вложения; CLS из f_cls"""
        cfg = self.cfg
        if pixels.dim() != 4 or pixels.shape[1:] != (3, cfg.view_size, cfg.view_size):
            raise ArgumentError(f"expected views of shape (B, 3, {cfg.view_size}, {cfg.view_size}), "
                                f"got {tuple(pixels.shape)}")
        tokens = self.embed(patchify(pixels, cfg.patch)) + self.pos
        cls = self.cls.expand(pixels.shape[0], 1, cfg.dim)
        return TokenSeq(prompts=None, cls=cls, image_tokens=tokens)

    def _check_prompt(self, prompt: torch.Tensor, batch: int) -> torch.Tensor:
        if prompt.dim() == 2:
            prompt = prompt.unsqueeze(0).expand(batch, -1, -1)
        if prompt.dim() != 3 or prompt.shape[0] != batch or prompt.shape[2] != self.cfg.dim:
            raise ArgumentError(f"prompt must have shape ({batch}, M, {self.cfg.dim}), got {tuple(prompt.shape)}")
        return prompt

    def forward(self, pixels: torch.Tensor, prompt: Optional[torch.Tensor] = None,
                trace: Optional[List[int]] = None) -> EncoderOutput:
        """Прямой проход; в trace записывается длина входа каждого блока"""
        cfg = self.cfg
        seq = self.patch_embed(pixels)
        batch = pixels.shape[0]
        if prompt is not None:
            seq.prompts = self._check_prompt(prompt, batch)
        x = seq.concat()
        n_prompt = seq.n_prompts

        for j, block in enumerate(self.blocks, start=1):
            if j >= 2 and j <= cfg.last_token_block and cfg.use_tokens:
                tokens = self.tokens[str(j)].expand(batch, -1, -1)
                if n_prompt:
                    tokens = gated_fuse(x[:, :n_prompt], tokens, self.gates[str(j)])
                x = torch.cat([tokens, x[:, n_prompt:]], dim=1)
                n_prompt = cfg.n_tokens
            elif j > cfg.last_token_block and n_prompt:
                x = x[:, n_prompt:]
                n_prompt = 0
            if trace is not None:
                trace.append(x.shape[1])
            x = block(x)

        features = self.norm(x[:, n_prompt])
        return EncoderOutput(logits=self.head(features).squeeze(-1), features=features)

    def parameter_counts(self) -> dict:
        """Число скаляров по группам: основа, адаптеры, токены и гейты, классификатор"""
        counts = {"backbone": 0, "adapters": 0, "tokens": 0, "head": 0}
        for name, p in self.named_parameters():
            if ".adapter." in name:
                counts["adapters"] += p.numel()
            elif name.startswith(("tokens.", "gates.")):
                counts["tokens"] += p.numel()
            elif name.startswith("head."):
                counts["head"] += p.numel()
            else:
                counts["backbone"] += p.numel()
        return counts
