"""
Детектор: условный извлекатель, подсказка первого блока и кодировщик-классификатор.
Имена параметров совпадают с именами тензоров контрольной точки.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import torch
import torch.nn as nn

from .conditioner import CilConfig, ConditionPair, ConditionalInformationLearner, aux_logit, build_prompt
from .encoder import GATE_INIT, EncoderConfig, PromptedViT, to_pixels
from .imaging import Image

logger = logging.getLogger(__name__)


@dataclass
class ViewBatch:
    """Подготовленные виды: пиксели (B, 3, H, W) и остатки выбранных патчей (B, 3K, p, p)"""
    pixels: torch.Tensor
    residuals: Optional[torch.Tensor]
    positions: List[Tuple[int, int]]

    def __len__(self) -> int:
        return self.pixels.shape[0]

    def select(self, indices: Sequence[int]) -> "ViewBatch":
        index = torch.as_tensor(list(indices), dtype=torch.long)
        residuals = None if self.residuals is None else self.residuals[index]
        return ViewBatch(self.pixels[index], residuals, [self.positions[i] for i in indices])


class DetectorOutput(NamedTuple):
    logits: torch.Tensor
    aux_logits: Optional[torch.Tensor]
    features: torch.Tensor


class IAPLDetector(nn.Module):
    def __init__(self, encoder_cfg: EncoderConfig, cil_cfg: Optional[CilConfig] = None):
        super().__init__()
        encoder_cfg.validate()
        cil_cfg = cil_cfg or CilConfig()
        self.encoder_cfg = encoder_cfg
        self.cil_cfg = cil_cfg
        D = encoder_cfg.dim

        self.encoder = PromptedViT(encoder_cfg)
        self.adaptive = encoder_cfg.prompt_mode == "adaptive"
        if self.adaptive:
            cil_cfg.validate(encoder_cfg.view_size)
            self.cil = ConditionalInformationLearner(cil_cfg, D)
            self.gates = nn.ParameterDict({
                "alpha_f": nn.Parameter(torch.full((D,), GATE_INIT)),
                "alpha_i": nn.Parameter(torch.full((D,), GATE_INIT)),
            })
        if encoder_cfg.prompt_mode != "none":
            self.adaptive_tokens = nn.Parameter(torch.zeros(2, D))

    @property
    def dim(self) -> int:
        return self.encoder_cfg.dim

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        self.encoder.reset_parameters(generator)
        if self.adaptive:
            self.cil.reset_parameters(generator)
            with torch.no_grad():
                for gate in self.gates.values():
                    gate.fill_(GATE_INIT)
        if self.encoder_cfg.prompt_mode != "none":
            bound = 1.0 / math.sqrt(self.dim)
            with torch.no_grad():
                self.adaptive_tokens.uniform_(-bound, bound, generator=generator)

    def backbone_names(self) -> List[str]:
        return [f"encoder.{name}" for name, _ in self.encoder.named_parameters() if self.encoder.is_backbone(name)]

    def prepare(self, views: Sequence[Image]) -> ViewBatch:
        """Пиксели и, при условных подсказках, остатки самого насыщенного патча каждого вида"""
        dtype = self.encoder.cls.dtype
        pixels = to_pixels(views, dtype)
        if not self.adaptive:
            return ViewBatch(pixels, None, [(0, 0)] * len(views))
        residuals, positions = self.cil.residuals(views)
        return ViewBatch(pixels, residuals, positions)

    def conditions(self, batch: ViewBatch) -> Optional[ConditionPair]:
        """C_f и C_i по батчу, формы (B, D)"""
        if not self.adaptive:
            return None
        c_f, c_i = self.cil(batch.residuals)
        return ConditionPair(c_f=c_f, c_i=c_i)

    def prompt(self, cond: Optional[ConditionPair], adaptive_tokens: Optional[torch.Tensor] = None
               ) -> Optional[torch.Tensor]:
        mode = self.encoder_cfg.prompt_mode
        if mode == "none":
            return None
        tokens = self.adaptive_tokens if adaptive_tokens is None else adaptive_tokens
        if mode == "tokens":
            return tokens
        cfg = self.cil_cfg
        c_f = cond.c_f if cfg.use_forgery else torch.zeros_like(cond.c_f)
        c_i = cond.c_i if cfg.use_image else torch.zeros_like(cond.c_i)
        if cfg.gated:
            alpha_f, alpha_i = self.gates["alpha_f"], self.gates["alpha_i"]
        else:
            alpha_f = alpha_i = torch.ones_like(self.gates["alpha_f"])
        return build_prompt(ConditionPair(c_f, c_i), tokens, alpha_f, alpha_i)

    def forward(self, batch: ViewBatch, adaptive_tokens: Optional[torch.Tensor] = None,
                cond: Optional[ConditionPair] = None, trace: Optional[List[int]] = None) -> DetectorOutput:
        """Логиты классификатора и вспомогательной ветви; cond можно передать заранее вычисленным"""
        if cond is None:
            cond = self.conditions(batch)
        out = self.encoder(batch.pixels, self.prompt(cond, adaptive_tokens), trace=trace)
        aux = aux_logit(cond.c_f, self.cil.aux) if cond is not None else None
        return DetectorOutput(logits=out.logits, aux_logits=aux, features=out.features)

    def logits(self, views: Sequence[Image], adaptive_tokens: Optional[torch.Tensor] = None) -> torch.Tensor:
        return self(self.prepare(views), adaptive_tokens).logits


def init_params(encoder_cfg: EncoderConfig, cil_cfg: Optional[CilConfig] = None, seed: int = 0) -> IAPLDetector:
    """Новый детектор с детерминированной инициализацией из зерна"""
    model = IAPLDetector(encoder_cfg, cil_cfg)
    generator = torch.Generator().manual_seed(seed)
    model.reset_parameters(generator)
    counts = model.encoder.parameter_counts()
    if model.adaptive:
        counts["conditioner"] = sum(p.numel() for p in model.cil.parameters())
    logger.info("initialized detector (seed %d): %s", seed,
                ", ".join(f"{k}={v}" for k, v in counts.items()))
    return model
