"""
Кодировщик: трансформер с MLP-адаптерами, обучаемыми токенами и гейтами.
"""
from .config import EncoderConfig
from .dtype import EncoderOutput, TokenSeq
from .helpers import create_desk_config, create_full_scale_config, create_tiny_config
from .blocks import MLPAdapter, adapter_forward, gated_fuse
from .model import GATE_INIT, PromptedViT, adapter_schedule, patchify, to_pixels

__all__ = [
    'EncoderConfig',
    'EncoderOutput',
    'TokenSeq',
    'create_desk_config',
    'create_full_scale_config',
    'create_tiny_config',
    'MLPAdapter',
    'adapter_forward',
    'gated_fuse',
    'GATE_INIT',
    'PromptedViT',
    'adapter_schedule',
    'patchify',
    'to_pixels',
]
