from .adapter import MLPAdapter, adapter_forward
from .attention import Attention
from .transformer_block import MLP, TransformerBlock
from .prompt_gate import gated_fuse

__all__ = ['MLPAdapter', 'adapter_forward', 'Attention', 'MLP', 'TransformerBlock', 'gated_fuse']
