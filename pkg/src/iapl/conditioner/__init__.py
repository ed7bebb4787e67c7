"""
Извлечение условной информации из высокочастотных остатков и сборка подсказки.
"""
from .config import CilConfig
from .extractor import ResidualCNN, cnn_forward, residual_tensor
from .learner import (ConditionPair, ConditionalInformationLearner, aux_logit, build_prompt,
                      select_condition_patch, view_residuals)

__all__ = [
    'CilConfig',
    'ResidualCNN',
    'cnn_forward',
    'residual_tensor',
    'ConditionPair',
    'ConditionalInformationLearner',
    'aux_logit',
    'build_prompt',
    'select_condition_patch',
    'view_residuals',
]
