"""
Адаптация токенов на тесте: уверенность, энтропийные потери, выбор оптимального вида.
"""
from .config import LOSS_KINDS, Prediction, TtaConfig
from .entropy import (averaged_entropy, binary_entropy, confidence, consistency_gap,
                      pointwise_entropy, select_confident)
from .tuner import optimal_view, predict_image, tune_tokens

__all__ = [
    'LOSS_KINDS',
    'Prediction',
    'TtaConfig',
    'averaged_entropy',
    'binary_entropy',
    'confidence',
    'consistency_gap',
    'pointwise_entropy',
    'select_confident',
    'optimal_view',
    'predict_image',
    'tune_tokens',
]
