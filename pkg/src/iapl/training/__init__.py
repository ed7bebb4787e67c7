"""
Функции потерь, цикл обучения, проверка градиентов и контрольные точки.
"""
from .config import LossValues, TrainConfig
from .losses import bce_loss, total_loss
from .optim import AdamState, adam_step
from .trainer import TrainLog, TrainRecord, train, trainable_parameters
from .gradcheck import GradCheckReport, finite_difference_report, grad_check, relative_error
from .checkpoint import MAGIC, decode_tensors, encode_tensors, load_checkpoint, save_checkpoint

__all__ = [
    'LossValues',
    'TrainConfig',
    'bce_loss',
    'total_loss',
    'AdamState',
    'adam_step',
    'TrainLog',
    'TrainRecord',
    'train',
    'trainable_parameters',
    'GradCheckReport',
    'finite_difference_report',
    'grad_check',
    'relative_error',
    'MAGIC',
    'decode_tensors',
    'encode_tensors',
    'load_checkpoint',
    'save_checkpoint',
]
