"""
iapl - детектор сгенерированных изображений с адаптивными подсказками и настройкой токенов на тесте.
"""
from .errors import (ArgumentError, CheckpointFormatError, ConfigError, DataError, IaplError,
                     ImageFormatError, MetricError, TrainingError, TtaError)
from .detector import DetectorOutput, IAPLDetector, ViewBatch, init_params

__all__ = [
    'ArgumentError',
    'CheckpointFormatError',
    'ConfigError',
    'DataError',
    'IaplError',
    'ImageFormatError',
    'MetricError',
    'TrainingError',
    'TtaError',
    'DetectorOutput',
    'IAPLDetector',
    'ViewBatch',
    'init_params',
]
