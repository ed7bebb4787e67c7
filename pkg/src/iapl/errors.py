"""
Иерархия исключений пакета.
Каждый класс наследует и встроенное исключение, которое естественно ловить вызывающему.
"""
from typing import Optional


class IaplError(Exception):
    """Базовое исключение пакета"""


class ArgumentError(IaplError, ValueError):
    """Нарушено предусловие операции"""


class ConfigError(IaplError, ValueError):
    """Некорректная конфигурация"""


class ImageFormatError(IaplError, ValueError):
    """Неподдерживаемый растровый формат"""


class CheckpointFormatError(IaplError, ValueError):
    """Поврежденный или несовместимый чекпоинт IAPL1"""


class DataError(IaplError, RuntimeError):
    """Ошибка загрузки или генерации набора данных"""


class MetricError(IaplError, ValueError):
    """Метрика не определена на переданных данных"""


class TrainingError(IaplError, RuntimeError):
    """Ошибка шага обучения (неконечный градиент)"""

    def __init__(self, message: str, tensor_name: Optional[str] = None):
        super().__init__(message)
        self.tensor_name = tensor_name


class TtaError(IaplError, RuntimeError):
    """Ошибка адаптации токенов на тестовом изображении"""

    def __init__(self, message: str, sample_id: Optional[object] = None):
        super().__init__(message)
        self.sample_id = sample_id
