"""
Вспомогательные функции для создания стандартных конфигураций кодировщика.
"""
from .config import EncoderConfig


def create_desk_config(**overrides) -> EncoderConfig:
    """Настольный масштаб: 6 блоков, D=64, вход 64x64"""
    cfg = EncoderConfig(**overrides)
    cfg.validate()
    return cfg


def create_tiny_config(**overrides) -> EncoderConfig:
    """Крошечная модель для проверки градиентов конечными разностями"""
    params = dict(depth=2, dim=8, heads=2, patch=4, view_size=8, adapter_dim=2,
                  n_adapters=2, last_token_block=2, n_tokens=2, dropout_p=0.0)
    params.update(overrides)
    cfg = EncoderConfig(**params)
    cfg.validate()
    return cfg


def create_full_scale_config(**overrides) -> EncoderConfig:
    """Полный масштаб ViT-L/14; только для справки, здесь не обучается"""
    params = dict(depth=24, dim=1024, heads=16, patch=14, view_size=224, adapter_dim=64,
                  adapter_scale=0.1, n_adapters=6, last_token_block=9, n_tokens=2,
                  adapter_span=(4, 24, 4))
    params.update(overrides)
    cfg = EncoderConfig(**params)
    cfg.validate()
    return cfg

