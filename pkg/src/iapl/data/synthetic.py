"""
Синтетические семейства изображений.
Настоящие: сумма октав гладкого шума; fakeA: шахматный след периода 2;
fakeB: диагональная синусоида вблизи частоты Найквиста и квантование средних по блокам 8x8.
Локально след fakeB похож на шахматный, но при уменьшении вида он уходит в низкие частоты.
"""
import math

import numpy as np

from ..errors import ArgumentError
from ..imaging import Image, resize_bilinear
from .dtype import FAKE_FAMILIES, REAL

FAMILY_IDS = {REAL: 0, "fakeA": 1, "fakeB": 2}

# циклов на пиксель по каждой оси; биения с шахматкой периода 2 дают огибающую периода 20
SINE_FREQUENCY = 0.45
# средний модуль огибающей 2/pi, итоговая амплитуда около 0.03 как у fakeA
SINE_AMPLITUDE = 0.045
QUANT_BLOCK = 8


def sample_rng(seed: int, family: str, index: int) -> np.random.Generator:
    """Независимый генератор для каждого (seed, семейство, номер)"""
    return np.random.default_rng(np.random.SeedSequence([seed, FAMILY_IDS.get(family, 99), index]))


def gen_real(rng: np.random.Generator, size: int) -> Image:
    """3-6 октав шума значений, билинейно растянутых до size, нормировка каналов в [0, 1]"""
    if size < 16:
        raise ArgumentError(f"size must be at least 16, got {size}")
    octaves = int(rng.integers(3, 7))
    acc = np.zeros((size, size, 3))
    for o in range(octaves):
        cells = min(2 ** (o + 1), max(2, size // 4))
        grid = Image(rng.random((cells, cells, 3)))
        acc += 0.5 ** o * resize_bilinear(grid, size, size).data

    lo = acc.min(axis=(0, 1), keepdims=True)
    span = acc.max(axis=(0, 1), keepdims=True) - lo
    span[span == 0] = 1.0
    return Image(np.clip((acc - lo) / span, 0.0, 1.0))


def checkerboard(size: int, amplitude: float) -> np.ndarray:
    """+-amplitude с периодом 2 по обеим осям, одинаково во всех каналах"""
    sign = np.where(np.add.outer(np.arange(size), np.arange(size)) % 2 == 0, 1.0, -1.0)
    return amplitude * np.repeat(sign[:, :, None], 3, axis=2)


def block_mean_quantize(data: np.ndarray, step: float, block: int = QUANT_BLOCK) -> np.ndarray:
    """Сдвигает каждый блок так, чтобы его среднее стало кратно step"""
    if step <= 0:
        return data.copy()
    out = data.copy()
    h, w, _ = data.shape
    for y in range(0, h, block):
        for x in range(0, w, block):
            tile = out[y:y + block, x:x + block]
            mean = tile.mean(axis=(0, 1))
            tile += np.round(mean / step) * step - mean
    return out


def gen_fake(rng: np.random.Generator, family: str, size: int, checker_amplitude: float = 0.03,
             sine_amplitude: float = SINE_AMPLITUDE, quant_strength: float = 0.02) -> Image:
    """Основа gen_real с тем же генератором плюс след семейства; результат обрезается в [0, 1]"""
    if family not in FAKE_FAMILIES:
        raise ArgumentError(f"unknown fake family {family!r}")
    base = gen_real(rng, size).data
    if family == "fakeA":
        data = base + checkerboard(size, checker_amplitude)
    else:
        phase = rng.uniform(0.0, 2.0 * math.pi)
        diag = np.add.outer(np.arange(size), np.arange(size))
        wave = sine_amplitude * np.sin(2.0 * math.pi * SINE_FREQUENCY * diag + phase)
        data = block_mean_quantize(base + wave[:, :, None], quant_strength)
    return Image(np.clip(data, 0.0, 1.0))


def generate(family: str, seed: int, index: int, size: int, **artifacts) -> Image:
    rng = sample_rng(seed, family, index)
    if family == REAL:
        return gen_real(rng, size)
    return gen_fake(rng, family, size, **artifacts)
