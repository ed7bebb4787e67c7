"""
Высокочастотные фильтры семейства SRM.
Подавляют содержание изображения и выделяют следы генератора.
"""
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy import ndimage

from ..errors import ArgumentError
from .dtype import Image, ResidualStack


@dataclass(frozen=True)
class HighPassKernel:
    """Целочисленное ядро и его константа квантования"""
    name: str
    weights: np.ndarray
    q: float

    @property
    def normalized(self) -> np.ndarray:
        return self.weights / self.q


def _first_order() -> HighPassKernel:
    return HighPassKernel("first_h", np.array([[-1.0, 1.0]]), 1.0)


def _second_order_h() -> HighPassKernel:
    return HighPassKernel("second_h", np.array([[1.0, -2.0, 1.0]]), 2.0)


def _second_order_v() -> HighPassKernel:
    return HighPassKernel("second_v", np.array([[1.0], [-2.0], [1.0]]), 2.0)


def _kb() -> HighPassKernel:
    weights = np.array([[-1.0, 2.0, -1.0],
                        [2.0, -4.0, 2.0],
                        [-1.0, 2.0, -1.0]])
    return HighPassKernel("kb", weights, 4.0)


FILTER_SETS: Dict[str, Tuple[HighPassKernel, ...]] = {
    "srm3": (_first_order(), _second_order_h(), _second_order_v(), _kb()),
}


def kernel_bank(filter_set: str = "srm3") -> Tuple[HighPassKernel, ...]:
    if filter_set not in FILTER_SETS:
        raise ArgumentError(f"unknown filter set {filter_set!r}")
    return FILTER_SETS[filter_set]


def _valid_window(shape: Tuple[int, int], kernel: np.ndarray) -> np.ndarray:
    """Маска позиций, где окно ядра целиком лежит внутри патча"""
    mask = np.zeros(shape, dtype=bool)
    kh, kw = kernel.shape
    ch, cw = kh // 2, kw // 2
    mask[ch:shape[0] - kh + ch + 1, cw:shape[1] - kw + cw + 1] = True
    return mask


def highpass_residual(patch: Image, filter_set: str = "srm3") -> ResidualStack:
    """Корреляция каждого канала с каждым ядром, деление на q.
    Выход того же размера; позиции, где окно выходит за край, обнуляются."""
    kernels = kernel_bank(filter_set)
    shape = (patch.height, patch.width)
    masks = [_valid_window(shape, k.weights) for k in kernels]
    planes = np.zeros((3 * len(kernels),) + shape)
    for c in range(3):
        channel = patch.data[:, :, c]
        for k, kernel in enumerate(kernels):
            response = ndimage.correlate(channel, kernel.normalized, mode="constant", cval=0.0)
            planes[c * len(kernels) + k] = np.where(masks[k], response, 0.0)
    return ResidualStack(residuals=planes, filter_ids=tuple(k.name for k in kernels))
