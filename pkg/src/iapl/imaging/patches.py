"""
Разбиение изображения на патчи и оценка насыщенности текстуры через ДКП.
"""
from typing import Tuple

import numpy as np
from scipy import fft

from ..errors import ArgumentError
from .dtype import Image, PatchGrid


def partition_patches(img: Image, patch: int) -> PatchGrid:
    """Неперекрывающееся разбиение от левого верхнего угла; остатки отбрасываются"""
    if patch < 1:
        raise ArgumentError(f"patch must be positive, got {patch}")
    if img.height < patch or img.width < patch:
        raise ArgumentError(f"image {img.height}x{img.width} is smaller than patch {patch}")

    rows, cols = img.height // patch, img.width // patch
    patches, positions = [], []
    for r in range(rows):
        for c in range(cols):
            patches.append(img.crop(c * patch, r * patch, patch))
            positions.append((r, c))
    return PatchGrid(patches=patches, positions=positions, patch=patch, rows=rows, cols=cols)


def dct2(block: np.ndarray) -> np.ndarray:
    """Ортонормированное двумерное ДКП-II"""
    block = np.asarray(block, dtype=np.float64)
    if block.ndim != 2 or block.shape[0] != block.shape[1] or block.shape[0] < 1:
        raise ArgumentError(f"dct2 expects a non-empty square matrix, got {block.shape}")
    return fft.dctn(block, type=2, norm="ortho")


def idct2(coeffs: np.ndarray) -> np.ndarray:
    """Обратное к dct2"""
    return fft.idctn(np.asarray(coeffs, dtype=np.float64), type=2, norm="ortho")


def high_band_mask(side: int) -> np.ndarray:
    """Коэффициенты с u + v >= side/4"""
    index = np.arange(side)
    return np.add.outer(index, index) >= side / 4


def dct_richness(patch: Image) -> float:
    """Сумма модулей высокочастотных коэффициентов ДКП яркости"""
    if patch.height != patch.width:
        raise ArgumentError(f"patch must be square, got {patch.height}x{patch.width}")
    coeffs = dct2(patch.gray())
    return float(np.abs(coeffs[high_band_mask(patch.height)]).sum())


def select_richest_patch(grid: PatchGrid) -> Tuple[Image, Tuple[int, int]]:
    """Патч с максимальной оценкой; при равенстве - с меньшим построчным индексом"""
    if len(grid) == 0:
        raise ArgumentError("patch grid is empty")
    scores = np.array([dct_richness(p) for p in grid.patches])
    best = int(np.argmax(scores))
    return grid.patches[best], grid.positions[best]
