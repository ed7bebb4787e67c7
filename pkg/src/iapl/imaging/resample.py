"""
Билинейная интерполяция с выравниванием по углам.
"""
import numpy as np
from scipy import ndimage

from ..errors import ArgumentError
from .dtype import Image


def _corner_aligned(n_in: int, n_out: int) -> np.ndarray:
    """Координаты отсчетов: крайние пиксели выхода совпадают с крайними пикселями входа"""
    if n_out == 1:
        return np.zeros(1)
    return np.arange(n_out) * ((n_in - 1) / (n_out - 1))


def resize_bilinear(img: Image, out_h: int, out_w: int) -> Image:
    """Изменяет размер изображения билинейной интерполяцией"""
    if out_h < 1 or out_w < 1:
        raise ArgumentError(f"output size must be positive, got {out_h}x{out_w}")
    if (out_h, out_w) == (img.height, img.width):
        return Image(img.data.copy())

    rows = _corner_aligned(img.height, out_h)
    cols = _corner_aligned(img.width, out_w)
    grid_r, grid_c = np.meshgrid(rows, cols, indexing="ij")

    out = np.empty((out_h, out_w, 3))
    for c in range(3):
        out[:, :, c] = ndimage.map_coordinates(img.data[:, :, c], [grid_r, grid_c],
                                               order=1, mode="nearest")
    return Image(np.clip(out, 0.0, 1.0))
