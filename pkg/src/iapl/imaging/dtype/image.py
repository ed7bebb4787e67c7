"""
Изображение и производные от него наборы: виды, сетка патчей, высокочастотные остатки.
Пиксели хранятся в numpy-массиве (H, W, 3) в диапазоне [0, 1].
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ...errors import ArgumentError
from .crop_box import ViewOrigin

# ITU-R BT.601
GRAY_WEIGHTS = np.array([0.299, 0.587, 0.114])


@dataclass(eq=False)
class Image:
    """RGB-изображение с построчным хранением пикселей"""
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ArgumentError(f"image must have shape (H, W, 3), got {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ArgumentError("image must be at least 1x1")
        if not np.all(np.isfinite(data)) or data.min() < 0.0 or data.max() > 1.0:
            raise ArgumentError("image values must lie in [0, 1]")
        self.data = data

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.data.shape

    @classmethod
    def from_uint8(cls, pixels: np.ndarray) -> "Image":
        """8-битные значения делятся на 255"""
        return cls(np.asarray(pixels, dtype=np.float64) / 255.0)

    def to_uint8(self) -> np.ndarray:
        return np.clip(np.rint(self.data * 255.0), 0, 255).astype(np.uint8)

    def gray(self) -> np.ndarray:
        """Яркость по весам BT.601"""
        return self.data @ GRAY_WEIGHTS

    def crop(self, x: int, y: int, side: int) -> "Image":
        return Image(self.data[y:y + side, x:x + side])

    def flip_horizontal(self) -> "Image":
        return Image(self.data[:, ::-1])


@dataclass(eq=False)
class ViewSet:
    """Глобальный вид и N_v-1 локальных видов одного изображения"""
    views: List[Image]
    origins: List[ViewOrigin]

    def __post_init__(self):
        if len(self.views) != len(self.origins):
            raise ArgumentError("every view needs an origin record")

    def __len__(self) -> int:
        return len(self.views)

    @property
    def global_view(self) -> Image:
        return self.views[0]


@dataclass(eq=False)
class PatchGrid:
    """Непересекающиеся квадратные патчи изображения в построчном порядке"""
    patches: List[Image]
    positions: List[Tuple[int, int]]
    patch: int
    rows: int = 0
    cols: int = 0

    def __len__(self) -> int:
        return len(self.patches)


@dataclass(eq=False)
class ResidualStack:
    """Отклики высокочастотных фильтров: плоскость c*K + k для канала c и ядра k"""
    residuals: np.ndarray
    filter_ids: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def planes(self) -> int:
        return self.residuals.shape[0]
