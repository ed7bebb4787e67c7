"""
Квадратная область кадрирования.
Определяет положение локального вида в координатах исходного изображения (x, y).
"""
from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class CropBox:
    """Квадрат со стороной side и левым верхним углом (x, y)"""
    x: int
    y: int
    side: int
    flipped: bool = False

    @property
    def center(self) -> Tuple[float, float]:
        """Центр квадрата"""
        return self.x + self.side / 2, self.y + self.side / 2

    def fits(self, height: int, width: int) -> bool:
        """Проверяет, лежит ли квадрат целиком внутри изображения"""
        return (self.x >= 0 and self.y >= 0 and
                self.x + self.side <= width and
                self.y + self.side <= height)


@dataclass(frozen=True)
class ViewOrigin:
    """Происхождение вида: global-resize, crop или crop-resize"""
    kind: str
    box: CropBox = None

    GLOBAL = "global-resize"
    CROP = "crop"
    CROP_RESIZE = "crop-resize"
