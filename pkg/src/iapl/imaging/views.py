"""
Генерация видов изображения для адаптации на тесте.
Вид 0 - все изображение, приведенное к размеру входа; остальные - случайные квадратные фрагменты с отражением.
"""
import logging
import math

import numpy as np

from ..errors import ArgumentError
from .dtype import CropBox, Image, ViewOrigin, ViewSet
from .resample import resize_bilinear

logger = logging.getLogger(__name__)

FLIP_PROBABILITY = 0.5


def global_view(img: Image, view_size: int) -> Image:
    """Все изображение в разрешении входа кодировщика"""
    return resize_bilinear(img, view_size, view_size)


def _random_box(img: Image, side: int, rng: np.random.Generator) -> CropBox:
    x = int(rng.integers(0, img.width - side + 1))
    y = int(rng.integers(0, img.height - side + 1))
    flipped = bool(rng.random() < FLIP_PROBABILITY)
    return CropBox(x=x, y=y, side=side, flipped=flipped)


def _cut(img: Image, box: CropBox) -> Image:
    view = img.crop(box.x, box.y, box.side)
    return view.flip_horizontal() if box.flipped else view


def generate_views(img: Image, n_views: int, view_size: int,
                   rng: np.random.Generator) -> ViewSet:
    """Строит глобальный вид и n_views-1 локальных видов"""
    if n_views < 1:
        raise ArgumentError(f"n_views must be at least 1, got {n_views}")
    if view_size < 1:
        raise ArgumentError(f"view_size must be positive, got {view_size}")

    views = [global_view(img, view_size)]
    origins = [ViewOrigin(ViewOrigin.GLOBAL)]

    min_side = min(img.height, img.width)
    small = min_side < view_size
    if small and n_views > 1:
        logger.debug("image %dx%d is smaller than view %d, cropping resized patches",
                     img.height, img.width, view_size)

    for _ in range(n_views - 1):
        if not small:
            box = _random_box(img, view_size, rng)
            views.append(_cut(img, box))
            origins.append(ViewOrigin(ViewOrigin.CROP, box))
        else:
            side = int(rng.integers(max(1, math.ceil(min_side / 2)), min_side + 1))
            box = _random_box(img, side, rng)
            views.append(resize_bilinear(_cut(img, box), view_size, view_size))
            origins.append(ViewOrigin(ViewOrigin.CROP_RESIZE, box))

    return ViewSet(views=views, origins=origins)


def training_view(img: Image, view_size: int, rng: np.random.Generator) -> Image:
    """Глобальный вид с отражением по горизонтали с вероятностью 0.5"""
    view = global_view(img, view_size)
    if rng.random() < FLIP_PROBABILITY:
        view = view.flip_horizontal()
    return view
