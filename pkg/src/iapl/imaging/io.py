"""
Чтение и запись растров PNG и двоичного PPM (P6), 8 бит на канал.
"""
import logging
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from ..errors import ImageFormatError
from .dtype import Image

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("PNG", "PPM")
SUFFIX_FORMATS = {".png": "PNG", ".ppm": "PPM"}


def load_image(path: Union[str, Path]) -> Image:
    """Загружает изображение и нормирует 8-битные значения делением на 255"""
    path = Path(path)
    try:
        with PILImage.open(path) as raster:
            if raster.format not in SUPPORTED_FORMATS:
                raise ImageFormatError(f"{path}: unsupported format {raster.format}")
            pixels = np.asarray(raster.convert("RGB"), dtype=np.uint8)
    except UnidentifiedImageError as e:
        raise ImageFormatError(f"{path}: not a PNG or PPM raster") from e
    return Image.from_uint8(pixels)


def save_image(img: Image, path: Union[str, Path]) -> Path:
    """Сохраняет изображение; формат определяется по расширению"""
    path = Path(path)
    fmt = SUFFIX_FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise ImageFormatError(f"{path}: expected .png or .ppm suffix")
    path.parent.mkdir(parents=True, exist_ok=True)
    PILImage.fromarray(img.to_uint8(), mode="RGB").save(path, format=fmt)
    return path
