from .crop_box import CropBox, ViewOrigin
from .image import Image, ViewSet, PatchGrid, ResidualStack, GRAY_WEIGHTS
