"""
Представление изображений, генерация видов, разбиение на патчи, ДКП и высокочастотные остатки.
"""
from .dtype import CropBox, ViewOrigin, Image, ViewSet, PatchGrid, ResidualStack
from .io import load_image, save_image
from .resample import resize_bilinear
from .views import generate_views, global_view, training_view
from .patches import partition_patches, dct2, idct2, dct_richness, select_richest_patch
from .highpass import HighPassKernel, kernel_bank, highpass_residual

__all__ = [
    'CropBox',
    'ViewOrigin',
    'Image',
    'ViewSet',
    'PatchGrid',
    'ResidualStack',
    'load_image',
    'save_image',
    'resize_bilinear',
    'generate_views',
    'global_view',
    'training_view',
    'partition_patches',
    'dct2',
    'idct2',
    'dct_richness',
    'select_richest_patch',
    'HighPassKernel',
    'kernel_bank',
    'highpass_residual',
]
