"""
Синтетические семейства подделок и загрузка наборов данных из каталогов.
"""
from .dtype import EXTERNAL, FAKE_FAMILIES, REAL, DatasetSpec, Sample
from .synthetic import block_mean_quantize, checkerboard, gen_fake, gen_real, generate, sample_rng
from .dataset import build_dataset, read_manifest, write_dataset

__all__ = [
    'EXTERNAL',
    'FAKE_FAMILIES',
    'REAL',
    'DatasetSpec',
    'Sample',
    'block_mean_quantize',
    'checkerboard',
    'gen_fake',
    'gen_real',
    'generate',
    'sample_rng',
    'build_dataset',
    'read_manifest',
    'write_dataset',
]
