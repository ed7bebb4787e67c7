"""
Сборка наборов данных: синтетических по зерну или из каталога real/ и fake/.
"""
import csv
import logging
import os
from typing import Dict, List, Sequence

from ..errors import DataError
from ..imaging import load_image, save_image
from .dtype import EXTERNAL, FAKE_FAMILIES, REAL, DatasetSpec, Sample
from .synthetic import generate

logger = logging.getLogger(__name__)

MANIFEST = "manifest.csv"
CLASS_DIRS = {"real": 0, "fake": 1}
IMAGE_SUFFIXES = (".png", ".ppm")


def _synthetic(spec: DatasetSpec) -> List[Sample]:
    artifacts = dict(checker_amplitude=spec.checker_amplitude, sine_amplitude=spec.sine_amplitude,
                     quant_strength=spec.quant_strength)
    samples = []
    for family in (REAL,) + FAKE_FAMILIES:
        for index in range(spec.counts.get(family, 0)):
            image = generate(family, spec.seed, index, spec.size, **artifacts)
            samples.append(Sample(image=image, label=0 if family == REAL else 1,
                                  family=family, sample_id=f"{family}_{index}"))
    return samples


def read_manifest(root: str) -> Dict[str, str]:
    """Относительный путь -> семейство; пусто, если манифеста нет"""
    path = os.path.join(root, MANIFEST)
    if not os.path.isfile(path):
        return {}
    with open(path, newline="", encoding="utf-8") as f:
        return {row["path"]: row["family"] for row in csv.DictReader(f)}


def _directory(spec: DatasetSpec) -> List[Sample]:
    root = spec.root
    if not os.path.isdir(root):
        raise DataError(f"dataset directory {root} does not exist")
    families = read_manifest(root)
    samples = []
    for class_dir, label in CLASS_DIRS.items():
        folder = os.path.join(root, class_dir)
        if not os.path.isdir(folder):
            raise DataError(f"missing class folder {folder}")
        names = sorted(n for n in os.listdir(folder) if n.lower().endswith(IMAGE_SUFFIXES))
        if not names:
            raise DataError(f"class folder {folder} has no PNG/PPM images")
        for name in names:
            rel = f"{class_dir}/{name}"
            family = families.get(rel, EXTERNAL)
            samples.append(Sample(image=load_image(os.path.join(folder, name)), label=label,
                                  family=family, sample_id=rel))
    return samples


def build_dataset(spec: DatasetSpec) -> List[Sample]:
    """Детерминированная последовательность образцов по описанию"""
    spec.validate()
    samples = _synthetic(spec) if spec.kind == "synthetic" else _directory(spec)
    logger.info("built %s dataset with %d samples", spec.kind, len(samples))
    return samples


def write_dataset(samples: Sequence[Sample], out_dir: str) -> str:
    """PNG-файлы <out>/<real|fake>/<family>_<n>.png и manifest.csv (path,label,family)"""
    rows = []
    counters: Dict[str, int] = {}
    for sample in samples:
        class_dir = "real" if sample.label == 0 else "fake"
        index = counters.get(sample.family, 0)
        counters[sample.family] = index + 1
        rel = f"{class_dir}/{sample.family}_{index}.png"
        save_image(sample.image, os.path.join(out_dir, class_dir, f"{sample.family}_{index}.png"))
        rows.append((rel, sample.label, sample.family))

    path = os.path.join(out_dir, MANIFEST)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["path", "label", "family"])
        writer.writerows(rows)
    logger.info("wrote %d images to %s", len(rows), out_dir)
    return path
