"""
Постановка экспериментов: обучение на одном семействе, проверка на другом,
переключатели компонентов и сравнение вариантов по нескольким зернам.
"""
import copy
import logging
import os
import time
from dataclasses import asdict, dataclass, field, replace
from multiprocessing.pool import ThreadPool
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import torch
from tqdm import tqdm

from ..conditioner import CilConfig
from ..data import DatasetSpec, Sample, build_dataset
from ..detector import IAPLDetector, init_params
from ..encoder import EncoderConfig
from ..errors import ConfigError
from ..training import TrainConfig, TrainLog, load_checkpoint, train
from ..tta import Prediction, TtaConfig, predict_image
from .metrics import MetricsReport, summarize

logger = logging.getLogger(__name__)

THREADS_ENV = "IAPL_THREADS"


@dataclass
class AblationFlags:
    """Включенные компоненты; все флаги выключены - базовый классификатор"""
    adapters: bool = True
    tokens: bool = True
    prompts: bool = True
    conditions_f: bool = True
    conditions_i: bool = True
    gates: bool = True
    tta: bool = True
    conf_sel: bool = True
    ovs: bool = True


def _json_native(value):
    if isinstance(value, dict):
        return {key: _json_native(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_native(item) for item in value]
    return value


def _train_spec() -> DatasetSpec:
    return DatasetSpec(kind="synthetic", counts={"real": 1000, "fakeA": 1000}, size=64, seed=0)


def _test_spec() -> DatasetSpec:
    return DatasetSpec(kind="synthetic", counts={"real": 250, "fakeB": 250}, size=128, seed=1)


@dataclass
class ExperimentConfig:
    encoder: EncoderConfig = field(default_factory=EncoderConfig)
    cil: CilConfig = field(default_factory=CilConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    tta: TtaConfig = field(default_factory=TtaConfig)
    train_data: DatasetSpec = field(default_factory=_train_spec)
    test_data: DatasetSpec = field(default_factory=_test_spec)
    ablation: AblationFlags = field(default_factory=AblationFlags)
    seed: int = 0
    threads: Optional[int] = None
    checkpoint: Optional[str] = None

    def resolved(self) -> Tuple[EncoderConfig, CilConfig, TtaConfig]:
        """Конфигурации модулей с примененными переключателями"""
        flags = self.ablation
        if flags.prompts:
            prompt_mode = "adaptive"
        else:
            prompt_mode = "tokens" if flags.tokens else "none"
        encoder = replace(self.encoder, use_adapters=flags.adapters, use_tokens=flags.tokens,
                          prompt_mode=prompt_mode)
        cil = replace(self.cil, use_forgery=flags.conditions_f, use_image=flags.conditions_i,
                      gated=flags.gates)
        tta = replace(self.tta, enabled=flags.tta, conf_sel=flags.conf_sel, ovs=flags.ovs)
        if not tta.enabled and not tta.ovs:
            # решение по глобальному виду; остальные виды не нужны
            tta = replace(tta, n_views=1, m=1)
        return encoder, cil, tta

    def validate(self) -> None:
        encoder, cil, tta = self.resolved()
        encoder.validate()
        if encoder.prompt_mode == "adaptive":
            cil.validate(encoder.view_size)
        self.train.validate()
        tta.validate()
        self.train_data.validate()
        self.test_data.validate()
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"threads must be positive, got {self.threads}")

    def echo(self) -> Dict[str, object]:
        """Конфигурация в типах JSON: кортежи заменены списками"""
        return _json_native(asdict(self))


def worker_count(cfg: ExperimentConfig) -> int:
    """Число потоков: из конфигурации, иначе IAPL_THREADS, иначе 1"""
    if cfg.threads is not None:
        return cfg.threads
    value = os.environ.get(THREADS_ENV)
    if value is None:
        return 1
    try:
        threads = int(value)
    except ValueError as e:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {value!r}") from e
    if threads < 1:
        raise ConfigError(f"{THREADS_ENV} must be positive, got {threads}")
    return threads


def train_detector(cfg: ExperimentConfig, dataset: Optional[Sequence[Sample]] = None
                   ) -> Tuple[IAPLDetector, Optional[TrainLog]]:
    """Загружает чекпоинт, если он задан, иначе инициализирует и обучает модель"""
    encoder, cil, _ = cfg.resolved()
    model = init_params(encoder, cil, cfg.seed)
    if cfg.checkpoint:
        load_checkpoint(cfg.checkpoint, model)
        model.eval()
        return model, None
    if dataset is None:
        dataset = build_dataset(replace(cfg.train_data, seed=cfg.train_data.seed + cfg.seed))
    log = train(model, dataset, replace(cfg.train, seed=cfg.seed))
    return model, log


def evaluate_samples(model: IAPLDetector, samples: Sequence[Sample], tta: TtaConfig, seed: int,
                     workers: int = 1, progress: bool = False) -> List[Prediction]:
    """Предсказания по образцам в исходном порядке; генератор видов зависит только от (seed, номер)"""
    def run(index: int) -> Prediction:
        rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
        sample = samples[index]
        return predict_image(model, sample.image, tta, rng, sample_id=sample.sample_id or index)

    indices = range(len(samples))
    if workers <= 1:
        return [run(i) for i in tqdm(indices, desc="eval", disable=not progress)]
    with ThreadPool(workers) as pool:
        return list(tqdm(pool.imap(run, indices), total=len(samples), desc="eval", disable=not progress))


def run_experiment(cfg: ExperimentConfig, model: Optional[IAPLDetector] = None,
                   test_samples: Optional[Sequence[Sample]] = None) -> MetricsReport:
    """Обучение (или загрузка) и оценка тестового набора с учетом переключателей"""
    cfg.validate()
    workers = worker_count(cfg)
    torch.set_num_threads(workers)
    start = time.perf_counter()
    logger.info("experiment seed %d started (%d threads)", cfg.seed, workers)

    if model is None:
        model, _ = train_detector(cfg)
    if test_samples is None:
        test_samples = build_dataset(replace(cfg.test_data, seed=cfg.test_data.seed + cfg.seed))
    _, _, tta = cfg.resolved()
    predictions = evaluate_samples(model, test_samples, tta, cfg.seed, workers)

    wall_time = time.perf_counter() - start
    report = summarize([p.prob for p in predictions], [s.label for s in test_samples],
                       [s.family for s in test_samples], config=cfg.echo(), seed=cfg.seed,
                       wall_time=wall_time)
    logger.info("experiment seed %d finished in %.1f s: acc=%.4f m_acc=%s",
                cfg.seed, wall_time, report.acc, report.m_acc)
    return report


def ablation_ladder() -> List[Tuple[str, AblationFlags]]:
    """Накопительное включение компонентов: база, адаптеры, токены, адаптивные подсказки с TTA, OVS"""
    off = dict(adapters=False, tokens=False, prompts=False, tta=False, ovs=False)
    return [
        ("baseline", AblationFlags(**off)),
        ("+adapters", AblationFlags(**dict(off, adapters=True))),
        ("+tokens", AblationFlags(**dict(off, adapters=True, tokens=True))),
        ("+prompts", AblationFlags(**dict(off, adapters=True, tokens=True, prompts=True, tta=True))),
        ("+ovs", AblationFlags()),
    ]


def fixed_prompt_flags() -> AblationFlags:
    """Подсказка из обучаемых токенов без условий, без TTA, решение по глобальному виду"""
    return AblationFlags(prompts=False, tta=False, ovs=False)


@dataclass
class Comparison:
    """Парные результаты двух вариантов по одним и тем же зернам"""
    seeds: List[int]
    reference: List[MetricsReport]
    candidate: List[MetricsReport]

    def differences(self, metric: str = "m_acc") -> List[float]:
        return [getattr(c, metric) - getattr(r, metric) for r, c in zip(self.reference, self.candidate)]

    def wins(self, metric: str = "m_acc") -> int:
        return sum(d > 0 for d in self.differences(metric))


def compare_ablation(cfg: ExperimentConfig, reference: AblationFlags, candidate: AblationFlags,
                     seeds: Sequence[int]) -> Comparison:
    """Запускает оба варианта на каждом зерне"""
    result = Comparison(seeds=list(seeds), reference=[], candidate=[])
    for seed in seeds:
        for flags, bucket in ((reference, result.reference), (candidate, result.candidate)):
            run_cfg = replace(copy.deepcopy(cfg), ablation=flags, seed=seed)
            bucket.append(run_experiment(run_cfg))
    for seed, diff in zip(result.seeds, result.differences()):
        logger.info("seed %d: m_acc difference %+.4f", seed, diff)
    return result


def sweep_steps(cfg: ExperimentConfig, steps: Sequence[int], model: Optional[IAPLDetector] = None
                ) -> Dict[int, MetricsReport]:
    """Один обученный чекпоинт, несколько значений T"""
    if model is None:
        model, _ = train_detector(cfg)
    test_samples = build_dataset(replace(cfg.test_data, seed=cfg.test_data.seed + cfg.seed))
    reports = {}
    for t in steps:
        run_cfg = replace(cfg, tta=replace(cfg.tta, steps=t))
        reports[t] = run_experiment(run_cfg, model=model, test_samples=test_samples)
    return reports
