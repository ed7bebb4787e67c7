"""
Командная строка `iapl`: генерация данных, обучение, оценка, проверка градиентов, эксперименты.
Коды выхода: 0 - успех, 2 - ошибка конфигурации или аргументов, 3 - ошибка данных, 1 - прочие.
"""
import argparse
import logging
import os
import sys
from dataclasses import replace
from typing import Dict, List, Optional

from .data import DatasetSpec, build_dataset, write_dataset
from .errors import ArgumentError, ConfigError, DataError, IaplError, ImageFormatError
from .evaluation import (ExperimentConfig, compare_ablation, emit_report, fixed_prompt_flags, load_config,
                         run_experiment, save_config, train_detector)
from .evaluation.report import FORMATS
from .training import grad_check, save_checkpoint
from .tta import LOSS_KINDS

logger = logging.getLogger("iapl")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
GRAD_TOLERANCE = 1e-4


def sidecar_path(ckpt: str) -> str:
    return ckpt + ".config"


def parse_counts(text: str) -> Dict[str, int]:
    counts = {}
    for item in text.split(","):
        family, sep, value = item.partition("=")
        if not sep:
            raise ArgumentError(f"--counts expects family=N pairs, got {item!r}")
        try:
            counts[family.strip()] = int(value)
        except ValueError as e:
            raise ArgumentError(f"--counts: {value!r} is not an integer") from e
    return counts


def on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return text == "on"


def _config(path: Optional[str]) -> ExperimentConfig:
    return load_config(path) if path else ExperimentConfig()


def cmd_gen_data(args) -> int:
    spec = DatasetSpec(kind="synthetic", counts=parse_counts(args.counts), size=args.size, seed=args.seed)
    manifest = write_dataset(build_dataset(spec), args.out)
    print(f"wrote {manifest}")
    return 0


def cmd_train(args) -> int:
    cfg = _config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.checkpoint = None
    cfg.validate()
    dataset = build_dataset(DatasetSpec(kind="directory", root=args.data)) if args.data else None
    cfg.train.progress = args.progress
    model, log = train_detector(cfg, dataset)
    save_checkpoint(model, args.out)
    save_config(cfg, sidecar_path(args.out))
    if args.log_csv:
        log.to_csv(args.log_csv)
    print(f"saved {args.out} after {len(log)} steps")
    return 0


def cmd_eval(args) -> int:
    config_path = args.config or (sidecar_path(args.ckpt) if os.path.isfile(sidecar_path(args.ckpt)) else None)
    cfg = _config(config_path)
    cfg.checkpoint = args.ckpt
    cfg.ablation = replace(cfg.ablation, tta=args.tta, ovs=args.ovs)
    cfg.tta = replace(cfg.tta, loss_kind=args.loss)
    if args.steps is not None:
        cfg.tta = replace(cfg.tta, steps=args.steps)
    samples = build_dataset(DatasetSpec(kind="directory", root=args.data))
    report = run_experiment(cfg, test_samples=samples)
    emit_report(report, args.report, args.format)
    print(f"acc={report.acc:.4f} ap={report.ap} m_acc={report.m_acc} ({report.n_samples} samples)")
    return 0


def cmd_grad_check(args) -> int:
    report = grad_check(seed=args.seed, eps=args.eps, objective=args.objective)
    for name, error in report.errors.items():
        print(f"{name:40s} {error:.3e}")
    print(f"max relative error {report.max_error:.3e} over {report.n_scalars} scalars")
    return 0 if report.max_error < GRAD_TOLERANCE else 1


def cmd_experiment(args) -> int:
    cfg = _config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    report = run_experiment(cfg)
    if args.report:
        emit_report(report, args.report, args.format)
    print(f"acc={report.acc:.4f} m_acc={report.m_acc} real_acc={report.real_acc} fake_acc={report.fake_acc}")
    return 0


def cmd_compare(args) -> int:
    cfg = _config(args.config)
    result = compare_ablation(cfg, fixed_prompt_flags(), cfg.ablation, list(range(args.seeds)))
    for seed, diff in zip(result.seeds, result.differences()):
        print(f"seed {seed}: m_acc {diff:+.4f}")
    print(f"improved on {result.wins()}/{len(result.seeds)} seeds")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iapl", description="Image-adaptive prompt learning detector")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="write a synthetic PNG dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--counts", default="real=100,fakeA=100")
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_gen_data)

    p = sub.add_parser("train", help="train a detector and save an IAPL1 checkpoint")
    p.add_argument("--config")
    p.add_argument("--data", help="directory with real/ and fake/; synthetic data when omitted")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--log-csv")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint on a directory dataset")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--config")
    p.add_argument("--tta", type=on_off, default=True)
    p.add_argument("--ovs", type=on_off, default=True)
    p.add_argument("--loss", choices=LOSS_KINDS, default="averaged")
    p.add_argument("--steps", type=int)
    p.add_argument("--report", required=True)
    p.add_argument("--format", choices=FORMATS, default="json")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("grad-check", help="compare analytic and finite-difference gradients")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--objective", choices=["total", "averaged", "pointwise"], default="total")
    p.set_defaults(handler=cmd_grad_check)

    p = sub.add_parser("experiment", help="train and evaluate one configuration")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--report")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("compare", help="configured variant against the fixed-prompt ablation")
    p.add_argument("--config")
    p.add_argument("--seeds", type=int, default=5)
    p.set_defaults(handler=cmd_compare)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT)
    try:
        return args.handler(args)
    except (ConfigError, ArgumentError) as e:
        logger.error("%s", e)
        return 2
    except (DataError, ImageFormatError, OSError) as e:
        logger.error("%s", e)
        return 3
    except IaplError as e:
        logger.error("%s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
