"""
Плоский текстовый файл конфигурации: строки `section.key = value`, комментарии `#`.
Секции: encoder, cil, train, tta, data.train, data.test, ablation, experiment.
"""
import dataclasses
import typing
from pathlib import Path
from typing import Any, Dict, Union

from ..errors import ConfigError
from .experiment import ExperimentConfig

SECTIONS = {
    "encoder": "encoder",
    "cil": "cil",
    "train": "train",
    "tta": "tta",
    "data.train": "train_data",
    "data.test": "test_data",
    "ablation": "ablation",
}
TOP_LEVEL = "experiment"

TRUE_WORDS = ("true", "on", "yes", "1")
FALSE_WORDS = ("false", "off", "no", "0")


def parse_bool(text: str) -> bool:
    word = text.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ConfigError(f"cannot read {text!r} as a boolean")


def coerce(text: str, hint: Any) -> Any:
    """Приводит строку к типу из аннотации поля"""
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    text = text.strip()
    if origin is Union:
        if text.lower() in ("none", "") and type(None) in args:
            return None
        inner = [a for a in args if a is not type(None)]
        return coerce(text, inner[0])
    if origin in (tuple, typing.Tuple):
        items = [t for t in text.split(",") if t.strip()]
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(coerce(t, args[0]) for t in items)
        if len(items) != len(args):
            raise ConfigError(f"expected {len(args)} comma-separated values, got {text!r}")
        return tuple(coerce(t, a) for t, a in zip(items, args))
    if origin in (dict, typing.Dict):
        result = {}
        for item in text.split(","):
            if not item.strip():
                continue
            key, sep, value = item.partition("=")
            if not sep:
                key, sep, value = item.partition(":")
            if not sep:
                raise ConfigError(f"expected key=value pairs, got {item!r}")
            result[coerce(key, args[0])] = coerce(value, args[1])
        return result
    if hint is bool:
        return parse_bool(text)
    try:
        return hint(text)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"cannot read {text!r} as {getattr(hint, '__name__', hint)}") from e


def format_value(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(v) for v in value)
    if isinstance(value, dict):
        return ",".join(f"{k}={format_value(v)}" for k, v in value.items())
    return str(value)


def _assign(target: Any, key: str, text: str, where: str) -> None:
    hints = typing.get_type_hints(type(target))
    names = {f.name for f in dataclasses.fields(target)}
    if key not in names:
        raise ConfigError(f"{where}: unknown key {key!r}")
    setattr(target, key, coerce(text, hints[key]))


def parse_config(text: str, base: ExperimentConfig = None) -> ExperimentConfig:
    """Накладывает значения из текста на base (по умолчанию - значения по умолчанию)"""
    cfg = base if base is not None else ExperimentConfig()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {number}"
        name, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{where}: expected `key = value`, got {raw.strip()!r}")
        section, dot, key = name.strip().rpartition(".")
        if not dot:
            raise ConfigError(f"{where}: key {name.strip()!r} has no section")
        if section == TOP_LEVEL:
            if key in SECTIONS.values():
                raise ConfigError(f"{where}: {key!r} is a section, not a value")
            _assign(cfg, key, value, where)
        elif section in SECTIONS:
            _assign(getattr(cfg, SECTIONS[section]), key, value, where)
        else:
            raise ConfigError(f"{where}: unknown section {section!r}")
    return cfg


def load_config(path: Union[str, Path], base: ExperimentConfig = None) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), base)


def dump_config(cfg: ExperimentConfig) -> str:
    lines = []
    for section, attr in SECTIONS.items():
        for f in dataclasses.fields(getattr(cfg, attr)):
            lines.append(f"{section}.{f.name} = {format_value(getattr(getattr(cfg, attr), f.name))}")
    for f in dataclasses.fields(cfg):
        if f.name not in SECTIONS.values():
            lines.append(f"{TOP_LEVEL}.{f.name} = {format_value(getattr(cfg, f.name))}")
    return "\n".join(lines) + "\n"


def save_config(cfg: ExperimentConfig, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dump_config(cfg), encoding="utf-8")
    return path
