"""
Формат контрольной точки IAPL1.
Магия b"IAPL1", u32 число тензоров, затем для каждого: u16 длина имени, имя UTF-8,
u8 ранг, u32 размеры, данные float32; все числа little-endian.
"""
import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np
import torch
import torch.nn as nn

from ..errors import CheckpointFormatError

logger = logging.getLogger(__name__)

MAGIC = b"IAPL1"


@dataclass
class TensorRecord:
    """Заголовок тензора: имя и форма"""
    name: str
    shape: Tuple[int, ...]

    def to_bytes(self) -> bytes:
        encoded = self.name.encode("utf-8")
        return (struct.pack("<H", len(encoded)) + encoded + struct.pack("<B", len(self.shape))
                + struct.pack(f"<{len(self.shape)}I", *self.shape))

    @property
    def numel(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64)) if self.shape else 1


class _Reader:
    def __init__(self, buffer: bytes):
        self.buffer = buffer
        self.offset = 0

    def take(self, n: int) -> bytes:
        if self.offset + n > len(self.buffer):
            raise CheckpointFormatError(f"truncated checkpoint at byte {self.offset}")
        chunk = self.buffer[self.offset:self.offset + n]
        self.offset += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def encode_tensors(tensors: Dict[str, torch.Tensor]) -> bytes:
    parts = [MAGIC, struct.pack("<I", len(tensors))]
    for name, t in tensors.items():
        data = t.detach().cpu().to(torch.float32).numpy()
        parts.append(TensorRecord(name, tuple(data.shape)).to_bytes())
        parts.append(data.astype("<f4").tobytes())
    return b"".join(parts)


def decode_tensors(buffer: bytes) -> Dict[str, torch.Tensor]:
    """Разбирает весь буфер до возврата результата; любая ошибка - CheckpointFormatError"""
    reader = _Reader(buffer)
    if reader.take(len(MAGIC)) != MAGIC:
        raise CheckpointFormatError("bad magic, not an IAPL1 checkpoint")
    (count,) = reader.unpack("<I")
    tensors: Dict[str, torch.Tensor] = {}
    for _ in range(count):
        (name_len,) = reader.unpack("<H")
        try:
            name = reader.take(name_len).decode("utf-8")
        except UnicodeDecodeError as e:
            raise CheckpointFormatError("tensor name is not valid UTF-8") from e
        if name in tensors:
            raise CheckpointFormatError(f"duplicate tensor name {name!r}")
        (rank,) = reader.unpack("<B")
        shape = reader.unpack(f"<{rank}I")
        record = TensorRecord(name, tuple(shape))
        data = np.frombuffer(reader.take(4 * record.numel), dtype="<f4").reshape(record.shape)
        tensors[name] = torch.from_numpy(data.astype(np.float32))
    if reader.offset != len(buffer):
        raise CheckpointFormatError(f"{len(buffer) - reader.offset} trailing bytes after the last tensor")
    return tensors


def save_checkpoint(model: Union[nn.Module, Dict[str, torch.Tensor]], path: Union[str, Path]) -> Path:
    """Записывает все именованные параметры модели"""
    tensors = dict(model.named_parameters()) if isinstance(model, nn.Module) else dict(model)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_tensors(tensors))
    logger.info("saved checkpoint %s (%d tensors)", path, len(tensors))
    return path


def load_checkpoint(path: Union[str, Path], model: Optional[nn.Module] = None) -> Dict[str, torch.Tensor]:
    """Читает тензоры; если задана модель, копирует их в параметры только после полной проверки"""
    tensors = decode_tensors(Path(path).read_bytes())
    if model is not None:
        params = dict(model.named_parameters())
        unknown = sorted(set(tensors) - set(params))
        if unknown:
            raise CheckpointFormatError(f"unknown tensor names: {', '.join(unknown)}")
        missing = sorted(set(params) - set(tensors))
        if missing:
            raise CheckpointFormatError(f"checkpoint lacks tensors: {', '.join(missing)}")
        for name, t in tensors.items():
            if tuple(t.shape) != tuple(params[name].shape):
                raise CheckpointFormatError(f"shape mismatch for {name}: {tuple(t.shape)} vs {tuple(params[name].shape)}")
        with torch.no_grad():
            for name, t in tensors.items():
                params[name].copy_(t.to(params[name].dtype))
    logger.info("loaded checkpoint %s (%d tensors)", path, len(tensors))
    return tensors
