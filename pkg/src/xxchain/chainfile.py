"""JSON chain files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .chains import ChainFamily
from .jacobi import JacobiMatrix

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ChainFile:
    chain: JacobiMatrix
    family: Optional[ChainFamily] = None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        if self.family is None:
            meta = "custom"
        else:
            meta = {
                "family": self.family.family,
                "N": self.family.N,
                "M": self.family.M,
                "K": self.family.K,
            }
        return {
            "schema_version": self.schema_version,
            "meta": meta,
            "couplings": [float(v) for v in self.chain.couplings],
            "fields": [float(v) for v in self.chain.fields],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ChainFile":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported chain file schema_version {version!r}")
        try:
            chain = JacobiMatrix(data["couplings"], data["fields"])
            meta = data["meta"]
        except KeyError as exc:
            raise ValueError(f"chain file missing field {exc}") from None
        family = None
        if meta != "custom":
            family = ChainFamily(meta["family"], int(meta["N"]), meta.get("M"), float(meta["K"]))
        return cls(chain, family, version)


def dumps(cf: ChainFile) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(cf.to_dict(), indent=2) + "\n"


def save(cf: ChainFile, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(cf))


def load(path: Union[str, Path]) -> ChainFile:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not a valid chain file ({exc})") from None
    return ChainFile.from_dict(data)
