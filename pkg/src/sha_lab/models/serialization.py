"""Versioned JSON envelopes for fitted models.

Floats are written with Python's shortest round-trip repr, so a saved and
reloaded model predicts bit-for-bit identically.
"""

import json
from pathlib import Path
from typing import Any

from ..core.enums import ModelKind
from ..core.exceptions import ConfigError
from ..core.interfaces.model import IModel
from .factory import ModelFactory

MODEL_FORMAT = "sha_lab.model"
MODEL_FORMAT_VERSION = 1


def model_to_dict(model: IModel) -> dict[str, Any]:
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_FORMAT_VERSION,
        "kind": model.kind.value,
        "payload": model.to_payload(),
    }


def model_from_dict(envelope: dict[str, Any]) -> IModel:
    if envelope.get("format") != MODEL_FORMAT:
        raise ConfigError("not a serialized model", {"format": envelope.get("format")})
    if envelope.get("version") != MODEL_FORMAT_VERSION:
        raise ConfigError(
            f"unsupported model format version {envelope.get('version')}",
            {"supported": MODEL_FORMAT_VERSION},
        )
    kind = ModelKind(envelope["kind"])
    return ModelFactory.model_class(kind).from_payload(envelope["payload"])


def save_model(model: IModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model_to_dict(model)), encoding="utf-8")
    return path


def load_model(path: str | Path) -> IModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
