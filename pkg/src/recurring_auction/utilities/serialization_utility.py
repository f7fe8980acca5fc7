"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License.  See Project Root for the license information.
"""

import dataclasses
import json
import math
from enum import Enum
from typing import Any, Dict

import numpy as np
from aws_lambda_powertools import Logger

logger = Logger(__name__)


class SerializableModel:
    """Mixin for result records that need a plain-dictionary form."""

    def to_dictionary(self) -> Dict[str, Any]:
        """
        Convert the object to a dictionary of JSON-friendly values.
        """
        return Serialization.to_dict(self)

    def dict(self) -> Dict[str, Any]:
        """
        Same as .to_dictionary
        """
        return self.to_dictionary()


class Serialization:
    """Conversion helpers shared by the CLI writers and the caches."""

    @staticmethod
    def to_dict(instance: Any) -> Dict[str, Any]:
        """Dataclass (or plain object) to dictionary, recursing into containers."""
        if dataclasses.is_dataclass(instance) and not isinstance(instance, type):
            source = {f.name: getattr(instance, f.name) for f in dataclasses.fields(instance)}
        else:
            source = {k: v for k, v in vars(instance).items() if not k.startswith("_")}
        return {k: Serialization.to_plain(v) for k, v in source.items()}

    @staticmethod
    def to_plain(value: Any) -> Any:
        """Recursively converts numpy, enums, tuples and records to JSON types."""
        if value is None or isinstance(value, (bool, str, int)):
            return value
        if isinstance(value, float):
            return value if math.isfinite(value) else str(value)
        if isinstance(value, Enum):
            return value.value
        if isinstance(value, np.generic):
            return Serialization.to_plain(value.item())
        if isinstance(value, np.ndarray):
            return [Serialization.to_plain(v) for v in value.tolist()]
        if isinstance(value, dict):
            return {str(k): Serialization.to_plain(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [Serialization.to_plain(v) for v in value]
        if hasattr(value, "to_dictionary"):
            return value.to_dictionary()
        if dataclasses.is_dataclass(value) and not isinstance(value, type):
            return Serialization.to_dict(value)
        return str(value)

    @staticmethod
    def to_json(value: Any, indent: int = 2) -> str:
        """Deterministic JSON text (sorted keys) for output files."""
        return json.dumps(value, cls=JsonEncoder, indent=indent, sort_keys=True) + "\n"


class JsonEncoder(json.JSONEncoder):
    """
    Serializes numpy values, enums, dataclasses and anything implementing
    to_dictionary().
    """

    def default(self, o):
        if hasattr(o, "to_dictionary"):
            return o.to_dictionary()

        if dataclasses.is_dataclass(o) and not isinstance(o, type):
            return Serialization.to_dict(o)

        if isinstance(o, (np.generic, np.ndarray, Enum)):
            return Serialization.to_plain(o)

        logger.debug(f"JsonEncoder falling back: {type(o)}")
        try:
            return super().default(o)
        except TypeError:
            return str(o)
