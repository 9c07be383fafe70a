"""
Reading and writing instance, division and report files.

Instances may be JSON or YAML; everything written is JSON with sorted keys
and two-space indentation, so equal documents are equal byte for byte.
"""

import json
import sys
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ValidationError

from pathdiv.exceptions import InputError
from pathdiv.models.division import Division
from pathdiv.models.instance import Instance
from pathdiv.schemas import InstanceDocument, WitnessDocument, division_adapter

YAML_SUFFIXES = {".yaml", ".yml"}


def _read(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    try:
        if path.suffix.lower() in YAML_SUFFIXES:
            return yaml.safe_load(text)
        return json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise InputError(f"Cannot parse {path}: {e}") from e


def _validation_message(path: Path, error: ValidationError) -> str:
    first = error.errors()[0]
    where = ".".join(str(part) for part in first["loc"]) or "document"
    return f"Invalid document {path} at {where}: {first['msg']} ({error.error_count()} errors)"


def load_instance(path: Path) -> Instance:
    """Parse and build an instance; shape errors surface as ``InputError``."""
    try:
        doc = InstanceDocument.model_validate(_read(path))
    except ValidationError as e:
        raise InputError(_validation_message(path, e)) from e
    return Instance.from_document(doc)


def dump_instance(inst: Instance, path: Path | None = None) -> str:
    """Write an instance; a '.yaml' or '.yml' path gets YAML, anything else JSON."""
    doc = inst.to_document()
    if path is None or path.suffix.lower() not in YAML_SUFFIXES:
        return write_document(doc, path)
    text = yaml.safe_dump(doc.model_dump(mode="json"), sort_keys=True)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return text


def load_division(path: Path, m: int) -> Division:
    """
    Read a division: either a bare list of bundles or any report with a
    ``division`` field, such as the output of ``solve``.
    """
    data = _read(path)
    if isinstance(data, dict):
        if "division" not in data:
            raise InputError(f"{path} has no 'division' field")
        data = data["division"]
    try:
        doc = division_adapter.validate_python(data)
    except ValidationError as e:
        raise InputError(_validation_message(path, e)) from e
    return Division.from_document(doc, m)


def load_witnesses(path: Path) -> WitnessDocument | None:
    """The ``witnesses`` field of a report file, if it has one."""
    data = _read(path)
    if not isinstance(data, dict) or data.get("witnesses") is None:
        return None
    try:
        return WitnessDocument.model_validate(data["witnesses"])
    except ValidationError as e:
        raise InputError(_validation_message(path, e)) from e


def to_json(document: BaseModel | Any) -> str:
    if isinstance(document, BaseModel):
        data = document.model_dump(mode="json")
    else:
        data = document
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_document(document: BaseModel | Any, path: Path | None = None) -> str:
    """Write ``document`` as JSON to ``path``, or to stdout when no path is given."""
    text = to_json(document)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text
