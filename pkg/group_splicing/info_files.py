"""This file powers reading yaml files. Backend stuff.
JSON documents are valid YAML, so synthetic specs load through here too."""
from io import StringIO
from pathlib import Path

from loguru import logger
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from group_splicing.errors import InputFileError, ParseError
from group_splicing.file_handling import create_file

YAML_HANDLER = YAML(typ="safe")


def read(path: Path, missing_ok: bool = True) -> dict:
    """Controller"""
    try:
        content = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        if not missing_ok:
            raise InputFileError(f"File not found: {path}")
        logger.info(f"File not found, and being treated as empty: {path}")
        content = ""

    try:
        loaded = _yaml_load(content)
    except YAMLError as e:
        raise ParseError(f"Could not parse {path}: {e}") from e
    if not isinstance(loaded, dict):
        raise ParseError(f"{path} must hold a mapping, got {type(loaded).__name__}")
    return loaded


def save(path: Path, content: dict):
    content = _yaml_dumps(content)
    create_file(path=path, content=content, overwrite=True)


def _yaml_load(yaml_str: str) -> dict:
    yaml_obj = YAML_HANDLER.load(yaml_str)
    if yaml_obj is None:
        yaml_obj = {}
    return yaml_obj


def _yaml_dumps(obj) -> str:
    dumper = YAML()
    dumper.default_flow_style = False
    with StringIO() as string_stream:
        dumper.dump(obj, string_stream)
        output_str = string_stream.getvalue()
    return output_str
