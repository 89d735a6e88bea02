"""Model file storage: JSON documents holding a finite ontological model and its bindings."""

import logging
from pathlib import Path
from typing import Any, Sequence, Union

from pydantic import ValidationError

from quantum_fragments.exceptions import ModelFileError
from quantum_fragments.models.ontology import ModelDocument

logger = logging.getLogger(__name__)

Location = Sequence[Union[str, int]]


def json_path(location: Location) -> str:
    """Render ('responses', 'Z', 3) as $.responses.Z[3]."""
    path = "$"
    for part in location:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def _error_location(error: Any) -> Location:
    """Pydantic loc, extended by the location a model validator attached to its error."""
    location = list(error.get("loc", ()))
    cause = error.get("ctx", {}).get("error")
    location.extend(getattr(cause, "location", ()))
    return location


def load_model(path: Union[str, Path]) -> ModelDocument:
    """Read and validate a model file.

    Raises ModelFileError naming the JSON path of the first offending entry.
    """
    file_path = Path(path)
    try:
        text = file_path.read_text()
    except OSError as e:
        logger.error(f"Failed to read model file {file_path}: {e}")
        raise ModelFileError(f"Cannot read model file {file_path}: {e}")

    try:
        document = ModelDocument.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        location = json_path(_error_location(first))
        message = str(first.get("msg", "invalid value"))
        logger.error(f"Model file {file_path} rejected at {location}: {message}")
        raise ModelFileError(message, json_path=location)

    logger.info(
        f"Loaded model {file_path}: N = {document.lambda_count}, "
        f"{len(document.preparations)} preparations, {len(document.responses)} measurements"
    )
    return document


def save_model(document: ModelDocument, path: Union[str, Path]) -> Path:
    """Write a model document as indented JSON; returns the path written."""
    file_path = Path(path)
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(document.model_dump_json(indent=2))
    except OSError as e:
        logger.error(f"Failed to write model file {file_path}: {e}")
        raise ModelFileError(f"Cannot write model file {file_path}: {e}")
    logger.debug(f"Saved model with N = {document.lambda_count} to {file_path}")
    return file_path
