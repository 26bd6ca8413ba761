from pathlib import Path
from typing import Type, TypeVar

import orjson
from pydantic import BaseModel, validator

from equicolor.errors import InvalidInput

SCHEMA_VERSION = 1

DocumentT = TypeVar("DocumentT", bound="Document")


class Document(BaseModel):
    """Base for every JSON file the CLI reads or writes."""

    schema_: int = SCHEMA_VERSION

    class Config:
        allow_population_by_field_name = True
        fields = {"schema_": "schema"}

    @validator("schema_")
    def validate_schema(cls, v):
        if v != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {v}")
        return v

    def dumps(self) -> bytes:
        return orjson.dumps(self.dict(by_alias=True), option=orjson.OPT_INDENT_2) + b"\n"

    def write(self, path: Path) -> None:
        path.write_bytes(self.dumps())

    @classmethod
    def loads(cls: Type[DocumentT], data: bytes) -> DocumentT:
        try:
            return cls.parse_obj(orjson.loads(data))
        except orjson.JSONDecodeError as exc:
            raise InvalidInput(f"malformed JSON: {exc}") from exc
        except ValueError as exc:
            raise InvalidInput(str(exc)) from exc

    @classmethod
    def read(cls: Type[DocumentT], path: Path) -> DocumentT:
        return cls.loads(path.read_bytes())
