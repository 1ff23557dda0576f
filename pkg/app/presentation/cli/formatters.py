"""Report formatters for json, csv and text output"""
import csv
import io
import json
from typing import Any, Dict, List, Sequence

from pydantic import BaseModel

from app.application.dto.run_config import RunConfig


def dump(model: BaseModel) -> Dict[str, Any]:
    return model.model_dump(mode="json", by_alias=True)


def to_json(config: RunConfig, results: Sequence[BaseModel]) -> str:
    payload = {"config": dump(config), "results": [dump(r) for r in results]}
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if value is None:
        return ""
    return str(value)


def to_csv(rows: Sequence[Dict[str, Any]]) -> str:
    """One header from the union of keys in first-seen order"""
    fields: List[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in fields})
    return buffer.getvalue()


def to_text(lines: Sequence[str]) -> str:
    return "\n".join(lines)


def render(fmt: str, config: RunConfig, results: Sequence[BaseModel], rows: Sequence[Dict[str, Any]], lines: Sequence[str]) -> str:
    if fmt == "json":
        return to_json(config, results)
    if fmt == "csv":
        return to_csv(rows)
    return to_text(lines)
