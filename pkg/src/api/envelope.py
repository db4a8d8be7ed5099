#!/usr/bin/env python3
"""
Output Envelope
One envelope per successful CLI run: {command, parameters, result, elapsed_ms}.
The text and CSV renderings ride along but are not part of the JSON document.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..core.errors import DomainError

FORMATS = ('text', 'json', 'csv')


@dataclass
class OutputEnvelope:
    command: str
    parameters: Dict[str, Any]
    result: Any
    elapsed_ms: int = 0
    text: Optional[str] = field(default=None, repr=False, compare=False)
    csv_rows: Optional[List[List[Any]]] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'parameters': self.parameters,
            'result': self.result,
            'elapsed_ms': self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def stable_dict(self) -> Dict[str, Any]:
        """Envelope without timing, for determinism comparisons"""
        data = self.to_dict()
        data.pop('elapsed_ms')
        return data


def parse_envelope(text: str) -> OutputEnvelope:
    data = json.loads(text)
    missing = [key for key in ('command', 'parameters', 'result', 'elapsed_ms') if key not in data]
    if missing:
        raise DomainError(f"envelope is missing {', '.join(missing)}")
    return OutputEnvelope(
        command=data['command'],
        parameters=data['parameters'],
        result=data['result'],
        elapsed_ms=int(data['elapsed_ms']),
    )


def render(envelope: OutputEnvelope, fmt: str) -> str:
    if fmt == 'json':
        return envelope.to_json() + "\n"
    if fmt == 'csv':
        if envelope.csv_rows is None:
            raise DomainError(f"'{envelope.command}' has no tabular output; use --format text or json")
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(envelope.csv_rows)
        return buffer.getvalue()
    if fmt == 'text':
        if envelope.text is not None:
            return envelope.text
        return json.dumps(envelope.result, indent=2, sort_keys=True) + "\n"
    raise DomainError(f"unknown format {fmt!r} (one of {', '.join(FORMATS)})")
