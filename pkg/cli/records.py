"""
OutputRecord and its serializations.

Key order is fixed: ``schema_version``, ``command``, ``inputs``,
``results``, ``warnings`` and, when present, ``tables``. Inside
``inputs`` and ``results`` keys keep the order the runner added them in.
Floats are written with 17 significant digits, so identical invocations
produce identical bytes.
"""
import csv
import io
import json
import math
import numbers
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from django.template.loader import render_to_string

from coherent_thermo import SCHEMA_VERSION


def format_number(value) -> str:
    """17 significant digits for floats; ``true``/``false`` for flags."""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            return 'nan' if math.isnan(value) else ('inf' if value > 0 else '-inf')
        return format(value, '.17g')
    return '' if value is None else str(value)


def encode_json(obj, indent=None, _level=0) -> str:
    """json.dumps with fixed-precision floats and no key sorting."""
    if isinstance(obj, (bool, type(None), str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, numbers.Real):
        text = format_number(obj)
        return text if math.isfinite(float(obj)) else json.dumps(text)
    if isinstance(obj, dict):
        items = [f"{json.dumps(str(key), ensure_ascii=False)}: {encode_json(value, indent, _level + 1)}"
                 for key, value in obj.items()]
        return _wrap('{', '}', items, indent, _level)
    if isinstance(obj, (list, tuple)):
        return _wrap('[', ']', [encode_json(value, indent, _level + 1) for value in obj], indent, _level)
    raise TypeError(f"cannot encode {type(obj).__name__} in an output record")


def _wrap(opening, closing, items, indent, level):
    if not items:
        return opening + closing
    if indent is None:
        return opening + ', '.join(items) + closing
    inner = '\n' + ' ' * (indent * (level + 1))
    return opening + inner + (',' + inner).join(items) + '\n' + ' ' * (indent * level) + closing


@dataclass
class OutputRecord:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    tables: Dict[str, Dict[str, list]] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add(self, name: str, value, unit: str):
        self.results[name] = {'value': value, 'unit': unit}

    def warn(self, *notes: str):
        for note in notes:
            if note not in self.warnings:
                self.warnings.append(note)

    def add_table(self, name: str, columns: Sequence[str], rows):
        self.tables[name] = {
            'columns': list(columns),
            'rows': [[cell if isinstance(cell, (str, bool)) else float(cell) for cell in row] for row in rows],
        }

    def value(self, name: str):
        return self.results[name]['value']

    def as_dict(self) -> Dict[str, Any]:
        data = {
            'schema_version': self.schema_version,
            'command': self.command,
            'inputs': self.inputs,
            'results': self.results,
            'warnings': self.warnings,
        }
        if self.tables:
            data['tables'] = self.tables
        return data

    def to_json(self, indent=2) -> str:
        return encode_json(self.as_dict(), indent=indent) + '\n'

    def to_jsonl(self) -> str:
        return encode_json(self.as_dict()) + '\n'

    def to_csv(self) -> str:
        """Long format: one value per row, tables included."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['section', 'row', 'name', 'value', 'unit'])
        writer.writerow(['meta', '', 'schema_version', self.schema_version, ''])
        writer.writerow(['meta', '', 'command', self.command, ''])
        for name, value in self.inputs.items():
            writer.writerow(['input', '', name, format_number(value), ''])
        for name, quantity in self.results.items():
            writer.writerow(['result', '', name, format_number(quantity['value']), quantity['unit']])
        for index, note in enumerate(self.warnings):
            writer.writerow(['warning', index, '', note, ''])
        for table_name, table in self.tables.items():
            for index, row in enumerate(table['rows']):
                for column, cell in zip(table['columns'], row):
                    writer.writerow([f'table:{table_name}', index, column, format_number(cell), ''])
        return buffer.getvalue()

    def to_table(self) -> str:
        return render_to_string('cli/record_table.txt', {'record': self.as_dict()})

    def render(self, output_format: str) -> str:
        if output_format == 'json':
            return self.to_json()
        if output_format == 'csv':
            return self.to_csv()
        if output_format == 'jsonl':
            return self.to_jsonl()
        return self.to_table()

    def flat_row(self) -> Dict[str, str]:
        """Inputs, then results labelled with their unit, for wide sweep tables."""
        row = {name: format_number(value) for name, value in self.inputs.items()}
        for name, quantity in self.results.items():
            row[f"{name} [{quantity['unit']}]"] = format_number(quantity['value'])
        row['warnings'] = '; '.join(self.warnings)
        return row


def records_to_csv(records: Sequence[OutputRecord]) -> str:
    """Wide CSV, one row per record; columns follow the first record."""
    buffer = io.StringIO()
    rows = [record.flat_row() for record in records]
    columns = list(rows[0]) if rows else []
    for row in rows[1:]:
        columns.extend(name for name in row if name not in columns)
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n', restval='')
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()
