"""Reading and writing character-table files.

Files are UTF-8 JSON in a fixed layout (one class or one character per
line), so saving a loaded canonical file reproduces it byte for byte.
Every loaded table is verified before it is returned.
"""
from __future__ import annotations

import json
from pathlib import Path

from ..cyclo import Cyc
from .table import BrauerTable, CharTable, ClassInfo, verify_table


class TableFormatError(ValueError):
    """The file does not follow the table schema."""


class TableVerificationError(ValueError):
    """The file parses but the table fails an identity."""


def _value_json(v: Cyc):
    if v.is_rational() and v.to_rational().denominator == 1:
        return int(v.to_rational())
    return v.to_json()


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def dumps_table(T: CharTable) -> str:
    lines = ["{", f'  "name": {_dump(T.name)},', f'  "order": {T.order},', f'  "prime": {T.prime},']
    ref = getattr(T, "ordinary_ref", None)
    if ref is not None:
        lines.append(f'  "ordinaryRef": {_dump(ref)},')
    lines.append('  "classes": [')
    for i, c in enumerate(T.classes):
        entry = {
            "size": c.size,
            "centralizer": c.centralizer,
            "elementOrder": c.element_order,
            "powerMaps": {str(q): j for q, j in sorted(c.power_maps.items())},
        }
        if c.label is not None:
            entry["label"] = c.label
        sep = "," if i + 1 < len(T.classes) else ""
        lines.append(f"    {_dump(entry)}{sep}")
    lines.append("  ],")
    lines.append('  "irr": [')
    for i, row in enumerate(T.irr):
        sep = "," if i + 1 < len(T.irr) else ""
        lines.append(f"    {_dump([_value_json(v) for v in row])}{sep}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_table(T: CharTable, path) -> None:
    Path(path).write_text(dumps_table(T), encoding="utf-8")


def _int_field(obj, key, where, minimum=None):
    if key not in obj:
        raise TableFormatError(f"{where}: missing field {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise TableFormatError(f"{where}.{key}: expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise TableFormatError(f"{where}.{key}: must be >= {minimum}, got {v}")
    return v


def loads_table(text: str, source: str = "<string>", verify: bool = True) -> CharTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise TableFormatError(f"{source}: top level must be an object")
    name = obj.get("name")
    if not isinstance(name, str):
        raise TableFormatError(f"{source}: field 'name' must be a string")
    order = _int_field(obj, "order", source, 1)
    prime = _int_field(obj, "prime", source, 0)
    raw_classes = obj.get("classes")
    if not isinstance(raw_classes, list) or not raw_classes:
        raise TableFormatError(f"{source}: field 'classes' must be a non-empty list")
    classes = []
    for i, c in enumerate(raw_classes):
        where = f"classes[{i}]"
        if not isinstance(c, dict):
            raise TableFormatError(f"{where}: expected an object")
        pm = c.get("powerMaps", {})
        if not isinstance(pm, dict):
            raise TableFormatError(f"{where}.powerMaps: expected an object")
        try:
            power_maps = {int(q): int(j) for q, j in pm.items()}
        except (TypeError, ValueError):
            raise TableFormatError(f"{where}.powerMaps: keys and values must be integers") from None
        label = c.get("label")
        if label is not None and not isinstance(label, str):
            raise TableFormatError(f"{where}.label: expected a string")
        classes.append(ClassInfo(
            _int_field(c, "size", where, 1),
            _int_field(c, "centralizer", where, 1),
            _int_field(c, "elementOrder", where, 1),
            power_maps,
            label,
        ))
    raw_irr = obj.get("irr")
    if not isinstance(raw_irr, list):
        raise TableFormatError(f"{source}: field 'irr' must be a list")
    irr = []
    for i, row in enumerate(raw_irr):
        if not isinstance(row, list):
            raise TableFormatError(f"irr[{i}]: expected a list")
        vals = []
        for j, v in enumerate(row):
            if isinstance(v, bool):
                raise TableFormatError(f"irr[{i}][{j}]: booleans are not values")
            try:
                vals.append(Cyc.from_json(v))
            except ValueError as exc:
                raise TableFormatError(f"irr[{i}][{j}]: {exc}") from None
        irr.append(vals)
    if prime:
        ref = obj.get("ordinaryRef")
        if ref is not None and not isinstance(ref, str):
            raise TableFormatError(f"{source}: field 'ordinaryRef' must be a string")
        T: CharTable = BrauerTable(name, order, classes, irr, prime, ordinary_ref=ref)
    else:
        T = CharTable(name, order, classes, irr)
    if verify:
        verdict = verify_table(T)
        if not verdict:
            raise TableVerificationError(verdict.first_failure)
    return T


def load_table(path, verify: bool = True) -> CharTable:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise TableFormatError(f"{p}: {exc}") from None
    return loads_table(text, str(p), verify)


def table_io(mode: str, path, table: CharTable | None = None):
    """``table_io("load", path)`` or ``table_io("save", path, T)``."""
    if mode == "load":
        return load_table(path)
    if mode == "save":
        if table is None:
            raise ValueError("save needs a table")
        save_table(table, path)
        return table
    raise ValueError(f"mode must be 'load' or 'save', not {mode!r}")
