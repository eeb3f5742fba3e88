"""
Escritura de informes en CSV y JSON
CSV: separador coma, fin de línea LF; floats completos salvo que se pidan cifras significativas
(las tablas de error de Bergman usan 3)
JSON: UTF-8, floats con repr exacto (ida y vuelta sin pérdida)
"""
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence


def format_csv_value(value: Any, significant: Optional[int] = None) -> str:
    """Formatear un valor para CSV; sin significant, el float sale igual que en JSON"""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        if significant is None:
            return str(float(value))
        return f"{value:.{significant}g}"
    return str(value)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return str(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def render_csv(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None, significant: Optional[int] = None) -> str:
    """Convertir filas (dicts) a texto CSV"""
    if not rows:
        return ""
    columns = columns or list(rows[0].keys())
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_csv_value(row.get(col), significant) for col in columns])
    return buffer.getvalue()


def render_json(payload: Any) -> str:
    """Convertir un payload a texto JSON"""
    return json.dumps(_json_safe(payload), ensure_ascii=False, indent=2) + "\n"


def emit(text: str, output: Optional[Path] = None) -> None:
    """Escribir en fichero o en stdout"""
    if output is None:
        sys.stdout.write(text)
        return
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8", newline="\n")
