import json
from dataclasses import dataclass
from fractions import Fraction

import pandas as pd

MODES = ('text', 'json', 'csv')


@dataclass(frozen=True)
class OutputFormat:
    mode: str = 'text'
    decimal_digits: int = 5


def format_decimal(value, digits=5):
    """Round half to even at the given number of digits, computed exactly"""
    scaled = round(Fraction(value) * 10 ** digits)
    sign = '-' if scaled < 0 else ''
    whole, frac = divmod(abs(scaled), 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_rational(value, digits=5):
    """'num/den ≈ decimal' (integers print without the fraction)"""
    value = Fraction(value)
    exact = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return f"{exact} ≈ {format_decimal(value, digits)}"


def rational_fields(value, digits=5):
    value = Fraction(value)
    return {'num': value.numerator, 'den': value.denominator, 'decimal': format_decimal(value, digits)}


def plain(value, digits=5):
    """Make a value JSON friendly; rationals keep exact numerator and denominator"""
    if isinstance(value, Fraction):
        return rational_fields(value, digits)
    if isinstance(value, dict):
        if set(value) == {'num', 'den'}:
            return rational_fields(Fraction(value['num'], value['den']), digits)
        return {str(k): plain(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v, digits) for v in value]
    return value


def json_line(payload, digits=5):
    return json.dumps(plain(payload, digits))


def table_frame(rows, digits=5):
    """DataFrame with rational cells rendered as 'num/den ≈ decimal'"""
    frame = pd.DataFrame(rows)
    for column in frame.columns:
        if frame[column].map(lambda v: isinstance(v, Fraction)).any():
            frame[column] = frame[column].map(lambda v: format_rational(v, digits))
    return frame


def render_rows(rows, fmt):
    """Render a list of row dicts in the chosen mode"""
    if fmt.mode == 'json':
        return "\n".join(json_line(row, fmt.decimal_digits) for row in rows)
    if fmt.mode == 'csv':
        flat = []
        for row in rows:
            cells = {}
            for key, value in row.items():
                if isinstance(value, Fraction):
                    cells[f'{key}_num'] = value.numerator
                    cells[f'{key}_den'] = value.denominator
                    cells[key] = format_decimal(value, fmt.decimal_digits)
                else:
                    cells[key] = value
            flat.append(cells)
        return pd.DataFrame(flat).to_csv(index=False).rstrip("\n")
    if not rows:
        return "(no rows)"
    return table_frame(rows, fmt.decimal_digits).to_string(index=False)
