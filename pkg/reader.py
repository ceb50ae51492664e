import codecs
import csv
import io
import logging
from datetime import datetime, timezone
from typing import List, Tuple

from marshmallow import EXCLUDE, Schema, ValidationError, fields, post_load, pre_load, validate

from errors import InvalidEdgeError, ParseError
from network import EdgeEvent

logger = logging.getLogger(__name__)

EDGE_COLUMNS = ("source", "target", "layer", "weight", "timestamp")
REQUIRED_COLUMNS = ("source", "target", "layer")


def read_text(path) -> str:
    """Whole file as UTF-8 text; undecodable bytes raise ParseError with their line."""
    with open(path, "rb") as file:
        data = file.read()
    if data.startswith(codecs.BOM_UTF8):
        data = data[len(codecs.BOM_UTF8):]
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as err:
        line = data[:err.start].count(b"\n") + 1
        raise ParseError(f"invalid UTF-8 byte at offset {err.start}", line=line) from None


def parse_instant(text) -> float:
    """Integer epoch seconds or an ISO-8601 instant (naive means UTC) -> epoch seconds."""
    text = str(text).strip()
    try:
        return float(int(text))
    except ValueError:
        pass
    try:
        parsed = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError:
        raise ValueError(f"{text!r} is neither integer epoch seconds nor ISO-8601") from None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.timestamp()


class Timestamp(fields.Field):
    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return parse_instant(value)
        except ValueError as err:
            raise ValidationError(str(err)) from err


class EdgeRecordSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    source = fields.Str(required=True, validate=validate.Length(min=1))
    target = fields.Str(required=True, validate=validate.Length(min=1))
    layer = fields.Str(required=True, validate=validate.Length(min=1))
    weight = fields.Float(load_default=1.0, validate=validate.Range(min=0))
    timestamp = Timestamp(load_default=None)

    @pre_load
    def drop_blank_fields(self, data, **kwargs):
        # empty CSV cells mean "absent"
        return {key: value.strip() for key, value in data.items() if value is not None and value.strip()}

    @post_load
    def make_event(self, data, **kwargs):
        return EdgeEvent(**data)


class ValueRowSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    node = fields.Str(load_default=None)
    value = fields.Float(required=True)


edge_schema = EdgeRecordSchema()
value_schema = ValueRowSchema()


def _describe(messages) -> str:
    if isinstance(messages, dict):
        return "; ".join(f"{key}: {' '.join(map(str, value))}" for key, value in messages.items())
    return str(messages)


def _read_header(row, line) -> List[str]:
    columns = [cell.strip().lower() for cell in row]
    unknown = [column for column in columns if column not in EDGE_COLUMNS]
    missing = [column for column in REQUIRED_COLUMNS if column not in columns]
    if unknown or missing:
        raise ParseError(
            f"unrecognized header {row!r}, expected columns {','.join(EDGE_COLUMNS)}", line=line
        )
    return columns


def parse_edge_file(path, has_header: bool = True) -> List[EdgeEvent]:
    """
    Read an edge-list CSV into EdgeEvents, one per data row.

    A missing weight defaults to 1.0, a missing timestamp stays absent.
    Errors carry the 1-based line number of the offending row.
    """
    events = []
    with io.StringIO(read_text(path), newline="") as file:
        rows = csv.reader(file)
        columns = list(EDGE_COLUMNS)
        header_pending = has_header

        for row in rows:
            line = rows.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if header_pending:
                columns = _read_header(row, line)
                header_pending = False
                continue
            if len(row) > len(columns) or len(row) < len(REQUIRED_COLUMNS):
                raise ParseError(f"expected {len(columns)} fields, got {len(row)}", line=line)

            record = dict(zip(columns, row))
            try:
                events.append(edge_schema.load(record))
            except ValidationError as err:
                raise ParseError(_describe(err.messages), line=line) from None
            except InvalidEdgeError as err:
                raise InvalidEdgeError(str(err), record=err.record, line=line) from None

    logger.info("Read %d edge events from %s", len(events), path)
    return events


def read_measure_csv(path) -> List[Tuple[str, float]]:
    """(node, value) rows of a MeasureReport CSV."""
    rows = []
    with io.StringIO(read_text(path), newline="") as file:
        reader = csv.DictReader(file)
        if reader.fieldnames is None or "value" not in reader.fieldnames:
            raise ParseError("measure report must have a 'value' column", line=1)
        for record in reader:
            try:
                loaded = value_schema.load(record)
            except ValidationError as err:
                raise ParseError(_describe(err.messages), line=reader.line_num) from None
            rows.append((loaded["node"], loaded["value"]))
    return rows


def parse_values_file(path) -> List[float]:
    """Values from a MeasureReport CSV or from a file with one number per line."""
    lines = read_text(path).splitlines()

    first = next((line for line in lines if line.strip()), "")
    if "value" in [cell.strip() for cell in first.split(",")]:
        return [value for _, value in read_measure_csv(path)]

    values = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            values.append(value_schema.load({"value": line.strip()})["value"])
        except ValidationError:
            raise ParseError(f"not a number: {line.strip()!r}", line=number) from None
    return values


def parse_roster_file(path) -> List[str]:
    """Node identifiers, one per line; blank lines and '#' comments are skipped."""
    lines = read_text(path).splitlines()
    return [line.strip() for line in lines if line.strip() and not line.lstrip().startswith("#")]
