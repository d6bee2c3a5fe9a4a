"""
Record CSV and summary document I/O for experiment runs.
"""
from dataclasses import asdict
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Union
import json
import logging

import numpy as np
import pandas as pd

from ..errors import ParameterError
from .runner import ExperimentRecord, ExperimentSummary

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["index", "n", "acc", "mcc", "cen", "k_cen", "tmcc", "ratio"]
FORMATS = ("csv", "json-summary")

Sink = Union[str, TextIO]


def records_frame(records: Sequence[ExperimentRecord]) -> pd.DataFrame:
    """Records as a frame with the CSV column order."""
    frame = pd.DataFrame([asdict(r) for r in records], columns=RECORD_COLUMNS)
    frame["ratio"] = frame["ratio"].astype(np.float64)
    return frame


class RecordWriter:
    """Appends record chunks to a CSV sink; the header goes out once."""

    def __init__(self, sink: Sink):
        self.logger = logging.getLogger(__name__)
        if isinstance(sink, str):
            self._handle = open(sink, 'w', newline='')
            self._owned = True
        else:
            self._handle = sink
            self._owned = False
        self._header_written = False
        self.rows = 0

    def write(self, records: Sequence[ExperimentRecord]) -> None:
        records_frame(records).to_csv(
            self._handle,
            index=False,
            header=not self._header_written,
            float_format='%.17g',
            lineterminator='\n',
        )
        self._header_written = True
        self.rows += len(records)

    def close(self) -> None:
        if not self._header_written:
            self.write([])
        if self._owned:
            self._handle.close()
        else:
            self._handle.flush()
        self.logger.debug(f"Wrote {self.rows} records")

    def __enter__(self) -> "RecordWriter":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def write_records(records: Iterable[ExperimentRecord], sink: Sink) -> int:
    """Write all records; returns the row count."""
    with RecordWriter(sink) as writer:
        writer.write(list(records))
        return writer.rows


def write_summary(summary: ExperimentSummary, sink: Sink) -> None:
    """Summary document as JSON, config included."""
    document = json.dumps(summary.to_dict(), indent=2, sort_keys=False)
    if isinstance(sink, str):
        with open(sink, 'w') as f:
            f.write(document + "\n")
    else:
        sink.write(document + "\n")


def emit(records: Optional[Iterable[ExperimentRecord]],
         summary: Optional[ExperimentSummary],
         sink: Sink,
         format: str = "csv") -> None:
    """Serialize records (csv) or the summary (json-summary) to `sink`."""
    if format not in FORMATS:
        raise ParameterError(f"unknown output format {format!r}; expected one of {', '.join(FORMATS)}")
    try:
        if format == "csv":
            if records is None:
                raise ParameterError("csv output needs records")
            write_records(records, sink)
        else:
            if summary is None:
                raise ParameterError("json-summary output needs a summary")
            write_summary(summary, sink)
    except OSError as e:
        logger.error(f"Emitting {format} failed: {str(e)}")
        raise


def load_records(source: Sink) -> List[ExperimentRecord]:
    """Records back from a CSV written by `emit`."""
    frame = pd.read_csv(source, float_precision='round_trip')
    missing = [c for c in RECORD_COLUMNS if c not in frame.columns]
    if missing:
        raise ParameterError(f"record CSV lacks columns: {', '.join(missing)}")
    records = []
    for row in frame[RECORD_COLUMNS].to_dict("records"):
        ratio = row["ratio"]
        records.append(ExperimentRecord(
            index=int(row["index"]),
            n=int(row["n"]),
            acc=float(row["acc"]),
            mcc=float(row["mcc"]),
            cen=float(row["cen"]),
            k_cen=float(row["k_cen"]),
            tmcc=float(row["tmcc"]),
            ratio=None if pd.isna(ratio) else float(ratio),
        ))
    return records


def load_summary(source: Sink) -> Dict:
    """Summary document as a plain dict."""
    if isinstance(source, str):
        with open(source, 'r') as f:
            return json.load(f)
    return json.load(source)


def dimension_table(summary: ExperimentSummary) -> pd.DataFrame:
    """Per-dimension count and mean ratio."""
    frame = pd.DataFrame.from_dict(summary.ratio_by_dimension, orient="index", columns=["count", "mean_ratio"])
    frame.index.name = "n"
    if not frame.empty:
        frame["count"] = frame["count"].astype(int)
    return frame.sort_index()
