"""Dataset loading and splitting.

Two source formats: the tab-separated statement corpus (id / six-way label /
statement in the first three columns) and the evaluation CSV with a
headline,label,source,domain header. Loaders skip malformed rows with counted
warnings and fail outright past a 5% malformed-row budget.
"""

from __future__ import annotations

import csv
import enum
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..core import (
    BinaryLabel,
    ClaimRecord,
    map_liar_label,
    parse_binary_label,
    parse_six_way_label,
)
from ..errors import DatasetFormatError

MALFORMED_BUDGET = 0.05


class SourceFormat(enum.Enum):
    LIAR_TSV = "LiarTsv"
    EVAL_CSV = "EvalCsv"


@dataclass(frozen=True)
class Dataset:
    records: tuple[ClaimRecord, ...]
    name: str
    source_format: SourceFormat
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        ids = [record.id for record in self.records]
        if len(set(ids)) != len(ids):
            duplicates = sorted({i for i in ids if ids.count(i) > 1})[:5]
            raise DatasetFormatError(f"duplicate record ids: {duplicates}")
        unlabeled = [record.id for record in self.records if record.label is None]
        if unlabeled:
            raise DatasetFormatError(f"records without labels: {unlabeled[:5]}")

    def __len__(self) -> int:
        return len(self.records)

    def labels(self) -> list[BinaryLabel]:
        return [record.label for record in self.records]  # type: ignore[misc]


def load_liar(path: str | Path, *, name: str | None = None) -> Dataset:
    """Load the tab-separated statement corpus.

    Rows with missing columns, unknown labels, or empty statements are
    skipped with a warning each; more than 5% such rows is a load error
    naming the first offenders.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DatasetFormatError(f"cannot read {path}: {exc}") from exc

    records: list[ClaimRecord] = []
    warnings: list[str] = []
    seen_ids: set[str] = set()
    total = 0
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        total += 1
        columns = line.split("\t")
        if len(columns) < 3:
            warnings.append(f"row {line_number}: expected >= 3 columns, got {len(columns)}")
            continue
        row_id, raw_label, statement = columns[0].strip(), columns[1], columns[2]
        try:
            six_way = parse_six_way_label(raw_label, context=f"row {line_number}")
        except DatasetFormatError as exc:
            warnings.append(str(exc))
            continue
        if not statement.strip():
            warnings.append(f"row {line_number}: empty statement")
            continue
        if not row_id or row_id in seen_ids:
            row_id = f"liar-{line_number}"
        seen_ids.add(row_id)
        records.append(
            ClaimRecord(
                id=row_id,
                text=statement.strip(),
                label=map_liar_label(six_way),
                raw_label=six_way,
            )
        )
    if total == 0:
        raise DatasetFormatError(f"{path} is empty")
    if len(warnings) > MALFORMED_BUDGET * total:
        preview = "; ".join(warnings[:5])
        raise DatasetFormatError(
            f"{len(warnings)}/{total} malformed rows in {path} "
            f"(budget {MALFORMED_BUDGET:.0%}); first offenders: {preview}"
        )
    return Dataset(
        records=tuple(records),
        name=name or path.stem,
        source_format=SourceFormat.LIAR_TSV,
        warnings=tuple(warnings),
    )


EVAL_COLUMNS = ("headline", "label", "source", "domain")


def load_eval(path: str | Path, *, name: str | None = None) -> Dataset:
    """Load the evaluation CSV (headline,label,source,domain; optional id)."""
    path = Path(path)
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            header = reader.fieldnames or []
            missing = [col for col in EVAL_COLUMNS if col not in header]
            if missing:
                raise DatasetFormatError(f"{path} is missing header columns {missing}")
            records = []
            for row_number, row in enumerate(reader, start=2):
                row_id = (row.get("id") or "").strip() or f"eval-{row_number - 1:04d}"
                label = parse_binary_label(
                    row["label"] or "", context=f"{path} row {row_number}"
                )
                text = (row["headline"] or "").strip()
                if not text:
                    raise DatasetFormatError(f"{path} row {row_number}: empty headline")
                records.append(
                    ClaimRecord(
                        id=row_id,
                        text=text,
                        label=label,
                        source=(row.get("source") or "").strip() or None,
                        domain_tag=(row.get("domain") or "").strip() or None,
                    )
                )
    except OSError as exc:
        raise DatasetFormatError(f"cannot read {path}: {exc}") from exc
    return Dataset(
        records=tuple(records),
        name=name or path.stem,
        source_format=SourceFormat.EVAL_CSV,
    )


def write_eval_csv(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset in the evaluation CSV format (round-trips via load_eval)."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(("id",) + EVAL_COLUMNS)
        for record in dataset.records:
            writer.writerow(
                (
                    record.id,
                    record.text,
                    record.label.as_report_string(),  # type: ignore[union-attr]
                    record.source or "",
                    record.domain_tag or "",
                )
            )


def split_dataset(
    dataset: Dataset, train_fraction: float = 0.7, seed: int = 42
) -> tuple[Dataset, Dataset]:
    """Seeded random split preserving no class balance (plain shuffle)."""
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must be in (0, 1)")
    order = list(dataset.records)
    random.Random(seed).shuffle(order)
    cut = int(round(train_fraction * len(order)))
    return (
        Dataset(tuple(order[:cut]), f"{dataset.name}-train", dataset.source_format),
        Dataset(tuple(order[cut:]), f"{dataset.name}-test", dataset.source_format),
    )


def stratified_split(
    dataset: Dataset, fraction: float = 0.2, seed: int = 42
) -> tuple[Dataset, Dataset]:
    """Seeded label-stratified split; the first part holds `fraction` of each
    class (used for threshold calibration, excluded from reporting)."""
    if not 0 < fraction < 1:
        raise ValueError("fraction must be in (0, 1)")
    rng = random.Random(seed)
    first: list[ClaimRecord] = []
    second: list[ClaimRecord] = []
    for label in (BinaryLabel.RELIABLE, BinaryLabel.UNRELIABLE):
        bucket = [record for record in dataset.records if record.label is label]
        rng.shuffle(bucket)
        take = int(round(fraction * len(bucket)))
        first.extend(bucket[:take])
        second.extend(bucket[take:])
    by_position = {record.id: i for i, record in enumerate(dataset.records)}
    first.sort(key=lambda record: by_position[record.id])
    second.sort(key=lambda record: by_position[record.id])
    return (
        Dataset(tuple(first), f"{dataset.name}-calib", dataset.source_format),
        Dataset(tuple(second), f"{dataset.name}-report", dataset.source_format),
    )
