"""Streaming curation: join, deduplicate, filter, and emit the parent set.

Every stage is written to hold memory independent of input row count:
the join is a sorted merge (with an external-sort fallback for unsorted
dumps), deduplication runs two disk-backed hash passes (one per field),
and filtering streams record by record through a bounded worker pool.
"""

from __future__ import annotations

import heapq
import logging
import os
import tempfile
import zlib
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator

from . import molecule_from_smiles
from .descriptors import compute_descriptors
from .errors import MalformedLine, MissingFile, SmilesParseError
from .filters import CRITERION_ORDER, FilterConfig, passes_filters
from .manifest import write_manifest

logger = logging.getLogger(__name__)

__all__ = ["MoleculeRecord", "CurationStats", "ingest_join", "deduplicate", "curate"]

# Disk-backed stages aim for roughly this much data per in-memory chunk.
_BUCKET_TARGET_BYTES = 8 << 20
_SORT_CHUNK_LINES = 500_000


@dataclass(slots=True)
class MoleculeRecord:
    id: int
    smiles: str
    iupac: str


@dataclass(slots=True)
class CurationStats:
    """Counters for one curation run.

    `retained + dropped_duplicate_smiles + dropped_duplicate_iupac +
    dropped_parse_error + dropped_filtered == rows_joined`. The
    per-criterion map counts every violated criterion per record, so its
    values can sum to more than `dropped_filtered`.
    """

    rows_read: int = 0
    rows_joined: int = 0
    malformed_lines: int = 0
    dropped_duplicate_smiles: int = 0
    dropped_duplicate_iupac: int = 0
    dropped_parse_error: int = 0
    dropped_filtered: int = 0
    dropped_per_filter: dict[str, int] = field(default_factory=dict)
    retained: int = 0

    def conservation_holds(self) -> bool:
        return self.rows_joined == (
            self.retained
            + self.dropped_duplicate_smiles
            + self.dropped_duplicate_iupac
            + self.dropped_parse_error
            + self.dropped_filtered
        )

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for name in (
                "rows_read", "rows_joined", "malformed_lines",
                "dropped_duplicate_smiles", "dropped_duplicate_iupac",
                "dropped_parse_error", "dropped_filtered",
            ):
                fh.write(f"{name}\t{getattr(self, name)}\n")
            for criterion in CRITERION_ORDER:
                fh.write(
                    f"dropped_filter.{criterion}\t{self.dropped_per_filter.get(criterion, 0)}\n"
                )
            fh.write(f"retained\t{self.retained}\n")

    @classmethod
    def read(cls, path) -> "CurationStats":
        stats = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                name, value = line.rstrip("\n").split("\t")
                if name.startswith("dropped_filter."):
                    if int(value):
                        stats.dropped_per_filter[name.split(".", 1)[1]] = int(value)
                else:
                    setattr(stats, name, int(value))
        return stats


# -- TSV ingestion -----------------------------------------------------------


def _read_pairs(path, stats: CurationStats | None) -> Iterator[tuple[int, str]]:
    """Yield (id, value) from an `id<TAB>value` file, skipping bad lines."""
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line:
                continue
            if stats is not None:
                stats.rows_read += 1
            parts = line.split("\t")
            if len(parts) != 2 or not parts[1]:
                logger.warning("%s:%d: malformed line skipped", path, lineno)
                if stats is not None:
                    stats.malformed_lines += 1
                continue
            try:
                key = int(parts[0])
            except ValueError:
                logger.warning("%s:%d: non-integer id skipped", path, lineno)
                if stats is not None:
                    stats.malformed_lines += 1
                continue
            yield key, parts[1]


def _is_sorted_by_id(path) -> bool:
    last = None
    for key, _ in _read_pairs(path, None):
        if last is not None and key < last:
            return False
        last = key
    return True


def _external_sort_pairs(
    pairs: Iterable[tuple[int, str]], workdir: str
) -> Iterator[tuple[int, str]]:
    """Chunk-sort (id, value) pairs to temp files and merge-stream them."""
    chunk_paths: list[str] = []
    chunk: list[tuple[int, str]] = []

    def flush() -> None:
        nonlocal chunk
        if not chunk:
            return
        chunk.sort()
        fd, path = tempfile.mkstemp(dir=workdir, suffix=".sorted")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for key, value in chunk:
                fh.write(f"{key}\t{value}\n")
        chunk_paths.append(path)
        chunk = []

    for pair in pairs:
        chunk.append(pair)
        if len(chunk) >= _SORT_CHUNK_LINES:
            flush()
    flush()

    streams = [_read_pairs(p, None) for p in chunk_paths]
    try:
        yield from heapq.merge(*streams)
    finally:
        for p in chunk_paths:
            try:
                os.unlink(p)
            except FileNotFoundError:
                pass


def _sorted_unique_pairs(path, stats: CurationStats, workdir: str) -> Iterator[tuple[int, str]]:
    if _is_sorted_by_id(path):
        pairs: Iterable[tuple[int, str]] = _read_pairs(path, stats)
    else:
        logger.warning("%s is not sorted by id; falling back to external sort", path)
        pairs = _external_sort_pairs(_read_pairs(path, stats), workdir)
    last = None
    for key, value in pairs:
        if last is not None and key == last:
            logger.warning("duplicate id %d skipped", key)
            stats.malformed_lines += 1
            continue
        last = key
        yield key, value


def ingest_join(
    smiles_file, iupac_file, stats: CurationStats | None = None, workdir: str | None = None
) -> Iterator[MoleculeRecord]:
    """Inner-join two `id<TAB>value` dumps on id, streamed in id order.

    Raises MissingFile up front; malformed lines are logged, counted, and
    skipped.
    """
    for path in (smiles_file, iupac_file):
        if not Path(path).exists():
            raise MissingFile(str(path))
    if stats is None:
        stats = CurationStats()
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        left = _sorted_unique_pairs(smiles_file, stats, tmp)
        right = _sorted_unique_pairs(iupac_file, stats, tmp)
        lhs = next(left, None)
        rhs = next(right, None)
        while lhs is not None and rhs is not None:
            if lhs[0] == rhs[0]:
                stats.rows_joined += 1
                yield MoleculeRecord(id=lhs[0], smiles=lhs[1], iupac=rhs[1])
                lhs = next(left, None)
                rhs = next(right, None)
            elif lhs[0] < rhs[0]:
                lhs = next(left, None)
            else:
                rhs = next(right, None)
        # Drain the longer side so row counters reflect the whole file.
        for _ in left:
            pass
        for _ in right:
            pass


# -- deduplication ------------------------------------------------------------


def _spool_records(records: Iterable[MoleculeRecord], workdir: str) -> str:
    fd, path = tempfile.mkstemp(dir=workdir, suffix=".joined")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        for rec in records:
            if "\t" in rec.smiles or "\t" in rec.iupac:
                raise MalformedLine(f"tab inside record {rec.id}")
            fh.write(f"{rec.id}\t{rec.smiles}\t{rec.iupac}\n")
    return path


def _iter_spool(path, skip: Iterator[int] | None = None) -> Iterator[MoleculeRecord]:
    """Stream spooled records, skipping ids from a sorted drop stream."""
    drop = next(skip, None) if skip is not None else None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            rid_s, smiles, iupac = line.rstrip("\n").split("\t")
            rid = int(rid_s)
            while drop is not None and drop < rid:
                drop = next(skip, None)
            if drop is not None and drop == rid:
                continue
            yield MoleculeRecord(id=rid, smiles=smiles, iupac=iupac)


def _collision_drops(
    records: Iterable[MoleculeRecord], key: str, workdir: str
) -> tuple[str, int]:
    """Hash-partition records on one field; return (sorted drop-id file, count).

    Within each disk bucket the smallest id per value survives; every
    other id is written to the drop file.
    """
    spool = _spool_records(records, workdir) if not isinstance(records, str) else records
    size = os.path.getsize(spool)
    n_buckets = max(1, min(4096, size // _BUCKET_TARGET_BYTES + 1))

    bucket_paths = []
    bucket_files = []
    for i in range(n_buckets):
        fd, path = tempfile.mkstemp(dir=workdir, suffix=f".bucket{i}")
        bucket_paths.append(path)
        bucket_files.append(os.fdopen(fd, "w", encoding="utf-8"))
    try:
        for rec in _iter_spool(spool):
            value = getattr(rec, key)
            bucket = zlib.crc32(value.encode()) % n_buckets
            bucket_files[bucket].write(f"{rec.id}\t{value}\n")
    finally:
        for fh in bucket_files:
            fh.close()

    dropped: list[int] = []
    drop_chunks: list[str] = []

    def flush_drops() -> None:
        nonlocal dropped
        if not dropped:
            return
        dropped.sort()
        fd, path = tempfile.mkstemp(dir=workdir, suffix=".drops")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.writelines(f"{rid}\n" for rid in dropped)
        drop_chunks.append(path)
        dropped = []

    count = 0
    for path in bucket_paths:
        best: dict[str, int] = {}
        rows: list[tuple[int, str]] = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                rid_s, value = line.rstrip("\n").split("\t", 1)
                rid = int(rid_s)
                rows.append((rid, value))
                if value not in best or rid < best[value]:
                    best[value] = rid
        for rid, value in rows:
            if best[value] != rid:
                dropped.append(rid)
                count += 1
                if len(dropped) >= _SORT_CHUNK_LINES:
                    flush_drops()
        os.unlink(path)
    flush_drops()

    fd, merged = tempfile.mkstemp(dir=workdir, suffix=".dropsorted")
    streams = [open(p, encoding="utf-8") for p in drop_chunks]
    with os.fdopen(fd, "w", encoding="utf-8") as out:
        for line in heapq.merge(*streams, key=int):
            out.write(line)
    for fh in streams:
        fh.close()
    for p in drop_chunks:
        os.unlink(p)
    return merged, count


def _read_ids(path) -> Iterator[int]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            yield int(line)


def deduplicate(
    records: Iterable[MoleculeRecord],
    stats: CurationStats | None = None,
    workdir: str | None = None,
) -> Iterator[MoleculeRecord]:
    """Drop records repeating an earlier SMILES or IUPAC value.

    The SMILES pass runs first over all records; the IUPAC pass runs over
    its survivors, so a record dropped for a SMILES collision does not
    block a later record sharing only its name. Smallest id always wins.
    Both passes are disk-backed hash partitions, keeping memory bounded.
    """
    if stats is None:
        stats = CurationStats()
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        spool = _spool_records(records, tmp)
        smiles_drops, n_smiles = _collision_drops(spool, "smiles", tmp)
        stats.dropped_duplicate_smiles += n_smiles

        survivors = _iter_spool(spool, skip=_read_ids(smiles_drops))
        iupac_drops, n_iupac = _collision_drops(survivors, "iupac", tmp)
        stats.dropped_duplicate_iupac += n_iupac

        both = heapq.merge(_read_ids(smiles_drops), _read_ids(iupac_drops))
        yield from _iter_spool(spool, skip=both)


# -- filtering ----------------------------------------------------------------

_WORKER_CFG: FilterConfig | None = None


def _init_worker(cfg: FilterConfig) -> None:
    global _WORKER_CFG
    _WORKER_CFG = cfg


def _evaluate(record_tuple: tuple[int, str, str]) -> tuple[int, str, str, bool, tuple[str, ...]]:
    rid, smiles, iupac = record_tuple
    cfg = _WORKER_CFG
    assert cfg is not None
    try:
        graph = molecule_from_smiles(smiles)
    except SmilesParseError:
        return rid, smiles, iupac, False, ("__parse_error__",)
    ds = compute_descriptors(graph, whitelist=cfg.whitelist)
    verdict = passes_filters(ds, cfg)
    return rid, smiles, iupac, verdict.passed, tuple(verdict.reasons)


def curate(
    records: Iterable[MoleculeRecord],
    cfg: FilterConfig,
    out_path,
    stats: CurationStats | None = None,
    workers: int = 1,
) -> CurationStats:
    """Filter a deduplicated stream and write the parent dataset TSV.

    Records are evaluated in order (optionally on a worker pool whose
    ordered output keeps the artifact byte-identical for any worker
    count); per-record failures never abort the run.
    """
    if stats is None:
        stats = CurationStats()
    tuples = ((r.id, r.smiles, r.iupac) for r in records)
    with open(out_path, "w", encoding="utf-8") as out:
        if workers <= 1:
            _init_worker(cfg)
            results = map(_evaluate, tuples)
            _consume(results, out, stats)
        else:
            with Pool(workers, initializer=_init_worker, initargs=(cfg,)) as pool:
                results = pool.imap(_evaluate, tuples, chunksize=256)
                _consume(results, out, stats)
    return stats


def _consume(results, out, stats: CurationStats) -> None:
    for rid, smiles, iupac, passed, reasons in results:
        if passed:
            out.write(f"{rid}\t{smiles}\t{iupac}\n")
            stats.retained += 1
        elif reasons == ("__parse_error__",):
            stats.dropped_parse_error += 1
        else:
            stats.dropped_filtered += 1
            for reason in reasons:
                stats.dropped_per_filter[reason] = (
                    stats.dropped_per_filter.get(reason, 0) + 1
                )


def curate_files(
    smiles_file,
    iupac_file,
    cfg: FilterConfig,
    out_path,
    stats_path=None,
    workers: int = 1,
    workdir: str | None = None,
) -> CurationStats:
    """The full file-to-file pipeline: join, dedup, filter, stats, manifest."""
    from .filters import config_digest

    stats = CurationStats()
    stream = ingest_join(smiles_file, iupac_file, stats, workdir=workdir)
    unique = deduplicate(stream, stats, workdir=workdir)
    curate(unique, cfg, out_path, stats, workers=workers)
    if stats_path is not None:
        stats.write(stats_path)
    write_manifest(
        out_path,
        command="curate",
        params={"config_sha256": config_digest(cfg), "workers_independent": True},
        inputs={"smiles": smiles_file, "iupac": iupac_file},
    )
    return stats
