"""
Append-only, hash-chained ledger of cycle reports and task contracts.

One canonical JSON record per line. Every entry hashes its sequence number,
kind, payload and the previous entry's hash, and entry 0 is a genesis record
chained to an all-zero hash. The genesis payload names the digest
algorithm and verification uses it for the whole chain. The file is only
ever opened for appending.

Single writer: one HashChainLedger instance appends to a given file at a
time. Readers (verify, replay) work on whatever bytes are on disk.
Truncation at a record boundary cannot be detected without an external
anchor for the tail hash.
"""
import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ValidationError

from app.config import settings
from app.models.oracle.cycle import CycleReport, TaskSpec
from app.models.oracle.ledger import GENESIS_HASH, EntryKind, LedgerEntry, Verification
from app.utils.canonical_hash import canonical_json, make_entry_hash
from app.utils.errors import LedgerCorruptError
from app.utils.logging_util import logger


class HashChainLedger:

    def __init__(self, path: Union[str, Path], algorithm: Optional[str] = None):
        self.path = Path(path)
        self.algorithm = algorithm or settings.LEDGER_DIGEST
        self.logger = logger
        # Tail state, filled by the first verification
        self._length: Optional[int] = None
        self._tail_hash: Optional[str] = None

    # ---------------------------------------------------------
    # PUBLIC API
    # ---------------------------------------------------------
    def append(self, kind: EntryKind, payload: Union[BaseModel, dict]) -> LedgerEntry:
        """Append one entry, writing the genesis record first on an empty ledger."""
        if kind is EntryKind.GENESIS:
            raise ValueError("genesis entries are written by the ledger itself")
        if self._length is None:
            verification = self.verify()
            if not verification.ok:
                raise LedgerCorruptError(verification.corrupt_seq, verification.reason)

        if self._length == 0:
            self._write(self._build(0, EntryKind.GENESIS, {"digest": self.algorithm}, GENESIS_HASH))

        body = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else payload
        entry = self._build(self._length, kind, body, self._tail_hash)
        self._write(entry)
        self.logger.debug(f"Appended {kind.value} entry seq={entry.seq} to {self.path}")
        return entry

    def append_report(self, report: CycleReport) -> LedgerEntry:
        return self.append(EntryKind.CYCLE, report)

    def append_task(self, task: TaskSpec) -> LedgerEntry:
        return self.append(EntryKind.TASK, task)

    def verify(self) -> Verification:
        verification, entries = self._scan()
        if verification.ok:
            self._length = len(entries)
            self._tail_hash = entries[-1].hash if entries else None
            if entries:
                # Appends continue in the digest the genesis record names
                self.algorithm = entries[0].payload["digest"]
            self.logger.info(f"Ledger {self.path} verified: {verification.length} entries")
        else:
            self.logger.warning(f"Ledger {self.path} corrupt: {verification.describe()}")
        return verification

    def replay(self) -> List[CycleReport]:
        """All cycle reports in append order; task and genesis entries are skipped."""
        verification, entries = self._scan()
        if not verification.ok:
            raise LedgerCorruptError(verification.corrupt_seq, verification.reason)
        reports = []
        for entry in entries:
            if entry.kind is EntryKind.CYCLE:
                try:
                    reports.append(CycleReport.model_validate(entry.payload))
                except ValidationError as exc:
                    raise LedgerCorruptError(entry.seq, f"payload is not a cycle report: {exc}") from exc
        return reports

    # ---------------------------------------------------------
    # INTERNAL CORE LOGIC
    # ---------------------------------------------------------
    def _build(self, seq: int, kind: EntryKind, payload: dict, prev_hash: str) -> LedgerEntry:
        return LedgerEntry(
            seq=seq,
            kind=kind,
            payload=payload,
            prev_hash=prev_hash,
            hash=make_entry_hash(seq, kind.value, payload, prev_hash, self.algorithm),
        )

    @staticmethod
    def _render(entry: LedgerEntry) -> str:
        return canonical_json(entry.model_dump(mode="json"))

    def _write(self, entry: LedgerEntry) -> None:
        with self.path.open("ab") as fh:
            fh.write(self._render(entry).encode("utf-8") + b"\n")
        self._length = entry.seq + 1
        self._tail_hash = entry.hash

    def _scan(self) -> Tuple[Verification, List[LedgerEntry]]:
        """Recompute the chain; stop at the first entry that does not hold."""
        if not self.path.exists():
            return Verification(ok=True, length=0), []
        data = self.path.read_bytes()
        if not data:
            return Verification(ok=True, length=0), []

        lines = data.split(b"\n")
        trailing = lines.pop()
        entries: List[LedgerEntry] = []

        def corrupt(seq: int, reason: str):
            return Verification(ok=False, length=len(entries), corrupt_seq=seq, reason=reason), entries

        prev_hash = GENESIS_HASH
        digest = self.algorithm
        for seq, raw in enumerate(lines):
            try:
                record = json.loads(raw.decode("utf-8"))
                entry = LedgerEntry.model_validate(record)
            except (UnicodeDecodeError, ValueError) as exc:
                return corrupt(seq, f"unreadable record: {exc.__class__.__name__}")

            if entry.seq != seq:
                return corrupt(seq, f"sequence number {entry.seq} out of order")
            if (seq == 0) != (entry.kind is EntryKind.GENESIS):
                return corrupt(seq, "genesis entry must be exactly the first record")
            if entry.prev_hash != prev_hash:
                return corrupt(seq, "prev_hash does not match the previous entry")
            if seq == 0:
                digest = entry.payload.get("digest")
                if not isinstance(digest, str):
                    return corrupt(0, "genesis record names no digest")
            try:
                expected = make_entry_hash(seq, entry.kind.value, entry.payload, entry.prev_hash, digest)
                rendered = self._render(entry).encode("utf-8")
            except ValueError as exc:
                return corrupt(seq, f"entry cannot be hashed: {exc}")
            if entry.hash != expected:
                return corrupt(seq, "hash mismatch")
            if rendered != raw:
                return corrupt(seq, "record is not in canonical form")

            entries.append(entry)
            prev_hash = entry.hash

        if trailing:
            return corrupt(len(lines), "incomplete trailing record")
        return Verification(ok=True, length=len(entries)), entries
