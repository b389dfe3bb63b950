from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

GENESIS_HASH = "0" * 64


class EntryKind(str, Enum):
    GENESIS = "Genesis"
    CYCLE = "Cycle"
    TASK = "Task"


class LedgerEntry(BaseModel):
    """One line of the ledger file; field order is the on-disk key order."""
    model_config = ConfigDict(frozen=True)

    seq: int = Field(ge=0)
    kind: EntryKind
    payload: Dict[str, Any]
    prev_hash: str = Field(pattern=r"^[0-9a-f]{64}$")
    hash: str = Field(pattern=r"^[0-9a-f]{64}$")


class Verification(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    length: int = Field(ge=0, description="Number of intact entries, genesis included.")
    corrupt_seq: Optional[int] = None
    reason: Optional[str] = None

    def describe(self) -> str:
        if self.ok:
            return f"Ok({self.length})"
        return f"Corrupt({self.corrupt_seq}): {self.reason}"
