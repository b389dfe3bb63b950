import hashlib
import json
from typing import Any

from app.config import settings


def canonical_json(obj: Any) -> str:
    # Key order is insertion order; floats use repr (shortest round-trip)
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def make_entry_hash(seq: int, kind: str, payload: Any, prev_hash: str, algorithm: str = None) -> str:
    raw = f"{seq}|{kind}|{canonical_json(payload)}|{prev_hash}"
    digest = hashlib.new(algorithm or settings.LEDGER_DIGEST, raw.encode("utf-8"))
    if digest.digest_size != 32:
        raise ValueError(f"digest '{digest.name}' yields {digest.digest_size} bytes; 32 are required")
    return digest.hexdigest()
