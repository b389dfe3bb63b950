import json

import pytest

from app.models.oracle.cycle import OracleConfig, TaskKind, TaskSpec
from app.models.oracle.ledger import GENESIS_HASH, EntryKind
from app.services.ledger.hash_ledger import HashChainLedger
from app.services.oracle.reward_oracle import reward_oracle
from app.utils.canonical_hash import make_entry_hash
from app.utils.errors import LedgerCorruptError

TASK = TaskSpec(id="T-ledger", kind=TaskKind.AI, legal_cost=1.0, organisation_cost=0.5,
                contract_terms={"delivery": "per cycle"})


@pytest.fixture
def reports(worked_scenario):
    return reward_oracle.simulate(worked_scenario, [TASK], OracleConfig(automation_rate=0.3), cycles=3)


@pytest.fixture
def ledger_path(tmp_path):
    return tmp_path / "oracle.ledger"


def _filled(path, reports):
    ledger = HashChainLedger(path)
    ledger.append_task(TASK)
    for report in reports:
        ledger.append_report(report)
    return ledger


# =========================================================================
# APPENDING
# =========================================================================
def test_first_append_writes_genesis(ledger_path, reports):
    entry = HashChainLedger(ledger_path).append_report(reports[0])
    lines = ledger_path.read_bytes().splitlines()
    genesis = json.loads(lines[0])

    assert len(lines) == 2
    assert genesis["seq"] == 0 and genesis["kind"] == "Genesis"
    assert genesis["prev_hash"] == GENESIS_HASH
    assert entry.seq == 1 and entry.kind is EntryKind.CYCLE
    assert entry.prev_hash == genesis["hash"]
    assert list(json.loads(lines[1])) == ["seq", "kind", "payload", "prev_hash", "hash"]


def test_entry_hash_covers_sequence_and_parent(ledger_path, reports):
    ledger = HashChainLedger(ledger_path)
    first = ledger.append_report(reports[0])
    second = ledger.append_report(reports[0])
    assert first.payload == second.payload
    assert first.hash != second.hash
    assert second.hash == make_entry_hash(second.seq, "Cycle", second.payload, first.hash)


def test_appends_only_extend_the_file(ledger_path, reports):
    ledger = _filled(ledger_path, reports[:1])
    before = ledger_path.read_bytes()
    ledger.append_report(reports[1])
    assert ledger_path.read_bytes().startswith(before)


def test_new_instance_continues_the_chain(ledger_path, reports):
    _filled(ledger_path, reports[:2])
    entry = HashChainLedger(ledger_path).append_report(reports[2])
    assert entry.seq == 4
    assert HashChainLedger(ledger_path).verify().describe() == "Ok(5)"


def test_genesis_cannot_be_appended(ledger_path):
    with pytest.raises(ValueError):
        HashChainLedger(ledger_path).append(EntryKind.GENESIS, {})


def test_short_digest_is_rejected(ledger_path, reports):
    with pytest.raises(ValueError):
        HashChainLedger(ledger_path, algorithm="sha1").append_report(reports[0])


def test_alternative_digest_is_read_from_genesis(ledger_path, reports):
    HashChainLedger(ledger_path, algorithm="blake2s").append_report(reports[0])
    assert HashChainLedger(ledger_path, algorithm="sha256").verify().describe() == "Ok(2)"

    ledger = HashChainLedger(ledger_path)
    entry = ledger.append_report(reports[1])
    assert ledger.algorithm == "blake2s"
    assert entry.hash == make_entry_hash(2, "Cycle", entry.payload, entry.prev_hash, "blake2s")
    assert HashChainLedger(ledger_path).verify().describe() == "Ok(3)"


@pytest.mark.parametrize("payload, reason", [
    ({}, "genesis record names no digest"),
    ({"digest": 256}, "genesis record names no digest"),
    ({"digest": "no-such-digest"}, "entry cannot be hashed"),
])
def test_genesis_digest_must_be_usable(ledger_path, payload, reason):
    record = {"seq": 0, "kind": "Genesis", "payload": payload, "prev_hash": GENESIS_HASH, "hash": "0" * 64}
    ledger_path.write_text(json.dumps(record) + "\n")
    verification = HashChainLedger(ledger_path).verify()
    assert not verification.ok and verification.corrupt_seq == 0
    assert verification.reason.startswith(reason), verification.reason


# =========================================================================
# VERIFICATION
# =========================================================================
def test_missing_and_empty_ledgers_verify(ledger_path):
    assert HashChainLedger(ledger_path).verify().describe() == "Ok(0)"
    ledger_path.write_bytes(b"")
    assert HashChainLedger(ledger_path).verify().describe() == "Ok(0)"


def test_untouched_ledger_verifies(ledger_path, reports):
    _filled(ledger_path, reports)
    verification = HashChainLedger(ledger_path).verify()
    assert verification.ok and verification.length == 5


def test_flipped_payload_byte_is_located(ledger_path, reports):
    _filled(ledger_path, reports)
    data = bytearray(ledger_path.read_bytes())
    lines = bytes(data).split(b"\n")
    target = 3
    offset = sum(len(line) + 1 for line in lines[:target])
    offset += lines[target].index(b'"payload":{"') + len(b'"payload":{"')
    data[offset] ^= 0x01
    ledger_path.write_bytes(bytes(data))

    verification = HashChainLedger(ledger_path).verify()
    assert not verification.ok
    assert verification.corrupt_seq == target
    assert verification.length == target
    assert verification.describe().startswith(f"Corrupt({target})")


def test_every_single_byte_mutation_is_detected(ledger_path, reports):
    _filled(ledger_path, reports[:2])
    original = ledger_path.read_bytes()
    line_of = []
    for index, line in enumerate(original.split(b"\n")[:-1]):
        line_of.extend([index] * (len(line) + 1))

    for position in range(len(original)):
        mutated = bytearray(original)
        mutated[position] ^= 0x01
        ledger_path.write_bytes(bytes(mutated))
        verification = HashChainLedger(ledger_path).verify()
        assert not verification.ok, f"Mutation at byte {position} went unnoticed"
        assert verification.corrupt_seq <= line_of[position]


def test_truncation_at_a_record_boundary_is_a_shorter_ledger(ledger_path, reports):
    _filled(ledger_path, reports)
    lines = ledger_path.read_bytes().split(b"\n")
    ledger_path.write_bytes(b"\n".join(lines[:3]) + b"\n")
    assert HashChainLedger(ledger_path).verify().describe() == "Ok(3)"


def test_truncation_inside_a_record_is_corrupt(ledger_path, reports):
    _filled(ledger_path, reports)
    data = ledger_path.read_bytes()
    ledger_path.write_bytes(data[:-10])
    verification = HashChainLedger(ledger_path).verify()
    assert not verification.ok
    assert verification.corrupt_seq == 4


def test_appending_to_a_corrupt_ledger_fails(ledger_path, reports):
    _filled(ledger_path, reports[:1])
    data = bytearray(ledger_path.read_bytes())
    data[-5] ^= 0x01
    ledger_path.write_bytes(bytes(data))
    with pytest.raises(LedgerCorruptError):
        HashChainLedger(ledger_path).append_report(reports[1])


# =========================================================================
# REPLAY
# =========================================================================
def test_replay_returns_the_live_reports(ledger_path, reports):
    _filled(ledger_path, reports)
    assert HashChainLedger(ledger_path).replay() == reports


def test_replay_skips_non_cycle_entries(ledger_path):
    ledger = HashChainLedger(ledger_path)
    ledger.append_task(TASK)
    assert ledger.replay() == []
    lines = ledger_path.read_bytes().split(b"\n")
    ledger_path.write_bytes(lines[0] + b"\n")
    assert HashChainLedger(ledger_path).replay() == []


def test_replay_of_missing_ledger_is_empty(ledger_path):
    assert HashChainLedger(ledger_path).replay() == []


def test_hundred_cycle_round_trip(ledger_path, worked_scenario, worked_document):
    tasks = [TaskSpec.model_validate(t) for t in worked_document["tasks"]]
    config = OracleConfig.model_validate(worked_document["oracle"])
    live = reward_oracle.simulate(worked_scenario, tasks, config, cycles=100)

    ledger = HashChainLedger(ledger_path)
    for task in tasks:
        ledger.append_task(task)
    for report in live:
        ledger.append_report(report)

    assert HashChainLedger(ledger_path).verify().length == 1 + len(tasks) + 100
    assert HashChainLedger(ledger_path).replay() == live


def test_replay_of_corrupt_ledger_raises(ledger_path, reports):
    _filled(ledger_path, reports)
    data = bytearray(ledger_path.read_bytes())
    data[len(data) // 2] ^= 0x01
    ledger_path.write_bytes(bytes(data))
    with pytest.raises(LedgerCorruptError):
        HashChainLedger(ledger_path).replay()
