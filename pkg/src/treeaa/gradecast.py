"""Graded broadcast: every party distributes one value in 3 rounds.

All n sender instances run in parallel inside one invocation; the echo and
vote rounds therefore carry per-sender vectors instead of n separate
messages.  Per instance, the receiving party q ends with a pair
(value, grade):

* round 1: each sender broadcasts its value;
* round 2: each party echoes, per sender, the value it received;
* round 3: each party broadcasts, per sender, its candidate: the unique
  value echoed by at least n - t parties (absent otherwise);
* output:  grade 2 for a value carried by at least n - t votes, grade 1
  for at least t + 1 votes, grade 0 (no value) otherwise.

For t < n/3 two candidate values can never both reach the echo threshold
(2(n - t) > n) and any value reaching t + 1 votes carries an honest vote,
so the per-instance output is well defined; the guarantees themselves
(integrity for honest senders, grade/value consistency across honest
receivers) are established by the adversarial test suites, not assumed.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .simnet import Envelope, broadcast, first_payload_by_sender
from .wire import (
    TAG_ECHO,
    TAG_VALUE,
    TAG_VOTE,
    decode_vector,
    encode_vector,
    frame,
    parse_frame,
)


class GradedValue(NamedTuple):
    """Delivered (value, grade) pair; value is None exactly when grade is 0."""

    value: bytes | None
    grade: int


def received_values(n: int, inbox: Iterable[Envelope]) -> list[bytes | None]:
    """Per-sender value from round-1 frames (index s-1 for sender s)."""
    out: list[bytes | None] = [None] * n
    for sender, payload in first_payload_by_sender(inbox).items():
        parsed = parse_frame(payload)
        if parsed is not None and parsed[0] == TAG_VALUE:
            out[sender - 1] = parsed[1]
    return out


def received_vectors(n: int, inbox: Iterable[Envelope], tag: int) -> list[list[bytes | None] | None]:
    """Per-sender decoded entry vectors for echo or vote rounds."""
    out: list[list[bytes | None] | None] = [None] * n
    for sender, payload in first_payload_by_sender(inbox).items():
        parsed = parse_frame(payload)
        if parsed is not None and parsed[0] == tag:
            out[sender - 1] = decode_vector(parsed[1], n)
    return out


def _tally(column: Iterable[bytes | None]) -> dict[bytes, int]:
    counts: dict[bytes, int] = {}
    for value in column:
        if value is not None:
            counts[value] = counts.get(value, 0) + 1
    return counts


def compute_candidates(n: int, t: int, echoes: list[list[bytes | None] | None]) -> list[bytes | None]:
    """Per sender instance, the value echoed by at least n - t parties."""
    candidates: list[bytes | None] = [None] * n
    threshold = n - t
    for s in range(n):
        counts = _tally(vec[s] for vec in echoes if vec is not None)
        if counts:
            best = max(counts, key=lambda v: (counts[v], v))
            if counts[best] >= threshold:
                candidates[s] = best
    return candidates


def grade_votes(n: int, t: int, votes: list[list[bytes | None] | None]) -> dict[int, GradedValue]:
    """Fold the vote round into per-sender (value, grade) outputs."""
    outputs: dict[int, GradedValue] = {}
    for s in range(n):
        counts = _tally(vec[s] for vec in votes if vec is not None)
        value, grade = None, 0
        if counts:
            best = max(counts, key=lambda v: (counts[v], v))
            if counts[best] >= n - t:
                value, grade = best, 2
            elif counts[best] >= t + 1:
                value, grade = best, 1
        outputs[s + 1] = GradedValue(value, grade)
    return outputs


def gradecast_all(n: int, t: int, pid: int, value: bytes):
    """3-round machine; returns {sender pid: GradedValue} for all n instances."""
    inbox = yield broadcast(n, frame(TAG_VALUE, value))
    mine = received_values(n, inbox)
    inbox = yield broadcast(n, frame(TAG_ECHO, encode_vector(mine)))
    echoes = received_vectors(n, inbox, TAG_ECHO)
    candidates = compute_candidates(n, t, echoes)
    inbox = yield broadcast(n, frame(TAG_VOTE, encode_vector(candidates)))
    votes = received_vectors(n, inbox, TAG_VOTE)
    return grade_votes(n, t, votes)


def run_gradecast(n, t, values, adversary=None, seed=0, round_cap=60):
    """Convenience runner: one gradecast invocation over the simulator.

    ``values`` maps pid to the byte string that party distributes.  Returns
    ({honest pid: {sender pid: GradedValue}}, transcript).
    """
    from .simnet import GeneratorProgram, run_simulation

    programs = [
        GeneratorProgram(gradecast_all(n, t, pid, values[pid])) for pid in range(1, n + 1)
    ]
    return run_simulation(n, t, programs, adversary, seed, round_cap)
