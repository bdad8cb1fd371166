"""In-memory authenticated broadcast board, round scheduler, fault
injection, and the trusted-party oracle used to cross-check real runs.

The board is append-only and totally ordered; the sender field is set by
the scheduler, so authentication holds by construction.  All per-party
randomness is derived from the master seed, making every ceremony
reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from . import pke, protocol
from .protocol import (ComplaintReveal, DealerState, DealMessage, GuardianSet,
                       Params, PublicState, ReconstructionOutcome, SecretReveal,
                       ShareReveal)


class ActivationError(Exception):
    """Malformed activation handed to the trusted-party oracle."""


@dataclass(frozen=True)
class BoardEntry:
    sender: int
    round: int
    message: object


class BroadcastBoard:
    """Append-only totally ordered message log."""

    def __init__(self):
        self._entries = []

    def append(self, sender: int, round_no: int, message) -> None:
        self._entries.append(BoardEntry(sender, round_no, message))

    def entries(self, round_no=None):
        if round_no is None:
            return list(self._entries)
        return [e for e in self._entries if e.round == round_no]

    def __len__(self):
        return len(self._entries)

    def digest(self) -> bytes:
        h = hashlib.sha256()
        for e in self._entries:
            h.update(repr((e.sender, e.round, e.message)).encode())
        return h.digest()


HONEST = "honest"
ABSENT_ROUND1 = "absent-round1"
ABSENT_ROUND2 = "absent-round2"
WITHHOLD_SHARES = "withhold-shares"
MALFORM_DEAL = "malform-deal"
BYZANTINE_SILENT = "byzantine-silent"

_KINDS = {HONEST, ABSENT_ROUND1, ABSENT_ROUND2, WITHHOLD_SHARES,
          MALFORM_DEAL, BYZANTINE_SILENT}

# absence models churn, not corruption
_CORRUPT_KINDS = {WITHHOLD_SHARES, MALFORM_DEAL, BYZANTINE_SILENT}


@dataclass(frozen=True)
class Behavior:
    kind: str = HONEST
    targets: frozenset = frozenset()  # withheld dealers, withhold-shares only

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown behavior {self.kind!r}")

    @property
    def corrupted(self) -> bool:
        return self.kind in _CORRUPT_KINDS

    @property
    def deals(self) -> bool:
        return self.kind not in (ABSENT_ROUND1, BYZANTINE_SILENT)

    @property
    def present_round2(self) -> bool:
        return self.kind not in (ABSENT_ROUND2, BYZANTINE_SILENT)


@dataclass
class CeremonyResult:
    public_state: PublicState
    outcome: ReconstructionOutcome
    board: BroadcastBoard
    log: list = field(default_factory=list)


def child_rng(seed: int, party: int, stream: int) -> random.Random:
    """Per-party child randomness: independent streams keyed off the master
    seed so concurrent party execution cannot change any draw."""
    digest = hashlib.sha256(
        b"fdkg-seed" + seed.to_bytes(16, "big", signed=True)
        + party.to_bytes(4, "big") + stream.to_bytes(2, "big")
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))


# child-rng stream labels
_STREAM_PKI = 0
_STREAM_ROUND1 = 1
_STREAM_ROUND2 = 2
_STREAM_GUARDIANS = 3

REVEAL_CONTEXT = b"fdkg/round2"


def generate_pki(params: Params, group, seed: int) -> dict:
    return {i: pke.pke_keygen(group, child_rng(seed, i, _STREAM_PKI))
            for i in range(1, params.n + 1)}


def _default_guardians(params: Params, group, seed: int) -> dict:
    sets = {}
    for i in range(1, params.n + 1):
        rng = child_rng(seed, i, _STREAM_GUARDIANS)
        candidates = [j for j in range(1, params.n + 1) if j != i]
        sets[i] = frozenset(rng.sample(candidates, params.k))
    return sets


def _malform(msg: DealMessage, group) -> DealMessage:
    # perturb one ciphertext so the deal fails verification
    victim = min(msg.ciphertexts)
    ct = msg.ciphertexts[victim]
    bad = pke.PkeCiphertext(ct.c1, group.mul(ct.c2, group.generator()), ct.delta)
    cts = dict(msg.ciphertexts)
    cts[victim] = bad
    return DealMessage(msg.dealer, msg.partial_pk, msg.guardians, cts, msg.proofs)


def run_ceremony(params: Params, behaviors: dict, group, seed: int,
                 guardian_sets=None, pki=None) -> CeremonyResult:
    """Execute both rounds under the given per-party behaviors.

    `behaviors` must cover parties 1..n.  Failures are data: the outcome
    reports unrecoverable dealers instead of raising.
    """
    missing = set(range(1, params.n + 1)) - set(behaviors)
    if missing:
        raise ValueError(f"behaviors missing for parties {sorted(missing)}")
    if pki is None:
        pki = generate_pki(params, group, seed)
    if guardian_sets is None:
        guardian_sets = _default_guardians(params, group, seed)

    board = BroadcastBoard()
    log = []
    keypairs = pki
    pub_keys = {i: kp.pk for i, kp in keypairs.items()}

    dealer_states = {}
    for i in range(1, params.n + 1):
        b = behaviors[i]
        if not b.deals or i not in guardian_sets:
            continue
        gset = GuardianSet.create(i, guardian_sets[i], params)
        msg, state = protocol.round1_deal(
            i, params, gset, pub_keys, group, child_rng(seed, i, _STREAM_ROUND1))
        dealer_states[i] = state
        if b.kind == MALFORM_DEAL:
            msg = _malform(msg, group)
        board.append(i, 1, msg)

    deals = [e.message for e in board.entries(1)]
    public_state = protocol.process_round1(deals, params, pub_keys, group)
    for msg in deals:
        status = "accepted" if msg.dealer in public_state.participants else "rejected"
        log.append(f"round1 dealer={msg.dealer} {status}")

    for i in range(1, params.n + 1):
        b = behaviors[i]
        if not b.present_round2:
            continue
        rng = child_rng(seed, i, _STREAM_ROUND2)
        if i in public_state.participants and i in dealer_states:
            reveal = protocol.round2_reveal_secret(
                i, dealer_states[i], public_state, REVEAL_CONTEXT, group, rng)
            board.append(i, 2, reveal)
        for msg in protocol.round2_reveal_shares(
                i, keypairs[i].sk, public_state, REVEAL_CONTEXT, group, rng):
            if b.kind == WITHHOLD_SHARES and msg.dealer in b.targets:
                continue
            board.append(i, 2, msg)

    reveals = [e.message for e in board.entries(2)]
    outcome = protocol.offline_reconstruct(
        public_state, reveals, params, group, REVEAL_CONTEXT)
    log.append(f"round2 reveals={len(reveals)} success={outcome.success}")
    return CeremonyResult(public_state, outcome, board, log)


@dataclass(frozen=True)
class HonestActivation:
    party: int
    guardians: frozenset


@dataclass(frozen=True)
class CorruptActivation:
    party: int
    polynomial: object  # shamir.Polynomial supplied by the adversary
    guardians: frozenset


@dataclass(frozen=True)
class PartyOutput:
    global_pk: object
    partial_pks: dict
    partial_secret: int
    guardians: frozenset
    incoming_shares: dict  # dealer -> share value


@dataclass(frozen=True)
class IdealResult:
    global_pk: object  # None when no party activated
    participants: tuple
    partial_secrets: dict
    shares: dict  # (dealer, guardian) -> value
    outputs: dict  # honest participant -> PartyOutput


def ideal_functionality_run(params: Params, activations, group, seed: int) -> IdealResult:
    """Trusted-party execution: samples honest polynomials itself and hands
    every participant its outputs directly, with no messages or proofs.

    Honest polynomial sampling uses the same child-rng stream as the real
    round-1 dealer, so seed-matched runs are comparable value for value.
    """
    q = group.order
    participants = []
    polynomials = {}
    guardian_sets = {}
    honest = set()
    for act in activations:
        i = act.party
        if not 1 <= i <= params.n:
            raise ActivationError(f"party {i} outside 1..n")
        if i in polynomials:
            continue  # already activated; ignore
        guardians = frozenset(act.guardians)
        if len(guardians) != params.k:
            raise ActivationError(f"guardian set of {i} must have size {params.k}")
        if i in guardians:
            raise ActivationError(f"party {i} cannot guard itself")
        if isinstance(act, HonestActivation):
            rng = child_rng(seed, i, _STREAM_ROUND1)
            coeffs = tuple(rng.randrange(q) for _ in range(params.t))
            from .shamir import Polynomial
            poly = Polynomial(coeffs, q)
            honest.add(i)
        else:
            poly = act.polynomial
            if poly.threshold != params.t or poly.modulus != q:
                raise ActivationError("corrupt polynomial has wrong degree")
        participants.append(i)
        polynomials[i] = poly
        guardian_sets[i] = guardians

    participants = tuple(sorted(participants))
    if not participants:
        return IdealResult(None, (), {}, {}, {})

    partial_secrets = {i: polynomials[i].evaluate(0) for i in participants}
    partial_pks = {i: group.base_exp(partial_secrets[i]) for i in participants}
    d = sum(partial_secrets.values()) % q
    global_pk = group.base_exp(d)
    shares = {
        (i, j): polynomials[i].evaluate(j)
        for i in participants for j in sorted(guardian_sets[i])
    }
    outputs = {
        i: PartyOutput(
            global_pk, dict(partial_pks), partial_secrets[i], guardian_sets[i],
            {k: v for (k, j), v in shares.items() if j == i})
        for i in participants if i in honest
    }
    return IdealResult(global_pk, participants, partial_secrets, shares, outputs)
