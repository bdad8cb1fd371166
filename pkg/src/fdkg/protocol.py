"""Two-round key-generation protocol state machine and its predicates.

Round 1: each dealer shares its partial secret to a self-chosen guardian
set and broadcasts encrypted shares with proofs.  Round 2: parties reveal
partial secrets directly and/or decrypted guardian shares; any observer
then reconstructs the global secret offline.

Also hosts the static reconstruction/liveness/privacy predicates used by
the simulator and by the security test harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import nizk, pke, shamir


class ProtocolError(Exception):
    pass


class InvalidGuardianSetError(ProtocolError):
    pass


class NotAParticipantError(ProtocolError):
    pass


@dataclass(frozen=True)
class Params:
    n: int
    t: int
    k: int

    def __post_init__(self):
        if not 1 <= self.t <= self.k <= self.n - 1:
            raise ProtocolError(f"need 1 <= t <= k <= n-1, got {self}")


@dataclass(frozen=True)
class GuardianSet:
    owner: int
    members: frozenset

    @classmethod
    def create(cls, owner: int, members, params: Params) -> "GuardianSet":
        members = frozenset(members)
        if owner in members:
            raise InvalidGuardianSetError(f"party {owner} cannot guard itself")
        if len(members) != params.k:
            raise InvalidGuardianSetError(
                f"guardian set of {owner} has size {len(members)}, expected {params.k}")
        if not members <= set(range(1, params.n + 1)):
            raise InvalidGuardianSetError("guardian outside the party set")
        return cls(owner, members)


@dataclass(frozen=True)
class DealMessage:
    dealer: int
    partial_pk: object
    guardians: GuardianSet
    ciphertexts: dict  # guardian index -> PkeCiphertext
    proofs: nizk.DealProofBundle

    @property
    def commitments(self) -> nizk.FeldmanCommitments:
        return self.proofs.commitments


@dataclass(frozen=True)
class DealerState:
    """Private per-dealer output of round 1."""

    dealer: int
    partial_secret: int
    polynomial: shamir.Polynomial


@dataclass(frozen=True)
class DealRecord:
    partial_pk: object
    guardians: GuardianSet
    ciphertexts: dict
    commitments: nizk.FeldmanCommitments


@dataclass
class PublicState:
    """Verified post-round-1 world: participant set and global key."""

    params: Params
    pki: dict  # party index -> pke public key
    participants: tuple = ()
    global_pk: object = None  # undefined when participants is empty
    deals: dict = field(default_factory=dict)  # dealer -> DealRecord

    def guardian_sets(self) -> dict:
        return {i: self.deals[i].guardians.members for i in self.participants}


@dataclass(frozen=True)
class SecretReveal:
    sender: int
    value: int
    proof: nizk.DlProof


@dataclass(frozen=True)
class ShareReveal:
    sender: int
    dealer: int
    value: int
    proof: nizk.ShareDecryptionProof


@dataclass(frozen=True)
class ComplaintReveal:
    """Guardian evidence that a dealer's ciphertext decrypts to a share
    inconsistent with the published coefficient commitments."""

    sender: int
    dealer: int
    value: int
    proof: nizk.ShareDecryptionProof


@dataclass(frozen=True)
class ReconstructionOutcome:
    success: bool
    global_secret: Optional[int]
    recovered: dict  # dealer -> ("direct",) | ("shares", (j1..jt))
    failed: tuple  # dealers that could not be recovered
    excluded: tuple = ()  # dealers removed by verified complaints


def round1_deal(me: int, params: Params, guardians: GuardianSet, pki: dict,
                group, rng):
    """Produce this dealer's broadcast plus its private state.

    Shares are evaluations of a fresh polynomial at the guardians' global
    party indices, encrypted under each guardian's long-term key.
    """
    if guardians.owner != me:
        raise InvalidGuardianSetError("guardian set owned by another party")
    q = group.order
    d = rng.randrange(q)
    indices = sorted(guardians.members)
    shares, poly = shamir.share_secret(d, params.t, indices, rng, q)
    guardian_keys = [(j, pki[j]) for j in indices]
    randomness = [pke.sample_enc_randomness(group, rng) for _ in indices]
    ciphertexts = [
        pke.pke_encrypt(group, pki[s.index], s.value, rand)
        for s, rand in zip(shares, randomness)
    ]
    context = _deal_binding(group, me)
    bundle = nizk.prove_deal(group, poly, guardian_keys, randomness,
                             ciphertexts, context, rng)
    message = DealMessage(
        dealer=me,
        partial_pk=group.base_exp(d),
        guardians=guardians,
        ciphertexts=dict(zip(indices, ciphertexts)),
        proofs=bundle,
    )
    return message, DealerState(me, d, poly)


def _deal_binding(group, dealer: int) -> bytes:
    return b"deal:" + dealer.to_bytes(4, "big")


def verify_deal_message(msg: DealMessage, params: Params, pki: dict, group) -> bool:
    try:
        GuardianSet.create(msg.dealer, msg.guardians.members, params)
    except InvalidGuardianSetError:
        return False
    indices = sorted(msg.guardians.members)
    if sorted(msg.ciphertexts) != indices:
        return False
    commitments = msg.proofs.commitments.commitments
    if not commitments or group.encode(commitments[0]) != group.encode(msg.partial_pk):
        return False
    guardian_keys = [(j, pki[j]) for j in indices]
    ciphertexts = [msg.ciphertexts[j] for j in indices]
    return nizk.verify_deal(group, params.t, guardian_keys, ciphertexts,
                            msg.proofs, _deal_binding(group, msg.dealer))


def process_round1(messages, params: Params, pki: dict, group) -> PublicState:
    """Keep the first valid deal per dealer; aggregate the global key."""
    state = PublicState(params=params, pki=dict(pki))
    deals = {}
    for msg in messages:
        if msg.dealer in deals:
            continue
        if verify_deal_message(msg, params, pki, group):
            deals[msg.dealer] = DealRecord(
                msg.partial_pk, msg.guardians, dict(msg.ciphertexts),
                msg.proofs.commitments)
    state.deals = deals
    state.participants = tuple(sorted(deals))
    if state.participants:
        acc = group.identity()
        for i in state.participants:
            acc = group.mul(acc, deals[i].partial_pk)
        state.global_pk = acc
    return state


def round2_reveal_secret(me: int, dealer_state: DealerState,
                         public_state: PublicState, context: bytes,
                         group, rng) -> SecretReveal:
    if me not in public_state.participants:
        raise NotAParticipantError(f"party {me} is not in the participant set")
    proof = nizk.prove_dl(group, dealer_state.partial_secret,
                          public_state.deals[me].partial_pk, context, rng)
    return SecretReveal(me, dealer_state.partial_secret, proof)


def round2_reveal_shares(me: int, sk_me: int, public_state: PublicState,
                         context: bytes, group, rng) -> list:
    """One Share message per dealer that picked `me` as guardian; a Complaint
    instead when the decrypted value contradicts the dealer's commitments."""
    out = []
    for dealer in public_state.participants:
        record = public_state.deals[dealer]
        if me not in record.guardians.members:
            continue
        ct = record.ciphertexts[me]
        share, proof = nizk.prove_share_decryption(
            group, sk_me, public_state.pki[me], ct, context, rng)
        if nizk.guardian_check_share(group, share, me, record.commitments):
            out.append(ShareReveal(me, dealer, share, proof))
        else:
            out.append(ComplaintReveal(me, dealer, share, proof))
    return out


def offline_reconstruct(public_state: PublicState, reveals, params: Params,
                        group, context: bytes) -> ReconstructionOutcome:
    """Recover every dealer's partial secret from the round-2 broadcasts.

    Verified complaints remove the offending dealer (and its partial pk)
    before reconstruction.  When more than t verified shares exist for a
    dealer, the t lowest guardian indices are used, so identical reveal
    multisets always produce identical outcomes.
    """
    q = group.order
    excluded = set()
    for msg in reveals:
        if not isinstance(msg, ComplaintReveal):
            continue
        record = public_state.deals.get(msg.dealer)
        if record is None or msg.sender not in record.guardians.members:
            continue
        ct = record.ciphertexts[msg.sender]
        if not nizk.verify_share_decryption(
                group, public_state.pki[msg.sender], ct, msg.value, msg.proof, context):
            continue
        if not nizk.guardian_check_share(group, msg.value, msg.sender, record.commitments):
            excluded.add(msg.dealer)

    active = [i for i in public_state.participants if i not in excluded]

    secrets = {}
    shares = {}  # dealer -> {guardian: value}
    for msg in reveals:
        if isinstance(msg, SecretReveal):
            record = public_state.deals.get(msg.sender)
            if record is None or msg.sender in excluded or msg.sender in secrets:
                continue
            if group.encode(group.base_exp(msg.value)) != group.encode(record.partial_pk):
                continue
            if nizk.verify_dl(group, record.partial_pk, msg.proof, context):
                secrets[msg.sender] = msg.value
        elif isinstance(msg, ShareReveal):
            record = public_state.deals.get(msg.dealer)
            if record is None or msg.dealer in excluded:
                continue
            if msg.sender not in record.guardians.members:
                continue
            bucket = shares.setdefault(msg.dealer, {})
            if msg.sender in bucket:
                continue  # first valid broadcast wins
            ct = record.ciphertexts[msg.sender]
            if nizk.verify_share_decryption(
                    group, public_state.pki[msg.sender], ct, msg.value, msg.proof, context):
                bucket[msg.sender] = msg.value

    recovered = {}
    values = {}
    failed = []
    for dealer in active:
        if dealer in secrets:
            values[dealer] = secrets[dealer]
            recovered[dealer] = ("direct",)
            continue
        bucket = shares.get(dealer, {})
        if len(bucket) >= params.t:
            chosen = tuple(sorted(bucket)[: params.t])
            candidate = shamir.reconstruct(
                [shamir.Share(j, bucket[j]) for j in chosen], params.t, q)
            expected = public_state.deals[dealer].partial_pk
            if group.encode(group.base_exp(candidate)) == group.encode(expected):
                values[dealer] = candidate
                recovered[dealer] = ("shares", chosen)
                continue
            # valid proofs but inconsistent interpolation: impossible under
            # soundness; treat as an integrity failure for this dealer
        failed.append(dealer)

    if failed or not active:
        return ReconstructionOutcome(False, None, recovered, tuple(failed),
                                     tuple(sorted(excluded)))
    d = sum(values[i] for i in active) % q
    return ReconstructionOutcome(True, d, recovered, (), tuple(sorted(excluded)))


def reconstruction_capable(s, participants, guardian_sets, t: int) -> bool:
    """True iff every dealer is in s or has >= t guardians in s."""
    s = set(s)
    return all(
        i in s or len(s & set(guardian_sets[i])) >= t
        for i in participants
    )


def liveness_holds(corrupted, participants, guardian_sets, params: Params) -> bool:
    """The adversary cannot block reconstruction iff for every dealer it
    misses either the dealer itself or more than k - t of its guardians."""
    corrupted = set(corrupted)
    return all(
        i not in corrupted or len(corrupted & set(guardian_sets[i])) <= params.k - params.t
        for i in participants
    )


def privacy_breached(corrupted, participants, guardian_sets, t: int) -> bool:
    """The corrupted coalition learns the global secret iff it is itself
    reconstruction-capable."""
    return reconstruction_capable(corrupted, participants, guardian_sets, t)
