"""Election pipeline on top of the key-generation protocol.

Ballots encrypt power-of-2 encoded candidate choices under the global key,
aggregate homomorphically, and are decrypted by combining partial
decryptions from present dealers with guardian share reveals for absent
ones.  The aggregated exponent packs per-candidate counts into disjoint
m-bit slots and is recovered by a bounded baby-step giant-step search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import nizk, shamir
from .protocol import PublicState, ShareReveal


class VotingError(Exception):
    pass


class UnsupportedConfigurationError(VotingError):
    """Candidate slots do not fit in the exponent space."""


class DlogNotFoundError(VotingError):
    """Bounded discrete-log search exhausted its range."""


class TallyIntegrityError(VotingError):
    """Extracted counts do not sum to the number of valid ballots."""


class TallyFailure(VotingError):
    """Some dealer's decryption contribution could not be recovered."""

    def __init__(self, dealers):
        self.dealers = tuple(dealers)
        super().__init__(f"unrecoverable dealers: {self.dealers}")


@dataclass(frozen=True)
class VoteEncoding:
    candidates: int
    slot_bits: int  # m, smallest with 2^m > n_bound
    n_bound: int

    def exponent_for(self, candidate: int) -> int:
        if not 1 <= candidate <= self.candidates:
            raise VotingError(f"candidate {candidate} out of range 1..{self.candidates}")
        return 1 << ((candidate - 1) * self.slot_bits)

    def allowed_exponents(self) -> list:
        return [self.exponent_for(c) for c in range(1, self.candidates + 1)]


def derive_encoding(n_bound: int, candidates: int, q: int) -> VoteEncoding:
    if candidates < 2:
        raise VotingError("need at least 2 candidates")
    if n_bound < 1:
        raise VotingError("voter bound must be >= 1")
    m = n_bound.bit_length()  # smallest m with 2^m > n_bound
    if candidates * m >= q.bit_length():
        raise UnsupportedConfigurationError(
            f"{candidates} slots of {m} bits exceed the exponent space")
    return VoteEncoding(candidates, m, n_bound)


@dataclass(frozen=True)
class Ballot:
    voter: int
    a: object  # G^r
    b: object  # E^r * G^{vote exponent}
    proof: nizk.BallotProof


@dataclass(frozen=True)
class AggregatedCiphertext:
    c1: object
    c2: object


@dataclass(frozen=True)
class PartialDecryption:
    dealer: int
    value: object  # C1^{d_i}
    proof: nizk.DleqProof


@dataclass(frozen=True)
class TallyResult:
    counts: tuple
    total: int


BALLOT_CONTEXT = b"fdkg/ballot"


def cast_ballot(group, encoding: VoteEncoding, global_pk, voter: int,
                candidate: int, rng) -> Ballot:
    exponent = encoding.exponent_for(candidate)
    blinding = rng.randrange(group.order)
    a = group.base_exp(blinding)
    b = group.mul(group.exp(global_pk, blinding), group.base_exp(exponent))
    proof = nizk.prove_ballot(group, global_pk, (a, b), blinding, exponent,
                              encoding.allowed_exponents(), BALLOT_CONTEXT, rng)
    return Ballot(voter, a, b, proof)


def verify_ballot(group, encoding: VoteEncoding, global_pk, ballot: Ballot) -> bool:
    return nizk.verify_ballot(group, global_pk, (ballot.a, ballot.b),
                              encoding.allowed_exponents(), ballot.proof,
                              BALLOT_CONTEXT)


def aggregate_ballots(group, encoding: VoteEncoding, global_pk, ballots):
    """Drop ballots with invalid proofs; componentwise product of the rest.

    Returns (AggregatedCiphertext or None, accepted voter tuple); None marks
    an empty election.
    """
    c1, c2 = group.identity(), group.identity()
    accepted = []
    for ballot in ballots:
        if not verify_ballot(group, encoding, global_pk, ballot):
            continue
        c1 = group.mul(c1, ballot.a)
        c2 = group.mul(c2, ballot.b)
        accepted.append(ballot.voter)
    if not accepted:
        return None, ()
    return AggregatedCiphertext(c1, c2), tuple(accepted)


TALLY_CONTEXT = b"fdkg/tally"


def tally_partial_decrypt(group, dealer: int, partial_secret: int, partial_pk,
                          c1, rng) -> PartialDecryption:
    value = group.exp(c1, partial_secret)
    proof = nizk.prove_dleq(group, partial_secret, group.generator(), partial_pk,
                            c1, value, TALLY_CONTEXT, rng)
    return PartialDecryption(dealer, value, proof)


def verify_partial_decryption(group, partial_pk, c1, pd: PartialDecryption) -> bool:
    return nizk.verify_dleq(group, group.generator(), partial_pk, c1, pd.value,
                            pd.proof, TALLY_CONTEXT)


def tally_share_reveal(group, guardian: int, sk: int, public_state: PublicState,
                       context: bytes, rng) -> list:
    """Reveal decrypted shares so observers can exponentiate C1 themselves."""
    out = []
    for dealer in public_state.participants:
        record = public_state.deals[dealer]
        if guardian not in record.guardians.members:
            continue
        ct = record.ciphertexts[guardian]
        share, proof = nizk.prove_share_decryption(
            group, sk, public_state.pki[guardian], ct, context, rng)
        out.append(ShareReveal(guardian, dealer, share, proof))
    return out


def collect_decryption_values(group, public_state: PublicState, c1,
                              partial_decryptions, share_reveals,
                              context: bytes, t: int) -> dict:
    """Per-dealer C1^{d_i}: direct partial decryptions where available, else
    Lagrange interpolation in the exponent over t verified share reveals
    (lowest guardian indices first).  Raises TallyFailure listing dealers
    with no recovery path."""
    values = {}
    shares = {}
    for msg in share_reveals:
        record = public_state.deals.get(msg.dealer)
        if record is None or msg.sender not in record.guardians.members:
            continue
        bucket = shares.setdefault(msg.dealer, {})
        if msg.sender in bucket:
            continue
        ct = record.ciphertexts[msg.sender]
        if nizk.verify_share_decryption(
                group, public_state.pki[msg.sender], ct, msg.value, msg.proof, context):
            bucket[msg.sender] = msg.value

    direct = {}
    for pd in partial_decryptions:
        record = public_state.deals.get(pd.dealer)
        if record is None or pd.dealer in direct:
            continue
        if verify_partial_decryption(group, record.partial_pk, c1, pd):
            direct[pd.dealer] = pd.value

    missing = []
    for dealer in public_state.participants:
        if dealer in direct:
            values[dealer] = direct[dealer]
            continue
        bucket = shares.get(dealer, {})
        if len(bucket) < t:
            missing.append(dealer)
            continue
        chosen = sorted(bucket)[:t]
        points = {j: group.exp(c1, bucket[j]) for j in chosen}
        values[dealer] = shamir.reconstruct_in_exponent(points, group)
    if missing:
        raise TallyFailure(missing)
    return values


def bsgs_dlog(group, target, base, bound: int) -> int:
    """Smallest e in [0, bound] with base^e = target; raises when absent."""
    if bound < 0:
        raise VotingError("bound must be >= 0")
    if group.encode(target) == group.encode(group.identity()):
        return 0
    m = max(1, math.isqrt(bound) + 1)
    table = {}
    cur = group.identity()
    for j in range(m):
        table.setdefault(group.encode(cur), j)
        cur = group.mul(cur, base)
    stride = group.inv(group.exp(base, m))
    gamma = target
    for i in range(m + 1):
        j = table.get(group.encode(gamma))
        if j is not None:
            e = i * m + j
            if e <= bound:
                return e
        gamma = group.mul(gamma, stride)
    raise DlogNotFoundError(f"no exponent in [0, {bound}]")


def tally_finalize(group, aggregate: Optional[AggregatedCiphertext],
                   decryption_values: dict, n_valid: int,
                   encoding: VoteEncoding) -> TallyResult:
    """Combine decryption factors, solve the bounded discrete log and unpack
    the per-candidate counts."""
    if aggregate is None or n_valid == 0:
        return TallyResult((0,) * encoding.candidates, 0)
    z = group.identity()
    for value in decryption_values.values():
        z = group.mul(z, value)
    m_elem = group.div(aggregate.c2, z)
    bound = n_valid * (1 << ((encoding.candidates - 1) * encoding.slot_bits))
    exponent = bsgs_dlog(group, m_elem, group.generator(), bound)
    mask = (1 << encoding.slot_bits) - 1
    counts = tuple(
        (exponent >> ((c - 1) * encoding.slot_bits)) & mask
        for c in range(1, encoding.candidates + 1)
    )
    if sum(counts) != n_valid:
        raise TallyIntegrityError(
            f"counts {counts} sum to {sum(counts)}, expected {n_valid}")
    return TallyResult(counts, n_valid)
