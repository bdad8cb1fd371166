"""End-to-end election driver: keygen round, ballot round, tally round.

Ties the key-generation protocol, the ballot layer and the tally together
under the same behavior/fault model and seed derivation as the ceremony
harness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import protocol, voting
from .board import (Behavior, BroadcastBoard, child_rng, generate_pki,
                    _default_guardians, _malform, MALFORM_DEAL, WITHHOLD_SHARES)
from .protocol import GuardianSet, Params, PublicState

_STREAM_ROUND1 = 1
_STREAM_BALLOT = 4
_STREAM_TALLY = 5


@dataclass
class ElectionResult:
    success: bool
    tally: Optional[voting.TallyResult]
    failed_dealers: tuple
    public_state: PublicState
    accepted_voters: tuple
    board: BroadcastBoard
    encoding: voting.VoteEncoding


def run_election(params: Params, behaviors: dict, votes: dict, candidates: int,
                 group, seed: int, n_bound=None, guardian_sets=None) -> ElectionResult:
    """votes: voter index -> candidate (1-based).  Returns failure data
    instead of raising when the tally cannot be completed."""
    if n_bound is None:
        n_bound = params.n
    encoding = voting.derive_encoding(n_bound, candidates, group.order)
    pki = generate_pki(params, group, seed)
    pub_keys = {i: kp.pk for i, kp in pki.items()}
    if guardian_sets is None:
        guardian_sets = _default_guardians(params, group, seed)

    board = BroadcastBoard()
    dealer_states = {}
    for i in range(1, params.n + 1):
        b = behaviors[i]
        if not b.deals:
            continue
        gset = GuardianSet.create(i, guardian_sets[i], params)
        msg, state = protocol.round1_deal(
            i, params, gset, pub_keys, group, child_rng(seed, i, _STREAM_ROUND1))
        dealer_states[i] = state
        if b.kind == MALFORM_DEAL:
            msg = _malform(msg, group)
        board.append(i, 1, msg)

    public_state = protocol.process_round1(
        [e.message for e in board.entries(1)], params, pub_keys, group)
    if not public_state.participants:
        return ElectionResult(False, None, (), public_state, (), board, encoding)

    for voter in sorted(votes):
        ballot = voting.cast_ballot(
            group, encoding, public_state.global_pk, voter, votes[voter],
            child_rng(seed, voter, _STREAM_BALLOT))
        board.append(voter, 2, ballot)

    aggregate, accepted = voting.aggregate_ballots(
        group, encoding, public_state.global_pk,
        [e.message for e in board.entries(2)])

    partial_decryptions = []
    share_reveals = []
    for i in range(1, params.n + 1):
        b = behaviors[i]
        if not b.present_round2:
            continue
        rng = child_rng(seed, i, _STREAM_TALLY)
        if i in public_state.participants and i in dealer_states and aggregate is not None:
            pd = voting.tally_partial_decrypt(
                group, i, dealer_states[i].partial_secret,
                public_state.deals[i].partial_pk, aggregate.c1, rng)
            partial_decryptions.append(pd)
            board.append(i, 3, pd)
        if aggregate is not None:
            for msg in voting.tally_share_reveal(
                    group, i, pki[i].sk, public_state, voting.TALLY_CONTEXT, rng):
                if b.kind == WITHHOLD_SHARES and msg.dealer in b.targets:
                    continue
                share_reveals.append(msg)
                board.append(i, 3, msg)

    if aggregate is None:
        tally = voting.TallyResult((0,) * candidates, 0)
        return ElectionResult(True, tally, (), public_state, accepted, board, encoding)

    try:
        values = voting.collect_decryption_values(
            group, public_state, aggregate.c1, partial_decryptions,
            share_reveals, voting.TALLY_CONTEXT, params.t)
        tally = voting.tally_finalize(group, aggregate, values, len(accepted), encoding)
    except voting.TallyFailure as exc:
        return ElectionResult(False, None, exc.dealers, public_state, accepted,
                              board, encoding)
    return ElectionResult(True, tally, (), public_state, accepted, board, encoding)
