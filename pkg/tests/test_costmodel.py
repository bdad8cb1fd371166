import pytest

from fdkg import costmodel
from fdkg.board import Behavior, run_ceremony
from fdkg.costmodel import (CostBreakdown, ScenarioSpec,
                            UnknownMessageKindError, deal_message_bytes,
                            estimate, measured_transcript_bytes,
                            size_table_lookup)
from fdkg.protocol import Params


class TestSizeTable:
    @pytest.mark.parametrize("k,expected", [(10, 1920), (30, 5120), (100, 16320)])
    def test_fdkg_published_sizes(self, k, expected):
        assert size_table_lookup("fdkg", k) == expected
        assert deal_message_bytes(k) == expected

    def test_fdkg_formula(self):
        for k in range(0, 200):
            assert deal_message_bytes(k) == 64 + 160 * k + 256

    def test_ballot(self):
        assert size_table_lookup("ballot") == 384

    def test_partial_decryption(self):
        assert size_table_lookup("pdecrypt") == 320
        assert size_table_lookup("pdecrypt-share") == 320

    def test_unknown_kind(self):
        with pytest.raises(UnknownMessageKindError):
            size_table_lookup("carrier-pigeon")


class TestScenarioSpec:
    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ScenarioSpec(10, 5, 3, -1, 2, 4)

    def test_dealers_exceed_n_rejected(self):
        with pytest.raises(ValueError):
            ScenarioSpec(10, 11, 3, 5, 2, 4)


class TestEstimate:
    def test_published_scenario(self):
        spec = ScenarioSpec(n=100, dealers=50, k=40, voters=50,
                            direct_revealers=40, shares_revealed=1600)
        cost = estimate(spec)
        assert cost.fdkg_bytes == 336_000
        assert cost.voting_bytes == 19_200
        assert cost.tally_secret_bytes == 12_800
        assert cost.tally_share_bytes == 512_000
        assert cost.total_bytes == 880_000

    def test_large_scenario(self):
        spec = ScenarioSpec(n=5000, dealers=2500, k=40, voters=2500,
                            direct_revealers=2000, shares_revealed=80_000)
        assert estimate(spec).total_bytes == 44_000_000

    def test_empty_scenario(self):
        cost = estimate(ScenarioSpec(0, 0, 0, 0, 0, 0))
        assert cost == CostBreakdown(0, 0, 0, 0)
        assert cost.total_bytes == 0

    def test_total_is_sum_of_parts(self):
        cost = estimate(ScenarioSpec(20, 10, 4, 15, 6, 30))
        assert cost.total_bytes == (cost.fdkg_bytes + cost.voting_bytes
                                    + cost.tally_secret_bytes + cost.tally_share_bytes)

    def test_linear_in_dealers(self):
        # fixed k and shares-per-revealer: doubling the scenario doubles bytes
        base = ScenarioSpec(1000, 100, 40, 100, 80, 3200)
        double = ScenarioSpec(1000, 200, 40, 200, 160, 6400)
        assert estimate(double).total_bytes == 2 * estimate(base).total_bytes


def test_measured_transcript_nonzero_and_deterministic(group):
    params = Params(6, 2, 3)
    behaviors = {i: Behavior() for i in range(1, 7)}
    a = run_ceremony(params, behaviors, group, seed=21)
    b = run_ceremony(params, behaviors, group, seed=21)
    size_a = measured_transcript_bytes(a.board, group)
    size_b = measured_transcript_bytes(b.board, group)
    assert size_a == size_b > 0
