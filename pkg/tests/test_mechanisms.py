import math

import pytest

from prizelab import (
    GameConfig,
    GameTerminatedError,
    Mechanism,
    MechanismKind,
    ParameterError,
    PrizeSchedule,
    build_schedule,
    prize_pool,
    to_prospects,
    winners_count,
)

WTA = Mechanism(MechanismKind.WINNER_TAKE_ALL)
THREE_BANDS = Mechanism(MechanismKind.THREE_BANDS)


def linear(k):
    return Mechanism(MechanismKind.TOP_K_LINEAR, k=k)


def exponential(k):
    return Mechanism(MechanismKind.TOP_K_EXPONENTIAL, k=k)


class TestGameConfig:
    @pytest.mark.parametrize(
        "n,fee,rake",
        [(0, 1.0, 0.1), (-3, 1.0, 0.1), (10, 0.0, 0.1), (10, -1.0, 0.1),
         (10, 1.0, 1.0), (10, 1.0, -0.2)],
    )
    def test_rejects_bad_fields(self, n, fee, rake):
        with pytest.raises(ParameterError):
            GameConfig(n, fee, rake)

    def test_zero_rake_allowed(self):
        assert GameConfig(10, 1.0, 0.0).rake == 0.0

    def test_rejects_non_integer_count(self):
        with pytest.raises(ParameterError):
            GameConfig(2.0, 1.0, 0.1)


class TestMechanism:
    def test_top_k_requires_k(self):
        with pytest.raises(ParameterError):
            Mechanism(MechanismKind.TOP_K_LINEAR)

    def test_non_top_k_rejects_k(self):
        with pytest.raises(ParameterError):
            Mechanism(MechanismKind.WINNER_TAKE_ALL, k=0.2)

    @pytest.mark.parametrize("k", [0.0, -0.1, 1.2])
    def test_rejects_out_of_range_k(self, k):
        with pytest.raises(ParameterError):
            linear(k)

    def test_kind_coerces_from_string(self):
        assert Mechanism("wta").kind is MechanismKind.WINNER_TAKE_ALL

    def test_labels(self):
        assert WTA.label() == "wta"
        assert linear(0.16).label() == "topk-linear[k=0.16]"


class TestPrizePool:
    def test_rake_share_removed(self):
        assert prize_pool(GameConfig(100, 1.0, 0.1)) == pytest.approx(90.0, rel=1e-12)

    def test_single_player_no_rake(self):
        assert prize_pool(GameConfig(1, 1.0, 0.0)) == 1.0

    def test_two_players(self):
        assert prize_pool(GameConfig(2, 1.0, 0.1)) == pytest.approx(1.8, rel=1e-12)


class TestWinnersCount:
    @pytest.mark.parametrize(
        "k,n,expected",
        [(0.20, 100, 20), (0.16, 21, 3), (0.01, 5, 1), (1.0, 7, 7),
         (0.16, 25, 4), (0.5, 1, 1), (0.995, 200, 199)],
    )
    def test_round_half_up_with_floor_one(self, k, n, expected):
        assert winners_count(k, n) == expected

    def test_rejects_bad_fraction(self):
        with pytest.raises(ParameterError):
            winners_count(0.0, 10)


class TestPrizeSchedule:
    def test_rejects_increasing_prizes(self):
        with pytest.raises(ParameterError):
            PrizeSchedule((1.0, 2.0))

    def test_rejects_negative_prizes(self):
        with pytest.raises(ParameterError):
            PrizeSchedule((1.0, -0.5))

    def test_rejects_empty(self):
        with pytest.raises(ParameterError):
            PrizeSchedule(())


class TestBuildSchedule:
    def test_winner_take_all(self):
        schedule = build_schedule(WTA, GameConfig(3, 1.0, 0.1))
        assert schedule.prizes == pytest.approx([2.7, 0.0, 0.0], rel=1e-12)

    def test_top_k_linear_weights(self):
        schedule = build_schedule(linear(0.2), GameConfig(100, 1.0, 0.1))
        prizes = schedule.prizes
        assert prizes[0] == pytest.approx(90 * 20 / 210, rel=1e-12)
        assert prizes[19] == pytest.approx(90 / 210, rel=1e-12)
        assert prizes[20] == 0.0
        assert math.fsum(prizes) == pytest.approx(90.0, rel=1e-9)

    def test_top_k_linear_single_winner_equals_wta(self):
        config = GameConfig(100, 1.0, 0.1)
        assert build_schedule(linear(0.01), config).prizes == build_schedule(WTA, config).prizes

    def test_top_k_exponential_halving(self):
        config = GameConfig(10, 1.0, 0.1)
        pool = prize_pool(config)
        schedule = build_schedule(exponential(0.3), config)
        assert schedule.prizes[:3] == pytest.approx(
            [pool / 2, pool / 4, pool / 8], rel=1e-12
        )
        assert schedule.prizes[3] == 0.0
        # the residual pool / 2**3 stays undistributed
        assert math.fsum(schedule.prizes) == pytest.approx(
            pool * (1 - 0.5**3), rel=1e-9
        )

    def test_three_bands_layout(self):
        schedule = build_schedule(THREE_BANDS, GameConfig(100, 1.0, 0.1))
        prizes = schedule.prizes
        assert prizes[0] == pytest.approx(30.0, rel=1e-12)
        assert prizes[1] == pytest.approx(10 / 3, rel=1e-12)
        assert prizes[9] == prizes[1]
        assert prizes[10] == pytest.approx(0.75, rel=1e-12)
        assert prizes[49] == prizes[10]
        assert prizes[50] == 0.0
        assert math.fsum(prizes) == pytest.approx(90.0, rel=1e-9)

    def test_three_bands_terminates_below_minimum(self):
        with pytest.raises(GameTerminatedError, match="50"):
            build_schedule(THREE_BANDS, GameConfig(49, 1.0, 0.1))

    def test_three_bands_at_exact_minimum(self):
        schedule = build_schedule(THREE_BANDS, GameConfig(50, 1.0, 0.1))
        assert len(schedule) == 50
        assert schedule.prizes[-1] > 0.0

    @pytest.mark.parametrize("n", [1, 2, 7, 50, 137])
    @pytest.mark.parametrize(
        "mechanism",
        [WTA, linear(0.16), exponential(0.06), linear(1.0), exponential(1.0)],
    )
    def test_schedules_are_padded_to_n(self, mechanism, n):
        schedule = build_schedule(mechanism, GameConfig(n, 2.0, 0.25))
        assert len(schedule) == n


class TestToProspects:
    def test_two_player_winner_take_all(self):
        config = GameConfig(2, 1.0, 0.1)
        prospects = to_prospects(build_schedule(WTA, config), config)
        assert [o.profit for o in prospects] == pytest.approx([0.8, -1.0], rel=1e-12)
        assert [o.probability for o in prospects] == [0.5, 0.5]

    def test_losing_ranks_collapse_into_one_outcome(self):
        config = GameConfig(4, 1.0, 0.1)
        prospects = to_prospects(build_schedule(WTA, config), config)
        assert len(prospects) == 2
        assert prospects.outcomes[1].probability == 0.75
        assert prospects.outcomes[1].profit == -1.0

    def test_equal_prizes_everywhere_collapse_to_certainty(self):
        config = GameConfig(3, 1.0, 0.1)
        schedule = PrizeSchedule((0.9, 0.9, 0.9))
        prospects = to_prospects(schedule, config)
        assert len(prospects) == 1
        assert prospects.outcomes[0].probability == 1.0
        assert prospects.outcomes[0].profit == pytest.approx(-0.1, abs=1e-12)

    def test_single_player_recovers_rake_reduced_fee(self):
        config = GameConfig(1, 1.0, 0.1)
        prospects = to_prospects(build_schedule(WTA, config), config)
        assert len(prospects) == 1
        assert prospects.outcomes[0].profit == pytest.approx(-0.1, abs=1e-12)
        assert prospects.outcomes[0].probability == 1.0

    def test_three_bands_groups_by_band(self):
        config = GameConfig(100, 1.0, 0.1)
        prospects = to_prospects(build_schedule(THREE_BANDS, config), config)
        assert [o.probability for o in prospects] == pytest.approx(
            [0.01, 0.09, 0.40, 0.50], rel=1e-12
        )

    def test_rejects_length_mismatch(self):
        with pytest.raises(ParameterError):
            to_prospects(PrizeSchedule((1.0, 0.0)), GameConfig(3, 1.0, 0.1))
