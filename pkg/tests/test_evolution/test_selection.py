"""
测试锦标赛选择
"""

import numpy as np
import pytest

from src.evolution.individual import Individual
from src.morphology.body import parse_body


BODY = parse_body("RR...-.....-.....-.....-.....")


def population_of(qualities):
    return [Individual(index=i, body=BODY, q=q) for i, q in enumerate(qualities)]


class TestTournamentSelect:
    """测试锦标赛选择"""

    def test_best_frequency(self):
        """测试最好个体被选中的频率为 1 - C(n-1, k) / C(n, k)"""
        from src.evolution.selection import tournament_select

        population = population_of([float(i) for i in range(10)])
        rng = np.random.default_rng(0)
        draws = 20000
        hits = sum(tournament_select(population, 4, rng) == 9 for _ in range(draws))
        # 1 - 126/210 = 0.4
        assert hits / draws == pytest.approx(0.4, abs=0.015)

    def test_worst_never_selected(self):
        """测试 n_tour >= 2 时最差个体不会被选中"""
        from src.evolution.selection import tournament_select

        population = population_of([3.0, 1.0, -5.0, 2.0])
        rng = np.random.default_rng(1)
        assert all(tournament_select(population, 2, rng) != 2 for _ in range(500))

    def test_full_tournament(self):
        """测试 n_tour 等于种群规模时选中全局最好"""
        from src.evolution.selection import tournament_select

        population = population_of([0.1, 0.7, -2.0, 0.3])
        rng = np.random.default_rng(2)
        assert {tournament_select(population, 4, rng) for _ in range(20)} == {1}

    def test_tie_lowest_index(self):
        """测试质量并列取较小下标"""
        from src.evolution.selection import tournament_select

        population = population_of([1.0, 2.0, 2.0, 2.0])
        rng = np.random.default_rng(3)
        assert {tournament_select(population, 4, rng) for _ in range(20)} == {1}

    def test_failed_individuals(self):
        """测试失败个体（q = -inf）不会胜过正常个体"""
        from src.evolution.selection import tournament_select

        population = population_of([float('-inf'), 0.0])
        assert tournament_select(population, 2, np.random.default_rng(4)) == 1

    @pytest.mark.parametrize("n_tour", [0, 5])
    def test_invalid_size(self, n_tour):
        """测试锦标赛规模非法"""
        from src.evolution.selection import tournament_select

        with pytest.raises(ValueError):
            tournament_select(population_of([1.0, 2.0, 3.0, 4.0]), n_tour, np.random.default_rng(0))
