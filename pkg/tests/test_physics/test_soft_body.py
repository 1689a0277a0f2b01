"""
测试软体组装、地形与箱子
"""

import numpy as np
import pytest

from src.core.errors import SpawnCollision
from src.morphology.body import parse_body
from src.physics.config import SimConfig
from src.physics.payload import AABB, PayloadBox
from src.physics.soft_body import assemble
from src.physics.terrain import Terrain, flat_terrain, staircase_terrain


SINGLE = ".....-.....-.....-.....-..R.."
PAIR = ".....-.....-.....-.....-.RS.."


class TestSimConfig:
    """测试仿真配置"""

    def test_defaults(self):
        """测试默认值满足约束"""
        cfg = SimConfig()
        assert cfg.rigid_stiffness > cfg.soft_stiffness > 0
        assert cfg.steps_per_second == 50

    @pytest.mark.parametrize("kwargs", [
        {'dt': 0.0},
        {'substeps': 0},
        {'rigid_stiffness': 0.5},
        {'friction': -0.1},
    ])
    def test_invalid(self, kwargs):
        """测试非法配置"""
        with pytest.raises(ValueError):
            SimConfig(**kwargs)

    def test_load_default(self):
        """测试从 config/physics.toml 读取"""
        cfg = SimConfig.load_default()
        assert cfg.substeps == 12
        assert cfg.dt == pytest.approx(1.0 / 600.0)


class TestTerrain:
    """测试地形"""

    def test_flat(self):
        """测试平地高度与坡度"""
        terrain = flat_terrain(0.5)
        height, slope = terrain.height_slope(np.array([-3.0, 0.0, 10.0]))
        assert np.allclose(height, 0.5)
        assert np.allclose(slope, 0.0)

    def test_breakpoints_must_increase(self):
        """测试断点 x 必须严格递增"""
        with pytest.raises(ValueError):
            Terrain([(0.0, 0.0), (0.0, 1.0)])

    def test_staircase(self):
        """测试台阶高度"""
        terrain = staircase_terrain(rise=0.3, run=3.0, ramp=0.1, start=2.0)
        assert terrain.height(1.0) == pytest.approx(0.0)
        assert terrain.height(2.05) == pytest.approx(0.15)
        assert terrain.height(3.0) == pytest.approx(0.3)
        assert terrain.height(6.0) == pytest.approx(0.6)
        assert terrain.max_height(0.0, 5.5) == pytest.approx(0.6)

    def test_mirrored(self):
        """测试镜像地形"""
        terrain = staircase_terrain(rise=0.3, run=3.0, ramp=0.1, start=2.0)
        mirrored = terrain.mirrored()
        xs = np.linspace(-20.0, 20.0, 41)
        assert np.allclose(mirrored.height(-xs), terrain.height(xs))


class TestPayload:
    """测试箱子"""

    def test_aabb(self):
        """测试底边中点定位"""
        box = PayloadBox(2.0, 1.0, position=[1.0, 3.0])
        aabb = box.aabb
        assert (aabb.left, aabb.right, aabb.bottom, aabb.top) == (0.0, 2.0, 3.0, 4.0)
        assert np.allclose(box.center, [1.0, 3.5])

    def test_closest_points(self):
        """测试盒子上最近点"""
        qx, qy = AABB(0, 0, 2, 1).closest_points(np.array([-1.0, 1.0]), np.array([0.5, 3.0]))
        assert np.allclose(qx, [0.0, 1.0])
        assert np.allclose(qy, [0.5, 1.0])

    def test_invalid(self):
        """测试非法尺寸"""
        with pytest.raises(ValueError):
            PayloadBox(0.0, 1.0)


class TestAssemble:
    """测试软体组装"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.cfg = SimConfig()
        self.terrain = flat_terrain()

    def test_single_voxel(self):
        """测试单个体素：4 个质点、6 根弹簧、质心在地面以上"""
        state = assemble(parse_body(SINGLE), self.cfg, self.terrain)
        assert state.n_nodes == 4
        assert state.n_springs == 6
        assert state.center_of_mass()[1] > 0.0
        assert state.positions[:, 1].min() == pytest.approx(0.0)
        assert state.k == 0

    def test_shared_corners(self):
        """测试两个相邻体素共享角点：6 个质点、12 根弹簧"""
        state = assemble(parse_body(PAIR), self.cfg, self.terrain)
        assert state.n_nodes == 6
        assert state.n_springs == 12

    def test_rest_lengths(self):
        """测试初始静止长度等于当前长度"""
        state = assemble(parse_body("RS...-HV...-.....-.....-....."), self.cfg, self.terrain)
        delta = state.positions[state.spring_b] - state.positions[state.spring_a]
        assert np.allclose(np.hypot(delta[:, 0], delta[:, 1]), state.rest_lengths())
        assert np.all(state.rest_scale == 1.0)

    def test_centered_on_spawn(self):
        """测试足迹水平中心在出生点"""
        state = assemble(parse_body(PAIR), self.cfg, self.terrain, spawn_x=5.0)
        assert state.positions[:, 0].min() + state.positions[:, 0].max() == pytest.approx(10.0)

    def test_rests_on_highest_ground(self):
        """测试落在足迹内最高的地面上"""
        terrain = staircase_terrain(rise=0.3, run=3.0, ramp=0.1, start=0.0)
        state = assemble(parse_body(PAIR), self.cfg, terrain)
        assert state.positions[:, 1].min() == pytest.approx(0.3)

    def test_deterministic(self):
        """测试相同输入得到相同状态"""
        body = parse_body("..R..-..S..-HHHHH-..V..-.....")
        a = assemble(body, self.cfg, self.terrain)
        b = assemble(body, self.cfg, self.terrain)
        assert np.array_equal(a.positions, b.positions)
        assert np.array_equal(a.spring_a, b.spring_a)
        assert np.array_equal(a.spring_k, b.spring_k)

    def test_rigid_stiffer(self):
        """测试刚性体素弹簧更硬"""
        state = assemble(parse_body(PAIR), self.cfg, self.terrain)
        rigid = state.spring_k[state.spring_voxel == 0]
        soft = state.spring_k[state.spring_voxel == 1]
        assert np.all(rigid > soft)

    def test_spawn_outside_terrain(self):
        """测试出生点在地形范围外"""
        terrain = Terrain([(0.0, 0.0), (10.0, 0.0)])
        with pytest.raises(SpawnCollision):
            assemble(parse_body(PAIR), self.cfg, terrain, spawn_x=-5.0)

    def test_moore_neighbors(self):
        """测试 Moore 邻居按行优先排列，缺失为 -1"""
        state = assemble(parse_body("RS...-HV...-.....-.....-....."), self.cfg, self.terrain)
        # 体素 0 在 (0,0)：右邻 (0,1) 是体素 1，下邻 (1,0) 是体素 2，右下 (1,1) 是体素 3
        assert state.voxel_neighbors[0].tolist() == [-1, -1, -1, -1, 0, 1, -1, 2, 3]

    def test_set_actuation_clamped(self):
        """测试驱动目标被夹到 [0.6, 1.6]，且只作用于主动体素的驱动轴"""
        state = assemble(parse_body("RHV..-.....-.....-.....-....."), self.cfg, self.terrain)
        state.set_actuation(np.array([0.1, 5.0, 0.2]))
        assert state.rest_scale[0].tolist() == [1.0, 1.0]
        assert state.rest_scale[1].tolist() == [1.6, 1.0]
        assert state.rest_scale[2].tolist() == [1.0, 0.6]
