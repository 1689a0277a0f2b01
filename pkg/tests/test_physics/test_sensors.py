"""
测试传感器与轨迹记录
"""

import os
import shutil
import tempfile

import numpy as np
import pytest

from src.morphology.body import parse_body
from src.physics.config import SimConfig
from src.physics.integrator import step
from src.physics.payload import PayloadBox
from src.physics.sensors import observe, voxel_areas, voxel_centers
from src.physics.soft_body import assemble
from src.physics.terrain import flat_terrain
from src.physics.trajectory import TrajectoryRecorder


BODY = "RS...-HV...-.....-.....-....."


class TestObserve:
    """测试传感器帧"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.cfg = SimConfig()
        self.body = parse_body(BODY)
        self.state = assemble(self.body, self.cfg, flat_terrain())

    def test_shape(self):
        """测试每个体素 30 个输入"""
        frame = observe(self.state, self.body)
        assert frame.shape == (4, 30)

    def test_fresh_assembly(self):
        """测试初始状态：速度为 0，存在的邻居面积为 1，缺失为 0"""
        frame = observe(self.state, self.body)
        slots = frame[:, :27].reshape(4, 9, 3)
        assert np.all(slots[:, :, :2] == 0.0)
        present = self.state.voxel_neighbors >= 0
        assert np.allclose(slots[:, :, 2][present], 1.0)
        assert np.all(slots[:, :, 2][~present] == 0.0)

    def test_center_slot_is_own(self):
        """测试中心槽位是体素自身"""
        self.state.velocities[:] = [0.5, -0.25]
        frame = observe(self.state, self.body)
        assert np.allclose(frame[:, 12:15], [[0.5, -0.25, 1.0]] * 4)

    @pytest.mark.parametrize("k,expected", [(0, 0.0), (12, 0.48), (25, 0.0), (37, 0.48)])
    def test_time_signal(self, k, expected):
        """测试周期时间信号 (k mod 25) / 25"""
        self.state.k = k
        assert np.allclose(observe(self.state)[:, 29], expected)

    def test_distance_to_box(self):
        """测试到箱子最近点的距离"""
        box = PayloadBox(2.0, 1.0, position=[10.0, 0.0])
        frame = observe(self.state, self.body, payload=box)
        centers = voxel_centers(self.state)
        assert np.allclose(frame[:, 27], 9.0 - centers[:, 0])
        assert np.allclose(frame[:, 28], np.clip(centers[:, 1], 0.0, 1.0) - centers[:, 1])

    def test_mask_distance(self):
        """测试屏蔽距离输入"""
        box = PayloadBox(2.0, 1.0, position=[10.0, 0.0])
        frame = observe(self.state, self.body, payload=box, mask_distance=True)
        assert np.all(frame[:, 27:29] == 0.0)

    def test_no_payload(self):
        """测试没有箱子时距离为 0"""
        assert np.all(observe(self.state)[:, 27:29] == 0.0)

    def test_body_mismatch(self):
        """测试身体与状态体素数不一致"""
        with pytest.raises(ValueError):
            observe(self.state, parse_body("RRR..-.....-.....-.....-....."))

    def test_areas_positive(self):
        """测试形变后面积仍为正"""
        for k in range(30):
            step(self.state, np.full(4, 1.5 if k % 10 < 5 else 0.7), self.cfg, flat_terrain())
        assert np.all(voxel_areas(self.state) > 0.0)


class TestTrajectoryRecorder:
    """测试轨迹记录"""

    def setup_method(self):
        """每个测试方法前执行"""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """每个测试方法后执行"""
        shutil.rmtree(self.temp_dir)

    def test_record_and_save(self):
        """测试记录并写出 JSON lines"""
        cfg = SimConfig()
        state = assemble(parse_body(BODY), cfg, flat_terrain())
        box = PayloadBox(2.0, 1.0, position=[0.0, 2.0])
        path = os.path.join(self.temp_dir, 'traj', 'run.jsonl')
        recorder = TrajectoryRecorder(path)
        for _ in range(3):
            actuation = np.ones(4)
            step(state, actuation, cfg, flat_terrain(), box)
            recorder.record(state, actuation, box)
        recorder.save()

        records = TrajectoryRecorder.load(path)
        assert len(records) == len(recorder) == 3
        assert [r['k'] for r in records] == [1, 2, 3]
        assert set(records[0]) == {'k', 'com_x', 'com_y', 'payload_x', 'payload_y', 'actuation'}
        assert records[0]['actuation'] == [1.0] * 4

    def test_save_without_path(self):
        """测试未指定路径"""
        with pytest.raises(ValueError):
            TrajectoryRecorder().save()
