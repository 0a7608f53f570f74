import math

import pytest

from micropush.controller import ControllerConfig, Mode, PushController
from micropush.geometry import SideClass, build_corridor, classify_object
from micropush.sim import PlantConfig, WorldState, run_closed_loop


def make_cfg(waypoints, width=10.0, freq=9.0, d=15.0, t=8.0):
    return ControllerConfig(
        corridor_width=width,
        push_freq_hz=freq,
        waypoints=waypoints,
        approach_distance=d,
        arrival_threshold=t,
    )


def world(robot, obj):
    return WorldState(robot=robot, object=obj)


class TestInit:
    def test_approach_target_behind_object(self):
        ctrl = PushController(make_cfg([(200.0, 0.0)]), world((0.0, 0.0), (100.0, 0.0)))
        assert ctrl.state.mode is Mode.APPROACH
        assert ctrl.state.approach_target == pytest.approx((85.0, 0.0))

    def test_object_already_at_goal(self):
        ctrl = PushController(make_cfg([(103.0, 0.0)]), world((0.0, 0.0), (100.0, 0.0)))
        ctrl.step(world((0.0, 0.0), (100.0, 0.0)))
        assert ctrl.is_done

    def test_empty_waypoints_rejected(self):
        with pytest.raises(ValueError):
            make_cfg([])

    def test_object_coincides_with_goal_rejected(self):
        from micropush.geometry import DegenerateGeometry

        with pytest.raises(DegenerateGeometry):
            PushController(make_cfg([(100.0, 0.0)]), world((0.0, 0.0), (100.0, 0.0)))


class TestCommands:
    def test_push_command_heading_offset(self):
        # robot at origin pushing toward +x: heading 0, commanded alpha pi/2
        ctrl = PushController(make_cfg([(100.0, 0.0)]), world((-20.0, 0.0), (0.0, 0.0)))
        ctrl.state.mode = Mode.PUSH
        ctrl.state.corridor = build_corridor((0.0, 0.0), (100.0, 0.0), 10.0)
        cmd = ctrl.step(world((0.0, 0.0), (50.0, 0.0)))
        assert cmd.alpha == pytest.approx(0.5 * math.pi)
        assert cmd.gamma == pytest.approx(0.5 * math.pi)
        assert cmd.freq_hz == 9.0

    def test_outside_left_spins_cw(self):
        ctrl = PushController(make_cfg([(100.0, 0.0)]), world((-20.0, 0.0), (0.0, 0.0)))
        ctrl.state.mode = Mode.PUSH
        ctrl.state.corridor = build_corridor((0.0, 0.0), (100.0, 0.0), 10.0)
        cmd = ctrl.step(world((0.0, 0.0), (50.0, -7.0)))
        assert ctrl.state.mode is Mode.SPIN_CW
        assert cmd.gamma == pytest.approx(math.pi)

    def test_outside_right_spins_ccw(self):
        ctrl = PushController(make_cfg([(100.0, 0.0)]), world((-20.0, 0.0), (0.0, 0.0)))
        ctrl.state.mode = Mode.PUSH
        ctrl.state.corridor = build_corridor((0.0, 0.0), (100.0, 0.0), 10.0)
        cmd = ctrl.step(world((0.0, 0.0), (50.0, 7.0)))
        assert ctrl.state.mode is Mode.SPIN_CCW
        assert cmd.gamma == pytest.approx(0.0)

    def test_approach_heads_to_target(self):
        ctrl = PushController(make_cfg([(200.0, 0.0)]), world((0.0, 0.0), (100.0, 0.0)))
        cmd = ctrl.step(world((0.0, 0.0), (100.0, 0.0)))
        # approach point is (85, 0), straight +x from the robot
        assert ctrl.state.mode is Mode.APPROACH
        assert cmd.alpha == pytest.approx(0.5 * math.pi)
        assert cmd.gamma == pytest.approx(0.5 * math.pi)

    def test_is_done_lifecycle(self):
        ctrl = PushController(make_cfg([(200.0, 0.0)]), world((0.0, 0.0), (100.0, 0.0)))
        assert not ctrl.is_done
        ctrl.step(world((0.0, 0.0), (195.0, 0.0)))
        assert ctrl.is_done


class TestClosedLoopProperties:
    def run_log(self, width=10.0, freq=9.0, noise=0.5, seed=4):
        from micropush.bench import gen_circle, initial_world

        traj = gen_circle((300.0, 300.0), 538.0, 100)
        cfg = make_cfg(traj.nodes, width=width, freq=freq)
        plant = PlantConfig(noise_std=noise)
        return run_closed_loop(cfg, plant, initial_world(traj), seed=seed)

    def test_mode_soundness_and_monotonicity(self):
        from micropush.bench import gen_circle, initial_world
        from micropush.sim import advance, observe
        import random

        traj = gen_circle((300.0, 300.0), 538.0, 100)
        cfg = make_cfg(list(traj.nodes), width=10.0, freq=9.0)
        plant = PlantConfig(noise_std=0.5)
        rng = random.Random(4)
        w = initial_world(traj)
        ctrl = PushController(cfg, observe(w, plant, rng))
        prev_index = 0
        for _ in range(14400):
            obs = observe(w, plant, rng)
            corridor_before = ctrl.state.corridor
            index_before = ctrl.state.waypoint_index
            cmd = ctrl.step(obs)
            if ctrl.is_done:
                break
            # waypoint index never decreases
            assert ctrl.state.waypoint_index >= prev_index
            prev_index = ctrl.state.waypoint_index
            # gamma=180 only when the observed object was strictly left, etc.
            if ctrl.state.mode is Mode.SPIN_CW:
                assert classify_object(ctrl.state.corridor, obs.object) is SideClass.OUTSIDE_LEFT
                assert cmd.gamma == pytest.approx(math.pi)
            elif ctrl.state.mode is Mode.SPIN_CCW:
                assert classify_object(ctrl.state.corridor, obs.object) is SideClass.OUTSIDE_RIGHT
                assert cmd.gamma == pytest.approx(0.0)
            elif ctrl.state.mode is Mode.PUSH:
                assert classify_object(ctrl.state.corridor, obs.object) is SideClass.INSIDE
                assert cmd.gamma == pytest.approx(0.5 * math.pi)
            # corridor rebuilt only at approach->push or waypoint advance
            if (
                corridor_before is not None
                and ctrl.state.corridor is not corridor_before
            ):
                assert ctrl.state.waypoint_index > index_before
            w = advance(w, cmd, plant)
        assert ctrl.is_done

    def test_every_grid_scenario_terminates(self):
        for width in (5.0, 10.0, 15.0):
            for freq in (3.0, 15.0):
                log = self.run_log(width=width, freq=freq)
                assert log.done

    def test_transition_log_records_modes(self):
        log = self.run_log()
        modes = [m for _, m in log.mode_transitions]
        assert modes[0] is Mode.APPROACH
        assert modes[-1] is Mode.DONE
        assert Mode.PUSH in modes
