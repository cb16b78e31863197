import numpy as np
import pytest

from pagerank_lab.schedules import geometric_schedule, resolve_schedule
from pagerank_lab.trajectory import (
    RunMeta,
    Trajectory,
    TrajectorySample,
    load_samples,
    samples_from_csv,
    trajectory_from_json,
    trajectory_to_csv,
    trajectory_to_json,
    write_trajectory,
)


def _meta(**kw):
    base = dict(
        graph_source="test", alpha=0.15, beta=None, seed=1, steps=10,
        protocol="single", schedule="geometric",
    )
    base.update(kw)
    return RunMeta(**base)


def _traj():
    return Trajectory(
        meta=_meta(),
        samples=(
            TrajectorySample(k=1, err_l1=0.5, err_l2=0.4, sigma=0),
            TrajectorySample(k=2, err_l1=0.25, err_l2=0.2, sigma=0),
        ),
        final_x_bar=(0.5, 0.25, 0.25),
    )


def test_csv_single_sample_is_two_lines():
    traj = Trajectory(
        meta=_meta(steps=1),
        samples=(TrajectorySample(k=1, err_l1=0.5, err_l2=0.4, sigma=0),),
        final_x_bar=(1.0,),
    )
    text = trajectory_to_csv(traj)
    assert text == "k,err_l1,err_l2,sigma\n1,0.5,0.4,0\n"


def test_csv_round_trips_floats_exactly():
    samples = (
        TrajectorySample(k=1, err_l1=1 / 3, err_l2=0.1 + 0.2, sigma=0),
        TrajectorySample(k=7, err_l1=1e-17, err_l2=np.pi, sigma=2),
    )
    traj = Trajectory(meta=_meta(), samples=samples, final_x_bar=(1.0,))
    assert samples_from_csv(trajectory_to_csv(traj)) == samples


def test_json_round_trip_equality():
    traj = _traj()
    assert trajectory_from_json(trajectory_to_json(traj)) == traj


def test_serialization_is_byte_stable():
    assert trajectory_to_json(_traj()) == trajectory_to_json(_traj())
    assert trajectory_to_csv(_traj()) == trajectory_to_csv(_traj())


def test_write_and_load(tmp_path):
    traj = _traj()
    for fmt in ("csv", "json"):
        p = tmp_path / f"t.{fmt}"
        write_trajectory(traj, fmt, p)
        assert load_samples(p) == traj.samples


def test_write_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        write_trajectory(_traj(), "xml", tmp_path / "t.xml")


def test_validate_rejects_non_increasing_k():
    traj = Trajectory(
        meta=_meta(),
        samples=(
            TrajectorySample(k=2, err_l1=0.5, err_l2=0.4, sigma=0),
            TrajectorySample(k=2, err_l1=0.4, err_l2=0.3, sigma=0),
        ),
        final_x_bar=(1.0,),
    )
    with pytest.raises(ValueError):
        traj.validate()


def test_validate_rejects_decreasing_sigma():
    traj = Trajectory(
        meta=_meta(),
        samples=(
            TrajectorySample(k=1, err_l1=0.5, err_l2=0.4, sigma=2),
            TrajectorySample(k=2, err_l1=0.4, err_l2=0.3, sigma=1),
        ),
        final_x_bar=(1.0,),
    )
    with pytest.raises(ValueError):
        traj.validate()


def test_geometric_schedule():
    sched = geometric_schedule(1_000_000)
    assert sched[0] == 1
    assert sched[-1] == 1_000_000
    assert list(sched[:5]) == [1, 2, 4, 8, 16]
    assert 524_288 in sched
    # powers of two horizon has no duplicate tail
    assert list(geometric_schedule(8)) == [1, 2, 4, 8]


def test_resolve_schedule():
    assert list(resolve_schedule("geometric", 8)) == [1, 2, 4, 8]
    assert list(resolve_schedule([5, 1, 5], 10)) == [1, 5]
    with pytest.raises(ValueError):
        resolve_schedule("linear", 8)
    with pytest.raises(ValueError):
        resolve_schedule([0, 3], 8)
    with pytest.raises(ValueError):
        resolve_schedule([9], 8)
