import pytest

from rainbow_bounds.errors import DomainError
from rainbow_bounds.experiment import ExperimentConfig, generate_instance, run_experiment


def test_instance_shape():
    ecg = generate_instance(ExperimentConfig(12, 12, 4, seed=1), 0)
    assert ecg.graph.m == 48
    classes = ecg.color_classes()
    assert sorted(classes) == list(range(12))
    assert all(len(es) == 4 for es in classes.values())


def test_regime_instance():
    cfg = ExperimentConfig(30, 34, 10, seed=7)
    ecg = generate_instance(cfg, 0)
    assert ecg.graph.m == 340
    assert len(ecg.color_classes()) == 34


def test_deterministic():
    cfg = ExperimentConfig(20, 15, 6, seed=99)
    assert generate_instance(cfg, 3) == generate_instance(cfg, 3)
    assert generate_instance(cfg, 3) != generate_instance(cfg, 4)


def test_trial_independent_of_run_length():
    a = run_experiment(ExperimentConfig(15, 10, 5, seed=5, trials=3))
    b = run_experiment(ExperimentConfig(15, 10, 5, seed=5, trials=6))
    assert [t.witness for t in a.trials] == [t.witness for t in b.trials[:3]]


def test_full_packing():
    ecg = generate_instance(ExperimentConfig(6, 5, 3, seed=0), 0)
    assert ecg.graph.m == 15


def test_packing_refused():
    with pytest.raises(DomainError):
        ExperimentConfig(6, 4, 4)


@pytest.mark.parametrize("kw", [dict(n=1, num_colors=1, class_size=1), dict(n=5, num_colors=0, class_size=1),
                                dict(n=5, num_colors=1, class_size=1, seed=-1),
                                dict(n=5, num_colors=1, class_size=1, trials=-1)])
def test_bad_config(kw):
    with pytest.raises(DomainError):
        ExperimentConfig(**kw)


def test_one_color_never_rainbow():
    rep = run_experiment(ExperimentConfig(10, 1, 3, seed=2, trials=20))
    assert rep.rate == 0.0


def test_zero_trials():
    rep = run_experiment(ExperimentConfig(10, 3, 3, trials=0))
    assert rep.rate is None
    assert rep.as_dict()["rate"] is None


def test_regime_rate():
    rep = run_experiment(ExperimentConfig.for_pair(30, 1.1077, 1 / 3, seed=7, trials=100))
    assert rep.config.num_colors == 34 and rep.config.class_size == 10
    assert rep.rate == 1.0
    assert "empirical" in rep.label


def test_witnesses_are_rainbow():
    rep = run_experiment(ExperimentConfig(12, 12, 4, seed=3, trials=10))
    cfg = rep.config
    for t in rep.trials:
        if t.witness:
            ecg = generate_instance(cfg, t.trial)
            a, b, c = t.witness
            assert len({ecg.color(a, b), ecg.color(a, c), ecg.color(b, c)}) == 3


def test_wall_time_opt_in():
    rep = run_experiment(ExperimentConfig(10, 3, 3, trials=1))
    assert "wall_time" not in rep.as_dict()
    assert rep.as_dict(timing=True)["wall_time"] >= 0
