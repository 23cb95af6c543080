import numpy as np

from shuttleswarm.utils.geometry import bearing_angle, UndefinedBearingError, equirectangular


def test_bearing_examples():
    assert bearing_angle((0, 0), (10, 0), (5, 0)) == 0.
    assert abs(bearing_angle((0, 0), (10, 0), (0, 7)) - 90.) < 1e-12
    assert abs(bearing_angle((0, 0), (10, 0), (10, 3.64)) - 20.) < 0.05
    assert abs(bearing_angle((0, 0), (10, 0), (-3, 0)) - 180.) < 1e-12


def test_bearing_symmetry():
    rng = np.random.RandomState(0)
    for _ in range(100):
        at, a, b = rng.uniform(-100, 100, (3, 2))
        assert abs(bearing_angle(at, a, b) - bearing_angle(at, b, a)) < 1e-9


def test_bearing_undefined():
    try:
        bearing_angle((1, 1), (1, 1), (3, 4))
    except UndefinedBearingError:
        pass
    else:
        assert False, "expected UndefinedBearingError"


def test_equirectangular():
    project = equirectangular(11.12, 46.07)
    x, y = project(11.12, 46.07)
    assert x == 0 and y == 0
    # one arc minute of latitude is about a nautical mile
    x, y = project(11.12, 46.07 + 1. / 60)
    assert abs(y - 1853.) < 2.
