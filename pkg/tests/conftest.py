import pytest

import roadfield as rf


@pytest.fixture(scope="session")
def medium_run():
    """One moderate logistic invasion shared by the analysis-level checks.

    Domain [-60, 60] x [0, 15] at dx=dy=0.25, t_end=25: long enough that the
    front is travelling, cheap enough to run once per session.
    """
    params = rf.ModelParams(D=1.0, d=1.0, mu=1.0)
    grid = rf.build_grid(-60.0, 60.0, 15.0, 0.25, 0.25, params, 0.4)
    every = max(1, int(round(0.25 / grid.dt)))
    record = rf.run(params, grid, rf.InitialDatum.compact_bump(), t_end=25.0,
                    snapshot_every=every)
    return params, grid, record
