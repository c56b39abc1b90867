import math

import pytest

from ringcav.params import PhysicalParams
from ringcav.sweep import (
    DEFAULT_QUANTITIES,
    ONE_VS_TWO_LABELS,
    SweepError,
    SweepSpec,
    evaluate_point,
    run_sweep,
)

WM = 2 * math.pi * 1e7


def swap_label(label, known):
    out = label
    for a, b in (("m1", "#"), ("m2", "m1"), ("#", "m2")):
        out = out.replace(a, b)
    # labels naming both mirrors map onto themselves
    return out if out in known else label


def test_grid_closed_form_and_endpoints():
    spec = SweepSpec(PhysicalParams(), "T", 1e-6, 2e-3, 7)
    g = spec.grid()
    assert len(g) == 7 and g[0] == 1e-6 and g[-1] == 2e-3
    for k, x in enumerate(g):
        t = k / 6
        assert x == 1e-6 * (1 - t) + 2e-3 * t


def test_log_grid():
    g = SweepSpec(PhysicalParams(), "T", 1e-6, 1e-3, 4, scale="log").grid()
    assert g[0] == 1e-6 and g[-1] == 1e-3
    assert g[1] == pytest.approx(1e-5, rel=1e-12) and g[2] == pytest.approx(1e-4, rel=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [dict(axis="kappa"), dict(min=1.0, max=0.5), dict(count=1), dict(scale="log", min=0.0),
     dict(scale="cubic"), dict(quantities=("E_foo",)), dict(axis="T", normalize_axis=True)],
)
def test_invalid_specs(kwargs):
    base = dict(base=PhysicalParams(), axis="T", min=1e-6, max=1e-3, count=3)
    base.update(kwargs)
    with pytest.raises(ValueError):
        SweepSpec(**base)


def test_nearly_degenerate_sweep_is_continuous():
    rows = run_sweep(SweepSpec(PhysicalParams(), "T", 1e-4 - 1e-12, 1e-4, 2, quantities=("E_m1_a",)))
    assert len(rows) == 2
    assert rows[0].values["E_m1_a"] == pytest.approx(rows[1].values["E_m1_a"], rel=1e-6)


def test_unstable_points_flagged():
    rows = run_sweep(SweepSpec(PhysicalParams(), "Delta", -1.0, 1.0, 5, normalize_axis=True))
    assert [r.axis_value for r in rows] == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert not rows[0].stable and rows[0].values == {}
    assert rows[-1].stable and set(rows[-1].values) == set(DEFAULT_QUANTITIES)
    for r in rows:
        assert bool(r.values) == r.stable


def test_normalized_axis_substitution():
    spec = SweepSpec(PhysicalParams(), "Delta_a", -2, 2, 3, normalize_axis=True)
    assert spec.params_at(-1.0).Delta_a == -WM


def test_derivation_failure_carries_axis_value():
    spec = SweepSpec(PhysicalParams(), "T", -1e-3, 1e-3, 3)
    with pytest.raises(SweepError) as info:
        run_sweep(spec)
    assert info.value.axis_value == -1e-3


def test_determinism_and_parallel_order():
    spec = SweepSpec(PhysicalParams(r=0.1), "T", 1e-6, 1e-3, 12)
    a = run_sweep(spec)
    b = run_sweep(spec, workers=4)
    assert [(r.axis_value, r.stable, r.values) for r in a] == [(r.axis_value, r.stable, r.values) for r in b]


def test_mirror_swap_of_labels():
    labels = DEFAULT_QUANTITIES + tuple(ONE_VS_TWO_LABELS)
    rows = run_sweep(SweepSpec(PhysicalParams(P=15e-3, r=0.1, Delta=0.5 * WM), "T", 1e-6, 1e-3, 6, quantities=labels))
    for row in rows:
        for q in labels:
            assert abs(row.values[q] - row.values[swap_label(q, labels)]) <= 1e-8, q


def test_one_vs_two_labels_cover_all_cuts():
    assert len(ONE_VS_TWO_LABELS) == 12
    assert "O_m1|m2a" in ONE_VS_TWO_LABELS and "O_op|m1a" in ONE_VS_TWO_LABELS


def test_zero_clipping_in_decoupled_point():
    res = evaluate_point(PhysicalParams(P=0.0, G_a=0.0, r=0.5, T=1e-4))
    assert all(v == 0.0 for v in res.values.values())
