"""Randomised properties driven by hypothesis-chosen instance specs."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from semihilbert import adjoint, blocks, linalg, radius, tilde
from semihilbert.space import sample_a_unit, sip
from semihilbert.suite import InstanceSpec, generate, run_check

seeds = st.integers(min_value=0, max_value=2**63 - 1)


@st.composite
def dims(draw, max_dim=6):
    n = draw(st.integers(1, max_dim))
    r = draw(st.integers(1, n))
    return n, r


SETTINGS = settings(max_examples=40, deadline=None)


@SETTINGS
@given(seeds, dims())
def test_radius_sandwich_and_sharp_invariance(seed, nr):
    sp, (T,) = generate(InstanceSpec(seed, *nr))
    n = radius.op_seminorm(sp, T).value
    w = radius.numerical_radius(sp, T).value
    assert 0.5 * n - 1e-9 * max(1, n) <= w <= n + 1e-9 * max(1, n)
    S = adjoint.sharp(sp, T)
    assert abs(radius.numerical_radius(sp, S).value - w) <= 1e-8 * max(1, w)
    assert abs(radius.op_seminorm(sp, S).value - n) <= 1e-8 * max(1, n)


@SETTINGS
@given(seeds, dims())
def test_null_components_do_not_change_a_quantities(seed, nr):
    sp, (T,) = generate(InstanceSpec(seed, *nr))
    X = sample_a_unit(sp, seed % 1000, 8, include_null=True)
    Y = sample_a_unit(sp, seed % 1000, 8, include_null=False)
    for x, y in zip(X, Y):
        assert abs(sip(sp, T @ x, x) - sip(sp, T @ y, y)) <= 1e-9 * max(1, linalg.norm2(T)) * max(1, sp.normA)


@SETTINGS
@given(seeds, dims())
def test_two_path_radius(seed, nr):
    sp, (T,) = generate(InstanceSpec(seed, *nr))
    w = radius.numerical_radius(sp, T).value
    assert abs(radius.sup_alpha_beta(sp, T) - w) <= 1e-7 * max(1, w)


@SETTINGS
@given(seeds, dims())
def test_crawford_below_every_range_point(seed, nr):
    sp, (T,) = generate(InstanceSpec(seed, *nr))
    c = radius.crawford(sp, T).value
    rb = radius.numerical_range_boundary(sp, T, 64)
    assert c <= np.min(np.abs(rb.support_points)) + 1e-9 * max(1, c)


@SETTINGS
@given(seeds, dims(max_dim=5))
def test_reduction_structure(seed, nr):
    sp, (T, S) = generate(InstanceSpec(seed, *nr, ("generic", "generic")))
    scale = max(1, linalg.norm2(tilde.reduce(sp, T).B), linalg.norm2(tilde.reduce(sp, S).B)) ** 2
    mul, add = tilde.tilde_homomorphism(sp, T, S)
    assert mul <= 1e-9 * scale and add <= 1e-9 * scale
    assert tilde.tilde_sharp_is_adjoint(sp, T) <= 1e-9 * scale


@SETTINGS
@given(seeds, dims(max_dim=4))
def test_block_sharp_formula(seed, nr):
    sp, ops = generate(InstanceSpec(seed, *nr, ("generic",) * 4))
    scale = max(1.0, max(linalg.norm2(adjoint.sharp(sp, t)) for t in ops))
    assert blocks.block_sharp_residual(sp, *ops) <= 1e-9 * scale


@SETTINGS
@given(seeds, dims(max_dim=5), st.sampled_from(["feki1_lo", "feki1_hi", "corr2020_lo", "eqnew15", "omprovenew_hi"]))
def test_single_operator_inequalities(seed, nr, name):
    sp, (T,) = generate(InstanceSpec(seed, *nr))
    assert run_check(name, sp, [T]).passed


@SETTINGS
@given(seeds, dims(max_dim=5), st.sampled_from(["a7ad1", "jdid", "commu223", "fong_sharp", "r61", "r62", "sousmult"]))
def test_pair_inequalities(seed, nr, name):
    sp, ops = generate(InstanceSpec(seed, *nr, ("generic", "generic")))
    assert run_check(name, sp, ops).passed
