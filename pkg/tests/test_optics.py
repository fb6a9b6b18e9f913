import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from qscissors.fock import FockSpace, make_fock_state
from qscissors.optics import (
    BeamSplitter,
    apply_beam_splitter,
    apply_unitary,
    bs_row,
    bs_unitary,
    heisenberg_check,
    local_unitary,
    sector_levels,
)

thetas = st.floats(0, math.pi / 2)


def generator(space, i, j):
    ai, aj = space.annihilation(i), space.annihilation(j)
    return ai.T @ aj - ai @ aj.T


@pytest.mark.parametrize("dims", [(2, 2), (3, 5), (4, 4), (2, 3, 3)])
@pytest.mark.parametrize("theta", [0.0, 0.4, math.pi / 4, 1.3, math.pi / 2])
def test_matches_dense_expm(dims, theta):
    space = FockSpace(dims)
    i, j = 0, len(dims) - 1
    U = bs_unitary(space, BeamSplitter(i, j, theta))
    assert np.max(np.abs(U - expm(theta * generator(space, i, j)))) <= 1e-12


def test_identity_at_zero():
    U = bs_unitary(FockSpace((3, 4)), BeamSplitter(0, 1, 0.0))
    assert np.array_equal(U, np.eye(12))


def test_swap_at_half_pi():
    space = FockSpace((2, 2))
    U = bs_unitary(space, BeamSplitter(0, 1, math.pi / 2))
    i10, i01 = space.index((1, 0)), space.index((0, 1))
    assert abs(U[i01, i10]) == pytest.approx(1, abs=1e-15)
    assert U[i01, i10] == pytest.approx(-1, abs=1e-15)
    assert U[i10, i01] == pytest.approx(1, abs=1e-15)


@given(thetas)
def test_single_photon_block_orientation(theta):
    space = FockSpace((2, 2))
    U = bs_unitary(space, BeamSplitter(0, 1, theta))
    t, r = math.cos(theta), math.sin(theta)
    i10, i01 = space.index((1, 0)), space.index((0, 1))
    # columns are images: |1,0> -> t|1,0> - r|0,1>, |0,1> -> r|1,0> + t|0,1>
    block = U[np.ix_([i10, i01], [i10, i01])]
    assert block == pytest.approx(np.array([[t, r], [-r, t]]), abs=1e-14)


@given(st.floats(0, 1))
def test_single_photon_transmission_probability(T):
    bs = BeamSplitter.from_transmissivity(0, 1, T)
    rho = make_fock_state(FockSpace((2, 2)), (1, 0))
    out = apply_unitary(rho, bs_unitary(rho.space, bs))
    assert out.data[rho.space.index((1, 0)), rho.space.index((1, 0))].real == pytest.approx(T, abs=1e-14)


def test_half_transmission_populations():
    rho = make_fock_state(FockSpace((2, 2)), (1, 0))
    out = apply_unitary(rho, bs_unitary(rho.space, BeamSplitter.from_transmissivity(0, 1, 0.5)))
    pops = out.populations()
    assert pops[rho.space.index((1, 0))] == pytest.approx(0.5, abs=1e-15)
    assert pops[rho.space.index((0, 1))] == pytest.approx(0.5, abs=1e-15)


@settings(deadline=None)
@given(thetas, st.sampled_from([(2, 2), (3, 3), (2, 6), (5, 4)]))
def test_unitarity(theta, dims):
    U = bs_unitary(FockSpace(dims), BeamSplitter(0, 1, theta))
    assert np.max(np.abs(U.T @ U - np.eye(U.shape[0]))) <= 1e-12


@settings(deadline=None)
@given(thetas, st.sampled_from([(3, 3), (2, 5), (4, 2)]))
def test_block_structure_conserves_photons(theta, dims):
    space = FockSpace(dims)
    U = local_unitary(theta, *dims)
    total = np.add.outer(np.arange(dims[0]), np.arange(dims[1])).ravel()
    # structural: entries linking different totals are exactly zero
    assert np.all(U[total[:, None] != total[None, :]] == 0)
    n_pair = space.number(0) + space.number(1)
    assert np.max(np.abs(U @ n_pair - n_pair @ U)) <= 1e-13


@settings(deadline=None)
@given(thetas, thetas)
def test_one_parameter_group(t1, t2):
    if t1 + t2 > math.pi / 2:
        t1, t2 = t1 / 2, t2 / 2
    space = FockSpace((4, 4))
    U1 = bs_unitary(space, BeamSplitter(0, 1, t1))
    U2 = bs_unitary(space, BeamSplitter(0, 1, t2))
    U12 = bs_unitary(space, BeamSplitter(0, 1, t1 + t2))
    assert np.max(np.abs(U1 @ U2 - U12)) <= 1e-12


@pytest.mark.parametrize("theta", [0.0, 0.3, math.pi / 4, 1.1, math.pi / 2])
def test_heisenberg_relations(theta):
    assert heisenberg_check(BeamSplitter(0, 1, theta), (4, 4)) <= 1e-10
    assert heisenberg_check(BeamSplitter(0, 1, theta), (6, 3)) <= 1e-10


def test_heisenberg_zero_angle_is_exact():
    assert heisenberg_check(BeamSplitter(0, 1, 0.0)) == 0.0


@given(thetas)
def test_vacuum_invariant(theta):
    space = FockSpace((3, 3))
    U = bs_unitary(space, BeamSplitter(0, 1, theta))
    e0 = np.zeros(9)
    e0[0] = 1
    assert np.array_equal(U @ e0, e0)


@pytest.mark.parametrize("modes", [(0, 2), (2, 0), (1, 2)])
def test_local_application_matches_dense(modes):
    rng = np.random.default_rng(7)
    space = FockSpace((2, 3, 3))
    A = rng.normal(size=(18, 18)) + 1j * rng.normal(size=(18, 18))
    from qscissors.fock import DensityMatrix

    rho = DensityMatrix(space, A @ A.conj().T / np.trace(A @ A.conj().T).real)
    bs = BeamSplitter(*modes, 0.77)
    dense = apply_unitary(rho, bs_unitary(space, bs))
    local = apply_beam_splitter(rho, bs)
    assert np.max(np.abs(dense.data - local.data)) <= 1e-13
    assert dense.trace() == pytest.approx(rho.trace(), abs=1e-12)
    ev0 = np.linalg.eigvalsh(rho.data)
    ev1 = np.linalg.eigvalsh(dense.data)
    assert np.max(np.abs(ev0 - ev1)) <= 1e-12


@pytest.mark.parametrize("counts", [(1, 0), (0, 1), (2, 1), (0, 3)])
def test_row_matches_full_unitary(counts):
    di, dj = 4, 5
    row = bs_row(0.6, di, dj, counts)
    U = local_unitary(0.6, di, dj)
    assert np.array_equal(row.ravel(), U[counts[0] * dj + counts[1]])


def test_sector_levels_truncated():
    assert list(sector_levels(3, 2, 10)) == [0, 1]
    assert list(sector_levels(3, 10, 2)) == [2, 3]
    assert list(sector_levels(2, 3, 3)) == [0, 1, 2]


def test_invalid_specs():
    with pytest.raises(ValueError):
        BeamSplitter(1, 1, 0.2)
    with pytest.raises(ValueError):
        BeamSplitter(0, 1, 2.0)
    with pytest.raises(ValueError):
        BeamSplitter.from_transmissivity(0, 1, 1.5)
    with pytest.raises(ValueError):
        apply_unitary(make_fock_state(FockSpace((2,)), (0,)), np.eye(3))
