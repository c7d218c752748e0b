import math

import numpy as np
import pytest

import kratzerkit as kz
from kratzerkit import correction as corr
from kratzerkit import solver as sol
from kratzerkit.errors import DomainError, NoBoundStates

K = 0.5


def kratzer_exact(n, l, De=5.0, re=1.0, k=K):
    # the Kratzer radial equation is Coulomb-like: -A/r with an augmented
    # 1/r**2 coefficient, so its spectrum has the closed Rydberg-type form
    A = 2.0 * De * re
    B_over_k = (De * re**2) / k + l * (l + 1)
    s = 0.5 + math.sqrt(B_over_k + 0.25)
    return -(A * A / (4.0 * k)) / (n + s) ** 2


def test_effective_potential():
    spec = kz.kratzer(5.0, 1.0)
    p0 = sol.RadialProblem(spec, 0, K)
    assert sol.effective_potential(p0, 2.0) == kz.evaluate(spec, 2.0)
    p1 = sol.RadialProblem(spec, 1, K)
    assert sol.effective_potential(p1, 2.0) == pytest.approx(
        kz.evaluate(spec, 2.0) + 0.25, rel=1e-14)


def test_grid_and_problem_validation():
    with pytest.raises(DomainError):
        sol.RadialGrid(0.0, 10.0, 500)
    with pytest.raises(DomainError):
        sol.RadialGrid(2.0, 1.0, 500)
    with pytest.raises(DomainError):
        sol.RadialGrid(0.1, 10.0, 100)
    with pytest.raises(DomainError):
        sol.RadialProblem(kz.kratzer(5.0, 1.0), -1, K)
    with pytest.raises(DomainError):
        sol.RadialProblem(kz.kratzer(5.0, 1.0), 0, 0.0)


@pytest.mark.parametrize("l", [0, 1, 2])
def test_kratzer_levels_match_exact_spectrum(l):
    prob = sol.RadialProblem(kz.kratzer(5.0, 1.0), l, K)
    states = sol.solve_bound_states(prob, n_max=4)
    assert len(states) == 5 and not states.truncated
    for st in states:
        assert st.energy == pytest.approx(kratzer_exact(st.n, l), rel=1e-7)


def test_kratzer_against_diagonalization_oracle():
    prob = sol.RadialProblem(kz.kratzer(5.0, 1.0), 0, K)
    states = sol.solve_bound_states(prob, n_max=4)
    oracle = sol.diagonalize_oracle(prob, sol.RadialGrid(1e-3, 50.0, 32001),
                                    max_levels=5)
    for st, ev in zip(states, oracle):
        assert st.energy == pytest.approx(ev, rel=1e-6)


def test_node_counts_norms_and_bounds():
    grid = sol.default_grid(1.0)
    prob = sol.RadialProblem(corr.corrected_screened_kratzer(5.0, 1.0, 0.25),
                             0, K)
    states = sol.solve_bound_states(prob, grid, n_max=4)
    h = grid.spacing
    vmin = float(np.min(sol.effective_potential(prob, grid.radii())))
    for st in states:
        u = st.wavefunction
        assert u.shape == (grid.n_points,)
        interior = np.sign(u[1:-1])
        interior = interior[interior != 0]
        nodes = int(np.count_nonzero(interior[1:] != interior[:-1]))
        assert nodes == st.n
        assert np.dot(u, u) * h == pytest.approx(1.0, abs=1e-8)
        assert vmin < st.energy < 0.0


def test_level_monotonicity():
    spec = corr.corrected_screened_kratzer(5.0, 1.0, 0.25)
    by_l = {}
    for l in (0, 1, 2):
        states = sol.solve_bound_states(sol.RadialProblem(spec, l, K), n_max=3)
        energies = [st.energy for st in states]
        assert all(b > a for a, b in zip(energies, energies[1:]))
        by_l[l] = energies
    for l in (0, 1):
        shared = min(len(by_l[l]), len(by_l[l + 1]))
        for n in range(shared):
            assert by_l[l + 1][n] >= by_l[l][n]  # centrifugal repulsion


def test_truncation_flag_and_capacity():
    spec = corr.corrected_screened_kratzer(5.0, 1.0, 0.25)
    prob = sol.RadialProblem(spec, 2, K)
    full = sol.solve_bound_states(prob, n_max=6)
    assert len(full) == 4 and full.truncated  # the l=2 well holds exactly 4
    some = sol.solve_bound_states(prob, n_max=2)
    assert len(some) == 3 and not some.truncated


def test_no_bound_states():
    spec = corr.corrected_screened_kratzer(5.0, 1.0, 0.25)
    with pytest.raises(NoBoundStates):
        # centrifugal barrier at l=8 wipes out the well entirely
        sol.solve_bound_states(sol.RadialProblem(spec, 8, K), n_max=0)
    with pytest.raises(NoBoundStates):
        shallow = corr.corrected_screened_kratzer(0.05, 1.0, 0.25)
        sol.solve_bound_states(sol.RadialProblem(shallow, 0, K), n_max=0)
    with pytest.raises(NoBoundStates):
        # tau=-1 leaves only a weak pocket near the origin, too weak to bind
        pocket = kz.improved_screened_kratzer(5.0, 1.0, 0.25, 0.25, -1)
        sol.solve_bound_states(sol.RadialProblem(pocket, 0, K), n_max=0)


def test_flawed_and_corrected_spectra_differ():
    flawed = kz.screened_kratzer(5.0, 1.0, 0.25)
    fixed = corr.corrected_screened_kratzer(5.0, 1.0, 0.25)
    e_flawed = sol.solve_bound_states(sol.RadialProblem(flawed, 0, K),
                                      n_max=0)[0].energy
    e_fixed = sol.solve_bound_states(sol.RadialProblem(fixed, 0, K),
                                     n_max=0)[0].energy
    # same nominal (De, re, alpha), very different ground states
    assert abs(e_flawed - e_fixed) > 0.5


def test_harmonic_confinement_ladder():
    spec = kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.1)
    prob = sol.RadialProblem(spec, 0, K)
    states = sol.solve_bound_states(prob, n_max=2)
    assert len(states) == 3 and not states.truncated
    oracle = sol.diagonalize_oracle(prob, sol.RadialGrid(1e-3, 50.0, 32001),
                                    max_levels=3)
    assert len(oracle) == 3
    for st, ev in zip(states, oracle):
        # second-order oracle converges slowly against the r**2 tail
        assert st.energy == pytest.approx(ev, rel=5e-5)
    energies = [st.energy for st in states]
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_oracle_second_order_convergence():
    prob = sol.RadialProblem(kz.kratzer(5.0, 1.0), 0, K)
    e = [sol.diagonalize_oracle(prob, sol.RadialGrid(1e-3, 50.0, n),
                                max_levels=1)[0]
         for n in (2001, 4001, 8001)]
    ratio = (e[0] - e[1]) / (e[1] - e[2])
    assert ratio == pytest.approx(4.0, abs=0.7)


def test_solves_are_deterministic():
    prob = sol.RadialProblem(kz.screened_kratzer(5.0, 1.0, 0.25), 1, K)
    a = sol.solve_bound_states(prob, n_max=2)
    b = sol.solve_bound_states(prob, n_max=2)
    for x, y in zip(a, b):
        assert x.energy == y.energy
        assert np.array_equal(x.wavefunction, y.wavefunction)


def test_ground_state_peaks_inside_the_well():
    grid = sol.default_grid(1.0)
    prob = sol.RadialProblem(kz.kratzer(5.0, 1.0), 0, K)
    st = sol.solve_bound_states(prob, grid, n_max=0)[0]
    peak_r = grid.radii()[int(np.argmax(np.abs(st.wavefunction)))]
    assert 0.5 < peak_r < 3.0
