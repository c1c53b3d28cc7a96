"""Acceptance suite: one check per headline criterion, stated tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.
"""
import math
import time

import numpy as np

from catcost.broadcast import sample_two_copy_broadcasts
from catcost.catalysis import catalytic_cost_upper_bound, superadditivity_violation, thermo_advantage
from catcost.choi import synthesize_ppt_dilution
from catcost.cli import scenario_protocol
from catcost.catalysis import nonconvexity_witness, pure_additivity_check
from catcost.measures import (
    binegativity,
    d_max,
    d_max_to_ppt_isotropic,
    log_negativity,
)
from catcost.operators import (
    abs_operator,
    bipartite_shape,
    density_from_matrix,
    density_from_vector,
    partial_transpose,
    plain_shape,
    tensor,
    trace_distance,
    trace_norm,
)
from catcost.states import (
    IsotropicParams,
    classical_mix,
    gibbs_qubit,
    isotropic,
    max_entangled,
    symmetric_two_broadcast,
)

from conftest import hermitian_operator, random_density


def half_mixed(d):
    return isotropic(IsotropicParams(d, 0.5))


def correlated_broadcast(d):
    return symmetric_two_broadcast(max_entangled(d), isotropic(IsotropicParams(d, 0.0)))


def report(cid, name, ok):
    print(f"[criterion {cid:>2}] {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {cid} ({name}) failed"


def test_criterion_01_werner_formula():
    t0 = time.perf_counter()
    worst = 0.0
    for d in range(2, 9):
        got = log_negativity(half_mixed(d))
        want = math.log2((d * d + 1) / d) - 1.0
        worst = max(worst, abs(got - want))
    elapsed = time.perf_counter() - t0
    report(1, "closed-form log negativity, d=2..8",
           worst <= 1e-9 and elapsed < 5.0)


def test_criterion_02_broadcast_equality():
    worst = max(abs(log_negativity(correlated_broadcast(d)) - log_negativity(half_mixed(d)))
                for d in (2, 3))
    report(2, "broadcast shares the single-copy log negativity", worst <= 1e-9)


def test_criterion_03_binegativity_gates():
    lows = []
    for d in range(2, 6):
        lows.append(binegativity(half_mixed(d)).min_eigenvalue)
        lows.append(binegativity(correlated_broadcast(d)).min_eigenvalue)
    report(3, "binegativity gates d=2..5", min(lows) >= -1e-9)


def test_criterion_04_catalytic_advantage_gap():
    worst = 0.0
    for d in (2, 3):
        rho = half_mixed(d)
        cert = catalytic_cost_upper_bound(rho, correlated_broadcast(d))
        worst = max(worst, abs(cert.gap - log_negativity(rho) / 2.0))
        if not cert.valid:
            worst = math.inf
    report(4, "advantage gap equals half the standard cost", worst <= 1e-9)


def test_criterion_05_protocol_exactness():
    scenario = scenario_protocol(2, 1)
    worst = max(scenario.results["catalyst_residual"].value,
                scenario.results["system_residual"].value)
    report(5, "protocol returns catalyst and system exactly", worst <= 1e-10)


def test_criterion_06_superadditivity_violation():
    rho = half_mixed(2)
    violation = superadditivity_violation(rho, correlated_broadcast(2))
    ok = abs(violation - log_negativity(rho)) <= 1e-9 and violation > 0.3
    report(6, "strong superadditivity fails by one cost unit", ok)


def test_criterion_07_thermodynamics_gap():
    p = 0.25
    witness = nonconvexity_witness(classical_mix(0.0, p), gibbs_qubit(p),
                                   gamma=gibbs_qubit(p))
    expected = math.log2(7 / 6) - 0.5 * math.log2(4 / 3)
    ok = abs(witness.violation - expected) <= 1e-12
    for p_grid in (0.1, 0.25, 0.4):
        ok = ok and thermo_advantage(p_grid).gap > 0
    report(7, "work-cost convexity violation and catalytic gap", ok)


def test_criterion_08_dmax_to_ppt_equality():
    worst = 0.0
    for d in (2, 3):
        for lam in (0.5, 0.75, 1.0):
            rho = isotropic(IsotropicParams(d, lam))
            worst = max(worst, abs(d_max_to_ppt_isotropic(rho) - log_negativity(rho)))
    report(8, "max-relative entropy to PPT equals log negativity", worst <= 1e-6)


def test_criterion_09_purity_rigidity():
    phi = max_entangled(2)
    product = tensor(phi.op, phi.op)
    points = sample_two_copy_broadcasts(phi, n_starts=50, seed=42)
    worst = max(trace_distance(point.op, product) for point in points)
    report(9, "50 projection starts collapse to the product point", worst <= 1e-6)


def test_criterion_10_synthesis():
    ok = True
    for target in (half_mixed(2), correlated_broadcast(2)):
        t0 = time.perf_counter()
        solve = synthesize_ppt_dilution(1, target, tol=1e-6, max_iter=20000)
        elapsed = time.perf_counter() - t0
        ok = ok and solve.converged and max(solve.residuals.values()) <= 1e-6
        ok = ok and solve.iterations <= 20000 and elapsed < 60.0
    infeasible = synthesize_ppt_dilution(0, half_mixed(2), tol=1e-6)
    ok = ok and not infeasible.converged
    ok = ok and infeasible.npt_witness is not None
    ok = ok and abs(infeasible.npt_witness + 1 / 8) <= 1e-12
    report(10, "dilution synthesis feasible at m=1, certified infeasible at m=0", ok)


def test_criterion_11_property_suites():
    rng = np.random.default_rng(1234)
    cases = 200

    ok_involution = True
    for _ in range(cases):
        x = hermitian_operator(rng, [(2, 2), (2, 1)])
        twice = partial_transpose(partial_transpose(x))
        ok_involution &= np.abs(twice.entries - x.entries).max() <= 1e-12

    ok_tracenorm = True
    for _ in range(cases):
        x = hermitian_operator(rng, [(3, 2)])
        ok_tracenorm &= abs(trace_norm(x) - abs_operator(x).trace().real) <= 1e-10

    ok_additivity = True
    for _ in range(cases):
        a = random_density(rng, 2, 2)
        b = random_density(rng, 2, 2)
        prod = density_from_matrix(tensor(a.op, b.op).entries, a.shape.concat(b.shape))
        defect = abs(log_negativity(prod) - log_negativity(a) - log_negativity(b))
        ok_additivity &= defect <= 1e-9

    ok_schmidt = True
    for _ in range(cases):
        da, db = rng.integers(2, 4, size=2)
        v = rng.standard_normal(da * db) + 1j * rng.standard_normal(da * db)
        psi = density_from_vector(v, bipartite_shape(da, db))
        ok_schmidt &= pure_additivity_check(psi, max_entangled(2)) == 0.0

    ok_quasiconvex = True
    for _ in range(cases):
        p0 = rng.random(4) + 1e-3; p0 /= p0.sum()
        p1 = rng.random(4) + 1e-3; p1 /= p1.sum()
        q = rng.random(4) + 0.1; q /= q.sum()
        sigma = density_from_matrix(np.diag(q), plain_shape(4))
        val_mid = d_max(density_from_matrix(np.diag((p0 + p1) / 2), plain_shape(4)), sigma)
        val_max = max(d_max(density_from_matrix(np.diag(p0), plain_shape(4)), sigma),
                      d_max(density_from_matrix(np.diag(p1), plain_shape(4)), sigma))
        ok_quasiconvex &= val_mid <= val_max + 1e-9

    report(11, "five randomized property suites, 200 cases each",
           ok_involution and ok_tracenorm and ok_additivity
           and ok_schmidt and ok_quasiconvex)
