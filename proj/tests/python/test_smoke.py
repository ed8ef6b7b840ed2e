import math

import pytest

import crfolio as cf


def test_catalog_lists_builtins():
    listing = cf.list_catalog()
    for name in ("rotating_circles", "z_sq", "sphere"):
        assert name in listing


def test_rotating_family_eval():
    fam = cf.build_rotating_circles(1.0, 2.0, 64)
    # g_t(zeta) = e^{it} + 2 zeta
    t = 0.7
    z = fam.eval(0.25, t)
    want = complex(math.cos(t), math.sin(t)) + 2 * 0.25
    assert abs(z - want) < 1e-10


def test_boundary_jacobian_closed_form():
    fam = cf.build_rotating_circles(1.0, 2.0, 64)
    got = cf.boundary_jacobian(fam, 0.3, 1.1)
    want = 2j * 1.0 * 2.0 * math.sin(1.1 - 0.3)
    assert abs(got - want) < 1e-8


def test_extension_of_holomorphic_function():
    fam = cf.build_rotating_circles(1.0, 2.0, 64)
    f = cf.make_function("z_sq", 1)
    ext = cf.analyze(f, fam)
    assert ext.extendible()
    assert ext.residual < 1e-10
    # F = (g_t(zeta))^2
    val = cf.eval_extension(ext, 0.5, 0.0)
    assert abs(val - fam.eval(0.5, 0.0) ** 2) < 1e-8


def test_extension_fails_for_conjugate():
    fam = cf.build_translated_circles(1.0, [0j, 1.5 + 0j, 3.0 + 0j], 64)
    f = cf.make_function("zbar", 1)
    ext = cf.analyze(f, fam)
    assert not ext.extendible()
    with pytest.raises(cf.DomainError):
        cf.eval_extension(ext, 0.5, 0.5)


def test_jacobian_vanishes_at_center():
    fam = cf.build_rotating_circles(1.0, 2.0, 64)
    f = cf.make_function("globevnik_2", 1)
    J = cf.compute_J(cf.analyze(f, fam))
    assert J.value(0.0, 1.3) == 0.0
    assert J.scale > 0
    chain = cf.track_zeros(J)
    assert chain.central_cycle_present
    assert len(chain.branches) > 0


def test_homology_and_degree():
    fam = cf.build_rotating_circles(2.0, 1.0, 128)
    verdict = cf.homology_test(fam)
    assert verdict.condition_a
    assert verdict.condition_iii
    deg, signs = cf.brouwer_degree(fam, 4.0 + 4.0j)
    assert deg == 0

    fiber = cf.trace_fiber(cf.build_rotating_circles(1.0, 2.0, 128), 0j)
    assert len(fiber) == 1
    assert fiber[0].closed


def test_verdict_pipeline():
    fam = cf.build_translated_circles(1.0, [0j, 1.5 + 0j, 3.0 + 0j], 128)
    rep = cf.run_verdict(cf.make_function("z_sq", 1), fam)
    assert rep.verdict == cf.Verdict.HolomorphicConfirmed
    rep2 = cf.run_verdict(cf.make_function("zbar", 1), fam)
    assert rep2.verdict == cf.Verdict.ConditionStarFails


def test_hypersurface_reality():
    fam = cf.build_hopf_discs(8)
    report = cf.k_mu_reality(fam, cf.make_surface("sphere"))
    assert report.max_rel_imag < 1e-8
    assert report.max_incidence < 1e-8


def test_counterexample_suite():
    suite = cf.counterexample_suite()
    assert suite.all_pass
