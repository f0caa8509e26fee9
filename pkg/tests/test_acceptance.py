"""Acceptance criteria, one test per criterion, all exact."""

import subprocess
import sys
from functools import lru_cache

import pytest

from quiverext import corpus
from quiverext.asregular import (as_regularity_certificate, central_extension,
                                 find_special_twists, formula_twist, gamma_extension,
                                 gk_dimension)
from quiverext.engine import build_model
from quiverext.extension import (BUILTIN_TWISTS, builtin_twist, extension_oracle,
                                 twisted_extension_presentation, verify_extension_presentation)
from quiverext.koszul import (koszulity_check, quadratic_dual, verify_betti_equals_series,
                              verify_koszul_duality_series)
from quiverext.series import (algebra_complexity, hilbert_poly, invert_alternating,
                              partial_sum_report, verify_extension_hilbert)
from quiverext.stability import check_stable, verify_eta_compatibility
from quiverext.suite import returning_arrow_law

SELFINJECTIVE = [f"exterior-{m}" for m in range(1, 5)] + [f"cyclic-{n}-j2" for n in range(2, 5)]
AS_REGULAR = [f"polynomial-{m}" for m in range(1, 4)] + [f"cyclic-{n}" for n in range(2, 5)]
STEPS = 8


@lru_cache(maxsize=None)
def base(name):
    m = build_model(corpus.builtin(name))
    return m, check_stable(m)


@lru_cache(maxsize=None)
def extension(name, twist):
    m, cert = base(name)
    sigma = builtin_twist(twist, cert)
    ep = twisted_extension_presentation(m, cert, sigma)
    return sigma, ep, build_model(ep.presentation, cap=cert.l + 3)


@lru_cache(maxsize=None)
def koszul(name):
    return bool(koszulity_check(base(name)[0], STEPS))


@lru_cache(maxsize=None)
def as_cert(name):
    return as_regularity_certificate(corpus.builtin(name))


def cases():
    return [(n, t) for n in SELFINJECTIVE for t in BUILTIN_TWISTS]


def assert_none(failures):
    assert not failures, "\n".join(failures)


def test_c01_returning_arrow_law():
    failures = []
    for name, twist in cases():
        m, cert = base(name)
        _, ep, _ = extension(name, twist)
        if not returning_arrow_law(m, cert, ep.presentation):
            got = sorted((a.source, a.target) for a in ep.presentation.quiver.arrows
                         if a.name.startswith("α"))
            failures.append(f"{name} {twist}: returning arrows {got}, tau {cert.tau}")
    assert_none(failures)


def test_c02_relation_law():
    failures = []
    for name, twist in cases():
        m, cert = base(name)
        sigma, ep, em = extension(name, twist)
        rep = verify_extension_presentation(ep, extension_oracle(m, cert, sigma))
        failures += [f"{name} {twist}: {c.name}" for c in rep.failures()]
        if em.dim() != 2 * m.dim() or em.top + 1 != cert.l + 2:
            failures.append(f"{name} {twist}: dim {em.dim()} loewy {em.top + 1}")
    assert_none(failures)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_c03_exterior_chain(m):
    _, ep, _ = extension(f"exterior-{m}", "sigma0")
    assert ep.presentation.relation_span_equals(corpus.exterior(m + 1), {"α@0": f"x{m + 1}"})


def test_c04_eta_compatibility():
    failures = []
    for name in SELFINJECTIVE:
        m, cert = base(name)
        rep = verify_eta_compatibility(m, cert)
        failures += [f"{name}: {w}" for c in rep.failures() for w in c.witnesses]
    for name in AS_REGULAR:
        cert = as_cert(name)
        rep = verify_eta_compatibility(cert.model, cert.stability)
        failures += [f"{name} Yoneda side: {w}" for c in rep.failures() for w in c.witnesses]
    assert_none(failures)


def test_c05_hilbert_factorization():
    failures = []
    for name, twist in cases():
        m, cert = base(name)
        sigma, _, em = extension(name, twist)
        if not verify_extension_hilbert(m, cert, sigma, em).passed:
            failures.append(f"{name} {twist}")
    assert_none(failures)


def test_c06_betti_equals_inverse_series():
    failures, checked = [], 0
    for name in SELFINJECTIVE:
        if not koszul(name):
            continue
        models = [base(name)[0]] + [extension(name, t)[2] for t in BUILTIN_TWISTS]
        for label, model in zip(["base"] + list(BUILTIN_TWISTS), models):
            if not koszulity_check(model, STEPS):
                continue
            checked += 1
            if not verify_betti_equals_series(model, STEPS).passed:
                failures.append(f"{name} {label}")
    assert checked == len(SELFINJECTIVE) * (1 + len(BUILTIN_TWISTS))
    assert_none(failures)


def test_c07_partial_sum_law():
    failures = []
    for name, twist in cases():
        m, _ = base(name)
        em = extension(name, twist)[2]
        b = invert_alternating(hilbert_poly(m), 16)
        e = invert_alternating(hilbert_poly(em), 16)
        if not partial_sum_report(b, e).passed:
            failures.append(f"{name} {twist}")
    assert_none(failures)


def test_c08_complexity_increment():
    failures = []
    for name in SELFINJECTIVE:
        m, _ = base(name)
        c = algebra_complexity(m)
        want = int(name.split("-")[1]) if name.startswith("exterior") else 1
        if c.d != want or c.method != "exact-quasipolynomial":
            failures.append(f"{name}: {c.d} ({c.method}) expected {want}")
        for twist in BUILTIN_TWISTS:
            ce = algebra_complexity(extension(name, twist)[2])
            if ce.d != want + 1 or ce.method != "exact-quasipolynomial":
                failures.append(f"{name} {twist}: {ce.d} expected {want + 1}")
    assert_none(failures)


def test_c09_koszulity_propagation():
    failures = []
    for name, twist in cases():
        if koszul(name):
            verdict = koszulity_check(extension(name, twist)[2], STEPS)
            if not verdict:
                failures.append(f"{name} {twist}: {verdict.summary()}")
    assert_none(failures)


def test_c10_koszul_duality_series():
    failures = []
    for name in SELFINJECTIVE + AS_REGULAR:
        p = corpus.builtin(name)
        for a in (p, quadratic_dual(p)):
            if not verify_koszul_duality_series(a, 12).passed:
                failures.append(name)
    assert_none(failures)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_c11_central_extension(m):
    p = corpus.polynomial(m)
    g = central_extension(p, as_cert(f"polynomial-{m}"))
    assert g.routes_agree
    assert g.presentation.relation_span_equals(corpus.polynomial(m + 1), {"α@0": f"x{m + 1}"})
    assert g.central, g.central.failures


def test_c12_gk_increment():
    failures = []
    for name in AS_REGULAR:
        cert = as_cert(name)
        for twist in BUILTIN_TWISTS:
            g = gamma_extension(corpus.builtin(name), cert, builtin_twist(twist, cert.stability))
            gk = gk_dimension(g.presentation)
            if gk.d is None or gk.d != cert.gk.d + 1:
                failures.append(f"{name} {twist}: {cert.gk.d} -> {gk.d}")
    assert_none(failures)


@pytest.mark.parametrize("name, expected", [("polynomial-1", 2), ("polynomial-2", 3)])
def test_c13_calabi_yau_adjudication(name, expected, record_property):
    p = corpus.builtin(name)
    cert = as_cert(name)
    table = find_special_twists(p, cert)
    rows = table.graded_symmetric_rows()
    assert len(rows) == 1
    g = gamma_extension(p, cert, rows[0].sigma)
    dual = g.lambda_extension.presentation
    assert dual.relation_span_equals(corpus.exterior(expected), {"α@0": f"x{expected}"})
    selected = rows[0].sigma == formula_twist(cert)
    record_property(name, f"graded-symmetric twist {rows[0].label}, "
                          f"formula nu^-1 eps^l selects it: {'yes' if selected else 'no'}")


@pytest.mark.parametrize("args", [["exterior-2", "--records"], ["cyclic-3-j2", "--records"],
                                  ["polynomial-1"]])
def test_c14_determinism(args):
    runs = [subprocess.run([sys.executable, "-m", "quiverext.cli", "verify", *args],
                           capture_output=True) for _ in range(2)]
    assert runs[0].stdout and runs[0].stdout == runs[1].stdout
    assert runs[0].returncode == runs[1].returncode


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
