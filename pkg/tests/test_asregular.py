import pytest

from quiverext import corpus
from quiverext.asregular import (ASRegularityViolation, as_regularity_certificate,
                                 central_extension, check_central, cy_extension,
                                 find_special_twists, gamma_extension, gk_dimension)
from quiverext.extension import builtin_twist
from quiverext.presentation import parse_combo


def cert_of(name):
    p = corpus.builtin(name)
    return p, as_regularity_certificate(p)


@pytest.mark.parametrize("name, l, gk", [("polynomial-1", 1, 1), ("polynomial-2", 2, 2),
                                         ("cyclic-3", 1, 1)])
def test_certificates(name, l, gk):
    _, cert = cert_of(name)
    assert cert.l == l and cert.gk.d == gk


def test_wrong_side_of_duality_is_a_violation():
    v = as_regularity_certificate(corpus.exterior(2))
    assert isinstance(v, ASRegularityViolation) and not v


def test_central_extension_of_k_x_is_the_plane():
    p, cert = cert_of("polynomial-1")
    g = central_extension(p, cert)
    assert g.central and g.routes_agree
    q = g.presentation.quiver
    assert g.presentation.relation_span_equals(corpus.polynomial(2), {"α@0": "x2"})
    assert len(q.arrows) == 2


def test_skew_plane_is_not_central():
    p, cert = cert_of("polynomial-1")
    g = gamma_extension(p, cert, builtin_twist("epsilon", cert.stability))
    q = g.presentation.quiver
    skew = [parse_combo("x1*α@0 + α@0*x1", q)]
    assert g.presentation.relation_span_equals(type(g.presentation)(q, skew))
    verdict = check_central(g)
    assert not verdict and verdict.failures


@pytest.mark.parametrize("m", [1, 2, 3])
def test_polynomial_chain(m):
    p, cert = cert_of(f"polynomial-{m}")
    g = central_extension(p, cert)
    assert g.presentation.relation_span_equals(corpus.polynomial(m + 1), {"α@0": f"x{m + 1}"})


def test_cyclic_returning_arrows_and_sign():
    p, cert = cert_of("cyclic-3")
    g = gamma_extension(p, cert)
    assert g.routes_agree
    assert len(g.presentation.relations) == len(p.relations) + 3
    assert check_central(g, 5)


@pytest.mark.parametrize("name", ["polynomial-2", "cyclic-3"])
@pytest.mark.parametrize("twist", ["id", "epsilon", "epsilon-prime", "sigma0"])
def test_routes_agree_and_dimensions_increase(name, twist):
    p, cert = cert_of(name)
    g = gamma_extension(p, cert, builtin_twist(twist, cert.stability))
    assert g.routes_agree
    upper = as_regularity_certificate(g.presentation)
    assert upper.l == cert.l + 1
    assert gk_dimension(g.presentation).d == cert.gk.d + 1


def test_scan_tables():
    p, cert = cert_of("polynomial-1")
    table = find_special_twists(p, cert)
    assert len(table.rows) == 2
    assert len(table.graded_symmetric_rows()) == 1 and len(table.central_rows()) == 1
    p2, cert2 = cert_of("polynomial-2")
    assert [r.label for r in find_special_twists(p2, cert2).rows] == ["nu^0 eps^0", "nu^0 eps^1"]


def test_cy_verdict_withheld_for_several_vertices():
    p, cert = cert_of("cyclic-3")
    g = cy_extension(p, cert)
    assert g.symmetry is None and g.scan is None and g.routes_agree


def test_gk_dimension_examples():
    assert gk_dimension(corpus.polynomial(2)).d == 2
    assert gk_dimension(corpus.cyclic_path_algebra(3)).d == 1
    assert gk_dimension(corpus.polynomial(2)).method == "exact-quasipolynomial"
