import itertools

import pytest

from quiverext import corpus
from quiverext.engine import build_model
from quiverext.extension import (ExtensionPresentation, builtin_twist, check_graded_symmetric,
                                 extension_oracle, make_epsilon, make_epsilon_prime,
                                 make_sigma_zero, twisted_extension_presentation,
                                 verify_extension_presentation)
from quiverext.field import Field
from quiverext.presentation import Automorphism, Combo, Presentation, parse_combo
from quiverext.stability import check_stable


def setup(p):
    m = build_model(p)
    return m, check_stable(m)


def test_sigma_zero_on_exterior_one_gives_exterior_two():
    m, cert = setup(corpus.exterior(1))
    ep = twisted_extension_presentation(m, cert, make_sigma_zero(cert))
    assert ep.presentation.relation_span_equals(corpus.exterior(2), {"α@0": "x2"})


def test_untwisted_cyclic_extension():
    m, cert = setup(corpus.cyclic_radical_square_zero(3))
    ep = twisted_extension_presentation(m, cert)
    new = {(a.source, a.target) for a in ep.presentation.quiver.arrows if a.name.startswith("α")}
    assert new == {("0", "2"), ("1", "0"), ("2", "1")}
    em = build_model(ep.presentation)
    assert em.dim() == 12 and em.top == 2


def test_vertex_moving_twist_turns_returning_arrows_into_loops():
    m, cert = setup(corpus.cyclic_radical_square_zero(3))
    ep = twisted_extension_presentation(m, cert, make_sigma_zero(cert))
    new = {(a.source, a.target) for a in ep.presentation.quiver.arrows if a.name.startswith("α")}
    assert new == {("0", "0"), ("1", "1"), ("2", "2")}
    q = ep.presentation.quiver
    assert ep.presentation.relation_span_equals(Presentation(q, [
        *m.presentation.relations,
        *(parse_combo(f"α@{i}*α@{i}", q) for i in range(3)),
        *(parse_combo(f"a{i}*α@{i} + α@{(i + 1) % 3}*a{i}", q) for i in range(3))]))


def test_oracle_is_associative_and_dual_part_squares_to_zero():
    m, cert = setup(corpus.exterior(2))
    oracle = extension_oracle(m, cert, make_sigma_zero(cert))
    one = m.field.one
    for e, f, g in itertools.product(oracle.basis, repeat=3):
        left = oracle.mul(oracle.mul({e: one}, {f: one}), {g: one})
        right = oracle.mul({e: one}, oracle.mul({f: one}, {g: one}))
        assert left == right
    duals = [e for e in oracle.basis if e[0] == "D"]
    assert all(not oracle.mul_basis(e, f) for e in duals for f in duals)


def test_oracle_associative_with_vertex_moving_twist():
    m, cert = setup(corpus.cyclic_radical_square_zero(3))
    q = m.quiver
    rot = Automorphism(q, {"0": "1", "1": "2", "2": "0"},
                       {f"a{i}": Combo.of(q.path([f"a{(i + 1) % 3}"])) for i in range(3)})
    oracle = extension_oracle(m, cert, rot)
    one = m.field.one
    for e, f, g in itertools.product(oracle.basis, repeat=3):
        assert (oracle.mul(oracle.mul({e: one}, {f: one}), {g: one})
                == oracle.mul({e: one}, oracle.mul({f: one}, {g: one})))
    ep = twisted_extension_presentation(m, cert, rot)
    assert verify_extension_presentation(ep, oracle).passed


@pytest.mark.parametrize("name", ["exterior-2", "exterior-3", "cyclic-2-j2", "cyclic-4-j2"])
@pytest.mark.parametrize("twist", ["id", "epsilon", "epsilon-prime", "sigma0"])
def test_extension_verifies_against_oracle(name, twist):
    m, cert = setup(corpus.builtin(name))
    sigma = builtin_twist(twist, cert)
    ep = twisted_extension_presentation(m, cert, sigma)
    rep = verify_extension_presentation(ep, extension_oracle(m, cert, sigma))
    assert rep.passed, rep.text()


def test_corrupted_relation_is_caught():
    m, cert = setup(corpus.exterior(2))
    sigma = make_sigma_zero(cert)
    ep = twisted_extension_presentation(m, cert, sigma)
    q = ep.presentation.quiver
    rels = [r for r in ep.presentation.relations if "α@0" not in str(r) or "x1" not in str(r)]
    rels.append(parse_combo("x1*α@0 - α@0*x1", q))
    bad = ExtensionPresentation(Presentation(q, rels), cert, sigma, ep.returning)
    rep = verify_extension_presentation(bad, extension_oracle(m, cert, sigma))
    assert not rep.passed
    assert "relations_vanish" in {c.name for c in rep.failures()}


def test_epsilon_prime_parity():
    for k in (1, 2, 3):
        m, cert = setup(corpus.exterior(k))
        assert make_epsilon_prime(cert).is_identity() == (k % 2 == 1)


def test_characteristic_two_has_no_sign_twist():
    m, cert = setup(corpus.exterior(2, Field(2)))
    with pytest.raises(ValueError):
        make_epsilon(m.presentation)


def test_twist_must_preserve_relations():
    q = corpus.one_vertex(2)
    p = Presentation(q, [parse_combo(t, q) for t in ("x1*x1", "x2*x2", "x1*x2 - 2 x2*x1")],
                     Field(7))
    m, cert = setup(p)
    swap = Automorphism(q, {"0": "0"}, {"x1": Combo.of(q.path(["x2"])),
                                        "x2": Combo.of(q.path(["x1"]))}, Field(7))
    with pytest.raises(ValueError):
        twisted_extension_presentation(m, cert, swap)


def test_graded_symmetry_verdicts():
    ext = check_graded_symmetric(build_model(corpus.exterior(2)))
    assert ext.graded_symmetric and not ext.symmetric
    q = corpus.one_vertex(2)
    comm = Presentation(q, [parse_combo(t, q) for t in ("x1*x1", "x2*x2", "x1*x2 - x2*x1")])
    verdict = check_graded_symmetric(build_model(comm))
    assert verdict.symmetric and not verdict.graded_symmetric
    loop = check_graded_symmetric(build_model(corpus.truncated_loop(2)))
    assert loop.symmetric and loop.graded_symmetric
