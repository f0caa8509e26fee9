import pytest

from quiverext import corpus
from quiverext.engine import DegreeOverflow, build_model
from quiverext.linalg import bareiss_rank
from quiverext.presentation import Automorphism, Combo, Path, Presentation, parse_combo


def brute_force_dim(p: Presentation, t: int) -> int:
    """#paths of length t minus the rank of all u*r*v of length t."""
    q = p.quiver
    paths = q.paths_of_length(t)
    col = {w: k for k, w in enumerate(paths)}
    rows = []
    for r in p.relations:
        d = r.degree
        for lu in range(t - d + 1):
            for u in q.paths_of_length(lu) if lu else [None]:
                for v in q.paths_of_length(t - d - lu) if t - d - lu else [None]:
                    row = [0] * len(paths)
                    for w, c in r.terms.items():
                        if u is not None and u.source != w.target:
                            break
                        if v is not None and w.source != v.target:
                            break
                        arrows = (u.arrows if u else ()) + w.arrows + (v.arrows if v else ())
                        src = v.source if v else w.source
                        tgt = u.target if u else w.target
                        row[col[Path(arrows, src, tgt)]] += int(c)
                    else:
                        if any(row):
                            rows.append(row)
    if not rows:
        return len(paths)
    return len(paths) - bareiss_rank(rows)


CASES = ["exterior-2", "exterior-3", "polynomial-2", "polynomial-3", "cyclic-3-j2",
         "cyclic-2", "a2"]


@pytest.mark.parametrize("name", CASES)
def test_dims_match_brute_force(name):
    p = corpus.builtin(name)
    m = build_model(p, cap=5)
    for t in range(1, 5):
        assert m.dim(t) == brute_force_dim(p, t), t


def test_truncated_loop_and_skew_relations():
    q = corpus.one_vertex(2)
    p = Presentation(q, [parse_combo("x1*x2 - 2 x2*x1", q), parse_combo("x1*x1*x1", q)])
    m = build_model(p, cap=5)
    for t in range(1, 5):
        assert m.dim(t) == brute_force_dim(p, t)


def test_known_dimensions():
    assert [build_model(corpus.exterior(4)).dim(t) for t in range(5)] == [1, 4, 6, 4, 1]
    m = build_model(corpus.cyclic_radical_square_zero(3))
    assert m.finite and m.top == 1 and m.dim() == 6
    inf = build_model(corpus.polynomial(3), cap=6)
    assert not inf.finite and [inf.dim(t) for t in range(5)] == [1, 3, 6, 10, 15]


def test_normal_form_is_congruent_and_reduced():
    p = corpus.exterior(3)
    m = build_model(p)
    q = p.quiver
    nf = m.normal_form(Combo.of(q.path(["x2", "x1"])))
    assert nf == Combo.of(q.path(["x1", "x2"]), -1) or nf == Combo.of(q.path(["x2", "x1"]))
    assert set(nf.terms) <= set(m.basis[2])
    assert not m.normal_form(Combo.of(q.path(["x3", "x1", "x3"])))


def test_product_is_associative():
    m = build_model(corpus.exterior(3))
    q = m.quiver
    xs = [Combo.of(q.path([f"x{i}"])) for i in (1, 2, 3)]
    for a in xs:
        for b in xs:
            for c in xs:
                assert m.multiply(m.multiply(a, b), c) == m.multiply(a, m.multiply(b, c))


def test_degree_dims_orientation():
    dims = build_model(corpus.cyclic_radical_square_zero(3)).degree_dims()
    # arrow a0 : 0 -> 1 counts at (target, source) = (1, 0)
    assert dims[1][1][0] == 1 and dims[1][0][1] == 0


def test_overflow_above_cap():
    m = build_model(corpus.polynomial(2), cap=3)
    with pytest.raises(DegreeOverflow):
        m.nf_path(m.quiver.path(["x1"] * 4))


def test_nakayama_automorphism_preserves_relations():
    m = build_model(corpus.exterior(2))
    assert m.is_automorphism(Automorphism.scalar(m.quiver, -1))
