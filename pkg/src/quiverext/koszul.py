"""Minimal graded resolutions of simples, Koszulity, quadratic duals."""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import AlgebraModel, build_model
from .linalg import RowSpace, axpy, left_kernel, nullspace
from .presentation import Arrow, Combo, Path, Presentation, PresentationError, Quiver
from .report import Report
from .series import IntMatrixPoly, hilbert_poly, identity, invert_alternating, matadd, matmul, zero

DEFAULT_STEPS = 8


class _Indexed:
    """Integer-indexed view of a finite model's basis with a product cache."""

    def __init__(self, m: AlgebraModel):
        if not m.finite:
            raise ValueError("resolutions need a finite-dimensional model")
        self.model = m
        self.paths = m.all_basis()
        self.index = {p: k for k, p in enumerate(self.paths)}
        self.N = len(self.paths)
        self._mul: dict = {}
        by = {}
        for k, p in enumerate(self.paths):
            by.setdefault((p.source, p.target, p.length), []).append(k)
        self._between = by

    def mul(self, b: int, x: int) -> dict:
        key = (b, x)
        hit = self._mul.get(key)
        if hit is None:
            prod = self.model.mul_paths(self.paths[b], self.paths[x])
            hit = {self.index[p]: c for p, c in prod.items()}
            self._mul[key] = hit
        return hit

    def between(self, source: str, target: str, length: int) -> list[int]:
        return self._between.get((source, target, length), [])


@dataclass
class ResolutionStep:
    generators: list  # (vertex, degree) per summand of the projective
    syzygy: list = field(default_factory=list)  # kernel generators, dicts {(g, path): coeff}


@dataclass
class ResolutionData:
    vertex: str
    steps: list

    def betti(self, vertices: list[str]) -> list[list[int]]:
        """Column of multiplicities per step: entry [r][j] = copies of L e_j in P^r."""
        idx = {v: k for k, v in enumerate(vertices)}
        out = []
        for s in self.steps:
            col = [0] * len(vertices)
            for v, _ in s.generators:
                col[idx[v]] += 1
            out.append(col)
        return out

    def degrees(self, r: int) -> list[int]:
        return sorted({d for _, d in self.steps[r].generators})


def minimal_resolution(m: AlgebraModel, vertex: str, R: int = DEFAULT_STEPS) -> ResolutionData:
    """Projectives P^0..P^R of a minimal graded resolution of the simple at vertex."""
    A = _Indexed(m)
    N = A.N
    q = m.quiver
    one = m.field.one
    # P^1 from the radical of L e_vertex
    arrows = [a for a in q.arrows if a.source == vertex]
    steps = [ResolutionStep([(vertex, 0)])]
    if R == 0:
        return ResolutionData(vertex, steps)
    images = [{A.index[Path((a.name,), a.source, a.target)]: one} for a in arrows]
    gens = [(a.target, 1) for a in arrows]
    steps[0].syzygy = [{(0, Path((a.name,), a.source, a.target)): one} for a in arrows]
    for r in range(1, R + 1):
        steps.append(ResolutionStep(list(gens)))
        if r == R:
            break
        kernel = _kernel_generators(A, gens, images)
        steps[r].syzygy = [{(g // N, A.paths[g % N]): c for g, c in k.items()}
                           for _, _, k in kernel]
        gens = [(v, d) for v, d, _ in kernel]
        images = [k for _, _, k in kernel]
    return ResolutionData(vertex, steps)


def _kernel_generators(A: _Indexed, gens, images):
    """Minimal homogeneous generators of ker(P -> P_prev), lowest degree first.

    ``gens`` lists (vertex, degree) of P's summands and ``images`` the image
    of each summand generator as a dict over P_prev coordinates g*N + x.
    Returns (vertex, degree, element) with elements over P coordinates.
    """
    N = A.N
    paths = A.paths
    lo = min(d for _, d in gens)
    hi = max(d for _, d in gens) + A.model.top
    vertices = A.model.quiver.vertices
    found: list = []
    for D in range(lo, hi + 1):
        for v in vertices:
            coords = []
            for g, (gv, gd) in enumerate(gens):
                if D - gd < 0:
                    continue
                coords.extend(g * N + x for x in A.between(gv, v, D - gd))
            if not coords:
                continue
            rows = []
            for c in coords:
                g, x = divmod(c, N)
                img: dict = {}
                for hc, coef in images[g].items():
                    h, y = divmod(hc, N)
                    prod = A.mul(x, y)
                    if prod:
                        axpy(img, coef, {h * N + z: w for z, w in prod.items()})
                rows.append(img)
            image_rank = RowSpace()
            for row in rows:
                image_rank.add(row)
            kdim = len(coords) - image_rank.rank
            if kdim == 0:
                continue
            sub = RowSpace()
            for kv, kd, elt in found:
                for b in A.between(kv, v, D - kd):
                    vec: dict = {}
                    for gc, coef in elt.items():
                        g, x = divmod(gc, N)
                        prod = A.mul(b, x)
                        if prod:
                            axpy(vec, coef, {g * N + z: w for z, w in prod.items()})
                    if vec:
                        sub.add(vec)
            if sub.rank == kdim:
                continue
            for rel in left_kernel(rows):
                elt = {coords[k]: c for k, c in rel.items()}
                if sub.add(elt) is not None:
                    if any(paths[gc % N].length == 0 for gc in elt):
                        raise AssertionError("syzygy generator outside the radical")
                    found.append((v, D, elt))
            assert sub.rank == kdim
    return found


def betti_matrices(m: AlgebraModel, R: int = DEFAULT_STEPS) -> list[list[list[int]]]:
    """B_r with (j, i) entry = multiplicity of L e_j in P^r of the simple at i."""
    verts = m.quiver.vertices
    n = len(verts)
    mats = [zero(n) for _ in range(R + 1)]
    res = {}
    for i, v in enumerate(verts):
        res[v] = minimal_resolution(m, v, R)
        for r, col in enumerate(res[v].betti(verts)):
            for j, c in enumerate(col):
                mats[r][j][i] = c
    return mats


@dataclass
class KoszulVerdict:
    koszul: bool
    steps: int
    reason: str = ""
    witness: dict = field(default_factory=dict)
    resolutions: dict = field(default_factory=dict)

    def __bool__(self):
        return self.koszul

    def summary(self) -> str:
        if self.koszul:
            return f"Koszul to degree {self.steps}"
        return f"not Koszul: {self.reason}"


def koszulity_check(m: AlgebraModel, R: int = DEFAULT_STEPS) -> KoszulVerdict:
    if not m.presentation.is_quadratic():
        return KoszulVerdict(False, 0, "relations are not quadratic",
                             {"degree": m.presentation.max_relation_degree})
    resolutions = {}
    for v in m.quiver.vertices:
        res = minimal_resolution(m, v, R)
        resolutions[v] = res
        for r, step in enumerate(res.steps):
            bad = [d for _, d in step.generators if d != r]
            if bad:
                return KoszulVerdict(False, R, f"simple {v}: step {r} has generators in degree {bad[0]}",
                                     {"vertex": v, "step": r, "degree": bad[0]}, resolutions)
    return KoszulVerdict(True, R, resolutions=resolutions)


# ----------------------------------------------------------------- duality

def quadratic_dual(p: Presentation) -> Presentation:
    """Same quiver; relations span the complement of p's relations in each
    (source, target) block of length-2 paths, paths taken as orthonormal."""
    if not p.is_quadratic():
        raise PresentationError("quadratic dual needs quadratic relations")
    q = p.quiver
    blocks: dict = {}
    for path in q.paths_of_length(2):
        blocks.setdefault((path.source, path.target), []).append(path)
    rels_by_block: dict = {}
    for r in p.relations:
        rels_by_block.setdefault((r.source, r.target), []).append(dict(r.terms))
    dual = []
    for key in sorted(blocks, key=lambda st: (q.vertex_index[st[0]], q.vertex_index[st[1]])):
        cols = blocks[key]
        for vec in nullspace(rels_by_block.get(key, []), cols, key=q.path_key):
            dual.append(Combo({c: p.field(x) for c, x in vec.items()}).normalized(q))
    return Presentation(q, dual, p.field)


def opposite(p: Presentation) -> Presentation:
    q = p.quiver
    qo = Quiver(q.vertices, [Arrow(a.name, a.target, a.source) for a in q.arrows])
    rels = [Combo({Path(tuple(reversed(w.arrows)), w.target, w.source): c
                   for w, c in r.terms.items()}) for r in p.relations]
    return Presentation(qo, rels, p.field)


def yoneda_presentation(p: Presentation) -> Presentation:
    """Opposite of the quadratic dual; arrows keep their names."""
    return opposite(quadratic_dual(p))


# ------------------------------------------------------------ cross-checks

def verify_betti_equals_series(m: AlgebraModel, R: int = DEFAULT_STEPS) -> Report:
    rep = Report("betti-series")
    series = invert_alternating(hilbert_poly(m), R, allow_negative=True)
    betti = betti_matrices(m, R)
    bad = [r for r in range(R + 1) if betti[r] != series[r]]
    rep.add("betti_equals_series", not bad, f"r <= {R}",
            [f"r={r}: betti {betti[r]} vs series {series[r]}" for r in bad])
    return rep


def truncated_hilbert(p: Presentation, R: int) -> IntMatrixPoly:
    """H(p, t) through degree R (exact polynomial when p is finite)."""
    m = build_model(p, cap=max(R, 2))
    dims = m.degree_dims()[: R + 1]
    return IntMatrixPoly(dims)


def verify_koszul_duality_series(p: Presentation, R: int = 12) -> Report:
    """H(p, -t) H(p^!, t) = E through degree R."""
    rep = Report("koszul-duality-series")
    n = p.quiver.n
    h = truncated_hilbert(p, R).at_minus_t()
    hd = truncated_hilbert(quadratic_dual(p), R)
    bad = []
    for r in range(R + 1):
        acc = zero(n)
        for k in range(r + 1):
            acc = matadd(acc, matmul(h.coefficient(k), hd.coefficient(r - k)))
        if acc != (identity(n) if r == 0 else zero(n)):
            bad.append(f"degree {r}: {acc}")
    rep.add("duality_series", not bad, f"through degree {R}", bad)
    return rep


def verify_yoneda_transport(p: Presentation, R: int = 12) -> Report:
    """Dimensions of the Yoneda presentation against the inverse series of p.

    The (i, j) entry of A_r counts paths j -> i in p^!, i.e. paths i -> j in
    its opposite, hence the transpose.
    """
    rep = Report("yoneda-transport")
    m = build_model(p)
    series = invert_alternating(hilbert_poly(m), R, allow_negative=True)
    hy = truncated_hilbert(yoneda_presentation(p), R)
    bad = []
    for r in range(R + 1):
        c = hy.coefficient(r)
        transposed = [list(col) for col in zip(*c)]
        if transposed != series[r]:
            bad.append(f"degree {r}")
    rep.add("yoneda_transport", not bad, f"through degree {R}", bad)
    return rep
