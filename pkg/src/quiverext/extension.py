"""Twisted trivial extensions L x| DL^sigma: presentation with returning
arrows, an independent multiplication oracle, and cross-verification.

Twist conventions.  For a graded automorphism sigma with vertex
permutation pi, the returning arrow keyed by vertex i is

    alpha@i : i -> tau(pi^-1(i)),

the dual of the maximal path ending at pi^-1(i).  Relations are the base
relations, alpha*alpha = 0 on every composable pair, and

    alpha@j * beta - nu(sigma^-1(beta)) * alpha@i      for beta : i -> j.

The oracle realises the dual part with actions (b.f)(y) = f(y b) and
(f.b)(y) = f(sigma^-1(b) y); these two descriptions agree (checked by
:func:`verify_extension_presentation`).  When sigma fixes every vertex the
returning arrows are i -> tau(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import AlgebraModel, build_model
from .linalg import axpy, left_kernel
from .presentation import Arrow, Automorphism, Combo, Path, Presentation, PresentationError
from .report import Report
from .stability import StabilityCertificate, commutes_with_tau


def returning_name(v: str) -> str:
    return f"α@{v}"


# ------------------------------------------------------------------ twists

def make_epsilon(p: Presentation) -> Automorphism:
    """The sign automorphism: every arrow negated."""
    p.field.require_signs()
    return Automorphism.scalar(p.quiver, -1, p.field)


def make_epsilon_prime(cert: StabilityCertificate) -> Automorphism:
    """epsilon^(l+1); the identity when l is odd."""
    p = cert.model.presentation
    p.field.require_signs()
    return Automorphism.scalar(p.quiver, (-1) ** (cert.l + 1), p.field)


def make_sigma_zero(cert: StabilityCertificate) -> Automorphism:
    """epsilon o nu."""
    return make_epsilon(cert.model.presentation).compose(cert.nu)


def builtin_twist(name: str, cert: StabilityCertificate) -> Automorphism:
    p = cert.model.presentation
    if name == "id":
        return Automorphism.identity(p.quiver, p.field)
    if name == "epsilon":
        return make_epsilon(p)
    if name == "epsilon-prime":
        return make_epsilon_prime(cert)
    if name == "sigma0":
        return make_sigma_zero(cert)
    if name == "nu":
        return cert.nu
    raise KeyError(f"unknown twist {name!r}")


BUILTIN_TWISTS = ("id", "epsilon", "epsilon-prime", "sigma0")


# ------------------------------------------------------------ presentation

@dataclass
class ExtensionPresentation:
    presentation: Presentation
    base: StabilityCertificate
    sigma: Automorphism
    # returning arrow name -> vertex k whose maximal path it dualises
    returning: dict = field(default_factory=dict)


def _check_twist(m: AlgebraModel, cert: StabilityCertificate, sigma: Automorphism) -> None:
    if sigma.quiver != m.quiver:
        raise PresentationError("twist is defined on a different quiver")
    if not commutes_with_tau(cert, sigma):
        raise PresentationError("twist does not commute with the Nakayama translation")
    if not m.is_automorphism(sigma):
        raise PresentationError("twist does not preserve the relations")


def twisted_extension_presentation(m: AlgebraModel, cert: StabilityCertificate,
                                   sigma: Automorphism | None = None) -> ExtensionPresentation:
    q = m.quiver
    field_ = m.field
    if sigma is None:
        sigma = Automorphism.identity(q, field_)
    _check_twist(m, cert, sigma)
    pinv = {w: v for v, w in sigma.vertex_map.items()}
    new = []
    returning = {}
    for i in q.vertices:
        name = returning_name(i)
        if name in q.arrow:
            raise PresentationError(f"arrow name {name} already used")
        new.append(Arrow(name, i, cert.tau[pinv[i]]))
        returning[name] = pinv[i]
    qt = q.with_arrows(new)
    alpha = {a.source: Path((a.name,), a.source, a.target) for a in new}
    rels = list(m.presentation.relations)
    for a in new:
        nxt = alpha[a.target]
        rels.append(Combo.of(Path(nxt.arrows + (a.name,), a.source, nxt.target), field_.one))
    sinv = sigma.inverse()
    for b in q.arrows:
        i, j = b.source, b.target
        beta = Combo.of(Path((b.name,), i, j), field_.one)
        lhs = Combo.of(alpha[j], field_.one) * beta
        image = cert.nu.apply(sinv.apply(beta))
        rhs = image * Combo.of(alpha[i], field_.one)
        rels.append(lhs - rhs)
    return ExtensionPresentation(Presentation(qt, rels, field_), cert, sigma, returning)


# ------------------------------------------------------------------ oracle

class ExtensionOracle:
    """Multiplication on L + DL^sigma in the basis (path, dual path).

    Elements are dicts keyed by ("L", path) or ("D", path); ("D", p) is the
    functional dual to basis path p, of degree l + 1 - |p|.
    """

    def __init__(self, m: AlgebraModel, cert: StabilityCertificate,
                 sigma: Automorphism | None = None):
        self.model = m
        self.cert = cert
        self.l = cert.l
        self.sigma = sigma or Automorphism.identity(m.quiver, m.field)
        self.sinv = self.sigma.inverse()
        self.basis = [("L", p) for p in m.all_basis()] + [("D", p) for p in m.all_basis()]
        self._cache: dict = {}

    def degree(self, e) -> int:
        kind, p = e
        return p.length if kind == "L" else self.l + 1 - p.length

    def endpoints(self, e):
        """(left idempotent, right idempotent) vertices of a basis element."""
        kind, p = e
        if kind == "L":
            return p.target, p.source
        return p.source, self.sigma.vertex(p.target)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _left_on_dual(self, a: Path, w: Path) -> dict:
        """a . w*  :  y* coefficient = [y a]_w."""
        m = self.model
        out = {}
        t = w.length - a.length
        if t < 0:
            return out
        for y in m.basis[t] if t < len(m.basis) else []:
            if y.source != a.target or y.target != w.target:
                continue
            c = m.mul_paths(y, a).get(w)
            if c:
                out[("D", y)] = c
        return out

    def _dual_on_right(self, w: Path, b: Path) -> dict:
        """w* . b  :  y* coefficient = [sigma^-1(b) y]_w."""
        m = self.model
        out = {}
        t = w.length - b.length
        if t < 0:
            return out
        img = self.sinv.apply_path(b)
        for y in m.basis[t] if t < len(m.basis) else []:
            coords: dict = {}
            for s, c in img.terms.items():
                prod = m.mul_paths(s, y)
                if prod:
                    axpy(coords, c, prod)
            c = coords.get(w)
            if c:
                out[("D", y)] = c
        return out

    def mul_basis(self, e, f) -> dict:
        key = (e, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        (ke, pe), (kf, pf) = e, f
        if ke == "L" and kf == "L":
            res = {("L", p): c for p, c in self.model.mul_paths(pe, pf).items()}
        elif ke == "L" and kf == "D":
            res = self._left_on_dual(pe, pf)
        elif ke == "D" and kf == "L":
            res = self._dual_on_right(pe, pf)
        else:
            res = {}
        self._cache[key] = res
        return res

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for e, a in x.items():
            for f, b in y.items():
                prod = self.mul_basis(e, f)
                if prod:
                    axpy(out, a * b, prod)
        return out

    def degree_dims(self) -> list[list[list[int]]]:
        idx = self.model.quiver.vertex_index
        n = self.model.quiver.n
        top = self.l + 1
        out = [[[0] * n for _ in range(n)] for _ in range(top + 1)]
        for e in self.basis:
            left, right = self.endpoints(e)
            out[self.degree(e)][idx[left]][idx[right]] += 1
        return out

    def element_for_arrow(self, ep: ExtensionPresentation, name: str) -> dict:
        one = self.model.field.one
        if name in ep.returning:
            return {("D", self.cert.p_max[ep.returning[name]]): one}
        a = self.model.quiver.arrow[name]
        return {("L", Path((name,), a.source, a.target)): one}

    def evaluate(self, ep: ExtensionPresentation, c: Combo) -> dict:
        out: dict = {}
        for p, coef in c.terms.items():
            val = None
            for name in p.arrows:
                img = self.element_for_arrow(ep, name)
                val = img if val is None else self.mul(val, img)
                if not val:
                    break
            if val:
                axpy(out, coef, val)
        return out


def extension_oracle(m: AlgebraModel, cert: StabilityCertificate,
                     sigma: Automorphism | None = None) -> ExtensionOracle:
    if sigma is not None:
        _check_twist(m, cert, sigma)
    return ExtensionOracle(m, cert, sigma)


def expected_quiver(m: AlgebraModel, cert: StabilityCertificate, sigma: Automorphism):
    pinv = {w: v for v, w in sigma.vertex_map.items()}
    return m.quiver.with_arrows(
        Arrow(returning_name(i), i, cert.tau[pinv[i]]) for i in m.quiver.vertices)


def verify_extension_presentation(ep: ExtensionPresentation, oracle: ExtensionOracle) -> Report:
    base = ep.base
    l = base.l
    rep = Report("extension")
    ext_model = build_model(ep.presentation, cap=l + 3)
    rep.add("finite", ext_model.finite, f"top={ext_model.top}")
    total = ext_model.dim()
    rep.add("dimension", total == 2 * base.model.dim() == oracle.dim,
            f"{total} vs 2*{base.model.dim()}")
    mine, theirs = ext_model.degree_dims(), oracle.degree_dims()
    rep.add("graded_dims_match_oracle", mine == theirs)
    failures = []
    for r in ep.presentation.relations:
        val = oracle.evaluate(ep, r)
        if val:
            failures.append(r.format(ep.presentation.quiver))
    rep.add("relations_vanish", not failures,
            f"{len(ep.presentation.relations)} relations", failures)
    rep.add("loewy_length", ext_model.finite and ext_model.top == l + 1,
            f"{(ext_model.top or 0) + 1} vs {l + 2}")
    rep.add("quiver", ep.presentation.quiver == expected_quiver(base.model, base, ep.sigma))
    if ext_model.finite and ext_model.top == l + 1:
        top_mine = mine[l + 1]
        rep.add("top_matches_oracle", top_mine == theirs[l + 1])
        if ep.sigma.fixes_vertices():
            n = len(top_mine)
            ident = [[int(r == c) for c in range(n)] for r in range(n)]
            rep.add("trivial_translation", top_mine == ident)
    return rep


# --------------------------------------------------------- graded symmetry

@dataclass
class SymmetryVerdict:
    graded_symmetric: bool
    symmetric: bool
    nondegenerate: bool
    table: list  # (x, y, (x,y), (y,x), sign required)

    def __bool__(self):
        return self.graded_symmetric

    def format(self) -> str:
        lines = [f"graded_symmetric = {str(self.graded_symmetric).lower()}",
                 f"symmetric = {str(self.symmetric).lower()}",
                 f"nondegenerate = {str(self.nondegenerate).lower()}"]
        for x, y, xy, yx, sgn in self.table:
            lines.append(f"pair ({x}, {y}) = {xy}; ({y}, {x}) = {yx}; sign {sgn:+d}")
        return "\n".join(lines) + "\n"


def socle_pairing(m: AlgebraModel, x: Path, y: Path):
    """Sum of the top-degree coordinates of x*y."""
    prod = m.mul_paths(x, y)
    return sum((c for p, c in prod.items() if p.length == m.top), m.field.zero)


def check_graded_symmetric(m: AlgebraModel) -> SymmetryVerdict:
    if not m.finite or m.top < 1:
        raise ValueError("needs a finite-dimensional non-semisimple model")
    top = m.top
    graded = plain = True
    nondeg = True
    table = []
    for s in range(top + 1):
        t = top - s
        xs, ys = m.basis[s], m.basis[t]
        rows = []
        for x in xs:
            row = {}
            for k, y in enumerate(ys):
                xy, yx = socle_pairing(m, x, y), socle_pairing(m, y, x)
                if xy:
                    row[k] = xy
                sgn = (-1) ** (s * t)
                if xy or yx:
                    table.append((str(x), str(y), xy, yx, sgn))
                if xy != sgn * yx:
                    graded = False
                if xy != yx:
                    plain = False
            rows.append(row)
        if len(xs) != len(ys) or left_kernel(rows):
            nondeg = False
    return SymmetryVerdict(graded and nondeg, plain and nondeg, nondeg, table)
