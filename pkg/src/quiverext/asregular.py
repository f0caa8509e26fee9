"""AS-regular extensions G[sigma] of a Koszul AS-regular presentation.

The finite-dimensional side is the Yoneda presentation L of G.  A twist
sigma is an automorphism of L; G[sigma] is the Koszul dual of the twisted
trivial extension of L by s = sigma o sigma_0 with sigma_0 = epsilon o nu.

With N = nu o s^-1 on the arrows of L and N^T its adjoint for the pairing
making arrows orthonormal, the new relations of G[sigma] are

    alpha@b * g + N^T(g) * alpha@a          for g : a -> b,

where alpha@u starts at u.  The construction is cross-checked against the
quadratic dual of the twisted extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import DEFAULT_CAP, AlgebraModel, build_model
from .extension import (ExtensionPresentation, SymmetryVerdict, check_graded_symmetric,
                        make_epsilon, make_sigma_zero, returning_name,
                        twisted_extension_presentation)
from .koszul import DEFAULT_STEPS, KoszulVerdict, koszulity_check, yoneda_presentation
from .presentation import Arrow, Automorphism, Combo, Path, Presentation, PresentationError, Quiver
from .series import ComplexityReport, TruncationTooShort, complexity_of, hilbert_poly, invert_alternating
from .stability import StabilityCertificate, check_stable, commutes_with_tau

CENTRAL_DEPTH = 7
GK_EMPIRICAL_DEPTH = 24


@dataclass
class ASRegularityViolation:
    reason: str
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return False


@dataclass
class ASRegularityCertificate:
    presentation: Presentation
    dual: Presentation
    model: AlgebraModel
    stability: StabilityCertificate
    koszul: KoszulVerdict
    l: int
    gk: ComplexityReport

    def __bool__(self):
        return True

    def records(self) -> list[tuple[str, str]]:
        return [("global_dimension", str(self.l)),
                ("koszul_depth", str(self.koszul.steps)),
                ("gk_dimension", "infinite" if self.gk.d is None else str(self.gk.d))]


def as_regularity_certificate(p: Presentation, R: int = DEFAULT_STEPS, cap: int = DEFAULT_CAP):
    if not p.is_quadratic():
        raise PresentationError("AS-regularity certificate needs quadratic relations")
    dual = yoneda_presentation(p)
    m = build_model(dual, cap=cap)
    if not m.finite:
        return ASRegularityViolation(f"Yoneda side is not finite dimensional within degree {cap}",
                                     {"cap": cap})
    if m.top < 1:
        return ASRegularityViolation("Yoneda side is semisimple")
    cert = check_stable(m)
    if not cert:
        return ASRegularityViolation(f"Yoneda side fails stability condition {cert.condition}: "
                                     f"{cert.message}", cert.witness)
    verdict = koszulity_check(m, R)
    if not verdict:
        return ASRegularityViolation(f"Yoneda side is {verdict.summary()}", verdict.witness)
    return ASRegularityCertificate(p, dual, m, cert, verdict, cert.l, gk_dimension(p))


# ------------------------------------------------------------- extensions

@dataclass
class GammaExtension:
    presentation: Presentation
    sigma: Automorphism
    lambda_twist: Automorphism
    returning: list
    lambda_extension: ExtensionPresentation
    dual_route: Presentation
    routes_agree: bool
    central: "CentralVerdict | None" = None
    symmetry: SymmetryVerdict | None = None
    scan: "ScanTable | None" = None


def _dual_route(ep: ExtensionPresentation) -> Presentation:
    """Koszul dual of the twisted extension, returning arrows renamed by source."""
    y = yoneda_presentation(ep.presentation)
    rename = {}
    for a in y.quiver.arrows:
        if a.name in ep.returning:
            rename[a.name] = returning_name(a.source)
    q = Quiver(y.quiver.vertices,
               [Arrow(rename.get(a.name, a.name), a.source, a.target) for a in y.quiver.arrows])
    rels = [Combo({Path(tuple(rename.get(x, x) for x in w.arrows), w.source, w.target): c
                   for w, c in r.terms.items()}) for r in y.relations]
    return Presentation(q, rels, y.field)


def gamma_extension(p: Presentation, cert: ASRegularityCertificate,
                    sigma: Automorphism | None = None) -> GammaExtension:
    """G[sigma] for an automorphism sigma of the Yoneda side."""
    lam = cert.model
    sc = cert.stability
    field_ = p.field
    if sigma is None:
        sigma = Automorphism.identity(lam.quiver, lam.field)
    if not commutes_with_tau(sc, sigma):
        raise PresentationError("twist does not commute with the Nakayama translation")
    s = sigma.compose(make_sigma_zero(sc))
    ep = twisted_extension_presentation(lam, sc, s)
    pinv = {w: v for v, w in s.vertex_map.items()}
    shift = {i: sc.tau[pinv[i]] for i in lam.quiver.vertices}  # L-side alpha@i : i -> shift[i]
    back = {w: v for v, w in shift.items()}
    q = p.quiver
    new = [Arrow(returning_name(u), u, back[u]) for u in q.vertices]
    qg = q.with_arrows(new)
    alpha = {a.source: Path((a.name,), a.source, a.target) for a in new}
    nt = sc.nu.compose(s.inverse()).transpose()
    rels = list(p.relations)
    for g in q.arrows:
        a, b = g.source, g.target
        lhs = Combo.of(alpha[b], field_.one) * Combo.of(Path((g.name,), a, b), field_.one)
        img = Combo({Path(w.arrows, w.target, w.source): c
                     for w, c in nt.arrow_map[g.name].terms.items()})
        rels.append(lhs + img * Combo.of(alpha[a], field_.one))
    direct = Presentation(qg, rels, field_)
    dual = _dual_route(ep)
    agree = direct.relation_span_equals(dual)
    return GammaExtension(direct, sigma, s, [a.name for a in new], ep, dual, agree)


@dataclass
class CentralVerdict:
    central: bool
    depth: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.central


def check_central(g: GammaExtension, depth: int = CENTRAL_DEPTH) -> CentralVerdict:
    """z = sum of returning arrows commutes with every basis path of degree < depth."""
    p = g.presentation
    m = build_model(p, cap=depth)
    one = p.field.one
    z = Combo({p.quiver.path([name]): one for name in g.returning})
    failures = []
    for t in range(1, min(depth, m.max_degree + 1)):
        for b in m.basis[t]:
            cb = Combo.of(b, one)
            comm = m.normal_form(z * cb - cb * z)
            if comm.terms:
                failures.append(f"[z, {b}] = {comm.format(p.quiver)}")
    return CentralVerdict(not failures, depth, failures)


def central_extension(p: Presentation, cert: ASRegularityCertificate,
                      depth: int = CENTRAL_DEPTH) -> GammaExtension:
    g = gamma_extension(p, cert)
    g.central = check_central(g, depth)
    return g


def formula_twist(cert: ASRegularityCertificate) -> Automorphism:
    """nu^-1 epsilon^l on the Yoneda side."""
    sc = cert.stability
    eps = make_epsilon(cert.dual)
    return sc.nu.inverse().compose(eps.power(sc.l))


def yoneda_symmetry(g: GammaExtension) -> SymmetryVerdict:
    return check_graded_symmetric(build_model(g.lambda_extension.presentation))


def cy_extension(p: Presentation, cert: ASRegularityCertificate) -> GammaExtension:
    """G[nu^-1 eps^l] with the graded-symmetry verdict (connected input only)
    and the builtin twist scan."""
    g = gamma_extension(p, cert, formula_twist(cert))
    if p.quiver.n == 1:
        g.symmetry = yoneda_symmetry(g)
        g.scan = find_special_twists(p, cert)
    return g


# -------------------------------------------------------------- twist scan

@dataclass
class ScanRow:
    label: str
    sigma: Automorphism
    central: bool
    graded_symmetric: bool
    symmetric: bool
    gk: ComplexityReport
    routes_agree: bool
    formula: bool


@dataclass
class ScanTable:
    rows: list

    def graded_symmetric_rows(self) -> list[ScanRow]:
        return [r for r in self.rows if r.graded_symmetric]

    def central_rows(self) -> list[ScanRow]:
        return [r for r in self.rows if r.central]

    def text(self) -> str:
        head = ("twist", "central", "graded_symmetric", "symmetric", "gk", "routes", "formula")
        body = [(r.label, _yn(r.central), _yn(r.graded_symmetric), _yn(r.symmetric),
                 "inf" if r.gk.d is None else str(r.gk.d), _yn(r.routes_agree), _yn(r.formula))
                for r in self.rows]
        widths = [max(len(x[k]) for x in [head] + body) for k in range(len(head))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
                 for row in [head] + body]
        return "\n".join(lines) + "\n"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _order_bounded_powers(a: Automorphism, bound: int = 4) -> list[int]:
    out, seen = [], []
    for k in range(bound):
        pk = a.power(k)
        if pk in seen:
            break
        seen.append(pk)
        out.append(k)
    return out


def find_special_twists(p: Presentation, cert: ASRegularityCertificate,
                        extra: list[tuple[str, Automorphism]] = (),
                        depth: int = CENTRAL_DEPTH) -> ScanTable:
    sc = cert.stability
    nu = sc.nu
    eps = make_epsilon(cert.dual)
    target = formula_twist(cert)
    candidates: list[tuple[str, Automorphism]] = []
    for a in _order_bounded_powers(nu):
        for b in _order_bounded_powers(eps):
            candidates.append((f"nu^{a} eps^{b}", nu.power(a).compose(eps.power(b))))
    candidates.extend(extra)
    rows, seen = [], []
    for label, sigma in candidates:
        if sigma in seen:
            continue
        seen.append(sigma)
        g = gamma_extension(p, cert, sigma)
        verdict = yoneda_symmetry(g)
        rows.append(ScanRow(label, sigma, bool(check_central(g, depth)),
                            verdict.graded_symmetric, verdict.symmetric,
                            gk_dimension(g.presentation), g.routes_agree, sigma == target))
    return ScanTable(rows)


# ---------------------------------------------------------- GK dimension

def gk_dimension(p: Presentation, R: int = 64) -> ComplexityReport:
    """Growth of the total dimensions of p's degree pieces.

    Exact when the Yoneda side is finite dimensional and its inverse series
    reproduces p's dimensions; otherwise a slope fit over R terms.
    """
    dual_model = None
    if p.is_quadratic():
        dual_model = build_model(yoneda_presentation(p))
        if not dual_model.finite:
            dual_model = None
    if dual_model is not None:
        hp = hilbert_poly(dual_model)
        need = 8
        while True:
            norms = invert_alternating(hp, need, allow_negative=True).norms
            try:
                report = complexity_of(norms, hp)
                break
            except TruncationTooShort as exc:
                if exc.need > R:
                    raise
                need = exc.need
        dims = _total_dims(p, len(norms) - 1)
        if dims == norms:
            return report
        report = complexity_of(_total_dims(p, min(R, GK_EMPIRICAL_DEPTH)))
        report.notes.append("Yoneda side does not reproduce the dimensions")
        return report
    return complexity_of(_total_dims(p, min(R, GK_EMPIRICAL_DEPTH)))


def _total_dims(p: Presentation, R: int) -> list[int]:
    m = build_model(p, cap=max(R, 2))
    return [m.dim(t) for t in range(R + 1)]
