"""The identity suite run by ``quiverext verify`` on one presentation."""

from __future__ import annotations

from .asregular import (ASRegularityCertificate, as_regularity_certificate, central_extension,
                        find_special_twists, gamma_extension, gk_dimension)
from .engine import DEFAULT_CAP, build_model
from .extension import (BUILTIN_TWISTS, builtin_twist, extension_oracle,
                        twisted_extension_presentation, verify_extension_presentation)
from .koszul import (DEFAULT_STEPS, koszulity_check, verify_betti_equals_series,
                     verify_koszul_duality_series, verify_yoneda_transport)
from .presentation import Presentation
from .report import Report
from .series import (algebra_complexity, hilbert_poly, invert_alternating, partial_sum_report,
                     verify_extension_hilbert)
from .stability import check_stable, dimension_duality_holds, verify_eta_compatibility

DUALITY_DEGREE = 12
PARTIAL_SUM_DEGREE = 16


def available_twists(p: Presentation) -> tuple[str, ...]:
    return ("id",) if p.field.characteristic == 2 else BUILTIN_TWISTS


def returning_arrow_law(m, cert, ext_presentation: Presentation) -> bool:
    """Extension quiver is Q plus one arrow i -> tau(i) per vertex."""
    q = m.quiver
    extra = [a for a in ext_presentation.quiver.arrows if a.name not in q.arrow]
    want = sorted((i, cert.tau[i]) for i in q.vertices)
    got = sorted((a.source, a.target) for a in extra)
    kept = all(ext_presentation.quiver.arrow.get(a.name) == a for a in q.arrows)
    return kept and got == want


def verify_selfinjective(p: Presentation, steps: int = DEFAULT_STEPS,
                         cap: int = DEFAULT_CAP) -> Report:
    rep = Report("verify")
    m = build_model(p, cap=cap)
    cert = check_stable(m)
    rep.add("stable", bool(cert), "" if cert else cert.message)
    if not cert:
        return rep
    rep.note("loewy_length", cert.l + 1)
    rep.extend(verify_eta_compatibility(m, cert))
    rep.add("dimension_duality", dimension_duality_holds(m, cert))
    rep.add("nu_is_automorphism", m.is_automorphism(cert.nu))
    koszul = bool(koszulity_check(m, steps)) if p.is_quadratic() else False
    rep.note("koszul", f"to degree {steps}" if koszul else "no")
    base_hp = hilbert_poly(m)
    base_series = invert_alternating(base_hp, PARTIAL_SUM_DEGREE, allow_negative=True)
    base_c = algebra_complexity(m) if koszul else None
    if koszul:
        rep.extend(verify_betti_equals_series(m, steps))
        rep.note("complexity", base_c.d)
    if p.is_quadratic():
        rep.extend(verify_koszul_duality_series(p, DUALITY_DEGREE))
        if koszul:
            rep.extend(verify_yoneda_transport(p, DUALITY_DEGREE))
    for name in available_twists(p):
        sigma = builtin_twist(name, cert)
        ep = twisted_extension_presentation(m, cert, sigma)
        pre = f"{name}."
        rep.add(pre + "returning_arrow_law", returning_arrow_law(m, cert, ep.presentation))
        rep.extend(verify_extension_presentation(ep, extension_oracle(m, cert, sigma)), pre)
        em = build_model(ep.presentation, cap=cert.l + 3)
        if not em.finite:
            continue
        rep.extend(verify_extension_hilbert(m, cert, sigma, em), pre)
        ext_series = invert_alternating(hilbert_poly(em), PARTIAL_SUM_DEGREE, allow_negative=True)
        rep.extend(partial_sum_report(base_series, ext_series), pre)
        if koszul:
            verdict = koszulity_check(em, steps)
            rep.add(pre + "koszul", bool(verdict), verdict.summary())
            if verdict:
                rep.extend(verify_betti_equals_series(em, steps), pre)
            ext_c = algebra_complexity(em)
            rep.add(pre + "complexity_increment",
                    ext_c.d is not None and base_c.d is not None and ext_c.d == base_c.d + 1,
                    f"{base_c.d} -> {ext_c.d}")
    return rep


def verify_as_regular(p: Presentation, steps: int = DEFAULT_STEPS,
                      cap: int = DEFAULT_CAP) -> Report:
    rep = Report("verify")
    cert = as_regularity_certificate(p, steps, cap)
    rep.add("as_regular", bool(cert), "" if cert else cert.reason)
    if not cert:
        return rep
    assert isinstance(cert, ASRegularityCertificate)
    rep.note("global_dimension", cert.l)
    rep.note("gk_dimension", cert.gk.d)
    rep.extend(verify_koszul_duality_series(p, DUALITY_DEGREE))
    for name in available_twists(cert.dual):
        sigma = builtin_twist(name, cert.stability)
        g = gamma_extension(p, cert, sigma)
        pre = f"{name}."
        rep.add(pre + "routes_agree", g.routes_agree)
        upper = as_regularity_certificate(g.presentation, steps, cap)
        rep.add(pre + "global_dimension_increment", bool(upper) and upper.l == cert.l + 1)
        gk = gk_dimension(g.presentation)
        rep.add(pre + "gk_increment", gk.d is not None and cert.gk.d is not None
                and gk.d == cert.gk.d + 1, f"{cert.gk.d} -> {gk.d}")
    central = central_extension(p, cert)
    rep.add("central_extension", bool(central.central),
            f"commutes through degree {central.central.depth - 1}", central.central.failures)
    if p.quiver.n == 1 and p.field.characteristic != 2:
        scan = find_special_twists(p, cert)
        sym = scan.graded_symmetric_rows()
        rep.add("unique_graded_symmetric_twist", len(sym) == 1,
                ", ".join(r.label for r in sym) or "none")
        rep.note("formula_twist_graded_symmetric",
                 "yes" if any(r.formula for r in sym) else "no")
    return rep


def verify(p: Presentation, steps: int = DEFAULT_STEPS, cap: int = DEFAULT_CAP) -> Report:
    """Self-injective suite for finite inputs, AS-regular suite otherwise."""
    if build_model(p, cap=cap).finite:
        return verify_selfinjective(p, steps, cap)
    return verify_as_regular(p, steps, cap)
