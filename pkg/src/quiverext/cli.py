"""Command-line front end.  Exit status: 0 all checks pass, 1 a check
failed, 2 bad input or usage."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FsPath

from . import corpus
from .asregular import (_yn, as_regularity_certificate, central_extension, cy_extension,
                        find_special_twists, gamma_extension)
from .engine import DEFAULT_CAP, CapExhausted, build_model
from .extension import (BUILTIN_TWISTS, builtin_twist, extension_oracle,
                        twisted_extension_presentation, verify_extension_presentation)
from .koszul import DEFAULT_STEPS, betti_matrices, koszulity_check, quadratic_dual, yoneda_presentation
from .presentation import Presentation, parse_automorphism, parse_presentation, serialize_presentation
from .report import Report, render_matrix, render_records
from .series import DEFAULT_TRUNCATION, algebra_complexity, hilbert_poly
from .stability import check_stable, dimension_duality_holds, format_cycles, verify_eta_compatibility
from .suite import verify


class UsageError(Exception):
    pass


def load_presentation(source: str) -> Presentation:
    """A file path, or a builtin name such as ``exterior-2``."""
    path = FsPath(source)
    if path.is_file():
        return parse_presentation(path.read_text(encoding="utf-8"))
    try:
        return corpus.builtin(source)
    except KeyError:
        raise UsageError(f"{source}: no such file or builtin presentation") from None


def resolve_twist(selector: str, cert, target: Presentation):
    if selector in BUILTIN_TWISTS:
        return builtin_twist(selector, cert)
    path = FsPath(selector)
    if not path.is_file():
        raise UsageError(f"twist {selector!r} is neither builtin nor a file")
    return parse_automorphism(path.read_text(encoding="utf-8"), target)


class Output:
    def __init__(self, records: bool):
        self.records = records
        self.chunks: list[str] = []

    def text(self, s: str) -> None:
        if not self.records:
            self.chunks.append(s if s.endswith("\n") else s + "\n")

    def pairs(self, pairs) -> None:
        pairs = list(pairs)
        if pairs:
            self.chunks.append(render_records(pairs))

    def report(self, rep: Report) -> int:
        if self.records:
            self.chunks.append("\n".join(rep.records()) + "\n")
        else:
            self.chunks.append(rep.text() + "\n")
        return 0 if rep.passed else 1

    def flush(self) -> None:
        sys.stdout.write("".join(self.chunks))


def _certified(p: Presentation, cap: int):
    m = build_model(p, cap=cap)
    if not m.finite:
        raise UsageError(f"not finite dimensional within degree {cap}")
    return m, check_stable(m)


# ------------------------------------------------------------- subcommands

def cmd_check_selfinjective(args, out: Output) -> int:
    m, cert = _certified(load_presentation(args.input), args.cap)
    rep = Report("check-selfinjective")
    if not cert:
        rep.add("stable", False, f"condition {cert.condition}: {cert.message}",
                [f"{k} = {v}" for k, v in sorted(cert.witness.items())])
        return out.report(rep)
    rep.add("stable", True, f"l = {cert.l}")
    rep.extend(verify_eta_compatibility(m, cert))
    rep.add("dimension_duality", dimension_duality_holds(m, cert))
    out.text(cert.format())
    if out.records:
        out.pairs([("l", cert.l), ("tau", format_cycles(cert.tau, m.quiver.vertices))]
                  + [(f"nu.{a.name}", cert.nu.arrow_map[a.name].format(m.quiver))
                     for a in m.quiver.arrows])
    return out.report(rep)


def cmd_extend(args, out: Output) -> int:
    m, cert = _certified(load_presentation(args.input), args.cap)
    if not cert:
        raise UsageError(f"input is not stable: {cert.message}")
    sigma = resolve_twist(args.twist, cert, m.presentation)
    ep = twisted_extension_presentation(m, cert, sigma)
    text = serialize_presentation(ep.presentation)
    if args.output:
        FsPath(args.output).write_text(text, encoding="utf-8")
    else:
        out.text(text)
    return out.report(verify_extension_presentation(ep, extension_oracle(m, cert, sigma)))


def cmd_hilbert(args, out: Output) -> int:
    m = build_model(load_presentation(args.input), cap=args.cap)
    if not m.finite:
        raise UsageError(f"not finite dimensional within degree {args.cap}")
    hp = hilbert_poly(m)
    if out.records:
        out.pairs((f"t{k}", str([list(r) for r in c]).replace(" ", ""))
                  for k, c in enumerate(hp.coeffs))
    else:
        for k, c in enumerate(hp.coeffs):
            out.text(f"t^{k}:\n{render_matrix(c)}")
    return 0


def cmd_complexity(args, out: Output) -> int:
    m = build_model(load_presentation(args.input), cap=args.cap)
    if not m.finite:
        raise UsageError(f"not finite dimensional within degree {args.cap}")
    report = algebra_complexity(m, args.truncation)
    out.pairs(report.records())
    return 0


def cmd_resolve(args, out: Output) -> int:
    m = build_model(load_presentation(args.input), cap=args.cap)
    if not m.finite:
        raise UsageError(f"not finite dimensional within degree {args.cap}")
    mats = betti_matrices(m, args.steps)
    if out.records:
        out.pairs((f"betti{r}", str(a).replace(" ", "")) for r, a in enumerate(mats))
    else:
        for r, a in enumerate(mats):
            out.text(f"step {r}:\n{render_matrix(a)}")
    verdict = koszulity_check(m, args.steps)
    out.pairs([("koszul", verdict.summary())])
    return 0


def cmd_koszul_dual(args, out: Output) -> int:
    out.text(serialize_presentation(quadratic_dual(load_presentation(args.input))))
    return 0


def cmd_yoneda(args, out: Output) -> int:
    out.text(serialize_presentation(yoneda_presentation(load_presentation(args.input))))
    return 0


def _as_cert(p: Presentation, args):
    cert = as_regularity_certificate(p, args.steps, args.cap)
    if not cert:
        raise UsageError(f"input is not certified AS-regular: {cert.reason}")
    return cert


def cmd_as_extend(args, out: Output) -> int:
    p = load_presentation(args.input)
    cert = _as_cert(p, args)
    rep = Report("as-extend")
    if args.mode == "central":
        g = central_extension(p, cert)
        rep.add("central", bool(g.central), f"depth {g.central.depth}", g.central.failures)
    elif args.mode == "cy":
        g = cy_extension(p, cert)
        if g.symmetry is None:
            rep.note("cy_verdict", "withheld for a quiver with several vertices")
        else:
            rep.note("formula_twist_graded_symmetric", "yes" if g.symmetry.graded_symmetric else "no")
            rows = g.scan.graded_symmetric_rows()
            rep.note("graded_symmetric_twists", ", ".join(r.label for r in rows) or "none")
            out.text(g.scan.text())
    else:
        if not args.twist:
            raise UsageError("--mode twist needs --twist")
        g = gamma_extension(p, cert, resolve_twist(args.twist, cert.stability, cert.dual))
    rep.add("routes_agree", g.routes_agree)
    out.text(serialize_presentation(g.presentation))
    return out.report(rep)


def cmd_scan_twists(args, out: Output) -> int:
    p = load_presentation(args.input)
    cert = _as_cert(p, args)
    table = find_special_twists(p, cert)
    if out.records:
        for r in table.rows:
            key = r.label.replace(" ", "_").replace("^", "")
            out.pairs([(f"{key}.central", _yn(r.central)), (f"{key}.graded_symmetric", _yn(r.graded_symmetric)),
                       (f"{key}.gk", r.gk.d), (f"{key}.formula", _yn(r.formula))])
    else:
        out.text(table.text())
    return 0 if all(r.routes_agree for r in table.rows) else 1


def cmd_verify(args, out: Output) -> int:
    return out.report(verify(load_presentation(args.input), args.steps, args.cap))


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverext", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="presentation file or builtin name (exterior-2, cyclic-3-j2, ...)")
    common.add_argument("--records", action="store_true", help="line-oriented key = value output")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="degree cap")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("check-selfinjective", cmd_check_selfinjective, "stability certificate and eta checks")
    sp = add("extend", cmd_extend, "twisted trivial extension with oracle verification")
    sp.add_argument("--twist", default="id", help="id, epsilon, epsilon-prime, sigma0 or a file")
    sp.add_argument("--output", help="write the presentation here")
    add("hilbert", cmd_hilbert, "Hilbert matrix polynomial")
    sp = add("complexity", cmd_complexity, "complexity of the inverse Hilbert series")
    sp.add_argument("--truncation", type=_positive, default=DEFAULT_TRUNCATION)
    sp = add("resolve", cmd_resolve, "Betti matrices of the simples")
    sp.add_argument("--steps", type=_positive, default=DEFAULT_STEPS)
    add("koszul-dual", cmd_koszul_dual, "quadratic dual presentation")
    add("yoneda", cmd_yoneda, "opposite of the quadratic dual")
    sp = add("as-extend", cmd_as_extend, "AS-regular extension")
    sp.add_argument("--mode", choices=("central", "cy", "twist"), default="central")
    sp.add_argument("--twist", help="twist on the Yoneda side (builtin name or file)")
    sp.add_argument("--steps", type=_positive, default=DEFAULT_STEPS)
    sp = add("scan-twists", cmd_scan_twists, "scan builtin twists for central and graded-symmetric rows")
    sp.add_argument("--steps", type=_positive, default=DEFAULT_STEPS)
    sp = add("verify", cmd_verify, "full identity suite")
    sp.add_argument("--steps", type=_positive, default=DEFAULT_STEPS)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.records)
    try:
        status = args.func(args, out)
    except (UsageError, CapExhausted, OSError, ValueError) as exc:
        print(f"quiverext: {exc}", file=sys.stderr)
        return 2
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
