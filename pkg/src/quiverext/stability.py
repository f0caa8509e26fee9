"""Stable bound quivers: Nakayama translation, maximal paths, socle
functionals and the Nakayama automorphism."""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import AlgebraModel
from .linalg import left_kernel, solve_square
from .presentation import Automorphism, Combo, Path
from .report import Report


class DegeneratePairing(RuntimeError):
    """A socle pairing that should be perfect is not."""


@dataclass
class StabilityViolation:
    condition: int
    message: str
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return False


@dataclass
class StabilityCertificate:
    model: AlgebraModel
    l: int
    tau: dict
    p_max: dict
    nu: Automorphism | None = None

    def __bool__(self):
        return True

    def eta(self, i: str, coords: dict):
        """Socle functional at vertex i on a coordinate dict (zero off its block)."""
        return coords.get(self.p_max[i], 0)

    def tau_inverse(self) -> dict:
        return {w: v for v, w in self.tau.items()}

    def format(self) -> str:
        q = self.model.quiver
        lines = [f"l = {self.l}", f"tau = {format_cycles(self.tau, q.vertices)}"]
        for v in q.vertices:
            lines.append(f"p_max.{v} = {self.p_max[v]}")
        if self.nu is not None:
            for a in q.arrows:
                lines.append(f"nu.{a.name} = {self.nu.arrow_map[a.name].format(q)}")
        return "\n".join(lines) + "\n"


def format_cycles(perm: dict, order) -> str:
    seen, cycles = set(), []
    for v in order:
        if v in seen:
            continue
        cyc, w = [], v
        while w not in seen:
            seen.add(w)
            cyc.append(w)
            w = perm[w]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles)


def _annihilator_witness(m: AlgebraModel, t: int, left: bool):
    """A nonzero degree-t element killed by every arrow (on one side), or None."""
    q = m.quiver
    arrows = [Path((a.name,), a.source, a.target) for a in q.arrows]
    basis = m.basis[t]
    col = {}
    rows = []
    for x in basis:
        img = {}
        for a in arrows:
            prod = m.mul_paths(a, x) if left else m.mul_paths(x, a)
            for p, c in prod.items():
                img[col.setdefault((a.arrows[0], p), len(col))] = c
        rows.append(img)
    ker = left_kernel(rows)
    if not ker:
        return None
    return {basis[k]: c for k, c in ker[0].items()}


def check_stable(m: AlgebraModel):
    """Certificate (with Nakayama automorphism) or a StabilityViolation."""
    if not m.finite:
        raise ValueError("model is not known to be finite dimensional")
    l = m.top
    if l < 1:
        raise ValueError("semisimple algebra (top degree 0) is excluded")
    q = m.quiver
    tau, p_max = {}, {}
    for i in q.vertices:
        paths = [p for p in m.basis[l] if p.target == i]
        if not paths:
            return StabilityViolation(3, f"no maximal bound path ends at vertex {i}", {"vertex": i})
        if len(paths) > 1:
            return StabilityViolation(
                4, f"independent paths of length {l} end at vertex {i}",
                {"vertex": i, "paths": [str(p) for p in paths]})
        tau[i] = paths[0].source
        p_max[i] = paths[0]
    if len(set(tau.values())) != len(tau):
        starts = {}
        for i, j in tau.items():
            starts.setdefault(j, []).append(i)
        j, ends = next((j, e) for j, e in starts.items() if len(e) > 1)
        return StabilityViolation(1, f"maximal paths from {j} end at several vertices {ends}",
                                  {"vertex": j, "ends": ends})
    for t in range(l):
        for left in (True, False):
            w = _annihilator_witness(m, t, left)
            if w is not None:
                return StabilityViolation(
                    2, f"bound element of degree {t} < {l} is maximal",
                    {"degree": t, "side": "left" if left else "right",
                     "element": str(Combo(w))})
    cert = StabilityCertificate(m, l, tau, p_max)
    cert.nu = nakayama_automorphism(m, cert)
    return cert


def nakayama_automorphism(m: AlgebraModel, cert: StabilityCertificate) -> Automorphism:
    """nu with eta_j(beta q) = eta_i(q nu(beta)) for beta: i -> j, |q| = l-1.

    Per arrow space: zeta = dual basis of the arrows under (beta, q) ->
    eta_j(beta q); nu(beta_t) = gamma_t, the dual basis of zeta under
    (q, y) -> eta_i(q y).
    """
    q = m.quiver
    l, tau = cert.l, cert.tau
    field = m.field
    arrow_map: dict[str, Combo] = {}
    done = set()
    for a in q.arrows:
        i, j = a.source, a.target
        if (i, j) in done:
            continue
        done.add((i, j))
        betas = [Path((b.name,), i, j) for b in q.arrows_between(i, j)]
        xs = m.block(l - 1, i, tau[j])
        ys = [Path((b.name,), tau[i], tau[j]) for b in q.arrows_between(tau[i], tau[j])]
        k = len(betas)
        if len(xs) != k or len(ys) != k:
            raise DegeneratePairing(
                f"arrow space {i}->{j} has dimension {k}, paired spaces have "
                f"{len(xs)} and {len(ys)}")
        ident = [[field(int(r == c)) for c in range(k)] for r in range(k)]
        C = [[field(cert.eta(j, m.mul_paths(b, x))) for x in xs] for b in betas]
        try:
            Zt = solve_square(C, ident)  # C Z^T = I
        except ZeroDivisionError:
            raise DegeneratePairing(f"pairing of arrows {i}->{j} with degree {l - 1} is degenerate") from None
        # zeta_s = sum_k Zt[k][s] x_k
        pair = [[field(cert.eta(i, m.mul_paths(x, y))) for y in ys] for x in xs]
        B = [[sum((Zt[kk][s] * pair[kk][u] for kk in range(k)), field.zero) for u in range(k)]
             for s in range(k)]
        try:
            Gt = solve_square(B, ident)  # B G^T = I
        except ZeroDivisionError:
            raise DegeneratePairing(f"pairing into arrows {tau[i]}->{tau[j]} is degenerate") from None
        for t_idx, beta in enumerate(betas):
            arrow_map[beta.arrows[0]] = Combo({ys[u]: Gt[u][t_idx] for u in range(k)})
    return Automorphism(q, tau, arrow_map, field)


def verify_eta_compatibility(m: AlgebraModel, cert: StabilityCertificate,
                             nu: Automorphism | None = None) -> Report:
    nu = nu or cert.nu
    q = m.quiver
    rep = Report("eta-compatibility")
    failures, count = [], 0
    for a in q.arrows:
        i, j = a.source, a.target
        beta = Path((a.name,), i, j)
        for x in m.basis[cert.l - 1]:
            if x.target != i:
                continue
            count += 1
            lhs = cert.eta(j, m.mul_paths(beta, x))
            rhs_coords: dict = {}
            for y, c in nu.arrow_map[a.name].terms.items():
                for p, d in m.mul_paths(x, y).items():
                    rhs_coords[p] = rhs_coords.get(p, 0) + c * d
            rhs = cert.eta(i, rhs_coords)
            if lhs != rhs:
                failures.append(f"beta={a.name} q={x}: {lhs} != {rhs}")
    rep.add("eta_identity", not failures, f"{count} pairs", failures)
    return rep


def commutes_with_tau(cert: StabilityCertificate, sigma: Automorphism) -> bool:
    return all(sigma.vertex(cert.tau[v]) == cert.tau[sigma.vertex(v)] for v in cert.tau)


def dimension_duality_holds(m: AlgebraModel, cert: StabilityCertificate) -> bool:
    """dim e_i L_{l-r} e_j == dim e_j L_r e_{tau i} for all i, j, r."""
    dims = m.degree_dims()
    idx = m.quiver.vertex_index
    l = cert.l
    for r in range(l + 1):
        for i in m.quiver.vertices:
            for j in m.quiver.vertices:
                if dims[l - r][idx[i]][idx[j]] != dims[r][idx[j]][idx[cert.tau[i]]]:
                    return False
    return True
