"""Degreewise normal forms for kQ/(rho).

Degree t of the quotient is computed from degree t-1: every degree-t path is
``b*a`` with ``b`` a degree-(t-1) basis path, and the relation ideal in
degree t modulo (ideal in degree t-1)*arrows is spanned by ``u*r`` with ``r``
a relation and ``u`` a basis path.  Row reduction eliminates the
deglex-largest path of each relation row, so basis elements are paths.
"""

from __future__ import annotations

import logging

from .linalg import RowSpace, axpy
from .presentation import Automorphism, Combo, Path, Presentation, trivial

log = logging.getLogger(__name__)

DEFAULT_CAP = 16


class CapExhausted(RuntimeError):
    """Degree cap reached before the algebra was seen to be finite dimensional."""


class DegreeOverflow(ValueError):
    """A normal form was requested above the model's degree cap."""


class AlgebraModel:
    def __init__(self, presentation: Presentation, cap: int = DEFAULT_CAP):
        if cap < 2:
            raise ValueError("cap must be at least 2")
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.field = presentation.field
        self.cap = cap
        self.basis: list[list[Path]] = []
        self._table: list[dict[Path, dict]] = []
        self._memo: dict[Path, dict] = {}
        self.finite = False
        self.top: int | None = None
        self._build()

    # -- construction

    def _build(self):
        q = self.quiver
        one = self.field.one
        self.basis.append([trivial(v) for v in q.vertices])
        self._table.append({p: {p: one} for p in self.basis[0]})
        rels_by_degree: dict[int, list[Combo]] = {}
        for r in self.presentation.relations:
            rels_by_degree.setdefault(r.degree, []).append(r)
        for t in range(1, self.cap + 1):
            if t == 1:
                cands = [Path((a.name,), a.source, a.target) for a in q.arrows]
            else:
                cands = [Path(b.arrows + (a.name,), a.source, b.target)
                         for b in self.basis[t - 1] for a in q.arrows_into(b.source)]
            rs = RowSpace(key=q.path_key)
            for d, rels in rels_by_degree.items():
                if d > t:
                    continue
                for r in rels:
                    for u in self.basis[t - d]:
                        if u.source != r.target:
                            continue
                        row: dict = {}
                        for w, c in r.terms.items():
                            axpy(row, c, self._lift(Path(u.arrows + w.arrows, w.source, u.target), t))
                        if row:
                            rs.add(row)
            basis = sorted((c for c in cands if c not in rs.rows), key=q.path_key)
            table = {c: {c: one} for c in basis}
            for p, row in rs.rows.items():
                table[p] = {k: -v for k, v in row.items() if k != p}
            self.basis.append(basis)
            self._table.append(table)
            if not basis:
                self.finite = True
                self.top = t - 1
                log.debug("finite dimensional, top degree %d", self.top)
                break

    def _lift(self, p: Path, t: int) -> dict:
        """Coordinates of a degree-t path over the degree-t candidate paths."""
        if t <= 1:
            return {p: self.field.one}
        prefix = Path(p.arrows[:-1], self.quiver.arrow[p.arrows[-1]].target, p.target)
        last = p.arrows[-1]
        out: dict = {}
        for b, c in self.nf_path(prefix).items():
            out[Path(b.arrows + (last,), p.source, b.target)] = c
        return out

    # -- queries

    @property
    def max_degree(self) -> int:
        """Largest degree with known (possibly nonzero) basis."""
        return self.top if self.finite else self.cap

    def dim(self, t: int | None = None) -> int:
        if t is None:
            return sum(len(b) for b in self.basis)
        return len(self.basis[t]) if t < len(self.basis) else 0

    def all_basis(self) -> list[Path]:
        return [p for b in self.basis for p in b]

    def nf_path(self, p: Path) -> dict:
        """Normal form of a single path as ``{basis path: coeff}``."""
        t = p.length
        if t > self.cap and not self.finite:
            raise DegreeOverflow(f"degree {t} above cap {self.cap}")
        if self.finite and t > self.top:
            return {}
        hit = self._memo.get(p)
        if hit is not None:
            return hit
        table = self._table[t]
        if p in table:
            res = table[p]
        else:
            res = {}
            for cand, c in self._lift(p, t).items():
                axpy(res, c, table[cand])
        self._memo[p] = res
        return res

    def normal_form(self, c: Combo) -> Combo:
        out: dict = {}
        for p, a in c.terms.items():
            axpy(out, a, self.nf_path(p))
        return Combo(out)

    def multiply(self, a: Combo, b: Combo) -> Combo:
        """Normal form of a*b (b first); zero on mismatched endpoints."""
        return self.normal_form(a * b)

    def mul_paths(self, p: Path, q: Path) -> dict:
        """p*q for basis paths, as a coordinate dict."""
        if p.source != q.target:
            return {}
        return self.nf_path(Path(p.arrows + q.arrows, q.source, p.target))

    def degree_dims(self) -> list[list[list[int]]]:
        """Matrices M_t with (i, j) entry dim e_i L_t e_j, i.e. paths j -> i."""
        idx = self.quiver.vertex_index
        n = self.quiver.n
        out = []
        for t in range(0, self.max_degree + 1):
            m = [[0] * n for _ in range(n)]
            for p in self.basis[t]:
                m[idx[p.target]][idx[p.source]] += 1
            out.append(m)
        return out

    def block(self, t: int, target: str, source: str) -> list[Path]:
        """Basis of e_target L_t e_source."""
        if t >= len(self.basis):
            return []
        return [p for p in self.basis[t] if p.target == target and p.source == source]

    def is_automorphism(self, sigma: Automorphism) -> bool:
        """sigma maps every relation into the ideal."""
        return all(not self.normal_form(sigma.apply(r)) for r in self.presentation.relations)

    def __repr__(self):
        state = f"top={self.top}" if self.finite else f"cap={self.cap}"
        return f"AlgebraModel(dims={[len(b) for b in self.basis]}, {state})"


def build_model(p: Presentation, cap: int = DEFAULT_CAP, require_finite: bool = False) -> AlgebraModel:
    m = AlgebraModel(p, cap)
    if require_finite and not m.finite:
        raise CapExhausted(f"no vanishing degree found up to cap {cap}")
    return m


def normal_form(m: AlgebraModel, c: Combo) -> Combo:
    return m.normal_form(c)


def multiply(m: AlgebraModel, a: Combo, b: Combo) -> Combo:
    return m.multiply(a, b)


def degree_dims(m: AlgebraModel) -> list[list[list[int]]]:
    return m.degree_dims()
