"""Quivers, paths, homogeneous path combinations, presentations and graded
automorphisms, plus the plain-text file format.

Paths are written in algebraic (right-to-left) order: the word ``b*a`` means
traverse ``a`` first, then ``b``.  A :class:`Path` stores its arrows in that
same written order, so ``Path(("b", "a"), ...)`` is ``b*a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .field import QQ, Field, format_scalar
from .linalg import axpy, same_span, solve_square, span


class PresentationError(ValueError):
    """Malformed or inconsistent presentation data."""

    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


_CHUNK = re.compile(r"(\d+)")


def natural_key(name: str):
    """Sort key treating digit runs numerically: x2 < x10."""
    return tuple((0, int(s), "") if s.isdigit() else (1, 0, s)
                 for s in _CHUNK.split(name) if s)


@dataclass(frozen=True, slots=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True, slots=True)
class Path:
    """A path; ``arrows`` in written (algebraic) order, empty for e_v."""

    arrows: tuple
    source: str
    target: str

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


def trivial(v: str) -> Path:
    return Path((), v, v)


def concat(p: Path, q: Path) -> Path | None:
    """The product p*q (q first), or None when not composable."""
    if p.source != q.target:
        return None
    return Path(p.arrows + q.arrows, q.source, p.target)


class Quiver:
    """Finite quiver with canonically (naturally) sorted vertices and arrows."""

    def __init__(self, vertices: Iterable, arrows: Iterable):
        verts = [str(v) for v in vertices]
        if len(set(verts)) != len(verts):
            raise PresentationError("duplicate vertex id")
        self.vertices: tuple[str, ...] = tuple(sorted(verts, key=natural_key))
        arrs = [a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
                for a in arrows]
        names = [a.name for a in arrs]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow id")
        vset = set(self.vertices)
        for a in arrs:
            if a.source not in vset or a.target not in vset:
                raise PresentationError(f"arrow {a.name} uses an undeclared vertex")
        self.arrows: tuple[Arrow, ...] = tuple(sorted(arrs, key=lambda a: natural_key(a.name)))
        self.arrow = {a.name: a for a in self.arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self._out: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrows_from(self, v: str) -> list[Arrow]:
        return self._out[v]

    def arrows_into(self, v: str) -> list[Arrow]:
        return self._in[v]

    def arrows_between(self, i: str, j: str) -> list[Arrow]:
        return [a for a in self._out[i] if a.target == j]

    def path(self, word: Iterable[str]) -> Path:
        """Path from arrow names in written order; validates composability."""
        word = tuple(word)
        if not word:
            raise PresentationError("empty word")
        for name in word:
            if name not in self.arrow:
                raise PresentationError(f"undeclared arrow {name}")
        for left, right in zip(word, word[1:]):
            if self.arrow[left].source != self.arrow[right].target:
                raise PresentationError(f"arrows {left} and {right} do not compose")
        return Path(word, self.arrow[word[-1]].source, self.arrow[word[0]].target)

    def path_key(self, p: Path):
        """Deglex key: length, then arrow indices in written order."""
        return (len(p.arrows), tuple(self.arrow_index[a] for a in p.arrows),
                self.vertex_index[p.source])

    def paths_of_length(self, t: int) -> list[Path]:
        """All paths of length t in deglex order."""
        if t == 0:
            return [trivial(v) for v in self.vertices]
        out = [Path((a.name,), a.source, a.target) for a in self.arrows]
        for _ in range(t - 1):
            out = [Path((a.name,) + p.arrows, p.source, a.target)
                   for p in out for a in self._out[p.target]]
        return sorted(out, key=self.path_key)

    def with_arrows(self, extra: Iterable[Arrow]) -> "Quiver":
        return Quiver(self.vertices, list(self.arrows) + list(extra))

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Combo:
    """Linear combination of paths with nonzero coefficients.

    Products and sums do not enforce homogeneity; :meth:`check` does.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Path, object] | None = None):
        self.terms: dict[Path, object] = {p: c for p, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, path: Path, coeff=1) -> "Combo":
        return cls({path: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __add__(self, other: "Combo") -> "Combo":
        d = dict(self.terms)
        axpy(d, 1, other.terms)
        return Combo(d)

    def __sub__(self, other: "Combo") -> "Combo":
        d = dict(self.terms)
        axpy(d, -1, other.terms)
        return Combo(d)

    def __neg__(self):
        return Combo({p: -c for p, c in self.terms.items()})

    def scale(self, a) -> "Combo":
        return Combo({p: a * c for p, c in self.terms.items()})

    def __mul__(self, other: "Combo") -> "Combo":
        """Concatenation product in the path algebra (``other`` first)."""
        d: dict = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = concat(p, q)
                if r is not None:
                    axpy(d, 1, {r: a * b})
        return Combo(d)

    def __eq__(self, other):
        return isinstance(other, Combo) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int | None:
        lens = {p.length for p in self.terms}
        return lens.pop() if len(lens) == 1 else None

    @property
    def source(self):
        s = {p.source for p in self.terms}
        return s.pop() if len(s) == 1 else None

    @property
    def target(self):
        s = {p.target for p in self.terms}
        return s.pop() if len(s) == 1 else None

    def check(self) -> "Combo":
        """Require homogeneous and parallel terms; returns self."""
        if not self.terms:
            return self
        if len({p.length for p in self.terms}) != 1:
            raise PresentationError(f"inhomogeneous relation {self}")
        if len({(p.source, p.target) for p in self.terms}) != 1:
            raise PresentationError(f"non-parallel relation terms in {self}")
        return self

    def sorted_terms(self, quiver: Quiver | None = None):
        key = quiver.path_key if quiver else (lambda p: (p.length, tuple(map(natural_key, p.arrows))))
        return sorted(self.terms.items(), key=lambda pc: key(pc[0]))

    def normalized(self, quiver: Quiver | None = None) -> "Combo":
        """Rescaled so the first term (deglex order) has coefficient 1."""
        if not self.terms:
            return self
        lead = self.sorted_terms(quiver)[0][1]
        return self.scale(1 / lead)

    def format(self, quiver: Quiver | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (p, c) in enumerate(self.sorted_terms(quiver)):
            neg = c < 0 if not hasattr(c, "p") else str(c).startswith("-")
            mag = -c if neg else c
            coef = "" if mag == 1 else format_scalar(mag) + " "
            if k == 0:
                parts.append(("-" if neg else "") + coef + str(p))
            else:
                parts.append(("- " if neg else "+ ") + coef + str(p))
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Combo({self.format()!r})"


@dataclass
class Presentation:
    quiver: Quiver
    relations: list = dc_field(default_factory=list)
    field: Field = QQ

    def __post_init__(self):
        rels = []
        for r in self.relations:
            if not isinstance(r, Combo):
                raise PresentationError("relations must be Combo objects")
            r.check()
            if not r:
                continue
            if r.degree < 2:
                raise PresentationError(f"relation {r} has length < 2")
            for p in r.terms:
                self.quiver.path(p.arrows)
            rels.append(Combo({p: self.field(c) for p, c in r.terms.items()}))
        self.relations = rels

    @property
    def max_relation_degree(self) -> int:
        return max((r.degree for r in self.relations), default=0)

    def is_quadratic(self) -> bool:
        return all(r.degree == 2 for r in self.relations)

    def canonical_relations(self) -> list[Combo]:
        """Reduced echelon basis of the relation span, leading terms scaled to 1."""
        rows = span((dict(r.terms) for r in self.relations), key=self.quiver.path_key).basis()
        rels = [Combo(row).normalized(self.quiver) for row in rows]
        return sorted(rels, key=lambda r: [(self.quiver.path_key(p), str(c))
                                           for p, c in r.sorted_terms(self.quiver)])

    def relation_span_equals(self, other: "Presentation",
                             rename: Mapping[str, str] | None = None) -> bool:
        """Same quiver shape (after renaming our arrows) and same relation span."""
        rename = dict(rename or {})
        def ren(p: Path) -> tuple:
            return tuple(rename.get(a, a) for a in p.arrows)
        mine = [{ren(p): c for p, c in r.terms.items()} for r in self.relations]
        theirs = [{p.arrows: c for p, c in r.terms.items()} for r in other.relations]
        arrows_mine = sorted((rename.get(a.name, a.name), a.source, a.target)
                             for a in self.quiver.arrows)
        arrows_theirs = sorted((a.name, a.source, a.target) for a in other.quiver.arrows)
        if arrows_mine != arrows_theirs or self.quiver.vertices != other.quiver.vertices:
            return False
        key = lambda w: (len(w), tuple(natural_key(a) for a in w))
        return same_span(mine, theirs, key=key)

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.field == other.field
                and self.quiver == other.quiver
                and self.canonical_relations() == other.canonical_relations())


# ---------------------------------------------------------------- automorphisms

class Automorphism:
    """Graded automorphism given on generators.

    ``vertex_map`` is a permutation of the vertices; ``arrow_map`` sends each
    arrow a: i -> j to a length-1 combination of arrows from
    vertex_map[i] to vertex_map[j].
    """

    def __init__(self, quiver: Quiver, vertex_map: Mapping[str, str],
                 arrow_map: Mapping[str, Combo], field: Field = QQ):
        self.quiver = quiver
        self.field = field
        self.vertex_map = {str(k): str(v) for k, v in vertex_map.items()}
        if set(self.vertex_map) != set(quiver.vertices) or \
                set(self.vertex_map.values()) != set(quiver.vertices):
            raise PresentationError("vertex map is not a permutation of the vertices")
        self.arrow_map: dict[str, Combo] = {}
        for a in quiver.arrows:
            if a.name not in arrow_map:
                raise PresentationError(f"automorphism undefined on arrow {a.name}")
            img = Combo({p: field(c) for p, c in arrow_map[a.name].terms.items()})
            for p in img.terms:
                if p.length != 1 or p.source != self.vertex_map[a.source] \
                        or p.target != self.vertex_map[a.target]:
                    raise PresentationError(
                        f"image of {a.name} is not a combination of arrows "
                        f"{self.vertex_map[a.source]} -> {self.vertex_map[a.target]}")
            self.arrow_map[a.name] = img
        extra = set(arrow_map) - set(quiver.arrow)
        if extra:
            raise PresentationError(f"automorphism mentions unknown arrows {sorted(extra)}")
        for i in quiver.vertices:
            for j in quiver.vertices:
                self._block(i, j)  # raises when singular

    @classmethod
    def identity(cls, quiver: Quiver, field: Field = QQ) -> "Automorphism":
        return cls(quiver, {v: v for v in quiver.vertices},
                   {a.name: Combo.of(Path((a.name,), a.source, a.target)) for a in quiver.arrows},
                   field)

    @classmethod
    def scalar(cls, quiver: Quiver, c, field: Field = QQ) -> "Automorphism":
        """Every arrow multiplied by c (c = -1 gives the sign automorphism)."""
        return cls(quiver, {v: v for v in quiver.vertices},
                   {a.name: Combo.of(Path((a.name,), a.source, a.target), c)
                    for a in quiver.arrows}, field)

    def _block(self, i: str, j: str):
        """Matrix of the map on arrows i->j (rows: source arrows)."""
        src = self.quiver.arrows_between(i, j)
        dst = self.quiver.arrows_between(self.vertex_map[i], self.vertex_map[j])
        if len(src) != len(dst):
            raise PresentationError(f"arrow spaces {i}->{j} and its image differ in dimension")
        if not src:
            return [], [], []
        mat = [[self.arrow_map[a.name].terms.get(Path((b.name,), b.source, b.target), 0)
                for b in dst] for a in src]
        ident = [[self.field(int(r == c)) for c in range(len(src))] for r in range(len(src))]
        try:
            solve_square([[self.field(x) for x in row] for row in mat], ident)
        except ZeroDivisionError:
            raise PresentationError(f"automorphism is singular on arrows {i}->{j}") from None
        return src, dst, mat

    def vertex(self, v: str) -> str:
        return self.vertex_map[v]

    def apply_path(self, p: Path) -> Combo:
        if not p.arrows:
            return Combo.of(trivial(self.vertex_map[p.source]), self.field.one)
        out = self.arrow_map[p.arrows[0]]
        for name in p.arrows[1:]:
            out = out * self.arrow_map[name]
        return out

    def apply(self, c: Combo) -> Combo:
        d: dict = {}
        for p, a in c.terms.items():
            for name in p.arrows:
                if name not in self.arrow_map:
                    raise PresentationError(f"automorphism undefined on arrow {name}")
            axpy(d, a, self.apply_path(p).terms)
        return Combo(d)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other (apply ``other`` first)."""
        if other.quiver != self.quiver:
            raise PresentationError("quiver mismatch in composition")
        vm = {v: self.vertex_map[other.vertex_map[v]] for v in self.quiver.vertices}
        am = {a.name: self.apply(other.arrow_map[a.name]) for a in self.quiver.arrows}
        return Automorphism(self.quiver, vm, am, self.field)

    __matmul__ = compose

    def inverse(self) -> "Automorphism":
        vm = {w: v for v, w in self.vertex_map.items()}
        am: dict[str, Combo] = {}
        seen = set()
        for i in self.quiver.vertices:
            for j in self.quiver.vertices:
                if (i, j) in seen:
                    continue
                seen.add((i, j))
                src, dst, mat = self._block(i, j)
                if not src:
                    continue
                k = len(src)
                ident = [[self.field(int(r == c)) for c in range(k)] for r in range(k)]
                # rows of mat: images of src arrows; want images of dst arrows.
                # X with X*mat = I  <=>  mat^T X^T = I
                mt = [[self.field(mat[r][c]) for r in range(k)] for c in range(k)]
                xt = solve_square(mt, ident)
                for b_idx, b in enumerate(dst):
                    am[b.name] = Combo({Path((a.name,), a.source, a.target): xt[a_idx][b_idx]
                                        for a_idx, a in enumerate(src)})
        return Automorphism(self.quiver, vm, am, self.field)

    def power(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        out = Automorphism.identity(self.quiver, self.field)
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def is_identity(self) -> bool:
        return self == Automorphism.identity(self.quiver, self.field)

    def fixes_vertices(self) -> bool:
        return all(k == v for k, v in self.vertex_map.items())

    def transpose(self) -> "Automorphism":
        """Adjoint on each arrow block for the pairing making arrows orthonormal."""
        am: dict[str, dict] = {a.name: {} for a in self.quiver.arrows}
        for a in self.quiver.arrows:
            for p, c in self.arrow_map[a.name].terms.items():
                b = self.quiver.arrow[p.arrows[0]]
                am[b.name][Path((a.name,), a.source, a.target)] = c
        vm = {w: v for v, w in self.vertex_map.items()}
        return Automorphism(self.quiver, vm, {k: Combo(v) for k, v in am.items()}, self.field)

    def __eq__(self, other):
        return (isinstance(other, Automorphism) and self.quiver == other.quiver
                and self.vertex_map == other.vertex_map and self.arrow_map == other.arrow_map)

    def __hash__(self):
        return hash((tuple(sorted(self.vertex_map.items())),
                     tuple(sorted((k, v) for k, v in self.arrow_map.items()))))

    def format(self) -> str:
        lines = ["auto"]
        for v in self.quiver.vertices:
            lines.append(f"vertex {v} -> {self.vertex_map[v]}")
        for a in self.quiver.arrows:
            lines.append(f"arrow {a.name} -> {self.arrow_map[a.name].format(self.quiver)}")
        lines.append("end")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "Automorphism(" + "; ".join(
            f"{a.name}->{self.arrow_map[a.name]}" for a in self.quiver.arrows) + ")"


def apply_automorphism(sigma: Automorphism, c: Combo) -> Combo:
    return sigma.apply(c)


def compose_automorphisms(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    return sigma.compose(tau)


def invert_automorphism(sigma: Automorphism) -> Automorphism:
    return sigma.inverse()


# ------------------------------------------------------------------ text format

_NAME = r"[^\W\d][\w@']*"
_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?\s*(?:\*\s*)?"
    rf"(?P<path>{_NAME}(?:\s*\*\s*{_NAME})*)\s*")


def parse_combo(text: str, quiver: Quiver, field: Field = QQ, line: int | None = None) -> Combo:
    """Parse ``1/2 a2*a1 - a0*a2`` into a Combo (validated against the quiver)."""
    text = text.strip()
    if not text:
        raise PresentationError("empty combination", line)
    pos, d = 0, {}
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"cannot parse term near {text[pos:]!r}", line)
        if not first and not m.group("sign"):
            raise PresentationError(f"missing sign before {text[pos:]!r}", line)
        first = False
        coef = field(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        word = [w.strip() for w in m.group("path").split("*")]
        try:
            p = quiver.path(word)
        except PresentationError as e:
            raise PresentationError(str(e), line) from None
        axpy(d, coef, {p: field.one})
        pos = m.end()
    return Combo(d)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_presentation(text: str) -> Presentation:
    field = QQ
    vertices = None
    arrows: list[Arrow] = []
    rel_lines: list[tuple[int, str]] = []
    in_rel = False
    seen_end = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if in_rel:
            if line == "end":
                in_rel, seen_end = False, True
            else:
                rel_lines.append((lineno, line))
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            parts = rest.split()
            if parts == ["Q"]:
                field = QQ
            elif len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
                try:
                    field = Field(int(parts[1]))
                except ValueError as e:
                    raise PresentationError(str(e), lineno) from None
            else:
                raise PresentationError(f"bad field declaration {rest!r}", lineno)
        elif head == "vertices":
            vertices = rest.split()
        elif head == "arrow":
            m = re.fullmatch(rf"({_NAME})\s*:\s*(\S+)\s*->\s*(\S+)", rest)
            if not m:
                raise PresentationError(f"bad arrow declaration {rest!r}", lineno)
            if vertices is None:
                raise PresentationError("arrow declared before vertices", lineno)
            if m.group(2) not in vertices or m.group(3) not in vertices:
                raise PresentationError(f"arrow {m.group(1)} uses an undeclared vertex", lineno)
            arrows.append(Arrow(m.group(1), m.group(2), m.group(3)))
        elif head == "relations":
            if rest:
                raise PresentationError("text after 'relations'", lineno)
            in_rel = True
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno)
    if in_rel:
        raise PresentationError("relations block not closed with 'end'")
    if vertices is None:
        raise PresentationError("missing 'vertices' line")
    try:
        quiver = Quiver(vertices, arrows)
    except PresentationError as e:
        raise PresentationError(str(e)) from None
    rels = []
    for lineno, line in rel_lines:
        c = parse_combo(line, quiver, field, lineno)
        try:
            c.check()
        except PresentationError as e:
            raise PresentationError(str(e), lineno) from None
        if c and c.degree < 2:
            raise PresentationError("relations must have length >= 2", lineno)
        rels.append(c)
    return Presentation(quiver, rels, field)


def serialize_presentation(p: Presentation) -> str:
    q = p.quiver
    lines = [p.field.header(), "vertices " + " ".join(q.vertices)]
    for a in q.arrows:
        lines.append(f"arrow {a.name} : {a.source} -> {a.target}")
    lines.append("relations")
    for r in p.canonical_relations():
        lines.append("  " + r.format(q))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_automorphism(text: str, pres: Presentation) -> Automorphism:
    q, field = pres.quiver, pres.field
    vmap: dict[str, str] = {}
    amap: dict[str, Combo] = {}
    started = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if not started:
            if line != "auto":
                raise PresentationError("automorphism file must start with 'auto'", lineno)
            started = True
            continue
        if line == "end":
            break
        head, _, rest = line.partition(" ")
        lhs, arrow_sep, rhs = rest.partition("->")
        if not arrow_sep:
            raise PresentationError(f"expected '->' in {line!r}", lineno)
        lhs = lhs.strip()
        if head == "vertex":
            if lhs not in q.vertex_index or rhs.strip() not in q.vertex_index:
                raise PresentationError(f"undeclared vertex in {line!r}", lineno)
            vmap[lhs] = rhs.strip()
        elif head == "arrow":
            if lhs not in q.arrow:
                raise PresentationError(f"undeclared arrow {lhs}", lineno)
            amap[lhs] = parse_combo(rhs, q, field, lineno)
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno)
    if not started:
        raise PresentationError("empty automorphism file")
    for v in q.vertices:
        vmap.setdefault(v, v)
    return Automorphism(q, vmap, amap, field)
