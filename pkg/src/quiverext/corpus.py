"""Standard presentations used in tests, the CLI and the acceptance suite."""

from __future__ import annotations

from .field import QQ, Field
from .presentation import Arrow, Combo, Path, Presentation, Quiver


def _loop(name: str) -> Path:
    return Path((name,), "0", "0")


def _word(*names: str) -> Path:
    return Path(tuple(names), "0", "0")


def one_vertex(m: int, prefix: str = "x") -> Quiver:
    return Quiver(["0"], [Arrow(f"{prefix}{i}", "0", "0") for i in range(1, m + 1)])


def exterior(m: int, field: Field = QQ) -> Presentation:
    """Exterior algebra on x1..xm: squares and anticommutators."""
    q = one_vertex(m)
    xs = [f"x{i}" for i in range(1, m + 1)]
    rels = [Combo.of(_word(x, x)) for x in xs]
    for i in range(m):
        for j in range(i + 1, m):
            rels.append(Combo({_word(xs[i], xs[j]): 1, _word(xs[j], xs[i]): 1}))
    return Presentation(q, rels, field)


def polynomial(m: int, field: Field = QQ) -> Presentation:
    """Commutative polynomial ring k[x1..xm]."""
    q = one_vertex(m)
    xs = [f"x{i}" for i in range(1, m + 1)]
    rels = [Combo({_word(xs[i], xs[j]): 1, _word(xs[j], xs[i]): -1})
            for i in range(m) for j in range(i + 1, m)]
    return Presentation(q, rels, field)


def truncated_loop(power: int, field: Field = QQ) -> Presentation:
    """k[x]/(x^power)."""
    q = one_vertex(1)
    return Presentation(q, [Combo.of(_word(*["x1"] * power))], field)


def cyclic_quiver(n: int) -> Quiver:
    return Quiver([str(i) for i in range(n)],
                  [Arrow(f"a{i}", str(i), str((i + 1) % n)) for i in range(n)])


def cyclic_path_algebra(n: int, field: Field = QQ) -> Presentation:
    return Presentation(cyclic_quiver(n), [], field)


def cyclic_radical_square_zero(n: int, field: Field = QQ) -> Presentation:
    """Oriented n-cycle modulo all paths of length 2."""
    q = cyclic_quiver(n)
    rels = [Combo.of(q.path((f"a{(i + 1) % n}", f"a{i}"))) for i in range(n)]
    return Presentation(q, rels, field)


def a2(field: Field = QQ) -> Presentation:
    """Single arrow 1 -> 2, no relations (not self-injective)."""
    return Presentation(Quiver(["1", "2"], [Arrow("a", "1", "2")]), [], field)


def builtin(name: str) -> Presentation:
    """Resolve names like ``exterior-2``, ``polynomial-3``, ``cyclic-3-j2``,
    ``cyclic-3``, ``a2``."""
    parts = name.split("-")
    fam = parts[0]
    try:
        if fam == "exterior":
            return exterior(int(parts[1]))
        if fam == "polynomial":
            return polynomial(int(parts[1]))
        if fam == "cyclic" and len(parts) == 3 and parts[2] == "j2":
            return cyclic_radical_square_zero(int(parts[1]))
        if fam == "cyclic" and len(parts) == 2:
            return cyclic_path_algebra(int(parts[1]))
        if fam == "a2" and len(parts) == 1:
            return a2()
    except (IndexError, ValueError):
        pass
    raise KeyError(f"unknown builtin presentation {name!r}")
