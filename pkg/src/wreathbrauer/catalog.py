"""Built-in desk-scale groups with a wreathed Sylow 2-subgroup, plus a text catalog format.

Catalog file grammar (one directive per line, ``#`` starts a comment)::

    id <name>                 required, first directive
    expected_order <int>      required
    degree <int>              optional; defaults to the largest point + 1
    marking <i> <j> <k>       optional; generator indices playing a, b, t
    notes <free text>         optional
    (0 1 2)(3 4)              one generator per line in disjoint-cycle notation
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable

from .errors import DomainError, ParseError
from .permgroup import Perm, PermGroup, parse_cycles, sylow_2
from .wreathed import WreathedData, build_wreathed, recognize_wreathed, wreathed_from_marking

CATALOG_DIR_ENV = "WREATH_BRAUER_CATALOG_DIR"


@dataclass
class MarkedGroup:
    """A group together with an optional wreathed marking ``(a, b, t)`` of a Sylow 2-subgroup."""

    id: str
    group: PermGroup
    marking: tuple[Perm, Perm, Perm] | None = None
    notes: str = ""
    extra: dict = field(default_factory=dict)

    @cached_property
    def wreathed(self) -> WreathedData | None:
        if self.marking is not None:
            return wreathed_from_marking(self.group, *self.marking)
        return recognize_wreathed(self.group, sylow_2(self.group))

    def describe(self) -> dict:
        S = sylow_2(self.group)
        W = self.wreathed
        d = {"id": self.id, "order": self.group.order, "degree": self.group.degree,
             "generators": [str(g) for g in self.group.generators],
             "sylow2_order": S.order, "wreathed": W is not None and W.P.order == S.order,
             "notes": self.notes}
        if W is not None:
            d["n"] = W.n
            d["marking"] = {"a": str(W.a), "b": str(W.b), "t": str(W.t)}
        return d


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    construction: str
    expected_order: int
    notes: str
    builder: Callable[[], MarkedGroup]

    def build(self) -> MarkedGroup:
        mg = self.builder()
        if mg.group.order != self.expected_order:
            raise DomainError(f"{self.id}: order {mg.group.order} != expected {self.expected_order}")
        return mg


# -- constructions ---------------------------------------------------------------

def _wreath_entry(n: int) -> MarkedGroup:
    W = build_wreathed(n)
    return MarkedGroup(f"wreathP-n{n}", W.ambient, (W.a, W.b, W.t),
                       f"C_{2 ** n} wr C_2 on {2 ** (n + 1)} points")


def affine_s3_generators(n: int) -> tuple[Perm, Perm, Perm, Perm]:
    """``a, b, t, s`` for ``(C_N x C_N) : S_3`` acting on ``N^2 + 3`` points (``N = 2^n``).

    Point ``x + N*y`` is the vector ``(x, y)``; the last three points carry the
    natural ``S_3`` action.  ``a, b`` translate, ``t`` swaps coordinates and
    ``s`` is the linear map ``e1 -> e2, e2 -> -e1 - e2``.
    """
    N = 2 ** n
    V = N * N
    idx = lambda x, y: (x % N) + N * (y % N)  # noqa: E731
    extra = [V, V + 1, V + 2]

    def perm(f, tail):
        img = [0] * (V + 3)
        for x in range(N):
            for y in range(N):
                img[idx(x, y)] = idx(*f(x, y))
        for k, p in enumerate(extra):
            img[p] = extra[tail[k]]
        return Perm(img)

    a = perm(lambda x, y: (x + 1, y), (0, 1, 2))
    b = perm(lambda x, y: (x, y + 1), (0, 1, 2))
    t = perm(lambda x, y: (y, x), (1, 0, 2))
    s = perm(lambda x, y: (-y, x - y), (1, 2, 0))
    return a, b, t, s


def _affine_entry(n: int) -> MarkedGroup:
    a, b, t, s = affine_s3_generators(n)
    N = 2 ** n
    G = PermGroup([a, b, t, s], N * N + 3)
    return MarkedGroup(f"c{N}c{N}-s3", G, (a, b, t),
                       f"(C_{N} x C_{N}) : S_3, affine on (Z/{N})^2 plus 3 points; base subgroup essential",
                       {"s": s})


def _gl2_entry() -> MarkedGroup:
    q = 5
    vecs = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    index = {v: k for k, v in enumerate(vecs)}

    def mat(m):
        (p, r), (u, w) = m
        return Perm(index[((p * x + r * y) % q, (u * x + w * y) % q)] for x, y in vecs)

    a = mat(((2, 0), (0, 1)))
    b = mat(((1, 0), (0, 2)))
    t = mat(((0, 1), (1, 0)))
    u = mat(((1, 1), (0, 1)))
    G = PermGroup([a, b, t, u], len(vecs))
    return MarkedGroup("gl2-5", G, (a, b, t),
                       "GL(2,5) on the 24 nonzero vectors of F_5^2; the quaternion central product class is essential")


BUILTIN: dict[str, CatalogEntry] = {
    "wreathP-n2": CatalogEntry("wreathP-n2", "wreathed(2)", 32, "C_4 wr C_2", lambda: _wreath_entry(2)),
    "wreathP-n3": CatalogEntry("wreathP-n3", "wreathed(3)", 128, "C_8 wr C_2", lambda: _wreath_entry(3)),
    "c4c4-s3": CatalogEntry("c4c4-s3", "semidirect(C4xC4, S3)", 96, "(C_4 x C_4) : S_3",
                            lambda: _affine_entry(2)),
    "c8c8-s3": CatalogEntry("c8c8-s3", "semidirect(C8xC8, S3)", 384, "(C_8 x C_8) : S_3",
                            lambda: _affine_entry(3)),
    "gl2-5": CatalogEntry("gl2-5", "from_generators(GL(2,5) on F_5^2 - 0)", 480, "GL(2,5)", _gl2_entry),
}


# -- catalog files -----------------------------------------------------------------

@dataclass
class CatalogFile:
    id: str
    expected_order: int
    generators: list[Perm]
    degree: int
    marking: tuple[int, int, int] | None = None
    notes: str = ""

    def build(self) -> MarkedGroup:
        G = PermGroup(self.generators, self.degree)
        if G.order != self.expected_order:
            raise DomainError(f"{self.id}: generated group has order {G.order}, expected {self.expected_order}")
        mark = None
        if self.marking is not None:
            mark = tuple(self.generators[k] for k in self.marking)
        return MarkedGroup(self.id, G, mark, self.notes)

    def render(self) -> str:
        lines = [f"id {self.id}", f"expected_order {self.expected_order}", f"degree {self.degree}"]
        if self.marking is not None:
            lines.append("marking " + " ".join(map(str, self.marking)))
        if self.notes:
            lines.append(f"notes {self.notes}")
        lines += [str(g) for g in self.generators]
        return "\n".join(lines) + "\n"


def _int_arg(tok: str, line: int, col: int) -> int:
    if not tok.isdigit():
        raise ParseError(f"expected a non-negative integer, got {tok!r}", line, col)
    return int(tok)


def parse_catalog_text(text: str) -> CatalogFile:
    """Parse the catalog grammar; errors carry 1-based line and column numbers."""
    ident = None
    order = None
    degree = None
    marking = None
    notes = ""
    raw_gens: list[tuple[list[list[int]], int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col0 = len(line) - len(stripped) + 1
        if stripped.startswith("("):
            try:
                cycles = parse_cycles(stripped)
            except ParseError as exc:
                raise ParseError(str(exc).split(": ", 1)[-1], lineno,
                                 col0 - 1 + (exc.column or 1)) from None
            raw_gens.append((cycles, lineno))
            continue
        parts = stripped.split(None, 1)
        key = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        rest_col = col0 + len(key) + (len(stripped[len(key):]) - len(stripped[len(key):].lstrip()))
        if ident is None and key != "id":
            raise ParseError("the first directive must be 'id'", lineno, col0)
        if key == "id":
            if ident is not None:
                raise ParseError("duplicate 'id'", lineno, col0)
            if not rest or len(rest.split()) != 1:
                raise ParseError("'id' takes exactly one name", lineno, rest_col)
            ident = rest.strip()
        elif key == "expected_order":
            order = _int_arg(rest.strip(), lineno, rest_col)
            if order < 1:
                raise ParseError("expected_order must be positive", lineno, rest_col)
        elif key == "degree":
            degree = _int_arg(rest.strip(), lineno, rest_col)
            if degree < 1:
                raise ParseError("degree must be positive", lineno, rest_col)
        elif key == "marking":
            toks = rest.split()
            if len(toks) != 3:
                raise ParseError("'marking' takes three generator indices", lineno, rest_col)
            marking = tuple(_int_arg(tk, lineno, rest_col) for tk in toks)
        elif key == "notes":
            notes = rest.strip()
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, col0)
    if ident is None:
        raise ParseError("missing 'id' directive", 1, 1)
    if order is None:
        raise ParseError("missing 'expected_order' directive", 1, 1)
    top = max((x for cyc, _ in raw_gens for c in cyc for x in c), default=-1) + 1
    if degree is None:
        if top == 0:
            raise ParseError("degree required when no generator moves a point", 1, 1)
        degree = top
    gens = []
    for cycles, lineno in raw_gens:
        try:
            gens.append(Perm.from_cycles(cycles, degree))
        except DomainError as exc:
            raise ParseError(str(exc), lineno, 1) from None
    if marking is not None and any(k >= len(gens) for k in marking):
        raise ParseError("marking index out of range", 1, 1)
    return CatalogFile(ident, order, gens, degree, marking, notes)


def user_catalog_dir() -> Path:
    env = os.environ.get(CATALOG_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".local" / "share" / "wreathbrauer" / "catalog"


def user_entries() -> dict[str, CatalogFile]:
    d = user_catalog_dir()
    out: dict[str, CatalogFile] = {}
    if d.is_dir():
        for path in sorted(d.glob("*.cat")):
            cf = parse_catalog_text(path.read_text())
            out[cf.id] = cf
    return out


def add_from_file(path: str | os.PathLike) -> CatalogFile:
    """Validate a catalog file (order check included) and store it in the user catalog."""
    cf = parse_catalog_text(Path(path).read_text())
    if cf.id in BUILTIN:
        raise DomainError(f"{cf.id} clashes with a built-in entry")
    cf.build()
    d = user_catalog_dir()
    d.mkdir(parents=True, exist_ok=True)
    (d / f"{cf.id}.cat").write_text(cf.render())
    return cf


def list_ids() -> list[str]:
    return sorted(set(BUILTIN) | set(user_entries()))


def load(ident: str) -> MarkedGroup:
    if ident in BUILTIN:
        return BUILTIN[ident].build()
    users = user_entries()
    if ident in users:
        return users[ident].build()
    raise DomainError(f"unknown catalog id {ident!r}")


__all__ = [
    "MarkedGroup", "CatalogEntry", "CatalogFile", "BUILTIN", "CATALOG_DIR_ENV",
    "affine_s3_generators", "parse_catalog_text", "add_from_file", "list_ids", "load",
    "user_catalog_dir", "user_entries",
]
