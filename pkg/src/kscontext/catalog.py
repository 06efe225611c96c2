"""Built-in data and the plain-text vector-set format.

Format, one basis per line::

    # comment
    basis B1: (1,0,0); (0,1,0); (0,0,1)

Entries are sums of terms ``q``, ``q*w``, ``q*w^2`` (``q`` an integer or
``p/r``; the ``*`` and a unit coefficient may be omitted), with ``w`` a
primitive cube root of unity.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .contextuality import ContextSet, ContextSetError, orthogonality_graph, validate_context_set
from .eisenstein import ONE, W2, ZERO, EisensteinScalar, Ket, format_scalar
from .graph import Graph, complement, johnson_graph

# The seven bases of the 21-ray KS set in d = 6, as printed (unnormalized).
_w, _w2 = "w", "w^2"
SEVEN_CONTEXT_TEXT = f"""\
# Seven orthogonal bases in dimension 6 sharing 21 rays.
basis B1: (1,0,0,0,0,0); (0,1,0,0,0,0); (0,0,1,0,0,0); (0,0,0,1,0,0); (0,0,0,0,1,0); (0,0,0,0,0,1)
basis B2: (1,0,0,0,0,0); (0,0,1,1,1,1); (0,1,0,1,{_w},{_w2}); (0,1,1,0,{_w2},{_w}); (0,1,{_w},{_w2},0,1); (0,1,{_w2},{_w},1,0)
basis B3: (0,1,0,0,0,0); (0,0,1,1,1,1); (1,0,0,1,{_w2},{_w}); (1,0,1,0,{_w},{_w2}); (1,0,{_w2},{_w},0,1); (1,0,{_w},{_w2},1,0)
basis B4: (0,0,1,0,0,0); (0,1,0,1,{_w},{_w2}); (1,0,0,1,{_w2},{_w}); (1,1,0,0,1,1); ({_w},{_w2},0,1,0,1); ({_w2},{_w},0,1,1,0)
basis B5: (0,0,0,1,0,0); (0,1,1,0,{_w2},{_w}); (1,0,1,0,{_w},{_w2}); (1,1,0,0,1,1); ({_w2},{_w},1,0,0,1); ({_w},{_w2},1,0,1,0)
basis B6: (0,0,0,0,1,0); (0,1,{_w},{_w2},0,1); (1,0,{_w2},{_w},0,1); ({_w},{_w2},0,1,0,1); ({_w2},{_w},1,0,0,1); (1,1,1,1,0,0)
basis B7: (0,0,0,0,0,1); (0,1,{_w2},{_w},1,0); (1,0,{_w},{_w2},1,0); ({_w2},{_w},0,1,1,0); ({_w},{_w2},1,0,1,0); (1,1,1,1,0,0)
"""


class VectorSetSyntaxError(ContextSetError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:/\d+)?)?\s*
        (?:(?P<star>\*)\s*)?
        (?P<unit>w(?:\s*\^\s*2)?)?\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str, line: int = 1, column: int = 1) -> EisensteinScalar:
    """Parse one entry such as ``1``, ``-w``, ``1/2*w^2`` or ``1+2w``."""
    pos = 0
    acc = ZERO
    first = True
    s = text
    if not s.strip():
        raise VectorSetSyntaxError("empty entry", line, column)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise VectorSetSyntaxError(f"unexpected {s[pos]!r}", line, column + pos)
        sign, coef, star, unit = m.group("sign", "coef", "star", "unit")
        if not first and sign is None:
            raise VectorSetSyntaxError("missing + or - between terms", line, column + pos)
        if coef is None and unit is None:
            raise VectorSetSyntaxError("term without a value", line, column + m.start())
        if star and (coef is None or unit is None):
            raise VectorSetSyntaxError("'*' must join a coefficient and w", line, column + m.start())
        q = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            q = -q
        if unit is None:
            term = EisensteinScalar(q)
        elif unit.replace(" ", "") == "w":
            term = EisensteinScalar(Fraction(0), q)
        else:
            term = W2 * q
        acc = acc + term
        first = False
        pos = m.end()
    return acc


def _parse_ket(text: str, line: int, column: int) -> Ket:
    body = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (body.startswith("(") and body.endswith(")")):
        raise VectorSetSyntaxError("vector must be written as (e1,...,ed)", line, column + lead)
    inner = body[1:-1]
    entries = []
    offset = column + lead + 1
    for part in inner.split(","):
        entries.append(parse_scalar(part, line, offset))
        offset += len(part) + 1
    try:
        return Ket(entries)
    except ValueError as exc:
        raise VectorSetSyntaxError(str(exc), line, column + lead) from None


_BASIS = re.compile(r"\s*basis\s+(?P<name>[^:\s]+)\s*:(?P<body>.*)$")


def parse_vector_set(text: str) -> ContextSet:
    """Parse the text format into a validated, deduplicated ContextSet."""
    names: list[str] = []
    bases: list[list[Ket]] = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        code = line.split("#", 1)[0]
        if not code.strip():
            continue
        m = _BASIS.match(code)
        if m is None:
            raise VectorSetSyntaxError("expected 'basis <name>: (...); ...'", lineno, 1)
        body_col = m.start("body") + 1
        kets = []
        offset = body_col
        for chunk in m.group("body").split(";"):
            if chunk.strip():
                ket = _parse_ket(chunk, lineno, offset)
                if dim is None:
                    dim = len(ket)
                elif len(ket) != dim:
                    raise VectorSetSyntaxError(
                        f"dimension mismatch: vector has {len(ket)} entries, expected {dim}",
                        lineno,
                        offset + len(chunk) - len(chunk.lstrip()),
                    )
                kets.append(ket)
            offset += len(chunk) + 1
        if not kets:
            raise VectorSetSyntaxError("basis without vectors", lineno, body_col)
        if m.group("name") in names:
            raise VectorSetSyntaxError(f"duplicate basis name {m.group('name')!r}", lineno, m.start("name") + 1)
        names.append(m.group("name"))
        bases.append(kets)
    if not bases:
        raise ContextSetError("no bases found")
    cs = _pair_labels(ContextSet.from_bases(bases, names))
    validate_context_set(cs)
    return cs


def render_vector_set(cs: ContextSet) -> str:
    lines = []
    for name, ctx in zip(cs.context_names, cs.contexts):
        kets = ["(" + ",".join(format_scalar(x) for x in cs.rays[r]) + ")" for r in ctx]
        lines.append(f"basis {name}: " + "; ".join(kets))
    return "\n".join(lines) + "\n"


def _pair_labels(cs: ContextSet) -> ContextSet:
    """Name each ray ``ij`` after its two bases when that is unambiguous."""
    members = [cs.contexts_of_ray(r) for r in range(len(cs.rays))]
    if len(cs.contexts) > 9 or any(len(m) != 2 for m in members):
        return cs
    labels = tuple("".join(str(c + 1) for c in m) for m in members)
    return ContextSet(cs.dimension, cs.rays, cs.contexts, cs.context_names, labels)


def builtin_seven_context() -> ContextSet:
    """The seven-basis, 21-ray KS set; ray ``ij`` is shared by bases i and j."""
    cs = parse_vector_set(SEVEN_CONTEXT_TEXT)
    report = validate_context_set(cs)
    if not (report.contexts == 7 and report.rays == 21 and report.pair_labeling):
        raise AssertionError("built-in seven-context set failed its integrity check")
    return cs


def ray_by_label(cs: ContextSet, label: str) -> Ket:
    return cs.rays[cs.ray_labels.index(label)]


def single_basis(d: int) -> ContextSet:
    basis = [Ket([ONE if i == j else ZERO for i in range(d)]) for j in range(d)]
    return ContextSet.from_bases([basis], ["B1"])


BUILTIN_GRAPH_NAMES = ("seven-context", "j52", "j72", "petersen", "pentagon", "k6")


def builtin_graph(name: str) -> tuple[Graph, list[str] | None]:
    """Named graph plus optional vertex labels (used for DOT export)."""
    if name == "seven-context":
        cs = builtin_seven_context()
        g, _ = orthogonality_graph(cs)
        return g, list(cs.ray_labels)
    if name == "j52":
        return johnson_graph(5, 2), None
    if name == "j72":
        return johnson_graph(7, 2), None
    if name == "petersen":
        return complement(johnson_graph(5, 2)), None
    if name == "pentagon":
        return Graph.cycle(5), None
    if name == "k6":
        return Graph.complete(6), None
    raise KeyError(f"unknown built-in graph {name!r}; choose from {', '.join(BUILTIN_GRAPH_NAMES)}")


def to_dot(g: Graph, labels: Sequence[str] | None = None, name: str = "G") -> str:
    labels = list(labels) if labels else [str(v) for v in range(g.n)]
    out = [f"graph {name} {{"]
    for v in range(g.n):
        out.append(f'  {v} [label="{labels[v]}"];')
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"

