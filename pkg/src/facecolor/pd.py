"""Graph PD notation for planar perfect-matching diagrams.

A diagram is written ``G[M[a,b,c,d], ..., V[x,y], ...]`` over positive
integer arc labels.  Each ``M`` tuple is one perfect matching edge: arcs
``a,b`` meet one endpoint and ``c,d`` the other, listed counterclockwise
around the edge, so the planar 0-smoothing joins ``(a,d)`` and ``(b,c)``
while the crossed 1-smoothing joins ``(a,c)`` and ``(b,d)``.  Each ``V``
tuple records one transversal crossing of two non-matching arcs in the
planar drawing.  Every arc label must occur exactly twice across the
``M`` slots (an arc has two ends, both at matching edges), and ``V``
labels must be known arcs.  Self-crossings ``V[x,x]`` (curls) are legal.

Vertex-free circles cannot be expressed as tuples; a diagram carries
them as a ``free_loops`` count (file format: a leading ``loops: k``
line).  Each free loop multiplies every bracket by n.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


class PdSyntaxError(ValueError):
    """Malformed diagram text; ``position`` is a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PdValidationError(ValueError):
    """A structurally well-formed diagram violating the arc invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class PmDiagram:
    """A perfect-matching diagram: matching 4-tuples and virtual 2-tuples."""

    matchings: tuple[tuple[int, int, int, int], ...]
    virtuals: tuple[tuple[int, int], ...] = ()
    free_loops: int = 0
    arc_labels: frozenset[int] = field(init=False, compare=False)

    def __post_init__(self):
        labels = frozenset(label for tup in self.matchings for label in tup)
        object.__setattr__(self, "arc_labels", labels)

    @property
    def num_matchings(self) -> int:
        return len(self.matchings)

    @property
    def num_virtuals(self) -> int:
        return len(self.virtuals)

    @property
    def num_arcs(self) -> int:
        return len(self.arc_labels)


def validate(diagram: PmDiagram) -> list[str]:
    """Return the list of invariant violations; empty means ok."""
    violations: list[str] = []
    counts = Counter(label for tup in diagram.matchings for label in tup)
    for label in sorted(counts):
        if label <= 0:
            violations.append(f"arc label {label} is not a positive integer")
        elif counts[label] != 2:
            violations.append(
                f"arc label {label} appears {counts[label]} times in matching "
                f"tuples (each arc has exactly two ends)"
            )
    known = set(counts)
    for x, y in diagram.virtuals:
        for label in (x, y):
            if label not in known:
                violations.append(f"virtual crossing label {label} is not an arc")
    if not diagram.matchings and not (diagram.free_loops and not diagram.virtuals):
        violations.append("diagram has no matching edges and no free loops")
    if diagram.free_loops < 0:
        violations.append("negative free loop count")
    return violations


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            raise PdSyntaxError(f"expected {literal!r}", self.pos)
        self.pos += len(literal)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise PdSyntaxError("expected a positive integer arc label", start)
        value = int(self.text[start : self.pos])
        if value <= 0:
            raise PdSyntaxError("arc labels must be positive", start)
        return value

    def tuple_body(self, arity: int) -> tuple[int, ...]:
        self.expect("[")
        items = [self.integer()]
        while len(items) < arity:
            self.expect(",")
            items.append(self.integer())
        self.expect("]")
        return tuple(items)


def parse(text: str, free_loops: int = 0) -> PmDiagram:
    """Parse one ``G[...]`` expression; raises on syntax or invariant failure."""
    scanner = _Scanner(text)
    scanner.expect("G")
    scanner.expect("[")
    matchings: list[tuple[int, int, int, int]] = []
    virtuals: list[tuple[int, int]] = []
    while True:
        head = scanner.peek()
        if head == "M":
            scanner.expect("M")
            matchings.append(scanner.tuple_body(4))  # type: ignore[arg-type]
        elif head == "V":
            scanner.expect("V")
            virtuals.append(scanner.tuple_body(2))  # type: ignore[arg-type]
        elif head == "]" and not matchings and not virtuals:
            break
        else:
            raise PdSyntaxError("expected an M[...] or V[...] item", scanner.pos)
        if scanner.peek() == ",":
            scanner.expect(",")
        else:
            break
    scanner.expect("]")
    scanner.skip_ws()
    if scanner.pos != len(scanner.text):
        raise PdSyntaxError("trailing input after closing ']'", scanner.pos)
    diagram = PmDiagram(tuple(matchings), tuple(virtuals), free_loops)
    violations = validate(diagram)
    if violations:
        raise PdValidationError(violations)
    return diagram


def serialize(diagram: PmDiagram) -> str:
    """Canonical text; ``parse(serialize(d)) == d`` (free loops travel separately)."""
    items = [f"M[{a},{b},{c},{d}]" for a, b, c, d in diagram.matchings]
    items += [f"V[{x},{y}]" for x, y in diagram.virtuals]
    return "G[" + ",".join(items) + "]"


def loads(text: str) -> PmDiagram:
    """Parse the file format: '#' comments, optional 'loops: k', one G[...]."""
    loops = 0
    body: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("loops:"):
            loops = int(line.split(":", 1)[1])
            continue
        body.append(line)
    joined = " ".join(body)
    if not joined:
        if loops > 0:
            return PmDiagram((), (), loops)
        raise PdSyntaxError("no diagram expression found", 0)
    return parse(joined, free_loops=loops)


def dumps(diagram: PmDiagram) -> str:
    text = serialize(diagram)
    if diagram.free_loops:
        return f"loops: {diagram.free_loops}\n{text}\n"
    return text + "\n"
