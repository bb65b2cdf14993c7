"""Instance file formats: DIMACS .col ingestion and a plain-text
read/write format for evacuation instances.

DIMACS coloring files map onto evacuation instances with one packet per
edge line; repeated edge lines accumulate multiplicity.
"""

from __future__ import annotations

from .graph import EvacInstance, Topology


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_dimacs(text: str) -> EvacInstance:
    """Parse DIMACS .col content: 'c' comments, one 'p edge <n> <m>'
    problem line, then <m> lines 'e <u> <v>' with 1-based node ids."""
    n = None
    declared_m = None
    seen_edges = 0
    mult: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate problem line")
            if len(fields) != 4 or fields[1] not in ("edge", "edges", "col"):
                raise ParseError(lineno, f"malformed problem line {line!r}")
            try:
                n = int(fields[2])
                declared_m = int(fields[3])
            except ValueError:
                raise ParseError(lineno, f"non-integer counts in {line!r}") from None
            if n < 0 or declared_m < 0:
                raise ParseError(lineno, "negative counts")
        elif fields[0] == "e":
            if n is None:
                raise ParseError(lineno, "edge line before problem line")
            if len(fields) != 3:
                raise ParseError(lineno, f"malformed edge line {line!r}")
            try:
                u = int(fields[1])
                v = int(fields[2])
            except ValueError:
                raise ParseError(lineno, f"non-integer endpoint in {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, f"node id out of range in {line!r}")
            if u == v:
                raise ParseError(lineno, f"self-loop in {line!r}")
            key = (min(u, v) - 1, max(u, v) - 1)
            mult[key] = mult.get(key, 0) + 1
            seen_edges += 1
        else:
            raise ParseError(lineno, f"unrecognized line {line!r}")
    if n is None:
        raise ParseError(0, "missing problem line")
    if seen_edges != declared_m:
        raise ParseError(
            0, f"problem line declares {declared_m} edges but {seen_edges} found"
        )
    links = tuple(sorted(mult))
    topo = Topology(n=n, links=links)
    return EvacInstance(topo=topo, packets=tuple(mult[l] for l in links))


def dump_dimacs(instance: EvacInstance) -> str:
    """Serialize as .col with one edge line per packet (multiplicity
    unrolls into repeated lines; zero-multiplicity links are dropped)."""
    lines = [f"p edge {instance.topo.n} {instance.total_packets}"]
    for lid, (u, v) in enumerate(instance.topo.links):
        for _ in range(instance.packets[lid]):
            lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> EvacInstance:
    """Parse the native format: header 'n m', then m lines 'u v mult'
    with 0-based node ids."""
    lines = [
        (i, ln.strip())
        for i, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ParseError(0, "empty instance")
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(lineno, f"expected 'n m' header, got {header!r}")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(lineno, f"non-integer header {header!r}") from None
    if len(lines) - 1 != m:
        raise ParseError(lineno, f"header declares {m} links but {len(lines) - 1} lines follow")
    links: list[tuple[int, int]] = []
    packets: list[int] = []
    for lineno, ln in lines[1:]:
        fields = ln.split()
        if len(fields) != 3:
            raise ParseError(lineno, f"expected 'u v mult', got {ln!r}")
        try:
            u, v, mult = int(fields[0]), int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"node id out of range in {ln!r}")
        if mult < 0:
            raise ParseError(lineno, f"negative multiplicity in {ln!r}")
        links.append((u, v))
        packets.append(mult)
    try:
        topo = Topology(n=n, links=tuple(links))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None
    return EvacInstance(topo=topo, packets=tuple(packets))


def dump_instance(instance: EvacInstance) -> str:
    lines = [f"{instance.topo.n} {instance.topo.m}"]
    for lid, (u, v) in enumerate(instance.topo.links):
        lines.append(f"{u} {v} {instance.packets[lid]}")
    return "\n".join(lines) + "\n"
