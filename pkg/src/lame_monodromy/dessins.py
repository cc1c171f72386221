"""Ramification passports and dessins d'enfants for the pulled-back covers.

An equation of index n whose projective monodromy is the rotation group of
signature (2, 3, p) yields a Belyi cover: of the elliptic curve (degree
|G| * n, genus 1) or of the projective line by the quotient curve (degree
|G| * n / 2, genus 0).  The singular points of the equation prescribe the
only ramification allowed beyond the uniform branching of the triangle
group, which pins down the passport combinatorially.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .geom import ClosureLimitError, InvalidInputError

_GROUP_ORDER = {(2, 3, 3): 12, (2, 3, 4): 24, (2, 3, 5): 60}
_VERTEX_ORDER = ("0", "1", "infinity")

_CENTRALIZER_CAP = 50_000


@dataclass(frozen=True)
class Passport:
    """Branching data over 0, 1, infinity for one Belyi cover."""

    signature: tuple[int, int, int]
    kind: str                         # "elliptic" | "algebraic"
    degree: int
    partitions: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    genus: int

    def partition(self, vertex: str) -> tuple[int, ...]:
        return self.partitions[_VERTEX_ORDER.index(vertex)]


@dataclass
class DessinMap:
    """A transitive permutation pair realising a passport."""

    passport: Passport
    sigma0: tuple[int, ...]
    sigma1: tuple[int, ...]
    sigma_inf: tuple[int, ...]


def check_riemann_hurwitz(degree: int, partitions) -> int:
    """Genus of a cover with the given branching; raises on inconsistency."""
    parts = [tuple(sorted(p, reverse=True)) for p in partitions]
    for p in parts:
        if any(x < 1 for x in p):
            raise InvalidInputError("partition parts must be positive")
        if sum(p) != degree:
            raise InvalidInputError(f"partition {p} does not sum to degree {degree}")
    total = sum(x - 1 for p in parts for x in p)
    two_minus_2g = 2 * degree - total
    if two_minus_2g % 2 != 0 or two_minus_2g > 2:
        raise InvalidInputError(f"no consistent genus: 2 - 2g = {two_minus_2g}")
    return (2 - two_minus_2g) // 2


def _branch_orders(signature) -> dict[str, int]:
    q2, q3, qp = signature
    return {"0": q2, "1": q3, "infinity": qp}


def passport_for(
    n,
    signature: tuple[int, int, int],
    kind: str = "algebraic",
    diagnostics: list[str] | None = None,
) -> list[Passport]:
    """Passports consistent with an index-n equation of the given signature.

    The elliptic cover carries one singular point of angle defect 2n + 1;
    the genus-zero quotient carries three half-defect points and one point
    of defect (2n + 1) / 2.  Each must land on a branch vertex of order q
    with local multiplicity defect * q a positive integer; the remaining
    sheets are filled with unramified (index-q) points.  Returns all
    consistent passports (possibly none, with reasons in `diagnostics`).
    """
    n = Fraction(n)
    signature = tuple(signature)
    if signature not in _GROUP_ORDER:
        raise InvalidInputError(f"unsupported signature {signature}")
    if kind not in ("elliptic", "algebraic"):
        raise InvalidInputError("kind must be 'elliptic' or 'algebraic'")
    log = diagnostics if diagnostics is not None else []
    order = _GROUP_ORDER[signature]
    degree = order * n if kind == "elliptic" else order * n / 2
    if degree.denominator != 1 or degree <= 0:
        log.append(f"degree {degree} is not a positive integer")
        return []
    degree = int(degree)
    target_genus = 1 if kind == "elliptic" else 0
    if kind == "elliptic":
        singular = [Fraction(2 * n + 1)]
    else:
        singular = [Fraction(1, 2)] * 3 + [Fraction(2 * n + 1, 2)]
    orders = _branch_orders(signature)

    options: list[list[tuple[str, int]]] = []
    for defect in singular:
        placements = []
        for vertex, q in orders.items():
            nu = defect * q
            if nu.denominator == 1 and 0 < nu <= degree:
                placements.append((vertex, int(nu)))
        if not placements:
            log.append(f"singular point of defect {defect} fits over no vertex")
            return []
        options.append(placements)

    passports: set[Passport] = set()
    for assignment in itertools.product(*options):
        fibers = {v: [] for v in orders}
        for vertex, nu in assignment:
            fibers[vertex].append(nu)
        partitions = []
        ok = True
        for vertex in _VERTEX_ORDER:
            q = orders[vertex]
            rest = degree - sum(fibers[vertex])
            if rest < 0 or rest % q != 0:
                ok = False
                break
            partitions.append(
                tuple(sorted(fibers[vertex] + [q] * (rest // q), reverse=True))
            )
        if not ok:
            continue
        try:
            genus = check_riemann_hurwitz(degree, partitions)
        except InvalidInputError:
            continue
        if genus != target_genus:
            continue
        passports.add(
            Passport(
                signature=signature,
                kind=kind,
                degree=degree,
                partitions=tuple(partitions),
                genus=genus,
            )
        )
    if not passports:
        log.append("no assignment of singular points matches the target genus")
    return sorted(passports, key=lambda p: p.partitions)


# ---------------------------------------------------------------------------
# Permutation realisations
# ---------------------------------------------------------------------------


def _canonical_perm_of_type(partition: tuple[int, ...], degree: int) -> tuple[int, ...]:
    perm = list(range(degree))
    start = 0
    for part in partition:
        for i in range(part):
            perm[start + i] = start + (i + 1) % part
        start += part
    return tuple(perm)


def _perms_with_type(partition: tuple[int, ...], degree: int):
    """All permutations of {0..degree-1} with the given cycle type."""
    counts: dict[int, int] = {}
    for part in partition:
        counts[part] = counts.get(part, 0) + 1

    perm = [None] * degree

    def rec(available: list[int], counts: dict[int, int]):
        if not available:
            yield tuple(perm)
            return
        leader = available[0]
        rest = available[1:]
        for length in sorted(counts):
            if counts[length] == 0:
                continue
            counts[length] -= 1
            if length == 1:
                perm[leader] = leader
                yield from rec(rest, counts)
            else:
                for body in itertools.permutations(rest, length - 1):
                    cycle = (leader, *body)
                    for i, x in enumerate(cycle):
                        perm[x] = cycle[(i + 1) % length]
                    remaining = [x for x in rest if x not in body]
                    yield from rec(remaining, counts)
            counts[length] += 1

    yield from rec(list(range(degree)), counts)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p then q): x -> q[p[x]]."""
    return tuple(q[x] for x in p)


def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def _is_transitive(p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    n = len(p)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for y in (p[x], q[x]):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == n


def _centralizer(partition: tuple[int, ...], degree: int) -> list[tuple[int, ...]]:
    """Centralizer of the canonical permutation of the given type."""
    blocks = []
    start = 0
    for part in partition:
        blocks.append(list(range(start, start + part)))
        start += part
    gens = []
    identity = tuple(range(degree))
    for block in blocks:
        if len(block) > 1:
            perm = list(identity)
            for i, x in enumerate(block):
                perm[x] = block[(i + 1) % len(block)]
            gens.append(tuple(perm))
    for b1, b2 in zip(blocks, blocks[1:]):
        if len(b1) == len(b2):
            perm = list(identity)
            for x, y in zip(b1, b2):
                perm[x], perm[y] = y, x
            gens.append(tuple(perm))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                m = _compose(e, g)
                if m not in elements:
                    elements.add(m)
                    nxt.append(m)
                    if len(elements) > _CENTRALIZER_CAP:
                        raise ClosureLimitError("centralizer too large to enumerate")
        frontier = nxt
    return list(elements)


def enumerate_dessins(passport: Passport, cap: int = 12) -> list[DessinMap]:
    """All dessins with the given passport, up to relabelling of sheets.

    sigma0 is fixed as the canonical permutation of its cycle type; sigma1
    runs over permutations of its type with sigma_inf = (sigma0 sigma1)^-1
    of the right type and <sigma0, sigma1> transitive; results are reduced
    modulo the centralizer of sigma0.  Degrees above `cap` are refused
    (the search is factorial in the degree).
    """
    d = passport.degree
    if d > cap:
        raise ClosureLimitError(f"degree {d} exceeds enumeration cap {cap}")
    p0, p1, pinf = passport.partitions
    sigma0 = _canonical_perm_of_type(p0, d)
    central = _centralizer(p0, d)
    central_inv = [_inverse(c) for c in central]
    classes: dict[tuple[int, ...], DessinMap] = {}
    target_inf = tuple(sorted(pinf, reverse=True))
    for sigma1 in _perms_with_type(tuple(p1), d):
        prod = _compose(sigma0, sigma1)
        if _cycle_type(prod) != target_inf:
            continue
        if not _is_transitive(sigma0, sigma1):
            continue
        canon = min(
            _compose(ci, _compose(sigma1, c))
            for c, ci in zip(central, central_inv)
        )
        if canon not in classes:
            classes[canon] = DessinMap(
                passport=passport,
                sigma0=sigma0,
                sigma1=sigma1,
                sigma_inf=_inverse(prod),
            )
    return [classes[k] for k in sorted(classes)]


def _cycles(p: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def export_graph(dessin: DessinMap, format: str = "json"):
    """Describe a dessin as a bipartite graph: JSON dict or Graphviz dot.

    The graph has one black vertex per cycle of sigma0, one white vertex
    per cycle of sigma1, and one edge per dart joining its two cycles.
    """
    if format == "dot":
        black = _cycles(dessin.sigma0)
        white = _cycles(dessin.sigma1)
        owner0 = {dart: i for i, cyc in enumerate(black) for dart in cyc}
        owner1 = {dart: i for i, cyc in enumerate(white) for dart in cyc}
        lines = ["graph dessin {"]
        for i in range(len(black)):
            lines.append(f'  b{i} [shape=circle, style=filled, fillcolor=black, label=""];')
        for i in range(len(white)):
            lines.append(f'  w{i} [shape=circle, label=""];')
        for dart in range(dessin.passport.degree):
            lines.append(f'  b{owner0[dart]} -- w{owner1[dart]} [label="{dart}"];')
        lines.append("}")
        return "\n".join(lines)
    if format != "json":
        raise InvalidInputError(f"unknown export format {format!r}")
    cycles = _cycles
    return {
        "degree": dessin.passport.degree,
        "signature": list(dessin.passport.signature),
        "kind": dessin.passport.kind,
        "genus": dessin.passport.genus,
        "sigma0": list(dessin.sigma0),
        "sigma1": list(dessin.sigma1),
        "sigma_inf": list(dessin.sigma_inf),
        "black_vertices": cycles(dessin.sigma0),
        "white_vertices": cycles(dessin.sigma1),
        "faces": cycles(dessin.sigma_inf),
    }
