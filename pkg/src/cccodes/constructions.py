"""Code-building combinators: direct constructions from skew Room frames and
difference matrices, and the four recursive constructions (filling groups,
adjoining points, Wilson-style weighting, inflation by a transversal design).

Point naming under combination is deterministic: outputs are relabeled onto
dense indices via sorted group order and sorted points, so repeated runs are
bit-for-bit reproducible.
"""

from __future__ import annotations



from .core import (Code, Codeword, Composition, Gdc, GdcType, GroupPartition,
                   gdc_type)
from .designs import (DifferenceMatrix, Gdd, RoomFrame, build_td, verify_dm,
                      verify_gdd, verify_skew_room_frame)

__all__ = [
    "ConstructionError",
    "IngredientProvider",
    "adjoin_points",
    "dm_to_gdc",
    "empty_code",
    "fill_groups",
    "fundamental",
    "inflate",
    "srf_to_gdc",
]


class ConstructionError(ValueError):
    pass


def empty_code(n: int, comp: Composition, distance: int = 6) -> Code:
    return Code(n, comp, distance, [])


def srf_to_gdc(f: RoomFrame, distance: int = 6) -> Gdc:
    """[2,2]-GDC(6) of type (6t)^u from a skew Room frame of type t^u.

    Points are (side symbol, level) pairs on S x Z6; each filled cell (r, c)
    holding {a, b} yields, for every level j, the two words
    <(a,j),(b,j);(c,1+j),(r,4+j)> and <(c,4+j),(r,1+j);(a,j),(b,j)>.
    """
    rep = verify_skew_room_frame(f)
    if not rep.ok:
        raise ConstructionError(f"invalid skew Room frame: {rep.summary()}")
    s = f.side
    n = 6 * s

    def pt(x: int, j: int) -> int:
        return 6 * x + j % 6

    words = []
    for (r, c) in sorted(f.cells):
        a, b = sorted(f.cells[(r, c)])
        for j in range(6):
            words.append(Codeword(((pt(a, j), pt(b, j)),
                                   (pt(c, 1 + j), pt(r, 4 + j))), n))
            words.append(Codeword(((pt(c, 4 + j), pt(r, 1 + j)),
                                   (pt(a, j), pt(b, j))), n))
    groups = [tuple(sorted(pt(x, j) for x in hole for j in range(6)))
              for hole in f.holes]
    return Gdc(Code(n, Composition((2, 2)), distance, words),
               GroupPartition.of(groups))


def dm_to_gdc(d: DifferenceMatrix, distance: int = 6) -> Gdc:
    """[2,2]-GDC(6) of type g^4 with size 2g^2 from a (g,4;1) difference matrix.

    Points are (row index, group element) on 4 groups of size g.  The second
    word family shifts the first two rows by a fixed nonzero element.
    """
    if d.k != 4:
        raise ConstructionError(f"need a (g,4;1)-DM, got k={d.k}")
    rep = verify_dm(d)
    if not rep.ok:
        raise ConstructionError(f"invalid difference matrix: {rep.summary()}")
    g = d.g
    n = 4 * g
    delta = 1  # any nonzero group element works; 1 is (1,0,...) in mixed radix

    def pt(i: int, v: int) -> int:
        return i * g + v

    words = []
    for j in range(g):
        col = [d.rows[i][j] for i in range(4)]
        for k in range(g):
            words.append(Codeword(
                ((pt(0, d.add(col[0], k)), pt(1, d.add(col[1], k))),
                 (pt(2, d.add(col[2], k)), pt(3, d.add(col[3], k)))), n))
            words.append(Codeword(
                ((pt(2, d.add(col[2], k)), pt(3, d.add(col[3], k))),
                 (pt(0, d.add(col[0], d.add(delta, k))),
                  pt(1, d.add(col[1], d.add(delta, k))))), n))
    groups = [tuple(range(i * g, (i + 1) * g)) for i in range(4)]
    return Gdc(Code(n, Composition((2, 2)), distance, words),
               GroupPartition.of(groups))


def _relabel_onto(obj: Code | Gdc, targets: list[int], n: int) -> tuple[list[Codeword], list[tuple[int, ...]]]:
    """Map a filler's points [0, len(targets)) onto ``targets`` (in order);
    returns relabeled words and relabeled groups (singletons for a Code)."""
    code = obj.code if isinstance(obj, Gdc) else obj
    if code.n != len(targets):
        raise ConstructionError(
            f"filler length {code.n} does not match slot of size {len(targets)}")
    words = [w.relabel(targets, n) for w in code.words]
    if isinstance(obj, Gdc):
        groups = [tuple(sorted(targets[x] for x in grp))
                  for grp in obj.partition.groups]
    else:
        groups = [(t,) for t in targets]
    return words, groups


def fill_groups(g: Gdc, fillers: dict[int, Code | Gdc]) -> Code | Gdc:
    """Fill every group of size s with ``fillers[s]`` relabeled onto it.

    The filler for size s must be an (s, d, w)-code (or a GDC, enabling nested
    fills); the result is a plain code when every remaining group is a
    singleton, else a GDC with the union of the filler partitions.
    """
    code = g.code
    if code.distance > 2 * (code.composition.weight - 1):
        raise ConstructionError("filling requires d <= 2(w-1)")
    words = list(code.words)
    out_groups: list[tuple[int, ...]] = []
    for grp in g.partition.groups:
        size = len(grp)
        if size not in fillers:
            raise ConstructionError(f"no filler for group size {size}")
        filler = fillers[size]
        fcode = filler.code if isinstance(filler, Gdc) else filler
        if fcode.composition != code.composition and len(fcode.words) > 0:
            raise ConstructionError("filler composition mismatch")
        w, grps = _relabel_onto(filler, list(grp), code.n)
        words.extend(w)
        out_groups.extend(grps)
    result = Gdc(Code(code.n, code.composition, code.distance, words),
                 GroupPartition.of(out_groups))
    if all(len(x) == 1 for x in result.partition.groups):
        return result.as_code()
    return result


def adjoin_points(g: Gdc, y: int, first_group: int,
                  first_code: Code | Gdc,
                  fillers: dict[int, Code | Gdc] | None = None) -> Code:
    """Adjoin y ideal points: the designated first group plus the ideal points
    receive a (g1+y)-code; every other group G plus the ideal points receives
    a GDC of type 1^{|G|} y^1 whose y-group lands on the ideal points.

    Filler point convention: indices [0, s) map onto the group's points in
    sorted order and [s, s+y) onto the ideal points, matching a type
    1^s y^1 GDC whose final group is the ideal set.
    """
    code = g.code
    if code.distance > 2 * (code.composition.weight - 1):
        raise ConstructionError("adjoining requires d <= 2(w-1)")
    if y == 0 and fillers is None:
        fillers = {}
    n_new = code.n + y
    ideal = list(range(code.n, n_new))
    words = [Codeword(w.supports, n_new) for w in code.words]
    for gi, grp in enumerate(g.partition.groups):
        targets = list(grp) + ideal
        if gi == first_group:
            filler: Code | Gdc = first_code
        else:
            assert fillers is not None
            size = len(grp)
            if size not in fillers:
                raise ConstructionError(f"no filler for group size {size}")
            filler = fillers[size]
            if y > 1:
                fcode = filler.code if isinstance(filler, Gdc) else filler
                if isinstance(filler, Gdc):
                    ygroups = [grp2 for grp2 in filler.partition.groups
                               if len(grp2) == y]
                    tail = tuple(range(size, size + y))
                    if tail not in ygroups:
                        raise ConstructionError(
                            "filler must be a GDC of type 1^s y^1 with the "
                            "y-group on its final points")
                else:
                    raise ConstructionError(
                        f"filler for size {size} must be a GDC of type 1^{size} {y}^1")
        w, _ = _relabel_onto(filler, targets, n_new)
        words.extend(w)
    return Code(n_new, code.composition, code.distance, words)


class IngredientProvider:
    """Explicit type-indexed lookup of ingredient GDCs for the weighting
    construction; the same type always resolves to the same realization."""

    def __init__(self, gdcs: list[Gdc] | None = None):
        self._by_type: dict[tuple[tuple[int, int], ...], Gdc] = {}
        for g in gdcs or []:
            self.add(g)

    def add(self, g: Gdc) -> None:
        self._by_type[gdc_type(g).factors] = g

    def get(self, typ: GdcType) -> Gdc:
        try:
            return self._by_type[typ.factors]
        except KeyError:
            raise ConstructionError(f"no ingredient of type {typ}") from None


def fundamental(master: Gdd, weights: list[int],
                provider: IngredientProvider) -> Gdc:
    """Wilson-style weighting: replace each master block A by an ingredient
    GDC of type [weights of A's points], placed on the points' fibers."""
    if len(weights) != master.n or any(w < 0 for w in weights):
        raise ConstructionError("need one nonnegative weight per master point")
    if all(w == 0 for w in weights):
        raise ConstructionError("all-zero weight function is degenerate")
    rep = verify_gdd(master)
    if not rep.ok:
        raise ConstructionError(f"invalid master design: {rep.summary()}")

    offset = [0] * (master.n + 1)
    for x in range(master.n):
        offset[x + 1] = offset[x] + weights[x]
    n = offset[master.n]

    words: list[Codeword] = []
    composition: Composition | None = None
    distance = 6
    for block in master.blocks:
        pts = [a for a in sorted(block) if weights[a] > 0]
        if len(pts) < 2:
            continue
        typ = GdcType.of_sizes(weights[a] for a in pts)
        ing = provider.get(typ)
        if composition is None and len(ing.code.words) > 0:
            composition = ing.code.composition
            distance = ing.code.distance
        # assign ingredient groups (sorted by size then first point) to block
        # points (sorted) with matching weights, deterministically
        groups_sorted = sorted(ing.partition.groups, key=lambda g2: (len(g2), g2))
        by_size: dict[int, list[tuple[int, ...]]] = {}
        for grp in groups_sorted:
            by_size.setdefault(len(grp), []).append(grp)
        mapping = [0] * ing.code.n
        for a in pts:
            grp = by_size[weights[a]].pop(0)
            for slot, x in enumerate(sorted(grp)):
                mapping[x] = offset[a] + slot
        words.extend(w.relabel(mapping, n) for w in ing.code.words)
    if composition is None:
        composition = Composition((2, 2))
    out_groups = []
    for grp in master.partition.groups:
        pts2 = [i for a in sorted(grp) for i in range(offset[a], offset[a + 1])]
        if pts2:
            out_groups.append(tuple(pts2))
    return Gdc(Code(n, composition, distance, words), GroupPartition.of(out_groups))


def inflate(g: Gdc, m: int, td: Gdd | None = None) -> Gdc:
    """Multiply a GDC by m through a TD(w, m): each word times each TD block,
    tuple position i landing at level given by the block's group-i point."""
    code = g.code
    w = code.composition.weight
    if td is None:
        td = build_td(w, m)
    sizes = {len(grp) for grp in td.partition.groups}
    if len(td.partition.groups) != w or sizes != {m}:
        raise ConstructionError(f"need a TD({w},{m}) to inflate")
    rep = verify_gdd(td)
    if not rep.ok:
        raise ConstructionError(f"invalid transversal design: {rep.summary()}")
    n = code.n * m

    def pt(x: int, level: int) -> int:
        return x * m + level

    # td points are (group i, value v) encoded as i*m + v
    blocks = [tuple(sorted(b)) for b in td.blocks]
    words = []
    for u in code.words:
        flat = [x for cls in u.supports for x in cls]
        k = len(u.supports[0])
        for b in blocks:
            levels = [x % m for x in b]
            newpts = [pt(x, levels[i]) for i, x in enumerate(flat)]
            words.append(Codeword((tuple(newpts[:k]), tuple(newpts[k:])), n))
    groups = [tuple(sorted(pt(x, lv) for x in grp for lv in range(m)))
              for grp in g.partition.groups]
    return Gdc(Code(n, code.composition, code.distance, words),
               GroupPartition.of(groups))
