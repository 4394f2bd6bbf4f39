"""Core data model for ternary constant-composition codes and group divisible codes.

Points are dense integers in [0, n).  A codeword is stored as one support set
per nonzero symbol; the implied vector has symbol j+1 on ``supports[j]`` and 0
elsewhere.  All types are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "AmbientLengthError",
    "Code",
    "Codeword",
    "Composition",
    "Gdc",
    "GdcType",
    "GroupPartition",
    "VerificationReport",
    "Violation",
    "composition_of",
    "gdc_type",
    "hamming_distance",
    "read_code_text",
    "verify_code",
    "verify_gdc",
    "write_code_text",
]

# Pair scans switch to the numpy kernel above this word count.
_NUMPY_PAIR_THRESHOLD = 300


class AmbientLengthError(ValueError):
    """Raised when two codewords with different ambient lengths are compared."""


@dataclass(frozen=True)
class Composition:
    """Symbol multiplicities [w1, ..., w_{q-1}].

    The catalog convention keeps these normalized (non-increasing); values
    read straight off a codeword may be unordered, and the bounds that
    require normalization check :attr:`is_normalized` themselves.
    """

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        w = self.weights
        if not w or any(x <= 0 for x in w):
            raise ValueError(f"composition entries must be positive: {w}")

    @property
    def weight(self) -> int:
        return sum(self.weights)

    @property
    def is_normalized(self) -> bool:
        w = self.weights
        return all(w[i] >= w[i + 1] for i in range(len(w) - 1))

    @staticmethod
    def parse(text: str) -> "Composition":
        return Composition(tuple(int(x) for x in text.replace(" ", "").split(",")))

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.weights)


COMP_22 = Composition((2, 2))
COMP_31 = Composition((3, 1))


class Codeword:
    """A sparse ternary (or general q-ary) word: one sorted support per symbol.

    Construction canonicalizes (sorts each class) and validates disjointness
    and index range, so two equal words always compare and hash equal.
    """

    __slots__ = ("n", "supports", "_mask_all", "_masks", "_hash")

    def __init__(self, supports: Sequence[Iterable[int]], n: int):
        sup = tuple(tuple(sorted(cls)) for cls in supports)
        seen: set[int] = set()
        total = 0
        for cls in sup:
            for x in cls:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} outside ambient range [0, {n})")
            total += len(cls)
            seen.update(cls)
            if len(cls) != len(set(cls)):
                raise ValueError(f"repeated point within a symbol class: {cls}")
        if len(seen) != total:
            raise ValueError(f"symbol classes overlap: {sup}")
        self.n = n
        self.supports = sup
        masks = []
        for cls in sup:
            m = 0
            for x in cls:
                m |= 1 << x
            masks.append(m)
        self._masks = tuple(masks)
        m_all = 0
        for m in masks:
            m_all |= m
        self._mask_all = m_all
        self._hash = hash((n, sup))

    @property
    def weight(self) -> int:
        return sum(len(cls) for cls in self.supports)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(x for cls in self.supports for x in cls))

    def symbol_at(self, x: int) -> int:
        for j, cls in enumerate(self.supports):
            if x in cls:
                return j + 1
        return 0

    def relabel(self, mapping: Sequence[int], n: int | None = None) -> "Codeword":
        """Map every point through ``mapping`` (old index -> new index)."""
        return Codeword(
            tuple(tuple(mapping[x] for x in cls) for cls in self.supports),
            self.n if n is None else n,
        )

    def canonical(self) -> "Codeword":
        return self

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Codeword)
            and self.n == other.n
            and self.supports == other.supports
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = " ; ".join(",".join(str(x) for x in cls) for cls in self.supports)
        return f"<{inner}>"


def hamming_distance(u: Codeword, v: Codeword) -> int:
    """Hamming distance between the implied full vectors."""
    if u.n != v.n:
        raise AmbientLengthError(f"ambient lengths differ: {u.n} != {v.n}")
    same = 0
    for j in range(min(len(u._masks), len(v._masks))):
        same += (u._masks[j] & v._masks[j]).bit_count()
    return (u._mask_all | v._mask_all).bit_count() - same


def composition_of(u: Codeword) -> Composition:
    """Class sizes as stored (no re-sorting)."""
    return Composition(tuple(len(cls) for cls in u.supports))


@dataclass(frozen=True)
class Violation:
    kind: str  # distance | composition | group-hit | duplicate | size-mismatch | type-mismatch
    witness: tuple
    measured: object

    def __str__(self) -> str:
        return f"{self.kind} at {self.witness}: {self.measured}"


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "OK"
        head = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        return f"{len(self.violations)} violation(s): {head}{more}"


class Code:
    """A set of codewords with a declared length, composition and distance.

    Words are kept in construction order and may contain duplicates; the
    verifier flags duplicates rather than silently removing them.
    """

    __slots__ = ("n", "composition", "distance", "words")

    def __init__(self, n: int, composition: Composition, distance: int,
                 words: Iterable[Codeword]):
        self.n = n
        self.composition = composition
        self.distance = distance
        self.words = tuple(words)

    def __len__(self) -> int:
        return len(self.words)

    def word_set(self) -> frozenset[Codeword]:
        return frozenset(self.words)

    def __repr__(self) -> str:
        return (f"Code(n={self.n}, comp=[{self.composition}], d={self.distance}, "
                f"size={len(self.words)})")


@dataclass(frozen=True)
class GroupPartition:
    """Disjoint groups covering [0, n)."""

    groups: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(groups: Iterable[Iterable[int]]) -> "GroupPartition":
        return GroupPartition(tuple(tuple(sorted(g)) for g in groups))

    @staticmethod
    def singletons(n: int) -> "GroupPartition":
        return GroupPartition(tuple((i,) for i in range(n)))

    def n_points(self) -> int:
        return sum(len(g) for g in self.groups)

    def validate(self, n: int) -> None:
        seen: set[int] = set()
        for g in self.groups:
            if not g:
                raise ValueError("empty group in partition")
            seen.update(g)
        if len(seen) != self.n_points() or seen != set(range(n)):
            raise ValueError("groups do not partition [0, n)")

    def group_of(self) -> dict[int, int]:
        gid = {}
        for i, g in enumerate(self.groups):
            for x in g:
                gid[x] = i
        return gid


class Gdc:
    """A code plus a coordinate partition; every word meets each group at most once."""

    __slots__ = ("code", "partition")

    def __init__(self, code: Code, partition: GroupPartition):
        self.code = code
        self.partition = partition

    @property
    def n(self) -> int:
        return self.code.n

    def __len__(self) -> int:
        return len(self.code)

    def as_code(self) -> Code:
        """Forget the group structure (a GDC is in particular a plain code)."""
        return self.code

    def __repr__(self) -> str:
        return f"Gdc({self.code!r}, type={gdc_type(self)})"


@dataclass(frozen=True)
class GdcType:
    """Multiset of group sizes; compares by multiset, prints in exponential form."""

    factors: tuple[tuple[int, int], ...]  # (size, multiplicity), ascending by size

    @staticmethod
    def of_sizes(sizes: Iterable[int]) -> "GdcType":
        counts: dict[int, int] = {}
        for s in sizes:
            counts[s] = counts.get(s, 0) + 1
        return GdcType(tuple(sorted(counts.items())))

    @staticmethod
    def parse(text: str) -> "GdcType":
        sizes: list[int] = []
        for part in text.split():
            if "^" in part:
                base, exp = part.split("^")
                sizes.extend([int(base)] * int(exp))
            else:
                sizes.append(int(part))
        return GdcType.of_sizes(sizes)

    def total_points(self) -> int:
        return sum(s * m for s, m in self.factors)

    def sizes(self) -> list[int]:
        out: list[int] = []
        for s, m in self.factors:
            out.extend([s] * m)
        return out

    def __str__(self) -> str:
        return " ".join(f"{s}^{m}" for s, m in self.factors)


def gdc_type(g: Gdc) -> GdcType:
    g.partition.validate(g.n)
    return GdcType.of_sizes(len(grp) for grp in g.partition.groups)


def _pair_scan_python(words: Sequence[Codeword], distance: int) -> list[Violation]:
    out = []
    for i in range(len(words)):
        wi = words[i]
        for j in range(i + 1, len(words)):
            d = hamming_distance(wi, words[j])
            if d == 0:
                out.append(Violation("duplicate", (i, j), 0))
            elif d < distance:
                out.append(Violation("distance", (i, j), d))
    return out


def _pair_scan_numpy(words: Sequence[Codeword], distance: int, n: int) -> list[Violation]:
    # Gram-matrix distance kernel: d(u,v) = w_u + w_v - overlap - agreements.
    nclasses = max(len(w.supports) for w in words)
    nw = len(words)
    mats = []
    for s in range(nclasses):
        m = np.zeros((nw, n), dtype=np.float32)
        for i, w in enumerate(words):
            if s < len(w.supports):
                for x in w.supports[s]:
                    m[i, x] = 1.0
        mats.append(m)
    total = mats[0].copy()
    for m in mats[1:]:
        total += m
    weights = total.sum(axis=1)
    out: list[Violation] = []
    block = 512
    for lo in range(0, nw, block):
        hi = min(lo + block, nw)
        overlap = total[lo:hi] @ total.T
        agree = mats[0][lo:hi] @ mats[0].T
        for m in mats[1:]:
            agree += m[lo:hi] @ m.T
        dist = weights[lo:hi, None] + weights[None, :] - overlap - agree
        bad = np.argwhere(dist < distance - 0.5)
        for bi, j in bad:
            i = lo + int(bi)
            j = int(j)
            if j <= i:
                continue
            d = int(round(dist[bi, j]))
            if d == 0:
                out.append(Violation("duplicate", (i, j), 0))
            else:
                out.append(Violation("distance", (i, j), d))
    out.sort(key=lambda v: v.witness)
    return out


def verify_code(c: Code) -> VerificationReport:
    """Exhaustively check composition, length and all pairwise distances.

    Failures are report entries, never exceptions; the report is complete
    (the scan does not stop at the first violation).
    """
    violations: list[Violation] = []
    comp = c.composition.weights
    for i, w in enumerate(c.words):
        if w.n != c.n:
            violations.append(Violation("composition", (i,), f"ambient length {w.n} != {c.n}"))
        if tuple(len(cls) for cls in w.supports) != comp:
            violations.append(
                Violation("composition", (i,),
                          str(tuple(len(cls) for cls in w.supports))))
    if len(c.words) >= _NUMPY_PAIR_THRESHOLD and len({w.n for w in c.words}) == 1:
        violations.extend(_pair_scan_numpy(c.words, c.distance, c.n))
    else:
        violations.extend(_pair_scan_python(c.words, c.distance))
    return VerificationReport(tuple(violations))


def verify_gdc(g: Gdc, expected_type: GdcType | None = None,
               expected_size: int | None = None) -> VerificationReport:
    """verify_code plus the group-hit constraint and optional type/size checks."""
    violations = list(verify_code(g.code).violations)
    try:
        g.partition.validate(g.n)
    except ValueError as e:
        violations.append(Violation("group-hit", (), str(e)))
        return VerificationReport(tuple(violations))
    gid = g.partition.group_of()
    for i, w in enumerate(g.code.words):
        seen: dict[int, int] = {}
        for x in w.support():
            k = gid[x]
            if k in seen:
                violations.append(Violation("group-hit", (i, k), f"points {seen[k]} and {x}"))
            else:
                seen[k] = x
    if expected_size is not None and len(g.code.words) != expected_size:
        violations.append(Violation("size-mismatch", (), f"{len(g.code.words)} != {expected_size}"))
    if expected_type is not None:
        actual = gdc_type(g)
        if actual != expected_type:
            violations.append(Violation("type-mismatch", (), f"{actual} != {expected_type}"))
    violations.sort(key=lambda v: (v.witness, v.kind))
    return VerificationReport(tuple(violations))


# ---------------------------------------------------------------------------
# Text interchange format
#
# Header lines `n=`, `composition=`, `distance=`, then an optional `groups=`
# block (one comma-separated group per line; ends at the first codeword line),
# then one codeword per line: symbol-1 points, `;`, symbol-2 points. `#`
# starts a comment.
# ---------------------------------------------------------------------------

def write_code_text(obj: Code | Gdc) -> str:
    code = obj.code if isinstance(obj, Gdc) else obj
    lines = [f"n={code.n}", f"composition={code.composition}", f"distance={code.distance}"]
    if isinstance(obj, Gdc):
        lines.append("groups=")
        for grp in obj.partition.groups:
            lines.append(",".join(str(x) for x in grp))
    for w in code.words:
        lines.append(" ; ".join(",".join(str(x) for x in cls) for cls in w.supports))
    return "\n".join(lines) + "\n"


def read_code_text(text: str) -> Code | Gdc:
    n = comp = dist = None
    groups: list[tuple[int, ...]] | None = None
    words: list[Codeword] = []
    in_groups = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            n = int(line[2:])
            continue
        if line.startswith("composition="):
            comp = Composition.parse(line.split("=", 1)[1])
            continue
        if line.startswith("distance="):
            dist = int(line.split("=", 1)[1])
            continue
        if line.startswith("groups="):
            groups = []
            in_groups = True
            continue
        if n is None or comp is None or dist is None:
            raise ValueError(f"codeword line before complete header: {line!r}")
        if ";" in line:
            in_groups = False
            classes = [
                tuple(int(x) for x in part.split(",") if x.strip() != "")
                for part in line.split(";")
            ]
            words.append(Codeword(classes, n))
        elif in_groups:
            assert groups is not None
            groups.append(tuple(int(x) for x in line.split(",")))
        else:
            raise ValueError(f"unparseable line: {line!r}")
    if n is None or comp is None or dist is None:
        raise ValueError("missing header (n=, composition=, distance=)")
    code = Code(n, comp, dist, words)
    if groups is not None:
        return Gdc(code, GroupPartition.of(groups))
    return code
