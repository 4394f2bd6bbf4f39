"""Acceptance suite: one test per criterion, one printed pass line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the whole suite is also part of the default pytest run.
"""

import random
import time
from math import gcd

from cccodes.bounds import (johnson_bound, per_position_bound_31, upper_22,
                            upper_31)
from cccodes.catalog import spectrum
from cccodes.constructions import dm_to_gdc, srf_to_gdc
from cccodes.core import (Code, Codeword, Composition, GdcType, gdc_type,
                          verify_code, verify_gdc)
from cccodes.dataio import data_root, iter_manifest_paths, load_manifest
from cccodes.designs import (build_dm, read_design_text,
                             search_skew_room_frame, verify_dm,
                             verify_skew_room_frame)
from cccodes.group_action import develop
from cccodes.pipelines import run_pipeline
from cccodes.search import max_code

C22 = Composition((2, 2))
C31 = Composition((3, 1))

TABLE_I = {
    (2, 2): {4: 1, 5: 1, 6: 3, 7: 3, 8: 5, 9: 9, 10: 15},
    (3, 1): {4: 1, 5: 1, 6: 2, 7: 2, 8: 4, 9: 6, 10: 10},
}


def test_criterion_1_table_reproduction_by_search():
    t0 = time.monotonic()
    for comp_key, table in TABLE_I.items():
        comp = Composition(comp_key)
        for n, expected in table.items():
            out = max_code(n, 6, comp)
            assert out.status == "exact", (n, comp_key)
            assert out.size == expected, (n, comp_key, out.size)
            assert verify_code(out.witness).ok
            assert len(out.witness) == expected
    elapsed = time.monotonic() - t0
    assert elapsed < 900, f"search took {elapsed:.0f}s, budget is 900s"
    print(f"\nACCEPTANCE 1: PASS - independent search reproduces all 14 "
          f"small exact values in {elapsed:.1f}s")


def test_criterion_2_all_manifests_develop_and_verify():
    paths = iter_manifest_paths()
    assert len(paths) >= 120
    checked = 0
    sizes = {}
    for path in paths:
        m = load_manifest(path)
        assert m.expected_size is not None and m.expected_type is not None, path
        g = develop(m)  # enforces declared orbit lengths, size and type
        rep = verify_gdc(g, m.expected_type, m.expected_size)
        assert rep.ok, (path.name, rep.summary())
        sizes[path.name] = (len(g), str(gdc_type(g)))
        checked += 1
    # representative hard cases, sizes per the stated closed forms
    assert sizes["type-18^6+33^1.man"] == (
        (18 * 18 * 6 * 5 + 2 * 18 * 6 * 33) // 6, "18^6 33^1")
    assert sizes["type-1^36+5^1.man"] == (173, "1^36 5^1")
    assert sizes["type-1^54+7^1.man"] == (393, "1^54 7^1")
    print(f"\nACCEPTANCE 2: PASS - all {checked} shipped manifests develop to "
          f"their exact claimed size and type with zero violations")


def test_criterion_2b_manifest_sizes_match_family_closed_forms():
    """Double entry for the size fields: every manifest's expected size is
    re-derived here from its type via the family closed form (grouped codes)
    or the spectrum (plain codes), independently of the transcription."""
    # lemma-specific sizes with no uniform closed form (packings with
    # singleton groups beside one large group)
    special_31 = {
        "1^18 6^1": 54, "1^27 6^1": 108, "1^45 6^1": 270,
        "1^63 6^1": 504, "1^81 6^1": 810,
        "1^27 8^1": 123, "1^36 8^1": 200, "1^45 8^1": 295, "1^54 8^1": 408,
        "1^36 5^1": 173, "1^36 7^1": 190, "1^54 7^1": 393,
        "1^9 2^1": 11, "1^9 3^1": 12,
    }
    checked = 0
    for path in iter_manifest_paths():
        m = load_manifest(path)
        typ = m.expected_type
        assert typ is not None
        factors = typ.factors
        comp = m.composition.weights
        if len(factors) == 1 and factors[0][0] == 1:
            n = factors[0][1]
            e = spectrum(n, m.composition)
            want = e.exact if e.kind == "exact" else e.lo
        elif comp == (2, 2):
            if len(factors) == 1:
                g, u = factors[0]
                want = u * (u - 1) * g * g // 6
            else:
                (m1, me), (g, u) = factors if factors[0][1] == 1 else (factors[1], factors[0])
                assert me == 1
                want = (g * g * u * (u - 1) + 2 * g * u * m1) // 6
        else:
            key = str(typ)
            if key in special_31:
                want = special_31[key]
            elif len(factors) == 1:
                g, u = factors[0]
                want = g * g * u * (u - 1) // 9
            else:
                (m1, me), (g, u) = factors if factors[0][1] == 1 else (factors[1], factors[0])
                assert me == 1
                want = (g * g * u * (u - 1) + 2 * g * u * m1) // 9
        assert m.expected_size == want, (path.name, m.expected_size, want)
        checked += 1
    print(f"\nACCEPTANCE 2b: PASS - every declared manifest size ({checked}) "
          f"re-derives from its family closed form or the spectrum")


def test_criterion_3_difference_matrix_constructions():
    for g in (4, 5, 7, 8, 9, 12):
        gdc = dm_to_gdc(build_dm(g))
        rep = verify_gdc(gdc, GdcType.parse(f"{g}^4"), 2 * g * g)
        assert rep.ok, (g, rep.summary())
        assert gdc.code.composition == C22 and gdc.code.distance == 6
    count = 0
    for g in range(4, 102):
        if gcd(g, 6) == 1:
            assert verify_dm(build_dm(g)).ok, g
            count += 1
    print(f"\nACCEPTANCE 3: PASS - dm-based codes verified for g in "
          f"{{4,5,7,8,9,12}}; multiplicative matrices verified for all "
          f"{count} orders g <= 101 with gcd(g,6)=1")


def test_criterion_4_skew_room_frame_construction():
    shipped = read_design_text(
        (data_root() / "designs" / "srf-2^5.design").read_text())
    assert verify_skew_room_frame(shipped).ok
    regenerated = search_skew_room_frame([2] * 5)
    assert regenerated is not None
    assert regenerated.cells == shipped.cells, "search oracle drifted from data"
    gdc = srf_to_gdc(shipped)
    rep = verify_gdc(gdc, GdcType.parse("12^5"), 480)
    assert rep.ok, rep.summary()
    assert 480 == 6 * 2 * 2 * 5 * 4  # 6 t^2 u (u-1)
    print("\nACCEPTANCE 4: PASS - searched skew Room frame of type 2^5 "
          "yields a verified grouped code of type 12^5 and size 480")


def test_criterion_5_end_to_end_pipelines():
    from cccodes.catalog import build_optimal

    # (a) TD(4,5) + weighting by 4 + filling with 2^10
    g = run_pipeline("c22/n80.pipe",
                     build_code=lambda n, c: build_optimal(n, c))
    rep = verify_gdc(g, GdcType.parse("2^40"), 1040)
    assert rep.ok and len(g) == 2 * 13 * 40  # 2t(3t+1) at t=13

    # (b) type 19^4 + one adjoined point + optimal length-20 fillers
    c77 = build_optimal(77, C22)
    assert len(c77) == 722 + 4 * 60
    assert len(c77) == upper_22(77).value == (77 * 25) // 2  # checked, not assumed
    assert verify_code(c77).ok

    # (c) type 6^7 filled with optimal length-6 codes
    c42 = build_optimal(42, C31)
    assert len(c42) == upper_31(42).value == (42 * (41 // 3)) // 3 == 182
    assert verify_code(c42).ok
    print("\nACCEPTANCE 5: PASS - pipelines 2^40(1040), n=77(962=U), "
          "n=42(182=U) all verify")


def test_criterion_6_bound_identities():
    for n in range(4, 1001):
        if n % 9 in (4, 5, 7):
            assert per_position_bound_31(n).value == upper_31(n).value, n
        assert upper_22(n).value == johnson_bound(n, 6, C22).value, n
    print("\nACCEPTANCE 6: PASS - per-position bound matches the closed form "
          "on refined residues and the [2,2] closed form matches the "
          "recursion, for all 4 <= n <= 1000")


# Second, independent transcription of the final-classification exception
# sets (double-entry bookkeeping against cccodes.catalog).
_LIT22 = {4: 1, 5: 1, 7: 3, 8: 5, 11: 15}
_OPEN22 = {13, 16, 22, 59, 65, 71, 76, 88, 94, 124}
_MINUS1 = set()
_MINUS1 |= {14, 23, 29, 35, 41, 47, 53, 83, 347, 353, 359, 371, 377}
for _n in range(95, 324):
    if _n % 24 in (11, 17, 23):
        _MINUS1.add(_n)
_MINUS2 = {17, 89}
_OPEN31_T = {
    1: {2},
    4: {1, 5, 6, 7, 9, 10, 11, 13, 14, 15, 21, 25, 26,
        29, 33, 37, 41, 45, 49, 53, 57, 61, 65, 69, 73, 77, 81},
    5: {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 26},
    7: {4, 5, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 20, 26, 28},
    8: {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15, 23, 28},
}
_LIT31 = {7: 2, 8: 4}


def test_criterion_7_catalog_consistency():
    for n, v in TABLE_I[(2, 2)].items():
        assert spectrum(n, C22).exact == v
    for n, v in TABLE_I[(3, 1)].items():
        assert spectrum(n, C31).exact == v
    for n in range(4, 2001):
        e = spectrum(n, C22)
        u = upper_22(n).value
        assert e.lo <= e.hi
        if n in _LIT22:
            assert e.kind == "exact" and e.exact == _LIT22[n], n
        elif n in _OPEN22:
            assert e.kind == "open" and e.hi == u, n
        elif n in _MINUS1:
            assert (e.kind, e.lo, e.hi) == ("range", u - 1, u), n
        elif n in _MINUS2:
            assert (e.kind, e.lo, e.hi) == ("range", u - 2, u), n
        else:
            assert e.kind == "exact" and e.exact == u, n

        e = spectrum(n, C31)
        u = upper_31(n).value
        assert e.lo <= e.hi
        t, i = divmod(n, 9)
        if n in _LIT31:
            assert e.kind == "exact" and e.exact == _LIT31[n], n
        elif t in _OPEN31_T.get(i, set()):
            assert e.kind == "open" and e.hi == u, n
        else:
            assert e.kind == "exact" and e.exact == u, n
    print("\nACCEPTANCE 7: PASS - spectrum matches the small-value table, "
          "residue closed forms, and an independent transcription of the "
          "exception sets for all 4 <= n <= 2000")


def _brute_min_cross_distance(words, idx):
    """Distances of words[idx] against the rest, by direct full-vector
    recomputation (independent of the bitset kernel)."""
    n = words[0].n

    def vec(w):
        out = [0] * n
        for j, cls in enumerate(w.supports):
            for x in cls:
                out[x] = j + 1
        return out

    target = vec(words[idx])
    best = 10 ** 9
    for k, w in enumerate(words):
        if k == idx:
            continue
        v = vec(w)
        d = sum(1 for a, b in zip(target, v) if a != b)
        best = min(best, d)
    return best


def test_criterion_8_mutation_robustness():
    rng = random.Random(20260810)
    sources = ["c22/type-2^10.man", "c22/code-n19.man", "c22/code-n25.man",
               "c22/type-6^6.man", "c31/type-9^4.man", "c31/code-n28.man",
               "c31/type-1^36+5^1.man", "c22/type-2^13.man"]
    codes = []
    for rel in sources:
        g = develop(load_manifest(data_root() / "manifests" / rel))
        assert verify_code(g.code).ok, rel  # never flag the unmutated code
        codes.append(g.code)
    flagged_when_needed = 0
    mutations_that_lowered = 0
    for trial in range(100):
        code = codes[trial % len(codes)]
        words = list(code.words)
        i = rng.randrange(len(words))
        w = words[i]
        cls_idx = rng.randrange(len(w.supports))
        pos_idx = rng.randrange(len(w.supports[cls_idx]))
        support = set(w.support())
        candidates = [x for x in range(code.n) if x not in support]
        new_point = rng.choice(candidates)
        new_supports = [list(c) for c in w.supports]
        new_supports[cls_idx][pos_idx] = new_point
        words[i] = Codeword(tuple(tuple(c) for c in new_supports), code.n)
        mutated = Code(code.n, code.composition, code.distance, words)
        brute = _brute_min_cross_distance(words, i)
        report = verify_code(mutated)
        if brute < 6:
            mutations_that_lowered += 1
            assert not report.ok, (trial, brute)
            flagged_when_needed += 1
    assert mutations_that_lowered > 0
    print(f"\nACCEPTANCE 8: PASS - {mutations_that_lowered}/100 mutations "
          f"lowered a distance below 6 and every one was flagged; the "
          f"unmutated codes were never flagged")
