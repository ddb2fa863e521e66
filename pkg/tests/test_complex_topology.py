import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropline.complex_topology import (
    ResourceCapExceeded,
    betti_numbers,
    boundary_rows,
    build_complex,
    comb_to_tree,
    enumerate_combs,
    euler_check,
    full_report,
    homology_facets,
    homology_rank_formula,
    ordered_partitions,
    sort_facets,
    stirling2,
    tree_to_comb,
    verify_shelling,
)
from tropline.splits import Coloring, enumerate_facets

from oracles import all_splits, bicolored, brute_combs, maximal_compatible_sets, rational_rank, set_partitions

DATA = Path(__file__).parent / "data"


def oracle_facets(n, d):
    N = n + d
    verts = [s for s in all_splits(N) if bicolored(s, n, N)]
    return {F for F in maximal_compatible_sets(verts)} if verts else set()


class TestComplex:
    @pytest.mark.parametrize("n, d, count", [(2, 2, 2), (3, 3, 18), (3, 4, 42), (1, 4, 0), (4, 1, 0)])
    def test_vertex_counts(self, n, d, count):
        N = n + d
        assert len(build_complex(Coloring(n, d))) == count
        assert count == sum(bicolored(s, n, N) for s in all_splits(N))

    @pytest.mark.parametrize("n, d", [(2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (4, 3)])
    def test_flag_and_pure(self, n, d):
        cx = build_complex(Coloring(n, d))
        cliques = set(cx.check_pure())
        assert all(len(F) == n + d - 3 for F in cliques)
        assert cliques == {cx.face_of(t) for t in enumerate_facets(Coloring(n, d))}
        named = {frozenset(cx.vertices[i].members for i in F) for F in cliques}
        assert named == oracle_facets(n, d)

    def test_face_counts_33(self):
        assert build_complex(Coloring(3, 3)).face_counts() == [18, 54, 42]

    def test_faces_are_compatible_sets(self):
        cx = build_complex(Coloring(3, 3))
        for faces in cx.faces():
            for f in faces:
                assert cx.is_face(f)
                assert cx.tree_of(f).splits == {cx.vertices[i] for i in f}


class TestShelling:
    def test_frozen_sorted_order_33(self):
        want = json.loads((DATA / "sorted_facets_d3_n3.json").read_text())
        got = [[sorted(s.members) for s in t.sorted_splits()] for t in sort_facets(Coloring(3, 3))]
        assert got == want

    def test_two_facets(self):
        c = Coloring(2, 2)
        cx = build_complex(c)
        rep = verify_shelling(cx, sort_facets(c))
        assert rep.verified and rep.status == "verified"
        assert [len(x) for x in rep.witnesses] == [0, 1]
        assert len(homology_facets(rep)) == 1

    def test_bad_order_yields_counterexample(self):
        # a facet disjoint from the first one cannot follow it directly
        c = Coloring(3, 3)
        cx = build_complex(c)
        facets = sort_facets(c)
        found = False
        for i in range(len(facets)):
            for k in range(len(facets)):
                A, B = cx.face_of(facets[i]), cx.face_of(facets[k])
                if i != k and not (A & B):
                    order = [facets[i], facets[k]] + [f for m, f in enumerate(facets) if m not in (i, k)]
                    rep = verify_shelling(cx, order)
                    assert not rep.verified
                    j, kk = rep.counterexample
                    assert j < kk
                    assert rep.restriction(kk) <= rep.order[j]
                    assert rep.status == {"counterexample": [j, kk]}
                    found = True
                    break
            if found:
                break
        assert found

    def test_not_a_permutation(self):
        c = Coloring(3, 3)
        facets = sort_facets(c)
        with pytest.raises(ValueError):
            verify_shelling(build_complex(c), facets[:-1])
        with pytest.raises(ValueError):
            verify_shelling(build_complex(c), facets + facets[:1])

    def test_witness_checks_the_definition(self):
        c = Coloring(3, 3)
        rep = verify_shelling(build_complex(c), sort_facets(c))
        for k in range(len(rep.order)):
            for j in range(k):
                k2, x = rep.witness(j, k)
                C = rep.order[k]
                assert k2 < k and x in C and x not in rep.order[j]
                assert C - {x} <= rep.order[k2]

    @pytest.mark.parametrize("n, d", [(2, 2), (3, 3), (3, 4), (4, 3), (2, 5)])
    def test_homology_facets_are_the_combs(self, n, d):
        c = Coloring(n, d)
        cx = build_complex(c)
        rep = verify_shelling(cx, sort_facets(c))
        assert rep.verified
        combs = {cx.face_of(comb_to_tree(seq)) for seq in enumerate_combs(c)}
        assert set(homology_facets(rep)) == combs
        assert len(combs) == homology_rank_formula(c)


class TestCombs:
    @pytest.mark.parametrize("n, d", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 5), (4, 3)])
    def test_against_brute_force(self, n, d):
        assert list(enumerate_combs(Coloring(n, d))) == brute_combs(n, d)

    def test_round_trip(self):
        for seq in enumerate_combs(Coloring(3, 4)):
            assert tree_to_comb(comb_to_tree(seq)) == seq

    def test_non_comb(self):
        from tropline.splits import PhyloTree, Split
        assert tree_to_comb(PhyloTree(6, [Split(6, [2, 3]), Split(6, [4, 5])])) is None


class TestFormula:
    @pytest.mark.parametrize("m", range(0, 8))
    def test_stirling_against_partitions(self, m):
        counts = {}
        for p in set_partitions(range(m)):
            counts[len(p)] = counts.get(len(p), 0) + 1
        for k in range(0, m + 1):
            assert stirling2(m, k) == counts.get(k, 0)

    def test_stirling_examples(self):
        assert stirling2(3, 2) == 3 and stirling2(4, 2) == 7 and stirling2(0, 0) == 1

    def test_ordered_partitions(self):
        assert ordered_partitions(3, 2) == 6
        assert ordered_partitions(4, 4) == 24

    @pytest.mark.parametrize("n", range(3, 11))
    def test_three_row(self, n):
        assert homology_rank_formula(Coloring(n, 3)) == 2**n - 3

    def test_published_values(self):
        assert homology_rank_formula(Coloring(4, 4)) == 73
        assert homology_rank_formula(Coloring(5, 4)) == homology_rank_formula(Coloring(4, 5)) == 301
        assert homology_rank_formula(Coloring(1, 5)) == 0

    @given(st.integers(1, 12), st.integers(1, 12))
    def test_symmetric(self, n, d):
        assert homology_rank_formula(Coloring(n, d)) == homology_rank_formula(Coloring(d, n))


class TestHomology:
    @pytest.mark.parametrize("n, d, betti", [(2, 2, [1]), (3, 3, [0, 0, 5]), (3, 4, [0, 0, 0, 13]), (2, 3, [0, 1])])
    def test_rational(self, n, d, betti):
        cx = build_complex(Coloring(n, d))
        rep = betti_numbers(cx)
        assert rep.betti == betti
        assert rep.consistent and euler_check(rep, cx)

    def test_integer_no_torsion(self):
        rep = betti_numbers(build_complex(Coloring(3, 3)), coeff="integer")
        assert rep.betti == [0, 0, 5]
        assert all(t == [] for t in rep.torsion)

    def test_boundary_squares_to_zero(self):
        faces = build_complex(Coloring(3, 4)).faces()
        for k in range(1, len(faces)):
            upper, lower = boundary_rows(faces, k), boundary_rows(faces, k - 1)
            for row in upper:
                total = {}
                for i, a in row.items():
                    for j, b in lower[i].items():
                        total[j] = total.get(j, 0) + a * b
                assert all(v == 0 for v in total.values())

    def test_ranks_against_dense_oracle(self):
        faces = build_complex(Coloring(3, 3)).faces()
        from tropline import _linalg
        for k in range(1, len(faces)):
            rows = boundary_rows(faces, k)
            assert _linalg.exact_rank(rows, len(faces[k - 1])) == rational_rank(rows, len(faces[k - 1]))

    def test_empty_complex(self):
        cx = build_complex(Coloring(1, 5))
        rep = betti_numbers(cx)
        assert rep.betti == [0, 0, 0]
        assert euler_check(rep, cx)

    def test_cap(self):
        with pytest.raises(ResourceCapExceeded) as info:
            betti_numbers(build_complex(Coloring(3, 3)), cap=50)
        assert info.value.face_counts == [18, 54, 42]

    def test_bad_coefficients(self):
        with pytest.raises(ValueError):
            betti_numbers(build_complex(Coloring(2, 2)), coeff="mod2")


class TestFullReport:
    def test_33(self):
        r = full_report(Coloring(3, 3))
        assert r["betti"] == [0, 0, 5]
        assert r["rank_formula"] == r["comb_count"] == r["homology_facet_count"] == 5
        assert r["shelling"] == "verified" and r["agree"] and r["euler_check"]

    def test_degenerate(self):
        r = full_report(Coloring(5, 1))
        assert r["rank_formula"] == 0 and r["agree"]

    @pytest.mark.parametrize("n, d", [(2, 3), (2, 4)])
    def test_symmetric(self, n, d):
        a, b = full_report(Coloring(n, d)), full_report(Coloring(d, n))
        strip = lambda r: {k: v for k, v in r.items() if k not in ("d", "n")}  # noqa: E731
        assert strip(a) == strip(b)

    def test_formula_only(self):
        r = full_report(Coloring(6, 6), method="formula")
        assert "betti" not in r and r["rank_formula"] == homology_rank_formula(Coloring(6, 6))
