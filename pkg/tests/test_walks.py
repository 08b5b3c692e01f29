"""Tree walk enumeration, canonical labeling, crossing detection and the
partition combinatorics."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srbm.polyalg import DomainError
from srbm.walks import (CycleError, EdgeWord, Step, canonical_word,
                        catalan_number, count_noncrossing,
                        edgewords_from_json, edgewords_to_json,
                        enumerate_tree_walks, has_abab, narayana_number,
                        set_partitions)


class TestEnumeration:
    def test_odd_adjacency_empty(self):
        assert list(enumerate_tree_walks("adjacency", 5)) == []

    def test_order_zero(self):
        words = list(enumerate_tree_walks("adjacency", 0))
        assert len(words) == 1 and words[0].edge_count == 0

    def test_adjacency_two(self):
        words = list(enumerate_tree_walks("adjacency", 2))
        assert len(words) == 1
        assert words[0].letters == ((0, False), (0, False))

    def test_every_word_is_tree(self):
        for model in ("adjacency", "laplacian"):
            for n in range(1, 7):
                for w in enumerate_tree_walks(model, n):
                    assert w.vertex_count == w.edge_count + 1
                    assert w.multiplicity == 1
                    assert len(w.letters) == n

    def test_no_duplicates(self):
        for model, n in (("adjacency", 8), ("laplacian", 6)):
            words = [w.letters for w in enumerate_tree_walks(model, n)]
            assert len(words) == len(set(words))

    def test_canonical_fixed_point(self):
        # re-canonicalizing an enumerated word must reproduce it
        for model, n in (("adjacency", 6), ("laplacian", 5)):
            for w in enumerate_tree_walks(model, n):
                steps, cur = [], 0
                # replay the word as raw steps on fresh vertex names
                adj = {}
                next_v = 1
                for eid, diag in w.letters:
                    if eid in adj:
                        a, b = adj[eid]
                        other = b if cur == a else a
                    else:
                        other = next_v
                        adj[eid] = (cur, other)
                        next_v += 1
                    if diag:
                        steps.append(Step("diag", other))
                    else:
                        steps.append(Step("off", other))
                        cur = other
                back = canonical_word(steps, start=0)
                assert back.letters == w.letters
                assert back.sign == w.sign

    def test_laplacian_sign(self):
        for n in range(1, 6):
            for w in enumerate_tree_walks("laplacian", n):
                offs = sum(1 for _, diag in w.letters if not diag)
                # closed walks traverse each edge evenly: sign always +1
                assert offs % 2 == 0
                assert w.sign == 1

    def test_unknown_model(self):
        with pytest.raises(DomainError):
            list(enumerate_tree_walks("petersen", 2))

    def test_adjacency_counts_grow(self):
        counts = [sum(1 for _ in enumerate_tree_walks("adjacency", n))
                  for n in (2, 4, 6, 8)]
        assert counts[0] == 1
        assert all(b > a for a, b in zip(counts, counts[1:]))


class TestCanonicalWord:
    def test_relabeling_invariance(self):
        # the same walk under a vertex permutation canonicalizes identically
        w1 = canonical_word([Step("off", 7), Step("off", 3),
                             Step("off", 7), Step("off", 0)], start=0)
        w2 = canonical_word([Step("off", 2), Step("off", 9),
                             Step("off", 2), Step("off", 5)], start=5)
        assert w1 == w2

    def test_cycle_detected(self):
        triangle = [Step("off", 1), Step("off", 2), Step("off", 0)]
        with pytest.raises(CycleError):
            canonical_word(triangle, start=0)

    def test_not_closed(self):
        with pytest.raises(ValueError):
            canonical_word([Step("off", 1)], start=0)

    def test_diag_only_walk(self):
        w = canonical_word([Step("diag", 4), Step("diag", 4)])
        assert w.letters == ((0, True), (0, True))

    def test_root_inference(self):
        steps = [Step("off", 8), Step("off", 1)]
        assert canonical_word(steps) == canonical_word(steps, start=1)


class TestAbab:
    def test_positive(self):
        assert has_abab([0, 1, 0, 1])
        assert has_abab([2, 0, 1, 0, 2, 1])

    def test_negative(self):
        assert not has_abab([0, 1, 1, 0])
        assert not has_abab([0, 0, 1, 1])
        assert not has_abab([0, 1, 0, 0])

    @given(st.lists(st.integers(min_value=0, max_value=3), min_size=0,
                    max_size=8))
    @settings(max_examples=80, deadline=None)
    def test_matches_bruteforce(self, seq):
        brute = any(
            seq[i] == seq[k] and seq[j] == seq[l] and seq[i] != seq[j]
            for i in range(len(seq)) for j in range(i + 1, len(seq))
            for k in range(j + 1, len(seq)) for l in range(k + 1, len(seq)))
        assert has_abab(seq) == brute


class TestPartitions:
    def test_bell_counts(self):
        bell = [1, 1, 2, 5, 15, 52, 203]
        for s in range(7):
            assert sum(1 for _ in set_partitions(s)) == bell[s]

    def test_rgs_valid(self):
        for rgs in set_partitions(5):
            seen_max = -1
            for v in rgs:
                assert v <= seen_max + 1
                seen_max = max(seen_max, v)

    def test_noncrossing_narayana(self):
        for s in range(1, 8):
            counts = count_noncrossing(s)
            for j in range(1, s + 1):
                assert counts.get(j, 0) == narayana_number(s, j)

    def test_narayana_catalan(self):
        for s in range(1, 15):
            assert sum(narayana_number(s, j) for j in range(1, s + 1)) \
                == catalan_number(s)

    def test_narayana_symmetry(self):
        for s in range(1, 10):
            for j in range(1, s + 1):
                assert narayana_number(s, j) == narayana_number(s, s + 1 - j)


class TestSerialization:
    def test_roundtrip(self):
        words = list(enumerate_tree_walks("laplacian", 4))
        back = edgewords_from_json(edgewords_to_json(words))
        assert back == words

    def test_cycle_guard_on_construction(self):
        with pytest.raises(CycleError):
            EdgeWord(((0, False),) * 2, 1, vertex_count=3, edge_count=1)
