import pytest

from minmaxfine import ConfigurationError, EmptyHeapError, MinMaxFineHeap, ReferenceDeque
from minmaxfine.oracle import (
    KEY_RANGES,
    Divergence,
    exhaustive_small,
    format_transcript,
    gen_workload,
    parse_transcript,
    run_differential,
)

FRONTIER = "I 1\nI 10\nI 2\nI 3\nI 4\nDM\n"


class TestReferenceDeque:
    def test_multiset(self):
        d = ReferenceDeque([3, 1, 3])
        d.insert(2)
        assert d.items == [1, 2, 3, 3]
        assert (d.find_min(), d.find_max()) == (1, 3)
        assert d.delete_max() == 3 and d.delete_min() == 1 and len(d) == 2

    def test_empty(self):
        with pytest.raises(EmptyHeapError):
            ReferenceDeque().delete_min()


class TestWorkload:
    def test_deterministic(self):
        assert gen_workload(7, 500).transcript() == gen_workload(7, 500).transcript()
        assert gen_workload(7, 500).transcript() != gen_workload(8, 500).transcript()

    def test_inserts_only(self):
        w = gen_workload(1, 300, (1, 0, 0))
        h = MinMaxFineHeap()
        assert run_differential(w, h) is None
        assert len(h) == 300

    def test_width_one(self):
        w = gen_workload(2, 400, key_range=KEY_RANGES[2])
        assert {op[1] for op in w if op[0] == "I"} == {7}

    def test_never_deletes_from_empty(self):
        size = 0
        for op in gen_workload(3, 5000, (0.1, 0.45, 0.45)):
            size += 1 if op[0] == "I" else -1
            assert size >= 0

    @pytest.mark.parametrize("mix", [(0.5, 0.5), (0.5, 0.5, 0.5), (1.2, -0.1, -0.1)])
    def test_bad_mix(self, mix):
        with pytest.raises(ConfigurationError):
            gen_workload(1, 10, mix)


class TestTranscripts:
    def test_round_trip(self):
        w = gen_workload(4, 200)
        assert parse_transcript(w.transcript()) == w.ops
        assert format_transcript(parse_transcript(FRONTIER)) == FRONTIER

    def test_comments_and_blanks(self):
        assert parse_transcript("# header\n\nI 3  # three\nDX\n") == [("I", 3), ("DX",)]

    @pytest.mark.parametrize("text,line", [("I 1\nI x\n", 2), ("DM\nPOP\n", 2), ("I\n", 1), ("DM 3\n", 1)])
    def test_errors_name_the_line(self, text, line):
        with pytest.raises(ConfigurationError, match=f"line {line}"):
            parse_transcript(text)


class TestDifferential:
    @pytest.mark.parametrize("structure", ["fine", "classic"])
    def test_uniform_mix(self, structure):
        assert run_differential(gen_workload(1, 20000), structure) is None

    def test_binheap(self):
        w = gen_workload(1, 20000, (0.5, 0.5, 0))
        assert run_differential(w, "binheap") is None

    def test_binheap_rejects_delete_max(self):
        with pytest.raises(ConfigurationError):
            run_differential(gen_workload(1, 100), "binheap")

    def test_unknown_structure(self):
        with pytest.raises(ConfigurationError):
            run_differential([], "treap")

    def test_frontier_hook_diverges(self):
        found = run_differential(parse_transcript(FRONTIER), MinMaxFineHeap(frontier_candidates=False))
        assert isinstance(found, Divergence)
        assert found.step == 5 and found.expected == 2
        assert "step 5" in str(found)

    def test_empty_deletes_agree(self):
        assert run_differential([("DM",), ("DX",), ("I", 1)], "fine") is None


class TestExhaustive:
    def test_fine(self):
        assert exhaustive_small(6) is None

    @pytest.mark.parametrize("structure", ["classic", "binheap"])
    def test_baselines(self, structure):
        assert exhaustive_small(5, structure) is None

    def test_trivial_cases(self):
        assert exhaustive_small(0) is None
        for x in (MinMaxFineHeap.build_from([4]),):
            assert x.find_min() == x.find_max() == 4
        for perm in ([1, 2], [2, 1]):
            h = MinMaxFineHeap.build_from(perm)
            assert h.delete_max() == 2 and h.delete_min() == 1

    def test_detects_frontier_bug(self):
        assert exhaustive_small(5, frontier_candidates=False) is not None

    def test_limit(self):
        with pytest.raises(ConfigurationError):
            exhaustive_small(10)
