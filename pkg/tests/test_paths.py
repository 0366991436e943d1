import random

import pytest

from treeaa import (
    is_prefix,
    longest_common_prefix,
    run_legacy_path_finder,
    run_prefix_path_finder,
    supported_prefix,
)
from treeaa.adversaries import REGISTRY, AdversaryContext
from treeaa.errors import NoSupport
from treeaa.paths import (
    decode_tree_path,
    legacy_path_finder_machine,
    legacy_rounds,
    prefix_path_finder_machine,
)
from treeaa.simnet import GeneratorProgram
from treeaa.trees import LabeledTree
from treeaa.wire import encode_path

import oracles


class TestSupportedPrefix:
    def test_unanimous(self):
        entries = [(("a", "b"), 2)] * 4
        assert supported_prefix(entries, 2, 3) == ("a", "b")

    def test_majority_prefix(self):
        entries = [
            (("a", "b", "c"), 2),
            (("a", "b", "c"), 2),
            (("a", "b", "d"), 2),
            (("a",), 2),
        ]
        assert supported_prefix(entries, 2, 3) == ("a", "b")

    def test_invalid_entries_count_for_nothing(self):
        entries = [(("a", "b"), 2)] * 3 + [(None, 0)]
        assert supported_prefix(entries, 2, 3) == ("a", "b")

    def test_min_grade_filter(self):
        entries = [(("a", "b"), 2), (("a", "b"), 2), (("a", "b"), 1), (("a",), 2)]
        assert supported_prefix(entries, 2, 3) == ("a",)
        assert supported_prefix(entries, 1, 3) == ("a", "b")

    def test_no_support(self):
        entries = [(("a", "b"), 2), (("b", "a"), 2), (None, 0)]
        with pytest.raises(NoSupport):
            supported_prefix(entries, 2, 3)

    def test_matches_enumeration_oracle(self):
        rng = random.Random("prefix")
        labels = ["r", "x", "y", "z", "w"]
        for _ in range(300):
            entries = []
            for _ in range(rng.randint(1, 7)):
                if rng.random() < 0.15:
                    entries.append((None, rng.randint(0, 2)))
                else:
                    depth = rng.randint(1, 4)
                    path = ("r", *rng.sample(labels[1:], depth - 1))
                    entries.append((path, rng.randint(0, 2)))
            threshold = rng.randint(1, len(entries))
            min_grade = rng.randint(1, 2)
            if threshold <= len(entries) // 2:
                continue  # uniqueness needs a majority threshold
            expected = oracles.enumerate_supported_prefix(entries, min_grade, threshold)
            if expected is None:
                with pytest.raises(NoSupport):
                    supported_prefix(entries, min_grade, threshold)
            else:
                assert supported_prefix(entries, min_grade, threshold) == expected


class TestDecodeTreePath:
    def test_valid(self, eight_vertex_tree):
        path = eight_vertex_tree.path_between("v1", "v8")
        assert decode_tree_path(eight_vertex_tree, encode_path(path), "v1") == path

    def test_wrong_start(self, eight_vertex_tree):
        path = eight_vertex_tree.path_between("v2", "v8")
        assert decode_tree_path(eight_vertex_tree, encode_path(path), "v1") is None

    def test_non_path(self, eight_vertex_tree):
        assert decode_tree_path(eight_vertex_tree, encode_path(("v1", "v3")), "v1") is None
        assert decode_tree_path(eight_vertex_tree, b"\xde\xad", "v1") is None


def prefix_ctx(tree, n, t):
    hi = max(tree.vertices, key=lambda v: (tree.depth(v), v))
    return AdversaryContext(
        program_factory=lambda pid, v: GeneratorProgram(
            prefix_path_finder_machine(tree, n, t, pid, v)
        ),
        lo_input=tree.root,
        hi_input=hi,
        planned_rounds=3,
    )


def legacy_ctx(tree, n, t):
    hi = max(tree.vertices, key=lambda v: (tree.depth(v), v))
    return AdversaryContext(
        program_factory=lambda pid, v: GeneratorProgram(
            legacy_path_finder_machine(tree, n, t, pid, v)
        ),
        lo_input=tree.root,
        hi_input=hi,
        planned_rounds=legacy_rounds(tree, n, t),
    )


def check_prefix_finder_outputs(tree, pairs, honest_inputs):
    hull = tree.convex_hull(honest_inputs)
    lcp = tree.path_from_root(honest_inputs[0])
    for v in honest_inputs[1:]:
        lcp = longest_common_prefix(lcp, tree.path_from_root(v))
    values = list(pairs.values())
    for pair in values:
        assert pair.p and pair.q
        assert set(pair.p) & hull, "P misses the honest input hull"
        assert is_prefix(pair.p, pair.q)
        assert is_prefix(lcp, pair.p), "P does not extend the honest inputs' lcp"
    for a in values:
        for b in values:
            assert is_prefix(a.p, b.q), "cross-party prefix property"


class TestPrefixPathFinder:
    def test_unanimous_inputs(self, eight_vertex_tree):
        inputs = {pid: "v8" for pid in range(1, 5)}
        pairs, transcript = run_prefix_path_finder(eight_vertex_tree, 4, 1, inputs)
        expected = eight_vertex_tree.path_between("v1", "v8")
        assert transcript.rounds_used == 3
        for pair in pairs.values():
            assert pair.p == expected and pair.q == expected

    def test_two_honest_inputs_meet_at_lcp(self, eight_vertex_tree):
        inputs = {1: "v6", 2: "v8", 3: "v6", 4: "v8"}
        pairs, _ = run_prefix_path_finder(eight_vertex_tree, 4, 0, inputs)
        for pair in pairs.values():
            assert pair.p == ("v1", "v2")
            assert pair.q == ("v1", "v2")

    def test_registry_property_run(self, eight_vertex_tree):
        tree = eight_vertex_tree
        n, t = 4, 1
        labels = sorted(tree.vertices)
        for name in sorted(REGISTRY):
            for seed in range(15):
                rng = random.Random(f"fox:{name}:{seed}")
                inputs = {pid: rng.choice(labels) for pid in range(1, n + 1)}
                adversary = REGISTRY[name](prefix_ctx(tree, n, t))
                pairs, transcript = run_prefix_path_finder(tree, n, t, inputs, adversary, seed)
                assert transcript.rounds_used == 3
                honest_inputs = [inputs[pid] for pid in pairs]
                check_prefix_finder_outputs(tree, pairs, honest_inputs)


def check_legacy_outputs(tree, results, honest_inputs):
    hull = tree.convex_hull(honest_inputs)
    paths = [res.path for res in results.values()]
    longest = max(paths, key=len)
    for res in results.values():
        assert set(res.path) & hull, "path misses the honest input hull"
        assert is_prefix(res.path, longest)
        assert len(res.path) >= len(longest) - 1
    indices = [res.start_index for res in results.values()]
    for res in results.values():
        assert min(indices) <= res.landed_index <= max(indices)


class TestLegacyPathFinder:
    def test_unanimous_inputs(self, eight_vertex_tree):
        inputs = {pid: "v7" for pid in range(1, 5)}
        results, transcript = run_legacy_path_finder(eight_vertex_tree, 4, 1, inputs)
        expected = eight_vertex_tree.path_between("v1", "v7")
        assert transcript.rounds_used == legacy_rounds(eight_vertex_tree, 4, 1)
        for res in results.values():
            assert res.path == expected

    def test_euler_index_example(self, eight_vertex_tree):
        # honest inputs v3, v6, v5 enter with indices within {3..13}; every
        # reachable endpoint's path crosses the hull member v2.
        inputs = {1: "v3", 2: "v6", 3: "v5", 4: "v3"}
        results, _ = run_legacy_path_finder(eight_vertex_tree, 4, 0, inputs)
        euler = eight_vertex_tree.euler
        assert euler.index_of["v3"][0] == 3
        assert euler.index_of["v6"] == (4,)
        assert euler.index_of["v5"] == (13,)
        for res in results.values():
            assert 3 <= res.landed_index <= 13
            assert res.path[-1] == euler.vertex_at(res.landed_index)
            assert "v2" in res.path or res.path[-1] in ("v3", "v6")

    def test_index_range_paths_cross_hull(self):
        # Any landing inside the honest index window keeps the hull reachable.
        for seed in range(40):
            rng = random.Random(f"euler-window:{seed}")
            size = rng.randint(2, 14)
            tree = LabeledTree(oracles.random_edge_list(rng, size))
            euler = tree.euler
            members = set(rng.sample(sorted(tree.vertices), rng.randint(1, size)))
            hull = tree.convex_hull(members)
            positions = sorted(i for m in members for i in euler.index_of[m])
            for i in range(positions[0], positions[-1] + 1):
                path = tree.path_between(tree.root, euler.vertex_at(i))
                assert set(path) & hull

    def test_registry_property_run(self, eight_vertex_tree):
        tree = eight_vertex_tree
        n, t = 4, 1
        labels = sorted(tree.vertices)
        for name in sorted(REGISTRY):
            for seed in range(10):
                rng = random.Random(f"legacy:{name}:{seed}")
                inputs = {pid: rng.choice(labels) for pid in range(1, n + 1)}
                adversary = REGISTRY[name](legacy_ctx(tree, n, t))
                results, transcript = run_legacy_path_finder(tree, n, t, inputs, adversary, seed)
                assert transcript.rounds_used == legacy_rounds(tree, n, t)
                honest_inputs = [inputs[pid] for pid in results]
                check_legacy_outputs(tree, results, honest_inputs)
