"""Canonical partition encoding and abstract-state tests."""

from __future__ import annotations

import random

import pytest

from qent.domain import AbstractState, BasisLabel, Partition, init_state
from helpers import NaivePartition

S, D, TOP = BasisLabel.S, BasisLabel.D, BasisLabel.TOP


def all_set_partitions(n):
    """Every set partition of {0..n-1}, via restricted growth strings."""
    if n == 0:
        yield []
        return

    def grow(prefix, max_block):
        if len(prefix) == n:
            blocks = [[] for _ in range(max_block + 1)]
            for i, b in enumerate(prefix):
                blocks[b].append(i)
            yield blocks
            return
        for b in range(max_block + 2):
            yield from grow(prefix + [b], max(max_block, b))

    yield from grow([0], 0)


class TestEncoding:
    def test_array_encoding_example(self):
        p = Partition((0, 0, 2, 2, 4))
        assert p.blocks() == [[0, 1], [2, 3], [4]]

    def test_singletons(self):
        assert Partition.singletons(3).blocks() == [[0], [1], [2]]
        assert Partition.singletons(0).blocks() == []

    def test_same_block(self):
        p = Partition((0, 0, 0))
        assert p.blocks() == [[0, 1, 2]]
        assert p.same_block(0, 2)
        assert not Partition.singletons(3).same_block(0, 2)

    @pytest.mark.parametrize("n", range(7))
    def test_encode_decode_identity_exhaustive(self, n):
        """decode(encode(S)) == S for every partition of <= 6 elements."""
        count = 0
        for blocks in all_set_partitions(n):
            p = Partition.from_blocks(blocks, n)
            p.validate()
            assert p.blocks() == sorted((sorted(b) for b in blocks), key=lambda b: b[0])
            assert Partition.from_blocks(p.blocks(), n) == p
            count += 1
        expected_bell = {0: 1, 1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203}[n]
        assert count == expected_bell

    def test_from_blocks_rejects_bad_input(self):
        with pytest.raises(ValueError):
            Partition.from_blocks([[0, 1], [1, 2]], 3)
        with pytest.raises(ValueError):
            Partition.from_blocks([[0]], 2)
        with pytest.raises(IndexError):
            Partition.from_blocks([[0, 5]], 2)


class TestJoinSplit:
    def test_join_examples(self):
        assert Partition((0, 1, 2, 3, 4)).join(0, 1) == Partition((0, 0, 2, 3, 4))
        assert Partition((0, 0, 2, 2, 4)).join(1, 3) == Partition((0, 0, 0, 0, 4))

    def test_join_same_block_is_identity(self):
        p = Partition((0, 0, 2))
        assert p.join(0, 1) == p
        assert p.join(2, 2) == p

    def test_split_examples(self):
        assert Partition((0, 0, 2, 2, 4)).split(1) == Partition((0, 1, 2, 2, 4))
        assert Partition((0, 0, 0)).split(0) == Partition((0, 1, 1))

    def test_split_singleton_is_identity(self):
        p = Partition((0, 0, 2))
        assert p.split(2) == p

    def test_out_of_range(self):
        p = Partition.singletons(3)
        with pytest.raises(IndexError):
            p.join(0, 3)
        with pytest.raises(IndexError):
            p.split(-1)

    def test_join_commutes(self):
        rng = random.Random(13)
        for _ in range(300):
            n = rng.randint(2, 10)
            p = Partition.singletons(n)
            for _ in range(rng.randint(0, 6)):
                p = p.join(rng.randrange(n), rng.randrange(n))
            a, b = rng.randrange(n), rng.randrange(n)
            c, d = rng.randrange(n), rng.randrange(n)
            assert p.join(a, b).join(c, d) == p.join(c, d).join(a, b)

    def test_split_undoes_join_of_singletons(self):
        rng = random.Random(17)
        for _ in range(300):
            n = rng.randint(2, 10)
            p = Partition.singletons(n)
            for _ in range(rng.randint(0, 6)):
                p = p.join(rng.randrange(n), rng.randrange(n))
            singles = [i for i in range(n) if len([v for v in p.parent if v == p.parent[i]]) == 1]
            if len(singles) < 2:
                continue
            i, j = rng.sample(singles, 2)
            assert p.join(i, j).split(j) == p


class TestSwap:
    def test_symmetric_block_unchanged(self):
        p = Partition((0, 0))
        assert p.swapped(0, 1) == p

    def test_asymmetric_block(self):
        # {{0},{1,2}} with wires 0 and 1 exchanged becomes {{1},{0,2}}
        assert Partition((0, 1, 1)).swapped(0, 1) == Partition((0, 1, 0))

    def test_involution(self):
        rng = random.Random(19)
        for _ in range(200):
            n = rng.randint(2, 10)
            p = Partition.singletons(n)
            for _ in range(rng.randint(0, 8)):
                p = p.join(rng.randrange(n), rng.randrange(n))
            i = rng.randrange(n - 1)
            assert p.swapped(i, i + 1).swapped(i, i + 1) == p

    def test_state_swap(self):
        st = AbstractState([S, D], Partition.singletons(2), Partition.singletons(2))
        st.swap_adjacent(0)
        assert st.labels == [D, S]
        with pytest.raises(IndexError):
            st.swap_adjacent(1)

    def test_arbitrary_pairs_match_naive(self):
        # swapped() also accepts non-adjacent pairs; pin it to the oracle
        rng = random.Random(71)
        for _ in range(500):
            n = rng.randint(2, 12)
            p = Partition.singletons(n)
            naive = NaivePartition.singletons(n)
            for _ in range(rng.randint(1, 10)):
                i, j = rng.randrange(n), rng.randrange(n)
                if rng.random() < 0.5:
                    p, naive = p.join(i, j), naive.join(i, j)
                else:
                    p, naive = p.swapped(i, j), naive.swapped(i, j)
                p.validate()
                assert p.blocks() == naive.as_sorted_blocks()


class TestAgainstNaiveOracle:
    """Randomized operation sequences against the set-of-sets oracle."""

    def test_random_sequences(self):
        rng = random.Random(20240809)
        for _ in range(1500):
            n = rng.randint(1, 16)
            p = Partition.singletons(n)
            naive = NaivePartition.singletons(n)
            for _ in range(rng.randint(0, 24)):
                op = rng.choice(["join", "split", "swap"] if n >= 2 else ["split"])
                if op == "join":
                    i, j = rng.randrange(n), rng.randrange(n)
                    p, naive = p.join(i, j), naive.join(i, j)
                elif op == "split":
                    i = rng.randrange(n)
                    p, naive = p.split(i), naive.split(i)
                else:
                    i = rng.randrange(n - 1)
                    p, naive = p.swapped(i, i + 1), naive.swapped(i, i + 1)
                p.validate()
                assert p.blocks() == naive.as_sorted_blocks()
                assert p == naive.to_partition(n)


class TestAbstractState:
    def test_init_examples(self):
        st = init_state(3)
        assert st.labels == [S, S, S]
        assert st.sep == Partition((0, 1, 2))
        assert st.lvl == Partition((0, 1, 2))

        st1 = init_state(1)
        assert (st1.labels, st1.sep.parent, st1.lvl.parent) == ([S], (0,), (0,))

        st0 = init_state(0)
        assert st0.n == 0
        assert st0.sep.blocks() == []

    def test_init_rejects_negative(self):
        with pytest.raises(ValueError):
            init_state(-1)

    def test_copy_is_independent(self):
        st = init_state(2)
        snap = st.copy()
        st.labels[0] = TOP
        st.sep = st.sep.join(0, 1)
        assert snap.labels == [S, S]
        assert snap.sep == Partition.singletons(2)
