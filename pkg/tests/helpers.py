"""Shared test utilities: naive oracles and random circuit generation."""

from __future__ import annotations

import functools
import random

from qent.analyzer import apply_cx_at, apply_gate
from qent.circuit import I, Gate, GateKind, Seq, Tensor
from qent.domain import Partition, init_state

SINGLE_QUBIT = [GateKind.I, GateKind.X, GateKind.Y, GateKind.Z, GateKind.H, GateKind.T]
TWO_QUBIT = [GateKind.SW, GateKind.CX]
ALL_KINDS = SINGLE_QUBIT + TWO_QUBIT


class NaivePartition:
    """Set-of-frozensets partition, the independent oracle for Partition.

    Implemented directly from the set definitions of join (unite the two
    containing blocks) and split (move one element to a singleton), with
    no arrays or representatives involved.
    """

    def __init__(self, blocks):
        self.blocks = {frozenset(b) for b in blocks}

    @classmethod
    def singletons(cls, n):
        return cls({frozenset([i]) for i in range(n)})

    def _block_of(self, i):
        for block in self.blocks:
            if i in block:
                return block
        raise KeyError(i)

    def join(self, i, j):
        bi, bj = self._block_of(i), self._block_of(j)
        blocks = (self.blocks - {bi, bj}) | {bi | bj}
        return NaivePartition(blocks)

    def split(self, i):
        bi = self._block_of(i)
        blocks = self.blocks - {bi}
        rest = bi - {i}
        if rest:
            blocks.add(frozenset(rest))
        blocks.add(frozenset([i]))
        return NaivePartition(blocks)

    def swapped(self, i, j):
        sigma = {i: j, j: i}
        return NaivePartition({frozenset(sigma.get(q, q) for q in b) for b in self.blocks})

    def same_block(self, i, j):
        return j in self._block_of(i)

    def as_sorted_blocks(self):
        return sorted((sorted(b) for b in self.blocks), key=lambda b: b[0])

    def to_partition(self, n):
        return Partition.from_blocks(self.blocks, n)


def random_column(rng: random.Random, n: int, kinds=ALL_KINDS):
    """One circuit column spanning exactly n wires."""
    node = None
    width = 0
    while width < n:
        pool = kinds if n - width >= 2 else [k for k in kinds if k.height == 1]
        kind = rng.choice(pool)
        gate = Gate(kind)
        node = gate if node is None else Tensor(node, gate)
        width += kind.height
    return node


def random_circuit(rng: random.Random, n: int, columns: int, kinds=ALL_KINDS):
    """Random well-formed circuit: `columns` columns over n wires."""
    node = random_column(rng, n, kinds)
    for _ in range(columns - 1):
        node = Seq(node, random_column(rng, n, kinds))
    return node


def pad_at(gate: Gate, offset: int, n: int):
    """gate embedded at `offset` in an n-wire identity column."""
    parts = [I] * offset + [gate] + [I] * (n - offset - gate.height)
    return functools.reduce(Tensor, parts)


def pad_pair(a: Gate, a_off: int, b: Gate, b_off: int, n: int):
    """Two gates embedded side by side in one n-wire column."""
    parts = ([I] * a_off + [a] + [I] * (b_off - a_off - a.height)
             + [b] + [I] * (n - b_off - b.height))
    return functools.reduce(Tensor, parts)


# Worked example showing how the flawed leveling rule goes wrong: three
# qubits p, q, z at indices 0, 1, 2, with CX steps given as (control,
# target) wire pairs in either orientation. Step 5 (cx on q, z with a top
# control) is where the flawed rule wrongly marks q and z as leveled; the
# final cx then "cashes in" the bogus level and splits an entangled qubit.
PITFALL_OPS = [
    ("H", 0),
    ("CX", (0, 1)),
    ("CX", (1, 0)),
    ("H", 1),
    ("CX", (1, 2)),
    ("H", 0),
    ("CX", (0, 1)),
    ("CX", (2, 1)),
]

# After each step: (labels, separability blocks, level blocks), for the
# flawed leveling rule. Row 0 is the initial state.
PITFALL_UNSAFE_ROWS = [
    (["s", "s", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["d", "s", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["top", "top", "s"], [[0, 1], [2]], [[0, 1], [2]]),
    (["s", "top", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["s", "top", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["s", "top", "top"], [[0], [1, 2]], [[0], [1, 2]]),
    (["d", "top", "top"], [[0], [1, 2]], [[0], [1, 2]]),
    (["top", "top", "top"], [[0, 1, 2]], [[0], [1, 2]]),
    (["top", "s", "top"], [[0, 2], [1]], [[0], [1], [2]]),
]

# Same sequence under the corrected rules: identical through step 4, no
# level join at step 5, fully joined separability at the end.
PITFALL_LEVELS_ROWS = [
    (["s", "s", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["d", "s", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["top", "top", "s"], [[0, 1], [2]], [[0, 1], [2]]),
    (["s", "top", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["s", "top", "s"], [[0], [1], [2]], [[0], [1], [2]]),
    (["s", "top", "top"], [[0], [1, 2]], [[0], [1], [2]]),
    (["d", "top", "top"], [[0], [1, 2]], [[0], [1], [2]]),
    (["top", "top", "top"], [[0, 1, 2]], [[0], [1], [2]]),
    (["top", "top", "top"], [[0, 1, 2]], [[0], [1], [2]]),
]


def state_row(st):
    return ([label.value for label in st.labels], st.sep.blocks(), st.lvl.blocks())


def run_pitfall_trace(mode, collect=True):
    """Apply the 8-step pitfall sequence via apply_gate/apply_cx_at; return rows."""
    st = init_state(3)
    rows = [state_row(st)]
    for op, arg in PITFALL_OPS:
        if op == "H":
            apply_gate(st, GateKind.H, arg, mode)
        else:
            apply_cx_at(st, arg[0], arg[1], mode)
        if collect:
            rows.append(state_row(st))
    return st, rows
