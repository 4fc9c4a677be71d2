"""Circuit language: syntax tree, parser, heights, and well-formedness.

A circuit is an expression over the gate alphabet I, X, Y, Z, H, T, SW, CX
and two infix operators:

    **   tensor (stack circuits on adjacent wires)
    oo   sequence (run circuits one after another on the same wires)

`**` binds tighter than `oo`; both are left-associative; parentheses
override. `#` starts a comment that runs to the end of the line.

The height of a circuit is the number of wires it spans. Single-qubit
gates have height 1, SW and CX height 2, a tensor stacks heights, and a
sequence keeps the height of its left operand. A circuit is well formed
when both sides of every `oo` span the same wires; CX always means
control on the lower wire, target directly below it (use SW chains to
reach other layouts).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union


class GateKind(Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    T = "T"
    SW = "SW"
    CX = "CX"

    @property
    def height(self) -> int:
        return 2 if self in (GateKind.SW, GateKind.CX) else 1


@dataclass(frozen=True)
class Gate:
    kind: GateKind

    @property
    def height(self) -> int:
        return self.kind.height


@dataclass(frozen=True)
class Tensor:
    left: CircuitAst
    right: CircuitAst
    height: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "height", self.left.height + self.right.height)


@dataclass(frozen=True)
class Seq:
    left: CircuitAst
    right: CircuitAst
    height: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "height", self.left.height)


CircuitAst = Union[Gate, Tensor, Seq]

# Gate singletons, so trees read like the surface syntax: Seq(Tensor(H, I), CX).
I = Gate(GateKind.I)
X = Gate(GateKind.X)
Y = Gate(GateKind.Y)
Z = Gate(GateKind.Z)
H = Gate(GateKind.H)
T = Gate(GateKind.T)
SW = Gate(GateKind.SW)
CX = Gate(GateKind.CX)

GATES = {g.kind.value: g for g in (I, X, Y, Z, H, T, SW, CX)}


class CircuitSyntaxError(Exception):
    """Raised on malformed circuit text; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ValidationError(Exception):
    """Raised when a sequence node composes circuits of different heights."""

    def __init__(self, node: Seq, path: str):
        self.node = node
        self.path = path
        self.left_height = node.left.height
        self.right_height = node.right.height
        super().__init__(
            f"sequence at {path} composes circuits of different heights "
            f"({self.left_height} vs {self.right_height})"
        )


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


_OPERATOR_CHARS = "*("


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c == "*":
            if i + 1 < n and text[i + 1] == "*":
                tokens.append(_Token("**", line, start_col))
                i += 2
                col += 2
                continue
            raise CircuitSyntaxError("expected '**' (single '*' is not an operator)", line, start_col)
        if c in "()":
            tokens.append(_Token(c, line, start_col))
            i += 1
            col += 1
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            word = text[i:j]
            if word != "oo" and word not in GATES:
                raise CircuitSyntaxError(f"unknown token {word!r}", line, start_col)
            tokens.append(_Token(word, line, start_col))
            col += j - i
            i = j
            continue
        raise CircuitSyntaxError(f"unexpected character {c!r}", line, start_col)
    return tokens


class _Parser:
    """Recursive descent over: seq := tensor ("oo" tensor)*, tensor := atom ("**" atom)*."""

    def __init__(self, tokens: list[_Token], source_len_line: tuple[int, int]):
        self.tokens = tokens
        self.pos = 0
        self.end_line, self.end_col = source_len_line

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str) -> CircuitSyntaxError:
        tok = self.peek()
        if tok is None:
            return CircuitSyntaxError(message + " (unexpected end of input)", self.end_line, self.end_col)
        return CircuitSyntaxError(message + f", found {tok.text!r}", tok.line, tok.column)

    def parse_seq(self) -> CircuitAst:
        node = self.parse_tensor()
        while (tok := self.peek()) is not None and tok.text == "oo":
            self.advance()
            node = Seq(node, self.parse_tensor())
        return node

    def parse_tensor(self) -> CircuitAst:
        node = self.parse_atom()
        while (tok := self.peek()) is not None and tok.text == "**":
            self.advance()
            node = Tensor(node, self.parse_atom())
        return node

    def parse_atom(self) -> CircuitAst:
        tok = self.peek()
        if tok is None:
            raise self.error("expected gate or '('")
        if tok.text in GATES:
            self.advance()
            return GATES[tok.text]
        if tok.text == "(":
            self.advance()
            node = self.parse_seq()
            closing = self.peek()
            if closing is None or closing.text != ")":
                raise self.error(f"unbalanced parenthesis opened at {tok.line}:{tok.column}")
            self.advance()
            return node
        raise self.error("expected gate or '('")


def parse_circuit(text: str) -> CircuitAst:
    """Parse circuit text into a syntax tree.

    Raises CircuitSyntaxError (with line/column) on unknown tokens,
    dangling operators, or unbalanced parentheses. Does not check
    well-formedness; see validate().
    """
    lines = text.split("\n")
    end = (len(lines), len(lines[-1]) + 1)
    parser = _Parser(_tokenize(text), end)
    node = parser.parse_seq()
    if parser.peek() is not None:
        raise parser.error("expected operator or end of input")
    return node


def height(circuit: CircuitAst) -> int:
    """Number of wires the circuit spans (cached on each node)."""
    return circuit.height


def validate(circuit: CircuitAst) -> int:
    """Check well-formedness and return the qubit count.

    Every Seq node must compose children of equal height. On failure the
    ValidationError names the first offending node in leftmost-deepest
    order. Shared subtrees are checked once.
    """
    seen: set[int] = set()
    # paths are linked (parent, step) tuples, materialized only on error
    stack: list[tuple[CircuitAst, tuple | None, bool]] = [(circuit, None, False)]
    while stack:
        nd, pth, children_done = stack.pop()
        if type(nd) is Gate or id(nd) in seen:
            continue
        if children_done:
            seen.add(id(nd))
            if type(nd) is Seq and nd.left.height != nd.right.height:
                steps = []
                while pth is not None:
                    pth, step = pth
                    steps.append(step)
                raise ValidationError(nd, ".".join(["root"] + steps[::-1]))
            continue
        stack.append((nd, pth, True))
        stack.append((nd.right, (pth, "right"), False))
        stack.append((nd.left, (pth, "left"), False))
    return circuit.height


def iter_gates(circuit: CircuitAst) -> Iterator[tuple[Gate, int]]:
    """Yield (gate, base wire index) in analysis order.

    Seq runs left then right at the same base; Tensor offsets the right
    child by the left child's height. Iterative, so arbitrarily deep
    trees are fine.
    """
    stack: list[tuple[CircuitAst, int]] = [(circuit, 0)]
    while stack:
        node, q = stack.pop()
        t = type(node)
        if t is Gate:
            yield node, q
        elif t is Seq:
            stack.append((node.right, q))
            stack.append((node.left, q))
        else:
            stack.append((node.right, q + node.left.height))
            stack.append((node.left, q))


_PREC = {Seq: 1, Tensor: 2}


def unparse(circuit: CircuitAst) -> str:
    """Render a tree in canonical text; parse_circuit(unparse(c)) == c."""

    def render(node: CircuitAst, parent_prec: int, is_right: bool) -> str:
        if type(node) is Gate:
            return node.kind.value
        prec = _PREC[type(node)]
        op = " oo " if type(node) is Seq else " ** "
        body = render(node.left, prec, False) + op + render(node.right, prec, True)
        if prec < parent_prec or (prec == parent_prec and is_right):
            return "(" + body + ")"
        return body

    return render(circuit, 0, False)
