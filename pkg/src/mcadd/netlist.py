"""mcadd: mcadd/netlist.py
Gate-level circuits over AND/OR/NOT: construction, ternary and Boolean
evaluation, metastability-containment checks, size/depth metrics and the
line-oriented text format.
"""

import csv
import dataclasses
import itertools
import math
import os
import re

import networkx as nx

from . import util
from .kleene import MAX_META, Gate, Trit, closure_eval, gate_eval, make_word
from .rich_logger import logger


MAX_EVALS = 10**8
ZERO = "ZERO"
ONE = "ONE"
CONSTANTS = {ZERO: Trit.ZERO, ONE: Trit.ONE}
_GATE_ID = re.compile(r"n\d+$")
_CHUNK = 4096


@dataclasses.dataclass(frozen=True)
class GateNode:
    id: str
    kind: Gate
    operands: tuple


@dataclasses.dataclass(frozen=True)
class CircuitStats:
    size: int
    depth: int


@dataclasses.dataclass(frozen=True)
class McReport:
    """Result of an mc check; the ``failing`` input is the first in
    lexicographic order, with the closure value and the circuit's value."""

    passed: bool
    checked: int
    failing: object = None
    expected: object = None
    actual: object = None


class Netlist:
    """Immutable directed acyclic graph of basic gates. Inputs are named
    ports, gates are stored in topological order and outputs reference
    inputs, gates or the constants ``ZERO`` and ``ONE``."""

    def __init__(self, inputs, gates, outputs, name="netlist"):
        self.name = name
        self.inputs = tuple(inputs)
        self.gates = tuple(gates)
        self.outputs = tuple(outputs)
        self.graph = nx.DiGraph()
        defined = set(CONSTANTS)
        for port in self.inputs:
            if port in defined:
                raise util.UsageError(f"duplicate node {port}")
            defined.add(port)
            self.graph.add_node(port)
        for gate in self.gates:
            if gate.id in defined:
                raise util.UsageError(f"duplicate node {gate.id}")
            if len(gate.operands) != gate.kind.arity:
                raise util.UsageError(
                    f"gate {gate.id}: {gate.kind.value} expects {gate.kind.arity} "
                    f"operand(s), got {len(gate.operands)}"
                )
            for operand in gate.operands:
                if operand not in defined:
                    raise util.UsageError(
                        f"gate {gate.id}: operand {operand} is not defined before use"
                    )
                self.graph.add_edge(operand, gate.id)
            defined.add(gate.id)
        for output in self.outputs:
            if output not in defined:
                raise util.UsageError(f"output {output} is not defined")
            self.graph.add_node(output)

    def __repr__(self):
        return (
            f"(Netlist) {self.name}: {self.input_width} inputs, "
            f"{len(self.gates)} gates, {self.output_width} outputs"
        )

    @property
    def input_width(self):
        return len(self.inputs)

    @property
    def output_width(self):
        return len(self.outputs)

    def eval(self, x):
        """Evaluates the circuit on the ternary word ``x`` gate by gate
        with the Kleene tables."""
        if len(x) != self.input_width:
            raise util.WidthError(
                f"{self.name} takes {self.input_width} inputs, got {len(x)} ({x})"
            )
        values = dict(CONSTANTS)
        values.update(zip(self.inputs, x))
        for gate in self.gates:
            values[gate.id] = gate_eval(gate.kind, [values[o] for o in gate.operands])
        return make_word(values[o] for o in self.outputs)

    def _propagate(self, rails, full):
        """Dual-rail propagation: each node carries the bit sets of the
        batch rows where it may be 0 and where it may be 1. A row in both
        sets is M, which gives exactly the Kleene tables."""
        rails[ZERO] = (full, 0)
        rails[ONE] = (0, full)
        for gate in self.gates:
            if gate.kind is Gate.NOT:
                can0, can1 = rails[gate.operands[0]]
                rails[gate.id] = (can1, can0)
                continue
            (a0, a1), (b0, b1) = (rails[o] for o in gate.operands)
            if gate.kind is Gate.AND:
                rails[gate.id] = (a0 | b0, a1 & b1)
            else:
                rails[gate.id] = (a0 & b0, a1 | b1)
        return [rails[o] for o in self.outputs]

    def simulate(self, words):
        """Bit-parallel evaluation of a batch of ternary words; agrees with
        ``eval`` on every word."""
        words = list(words)
        full = (1 << len(words)) - 1
        rails = {}
        for position, port in enumerate(self.inputs):
            can0 = can1 = 0
            for row, w in enumerate(words):
                if w[position] is not Trit.ONE:
                    can0 |= 1 << row
                if w[position] is not Trit.ZERO:
                    can1 |= 1 << row
            rails[port] = (can0, can1)
        for w in words:
            if len(w) != self.input_width:
                raise util.WidthError(
                    f"{self.name} takes {self.input_width} inputs, got {len(w)} ({w})"
                )
        outputs = self._propagate(rails, full)
        results = []
        for row in range(len(words)):
            trits = []
            for can0, can1 in outputs:
                zero, one = can0 >> row & 1, can1 >> row & 1
                if zero and one:
                    trits.append(Trit.META)
                else:
                    trits.append(Trit.ONE if one else Trit.ZERO)
            results.append(make_word(trits))
        return results

    def boolean_columns(self):
        """Output columns over all 2^n stable inputs: bit r of column j is
        output j on the input whose binary value (first input most
        significant) is r."""
        width = self.input_width
        rows = 1 << width
        full = (1 << rows) - 1
        rails = {}
        for position, port in enumerate(self.inputs):
            half = 1 << (width - 1 - position)
            column = int(("1" * half + "0" * half) * (rows // (2 * half)), 2)
            rails[port] = (full ^ column, column)
        return [can1 for _, can1 in self._propagate(rails, full)]

    def stats(self):
        """Gate count and the longest input-to-output path in gates."""
        live = set()
        for output in self.outputs:
            live.add(output)
            live |= nx.ancestors(self.graph, output)
        depth = nx.dag_longest_path_length(self.graph.subgraph(live)) if live else 0
        return CircuitStats(len(self.gates), depth)


class NetlistBuilder:
    """Mutable helper to put circuits together; ``build`` freezes the
    result into a ``Netlist``. XOR and MUX are macros over basic gates."""

    def __init__(self, name="netlist"):
        self.name = name
        self._inputs = []
        self._gates = []
        self._names = set(CONSTANTS)
        self._ids = itertools.count(1)

    def input(self, name):
        if name in self._names or _GATE_ID.match(name):
            raise util.UsageError(f"invalid or duplicate input name {name!r}")
        self._inputs.append(name)
        self._names.add(name)
        return name

    def inputs(self, prefix, count):
        return [self.input(f"{prefix}{i}") for i in range(1, count + 1)]

    def gate(self, kind, *operands):
        kind = Gate(kind)
        if len(operands) != kind.arity:
            raise util.UsageError(
                f"{kind.value} expects {kind.arity} operand(s), got {len(operands)}"
            )
        gate_id = f"_g{next(self._ids)}"
        self._gates.append(GateNode(gate_id, kind, tuple(operands)))
        return gate_id

    def not_(self, a):
        return self.gate(Gate.NOT, a)

    def and_(self, a, b):
        return self.gate(Gate.AND, a, b)

    def or_(self, a, b):
        return self.gate(Gate.OR, a, b)

    @staticmethod
    def const(bit):
        return ONE if bit else ZERO

    def xor(self, a, b):
        return self.or_(self.and_(a, self.not_(b)), self.and_(self.not_(a), b))

    def mux(self, a, b, s):
        """``a`` if ``s`` is 0, ``b`` if ``s`` is 1."""
        return self.or_(self.and_(a, self.not_(s)), self.and_(b, s))

    def _tree(self, kind, nodes, empty):
        nodes = list(nodes)
        if not nodes:
            return empty
        while len(nodes) > 1:
            paired = [self.gate(kind, a, b) for a, b in zip(nodes[::2], nodes[1::2])]
            if len(nodes) % 2:
                paired.append(nodes[-1])
            nodes = paired
        return nodes[0]

    def and_all(self, nodes):
        return self._tree(Gate.AND, nodes, ONE)

    def or_all(self, nodes):
        return self._tree(Gate.OR, nodes, ZERO)

    def embed(self, netlist, operands):
        """Instantiates ``netlist`` with its inputs wired to ``operands``;
        returns the nodes of its outputs."""
        operands = list(operands)
        if len(operands) != netlist.input_width:
            raise util.WidthError(
                f"{netlist.name} takes {netlist.input_width} inputs, got {len(operands)}"
            )
        mapping = {ZERO: ZERO, ONE: ONE}
        mapping.update(zip(netlist.inputs, operands))
        for gate in netlist.gates:
            mapping[gate.id] = self.gate(gate.kind, *(mapping[o] for o in gate.operands))
        return [mapping[o] for o in netlist.outputs]

    def build(self, outputs):
        """Drops gates no output depends on and numbers the others
        ``n1``, ``n2``, ... in construction order."""
        outputs = list(outputs)
        live = set(outputs)
        for gate in reversed(self._gates):
            if gate.id in live:
                live.update(gate.operands)
        rename = {}
        gates = []
        for gate in self._gates:
            if gate.id not in live:
                continue
            rename[gate.id] = f"n{len(gates) + 1}"
            operands = tuple(rename.get(o, o) for o in gate.operands)
            gates.append(GateNode(rename[gate.id], gate.kind, operands))
        netlist = Netlist(self._inputs, gates, [rename.get(o, o) for o in outputs], self.name)
        logger.debug("Built %r", netlist)
        return netlist


def naive_mux():
    """The textbook multiplexer, which isn't metastability-containing."""
    b = NetlistBuilder("naive_mux")
    a, b_, s = b.input("a"), b.input("b"), b.input("s")
    return b.build([b.mux(a, b_, s)])


def serial(first, second):
    """Feeds the outputs of ``first`` into the inputs of ``second``."""
    b = NetlistBuilder(f"{first.name}+{second.name}")
    xs = [b.input(port) for port in first.inputs]
    return b.build(b.embed(second, b.embed(first, xs)))


def parallel(first, second):
    """Places both circuits side by side on disjoint inputs."""
    b = NetlistBuilder(f"{first.name}|{second.name}")
    xs = b.inputs("x", first.input_width + second.input_width)
    outputs = b.embed(first, xs[: first.input_width])
    outputs += b.embed(second, xs[first.input_width :])
    return b.build(outputs)


def _ternary_points(width, k):
    """All ternary words of ``width`` with at most ``k`` M's, in
    lexicographic order (0 < 1 < M)."""
    if width == 0:
        yield ()
        return
    for trit in Trit:
        left = k - (trit is Trit.META)
        if left < 0:
            continue
        for rest in _ternary_points(width - 1, left):
            yield (trit,) + rest


def mc_check(c, f, k, max_evals=MAX_EVALS, max_meta=MAX_META):
    """Compares ``c`` with the metastable closure of ``f`` on every input
    with at most ``k`` M's. ``f`` maps stable words to stable words; a
    ``Netlist`` is taken as its Boolean restriction."""
    if isinstance(f, Netlist):
        f = f.eval
    width = c.input_width
    k = min(k, width)
    count = sum(math.comb(width, j) * 2 ** (width - j) for j in range(k + 1))
    if count > max_evals:
        raise util.BudgetExceededError(f"mc check over {count} inputs", max_evals)
    logger.debug("mc check of %r on %d inputs with <= %d M's", c, count, k)
    points = (make_word(p) for p in _ternary_points(width, k))
    checked = 0
    while True:
        chunk = list(itertools.islice(points, _CHUNK))
        if not chunk:
            return McReport(True, checked)
        for x, actual in zip(chunk, c.simulate(chunk)):
            checked += 1
            expected = closure_eval(f, x, max_meta)
            if actual != expected:
                return McReport(False, checked, x, expected, actual)


def dumps(c):
    """Canonical text form: gates renumbered ``n1..nN`` in stored order."""
    rename = {gate.id: f"n{i}" for i, gate in enumerate(c.gates, 1)}
    for port in c.inputs:
        if _GATE_ID.match(port):
            raise util.UsageError(f"input name {port!r} clashes with gate ids")
    lines = [
        " ".join(["inputs", *c.inputs]),
        " ".join(["outputs", *(rename.get(o, o) for o in c.outputs)]),
    ]
    for gate in c.gates:
        operands = " ".join(rename.get(o, o) for o in gate.operands)
        lines.append(f"{rename[gate.id]} = {gate.kind.value} {operands}")
    return "\n".join(lines) + "\n"


def _tokens(line):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def loads(text, name="netlist"):
    """Parses the text form. Gates may appear in any order; they are
    sorted topologically, keeping file order where possible."""
    ports = {}
    gates = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = _tokens(raw.split("#", 1)[0])
        if not tokens:
            continue
        head, column = tokens[0]
        if head in ("inputs", "outputs"):
            if head in ports:
                raise util.ParseError(f"duplicate '{head}' line", lineno, column)
            ports[head] = (tokens[1:], lineno)
        elif len(tokens) >= 3 and tokens[1][0] == "=":
            kind_name, kind_column = tokens[2]
            try:
                kind = Gate(kind_name)
            except ValueError:
                raise util.ParseError(
                    f"unknown gate kind {kind_name!r}", lineno, kind_column
                ) from None
            if head in gates or head in CONSTANTS:
                raise util.ParseError(f"duplicate node {head}", lineno, column)
            operands = tokens[3:]
            if len(operands) != kind.arity:
                raise util.ParseError(
                    f"gate {head}: {kind.value} expects {kind.arity} operand(s), "
                    f"got {len(operands)}",
                    lineno,
                    column,
                )
            gates[head] = (kind, operands, lineno)
        else:
            raise util.ParseError(
                "expected 'inputs', 'outputs' or '<id> = <GATE> <operands>'",
                lineno,
                column,
            )
    for head in ("inputs", "outputs"):
        if head not in ports:
            raise util.ParseError(f"missing '{head}' line", len(text.splitlines()) + 1, 1)

    input_tokens, input_line = ports["inputs"]
    inputs = [token for token, _ in input_tokens]
    defined = set(CONSTANTS) | set(gates)
    for token, column in input_tokens:
        if token in defined:
            raise util.ParseError(f"duplicate node {token}", input_line, column)
        defined.add(token)
    for gate_id, (kind, operands, lineno) in gates.items():
        for token, column in operands:
            if token not in defined:
                raise util.ParseError(
                    f"gate {gate_id}: unknown operand {token}", lineno, column
                )
    output_tokens, output_line = ports["outputs"]
    for token, column in output_tokens:
        if token not in defined:
            raise util.ParseError(f"unknown output {token}", output_line, column)

    graph = nx.DiGraph()
    graph.add_nodes_from(gates)
    for gate_id, (_, operands, _) in gates.items():
        graph.add_edges_from((token, gate_id) for token, _ in operands if token in gates)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        node = cycle[0][0]
        raise util.ParseError(f"cycle involving {node}", gates[node][2], 1)
    file_order = {gate_id: i for i, gate_id in enumerate(gates)}
    order = nx.lexicographical_topological_sort(graph, key=file_order.__getitem__)
    nodes = [
        GateNode(g, gates[g][0], tuple(token for token, _ in gates[g][1])) for g in order
    ]
    return Netlist(inputs, nodes, [token for token, _ in output_tokens], name)


def save(c, path):
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps(c))
    except OSError as e:
        raise util.UsageError(f"cannot write netlist {path}: {e.strerror}") from e
    logger.debug("Saved %r to %s", c, path)


def load(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise util.UsageError(f"cannot read netlist {path}: {e.strerror}") from e
    c = loads(text, os.path.splitext(os.path.basename(path))[0])
    logger.debug("Loaded %r from %s", c, path)
    return c


def write_trace(c, words, stream):
    """CSV trace with one (input word, output word) row per input."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["input", "output"])
    words = list(words)
    for x, y in zip(words, c.simulate(words)):
        writer.writerow([str(x), str(y)])
