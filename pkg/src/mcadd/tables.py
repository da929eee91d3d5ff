"""mcadd: mcadd/tables.py
Regenerates the reference tables: a serial adder on a metastable operand,
the closure of hybrid addition, the 4-bit BRGC and the middle rows of the
hybrid(4,4) code. Metastable trits print as 'X' here.
"""

import difflib

from . import codes
from .codes import CodeSpec
from .rich_logger import logger
from .synth import adder_circuit, mc_add_oracle
from . import util


SERIAL_ADDER_OPERANDS = (("00011001", "00100101"), ("0001101M", "00100101"))
HYBRID_ADDER_OPERANDS = (("00101 1M0", "01101 011"), ("01M10 M00", "00111 011"))
HYBRID_ROWS = range(12, 38)

FIXTURES = {
    1: """\
X    0001 1001 ({25})  0001 101X ({26,27})
Y    0010 0101 ({37})  0010 0101 ({37})
SUM  0011 1110 ({62})  0XXX XXXX ({0,...,127})
""",
    2: """\
X    00101 1X0 ({25,26})  01X10 X00 ({47,48,49})
Y    01101 011 ({37})     00111 011 ({21})
SUM  01000 00X ({62,63})  11001 XX1 ({68,69,70})
""",
    3: """\
i  BRGC  i  BRGC  i  BRGC  i  BRGC
0  0000  4  0110  8  1100  12 1010
1  0001  5  0111  9  1101  13 1011
2  0011  6  0101  10 1111  14 1001
3  0010  7  0100  11 1110  15 1000
""",
    4: """\
i  hybrid
12 0011 1100
13 0011 1110
14 0011 1111
15 0010 1111
16 0010 0111
17 0010 0011
18 0010 0001
19 0010 0000
20 0110 0000
21 0110 1000
22 0110 1100
23 0110 1110
24 0110 1111
25 0111 1111
26 0111 0111
27 0111 0011
28 0111 0001
29 0111 0000
30 0101 0000
31 0101 1000
32 0101 1100
33 0101 1110
34 0101 1111
35 0100 1111
36 0100 0111
37 0100 0011
""",
}


def _values(values):
    """Set notation for a value range; long contiguous ranges are elided."""
    if len(values) > 3 and values == list(range(values[0], values[-1] + 1)):
        return f"{{{values[0]},...,{values[-1]}}}"
    return "{" + ",".join(str(v) for v in values) + "}"


def _nibbles(text):
    return " ".join(text[i : i + 4] for i in range(0, len(text), 4))


def _annotate(spec, w):
    text = codes.format_word(spec, w, meta="X")
    if spec.family == "binary":
        text = _nibbles(text)
    return f"{text} ({_values(codes.value_range(spec, w))})"


def render(rows):
    """Left-aligned columns separated by two spaces."""
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)
    return "\n".join(lines) + "\n"


def _addition_rows(spec, operands, add):
    columns = []
    for x_text, y_text in operands:
        x = codes.parse_word(spec, x_text)
        y = codes.parse_word(spec, y_text)
        columns.append([_annotate(spec, w) for w in (x, y, add(x, y))])
    return [[label, *cells] for label, *cells in zip(("X", "Y", "SUM"), *columns)]


def serial_adder_table():
    """Ripple adder on 8-bit binary operands; the carry-out is dropped."""
    spec = CodeSpec.binary(8)
    c = adder_circuit(spec, "ripple")
    return render(
        _addition_rows(spec, SERIAL_ADDER_OPERANDS, lambda x, y: c.eval(x + y)[:-1])
    )


def hybrid_adder_table():
    """Metastable closure of hybrid(5,3) addition."""
    spec = CodeSpec.hybrid(5, 3)
    return render(
        _addition_rows(spec, HYBRID_ADDER_OPERANDS, lambda x, y: mc_add_oracle(spec, x, y)[0])
    )


def brgc_table():
    spec = CodeSpec.brgc(4)
    cells = [f"{i:<3}{codes.encode(spec, i)}" for i in range(spec.domain_size)]
    rows = [["i  BRGC"] * 4]
    rows += [[cells[r + 4 * c] for c in range(4)] for r in range(4)]
    return render(rows)


def hybrid_table():
    spec = CodeSpec.hybrid(4, 4)
    rows = [[f"{'i':<3}hybrid"]]
    rows += [[f"{i:<3}{codes.format_word(spec, codes.encode(spec, i))}"] for i in HYBRID_ROWS]
    return render(rows)


TABLES = {
    1: serial_adder_table,
    2: hybrid_adder_table,
    3: brgc_table,
    4: hybrid_table,
}


def table(number):
    try:
        generate = TABLES[number]
    except KeyError:
        raise util.UsageError(f"no table {number}, expected one of 1-{len(TABLES)}") from None
    text = generate()
    logger.debug("Generated table %d (%d lines)", number, text.count("\n"))
    return text


def diff(number):
    """Unified diff of the regenerated table against its fixture; empty
    when they match byte for byte."""
    return list(
        difflib.unified_diff(
            FIXTURES[number].splitlines(keepends=True),
            table(number).splitlines(keepends=True),
            fromfile=f"fixture {number}",
            tofile=f"table {number}",
        )
    )


__all__ = ["FIXTURES", "TABLES", "diff", "render", "table"]
