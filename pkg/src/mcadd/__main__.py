"""mcadd: mcadd/__main__.py

Addition under uncertainty: codes that keep metastable inputs within a
bounded interval, brute-force checks of their properties, adder circuits
for the hybrid code and their metastable closure.
"""

import csv
import logging
import sys

from rich.progress import BarColumn, MofNCompleteColumn, Progress, TimeElapsedColumn

from . import codes, netlist, rich_logger, synth, tables, util, verify
from .codes import CodeSpec, FAMILIES
from .kleene import MAX_META, TritWord
from .rich_logger import create_logger, logger


PROPERTIES = ("preserving", "recoverable", "m-count", "gray", "bound")
ENGINES = ("oracle", "circuit", "mc-circuit")
CONSTRUCTIONS = {
    "add": lambda o: synth.build_add(_need(o, "n"), _need(o, "k")),
    "ppc": lambda o: synth.ppc(o["op"], _need(o, "n"), o["direction"]),
    "brgc-to-bin": lambda o: synth.brgc_to_bin(_need(o, "n")),
    "bin-to-brgc": lambda o: synth.bin_to_brgc(_need(o, "n")),
    "un-to-bin": lambda o: synth.un_to_bin(_need(o, "k")),
    "bin-to-un": lambda o: synth.bin_to_un(_need(o, "k")),
    "map": lambda o: synth.map_circuit(_need(o, "k")),
    "prefix-adder": lambda o: synth.prefix_adder(_need(o, "n")),
    "ripple-adder": lambda o: synth.ripple_adder(_need(o, "n")),
    "mux": lambda o: netlist.naive_mux(),
}


def _need(options, name):
    if name not in options:
        raise util.UsageError(f"this command needs --{name}")
    return options[name]


def _spec(options, k_is_level=False):
    """Code specification from --code and --n/--k. A full form such as
    ``hybrid:5:3`` is accepted as well; --k only parametrizes hybrid.
    With ``k_is_level`` --k names the property level and may accompany
    any family."""
    code = _need(options, "code")
    flags = ["n"] if k_is_level else ["n", "k"]
    if ":" in code:
        for flag in flags:
            if flag in options:
                raise util.UsageError(f"--{flag} conflicts with --code {code}")
        return CodeSpec.parse(code)
    if code == "hybrid":
        k = _need(options, "k")
    elif "k" in flags and "k" in options:
        raise util.UsageError(f"--k does not apply to {code} codes")
    else:
        k = None
    return CodeSpec(code, _need(options, "n"), k)


def _writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def cmd_encode(options):
    spec = _spec(options)
    word = codes.format_word(spec, codes.encode(spec, options["value"]))
    if options["format"] == "csv":
        _writer().writerows([["value", "word"], [options["value"], word]])
    else:
        print(word)
    return 0


def cmd_decode(options):
    spec = _spec(options)
    w = codes.parse_word(spec, options["word"])
    if options["recover"]:
        value = codes.extended_decode(spec, w)
    else:
        value = codes.decode(spec, w)
    if options["format"] == "csv":
        _writer().writerows([["word", "value"], [codes.format_word(spec, w), value]])
    else:
        print(value)
    return 0


def cmd_interval(options):
    spec = _spec(options)
    try:
        w = codes.extended_codeword(spec, (options["lo"], options["hi"]))
    except util.DomainError as e:
        raise util.UsageError(str(e)) from e
    word = codes.format_word(spec, w)
    if options["format"] == "csv":
        _writer().writerows(
            [["lo", "hi", "word", "m_count"], [options["lo"], options["hi"], word, w.meta_count]]
        )
    else:
        print(word)
        print(f"m-count {w.meta_count}")
    return 0


def cmd_add(options):
    spec = _spec(options)
    x = codes.parse_word(spec, options["x"])
    y = codes.parse_word(spec, options["y"])
    engine = options["engine"]
    logger.debug("Adding %s and %s in %s with the %s engine", x, y, spec, engine)
    if engine == "oracle":
        s, ovf = synth.mc_add_oracle(spec, x, y, options["max_resolutions"])
    else:
        c = synth.adder_circuit(spec, options["adder"])
        if engine == "mc-circuit":
            c = synth.mc_transform(c, max_implicants=options["max_implicants"])
        out = c.eval(x + y)
        s, ovf = out[:-1], out[-1]
    word = codes.format_word(spec, s)
    if options["format"] == "csv":
        _writer().writerows(
            [
                ["x", "y", "sum", "ovf"],
                [codes.format_word(spec, x), codes.format_word(spec, y), word, ovf],
            ]
        )
    else:
        print(word)
        print(f"ovf {ovf}")
    return 0


def _progress():
    """Transient progress bar on the logging console."""
    return Progress(
        "[progress.description]{task.description}",
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=rich_logger.cons,
        transient=True,
        disable=logger.getEffectiveLevel() > logging.INFO,
    )


def _check_bound(options):
    n, k, m = _need(options, "n"), _need(options, "k"), _need(options, "m")
    logger.info(util.log_heading(f"{k}-recoverable codes of {m} words in {n} bits"))
    logger.info("Upper bound on the domain: %d", verify.max_domain(n, k))
    with _progress() as progress:
        task = progress.add_task("Searching", total=None)
        code = verify.find_recoverable_code(
            n,
            k,
            m,
            budget=options["max_candidates"],
            fast=options["fast"],
            jobs=options["jobs"],
            progress=lambda done, total: progress.update(task, completed=done, total=total),
        )
    words = " ".join(str(w) for w in code.words) if code else ""
    if options["format"] == "csv":
        _writer().writerows([["n", "k", "m", "code"], [n, k, m, words]])
    elif code is None:
        print("no such code")
    else:
        print(f"code found: {words}")
    return 0 if code is None else 1


def cmd_check(options):
    prop = options["property"]
    if prop == "bound":
        return _check_bound(options)
    spec = _spec(options, k_is_level=True)
    level = options.get("k", spec.k if spec.k is not None else 1)
    logger.info(util.log_heading(f"{prop} for {spec}"))
    report = None
    if prop == "preserving":
        report = verify.check_preserving(spec, level, options["max_resolutions"])
        holds = report.holds
    elif prop == "recoverable":
        report = verify.check_recoverable(spec, level, options["max_resolutions"])
        holds = report.holds
    elif prop == "m-count":
        holds = verify.check_m_count(spec, level)
    else:
        holds = verify.check_gray(spec)
    witness = ""
    if report is not None and report.witness is not None:
        interval, w = report.witness
        witness = f"{interval} {codes.format_word(spec, w)}"
    if options["format"] == "csv":
        _writer().writerows(
            [["code", "property", "k", "holds", "witness"], [spec, prop, level, holds, witness]]
        )
    else:
        print("holds" if holds else "fails")
        if witness:
            print(f"witness {witness}")
        if report is not None and report.extension_holds is not None:
            print(f"extended decoder {'holds' if report.extension_holds else 'fails'}")
    return 0 if holds else 1


def cmd_synth(options):
    construction = options["construction"]
    base = CONSTRUCTIONS[construction](options)
    c = base
    if options["mc"]:
        c = synth.mc_transform(base, max_implicants=options["max_implicants"])
    stats = c.stats()
    logger.info("Synthesized %r", c)
    if "out" in options:
        netlist.save(c, options["out"])
        logger.info("Wrote %s", options["out"])
    report = None
    if "check_mc" in options:
        report = netlist.mc_check(
            c, base, options["check_mc"], options["max_evals"], options["max_resolutions"]
        )
    if options["format"] == "csv":
        _writer().writerows(
            [
                ["construction", "n", "k", "size", "depth", "mc"],
                [
                    c.name,
                    options.get("n", ""),
                    options.get("k", ""),
                    stats.size,
                    stats.depth,
                    "" if report is None else report.passed,
                ],
            ]
        )
    else:
        print(f"size {stats.size}")
        print(f"depth {stats.depth}")
        if report is not None and report.passed:
            print(f"mc holds on {report.checked} inputs")
        elif report is not None:
            print(f"mc fails at {report.failing}: {report.actual} instead of {report.expected}")
    return 0 if report is None or report.passed else 1


def cmd_sim(options):
    c = netlist.load(options["netlist"])
    words = [TritWord.parse(text) for text in options["words"]]
    if options["format"] == "csv":
        netlist.write_trace(c, words, sys.stdout)
    else:
        for y in c.simulate(words):
            print(y)
    return 0


def cmd_tables(options):
    numbers = [options["table"]] if "table" in options else sorted(tables.TABLES)
    mismatches = []
    for number in numbers:
        logger.info(util.log_heading(f"Table {number}"))
        if options["format"] != "csv":
            sys.stdout.write(tables.table(number))
        lines = tables.diff(number)
        if lines:
            mismatches.append(number)
            logger.error("Table %d differs from its fixture:\n%s", number, "".join(lines))
    if options["format"] == "csv":
        _writer().writerows(
            [["table", "matches"]] + [[n, n not in mismatches] for n in numbers]
        )
    return 1 if mismatches else 0


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "interval": cmd_interval,
    "add": cmd_add,
    "check": cmd_check,
    "synth": cmd_synth,
    "sim": cmd_sim,
    "tables": cmd_tables,
}


def parse_options(argv):
    """Parses the command line into a dict of the options given. Items in
    ``argv`` are treated as command line arguments."""

    description = """\
Encodes, decodes and adds words of codes that tolerate metastable bits,
checks the code properties by brute force and synthesizes the adder
circuits, including circuits computing the metastable closure."""

    epilog = """\
You may also pass one or more file names prefixed with '@' at the
command line. Arguments are then read from these files, treating each
line as a flag or '--arg value'-style pair you would normally
pass directly. Lines starting with '#' are treated as comments and
silently ignored. Argument files can be nested."""

    global_parser = util.MyArgumentParser(add_help=False)
    group = global_parser.add_argument_group("Global settings")
    group.add_argument(
        "-v",
        "--verbosity",
        default="info",
        choices=["debug", "info", "warning", "error"],
        help="Set verbosity level. Default is 'info'.",
    )
    group.add_argument(
        "-q",
        "--quiet",
        default=False,
        action="store_true",
        help="Shortcut for --verbosity 'warning'.",
    )
    group.add_argument(
        "--format",
        default="text",
        choices=["text", "csv"],
        help="Report format on standard output. Default is 'text'.",
    )
    group = global_parser.add_argument_group("Budgets")
    group.add_argument(
        "--max-resolutions",
        type=int,
        default=MAX_META,
        help=f"Most metastable trits resolved at once. Default is {MAX_META}.",
    )
    group.add_argument(
        "--max-evals",
        type=int,
        default=netlist.MAX_EVALS,
        help="Most inputs an mc check evaluates.",
    )
    group.add_argument(
        "--max-implicants",
        type=int,
        default=synth.MAX_IMPLICANTS,
        help=f"Most cubes closure synthesis handles. Default is {synth.MAX_IMPLICANTS}.",
    )
    group.add_argument(
        "--max-candidates",
        type=int,
        default=verify.MAX_CANDIDATES,
        help="Most candidate codewords the bound search tries.",
    )

    code_parser = util.MyArgumentParser(add_help=False)
    group = code_parser.add_argument_group("Code selection")
    group.add_argument(
        "--code",
        help="N|Code family, one of: " + ", ".join(FAMILIES) + ".\n"
        "A full specification such as 'hybrid:5:3' or 'brgc:4' is accepted too.",
    )
    group.add_argument("--n", type=int, help="Word length, or BRGC part length for hybrid.")
    group.add_argument("--k", type=int, help="Unary part length of the hybrid code.")

    parser = util.MyArgumentParser(
        prog="mcadd",
        description=description,
        epilog=epilog,
        fromfile_prefix_chars="@",
        formatter_class=util.MyHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, text, parents=(code_parser,)):
        return subparsers.add_parser(
            name,
            help=text,
            parents=[global_parser, *parents],
            fromfile_prefix_chars="@",
            formatter_class=util.MyHelpFormatter,
        )

    sub = command("encode", "Print the codeword of a value.")
    sub.add_argument("value", type=int)

    sub = command("decode", "Print the value of a codeword.")
    sub.add_argument("word", help="Stable word; hybrid words may contain a space.")
    sub.add_argument(
        "--recover",
        action="store_true",
        help="Decode non-codewords with the recoverable extension.",
    )

    sub = command("interval", "Print the extended codeword of [lo, hi].")
    sub.add_argument("lo", type=int)
    sub.add_argument("hi", type=int)

    sub = command("add", "Add two ternary words.")
    sub.add_argument("x", help="Ternary word; 'M' or 'X' marks metastable trits.")
    sub.add_argument("y")
    sub.add_argument(
        "--engine",
        default="oracle",
        choices=ENGINES,
        help="N|oracle: metastable closure of addition.\n"
        "circuit: plain Kleene evaluation of the adder circuit.\n"
        "mc-circuit: evaluation of the closure circuit of the adder.",
    )
    sub.add_argument(
        "--adder",
        default="prefix",
        choices=synth.ADDERS,
        help="Binary adder used by the circuit engines. Default is 'prefix'.",
    )

    sub = command("check", "Check a code property or the rate bound.")
    sub.add_argument("--property", required=True, choices=PROPERTIES)
    sub.add_argument(
        "--m", type=int, help="Number of codewords for --property bound."
    )
    sub.add_argument(
        "--fast",
        action="store_true",
        help="Fix the first codeword to all zeros in the bound search.",
    )
    sub.add_argument(
        "--jobs", type=int, default=1, help="Worker processes for the bound search."
    )

    sub = command("synth", "Synthesize a circuit and print its size and depth.")
    sub.add_argument("--construction", required=True, choices=sorted(CONSTRUCTIONS))
    sub.add_argument("--op", default="XOR", choices=synth.OPERATORS, help="Prefix operator.")
    sub.add_argument(
        "--direction", default=synth.LEFT_TO_RIGHT, choices=synth.DIRECTIONS
    )
    sub.add_argument(
        "--mc",
        action="store_true",
        help="Replace the circuit by the closure circuit of its Boolean function.",
    )
    sub.add_argument("--out", help="Write the netlist to this file.")
    sub.add_argument(
        "--check-mc",
        type=int,
        metavar="K",
        help="Compare the circuit with the closure of the construction's "
        "Boolean function on all inputs with at most K metastable trits.",
    )

    sub = command("sim", "Evaluate ternary words on a netlist file.", parents=())
    sub.add_argument("--netlist", required=True)
    sub.add_argument("words", nargs="+")

    sub = command("tables", "Regenerate the reference tables.", parents=())
    sub.add_argument("--table", type=int, choices=sorted(tables.TABLES))

    # parse args then convert to dict format
    options = {}
    try:
        args = parser.parse_args(argv)
        for k, v in vars(args).items():
            if v is not None:
                options[k] = v
    except RecursionError as e:
        raise util.UsageError(
            "Recursion error while parsing arguments. "
            f"Maybe you produced a loop in argument files? ({e})"
        ) from e

    # applying shortcuts
    if options["quiet"]:
        options["verbosity"] = "warning"
    return options


def run(argv):
    """Runs one command and returns its exit code."""
    try:
        options = parse_options(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return e.code if isinstance(e.code, int) else 0
    except util.AbortError as e:
        print(f"mcadd: {e}", file=sys.stderr)
        return e.exit_code

    create_logger(options["verbosity"])
    logger.debug(util.log_heading("Settings"))
    for key in sorted(options):
        logger.debug("%s: %r", key, options[key])
    try:
        return COMMANDS[options["command"]](options)
    except util.AbortError as e:
        logger.error("%s", e)
        return e.exit_code


def main():
    """Main function."""
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        sys.exit(1)


if __name__ == "__main__":
    main()
