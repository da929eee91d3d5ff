import pytest

from mcadd.__main__ import parse_options, run


def output(capsys, argv, code=0):
    assert run(argv) == code
    return capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["encode", "--code", "hybrid", "--n", "5", "--k", "3", "37"], "01101 011\n"),
        (["encode", "--code", "brgc:4", "10"], "1111\n"),
        (["decode", "--code", "hybrid:5:3", "--recover", "01110 100"], "47\n"),
        (["decode", "--code", "brgc", "--n", "4", "0000"], "0\n"),
        (["interval", "--code", "hybrid:4:4", "25", "29"], "0111 MMMM\nm-count 4\n"),
    ],
)
def test_code_commands(capsys, argv, expected):
    assert output(capsys, argv) == expected


def test_add_oracle(capsys):
    argv = ["add", "--code", "hybrid:5:3", "01M10 M00", "00111 011"]
    assert output(capsys, argv) == "11001 MM1\novf 0\n"


def test_add_serial_circuit(capsys):
    argv = ["add", "--code", "binary:8", "--engine", "circuit", "--adder", "ripple"]
    assert output(capsys, argv + ["0001101X", "00100101"]) == "0MMMMMMM\novf 0\n"


def test_add_circuit_engines_agree(capsys):
    argv = ["add", "--code", "hybrid:3:1", "001M", "0101"]
    oracle = output(capsys, argv)
    assert output(capsys, argv + ["--engine", "mc-circuit"]) == oracle


def test_check_preserving(capsys):
    argv = ["check", "--code", "hybrid:4:3", "--property", "preserving", "--k", "3"]
    assert output(capsys, argv) == "holds\n"


def test_check_recoverable_reports_extended_decoder(capsys):
    argv = ["check", "--code", "hybrid:5:3", "--property", "recoverable", "--k", "2"]
    assert output(capsys, argv) == "holds\nextended decoder holds\n"


def test_check_failure_has_witness(capsys):
    argv = ["check", "--code", "brgc", "--n", "4", "--property", "recoverable", "--k", "2"]
    out = output(capsys, argv, 1).splitlines()
    assert out[0] == "fails"
    assert out[1].startswith("witness <")


def test_check_bound(capsys):
    argv = ["check", "--property", "bound", "--n", "3", "--k", "2", "--m", "7", "-q"]
    assert output(capsys, argv) == "no such code\n"
    argv = ["check", "--property", "bound", "--n", "2", "--k", "1", "--m", "4", "-q"]
    assert output(capsys, argv, 1).startswith("code found: ")


def test_synth_and_sim(capsys, tmp_path):
    path = str(tmp_path / "mux.net")
    assert output(capsys, ["synth", "--construction", "mux", "--out", path]) == "size 4\ndepth 3\n"
    assert output(capsys, ["sim", "--netlist", path, "11M", "010"]) == "M\n0\n"
    argv = ["synth", "--construction", "mux", "--mc", "--check-mc", "3", "--out", path]
    assert "mc holds on 27 inputs" in output(capsys, argv)
    assert output(capsys, ["sim", "--netlist", path, "11M"]) == "1\n"


def test_synth_mc_check_failure(capsys):
    out = output(capsys, ["synth", "--construction", "mux", "--check-mc", "1"], 1)
    assert "mc fails at 11M: M instead of 1" in out


def test_synth_frozen_stats(capsys):
    argv = ["synth", "--construction", "ppc", "--op", "XOR", "--n", "8"]
    assert output(capsys, argv) == "size 55\ndepth 12\n"


def test_tables(capsys):
    out = output(capsys, ["tables", "--table", "1"])
    assert out.startswith("X    0001 1001 ({25})")
    assert output(capsys, ["tables", "--format", "csv", "-q"]) == (
        "table,matches\n1,True\n2,True\n3,True\n4,True\n"
    )


def test_csv_format(capsys):
    argv = ["encode", "--code", "hybrid:5:3", "--format", "csv", "37"]
    assert output(capsys, argv) == "value,word\n37,01101 011\n"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["decode", "--code", "unary-up", "--n", "4", "1010"], 1),
        (["encode", "--code", "hybrid:5:3", "128"], 1),
        (["encode", "--code", "octal", "--n", "3", "1"], 2),
        (["encode", "--code", "hybrid:2:3", "1"], 2),
        (["decode", "--code", "brgc:4", "01M0"], 1),
        (["decode", "--code", "hybrid:5:3", "0110"], 2),
        (["interval", "--code", "brgc:3", "6", "8"], 2),
        (["encode", "37"], 2),
        (["frobnicate"], 2),
        (["synth", "--construction", "add", "--n", "3"], 2),
        (["add", "--code", "hybrid:5:3", "MMMMM 000", "MMMMM 000", "--max-resolutions", "8"], 3),
        (["add", "--code", "brgc:4", "--engine", "circuit", "0000", "0001"], 2),
        (["sim", "--netlist", "/nonexistent/mux.net", "11M"], 2),
        (["synth", "--construction", "mux", "--out", "/nonexistent/mux.net"], 2),
        (["encode", "--code", "unary-up", "--n", "4", "--k", "2", "3"], 2),
        (["encode", "--code", "hybrid:5:3", "--n", "5", "37"], 2),
        (["encode", "--code", "hybrid:5:3", "--k", "3", "37"], 2),
        (["check", "--code", "brgc:4", "--n", "4", "--property", "gray"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(argv) == code


def test_argument_file(capsys, tmp_path):
    path = tmp_path / "args"
    path.write_text("# hybrid adder\nencode\n--code   hybrid:5:3\n37\n")
    assert output(capsys, [f"@{path}"]) == "01101 011\n"


def test_parse_options_shortcuts():
    options = parse_options(["tables", "-q"])
    assert options["verbosity"] == "warning"
    assert "table" not in options


def test_synth_csv_row(capsys):
    argv = ["synth", "--construction", "ppc", "--n", "8", "--format", "csv"]
    assert output(capsys, argv) == "construction,n,k,size,depth,mc\nppc_xor_8,8,,55,12,\n"
    argv = ["synth", "--construction", "mux", "--check-mc", "1", "--format", "csv"]
    assert output(capsys, argv, 1).splitlines()[1] == "naive_mux,,,4,3,False"


def test_check_level_with_full_code_form(capsys):
    argv = ["check", "--code", "brgc:4", "--property", "preserving", "--k", "1"]
    assert output(capsys, argv) == "holds\n"
