import pytest


from cherrytree.cli import EXIT_FOUND, EXIT_INVALID, EXIT_OK, run


PLANTED = "./tests/inputs/planted.cheg"
HADAMARD3 = "./tests/inputs/hadamard3.sldc"
TRIANGLE = "./tests/inputs/triangle.cheg"


def lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_gen_hadamard_then_validate(tmp_path, capsys):
    assert run(["gen", "hadamard", "--k", "4", "--seed", "1", "--out", str(tmp_path / "h")]) == EXIT_OK
    out = lines(capsys)
    assert out[:3] == ["seed 1", "k 4", "n 16"]
    assert out[-1] == f"out {tmp_path / 'h.sldc'}"
    assert run(["validate", str(tmp_path / "h.sldc")]) == EXIT_OK
    out = lines(capsys)
    assert "structural ok" in out
    assert "algebraic ok" in out
    assert "exhaustive ok" in out


def test_gen_planted_then_oracle(tmp_path, capsys):
    out_file = str(tmp_path / "planted.cheg")
    assert run(["gen", "planted", "--out", out_file]) == EXIT_OK
    assert lines(capsys) == ["n 6", "k 4", "m 4", f"out {out_file}"]
    assert run(["oracle", out_file, "--brute-force"]) == EXIT_FOUND
    assert lines(capsys) == ["brute_force agrees", "condition_ii violated", "violation color=0", "edges 0 1 2 3"]


def test_gen_infeasible(tmp_path, capsys):
    args = ["gen", "random", "--n", "8", "--k", "2", "--delta", "1/2", "--out", str(tmp_path / "r.cheg")]
    assert run(args) == EXIT_INVALID
    assert not (tmp_path / "r.cheg").exists()
    assert capsys.readouterr().err.startswith("error:")


def test_gen_hypercube(tmp_path, capsys):
    assert run(["gen", "hypercube", "--k", "3", "--out", str(tmp_path / "cube.cheg")]) == EXIT_OK
    assert lines(capsys)[:3] == ["n 8", "k 3", "m 12"]
    assert run(["demo2q", str(tmp_path / "cube.cheg")]) == EXIT_OK
    assert lines(capsys) == ["reached 8", "distinct 8", "consistent yes"]


def test_validate(capsys):
    assert run(["validate", PLANTED]) == EXIT_OK
    assert lines(capsys) == ["linear ok", "matchings ok", "delta 1/6"]
    assert run(["validate", PLANTED, "--delta", "1/3"]) == EXIT_FOUND
    assert "matchings FAIL" in lines(capsys)


def test_validate_broken_code(tmp_path, capsys):
    with open(HADAMARD3) as file:
        content = file.read()
    broken = tmp_path / "broken.sldc"
    broken.write_text(content.replace("m 2 2 4 7", "m 2 1 2 4"))
    assert run(["validate", str(broken)]) == EXIT_FOUND
    out = lines(capsys)
    assert "algebraic FAIL" in out
    assert "failure color=2 triple 1 2 4" in out


def test_oracle_holds(capsys):
    assert run(["oracle", HADAMARD3]) == EXIT_OK
    assert lines(capsys) == ["condition_ii holds"]


@pytest.mark.parametrize("path", ["./tests/inputs/missing.cheg", "./tests/inputs/bad.cheg"])
def test_oracle_invalid_input(path, capsys):
    assert run(["oracle", path]) == EXIT_INVALID
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert len(err.strip().splitlines()) == 1


def test_stats_planted(capsys):
    assert run(["stats", PLANTED]) == EXIT_OK
    out = lines(capsys)
    assert out[:5] == ["n 6", "k 4", "m 4", "delta 1/6", "degree 2 6"]
    for line in [
        "degree_sum 12",
        "degree_square_sum 24",
        "cauchy_schwarz 24/1",
        "chain_bound 32/1",
        "cherry_edges 24",
        "exact_identity ok",
        "avg_sig_degree 8/5",
        "default_threshold 1",
    ]:
        assert line in out
    assert not any(line.startswith("claim22_bound") for line in out)


def test_stats_empty(capsys):
    assert run(["stats", "./tests/inputs/empty.cheg"]) == EXIT_OK
    assert "m 0" in lines(capsys)


def test_stats_hadamard(capsys):
    assert run(["stats", HADAMARD3]) == EXIT_OK
    out = lines(capsys)
    assert "m 3" in out
    assert "delta 1/8" in out
    assert "exact_identity ok" in out


def test_siggraph(capsys):
    assert run(["siggraph", PLANTED]) == EXIT_OK
    out = lines(capsys)
    assert out[:4] == ["seed 0", "sig_vertices 30", "sig_edges 24", "exact_identity ok"]


def test_witness_planted(capsys):
    assert run(["witness", PLANTED, "--roots", "64"]) == EXIT_FOUND
    out = lines(capsys)
    assert out[0] == "seed 0"
    assert out[1].startswith("certificate color=")
    assert out[2] == "edges 0 1 2 3"
    assert out[3] == "verified ok"


def test_witness_not_found(capsys):
    assert run(["witness", HADAMARD3]) == EXIT_OK
    assert lines(capsys)[-1].startswith("not-found roots=")


def test_witness_workers(tmp_path, capsys):
    out_file = str(tmp_path / "random.cheg")
    assert run(["gen", "random", "--n", "15", "--k", "6", "--delta", "1/5", "--seed", "3", "--out", out_file]) == 0
    capsys.readouterr()
    outputs = []
    for workers in ("1", "4"):
        code = run(["witness", out_file, "--seed", "7", "--workers", workers])
        outputs.append((code, capsys.readouterr().out))
    assert outputs[0] == outputs[1]


def test_oracle_cert_out_then_check(tmp_path, capsys):
    cert = tmp_path / "planted"
    assert run(["oracle", PLANTED, "--cert-out", str(cert)]) == EXIT_FOUND
    assert lines(capsys)[-1] == f"saved {cert}.cert"
    assert (tmp_path / "planted.cert").read_text() == "violation color=0\nedges 0 1 2 3\n"
    assert run(["check", PLANTED, str(tmp_path / "planted.cert")]) == EXIT_FOUND
    assert lines(capsys) == ["kind violation", "verified ok"]


def test_witness_cert_out_then_check(tmp_path, capsys):
    cert = str(tmp_path / "w.cert")
    assert run(["witness", PLANTED, "--roots", "64", "--cert-out", cert]) == EXIT_FOUND
    assert lines(capsys)[-2:] == [f"saved {cert}", "verified ok"]
    assert run(["check", PLANTED, cert]) == EXIT_FOUND
    assert lines(capsys) == ["kind certificate", "verified ok"]


@pytest.mark.parametrize(
    "content, code",
    [
        ("violation color=0\nedges 0\n", EXIT_OK),
        ("certificate color=7\nedges 0 1 2 3\n", EXIT_OK),
        ("violation color=0\nedges 0 1 2 9\n", EXIT_INVALID),
        ("violation 0\nedges 0 1 2 3\n", EXIT_INVALID),
    ],
)
def test_check_rejects(tmp_path, capsys, content, code):
    cert = tmp_path / "c.cert"
    cert.write_text(content)
    assert run(["check", PLANTED, str(cert)]) == code
    if code == EXIT_OK:
        assert lines(capsys)[-1] == "verified FAIL"
    else:
        assert capsys.readouterr().err.startswith("error:")


def test_demo2q(capsys):
    assert run(["demo2q", "--k", "3"]) == EXIT_OK
    assert lines(capsys) == ["reached 8", "distinct 8", "consistent yes"]
    assert run(["demo2q", TRIANGLE]) == EXIT_FOUND
    assert lines(capsys) == ["reached 3", "distinct 3", "consistent no", "violation color=0", "edges 0 1 2"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["oracle"],
        ["oracle", PLANTED, "--unknown"],
        ["demo2q"],
        ["demo2q", TRIANGLE, "--k", "3"],
        ["witness", PLANTED, "--workers", "0"],
        ["gen", "hadamard", "--k", "3"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_INVALID
    assert capsys.readouterr().err.startswith("error:")
