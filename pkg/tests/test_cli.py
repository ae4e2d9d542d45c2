from __future__ import annotations

import io
import json
import os
import re
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from rsl import cli

GOLDEN = Path(__file__).parent / "golden"
UNIT_ON_0_2 = json.dumps(
    {"domain": {"a": "0", "b": "2", "cap": None}, "breakpoints": [], "pieces": [["1"]]}
)

ERROR_GOLDENS = {
    "error_syntax.json": ["eval", "--expr", "t + * 2"],
    "error_discontinuity.json": ["eval", "--expr", "piecewise{[0,1/2): t; [1/2,1]: 1 - 2*t}"],
    "error_cap.json": ["eval", "--cap", "2", "--expr", "t^3"],
    "error_domain_mismatch.json": ["spectrum", "--domain", "0", "1", "--expr", UNIT_ON_0_2],
    "error_minimal_generator.json": ["generator", "--prime", "Lmin:1/2"],
}


def run(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv: list[str]) -> tuple[int, dict]:
    code, out, _ = run([*argv, "--json"])
    return code, json.loads(out)


@pytest.mark.parametrize("name", sorted(ERROR_GOLDENS))
def test_error_goldens(name: str) -> None:
    code, out, _ = run([*ERROR_GOLDENS[name], "--json"])
    assert code == 2
    assert out.encode() == (GOLDEN / name).read_bytes()


def test_error_golden_codes() -> None:
    codes = {name: json.loads((GOLDEN / name).read_text())["error"] for name in ERROR_GOLDENS}
    assert codes == {
        "error_syntax.json": "SyntaxError",
        "error_discontinuity.json": "DiscontinuousPiecewise",
        "error_cap.json": "DegreeCapExceeded",
        "error_domain_mismatch.json": "DomainMismatch",
        "error_minimal_generator.json": "MinimalPrimeNotPrincipal",
    }


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["eval"],
        ["eval", "--expr", "t", "--domain", "1", "0"],
        ["eval", "--expr", "t", "--domain", "0", "x"],
        ["eval", "--expr", "t", "--mode", "ppoln"],
        ["eval", "--expr", "t", "--mode", "ppol", "--cap", "2"],
        ["lattice", "--op", "sup", "--expr", "t"],
        ["atomic", "--dim", "17"],
        ["atomic", "--dim", "2", "--vector", "1,2,3"],
    ],
)
def test_usage_errors_exit_1(argv: list[str]) -> None:
    code, _, err = run(argv)
    assert code == 1
    assert "usage error" in err


def test_usage_error_json_body() -> None:
    code, body = run_json(["atomic", "--dim", "0"])
    assert code == 1 and body["error"] == "UsageError"


@pytest.mark.parametrize("desc", ["X:1/2", "L:1/2", "M:1/2:3", "R:1/2:k", "M:abc", "R:1:1"])
def test_bad_prime_descriptors(desc: str) -> None:
    code, body = run_json(["member", "--expr", "t", "--prime", desc])
    assert code == 2
    assert body["error"] in ("InvalidDescriptor", "SchemaError")


def test_eval_verb() -> None:
    code, body = run_json(["eval", "--expr", "abs(t - 1/2)", "--at", "0", "--at", "3/4"])
    assert code == 0
    assert body["function"]["breakpoints"] == ["1/2"]
    assert body["values"] == [{"x": "0", "value": "1/2"}, {"x": "3/4", "value": "1/4"}]


def test_lattice_verb() -> None:
    code, body = run_json(["lattice", "--op", "sup", "--expr", "t", "--other", "1 - t"])
    assert code == 0 and body["result"]["pieces"] == [["1", "-1"], ["0", "1"]]
    code, body = run_json(["lattice", "--op", "zeros", "--expr", "pos(t - 1/2)"])
    assert body["zero_set"] == {"isolated": [], "intervals": [["0", "1/2"]]}


def test_lattice_irrational_breakpoint() -> None:
    code, body = run_json(["lattice", "--op", "abs", "--expr", "2*t^2 - 1"])
    (b,) = body["result"]["breakpoints"]
    assert b["poly"] == ["-1", "0", "2"]


def test_jet_verb() -> None:
    code, body = run_json(["jet", "--expr", "(t - 1/2)^2", "--at", "1/2", "--side", "L"])
    assert code == 0
    assert body["jet"]["derivs"] == ["0", "0", "2"]
    assert body["vanishing_order"] == 2 and body["psi"] == ["0", "0", "2"]
    code, body = run_json(["jet", "--expr", "pos(t - 1/2)", "--at", "1/2", "--side", "L"])
    assert body["vanishing_order"] == "inf"


def test_member_verb() -> None:
    code, body = run_json(["member", "--expr", "(t - 1/2)^2", "--prime", "L:1/2:1"])
    assert code == 0 and body["member"] is True
    algebraic = json.dumps({"kind": "M", "t0": {"poly": ["-1", "0", "2"], "lo": "1/2", "hi": "1"}, "k": None})
    code, body = run_json(["member", "--expr", "2*t^2 - 1", "--prime", algebraic])
    assert code == 0 and body["member"] is True


def test_generator_samples() -> None:
    code, body = run_json(["generator", "--prime", "L:1/4:2", "--samples", "30"])
    assert code == 0
    assert body["equivalence"] == {"samples": 30, "agree": 30}


def test_witness_verb() -> None:
    code, body = run_json(["witness", "--prime", "Lmin:1/2", "--expr", "pos(t - 1/2)"])
    assert code == 0 and body["checks"] == {"member": True, "dominated_by_g": False}
    code, body = run_json(["witness", "--type", "order-dense", "--prime", "M:1/2", "--expr", "1"])
    assert code == 0 and body["checks"] == {"member": True, "below_f": True}
    code, body = run_json(["witness", "--prime", "M:1/2", "--expr", "1"])
    assert code == 2


def test_chain_verb() -> None:
    code, body = run_json(["chain"])
    assert code == 0 and body["max_length"] == "inf" and body["verified"]
    assert body["witness"]["length"] == 7
    code, body = run_json(["chain", "--cap", "3"])
    assert body["max_length"] == 3
    code, body = run_json(["chain", "--prime", "Lmin:1/2", "--cutoff", "2"])
    assert body["truncated"] and body["length"] == 3


def test_norm_verb() -> None:
    code, body = run_json(["norm", "--expr", "(t - 1/2)^2", "--gauge", "abs(t - 1/2)", "--tol", "1/1000"])
    assert code == 0
    assert body == {"lo": "511/1024", "hi": "1/2", "tol": "1/1000"}


def test_atomic_verb() -> None:
    code, body = run_json(["atomic", "--dim", "3", "--vector", "0,2,0"])
    assert code == 0
    assert sum(i["class"] == "Maximal" for i in body["ideals"]) == 3
    assert body["atom"] == 2 and body["complement"]["support"] == [1, 3]


def test_text_output_is_a_table() -> None:
    code, out, _ = run(["spectrum", "--expr", "pos(t - 1/2)"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("descriptors")
    # every value starts in the same column
    assert len({len(re.match(r"\S+\s+", line).group()) for line in lines}) == 1


def test_text_error_on_stderr() -> None:
    code, out, err = run(["eval", "--expr", "t +"])
    assert code == 2 and out == "" and "SyntaxError" in err


def test_seed_env_override() -> None:
    env = {**os.environ, "RSL_SEED": "5"}
    argv = [sys.executable, "-m", "rsl.cli", "generator", "--prime", "R:1/2:1", "--samples", "5", "--json"]
    first = subprocess.run([*argv, "--seed", "1"], capture_output=True, text=True, env=env)
    second = subprocess.run([*argv, "--seed", "2"], capture_output=True, text=True, env=env)
    assert first.returncode == 0 and first.stdout == second.stdout
