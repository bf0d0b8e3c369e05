import json

import pytest

from lgmirror.cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_text(capsys):
    code, out, _ = run(capsys, "generate", "--k", "2", "--degrees", "1")
    assert code == EXIT_OK
    assert out.strip() == "a_1_1 + a_1_2*a_1_1^-1 + a_2_1*a_1_1^-1 + a_2_1^-1 + a_1_2^-1"


def test_generate_json_and_dump(capsys, tmp_path):
    dump = tmp_path / "trace.json"
    code, out, _ = run(capsys, "--format", "json", "--dump-pipeline", str(dump), "generate", "--k", "3",
                       "--degrees", "2,1", "--strict-verify")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["method"] == "main"
    trace = json.loads(dump.read_text())
    assert [s["lemma"] for s in trace["steps"]] == ["horizontal-start", "horizontal-basic"]


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "generate", "--k", "2", "--degrees", "3", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["spec"]["k"] == 2


def test_generate_other_methods_agree(capsys):
    results = []
    for method in ("main", "closed-form"):
        code, out, _ = run(capsys, "generate", "--k", "4", "--degrees", "1,1", "--method", method)
        assert code == EXIT_OK
        results.append(out)
    assert results[0] == results[1]
    code, out, _ = run(capsys, "generate", "--k", "2", "--degrees", "3", "--method", "appendix",
                       "--partition", '{"E":[3,4],"Em":[[1,2,5,6]],"sm":[1]}')
    assert code == EXIT_OK and "y_2_3" in out


def test_iseries(capsys):
    code, out, _ = run(capsys, "iseries", "--k", "2", "--degrees", "1", "--terms", "7")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "1, 0, 0, 12, 0, 0, 540"
    code, out, _ = run(capsys, "iseries", "--N", "4", "--degrees", "3", "--terms", "5")
    assert out.strip() == "1, 0, 12, 0, 540"


def test_period_check(capsys):
    code, out, _ = run(capsys, "period-check", "--k", "3", "--degrees", "1,1,1", "--terms", "7")
    assert code == EXIT_OK and "verdict: pass" in out
    code, out, _ = run(capsys, "--format", "json", "period-check", "--N", "5", "--degrees", "2,2")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "pass"


def test_compare_methods(capsys):
    code, out, _ = run(capsys, "compare-methods", "--k", "3", "--degrees", "2,1", "--terms", "5")
    assert code == EXIT_OK and out.startswith("periods agree: yes")


def test_newton(capsys):
    code, out, _ = run(capsys, "newton", "--poly", "x + y + 1/(x*y)")
    assert code == EXIT_OK and "origin in interior: yes" in out
    code, out, _ = run(capsys, "--format", "json", "newton", "--k", "2", "--degrees", "1,1")
    assert json.loads(out)["origin_in_interior"] is True


def test_examples(capsys):
    code, out, _ = run(capsys, "examples", "--id", "V14")
    assert code == EXIT_OK and out.strip() == "pass  V14"


@pytest.mark.parametrize("argv", [
    ["generate", "--k", "2", "--degrees", "2,2"],
    ["generate", "--degrees", "1"],
    ["generate", "--k", "2", "--N", "3"],
    ["generate", "--k", "2", "--degrees", "3", "--method", "appendix", "--partition", '{"E":[3,4],"Em":[[1,2,5]],"sm":[1]}'],
    ["generate", "--k", "2", "--degrees", "2", "--method", "closed-form"],
    ["examples", "--id", "nope"],
    ["examples"],
    ["newton", "--poly", "(x + 1)/(y + 1)"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


def test_bad_degree_list_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--k", "2", "--degrees", "one"])
    assert exc.value.code == 2


def test_failed_verdict_exits_one(capsys, monkeypatch):
    import lgmirror.cli as cli
    from lgmirror.periods import Series

    real = cli.check_period_condition

    def broken(*args, **kwargs):
        report = real(*args, **kwargs)
        report.iseries = Series([c + 1 for c in report.iseries.coefficients])
        report.verdict = "fail"
        return report

    monkeypatch.setattr(cli, "check_period_condition", broken)
    code, out, _ = run(capsys, "period-check", "--k", "2", "--degrees", "1")
    assert code == EXIT_FAIL and "verdict: fail" in out


def test_internal_error_exits_three(capsys, monkeypatch):
    import lgmirror.cli as cli
    from lgmirror.transform import LemmaInapplicableError

    def boom(*args, **kwargs):
        raise LemmaInapplicableError("forced")

    monkeypatch.setattr(cli, "run_main_theorem", boom)
    code, _, err = run(capsys, "generate", "--k", "2", "--degrees", "1")
    assert code == EXIT_INTERNAL and "internal error" in err
