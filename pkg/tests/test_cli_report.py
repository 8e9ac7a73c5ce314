import json

import pytest

from app.config import Config, Instance, Settings
from app.core.suites import SUITES, RunConfig, run_suite
from app.core.template_manager import emit_report, get_template_manager
from app.main import (EXIT_CONFIG_ERROR, EXIT_OK, EXIT_RESOURCE_CAP, EXIT_VERIFICATION_FAILED,
                      main)


def run_json(capsys, *argv):
    code = main(["verify", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_templates_are_registered():
    manager = get_template_manager()
    assert [t["id"] for t in manager.get_template_list()] == ["docx", "json", "markdown"]
    assert manager.get_template("markdown").file_extension == ".md"
    with pytest.raises(KeyError):
        manager.get_template("pdf")


def test_verify_json_to_stdout(config_dir, capsys):
    code, report = run_json(capsys, "--group", "Z2", "--suites", "group,double,hopf")
    assert code == EXIT_OK
    assert set(report) == {"version", "config", "suites", "overall"}
    assert report["overall"] is True
    assert [s["suite"] for s in report["suites"]] == ["group", "double", "hopf"]
    assert "seconds" not in report["suites"][0]
    assert report["suites"][1]["dimensions"] == {"double": 4}


def test_suites_run_in_canonical_order(config_dir, capsys):
    _, report = run_json(capsys, "--group", "Z2", "--suites", "hopf,group", "--timings")
    assert [s["suite"] for s in report["suites"]] == ["group", "hopf"]
    assert all("seconds" in s for s in report["suites"])


def test_full_run_on_z2(config_dir, capsys):
    code, report = run_json(capsys, "--group", "Z2", "--subgroup", "all")
    assert code == EXIT_OK
    assert [s["suite"] for s in report["suites"]] == list(SUITES)
    negative = report["suites"][-1]
    assert negative["expect"] == "fail"
    assert negative["passed"] is True
    assert all(law["failure_count"] > 0 for law in negative["laws"])


def test_json_report_is_deterministic(config_dir, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--group", "S3", "--subgroup", "(123)", "--suites", "group,double,hopf",
            "--mode", "sampled:42"]
    assert main(args + ["--out", str(first)]) == EXIT_OK
    assert main(args + ["--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes().endswith(b"}\n")


def test_negative_suite_on_non_normal_subgroup(config_dir, capsys):
    code, report = run_json(capsys, "--group", "S3", "--subgroup", "(12)", "--suites", "negative")
    assert code == EXIT_OK
    laws = {law["law"] for law in report["suites"][0]["laws"]}
    assert "corrupted_table_associativity" in laws
    assert any(name.startswith("non_normal_module_algebra") for name in laws)
    assert any(name.startswith("phi_not_an_action") for name in laws)


def test_non_normal_subgroup_with_positive_suites(config_dir, capsys):
    assert main(["verify", "--group", "S3", "--subgroup", "(12)", "--suites", "double"]) == \
        EXIT_CONFIG_ERROR


@pytest.mark.parametrize("argv", [
    ["--group", "Z2", "--suites", "bogus"],
    ["--group", "T7"],
    ["--group", "Z2", "--window", "2,1"],
    ["--group", "Z2", "--mode", "random"],
    ["--group", "Z2", "--format", "pdf"],
    ["--group", "Z2", "--suites", "group", "--format", "docx"],
    ["--group", "S3", "--subgroup", "(1234)", "--suites", "group"],
])
def test_configuration_errors_exit_2(config_dir, capsys, argv):
    assert main(["verify", *argv]) == EXIT_CONFIG_ERROR


def test_docx_without_out_fails_before_running(config_dir, monkeypatch, caplog):
    from app.core import suites

    def must_not_run(cfg):
        raise AssertionError("suites ran for an invalid invocation")

    monkeypatch.setattr(suites, "run_suite", must_not_run)
    argv = ["verify", "--group", "S3", "--subgroup", "(123)", "--format", "docx"]
    assert main(argv) == EXIT_CONFIG_ERROR
    assert "needs --out" in caplog.text


def test_resource_cap_exit_3(config_dir, caplog):
    argv = ["verify", "--group", "S3", "--subgroup", "all", "--window", "0,2", "--suites", "field"]
    assert main(argv) == EXIT_RESOURCE_CAP
    assert "279936" in caplog.text


def test_group_order_cap_exit_3(config_dir):
    assert main(["verify", "--group", "S5", "--suites", "group"]) == EXIT_RESOURCE_CAP


def test_environment_cap_override(config_dir, monkeypatch):
    monkeypatch.setenv("QDV_MAX_BASIS", "10")
    assert main(["verify", "--group", "Z2", "--suites", "field"]) == EXIT_RESOURCE_CAP
    monkeypatch.setenv("QDV_MAX_BASIS", "lots")
    assert main(["verify", "--group", "Z2", "--suites", "group"]) == EXIT_CONFIG_ERROR


def test_unwritable_output_exit_2(config_dir, tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    out = blocker / "report.json"
    assert main(["verify", "--group", "Z2", "--suites", "group", "--out", str(out)]) == \
        EXIT_CONFIG_ERROR


def test_markdown_and_docx_reports(config_dir, tmp_path):
    md = tmp_path / "report.md"
    assert main(["verify", "--group", "Z2", "--suites", "group,double", "--format", "markdown",
                 "--out", str(md)]) == EXIT_OK
    text = md.read_text(encoding="utf-8")
    assert "**Overall: PASS**" in text
    assert "| double | 4 |" in text
    assert "| `associativity` | 64 | exhaustive | pass |" in text

    doc = tmp_path / "nested" / "report.docx"
    assert main(["verify", "--group", "Z2", "--suites", "group", "--format", "docx",
                 "--out", str(doc)]) == EXIT_OK
    assert doc.read_bytes()[:2] == b"PK"


def test_failing_suite_exit_1(config_dir, monkeypatch, capsys):
    from app.core import suites
    from app.core.verify import LawResult

    def broken(ctx):
        return suites.SuiteResult(suite="group", laws=[LawResult(law="forced", mode="exhaustive",
                                                                 checked=1, failure_count=1)])

    monkeypatch.setitem(suites.SUITE_RUNNERS, "group", broken)
    code, report = run_json(capsys, "--group", "Z2", "--suites", "group")
    assert code == EXIT_VERIFICATION_FAILED
    assert report["overall"] is False


def test_ingest_group(config_dir, tmp_path, capsys):
    table = tmp_path / "z3.txt"
    table.write_text("3\n0 1 2\n1 2 0\n2 0 1\na b c\n", encoding="utf-8")
    assert main(["ingest-group", str(table)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "order 3, identity a" in out
    assert "Elements: a b c" in out
    assert "Abelian: yes" in out
    assert "Normal subgroups (2):" in out

    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 0\n1 1\n", encoding="utf-8")
    assert main(["ingest-group", str(bad)]) == EXIT_CONFIG_ERROR


def test_verify_matrix(config_dir, tmp_path, capsys):
    Config().save_config(Settings(), [Instance(group="Z2", subgroup="all"),
                                      Instance(group="S3", subgroup="(12)", negative=True)])
    out_dir = tmp_path / "reports"
    code = main(["verify-matrix", "--suites", "group,double", "--out-dir", str(out_dir)])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("PASS")
    assert lines[1].startswith("PASS") and lines[1].endswith("negative")
    assert sorted(p.name for p in out_dir.iterdir()) == ["S3_-12-_0-1.json", "Z2_all_0-1.json"]


def test_run_config_validation():
    cfg = RunConfig.create(group="S3", subgroup="(123)", window="0,1", suites="phi,group")
    assert cfg.suites == ["group", "phi"]
    assert cfg.window == (0, 1)
    assert cfg.verify_mode().kind == "auto"
    assert RunConfig.create(group="Z2", mode="sampled:7").verify_mode().seed == 7


@pytest.mark.slow
def test_phi_report_counts_pairs(config_dir, tmp_path):
    cfg = RunConfig.create(group="S3", subgroup="(123)", window="0,1", suites="phi")
    report = run_suite(cfg)
    assert report.overall
    assert report.dimensions["iterated"] == 54
    text = emit_report(report, "markdown").decode("utf-8")
    assert "| `phi_multiplicative` | 2916 | exhaustive | pass |" in text
    assert "v_{h1}(x)v_{h2}(x)" in text


@pytest.mark.slow
def test_s3_a3_positive_suites(config_dir):
    cfg = RunConfig.create(group="S3", subgroup="(123)", window="0,1",
                           suites="group,double,hopf,field,observable")
    report = run_suite(cfg)
    assert report.overall, [(s.suite, [l.law for l in s.laws if not l.passed])
                            for s in report.suites]
    dims = report.dimensions
    assert dims["field"] == 972
    assert dims["vw_span"] == 54
    assert dims["double"] == 18
