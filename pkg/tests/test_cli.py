import json

import numpy as np
import numpy.testing as nptest
import pytest

import holdscan as hs
from holdscan import cli
from holdscan.errors import (
    InternalConsistencyError,
    MixedSignWithoutFlag,
    ParseError,
)

GOLDEN_CSV = """investor,stock,amount
inv1,stk1,30
inv1,stk2,10
inv2,stk1,5
inv2,stk2,25
inv3,stk1,15
inv3,stk2,15
"""


@pytest.fixture
def golden_csv(tmp_path):
    path = tmp_path / "golden.csv"
    path.write_text(GOLDEN_CSV, encoding="utf-8")
    return path


def test_ingest_golden_csv(golden_csv):
    matrix = cli.ingest(golden_csv)
    assert matrix.investor_labels == ("inv1", "inv2", "inv3")
    assert matrix.stock_labels == ("stk1", "stk2")
    nptest.assert_allclose(
        matrix.entries, [[0.30, 0.10], [0.05, 0.25], [0.15, 0.15]], atol=1e-15
    )


def test_ingest_sums_duplicate_rows(tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text(
        "investor,stock,amount\ninv1,stk1,10\ninv1,stk1,10\ninv2,stk1,20\n",
        encoding="utf-8",
    )
    matrix = cli.ingest(path)
    nptest.assert_allclose(matrix.entries, [[0.5], [0.5]], atol=1e-15)


def test_ingest_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(ParseError):
        cli.ingest(path)


def test_ingest_reports_line_numbers(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("investor,stock,amount\ninv1,stk1,abc\n", encoding="utf-8")
    with pytest.raises(ParseError, match=":2"):
        cli.ingest(path)


def test_ingest_rejects_negative_amount(tmp_path):
    path = tmp_path / "neg.csv"
    path.write_text("investor,stock,amount\ninv1,stk1,-3\n", encoding="utf-8")
    with pytest.raises(ParseError, match=":2"):
        cli.ingest(path)


def test_ingest_sign_column_needs_flag(tmp_path):
    path = tmp_path / "signed.csv"
    path.write_text(
        "investor,stock,amount,sign\nh1,s1,4,+\nh1,s2,1,-\n", encoding="utf-8"
    )
    with pytest.raises(MixedSignWithoutFlag):
        cli.ingest(path)
    book = cli.ingest(path, signed=True)
    assert isinstance(book, hs.SignedOwnership)
    assert book.net_exposure == pytest.approx(0.6, abs=1e-12)


def test_ingest_json_records(tmp_path):
    path = tmp_path / "records.json"
    path.write_text(
        json.dumps(
            [
                {"investor": "a", "stock": "x", "amount": 3},
                {"investor": "b", "stock": "x", "amount": 1},
            ]
        ),
        encoding="utf-8",
    )
    matrix = cli.ingest(path, fmt="json")
    nptest.assert_allclose(matrix.entries, [[0.75], [0.25]], atol=1e-15)


def test_ingest_scale_invariance(tmp_path, golden_csv):
    scaled = tmp_path / "scaled.csv"
    lines = GOLDEN_CSV.strip().splitlines()
    scaled_rows = [lines[0]] + [
        ",".join(parts[:2] + [str(float(parts[2]) * 977.0)])
        for parts in (line.split(",") for line in lines[1:])
    ]
    scaled.write_text("\n".join(scaled_rows) + "\n", encoding="utf-8")
    base = cli.dashboard(cli.ingest(golden_csv))
    other = cli.dashboard(cli.ingest(scaled))
    assert base == other


def test_dashboard_golden_values(golden_csv):
    dash = cli.dashboard(cli.ingest(golden_csv))
    assert dash.H_I == pytest.approx(0.34, abs=1e-15)
    assert dash.H_S == 0.50
    assert dash.M == pytest.approx(0.21, abs=1e-15)
    assert dash.Psi == pytest.approx(0.04 / 0.13, abs=1e-9)
    assert dash.X == pytest.approx(7 / 30, abs=1e-10)
    assert dash.rho == pytest.approx(np.sqrt(7 / 30), abs=1e-10)
    assert dash.psi_certified is True
    assert dash.psi_reason is None


def test_dashboard_psi_disabled():
    matrix = hs.OwnershipMatrix(np.full((2, 2), 0.25))
    dash = cli.dashboard(matrix, compute_psi=False)
    assert dash.Psi is None
    assert dash.psi_reason == "disabled"


def test_dashboard_psi_degenerate_single_stock():
    matrix = hs.OwnershipMatrix(np.array([[0.4], [0.6]]))
    dash = cli.dashboard(matrix)
    assert dash.Psi is None
    assert dash.psi_reason is not None
    assert dash.rho == 0.0
    assert dash.X == pytest.approx(0.0, abs=1e-12)


def test_report_json_schema_and_rounding(golden_csv):
    matrix = cli.ingest(golden_csv)
    dash = cli.dashboard(matrix)
    dep = hs.dependence_index(matrix)
    payload = json.loads(cli.report(matrix, dash, dep, fmt="json", seed=0))
    assert payload["schema_version"] == 1
    assert set(payload) == {
        "schema_version",
        "labels",
        "marginals",
        "dashboard",
        "contributions",
        "certification",
        "provenance",
    }
    assert payload["dashboard"]["X"] == 0.233333
    assert str(payload["dashboard"]["rho"]).startswith("0.483046")
    assert payload["certification"]["psi_certified"] is True
    assert payload["provenance"]["seed"] == 0
    # the most tilted investor carries the largest contribution
    contributions = payload["contributions"]["investor"]
    assert max(contributions) == contributions[1]


def test_report_text_is_fixed_width(golden_csv):
    matrix = cli.ingest(golden_csv)
    dash = cli.dashboard(matrix)
    dep = hs.dependence_index(matrix)
    text = cli.report(matrix, dash, dep, fmt="text")
    lines = text.splitlines()
    assert lines[0] == "metric  value"
    assert any(line.startswith("H_I") and "0.34" in line for line in lines)
    assert any(line.startswith("rho") and "0.483046" in line for line in lines)


def test_main_dashboard_determinism(golden_csv, capsys):
    argv = ["dashboard", str(golden_csv), "--format", "json"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["dashboard"]["M"] == 0.21


def test_round_trip_reingestion(tmp_path, golden_csv):
    matrix = cli.ingest(golden_csv)
    exported = tmp_path / "export.csv"
    cli.write_csv(matrix, exported)
    again = cli.ingest(exported)
    nptest.assert_array_equal(matrix.entries, again.entries)
    assert cli.dashboard(matrix) == cli.dashboard(again)


def test_main_exit_codes(tmp_path, golden_csv, capsys, monkeypatch):
    missing = tmp_path / "missing.csv"
    assert cli.main(["dashboard", str(missing)]) == 2
    capsys.readouterr()
    assert cli.main(["dashboard", str(golden_csv)]) == 0
    capsys.readouterr()

    def explode(*args, **kwargs):
        raise InternalConsistencyError("synthetic failure")

    monkeypatch.setattr(cli, "dependence_index", explode)
    assert cli.main(["dashboard", str(golden_csv)]) == 3
    capsys.readouterr()


def test_main_rejects_unknown_subcommand(capsys):
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_shock_subcommand(tmp_path, golden_csv, capsys):
    shocks = tmp_path / "shocks.csv"
    shocks.write_text(
        "label,value\ninv1,1.0\ninv2,-1.0\ninv3,-0.3333333333333333\n", encoding="utf-8"
    )
    assert cli.main(
        ["shock", str(golden_csv), "--shocks", str(shocks), "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["severity"] == 0.16
    assert payload["impact"]["stk1"] == 0.4


def test_alpha_subcommand_with_projection(tmp_path, golden_csv, capsys):
    rets = tmp_path / "rets.csv"
    rets.write_text("label,value\nstk1,1.5\nstk2,-0.5\n", encoding="utf-8")
    code = cli.main(
        [
            "alpha",
            str(golden_csv),
            "--returns",
            str(rets),
            "--project-returns",
            "--format",
            "json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["variance"] == pytest.approx(7 / 30, rel=1e-4)


def test_vector_file_validation(tmp_path, golden_csv, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("label,value\ninv1,1.0\n", encoding="utf-8")
    assert cli.main(["shock", str(golden_csv), "--shocks", str(bad)]) == 2
    capsys.readouterr()


def test_aggregate_subcommand(tmp_path, golden_csv, capsys):
    groups = tmp_path / "groups.txt"
    groups.write_text("inv1,inv2\ninv3\n", encoding="utf-8")
    assert cli.main(
        ["aggregate", str(golden_csv), "--groups", str(groups), "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["between"] + payload["within"] == pytest.approx(0.233333, abs=1e-5)


def test_merge_subcommand(golden_csv, capsys):
    assert cli.main(
        ["merge", str(golden_csv), "--pair", "inv1,inv2", "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["after"]["H_I"] == pytest.approx(0.58, abs=1e-9)
    assert payload["predicted_after"]["M"] == pytest.approx(0.29, abs=1e-9)


def test_drop_stock_subcommand(golden_csv, capsys):
    assert cli.main(
        ["drop-stock", str(golden_csv), "--stock", "stk2", "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["after"]["M"] == 0.46


def test_dilute_subcommand(golden_csv, capsys):
    assert cli.main(
        ["dilute", str(golden_csv), "--mass", "0.5", "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["after"]["X"] == pytest.approx(0.116667, abs=1e-6)


def test_family_subcommands(capsys):
    assert cli.main(["family", "2x2", "--a", "0.9", "--b", "0.9", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["m_min"] == 0.66
    assert cli.main(["family", "nonid", "--t", "0.1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["M"] == 0.34
    assert payload["X"] == 0.36


def test_renyi_subcommand(golden_csv, capsys):
    assert cli.main(["renyi", str(golden_csv), "--alpha", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["M_alpha"] == 0.21


def test_signed_subcommand(tmp_path, capsys):
    path = tmp_path / "book.csv"
    path.write_text(
        "investor,stock,amount,sign\nh1,s1,0.4,+\nh1,s2,0.1,-\nh2,s1,0.1,-\nh2,s2,0.4,+\n",
        encoding="utf-8",
    )
    assert cli.main(["signed", str(path), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["eta"] == 0.6
    assert payload["X_signed"] == 1.0


def test_psi_subcommand(golden_csv, capsys):
    assert cli.main(["psi", str(golden_csv), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["psi"] == pytest.approx(0.307692, abs=1e-6)
    assert payload["certified"] is True


def test_decompose_subcommand(golden_csv, capsys):
    assert cli.main(["decompose", str(golden_csv), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    contributions = [row["dependence_contribution"] for row in payload["investors"]]
    assert max(contributions) == contributions[1]
