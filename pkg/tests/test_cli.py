import pytest

from sievecorr.lab.cli import main


def test_sieve_dump(capsys):
    assert main(["sieve", "--preset", "unit", "--Q", "2", "--start", "5", "--end", "8"]) == 0
    assert capsys.readouterr().out.split("\n")[:4] == ["5 1", "6 2", "7 1", "8 2"]


def test_corr_and_decompose(capsys):
    args = ["--preset1", "unit", "--preset2", "unit", "--D", "2", "--Q", "2", "--N", "4", "--a", "1"]
    assert main(["corr", *args]) == 0
    out = capsys.readouterr().out
    assert "C(1) = 8" in out and "open exact = 8" in out
    assert main(["decompose", *args]) == 0
    assert "identity_gap = 0" in capsys.readouterr().out


def test_integrals_and_bilinear(capsys):
    assert main(["integrals", "--D", "20", "--Q", "20", "--N", "500", "--h", "8"]) == 0
    assert "J_exact" in capsys.readouterr().out
    assert main(["bilinear", "--D", "16", "32", "--Q", "16", "32", "--trials", "2"]) == 0
    assert "envelope slope" in capsys.readouterr().out


def test_identities_command(capsys):
    assert main(["identities", "--suite", "weights", "--suite", "resummation"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2


def test_sweep_and_fit(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("N_list = 512,1024,2048\ntheta = 0.3\nlambda1 = 0.5\nlambda2 = 0.5\n")
    base = str(tmp_path / "out")
    assert main(["sweep", "--config", str(cfg), "--output-path", base, "--workers", "2"]) == 0
    assert "empirical_eps0" in capsys.readouterr().out
    for suffix in (".csv", ".json", ".timings.json"):
        assert (tmp_path / ("out" + suffix)).exists()
    plot = tmp_path / "plot.csv"
    assert main(["fit", base + ".csv", "--plot", str(plot)]) == 0
    assert "slope" in capsys.readouterr().out
    assert plot.read_text().startswith("N,J_over_Nh2\n")


def test_exit_codes(tmp_path, capsys):
    assert main(["sweep", "--N-list", "100", "--theta", "0.7", "--lambda1", "0.5", "--lambda2", "0.5"]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("unknown = 1\n")
    assert main(["sweep", "--config", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["sieve"])
    assert exc.value.code == 2
    two = tmp_path / "two.csv"
    two.write_text("")
    assert main(["fit", str(two)]) == 2
