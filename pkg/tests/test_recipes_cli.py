import hashlib
from pathlib import Path

import pytest

from flatkey.cli import main as cli_main
from flatkey.recipes import (
    ConfigError,
    default_config,
    derive_seed,
    list_recipes,
    load_config,
    run_experiment,
)

EXPECTED_RECIPES = {
    "avalanche", "scatter", "ai2-vs-blind", "reverse-avalanche",
    "unicity-variety", "bitflip-demo", "lattice-demo", "decoy-demo",
}

SMALL = {
    "ai2-vs-blind": {"trials": 4},
    "reverse-avalanche": {"trials": 25},
    "unicity-variety": {"trials": 3},
    "decoy-demo": {"runs": 1},
    "scatter": {"m": 2000},
    "avalanche": {"trials": 2000},
}


def _run(recipe: str, out: Path, seed: int = 5, workers: int = 1) -> dict:
    cfg = default_config(recipe, seed=seed, out_dir=out, workers=workers)
    cfg.budgets.update(SMALL.get(recipe, {}))
    return run_experiment(cfg)


def _checksums(out: Path) -> dict:
    return {f.name: hashlib.sha256(f.read_bytes()).hexdigest() for f in sorted(out.iterdir())}


def test_registry_is_exactly_the_eight():
    assert {name for name, _ in list_recipes()} == EXPECTED_RECIPES
    assert all(doc for _, doc in list_recipes())


def test_unknown_recipe_names_nearest():
    with pytest.raises(ConfigError) as err:
        default_config("avalanch")
    assert "avalanche" in str(err.value)


@pytest.mark.parametrize("recipe", sorted(EXPECTED_RECIPES))
def test_each_recipe_runs_from_default_config(recipe, tmp_path):
    summary = _run(recipe, tmp_path / recipe)
    assert summary
    assert any(tmp_path.joinpath(recipe).iterdir())


def test_rerun_checksums_identical(tmp_path):
    _run("reverse-avalanche", tmp_path / "a")
    _run("reverse-avalanche", tmp_path / "b")
    assert _checksums(tmp_path / "a") == _checksums(tmp_path / "b")


def test_worker_count_does_not_change_bytes(tmp_path):
    _run("ai2-vs-blind", tmp_path / "w1", workers=1)
    _run("ai2-vs-blind", tmp_path / "w3", workers=3)
    assert _checksums(tmp_path / "w1") == _checksums(tmp_path / "w3")


def test_csv_headers_embed_config_hash(tmp_path):
    cfg = default_config("avalanche", seed=5, out_dir=tmp_path)
    cfg.budgets["trials"] = 500
    run_experiment(cfg)
    text = (tmp_path / "avalanche.csv").read_text()
    assert f"config_hash={cfg.config_hash()}" in text
    assert "master_seed=5" in text


def test_derive_seed_stable_and_distinct():
    assert derive_seed(1, "a") == derive_seed(1, "a")
    assert derive_seed(1, "a") != derive_seed(1, "b")
    assert derive_seed(1, "a") != derive_seed(2, "a")


def test_load_config_roundtrip(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(
        "[experiment]\nrecipe = avalanche\nseed = 9\nout = somewhere\n\n"
        "[cipher]\nfamily = spn\nrounds = 2\n\n[budgets]\ntrials = 123\n")
    cfg = load_config(path)
    assert cfg.recipe == "avalanche"
    assert cfg.seed == 9
    assert cfg.cipher.rounds == 2
    assert cfg.budgets["trials"] == 123
    # explicit arguments override the file
    cfg2 = load_config(path, seed=77, out_dir=tmp_path)
    assert cfg2.seed == 77 and cfg2.out_dir == tmp_path


def test_load_config_diagnostics(tmp_path):
    with pytest.raises(ConfigError, match="config"):
        load_config(tmp_path / "missing.cfg")
    bad = tmp_path / "bad.cfg"
    bad.write_text("[experiment]\nrecipe = avalanche\n\n[budgets]\ntrials = soon\n")
    with pytest.raises(ConfigError, match="budgets.trials"):
        load_config(bad)
    bad2 = tmp_path / "bad2.cfg"
    bad2.write_text("[experiment]\nseed = 3\n")
    with pytest.raises(ConfigError, match="recipe"):
        load_config(bad2)


# -- command line -----------------------------------------------------------


def test_cli_list_recipes(capsys):
    assert cli_main(["list-recipes"]) == 0
    out = capsys.readouterr().out
    for name in EXPECTED_RECIPES:
        assert name in out


def test_cli_unicity(capsys):
    assert cli_main(["unicity", "128", "2.3"]) == 0
    assert "55.65" in capsys.readouterr().out


def test_cli_run_exit_codes(tmp_path, capsys):
    rc = cli_main(["run", "--recipe", "avalanch", "--out", str(tmp_path)])
    assert rc == 1
    assert "config error" in capsys.readouterr().err
    rc = cli_main(["run", "--recipe", "lattice-demo", "--seed", "4", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "lattice_summary.txt").exists()


def test_cli_bruteforce_and_ai2(tmp_path, capsys):
    rc = cli_main(["bruteforce", "--cipher", "spn", "--rounds", "1",
                   "--known-plaintext", "HOLD THE BRIDGE ", "--key", "16/4a21", "--seed", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "found = 16/4a21" in out

    rc = cli_main(["ai2", "--cipher", "spn", "--rounds", "1",
                   "--candidates", "HOLD THE BRIDGE ,SEND MORE TROOPS",
                   "--key", "16/4a21", "--ranker", "hillclimb", "--seed", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "found = 16/4a21" in out
    assert "HOLD THE BRIDGE" in out


def test_cli_reverse_avalanche(capsys):
    rc = cli_main(["reverse-avalanche", "--cipher", "spn", "--rounds", "1",
                   "--k0", "16/0000", "--k1", "16/000f", "--seed", "3"])
    assert rc == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln and not ln.startswith("index")]
    assert len(lines) == 5
    assert lines[0].startswith("0,16/0000") and lines[-1].split(",")[1] == "16/000f"


def test_cli_bitflip_pipeline(tmp_path, capsys):
    book = tmp_path / "book.txt"
    stream = tmp_path / "stream.bin"
    assert cli_main(["bitflip", "keygen", "--book", str(book), "--alphabet", "ABCD",
                     "--n-bits", "16", "--max-strings", "2", "--seed", "4"]) == 0
    assert cli_main(["bitflip", "encode", "--book", str(book), "--message", "BADCAB",
                     "--noise-rate", "0.4", "--stream", str(stream), "--seed", "5"]) == 0
    capsys.readouterr()
    assert cli_main(["bitflip", "decode", "--book", str(book), "--stream", str(stream)]) == 0
    assert capsys.readouterr().out.strip() == "BADCAB"


def test_cli_lattice_pipeline(tmp_path, capsys):
    lat = tmp_path / "map.txt"
    stream = tmp_path / "stream.bin"
    assert cli_main(["lattice", "keygen", "--map", str(lat), "--alphabet", "ABCDE",
                     "--circles", "3", "--rays", "5", "--seed", "6"]) == 0
    assert cli_main(["lattice", "encode", "--map", str(lat), "--message", "DECADE",
                     "--max-len", "20", "--stream", str(stream), "--seed", "7"]) == 0
    capsys.readouterr()
    assert cli_main(["lattice", "decode", "--map", str(lat), "--stream", str(stream)]) == 0
    assert capsys.readouterr().out.strip() == "DECADE"


def test_cli_decoy_pipeline(tmp_path, capsys):
    stream = tmp_path / "cc.bin"
    prefix = str(tmp_path / "book_")
    assert cli_main(["decoy", "send", "--messages", "ABLE BAKER,CHARLIE DOG",
                     "--stream", str(stream), "--book-prefix", prefix,
                     "--n-bits", "24", "--h", "6", "--seed", "8"]) == 0
    capsys.readouterr()
    assert cli_main(["decoy", "recv", "--book", prefix + "1.txt", "--stream", str(stream)]) == 0
    assert capsys.readouterr().out.strip() == "CHARLIE DOG"


def test_cli_runtime_failure_is_exit_2(tmp_path, capsys):
    rc = cli_main(["bitflip", "decode", "--book", str(tmp_path / "nope.txt"),
                   "--stream", str(tmp_path / "nope.bin")])
    assert rc == 2
