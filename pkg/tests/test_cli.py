"""Command line surface: exit codes, JSON/text renderers, determinism."""

import json

import pytest

from qfermat.cli import (
    EXIT_CAPACITY,
    EXIT_FALSE,
    EXIT_INPUT,
    EXIT_TRUE,
    main,
)

TWIST5 = '{"n":5,"twist":[1,2,3,4,0]}'
GENERIC4 = '{"n":4,"exponents":[[0,0,0,0],[0,0,1,3],[0,3,0,1],[0,1,3,0]]}'
SKEW5 = '{"n":5,"twist":[1,0,0,0,0]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--output", "json")
    return code, json.loads(out)


# ------------------------------------------------------------------ check-cy


def test_check_cy_accepts_the_twist_example(capsys):
    code, blob = run_json(capsys, "check-cy", TWIST5)
    assert code == EXIT_TRUE
    assert blob["is_cy"] is True
    assert blob["column_sums"] == [0, 0, 0, 0, 0]
    assert blob["twist_vector"] == [0, 1, 2, 3, 4]


def test_check_cy_rejects_a_single_relation_matrix(capsys):
    doc = '{"n":5,"entries":[{"i":1,"j":2,"e":1}]}'
    code, blob = run_json(capsys, "check-cy", doc)
    assert code == EXIT_FALSE
    assert blob["is_cy"] is False
    assert blob["column_sums"] == [4, 1, 0, 0, 0]


def test_check_cy_text_and_json_carry_the_same_verdict(capsys):
    code_t, text = run(capsys, "check-cy", TWIST5)
    code_j, blob = run_json(capsys, "check-cy", TWIST5)
    assert code_t == code_j == EXIT_TRUE
    assert "is_cy" in text and "true" in text
    assert blob["is_cy"] is True


def test_params_can_come_from_a_file(capsys, tmp_path):
    path = tmp_path / "params.json"
    path.write_text(TWIST5, encoding="utf-8")
    code, blob = run_json(capsys, "check-cy", str(path))
    assert code == EXIT_TRUE and blob["is_cy"] is True


# ----------------------------------------------------------------- exit codes


def test_missing_file_is_an_input_error(capsys):
    code = main(["check-cy", "/nonexistent/params.json"])
    capsys.readouterr()
    assert code == EXIT_INPUT


def test_malformed_document_is_an_input_error(capsys):
    code = main(["check-cy", '{"n":3,"exponents":[[0,1,0],[1,0,0],[0,0,0]]}'])
    err = capsys.readouterr().err
    assert code == EXIT_INPUT
    assert "sum to 0" in err


def test_census_capacity_exit(capsys):
    code = main(["census", "--n", "7"])
    capsys.readouterr()
    assert code == EXIT_CAPACITY


def test_census_small_n_is_an_input_error(capsys):
    code = main(["census", "--n", "2"])
    capsys.readouterr()
    assert code == EXIT_INPUT


def test_bad_poly_is_an_input_error(capsys):
    code = main(["central", "--poly", "x9", TWIST5])
    err = capsys.readouterr().err
    assert code == EXIT_INPUT
    assert "x9" in err


# ------------------------------------------------------------------ centrality


def test_product_of_generators_is_central_on_the_twist_example(capsys):
    code, blob = run_json(
        capsys, "central", "--poly", "x1*x2*x3*x4*x5", TWIST5
    )
    assert code == EXIT_TRUE
    assert blob["central"] is True


def test_noncentral_polynomial_exits_false(capsys):
    code, blob = run_json(capsys, "central", "--poly", "x1", SKEW5)
    assert code == EXIT_FALSE
    assert blob["central"] is False


# ---------------------------------------------------------------- twist-check


def test_twist_check_recognizes_twists(capsys):
    code, blob = run_json(capsys, "twist-check", TWIST5)
    assert code == EXIT_TRUE
    assert blob["realizable"] is True
    assert blob["twist"] == [0, 1, 2, 3, 4]


def test_twist_check_rejects_generic_parameters(capsys):
    code, blob = run_json(capsys, "twist-check", GENERIC4)
    assert code == EXIT_FALSE
    assert blob["realizable"] is False


# --------------------------------------------------------------------- hilb1


def test_hilb1_quotient_counts_points(capsys):
    code, blob = run_json(capsys, "hilb1", "--algebra", "A", GENERIC4)
    assert code == EXIT_TRUE
    assert blob["discrete"] is True
    assert blob["total_points"] == 24
    assert len(blob["components"]) == 6


def test_hilb1_ambient_lists_faces(capsys):
    code, blob = run_json(capsys, "hilb1", "--algebra", "B", TWIST5)
    assert code == EXIT_TRUE
    assert blob["discrete"] is False
    assert blob["components"][0]["kind"] == "projective-space"


# ----------------------------------------------------------------- frobenius


def test_frobenius_reports_agreement(capsys):
    code, blob = run_json(capsys, "frobenius", GENERIC4)
    assert code == EXIT_TRUE
    assert blob["agree_mod_scalar"] is True
    assert blob["ratio"] is not None


# --------------------------------------------------------------------- patch


def test_patch_emits_the_chart_matrix(capsys):
    code, blob = run_json(capsys, "patch", "--invert", "2", TWIST5)
    assert code == EXIT_TRUE
    assert blob["order"] == 5
    assert len(blob["exponents"]) == 4
    assert "note" in blob


def test_patch_bad_chart_is_an_input_error(capsys):
    code = main(["patch", "--invert", "9", TWIST5])
    capsys.readouterr()
    assert code == EXIT_INPUT


# ---------------------------------------------------------------------- eval


def test_eval_normal_orders_the_expression(capsys):
    code, out = run(capsys, "eval", "--poly", "x2*x1", SKEW5)
    assert code == EXIT_TRUE
    assert "x1*x2" in out


def test_eval_json_round_trips_through_the_parser(capsys):
    code, blob = run_json(capsys, "eval", "--poly", "x2*x1 + 2*x3^2", SKEW5)
    assert code == EXIT_TRUE
    from qfermat.expr import lower, parse_poly, parse_params

    p = parse_params(SKEW5)
    reparsed = lower(parse_poly(blob["canonical"], 5, 5), p, "B")
    direct = lower(parse_poly("x2*x1 + 2*x3^2", 5, 5), p, "B")
    assert reparsed == direct


# -------------------------------------------------------------------- census


def test_census_four_generators(capsys):
    code, blob = run_json(capsys, "census", "--n", "4")
    assert code == EXIT_TRUE
    assert blob["total"] == 4096
    assert blob["count_generic_and_cy"] == 192
    assert blob["n4_dichotomy_holds"] is True


def test_census_csv_sidecar(capsys, tmp_path):
    out_csv = tmp_path / "counts.csv"
    code, _ = run_json(capsys, "census", "--n", "3", "--csv", str(out_csv))
    assert code == EXIT_TRUE
    rows = out_csv.read_text(encoding="utf-8").strip().splitlines()
    assert rows[0].startswith("predicate")
    assert any(line.startswith("total,27") for line in rows[1:])


def test_census_workers_env_default(capsys, monkeypatch):
    monkeypatch.setenv("QFERMAT_WORKERS", "2")
    code, blob = run_json(capsys, "census", "--n", "3")
    assert code == EXIT_TRUE
    assert blob["count_cy"] == 9


def test_census_json_is_byte_identical_across_runs(capsys):
    _, first = run(capsys, "census", "--n", "3", "--output", "json")
    _, second = run(capsys, "census", "--n", "3", "--output", "json")
    assert first == second


def test_check_cy_json_is_byte_identical_across_runs(capsys):
    _, first = run(capsys, "check-cy", TWIST5, "--output", "json")
    _, second = run(capsys, "check-cy", TWIST5, "--output", "json")
    assert first == second
