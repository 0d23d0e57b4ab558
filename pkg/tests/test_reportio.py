"""Report serialization: canonical bytes and lossless round-trips."""

from fractions import Fraction

import pytest

from multilat.errors import NotUnimodular, ParseError
from multilat.intmat import intmat, mat_eq
from multilat.master import build_system, solve_master
from multilat.equiv import classify
from multilat.reportio import (
    dumps_canonical,
    load_matrix,
    load_presentation,
    load_rat_matrix,
    matrix_report,
    parse_report,
    render_report_text,
    render_snf_text,
    solution_report,
)
from multilat.snf import smith_decompose


def test_dumps_canonical_is_deterministic():
    a = dumps_canonical({"b": 1, "a": [2, 3]})
    b = dumps_canonical({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")


def test_load_matrix_and_errors():
    m = load_matrix("[[1, -2], [3, 4]]")
    assert mat_eq(m, intmat([[1, -2], [3, 4]]))
    for bad in ("not json", "[[1], [2, 3]]", "[[1.5]]", "{}", "[]"):
        with pytest.raises(ParseError):
            load_matrix(bad)


def test_load_rat_matrix():
    m = load_rat_matrix('[["1/2", 3], ["-2/4", "0"]]')
    assert m[0, 0] == Fraction(1, 2)
    assert m[1, 0] == Fraction(-1, 2)
    with pytest.raises(ParseError):
        load_rat_matrix('[["1/0"]]')


def test_load_presentation_validation():
    good = """{"schema_version": 1, "n": 1, "N": 1,
               "generators": [{"M": [[-1]], "sigma": [1, 0]}]}"""
    p, options = load_presentation(good)
    assert (p.n, p.N, p.K) == (1, 1, 1)
    assert options == {"bound": 2, "closure_cap": 10000, "perm_cap": 8}
    with pytest.raises(ParseError):
        load_presentation('{"schema_version": 2, "n": 1, "N": 1, "generators": []}')
    with pytest.raises(ParseError):
        load_presentation(good.replace('"sigma": [1, 0]', '"sigma": [0, 0]'))
    with pytest.raises(NotUnimodular):
        load_presentation(good.replace("[[-1]]", "[[2]]"))
    with pytest.raises(ParseError):
        load_presentation(good.replace('"n": 1', '"n": 1, "options": {"bogus": 3}'))


def test_snf_report_renders(hexagonal):
    from multilat.representation import build_master_matrix

    dec = smith_decompose(build_master_matrix(hexagonal))
    rep = matrix_report(dec)
    assert rep["rank"] == 3
    text = render_snf_text(dec)
    assert "rank: 3" in text


def test_solution_report_roundtrip(hexagonal):
    sys_ = build_system(hexagonal)
    families = solve_master(sys_)
    report = classify(sys_, families, bound=1)
    rep = solution_report(sys_, families, classes=report, bound=1)
    text = dumps_canonical(rep)
    back = parse_report(text)
    assert back["n"] == 3 and back["N"] == 1 and back["rank"] == 3
    assert back["D_diagonal"] == [1, 1, 6]
    assert len(back["families"]) == len(families)
    for f, orig in zip(back["families"], families):
        assert f["class_index"] == orig.class_index
        assert mat_eq(f["P0"], orig.P0)
        assert f["S"] == orig.S
        assert f["degenerate"] == orig.degenerate
        for T, To in zip(f["T"], orig.T):
            assert mat_eq(T, To)
    assert back["classes"]["partition"] == [(0,), (1, 5), (2, 4), (3,)]
    assert back["classes"]["exhaustive"]
    # Emission is canonical: serializing twice gives identical bytes.
    assert text == dumps_canonical(solution_report(sys_, families, classes=report, bound=1))


def test_render_report_text_mentions_flags(hexagonal):
    sys_ = build_system(hexagonal)
    families = solve_master(sys_)
    text = render_report_text(solution_report(sys_, families))
    assert "degenerate" in text
    assert "family 3" in text
