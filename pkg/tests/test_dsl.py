import json
from pathlib import Path

import pytest

from vectorgroupoids.dsl import (
    CheckDirective,
    FieldDecl,
    GroupoidDecl,
    MorphismDecl,
    SpaceDecl,
    emit_report,
    evaluate,
    parse,
    render,
    run_checks,
)

DATA = Path(__file__).parent / "data"


def errors(diags):
    return [d for d in diags if d.severity == "error"]


class TestParse:
    def test_four_statement_ast(self):
        ast, diags = parse(
            "field F = Zp(5)\nspace V = F^1\ngroupoid G = vpq(V, p=2, q=3)\ncheck G vector"
        )
        assert not errors(diags)
        kinds = [type(s) for s in ast.statements]
        assert kinds == [FieldDecl, SpaceDecl, GroupoidDecl, CheckDirective]
        assert ast.statements[2].scalars == (2, 3)

    def test_nonprime_modulus(self):
        _, diags = parse("field F = Zp(6)")
        (d,) = errors(diags)
        assert "not prime" in d.message
        assert d.line == 1

    def test_undeclared_identifier(self):
        _, diags = parse("space V = F^1")
        (d,) = errors(diags)
        assert "undeclared" in d.message
        assert (d.line, d.token) == (1, "F")

    def test_redeclaration(self):
        _, diags = parse("field F = Zp(3)\nfield F = Zp(5)")
        (d,) = errors(diags)
        assert "redeclaration" in d.message and d.line == 2

    def test_unknown_keyword(self):
        _, diags = parse("widget W = 3")
        (d,) = errors(diags)
        assert "unknown keyword" in d.message

    def test_comments_and_blanks_ignored(self):
        ast, diags = parse("# hi\n\nfield F = Zp(2)  # trailing\n")
        assert not errors(diags)
        assert len(ast.statements) == 1

    def test_spans_point_into_source(self):
        src = "field F = Zp(2)\nspace V = F^0"
        _, diags = parse(src)
        lines = src.splitlines()
        for d in errors(diags):
            assert 1 <= d.line <= len(lines)
            assert 1 <= d.column <= len(lines[d.line - 1]) + 1

    def test_morphism_table_entries(self):
        src = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = null(V)\n"
            "morphism m : G -> G = table{(0) -> (0), (1) -> (1)}"
        )
        ast, diags = parse(src)
        assert not errors(diags)
        m = ast.statements[-1]
        assert isinstance(m, MorphismDecl)
        assert m.entries == (((0,), (0,)), ((1,), (1,)))

    def test_check_kind_mismatch(self):
        src = "field F = Zp(2)\nspace V = F^1\ngroupoid G = null(V)\ncheck G morphism"
        _, diags = parse(src)
        assert errors(diags)


class TestRoundTrip:
    def test_golden_round_trips(self):
        import dataclasses

        def strip(stmts):
            return [dataclasses.replace(s, span=None) for s in stmts]

        src = (DATA / "golden.gd").read_text()
        ast, diags = parse(src)
        assert not errors(diags)
        ast2, diags2 = parse(render(ast))
        assert not errors(diags2)
        assert strip(ast.statements) == strip(ast2.statements)
        # a second render is a fixed point
        assert render(ast2) == render(ast)


class TestEvaluate:
    def test_vpq_elaboration_error(self):
        ast, diags = parse(
            "field F = Zp(5)\nspace V = F^1\ngroupoid G = vpq(V, p=2, q=2)"
        )
        assert not errors(diags)
        _, ediags = evaluate(ast)
        (d,) = errors(ediags)
        assert "NotInverse" in d.message and d.line == 3

    def test_whitney_base_mismatch(self):
        src = (
            "field F = Zp(2)\nspace V = F^1\nspace W = F^2\n"
            "groupoid A = pair(V)\ngroupoid B = pair(W)\ngroupoid C = whitney(A, B)"
        )
        ast, diags = parse(src)
        assert not errors(diags)
        _, ediags = evaluate(ast)
        (d,) = errors(ediags)
        assert "BaseMismatch" in d.message and d.line == 6

    def test_sg_size_guard(self):
        ast, diags = parse("groupoid G = sg(9)")
        assert not errors(diags)
        _, ediags = evaluate(ast)
        (d,) = errors(ediags)
        assert "SizeGuard" in d.message

    def test_golden_builds_everything(self):
        src = (DATA / "golden.gd").read_text()
        ast, diags = parse(src)
        ws, ediags = evaluate(ast)
        assert not errors(ediags)
        assert {"Gpair", "Gsg", "anch", "sgn", "pr1"} <= set(ws.entries)


class TestRunChecks:
    def _run(self, src):
        ast, diags = parse(src)
        assert not errors(diags)
        ws, ediags = evaluate(ast)
        assert not errors(ediags)
        return run_checks(ws, ast, src)

    def test_pair_vector_passes(self):
        r = self._run("field F = Zp(3)\nspace V = F^1\ngroupoid G = pair(V)\ncheck G vector")
        assert r.overall == "pass"

    def test_failing_table_morphism_has_witness(self):
        src = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n"
            "morphism m : G -> G = table{((0),(0)) -> ((0),(0)), ((0),(1)) -> ((1),(0)),"
            " ((1),(0)) -> ((0),(1)), ((1),(1)) -> ((1),(1))}\n"
            "check m morphism"
        )
        r = self._run(src)
        assert r.overall == "fail"
        assert r.directives[0].report.all_witnesses()

    def test_empty_check_list_warns(self):
        r = self._run("field F = Zp(2)")
        assert r.overall == "pass"
        assert r.warnings


class TestEmitReport:
    def _report(self):
        src = "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\ncheck G brandt"
        ast, _ = parse(src)
        ws, _ = evaluate(ast)
        return run_checks(ws, ast, src)

    def test_json_shape(self):
        r = self._report()
        payload = json.loads(emit_report(r, "json"))
        assert list(payload) == ["status", "directives", "version", "input_digest"]
        d = payload["directives"][0]
        assert list(d) == ["target", "check", "status", "examined", "witnesses"]
        assert payload["status"] == "pass"
        assert d["witnesses"] == []

    def test_json_deterministic(self):
        a = emit_report(self._report(), "json")
        b = emit_report(self._report(), "json")
        assert a == b

    def test_failing_g3_witness_in_json(self):
        src = (
            "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n"
            "morphism m : G -> G = table{((0),(0)) -> ((0),(0)), ((0),(1)) -> ((1),(0)),"
            " ((1),(0)) -> ((0),(1)), ((1),(1)) -> ((1),(1))}\ncheck m morphism"
        )
        ast, _ = parse(src)
        ws, _ = evaluate(ast)
        payload = json.loads(emit_report(run_checks(ws, ast, src), "json"))
        assert payload["status"] == "fail"
        laws = {w["law"] for d in payload["directives"] for w in d["witnesses"]}
        assert laws

    def test_text_has_one_line_per_law(self):
        text = emit_report(self._report(), "text")
        assert "check G brandt: pass" in text
        for law in ("G1", "G2", "G3", "domain"):
            assert f"  {law}: pass" in text
