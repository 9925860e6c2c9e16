"""Acceptance gate: one test per release criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v`` — every criterion prints
``PASS criterion N: ...`` (or the assertion failure marks it FAIL).
"""

import random
import time
from fractions import Fraction

import pytest

from texcas import inert, verify
from texcas.backward import backward_string
from texcas.cli import read_corpus, run_corpus
from texcas.errors import UnknownMacro
from texcas.evaluator import evaluate
from texcas.forward import translate_string
from texcas.inert import (from_nested_list, nested_list_to_text, parse_maple,
                          preprocess, to_nested_list)
from texcas.lexicon import seed_path
from texcas.scanner import normalize_whitespace, scan, serialize
from texcas.verify import (MAPLE_SIDE, SEMANTIC_LATEX, check_equivalence,
                           round_trip, simplify_light)

from treegen import random_evaluable, random_tree


def report(capsys, line):
    with capsys.disabled():
        print(line)


def test_criterion_1_table1_golden(lex, capsys):
    started = time.perf_counter()
    source = r"\JacobiP{\alpha}{\beta}{n}@{\cos@{a\Theta}}"
    maple_out = translate_string(source, lex, "maple").output
    mma_out = translate_string(source, lex, "mathematica").output
    elapsed = time.perf_counter() - started
    assert maple_out == "JacobiP(n,alpha,beta,cos(a*Theta))"
    assert mma_out == r"JacobiP[n,\[Alpha],\[Beta],Cos[a \[CapitalTheta]]]"
    assert elapsed < 1.0
    report(capsys, f"PASS criterion 1: forward golden pair exact "
                   f"({elapsed * 1000:.0f} ms)")


def test_criterion_2_table2_golden(lex, capsys):
    maple_result = translate_string(r"\sin@@{z}", lex, "maple")
    mma_result = translate_string(r"\sin@@{z}", lex, "mathematica")
    assert maple_result.output == "sin(z)"
    assert mma_result.output == "Sin[z]"
    links = [i.text for i in maple_result.infos if i.kind == "dlmf-link"]
    assert links and "dlmf.nist.gov/4.14" in links[0]
    report(capsys, "PASS criterion 2: sine entry translations and DLMF link")


def test_criterion_3_round_trip_table3(lex, capsys):
    rep = round_trip(r"\frac{\cos@{a\Theta}}{2}", SEMANTIC_LATEX, lex)
    assert [s.text for s in rep.steps] == [
        r"\frac{\cos@{a\Theta}}{2}",
        "(cos(a*Theta))/(2)",
        r"\frac{1}{2}\idt\cos@{a\idt\Theta}",
        "(1)/(2)*cos(a*Theta)",
    ]
    assert rep.fixed_point_reached
    assert rep.cycles_by_side == {SEMANTIC_LATEX: Fraction(1),
                                  MAPLE_SIDE: Fraction(3, 2)}
    report(capsys, "PASS criterion 3: round trip reproduces all four strings; "
                   "fixed point after 1 / 1½ cycles")


def test_criterion_4_backward_goldens(lex, capsys):
    assert backward_string("cos(Pi*2)/sqrt((3*beta)/4-3*I)", lex).output == \
        r"\frac{\cos@{2\idt\cpi}}{\sqrt{\frac{3}{4}\idt\beta-3\idt\iunit}}"
    assert backward_string("(1/(x+3))^(-I)", lex).output == \
        r"\left(\frac{1}{3+x}\right)^{-\iunit}"
    assert backward_string("(1/(x+3))^(-I)", lex, use_divide=False).output == \
        r"\left((3+x)^{-1}\right)^{-\iunit}"
    report(capsys, "PASS criterion 4: backward goldens exact "
                   "(with and without the DIVIDE element)")


def test_criterion_5_inert_listing(capsys):
    tree = parse_maple("int((Pi+sin(2*x))/x^2, x=0..infinity)")
    text = nested_list_to_text(to_nested_list(tree), compat_prefix=True)
    assert text == (
        '[_Inert_FUNCTION,[_Inert_NAME,"int"],[_Inert_EXPSEQ,'
        '[_Inert_PROD,[_Inert_SUM,[_Inert_NAME,"Pi"],'
        '[_Inert_FUNCTION,[_Inert_NAME,"sin"],[_Inert_EXPSEQ,'
        '[_Inert_PROD,[_Inert_INTPOS,2],[_Inert_NAME,"x"]]]]],'
        '[_Inert_POWER,[_Inert_NAME,"x"],[_Inert_INTNEG,2]]],'
        '[_Inert_EQUATION,[_Inert_NAME,"x"],'
        '[_Inert_RANGE,[_Inert_INTPOS,0],[_Inert_NAME,"infinity"]]]]]'
    )
    report(capsys, "PASS criterion 5: integral parses to the expected "
                   "nested-list structure under --compat-prefix")


def test_criterion_6_relation_checks(capsys):
    converged = check_equivalence(parse_maple("sin(z+Pi/2)"),
                                  parse_maple("cos(z)"), ["z"])
    assert converged.outcome == "numeric-converged"
    assert len(converged.samples) == 20
    assert converged.max_abs_difference < 1e-10

    sentinel = check_equivalence(parse_maple("sqrt(z^2)"),
                                 parse_maple("z"), ["z"])
    assert sentinel.outcome == "numeric-mismatch"
    offenders = [env for env, d in sentinel.samples
                 if d >= 1e-10 and env["z"].real < 0]
    assert offenders
    report(capsys, f"PASS criterion 6: phase-shift relation converged "
                   f"(max diff {converged.max_abs_difference:.1e}); "
                   f"branch-cut sentinel mismatched at {len(offenders)} "
                   f"left-half-plane points")


def test_criterion_7_seed_corpus_fixed_points(lex, capsys):
    started = time.perf_counter()
    records = read_corpus(seed_path("seed_corpus.tsv"))
    assert len(records) == 37

    stats, _ = run_corpus(records, lex)
    assert stats.verified == 37, stats.as_dict()

    for record in records:
        rep = round_trip(record.semantic_latex, SEMANTIC_LATEX, lex)
        assert rep.fixed_point_reached, record.id
        assert rep.cycles_to_fixed_point <= 2, (record.id,
                                                rep.cycles_to_fixed_point)
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    report(capsys, f"PASS criterion 7: 37 formulas verified and at fixed "
                   f"point within 2 cycles ({elapsed:.2f} s)")


def test_criterion_8_corpus_classification(lex, tmp_path, capsys):
    lines = [
        "rel-01\t\\sin@{z}^{2}+\\cos@{z}^{2} = 1",
        "rel-02\t\\sin@{z+\\frac{\\cpi}{2}} = \\cos@{z}",
        "rel-03\t\\cos@{-z} = \\cos@{z}",
        "rel-04\t\\exp@{\\ln@{z}} = z",
        "rel-05\t\\sqrt{z}^{2} = z",
        "rel-06\t\\JacobiP{\\alpha}{\\beta}{0}@{x} = 1",
        "rel-07\t\\frac{z}{z} = 1",
        "rel-08\t\\cpi-\\cpi = 0",
        "unknown-macro\t\\qhyperg{a}{b}@{z} = 1",
        "not-a-relation\t\\sin@{z}",
    ]
    corpus = tmp_path / "ten.tsv"
    corpus.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    stats, _ = run_corpus(read_corpus(corpus), lex)
    assert stats.as_dict() == {"total": 10, "translated": 9, "verified": 8,
                               "translated_unverified": 0,
                               "untranslated_unknown_macro": 1,
                               "errored": 0, "ignored": 1}
    report(capsys, "PASS criterion 8: 10-record corpus classifies as "
                   "{translated 9, verified 8, unknown-macro 1, ignored 1}")


def test_criterion_9_property_suites(lex, capsys):
    # scan lexical fidelity over representative inputs
    for text in (r"\JacobiP{\alpha}{\beta}{n}@{\cos@{a\Theta}}",
                 r"\sqrt[3]{x^3} + \frac{y}{2}",
                 r"\frac{1}{2}\idt\cos@{a\idt\Theta}",
                 r"\left(\frac{1}{3+x}\right)^{-\iunit}",
                 "x^{n+1} = x_{1}"):
        assert serialize(scan(text)) == normalize_whitespace(text)

    # nested-list bijection over 1,000 generated trees
    rng = random.Random(2024)
    for _ in range(1000):
        tree = random_tree(rng)
        assert from_nested_list(to_nested_list(tree)) == tree

    # preprocess and simplify_light: idempotence plus value preservation
    rng = random.Random(99)
    envs = [{"x": 0.8 + 0.5j, "y": -0.7 + 0.9j},
            {"x": -1.1 - 0.4j, "y": 0.3 - 1.2j}]
    for _ in range(200):
        tree = random_evaluable(rng)
        processed = preprocess(tree)
        assert preprocess(processed) == processed
        simplified = simplify_light(processed)
        assert simplify_light(simplified) == simplified
        for env in envs:
            try:
                before = evaluate(tree, env)
            except (ZeroDivisionError, OverflowError, ValueError):
                continue
            if not (abs(before.real) < 1e12 and abs(before.imag) < 1e12):
                continue
            for variant in (processed, simplified):
                after = evaluate(variant, env)
                assert abs(before - after) <= 1e-12 * max(1.0, abs(before))

    # EllIntF divergence: steps grow until max-steps termination
    rep = round_trip(r"\EllIntF@{\phi}{k}", SEMANTIC_LATEX, lex, max_steps=8)
    assert rep.terminated_reason == "max-steps"
    lengths = [len(s.text) for s in rep.steps if s.side == SEMANTIC_LATEX]
    assert lengths == sorted(lengths) and lengths[-1] > lengths[0]
    report(capsys, "PASS criterion 9: property suites green "
                   "(fidelity, bijection, idempotence, divergence)")
