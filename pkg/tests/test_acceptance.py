"""End-to-end acceptance gate.

Each test here corresponds to one of the ten release criteria: library
soundness, mutation rejection, the two bounded-domain oracles, the two
extraction demonstrations, realizer type soundness, subject reduction,
the operational traces, and the golden translation files.
"""

import os
import random
import time

import pytest

from dnsk.evaluate import eval_formula_bounded, normalize_proof, normalize_term
from dnsk.extract import ExtractionEnv, extract_mr, realizer_context
from dnsk.parser import parse_formula, parse_proof
from dnsk.printer import print_proof
from dnsk.syntax import (
    Ascribe, BOT, Imp, PApp, STAR, alpha_eq_formula, neg, numeral,
    numeral_value,
)
from dnsk.theorems import LIBRARY_SIGNATURE, build_library, get_entry
from dnsk.translate import dia_formula, dia_nn_simplify, dia_types, kuroda, mr_formula, mr_type
from dnsk.typecheck import Annotation, Context, check_proof, infer_term_type
from conftest import (
    TEST_SIGNATURE, canonical, random_derivation, random_formula,
    random_pred_tables, render_translation,
)

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


# -- 1. library soundness -----------------------------------------------------


def test_criterion_1_library_soundness():
    t0 = time.monotonic()
    entries = build_library()
    assert len(entries) >= 8
    for e in entries:
        report = e.check(LIBRARY_SIGNATURE)
        assert report.ok, (e.name, report.error)
    assert time.monotonic() - t0 < 5.0


# -- 2. mutation suite --------------------------------------------------------

MUTANTS = [
    # (entry, mutated proof, expected error kind)
    ("dns_lem",  # swap inl and inr
     "fun k => reset (k (tfun x => shift k' => k' (inl (fun a => k' (inr a)))))",
     "FormulaMismatch"),
    ("dns_arrow",  # delete the reset
     "fun h => fun k => k (tfun x => shift k' => (h @ x) k')",
     "AnnotationViolation"),
    ("dns_arrow",  # move the shift outside all resets
     "fun h => fun k => shift k' => reset (k (tfun x => (h @ x) k'))",
     "AnnotationViolation"),
    ("dns_conj",  # swap fst and snd
     "fun h => reset (fst h (tfun x => shift k => (snd h @ x) k))",
     "FormulaMismatch"),
    ("dns_arrow",  # apply the universal hypothesis without instantiation
     "fun h => fun k => reset (k (tfun x => shift k' => h k'))",
     "FormulaMismatch"),
    ("dns_arrow",  # swap the two binders
     "fun k => fun h => reset (k (tfun x => shift k' => (h @ x) k'))",
     "FormulaMismatch"),
    ("ac_bot",  # drop the double-negation introduction on the witness body
     "fun a => fun k => d (tfun x => fun k' => (a @ x)"
     " (fun a' => dest a' as [x', e] in k' [x', e])) (fun b => k (c b))",
     "FormulaMismatch"),
    ("dns_lem",  # undefined continuation name
     "fun k => reset (k (tfun x => shift k' => k2 (inr (fun a => k' (inl a)))))",
     "UnboundHypothesis"),
    ("ep_witness",  # wrong witness
     "[S 0, refl4]",
     "FormulaMismatch"),
    ("dp_flag",  # wrong disjunct
     "inr refl0",
     "FormulaMismatch"),
    ("dns_conj",  # delete the reset, leaving the shift bare
     "fun h => snd h (tfun x => shift k => (fst h @ x) k)",
     "AnnotationViolation"),
    ("dns_lem",  # feed the raw hypothesis to the continuation
     "fun k => reset (k (tfun x => shift k' => k' (inr (fun a => k' a))))",
     "FormulaMismatch"),
]


def test_criterion_2_mutation_suite():
    assert len(MUTANTS) >= 10
    for name, src, kind in MUTANTS:
        e = get_entry(name)
        report = check_proof(LIBRARY_SIGNATURE, e.context, Annotation.PLAIN,
                             parse_proof(src), e.goal)
        assert not report.ok, (name, src)
        assert report.error.kind == kind, (name, report.error)


# -- 3. Kuroda classical-equivalence oracle -----------------------------------


def test_criterion_3_kuroda_oracle():
    t0 = time.monotonic()
    rng = random.Random(101)
    for _ in range(200):
        a = random_formula(rng, 3, bound=3)
        tables = random_pred_tables(rng, 3)
        lhs = eval_formula_bounded(TEST_SIGNATURE, a, 3, tables)
        rhs = eval_formula_bounded(TEST_SIGNATURE, kuroda(a), 3, tables)
        assert lhs == rhs, (a, tables)
    assert time.monotonic() - t0 < 10.0


# -- 4. Dialectica double-negation simplification oracle ----------------------


def test_criterion_4_nn_simplification_oracle():
    rng = random.Random(103)
    for _ in range(100):
        a = random_formula(rng, 2, bound=3, quantifiers=False)
        tables = random_pred_tables(rng, 3)
        d = dia_types(neg(neg(a)))
        t, s = canonical(d.witness), canonical(d.challenge)
        full = dia_formula(TEST_SIGNATURE, {}, t, s, neg(neg(a)))
        simplified = dia_nn_simplify(TEST_SIGNATURE, {}, a, t, s)
        lhs = eval_formula_bounded(TEST_SIGNATURE, full, 3, tables)
        rhs = eval_formula_bounded(TEST_SIGNATURE, simplified, 3, tables)
        assert lhs == rhs, (a, tables)


# -- 5/6. extraction demonstrations -------------------------------------------


def _extract_entry(name):
    e = get_entry(name)
    report = e.check(LIBRARY_SIGNATURE)
    assert report.ok
    env = ExtractionEnv({}, dict(e.axiom_realizers), frozenset())
    return e, extract_mr(report.derivation, env)


def test_criterion_5_existence_property_demo():
    e, realizer = _extract_entry("ep_witness")
    assert infer_term_type({}, realizer) == mr_type(e.goal)
    witness = normalize_term({}, realizer).snd
    assert numeral_value(witness) == 4
    # the substituted instance re-checks against the instantiated body
    from dnsk.syntax import subst_formula
    instance = subst_formula(e.goal.body, e.goal.var, witness)
    report = check_proof(LIBRARY_SIGNATURE, e.context, Annotation.PLAIN,
                         parse_proof("refl4"), instance)
    assert report.ok, report.error


def test_criterion_6_disjunction_property_demo():
    e, realizer = _extract_entry("dp_flag")
    flag = normalize_term({}, realizer).snd
    assert numeral_value(flag) == 0


# -- 7. realizer type soundness -----------------------------------------------


def test_criterion_7_type_soundness():
    # the library's control-free derivations
    for e in build_library():
        from dnsk.syntax import contains_control
        if contains_control(e.proof) or e.annotation is not Annotation.PLAIN:
            continue
        report = e.check(LIBRARY_SIGNATURE)
        env = ExtractionEnv(
            {name: f"x_{name}" for name in e.context.hyps
             if name not in e.axiom_realizers},
            dict(e.axiom_realizers), frozenset())
        term = extract_mr(report.derivation, env)
        vars_ = realizer_context(dict(e.context.term_vars), e.context.hyps, env)
        assert infer_term_type(vars_, term) == mr_type(e.goal), e.name
    # plus generated intuitionistic derivations
    rng = random.Random(107)
    for _ in range(120):
        hyps, proof, goal = random_derivation(rng, steps=rng.randrange(1, 6))
        report = check_proof(TEST_SIGNATURE, Context({}, hyps),
                             Annotation.PLAIN, proof, goal)
        assert report.ok, report.error
        env = ExtractionEnv({n: f"x_{n}" for n in hyps}, {}, frozenset())
        term = extract_mr(report.derivation, env)
        vars_ = realizer_context({}, hyps, env)
        assert infer_term_type(vars_, term) == mr_type(goal)


# -- 8. subject reduction -----------------------------------------------------


def _applied_configuration(e):
    """Apply the entry to one inert hypothesis per leading implication."""
    ctx, proof, goal = e.context, Ascribe(e.proof, e.goal), e.goal
    i = 0
    while isinstance(goal, Imp):
        arg = f"arg{i}"
        ctx = ctx.with_hyp(arg, goal.left)
        proof = PApp(proof, parse_proof(arg))
        goal = goal.right
        i += 1
    return ctx, proof, goal


def test_criterion_8_subject_reduction():
    for e in build_library():
        ctx, proof, goal = _applied_configuration(e)
        report = check_proof(LIBRARY_SIGNATURE, ctx, e.annotation, proof, goal)
        assert report.ok, (e.name, report.error)
        final, steps = normalize_proof(proof, fuel=200, trace=True)
        assert len(steps) > 1 or final == proof
        for cfg in steps:
            r = check_proof(LIBRARY_SIGNATURE, ctx, e.annotation, cfg, goal)
            assert r.ok, (e.name, print_proof(cfg), r.error)


# -- 9. operational traces ----------------------------------------------------


def test_criterion_9_shift_reset_traces():
    cases = [
        # (source, normal form, steps)
        ("reset (f (shift k => k a))", "f a", 4),
        ("reset (shift k => a)", "a", 2),
        ("reset (fun a => a)", "fun a => a", 1),
    ]
    for src, want, steps in cases:
        final, trace = normalize_proof(parse_proof(src), fuel=50, trace=True)
        assert print_proof(final) == want
        assert len(trace) - 1 == steps


# -- 10. golden translations --------------------------------------------------


@pytest.mark.parametrize("mode", ["kuroda", "mr", "mrt", "dia", "spector"])
def test_criterion_10_golden_translations(mode):
    with open(os.path.join(GOLDEN_DIR, f"{mode}.txt"), "r", encoding="utf-8") as f:
        want = f.read()
    assert render_translation(mode) == want


def test_criterion_10_dns_unfolding():
    """The mechanical mr-unfolding of the shift schema, and its equivalence
    with the quoted premise/conclusion forms.

    Unfolding the clauses literally yields the lines with an explicit
    refutation argument (forall z ~forall u ~...); the quoted final forms
    replace ~forall~ by ~~exists, an equivalence that is proved here by
    four checked derivations rather than asserted syntactically."""
    dns = parse_formula("(forall n:nat. ~~P(n)) -> ~~forall n:nat. P(n)")
    tau = mr_type(dns)
    from dnsk.syntax import Var
    unfolded = mr_formula(TEST_SIGNATURE, {"t": tau}, Var("t"), dns)
    mech = parse_formula(
        "forall y:nat -> (unit -> unit) -> unit."
        " (forall n:nat. forall z:unit -> unit. ~forall u:unit. ~P(n))"
        " -> forall q:(nat -> unit) -> unit."
        "    ~forall r:nat -> unit. ~forall n:nat. P(n)")
    assert alpha_eq_formula(unfolded, mech)

    premise_mech = "forall n:nat. forall z:unit -> unit. ~forall u:unit. ~P(n)"
    premise_quoted = "forall n:nat. ~~exists u:unit. P(n)"
    conclusion_mech = ("forall q:(nat -> unit) -> unit."
                       " ~forall r:nat -> unit. ~forall n:nat. P(n)")
    conclusion_quoted = "~~exists r:nat -> unit. forall n:nat. P(n)"
    bridges = [
        (premise_mech, premise_quoted,
         "fun h => tfun n => fun w => (h @ n @ (fun (u:unit) => star))"
         " (tfun u => fun p => w [u, p])"),
        (premise_quoted, premise_mech,
         "fun h => tfun n => tfun z => fun g =>"
         " (h @ n) (fun e => dest e as [u, p] in (g @ u) p)"),
        (conclusion_mech, conclusion_quoted,
         "fun h => fun w => (h @ (fun (x:nat -> unit) => star))"
         " (tfun r => fun p => w [r, p])"),
        (conclusion_quoted, conclusion_mech,
         "fun h => tfun q => fun g =>"
         " h (fun e => dest e as [r, p] in (g @ r) p)"),
    ]
    for src_from, src_to, proof in bridges:
        goal = parse_formula(f"({src_from}) -> {src_to}")
        report = check_proof(TEST_SIGNATURE, Context(), Annotation.PLAIN,
                             parse_proof(proof), goal)
        assert report.ok, (src_from, src_to, report.error)
