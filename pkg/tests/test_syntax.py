"""Binding, substitution, and alpha-equivalence."""

import random

from dnsk.syntax import (
    App, Eq0, Exists, Forall, Hyp, Imp, Lam, NAT, PLam, PredApp, Shift, TLam,
    Var, ZERO, alpha_eq_formula, alpha_eq_proof, alpha_eq_term,
    contains_control, contains_shift, fresh_name, fv_formula, fv_proof_hyps,
    fv_proof_termvars, fv_term, neg, numeral, numeral_value, subst_formula,
    subst_term,
)
from conftest import random_formula


def test_fresh_name_avoids_everything():
    avoid = {"x", "x1", "x2"}
    assert fresh_name("x", avoid) not in avoid
    assert fresh_name("y", avoid) == "y"


def test_fv_term_under_binder():
    t = Lam("x", NAT, App(Var("x"), Var("y")))
    assert fv_term(t) == {"y"}


def test_subst_term_capture_avoiding():
    # (fun (x:nat) => y)[y := x] must rename the binder, not capture
    t = Lam("x", NAT, Var("y"))
    s = subst_term(t, "y", Var("x"))
    assert isinstance(s, Lam)
    assert s.var != "x"
    assert s.body == Var("x")


def test_subst_formula_capture_avoiding():
    a = Forall("x", NAT, Eq0(Var("x"), Var("y")))
    b = subst_formula(a, "y", Var("x"))
    assert isinstance(b, Forall)
    assert b.var != "x"
    assert fv_formula(b) == {"x"}


def test_alpha_eq_formula():
    a = Forall("x", NAT, PredApp("P", (Var("x"),)))
    b = Forall("z", NAT, PredApp("P", (Var("z"),)))
    assert alpha_eq_formula(a, b)
    assert not alpha_eq_formula(a, Forall("x", NAT, PredApp("P", (Var("y"),))))


def test_alpha_eq_proof():
    p = PLam("a", Hyp("a"))
    q = PLam("b", Hyp("b"))
    assert alpha_eq_proof(p, q)
    assert not alpha_eq_proof(p, PLam("a", Hyp("c")))


def test_neg_shape():
    a = PredApp("R", ())
    n = neg(a)
    assert isinstance(n, Imp)
    assert fv_formula(n) == set()


def test_numerals_roundtrip():
    for k in range(7):
        assert numeral_value(numeral(k)) == k


def test_proof_free_variables():
    p = TLam("x", PLam("a", App_proof := Hyp("b")))
    assert fv_proof_hyps(p) == {"b"}
    q = Shift("k", Hyp("k"))
    assert fv_proof_hyps(q) == set()
    assert fv_proof_termvars(TLam("x", Hyp("a"))) == set()


def test_control_detection():
    assert contains_shift(PLam("a", Shift("k", Hyp("k"))))
    assert not contains_control(PLam("a", Hyp("a")))


def test_random_formulas_closed():
    rng = random.Random(7)
    for _ in range(50):
        assert fv_formula(random_formula(rng, 3)) == set()
