"""Program extraction from accepted control-free derivations.

Each derivation node maps to a term of the realizer sort of its goal; open
hypotheses are mapped to realizer variables (or to closed realizer terms for
axiom hypotheses) through an ExtractionEnv.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .syntax import (
    And, App, Arrow, Exists, Forall, Formula, Imp, KernelError, Lam, NAT,
    Or, Pair, Prod, Proj1, Proj2, Rec, SimpleType, STAR, Succ, Term, Unit,
    Var, ZERO, apps, fresh_name, fv_term,
)
from .translate import mr_type
from .typecheck import Derivation


class ExtractionError(KernelError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class ExtractionEnv:
    """Realizers for the open hypotheses of a derivation.

    hyp_realizers maps a hypothesis name to the term variable standing for
    its realizer; axiom_realizers maps an axiom-instance name to a closed
    realizer term; names in unrealizable are rejected outright when used."""

    hyp_realizers: Mapping[str, str] = field(default_factory=dict)
    axiom_realizers: Mapping[str, Term] = field(default_factory=dict)
    unrealizable: frozenset = frozenset()


def dummy(sort: SimpleType) -> Term:
    """A canonical closed inhabitant of any sort."""
    match sort:
        case Unit():
            return STAR
        case Prod(l, r):
            return Pair(dummy(l), dummy(r))
        case Arrow(d, c):
            return Lam("x", d, dummy(c))
        case _:
            return ZERO


def _cond(sort: SimpleType, flag: Term, if_zero: Term, if_nonzero: Term) -> Term:
    """Select by a numeric flag, zero picking the first branch; built from
    the recursor since the term language has no primitive conditional."""
    step = Lam("_n", NAT, Lam("_r", sort, if_nonzero))
    return Rec(sort, flag, if_zero, step)


class _Extractor:
    def __init__(self, env: ExtractionEnv, avoid):
        self.env = env
        self.avoid = set(avoid)
        for t in env.axiom_realizers.values():
            self.avoid |= fv_term(t)

    def fresh(self, base: str) -> str:
        name = fresh_name(base, self.avoid)
        self.avoid.add(name)
        return name

    def extract(self, d: Derivation, local: Mapping[str, str]) -> Term:
        rule = d.rule
        goal = d.goal
        kids = d.children
        match rule:
            case "ax":
                name = d.subject.name
                if name in local:
                    return Var(local[name])
                if name in self.env.unrealizable:
                    raise ExtractionError(
                        "UnrealizableAxiom",
                        f"hypothesis {name!r} has no realizer; supply one explicitly",
                    )
                if name in self.env.axiom_realizers:
                    return self.env.axiom_realizers[name]
                if name in self.env.hyp_realizers:
                    return Var(self.env.hyp_realizers[name])
                raise ExtractionError("UnmappedHypothesis", f"no realizer for hypothesis {name!r}")
            case "and_i":
                return Pair(self.extract(kids[0], local), self.extract(kids[1], local))
            case "and_e1":
                return Proj1(self.extract(kids[0], local))
            case "and_e2":
                return Proj2(self.extract(kids[0], local))
            case "or_i1":
                assert isinstance(goal, Or)
                return Pair(
                    Pair(self.extract(kids[0], local), dummy(mr_type(goal.right))), ZERO)
            case "or_i2":
                assert isinstance(goal, Or)
                return Pair(
                    Pair(dummy(mr_type(goal.left)), self.extract(kids[0], local)), Succ(ZERO))
            case "or_e":
                s = self.extract(kids[0], local)
                case_node = d.subject
                v1 = self.fresh("r")
                v2 = self.fresh("r")
                left = self.extract(kids[1], {**local, case_node.left_name: v1})
                right = self.extract(kids[2], {**local, case_node.right_name: v2})
                left = _subst(left, v1, Proj1(Proj1(s)))
                right = _subst(right, v2, Proj2(Proj1(s)))
                return _cond(mr_type(goal), Proj2(s), left, right)
            case "imp_i":
                assert isinstance(goal, Imp)
                a = d.subject.hyp
                v = self.fresh("r")
                body = self.extract(kids[0], {**local, a: v})
                return Lam(v, mr_type(goal.left), body)
            case "imp_e":
                return App(self.extract(kids[0], local), self.extract(kids[1], local))
            case "forall_i":
                assert isinstance(goal, Forall)
                return Lam(d.subject.var, goal.sort, self.extract(kids[0], local))
            case "forall_e":
                return App(self.extract(kids[0], local), d.subject.arg)
            case "exists_i":
                # realizer first, witness second
                return Pair(self.extract(kids[0], local), d.subject.witness)
            case "exists_e":
                s = self.extract(kids[0], local)
                node = d.subject
                v = self.fresh("r")
                body = self.extract(kids[1], {**local, node.hyp: v})
                body = _subst(body, v, Proj1(s))
                body = _subst(body, node.var, Proj2(s))
                return body
            case "bot_e":
                return dummy(mr_type(goal))
            case "ascribe":
                return self.extract(kids[0], local)
            case "reset" | "shift":
                raise ExtractionError(
                    "ControlNodePresent",
                    "extraction is defined only for control-free derivations",
                )
        raise ExtractionError("UnknownRule", f"unhandled rule {rule!r}")


def _subst(t: Term, x: str, r: Term) -> Term:
    from .syntax import subst_term

    return subst_term(t, x, r)


def _names_in(d: Derivation, out: set) -> None:
    from .syntax import fv_formula, fv_proof_termvars

    out |= fv_formula(d.goal)
    out |= fv_proof_termvars(d.subject)
    node = d.subject
    for attr in ("var",):
        if hasattr(node, attr):
            out.add(getattr(node, attr))
    for child in d.children:
        _names_in(child, out)


def extract_mr(derivation: Derivation, env: ExtractionEnv) -> Term:
    """Compile a control-free derivation into a realizer of its goal's sort."""
    avoid = set(env.hyp_realizers.values())
    _names_in(derivation, avoid)
    ex = _Extractor(env, avoid)
    return ex.extract(derivation, {})


def realizer_context(term_vars: Mapping[str, SimpleType], ctx_hyps: Mapping[str, Formula],
                     env: ExtractionEnv) -> dict:
    """Typing context under which an extracted realizer is sorted: the
    original individual variables plus one variable per mapped hypothesis."""
    out = dict(term_vars)
    for name, var in env.hyp_realizers.items():
        if name in ctx_hyps:
            out[var] = mr_type(ctx_hyps[name])
    return out


def ac_realizer(rho: SimpleType, sigma: SimpleType, a: Formula) -> Term:
    """Realizer for a choice-axiom instance: split a pointwise pair of
    (realizer, witness) into a pair of functions."""
    tau_a = mr_type(a)
    av = Var("a")
    x = Var("x")
    return Lam(
        "a", Arrow(rho, Prod(tau_a, sigma)),
        Pair(
            Lam("x", rho, Proj1(App(av, x))),
            Lam("x", rho, Proj2(App(av, x))),
        ),
    )
