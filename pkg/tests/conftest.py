"""Shared helpers: seeded random generators for formulas, terms, and
control-free derivations, plus a canonical-inhabitant builder."""

from __future__ import annotations

import random

from dnsk.syntax import (
    And, App, Arrow, Ascribe, Bot, BOT, Case, Dest, Efq, Eq0, ExPair, Exists,
    Forall, Formula, Fst, Hyp, Imp, Inl, Inr, Lam, NAT, Or, PApp, Pair, PLam,
    PPair, PredApp, Prod, ProofTerm, Signature, SimpleType, Snd, STAR, Star,
    Succ, TApp, TLam, Term, Unit, UNIT, Var, ZERO, fresh_name, fv_formula,
    neg, numeral,
)

TEST_SIGNATURE = Signature({
    "P": (NAT,),
    "Q": (NAT, NAT),
    "R": (),
})


def canonical(sort: SimpleType) -> Term:
    """The canonical closed inhabitant of a sort."""
    match sort:
        case Unit():
            return STAR
        case _ if sort == NAT:
            return ZERO
        case Prod(l, r):
            return Pair(canonical(l), canonical(r))
        case Arrow(l, r):
            x = "x"
            return Lam(x, l, canonical(r))
    raise AssertionError(sort)


def random_pred_tables(rng: random.Random, bound: int) -> dict:
    tables = {}
    for name, sorts in TEST_SIGNATURE.predicates.items():
        cells = [()] if not sorts else None
        if cells is None:
            import itertools
            cells = list(itertools.product(range(bound), repeat=len(sorts)))
        tables[name] = {c for c in cells if rng.random() < 0.5}
    return tables


def random_nat_term(rng: random.Random, bound: int, scope: list) -> Term:
    """A nat-sorted term: a scoped variable or a small numeral."""
    if scope and rng.random() < 0.5:
        return Var(rng.choice(scope))
    return numeral(rng.randrange(bound))


def random_prime(rng: random.Random, bound: int, scope: list) -> Formula:
    match rng.randrange(4):
        case 0:
            return PredApp("P", (random_nat_term(rng, bound, scope),))
        case 1:
            return PredApp("Q", (random_nat_term(rng, bound, scope),
                                 random_nat_term(rng, bound, scope)))
        case 2:
            return PredApp("R", ())
        case _:
            return Eq0(random_nat_term(rng, bound, scope),
                       random_nat_term(rng, bound, scope))


def random_formula(rng: random.Random, depth: int, bound: int = 3,
                   scope: list | None = None, quantifiers: bool = True) -> Formula:
    """A random arithmetical formula; all quantifiers bind sort nat."""
    scope = scope if scope is not None else []
    if depth <= 0:
        return random_prime(rng, bound, scope)
    top = rng.randrange(6 if quantifiers else 4)
    match top:
        case 0:
            return And(random_formula(rng, depth - 1, bound, scope, quantifiers),
                       random_formula(rng, depth - 1, bound, scope, quantifiers))
        case 1:
            return Or(random_formula(rng, depth - 1, bound, scope, quantifiers),
                      random_formula(rng, depth - 1, bound, scope, quantifiers))
        case 2:
            return Imp(random_formula(rng, depth - 1, bound, scope, quantifiers),
                       random_formula(rng, depth - 1, bound, scope, quantifiers))
        case 3:
            return random_prime(rng, bound, scope)
        case _:
            x = f"v{len(scope)}"
            body = random_formula(rng, depth - 1, bound, scope + [x], quantifiers)
            return Forall(x, NAT, body) if top == 4 else Exists(x, NAT, body)


# ---------------------------------------------------------------------------
# Generated control-free derivations (for extraction testing)


class DerivationBuilder:
    """Grows well-typed, control-free proof terms from a hypothesis pool.

    Every produced (context, proof, goal) triple is accepted by check_proof
    at the plain annotation, and the proof mentions no shift or reset, so it
    is a valid extraction subject."""

    def __init__(self, rng: random.Random, n_hyps: int = 3):
        self.rng = rng
        self.hyps = {}
        for i in range(n_hyps):
            self.hyps[f"h{i}"] = random_formula(rng, rng.randrange(3))
        self.hyps["habs"] = BOT
        self._fresh = 0

    def fresh(self, base: str) -> str:
        self._fresh += 1
        return f"{base}{self._fresh}"

    def start(self):
        name = self.rng.choice(sorted(self.hyps))
        return Hyp(name), self.hyps[name]

    def grow(self, p: ProofTerm, a: Formula):
        rng = self.rng
        match rng.randrange(9):
            case 0:
                q, b = self.start()
                return PPair(p, q), And(a, b)
            case 1:
                b = random_formula(rng, 1)
                return (Inl(p), Or(a, b)) if rng.random() < 0.5 else (Inr(p), Or(b, a))
            case 2:
                h = self.fresh("u")
                b = random_formula(rng, 1)
                return PLam(h, p), Imp(b, a)
            case 3:
                x = self.fresh("w")
                return ExPair(numeral(rng.randrange(3)), p), Exists(x, NAT, a)
            case 4:
                x = self.fresh("w")
                return TLam(x, p), Forall(x, NAT, a)
            case 5:  # conjunction detour
                pair = Ascribe(PPair(p, p), And(a, a))
                return (Fst(pair) if rng.random() < 0.5 else Snd(pair)), a
            case 6:  # disjunction detour
                a1, a2 = self.fresh("c"), self.fresh("c")
                scrut = Ascribe(Inl(p) if rng.random() < 0.5 else Inr(p), Or(a, a))
                return Case(scrut, a1, Hyp(a1), a2, Hyp(a2)), a
            case 7:  # application detour through an identity
                h = self.fresh("u")
                ident = Ascribe(PLam(h, Hyp(h)), Imp(a, a))
                return PApp(ident, p), a
            case _:  # existential detour
                x, h = self.fresh("w"), self.fresh("u")
                scrut = Ascribe(ExPair(ZERO, p), Exists(x, NAT, a))
                return Dest(scrut, x, h, Hyp(h)), a

    def build(self, steps: int):
        p, a = self.start()
        if self.rng.random() < 0.15:
            a = random_formula(self.rng, 1)
            p = Efq(Hyp("habs"))
        for _ in range(steps):
            p, a = self.grow(p, a)
        return dict(self.hyps), p, a


def random_derivation(rng: random.Random, steps: int = 4):
    return DerivationBuilder(rng).build(steps)


# ---------------------------------------------------------------------------
# Golden-file rendering

GOLDEN_CORPUS = [
    ("prime", "P(0)"),
    ("absurd", "bot"),
    ("equation", "S 0 = S 0"),
    ("conj", "P(0) /\\ R"),
    ("disj_lem", "P(0) \\/ ~P(0)"),
    ("imp", "P(0) -> R"),
    ("negation", "~P(0)"),
    ("universal", "forall x:nat. P(x)"),
    ("existential", "exists x:nat. P(x)"),
    ("lem_pointwise", "forall x:nat. P(x) \\/ ~P(x)"),
    ("dns_shape", "(forall x:nat. ~~P(x)) -> ~~forall x:nat. P(x)"),
    ("pi_two", "forall x:nat. exists y:nat. Q(x, y)"),
]


def render_translation(mode: str) -> str:
    """One deterministic text block per corpus formula, for golden files."""
    from dnsk.parser import parse_formula
    from dnsk.printer import print_formula, print_type
    from dnsk.syntax import neg
    from dnsk.translate import (
        dia_formula, dia_types, kuroda, mr_formula, mr_type, mrt_formula,
        spector_target,
    )

    lines = []
    for name, src in GOLDEN_CORPUS:
        a = parse_formula(src)
        match mode:
            case "kuroda":
                lines.append(f"{name} : {print_formula(kuroda(a))}")
            case "mr" | "mrt":
                tau = mr_type(a)
                fn = mr_formula if mode == "mr" else mrt_formula
                body = fn(TEST_SIGNATURE, {"t": tau}, Var("t"), a)
                lines.append(f"{name} : t : {print_type(tau)}")
                lines.append(f"{name} : {print_formula(body)}")
            case "dia":
                d = dia_types(a)
                vars_ = {"w": d.witness, "c": d.challenge}
                body = dia_formula(TEST_SIGNATURE, vars_, Var("w"), Var("c"), a)
                lines.append(f"{name} : w : {print_type(d.witness)}")
                lines.append(f"{name} : c : {print_type(d.challenge)}")
                lines.append(f"{name} : {print_formula(body)}")
            case "spector":
                d = dia_types(neg(neg(a)))
                body = spector_target(TEST_SIGNATURE, a, "t")
                lines.append(f"{name} : t : {print_type(d.witness)}")
                lines.append(f"{name} : {print_formula(body)}")
    return "\n".join(lines) + "\n"
