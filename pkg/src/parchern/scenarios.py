"""Named verification scenarios and their reports.

A scenario is a function that fills a :class:`Report` with checks.  Each
check records a pass/fail bit and exact witness values; nothing here uses a
tolerance.  Reports serialize to text or to a stable JSON layout, and a rerun
with the same parameters gives byte-identical output.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional, Sequence

from . import corpus, generators as gen, linalg
from .chow import ChowElement, ChowModel, exp_class, ideal_membership, mul, validate_model
from .errors import ModelMismatchError, PreconditionError, SchemaError
from .grr import (FamilyModel, chi, family_from_dict, log_de_rham_euler, main_identity,
                  residue_iso_check, split_kr)
from .logconn import (AbelianLogConnection, RankOnePiece, associated_parabolic,
                      associated_weights, normalize_eigenvalue, positive_integer_eigenvalue_check,
                      pullback_connection, representative_in_window)
from .parabolic import (MultiIndex, NormalCrossingsDivisor, ParabolicKClass, ch_par, constituent,
                        diff_over_d, frac, k_equal, line, pullback_par, tensor_par, trivial,
                        weights_along)
from .steenbrink import LogComplex, random_split_complex, verdict

SCHEMA_VERSION = 1


# -- reports ------------------------------------------------------------------------------


def witness(value: Any) -> Any:
    """Exact JSON-ready form of engine values."""
    if isinstance(value, ChowElement):
        return value.to_dict()
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return linalg.format_fraction(value)
    if isinstance(value, ParabolicKClass):
        return value.to_dict()["terms"]
    if isinstance(value, Mapping):
        return {str(k): witness(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [witness(v) for v in value]
    return str(value)


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.name, "status": "PASS" if self.passed else "FAIL",
                "witness": witness(self.witness)}


@dataclass
class Report:
    scenario: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def check(self, name: str, passed: bool, **wit) -> bool:
        self.checks.append(Check(name, bool(passed), wit))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "scenario": self.scenario,
            "params": witness(self.params),
            "status": "PASS" if self.ok else "FAIL",
            "summary": {"checks": len(self.checks), "failed": len(self.failed)},
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"scenario {self.scenario}" + (
            " (" + ", ".join(f"{k}={witness(v)}" for k, v in self.params.items()) + ")"
            if self.params else "")]
        for c in self.checks:
            wit = ", ".join(f"{k}={json.dumps(witness(v), ensure_ascii=False)}"
                            for k, v in c.witness.items())
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{wit}]" if wit else ""))
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"{'PASS' if self.ok else 'FAIL'}: {len(self.checks) - len(self.failed)}"
                     f"/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


# -- ledgers -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    sign: int
    label: str
    rank: int
    ch: ChowElement


@dataclass(frozen=True)
class LedgerResult:
    lhs: ChowElement
    rhs: ChowElement
    difference: ChowElement
    equal: bool
    rank_mismatches: tuple[str, ...] = ()


def lefschetz_ledger(lhs: Sequence[LedgerEntry], rhs: Sequence[LedgerEntry]) -> LedgerResult:
    """Alternating sums of both sides of a spectral-sequence ledger.

    ``rank_mismatches`` lists entries whose declared rank differs from the
    degree-0 part of their Chern character.
    """
    entries = list(lhs) + list(rhs)
    if not entries:
        raise ValueError("an empty ledger has no model")
    model = entries[0].ch.model
    if any(e.ch.model is not model for e in entries):
        raise ModelMismatchError("ledger entries live in different models")
    for e in entries:
        if e.sign not in (1, -1):
            raise ValueError(f"sign of {e.label!r} must be +1 or -1")

    def total(side):
        out = model.zero()
        for e in side:
            out = out + e.sign * e.ch
        return out

    a, b = total(lhs), total(rhs)
    bad = tuple(e.label for e in entries if e.ch.degree0 != e.rank)
    return LedgerResult(a, b, a - b, (a - b).is_zero(), bad)


@dataclass(frozen=True)
class TheoremInstance:
    total: ChowElement
    in_ch0: bool
    per_degree: tuple[ChowElement, ...]


def main_theorem_instance(degrees: Sequence[ParabolicKClass]) -> TheoremInstance:
    """``sum (-1)^i ch_par(H^i)`` over a base and whether it lies in ``CH^0``."""
    if not degrees:
        raise ValueError("need at least one cohomological degree")
    chs = tuple(ch_par(F) for F in degrees)
    model = chs[0].model
    if any(c.model is not model for c in chs):
        raise ModelMismatchError("cohomology classes live in different models")
    out = model.zero()
    for i, c in enumerate(chs):
        out = out + (-1) ** i * c
    return TheoremInstance(out, out.in_ch0(), chs)


# -- scenario registry ---------------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioEntry:
    name: str
    summary: str
    run: Callable[..., Report]
    params: Mapping[str, tuple[type, Any]] = field(default_factory=dict)
    needs_input: bool = False


SCENARIOS: dict[str, ScenarioEntry] = {}


def scenario(name: str, summary: str, params: Optional[Mapping[str, tuple[type, Any]]] = None,
             needs_input: bool = False):
    def register(fn):
        SCENARIOS[name] = ScenarioEntry(name, summary, fn, params or {}, needs_input)
        return fn
    return register


class ScenarioError(ValueError):
    """Unknown scenario or unusable parameters."""


def parse_params(entry: ScenarioEntry, overrides: Mapping[str, str]) -> dict:
    params = {k: default for k, (_, default) in entry.params.items()}
    for k, raw in overrides.items():
        if k not in entry.params:
            known = ", ".join(entry.params) or "none"
            raise ScenarioError(f"scenario {entry.name!r} has no parameter {k!r} (known: {known})")
        typ = entry.params[k][0]
        try:
            params[k] = typ(raw) if not isinstance(raw, typ) else raw
        except (TypeError, ValueError):
            raise ScenarioError(f"parameter {k!r} expects {typ.__name__}, got {raw!r}") from None
    return params


def run_scenario(name: str, overrides: Optional[Mapping[str, str]] = None,
                 input_data: Any = None, input_name: Optional[str] = None) -> Report:
    """Run a named scenario.

    ``input_data`` is the parsed JSON of ``--input``; scenarios that need it
    raise :class:`ScenarioError` when it is missing, and malformed content
    raises :class:`~parchern.errors.SchemaError` with a JSON path.
    """
    if name not in SCENARIOS:
        raise ScenarioError(f"unknown scenario {name!r}; try 'list'")
    entry = SCENARIOS[name]
    params = parse_params(entry, overrides or {})
    if entry.needs_input:
        if input_data is None:
            raise ScenarioError(f"scenario {name!r} needs --input")
        return entry.run(params, input_data, input_name)
    if input_data is not None:
        raise ScenarioError(f"scenario {name!r} takes no --input")
    return entry.run(params)


# -- built-in scenarios ---------------------------------------------------------------------


def _div(model: ChowModel, ids=None) -> NormalCrossingsDivisor:
    return NormalCrossingsDivisor.from_registry(model, ids)


def _q(s: str) -> Fraction:
    return linalg.to_fraction(s)


@scenario("chow-models", "ring axioms of the built-in models and basic ring arithmetic")
def _chow_models(params) -> Report:
    rep = Report("chow-models", params)
    for nm, m in corpus.models().items():
        rep.check(f"{nm} satisfies the ring axioms", validate_model(m).ok)
    bad = validate_model(corpus.corrupted_p2())
    rep.check("corrupted table rejected at associativity (h, h, 1)",
              not bad.ok and bad.axiom == "associativity" and bad.labels == ("h", "h", "1"),
              axiom=bad.axiom, labels=list(bad.labels))
    P2 = corpus.p2()
    h = P2.gen("h")
    rep.check("(1 + h)^2 = 1 + 2h + h^2 in P2", (1 + h) * (1 + h) == 1 + 2 * h + h * h,
              value=(1 + h) * (1 + h))
    rep.check("h^2 * h = 0 in P2", mul(h * h, h).is_zero())
    rep.check("exp(2h) = 1 + 2h + 2h^2", exp_class(2 * h) == 1 + 2 * h + 2 * h * h, value=exp_class(2 * h))
    Q = corpus.p1xp1()
    s, hq = Q.gen("s"), Q.gen("h")
    rep.check("exp(s + h) = 1 + s + h + sh", exp_class(s + hq) == 1 + s + hq + Q.gen("sh"),
              value=exp_class(s + hq))
    rep.check("sh lies in the ideal (h)", ideal_membership(Q.gen("sh"), [hq]))
    P1 = corpus.p1()
    pt = P1.gen("pt")
    rep.check("pt/2 lies in the ideal (pt)", ideal_membership(pt / 2, [pt]))
    rep.check("1 + pt/2 does not lie in (pt)", not ideal_membership(1 + pt / 2, [pt]))
    return rep


@scenario("parabolic-calculus", "constituents, tensor products, ch_par and the axioms on random bundles",
          {"seed": (int, 0), "count": (int, 200)})
def _parabolic(params) -> Report:
    rep = Report("parabolic-calculus", params)
    P1, P2 = corpus.p1(), corpus.p2()
    D, D2 = _div(P1, ["0"]), _div(P2)
    half = Fraction(1, 2)
    F = line(D, {"0": half})
    rep.check("O(D/2)_0 = O", k_equal(constituent(F), trivial(D, 1)))
    rep.check("O(D/2)_(1/2) = O(D)", k_equal(constituent(F, {"0": half}), line(D, {"0": 1})))
    rep.check("O(D/2) (x) O(D/2) = O(D)", k_equal(tensor_par(F, F), line(D, {"0": 1})))
    rep.check("ch_par O(pt/2) = 1 + pt/2", ch_par(F) == 1 + P1.gen("pt") / 2, value=ch_par(F))
    G = line(D2, {"L": half}) + line(D2, {"L": -half})
    rep.check("ch_par(O(h/2) + O(-h/2)) = 2 + h^2/4 on P2",
              ch_par(G) == 2 + P2.gen("h^2") / 4, value=ch_par(G))
    w = weights_along(F, "0")
    rep.check("weights of O(D/2) along D are {1/2}", w == {half: 1}, weights=dict(w))
    dd = diff_over_d(line(D2, {"L": half}))
    rep.check("ch_par O(h/2) - ch O is supported on L", dd.supported_on_d, difference=dd.difference)

    rng = random.Random(params["seed"])
    pool = [_div(m) for m in (P1, P2, corpus.p1xp1(), corpus.blowup_p2(), corpus.blowup_p1xp1())]
    n, bad = params["count"], {"exp": 0, "tensor": 0, "sum": 0, "support": 0, "semicontinuity": 0,
                               "diffpar": 0, "rank": 0}
    for _ in range(n):
        div = rng.choice(pool)
        lb = gen.line_bundle(rng, div)
        L = ParabolicKClass(div, ((1, lb),))
        if ch_par(L) != exp_class(lb.c1 + sum((b * div.class_of(c) for c, b in lb.twist.items()),
                                              div.model.zero())):
            bad["exp"] += 1
        A, B = gen.kclass(rng, div), gen.kclass(rng, div)
        if ch_par(tensor_par(A, B)) != mul(ch_par(A), ch_par(B)):
            bad["tensor"] += 1
        if ch_par(A + B) != ch_par(A) + ch_par(B):
            bad["sum"] += 1
        if ch_par(A).degree0 != A.rank:
            bad["rank"] += 1
        beta = gen.multi_index(rng, div)
        cid = rng.choice(div.ids)
        lhs = constituent(A, beta + MultiIndex.delta(cid))
        rhs = tensor_par(constituent(A, beta), line(div, {cid: 1}))
        if not k_equal(lhs, rhs):
            bad["support"] += 1
        gap = _gap_to_next_jump(A, beta)
        eps = MultiIndex({c: gap * Fraction(rng.randint(0, 9), 10) for c in div.ids})
        if not k_equal(constituent(A, beta + eps), constituent(A, beta)):
            bad["semicontinuity"] += 1
        if not diff_over_d(A, beta).supported_on_d:
            bad["diffpar"] += 1
    for key, label in (("exp", "ch_par L(B) = exp(c1 + B)"), ("tensor", "ch_par is multiplicative"),
                       ("sum", "ch_par is additive"), ("rank", "degree-0 part of ch_par is the rank"),
                       ("support", "F_(beta + delta_i) = F_beta(D_i)"),
                       ("semicontinuity", "F_(beta + eps) = F_beta below the next jump"),
                       ("diffpar", "ch_par F - ch F_alpha is supported on D")):
        rep.check(f"{label} ({n} random samples)", bad[key] == 0, failures=bad[key])
    return rep


def _gap_to_next_jump(F: ParabolicKClass, beta: MultiIndex) -> Fraction:
    """Smallest positive distance from ``beta`` to a jump of any constituent."""
    gap = Fraction(1)
    for _, lb in F.terms:
        for cid in F.divisor.ids:
            x = frac(lb.twist[cid] + beta[cid])
            gap = min(gap, 1 - x)
    return gap


@scenario("pullback", "ch_par commutes with pullback along the double cover and the blowup",
          {"seed": (int, 0), "count": (int, 50)})
def _pullback(params) -> Report:
    rep = Report("pullback", params)
    rng = random.Random(params["seed"])
    cover, blow = corpus.double_cover(), corpus.blowup_morphism()
    half = Fraction(1, 2)
    img = pullback_par(cover, line(cover.divisor_down, {"0": half}))
    rep.check("double cover: O([0]/2) pulls back to O([0'])",
              k_equal(img, line(cover.divisor_up, {"0'": 1})), image=img)
    img = pullback_par(blow, line(blow.divisor_down, {"L": half}))
    rep.check("blowup: O(L/2) pulls back to O(Lt/2 + E/2)",
              k_equal(img, line(blow.divisor_up, {"Lt": half, "E": half})), image=img)
    for nm, f in (("double cover", cover), ("blowup", blow)):
        bad = 0
        for _ in range(params["count"]):
            F = gen.kclass(rng, f.divisor_down, signed=True)
            if ch_par(pullback_par(f, F)) != f.ring_map.apply(ch_par(F)):
                bad += 1
        rep.check(f"{nm}: ch_par f^*F = f^* ch_par F ({params['count']} random F)", bad == 0,
                  failures=bad)
    ident = corpus.identity_morphism(corpus.p2())
    F = gen.kclass(rng, ident.divisor_down)
    rep.check("identity pullback is the identity", k_equal(pullback_par(ident, F), F))
    return rep


@scenario("residues", "eigenvalue windows, weights and the associated parabolic bundle",
          {"seed": (int, 0), "count": (int, 200)})
def _residues(params) -> Report:
    rep = Report("residues", params)
    q = _q
    rep.check("normalize(3/2) = (-1/2, 2)", normalize_eigenvalue(q("3/2")) == (q("-1/2"), 2))
    for lam, alpha, want in (("-1/2", "3/4", "-1/2"), ("0", "0", "0"), ("-3/4", "1/2", "1/4")):
        got = representative_in_window(q(lam), q(alpha))
        rep.check(f"window representative of {lam} for alpha = {alpha} is {want}", got == q(want),
                  value=got)
    P1 = corpus.p1()
    D = _div(P1, ["0"])
    zero = P1.zero()
    E = AbelianLogConnection(D, (RankOnePiece.make(zero, {}), RankOnePiece.make(zero, {"0": "-1/2"})))
    spectrum = E.spectrum()
    w = associated_weights(spectrum, "0")
    rep.check("eigenvalues {0, -1/2} give weights {0, 1/2}", w == {q("0"): 1, q("1/2"): 1},
              weights=dict(w))
    par = associated_parabolic(E)
    want = trivial(D, 1) + line(D, {"0": q("1/2")}, c1=-P1.gen("pt"))
    rep.check("associated bundle of eigenvalues {0, -1/2} is O + O(-[0]/2)", k_equal(par, want),
              bundle=par)
    triv = AbelianLogConnection(D, (RankOnePiece.make(zero, {}),) * 3)
    rep.check("trivial connection gives the trivial bundle",
              k_equal(associated_parabolic(triv), trivial(D, 3)))
    rep.check("eigenvalue 2 fails the positive-integer check",
              not positive_integer_eigenvalue_check(
                  AbelianLogConnection(D, (RankOnePiece.make(zero, {"0": 2}),)).spectrum()))

    rng = random.Random(params["seed"])
    n = params["count"]
    bad = {"window": 0, "weights": 0, "translate": 0, "sum": 0, "jump": 0, "restrict": 0, "positive": 0}
    restriction = corpus.line_restriction()
    divs = [_div(corpus.p2()), _div(corpus.p1xp1()), restriction.divisor_down]
    for _ in range(n):
        s = gen.spectrum(rng)
        for cid in s.per_component:
            for lam, mult in s.per_component[cid].items():
                alpha = gen.rational(rng, 4, (1, 2, 3, 4, 5))
                r = representative_in_window(lam, alpha)
                if not (-alpha <= r < 1 - alpha) or (r - lam).denominator != 1:
                    bad["window"] += 1
                if 0 < alpha <= 1 and r.denominator == 1 and r > 0:
                    bad["positive"] += 1
            ws = associated_weights(s, cid)
            if any(not 0 <= x < 1 for x in ws) or sum(ws.values()) != s.rank(cid):
                bad["weights"] += 1
            for lam, mult in s.per_component[cid].items():
                # some weight w with w + lam integral must carry at least this multiplicity
                if sum(n for x, n in ws.items() if (x + lam).denominator == 1) < mult:
                    bad["weights"] += 1
            k = rng.randint(-3, 3)
            shifted = type(s)({c: {l + k: m for l, m in e.items()} for c, e in s.per_component.items()})
            if associated_weights(shifted, cid) != ws:
                bad["translate"] += 1
        div = rng.choice(divs)
        A, B = gen.connection(rng, div), gen.connection(rng, div)
        if not k_equal(associated_parabolic(A + B), associated_parabolic(A) + associated_parabolic(B)):
            bad["sum"] += 1
        # E(-nD) is another lattice in the same flat bundle on the complement
        shifts = {cid: rng.randint(-2, 2) for cid in div.ids}
        if not k_equal(associated_parabolic(A.shifted(shifts)), associated_parabolic(A)):
            bad["jump"] += 1
        if div is restriction.divisor_down:
            lhs = pullback_par(restriction, associated_parabolic(A))
            rhs = associated_parabolic(pullback_connection(restriction, A))
            if not k_equal(lhs, rhs):
                bad["restrict"] += 1
    for key, label in (("window", "window membership and integral shift"),
                       ("positive", "no positive integer in a window with alpha in (0, 1]"),
                       ("weights", "weights lie in [0, 1), match -lambda mod 1, keep multiplicities"),
                       ("translate", "weights are invariant under integer translation"),
                       ("sum", "associated bundle is compatible with direct sums"),
                       ("jump", "E(-nD) and E have the same associated bundle"),
                       ("restrict", "restriction to a transversal line commutes with the construction")):
        rep.check(f"{label} ({n} random samples)", bad[key] == 0, failures=bad[key])
    return rep


def _family_checks(rep: Report, fam: FamilyModel, expected_constant: int) -> None:
    one = fam.total.one()
    val = log_de_rham_euler(fam, one)
    rep.check(f"log de Rham Euler class of O is {expected_constant}",
              val == fam.base.scalar(expected_constant), value=val)
    rep.check("it lies in CH^0 of the base", val.in_ch0())
    for cid in fam.horizontal:
        rep.check(f"residue isomorphism along {cid}", residue_iso_check(fam, cid))


@scenario("pointed-curves", "Euler class 2 - r on S x P1 with r constant sections",
          {"r": (int, 3), "seed": (int, 0), "count": (int, 100)})
def _pointed(params) -> Report:
    r = params["r"]
    rep = Report("pointed-curves", params)
    if r not in corpus.POINTED_CURVE_RANGE:
        raise ScenarioError(f"r must lie in {corpus.POINTED_CURVE_RANGE.start}.."
                            f"{corpus.POINTED_CURVE_RANGE.stop - 1}")
    fam = corpus.pointed_curves(r)
    _family_checks(rep, fam, 2 - r)
    res = main_identity(fam, fam.total.one())
    rep.check("main identity for the trivial local system", res.status == "PASS",
              status=res.status, result=res.result)
    rng = random.Random(params["seed"])
    bad = 0
    factor = 1 - exp_class(fam.log_cotangent_c1)
    for _ in range(params["count"]):
        k = gen.section_supported(rng, fam)
        if not chi(fam, k * factor).is_zero():
            bad += 1
    rep.check(f"section-supported classes contribute nothing ({params['count']} random k)", bad == 0,
              failures=bad)
    return rep


@scenario("corrupted-family", "a non-semistable log cotangent class is caught by the residue check")
def _corrupted(params) -> Report:
    rep = Report("corrupted-family", params)
    fam = corpus.pointed_curves(3, corrupted=True)
    for cid in fam.horizontal:
        ok = residue_iso_check(fam, cid)
        rep.check(f"residue isomorphism fails along {cid}", not ok)
    res = main_identity(fam, fam.total.one())
    rep.check("main identity refuses to assert", res.status == "PRECONDITION_FAILED",
              status=res.status, reason=res.failure)
    split = split_kr(fam, fam.total.element({"1": 2, "s": 1}))
    rep.check("2 + s is not supported on the sections", not split.k_supported, r=split.r, k=split.k)
    return rep


def _weight_half_ledger() -> list[ParabolicKClass]:
    """``H^0 = H^1 = O + O(x/2)`` on ``P^1``: the weight-1/2 piece cancels."""
    S = corpus.p1("S", {"x": {"pt": 1}})
    D = _div(S)
    piece = trivial(D, 1) + line(D, {"x": Fraction(1, 2)})
    return [piece, piece]


@scenario("weight-half", "a weight-1/2 parabolic ledger and the main identity on S x P1")
def _weight_half(params) -> Report:
    rep = Report("weight-half", params)
    inst = main_theorem_instance(_weight_half_ledger())
    rep.check("sum (-1)^i ch_par H^i lies in CH^0", inst.in_ch0, total=inst.total)
    fam = corpus.pointed_curves(3)
    D = _div(fam.total)
    E = ch_par(trivial(D, 1) + line(D, {"k1": Fraction(1, 2)}))
    res = main_identity(fam, E)
    rep.check("ch_par(O + O(k1/2)) splits as 2 + (section-supported)",
              res.split.r == 2 and res.split.k_supported, r=res.split.r, k=res.split.k)
    rep.check("main identity: result is the constant r(2 - 3) = -2", res.status == "PASS"
              and res.result == fam.base.scalar(-2), status=res.status, result=res.result)
    return rep


@scenario("blowup-family", "two colliding sections separated by a blowup")
def _blowup(params) -> Report:
    rep = Report("blowup-family", params)
    fam = corpus.blowup_family()
    P = fam.total
    rep.check("chi(O) = 1", chi(fam, P.one()) == fam.base.one(), value=chi(fam, P.one()))
    rep.check("the sections are disjoint", mul(fam.section("k1"), fam.section("k2")).is_zero())
    _family_checks(rep, fam, 0)
    D = _div(P)
    ledger = [trivial(D, 1) + line(D, {"k1": Fraction(1, 2)}), line(D, {"k2": Fraction(1, 2)})]
    E = ch_par(ledger[0]) - ch_par(ledger[1])
    rep.check("E = 1 - s/2 - pt/4 by hand",
              E == P.element({"1": 1, "s": Fraction(-1, 2), "pt": Fraction(-1, 4)}), value=E)
    res = main_identity(fam, E)
    rep.check("main identity for E^0 - E^1 = (O + O(k1/2)) - O(k2/2)",
              res.status == "PASS" and res.in_ch0 and res.result.is_zero(),
              status=res.status, result=res.result)
    return rep


BETTI_P1XP1 = (1, 0, 2, 0, 1)


@scenario("product-family", "trivial families S x Y and a Leray ledger")
def _product(params) -> Report:
    rep = Report("product-family", params)
    S = corpus.p1("S", {"x": {"pt": 1}})
    D = _div(S)
    inst = main_theorem_instance([trivial(D, b) for b in BETTI_P1XP1])
    rep.check("sum (-1)^i b_i(P1 x P1) = 4 lies in CH^0", inst.in_ch0 and inst.total == S.scalar(4),
              total=inst.total)
    lhs = [LedgerEntry((-1) ** m, f"H^{m}(Y)", b, S.scalar(b)) for m, b in enumerate(BETTI_P1XP1)]
    # Y = P1 x P1 fibred over P1 by the first projection: E^0 = E^2 = O, E^1 = 0,
    # each contributing H^0 and H^2 of the base line.
    rhs = [LedgerEntry((-1) ** (i + j), f"H^{i}(P1, E^{j})", 1, S.one())
           for j in (0, 2) for i in (0, 2)]
    led = lefschetz_ledger(lhs, rhs)
    rep.check("Leray ledger balances", led.equal and not led.rank_mismatches,
              lhs=led.lhs, rhs=led.rhs)
    split = [LedgerEntry(1, "a", 2, S.element({"1": 2, "pt": 1}))]
    parts = [LedgerEntry(1, "a1", 1, S.element({"1": 1, "pt": Fraction(1, 3)})),
             LedgerEntry(1, "a2", 1, S.element({"1": 1, "pt": Fraction(2, 3)}))]
    rep.check("splitting an entry into summands keeps the ledger balanced",
              lefschetz_ledger(split, parts).equal)
    return rep


@scenario("classical", "Riemann-Roch on P1 over a point")
def _classical(params) -> Report:
    rep = Report("classical", params)
    fam = corpus.trivial_family()
    P = fam.total
    h = P.gen("h")
    rep.check("chi(P1, O) = 1", chi(fam, P.one()) == 1, value=chi(fam, P.one()))
    rep.check("chi(P1, O(-1)) = 0", chi(fam, exp_class(-h)).is_zero(), value=chi(fam, exp_class(-h)))
    rep.check("chi(P1, O(1)) = 2", chi(fam, exp_class(h)) == 2, value=chi(fam, exp_class(h)))
    rep.check("chi(0) = 0", chi(fam, P.zero()).is_zero())
    return rep


def _complex_checks(rep: Report, c: LogComplex, label: str) -> None:
    v = verdict(c)
    hyp = v.hypotheses
    rep.check(f"{label}: no theorem violation", v.status != "THEOREM_VIOLATION", status=v.status,
              origin=list(v.origin_ranks), generic=list(v.generic_ranks),
              m0_identity=hyp.m0_identity, residue_nilpotent=hyp.residue_nilpotent,
              reasons=list(v.reasons))
    rep.check(f"{label}: Euler characteristic is constant", v.euler_constant)


@scenario("steenbrink", "rank constancy on the fixtures and on random hypothesis-passing complexes",
          {"seed": (int, 0), "count": (int, 100)})
def _steenbrink(params) -> Report:
    rep = Report("steenbrink", params)
    expected = {"trivial-connection": "PASS", "t-multiplication": "HYPOTHESIS_FAILED", "gauge": "PASS"}
    for nm, make in corpus.complexes().items():
        v = verdict(make())
        rep.check(f"{nm}: verdict {expected[nm]}", v.status == expected[nm], status=v.status,
                  origin=list(v.origin_ranks), generic=list(v.generic_ranks))
    rng = random.Random(params["seed"])
    stats = {"PASS": 0, "HYPOTHESIS_FAILED": 0, "THEOREM_VIOLATION": 0}
    euler_bad = 0
    for _ in range(params["count"]):
        v = verdict(random_split_complex(rng))
        stats[v.status] += 1
        euler_bad += not v.euler_constant
    rep.check(f"random complexes: no theorem violation ({params['count']} samples)",
              stats["THEOREM_VIOLATION"] == 0, **{k.lower(): n for k, n in stats.items()})
    rep.check("random complexes: Euler characteristic constant", euler_bad == 0, failures=euler_bad)
    return rep


@scenario("steenbrink-trap", "the t-multiplication complex is stopped at the hypotheses")
def _trap(params) -> Report:
    rep = Report("steenbrink-trap", params)
    c = corpus.t_multiplication_complex()
    v = verdict(c)
    rep.check("ranks jump from the origin to the generic fibre", v.origin_ranks != v.generic_ranks,
              origin=list(v.origin_ranks), generic=list(v.generic_ranks))
    rep.check("residue is not nilpotent", not v.hypotheses.residue_nilpotent,
              eigenvalues=[list(e) for e in v.hypotheses.residue_eigenvalues])
    rep.check("verdict is HYPOTHESIS_FAILED", v.status == "HYPOTHESIS_FAILED", reasons=list(v.reasons))
    rep.check("Euler characteristic is constant", v.euler_constant)
    return rep


# -- input-driven scenarios ------------------------------------------------------------------


def _model_ref(ref, source, path="$.model") -> ChowModel:
    builtins = corpus.models()
    if isinstance(ref, str):
        if ref not in builtins:
            raise SchemaError(f"unknown model {ref!r}", path, source)
        return builtins[ref]
    if isinstance(ref, Mapping):
        return ChowModel.from_dict(ref, source)
    raise SchemaError("must be a model name or an inline model", path, source)


@scenario("complex", "verdict for a user-supplied complex", needs_input=True)
def _complex_input(params, data, source) -> Report:
    rep = Report("complex", params)
    c = LogComplex.from_dict(data, source)
    _complex_checks(rep, c, "input complex")
    return rep


def _ledger_side(data, key, model, source) -> list[LedgerEntry]:
    raw = data.get(key)
    if not isinstance(raw, list):
        raise SchemaError("must be a list of entries", f"$.{key}", source)
    out = []
    for i, e in enumerate(raw):
        path = f"$.{key}[{i}]"
        if not isinstance(e, Mapping):
            raise SchemaError("must be an object", path, source)
        sign, rank = e.get("sign", 1), e.get("rank")
        if sign not in (1, -1):
            raise SchemaError("sign must be 1 or -1", path + ".sign", source)
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise SchemaError("rank must be an integer", path + ".rank", source)
        try:
            ch = model.element(e.get("ch", {"1": rank}))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(str(exc), path + ".ch", source) from None
        out.append(LedgerEntry(sign, str(e.get("label", f"{key}[{i}]")), rank, ch))
    return out


@scenario("ledger", "balance a user-supplied spectral-sequence ledger", needs_input=True)
def _ledger_input(params, data, source) -> Report:
    rep = Report("ledger", params)
    if not isinstance(data, Mapping):
        raise SchemaError("a ledger must be a JSON object", "$", source)
    model = _model_ref(data.get("model"), source)
    led = lefschetz_ledger(_ledger_side(data, "lhs", model, source),
                           _ledger_side(data, "rhs", model, source))
    rep.check("declared ranks match the Chern characters", not led.rank_mismatches,
              mismatches=list(led.rank_mismatches))
    rep.check("both sides agree", led.equal, lhs=led.lhs, rhs=led.rhs, difference=led.difference)
    return rep


@scenario("main-theorem", "CH^0 test for a user-supplied cohomology ledger", needs_input=True)
def _main_theorem_input(params, data, source) -> Report:
    rep = Report("main-theorem", params)
    if not isinstance(data, Mapping) or not isinstance(data.get("degrees"), list):
        raise SchemaError("expected an object with a 'degrees' list", "$", source)
    model = _model_ref(data.get("model"), source)
    degrees = []
    for i, d in enumerate(data["degrees"]):
        if not isinstance(d, Mapping):
            raise SchemaError("must be a bundle object", f"$.degrees[{i}]", source)
        d = dict(d)
        d.setdefault("divisor", data.get("divisor", list(model.divisors)))
        try:
            degrees.append(ParabolicKClass.from_dict(d, model, source))
        except SchemaError as exc:
            raise SchemaError(exc.message, f"$.degrees[{i}]" + exc.path[1:], source) from None
    inst = main_theorem_instance(degrees)
    rep.check("sum (-1)^i ch_par H^i lies in CH^0", inst.in_ch0, total=inst.total)
    return rep


@scenario("family", "main identity for a user-supplied family and class", needs_input=True)
def _family_input(params, data, source) -> Report:
    rep = Report("family", params)
    if not isinstance(data, Mapping) or "family" not in data:
        raise SchemaError("expected an object with 'family' and optional 'class'", "$", source)
    fam = family_from_dict(data["family"], corpus.models(), source)
    try:
        E = fam.total.element(data.get("class", {"1": 1}))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(str(exc), "$.class", source) from None
    for cid in fam.horizontal:
        rep.check(f"residue isomorphism along {cid}", residue_iso_check(fam, cid))
    res = main_identity(fam, E)
    rep.check("main identity", res.status == "PASS", status=res.status, result=res.result,
              in_ch0=res.in_ch0, reason=res.failure)
    return rep
