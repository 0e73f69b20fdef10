"""Named verification suites shared by the CLI and the acceptance tests.

Each suite takes a brace (or a group for the group suites) and returns a
:class:`VerificationReport`.  A check whose hypothesis does not hold is
``skipped`` and names the hypothesis; only ``fail`` affects the exit code.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import brace as bc
from . import flows, grouplie, transform
from .errors import HypothesisError, InternalCheckError, StructuralError
from .numtheory import xi
from .prelie import (
    associated_lie,
    is_powerful_lie,
    lie_power_chain,
    prelie_nilpotency,
    verify_lie_axioms,
    verify_prelie_axioms,
)


@dataclass
class Check:
    name: str
    anchor: str
    status: str
    witness: object = None
    hypothesis: str | None = None
    detail: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "status": self.status}
        if self.witness is not None:
            out["witness"] = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        if self.hypothesis is not None:
            out["hypothesis"] = self.hypothesis
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    suite: str
    target: dict
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    seconds: float | None = None

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "target": self.target,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "info": self.info,
        }
        if timing and self.seconds is not None:
            out["timing"] = {"seconds": round(self.seconds, 3)}
        return out


class _Runner:
    def __init__(self, report: VerificationReport):
        self.report = report

    def check(self, name: str, anchor: str, fn):
        """Run ``fn``; it returns ``(ok, witness)`` or ``(ok, witness, detail)``."""
        try:
            out = fn()
        except HypothesisError as exc:
            self.report.checks.append(Check(name, anchor, "skipped", hypothesis=exc.hypothesis, detail=str(exc)))
            return None
        except InternalCheckError as exc:
            self.report.checks.append(Check(name, anchor, "fail", detail=str(exc)))
            return False
        ok, witness = out[0], out[1]
        detail = out[2] if len(out) > 2 else None
        self.report.checks.append(Check(name, anchor, "pass" if ok else "fail", witness, detail=detail))
        return ok


def _axioms_first(run: _Runner, B) -> bool:
    rep = bc.verify_brace_axioms(B)
    run.check("brace-axioms", "left brace axioms on the * table", lambda: (rep.ok, rep.witness, rep.identity))
    return rep.ok


def _gate(B, what):
    B.require_p_gt_n1(what)


# ---------------------------------------------------------------------------
# brace suites


def suite_brace_axioms(B, run: _Runner):
    _axioms_first(run, B)


def suite_prop_12345(B, run: _Runner):
    if not _axioms_first(run, B):
        return

    def f():
        d = transform.dot_pA(B)
        rep = d.verify()
        return rep.ok, rep.witness, rep.identity

    run.check("dot-pA-prelie", "averaged product on pA is pre-Lie", f)


def suite_lemma_666(B, run: _Runner):
    if not _axioms_first(run, B):
        return

    def section():
        _gate(B, "pullback section modulo ann(p^2)")
        view = transform.QuotientView(B)
        rep = transform.pullback(B).check(view)
        return rep.ok, rep.witness, rep.identity

    def independent():
        _gate(B, "odot well defined")
        view = transform.QuotientView(B)
        sec = transform.pullback(B)
        w = transform.odot_representative_violation(B, view, sec)
        return w is None, w

    def section_free():
        _gate(B, "odot well defined")
        view = transform.QuotientView(B)
        t1 = transform.odot_table(B, view, transform.pullback(B))
        t2 = transform.odot_table(B, view, transform.pullback(B, alternative=True))
        bad = np.argwhere(t1 != t2)
        return bad.size == 0, tuple(int(v) for v in bad[0]) if bad.size else None

    run.check("pullback-additive", "pullback is additive modulo ann(p^2)", section)
    run.check("odot-representatives", "odot independent of coset representatives", independent)
    run.check("odot-section", "odot independent of the chosen pullback", section_free)


def suite_theorem_dc(B, run: _Runner):
    if not _axioms_first(run, B):
        return
    box = {}

    def ring():
        res = transform.bullet(B)
        box["res"] = res
        rep = verify_prelie_axioms(res.ring)
        return rep.ok, rep.witness, {"identity": rep.identity, "quotient_order": res.ring.order}

    def cross():
        _gate(B, "bullet cross-check")
        w = box["res"].checks["via-dot_pA"]
        return w is None, w

    def section_free():
        _gate(B, "bullet cross-check")
        alt = transform.bullet(B, alternative_section=True, cross_check=False)
        bad = np.argwhere(alt.ring.dot != box["res"].ring.dot)
        return bad.size == 0, tuple(int(v) for v in bad[0]) if bad.size else None

    run.check("bullet-prelie", "bullet product on A/ann(p^2) is pre-Lie", ring)
    run.check("bullet-via-dot", "bullet agrees with the pullback of the averaged product", cross)
    run.check("bullet-section", "bullet independent of the chosen pullback", section_free)


def suite_roundtrip(B, run: _Runner):
    if not _axioms_first(run, B):
        return
    box = {}

    def quotient():
        rep = flows.roundtrip_check(B, "primary")
        box["rep"] = rep
        return rep.quotient_pass, rep.quotient_mismatch

    run.check("roundtrip-quotient", "group of flows of the scaled bullet ring recovers A/ann(p^2)", quotient)
    if "rep" not in box:
        return
    rep = box["rep"]

    def strong():
        if rep.strong_pass is None:
            transform.strong_index_below_p(B)
        return rep.strong_pass, rep.strong_mismatch

    run.check("roundtrip-strong", "group of flows of the scaled averaged product recovers the brace", strong)

    variants = {}
    for v in ("upper-limit", "p-factor"):
        r = flows.roundtrip_check(B, v)
        variants[v] = r.to_json()
    run.report.info["variants"] = variants


def suite_prop_nilpotent(B, run: _Runner):
    if not _axioms_first(run, B):
        return
    G = bc.adjoint_group(B)
    pw = grouplie.is_powerful_group(G)
    run.report.info["adjoint_powerful"] = pw
    run.report.info["brace_powerful"] = bc.is_powerful_brace(B)
    nil = bc.brace_nilpotency(B)
    run.report.info["nilpotency"] = nil.to_json()

    def f():
        _gate(B, "powerful adjoint group implies strongly nilpotent")
        if not pw:
            raise HypothesisError("adjoint group powerful")
        return nil.strongly_nilpotent, None, {"strong_index": nil.strong_index}

    run.check("strongly-nilpotent", "powerful adjoint group gives a strongly nilpotent brace", f)


def suite_identities(B, run: _Runner):
    """The elementary identities: powers, power subgroups, expansion, pA."""
    if not _axioms_first(run, B):
        return
    p = B.p

    def powers():
        for k in range(1, p * p + 1):
            it = bc.circ_power_table(B, k)
            bi = bc.circ_power_binomial_table(B, k)
            bad = np.flatnonzero(it != bi)
            if bad.size:
                return False, (int(bad[0]), k)
        return True, None

    def power_subgroups():
        i = 0
        while True:
            rep = bc.circ_power_subgroup(B, i)
            if not rep.equal:
                return False, (i,)
            if rep.multiple.is_trivial():
                return True, None
            i += 1

    def expansion():
        w = bc.sweep_engel_expansion(B)
        return w is None, w

    def pA():
        bc.sub_brace_pA(B)
        return True, None

    run.check("circ-power-binomial", "iterated circle power equals the binomial sum", powers)
    run.check("circ-power-subgroup", "circle p^i-th powers form p^i A", power_subgroups)
    run.check("sum-expansion", "alternating expansion of (a+b)*c", expansion)
    run.check("pA-subbrace", "pA is strongly nilpotent of index at most p-1", pA)


def suite_bounds(B, run: _Runner):
    if not _axioms_first(run, B):
        return
    cache: dict = {}
    worst = []
    prop16 = {"applicable": 0}
    for a in range(1, B.order):
        rep = grouplie.verify_bounds_on_instance(B, a, cache=cache)
        if "prop16_needed" in rep.data:
            prop16["applicable"] += 1
        if not rep.ok:
            worst.append(rep.to_json())
    run.check(
        "fixed-point-bounds",
        "fixed-point bounds on derived length, generator rank and |Fix(a)|",
        lambda: (not worst, worst[0]["a"] if worst else None, {"failures": worst[:3]}),
    )
    run.report.info["prop16"] = prop16
    b = grouplie.bound_formulas(5, 1, 1)
    run.report.info["f(5,1,1)"] = round(b.f, 9)
    run.report.info["nilpotency_class_bound"] = "bound exists, not explicit"


# ---------------------------------------------------------------------------
# group suites


def suite_corollary_22(G, run: _Runner):
    box = {}

    def lie():
        L = grouplie.graded_lie_ring(G)
        box["L"] = L
        rep = verify_lie_axioms(L.lie_ring)
        return rep.ok, rep.witness, {"identity": rep.identity, "order": L.order, "class": L.c}

    run.check("graded-lie-axioms", "L(G) is a Lie ring with |L(G)| = |G|", lie)
    L = box["L"]
    run.check("L1-generates", "L(G) is generated by its degree-one part", lambda: (grouplie.l1_generates(L), None))
    run.check("power-subring", "L(G, G^p) lies in pL(G)", lambda: (grouplie.power_subring_in_pL(L), None))
    pw = grouplie.is_powerful_group(G)
    run.report.info["group_powerful"] = pw
    run.report.info["lie_powerful"] = is_powerful_lie(L.lie_ring)

    def lie_powerful():
        if not pw:
            raise HypothesisError("G powerful")
        return is_powerful_lie(L.lie_ring), None

    def chain():
        if not pw:
            raise HypothesisError("G powerful")
        if not is_powerful_lie(L.lie_ring):
            raise HypothesisError("L(G) powerful")
        steps = lie_power_chain(L.lie_ring)
        bad = [i for i, ok in steps if not ok]
        return not bad, bad[0] if bad else None

    run.check("powerful-L", "G powerful implies L(G) powerful", lie_powerful)
    run.check("lie-power-chain", "L^(i+1) lies in p^i L for powerful L", chain)


def suite_coclass(G, run: _Runner):
    rep = grouplie.coclass_check(G)
    run.report.info["coclass"] = rep.to_json()

    def bound():
        if not rep.powerful:
            raise HypothesisError("G powerful")
        return rep.holds, None

    run.check("coclass-bound", "powerful G of order p^n and coclass b has n <= 2b+1", bound)

    def commutators():
        r = grouplie.powerful_commutator_checks(G)
        run.report.info["power_commutator_identity"] = {
            "checked": r.gamma_checked,
            "failures": r.gamma_failures[:5],
        }
        return r.pw_holds, r.pw_witness

    run.check("powerful-commutators", "(x, y) in G^(p^2) for x in G^p", commutators)


# ---------------------------------------------------------------------------
# pre-Lie suites


def suite_prelie_nilpotent(P, run: _Runner):
    rep = verify_prelie_axioms(P)
    run.check("prelie-axioms", "bi-additive product with the left pre-Lie identity", lambda: (rep.ok, rep.witness, rep.identity))
    if not rep.ok:
        return
    nil = prelie_nilpotency(P)
    L = associated_lie(P)
    pw = is_powerful_lie(L)
    run.report.info["nilpotency"] = nil.to_json()
    run.report.info["lie_powerful"] = pw

    def f():
        if not nil.left_nilpotent:
            raise HypothesisError("left nilpotent")
        if not pw:
            raise HypothesisError("associated Lie ring powerful")
        ok = nil.right_nilpotent and nil.strongly_nilpotent
        return ok, None, {"right_index": nil.right_index, "strong_index": nil.strong_index}

    run.check("right-and-strong", "left nilpotent with powerful Lie ring is right and strongly nilpotent", f)


BRACE_SUITES = {
    "brace-axioms": suite_brace_axioms,
    "prop-12345": suite_prop_12345,
    "lemma-666": suite_lemma_666,
    "theorem-dc": suite_theorem_dc,
    "roundtrip": suite_roundtrip,
    "prop-nilpotent": suite_prop_nilpotent,
    "identities": suite_identities,
    "bounds": suite_bounds,
}
GROUP_SUITES = {
    "corollary-22": suite_corollary_22,
    "coclass": suite_coclass,
}
PRELIE_SUITES = {"prelie-nilpotent": suite_prelie_nilpotent}
SUITES = {**BRACE_SUITES, **GROUP_SUITES, **PRELIE_SUITES}


def run_suite(name: str, obj, target: dict) -> VerificationReport:
    """Run suite ``name`` on a brace, pre-Lie ring or group.

    Group suites accept a brace and use its adjoint group.
    """
    from .prelie import PreLieRing

    if name not in SUITES:
        raise StructuralError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    if name in GROUP_SUITES and isinstance(obj, bc.Brace):
        obj = bc.adjoint_group(obj)
    wanted = bc.Brace if name in BRACE_SUITES else PreLieRing if name in PRELIE_SUITES else grouplie.FiniteGroupTable
    if not isinstance(obj, wanted):
        raise StructuralError(f"suite {name!r} needs a {wanted.__name__}, got {type(obj).__name__}")
    rep = VerificationReport(name, target)
    start = time.perf_counter()
    SUITES[name](obj, _Runner(rep))
    rep.seconds = time.perf_counter() - start
    return rep


def xi_report(p: int) -> dict:
    x = xi(p)
    m = x.modulus
    return {
        "p": p,
        "gamma": x.gamma,
        "xi": x.value,
        "order_divides_p-1": pow(x.value, p - 1, m) == 1,
        "no_smaller_power_1_mod_p": all(pow(x.value, j, p) != 1 for j in range(1, p - 1)),
    }
