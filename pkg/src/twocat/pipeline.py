"""The slice-hypothesis verification pipeline.

Given a triangle (u : A -> B, v : B -> C, w : A -> C, sigma oplax from v∘u
to w), the pipeline certifies, for every object c of C, that the induced
functor between the slices of w and v over c passes the weak-equivalence
oracle (or that both slices carry homotopically-final-style witnesses), and
then asserts the conclusion: the oracle passes on u itself.  A conclusion
failure under fully certified hypotheses is flagged as a theorem
contradiction, which on sound inputs indicates an implementation regression.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .comma import comma, induced_functor
from .core import BudgetExceeded, TwoCategory
from .functors import (LaxFunctor, Transformation, compose_lax,
                       validate_lax_functor, validate_transformation)
from .homology import asphericity_certificate, weq_oracle
from .nerve import lax_nerve


@dataclass
class DiagramSpec:
    name: str
    u: LaxFunctor
    v: LaxFunctor
    w: LaxFunctor
    sigma: Transformation        # oplax from v∘u to w
    K: int = 3
    budget: Optional[int] = None


@dataclass
class ObjectEvidence:
    c: int
    oracle: object
    slice_certificates: Optional[tuple] = None

    @property
    def certified(self) -> bool:
        if self.oracle is not None and self.oracle.ok:
            return True
        return (self.slice_certificates is not None
                and all(c is not None for c in self.slice_certificates))


@dataclass
class ThmaReport:
    name: str
    per_object: list
    hypothesis_certified: bool
    conclusion: object
    contradiction: bool
    error: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.error:
            return 2
        if self.contradiction or not (self.hypothesis_certified and self.conclusion.ok):
            return 1
        return 0

    def lines(self) -> list[str]:
        out = [f"diagram {self.name}: K-truncated slice-hypothesis check"]
        for ev in self.per_object:
            status = "certified" if ev.certified else "NOT certified"
            detail = str(ev.oracle) if ev.oracle is not None else "aspherical slices"
            out.append(f"  c={ev.c}: {status} ({detail})")
        out.append(f"  hypotheses: {'all certified' if self.hypothesis_certified else 'incomplete'}")
        out.append(f"  conclusion: {self.conclusion}")
        if self.contradiction:
            out.append("  THEOREM-CONTRADICTION: hypotheses certified but conclusion failed")
        return out


def validate_diagram(D: DiagramSpec) -> list[str]:
    problems = []
    u, v, w = D.u, D.v, D.w
    if u.source is not w.source or u.target is not v.source or v.target is not w.target:
        problems.append("triangle endpoints do not match")
    if D.sigma.kind not in ("oplax", "strict"):
        problems.append("sigma must be oplax (or strict viewed as oplax)")
    for f, nm in ((u, "u"), (v, "v"), (w, "w")):
        rep = validate_lax_functor(f)
        if not rep.ok:
            problems.append(f"functor {nm} invalid: {rep}")
    rep = validate_transformation(D.sigma)
    if not rep.ok:
        problems.append(f"sigma invalid: {rep}")
    # sigma must run from v∘u to w
    vu = compose_lax(v, u)
    A, C = u.source, w.target
    if any(D.sigma.src.obj(a) != vu.obj(a) for a in A.objects()) or \
            any(D.sigma.tgt.obj(a) != w.obj(a) for a in A.objects()):
        problems.append("sigma endpoints are not (v∘u, w)")
    return problems


def thma_pipeline(D: DiagramSpec, use_asphericity_fallback: bool = True) -> ThmaReport:
    problems = validate_diagram(D)
    if problems:
        return ThmaReport(D.name, [], False, None, False,
                          error="; ".join(problems))
    u, v, w = D.u, D.v, D.w
    C = w.target
    per_object = []
    try:
        for c in C.objects():
            wc = comma(w, c, "lax", D.budget)
            vc = comma(v, c, "lax", D.budget)
            F = induced_functor(u, D.sigma, c, wc, vc, D.budget)
            verdict = weq_oracle(F, D.K, budget=D.budget)
            certs = None
            if not verdict.ok and use_asphericity_fallback:
                certs = (asphericity_certificate(wc.carrier),
                         asphericity_certificate(vc.carrier))
                if any(x is None for x in certs):
                    certs = None
            per_object.append(ObjectEvidence(c, verdict, certs))
        hypothesis = all(ev.certified for ev in per_object)
        conclusion = weq_oracle(u, D.K, budget=D.budget)
        contradiction = hypothesis and not conclusion.ok
        return ThmaReport(D.name, per_object, hypothesis, conclusion, contradiction)
    except BudgetExceeded as e:
        return ThmaReport(D.name, per_object, False, None, False, error=str(e))


def identity_oplax(u: LaxFunctor, v: LaxFunctor) -> Transformation:
    """The identity-component oplax transformation v∘u => v∘u used for
    strictly commuting triangles (pass w = v∘u)."""
    vu = compose_lax(v, u)
    B = vu.target
    return Transformation("oplax", vu, vu,
                          lambda a: B.id1_of(vu.obj(a)),
                          lambda f: B.id2_of(vu.one(f)), name="id")


def strict_triangle(name: str, u: LaxFunctor, v: LaxFunctor,
                    K: int = 3, budget: Optional[int] = None) -> DiagramSpec:
    """The DiagramSpec of a strictly commuting triangle w = v∘u."""
    w = compose_lax(v, u)
    return DiagramSpec(name, u, v, w, identity_oplax(u, v), K, budget)
