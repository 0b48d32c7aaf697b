"""Certificates for 2-preadjoints and the four prefibration kinds.

A certificate is existential and constructive: when the property holds it
carries, per base object, the distinguished witness cell (and for
prefibrations per comma object too), so tests can compare the discovered
witnesses against explicitly named cells.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .comma import _KIND_TO_VARIANT, comma_of_strict, j_embedding
from .core import TwoCategory
from .functors import LaxFunctor
from .homology import find_homotopically_final

# which comma variant and homotopically-final flavour each preadjoint side needs
_SIDE_TABLE = {
    "left": ("colax", "final"),
    "coleft": ("lax", "cofinal"),
    "right": ("opcolax", "initial"),
    "coright": ("oplax", "coinitial"),
}

# which preadjoint side of J_b each prefibration kind requires
_KIND_TO_SIDE = {"pre": "coleft", "preop": "coright",
                 "preco": "left", "precoop": "right"}


@dataclass
class Certificate:
    holds: bool
    witnesses: dict = field(default_factory=dict)
    counterexample: Optional[Any] = None

    def witness_label(self, key):
        return self.witnesses[key]


def check_preadjoint(u: LaxFunctor, side: str = "left",
                     budget: Optional[int] = None,
                     with_labels: bool = True) -> Certificate:
    """Certify that the strict functor u is a 2-preadjoint of the given side.

    For each object b of the target the matching comma variant is built and
    searched for a homotopically final/cofinal/initial/co-initial object.
    """
    if side not in _SIDE_TABLE:
        raise ValueError(f"unknown preadjoint side {side!r}")
    if not u.strict:
        raise ValueError("preadjoints are defined for strict functors")
    variant, flavour = _SIDE_TABLE[side]
    B = u.target
    witnesses = {}
    for b in B.objects():
        cm = comma_of_strict(u, b, variant, budget)
        found = find_homotopically_final(cm.carrier, flavour)
        if not found:
            return Certificate(False, witnesses, counterexample=b)
        z = found[0]
        witnesses[b] = cm.carrier.obj_labels[z] if with_labels else z
    return Certificate(True, witnesses)


def check_prefibration(u: LaxFunctor, kind: str = "pre",
                       budget: Optional[int] = None) -> Certificate:
    """Certify a prefibration kind of Def-style: for every base object b the
    fiber-to-comma embedding J_b must be a 2-pre(co)adjoint of the matching
    handedness.  Witnesses are nested: b -> (comma object label -> witness)."""
    if kind not in _KIND_TO_SIDE:
        raise ValueError(f"unknown prefibration kind {kind!r}")
    if not u.strict:
        raise ValueError("prefibrations are defined for strict functors")
    side = _KIND_TO_SIDE[kind]
    variant, flavour = _SIDE_TABLE[side]
    B = u.target
    witnesses = {}
    for b in B.objects():
        J, fib, cm = j_embedding(u, b, kind, budget=budget)
        per_b = {}
        for x in cm.carrier.objects():
            double = comma_of_strict(J, x, variant, budget)
            found = find_homotopically_final(double.carrier, flavour)
            if not found:
                return Certificate(False, witnesses,
                                   counterexample=(b, cm.carrier.obj_labels[x]))
            z = found[0]
            per_b[cm.carrier.obj_labels[x]] = double.carrier.obj_labels[z]
        witnesses[b] = per_b
    return Certificate(True, witnesses)
