"""Structured on-disk documents: canonical JSON with content hashes.

Every artifact is a single self-describing document with a format_version,
a kind tag and a content hash over its canonical serialization; functor
documents reference their endpoint 2-categories by hash so drift between
files is detected at load time.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Optional

from .core import Category, TwoCategory
from .functors import LaxFunctor, Transformation

FORMAT_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def doc_hash(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "content_hash"}
    return hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    return x


def two_category_to_doc(C: TwoCategory, name: Optional[str] = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "two_category",
        "name": name or C.name,
        "objects": C.n_objects,
        "one_cells": [[C.one_src[f], C.one_tgt[f]] for f in C.one_cells()],
        "two_cells": [[C.two_src[x], C.two_tgt[x]] for x in C.two_cells()],
        "id1": list(C.id1),
        "id2": list(C.id2),
        "comp1": [[g, f, h] for (g, f), h in sorted(C.comp1.items())],
        "vcomp": [[b, a, c] for (b, a), c in sorted(C.vcomp.items())],
        "hcomp": [[b, a, c] for (b, a), c in sorted(C.hcomp.items())],
        "obj_labels": _thaw(list(C.obj_labels)) if C.obj_labels else None,
        "one_labels": _thaw(list(C.one_labels)) if C.one_labels else None,
        "two_labels": _thaw(list(C.two_labels)) if C.two_labels else None,
    }
    doc["content_hash"] = doc_hash(doc)
    return doc


def two_category_from_doc(doc: dict) -> TwoCategory:
    if doc.get("kind") != "two_category":
        raise ValueError("document is not a two_category")
    if doc.get("content_hash") and doc_hash(doc) != doc["content_hash"]:
        raise ValueError("content hash mismatch")
    return TwoCategory(
        doc["objects"],
        tuple(s for s, _ in doc["one_cells"]),
        tuple(t for _, t in doc["one_cells"]),
        tuple(s for s, _ in doc["two_cells"]),
        tuple(t for _, t in doc["two_cells"]),
        tuple(doc["id1"]), tuple(doc["id2"]),
        {(g, f): h for g, f, h in doc["comp1"]},
        {(b, a): c for b, a, c in doc["vcomp"]},
        {(b, a): c for b, a, c in doc["hcomp"]},
        _freeze(doc["obj_labels"]) if doc.get("obj_labels") else None,
        _freeze(doc["one_labels"]) if doc.get("one_labels") else None,
        _freeze(doc["two_labels"]) if doc.get("two_labels") else None,
        name=doc.get("name"))


def lax_functor_to_doc(u: LaxFunctor, source_doc: dict, target_doc: dict,
                       name: Optional[str] = None) -> dict:
    A = u.source
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "lax_functor",
        "name": name or u.name,
        "source_hash": source_doc["content_hash"],
        "target_hash": target_doc["content_hash"],
        "obj_map": [u.obj(a) for a in A.objects()],
        "one_map": [u.one(f) for f in A.one_cells()],
        "two_map": [u.two(x) for x in A.two_cells()],
        "unit_cells": [u.unit(a) for a in A.objects()],
        "comp_cells": [[g, f, u.comp(g, f)] for (g, f) in sorted(A.comp1)],
        "strict": bool(u.strict),
    }
    doc["content_hash"] = doc_hash(doc)
    return doc


def lax_functor_from_doc(doc: dict, source: TwoCategory, target: TwoCategory,
                         source_doc: Optional[dict] = None,
                         target_doc: Optional[dict] = None) -> LaxFunctor:
    if doc.get("kind") != "lax_functor":
        raise ValueError("document is not a lax_functor")
    if source_doc and doc["source_hash"] != source_doc["content_hash"]:
        raise ValueError("source 2-category hash mismatch")
    if target_doc and doc["target_hash"] != target_doc["content_hash"]:
        raise ValueError("target 2-category hash mismatch")
    return LaxFunctor.from_tables(
        source, target, list(doc["obj_map"]), list(doc["one_map"]),
        list(doc["two_map"]), list(doc["unit_cells"]),
        {(g, f): c for g, f, c in doc["comp_cells"]}, name=doc.get("name"))


def transformation_to_doc(t: Transformation, src_doc: dict, tgt_doc: dict,
                          name: Optional[str] = None) -> dict:
    A = t.src.source
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "transformation",
        "name": name or t.name,
        "trans_kind": t.kind,
        "src_functor_hash": src_doc["content_hash"],
        "tgt_functor_hash": tgt_doc["content_hash"],
        "components": [t.component(a) for a in A.objects()],
        "naturality": [t.nat(f) for f in A.one_cells()],
    }
    doc["content_hash"] = doc_hash(doc)
    return doc


def transformation_from_doc(doc: dict, src: LaxFunctor, tgt: LaxFunctor) -> Transformation:
    if doc.get("kind") != "transformation":
        raise ValueError("document is not a transformation")
    return Transformation.from_tables(doc["trans_kind"], src, tgt,
                                      list(doc["components"]),
                                      list(doc["naturality"]),
                                      name=doc.get("name"))


def diagram_to_doc(name: str, docA: dict, docB: dict, docC: dict,
                   doc_u: dict, doc_v: dict, doc_w: dict, doc_sigma: dict,
                   K: int = 3, budget: Optional[int] = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "diagram",
        "name": name,
        "A": docA, "B": docB, "C": docC,
        "u": doc_u, "v": doc_v, "w": doc_w,
        "sigma": doc_sigma,
        "K": K,
        "budget": budget,
    }
    doc["content_hash"] = doc_hash(doc)
    return doc


def simplicial_to_doc(S, name: Optional[str] = None) -> dict:
    """Nondegenerate simplices per dimension with face incidence into the
    nondegenerate basis (degenerate faces are recorded as null)."""
    levels = []
    for m in range(S.K + 1):
        nd = S.nondegenerate_at(m)
        pos = {s: i for i, s in enumerate(nd)}
        faces = None
        if m >= 1:
            prev = {s: i for i, s in enumerate(S.nondegenerate_at(m - 1))}
            faces = [[prev.get(S.face(m, i, s)) for i in range(m + 1)] for s in nd]
        levels.append({"dimension": m, "count": len(nd), "faces": faces})
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "truncated_simplicial_set",
        "name": name,
        "K": S.K,
        "levels": levels,
    }
    doc["content_hash"] = doc_hash(doc)
    return doc


def homology_to_doc(rep, name: Optional[str] = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "homology_report",
        "name": name,
        "degrees": [{"degree": n, "betti": b, "torsion": list(t)}
                    for n, (b, t) in enumerate(rep.degrees)],
        "reliable_up_to": rep.reliable_up_to,
    }
    doc["content_hash"] = doc_hash(doc)
    return doc


def load_doc(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def save_doc(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(doc))
        fh.write("\n")
