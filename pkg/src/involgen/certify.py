"""Branch selection and certificate assembly.

A certificate records the involution set of a branch, exact relation checks,
a verified word for every Lickorish twist, the puncture-permutation verdicts
and, for genus 3, the mod-2 symplectic quotient verdict.  Everything in it can
be replayed from the stored matrices with :func:`replay`.
"""

import json
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from involgen import rep
from involgen.permgrp import Perm, PermGroup, canonical_r
from involgen.quotient import quotient_verdict
from involgen.rep import RepElement, check_relations, equal, twist
from involgen.surface import SurfaceParams, build_registry, lantern_config
from involgen.words import (
    Word, bfs_search, coverage_words, evaluate, flavor_generators, lantern_word,
    select_conjugator,
)


SCOPE = (
    "Checks are exact but representation-level: word identities hold in the "
    "action on first homology together with the puncture permutation, the "
    "puncture images generate Sym_b, and (genus 3) the mod-2 images generate "
    "Sp(6,F_2). The homology representation is not faithful, so generation of "
    "the mapping class group itself rests on the Lickorish/Humphries and "
    "Gervais generation theorems, which are cited and not re-proved here."
)

SKETCH_VERDICT = "construction sketch only, no word certificate"


class NotGeneratedByInvolutions(ValueError):
    pass


@dataclass(frozen=True)
class TheoremBranch:
    count: int
    case: str
    flavor: str
    involutions: tuple
    condition: str

    def to_json(self):
        return {"count": self.count, "case": self.case, "flavor": self.flavor,
                "involutions": list(self.involutions), "condition": self.condition}


_BRANCHES = (
    (4, "a", "four-inv", ("rho1", "rho2", "rho3", "J"),
     "g > 7, or g = 7 and b even", lambda g, b: g > 7 or (g == 7 and b % 2 == 0)),
    (5, "b", "five-inv", ("rho1", "rho2", "rho3", "I12", "I13"),
     "g > 5, or g = 5 and b even", lambda g, b: g > 5 or (g == 5 and b % 2 == 0)),
    (6, "c", "six-inv", ("rho1", "rho2", "rho3", "I12", "I13", "I"),
     "g > 3, or g = 3 and b even", lambda g, b: g > 3 or (g == 3 and b % 2 == 0)),
    (9, "d", "sketch", (), "g = 3 and b odd", lambda g, b: g == 3),
)


def select_branch(g, b):
    if g < 3:
        raise NotGeneratedByInvolutions(
            f"Mod_(g,b) is not generated by involutions for g <= 2 (got g={g})")
    if b < 0:
        raise ValueError("b must be >= 0")
    for count, case, flavor, invs, cond, test in _BRANCHES:
        if test(g, b):
            return TheoremBranch(count, case, flavor, invs, cond)
    raise AssertionError("unreachable")


@dataclass
class Certificate:
    params: dict
    branch: dict
    generators: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    coverage: list = field(default_factory=list)
    sym: dict = field(default_factory=dict)
    quotient: dict = field(default_factory=dict)
    delta: list = field(default_factory=list)
    choices: dict = field(default_factory=dict)
    census: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    scope: str = SCOPE
    verdict: str = ""
    reason: str = None
    verified: bool = False

    def to_json(self):
        return {
            "params": self.params,
            "branch": self.branch,
            "scope": self.scope,
            "verified": self.verified,
            "verdict": self.verdict,
            "reason": self.reason,
            "failures": self.failures,
            "choices": self.choices,
            "generators": self.generators,
            "relations": self.relations,
            "coverage": self.coverage,
            "census": self.census,
            "sym": self.sym,
            "quotient": self.quotient,
            "delta": self.delta,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=False)


def _perm_json(perm):
    return [perm(i) for i in range(1, perm.degree + 1)]


def _gen_json(name, el):
    return {"name": name, "matrix": [[int(x) for x in row] for row in el.M.tolist()],
            "perm": _perm_json(el.perm)}


def _sym_verdict(gens, b):
    r1, r2 = canonical_r(b, "r1"), canonical_r(b, "r2")
    dihedral = PermGroup([r1, r2], b).order()
    images = PermGroup([el.perm for el in gens.values()], b).order()
    return {"order_r1r2": dihedral, "order_images": images, "expected": factorial(b),
            "full": images == factorial(b)}


def _delta_searches(p, gens, depth, max_states):
    reg = build_registry(p)
    targets = [twist(p, reg[f"delta{j}"]) for j in range(1, p.b)]
    if not targets:
        return []
    res = bfs_search(targets, [gens[n] for n in gens], depth=depth, max_states=max_states)
    out = []
    for j, w in enumerate(res.words, start=1):
        entry = {"j": j, "word": None if w is None else w.to_json()}
        if w is None:
            entry["status"] = "not certified at representation level"
            entry["searched"] = {"depth": res.depth, "states": res.explored,
                                 "truncated": res.truncated}
        out.append(entry)
    return out


def certify(g, b, depth=10, quotient=True, delta=True, max_states=50_000):
    branch = select_branch(g, b)
    p = SurfaceParams(g, b)
    cert = Certificate(params={"g": g, "b": b}, branch=branch.to_json())

    if branch.count == 9:
        cert.verdict = SKETCH_VERDICT
        cert.reason = "sketch-only branch"
        cert.sym = _sym_verdict({}, b) | {"order_images": None, "full": None}
        cert.quotient = {"p": 2, "order": None, "expected": None,
                         "skipped": "no involution set is constructed for this branch"}
        cert.verified = False
        return cert

    gens = flavor_generators(p, branch.flavor)
    cert.generators = [_gen_json(n, gens[n]) for n in gens]
    cfg = lantern_config(p)
    choices = {
        "lantern_center": cfg.m,
        "pivot": cfg.pivot,
        "interior_assignment": cfg.assignment,
        "first_factor_orientation": rep.rho3_orientation(p),
    }
    if "I" in gens:
        choices["I_beta_index"] = rep.I_beta_index(p)
    if branch.flavor == "four-inv":
        choices["conjugator_12"] = select_conjugator(p, gens, 1)[0]
        choices["conjugator_13"] = select_conjugator(p, gens, 2)[0]
    cert.choices = choices

    report = check_relations(p, dict(gens) | {"R": rep.rotation(p)})
    for name, el in gens.items():
        report.add("involution", f"{name}^2 = 1", equal(el @ el, rep.identity(p)))
    lw = lantern_word(p, branch.flavor, gens)
    report.add("lantern-word", f"evaluate({len(lw)}-letter word) = T_a4",
               equal(evaluate(lw, gens), twist(p, cfg.boundary[3])))
    cert.relations = report.to_json()

    reg = build_registry(p)
    words = coverage_words(p, branch.flavor, gens)
    letters = set()
    for curve, w in words.items():
        ok = equal(evaluate(w, gens), twist(p, reg[curve]))
        cert.coverage.append({"curve": curve, "word": w.to_json(), "ok": ok})
        letters.update(w.census())
    cert.census = sorted(letters, key=list(gens).index)

    cert.sym = _sym_verdict(gens, b)
    if quotient:
        cert.quotient = quotient_verdict(list(gens.values()), g, 2)
    else:
        cert.quotient = {"p": 2, "order": None, "expected": None,
                         "skipped": "quotient check disabled"}
    if delta:
        cert.delta = _delta_searches(p, gens, depth, max_states)

    fails = [f"relation: {e['instance']}" for e in cert.relations if not e["holds"]]
    fails += [f"coverage: {c['curve']}" for c in cert.coverage if not c["ok"]]
    if not set(letters) <= set(branch.involutions) or len(letters) > branch.count:
        fails.append(f"census: letters {sorted(letters)} exceed the branch set")
    if not cert.sym["full"]:
        fails.append(f"sym: images generate a group of order {cert.sym['order_images']}")
    if "ok" in cert.quotient and not cert.quotient["ok"]:
        fails.append(f"quotient: order {cert.quotient['order']} != {cert.quotient['expected']}")
    cert.failures = fails
    cert.verified = not fails
    cert.verdict = "verified" if cert.verified else "failed"
    return cert


def replay(data):
    """Re-evaluate every stored word against the stored generator matrices.

    Returns the list of coverage flags recomputed from ``data`` (a certificate
    as produced by ``Certificate.to_json``, possibly round-tripped through JSON).
    """
    g, b = data["params"]["g"], data["params"]["b"]
    p = SurfaceParams(g, b)
    gens = {}
    for item in data["generators"]:
        perm = Perm.from_images(item["perm"], base=1) if item["perm"] else Perm.identity(0)
        gens[item["name"]] = RepElement(np.array(item["matrix"], dtype=object), perm, item["name"])
    reg = build_registry(p)
    return [equal(evaluate(Word.from_json(c["word"]), gens), twist(p, reg[c["curve"]]))
            for c in data["coverage"]]
