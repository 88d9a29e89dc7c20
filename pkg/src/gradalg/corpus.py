"""Seeded instance generation and batch checking for the decision engine.

Instances are pairs of presentations over small abelian ambient groups (plus
elementary targets), drawn deterministically from a seed.  A run record per
instance captures the decision, the construction certificate and the bounded
identity-inclusion check on true decisions, and a verified separator or an
honest inconclusive mark on false ones.
"""

from __future__ import annotations

import random

from .cocycles import enumerate_cocycle_classes
from .embed import construct, decide, decide_part1, decide_part2
from .errors import (BudgetExceeded, NotFoundWithinBudget, VerificationFailed)
from .galg import GradedPresentation, verify_hom
from .groups import FiniteGroup, GTuple
from .identities import (inclusion_bounded, is_identity, separate_elementary,
                         separate_part1, separate_bounded)

MAX_TUPLE_LEN = 3


def ambient_groups(order_bound: int = 6) -> list[FiniteGroup]:
    groups = [FiniteGroup.cyclic(n) for n in range(2, order_bound + 1)]
    if order_bound >= 4:
        groups.append(FiniteGroup.product([FiniteGroup.cyclic(2),
                                           FiniteGroup.cyclic(2)]))
    return groups


class _GroupData:
    def __init__(self, group: FiniteGroup):
        self.group = group
        self.subgroups = group.all_subgroups()
        self.classes = {sub.sorted_members: enumerate_cocycle_classes(sub)
                        for sub in self.subgroups}

    def cocycle_for(self, rng, sub):
        classes = self.classes[sub.sorted_members]
        return rng.choice(classes)


class Instance:
    def __init__(self, name, tag, a: GradedPresentation, b: GradedPresentation):
        self.name = name
        self.tag = tag
        self.a = a
        self.b = b

    def __repr__(self):
        return f"Instance({self.name}, tag={self.tag})"


def _random_tuple(rng, group, max_len=MAX_TUPLE_LEN, members=None):
    length = rng.randrange(1, max_len + 1)
    pool = sorted(members) if members is not None else list(group.elements())
    return GTuple(group, [rng.choice(pool) for _ in range(length)])


def generate_corpus(seed: int, order_bound: int = 6,
                    count: int = 220) -> list[Instance]:
    rng = random.Random(seed)
    data = [_GroupData(g) for g in ambient_groups(order_bound)]
    instances = []
    shapes = ["rigged", "random", "part1", "part2", "elementary"]
    idx = 0
    while len(instances) < count:
        gd = data[idx % len(data)]
        shape = shapes[idx % len(shapes)]
        idx += 1
        group = gd.group
        subs = gd.subgroups
        n1 = rng.choice(subs)
        alpha = gd.cocycle_for(rng, n1)
        if shape == "part1":
            n2 = group.full_subgroup()
        elif shape == "elementary":
            n2 = group.trivial_subgroup()
        else:
            n2 = rng.choice(subs)
        beta = gd.cocycle_for(rng, n2)
        if shape == "part2":
            s = _random_tuple(rng, group, members=n2.members)
            t = _random_tuple(rng, group, members=n1.members)
        else:
            s = _random_tuple(rng, group)
            t = _random_tuple(rng, group)
        a = GradedPresentation(group, n1, alpha, s, _spot_check=False)
        if shape == "rigged":
            probe = decide(a, GradedPresentation(group, n2, beta, t,
                                                 _spot_check=False))
            if len(probe.pattern) <= MAX_TUPLE_LEN:
                g = rng.randrange(group.order)
                entries = list(probe.pattern.shift(g).entries)
                while len(entries) < MAX_TUPLE_LEN and rng.random() < 0.4:
                    entries.append(rng.randrange(group.order))
                t = GTuple(group, entries)
        b = GradedPresentation(group, n2, beta, t, _spot_check=False)
        instances.append(Instance(f"i{len(instances):04d}", shape, a, b))
    return instances


def _part2_shape(inst: Instance) -> bool:
    return (all(x in inst.b.H.members for x in inst.a.s)
            and all(x in inst.a.H.members for x in inst.b.s))


def _part1_shape(inst: Instance) -> bool:
    return inst.b.H.order == inst.a.group.order


def run_instance(inst: Instance, max_len: int = 3,
                 budget: int | None = None) -> dict:
    """Full check of one instance; raises on any soundness violation."""
    a, b = inst.a, inst.b
    group = a.group
    rec = {"name": inst.name, "tag": inst.tag, "group": group.name,
           "dims": [a.dim, b.dim]}
    decision = decide(a, b)
    rec["verdict"] = decision.verdict
    rec["case"] = decision.case
    rec["trace"] = decision.to_json()

    cross = {}
    if group.abelian and _part1_shape(inst):
        cross["part1"] = decide_part1(a, b).verdict
        if cross["part1"] != decision.verdict:
            raise VerificationFailed(f"{inst.name}: part1 fast path disagrees")
    if group.abelian and _part2_shape(inst):
        cross["part2"] = decide_part2(a, b).verdict
        if cross["part2"] != decision.verdict:
            raise VerificationFailed(f"{inst.name}: part2 fast path disagrees")
    rec["cross_checks"] = cross

    if decision.verdict:
        hom = construct(a, b, decision)
        cert = verify_hom(hom)
        if not cert.is_embedding:
            raise VerificationFailed(f"{inst.name}: embedding not certified")
        rec["certificate"] = cert.to_json()
        report = inclusion_bounded(b, a, max_len, budget)
        if not report.holds:
            raise VerificationFailed(
                f"{inst.name}: identity inclusion violated on a true decision")
        rec["inclusion_holds"] = True
        rec["inclusion_multidegrees"] = len(report.checked)
    else:
        rec["separator"] = _attempt_separator(inst, max_len, budget)
    return rec


def _attempt_separator(inst: Instance, max_len: int, budget) -> dict:
    a, b = inst.a, inst.b
    group = a.group
    try:
        if (group.abelian and _part1_shape(inst) and b.alpha.is_trivial()):
            sep = separate_part1(a, b, budget)
        elif b.H.is_trivial() and b.alpha.is_trivial():
            sep = separate_elementary(a, b, budget)
        else:
            sep = separate_bounded(a, b, max_len, budget)
    except (NotFoundWithinBudget, BudgetExceeded) as exc:
        return {"status": "inconclusive-witness", "reason": str(exc)}
    # separators arrive pre-verified; re-assert the defining property
    if hasattr(sep.poly, "is_identity_on"):
        ok_b = sep.poly.is_identity_on(b, budget)
        val = sep.poly.evaluate([a.basis_element(k) for k in sep.witness_a])
        ok_a = not val.is_zero()
    else:
        ok_b = is_identity(sep.poly, b, budget).is_identity
        ok_a = not is_identity(sep.poly, a, budget).is_identity
    if not (ok_b and ok_a):
        raise VerificationFailed(f"{inst.name}: separator failed re-verification")
    return {"status": "verified", "kind": sep.kind,
            "multidegree": [int(g) for g in sep.degrees]}


_WORKER_CACHE: dict = {}


def _run_indexed(task) -> dict:
    """Worker entry: regenerate the corpus deterministically, run one index.

    Instances are rebuilt per process instead of shipped across it; records
    are plain JSON data, so pool results merge cleanly in input order.
    """
    seed, order_bound, count, index, max_len, budget = task
    key = (seed, order_bound, count)
    if key not in _WORKER_CACHE:
        _WORKER_CACHE[key] = generate_corpus(seed, order_bound, count)
    return run_instance(_WORKER_CACHE[key][index], max_len, budget)


def run_corpus(seed: int, order_bound: int = 6, count: int = 220,
               max_len: int = 3, budget: int | None = None,
               limit: int | None = None, workers: int = 1) -> dict:
    instances = generate_corpus(seed, order_bound, count)
    if limit is not None:
        instances = instances[:limit]
    if workers > 1:
        import multiprocessing
        tasks = [(seed, order_bound, count, i, max_len, budget)
                 for i in range(len(instances))]
        with multiprocessing.Pool(workers) as pool:
            records = pool.map(_run_indexed, tasks)
    else:
        records = [run_instance(inst, max_len, budget) for inst in instances]
    trues = sum(1 for r in records if r["verdict"])
    separators = sum(1 for r in records
                     if r.get("separator", {}).get("status") == "verified")
    inconclusive = sum(1 for r in records
                       if r.get("separator", {}).get("status")
                       == "inconclusive-witness")
    return {"seed": seed, "order_bound": order_bound,
            "count": len(records), "true_decisions": trues,
            "false_decisions": len(records) - trues,
            "separators_verified": separators,
            "separators_inconclusive": inconclusive,
            "records": records}
