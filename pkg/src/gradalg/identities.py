"""Multilinear graded polynomials and exact bounded-degree identity spaces.

A multilinear polynomial is stored as a sparse map from words (orderings of
its variables) to coefficients.  Identity testing evaluates on graded basis
elements only, which is complete by multilinearity; kernels are computed by
exact elimination over the cyclotomic field.

Two verified fast paths keep the sweeps tractable: fully antisymmetric
polynomials vanish on repeated arguments and have order-independent values,
so only distinct basis subsets are visited; and on presentations with a
trivial cocycle over an abelian group, the twisted part contributes a common
invertible factor, so vanishing only depends on the matrix-unit components.
"""

from __future__ import annotations

import os
from itertools import combinations, combinations_with_replacement, permutations
from itertools import product as iproduct
from math import comb, factorial

from . import linalg
from .cocycles import smallest_irrep
from .errors import (BudgetExceeded, DecisionWasTrue, DegreeMismatch,
                     InputIsIdentity, LengthMismatch, NonAbelianUnsupported,
                     NotFoundWithinBudget, VerificationFailed)
from .galg import AlgebraElement, GradedPresentation, sub_presentation
from .groups import FiniteGroup, GTuple
from .scalars import CyclotomicScalar
from .tuples import exists_shift

ONE = CyclotomicScalar.one()
DEFAULT_BUDGET = 10_000_000


def get_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("GRADALG_BUDGET", DEFAULT_BUDGET))


def perm_sign(word) -> int:
    inv = 0
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] > word[j]:
                inv += 1
    return -1 if inv % 2 else 1


class MultilinearPoly:
    """Sum of coefficient-weighted words over degree-labeled variables."""

    def __init__(self, group: FiniteGroup, degrees, coeffs: dict):
        self.group = group
        self.degrees = tuple(degrees)
        self.coeffs = {tuple(w): c for w, c in coeffs.items() if not c.is_zero()}
        self.n = len(self.degrees)

    @classmethod
    def variable(cls, group: FiniteGroup, degree: int) -> MultilinearPoly:
        return cls(group, (degree,), {(0,): ONE})

    def word_target(self, word) -> int:
        t = self.group.table
        acc = self.group.identity
        for v in word:
            acc = t[acc][self.degrees[v]]
        return acc

    def target_degree(self) -> int | None:
        targets = {self.word_target(w) for w in self.coeffs}
        return targets.pop() if len(targets) == 1 else None

    def scale(self, c: CyclotomicScalar) -> MultilinearPoly:
        return MultilinearPoly(self.group, self.degrees,
                               {w: c * v for w, v in self.coeffs.items()})

    def __add__(self, other: MultilinearPoly) -> MultilinearPoly:
        if self.degrees != other.degrees:
            raise DegreeMismatch("adding polynomials of different multidegrees")
        coeffs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            coeffs[w] = coeffs[w] + c if w in coeffs else c
        return MultilinearPoly(self.group, self.degrees, coeffs)

    def __mul__(self, other: MultilinearPoly) -> MultilinearPoly:
        """Product in disjoint variables; the other factor's variables are
        appended after this one's."""
        offset = self.n
        coeffs = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                coeffs[w1 + tuple(v + offset for v in w2)] = c1 * c2
        return MultilinearPoly(self.group, self.degrees + other.degrees, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"MultilinearPoly(n={self.n}, terms={len(self.coeffs)})"

    def to_json(self):
        return {"multidegree": list(self.degrees),
                "terms": [{"perm": list(w), "coeff": c.to_json()}
                          for w, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, group: FiniteGroup, data) -> MultilinearPoly:
        coeffs = {tuple(t["perm"]): CyclotomicScalar.from_json(t["coeff"])
                  for t in data["terms"]}
        return cls(group, data["multidegree"], coeffs)


def standard_poly(r: int, degrees, group: FiniteGroup | None = None,
                  target: int | None = None) -> MultilinearPoly:
    """The alternating signed sum over all orderings, filtered to the words
    whose degree product hits the target (the identity ordering's by default)."""
    if isinstance(degrees, GTuple):
        group = degrees.group
        degrees = degrees.entries
    degrees = tuple(degrees)
    if len(degrees) != r:
        raise LengthMismatch("degree list length must match the arity")
    probe = MultilinearPoly(group, degrees, {})
    ident = tuple(range(r))
    goal = target if target is not None else probe.word_target(ident)
    coeffs = {}
    for word in permutations(range(r)):
        if probe.word_target(word) == goal:
            sign = perm_sign(word)
            coeffs[word] = ONE if sign == 1 else -ONE
    return MultilinearPoly(group, degrees, coeffs)


# -- evaluation -----------------------------------------------------------------

def evaluate(poly: MultilinearPoly, assignment) -> AlgebraElement:
    """Evaluate at homogeneous elements matching the multidegree."""
    if len(assignment) != poly.n:
        raise LengthMismatch("assignment length mismatch")
    algebra = assignment[0].parent
    for el, g in zip(assignment, poly.degrees):
        deg = el.degree()
        if deg is not None and deg != g:
            raise DegreeMismatch(f"element degree {deg} != variable degree {g}")
    out = algebra.zero()
    for word, c in poly.coeffs.items():
        acc = assignment[word[0]]
        for v in word[1:]:
            if acc.is_zero():
                break
            acc = acc * assignment[v]
        out = out + acc.scale(c)
    return out


def _eval_on_keys(poly: MultilinearPoly, algebra, keys) -> dict:
    """Evaluate at basis keys; returns sparse terms of the value."""
    out: dict = {}
    mul = algebra.mul_basis
    for word, c in poly.coeffs.items():
        cur = {keys[word[0]]: ONE}
        for v in word[1:]:
            nxt: dict = {}
            k2 = keys[v]
            for k, s in cur.items():
                for kk, vv in mul(k, k2).items():
                    acc = s * vv
                    nxt[kk] = nxt[kk] + acc if kk in nxt else acc
            cur = {k: v2 for k, v2 in nxt.items() if not v2.is_zero()}
            if not cur:
                break
        for k, s in cur.items():
            acc = c * s
            out[k] = out[k] + acc if k in out else acc
    return {k: v for k, v in out.items() if not v.is_zero()}


def _antisym_unit(poly: MultilinearPoly) -> CyclotomicScalar | None:
    """The scalar u when poly = u * (signed sum over all words), else None."""
    ident = tuple(range(poly.n))
    unit = poly.coeffs.get(ident)
    if unit is None or len(poly.coeffs) != factorial(poly.n):
        return None
    for word, c in poly.coeffs.items():
        expected = unit if perm_sign(word) == 1 else -unit
        if c != expected:
            return None
    return unit


def _signed_subset_value(algebra, keys) -> dict:
    """Sum of sign(w) * product over all orderings w of the given basis keys."""
    n = len(keys)
    mul = algebra.mul_basis
    total: dict = {}

    def rec(used: int, order_count: int, inversions: int, cur: dict | None):
        if order_count == n:
            sign = -1 if inversions % 2 else 1
            for k, v in cur.items():
                acc = v if sign == 1 else -v
                total[k] = total[k] + acc if k in total else acc
            return
        for idx in range(n):
            bit = 1 << idx
            if used & bit:
                continue
            add_inv = bin(used >> (idx + 1)).count("1")
            if cur is None:
                nxt = {keys[idx]: ONE}
            else:
                nxt = {}
                for k, s in cur.items():
                    for kk, vv in mul(k, keys[idx]).items():
                        acc = s * vv
                        nxt[kk] = nxt[kk] + acc if kk in nxt else acc
                nxt = {k: v for k, v in nxt.items() if not v.is_zero()}
                if not nxt:
                    continue
            rec(used | bit, order_count + 1, inversions + add_inv, nxt)

    rec(0, 0, 0, None)
    return {k: v for k, v in total.items() if not v.is_zero()}


def _signed_unit_subset_value(units) -> dict:
    """Signed ordering sum for matrix units (i, j); integer-weighted output."""
    n = len(units)
    total: dict = {}

    def rec(used: int, count: int, inversions: int, span):
        if count == n:
            sign = -1 if inversions % 2 else 1
            total[span] = total.get(span, 0) + sign
            return
        for idx in range(n):
            bit = 1 << idx
            if used & bit:
                continue
            i, j = units[idx]
            if span is None:
                nxt = (i, j)
            elif span[1] == i:
                nxt = (span[0], j)
            else:
                continue
            add_inv = bin(used >> (idx + 1)).count("1")
            rec(used | bit, count + 1, inversions + add_inv, nxt)

    rec(0, 0, 0, None)
    return {k: v for k, v in total.items() if v}


def _bipartite_match(items, pools) -> list | None:
    """Assign each position one distinct item index; pools[pos] is a set."""
    n = len(pools)
    match_item = [None] * len(items)

    def augment(pos, seen):
        for idx, item in enumerate(items):
            if idx in seen or item not in pools[pos]:
                continue
            seen.add(idx)
            if match_item[idx] is None or augment(match_item[idx], seen):
                match_item[idx] = pos
                return True
        return False

    for pos in range(n):
        if not augment(pos, set()):
            return None
    out = [None] * n
    for idx, pos in enumerate(match_item):
        if pos is not None:
            out[pos] = idx
    return out


class IdentityCheck:
    def __init__(self, is_identity: bool, witness=None, value=None):
        self.is_identity = is_identity
        self.witness = witness
        self.value = value

    def __bool__(self):
        return self.is_identity


def _matrix_reduction_pools(poly: MultilinearPoly, algebra):
    """Per-position matrix units compatible with the variable degrees, for
    trivial-cocycle presentations over an abelian group."""
    if not isinstance(algebra, GradedPresentation):
        return None
    if not algebra.group.abelian or not algebra.alpha.is_trivial():
        return None
    pools = []
    lookup = []
    for g in poly.degrees:
        keys = algebra.component(g)
        units = {(i, j): (h, i, j) for (h, i, j) in keys}
        pools.append(set(units))
        lookup.append(units)
    return pools, lookup


def is_identity(poly: MultilinearPoly, algebra,
                budget: int | None = None) -> IdentityCheck:
    """Exhaustive graded-basis evaluation, with verified antisymmetric and
    trivial-cocycle shortcuts.  Returns a witness assignment on failure."""
    budget = get_budget(budget)
    if poly.is_zero():
        return IdentityCheck(True)
    pools = [algebra.component(g) for g in poly.degrees]
    if any(not p for p in pools):
        return IdentityCheck(True)

    unit = _antisym_unit(poly)
    if unit is not None:
        if len(set(poly.degrees)) == 1:
            pool = pools[0]
            if comb(len(pool), poly.n) > budget:
                raise BudgetExceeded("too many basis subsets")
            for subset in combinations(pool, poly.n):
                val = _signed_subset_value(algebra, subset)
                if val:
                    value = algebra.element({k: unit * v for k, v in val.items()})
                    return IdentityCheck(False, witness=subset, value=value)
            return IdentityCheck(True)
        reduction = _matrix_reduction_pools(poly, algebra)
        if reduction is not None:
            unit_pools, lookup = reduction
            all_units = sorted(set().union(*unit_pools))
            if comb(len(all_units), poly.n) > budget:
                raise BudgetExceeded("too many unit subsets")
            for subset in combinations(all_units, poly.n):
                assign = _bipartite_match(subset, unit_pools)
                if assign is None:
                    continue
                val = _signed_unit_subset_value(subset)
                if val:
                    keys = tuple(lookup[pos][subset[assign[pos]]]
                                 for pos in range(poly.n))
                    value = evaluate(poly, [algebra.basis_element(k)
                                            for k in keys])
                    if value.is_zero():
                        raise VerificationFailed(
                            "unit-subset shortcut disagreed with evaluation")
                    return IdentityCheck(False, witness=keys, value=value)
            return IdentityCheck(True)

    count = 1
    for p in pools:
        count *= len(p)
        if count > budget:
            raise BudgetExceeded(f"assignment enumeration exceeds {budget}")
    for keys in iproduct(*pools):
        val = _eval_on_keys(poly, algebra, keys)
        if val:
            return IdentityCheck(False, witness=keys,
                                 value=algebra.element(val))
    return IdentityCheck(True)


# -- identity spaces --------------------------------------------------------------

class IdentitySpace:
    """Kernel basis of the evaluation map for one multidegree."""

    def __init__(self, algebra, degrees, words, vectors):
        self.algebra = algebra
        self.degrees = tuple(degrees)
        self.words = words
        self.vectors = vectors

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def polys(self) -> list[MultilinearPoly]:
        group = self.algebra.group
        out = []
        for vec in self.vectors:
            coeffs = {w: c for w, c in zip(self.words, vec) if not c.is_zero()}
            out.append(MultilinearPoly(group, self.degrees, coeffs))
        return out


def identity_space(algebra, degrees, budget: int | None = None) -> IdentitySpace:
    """Exact kernel of (coefficients -> evaluations over all basis tuples)."""
    degrees = tuple(degrees)
    cache = getattr(algebra, "_idspace_cache", None)
    if cache is None:
        cache = {}
        algebra._idspace_cache = cache
    if degrees in cache:
        return cache[degrees]
    budget = get_budget(budget)
    n = len(degrees)
    words = list(permutations(range(n)))
    pools = [algebra.component(g) for g in degrees]
    if any(not p for p in pools):
        # no graded assignments: every polynomial vanishes
        vectors = []
        for i in range(len(words)):
            vec = [CyclotomicScalar.zero()] * len(words)
            vec[i] = ONE
            vectors.append(vec)
        space = IdentitySpace(algebra, degrees, words, vectors)
        cache[degrees] = space
        return space
    count = 1
    for p in pools:
        count *= len(p)
        if count > budget:
            raise BudgetExceeded(f"assignment enumeration exceeds {budget}")
    ech = linalg.Echelon(len(words))
    zero = CyclotomicScalar.zero()
    mul = algebra.mul_basis
    for keys in iproduct(*pools):
        per_out: dict = {}
        for widx, word in enumerate(words):
            cur = {keys[word[0]]: ONE}
            for v in word[1:]:
                nxt: dict = {}
                k2 = keys[v]
                for k, s in cur.items():
                    for kk, vv in mul(k, k2).items():
                        acc = s * vv
                        nxt[kk] = nxt[kk] + acc if kk in nxt else acc
                cur = {k: v2 for k, v2 in nxt.items() if not v2.is_zero()}
                if not cur:
                    break
            for k, s in cur.items():
                if k not in per_out:
                    per_out[k] = [zero] * len(words)
                per_out[k][widx] = per_out[k][widx] + s
        for row in per_out.values():
            if any(not c.is_zero() for c in row):
                ech.add_row(row)
    space = IdentitySpace(algebra, degrees, words, ech.kernel_basis())
    cache[degrees] = space
    return space


class InclusionReport:
    def __init__(self, holds, checked, violation):
        self.holds = holds
        self.checked = checked
        self.violation = violation  # (degrees, separator, witness) or None


def inclusion_bounded(b_algebra, a_algebra, max_len: int,
                      budget: int | None = None) -> InclusionReport:
    """Check identity-space containment Id(B) <= Id(A) per multidegree.

    Multidegrees run over sorted tuples from the union support: a permutation
    of the multidegree relabels variables identically on both sides, so one
    representative per multiset decides all its rearrangements.
    """
    supp = sorted(set(a_algebra.support()) | set(b_algebra.support()))
    checked = []
    for length in range(1, max_len + 1):
        for degrees in combinations_with_replacement(supp, length):
            space_b = identity_space(b_algebra, degrees, budget)
            checked.append(degrees)
            if not space_b.vectors:
                continue
            space_a = identity_space(a_algebra, degrees, budget)
            ech = linalg.Echelon(len(space_b.words))
            for vec in space_a.vectors:
                ech.add_row(vec)
            for vec, poly in zip(space_b.vectors, space_b.polys()):
                if not ech.contains(vec):
                    check_b = is_identity(poly, b_algebra, budget)
                    if not check_b.is_identity:
                        raise VerificationFailed(
                            "kernel vector fails direct verification")
                    check_a = is_identity(poly, a_algebra, budget)
                    if check_a.is_identity:
                        raise VerificationFailed(
                            "separating vector unexpectedly vanishes")
                    return InclusionReport(False, checked,
                                           (degrees, poly, check_a.witness))
    return InclusionReport(True, checked, None)


# -- product-form polynomials -----------------------------------------------------

def _freeze_projective(element: AlgebraElement):
    """Hashable snapshot up to a global scalar; used to dedupe value sets
    (rescaling never changes whether later products vanish)."""
    items = sorted(element.terms.items(), key=lambda kv: str(kv[0]))
    inv = items[0][1].inverse()
    return tuple((k, (v * inv).conductor, (v * inv).coeffs) for k, v in items)


class ProductPoly:
    """A product of multilinear factors in disjoint variables.

    Kept factored: expanding separators of the block-product shape multiplies
    term counts, while identity checking only needs the per-factor value sets.
    """

    def __init__(self, group: FiniteGroup, atoms: list[MultilinearPoly]):
        self.group = group
        self.atoms = list(atoms)
        self.degrees = tuple(g for atom in atoms for g in atom.degrees)

    def evaluate(self, assignment) -> AlgebraElement:
        if len(assignment) != len(self.degrees):
            raise LengthMismatch("assignment length mismatch")
        pos = 0
        acc = None
        for atom in self.atoms:
            part = evaluate(atom, assignment[pos:pos + atom.n])
            pos += atom.n
            acc = part if acc is None else acc * part
        return acc

    def expand(self, term_budget: int = 200_000) -> MultilinearPoly:
        total = 1
        for atom in self.atoms:
            total *= max(len(atom.coeffs), 1)
            if total > term_budget:
                raise BudgetExceeded("expansion would exceed the term budget")
        out = self.atoms[0]
        for atom in self.atoms[1:]:
            out = out * atom
        return out

    def _atom_value_set(self, atom: MultilinearPoly, algebra, budget: int):
        pools = [algebra.component(g) for g in atom.degrees]
        if any(not p for p in pools):
            return []
        values: dict = {}
        unit = _antisym_unit(atom)
        if unit is not None and len(set(atom.degrees)) == 1:
            pool = pools[0]
            if comb(len(pool), atom.n) > budget:
                raise BudgetExceeded("atom subset enumeration too large")
            for subset in combinations(pool, atom.n):
                val = _signed_subset_value(algebra, subset)
                if val:
                    el = algebra.element({k: unit * v for k, v in val.items()})
                    values.setdefault(_freeze_projective(el), el)
            return list(values.values())
        count = 1
        for p in pools:
            count *= len(p)
            if count > budget:
                raise BudgetExceeded("atom enumeration too large")
        for keys in iproduct(*pools):
            val = _eval_on_keys(atom, algebra, keys)
            if val:
                el = algebra.element(val)
                values.setdefault(_freeze_projective(el), el)
        return list(values.values())

    def is_identity_on(self, algebra, budget: int | None = None) -> bool:
        """All graded assignments vanish; per-factor value sets are folded
        left to right, dropping zero partial products."""
        budget = get_budget(budget)
        partial: dict | None = None
        for atom in self.atoms:
            vals = self._atom_value_set(atom, algebra, budget)
            if not vals:
                return True
            if partial is None:
                partial = {_freeze_projective(v): v for v in vals}
                continue
            nxt: dict = {}
            if len(partial) * len(vals) > budget:
                raise BudgetExceeded("value-set product too large")
            for p in partial.values():
                for v in vals:
                    prod = p * v
                    if not prod.is_zero():
                        nxt.setdefault(_freeze_projective(prod), prod)
            partial = nxt
            if not partial:
                return True
        return not partial

    def to_json(self):
        return {"product": [atom.to_json() for atom in self.atoms]}


# -- separators -------------------------------------------------------------------

def nonvanish_product(algebra, f1: MultilinearPoly, f2: MultilinearPoly,
                      budget: int | None = None):
    """A bridging variable and witness making f1 * x * f2 nonvanishing."""
    c1 = is_identity(f1, algebra, budget)
    if c1.is_identity:
        raise InputIsIdentity("first factor is an identity")
    c2 = is_identity(f2, algebra, budget)
    if c2.is_identity:
        raise InputIsIdentity("second factor is an identity")
    v1 = c1.value
    v2 = c2.value
    for key in algebra.basis_keys():
        mid = algebra.basis_element(key)
        value = v1 * mid * v2
        if not value.is_zero():
            bridge = MultilinearPoly.variable(algebra.group,
                                              algebra.basis_degree(key))
            poly = f1 * bridge * f2
            assignment = tuple(c1.witness) + (key,) + tuple(c2.witness)
            return poly, key, assignment, value
    raise VerificationFailed("no bridging element found in a simple algebra")


class SeparatorResult:
    def __init__(self, kind, poly, witness_a, degrees):
        self.kind = kind
        self.poly = poly            # MultilinearPoly or ProductPoly
        self.witness_a = witness_a  # basis keys of A
        self.degrees = degrees

    def to_json(self):
        return {"kind": self.kind, "poly": self.poly.to_json(),
                "witness": [list(k) if isinstance(k, tuple) else k
                            for k in self.witness_a],
                "multidegree": list(self.degrees)}


def _staircase_units(block_positions, length: int):
    """(i, j) index pairs walking the block diagonal/superdiagonal."""
    units = []
    q = 0
    for step in range(length):
        if step % 2 == 0:
            units.append((block_positions[q], block_positions[q]))
        else:
            units.append((block_positions[q], block_positions[q + 1]))
            q += 1
    return units


def separate_part1(a: GradedPresentation, b: GradedPresentation,
                   budget: int | None = None) -> SeparatorResult:
    """Separator for the full-subgroup target shape via the standard
    polynomial of degree twice the target's matrix size."""
    budget = get_budget(budget)
    group = a.group
    if not group.abelian:
        raise NonAbelianUnsupported("this separator shape needs an abelian group")
    if b.H.order != group.order or not b.alpha.is_trivial():
        raise VerificationFailed(
            "separator shape requires a trivially twisted full-subgroup target")
    gamma = a.alpha.ratio(b.alpha.restrict(a.H))
    d = smallest_irrep(gamma).dim
    r1, r2 = a.r, b.r
    if r2 >= d * r1:
        raise DecisionWasTrue("embedding criterion holds; nothing separates")
    length = 2 * r2
    witness = None
    if r1 > r2:
        # a staircase of matrix units chains in exactly one order
        e = group.identity
        units = _staircase_units(list(range(r2 + 1)), length)
        witness = tuple((e, i, j) for i, j in units)
        if not _signed_subset_value(a, witness):
            witness = None
    if witness is None:
        r1pp = min(r1, (r2 + d) // d)  # smallest block with d*r1pp > r2
        sub, incl = sub_presentation(a, range(r1pp))
        keys = sub.basis_keys()
        if comb(len(keys), length) > budget:
            raise NotFoundWithinBudget("witness subset search exceeds budget")
        for subset in combinations(keys, length):
            if _signed_subset_value(sub, subset):
                witness = subset
                break
        if witness is None:
            raise VerificationFailed("expected standard-polynomial witness")
    degrees = tuple(a.basis_degree(k) for k in witness)
    poly = standard_poly(length, degrees, group)
    if not is_identity(poly, b, budget).is_identity:
        raise VerificationFailed("separator fails to vanish on the target")
    val = evaluate(poly, [a.basis_element(k) for k in witness])
    if val.is_zero():
        raise VerificationFailed("separator witness evaluates to zero")
    return SeparatorResult("part1", poly, witness, degrees)


def separate_elementary(a: GradedPresentation, b: GradedPresentation,
                        budget: int | None = None) -> SeparatorResult:
    """Block-product separator against an elementary matrix target."""
    budget = get_budget(budget)
    group = a.group
    if not b.H.is_trivial() or not b.alpha.is_trivial():
        raise VerificationFailed("target must carry an elementary grading")
    h_members = sorted(a.H.members)
    h_bar = GTuple(group, h_members)
    pattern = h_bar.product(a.s)
    if exists_shift(b.s, pattern, group.trivial_subgroup()) is not None:
        raise DecisionWasTrue("embedding criterion holds; nothing separates")

    # group the tuple by right cosets, representatives at first occurrence
    blocks = []
    seen = {}
    for pos, x in enumerate(a.s):
        rep = a.H.coset_rep(x)
        if rep not in seen:
            seen[rep] = len(blocks)
            blocks.append([])
        blocks[seen[rep]].append(pos)
    inv = group.inverses
    t = group.table
    s1_pos = blocks[0][0]
    s1 = a.s[s1_pos]
    e = group.identity

    atoms: list[MultilinearPoly] = []
    witness: list = []
    for positions in blocks:
        qi = positions[0]
        si = a.s[qi]
        ri = len(positions)
        for h in h_members:
            deg_x = t[t[inv[s1]][h]][si]          # s1^-1 h s_i
            atoms.append(MultilinearPoly.variable(group, deg_x))
            witness.append((h, s1_pos, qi))
            st = standard_poly(2 * ri - 1, [e] * (2 * ri - 1), group)
            atoms.append(st)
            for (u, v) in _staircase_units(positions, 2 * ri - 1):
                hz = t[a.s[u]][inv[a.s[v]]]       # degree-e twist inside a block
                witness.append((hz, u, v))
            atoms.append(MultilinearPoly.variable(group, inv[deg_x]))
            q_last = positions[-1]
            hy = t[t[a.s[q_last]][inv[si]]][inv[h]]
            witness.append((hy, q_last, s1_pos))
            atoms.append(MultilinearPoly.variable(group, e))
            witness.append((e, s1_pos, s1_pos))
    product = ProductPoly(group, atoms)
    value = product.evaluate([a.basis_element(k) for k in witness])
    if value.is_zero():
        raise VerificationFailed("block-product witness evaluates to zero")
    if not product.is_identity_on(b, budget):
        raise VerificationFailed("block product fails to vanish on the target")
    return SeparatorResult("elementary_nonabelian", product, tuple(witness),
                           product.degrees)


def separate_bounded(a, b, max_len: int = 4,
                     budget: int | None = None) -> SeparatorResult:
    """Scan bounded multidegrees for any separating kernel vector."""
    report = inclusion_bounded(b, a, max_len, budget)
    if report.holds:
        raise NotFoundWithinBudget(
            f"no separator within multidegree length {max_len}")
    degrees, poly, witness = report.violation
    return SeparatorResult("bounded_fallback", poly, witness, degrees)


def witness_separate(a: GradedPresentation, b: GradedPresentation, case: str,
                     max_len: int = 4, budget: int | None = None) -> SeparatorResult:
    if case == "part1":
        return separate_part1(a, b, budget)
    if case == "elementary_nonabelian":
        return separate_elementary(a, b, budget)
    if case == "bounded_fallback":
        return separate_bounded(a, b, max_len, budget)
    raise ValueError(f"unknown separator case: {case}")
