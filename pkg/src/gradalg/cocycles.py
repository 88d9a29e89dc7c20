"""Two-cocycles with root-of-unity values on finite groups.

Covers validation and normalization, pointwise combinations, the alternating
bicharacter and its radical, multiplicative coboundary solving through integer
exponent systems, and the minimal irreducible representation of an abelian
twisted group algebra.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (CocycleIdentityViolated, ElementOutsideGroup,
                     MismatchedGroup, NonAbelianGroup, NoSolution,
                     NotRootOfUnity, NotSubgroup, NotSymmetric, NotTransversal)
from .groups import FiniteGroup, GTuple, Subgroup
from .scalars import CyclotomicScalar

ONE = CyclotomicScalar.one()


class Cocycle:
    """A normalized 2-cocycle on a subgroup, as a full value table."""

    def __init__(self, subgroup: Subgroup, values: dict, _validate: bool = True):
        self.subgroup = subgroup
        self.values = dict(values)
        if _validate:
            self._validate()

    @classmethod
    def trivial(cls, subgroup: Subgroup) -> Cocycle:
        values = {(a, b): ONE for a in subgroup for b in subgroup}
        return cls(subgroup, values, _validate=False)

    @classmethod
    def verify_and_normalize(cls, subgroup: Subgroup, values: dict) -> Cocycle:
        """Validate a raw table and rescale so alpha(e, .) = alpha(., e) = 1."""
        table = subgroup.parent.table
        members = subgroup.sorted_members
        vals = {}
        for a in members:
            for b in members:
                v = values[(a, b)]
                if not v.is_root_of_unity():
                    raise NotRootOfUnity(f"value at ({a},{b}) is not a root of unity")
                vals[(a, b)] = v
        for u in members:
            for v in members:
                uv = table[u][v]
                for w in members:
                    lhs = vals[(u, v)] * vals[(uv, w)]
                    rhs = vals[(u, table[v][w])] * vals[(v, w)]
                    if lhs != rhs:
                        raise CocycleIdentityViolated(u, v, w)
        e = subgroup.parent.identity
        scale = vals[(e, e)]
        if not scale.is_one():
            inv = scale.inverse()
            vals = {k: v * inv for k, v in vals.items()}
        return cls(subgroup, vals, _validate=False)

    def _validate(self):
        # reuses the full verification sweep; construction is not a hot path
        checked = Cocycle.verify_and_normalize(self.subgroup, self.values)
        e = self.subgroup.parent.identity
        if checked.values != self.values and not self.values[(e, e)].is_one():
            raise CocycleIdentityViolated(e, e, e)

    def value(self, a: int, b: int) -> CyclotomicScalar:
        try:
            return self.values[(a, b)]
        except KeyError:
            raise ElementOutsideGroup(f"({a},{b}) outside cocycle domain") from None

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values.values())

    def __eq__(self, other):
        return (isinstance(other, Cocycle) and self.subgroup == other.subgroup
                and all(self.values[k] == other.values[k] for k in self.values))

    def __repr__(self):
        return f"Cocycle(on {sorted(self.subgroup.members)})"

    # -- pointwise combinations ---------------------------------------------

    def _check_same_group(self, other: Cocycle):
        if self.subgroup != other.subgroup:
            raise MismatchedGroup("cocycles live on different subgroups")

    def ratio(self, other: Cocycle) -> Cocycle:
        self._check_same_group(other)
        vals = {k: v / other.values[k] for k, v in self.values.items()}
        return Cocycle.verify_and_normalize(self.subgroup, vals)

    def product(self, other: Cocycle) -> Cocycle:
        self._check_same_group(other)
        vals = {k: v * other.values[k] for k, v in self.values.items()}
        return Cocycle.verify_and_normalize(self.subgroup, vals)

    def inverse(self) -> Cocycle:
        vals = {k: v.inverse() for k, v in self.values.items()}
        return Cocycle.verify_and_normalize(self.subgroup, vals)

    def restrict(self, sub: Subgroup) -> Cocycle:
        if not self.subgroup.contains_subgroup(sub):
            raise NotSubgroup("restriction target is not contained")
        vals = {(a, b): self.values[(a, b)] for a in sub for b in sub}
        return Cocycle.verify_and_normalize(sub, vals)

    def conjugate(self, g: int) -> Cocycle:
        """The cocycle alpha_g on gHg^-1 with alpha_g(gxg^-1, gyg^-1) = alpha(x, y)."""
        group = self.subgroup.parent
        group.check_element(g)
        conj = {h: group.conjugate(g, h) for h in self.subgroup}
        target = Subgroup(group, conj.values(), _validate=False)
        vals = {(conj[a], conj[b]): self.values[(a, b)]
                for a in self.subgroup for b in self.subgroup}
        return Cocycle.verify_and_normalize(target, vals)

    def iterated(self, tup: GTuple) -> CyclotomicScalar:
        """The scalar relating the basis product over a tuple to a single basis
        element: U_{g1}...U_{gn} = alpha(g1,...,gn) U_{g1...gn}."""
        group = self.subgroup.parent
        acc = ONE
        cur = None
        for g in tup:
            if g not in self.subgroup:
                raise ElementOutsideGroup(f"{g} outside cocycle subgroup")
            if cur is None:
                cur = g
            else:
                acc = acc * self.values[(cur, g)]
                cur = group.table[cur][g]
        return acc

    def bicharacter(self) -> Bicharacter:
        return Bicharacter.from_cocycle(self)

    def twist_by_coboundary(self, mu: dict) -> Cocycle:
        """The cohomologous cocycle alpha * d(mu) for a rescaling mu."""
        t = self.subgroup.parent.table
        vals = {(a, b): v * mu[a] * mu[b] / mu[t[a][b]]
                for (a, b), v in self.values.items()}
        return Cocycle.verify_and_normalize(self.subgroup, vals)

    def to_json(self):
        members = self.subgroup.sorted_members
        return {"subgroup": {"elements": list(members)},
                "values": [[self.values[(a, b)].to_json() for b in members]
                           for a in members]}

    @classmethod
    def from_json(cls, group: FiniteGroup, data) -> Cocycle:
        sub = Subgroup(group, data["subgroup"]["elements"])
        members = sub.sorted_members
        values = {}
        for i, a in enumerate(members):
            for j, b in enumerate(members):
                values[(a, b)] = CyclotomicScalar.from_json(data["values"][i][j])
        return cls.verify_and_normalize(sub, values)


class Bicharacter:
    """The alternating form beta(g,h) = alpha(g,h)/alpha(h,g) with its radical."""

    def __init__(self, subgroup: Subgroup, values: dict, radical: Subgroup):
        self.subgroup = subgroup
        self.values = values
        self.radical = radical

    @classmethod
    def from_cocycle(cls, alpha: Cocycle) -> Bicharacter:
        sub = alpha.subgroup
        if not sub.is_abelian():
            raise NonAbelianGroup("bicharacter requires an abelian subgroup")
        vals = {(a, b): alpha.values[(a, b)] / alpha.values[(b, a)]
                for a in sub for b in sub}
        t = sub.parent.table
        for a in sub:
            for b in sub:
                if not (vals[(a, b)] * vals[(b, a)]).is_one():
                    raise ArithmeticError("bicharacter is not alternating")
                for c in sub:
                    if vals[(a, t[b][c])] != vals[(a, b)] * vals[(a, c)]:
                        raise ArithmeticError("bicharacter is not multiplicative")
        rad = [g for g in sub if all(vals[(g, h)].is_one() for h in sub)]
        radical = Subgroup(sub.parent, rad, _validate=False)
        return cls(sub, vals, radical)

    def value(self, a: int, b: int) -> CyclotomicScalar:
        return self.values[(a, b)]

    def is_isotropic(self, elements) -> bool:
        return all(self.values[(a, b)].is_one() for a in elements for b in elements)


def bicharacter_and_radical(alpha: Cocycle) -> Bicharacter:
    return alpha.bicharacter()


def coboundary_solve(alpha: Cocycle, require_symmetric: bool = True) -> dict:
    """A splitting mu with alpha(a,b) = mu(a) mu(b) / mu(ab), on abelian domain.

    Works multiplicatively through discrete exponents: all values lie in the
    M-th roots of unity; the additive system mu(a)+mu(b)-mu(ab) = alpha(a,b)
    is solved over Z/M' with M' = M*|L| (doubled once on failure), which is
    always solvable for a symmetric cocycle on a finite abelian group.
    """
    sub = alpha.subgroup
    if not sub.is_abelian():
        raise NonAbelianGroup("coboundary solving requires an abelian subgroup")
    if require_symmetric:
        for a in sub:
            for b in sub:
                if alpha.values[(a, b)] != alpha.values[(b, a)]:
                    raise NotSymmetric(f"alpha({a},{b}) != alpha({b},{a})")
    members = sub.sorted_members
    index = {g: i for i, g in enumerate(members)}
    orders = []
    logs = {}
    for key, v in alpha.values.items():
        root = v.as_root_of_unity()
        if root is None:
            raise NotRootOfUnity("cocycle value is not a root of unity")
        logs[key] = root
        orders.append(root[0])
    M = 1
    for m in orders:
        M = M * m // gcd(M, m)

    e = sub.parent.identity
    t = sub.parent.table
    for attempt in range(2):
        Mp = M * len(members) * (2 ** attempt)
        rows, rhs = [], []
        for a in members:
            for b in members:
                row = [0] * len(members)
                row[index[a]] += 1
                row[index[b]] += 1
                row[index[t[a][b]]] -= 1
                base, k = logs[(a, b)]
                rows.append(row)
                rhs.append(k * (Mp // base))
        # pin mu(e) = 0
        pin = [0] * len(members)
        pin[index[e]] = 1
        rows.append(pin)
        rhs.append(0)
        sol = linalg.solve_mod(rows, rhs, Mp)
        if sol is None:
            continue
        mu = {g: CyclotomicScalar.zeta(Mp, sol[index[g]]) for g in members}
        for a in members:
            for b in members:
                if alpha.values[(a, b)] * mu[t[a][b]] != mu[a] * mu[b]:
                    raise NoSolution("splitting failed substitution check")
        return mu
    raise NoSolution("exponent system inconsistent at both moduli")


class IrrepData:
    """A verified minimal irreducible representation of a twisted group algebra."""

    def __init__(self, cocycle: Cocycle, dim: int, rho: dict,
                 isotropic: Subgroup, splitting: dict):
        self.cocycle = cocycle
        self.dim = dim
        self.rho = rho
        self.isotropic = isotropic
        self.splitting = splitting
        self._verify()

    def _verify(self):
        sub = self.cocycle.subgroup
        group = sub.parent
        d = self.dim
        ident = linalg.identity_matrix(d)
        if self.rho[group.identity] != ident:
            raise ArithmeticError("rho(U_e) is not the identity matrix")
        for g in sub:
            for h in sub:
                lhs = linalg.mat_mul(self.rho[g], self.rho[h])
                scale = self.cocycle.values[(g, h)]
                rhs = [[scale * c for c in row]
                       for row in self.rho[group.table[g][h]]]
                if lhs != rhs:
                    raise ArithmeticError(
                        f"rho is not alpha-multiplicative at ({g},{h})")
        vectors = [[m[i][j] for i in range(d) for j in range(d)]
                   for m in self.rho.values()]
        if linalg.rank(vectors, d * d) != d * d:
            raise ArithmeticError("matrix images do not span a full matrix algebra")
        radical = self.cocycle.bicharacter().radical
        if d * d * radical.order != sub.order:
            raise ArithmeticError("dimension does not match the radical index")


def smallest_irrep(gamma: Cocycle) -> IrrepData:
    """The minimal irreducible representation of an abelian twisted group algebra.

    A maximal isotropic subgroup L for the bicharacter is grown greedily from
    the radical; the splitting on L induces the representation on the coset
    basis of L in H.
    """
    sub = gamma.subgroup
    if not sub.is_abelian():
        raise NonAbelianGroup("smallest_irrep requires an abelian subgroup")
    group = sub.parent
    beta = gamma.bicharacter()
    iso = set(beta.radical.members)
    for x in sub:
        if x in iso:
            continue
        if all(beta.values[(x, l)].is_one() for l in iso):
            iso = set(group.closure(iso | {x}).members)
    isotropic = Subgroup(group, iso, _validate=False)
    mu = coboundary_solve(gamma.restrict(isotropic))

    transversal = isotropic.transversal(within=sub)
    reps = list(transversal.entries)
    pos = {w: i for i, w in enumerate(reps)}
    d = len(reps)
    zero = CyclotomicScalar.zero()
    rho = {}
    for h in sub:
        mat = [[zero] * d for _ in range(d)]
        for j, w in enumerate(reps):
            hw = group.table[h][w]
            wp = isotropic.coset_rep(hw)
            # hw = wp * l with l in L; the splitting absorbs the L part
            l = group.table[group.inverses[wp]][hw]
            coeff = (gamma.values[(h, w)]
                     * gamma.values[(wp, l)].inverse() * mu[l])
            mat[pos[wp]][j] = coeff
        rho[h] = mat
    return IrrepData(gamma, d, rho, isotropic, mu)


def phi_ratio(alpha: Cocycle) -> Fraction:
    """Largest-to-smallest irreducible dimension ratio; 1 on abelian domains,
    where all simple summands of the twisted group algebra share one size."""
    sub = alpha.subgroup
    if not sub.is_abelian():
        raise NonAbelianGroup("phi_ratio computed only for abelian subgroups")
    data = smallest_irrep(alpha)
    if sub.order % (data.dim * data.dim) != 0:
        raise ArithmeticError("component dimensions inconsistent")
    return Fraction(1)


def transversal_normalize(alpha: Cocycle, h_sub: Subgroup, transversal: GTuple):
    """A cohomologous table with alpha(h, w) = 1 for h in H, w in the transversal.

    The identity must represent its own coset; if the supplied transversal
    picked another element there, it is swapped for the identity.  Uses the
    unique factorization n = h*w and sets c(hw) = alpha(h, w); the returned
    cocycle is alpha * dc, realized on the rescaled basis c(n) U_n.
    """
    sub = alpha.subgroup
    group = sub.parent
    if not sub.contains_subgroup(h_sub):
        raise NotSubgroup("H must sit inside the cocycle's subgroup")
    # check transversal: exactly one representative per right coset of H
    seen = {}
    for w in transversal:
        if w not in sub.members:
            raise NotTransversal(f"{w} outside subgroup")
        rep = h_sub.coset_rep(w)
        if rep in seen:
            raise NotTransversal(f"two representatives for coset of {rep}")
        seen[rep] = w
    if len(seen) * h_sub.order != sub.order:
        raise NotTransversal("wrong number of coset representatives")
    reps = [group.identity if w in h_sub.members else w for w in transversal]

    c = {}
    for h in h_sub:
        for w in reps:
            c[group.table[h][w]] = alpha.values[(h, w)]
    new = alpha.twist_by_coboundary(c)
    for h in h_sub:
        for w in reps:
            if not new.values[(h, w)].is_one():
                raise ArithmeticError("normalization failed substitution check")
    return new, c


# -- class enumeration on abelian subgroups ------------------------------------

def abelian_basis(sub: Subgroup) -> list[int]:
    """Independent generators g_1,...,g_k with |<g_1>| * ... * |<g_k>| = |H|.

    Verified by checking that exponent tuples enumerate the subgroup without
    collisions.
    """
    if not sub.is_abelian():
        raise NonAbelianGroup("basis decomposition requires abelian subgroup")
    group = sub.parent
    basis: list[int] = []
    span = {group.identity}
    remaining = sorted(sub.members - span,
                       key=lambda x: (-group.element_order(x), x))
    while len(span) < sub.order:
        chosen = None
        for x in remaining:
            if x in span:
                continue
            candidate = group.closure(set(span) | {x}).members
            if len(candidate) == len(span) * group.element_order(x):
                chosen = x
                span = set(candidate)
                break
        if chosen is None:
            raise ArithmeticError("no independent generator found")
        basis.append(chosen)
    # verify coordinates cover the subgroup bijectively
    coords = element_coordinates(sub, basis)
    if len(coords) != sub.order:
        raise ArithmeticError("basis coordinates do not cover the subgroup")
    return basis


def element_coordinates(sub: Subgroup, basis: list[int]) -> dict:
    """Map each subgroup element to its exponent tuple over the basis."""
    group = sub.parent
    orders = [group.element_order(g) for g in basis]
    coords = {}

    def rec(i, current, exps):
        if i == len(basis):
            coords[current] = tuple(exps)
            return
        x = current
        for k in range(orders[i]):
            rec(i + 1, x, exps + [k])
            x = group.table[x][basis[i]]

    rec(0, group.identity, [])
    return coords


def enumerate_cocycle_classes(sub: Subgroup) -> list[Cocycle]:
    """One bilinear representative per cohomology class on an abelian subgroup.

    Classes correspond to the alternating pairings, parametrized by one root
    of unity of order dividing gcd(|g_i|, |g_j|) per basis pair i < j.
    """
    basis = abelian_basis(sub)
    group = sub.parent
    orders = [group.element_order(g) for g in basis]
    coords = element_coordinates(sub, basis)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    choice_ranges = [gcd(orders[i], orders[j]) for i, j in pairs]

    def build(choices) -> Cocycle:
        values = {}
        for a in sub:
            ca = coords[a]
            for b in sub:
                cb = coords[b]
                v = ONE
                for (i, j), m, k in zip(pairs, choice_ranges, choices):
                    if k == 0:
                        continue
                    expo = (k * ca[j] * cb[i]) % m
                    if expo:
                        v = v * CyclotomicScalar.zeta(m, expo)
                values[(a, b)] = v
        return Cocycle.verify_and_normalize(sub, values)

    results = []

    def rec(i, choices):
        if i == len(pairs):
            results.append(build(choices))
            return
        for k in range(choice_ranges[i]):
            rec(i + 1, choices + [k])

    rec(0, [])
    return results


def random_coboundary(sub: Subgroup, rng, max_order: int = 4) -> dict:
    """A random rescaling mu with mu(e) = 1, for cohomology-invariance tests."""
    group = sub.parent
    mu = {}
    for g in sub:
        if g == group.identity:
            mu[g] = ONE
        else:
            m = rng.randrange(1, max_order + 1)
            mu[g] = CyclotomicScalar.zeta(m, rng.randrange(m))
    return mu
