"""Degreewise tensor envelopes and the cocycle-twist of a presentation.

The degreewise envelope of two graded algebras keeps only the matching-degree
part of the tensor product.  Twisting by a 2-cocycle has an explicit
presentation-level normal form for presentations of graded-simple algebras,
realized here together with its certified isomorphism.
"""

from __future__ import annotations

from itertools import product as iproduct

from .cocycles import Cocycle
from .errors import MismatchedGroup, VerificationFailed
from .galg import (AlgebraElement, GradedHom, GradedPresentation, _AlgebraBase,
                   verify_hom)
from .groups import GTuple
from .scalars import CyclotomicScalar

ONE = CyclotomicScalar.one()


class EnvelopeCarrier(_AlgebraBase):
    """Basis pairs of equal degree with componentwise products."""

    def __init__(self, left, right):
        if left.group is not right.group:
            raise MismatchedGroup("envelope operands graded by different groups")
        self.group = left.group
        self.left = left
        self.right = right
        self._keys = [(ka, kb) for ka in left.basis_keys()
                      for kb in right.basis_keys()
                      if left.basis_degree(ka) == right.basis_degree(kb)]
        self.dim = len(self._keys)

    def basis_keys(self):
        return list(self._keys)

    def basis_degree(self, key) -> int:
        return self.left.basis_degree(key[0])

    def mul_basis(self, k1, k2) -> dict:
        la = self.left.mul_basis(k1[0], k2[0])
        if not la:
            return {}
        rb = self.right.mul_basis(k1[1], k2[1])
        out = {}
        for ka, va in la.items():
            for kb, vb in rb.items():
                out[(ka, kb)] = va * vb
        return out


class EnvelopeResult:
    """Carrier of a degreewise envelope plus operand provenance."""

    def __init__(self, carrier: EnvelopeCarrier, left, right):
        self.carrier = carrier
        self.left = left
        self.right = right
        self._check_component_dims()

    def _check_component_dims(self):
        degrees = {self.carrier.basis_degree(k) for k in self.carrier.basis_keys()}
        for g in degrees:
            expected = len(self.left.component(g)) * len(self.right.component(g))
            if len(self.carrier.component(g)) != expected:
                raise VerificationFailed("envelope component dimension mismatch")


def genvelope(left, right) -> EnvelopeResult:
    """The graded algebra with components A_g tensor B_g."""
    return EnvelopeResult(EnvelopeCarrier(left, right), left, right)


class AlphaEnvelope:
    """Cocycle twist of a presentation: carrier, normal form, certified iso."""

    def __init__(self, carrier, presentation, iso):
        self.carrier = carrier
        self.presentation = presentation
        self.iso = iso


def alpha_envelope(b: GradedPresentation, alpha: Cocycle) -> AlphaEnvelope:
    """Twist a presentation by a cocycle defined around its support.

    The result presentation keeps the subgroup and tuple and multiplies the
    cocycle; the isomorphism from the envelope carrier rescales each basis
    line by a square-root unit.  Multiplicativity is certified; if the
    canonical square-root branch happened to fail, per-index sign corrections
    are searched before giving up.
    """
    group = b.group
    domain = alpha.subgroup
    if not domain.contains_subgroup(b.H):
        raise MismatchedGroup("cocycle domain must contain the subgroup")
    for x in b.s:
        if x not in domain.members:
            raise MismatchedGroup("cocycle domain must contain the tuple entries")

    twist = GradedPresentation.twisted_group_algebra(alpha)
    carrier = EnvelopeCarrier(twist, b)
    new_alpha = b.alpha.product(alpha.restrict(b.H))
    target = GradedPresentation(group, b.H, new_alpha, b.s, _spot_check=False)

    inv = group.inverses
    roots = [alpha.values[(inv[si], si)].sqrt_root_of_unity() for si in b.s]

    def build_iso(signs):
        images = {}
        for key in carrier.basis_keys():
            (_, _, _), (h, i, j) = key
            denom = alpha.iterated(GTuple(group, (inv[b.s[i]], h, b.s[j])))
            coeff = signs[i] * signs[j] * roots[i] * roots[j] / denom
            images[key] = target.element({(h, i, j): coeff})
        return GradedHom(carrier, target, images)

    base_signs = [ONE] * b.r
    iso = build_iso(base_signs)
    cert = verify_hom(iso)
    if not cert.is_embedding:
        minus = CyclotomicScalar.from_rational(-1)
        for flips in iproduct((False, True), repeat=b.r - 1):
            signs = [ONE] + [minus if f else ONE for f in flips]
            iso = build_iso(signs)
            cert = verify_hom(iso)
            if cert.is_embedding:
                break
        else:
            raise VerificationFailed("no sign correction certifies the twist iso")
    return AlphaEnvelope(carrier, target, iso)


def round_trip_iso(b: GradedPresentation, alpha: Cocycle):
    """The map (V_g ox U_g ox b) -> b from the double twist back onto b.

    Returns (outer carrier, hom onto b); the hom is certified by the caller's
    tests, construction itself is scalar-free.
    """
    forward = genvelope(GradedPresentation.twisted_group_algebra(alpha), b)
    backward = genvelope(
        GradedPresentation.twisted_group_algebra(alpha.inverse()),
        forward.carrier)
    carrier = backward.carrier
    images = {}
    for key in carrier.basis_keys():
        _, (_, bkey) = key
        images[key] = b.basis_element(bkey)
    return carrier, GradedHom(carrier, b, images)


def envelope_lift(hom: GradedHom, env_src: AlphaEnvelope,
                  env_tgt: AlphaEnvelope) -> GradedHom:
    """Lift a graded map through matching twists: (U_g ox x) -> (U_g ox hom(x))."""
    carrier_src = env_src.carrier
    carrier_tgt = env_tgt.carrier
    images = {}
    for key in carrier_src.basis_keys():
        tkey, xkey = key
        image = hom.images[xkey]
        images[key] = AlgebraElement(
            carrier_tgt, {(tkey, kk): v for kk, v in image.terms.items()})
    return GradedHom(carrier_src, carrier_tgt, images)


def transport_hom_through_envelope(hom: GradedHom, alpha: Cocycle) -> GradedHom:
    """Conjugate a presentation map by the cocycle twist on both sides.

    Produces the twisted map between the normal-form presentations of the
    twisted source and target.
    """
    env_src = alpha_envelope(hom.source, alpha)
    env_tgt = alpha_envelope(hom.target, alpha)
    lifted = envelope_lift(hom, env_src, env_tgt)
    return env_tgt.iso.compose(lifted).compose(env_src.iso.inverse())


def falpha(poly, alpha: Cocycle):
    """Rescale a multilinear polynomial's coefficients by iterated cocycle
    values of its permuted multidegree."""
    from .identities import MultilinearPoly
    group = poly.group
    for g in poly.degrees:
        if g not in alpha.subgroup.members:
            from .errors import DegreeOutsideGroup
            raise DegreeOutsideGroup("multidegree leaves the cocycle domain")
    coeffs = {}
    for word, c in poly.coeffs.items():
        permuted = GTuple(group, [poly.degrees[v] for v in word])
        coeffs[word] = c * alpha.iterated(permuted)
    return MultilinearPoly(group, poly.degrees, coeffs)
