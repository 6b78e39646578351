"""Integral group ring of the rationals mod one, with the operator pair.

Elements are finite integer combinations of group elements e(r).  Scaling
acts by e(r) -> e(k*r) and keeps e(0); the lift sums over the k-fold
preimages.  Their composite one way is multiplication by k, the other way
the sum over torsion shifts, with no exceptional cases: the contrast with
the symbol module, where the all-zero class is projected away, is the
point of carrying this model alongside.
"""

from .qz import QZ, preimages, qz


class GroupRingElem:
    """Finite integer combination of group elements of Q/Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for r, c in (coeffs or {}).items():
            if not isinstance(r, QZ):
                raise ValueError("group element must be a QZ value")
            if not isinstance(c, int):
                raise ValueError("coefficients must be integers")
            if c:
                clean[r] = clean.get(r, 0) + c
        self.coeffs = {r: c for r, c in clean.items() if c}

    @classmethod
    def of(cls, r, c=1):
        return cls({r: c})

    @classmethod
    def zero(cls):
        return cls()

    def items(self):
        return sorted(self.coeffs.items())

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for r, c in other.coeffs.items():
            out[r] = out.get(r, 0) + c
        return GroupRingElem(out)

    def __neg__(self):
        return GroupRingElem({r: -c for r, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not isinstance(c, int):
            raise ValueError("scalar must be an integer")
        return GroupRingElem({r: c * v for r, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("%d*e(%s)" % (c, r) for r, c in self.items())

    def to_json(self):
        return [{"e": str(r), "c": c} for r, c in self.items()]

    @classmethod
    def from_json(cls, data):
        out = {}
        for item in data:
            r = qz(item["e"])
            out[r] = out.get(r, 0) + int(item["c"])
        return cls(out)


def gr_sigma(k, x):
    """Scale every group element by k; e(0) stays, nothing is dropped."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("operator index must be a positive integer")
    out = {}
    for r, c in x.coeffs.items():
        s = r * k
        out[s] = out.get(s, 0) + c
    return GroupRingElem(out)


def gr_rho(k, x):
    """Sum over the k preimages of every group element."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("operator index must be a positive integer")
    out = {}
    for r, c in x.coeffs.items():
        for p in preimages(r, k):
            out[p] = out.get(p, 0) + c
    return GroupRingElem(out)


def bridge(fs):
    """Transport an arity-1 integer symbol sum into the group ring.

    Sends each one-entry symbol to the corresponding group element.  The
    map intertwines the lift unconditionally and the scaling exactly on
    sums no symbol of which is annihilated; it is not unital, since the
    symbol side has no class at zero.
    """
    if fs.rational:
        raise ValueError("bridge is defined on integer sums")
    if fs.terms and fs.arity != 1:
        raise ValueError("bridge is defined on arity-1 sums")
    out = {}
    for s, c in fs.terms.items():
        r = s[0]
        out[r] = out.get(r, 0) + int(c)
    return GroupRingElem(out)
