"""Boundary calculus on combinatorial normal-crossings models.

A model records the ambient dimension, the labels of the boundary
components, and the nonempty closed strata (one per subset of components
that actually meet), each with a name and a dimension.  The boundary
class of the model is the signed sum, over nonempty subsets T of
components with nonempty stratum, of the class of that stratum times an
affine factor of exponent |T| - 1, mapping to a fixed target label; the
sign is + for odd |T| and - for even |T|.  Every summand then has total
source dimension one below the ambient one, which is the grading check.

Identifications between strata of different models (an exceptional curve
with a line over a point, say) are declared as whole-label rewrite rules;
rewriting may produce labels carrying explicit affine factors, which are
folded into the exponent so that syntactic equality of composites is
equality of the declared classes.
"""

import re
from dataclasses import dataclass, field


_AFFINE_SUFFIX = re.compile(r"^(.*) x A\^(\d+)$")


def parse_composite(label):
    """Split trailing affine factors off a label: base, total exponent."""
    affine = 0
    while True:
        m = _AFFINE_SUFFIX.match(label)
        if not m:
            return label, affine
        label = m.group(1)
        affine += int(m.group(2))


@dataclass(frozen=True)
class BurnGen:
    """One generator: a source composite over a target label.

    The source is a base label times an affine factor; two generators are
    the same iff their composite labels, targets, and total source
    dimensions agree.
    """
    source: str
    affine: int
    target: str
    dim: int

    @property
    def composite(self):
        if self.affine == 0:
            return self.source
        return "%s x A^%d" % (self.source, self.affine)

    def __eq__(self, other):
        if not isinstance(other, BurnGen):
            return NotImplemented
        return (self.composite, self.target, self.dim) == \
            (other.composite, other.target, other.dim)

    def __hash__(self):
        return hash((self.composite, self.target, self.dim))

    def to_json(self):
        return {"source": self.composite, "target": self.target,
                "dim": self.dim}


class BurnElem:
    """Integer combination of generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for g, c in (terms or {}).items():
            if c:
                clean[g] = clean.get(g, 0) + c
        self.terms = {g: c for g, c in clean.items() if c}

    @classmethod
    def of(cls, gen, c=1):
        return cls({gen: c})

    @classmethod
    def zero(cls):
        return cls()

    def items(self):
        return sorted(self.terms.items(),
                      key=lambda gc: (gc[0].dim, gc[0].composite,
                                      gc[0].target))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BurnElem):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return BurnElem(out)

    def __neg__(self):
        return BurnElem({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BurnElem({g: c * v for g, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for g, c in self.items():
            bits.append("%+d [%s -> %s]" % (c, g.composite, g.target))
        return " ".join(bits)

    def to_json(self):
        return [{"c": c, **g.to_json()} for g, c in self.items()]


@dataclass
class Stratum:
    name: str
    dim: int


@dataclass
class Model:
    """Combinatorial normal-crossings model."""
    dim: int
    labels: list
    strata: dict
    name: str = "X"
    boundary_target: str = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("component labels must be distinct")
        if self.boundary_target is None:
            self.boundary_target = self.name
        n = len(self.labels)
        for key, st in self.strata.items():
            if not key or not all(1 <= i <= n for i in key):
                raise ValueError("bad stratum index set %r" % (set(key),))
            # normal crossings: a depth-|T| stratum has codimension |T|
            if st.dim != self.dim - len(key):
                raise ValueError(
                    "stratum %s breaks the normal crossings dimension rule"
                    % st.name)
        # every component is itself a depth-1 stratum
        for i, lab in enumerate(self.labels, start=1):
            self.strata.setdefault(frozenset([i]),
                                   Stratum(lab, self.dim - 1))


def model_from_json(data):
    labels = list(data["labels"])
    strata = {}
    for key, st in data.get("strata", {}).items():
        idx = frozenset(int(p) for p in str(key).split(","))
        d = int(st.get("dim", int(data["dim"]) - len(idx)))
        strata[idx] = Stratum(str(st["name"]), d)
    return Model(dim=int(data["dim"]), labels=labels, strata=strata,
                 name=str(data.get("name", "X")),
                 boundary_target=data.get("boundary"))


def boundary_snc(model, target=None):
    """Signed sum of stratum-times-affine classes over the target label."""
    if target is None:
        target = model.boundary_target
    out = {}
    for key, st in model.strata.items():
        t = len(key)
        sign = 1 if t % 2 else -1
        gen = BurnGen(st.name, t - 1, target, st.dim + t - 1)
        out[gen] = out.get(gen, 0) + sign
    return BurnElem(out)


def check_grading(elem, expected_dim):
    """Generators whose total source dimension is off the expected grade."""
    return [g for g, _ in elem.items() if g.dim != expected_dim]


class RewriteRules:
    """Whole-label rewriting, applied to a fixpoint.

    The rule set is functional (one replacement per label) and must be
    acyclic; a rewritten label may carry explicit affine factors, which
    fold into the exponent of the generator it appears in.
    """

    def __init__(self, rules):
        self.rules = {}
        for src, dst in rules:
            if src in self.rules:
                raise ValueError("two rules for label %r" % src)
            self.rules[src] = dst
        for src in self.rules:
            seen = {src}
            cur = src
            while cur in self.rules:
                cur = self.rules[cur]
                if cur in seen:
                    raise ValueError("rewrite cycle through %r" % src)
                seen.add(cur)

    @classmethod
    def from_json(cls, data):
        return cls([(item["from"], item["to"]) for item in data])

    def apply(self, label):
        while label in self.rules:
            label = self.rules[label]
        return label

    def apply_gen(self, gen):
        base, extra = parse_composite(self.apply(gen.source))
        return BurnGen(base, gen.affine + extra, self.apply(gen.target),
                       gen.dim)

    def apply_elem(self, elem):
        out = {}
        for g, c in elem.terms.items():
            h = self.apply_gen(g)
            out[h] = out.get(h, 0) + c
        return BurnElem(out)


def pushforward(elem, relabel, rules=None):
    """Compose every generator with a map given by target relabeling.

    The relabeling must cover every target in the class; source labels
    are then normalized through the rewrite rules and like generators
    merge.
    """
    out = {}
    for g, c in elem.terms.items():
        if g.target not in relabel:
            raise ValueError("target label %r is not mapped" % g.target)
        h = BurnGen(g.source, g.affine, relabel[g.target], g.dim)
        out[h] = out.get(h, 0) + c
    res = BurnElem(out)
    if rules is not None:
        res = rules.apply_elem(res)
    return res


class CyclicAction:
    """Cyclic group action on labels: a permutation with pi**level == id."""

    def __init__(self, level, perm):
        if not isinstance(level, int) or level < 1:
            raise ValueError("level must be a positive integer")
        if set(perm.keys()) != set(perm.values()):
            raise ValueError("label map is not a permutation")
        self.level = level
        self.perm = dict(perm)
        if self._power(level) != {x: x for x in perm}:
            raise ValueError("permutation order does not divide the level")

    def __eq__(self, other):
        if not isinstance(other, CyclicAction):
            return NotImplemented
        return self.level == other.level and self.perm == other.perm

    def __repr__(self):
        return "CyclicAction(level=%d, size=%d)" % (self.level, len(self.perm))

    def _power(self, n):
        cur = {x: x for x in self.perm}
        for _ in range(n):
            cur = {x: self.perm[y] for x, y in cur.items()}
        return cur

    def order(self):
        cur = dict(self.perm)
        n = 1
        while any(cur[x] != x for x in cur):
            cur = {x: self.perm[y] for x, y in cur.items()}
            n += 1
        return n

    def twist(self, n):
        """The same level acting through the n-th power."""
        if not isinstance(n, int) or n < 1:
            raise ValueError("twist exponent must be a positive integer")
        return CyclicAction(self.level, self._power(n))

    def versch(self, n):
        """Cycle n labeled copies, applying the action once per round trip.

        Copies are labeled x@0 .. x@n-1; the copy index advances and the
        underlying action fires on wraparound, so the level multiplies
        by n.  One copy changes nothing.
        """
        if not isinstance(n, int) or n < 1:
            raise ValueError("copy count must be a positive integer")
        if n == 1:
            return CyclicAction(self.level, self.perm)
        perm = {}
        for x in self.perm:
            for i in range(n - 1):
                perm["%s@%d" % (x, i)] = "%s@%d" % (x, i + 1)
            perm["%s@%d" % (x, n - 1)] = "%s@0" % self.perm[x]
        return CyclicAction(self.level * n, perm)

    def act(self, elem):
        """Relabel sources and targets of a boundary class."""
        out = {}
        for g, c in elem.terms.items():
            h = BurnGen(self.perm.get(g.source, g.source), g.affine,
                        self.perm.get(g.target, g.target), g.dim)
            out[h] = out.get(h, 0) + c
        return BurnElem(out)


@dataclass
class TowerResult:
    ok: bool
    transported: BurnElem
    expected: BurnElem
    unmapped: list = field(default_factory=list)

    def to_json(self):
        return {"ok": self.ok, "transported": self.transported.to_json(),
                "expected": self.expected.to_json(),
                "unmapped": list(self.unmapped)}


def tower_boundary_check(model_xy, model_yz, edge_map, rules=None):
    """Compare the transported boundary of the big model with the small one.

    The small model must sit one dimension below the big one.  Each
    boundary generator of the big model is sent through the declared edge
    map (composite label to replacement class, None meaning it dies); the
    signed sum of images must equal the boundary class of the small
    model, after rewriting both sides.  Composites the edge map does not
    mention are reported and fail the check.
    """
    if model_yz.dim != model_xy.dim - 1:
        raise ValueError("tower steps must drop dimension by one")
    big = boundary_snc(model_xy)
    if rules is not None:
        big = rules.apply_elem(big)
    transported = BurnElem.zero()
    unmapped = []
    for g, c in big.items():
        if g.composite not in edge_map:
            unmapped.append(g.composite)
            continue
        image = edge_map[g.composite]
        if image is None:
            continue
        if isinstance(image, BurnGen):
            image = BurnElem.of(image)
        transported = transported + image.scale(c)
    expected = boundary_snc(model_yz)
    if rules is not None:
        transported = rules.apply_elem(transported)
        expected = rules.apply_elem(expected)
    ok = not unmapped and transported == expected
    return TowerResult(ok, transported, expected, unmapped)
