"""Index diagrams for pair sequences and finite category presentations.

The diagram side builds the index category of a collection of closed
pairs: one vertex per pair and integer degree (plus a weight coordinate
in the equivariant variant), with edges for functoriality, connecting
boundary maps, and the degree-two weight-one twist.  The category side
takes a finite presentation (objects, named morphisms, a partial
composition table, designated identities) and checks the
poset-in-groupoids shape: morphisms within an isomorphism class are
invertible, and the morphisms between two non-isomorphic objects form a
single orbit under pre- and post-composition with endomorphisms.
Collapsing the classes yields a finite order whose edges are flagged as
decomposable or not.
"""

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Edge:
    src: tuple
    dst: tuple
    kind: str

    def to_json(self):
        return {"src": list(self.src), "dst": list(self.dst),
                "kind": self.kind}


class Diagram:
    def __init__(self):
        self.vertices = set()
        self.edges = set()

    def add_vertex(self, v):
        self.vertices.add(tuple(v))

    def add_edge(self, src, dst, kind):
        src, dst = tuple(src), tuple(dst)
        self.vertices.add(src)
        self.vertices.add(dst)
        self.edges.add(Edge(src, dst, kind))

    def vertex_count(self):
        return len(self.vertices)

    def edge_count(self):
        return len(self.edges)

    def edges_of_kind(self, kind):
        return sorted(e for e in self.edges if e.kind == kind)

    def sorted_vertices(self):
        return sorted(self.vertices)

    def to_json(self):
        return {"vertices": [list(v) for v in self.sorted_vertices()],
                "edges": [e.to_json() for e in sorted(self.edges)]}

    def export_dot(self):
        if not self.vertices and not self.edges:
            return "digraph { }"
        lines = ["digraph {"]
        for v in self.sorted_vertices():
            lines.append('  "%s";' % _vname(v))
        for e in sorted(self.edges):
            lines.append('  "%s" -> "%s" [label="%s"];'
                         % (_vname(e.src), _vname(e.dst), e.kind))
        lines.append("}")
        return "\n".join(lines)


def _vname(v):
    return ",".join(str(p) for p in v)


def _collect_pairs(data):
    known = set(data["varieties"]) if "varieties" in data else None

    def check(label):
        if known is not None and label not in known:
            raise ValueError("undeclared variety label %r" % label)

    pairs = []

    def add(p):
        p = tuple(p)
        if len(p) != 2:
            raise ValueError("a pair has exactly two labels")
        for lab in p:
            check(lab)
        if p not in pairs:
            pairs.append(p)

    for p in data.get("pairs", []):
        add(p)
    for lad in data.get("ladders", []):
        if len(lad) != 3:
            raise ValueError("a ladder has exactly three labels")
        add(lad[:2])
        add(lad[1:])
    for mor in data.get("morphisms", []):
        add(mor["from"])
        add(mor["to"])
    for tw in data.get("twists", []):
        add(tw)
    if not pairs:
        raise ValueError("no pairs given")
    return pairs


def build_pairs_diagram(data):
    """Vertices (pair, degree); functoriality and boundary edges.

    A morphism of pairs contributes edges raising the degree by the
    configured shift (default one, zero supported).  A ladder of three
    nested labels contributes the connecting edge from the lower pair in
    degree i to the upper pair in degree i + 1.
    """
    pairs = _collect_pairs(data)
    i_range = sorted(int(i) for i in data.get("i_range", [0]))
    shift = int(data.get("fstar_shift", 1))
    if shift not in (0, 1):
        raise ValueError("degree shift must be 0 or 1")
    irange = set(i_range)
    dia = Diagram()
    for (x, y) in pairs:
        for i in i_range:
            dia.add_vertex((x, y, i))
    for mor in data.get("morphisms", []):
        x, y = mor["from"]
        x2, y2 = mor["to"]
        for i in i_range:
            if i + shift in irange:
                dia.add_edge((x, y, i), (x2, y2, i + shift), "fstar")
    for lad in data.get("ladders", []):
        x, y, z = lad
        for i in i_range:
            if i + 1 in irange:
                dia.add_edge((y, z, i), (x, y, i + 1), "boundary")
    return dia


def build_equivariant_diagram(data):
    """Weighted variant: vertices (pair, degree, weight).

    Morphisms act contravariantly (an edge from the image pair back to
    the source, same degree and weight); ladders contribute boundary
    edges raising the degree; each declared twist adds one synthesized
    product vertex per grid point, two degrees and one weight up.
    """
    pairs = _collect_pairs(data)
    i_range = sorted(int(i) for i in data.get("i_range", [0]))
    w_range = sorted(int(w) for w in data.get("w_range", [0]))
    irange = set(i_range)
    dia = Diagram()
    for (x, y) in pairs:
        for i in i_range:
            for w in w_range:
                dia.add_vertex((x, y, i, w))
    for mor in data.get("morphisms", []):
        x, y = mor["from"]
        x2, y2 = mor["to"]
        for i in i_range:
            for w in w_range:
                dia.add_edge((x2, y2, i, w), (x, y, i, w), "pullback")
    for lad in data.get("ladders", []):
        x, y, z = lad
        for i in i_range:
            if i + 1 in irange:
                for w in w_range:
                    dia.add_edge((y, z, i, w), (x, y, i + 1, w), "boundary")
    for tw in data.get("twists", []):
        x, y = tw
        for i in i_range:
            for w in w_range:
                tx = "%s x P1" % x
                ty = "%s x P1 + %s x 0" % (y, x)
                dia.add_edge((x, y, i, w), (tx, ty, i + 2, w + 1), "twist")
    return dia


@dataclass(frozen=True)
class Morphism:
    name: str
    src: str
    dst: str
    invertible: bool = False


class CatPresentation:
    """Finite category presentation with a partial composition table.

    Every object designates an identity; the table is validated for
    typing, unit behavior, and associativity wherever all the needed
    composites are declared.
    """

    def __init__(self, objects, morphisms, compose, identities):
        self.objects = list(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object names must be distinct")
        self.morphisms = {}
        for m in morphisms:
            if m.name in self.morphisms:
                raise ValueError("two morphisms named %r" % m.name)
            if m.src not in self.objects or m.dst not in self.objects:
                raise ValueError("morphism %r endpoints unknown" % m.name)
            self.morphisms[m.name] = m
        self.identities = dict(identities)
        for obj in self.objects:
            name = self.identities.get(obj)
            m = self.morphisms.get(name) if name else None
            if m is None or m.src != obj or m.dst != obj or not m.invertible:
                raise ValueError("object %r lacks a designated identity"
                                 % obj)
        self.compose = {}
        for f, g, h in compose:
            for name in (f, g, h):
                if name not in self.morphisms:
                    raise ValueError("unknown morphism %r in composition"
                                     % name)
            mf, mg, mh = (self.morphisms[n] for n in (f, g, h))
            if mf.dst != mg.src:
                raise ValueError("composition %s then %s undefined" % (f, g))
            if (mh.src, mh.dst) != (mf.src, mg.dst):
                raise ValueError("composite %s has wrong endpoints" % h)
            if (f, g) in self.compose and self.compose[(f, g)] != h:
                raise ValueError("conflicting composites for (%s, %s)"
                                 % (f, g))
            self.compose[(f, g)] = h
        for name, m in self.morphisms.items():
            for key, want in (((self.identities[m.src], name), name),
                              ((name, self.identities[m.dst]), name)):
                if self.compose.get(key, want) != want:
                    raise ValueError("identity composite for %r is wrong"
                                     % name)
                self.compose[key] = want
        for (f, g), u in list(self.compose.items()):
            for (g2, h), v in list(self.compose.items()):
                if g2 != g:
                    continue
                left = self.compose.get((u, h))
                right = self.compose.get((f, v))
                if left is not None and right is not None and left != right:
                    raise ValueError(
                        "associativity breaks on (%s, %s, %s)" % (f, g, h))

    @classmethod
    def from_json(cls, data):
        morphisms = [Morphism(m["name"], m["src"], m["dst"],
                              bool(m.get("iso", False)))
                     for m in data["morphisms"]]
        return cls(data["objects"], morphisms,
                   [tuple(t) for t in data.get("compose", [])],
                   data.get("identities", {}))

    def hom(self, src_obj, dst_obj):
        return sorted(m.name for m in self.morphisms.values()
                      if m.src == src_obj and m.dst == dst_obj)

    def endos(self, obj):
        return self.hom(obj, obj)

    def iso_classes(self):
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in self.morphisms.values():
            if m.invertible:
                a, b = find(m.src), find(m.dst)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        classes = {}
        for x in self.objects:
            classes.setdefault(find(x), []).append(x)
        return [sorted(v) for _, v in sorted(classes.items())]


@dataclass
class PosetCheckResult:
    ok: bool
    classes: list
    not_invertible: list
    orbit_witnesses: list
    thin: bool

    def to_json(self):
        return {"ok": self.ok, "classes": self.classes,
                "not_invertible": self.not_invertible,
                "orbit_witnesses": [list(w) for w in self.orbit_witnesses],
                "thin": self.thin}


def check_poset_in_groupoids(cat):
    """Isomorphism-class shape check for a finite presentation.

    Two conditions: every morphism between objects of one class is
    invertible, and for each ordered pair of non-isomorphic objects with
    morphisms between them, pre- and post-composition with endomorphisms
    (through the declared table) acts transitively on them.  Thinness is
    reported but not required.
    """
    classes = cat.iso_classes()
    of = {}
    for idx, cls_objs in enumerate(classes):
        for x in cls_objs:
            of[x] = idx
    not_invertible = sorted(
        m.name for m in cat.morphisms.values()
        if of[m.src] == of[m.dst] and not m.invertible)
    orbit_witnesses = []
    for x in cat.objects:
        for y in cat.objects:
            if of[x] == of[y]:
                continue
            hom = cat.hom(x, y)
            if len(hom) < 2:
                continue
            ends_x, ends_y = cat.endos(x), cat.endos(y)
            orbit = {hom[0]}
            frontier = [hom[0]]
            while frontier:
                f = frontier.pop()
                moved = [cat.compose.get((e, f)) for e in ends_x]
                moved += [cat.compose.get((f, e)) for e in ends_y]
                for g in moved:
                    if g is not None and g not in orbit:
                        orbit.add(g)
                        frontier.append(g)
            for g in hom:
                if g not in orbit:
                    orbit_witnesses.append((hom[0], g))
                    break
    thin = all(len(cat.hom(x, y)) <= 1
               for x in cat.objects for y in cat.objects)
    ok = not not_invertible and not orbit_witnesses
    return PosetCheckResult(ok, classes, not_invertible,
                            orbit_witnesses, thin)


@dataclass
class QuotientResult:
    classes: list
    edges: list
    longest_paths: dict
    top_classes: list
    unique_top: bool
    has_cycle: bool

    def to_json(self):
        return {"classes": self.classes, "edges": self.edges,
                "longest_paths": self.longest_paths,
                "top_classes": self.top_classes,
                "unique_top": self.unique_top,
                "has_cycle": self.has_cycle}

    def to_diagram(self):
        dia = Diagram()
        for c in self.classes:
            dia.add_vertex((c[0],))
        for e in self.edges:
            dia.add_edge((e["src"],), (e["dst"],), "orbit")
        return dia


def quotient_T(cat):
    """Collapse isomorphism classes to a finite directed order.

    Edges join distinct classes carrying at least one morphism; an edge
    is decomposable when it factors through a third class along quotient
    edges.  Longest downward paths are computed and the top verdict holds
    when exactly one class starts a maximal-length path.
    """
    classes = cat.iso_classes()
    reps = [c[0] for c in classes]
    of = {}
    for idx, cls_objs in enumerate(classes):
        for x in cls_objs:
            of[x] = idx
    arrows = set()
    for m in cat.morphisms.values():
        a, b = of[m.src], of[m.dst]
        if a != b:
            arrows.add((a, b))
    edges = []
    for (a, b) in sorted(arrows):
        via = [reps[c] for c in range(len(classes))
               if c not in (a, b) and (a, c) in arrows and (c, b) in arrows]
        edges.append({"src": reps[a], "dst": reps[b],
                      "decomposable": bool(via), "via": via})
    # longest downward path out of each class, DAG only
    order = []
    state = {}
    has_cycle = False

    def visit(u):
        nonlocal has_cycle
        state[u] = 1
        for (a, b) in arrows:
            if a == u:
                if state.get(b) == 1:
                    has_cycle = True
                elif b not in state:
                    visit(b)
        state[u] = 2
        order.append(u)

    for u in range(len(classes)):
        if u not in state:
            visit(u)
    longest = {u: 0 for u in range(len(classes))}
    if not has_cycle:
        for u in order:
            for (a, b) in arrows:
                if a == u:
                    longest[u] = max(longest[u], 1 + longest[b])
    peak = max(longest.values(), default=0)
    tops = sorted(reps[u] for u in longest if longest[u] == peak)
    return QuotientResult([list(c) for c in classes], edges,
                          {reps[u]: longest[u] for u in longest},
                          tops, len(tops) == 1, has_cycle)
