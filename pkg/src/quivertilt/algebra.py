"""Finite-dimensional path algebras KQ/I.

A quiver plus admissible relations is turned into a concrete algebra: a
basis of residue paths (including the vertex idempotents), structure
constants for all basis products, and the standard modules P_v, I_v, S_v.

Path composition is written LEFT-TO-RIGHT throughout: ``p * q`` means
"traverse p, then q", so a relation ``a*b`` kills the walk along arrow a
followed by arrow b.  Fixture files record this convention; it is the one
under which the worked two-vertex cycle algebra has its projective at
vertex 2 uniserial of length three with simple socle at vertex 2.
"""

from dataclasses import dataclass, field as _dc_field
from fractions import Fraction

from .errors import BoundExceeded, ConsistencyError, InputError
from .linalg import FieldSpec, Matrix

# A path is (source_vertex, tuple_of_arrow_names).  Trivial paths have an
# empty arrow tuple.


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        if set(names) & set(self.vertices):
            raise InputError("arrow names must differ from vertex names")
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise InputError(f"arrow {name}: endpoint not a declared vertex")

    def arrow_map(self) -> dict:
        return {a[0]: (a[1], a[2]) for a in self.arrows}


@dataclass(frozen=True)
class RelationPoly:
    """Linear combination of parallel paths of length >= 2, composable
    left-to-right."""

    terms: tuple  # of (coefficient, tuple_of_arrow_names)

    def validate(self, quiver: Quiver, fld: FieldSpec):
        if not self.terms:
            raise InputError("empty relation")
        amap = quiver.arrow_map()
        ends = set()
        for coeff, word in self.terms:
            if len(word) < 2:
                raise InputError(f"relation term {word} has length < 2 (not admissible)")
            prev_t = None
            for a in word:
                if a not in amap:
                    raise InputError(f"unknown arrow {a!r} in relation")
                s, t = amap[a]
                if prev_t is not None and prev_t != s:
                    raise InputError(f"non-composable word {word}")
                prev_t = t
            ends.add((amap[word[0]][0], amap[word[-1]][1]))
        if len(ends) != 1:
            raise InputError("relation terms are not parallel")


def _path_key(arrow_index: dict, src_index: dict, path):
    src, word = path
    return (len(word), tuple(arrow_index[a] for a in word), src_index[src])


class _Eliminator:
    """Echelonized span of two-sided ideal instances in path coordinates.

    Vectors are dicts path -> coefficient.  The order is length-graded
    (longer paths are leading), then lexicographic on arrow indices.  Rules
    are normalized to leading coefficient one and indexed by leading path.
    """

    def __init__(self, fld: FieldSpec, keyfn):
        self.fld = fld
        self.key = keyfn
        self.rules = {}

    def reduce(self, vec: dict) -> dict:
        fld = self.fld
        out = {}
        work = dict(vec)
        while work:
            p = max(work, key=self.key)
            c = work.pop(p)
            if not c:
                continue
            rule = self.rules.get(p)
            if rule is None:
                out[p] = c
                continue
            for q, d in rule.items():
                if q == p:
                    continue
                nc = fld.sub(work.get(q, fld.zero()), fld.mul(c, d))
                if nc:
                    work[q] = nc
                elif q in work:
                    del work[q]
        return out

    def insert(self, vec: dict) -> bool:
        """Reduce and, if nonzero, add as a new rule.  Returns True if added."""
        red = self.reduce(vec)
        if not red:
            return False
        lead = max(red, key=self.key)
        inv = self.fld.inv(red[lead])
        self.rules[lead] = {p: self.fld.mul(inv, c) for p, c in red.items()}
        return True


PATH_COUNT_CAP = 200_000


def build_algebra(quiver: Quiver, relations, fld: FieldSpec, max_path_len: int = 64) -> "Algebra":
    """Quotient of the path algebra by the two-sided ideal the relations
    generate.

    Basis computation: enumerate paths by increasing length; close the span
    of relation instances under one-arrow extension on both sides, layer by
    layer; stop at the first length whose paths are all reducible.  Raises
    BoundExceeded when nonzero residue paths survive at max_path_len (the
    ideal is then not visibly admissible within the bound).
    """
    relations = tuple(relations)
    for r in relations:
        r.validate(quiver, fld)
    amap = quiver.arrow_map()
    arrow_index = {a[0]: i for i, a in enumerate(quiver.arrows)}
    src_index = {v: i for i, v in enumerate(quiver.vertices)}
    keyfn = lambda p: _path_key(arrow_index, src_index, p)

    def path_target(path):
        src, word = path
        return amap[word[-1]][1] if word else src

    # paths_by_len[l] = list of paths of length l, in deterministic order
    paths_by_len = [[(v, ()) for v in quiver.vertices]]
    total_paths = len(quiver.vertices)

    def extend_layer():
        nonlocal total_paths
        prev = paths_by_len[-1]
        out = []
        for src, word in prev:
            end = path_target((src, word))
            for name, s, t in quiver.arrows:
                if s == end:
                    out.append((src, word + (name,)))
        total_paths += len(out)
        if total_paths > PATH_COUNT_CAP:
            raise BoundExceeded(
                f"path enumeration exceeded {PATH_COUNT_CAP} paths; "
                "algebra not finite-dimensional within bound")
        paths_by_len.append(out)

    elim = _Eliminator(fld, keyfn)

    def rel_vector(rel: RelationPoly) -> dict:
        vec = {}
        for coeff, word in rel.terms:
            src = amap[word[0]][0]
            p = (src, tuple(word))
            c = fld.coerce(coeff)
            vec[p] = fld.add(vec.get(p, fld.zero()), c)
        return {p: c for p, c in vec.items() if c}

    for rel in relations:
        vec = rel_vector(rel)
        if vec:
            elim.insert(vec)
    elim._tagged = set()
    frontier = _fresh_rules(elim)

    def times_arrow(vec: dict, name: str, on_left: bool) -> dict:
        s, t = amap[name]
        out = {}
        for (src, word), c in vec.items():
            if on_left:
                # arrow * path: arrow must end where the path starts
                if t == src:
                    out[(s, (name,) + word)] = c
            else:
                if path_target((src, word)) == s:
                    out[(src, word + (name,))] = c
        return out

    death_len = None

    def layer_dead(length: int) -> bool:
        while len(paths_by_len) <= length:
            extend_layer()
        return all(p in elim.rules for p in paths_by_len[length])

    # Round k makes the rule span cover all instances u*r*w with |u|+|w| <= k.
    # Checking death at length l needs rounds >= l - 2 (relations have terms
    # of length >= 2); building the multiplication table of residues of
    # length < l needs coverage up to length 2(l-1), i.e. rounds 2l - 4.
    for rnd in range(1, 2 * max_path_len + 1):
        for vec in frontier:
            for name in amap:
                for on_left in (True, False):
                    cand = times_arrow(vec, name, on_left)
                    if cand:
                        elim.insert(cand)
        frontier = _fresh_rules(elim)
        if death_len is None:
            for length in range(2, min(rnd + 2, max_path_len) + 1):
                if layer_dead(length):
                    death_len = length
                    break
        if death_len is not None and rnd >= max(1, 2 * death_len - 4):
            break
        if death_len is None and rnd + 2 > max_path_len:
            raise BoundExceeded(
                f"nonzero residue paths survive at length {max_path_len}; "
                "algebra not finite-dimensional within bound")

    if death_len is None:
        raise BoundExceeded(
            f"nonzero residue paths survive at length {max_path_len}; "
            "algebra not finite-dimensional within bound")

    # residue basis: irreducible paths of length < death_len
    basis = []
    for length in range(death_len):
        while len(paths_by_len) <= length:
            extend_layer()
        for p in paths_by_len[length]:
            if p not in elim.rules:
                basis.append(p)
    # safety: no irreducible path may survive between death_len and the
    # window the multiplication table needs
    for length in range(death_len, min(2 * (death_len - 1), max_path_len) + 1):
        while len(paths_by_len) <= length:
            extend_layer()
        for p in paths_by_len[length]:
            if p not in elim.rules:
                raise BoundExceeded(
                    "residue basis did not stabilize at the detected layer; "
                    "relations are too wild for layer elimination")

    return Algebra._from_elimination(quiver, relations, fld, basis, elim, max_path_len)


def _fresh_rules(elim: _Eliminator):
    # rules inserted since the previous call are exactly those not yet tagged
    tagged = getattr(elim, "_tagged", set())
    fresh = [dict(vec) for lead, vec in elim.rules.items() if lead not in tagged]
    elim._tagged = set(elim.rules)
    return fresh


@dataclass(frozen=True)
class Algebra:
    """A finite-dimensional path algebra with relations.

    basis[i] is a residue path (source, word); mult[(i, j)] is the tuple of
    structure constants of basis[i] * basis[j].
    """

    quiver: Quiver
    relations: tuple
    field: FieldSpec
    basis: tuple
    mult: dict
    max_path_len: int = 64
    _caches: dict = _dc_field(default_factory=dict, compare=False, repr=False)

    # -- construction --------------------------------------------------------

    @staticmethod
    def _from_elimination(quiver, relations, fld, basis, elim, max_path_len):
        amap = quiver.arrow_map()
        index = {p: i for i, p in enumerate(basis)}
        dim = len(basis)

        def path_target(path):
            src, word = path
            return amap[word[-1]][1] if word else src

        def concat(p, q):
            if path_target(p) != q[0]:
                return None
            return (p[0], p[1] + q[1])

        mult = {}
        zero = fld.zero()
        for i, p in enumerate(basis):
            for j, q in enumerate(basis):
                pq = concat(p, q)
                row = [zero] * dim
                if pq is not None:
                    red = elim.reduce({pq: fld.one()})
                    for r, c in red.items():
                        if r not in index:
                            raise BoundExceeded(
                                "product reduction escaped the residue basis; "
                                "increase max_path_len")
                        row[index[r]] = c
                mult[(i, j)] = tuple(row)
        alg = Algebra(quiver, relations, fld, tuple(basis), mult, max_path_len)
        alg._verify()
        return alg

    # -- verified invariants ---------------------------------------------------

    def _verify(self):
        fld = self.field
        dim = self.dim
        # orthogonal idempotents summing to 1
        for v in self.quiver.vertices:
            i = self.vertex_idempotent(v)
            row = self.mult[(i, i)]
            expect = tuple(fld.one() if k == i else fld.zero() for k in range(dim))
            if row != expect:
                raise ConsistencyError("vertex idempotent fails e*e = e")
        idems = [self.vertex_idempotent(v) for v in self.quiver.vertices]
        for i in idems:
            for j in idems:
                if i != j and any(self.mult[(i, j)]):
                    raise ConsistencyError("vertex idempotents not orthogonal")
        # associativity on all basis triples
        for i in range(dim):
            for j in range(dim):
                ij = self.mult[(i, j)]
                for k in range(dim):
                    left = self._combo_mult(ij, k, right=True)
                    jk = self.mult[(j, k)]
                    right = self._combo_mult(jk, i, right=False)
                    if left != right:
                        raise ConsistencyError("structure constants are not associative")
        # relations evaluate to zero
        for rel in self.relations:
            acc = [fld.zero()] * dim
            for coeff, word in rel.terms:
                vec = self.path_in_basis(word)
                c = fld.coerce(coeff)
                acc = [fld.add(a, fld.mul(c, x)) for a, x in zip(acc, vec)]
            if any(acc):
                raise ConsistencyError("relation does not vanish in the quotient")

    def _combo_mult(self, combo, k, right: bool):
        """combo * basis[k] if right else basis[k] * combo, as coefficient tuple."""
        fld = self.field
        out = [fld.zero()] * self.dim
        for idx, c in enumerate(combo):
            if not c:
                continue
            row = self.mult[(idx, k)] if right else self.mult[(k, idx)]
            for t, d in enumerate(row):
                if d:
                    out[t] = fld.add(out[t], fld.mul(c, d))
        return tuple(out)

    # -- basic queries --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self):
        return self.quiver.vertices

    def vertex_index(self, v) -> int:
        cache = self._caches.setdefault("vidx", {v_: i for i, v_ in enumerate(self.quiver.vertices)})
        if v not in cache:
            raise InputError(f"unknown vertex {v!r}")
        return cache[v]

    def vertex_idempotent(self, v) -> int:
        """Basis index of e_v."""
        cache = self._caches.get("idem")
        if cache is None:
            cache = {}
            for i, (src, word) in enumerate(self.basis):
                if not word:
                    cache[src] = i
            self._caches["idem"] = cache
        if v not in cache:
            raise InputError(f"unknown vertex {v!r}")
        return cache[v]

    def arrow_endpoints(self, name):
        amap = self._caches.setdefault("amap", self.quiver.arrow_map())
        if name not in amap:
            raise InputError(f"unknown arrow {name!r}")
        return amap[name]

    def path_source(self, i: int):
        return self.basis[i][0]

    def path_target(self, i: int):
        src, word = self.basis[i]
        return self.arrow_endpoints(word[-1])[1] if word else src

    def basis_index(self, path) -> int:
        cache = self._caches.setdefault("bidx", {p: i for i, p in enumerate(self.basis)})
        return cache[path]

    def path_in_basis(self, word) -> tuple:
        """Coefficient tuple of the residue class of an arrow word (length >= 1)."""
        fld = self.field
        amap = self.quiver.arrow_map()
        src = amap[word[0]][0]
        vec = [fld.zero()] * self.dim
        vec[self.vertex_idempotent(src)] = fld.one()
        for a in word:
            nxt = [fld.zero()] * self.dim
            ai = self.basis_index_of_arrow(a)
            for i, c in enumerate(vec):
                if not c:
                    continue
                row = self.mult[(i, ai)]
                for t, d in enumerate(row):
                    if d:
                        nxt[t] = fld.add(nxt[t], fld.mul(c, d))
            vec = nxt
        return tuple(vec)

    def basis_index_of_arrow(self, name) -> int:
        cache = self._caches.get("aidx")
        if cache is None:
            cache = {}
            for i, (src, word) in enumerate(self.basis):
                if len(word) == 1:
                    cache[word[0]] = i
            self._caches["aidx"] = cache
        if name not in cache:
            # the arrow itself lies in the ideal (possible with non-monomial
            # relations? admissibility forbids it, but keep a clear error)
            raise InputError(f"arrow {name!r} is not a residue basis element")
        return cache[name]

    def multiply(self, u: tuple, w: tuple) -> tuple:
        """Product of two coefficient tuples."""
        fld = self.field
        out = [fld.zero()] * self.dim
        for i, c in enumerate(u):
            if not c:
                continue
            for j, d in enumerate(w):
                if not d:
                    continue
                cd = fld.mul(c, d)
                row = self.mult[(i, j)]
                for t, e in enumerate(row):
                    if e:
                        out[t] = fld.add(out[t], fld.mul(cd, e))
        return tuple(out)

    def unit(self) -> tuple:
        fld = self.field
        vec = [fld.zero()] * self.dim
        for v in self.vertices:
            vec[self.vertex_idempotent(v)] = fld.one()
        return tuple(vec)

    # -- derived data: paths grouped by endpoints ------------------------------

    def paths_from(self, v) -> tuple:
        """Basis indices of paths starting at v, in basis order."""
        key = ("from", v)
        if key not in self._caches:
            self.vertex_index(v)
            self._caches[key] = tuple(i for i in range(self.dim) if self.path_source(i) == v)
        return self._caches[key]

    def paths_to(self, v) -> tuple:
        key = ("to", v)
        if key not in self._caches:
            self.vertex_index(v)
            self._caches[key] = tuple(i for i in range(self.dim) if self.path_target(i) == v)
        return self._caches[key]

    def __repr__(self):
        return (f"Algebra(dim={self.dim}, vertices={list(self.vertices)}, "
                f"arrows={[a[0] for a in self.quiver.arrows]}, field={self.field})")


# -- the standard modules -----------------------------------------------------


def projective(alg: Algebra, v) -> "Representation":
    """P_v = e_v * A as a representation: basis paths starting at v."""
    from .modules import Representation
    idxs = alg.paths_from(v)
    return _module_from_paths(alg, idxs, dual=False)


def injective(alg: Algebra, v) -> "Representation":
    """I_v = dual of A * e_v, with transposed action."""
    idxs = alg.paths_to(v)
    return _module_from_paths(alg, idxs, dual=True)


def simple(alg: Algebra, v) -> "Representation":
    from .modules import Representation
    alg.vertex_index(v)
    dims = {w: (1 if w == v else 0) for w in alg.vertices}
    mats = {}
    for name, s, t in alg.quiver.arrows:
        mats[name] = Matrix.zeros(alg.field, dims[s], dims[t])
    return Representation(alg, dims, mats)


def zero_module(alg: Algebra) -> "Representation":
    from .modules import Representation
    dims = {w: 0 for w in alg.vertices}
    mats = {name: Matrix.zeros(alg.field, 0, 0) for name, _, _ in alg.quiver.arrows}
    return Representation(alg, dims, mats)


def regular_module(alg: Algebra) -> "Representation":
    """The algebra as a right module over itself, ⊕_v P_v in vertex order."""
    from .modules import direct_sum
    return direct_sum([projective(alg, v) for v in alg.vertices])


def _module_from_paths(alg: Algebra, idxs, dual: bool):
    """Right module on the span of the given basis paths (must be closed
    under right multiplication for dual=False, left multiplication for
    dual=True)."""
    from .modules import Representation
    fld = alg.field
    if not dual:
        by_vertex = {v: [i for i in idxs if alg.path_target(i) == v] for v in alg.vertices}
    else:
        by_vertex = {v: [i for i in idxs if alg.path_source(i) == v] for v in alg.vertices}
    pos = {v: {i: k for k, i in enumerate(by_vertex[v])} for v in alg.vertices}
    dims = {v: len(by_vertex[v]) for v in alg.vertices}
    mats = {}
    for name, s, t in alg.quiver.arrows:
        if not dual:
            # right multiplication by the arrow: paths ending at s -> ending at t
            ai = None
            try:
                ai = alg.basis_index_of_arrow(name)
            except InputError:
                ai = None
            rows = []
            for i in by_vertex[s]:
                row = [fld.zero()] * dims[t]
                if ai is not None:
                    prod = alg.mult[(i, ai)]
                    for k, c in enumerate(prod):
                        if c:
                            row[pos[t][k]] = c
                rows.append(tuple(row))
            mats[name] = Matrix(fld, dims[s], dims[t], tuple(rows))
        else:
            # dual of left multiplication: transpose of (paths ending here:
            # left-multiply by arrow maps paths from t ... ) For I_v the
            # matrix at arrow (s -> t) sends the dual basis at s to the dual
            # basis at t via the transpose of a * (-) : span(paths t -> v) ->
            # span(paths s -> v).
            ai = None
            try:
                ai = alg.basis_index_of_arrow(name)
            except InputError:
                ai = None
            # left mult matrix L: rows indexed by paths starting at t,
            # columns by paths starting at s (a * p starts at s)
            rows = []
            for i in by_vertex[t]:
                row = [fld.zero()] * dims[s]
                if ai is not None:
                    prod = alg.mult[(ai, i)]
                    for k, c in enumerate(prod):
                        if c:
                            row[pos[s][k]] = c
                rows.append(tuple(row))
            L = Matrix(fld, dims[t], dims[s], tuple(rows))
            mats[name] = L.transpose()
    return Representation(alg, dims, mats)


def opposite_algebra(alg: Algebra) -> Algebra:
    """Arrows reversed, relation words reversed; basis paths are the
    reverses of the original basis paths and the multiplication table is the
    transpose of the original one."""
    q = alg.quiver
    amap = q.arrow_map()
    op_q = Quiver(q.vertices, tuple((name, t, s) for name, s, t in q.arrows))
    op_rels = tuple(RelationPoly(tuple((c, tuple(reversed(word))) for c, word in r.terms))
                    for r in alg.relations)

    def rev_path(p):
        src, word = p
        if not word:
            return p
        end = amap[word[-1]][1]
        return (end, tuple(reversed(word)))

    basis = tuple(rev_path(p) for p in alg.basis)
    mult = {}
    for (i, j), row in alg.mult.items():
        mult[(j, i)] = row
    op = Algebra(op_q, op_rels, alg.field, basis, mult, alg.max_path_len)
    op._verify()
    return op
