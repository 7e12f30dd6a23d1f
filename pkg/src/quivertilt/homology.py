"""Projective covers, minimal resolutions, Ext and Tor, extension
realization, universal extensions and left add-approximations.

Resolutions are built from tagged projective sums: a term knows the list of
vertices its generators sit at, which makes Hom out of it free data (a map
from ⊕P_v is determined by arbitrary images of the generators).  Ext is
computed from a resolution of the first argument only.
"""

from dataclasses import dataclass, field as _dc_field

from .algebra import Algebra, zero_module
from .errors import BoundExceeded, ConsistencyError, InputError
from .linalg import Matrix, quotient_basis, rank, row_space, solve_linear_system, solve_right_kernel
from .modules import (HomSpace, ModuleMap, Representation, _flatten_map,
                      decompose, direct_sum_with_maps, hom_space, identity_map,
                      image, quotient, submodule_from_rows, top, zero_map)

DEFAULT_RESOLUTION_BOUND = 32


# -- tagged projective sums ------------------------------------------------------


@dataclass(frozen=True)
class ProjSum:
    """⊕_j P_{gens[j]} with a deterministic basis layout.

    The basis of the underlying representation at vertex w is the list of
    pairs (j, path) over generators j and basis paths gens[j] -> w, in
    generator-major order.
    """

    algebra: Algebra
    gens: tuple
    rep: Representation
    layout: dict    # vertex -> tuple of (generator index, algebra basis index)
    gen_pos: tuple  # generator j -> (vertex, row index at that vertex)

    @property
    def rank(self) -> int:
        return len(self.gens)

    def hom_dim(self, n: Representation) -> int:
        return sum(n.dims[v] for v in self.gens)

    def hom_offsets(self, n: Representation):
        off, acc = [], 0
        for v in self.gens:
            off.append(acc)
            acc += n.dims[v]
        return off


def proj_sum(alg: Algebra, gens) -> ProjSum:
    gens = tuple(gens)
    fld = alg.field
    layout = {}
    for w in alg.vertices:
        entries = []
        for j, v in enumerate(gens):
            for i in alg.paths_from(v):
                if alg.path_target(i) == w:
                    entries.append((j, i))
        layout[w] = tuple(entries)
    pos = {e: k for w in alg.vertices for k, e in enumerate(layout[w])}
    dims = {w: len(layout[w]) for w in alg.vertices}
    mats = {}
    for name, s, t in alg.quiver.arrows:
        ai = alg.basis_index_of_arrow(name)
        rows = []
        for (j, i) in layout[s]:
            row = [fld.zero()] * dims[t]
            for k, c in enumerate(alg.mult[(i, ai)]):
                if c:
                    row[pos[(j, k)]] = c
            rows.append(tuple(row))
        mats[name] = Matrix(fld, dims[s], dims[t], tuple(rows))
    rep = Representation(alg, dims, mats)
    gen_pos = []
    for j, v in enumerate(gens):
        idem = alg.vertex_idempotent(v)
        gen_pos.append((v, pos[(j, idem)]))
    return ProjSum(alg, gens, rep, layout, tuple(gen_pos))


def hom_from_gens(psum: ProjSum, n: Representation, images) -> ModuleMap:
    """Module map ⊕P_{v_j} -> n with prescribed generator images (row
    vectors of length n.dims[v_j])."""
    alg = psum.algebra
    fld = alg.field
    img_rows = [Matrix(fld, 1, n.dims[v], (tuple(img),))
                for (v, img) in zip(psum.gens, images)]
    mats = {}
    for w in alg.vertices:
        rows = []
        for (j, i) in psum.layout[w]:
            act = n.basis_action(i)  # n.dims[gens[j]] x n.dims[w]
            rows.append(img_rows[j].mul(act).entries[0])
        mats[w] = Matrix(fld, len(rows), n.dims[w], tuple(rows))
    return ModuleMap(psum.rep, n, mats)


def gen_coords(psum: ProjSum, f: ModuleMap) -> tuple:
    """Generator-image coordinates of a map out of a projective sum; the
    inverse of hom_from_gens."""
    out = []
    for (v, row_idx) in psum.gen_pos:
        out.extend(f.mats[v].entries[row_idx])
    return tuple(out)


def hom_basis_maps(psum: ProjSum, n: Representation):
    """Basis of Hom(psum, n) as ModuleMaps, one per generator coordinate."""
    fld = psum.algebra.field
    out = []
    for j, v in enumerate(psum.gens):
        for c in range(n.dims[v]):
            images = [tuple(fld.one() if (jj == j and cc == c) else fld.zero()
                            for cc in range(n.dims[vv]))
                      for jj, vv in enumerate(psum.gens)]
            out.append(hom_from_gens(psum, n, images))
    return out


def psum_direct_sum(parts) -> ProjSum:
    gens = tuple(v for p in parts for v in p.gens)
    return proj_sum(parts[0].algebra, gens)


# -- projective covers and minimal resolutions -----------------------------------


def projective_cover(m: Representation):
    """(P, epi) with P the projective cover of m; the kernel of the epi lies
    in rad P."""
    if m.total_dim == 0:
        raise InputError("projective cover of the zero module")
    alg = m.algebra
    t, proj = top(m)
    gens = []
    images = []
    for v in alg.vertices:
        if t.dims[v] == 0:
            continue
        # lift the top basis at v back into m
        ident = Matrix.identity(alg.field, t.dims[v])
        x, _ = solve_linear_system(proj.mats[v], ident)
        if x is None:
            raise ConsistencyError("top projection is not surjective")
        for r in range(t.dims[v]):
            gens.append(v)
            images.append(x.entries[r])
    psum = proj_sum(alg, gens)
    epi = hom_from_gens(psum, m, images)
    if not epi.is_surjective():
        raise ConsistencyError("projective cover map is not surjective")
    return psum, epi


@dataclass(frozen=True)
class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> m -> 0.

    diffs[k] is d_{k+1}: terms[k+1] -> terms[k]; complete means the kernel
    vanished at the last term, so length = len(terms) - 1 equals proj.dim m.
    """

    module: Representation
    terms: tuple    # of ProjSum
    diffs: tuple    # of ModuleMap
    augment: ModuleMap
    complete: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term(self, k: int) -> ProjSum:
        return self.terms[k] if 0 <= k < len(self.terms) else None


def min_resolution(m: Representation, max_len: int = DEFAULT_RESOLUTION_BOUND,
                   require_finite: bool = True) -> Resolution:
    """Minimal resolution; raises BoundExceeded when require_finite is set
    and the kernel has not vanished after max_len steps."""
    alg = m.algebra
    if m.total_dim == 0:
        empty = proj_sum(alg, ())
        return Resolution(m, (empty,), (), zero_map(empty.rep, m), True)
    terms = []
    diffs = []
    p0, epi = projective_cover(m)
    terms.append(p0)
    augment = epi
    current_epi = epi
    current_term = p0
    for k in range(max_len):
        ker_rows = {v: solve_right_kernel(current_epi.mats[v]) for v in alg.vertices}
        ker_dim = sum(r.rows for r in ker_rows.values())
        if ker_dim == 0:
            return Resolution(m, tuple(terms), tuple(diffs), augment, True)
        ker, ker_incl = submodule_from_rows(current_epi.source, ker_rows)
        _assert_in_radical(current_term, ker_incl)
        pk, cover_epi = projective_cover(ker)
        diffs.append(cover_epi.compose(ker_incl))
        terms.append(pk)
        current_epi = cover_epi
        current_term = pk
    if require_finite:
        raise BoundExceeded(f"resolution exceeds bound {max_len}")
    return Resolution(m, tuple(terms), tuple(diffs), augment, False)


def _assert_in_radical(psum: ProjSum, ker_incl: ModuleMap):
    # minimality: kernel vectors have no component on the generators
    for j, (v, row_idx) in enumerate(psum.gen_pos):
        col = row_idx
        for r in ker_incl.mats[v].entries:
            if r[col]:
                raise ConsistencyError("resolution is not minimal: kernel meets the generators")


def proj_dim(m: Representation, bound: int = DEFAULT_RESOLUTION_BOUND):
    """Length of the minimal resolution, or None when it exceeds the bound."""
    try:
        res = min_resolution(m, bound)
    except BoundExceeded:
        return None
    return res.length


def global_dimension(alg: Algebra, bound: int = DEFAULT_RESOLUTION_BOUND):
    """Max of proj.dim over the simple modules, or None beyond the bound."""
    from .algebra import simple
    worst = 0
    for v in alg.vertices:
        d = proj_dim(simple(alg, v), bound)
        if d is None:
            return None
        worst = max(worst, d)
    return worst


# -- Ext -------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtClass:
    resolution: Resolution
    degree: int
    target: Representation
    cocycle: ModuleMap  # terms[degree] -> target, vanishing on im d_{degree+1}


@dataclass(frozen=True)
class ExtSpace:
    """Ext^k(m, n) with chosen cocycle representatives.

    Coordinates: a cocycle map f: P_k -> n is a generator-coordinate vector;
    class_coords projects it to the chosen basis of cocycles mod
    coboundaries.
    """

    resolution: Resolution
    degree: int
    target: Representation
    dim: int
    classes: tuple  # of ExtClass
    _data: dict = _dc_field(default_factory=dict, compare=False, repr=False)

    def class_coords(self, f: ModuleMap) -> tuple:
        if self.dim == 0:
            return ()
        Z = self._data["Z"]
        proj = self._data["proj"]
        psum = self.resolution.terms[self.degree]
        fld = psum.algebra.field
        c = Matrix(fld, 1, Z.cols, (gen_coords(psum, f),))
        y, _ = solve_linear_system(Z, c)
        if y is None:
            raise ConsistencyError("map is not a cocycle")
        return y.mul(proj).entries[0]


def ext(degree: int, m: Representation, n: Representation,
        bound: int = DEFAULT_RESOLUTION_BOUND, resolution: Resolution | None = None) -> ExtSpace:
    """Ext^degree(m, n) from a minimal resolution of m."""
    if degree < 0:
        raise InputError("ext degree must be >= 0")
    if degree + 1 > bound:
        raise BoundExceeded(f"ext degree {degree} beyond resolution bound {bound}")
    alg = m.algebra
    fld = alg.field
    if resolution is None or (resolution.length < degree + 1 and not resolution.complete):
        resolution = min_resolution(m, degree + 1, require_finite=False)
    res = resolution
    if degree > res.length:
        return ExtSpace(res, degree, n, 0, ())
    pk = res.terms[degree]
    nvars = pk.hom_dim(n)
    if nvars == 0:
        return ExtSpace(res, degree, n, 0, ())
    # rows of the "next" differential action: coords of (d_{degree+1} then f)
    if degree < res.length:
        d_next = res.diffs[degree]
        p_next = res.terms[degree + 1]
        basis_maps = hom_basis_maps(pk, n)
        rows = [gen_coords(p_next, ModuleMap(p_next.rep, n,
                {v: d_next.mats[v].mul(f.mats[v]) for v in alg.vertices}))
                for f in basis_maps]
        M_next = Matrix(fld, nvars, p_next.hom_dim(n), tuple(rows))
        Z = solve_right_kernel(M_next)
    else:
        Z = Matrix.identity(fld, nvars)
    # coboundaries: image of precomposition with d_degree
    if degree >= 1:
        d_prev = res.diffs[degree - 1]
        p_prev = res.terms[degree - 1]
        prev_maps = hom_basis_maps(p_prev, n)
        b_rows = [gen_coords(pk, ModuleMap(pk.rep, n,
                  {v: d_prev.mats[v].mul(f.mats[v]) for v in alg.vertices}))
                  for f in prev_maps]
        B = row_space(Matrix(fld, len(b_rows), nvars, tuple(b_rows)))
    else:
        B = Matrix.zeros(fld, 0, nvars)
    # express B inside Z and take the quotient
    Y, _ = solve_linear_system(Z, B)
    if Y is None:
        raise ConsistencyError("coboundaries escaped the cocycle space")
    section, proj = quotient_basis(Y, Z.rows)
    reps = section.mul(Z)
    classes = []
    for r in range(reps.rows):
        images = _split_gen_vector(pk, n, reps.entries[r])
        cocycle = hom_from_gens(pk, n, images)
        classes.append(ExtClass(res, degree, n, cocycle))
    space = ExtSpace(res, degree, n, reps.rows, tuple(classes))
    space._data["Z"] = Z
    space._data["proj"] = proj
    return space


def _split_gen_vector(psum: ProjSum, n: Representation, flat):
    out = []
    pos = 0
    for v in psum.gens:
        out.append(tuple(flat[pos:pos + n.dims[v]]))
        pos += n.dims[v]
    return out


def ext_dim(degree, m, n, bound=DEFAULT_RESOLUTION_BOUND, resolution=None) -> int:
    return ext(degree, m, n, bound, resolution).dim


# -- Tor -------------------------------------------------------------------------


@dataclass(frozen=True)
class LeftModule:
    """Left module over the algebra: total space with one action matrix per
    algebra basis element.  In row convention the action of basis element u
    on y is y * act[u]; compatibility therefore reads
    act[u * w] = act[w] * act[u]."""

    algebra: Algebra
    dim: int
    act: tuple  # Matrix per basis index

    def __post_init__(self):
        alg = self.algebra
        fld = alg.field
        if len(self.act) != alg.dim:
            raise InputError("left module needs one action matrix per basis element")
        for a in self.act:
            if (a.rows, a.cols) != (self.dim, self.dim):
                raise InputError("left action matrices must be square of the module dimension")
        ident = Matrix.identity(fld, self.dim)
        unit = self._combo(alg.unit())
        if unit != ident:
            raise ConsistencyError("unit does not act as identity on left module")
        for i in range(alg.dim):
            for j in range(alg.dim):
                expect = self._combo(alg.mult[(i, j)])
                got = self.act[j].mul(self.act[i])
                if expect != got:
                    raise ConsistencyError("left action does not respect multiplication")

    def _combo(self, coeffs) -> Matrix:
        fld = self.algebra.field
        out = Matrix.zeros(fld, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c:
                out = out.add(self.act[i].scale(c))
        return out


def left_regular_module(alg: Algebra) -> LeftModule:
    """The algebra as a left module over itself."""
    fld = alg.field
    act = []
    for i in range(alg.dim):
        rows = [alg.mult[(i, p)] for p in range(alg.dim)]
        act.append(Matrix(fld, alg.dim, alg.dim, tuple(rows)))
    return LeftModule(alg, alg.dim, tuple(act))


def left_module_from_op_rep(alg: Algebra, op_rep: Representation) -> LeftModule:
    """Left A-module from a representation of the opposite algebra built by
    opposite_algebra(alg); basis indices of A and A^op are aligned."""
    op_alg = op_rep.algebra
    if op_alg.dim != alg.dim:
        raise InputError("opposite representation has mismatched dimension")
    act = []
    for i in range(alg.dim):
        act.append(_total_action(op_rep, i))
    return LeftModule(alg, op_rep.total_dim, tuple(act))


def _total_action(rep: Representation, i: int) -> Matrix:
    """Total-space matrix of the right action of basis element i."""
    alg = rep.algebra
    fld = alg.field
    off = rep.offsets()
    n = rep.total_dim
    src, tgt = alg.path_source(i), alg.path_target(i)
    act = rep.basis_action(i)
    out = [[fld.zero()] * n for _ in range(n)]
    for r in range(act.rows):
        for c in range(act.cols):
            out[off[src] + r][off[tgt] + c] = act.entries[r][c]
    return Matrix(fld, n, n, tuple(tuple(r) for r in out))


def _tensor_space(x: Representation, y: LeftModule):
    """x ⊗_A y as a quotient of the full K-tensor space; returns
    (dim, section, projection) with matrices over the raw dx*dy space."""
    alg = x.algebra
    fld = alg.field
    dx, dy = x.total_dim, y.dim
    if dx == 0 or dy == 0:
        return 0, Matrix.zeros(fld, 0, dx * dy), Matrix.zeros(fld, dx * dy, 0)
    gens = [alg.vertex_idempotent(v) for v in alg.vertices]
    gens += [alg.basis_index_of_arrow(a[0]) for a in alg.quiver.arrows]
    rows = []
    for g in gens:
        R = _total_action(x, g)
        L = y.act[g]
        for p in range(dx):
            for q in range(dy):
                row = [fld.zero()] * (dx * dy)
                for p2 in range(dx):
                    if R.entries[p][p2]:
                        row[p2 * dy + q] = R.entries[p][p2]
                for q2 in range(dy):
                    if L.entries[q][q2]:
                        row[p * dy + q2] = fld.sub(row[p * dy + q2], L.entries[q][q2])
                if any(row):
                    rows.append(tuple(row))
    if rows:
        sub = row_space(Matrix(fld, len(rows), dx * dy, tuple(rows)))
    else:
        sub = Matrix.zeros(fld, 0, dx * dy)
    section, proj = quotient_basis(sub, dx * dy)
    return section.rows, section, proj


def _tensor_induced(fmat: Matrix, y_dim: int, src_section: Matrix, tgt_proj: Matrix) -> Matrix:
    """Map induced on tensor quotients by f ⊗ id."""
    fld = fmat.field
    dx, dx2 = fmat.rows, fmat.cols
    raw = [[fld.zero()] * (dx2 * y_dim) for _ in range(dx * y_dim)]
    for p in range(dx):
        for p2 in range(dx2):
            c = fmat.entries[p][p2]
            if c:
                for q in range(y_dim):
                    raw[p * y_dim + q][p2 * y_dim + q] = c
    raw_m = Matrix(fld, dx * y_dim, dx2 * y_dim, tuple(tuple(r) for r in raw))
    return src_section.mul(raw_m).mul(tgt_proj)


def tor_dims_range(x: Representation, y: LeftModule, max_degree: int,
                   bound: int = DEFAULT_RESOLUTION_BOUND,
                   resolution: Resolution | None = None):
    """(dim Tor_0, ..., dim Tor_max_degree) from a single resolution pass."""
    if max_degree < 0:
        raise InputError("tor degree must be >= 0")
    res = resolution
    if res is None or (not res.complete and res.length < max_degree + 1):
        res = min_resolution(x, max(max_degree + 1, 1), require_finite=False)
    if not res.complete and res.length < max_degree + 1:
        raise BoundExceeded("resolution bound exceeded while computing Tor")
    top = min(res.length, max_degree + 1)
    spaces = [_tensor_space(res.terms[k].rep, y) for k in range(top + 1)]

    def induced(k):  # map T_k -> T_{k-1}
        fmat = res.diffs[k - 1].total_matrix()
        _, sec_k, _ = spaces[k]
        _, _, proj_prev = spaces[k - 1]
        return _tensor_induced(fmat, y.dim, sec_k, proj_prev)

    ranks = {k: rank(induced(k)) for k in range(1, top + 1)}
    out = []
    for degree in range(0, max_degree + 1):
        if degree > res.length:
            out.append(0)
            continue
        tk = spaces[degree][0]
        ker_dim = tk - ranks[degree] if degree >= 1 else tk
        if degree + 1 <= res.length:
            ker_dim -= ranks[degree + 1]
        out.append(ker_dim)
    return tuple(out)


def tor_dim(degree: int, x: Representation, y: LeftModule,
            bound: int = DEFAULT_RESOLUTION_BOUND) -> int:
    """dim Tor_degree(x, y) via a minimal resolution of x tensored with y."""
    if degree < 0:
        raise InputError("tor degree must be >= 0")
    return tor_dims_range(x, y, degree, bound)[degree]


# -- short exact sequences and extension realization ------------------------------


@dataclass(frozen=True)
class ShortExact:
    """0 -> left -> mid -> right -> 0 with verified exactness."""

    left: Representation
    mid: Representation
    right: Representation
    incl: ModuleMap
    proj: ModuleMap

    def __post_init__(self):
        if not self.incl.is_injective():
            raise ConsistencyError("short exact sequence: inclusion not injective")
        if not self.proj.is_surjective():
            raise ConsistencyError("short exact sequence: projection not surjective")
        if not self.incl.compose(self.proj).is_zero():
            raise ConsistencyError("short exact sequence: composite not zero")
        for v in self.left.algebra.vertices:
            if self.left.dims[v] + self.right.dims[v] != self.mid.dims[v]:
                raise ConsistencyError("short exact sequence: dimensions do not add up")


def realize_extension(c: ExtClass) -> ShortExact:
    """Middle term of a degree-one extension class, as the pushout of the
    syzygy inclusion along the cocycle."""
    if c.degree != 1:
        raise InputError("realize_extension needs a degree-1 class")
    res = c.resolution
    m = res.module
    n = c.target
    alg = m.algebra
    if res.length < 1:
        # projective source: only the split extension exists
        if not c.cocycle.is_zero():
            raise ConsistencyError("nonzero cocycle over a projective module")
    d1 = res.diffs[0] if res.length >= 1 else zero_map(proj_sum(alg, ()).rep, res.terms[0].rep)
    omega, om_incl, om_proj = image(d1)
    # factor the cocycle through omega: cocycle = om_proj then phi
    phi_mats = {}
    for v in alg.vertices:
        x = _left_divide(om_proj.mats[v], c.cocycle.mats[v])
        phi_mats[v] = x
    phi = ModuleMap(omega, n, phi_mats)
    # pushout of (omega -> P0) along phi
    total, incls, projs = direct_sum_with_maps([n, res.terms[0].rep])
    graph = ModuleMap(omega, total,
                      {v: phi.mats[v].neg().hstack(om_incl.mats[v]) for v in alg.vertices})
    gimg, gincl, _ = image(graph)
    e_rep, to_e = quotient(total, gincl)
    incl_n = incls[0].compose(to_e)
    # projection E -> m descends from (0, augment)
    big = ModuleMap(total, m,
                    {v: Matrix.zeros(alg.field, n.dims[v], m.dims[v]).vstack(res.augment.mats[v])
                     for v in alg.vertices})
    proj_mats = {v: _left_divide(to_e.mats[v], big.mats[v]) for v in alg.vertices}
    proj_e = ModuleMap(e_rep, m, proj_mats)
    return ShortExact(n, e_rep, m, incl_n, proj_e)


def _left_divide(a: Matrix, b: Matrix) -> Matrix:
    """Solve a * x = b for x (a has full column-relevant rank on the left)."""
    x, _ = solve_linear_system(a.transpose(), b.transpose())
    if x is None:
        raise ConsistencyError("left division failed")
    return x.transpose()


def connecting_class(ses: ShortExact, space: ExtSpace) -> tuple:
    """Class coordinates of the connecting cocycle of a short exact sequence
    0 -> n -> E -> m -> 0 against Ext^1(m, n) computed from `space`."""
    res = space.resolution
    alg = ses.mid.algebra
    p0 = res.terms[0]
    # lift the augmentation through E
    images = []
    for (v, row_idx) in p0.gen_pos:
        aug_row = Matrix(alg.field, 1, ses.right.dims[v], (res.augment.mats[v].entries[row_idx],))
        x, _ = solve_linear_system(ses.proj.mats[v], aug_row)
        if x is None:
            raise ConsistencyError("augmentation does not lift through the extension")
        images.append(x.entries[0])
    sigma = hom_from_gens(p0, ses.mid, images)
    d1 = res.diffs[0]
    comp = d1.compose(sigma)  # lands in the image of n
    psi_mats = {}
    for v in alg.vertices:
        x, _ = solve_linear_system(ses.incl.mats[v], comp.mats[v])
        if x is None:
            raise ConsistencyError("connecting map does not factor through the kernel")
        psi_mats[v] = x
    psi = ModuleMap(res.terms[1].rep, ses.left, psi_mats)
    return space.class_coords(psi)


# -- universal extensions ----------------------------------------------------------


def _resolution_power(res: Resolution, k: int) -> Resolution:
    """Direct sum of k copies of a resolution (resolving m^k)."""
    alg = res.module.algebra
    msum, _, _ = direct_sum_with_maps([res.module] * k)
    terms = [proj_sum(alg, t.gens * k) for t in res.terms]
    diffs = []
    for i, d in enumerate(res.diffs):
        src_new, tgt_new = terms[i + 1], terms[i]
        images = []
        for copy in range(k):
            for j, (v, row_idx) in enumerate(res.terms[i + 1].gen_pos):
                row = d.mats[v].entries[row_idx]
                # embed into the copy-th block of tgt_new
                images.append(_embed_block(res.terms[i], tgt_new, copy, v, row))
        diffs.append(hom_from_gens(src_new, tgt_new.rep, images))
    aug_images = []
    for copy in range(k):
        for j, (v, row_idx) in enumerate(res.terms[0].gen_pos):
            row = res.augment.mats[v].entries[row_idx]
            aug_images.append(_embed_module_block(res.module, msum, copy, k, v, row))
    augment = hom_from_gens(terms[0], msum, aug_images)
    return Resolution(msum, tuple(terms), tuple(diffs), augment, res.complete)


def _embed_block(tgt_single: ProjSum, tgt_new: ProjSum, copy: int, v, row):
    """Row vector over tgt_single.rep at vertex v, embedded in copy-th block
    of tgt_new (whose gens are tgt_single.gens repeated)."""
    fld = tgt_single.algebra.field
    out = [fld.zero()] * tgt_new.rep.dims[v]
    base = len(tgt_single.gens) * copy
    idx_map = {}
    for pos, (j, i) in enumerate(tgt_new.layout[v]):
        idx_map[(j, i)] = pos
    for pos, (j, i) in enumerate(tgt_single.layout[v]):
        out[idx_map[(j + base, i)]] = row[pos]
    return tuple(out)


def _embed_module_block(single: Representation, total: Representation, copy: int, k: int, v, row):
    fld = single.algebra.field
    out = [fld.zero()] * total.dims[v]
    off = single.dims[v] * copy
    for i, c in enumerate(row):
        out[off + i] = c
    return tuple(out)


def universal_extension(m: Representation, x: Representation, seed: int = 0,
                        bound: int = DEFAULT_RESOLUTION_BOUND):
    """Universal extension 0 -> x -> N -> m^k -> 0 killing Ext^1(m, x).

    k is dim_K Ext^1(m, x) when End(m) is one-dimensional; otherwise a
    greedy End(m)-generating set of Ext^1(m, x) is used.  The defining
    post-condition Ext^1(m, N) = 0 is asserted.
    """
    space = ext(1, m, x, bound)
    if space.dim == 0:
        return x, ShortExact(x, x, zero_module(m.algebra), identity_map(x),
                             zero_map(x, zero_module(m.algebra)))
    end = hom_space(m, m)
    if end.dim == 1:
        gens = list(space.classes)
    else:
        gens = _end_generating_classes(m, space, end)
    k = len(gens)
    res_k = _resolution_power(space.resolution, k)
    p1 = res_k.terms[1]
    # stacked cocycle on P1^k
    images = []
    for copy in range(k):
        for (v, row_idx) in space.resolution.terms[1].gen_pos:
            images.append(gens[copy].cocycle.mats[v].entries[row_idx])
    cocycle = hom_from_gens(p1, x, images)
    cls = ExtClass(res_k, 1, x, cocycle)
    ses = realize_extension(cls)
    n_mod = ses.mid
    check = ext(1, m, n_mod, bound)
    if check.dim != 0:
        raise ConsistencyError("universal extension failed to kill Ext^1(m, -)")
    return n_mod, ses


def _end_generating_classes(m, space, end: HomSpace):
    """Greedy End(m)-generating set of Ext^1(m, x) (acting by precomposition)."""
    res = space.resolution
    alg = m.algebra
    fld = alg.field
    # lift each End basis element phi to phi_1 on P_1
    lifted = []
    for phi in end.basis:
        p0, p1 = res.terms[0], res.terms[1]
        # phi_0 with phi_0 then augment = augment then phi
        images0 = []
        for (v, row_idx) in p0.gen_pos:
            tgt_row = Matrix(fld, 1, m.dims[v],
                             (res.augment.compose(phi).mats[v].entries[row_idx],))
            xx, _ = solve_linear_system(res.augment.mats[v], tgt_row)
            if xx is None:
                raise ConsistencyError("endomorphism lift failed at P0")
            images0.append(xx.entries[0])
        phi0 = hom_from_gens(p0, p0.rep, images0)
        # phi_1 with phi_1 then d1 = d1 then phi_0
        d1 = res.diffs[0]
        images1 = []
        for (v, row_idx) in p1.gen_pos:
            tgt_row = Matrix(fld, 1, p0.rep.dims[v],
                             (d1.compose(phi0).mats[v].entries[row_idx],))
            xx, _ = solve_linear_system(d1.mats[v], tgt_row)
            if xx is None:
                raise ConsistencyError("endomorphism lift failed at P1")
            images1.append(xx.entries[0])
        phi1 = hom_from_gens(p1, p1.rep, images1)
        lifted.append(phi1)

    gens = []
    span = Matrix.zeros(fld, 0, space.dim)

    def in_span(row: Matrix) -> bool:
        if span.rows == 0:
            return row.is_zero()
        sol, _ = solve_linear_system(span, row)
        return sol is not None

    for cls in space.classes:
        coords = Matrix(fld, 1, space.dim, (space.class_coords(cls.cocycle),))
        if in_span(coords):
            continue
        gens.append(cls)
        span = row_space(span.vstack(coords))
        # close the span under the End action by precomposition
        frontier = [cls]
        while frontier:
            nxt = []
            for c in frontier:
                for phi1 in lifted:
                    moved = phi1.compose(c.cocycle)
                    coords2 = Matrix(fld, 1, space.dim, (space.class_coords(moved),))
                    if not in_span(coords2):
                        span = row_space(span.vstack(coords2))
                        nxt.append(ExtClass(space.resolution, 1, space.target, moved))
            frontier = nxt
    return gens


# -- left add-approximations --------------------------------------------------------


def left_add_approximation(x: Representation, t: Representation, seed: int = 0):
    """Minimal left add(t)-approximation of x.

    Returns (f, summand_tags) where f: x -> T0 is the approximation, T0 the
    direct sum of the tagged indecomposable summands of t, and every
    morphism x -> t' with t' in add(t) factors through f.  Minimality is
    certified by re-checking the factorization property after every
    attempted removal of a summand copy.
    """
    factors = [fac for fac, _ in decompose(t, seed)]
    hom_bases = [hom_space(x, fac) for fac in factors]
    copies = []
    for j, hs in enumerate(hom_bases):
        for b in hs.basis:
            copies.append((j, b))
    f, tags = _assemble_approx(x, factors, copies)
    if not _is_left_approximation(f, factors, hom_bases, tags):
        raise ConsistencyError("canonical map is not a left approximation")
    changed = True
    while changed:
        changed = False
        for idx in range(len(copies) - 1, -1, -1):
            trial = copies[:idx] + copies[idx + 1:]
            tf, ttags = _assemble_approx(x, factors, trial)
            if _is_left_approximation(tf, factors, hom_bases, ttags):
                copies = trial
                f, tags = tf, ttags
                changed = True
                break
    return f, tags


def _assemble_approx(x, factors, copies):
    alg = x.algebra
    if not copies:
        z = zero_module(alg)
        return zero_map(x, z), ()
    summands = [factors[j] for j, _ in copies]
    total, incls, _ = direct_sum_with_maps(summands)
    f = zero_map(x, total)
    for (j, b), inc in zip(copies, incls):
        f = f.add(b.compose(inc))
    return f, tuple(j for j, _ in copies)


def _is_left_approximation(f: ModuleMap, factors, hom_bases, tags) -> bool:
    """Does every basis morphism x -> factor factor through f?"""
    t0 = f.target
    for j, hs in enumerate(hom_bases):
        if hs.dim == 0:
            continue
        through = hom_space(t0, factors[j])
        fld = t0.algebra.field
        rows = [_flatten_map(f.compose(h)) for h in through.basis]
        width = len(_flatten_map(hs.basis[0]))
        rows_m = Matrix(fld, len(rows), width, tuple(rows)) if rows else Matrix.zeros(fld, 0, width)
        for g in hs.basis:
            target_v = Matrix(fld, 1, width, (_flatten_map(g),))
            sol, _ = solve_linear_system(rows_m, target_v)
            if sol is None:
                return False
    return True
