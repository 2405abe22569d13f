"""The category of representations of a finite quiver by finite Z/n-modules:
objects, morphisms, short exact sequences, kernels and cokernels, hom groups,
stalk/restriction/right-adjoint functors, duality into the opposite quiver,
and the tensor product with its defining adjunction.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .quiver import (
    Path,
    Quiver,
    VertexId,
    in_arrows,
    is_subquiver,
    opposite,
    out_arrows,
    paths_between,
    trivial_path,
)
from .znmod import (
    FinMod,
    HomSystem,
    ModHom,
    Modulus,
    ambient_coords_solve,
    direct_sum_with_maps,
    hom_entry_scales,
    identity_hom,
    image_of_hom,
    is_epi,
    is_mono,
    kernel_of_hom,
    matlis_dual,
    matlis_dual_hom,
    quotient_with_projection,
    subgroup_present,
    subgroup_with_inclusion,
    zero_hom,
    zero_mod,
)


class Representation:
    """A functor from the free category on a quiver to finite Z/n-modules."""

    def __init__(self, quiver: Quiver, modulus: Modulus, vertex_modules: Dict[VertexId, FinMod], arrow_maps: Dict[str, ModHom]):
        for v in quiver.vertices:
            if v not in vertex_modules:
                raise ValueError(f"missing module at vertex {v!r}")
            if vertex_modules[v].modulus != modulus:
                raise ValueError(f"modulus mismatch at vertex {v!r}")
        for a in quiver.arrows:
            if a.id not in arrow_maps:
                raise ValueError(f"missing map for arrow {a.id}")
            h = arrow_maps[a.id]
            if h.domain != vertex_modules[a.src] or h.codomain != vertex_modules[a.tgt]:
                raise ValueError(f"arrow map {a.id} has wrong endpoints")
        self.quiver = quiver
        self.modulus = modulus
        self.vertex_modules = dict(vertex_modules)
        self.arrow_maps = dict(arrow_maps)

    def module(self, v: VertexId) -> FinMod:
        self.quiver.check_vertex(v)
        return self.vertex_modules[v]

    def map(self, arrow_id: str) -> ModHom:
        return self.arrow_maps[arrow_id]

    def along(self, p: Path) -> ModHom:
        """Composite of the arrow maps along a path; identity on a trivial path."""
        h = identity_hom(self.module(p.source))
        for a in p.arrows:
            h = self.map(a.id).compose(h)
        return h

    @property
    def total_cardinality(self) -> int:
        c = 1
        for v in self.quiver.vertices:
            c *= self.vertex_modules[v].cardinality
        return c

    @property
    def is_zero(self) -> bool:
        return all(m.is_zero for m in self.vertex_modules.values())

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.quiver == other.quiver
            and self.modulus == other.modulus
            and self.vertex_modules == other.vertex_modules
            and self.arrow_maps == other.arrow_maps
        )

    def __repr__(self):
        parts = ", ".join(f"{v}:{self.vertex_modules[v]}" for v in self.quiver.vertices)
        return f"Representation({parts})"


def zero_rep(quiver: Quiver, modulus: Modulus) -> Representation:
    z = zero_mod(modulus)
    return Representation(quiver, modulus, {v: z for v in quiver.vertices}, {a.id: zero_hom(z, z) for a in quiver.arrows})


def stalk(quiver: Quiver, modulus: Modulus, v: VertexId, m: FinMod) -> Representation:
    """m at the vertex v, zero elsewhere, zero arrow maps."""
    quiver.check_vertex(v)
    z = zero_mod(modulus)
    mods = {w: (m if w == v else z) for w in quiver.vertices}
    maps = {a.id: zero_hom(mods[a.src], mods[a.tgt]) for a in quiver.arrows}
    return Representation(quiver, modulus, mods, maps)


class RepMorphism:
    """A natural transformation between representations of the same quiver."""

    def __init__(self, source: Representation, target: Representation, components: Dict[VertexId, ModHom]):
        if source.quiver != target.quiver or source.modulus != target.modulus:
            raise ValueError("source and target live over different quivers or moduli")
        self.source = source
        self.target = target
        self.components = dict(components)
        for v in source.quiver.vertices:
            h = self.components.get(v)
            if h is None or h.domain != source.vertex_modules[v] or h.codomain != target.vertex_modules[v]:
                raise ValueError(f"bad component at vertex {v!r}")
        for a in source.quiver.arrows:
            lhs = target.map(a.id).compose(self.components[a.src])
            rhs = self.components[a.tgt].compose(source.map(a.id))
            if lhs != rhs:
                raise ValueError(f"naturality fails at arrow {a.id}")

    def component(self, v: VertexId) -> ModHom:
        return self.components[v]

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        if other.target != self.source:
            raise ValueError("morphisms do not compose")
        comps = {v: self.components[v].compose(other.components[v]) for v in self.source.quiver.vertices}
        return RepMorphism(other.source, self.target, comps)

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        comps = {v: self.components[v] + other.components[v] for v in self.source.quiver.vertices}
        return RepMorphism(self.source, self.target, comps)

    def __neg__(self):
        return RepMorphism(self.source, self.target, {v: -h for v, h in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, RepMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    @property
    def is_zero(self) -> bool:
        return all(h.is_zero for h in self.components.values())

    @property
    def is_monomorphism(self) -> bool:
        return all(is_mono(h) for h in self.components.values())

    @property
    def is_epimorphism(self) -> bool:
        return all(is_epi(h) for h in self.components.values())


def zero_morphism(x: Representation, y: Representation) -> RepMorphism:
    return RepMorphism(x, y, {v: zero_hom(x.vertex_modules[v], y.vertex_modules[v]) for v in x.quiver.vertices})


def identity_morphism(x: Representation) -> RepMorphism:
    return RepMorphism(x, x, {v: identity_hom(x.vertex_modules[v]) for v in x.quiver.vertices})


class RepSES:
    """0 -> X --f--> Y --g--> Z -> 0, vertexwise short exact, g o f = 0."""

    def __init__(self, f: RepMorphism, g: RepMorphism):
        if f.target != g.source:
            raise ValueError("middle representations disagree")
        if not g.compose(f).is_zero:
            raise ValueError("g o f is nonzero")
        if not f.is_monomorphism:
            raise ValueError("f is not a monomorphism")
        if not g.is_epimorphism:
            raise ValueError("g is not an epimorphism")
        for v in f.source.quiver.vertices:
            lx = f.source.vertex_modules[v].cardinality
            ly = f.target.vertex_modules[v].cardinality
            lz = g.target.vertex_modules[v].cardinality
            if lx * lz != ly:
                raise ValueError(f"cardinalities at vertex {v!r} rule out exactness")
        self.f = f
        self.g = g

    @property
    def x(self):
        return self.f.source

    @property
    def y(self):
        return self.f.target

    @property
    def z(self):
        return self.g.target

    def vertex_ses(self, v: VertexId):
        from .znmod import ModSES

        return ModSES(self.f.components[v], self.g.components[v])


# ---------------------------------------------------------------------------
# canonical maps, sums, kernels, cokernels
# ---------------------------------------------------------------------------


def psi_data(x: Representation, i: VertexId):
    """(P, psi, arrows, projections): the universal map into the product of
    the targets of the arrows leaving i, with its coordinate projections."""
    arrows = out_arrows(x.quiver, i)
    mods = [x.vertex_modules[a.tgt] for a in arrows]
    total, injs, projs = direct_sum_with_maps(mods, x.modulus)
    h = zero_hom(x.vertex_modules[i], total)
    for inj, a in zip(injs, arrows):
        h = h + inj.compose(x.map(a.id))
    return total, h, arrows, projs


def psi(x: Representation, i: VertexId) -> ModHom:
    return psi_data(x, i)[1]


def phi_data(x: Representation, i: VertexId):
    """(S, phi, arrows, injections): the universal map out of the coproduct of
    the sources of the arrows entering i."""
    arrows = in_arrows(x.quiver, i)
    mods = [x.vertex_modules[a.src] for a in arrows]
    total, injs, projs = direct_sum_with_maps(mods, x.modulus)
    h = zero_hom(total, x.vertex_modules[i])
    for prj, a in zip(projs, arrows):
        h = h + x.map(a.id).compose(prj)
    return total, h, arrows, injs


def phi(x: Representation, i: VertexId) -> ModHom:
    return phi_data(x, i)[1]


def ker_psi(x: Representation, i: VertexId):
    return kernel_of_hom(psi(x, i))


def direct_sum_reps(reps: Sequence[Representation]):
    """(sum, injections, projections) computed vertexwise."""
    if not reps:
        raise ValueError("empty direct sum needs an ambient quiver; use zero_rep")
    q, modulus = reps[0].quiver, reps[0].modulus
    if any(r.quiver != q or r.modulus != modulus for r in reps):
        raise ValueError("summands live over different quivers or moduli")
    vertex_data = {v: direct_sum_with_maps([r.vertex_modules[v] for r in reps], modulus) for v in q.vertices}
    mods = {v: vertex_data[v][0] for v in q.vertices}
    maps = {}
    for a in q.arrows:
        total_src, injs_src, projs_src = vertex_data[a.src]
        total_tgt, injs_tgt, projs_tgt = vertex_data[a.tgt]
        h = zero_hom(total_src, total_tgt)
        for t, r in enumerate(reps):
            h = h + injs_tgt[t].compose(r.map(a.id)).compose(projs_src[t])
        maps[a.id] = h
    total = Representation(q, modulus, mods, maps)
    injections, projections = [], []
    for t, r in enumerate(reps):
        injections.append(RepMorphism(r, total, {v: vertex_data[v][1][t] for v in q.vertices}))
        projections.append(RepMorphism(total, r, {v: vertex_data[v][2][t] for v in q.vertices}))
    return total, injections, projections


def product_reps(reps: Sequence[Representation]):
    """Finite products and coproducts coincide; kept for reading clarity."""
    return direct_sum_reps(reps)


def _subrep_from_vertex_subgroups(x: Representation, incl_data: Dict[VertexId, Tuple[FinMod, ModHom]]):
    """Build the subrepresentation with the given vertexwise inclusions; the
    subgroups must be closed under the arrow maps."""
    q, modulus = x.quiver, x.modulus
    mods = {v: incl_data[v][0] for v in q.vertices}
    maps = {}
    for a in q.arrows:
        sub_s, incl_s = incl_data[a.src]
        sub_t, incl_t = incl_data[a.tgt]
        cols = np.zeros((sub_t.rank, sub_s.rank), dtype=np.int64)
        for c in range(sub_s.rank):
            y = x.map(a.id)(incl_s.matrix[:, c])
            sol = ambient_coords_solve(incl_t.codomain.factors, incl_t.matrix, y, modulus)
            if sol is None:
                raise ValueError(f"subgroups not closed under arrow {a.id}")
            cols[:, c] = sol
        maps[a.id] = ModHom(sub_s, sub_t, cols)
    sub = Representation(q, modulus, mods, maps)
    incl = RepMorphism(sub, x, {v: incl_data[v][1] for v in q.vertices})
    return sub, incl


def kernel_rep(f: RepMorphism):
    """(K, incl) with K(v) = ker f(v) and the induced arrow maps."""
    incl_data = {v: kernel_of_hom(f.components[v]) for v in f.source.quiver.vertices}
    return _subrep_from_vertex_subgroups(f.source, incl_data)


def image_rep(f: RepMorphism):
    incl_data = {v: image_of_hom(f.components[v]) for v in f.source.quiver.vertices}
    return _subrep_from_vertex_subgroups(f.target, incl_data)


def cokernel_rep(f: RepMorphism):
    """(C, proj) with C(v) = coker f(v) and the induced arrow maps."""
    y = f.target
    q, modulus = y.quiver, y.modulus
    data = {}
    for v in q.vertices:
        gens = [f.components[v].matrix[:, c] for c in range(f.components[v].domain.rank)]
        quo, proj, sect = quotient_with_projection(y.vertex_modules[v].factors, gens, modulus)
        data[v] = (quo, proj, sect)
    mods = {v: data[v][0] for v in q.vertices}
    maps = {}
    for a in q.arrows:
        quo_s, proj_s, sect_s = data[a.src]
        quo_t, proj_t, _ = data[a.tgt]
        mat = proj_t.dot(y.map(a.id).matrix).dot(sect_s) if quo_t.rank and quo_s.rank else np.zeros((quo_t.rank, quo_s.rank), dtype=np.int64)
        maps[a.id] = ModHom(quo_s, quo_t, mat)
    coker = Representation(q, modulus, mods, maps)
    proj = RepMorphism(y, coker, {v: ModHom(y.vertex_modules[v], data[v][0], data[v][1]) for v in q.vertices})
    return coker, proj


def subrep_generated(x: Representation, seeds: Dict[VertexId, List[np.ndarray]]):
    """Smallest subrepresentation containing the seed elements: close the
    vertexwise subgroups under all arrow maps, then present."""
    q = x.quiver
    gens = {v: [np.asarray(g, dtype=np.int64) for g in seeds.get(v, [])] for v in q.vertices}
    while True:
        incl = {v: subgroup_present(x.vertex_modules[v].factors, gens[v], x.modulus)[1] for v in q.vertices}
        changed = False
        for a in q.arrows:
            for g in list(gens[a.src]):
                img = x.map(a.id)(g)
                if img.any() and ambient_coords_solve(
                    x.vertex_modules[a.tgt].factors, incl[a.tgt], img, x.modulus
                ) is None:
                    gens[a.tgt].append(img)
                    changed = True
        if not changed:
            break
    incl_data = {v: subgroup_with_inclusion(x.vertex_modules[v], gens[v]) for v in q.vertices}
    return _subrep_from_vertex_subgroups(x, incl_data)


# ---------------------------------------------------------------------------
# hom groups of representations
# ---------------------------------------------------------------------------


class HomGroupRep:
    """Hom_Q(X, Y) as a canonical module with a basis of morphisms and
    coordinate maps both ways."""

    def __init__(self, x: Representation, y: Representation):
        if x.quiver != y.quiver or x.modulus != y.modulus:
            raise ValueError("hom group needs a common quiver and modulus")
        self.x = x
        self.y = y
        q, modulus = x.quiver, x.modulus
        sysm = HomSystem(modulus)
        self._vars = {v: sysm.add_hom_unknown(x.vertex_modules[v].factors, y.vertex_modules[v].factors) for v in q.vertices}
        for a in q.arrows:
            xi, yj = x.vertex_modules[a.src], y.vertex_modules[a.tgt]
            rhs = np.zeros((yj.rank, xi.rank), dtype=np.int64)
            sysm.add_matrix_equation(
                [
                    (self._vars[a.src], y.map(a.id).matrix, np.eye(xi.rank, dtype=np.int64), 1),
                    (self._vars[a.tgt], np.eye(yj.rank, dtype=np.int64), x.map(a.id).matrix, -1),
                ],
                rhs,
                yj.factors,
            )
        data = sysm.flat_solution_data()
        assert data is not None
        self._orders, _, kernel_gens = data
        self.group, self._incl = subgroup_present(self._orders, kernel_gens, modulus)
        self._sysm = sysm
        self.basis = [self._morphism_from_flat(self._incl[:, k]) for k in range(self.group.rank)]

    def _morphism_from_flat(self, flat: np.ndarray) -> RepMorphism:
        mats = self._sysm._assignment(np.asarray(flat, dtype=np.int64))
        comps = {}
        for v, var in self._vars.items():
            comps[v] = ModHom(self.x.vertex_modules[v], self.y.vertex_modules[v], mats[var])
        return RepMorphism(self.x, self.y, comps)

    def _flat_of(self, f: RepMorphism) -> np.ndarray:
        flat = np.zeros(len(self._orders), dtype=np.int64)
        for v, var in self._vars.items():
            dom_f = self.x.vertex_modules[v].factors
            cod_f = self.y.vertex_modules[v].factors
            scales = hom_entry_scales(dom_f, cod_f)
            idx = self._sysm.vars[var][2]
            ent = f.components[v].matrix
            t_vals = np.zeros_like(ent)
            for j in range(len(cod_f)):
                for i in range(len(dom_f)):
                    t_vals[j, i] = int(ent[j, i]) // int(scales[j, i])
            flat[idx.start : idx.stop] = t_vals.reshape(-1)
        return flat

    def coords(self, f: RepMorphism) -> np.ndarray:
        """Coordinates of a morphism in the canonical hom group."""
        sol = ambient_coords_solve(self._orders, self._incl, self._flat_of(f), self.x.modulus)
        if sol is None:
            raise ValueError("morphism does not lie in the hom group (bug)")
        return self.group.reduce(sol)

    def from_coords(self, coords) -> RepMorphism:
        c = self.group.reduce(coords)
        flat = self._incl.dot(c) % self.x.modulus.n if self.group.rank else np.zeros(len(self._orders), dtype=np.int64)
        if len(self._orders):
            flat = flat % np.array(self._orders, dtype=np.int64)
        return self._morphism_from_flat(flat)

    @property
    def cardinality(self) -> int:
        return self.group.cardinality

    def elements(self):
        for coords in itertools.product(*[range(d) for d in self.group.factors]):
            yield self.from_coords(np.array(coords, dtype=np.int64))


def hom_reps(x: Representation, y: Representation) -> Tuple[FinMod, List[RepMorphism]]:
    grp = HomGroupRep(x, y)
    return grp.group, grp.basis


# ---------------------------------------------------------------------------
# stalks, restriction, right adjoint
# ---------------------------------------------------------------------------


def restrict(qsub: Quiver, x: Representation) -> Representation:
    if not is_subquiver(qsub, x.quiver):
        raise ValueError("not a subquiver")
    return Representation(
        qsub,
        x.modulus,
        {v: x.vertex_modules[v] for v in qsub.vertices},
        {a.id: x.arrow_maps[a.id] for a in qsub.arrows},
    )


def _adjoint_factors(q: Quiver, qsub: Quiver, v: VertexId) -> List[Tuple]:
    """Index set of the product defining the right adjoint at vertex v: the
    trivial factor when v lies in the subquiver, then every nonempty path
    from v that lands in the subquiver and whose last arrow is outside it."""
    keys: List[Tuple] = []
    if v in qsub.vertices:
        keys.append(("triv", v))
    sub_arrow_ids = {a.id for a in qsub.arrows}
    eligible = []
    for w in qsub.vertices:
        for p in paths_between(q, v, w):
            if p.is_trivial:
                continue
            if p.arrows[-1].id in sub_arrow_ids:
                continue
            eligible.append(p)
    eligible.sort(key=Path.key)
    keys.extend(("path", tuple(a.id for a in p.arrows), p.target) for p in eligible)
    return keys


class RightAdjointRep:
    """Right adjoint of restriction along a subquiver inclusion, computed by
    the explicit product-over-paths formula; requires the big quiver acyclic.

    Keeps the factor bookkeeping (keys, injections, projections per vertex)
    so that units, counits and transposes can be assembled on top.
    """

    def __init__(self, q: Quiver, qsub: Quiver, x: Representation):
        if not is_subquiver(qsub, q):
            raise ValueError("not a subquiver")
        if x.quiver != qsub:
            raise ValueError("representation does not live on the subquiver")
        modulus = x.modulus
        self.q = q
        self.qsub = qsub
        self.inner = x
        self.factor_keys = {v: _adjoint_factors(q, qsub, v) for v in q.vertices}
        self._data = {
            v: direct_sum_with_maps([self.factor_module(k) for k in self.factor_keys[v]], modulus)
            for v in q.vertices
        }
        pos = {v: {k: t for t, k in enumerate(self.factor_keys[v])} for v in q.vertices}
        sub_arrow_ids = {a.id for a in qsub.arrows}
        mods = {v: self._data[v][0] for v in q.vertices}
        maps = {}
        for b in q.arrows:
            total_u, _, projs_u = self._data[b.src]
            total_v, injs_v, _ = self._data[b.tgt]
            h = zero_hom(total_u, total_v)
            for key in self.factor_keys[b.tgt]:
                if key[0] == "triv" and b.id in sub_arrow_ids:
                    comp = x.map(b.id).compose(projs_u[pos[b.src][("triv", b.src)]])
                else:
                    if key[0] == "triv":
                        src_key = ("path", (b.id,), key[1])
                    else:
                        src_key = ("path", (b.id,) + key[1], key[2])
                    comp = projs_u[pos[b.src][src_key]]
                h = h + injs_v[pos[b.tgt][key]].compose(comp)
            maps[b.id] = h
        self.rep = Representation(q, modulus, mods, maps)

    def factor_module(self, key) -> FinMod:
        return self.inner.vertex_modules[key[1] if key[0] == "triv" else key[2]]

    def factor_target(self, key) -> VertexId:
        return key[1] if key[0] == "triv" else key[2]

    def factor_path(self, v: VertexId, key) -> Path:
        if key[0] == "triv":
            return trivial_path(v)
        return Path(v, key[2], tuple(self.q.arrow(aid) for aid in key[1]))

    def injection(self, v: VertexId, key) -> ModHom:
        return self._data[v][1][self.factor_keys[v].index(key)]

    def projection(self, v: VertexId, key) -> ModHom:
        return self._data[v][2][self.factor_keys[v].index(key)]

    def transpose(self, x_on_q: Representation, h: RepMorphism) -> RepMorphism:
        """Hom_{Q'}(restrict x, inner) -> Hom_Q(x, rep): the factor component
        at a path p is h(target p) composed with x along p."""
        comps = {}
        for v in self.q.vertices:
            hv = zero_hom(x_on_q.vertex_modules[v], self.rep.vertex_modules[v])
            for key in self.factor_keys[v]:
                w = self.factor_target(key)
                part = h.components[w].compose(x_on_q.along(self.factor_path(v, key)))
                hv = hv + self.injection(v, key).compose(part)
            comps[v] = hv
        return RepMorphism(x_on_q, self.rep, comps)

    def transpose_back(self, x_on_q: Representation, k: RepMorphism) -> RepMorphism:
        """Hom_Q(x, rep) -> Hom_{Q'}(restrict x, inner) via the trivial factors."""
        comps = {}
        for w in self.qsub.vertices:
            comps[w] = self.projection(w, ("triv", w)).compose(k.components[w])
        return RepMorphism(restrict(self.qsub, x_on_q), self.inner, comps)


def right_adjoint(q: Quiver, qsub: Quiver, x: Representation) -> Representation:
    return RightAdjointRep(q, qsub, x).rep


def single_vertex_rep(q: Quiver, modulus: Modulus, v: VertexId, m: FinMod) -> Representation:
    one = Quiver((v,), ())
    return Representation(one, modulus, {v: m}, {})


def copresentation_embedding(x: Representation, embeds: Dict[VertexId, ModHom]) -> Tuple[Representation, RepMorphism]:
    """Given monos embed_v : X(v) -> M_v, build E = prod_v e^v(M_v) with the
    canonical morphism X -> E whose component into the factor indexed by a
    path p is embed_{target p} o X(p).  Monomorphism thanks to the trivial
    factors; this is the first step of the canonical injective copresentation."""
    q, modulus = x.quiver, x.modulus
    singles = [RightAdjointRep(q, Quiver((v,), ()), single_vertex_rep(q, modulus, v, embeds[v].codomain)) for v in q.vertices]
    total, injs, _ = direct_sum_reps([s.rep for s in singles])
    comps = {}
    for w in q.vertices:
        h = zero_hom(x.vertex_modules[w], total.vertex_modules[w])
        for t, v in enumerate(q.vertices):
            single = singles[t]
            for key in single.factor_keys[w]:
                part = embeds[v].compose(x.along(single.factor_path(w, key)))
                h = h + injs[t].components[w].compose(single.injection(w, key)).compose(part)
        comps[w] = h
    return total, RepMorphism(x, total, comps)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def dual_rep(x: Representation) -> Representation:
    """Vertexwise Matlis duality into the opposite quiver; opposite() flips
    arrows in order, so arrow maps are matched by position."""
    qop = opposite(x.quiver)
    mods = {v: matlis_dual(x.vertex_modules[v]) for v in x.quiver.vertices}
    maps = {a_op.id: matlis_dual_hom(x.map(a.id)) for a, a_op in zip(x.quiver.arrows, qop.arrows)}
    return Representation(qop, x.modulus, mods, maps)


def dual_rep_morphism(f: RepMorphism) -> RepMorphism:
    return RepMorphism(
        dual_rep(f.target),
        dual_rep(f.source),
        {v: matlis_dual_hom(f.components[v]) for v in f.source.quiver.vertices},
    )


def dual_rep_ses(s: RepSES) -> RepSES:
    return RepSES(dual_rep_morphism(s.g), dual_rep_morphism(s.f))


def double_dual_rep_iso(x: Representation) -> RepMorphism:
    from .znmod import double_dual_iso

    return RepMorphism(x, dual_rep(dual_rep(x)), {v: double_dual_iso(x.vertex_modules[v]) for v in x.quiver.vertices})


# ---------------------------------------------------------------------------
# tensor product over the quiver and its adjunction
# ---------------------------------------------------------------------------


class TensorPresentation:
    """Y tensor_Q X presented by generators (vertexwise cyclic tensors) and
    the relations identifying the two arrow actions."""

    def __init__(self, y: Representation, x: Representation):
        if y.quiver != opposite(x.quiver) or y.modulus != x.modulus:
            raise ValueError("tensor needs representations over mutually opposite quivers")
        self.y = y
        self.x = x
        modulus = x.modulus
        self.positions: Dict[Tuple, int] = {}
        self.orders: List[int] = []
        from math import gcd as _gcd

        for v in x.quiver.vertices:
            cf = y.vertex_modules[v].factors
            df = x.vertex_modules[v].factors
            for s, c in enumerate(cf):
                for t, d in enumerate(df):
                    self.positions[(v, s, t)] = len(self.orders)
                    self.orders.append(_gcd(c, d))
        relations = []
        qop = opposite(x.quiver)
        flip = {a.id: a_op.id for a, a_op in zip(x.quiver.arrows, qop.arrows)}
        for a in x.quiver.arrows:
            i, j = a.src, a.tgt
            y_map = y.map(flip[a.id])  # Y(j) -> Y(i)
            x_map = x.map(a.id)  # X(i) -> X(j)
            for s in range(y.vertex_modules[j].rank):
                for t in range(x.vertex_modules[i].rank):
                    rel = np.zeros(len(self.orders), dtype=np.int64)
                    w = y_map.matrix[:, s]
                    for u in range(y.vertex_modules[i].rank):
                        p = self.positions[(i, u, t)]
                        rel[p] = (rel[p] + int(w[u])) % self.orders[p]
                    z = x_map.matrix[:, t]
                    for r in range(x.vertex_modules[j].rank):
                        p = self.positions[(j, s, r)]
                        rel[p] = (rel[p] - int(z[r])) % self.orders[p]
                    if rel.any():
                        relations.append(rel)
        self.module, self._proj, self._sect = quotient_with_projection(self.orders, relations, modulus)

    def project(self, t0_vec: np.ndarray) -> np.ndarray:
        if not self.module.rank:
            return np.zeros(0, dtype=np.int64)
        return self.module.reduce(self._proj.dot(np.asarray(t0_vec, dtype=np.int64)))

    def lift(self, coords) -> np.ndarray:
        c = self.module.reduce(coords)
        if not len(self.orders):
            return np.zeros(0, dtype=np.int64)
        v = self._sect.dot(c) % self.x.modulus.n if self.module.rank else np.zeros(len(self.orders), dtype=np.int64)
        return v % np.array(self.orders, dtype=np.int64)


def tensor(y: Representation, x: Representation) -> FinMod:
    return TensorPresentation(y, x).module


def tensor_induced_right(pres_src: TensorPresentation, pres_tgt: TensorPresentation, f: RepMorphism) -> ModHom:
    """Y tensor f : Y tensor X -> Y tensor X' for f : X -> X' with Y fixed."""
    if pres_src.y != pres_tgt.y or f.source != pres_src.x or f.target != pres_tgt.x:
        raise ValueError("presentations do not match the morphism")
    big = np.zeros((len(pres_tgt.orders), len(pres_src.orders)), dtype=np.int64)
    for (v, s, t), p_src in pres_src.positions.items():
        fm = f.components[v].matrix
        for r in range(f.target.vertex_modules[v].rank):
            p_tgt = pres_tgt.positions[(v, s, r)]
            big[p_tgt, p_src] = (big[p_tgt, p_src] + int(fm[r, t])) % pres_tgt.orders[p_tgt]
    return _descend_between_quotients(pres_src, pres_tgt, big)


def tensor_induced_left(pres_src: TensorPresentation, pres_tgt: TensorPresentation, theta: RepMorphism) -> ModHom:
    """theta tensor X : Y' tensor X -> Y tensor X for theta : Y' -> Y with X fixed."""
    if pres_src.x != pres_tgt.x or theta.source != pres_src.y or theta.target != pres_tgt.y:
        raise ValueError("presentations do not match the morphism")
    big = np.zeros((len(pres_tgt.orders), len(pres_src.orders)), dtype=np.int64)
    for (v, s, t), p_src in pres_src.positions.items():
        tm = theta.components[v].matrix
        for u in range(theta.target.vertex_modules[v].rank):
            p_tgt = pres_tgt.positions[(v, u, t)]
            big[p_tgt, p_src] = (big[p_tgt, p_src] + int(tm[u, s])) % pres_tgt.orders[p_tgt]
    return _descend_between_quotients(pres_src, pres_tgt, big)


def _descend_between_quotients(pres_src: TensorPresentation, pres_tgt: TensorPresentation, big: np.ndarray) -> ModHom:
    src, tgt = pres_src.module, pres_tgt.module
    if not (src.rank and tgt.rank):
        return zero_hom(src, tgt)
    mat = pres_tgt._proj.dot(big).dot(pres_src._sect)
    return ModHom(src, tgt, mat)


def tensor_functional_coords(pres: TensorPresentation, g: RepMorphism) -> np.ndarray:
    """Dual coordinates of the functional <g(v)(y), x> on Y tensor X, for a
    morphism g : Y -> dual(X) over the opposite quiver."""
    n = pres.x.modulus.n
    lam = np.zeros(len(pres.orders), dtype=np.int64)
    for (v, s, t), p in pres.positions.items():
        w = g.components[v].matrix[:, s]
        d = pres.x.vertex_modules[v].factors[t]
        lam[p] = (int(w[t]) * (n // d)) % n
    dual = matlis_dual(pres.module)
    coords = np.zeros(dual.rank, dtype=np.int64)
    for k in range(dual.rank):
        rep_vec = pres.lift(np.eye(dual.rank, dtype=np.int64)[k])
        val = int(lam.dot(rep_vec)) % n
        f = dual.factors[k]
        if val % (n // f) != 0:
            raise ValueError("functional is not well defined on the quotient (bug)")
        coords[k] = (val // (n // f)) % f
    return coords


def adjunction_check(y: Representation, x: Representation, naturality_samples: int = 3, seed: int = 0) -> Tuple[bool, dict]:
    """Verify Hom(Y tensor X, Z/n) iso Hom_{Qop}(Y, dual X): cardinalities, a
    constructed bijection, and naturality against sampled endomorphisms of Y."""
    pres = TensorPresentation(y, x)
    lhs = matlis_dual(pres.module)
    hom = HomGroupRep(y, dual_rep(x))
    if lhs.cardinality != hom.cardinality:
        return False, {"reason": "cardinality mismatch", "lhs": lhs.cardinality, "rhs": hom.cardinality}
    if hom.group.rank:
        cols = [tensor_functional_coords(pres, g) for g in hom.basis]
        phi = ModHom(hom.group, lhs, np.array(cols, dtype=np.int64).T if lhs.rank else np.zeros((0, hom.group.rank)))
    else:
        phi = zero_hom(hom.group, lhs)
    if not is_mono(phi):
        return False, {"reason": "constructed map is not injective"}
    # naturality in Y against sampled endomorphisms
    import random as _random

    rng = _random.Random(seed)
    endo = HomGroupRep(y, y)
    for _ in range(naturality_samples):
        if endo.group.is_zero:
            break
        coords = np.array([rng.randrange(d) for d in endo.group.factors], dtype=np.int64)
        theta = endo.from_coords(coords)
        pres_src = pres  # theta tensor X maps Y tensor X -> Y tensor X
        induced = tensor_induced_left(pres_src, pres, theta)
        for g in hom.basis:
            left = tensor_functional_coords(pres, g)
            # dual of induced map applied to the functional
            lam_after = matlis_dual_hom(induced)(left)
            right = tensor_functional_coords(pres, g.compose(theta))
            if not np.array_equal(lam_after, right):
                return False, {"reason": "naturality failure"}
    return True, {"cardinality": lhs.cardinality}


def restriction_adjunction_check(q: Quiver, qsub: Quiver, x: Representation, y: Representation) -> Tuple[bool, dict]:
    """Verify Hom_{Q'}(restrict X, Y) iso Hom_Q(X, right_adjoint Y) by
    cardinality plus an explicitly constructed mutually inverse pair."""
    adj = RightAdjointRep(q, qsub, y)
    lhs = HomGroupRep(restrict(qsub, x), y)
    rhs = HomGroupRep(x, adj.rep)
    if lhs.cardinality != rhs.cardinality:
        return False, {"reason": "cardinality mismatch", "lhs": lhs.cardinality, "rhs": rhs.cardinality}
    for h in lhs.basis:
        if adj.transpose_back(x, adj.transpose(x, h)) != h:
            return False, {"reason": "round trip failed"}
    # the transpose is a group hom; injectivity on basis coordinates plus
    # equal cardinalities makes it a bijection
    if lhs.group.rank:
        cols = [rhs.coords(adj.transpose(x, h)) for h in lhs.basis]
        phi = ModHom(
            lhs.group,
            rhs.group,
            np.array(cols, dtype=np.int64).T if rhs.group.rank else np.zeros((0, lhs.group.rank), dtype=np.int64),
        )
        if not is_mono(phi):
            return False, {"reason": "transpose not injective"}
    return True, {"cardinality": lhs.cardinality}
