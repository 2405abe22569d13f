"""Finitely generated Z/n-modules in invariant-factor form, homs between
them, and the module-level homological predicates (injectivity, splitness,
purity, strong fp-injectivity, Gorenstein certificates).

A module is a direct sum of cyclic groups Z/d_1 + ... + Z/d_k with
d_1 | d_2 | ... | d_k and every d_i dividing n; elements are coordinate
vectors with the i-th coordinate read mod d_i.  A hom is a matrix whose
(j, i) entry must satisfy a_ji * d_i == 0 mod e_j, which is checked at
construction.  Internal computations frequently pass through "ambient"
factor tuples that are not divisibility chains; only FinMod values are
required to be canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .linalg import diagonalize, solve_right, xgcd


@dataclass(frozen=True)
class Modulus:
    """The coefficient ring Z/n."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")

    @cached_property
    def prime_factors(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        m, p = self.n, 2
        while p * p <= m:
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
            p += 1
        if m > 1:
            out[m] = out.get(m, 0) + 1
        return out

    @cached_property
    def divisors(self) -> Tuple[int, ...]:
        return tuple(d for d in range(1, self.n + 1) if self.n % d == 0)

    def __str__(self):
        return f"Z/{self.n}"


def canonical_chain(orders: Iterable[int], n: int) -> Tuple[int, ...]:
    """Invariant-factor chain of the direct sum of cyclic groups Z/m.

    Regroups prime-power parts so the result is an ascending divisibility
    chain; trivial factors are dropped.
    """
    exps: Dict[int, List[int]] = {}
    mod = Modulus(n)
    for m in orders:
        if n % m != 0:
            raise ValueError(f"order {m} does not divide modulus {n}")
        if m == 1:
            continue
        for p in mod.prime_factors:
            e = 0
            mm = m
            while mm % p == 0:
                e += 1
                mm //= p
            if e:
                exps.setdefault(p, []).append(e)
    if not exps:
        return ()
    length = max(len(v) for v in exps.values())
    chain = []
    for k in range(length):
        f = 1
        for p, v in exps.items():
            v_sorted = sorted(v, reverse=True)
            if k < len(v_sorted):
                f *= p ** v_sorted[k]
        chain.append(f)
    return tuple(reversed(chain))


@dataclass(frozen=True)
class FinMod:
    """Finite Z/n-module in canonical invariant-factor form."""

    modulus: Modulus
    factors: Tuple[int, ...]

    def __post_init__(self):
        n = self.modulus.n
        prev = 1
        for d in self.factors:
            if d <= 1 or n % d != 0:
                raise ValueError(f"invalid invariant factor {d} over Z/{n}")
            if d % prev != 0:
                raise ValueError(f"factors {self.factors} are not a divisibility chain")
            prev = d

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def cardinality(self) -> int:
        c = 1
        for d in self.factors:
            c *= d
        return c

    @property
    def is_zero(self) -> bool:
        return not self.factors

    def reduce(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=np.int64).reshape(self.rank)
        return np.mod(v, np.array(self.factors, dtype=np.int64)) if self.rank else v

    def elements(self) -> Iterable[np.ndarray]:
        for tup in itertools.product(*[range(d) for d in self.factors]):
            yield np.array(tup, dtype=np.int64)

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.factors)


def zero_mod(modulus: Modulus) -> FinMod:
    return FinMod(modulus, ())


def cyclic(modulus: Modulus, d: int) -> FinMod:
    return FinMod(modulus, (d,)) if d > 1 else zero_mod(modulus)


def free_mod(modulus: Modulus, rank: int) -> FinMod:
    return FinMod(modulus, (modulus.n,) * rank)


def _factor_arrays(factors: Sequence[int]):
    return np.array(factors, dtype=np.int64)


class ModHom:
    """Hom of finite Z/n-modules as a congruence-constrained matrix.

    The matrix has shape (codomain rank, domain rank); entries are stored
    reduced mod the codomain factor of their row, so equality of homs is
    equality of matrices.
    """

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: FinMod, codomain: FinMod, matrix):
        if domain.modulus != codomain.modulus:
            raise ValueError("modulus mismatch between domain and codomain")
        m = np.asarray(matrix, dtype=np.int64).reshape(codomain.rank, domain.rank)
        if codomain.rank:
            m = np.mod(m, _factor_arrays(codomain.factors)[:, None])
        if domain.rank and codomain.rank:
            bad = (m * _factor_arrays(domain.factors)[None, :]) % _factor_arrays(
                codomain.factors
            )[:, None]
            if bad.any():
                j, i = np.argwhere(bad).tolist()[0]
                raise ValueError(
                    f"entry {m[j, i]} at ({j},{i}) is not well defined: "
                    f"{m[j, i]}*{domain.factors[i]} != 0 mod {codomain.factors[j]}"
                )
        m.flags.writeable = False
        self.domain = domain
        self.codomain = codomain
        self.matrix = m

    @property
    def modulus(self) -> Modulus:
        return self.domain.modulus

    def __call__(self, vec) -> np.ndarray:
        x = self.domain.reduce(vec)
        if not self.codomain.rank:
            return np.zeros(0, dtype=np.int64)
        if not self.domain.rank:
            return np.zeros(self.codomain.rank, dtype=np.int64)
        return self.codomain.reduce(self.matrix.dot(x))

    def compose(self, other: "ModHom") -> "ModHom":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("homs do not compose")
        return ModHom(other.domain, self.codomain, self.matrix.dot(other.matrix))

    def __add__(self, other: "ModHom") -> "ModHom":
        if (other.domain, other.codomain) != (self.domain, self.codomain):
            raise ValueError("hom addition needs equal domains and codomains")
        return ModHom(self.domain, self.codomain, self.matrix + other.matrix)

    def __neg__(self) -> "ModHom":
        return ModHom(self.domain, self.codomain, -self.matrix)

    def __sub__(self, other: "ModHom") -> "ModHom":
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, ModHom)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix.tobytes()))

    @property
    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __repr__(self):
        return f"ModHom({self.domain} -> {self.codomain}, {self.matrix.tolist()})"


def zero_hom(domain: FinMod, codomain: FinMod) -> ModHom:
    return ModHom(domain, codomain, np.zeros((codomain.rank, domain.rank), dtype=np.int64))


def identity_hom(m: FinMod) -> ModHom:
    return ModHom(m, m, np.eye(m.rank, dtype=np.int64))


def hom_entry_orders(dom: Sequence[int], cod: Sequence[int]) -> np.ndarray:
    """Order of the (j, i) entry group: gcd(d_i, e_j)."""
    out = np.zeros((len(cod), len(dom)), dtype=np.int64)
    for j, e in enumerate(cod):
        for i, d in enumerate(dom):
            out[j, i] = gcd(d, e)
    return out


def hom_entry_scales(dom: Sequence[int], cod: Sequence[int]) -> np.ndarray:
    """Generator of the (j, i) entry group: e_j // gcd(d_i, e_j)."""
    out = np.zeros((len(cod), len(dom)), dtype=np.int64)
    for j, e in enumerate(cod):
        for i, d in enumerate(dom):
            out[j, i] = e // gcd(d, e)
    return out


# ---------------------------------------------------------------------------
# mixed-congruence linear systems
# ---------------------------------------------------------------------------


class CongruenceSystem:
    """Linear system over Z/n with unknown x_t ranging over Z/m_t and each
    equation holding modulo some divisor r of n.

    Equations are rescaled by n/r into Z/n and solved by Howell reduction;
    well-definedness (coeff * m_t == 0 mod r) is enforced so that mod-n
    solutions project onto exactly the mixed-modulus solutions.
    """

    def __init__(self, modulus: Modulus):
        self.modulus = modulus
        self.orders: List[int] = []
        self._rows: List[np.ndarray] = []
        self._rhs: List[int] = []

    def add_unknowns(self, orders: Sequence[int]) -> range:
        start = len(self.orders)
        for m in orders:
            if m < 1 or self.modulus.n % m != 0:
                raise ValueError(f"unknown order {m} must divide {self.modulus.n}")
            self.orders.append(int(m))
        return range(start, len(self.orders))

    def add_equation(self, coeffs: Dict[int, int], rhs: int, eq_modulus: int):
        n = self.modulus.n
        if eq_modulus < 1 or n % eq_modulus != 0:
            raise ValueError(f"equation modulus {eq_modulus} must divide {n}")
        scale = n // eq_modulus
        row = np.zeros(len(self.orders), dtype=np.int64)
        for t, c in coeffs.items():
            c = int(c) % eq_modulus
            if (c * self.orders[t]) % eq_modulus != 0:
                raise ValueError(
                    f"coefficient {c} for unknown of order {self.orders[t]} is not "
                    f"well defined mod {eq_modulus}"
                )
            row[t] = (c * scale) % n
        self._rows.append(row)
        self._rhs.append((int(rhs) % eq_modulus) * scale % n)

    def solve(self) -> Optional[Tuple[np.ndarray, List[np.ndarray]]]:
        """Returns (particular, kernel generators) reduced mod the unknown
        orders, or None when inconsistent."""
        n = self.modulus.n
        t = len(self.orders)
        if self._rows:
            a = np.vstack([r if r.shape[0] == t else np.pad(r, (0, t - r.shape[0])) for r in self._rows])
            b = np.array(self._rhs, dtype=np.int64).reshape(-1, 1)
        else:
            a = np.zeros((0, t), dtype=np.int64)
            b = np.zeros((0, 1), dtype=np.int64)
        out = solve_right(a, b, n)
        if out is None:
            return None
        part, kern = out
        om = np.array(self.orders, dtype=np.int64) if t else np.zeros(0, dtype=np.int64)
        reduce = lambda v: np.mod(v, om) if t else v
        gens = [reduce(kern[:, i]) for i in range(kern.shape[1])]
        return reduce(part[:, 0]), gens


class HomSystem:
    """Linear system whose unknowns are homs between given modules.

    Each unknown hom is parameterized entrywise by its generator multiples;
    equations are sums of terms L @ U @ R with known matrices L, R.
    """

    def __init__(self, modulus: Modulus):
        self.modulus = modulus
        self.system = CongruenceSystem(modulus)
        self.vars: List[Tuple[Tuple[int, ...], Tuple[int, ...], range, np.ndarray]] = []

    def add_hom_unknown(self, dom_factors: Sequence[int], cod_factors: Sequence[int]) -> int:
        orders = hom_entry_orders(dom_factors, cod_factors)
        scales = hom_entry_scales(dom_factors, cod_factors)
        idx = self.system.add_unknowns([int(v) for v in orders.reshape(-1)])
        self.vars.append((tuple(dom_factors), tuple(cod_factors), idx, scales))
        return len(self.vars) - 1

    def add_matrix_equation(
        self,
        terms: Sequence[Tuple[int, np.ndarray, np.ndarray, int]],
        rhs: np.ndarray,
        row_factors: Sequence[int],
    ):
        """Sum of sign * L @ U_var @ R terms equals rhs, rows read mod row_factors."""
        if not len(row_factors):
            return
        rhs = np.asarray(rhs, dtype=np.int64)
        n_rows, n_cols = rhs.shape
        coeff_blocks = []
        for var, left, right, sign in terms:
            dom_f, cod_f, idx, scales = self.vars[var]
            left = np.asarray(left, dtype=np.int64).reshape(n_rows, len(cod_f))
            right = np.asarray(right, dtype=np.int64).reshape(len(dom_f), n_cols)
            # E[a, b, j, i] = sign * L[a, j] * scales[j, i] * R[i, b]
            block = np.einsum("aj,ji,ib->abji", left, scales, right) * sign
            coeff_blocks.append((idx, block.reshape(n_rows, n_cols, scales.size)))
        for a in range(n_rows):
            r = int(row_factors[a])
            for b in range(n_cols):
                coeffs: Dict[int, int] = {}
                for idx, block in coeff_blocks:
                    for t_local, c in enumerate(block[a, b]):
                        c = int(c) % r
                        if c:
                            t_global = idx[t_local]
                            coeffs[t_global] = (coeffs.get(t_global, 0) + c) % r
                self.system.add_equation(coeffs, int(rhs[a, b]), r)

    def _assignment(self, flat: np.ndarray) -> List[np.ndarray]:
        out = []
        for dom_f, cod_f, idx, scales in self.vars:
            t_vals = flat[idx.start : idx.stop].reshape(len(cod_f), len(dom_f))
            out.append((t_vals * scales) % (np.array(cod_f, dtype=np.int64)[:, None] if cod_f else 1))
        return out

    def solve(self) -> Optional[Tuple[List[np.ndarray], List[List[np.ndarray]]]]:
        """Returns (particular matrices, kernel basis of matrix tuples) or None."""
        out = self.system.solve()
        if out is None:
            return None
        part, gens = out
        return self._assignment(part), [self._assignment(g) for g in gens]

    def flat_solution_data(self):
        """Raw solver view: (orders, particular, kernel gens) on t-coordinates."""
        out = self.system.solve()
        if out is None:
            return None
        part, gens = out
        return tuple(self.system.orders), part, gens


# ---------------------------------------------------------------------------
# presentations, subgroups, quotients
# ---------------------------------------------------------------------------


def present(relations, modulus: Modulus, generators: Optional[int] = None):
    """Canonical form of the cokernel of a relations matrix over Z/n.

    Rows index generators, columns index relations.  Returns
    (module, proj, sect) with proj @ sect == identity mod the invariant
    factors; proj maps old generator coordinates onto canonical coordinates.
    """
    n = modulus.n
    rel = np.asarray(relations, dtype=np.int64)
    if rel.ndim != 2:
        if generators is None:
            raise ValueError("generator count required for an empty relations matrix")
        rel = rel.reshape(generators, -1)
    g = rel.shape[0]
    if g == 0:
        return zero_mod(modulus), np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    d, u, uinv, _, _ = diagonalize(rel, n)
    keep = [i for i, di in enumerate(d) if di > 1]
    factors = tuple(int(d[i]) for i in keep)
    mod = FinMod(modulus, factors)
    proj = u[keep, :] % n
    if keep:
        proj = proj % _factor_arrays(factors)[:, None]
    sect = uinv[:, keep] % n
    return mod, proj, sect


def direct_sum_with_maps(mods: Sequence[FinMod], modulus: Modulus):
    """Canonical direct sum with injections and projections for each summand."""
    all_factors = [d for m in mods for d in m.factors]
    g = len(all_factors)
    rel = np.diag(np.array(all_factors, dtype=np.int64)) if g else np.zeros((0, 0), dtype=np.int64)
    total, proj, sect = present(rel, modulus, generators=g)
    injections, projections = [], []
    offset = 0
    for m in mods:
        r = m.rank
        inj = proj[:, offset : offset + r] if total.rank else np.zeros((0, r), dtype=np.int64)
        prj = sect[offset : offset + r, :] if total.rank else np.zeros((r, 0), dtype=np.int64)
        injections.append(ModHom(m, total, inj))
        projections.append(ModHom(total, m, prj))
        offset += r
    return total, injections, projections


def subgroup_present(ambient_orders: Sequence[int], gens: Sequence[np.ndarray], modulus: Modulus):
    """Present the subgroup of prod Z/m_c generated by gens.

    Returns (module, incl) where incl maps canonical coordinates to ambient
    coordinates (columns are the canonical generators).
    """
    amb = list(ambient_orders)
    r = len(gens)
    if r == 0:
        return zero_mod(modulus), np.zeros((len(amb), 0), dtype=np.int64)
    gmat = np.array([np.asarray(g, dtype=np.int64).reshape(len(amb)) for g in gens], dtype=np.int64).T
    sys = CongruenceSystem(modulus)
    sys.add_unknowns([modulus.n] * r)
    for c, m in enumerate(amb):
        sys.add_equation({t: int(gmat[c, t]) for t in range(r)}, 0, m)
    out = sys.solve()
    assert out is not None
    _, kernel = out
    rel = np.array(kernel, dtype=np.int64).T if kernel else np.zeros((r, 0), dtype=np.int64)
    sub, _, sect = present(rel, modulus, generators=r)
    incl = gmat.dot(sect) % modulus.n if sub.rank else np.zeros((len(amb), 0), dtype=np.int64)
    if amb:
        incl = incl % _factor_arrays(amb)[:, None]
    return sub, incl


def ambient_coords_solve(
    ambient_orders: Sequence[int], incl: np.ndarray, target: np.ndarray, modulus: Modulus
) -> Optional[np.ndarray]:
    """Solve incl @ c == target in prod Z/m_c for c over the column module."""
    amb = list(ambient_orders)
    r = incl.shape[1]
    sys = CongruenceSystem(modulus)
    sys.add_unknowns([modulus.n] * r)
    t = np.asarray(target, dtype=np.int64).reshape(len(amb))
    for c, m in enumerate(amb):
        sys.add_equation({k: int(incl[c, k]) for k in range(r)}, int(t[c]), m)
    out = sys.solve()
    return None if out is None else out[0]


def subgroup_with_inclusion(ambient: FinMod, gens: Sequence[np.ndarray]):
    sub, incl = subgroup_present(ambient.factors, gens, ambient.modulus)
    return sub, ModHom(sub, ambient, incl)


def quotient_with_projection(ambient_orders: Sequence[int], gens: Sequence[np.ndarray], modulus: Modulus):
    """Quotient of prod Z/m_c by the subgroup generated by gens.

    Returns (module, proj, sect): proj is a hom on ambient coordinates and
    sect lifts canonical coordinates to ambient representatives.
    """
    amb = list(ambient_orders)
    g = len(amb)
    cols = [np.diag(np.array(amb, dtype=np.int64))] if g else []
    if gens:
        cols.append(np.array([np.asarray(v, dtype=np.int64).reshape(g) for v in gens]).T)
    rel = np.hstack(cols) if cols else np.zeros((0, 0), dtype=np.int64)
    quo, proj, sect = present(rel, modulus, generators=g)
    return quo, proj, sect


def kernel_gens_of_matrix(matrix: np.ndarray, dom_factors, cod_factors, modulus: Modulus) -> List[np.ndarray]:
    sys = CongruenceSystem(modulus)
    sys.add_unknowns(list(dom_factors))
    for j, e in enumerate(cod_factors):
        sys.add_equation({i: int(matrix[j, i]) for i in range(len(dom_factors))}, 0, e)
    out = sys.solve()
    assert out is not None
    return out[1]


def kernel_of_hom(f: ModHom):
    """(K, incl) with K the kernel of f and incl its inclusion into dom(f)."""
    gens = kernel_gens_of_matrix(f.matrix, f.domain.factors, f.codomain.factors, f.modulus)
    return subgroup_with_inclusion(f.domain, gens)


def image_of_hom(f: ModHom):
    gens = [f.matrix[:, i] for i in range(f.domain.rank)]
    return subgroup_with_inclusion(f.codomain, gens)


def cokernel_of_hom(f: ModHom):
    """(C, proj) with proj: cod(f) -> C the canonical projection."""
    gens = [f.matrix[:, i] for i in range(f.domain.rank)]
    quo, proj, sect = quotient_with_projection(f.codomain.factors, gens, f.modulus)
    return quo, ModHom(f.codomain, quo, proj), sect


def is_mono(f: ModHom) -> bool:
    gens = kernel_gens_of_matrix(f.matrix, f.domain.factors, f.codomain.factors, f.modulus)
    return all(not g.any() for g in gens)


def is_epi(f: ModHom) -> bool:
    img, _ = image_of_hom(f)
    return img.cardinality == f.codomain.cardinality


# ---------------------------------------------------------------------------
# hom groups and Matlis duality
# ---------------------------------------------------------------------------


def hom_group(m: FinMod, nmod: FinMod) -> Tuple[FinMod, List[ModHom]]:
    """The group Hom(M, N) in canonical form with matching generator homs."""
    if m.modulus != nmod.modulus:
        raise ValueError("modulus mismatch")
    orders = hom_entry_orders(m.factors, nmod.factors).reshape(-1)
    scales = hom_entry_scales(m.factors, nmod.factors).reshape(-1)
    rel = np.diag(orders) if len(orders) else np.zeros((0, 0), dtype=np.int64)
    grp, _, sect = present(rel, m.modulus, generators=len(orders))
    basis = []
    for k in range(grp.rank):
        entries = (sect[:, k] * scales) % m.modulus.n
        basis.append(ModHom(m, nmod, entries.reshape(nmod.rank, m.rank)))
    return grp, basis


def matlis_dual(m: FinMod) -> FinMod:
    """M+ = Hom(M, Z/n); for finite modules this has the same factors as M."""
    return FinMod(m.modulus, m.factors)


def matlis_dual_hom(f: ModHom) -> ModHom:
    """Contravariant dual: (f+)[i, j] acts on dual coordinates.

    The dual coordinate u_j of N+ stands for the functional sending the j-th
    generator to u_j * (n / e_j); pulling back along f and re-expressing in
    the dual coordinates of M+ yields the matrix below.
    """
    n = f.modulus.n
    dom, cod = f.domain, f.codomain
    out = np.zeros((dom.rank, cod.rank), dtype=np.int64)
    for i, d in enumerate(dom.factors):
        for j, e in enumerate(cod.factors):
            c = (int(f.matrix[j, i]) * (n // e)) % n
            out[i, j] = (c // (n // d)) % d
    return ModHom(matlis_dual(cod), matlis_dual(dom), out)


def double_dual_iso(m: FinMod) -> ModHom:
    """The natural evaluation map M -> M++ (the identity in coordinates)."""
    return ModHom(m, matlis_dual(matlis_dual(m)), np.eye(m.rank, dtype=np.int64))


def eval_pairing(m: FinMod, x, functional) -> int:
    """<x, u> for x in M and u in M+ (dual coordinates)."""
    n = m.modulus.n
    x = m.reduce(x)
    u = np.asarray(functional, dtype=np.int64).reshape(m.rank)
    total = 0
    for i, d in enumerate(m.factors):
        total = (total + int(u[i]) * (n // d) * int(x[i])) % n
    return total


# ---------------------------------------------------------------------------
# module classes: injective / projective / flat / strongly fp-injective
# ---------------------------------------------------------------------------


def _torsion_generators(m: FinMod, k: int) -> List[Tuple[int, np.ndarray]]:
    """Generators of the k-torsion subgroup {y : k y == 0}, one per factor."""
    gens = []
    for i, d in enumerate(m.factors):
        c = d // gcd(k, d)
        if c % d != 0:
            v = np.zeros(m.rank, dtype=np.int64)
            v[i] = c
            gens.append((i, v))
    return gens


def is_injective_module(m: FinMod) -> Tuple[bool, dict]:
    """Baer criterion over Z/n: every hom from an ideal (k) extends to Z/n.

    A hom (k) -> M is an element y with (n/k) y == 0; it extends iff
    y in k M.  The certificate stores, per ideal, either extension witnesses
    or the first failing ideal map.
    """
    n = m.modulus.n
    checks = []
    for k in m.modulus.divisors:
        if k == n:
            continue
        torsion = _torsion_generators(m, n // k)
        for i, y in torsion:
            d = m.factors[i]
            c = int(y[i])
            g = gcd(k, d)
            if c % g != 0:
                witness = {"ideal": k, "map_sends_generator_to": y.tolist()}
                return False, {"criterion": "baer", "witness": witness}
            # witness x with k x == y
            gg, s, _ = xgcd(k, d)
            x = np.zeros(m.rank, dtype=np.int64)
            x[i] = (s * (c // g)) % d
            checks.append({"ideal": k, "torsion_gen": y.tolist(), "extension": x.tolist()})
    return True, {"criterion": "baer", "extensions": checks}


def is_projective_module(m: FinMod) -> Tuple[bool, dict]:
    """Over Z/n projective == injective == flat: each p-part must be free."""
    ok, cert = is_injective_module(m)
    return ok, {"criterion": "p-parts free (projective = injective over Z/n)", "baer": cert}


def is_flat_module(m: FinMod) -> Tuple[bool, dict]:
    ok, cert = is_injective_module(m)
    return ok, {"criterion": "p-parts free (flat = injective over Z/n)", "baer": cert}


def ext_module(f: FinMod, m: FinMod, degree: int) -> FinMod:
    """Ext^i(F, M) over Z/n via the 2-periodic free resolutions of cyclics.

    For i >= 1 and cyclic arguments the value is cyclic of order
    gcd(n/d, e) * gcd(d, e) / e, independent of i.
    """
    if f.modulus != m.modulus:
        raise ValueError("modulus mismatch")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    n = f.modulus.n
    if degree == 0:
        return hom_group(f, m)[0]
    orders = []
    for d in f.factors:
        for e in m.factors:
            k = gcd(n // d, e) * gcd(d, e) // e
            if k > 1:
                orders.append(k)
    return FinMod(f.modulus, canonical_chain(orders, n))


def is_strongly_fp_injective_module(m: FinMod) -> bool:
    """Over the noetherian ring Z/n this coincides with injectivity."""
    return is_injective_module(m)[0]


def sfp_ext_oracle(m: FinMod) -> bool:
    """Definitional check: Ext^i(Z/d, M) == 0 for all d | n and i = 1, 2.

    The free resolution of Z/d over Z/n is eventually 2-periodic, so the
    first two degrees decide all higher ones.
    """
    n = m.modulus.n
    for d in m.modulus.divisors:
        if d == 1:
            continue
        f = cyclic(m.modulus, d) if d > 1 else zero_mod(m.modulus)
        for i in (1, 2):
            if not ext_module(f, m, i).is_zero:
                return False
    return True


# ---------------------------------------------------------------------------
# short exact sequences: splitness and purity
# ---------------------------------------------------------------------------


class ModSES:
    """0 -> L --f--> M --g--> N -> 0 of finite Z/n-modules, certified exact."""

    def __init__(self, f: ModHom, g: ModHom):
        if f.codomain != g.domain:
            raise ValueError("middle terms disagree")
        comp = g.compose(f)
        if not comp.is_zero:
            raise ValueError("g o f is nonzero")
        if not is_mono(f):
            raise ValueError("f is not injective")
        if not is_epi(g):
            raise ValueError("g is not surjective")
        if f.domain.cardinality * g.codomain.cardinality != f.codomain.cardinality:
            raise ValueError("cardinalities rule out exactness at the middle")
        self.f = f
        self.g = g
        self.certificate = {
            "left": f.domain.cardinality,
            "middle": f.codomain.cardinality,
            "right": g.codomain.cardinality,
        }

    @property
    def modulus(self) -> Modulus:
        return self.f.modulus


def retraction_of(f: ModHom) -> Optional[ModHom]:
    """r with r o f == id on dom(f), if one exists."""
    sysm = HomSystem(f.modulus)
    var = sysm.add_hom_unknown(f.codomain.factors, f.domain.factors)
    rhs = np.eye(f.domain.rank, dtype=np.int64)
    sysm.add_matrix_equation(
        [(var, np.eye(f.domain.rank, dtype=np.int64), f.matrix, 1)], rhs, f.domain.factors
    )
    out = sysm.solve()
    if out is None:
        return None
    return ModHom(f.codomain, f.domain, out[0][0])


def section_of(g: ModHom) -> Optional[ModHom]:
    """s with g o s == id on cod(g), if one exists."""
    sysm = HomSystem(g.modulus)
    var = sysm.add_hom_unknown(g.codomain.factors, g.domain.factors)
    rhs = np.eye(g.codomain.rank, dtype=np.int64)
    sysm.add_matrix_equation(
        [(var, g.matrix, np.eye(g.codomain.rank, dtype=np.int64), 1)], rhs, g.codomain.factors
    )
    out = sysm.solve()
    if out is None:
        return None
    return ModHom(g.codomain, g.domain, out[0][0])


def is_split(s: ModSES) -> Optional[ModHom]:
    """A retraction of s.f when the sequence splits, else None."""
    return retraction_of(s.f)


def is_pure_module_ses(s: ModSES) -> Tuple[bool, Optional[int]]:
    """Purity test by Hom(Z/d, -) exactness for every divisor d of n.

    Over Z/n every finitely presented module is a finite direct sum of
    cyclics, so these test objects suffice.  Returns a failing divisor as
    witness when impure.
    """
    n = s.modulus.n
    m, c = s.g.domain, s.g.codomain
    for d in s.modulus.divisors:
        if d == 1:
            continue
        for _, y in _torsion_generators(c, d):
            sysm = CongruenceSystem(s.modulus)
            sysm.add_unknowns(list(m.factors))
            for j, e in enumerate(c.factors):
                sysm.add_equation(
                    {i: int(s.g.matrix[j, i]) for i in range(m.rank)}, int(y[j]), e
                )
            for i, mf in enumerate(m.factors):
                sysm.add_equation({i: d % mf}, 0, mf)
            if sysm.solve() is None:
                return False, d
    return True, None


def is_pure_mono_module(f: ModHom) -> bool:
    """f is a pure mono iff its dual is a split epi."""
    if not is_mono(f):
        raise ValueError("map is not a monomorphism")
    return section_of(matlis_dual_hom(f)) is not None


def is_pure_epi_module(g: ModHom) -> bool:
    """g is a pure epi iff its dual is a split mono."""
    if not is_epi(g):
        raise ValueError("map is not an epimorphism")
    return retraction_of(matlis_dual_hom(g)) is not None


# ---------------------------------------------------------------------------
# Gorenstein certificates at the module level
# ---------------------------------------------------------------------------


class ModComplex:
    """A window of a complex of modules; diff[k] maps degree k to k-1."""

    def __init__(self, components: Dict[int, FinMod], diffs: Dict[int, ModHom]):
        self.components = dict(components)
        self.diffs = dict(diffs)
        for k, d in self.diffs.items():
            if d.domain != self.components[k] or d.codomain != self.components[k - 1]:
                raise ValueError(f"differential at degree {k} has wrong endpoints")
        for k in self.diffs:
            if k - 1 in self.diffs:
                if not self.diffs[k - 1].compose(self.diffs[k]).is_zero:
                    raise ValueError(f"d o d != 0 at degree {k}")

    def degrees(self):
        return sorted(self.components)

    def is_exact_at(self, k: int) -> bool:
        if k + 1 not in self.diffs or k not in self.diffs:
            raise ValueError(f"degree {k} is not interior to the window")
        ker, _ = kernel_of_hom(self.diffs[k])
        img, _ = image_of_hom(self.diffs[k + 1])
        if ker.cardinality != img.cardinality:
            return False
        return self.diffs[k].compose(self.diffs[k + 1]).is_zero

    def interior_exact(self) -> bool:
        degs = self.degrees()
        return all(self.is_exact_at(k) for k in degs[1:-1])

    def dual(self) -> "ModComplex":
        comps = {-k: matlis_dual(m) for k, m in self.components.items()}
        diffs = {}
        for k, d in self.diffs.items():
            diffs[-(k - 1)] = matlis_dual_hom(d)
        return ModComplex(comps, diffs)


def gi_module_certificate(m: FinMod, window: int = 3) -> Tuple[ModComplex, ModHom]:
    """A totally acyclic complex of free modules with M as its degree-0 cycle.

    Built per invariant factor by splicing the 2-periodic complexes with
    differentials alternating multiplication by d and by n/d; over the
    quasi-Frobenius ring Z/n this always succeeds.  Returns the complex and
    the iso from M onto ker(d_0).
    """
    n = m.modulus.n
    free = free_mod(m.modulus, m.rank)
    comps = {k: free for k in range(-window, window + 1)}
    diffs = {}
    for k in range(-window + 1, window + 1):
        if k % 2 == 0:
            diag = [d for d in m.factors]
        else:
            diag = [n // d for d in m.factors]
        diffs[k] = ModHom(free, free, np.diag(np.array(diag, dtype=np.int64)) if m.rank else np.zeros((0, 0)))
    cx = ModComplex(comps, diffs)
    witness = ModHom(m, free, np.diag(np.array([n // d for d in m.factors], dtype=np.int64)) if m.rank else np.zeros((0, 0)))
    return cx, witness


def verify_gi_certificate(m: FinMod, cx: ModComplex, witness: ModHom) -> bool:
    """Replay a Gorenstein certificate: exactness, total acyclicity on the
    window, and that the witness embeds M onto the degree-0 cycles."""
    if not cx.interior_exact():
        return False
    if not cx.dual().interior_exact():
        return False
    if witness.domain != m:
        return False
    if not is_mono(witness):
        return False
    if 0 not in cx.diffs:
        return False
    if not cx.diffs[0].compose(witness).is_zero:
        return False
    ker, _ = kernel_of_hom(cx.diffs[0])
    img, _ = image_of_hom(witness)
    return ker.cardinality == img.cardinality and ker.factors == m.factors
