"""Buchberger Groebner bases for submodules of shifted free modules.

Elements of a free module of rank r are tuples of r polynomials.  A term of
an element is a pair (slot, exponents); terms are compared by shifted
weighted degree first (so a graded order on the module refines the grading),
then by the ring order, with lower slot index winning ties.  An optional
block split turns the order into an elimination order for the leading block
of slots, which is how syzygies are extracted.

Everything is exact over Q and deterministic: bases are fully interreduced,
made monic and sorted, so the reduced basis of a module under a fixed order
is unique and normal forms are canonical.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    Exponents,
    MonomialOrder,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

Vector = tuple[Polynomial, ...]
FlatTerm = tuple[int, Exponents]


@dataclass(frozen=True)
class FreeModule:
    """Ambient free module: rank = len(shifts), slot i carries shift[i].

    Slots at index >= block_split (when set) are ordered strictly below the
    leading block, regardless of degree.
    """

    nvars: int
    shifts: tuple[int, ...]
    order: MonomialOrder
    block_split: int | None = None

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def term_key(self, slot: int, exps: Exponents) -> tuple:
        block = 1 if self.block_split is None or slot < self.block_split else 0
        elim, wdeg, tail = self.order.key_parts(exps)
        return (block, elim, wdeg + self.shifts[slot], tail, -slot)

    def zero_vector(self) -> Vector:
        return tuple(Polynomial.zero(self.nvars) for _ in range(self.rank))

    def unit_vector(self, slot: int) -> Vector:
        one = Polynomial.constant(1, self.nvars)
        zero = Polynomial.zero(self.nvars)
        return tuple(one if i == slot else zero for i in range(self.rank))


def ring_module(nvars: int, order: MonomialOrder) -> FreeModule:
    return FreeModule(nvars, (0,), order)


def vec_is_zero(vec: Vector) -> bool:
    return all(p.is_zero() for p in vec)


def vec_poly_mul(a: Vector, p: Polynomial) -> Vector:
    return tuple(q * p for q in a)


def vec_sort_key(vec: Vector) -> tuple:
    return tuple(p.sort_key() for p in vec)


def flatten(vec: Vector) -> dict[FlatTerm, Fraction]:
    flat: dict[FlatTerm, Fraction] = {}
    for slot, p in enumerate(vec):
        for exps, c in p.terms.items():
            flat[(slot, exps)] = c
    return flat


def unflatten(module: FreeModule, flat: dict[FlatTerm, Fraction]) -> Vector:
    comps: list[dict] = [{} for _ in range(module.rank)]
    for (slot, exps), c in flat.items():
        comps[slot][exps] = c
    return tuple(Polynomial._raw(module.nvars, d) for d in comps)


def vector_degree(module: FreeModule, vec: Vector) -> int:
    """Common shifted weighted degree of all terms; raises on mixed degrees
    or on the zero vector."""
    degree = None
    for slot, p in enumerate(vec):
        for exps in p.terms:
            d = module.order.main_degree(exps) + module.shifts[slot]
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError(f"element is not homogeneous: degrees {degree} and {d}")
    if degree is None:
        raise ValueError("the zero vector has no degree")
    return degree


def try_vector_degree(module: FreeModule, vec: Vector) -> int | None:
    try:
        return vector_degree(module, vec)
    except ValueError:
        return None


def vector_degree_bound(module: FreeModule, vec: Vector) -> int:
    """Max shifted total degree over all terms (the filtration bound used
    when the element is not homogeneous)."""
    bound = None
    for slot, p in enumerate(vec):
        if p.is_zero():
            continue
        d = p.total_degree() + module.shifts[slot]
        bound = d if bound is None else max(bound, d)
    if bound is None:
        raise ValueError("the zero vector has no degree bound")
    return bound


class _Prepared:
    """Basis element with cached lead data for the division loop."""

    __slots__ = ("flat", "slot", "exps", "coeff", "key")

    def __init__(self, module: FreeModule, flat: dict[FlatTerm, Fraction]):
        self.flat = flat
        slot, exps = max(flat, key=lambda t: module.term_key(*t))
        self.slot = slot
        self.exps = exps
        self.coeff = flat[(slot, exps)]
        self.key = module.term_key(slot, exps)


def _prepare(module: FreeModule, vectors) -> list[_Prepared]:
    return [_Prepared(module, flatten(v)) for v in vectors if not vec_is_zero(v)]


def _divide_flat(
    module: FreeModule,
    flat: dict[FlatTerm, Fraction],
    basis: list[_Prepared],
    want_quotients: bool = False,
):
    """Full division: returns (quotients, remainder flat).

    The remainder contains no term divisible by any basis lead; with a
    reduced basis it is the canonical normal form.
    """
    work = dict(flat)
    remainder: dict[FlatTerm, Fraction] = {}
    quotients: list[dict[Exponents, Fraction]] = [{} for _ in basis] if want_quotients else []
    keyfn = module.term_key
    while work:
        slot, exps = max(work, key=lambda t: keyfn(*t))
        coeff = work[(slot, exps)]
        reduced = False
        for idx, b in enumerate(basis):
            if b.slot == slot and mono_divides(b.exps, exps):
                gamma = mono_div(exps, b.exps)
                factor = coeff / b.coeff
                for (s2, e2), c2 in b.flat.items():
                    key2 = (s2, mono_mul(e2, gamma))
                    s = work.get(key2, 0) - factor * c2
                    if s:
                        work[key2] = s
                    else:
                        work.pop(key2, None)
                if want_quotients:
                    q = quotients[idx]
                    q[gamma] = q.get(gamma, 0) + factor
                reduced = True
                break
        if not reduced:
            remainder[(slot, exps)] = coeff
            del work[(slot, exps)]
    return quotients, remainder


def divide(module: FreeModule, vec: Vector, basis_vectors) -> tuple[list[Vector], Vector]:
    """Divide vec by the basis, returning (quotients, remainder) with
    vec == sum(q_i * b_i) + remainder."""
    basis = list(basis_vectors)
    prepared = _prepare(module, basis)
    live = [i for i, b in enumerate(basis) if not vec_is_zero(b)]
    quotients_flat, rem = _divide_flat(module, flatten(vec), prepared, want_quotients=True)
    quotients = [Polynomial.zero(module.nvars) for _ in basis]
    for pos, qf in zip(live, quotients_flat):
        quotients[pos] = Polynomial._raw(module.nvars, {e: c for e, c in qf.items() if c})
    return quotients, unflatten(module, rem)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis: monic elements, sorted by lead descending."""

    module: FreeModule
    elements: tuple[Vector, ...]

    def contains(self, vec: Vector) -> bool:
        return vec_is_zero(normal_form(self.module, vec, self))


def normal_form(module: FreeModule, vec: Vector, gb: GroebnerBasis | list) -> Vector:
    elements = gb.elements if isinstance(gb, GroebnerBasis) else gb
    prepared = _prepare(module, elements)
    _, rem = _divide_flat(module, flatten(vec), prepared)
    return unflatten(module, rem)


def _spoly_flat(module: FreeModule, a: _Prepared, b: _Prepared) -> dict[FlatTerm, Fraction]:
    lcm = mono_lcm(a.exps, b.exps)
    ga, gb = mono_div(lcm, a.exps), mono_div(lcm, b.exps)
    out: dict[FlatTerm, Fraction] = {}
    inv_a = Fraction(1) / a.coeff
    for (s, e), c in a.flat.items():
        key = (s, mono_mul(e, ga))
        out[key] = out.get(key, 0) + c * inv_a
    inv_b = Fraction(1) / b.coeff
    for (s, e), c in b.flat.items():
        key = (s, mono_mul(e, gb))
        v = out.get(key, 0) - c * inv_b
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return {k: v for k, v in out.items() if v}


def _monic_flat(flat: dict[FlatTerm, Fraction], lead_coeff: Fraction) -> dict:
    inv = Fraction(1) / lead_coeff
    return {k: v * inv for k, v in flat.items()}


def buchberger(module: FreeModule, gens) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by gens.

    Pairs are processed in increasing order of the lcm term (normal
    strategy); the coprime-lcm criterion is applied only in rank-1 ambients,
    where it is valid.  Homogeneous input yields homogeneous output for any
    order, since S-vectors and reduction steps preserve degrees.
    """
    basis: list[_Prepared] = []
    pairs: list[tuple[tuple, int, int]] = []

    def push_pairs(new_idx: int):
        b = basis[new_idx]
        for i in range(new_idx):
            a = basis[i]
            if a.slot != b.slot:
                continue
            if module.rank == 1 and all(
                x == 0 or y == 0 for x, y in zip(a.exps, b.exps)
            ):
                continue
            lcm = mono_lcm(a.exps, b.exps)
            heapq.heappush(pairs, (module.term_key(a.slot, lcm), i, new_idx))

    for g in gens:
        if vec_is_zero(g):
            continue
        _, rem = _divide_flat(module, flatten(g), basis)
        if rem:
            lead = max(rem, key=lambda t: module.term_key(*t))
            basis.append(_Prepared(module, _monic_flat(rem, rem[lead])))
            push_pairs(len(basis) - 1)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        s = _spoly_flat(module, basis[i], basis[j])
        if not s:
            continue
        _, rem = _divide_flat(module, s, basis)
        if rem:
            lead_coeff = rem[max(rem, key=lambda t: module.term_key(*t))]
            basis.append(_Prepared(module, _monic_flat(rem, lead_coeff)))
            push_pairs(len(basis) - 1)

    return GroebnerBasis(module, _interreduce(module, basis))


def _interreduce(module: FreeModule, basis: list[_Prepared]) -> tuple[Vector, ...]:
    """Reduce a Groebner basis to the reduced basis.

    First drop every element whose lead is divisible by the lead of another
    kept element (processing leads in ascending order, so divisors are seen
    first); on the minimal basis, full normal-form passes can no longer
    touch any lead, so they terminate with irreducible tails.
    """
    items = sorted(basis, key=lambda b: b.key)
    kept: list[_Prepared] = []
    for b in items:
        redundant = any(
            k.slot == b.slot and mono_divides(k.exps, b.exps) for k in kept
        )
        if not redundant:
            kept.append(b)
    flats = [b.flat for b in kept]
    changed = True
    while changed:
        changed = False
        prepared = [_Prepared(module, f) for f in flats]
        for i in range(len(flats)):
            others = prepared[:i] + prepared[i + 1 :]
            _, rem = _divide_flat(module, flats[i], others)
            if rem != flats[i]:
                changed = True
            flats[i] = rem
    out = []
    for f in flats:
        lead = max(f, key=lambda t: module.term_key(*t))
        out.append((module.term_key(*lead), _monic_flat(f, f[lead])))
    out.sort(key=lambda pair: pair[0], reverse=True)
    return tuple(unflatten(module, f) for _, f in out)


def module_equal(module: FreeModule, gens_a, gens_b) -> bool:
    """Equality of generated submodules via reduced-basis uniqueness."""
    gb_a = buchberger(module, gens_a)
    gb_b = buchberger(module, gens_b)
    return [vec_sort_key(v) for v in gb_a.elements] == [
        vec_sort_key(v) for v in gb_b.elements
    ]


def syzygies(
    module: FreeModule, gens, degrees: tuple[int, ...] | None = None
) -> tuple[FreeModule, list[Vector]]:
    """Generators of the syzygy module of gens.

    Works in the extended module (ambient + one slot per generator) under an
    order eliminating the ambient block; basis elements supported entirely on
    the generator slots are exactly a generating set of the syzygies.  When
    gens are homogeneous and `degrees` lists their degrees, the syzygies are
    homogeneous in the shifted free module on those degrees.
    """
    if module.block_split is not None:
        raise ValueError("nested block splits are not supported")
    gens = list(gens)
    m = len(gens)
    if degrees is None:
        degrees = (0,) * m
    syz_module = FreeModule(module.nvars, tuple(degrees), module.order)
    if m == 0:
        return syz_module, []
    ext = FreeModule(
        module.nvars,
        module.shifts + tuple(degrees),
        module.order,
        block_split=module.rank,
    )
    zero = Polynomial.zero(module.nvars)
    one = Polynomial.constant(1, module.nvars)
    ext_gens = []
    for i, g in enumerate(gens):
        tail = [zero] * m
        tail[i] = one
        ext_gens.append(tuple(list(g) + tail))
    gb = buchberger(ext, ext_gens)
    syz = []
    for e in gb.elements:
        if all(p.is_zero() for p in e[: module.rank]):
            syz.append(tuple(e[module.rank :]))
    return syz_module, syz


def intersect(module: FreeModule, gens_a, gens_b) -> list[Vector]:
    """Generators of the intersection of two submodules.

    Uses the auxiliary-variable construction: the t-free part of a Groebner
    basis of t*A + (1-t)*B under an order eliminating t.  Output is
    homogeneous whenever both inputs are (t carries no weight).
    """
    if module.order.n_elim != 0 or module.block_split is not None:
        raise ValueError("ambient order already has an elimination block")
    n = module.nvars
    order_t = MonomialOrder(module.order.weights + (1,), n_elim=1)
    mod_t = FreeModule(n + 1, module.shifts, order_t)
    t = Polynomial.variable(n, n + 1)
    one_minus_t = Polynomial.constant(1, n + 1) - t

    ext = []
    for g in gens_a:
        ext.append(tuple(p.with_extra_vars(1) * t for p in g))
    for g in gens_b:
        ext.append(tuple(p.with_extra_vars(1) * one_minus_t for p in g))
    gb = buchberger(mod_t, ext)
    out = []
    for e in gb.elements:
        if all(all(exps[-1] == 0 for exps in p.terms) for p in e):
            out.append(tuple(p.drop_last_var() for p in e))
    return out


def exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    """Exact quotient p/d; raises if d does not divide p."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = MonomialOrder((1,) * p.nvars)
    module = ring_module(p.nvars, order)
    quotients, rem = divide(module, (p,), [(d,)])
    if not rem[0].is_zero():
        raise ValueError("division is not exact")
    return quotients[0]


def polynomial_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd via the principal-ideal intersection <p> ∩ <q> = <lcm>."""
    if p.is_zero():
        return _monic(q)
    if q.is_zero():
        return _monic(p)
    if p.is_constant() or q.is_constant():
        return Polynomial.constant(1, p.nvars)
    order = MonomialOrder((1,) * p.nvars)
    module = ring_module(p.nvars, order)
    inter = intersect(module, [(p,)], [(q,)])
    if len(inter) != 1:
        raise RuntimeError("intersection of principal ideals is not principal")
    lcm = inter[0][0]
    return _monic(exact_div(p * q, lcm))


def _monic(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    order = MonomialOrder((1,) * p.nvars)
    exps = max(p.terms, key=order.key)
    return p * (Fraction(1) / p.terms[exps])


def polynomial_gcd_many(polys) -> Polynomial:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of an empty or all-zero family")
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = polynomial_gcd(g, p)
    return _monic(g)


def module_quotient(module: FreeModule, gens_n, gens_m) -> list[Polynomial]:
    """Ideal (N : M) = {s : s*M ⊆ N}, via N ∩ S*g for each generator g of M
    followed by ideal intersection."""
    gens_m = [g for g in gens_m if not vec_is_zero(g)]
    if not gens_m:
        return [Polynomial.constant(1, module.nvars)]
    ideal: list[Polynomial] | None = None
    ring = ring_module(module.nvars, module.order)
    for g in gens_m:
        inter = intersect(module, gens_n, [g])
        pivot = next(i for i, p in enumerate(g) if not p.is_zero())
        colon = []
        for w in inter:
            h = exact_div(w[pivot], g[pivot])
            if vec_poly_mul(g, h) != tuple(w):
                raise RuntimeError("intersection element is not a multiple of g")
            colon.append(h)
        if ideal is None:
            ideal = colon
        else:
            inter_ideal = intersect(ring, [(a,) for a in ideal], [(b,) for b in colon])
            ideal = [v[0] for v in inter_ideal]
    gb = buchberger(ring, [(p,) for p in ideal])
    return [v[0] for v in gb.elements]
