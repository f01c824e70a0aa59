"""Graded derivation modules and generalized logarithmic derivations.

A derivation sum(a_i * d_i) is represented by its coefficient vector, an
element of the rank-n free module whose slot i carries the shift v_i: under
the weighting u on variables and v on derivation slots, the degree of
a_i * d_i is udeg(a_i) + v_i.

The module of derivations preserving the ideal powers of a factored
polynomial is computed as a syzygy kernel: delta(f) = h * f^k is exactly a
syzygy of (df/dx_1, ..., df/dx_n, f^k), and the factored module is the
intersection over the factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    MonomialOrder,
    NotQuasiHomogeneous,
    Polynomial,
    partial_derivative,
    squarefree_test,
    u_degree,
)
from .groebner import (
    FreeModule,
    Vector,
    buchberger,
    exact_div,
    intersect,
    module_equal,
    module_quotient,
    normal_form,
    polynomial_gcd,
    ring_module,
    syzygies,
    try_vector_degree,
    vec_is_zero,
)


@dataclass(frozen=True)
class GradedContext:
    """Weights u on the variables, shifts v on the derivation slots and,
    when u + v is constant, the common value k required by the graded
    theory."""

    u: tuple[int, ...]
    v: tuple[int, ...]
    k: int | None = None

    def __post_init__(self):
        if any(w <= 0 for w in self.u):
            from .poly import NonPositiveWeightError

            raise NonPositiveWeightError(f"weights must be positive, got {self.u}")
        if len(self.u) != len(self.v):
            raise ValueError("u and v must have the same length")
        if self.k is not None and any(a + b != self.k for a, b in zip(self.u, self.v)):
            raise ValueError(f"u + v must equal ({self.k},...,{self.k})")

    @classmethod
    def from_uk(cls, u: tuple[int, ...], k: int) -> "GradedContext":
        return cls(tuple(u), tuple(k - w for w in u), k)

    @classmethod
    def standard(cls, n: int) -> "GradedContext":
        return cls((1,) * n, (0,) * n, 1)

    @property
    def nvars(self) -> int:
        return len(self.u)

    @property
    def v_sum(self) -> int:
        return sum(self.v)

    def order(self) -> MonomialOrder:
        return MonomialOrder(self.u)

    def derivation_module(self) -> FreeModule:
        return FreeModule(self.nvars, self.v, self.order())

    def require_constraint(self) -> int:
        if self.k is None:
            raise ValueError("this operation requires u + v = (k,...,k)")
        return self.k


@dataclass(frozen=True)
class FactoredPolynomial:
    """User-asserted factorization f = prod f_i^{e_i}.

    Irreducibility of the factors is taken on trust; validation checks only
    what the constructions rely on, namely that each factor is nonconstant
    and squarefree and that the factors are pairwise without common factors.
    """

    factors: tuple[tuple[Polynomial, int], ...]

    def __post_init__(self):
        for f, e in self.factors:
            if e < 1:
                raise ValueError("multiplicities must be >= 1")
            if f.is_zero():
                raise ValueError("zero factor")

    @classmethod
    def single(cls, f: Polynomial, e: int = 1) -> "FactoredPolynomial":
        return cls(((f, e),))

    @property
    def nvars(self) -> int:
        return self.factors[0][0].nvars if self.factors else 0

    def expand(self) -> Polynomial:
        if not self.factors:
            raise ValueError("empty factorization has no intrinsic variable count")
        result = Polynomial.constant(1, self.nvars)
        for f, e in self.factors:
            result = result * f ** e
        return result

    def reduced(self) -> Polynomial:
        result = Polynomial.constant(1, self.nvars)
        for f, _ in self.factors:
            result = result * f
        return result

    def validate(self):
        for f, _ in self.factors:
            if f.is_constant():
                raise ValueError("constant factor")
            ok, witness = squarefree_test(f)
            if not ok:
                raise ValueError(
                    f"factor is not squarefree (repeated part witness has terms {sorted(witness.terms)})"
                )
        for i in range(len(self.factors)):
            for j in range(i + 1, len(self.factors)):
                g = polynomial_gcd(self.factors[i][0], self.factors[j][0])
                if not g.is_constant():
                    raise ValueError(
                        f"factors {i} and {j} share the common factor with terms {sorted(g.terms)}"
                    )


def format_derivation(coeffs: Vector, names: list[str], order=None) -> str:
    """Derivations print as coefficient * d_variable terms, e.g.
    `9*x*d_x + 8*y*d_y + 6*z*d_z`."""
    from .poly import format_poly

    pieces = []
    for name, a in zip(names, coeffs):
        if a.is_zero():
            continue
        text = format_poly(a, names, order)
        if text == "1":
            piece = f"d_{name}"
        elif text == "-1":
            piece = f"-d_{name}"
        elif len(a.terms) == 1:
            piece = f"{text}*d_{name}"
        else:
            piece = f"({text})*d_{name}"
        pieces.append(piece)
    if not pieces:
        return "0"
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += f" - {piece[1:]}"
        else:
            out += f" + {piece}"
    return out


def parse_derivation(text: str, names: list[str]) -> Vector:
    """Inverse of format_derivation: the d_* symbols are parsed as extra
    variables, and every term must be linear in them."""
    from .poly import parse_poly

    n = len(names)
    extended = list(names) + [f"d_{name}" for name in names]
    p = parse_poly(text, extended)
    comps: list[dict] = [dict() for _ in range(n)]
    for exps, c in p.terms.items():
        dpart = exps[n:]
        if sum(dpart) != 1:
            raise ValueError(f"term is not linear in the derivation symbols: {text!r}")
        slot = dpart.index(1)
        comps[slot][exps[:n]] = c
    return tuple(Polynomial(n, comp) for comp in comps)


def apply_derivation(coeffs: Vector, g: Polynomial) -> Polynomial:
    """Value sum(a_i * dg/dx_i) of the derivation on g."""
    if len(coeffs) != g.nvars:
        raise ValueError("derivation and polynomial have different variable counts")
    out = Polynomial.zero(g.nvars)
    for i, a in enumerate(coeffs):
        if not a.is_zero():
            out = out + a * partial_derivative(g, i)
    return out


def euler_derivation(u: tuple[int, ...]) -> Vector:
    """sum(u_i * x_i * d_i); scales any u-homogeneous g of degree d to d*g."""
    n = len(u)
    return tuple(Polynomial.variable(i, n) * u[i] for i in range(n))


def derivation_degree(ctx: GradedContext, coeffs: Vector) -> int | None:
    return try_vector_degree(ctx.derivation_module(), coeffs)


def log_derivations(f: Polynomial, k: int, ctx: GradedContext) -> list[Vector]:
    """Generators of the derivations delta with delta(f) in <f^k>.

    Computed as syzygies of (df/dx_1, ..., df/dx_n, f^k) projected onto the
    first n slots; when f is u-homogeneous the generators are homogeneous in
    the (u, v)-grading.
    """
    if f.is_constant():
        raise ValueError("constant polynomial")
    if k < 1:
        raise ValueError("power must be >= 1")
    n = ctx.nvars
    if f.nvars != n:
        raise ValueError("variable count mismatch with the context")
    ring = ring_module(n, ctx.order())
    columns = [(partial_derivative(f, i),) for i in range(n)] + [(f ** k,)]
    try:
        d = u_degree(f, ctx.u)
        degrees = tuple(d - ctx.u[i] for i in range(n)) + (k * d,)
    except NotQuasiHomogeneous:
        degrees = None
    _, syz = syzygies(ring, columns, degrees=degrees)
    return [s[:n] for s in syz if not vec_is_zero(s[:n])]


def generalized_log_module(
    factored: FactoredPolynomial, ctx: GradedContext, validate: bool = True
) -> list[Vector]:
    """Canonical (reduced-basis) generators of the intersection over the
    factors of the per-factor logarithmic derivation modules.  An empty
    factorization denotes a nonzero constant, whose module is everything."""
    dm = ctx.derivation_module()
    if not factored.factors:
        return [dm.unit_vector(i) for i in range(dm.rank)]
    if validate:
        factored.validate()
    gens: list[Vector] | None = None
    for f, e in factored.factors:
        piece = log_derivations(f, e, ctx)
        gens = piece if gens is None else intersect(dm, gens, piece)
    return list(buchberger(dm, gens).elements)


@dataclass(frozen=True)
class SaitoCertificate:
    is_basis: bool
    constant: Fraction | None
    determinant: Polynomial
    reason: str | None = None


def _det(matrix: list[list[Polynomial]]) -> Polynomial:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    nvars = matrix[0][0].nvars
    total = Polynomial.zero(nvars)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        cofactor = entry * _det(minor)
        total = total + cofactor if j % 2 == 0 else total - cofactor
    return total


def in_log_module(delta: Vector, factored: FactoredPolynomial) -> bool:
    """Per-factor membership delta(f_i) in <f_i^{e_i}> (a divisibility test)."""
    for f, e in factored.factors:
        value = apply_derivation(delta, f)
        if value.is_zero():
            continue
        try:
            exact_div(value, f ** e)
        except ValueError:
            return False
    return True


def saito_check(deltas: list[Vector], factored: FactoredPolynomial) -> SaitoCertificate:
    """Freeness certificate: n derivations in the module form a basis iff
    the determinant of their coefficient matrix is a nonzero constant
    multiple of f."""
    f = factored.expand()
    n = f.nvars
    if len(deltas) != n:
        raise ValueError(f"need exactly {n} derivations, got {len(deltas)}")
    for idx, delta in enumerate(deltas):
        if not in_log_module(delta, factored):
            raise ValueError(f"derivation {idx} is not in the module")
    matrix = [[deltas[j][i] for j in range(n)] for i in range(n)]
    det = _det(matrix)
    if det.is_zero():
        return SaitoCertificate(False, None, det, "zero determinant")
    try:
        q = exact_div(det, f)
    except ValueError:
        return SaitoCertificate(False, None, det, "determinant is not a multiple of f")
    if q.is_constant():
        return SaitoCertificate(True, q.constant_coefficient(), det)
    return SaitoCertificate(False, None, det, "determinant / f is not constant")


def annihilator_check(
    factored: FactoredPolynomial, ctx: GradedContext
) -> dict:
    """Computes the ideal (D(f) : D) and verifies it equals <f>."""
    dm = ctx.derivation_module()
    gens = generalized_log_module(factored, ctx)
    units = [dm.unit_vector(i) for i in range(dm.rank)]
    ideal = module_quotient(dm, gens, units)
    f = factored.expand()
    ring = ring_module(ctx.nvars, ctx.order())
    ok = module_equal(ring, [(g,) for g in ideal], [(f,)])
    return {"ok": ok, "ideal": ideal, "f": f}


def homogeneous_components(ctx: GradedContext, coeffs: Vector) -> dict[int, Vector]:
    """Split a derivation by the common degree udeg(a_i) + v_i of its terms."""
    n = ctx.nvars
    buckets: dict[int, list[dict]] = {}
    for slot, a in enumerate(coeffs):
        for exps, c in a.terms.items():
            d = sum(e * w for e, w in zip(exps, ctx.u)) + ctx.v[slot]
            comp = buckets.setdefault(d, [dict() for _ in range(n)])
            comp[slot][exps] = c
    return {
        d: tuple(Polynomial(n, comp[i]) for i in range(n))
        for d, comp in sorted(buckets.items())
    }


def is_graded_submodule(
    gens: list[Vector], ctx: GradedContext
) -> tuple[bool, list[dict[int, Vector]]]:
    """True iff every generator's homogeneous components stay in the module."""
    dm = ctx.derivation_module()
    gb = buchberger(dm, gens)
    decompositions = []
    graded = True
    for g in gens:
        comps = homogeneous_components(ctx, g)
        decompositions.append(comps)
        for comp in comps.values():
            if not vec_is_zero(normal_form(dm, comp, gb)):
                graded = False
    return graded, decompositions
