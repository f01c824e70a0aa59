"""Seeded random instance generation and the identity-verification harness.

Instances are quasi-homogeneous factored polynomials: random positive
weights, one or two pairwise coprime squarefree factors supported on at
least two monomials of a common weighted degree (or a plain variable when a
multiplicity above 1 is drawn) and random shift vectors with u + v constant.
Every instance is pushed through the full pipeline and the exact-integer
identities are reported claim by claim.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .poly import Polynomial, squarefree_test
from .groebner import polynomial_gcd
from .derivmod import FactoredPolynomial, GradedContext, generalized_log_module
from .hilbert import (
    _monomials_of_weighted_degree as _weighted_monomials,
    claim,
    quotient_ring_hp,
    dimension_via_pole,
    report_ok,
    verify_degree_identity,
)
from .resolution import (
    Resolution,
    alternating_degree_sum,
    free_resolution,
    pad_with_trivial_pair,
)

MAX_TOTAL_WEIGHTED_DEGREE = 12


def _monomials_of_weighted_degree(u, d):
    return list(_weighted_monomials(u, d))


def random_context(rng: random.Random, n: int) -> GradedContext:
    u = tuple(rng.randint(1, 4) for _ in range(n))
    k = rng.randint(0, max(u) + 2)
    return GradedContext.from_uk(u, k)


def random_qh_polynomial(
    rng: random.Random, u: tuple[int, ...], max_degree: int
) -> Polynomial | None:
    """Squarefree quasi-homogeneous polynomial with at least two monomials
    of a common weighted degree, or None if the draw fails."""
    n = len(u)
    degrees = [
        d for d in range(2, max_degree + 1) if len(_monomials_of_weighted_degree(u, d)) >= 2
    ]
    if not degrees:
        return None
    d = rng.choice(degrees)
    monos = _monomials_of_weighted_degree(u, d)
    size = rng.randint(2, min(4, len(monos)))
    support = rng.sample(monos, size)
    terms = {}
    for m in support:
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        den = rng.choice([1, 1, 1, 2])
        terms[m] = Fraction(num, den)
    p = Polynomial(n, terms)
    if p.is_constant():
        return None
    ok, _ = squarefree_test(p)
    return p if ok else None


def random_instance(
    rng: random.Random, max_vars: int = 3, max_degree: int = 6
) -> tuple[FactoredPolynomial, GradedContext]:
    """One admissible harness instance; retries draws until the factored
    polynomial passes the squarefree and coprimality requirements and the
    total weighted degree stays desk sized."""
    while True:
        n = rng.randint(2, max_vars)
        ctx = random_context(rng, n)
        r = rng.choice([1, 1, 1, 2])
        factors: list[tuple[Polynomial, int]] = []
        total = 0
        okay = True
        for _ in range(r):
            if rng.random() < 0.25:
                i = rng.randrange(n)
                f = Polynomial.variable(i, n)
                e = rng.randint(1, 3)
                d = ctx.u[i]
            else:
                f = random_qh_polynomial(rng, ctx.u, max_degree)
                if f is None:
                    okay = False
                    break
                e = rng.randint(1, 3) if rng.random() < 0.35 else 1
                from .poly import u_degree

                d = u_degree(f, ctx.u)
            if any(not polynomial_gcd(f, g).is_constant() for g, _ in factors):
                okay = False
                break
            total += e * d
            factors.append((f, e))
        if not okay or not factors or total > MAX_TOTAL_WEIGHTED_DEGREE:
            continue
        return FactoredPolynomial(tuple(factors)), ctx


def shift_context(ctx: GradedContext, by: int = 1) -> GradedContext:
    return GradedContext(
        ctx.u, tuple(x + by for x in ctx.v), None if ctx.k is None else ctx.k + by
    )


def verify_v_shift(factored: FactoredPolynomial, ctx: GradedContext) -> dict:
    """Recompute chi with v replaced by v + 1; the difference must be the
    variable count."""
    first = verify_degree_identity(factored, ctx, with_oracle=False)
    second = verify_degree_identity(factored, shift_context(ctx), with_oracle=False)
    claims = [
        claim(
            "shifting v by 1 changes chi by the variable count",
            second["chi"] - first["chi"],
            ctx.nvars,
        )
    ]
    return {"claims": claims, "ok": report_ok(claims)}


def verify_resolution_independence(
    factored: FactoredPolynomial, ctx: GradedContext
) -> dict:
    """A deliberately non-minimal resolution (redundant generators plus a
    padded trivial pair) and the default one agree on the alternating
    degree sum."""
    dm = ctx.derivation_module()
    gens = generalized_log_module(factored, ctx)
    res = free_resolution(dm, gens)
    f = factored.expand() if factored.factors else Polynomial.constant(1, ctx.nvars)
    zero = Polynomial.zero(ctx.nvars)
    redundant = list(gens)
    redundant.append(tuple(f if i == 0 else zero for i in range(ctx.nvars)))
    res_redundant = free_resolution(dm, redundant)
    res_padded = pad_with_trivial_pair(res_redundant, 1, max(res.f0_shifts) + 1)
    base = alternating_degree_sum(res)
    claims = [
        claim("redundant-generator resolution has the same degree sum",
              alternating_degree_sum(res_redundant), base),
        claim("padded resolution has the same degree sum",
              alternating_degree_sum(res_padded), base),
    ]
    return {"claims": claims, "ok": report_ok(claims)}


def verify_annihilator_and_dimension(
    factored: FactoredPolynomial, ctx: GradedContext
) -> dict:
    from .derivmod import annihilator_check

    ann = annihilator_check(factored, ctx)
    hp = quotient_ring_hp([factored.expand()], ctx)
    claims = [
        claim("the annihilator of the cokernel is the principal ideal of f",
              ann["ok"], True),
        claim("pole order of the hypersurface quotient is n - 1",
              dimension_via_pole(hp), ctx.nvars - 1),
    ]
    return {"claims": claims, "ok": report_ok(claims)}


def corrupted_claims(factored: FactoredPolynomial, ctx: GradedContext) -> list[dict]:
    """Negative control: evaluate the degree-sum identity on a resolution
    whose first shift was tampered with; the claim must fail."""
    from .poly import u_degree

    dm = ctx.derivation_module()
    gens = generalized_log_module(factored, ctx)
    res = free_resolution(dm, gens)
    bad = Resolution(
        (res.f0_shifts[0] + 1,) + res.f0_shifts[1:],
        res.generator_map,
        res.maps,
        res.weights,
        res.graded,
        res.ambient,
    )
    expected = u_degree(factored.expand(), ctx.u) + ctx.v_sum
    return [
        claim(
            "alternating degree sum equals deg(f) + |v| [corrupted resolution]",
            alternating_degree_sum(bad),
            expected,
        )
    ]


def run_harness(
    n_instances: int,
    max_vars: int = 3,
    max_degree: int = 6,
    seed: int = 0,
    d_max: int = 12,
    inject_fault: bool = False,
    heavy_every: int = 10,
) -> dict:
    """Generate seeded instances and run the identity checks on each.

    Annihilator/pole and resolution-independence checks are heavier, so they
    run on every `heavy_every`-th instance (at least ten times across a
    hundred instances).  Fault injection appends a deliberately failing
    claim to the first instance.
    """
    rng = random.Random(seed)
    instances = []
    all_ok = True
    for index in range(n_instances):
        factored, ctx = random_instance(rng, max_vars, max_degree)
        report = verify_degree_identity(factored, ctx, d_max=d_max)
        claims = list(report["claims"])
        claims.extend(verify_v_shift(factored, ctx)["claims"])
        heavy = index % heavy_every == 0
        if heavy:
            claims.extend(verify_resolution_independence(factored, ctx)["claims"])
            claims.extend(verify_annihilator_and_dimension(factored, ctx)["claims"])
        if inject_fault and index == 0:
            claims.extend(corrupted_claims(factored, ctx))
        ok = report_ok(claims)
        all_ok = all_ok and ok
        instances.append(
            {
                "index": index,
                "nvars": ctx.nvars,
                "u": list(ctx.u),
                "v": list(ctx.v),
                "k": ctx.k,
                "factors": [
                    {"terms": len(f.terms), "multiplicity": e}
                    for f, e in factored.factors
                ],
                "degree": report["degree"],
                "chi": report["chi"],
                "expected": report["expected"],
                "claims": claims,
                "ok": ok,
            }
        )
    return {"instances": instances, "count": n_instances, "ok": all_ok}
