from collections import Counter

import pytest

from logderiv.poly import MonomialOrder, Polynomial, parse_poly
from logderiv.groebner import FreeModule, buchberger, module_equal, ring_module
from logderiv.derivmod import FactoredPolynomial, GradedContext, generalized_log_module
from logderiv.resolution import (
    BettiTable,
    alternating_degree_sum,
    alternating_rank_sum,
    betti_numbers,
    certify_exact,
    free_resolution,
    minimize,
    pad_with_trivial_pair,
    presentation_resolution,
)

XY = ["x", "y"]


def P(text, names=XY):
    return parse_poly(text, names)


def V(*texts, names=XY):
    return tuple(P(t, names) for t in texts)


CTX2 = GradedContext((1, 1), (0, 0), 1)


def conic_resolution():
    gens = generalized_log_module(FactoredPolynomial.single(P("x^2+y^2")), CTX2)
    return free_resolution(CTX2.derivation_module(), gens)


# --- construction ------------------------------------------------------------

def test_free_module_case_has_length_zero():
    fp = FactoredPolynomial(((P("x"), 2), (P("y"), 3)))
    ctx = GradedContext((1, 1), (0, 1))
    gens = generalized_log_module(fp, ctx)
    res = free_resolution(ctx.derivation_module(), gens)
    assert res.length == 0
    assert Counter(res.f0_shifts) == Counter({2 * 1 + 0: 1, 3 * 1 + 1: 1})


def test_koszul_resolution_of_two_variables():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),)])
    assert res.length == 1
    assert sorted(res.f0_shifts) == [1, 1]
    assert res.shifts(1) == (2,)
    assert certify_exact(res)


def test_zero_module_resolution():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [])
    assert res.length == 0 and res.f0_shifts == ()
    assert alternating_degree_sum(res) == 0
    assert alternating_rank_sum(res) == 0


def test_nonhomogeneous_input_rejected_in_graded_mode():
    mod = ring_module(2, MonomialOrder((1, 1)))
    with pytest.raises(ValueError):
        free_resolution(mod, [(P("x+x^2"),)], graded=True)


def test_resolution_is_exact_for_conic():
    res = conic_resolution()
    assert certify_exact(res)
    assert res.length == 0
    assert sorted(res.f0_shifts) == [1, 1]


# --- minimize -----------------------------------------------------------------

def test_minimize_fixed_point():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),)])
    assert res.is_minimal()
    out = minimize(res)
    assert out.all_shifts() == res.all_shifts()
    assert [m.columns for m in out.maps] == [m.columns for m in res.maps]


def test_minimize_cancels_padding():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),)])
    for p in (1, 2):
        padded = pad_with_trivial_pair(res, p, 4)
        assert not padded.is_minimal()
        assert alternating_degree_sum(padded) == alternating_degree_sum(res)
        assert alternating_rank_sum(padded) == alternating_rank_sum(res)
        assert certify_exact(padded)
        out = minimize(padded)
        assert out.all_shifts() == res.all_shifts()
        assert certify_exact(out)


def test_minimize_redundant_generating_set():
    # x, y and x + y generate <x, y>; the trivial relation must cancel
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),), (P("x+y"),)])
    assert not res.is_minimal()
    assert certify_exact(res)
    out = minimize(res)
    assert sorted(out.f0_shifts) == [1, 1]
    assert out.length == 1 and out.shifts(1) == (2,)
    assert certify_exact(out)
    assert module_equal(mod, list(out.generator_map.columns), [(P("x"),), (P("y"),)])


def test_betti_invariance_across_generating_sets():
    fp = FactoredPolynomial.single(P("x^2+y^2"))
    gens = generalized_log_module(fp, CTX2)
    dm = CTX2.derivation_module()
    f = P("x^2+y^2")
    zero = Polynomial.zero(2)
    variants = [
        gens,
        gens + [(f, zero)],
        gens + [(zero, f), (f, zero)],
    ]
    tables = []
    for gen_set in variants:
        res = minimize(free_resolution(dm, gen_set))
        tables.append(betti_numbers(res).entries)
    assert tables[0] == tables[1] == tables[2]


# --- betti numbers ----------------------------------------------------------------

def test_betti_read_off_free_module():
    fp = FactoredPolynomial(((P("x"), 2), (P("y"), 3)))
    res = free_resolution(CTX2.derivation_module(), generalized_log_module(fp, CTX2))
    table = betti_numbers(res)
    assert table.entries == {(2, 0): 1, (3, 0): 1}


def test_betti_koszul():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),)])
    table = betti_numbers(res)
    assert table.entries == {(1, 0): 2, (1, 1): 1}


def test_betti_requires_minimal():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),), (P("x+y"),)])
    with pytest.raises(ValueError):
        betti_numbers(res)


def test_betti_table_render_and_triples():
    table = BettiTable({(1, 0): 2, (1, 1): 1})
    assert table.to_triples() == [
        {"p": 0, "j": 1, "b": 2},
        {"p": 1, "j": 1, "b": 1},
    ]
    assert "j\\p" in table.render()


# --- alternating sums ----------------------------------------------------------------

def test_alternating_sums_koszul():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = free_resolution(mod, [(P("x"),), (P("y"),)])
    assert alternating_degree_sum(res) == 1 + 1 - 2
    assert alternating_rank_sum(res) == 2 - 1


def test_identity_on_conic_module():
    res = conic_resolution()
    assert alternating_degree_sum(res) == 2  # deg f + |v|
    assert alternating_rank_sum(res) == 2


def test_corollary_betti_form_matches_degree_sum():
    res = minimize(conic_resolution())
    assert betti_numbers(res).weighted_alternating_sum() == alternating_degree_sum(res)


def test_entry_degrees_equal_shift_differences():
    # graded maps: entry (i, j) is zero or homogeneous of degree
    # source_shift[j] - target_shift[i]
    from logderiv.poly import u_degree

    instances = [
        conic_resolution(),
        free_resolution(
            CTX2.derivation_module(),
            generalized_log_module(
                FactoredPolynomial.single(P("x^3+x*y^2")), CTX2
            ),
        ),
    ]
    for res in instances:
        chain = [res.generator_map] + list(res.maps)
        for m in chain:
            for j, col in enumerate(m.columns):
                for i, entry in enumerate(col):
                    if entry.is_zero():
                        continue
                    expected = m.source_shifts[j] - m.target_shifts[i]
                    assert u_degree(entry, res.weights) == expected


def test_length_bound_stays_within_variable_count():
    import random

    from logderiv.harness import random_instance

    rng = random.Random(13)
    for _ in range(8):
        fp, ctx = random_instance(rng)
        gens = generalized_log_module(fp, ctx)
        res = free_resolution(ctx.derivation_module(), gens)
        assert res.length <= ctx.nvars
        assert certify_exact(res)


def test_presentation_resolution_of_quotient():
    mod = ring_module(2, MonomialOrder((1, 1)))
    res = presentation_resolution(mod, [(P("x"),), (P("y"),)])
    assert res.f0_shifts == (0,)
    assert res.length == 2
    assert sorted(res.shifts(1)) == [1, 1]
    assert res.shifts(2) == (2,)
    assert alternating_rank_sum(res) == 1 - 2 + 1


def test_minimize_presentation_with_redundant_relations():
    from logderiv.hilbert import chi, hp_from_resolution

    mod = ring_module(2, MonomialOrder((1, 1)))
    res = presentation_resolution(mod, [(P("x"),), (P("x"),)])
    assert not res.is_minimal()
    out = minimize(res)
    assert out.is_minimal()
    assert out.f0_shifts == (0,)
    assert out.shifts(1) == (1,)
    assert out.length == 1
    assert chi(hp_from_resolution(out)).value == chi(hp_from_resolution(res)).value
