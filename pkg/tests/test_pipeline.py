import pytest

from dqhopf.errors import MissingAntipodeData, MissingLeftInverse, NotGrouplike
from dqhopf.examples import (MUTANT_FIRST_FAILURE, CyclicGroupSpec, Mutation, group_algebra, mutate,
                             sweedler_h4, tensor_product_instance, twisted_group_algebra)
from dqhopf.integrals import distinguished_grouplike, left_integrals
from dqhopf.pipeline import (STAGE_TITLES, a_coaction, antipode_status, check_p_colinear,
                             check_sigma_inverse, check_theta_lemma, dual_action, harpoon, map_p,
                             map_theta_star, q_c, r_c, sigma, sigma_inverse, theta_c, verify_theorem)
from dqhopf.report import FAIL, PASS, SKIPPED, format_report
from dqhopf.scalars import FieldSpec, Matrix, rank
from dqhopf.tensors import iterated_coproduct

from conftest import EXTENDED

Q = FieldSpec.rationals()


@pytest.fixture(scope="module")
def product_instance():
    """H4 ⊗ K_ω[Z/2]: nontrivial φ on a non-cocommutative coalgebra, dimension 8."""
    return tensor_product_instance(sweedler_h4(Q), twisted_group_algebra(CyclicGroupSpec(2, Q, Q(-1))))


def integral(H):
    return left_integrals(H)[0].dense()


# ---------------------------------------------------------------- independent pointwise oracles
#
# These evaluate the defining formulas at each test element g directly:
# a triple convolution F * G * K at g is F(g1) G(g2) K(g3), σ(u⊗v)(f) = φ(f,u,v)
# and (k ⇀ T)(g) = T(g k).  Nothing here goes through the leg-map machinery.


def _scaled(c, v):
    return tuple(c * x for x in v)


def theta_star_pointwise(H, T):
    B, S = H.basis, H.S
    cols = []
    for i in range(H.n):
        col = []
        for gi in range(H.n):
            acc = H.field.zero
            for (h1, h2, h3, h4, h5, h6, h7), c in iterated_coproduct(H, 6, i).items():
                left_v = _scaled(H.pair(H.alpha, B(h6)), B(h7))
                right_v = _scaled(H.pair(H.beta, S(B(h2))), S(S(B(h1))))
                for (g1, g2, g3), d in iterated_coproduct(H, 2, gi).items():
                    u = H.phi_at(B(g1), S(B(h5)), left_v)
                    t = H.pair(T, H.mul(B(g2), S(B(h4))))
                    w = H.phi_at(B(g3), S(B(h3)), right_v, H.phi_inv)
                    acc = acc + c * d * u * t * w
            col.append(acc)
        cols.append(col)
    return Matrix.from_columns(H.field, cols, H.n)


def p_pointwise(H, T, Sl):
    B, S = H.basis, H.S
    cols = []
    for i in range(H.n):
        col = []
        for gi in range(H.n):
            acc = H.field.zero
            for (h1, h2, h3, h4, h5, h6, h7), c in iterated_coproduct(H, 6, i).items():
                left_v = _scaled(H.pair(H.alpha, Sl.apply(B(h2))), Sl.apply(B(h1)))
                right_u = _scaled(H.pair(H.beta, B(h6)), B(h5))
                for (g1, g2, g3), d in iterated_coproduct(H, 2, gi).items():
                    u = H.phi_at(B(g1), S(Sl.apply(B(h3))), left_v)
                    t = H.pair(T, H.mul(B(g2), B(h4)))
                    w = H.phi_at(B(g3), right_u, S(B(h7)), H.phi_inv)
                    acc = acc + c * d * u * t * w
            col.append(acc)
        cols.append(col)
    return Matrix.from_columns(H.field, cols, H.n)


def classical_theta_star(H, T):
    """Trivial φ, α = β = ε: θ*(T⊗h) = S(h) ⇀ T."""
    return Matrix.from_columns(H.field, [harpoon(H, H.S(H.basis(i)), T) for i in range(H.n)], H.n)


@pytest.mark.parametrize("name", EXTENDED)
def test_theta_star_matches_pointwise_oracle(instances, name):
    H = instances[name]
    T = integral(H)
    assert map_theta_star(H, T) == theta_star_pointwise(H, T)


@pytest.mark.parametrize("name", EXTENDED)
def test_p_matches_pointwise_oracle(instances, name):
    H = instances[name]
    T = integral(H)
    Sl = antipode_status(H).left_inverse
    assert map_p(H, T, Sl) == p_pointwise(H, T, Sl)


@pytest.mark.parametrize("name", ["kz2", "kz3", "h4"])
def test_theta_star_classical_specialization(instances, name):
    H = instances[name]
    T = integral(H)
    assert map_theta_star(H, T) == classical_theta_star(H, T)


def test_theta_star_and_p_on_product_instance(product_instance):
    H = product_instance
    T = integral(H)
    Sl = antipode_status(H).left_inverse
    theta = map_theta_star(H, T)
    P = map_p(H, T, Sl)
    assert theta == theta_star_pointwise(H, T)
    assert P == p_pointwise(H, T, Sl)
    assert P @ H.S_matrix == theta
    assert rank(theta) == H.n == rank(P)


def test_theta_star_zero_integral_is_zero_map(instances):
    H = instances["kw2"]
    assert map_theta_star(H, H.zero_vec) == Matrix.zeros(H.field, H.n, H.n)


# ---------------------------------------------------------------- σ, actions


@pytest.mark.parametrize("name", EXTENDED)
def test_sigma_inverse(instances, name):
    assert check_sigma_inverse(instances[name]).ok


def test_sigma_entries(instances):
    H = instances["kw2"]
    g = H.index("g")
    # σ(g⊗g)(g) = φ(g, g, g) = -1
    assert dict(sigma(H).image((g, g)))[(g,)] == -1
    assert dict(sigma_inverse(H).image((g, g)))[(g,)] == -1


def test_harpoon_examples(instances):
    H = instances["kz2"]
    e, g = H.basis(0), H.basis(1)
    assert harpoon(H, g, e) == g
    assert harpoon(H, H.one, (Q(3), Q(5))) == (Q(3), Q(5))
    assert harpoon(H, H.zero_vec, e) == H.zero_vec


def test_a_coaction_examples(instances):
    H = instances["kz2"]
    coact = a_coaction(H, H.one)
    assert dict(coact.image((1,))) == {(1, 1): 1}
    H4 = instances["h4"]
    one, g = H4.index("1"), H4.index("g")
    coact = a_coaction(H4, H4.basis(g))
    assert dict(coact.image((g,))) == {(one, g): 1}
    assert dict(coact.image((one,))) == {(g, one): 1}
    with pytest.raises(NotGrouplike):
        a_coaction(H4, H4.basis(H4.index("x")))


def test_dual_action_matches_coaction(instances):
    H = instances["h4"]
    a = H.basis(H.index("g"))
    coact = a_coaction(H, a)
    for h in range(H.n):
        for j in range(H.n):
            expected = list(H.zero_vec)
            for (i, k), c in coact.image((h,)):
                if i == j:
                    expected[k] = expected[k] + c
            assert dual_action(H, a, H.basis(h), H.basis(j)) == tuple(expected)


# ---------------------------------------------------------------- p


@pytest.mark.parametrize("name", EXTENDED)
def test_p_composed_with_S_is_theta_star(instances, name):
    H = instances[name]
    T = integral(H)
    P = map_p(H, T, antipode_status(H).left_inverse)
    assert P @ H.S_matrix == map_theta_star(H, T)
    assert rank(P) == H.n


@pytest.mark.parametrize("name", EXTENDED)
def test_p_colinear(instances, name):
    H = instances[name]
    T = integral(H)
    a = distinguished_grouplike(H, T)
    P = map_p(H, T, antipode_status(H).left_inverse)
    assert check_p_colinear(H, P, a).status == PASS


def test_p_colinear_detects_wrong_grouplike(instances):
    H = instances["h4"]
    T = integral(H)
    P = map_p(H, T, antipode_status(H).left_inverse)
    assert check_p_colinear(H, P, H.one).status == FAIL


def test_map_p_needs_left_inverse(instances):
    H = instances["kz2"]
    with pytest.raises(MissingLeftInverse):
        map_p(H, integral(H), None)


# ---------------------------------------------------------------- θ_c, q_c, r_c


def test_theta_g_swaps_on_kz2(instances):
    H = instances["kz2"]
    g = H.basis(1)
    assert theta_c(H, g) == Matrix(Q, [[Q(0), Q(1)], [Q(1), Q(0)]])


@pytest.mark.parametrize("name", EXTENDED)
def test_unit_grouplike_gives_identities(instances, name):
    H = instances[name]
    I = Matrix.identity(H.field, H.n)
    assert theta_c(H, H.one) == I
    assert q_c(H, H.one) == I
    assert r_c(H, H.one) == I


@pytest.mark.parametrize("name", EXTENDED)
def test_theta_lemma_for_declared_grouplikes(instances, name):
    H = instances[name]
    for c in H.grouplikes:
        assert check_theta_lemma(H, c).ok


def test_trivial_phi_gives_identity_coinner_maps(instances):
    H = instances["h4"]
    I = Matrix.identity(Q, 4)
    for c in H.grouplikes:
        assert q_c(H, c) == I and r_c(H, c) == I


def test_r_g_on_abelian_twist_is_identity(instances):
    # on a commutative group algebra the φ-factors of r_g are scalars that cancel
    H = instances["kw2"]
    assert r_c(H, H.basis(1)) == Matrix.identity(Q, 2)
    assert q_c(H, H.basis(1)) == Matrix.identity(Q, 2)


def test_gauge_gives_nontrivial_coinner_maps(instances):
    H = instances["h4-gauge"]
    g = H.basis(H.index("g"))
    I = Matrix.identity(Q, 4)
    assert r_c(H, g) != I and q_c(H, g) != I
    assert r_c(H, g) @ q_c(H, g) == I
    assert check_theta_lemma(H, g).ok


def test_coinner_maps_on_product_instance(product_instance):
    H = product_instance
    for c in H.grouplikes:
        assert check_theta_lemma(H, c).ok


def test_theta_c_rejects_non_grouplike(instances):
    H = instances["h4"]
    with pytest.raises(NotGrouplike):
        theta_c(H, H.basis(H.index("x")))


# ---------------------------------------------------------------- antipode


@pytest.mark.parametrize("name, order", [("kz2", 1), ("kz3", 2), ("kw2", 1), ("kw3", 2), ("h4", 4)])
def test_antipode_status(instances, name, order):
    st = antipode_status(instances[name])
    assert st.injective and st.surjective and st.two_sided
    assert st.order == order


def test_h4_antipode_squared_is_not_identity(instances):
    H = instances["h4"]
    S = H.S_matrix
    I = Matrix.identity(Q, 4)
    assert S @ S != I
    assert S @ S @ S @ S == I


def test_rank_deficient_antipode(instances):
    H = mutate(instances["kz2"], [Mutation("antipode", ("g", "g"), -1), Mutation("antipode", ("g", "e"), 1)])
    st = antipode_status(H)
    assert not st.injective
    assert st.left_inverse is None
    assert st.rank == 1


def test_antipode_status_needs_data(instances):
    H = instances["kz2"].with_changes(antipode=None, alpha=None, beta=None)
    with pytest.raises(MissingAntipodeData):
        antipode_status(H)


# ---------------------------------------------------------------- end to end


@pytest.mark.parametrize("name", EXTENDED)
def test_verify_theorem_passes(instances, name):
    report = verify_theorem(instances[name])
    assert report.ok, format_report(report)
    stages = {c.name.split(".")[0] for c in report}
    assert stages == {str(i) for i in range(1, 10)}
    assert all(c.status == PASS for c in report)


def test_verify_theorem_on_product_instance(product_instance):
    report = verify_theorem(product_instance)
    assert report.ok, format_report(report)


def test_verify_theorem_on_field():
    report = verify_theorem(group_algebra(CyclicGroupSpec(1, Q)))
    assert report.ok


@pytest.mark.parametrize("name", list(MUTANT_FIRST_FAILURE))
def test_verify_theorem_mutants(mutants, name):
    report = verify_theorem(mutants[name])
    assert not report.ok
    assert report.first_failure().name == "1." + MUTANT_FIRST_FAILURE[name]
    later = [c for c in report if not c.name.startswith("1.")]
    assert [c.name for c in later] == [f"{k}.{v}" for k, v in STAGE_TITLES.items() if k != "1"]
    assert all(c.status == SKIPPED for c in later)


def test_verify_theorem_is_deterministic(mutants):
    H = mutants["noncocycle"]
    assert format_report(verify_theorem(H)) == format_report(verify_theorem(H))


# ---------------------------------------------------------------- leg-order sensitivity


def _swapped_sigma(monkeypatch):
    import dqhopf.pipeline as pipeline
    original = pipeline._sigma_dense
    monkeypatch.setattr(pipeline, "_sigma_dense", lambda H, f, u, v: original(H, f, v, u))


@pytest.mark.parametrize("name", ["kw2", "kw3"])
def test_sigma_swap_is_invisible_on_symmetric_cocycles(instances, monkeypatch, name):
    # the standard cocycle is symmetric in its last two slots
    H = instances[name]
    before = map_theta_star(H, integral(H))
    _swapped_sigma(monkeypatch)
    assert map_theta_star(H, integral(H)) == before


def test_sigma_swap_is_caught_on_gauged_h4(instances, monkeypatch):
    H = instances["h4-gauge"]
    T = integral(H)
    Sl = antipode_status(H).left_inverse
    _swapped_sigma(monkeypatch)
    assert map_theta_star(H, T) != theta_star_pointwise(H, T)
    assert map_p(H, T, Sl) != p_pointwise(H, T, Sl)
    report = verify_theorem(H)
    assert not report.ok
    assert report.first_failure().name == "6.p_colinear"
