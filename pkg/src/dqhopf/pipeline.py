"""Maps used in the bijectivity argument for the antipode, and the staged
end-to-end verification report.

Functionals on ``H`` are dense coordinate tuples over the dual basis.  Maps
``H → H*`` and ``H → H`` are :class:`~dqhopf.scalars.Matrix` objects whose
column ``i`` is the image of ``e_i``.  Sweedler legs are numbered 1..7 in
docstrings and 0..6 in code.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product

from .axioms import check_dual_quasi_hopf
from .convolution import convolve_maps, dual_convolve, unit_map
from .errors import (MissingAntipodeData, MissingLeftInverse, NotGrouplike, NotProportional,
                     NotInvertible)
from .instance import format_element, matrix_of
from .integrals import (check_ideal_property, distinguished_grouplike, is_grouplike,
                        left_integrals, right_integrals)
from .report import Check, Report, compare, failed, passed, skipped
from .scalars import Matrix, rank, solve
from .tensors import LinMap, SparseTensor, apply_leg, iterated_coproduct

# ---------------------------------------------------------------- sigma


def _sigma_from(H, functional):
    # entry (h, g, f) = functional(f, h, g)
    n = H.n
    return LinMap(2, 1, SparseTensor(H.field, (n, n, n), [((h, g, f), c) for (f, h, g), c in functional.items()]))


def sigma(H) -> LinMap:
    """``σ(h⊗g)(f) = φ(f, h, g)`` as a map ``H⊗H → H*``."""
    return _sigma_from(H, H.phi)


def sigma_inverse(H) -> LinMap:
    """``h⊗g ↦ φ⁻¹(-, h, g)``; see :func:`check_sigma_inverse`."""
    return _sigma_from(H, H.phi_inv)


def check_sigma_inverse(H) -> Report:
    """Both convolution products of σ and σ⁻¹ equal ``h⊗g ↦ ε(h)ε(g)ε``."""
    s, si, u = sigma(H), sigma_inverse(H), unit_map(H, 2)
    report = Report()
    for name, prod_map in (("sigma_inverse_right", convolve_maps(s, si, H)),
                           ("sigma_inverse_left", convolve_maps(si, s, H))):
        report.add(compare(name, (
            ((h, g), _image(H, prod_map, (h, g)), _image(H, u, (h, g)))
            for h, g in product(range(H.n), repeat=2))))
    return report


def _image(H, F, src):
    v = list(H.zero_vec)
    for (j,), c in F.image(src):
        v[j] = c
    return tuple(v)


def _sigma_dense(H, functional, u, v):
    out = list(H.zero_vec)
    for (f, a, b), c in functional.items():
        x = u[a]
        if x:
            y = v[b]
            if y:
                out[f] = out[f] + c * x * y
    return tuple(out)


# ---------------------------------------------------------------- actions


def harpoon(H, h, f):
    """``(h ⇀ f)(g) = f(g h)``."""
    f = f.dense() if isinstance(f, SparseTensor) else tuple(f)
    return tuple(H.pair(f, H.mul(H.basis(g), h)) for g in range(H.n))


def a_coaction(H, a) -> LinMap:
    """Left coaction ``h ↦ a S(h_2) ⊗ h_1`` on ``H``."""
    a = a.dense() if isinstance(a, SparseTensor) else tuple(a)
    if not is_grouplike(H, a):
        raise NotGrouplike("the coaction needs a grouplike element")
    if not H.has_antipode:
        raise MissingAntipodeData("the coaction needs an antipode")
    images = {}
    for h in range(H.n):
        img = {}
        for (h1, h2), c in H.comult_terms(h):
            left = H.mul(a, H.S(H.basis(h2)))
            for i, x in enumerate(left):
                if x:
                    img[(i, h1)] = img.get((i, h1), H.field.zero) + c * x
        images[(h,)] = img
    return LinMap.from_images(H.field, (H.n,), (H.n, H.n), images)


def dual_action(H, a, h, c):
    """``h ·^a c* = c*(a S(h_2)) h_1`` for dense ``h`` and ``c*``."""
    out = list(H.zero_vec)
    for k, x in enumerate(h):
        if not x:
            continue
        for (h1, h2), d in H.comult_terms(k):
            s = H.pair(c, H.mul(a, H.S(H.basis(h2))))
            if s:
                out[h1] = out[h1] + x * d * s
    return tuple(out)


# ---------------------------------------------------------------- θ* and p


def _functional_map(H, f):
    return LinMap(1, 0, SparseTensor(H.field, (H.n,), f.items()))


def _expand7(H, i, leg_maps):
    """``Δ^(6)(e_i)`` with the given maps applied leg by leg (right to left)."""
    t = iterated_coproduct(H, 6, i)
    for leg in reversed(range(7)):
        for m in leg_maps[leg]:
            t = apply_leg(t, leg, m)
    return t


def _triple(H, T, terms, left_fn, harpoon_leg, right_fn):
    """Σ c · left(t) * (t[harpoon_leg] ⇀ T) * right(t) over expanded terms."""
    acc = list(H.zero_vec)
    cache_h = {}
    for key, c in terms:
        left = left_fn(key)
        if not any(left):
            continue
        right = right_fn(key)
        if not any(right):
            continue
        k = key[harpoon_leg]
        if k not in cache_h:
            cache_h[k] = harpoon(H, H.basis(k), T)
        val = dual_convolve(H, dual_convolve(H, left, cache_h[k]), right)
        for j, v in enumerate(val):
            if v:
                acc[j] = acc[j] + c * v
    return tuple(acc)


def _hopf_maps(H):
    if not H.has_antipode:
        raise MissingAntipodeData("instance has no antipode/alpha/beta data")
    return H.antipode, _functional_map(H, H.alpha), _functional_map(H, H.beta)


def map_theta_star(H, T) -> Matrix:
    """``h ↦ σ(S(h5) ⊗ α(h6)h7) * (S(h4) ⇀ T) * σ⁻¹(S(h3) ⊗ β(S(h2))S²(h1))``."""
    T = T.dense() if isinstance(T, SparseTensor) else tuple(T)
    S, alpha, beta = _hopf_maps(H)
    phi, phiinv = H.phi, H.phi_inv
    # legs after contraction: (S²h1, Sh3, Sh4, Sh5, h7)
    legs = [[S, S], [S, beta], [S], [S], [S], [alpha], []]
    B = H.basis
    cols = []
    for i in range(H.n):
        t = _expand7(H, i, legs)
        cols.append(_triple(
            H, T, t.items(),
            lambda k: _sigma_dense(H, phi, B(k[3]), B(k[4])),
            2,
            lambda k: _sigma_dense(H, phiinv, B(k[1]), B(k[0]))))
    return Matrix.from_columns(H.field, cols, H.n)


def map_p(H, T, left_inverse) -> Matrix:
    """``h ↦ σ(S(Sˡ(h3)) ⊗ α(Sˡ(h2))Sˡ(h1)) * (h4 ⇀ T) * σ⁻¹(h5 β(h6) ⊗ S(h7))``."""
    if left_inverse is None:
        raise MissingLeftInverse("map_p needs a left inverse of the antipode")
    T = T.dense() if isinstance(T, SparseTensor) else tuple(T)
    S, alpha, beta = _hopf_maps(H)
    Sl = left_inverse if isinstance(left_inverse, LinMap) else LinMap.from_matrix(left_inverse)
    phi, phiinv = H.phi, H.phi_inv
    # legs after contraction: (Sl h1, S Sl h3, h4, h5, S h7)
    legs = [[Sl], [Sl, alpha], [Sl, S], [], [], [beta], [S]]
    B = H.basis
    cols = []
    for i in range(H.n):
        t = _expand7(H, i, legs)
        cols.append(_triple(
            H, T, t.items(),
            lambda k: _sigma_dense(H, phi, B(k[1]), B(k[0])),
            2,
            lambda k: _sigma_dense(H, phiinv, B(k[3]), B(k[4]))))
    return Matrix.from_columns(H.field, cols, H.n)


def check_p_colinear(H, P, a) -> Check:
    """``p(h) * c* = p(h ·^a c*)`` for every basis ``h`` and dual basis ``c*``."""
    def cases():
        for h, j in product(range(H.n), repeat=2):
            c = H.basis(j)
            lhs = dual_convolve(H, P.column(h), c)
            rhs = P.apply(dual_action(H, a, H.basis(h), c))
            yield (h, j), lhs, rhs
    return compare("p_colinear", cases())


def check_theta_star_colinear(H, Theta) -> Check:
    """``g* * θ*(T⊗h) = g*(h2) θ*(T⊗h1)``."""
    def cases():
        for h, j in product(range(H.n), repeat=2):
            lhs = dual_convolve(H, H.basis(j), Theta.column(h))
            rhs = list(H.zero_vec)
            for (h1, h2), c in H.comult_terms(h):
                if h2 == j:
                    rhs = [r + c * x for r, x in zip(rhs, Theta.column(h1))]
            yield (h, j), lhs, tuple(rhs)
    return compare("theta_star_colinear", cases(), informational=True)


# ---------------------------------------------------------------- θ_c, q_c, r_c


def _grouplike_vec(H, c):
    c = c.dense() if isinstance(c, SparseTensor) else tuple(c)
    if not is_grouplike(H, c):
        raise NotGrouplike(f"{format_element(H, c)} is not grouplike")
    return c


def theta_c(H, c) -> Matrix:
    """Left multiplication ``h ↦ c h``."""
    c = _grouplike_vec(H, c)
    return matrix_of(H, lambda h: H.mul(c, h))


def _coinner(H, c, first, last):
    c = _grouplike_vec(H, c)
    Sc = H.S(c)
    cols = []
    for i in range(H.n):
        acc = list(H.zero_vec)
        for (h1, h2, h3), k in iterated_coproduct(H, 2, i).items():
            s = H.phi_at(c, Sc, H.basis(h1), first) * H.phi_at(c, Sc, H.basis(h3), last)
            if s:
                acc[h2] = acc[h2] + k * s
        cols.append(acc)
    return Matrix.from_columns(H.field, cols, H.n)


def q_c(H, c) -> Matrix:
    """``h ↦ φ⁻¹(c, S(c), h1) h2 φ(c, S(c), h3)``."""
    return _coinner(H, c, H.phi_inv, H.phi)


def r_c(H, c) -> Matrix:
    """``h ↦ φ(c, S(c), h1) h2 φ⁻¹(c, S(c), h3)``."""
    return _coinner(H, c, H.phi, H.phi_inv)


def compare_matrices(name, A, B, informational=False):
    return compare(name, (((j,), A.column(j), B.column(j)) for j in range(A.cols)), informational)


def check_theta_lemma(H, c) -> Report:
    c = _grouplike_vec(H, c)
    n, f = H.n, H.field
    Sc = H.S(c)
    I = Matrix.identity(f, n)
    th, th_S = theta_c(H, c), theta_c(H, Sc)
    q, r = q_c(H, c), r_c(H, c)
    q_S, r_S = q_c(H, Sc), r_c(H, Sc)
    inv1 = th_S @ q
    inv2 = q_S @ th_S
    report = Report()
    report.add(compare("c_times_Sc", [((), H.mul(c, Sc), H.one)]))
    report.add(compare("Sc_times_c", [((), H.mul(Sc, c), H.one)]))
    report.add(compare_matrices("theta_c_theta_Sc_is_r_c", th @ th_S, r))
    report.add(compare_matrices("theta_Sc_theta_c_is_r_Sc", th_S @ th, r_S))
    report.add(compare_matrices("q_c_r_c_is_id", q @ r, I))
    report.add(compare_matrices("r_c_q_c_is_id", r @ q, I))
    report.add(compare("theta_c_rank", [((), rank(th), n)]))
    report.add(compare_matrices("theta_c_inverse_via_q_c_right", th @ inv1, I))
    report.add(compare_matrices("theta_c_inverse_via_q_c_left", inv1 @ th, I))
    report.add(compare_matrices("theta_c_inverse_via_q_Sc_right", th @ inv2, I))
    report.add(compare_matrices("theta_c_inverse_via_q_Sc_left", inv2 @ th, I))
    return report


# ---------------------------------------------------------------- antipode


@dataclass(frozen=True)
class AntipodeStatus:
    injective: bool
    surjective: bool
    rank: int
    left_inverse: Matrix | None
    two_sided: bool  # S ∘ Sˡ = id as well
    order: int | None  # smallest k ≤ 2n² with S^k = id


def antipode_status(H) -> AntipodeStatus:
    if not H.has_antipode:
        raise MissingAntipodeData("instance has no antipode/alpha/beta data")
    S = H.S_matrix
    n = H.n
    I = Matrix.identity(H.field, n)
    r = rank(S)
    left = None
    two_sided = False
    if r == n:
        # Sl @ S = I  <=>  S^T @ Sl^T = I
        sol = solve(S.transpose(), I)
        left = sol.transpose()
        two_sided = S @ left == I
    order = None
    power = S
    for k in range(1, 2 * n * n + 1):
        if power == I:
            order = k
            break
        power = power @ S
    return AntipodeStatus(r == n, r == n, r, left, two_sided, order)


# ---------------------------------------------------------------- end to end


def _prefixed(stage, checks):
    return [replace(c, name=f"{stage}.{c.name}") for c in checks]


def verify_theorem(H) -> Report:
    """Run every stage of the argument in order.

    After the first stage containing a failed check, the remaining stages
    are reported as skipped.
    """
    from .sweedler import cross_check

    ctx = {}
    n = H.n

    def stage_axioms():
        if not H.has_antipode:
            return [failed("antipode_data_present", (), "absent", "present")]
        report = check_dual_quasi_hopf(H)
        checks = list(report)
        if report.ok:
            checks.append(cross_check(H, report))
        return checks

    def stage_sigma():
        return list(check_sigma_inverse(H))

    def stage_integrals():
        left, right = left_integrals(H), right_integrals(H)
        checks = [
            compare("integral_dim_bound", [((), (len(left), len(right)), (min(len(left), 1), min(len(right), 1)))]),
            compare("left_integral_dim", [((), len(left), 1)]),
            compare("right_integral_dim", [((), len(right), 1)], informational=True),
        ]
        if len(left) == 1:
            ctx["T"] = left[0].dense()
            checks.extend(check_ideal_property(H, ctx["T"]))
        return checks

    def stage_grouplike():
        try:
            a = distinguished_grouplike(H, ctx["T"], check_inverse=False)
        except (NotProportional, NotGrouplike) as exc:
            return [failed("grouplike_extracted", (), str(exc), "grouplike")]
        ctx["a"] = a
        Sa = H.S(a)
        return [
            passed("grouplike_extracted", note=format_element(H, a)),
            compare("a_is_grouplike", [((), is_grouplike(H, a), True)]),
            compare("a_times_Sa", [((), H.mul(a, Sa), H.one)]),
            compare("Sa_times_a", [((), H.mul(Sa, a), H.one)]),
        ]

    def stage_theta_star():
        Theta = map_theta_star(H, ctx["T"])
        ctx["Theta"] = Theta
        return [compare("theta_star_rank", [((), rank(Theta), n)]), check_theta_star_colinear(H, Theta)]

    def stage_p():
        status = antipode_status(H)
        ctx["status"] = status
        if status.left_inverse is None:
            return [failed("antipode_left_inverse", (), "none", "exists")]
        P = map_p(H, ctx["T"], status.left_inverse)
        checks = [
            check_p_colinear(H, P, ctx["a"]),
            compare_matrices("p_S_is_theta_star", P @ H.S_matrix, ctx["Theta"]),
            compare("p_rank", [((), rank(P), n)]),
        ]
        right = solve(P, Matrix.identity(H.field, n))
        checks.append(compare("p_right_inverse", [((), right is not None and P @ right == Matrix.identity(H.field, n), True)],
                              informational=True))
        return checks

    def stage_lemma():
        checks = []
        seen = []
        candidates = [("a", ctx["a"])] + [(format_element(H, g.dense()), g.dense()) for g in H.grouplikes]
        for label, c in candidates:
            if c in seen:
                continue
            seen.append(c)
            if not is_grouplike(H, c):
                checks.append(failed(f"lemma[{label}].is_grouplike", (), False, True))
                continue
            checks.extend(_prefixed(f"lemma[{label}]", check_theta_lemma(H, c)))
        return checks

    def stage_antipode():
        status = ctx["status"]
        return [
            compare("antipode_injective", [((), status.injective, True)]),
            compare("antipode_surjective", [((), status.surjective, True)]),
            compare("left_inverse_two_sided", [((), status.two_sided, True)]),
        ]

    def stage_consistency():
        a = ctx["a"]
        composite = theta_c(H, a) @ H.S_matrix
        back = theta_c(H, H.S(a)) @ q_c(H, a) @ composite
        return [
            compare("theta_a_S_rank", [((), rank(composite), n)]),
            compare_matrices("theta_a_inverse_recovers_S", back, H.S_matrix),
        ]

    stages = [
        ("1", stage_axioms), ("2", stage_sigma), ("3", stage_integrals), ("4", stage_grouplike),
        ("5", stage_theta_star), ("6", stage_p), ("7", stage_lemma), ("8", stage_antipode),
        ("9", stage_consistency),
    ]
    report = Report()
    blocked = False
    for label, fn in stages:
        if blocked:
            report.add(_stage_skip(label, fn))
            continue
        try:
            checks = fn()
        except (NotInvertible, NotGrouplike, NotProportional, MissingLeftInverse) as exc:
            checks = [failed("stage_error", (), type(exc).__name__, str(exc))]
        checks = _prefixed(label, checks)
        report.extend(checks)
        if any(c.status == "fail" and not c.informational for c in checks):
            blocked = True
    return report


STAGE_TITLES = {
    "1": "axioms", "2": "sigma_inverse", "3": "integrals", "4": "distinguished_grouplike",
    "5": "theta_star", "6": "map_p", "7": "theta_lemma", "8": "antipode_bijective",
    "9": "theta_a_S_surjective",
}


def _stage_skip(label, fn):
    return skipped(f"{label}.{STAGE_TITLES[label]}", "earlier stage failed")
