"""Hand-coded axiom checks for coalgebras, dual quasi-bialgebras and
dual quasi-Hopf algebras.

Every check is an exhaustive loop over basis tuples in lexicographic order;
the first tuple where the two sides differ becomes the witness.  The same
identities are restated in the Sweedler language (:mod:`dqhopf.sweedler`)
and the two paths are compared against each other.
"""
from __future__ import annotations

from itertools import product

from .convolution import ConvContext, convolution_inverse
from .errors import MissingAntipodeData, NotInvertible
from .report import Report, compare, failed, passed, skipped
from .tensors import SparseTensor, apply_leg, iterated_coproduct


def _terms(H, m, i):
    return iterated_coproduct(H, m, i).items()


def _add(acc, vec, c):
    return [a + c * v if v else a for a, v in zip(acc, vec)]


def _tensor2(H, entries):
    return SparseTensor(H.field, (H.n, H.n), entries)


# ---------------------------------------------------------------- coalgebra


def check_coassociativity(H):
    def cases():
        for i in range(H.n):
            d = iterated_coproduct(H, 1, i)
            yield (i,), apply_leg(d, 0, H.comult), apply_leg(d, 1, H.comult)
    return compare("coassociativity", cases())


def _counit_side(H, i, leg):
    acc = list(H.zero_vec)
    for (j, k), c in H.comult_terms(i):
        keep, drop = (k, j) if leg == 0 else (j, k)
        e = H.eps_vec[drop]
        if e:
            acc[keep] = acc[keep] + c * e
    return tuple(acc)


def check_counit_left(H):
    return compare("counit_left", (((i,), _counit_side(H, i, 0), H.basis(i)) for i in range(H.n)))


def check_counit_right(H):
    return compare("counit_right", (((i,), _counit_side(H, i, 1), H.basis(i)) for i in range(H.n)))


# ---------------------------------------------------------------- bialgebra layer


def _comult_of(H, vec):
    entries = {}
    for k, v in enumerate(vec):
        if v:
            for key, c in H.comult_terms(k):
                entries[key] = entries.get(key, H.field.zero) + v * c
    return _tensor2(H, entries)


def check_mult_comult(H):
    def cases():
        for a, b in product(range(H.n), repeat=2):
            lhs = _comult_of(H, H.mul(H.basis(a), H.basis(b)))
            rhs = {}
            for (a1, a2), c in H.comult_terms(a):
                for (b1, b2), d in H.comult_terms(b):
                    left = H.mul(H.basis(a1), H.basis(b1))
                    right = H.mul(H.basis(a2), H.basis(b2))
                    for i, x in enumerate(left):
                        if x:
                            for j, y in enumerate(right):
                                if y:
                                    rhs[(i, j)] = rhs.get((i, j), H.field.zero) + c * d * x * y
            yield (a, b), lhs, _tensor2(H, rhs)
    return compare("mult_comult", cases())


def check_mult_counit(H):
    return compare("mult_counit", (
        ((a, b), H.eps(H.mul(H.basis(a), H.basis(b))), H.eps_vec[a] * H.eps_vec[b])
        for a, b in product(range(H.n), repeat=2)))


def check_unit_comult(H):
    one = H.one
    rhs = {(i, j): a * b for i, a in enumerate(one) for j, b in enumerate(one) if a and b}
    return compare("unit_comult", [((), _comult_of(H, one), _tensor2(H, rhs))])


def check_unit_counit(H):
    return compare("unit_counit", [((), H.eps(H.one), H.field.one)])


def check_quasi_associativity(H):
    """h1(g1 f1) phi(h2,g2,f2) = phi(h1,g1,f1) (h2 g2) f2."""
    def cases():
        for h, g, f in product(range(H.n), repeat=3):
            lhs = list(H.zero_vec)
            rhs = list(H.zero_vec)
            for (h1, h2), ch in H.comult_terms(h):
                for (g1, g2), cg in H.comult_terms(g):
                    for (f1, f2), cf in H.comult_terms(f):
                        c = ch * cg * cf
                        p2 = H.phi[(h2, g2, f2)]
                        if p2:
                            gf = H.mul(H.basis(g1), H.basis(f1))
                            lhs = _add(lhs, H.mul(H.basis(h1), gf), c * p2)
                        p1 = H.phi[(h1, g1, f1)]
                        if p1:
                            hg = H.mul(H.basis(h2), H.basis(g2))
                            rhs = _add(rhs, H.mul(hg, H.basis(f2)), c * p1)
            yield (h, g, f), tuple(lhs), tuple(rhs)
    return compare("quasi_associativity", cases())


def check_left_unit(H):
    return compare("left_unit", (((h,), H.mul(H.one, H.basis(h)), H.basis(h)) for h in range(H.n)))


def check_right_unit(H):
    return compare("right_unit", (((h,), H.mul(H.basis(h), H.one), H.basis(h)) for h in range(H.n)))


def check_cocycle(H):
    """phi(h1,g1,f1 e1) phi(h2 g2,f2,e2) = phi(g1,f1,e1) phi(h1,g2 f2,e2) phi(h2,g3,f3)."""
    B = H.basis

    def cases():
        for h, g, f, e in product(range(H.n), repeat=4):
            lhs = H.field.zero
            for (h1, h2), ch in H.comult_terms(h):
                for (g1, g2), cg in H.comult_terms(g):
                    for (f1, f2), cf in H.comult_terms(f):
                        for (e1, e2), ce in H.comult_terms(e):
                            a = H.phi_at(B(h1), B(g1), H.mul(B(f1), B(e1)))
                            if a:
                                b = H.phi_at(H.mul(B(h2), B(g2)), B(f2), B(e2))
                                lhs = lhs + ch * cg * cf * ce * a * b
            rhs = H.field.zero
            for (h1, h2), ch in _terms(H, 1, h):
                for (g1, g2, g3), cg in _terms(H, 2, g):
                    for (f1, f2, f3), cf in _terms(H, 2, f):
                        for (e1, e2), ce in _terms(H, 1, e):
                            a = H.phi[(g1, f1, e1)]
                            c3 = H.phi[(h2, g3, f3)]
                            if a and c3:
                                b = H.phi_at(B(h1), H.mul(B(g2), B(f2)), B(e2))
                                rhs = rhs + ch * cg * cf * ce * a * b * c3
            yield (h, g, f, e), lhs, rhs
    return compare("cocycle", cases())


def check_normalization(H):
    """phi(h, 1, g) = eps(h) eps(g)."""
    return compare("normalization", (
        ((h, g), H.phi_at(H.basis(h), H.one, H.basis(g)), H.eps_vec[h] * H.eps_vec[g])
        for h, g in product(range(H.n), repeat=2)))


def _invertible(name, H, f, k, informational=False):
    try:
        convolution_inverse(f, ConvContext(H, k))
    except NotInvertible:
        return failed(name, (), "not invertible", "invertible", informational)
    return passed(name, informational)


def check_phi_invertible(H):
    try:
        H.phi_inv
    except NotInvertible:
        return failed("phi_invertible", (), "not invertible", "invertible")
    return passed("phi_invertible")


# ---------------------------------------------------------------- Hopf layer


def check_antipode_anticomult(H):
    def cases():
        for h in range(H.n):
            lhs = _comult_of(H, H.S(H.basis(h)))
            rhs = {}
            for (h1, h2), c in H.comult_terms(h):
                left, right = H.S(H.basis(h2)), H.S(H.basis(h1))
                for i, x in enumerate(left):
                    if x:
                        for j, y in enumerate(right):
                            if y:
                                rhs[(i, j)] = rhs.get((i, j), H.field.zero) + c * x * y
            yield (h,), lhs, _tensor2(H, rhs)
    return compare("antipode_anticomult", cases())


def check_antipode_counit(H):
    return compare("antipode_counit", (
        ((h,), H.eps(H.S(H.basis(h))), H.eps_vec[h]) for h in range(H.n)))


def check_antipode_alpha(H):
    """S(h1) alpha(h2) h3 = alpha(h) 1."""
    alpha = H.alpha

    def cases():
        for h in range(H.n):
            acc = list(H.zero_vec)
            for (h1, h2, h3), c in _terms(H, 2, h):
                a = alpha[(h2,)]
                if a:
                    acc = _add(acc, H.mul(H.S(H.basis(h1)), H.basis(h3)), c * a)
            yield (h,), tuple(acc), tuple(alpha[(h,)] * x for x in H.one)
    return compare("antipode_alpha", cases())


def check_antipode_beta(H):
    """h1 beta(h2) S(h3) = beta(h) 1."""
    beta = H.beta

    def cases():
        for h in range(H.n):
            acc = list(H.zero_vec)
            for (h1, h2, h3), c in _terms(H, 2, h):
                b = beta[(h2,)]
                if b:
                    acc = _add(acc, H.mul(H.basis(h1), H.S(H.basis(h3))), c * b)
            yield (h,), tuple(acc), tuple(beta[(h,)] * x for x in H.one)
    return compare("antipode_beta", cases())


def check_phi_antipode(H):
    """phi(h1 beta(h2), S(h3), alpha(h4) h5) = eps(h)."""
    def cases():
        for h in range(H.n):
            acc = H.field.zero
            for (h1, h2, h3, h4, h5), c in _terms(H, 4, h):
                s = H.beta[(h2,)] * H.alpha[(h4,)]
                if s:
                    acc = acc + c * s * H.phi_at(H.basis(h1), H.S(H.basis(h3)), H.basis(h5))
            yield (h,), acc, H.eps_vec[h]
    return compare("phi_antipode", cases())


def check_phiinv_antipode(H):
    """phiinv(S(h1), alpha(h2) h3, beta(h4) S(h5)) = eps(h)."""
    phiinv = H.phi_inv

    def cases():
        for h in range(H.n):
            acc = H.field.zero
            for (h1, h2, h3, h4, h5), c in _terms(H, 4, h):
                s = H.alpha[(h2,)] * H.beta[(h4,)]
                if s:
                    acc = acc + c * s * H.phi_at(H.S(H.basis(h1)), H.basis(h3), H.S(H.basis(h5)), phiinv)
            yield (h,), acc, H.eps_vec[h]
    return compare("phiinv_antipode", cases())


# ---------------------------------------------------------------- staged reports

COALGEBRA_CHECKS = [
    ("coassociativity", check_coassociativity),
    ("counit_left", check_counit_left),
    ("counit_right", check_counit_right),
]

BIALGEBRA_CHECKS = [
    ("mult_comult", check_mult_comult),
    ("mult_counit", check_mult_counit),
    ("unit_comult", check_unit_comult),
    ("unit_counit", check_unit_counit),
    ("quasi_associativity", check_quasi_associativity),
    ("left_unit", check_left_unit),
    ("right_unit", check_right_unit),
    ("cocycle", check_cocycle),
    ("normalization", check_normalization),
    ("phi_invertible", check_phi_invertible),
]

HOPF_CHECKS = [
    ("antipode_anticomult", check_antipode_anticomult),
    ("antipode_counit", check_antipode_counit),
    ("antipode_alpha", check_antipode_alpha),
    ("antipode_beta", check_antipode_beta),
    ("phi_antipode", check_phi_antipode),
    ("phiinv_antipode", check_phiinv_antipode),
]

# identities that have a Sweedler-language twin in the builtin corpus
IDENTITY_CHECKS = {name: fn for name, fn in BIALGEBRA_CHECKS + HOPF_CHECKS if name in {
    "quasi_associativity", "left_unit", "right_unit", "cocycle", "normalization",
    "antipode_alpha", "antipode_beta", "phi_antipode", "phiinv_antipode"}}


def _run(report, checks, H, blocked):
    for name, fn in checks:
        if blocked:
            report.add(skipped(name, "earlier stage failed"))
        elif name == "phiinv_antipode" and not report["phi_invertible"].passed:
            report.add(skipped(name, "phi has no convolution inverse"))
        else:
            report.add(fn(H))


def check_coalgebra(H) -> Report:
    report = Report()
    _run(report, COALGEBRA_CHECKS, H, False)
    return report


def check_dual_quasi_bialgebra(H) -> Report:
    report = check_coalgebra(H)
    _run(report, BIALGEBRA_CHECKS, H, not report.ok)
    return report


def check_dual_quasi_hopf(H) -> Report:
    if not H.has_antipode:
        raise MissingAntipodeData("instance has no antipode/alpha/beta data")
    report = check_dual_quasi_bialgebra(H)
    blocked = not report.ok
    _run(report, HOPF_CHECKS, H, blocked)
    for name, f in (("alpha_invertible", H.alpha), ("beta_invertible", H.beta)):
        if blocked:
            report.add(skipped(name, "earlier stage failed"))
        else:
            report.add(_invertible(name, H, f, 1, informational=True))
    return report


LEVELS = {
    "coalgebra": check_coalgebra,
    "bialgebra": check_dual_quasi_bialgebra,
    "hopf": check_dual_quasi_hopf,
}
