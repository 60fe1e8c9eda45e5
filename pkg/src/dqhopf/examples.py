"""Builders for the test corpus: cyclic group algebras, their 3-cocycle
twists, Sweedler's four-dimensional Hopf algebra, and named mutants."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ChecksFailed, FieldMismatch, UnknownTarget, UnsupportedCharacteristic
from .instance import AlgebraInstance
from .scalars import FieldSpec, Scalar
from .tensors import ELEMENT, FUNCTIONAL, LinMap, SparseTensor


@dataclass(frozen=True)
class CyclicGroupSpec:
    order: int
    field: FieldSpec
    zeta: Scalar | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("group order must be positive")
        z = self.root
        if z ** self.order != 1:
            raise ValueError(f"zeta = {z} has zeta^{self.order} != 1 in {self.field}")

    @property
    def root(self):
        return self.field.one if self.zeta is None else self.field(self.zeta)


def cyclic_labels(n):
    return tuple(["e"] + ["g" if a == 1 else f"g{a}" for a in range(1, n)])


def standard_cocycle(n, zeta):
    """``ω(a, b, c) = ζ^{a·⌊(b+c)/n⌋}`` on residues mod ``n``."""
    return {(a, b, c): zeta ** (a * ((b + c) // n)) for a, b, c in product(range(n), repeat=3)}


def _group_instance(field, n, phi_values, beta_values):
    f = field
    one = f.one
    comult = LinMap.from_images(f, (n,), (n, n), {(a,): {(a, a): one} for a in range(n)})
    mult = LinMap.from_images(f, (n, n), (n,), {(a, b): {((a + b) % n,): one}
                                                for a, b in product(range(n), repeat=2)})
    antipode = LinMap.from_images(f, (n,), (n,), {(a,): {((-a) % n,): one} for a in range(n)})
    eps = SparseTensor(f, (n,), {(a,): one for a in range(n)}, FUNCTIONAL)
    return AlgebraInstance(
        field=f,
        labels=cyclic_labels(n),
        comult=comult,
        counit=eps,
        mult=mult,
        unit=SparseTensor(f, (n,), {(0,): one}, ELEMENT),
        phi=SparseTensor(f, (n, n, n), phi_values, FUNCTIONAL),
        antipode=antipode,
        alpha=eps,
        beta=SparseTensor(f, (n,), {(a,): beta_values[a] for a in range(n)}, FUNCTIONAL),
        grouplikes=tuple(SparseTensor(f, (n,), {(a,): one}) for a in range(n)),
    )


def group_algebra(spec: CyclicGroupSpec) -> AlgebraInstance:
    """``K[Z/n]`` with the trivial reassociator written out in full."""
    n, f = spec.order, spec.field
    trivial = {t: f.one for t in product(range(n), repeat=3)}
    return _group_instance(f, n, trivial, [f.one] * n)


def twisted_group_algebra(spec: CyclicGroupSpec, validate=True) -> AlgebraInstance:
    """``K_ω[Z/n]`` for the standard cocycle; refuses to return a failing instance."""
    n, f = spec.order, spec.field
    omega = standard_cocycle(n, spec.root)
    beta = [omega[(a, (n - a) % n, a)].inverse() for a in range(n)]
    H = _group_instance(f, n, omega, beta)
    if validate:
        from .axioms import check_dual_quasi_hopf
        report = check_dual_quasi_hopf(H)
        if not report.ok:
            raise ChecksFailed(f"twist with n={n}, zeta={spec.root} fails the axioms", report)
    return H


def gauge_transform(H: AlgebraInstance, gamma, validate=True) -> AlgebraInstance:
    """Gauge transform of ``H`` by a normalized invertible ``γ ∈ (H⊗H)*``.

    ``gamma`` maps pairs of basis indices (or labels) to scalars; it must
    satisfy ``γ(1, h) = γ(h, 1) = ε(h)``.  With ``γ⁻¹`` its convolution
    inverse the new structure is::

        a·b       = γ(a1, b1) a2 b2 γ⁻¹(a3, b3)
        φ(a,b,c)  = γ(b1, c1) γ(a1, b2 c2) φ(a2, b3, c3) γ⁻¹(a3 b4, c4) γ⁻¹(a4, b5)
        α(h)      = γ⁻¹(S(h1), h3) α(h2)
        β(h)      = γ(h1, S(h3)) β(h2)

    with the old multiplication inside the arguments.  The coalgebra and S
    are unchanged.  When γ is not a 2-cocycle the new φ is nontrivial even if
    the old one was.
    """
    from .convolution import ConvContext, convolution_inverse
    from .tensors import iterated_coproduct

    n, f = H.n, H.field
    entries = {}
    for key, v in dict(gamma).items():
        entries[tuple(H.index(i) if isinstance(i, str) else i for i in key)] = v
    g = SparseTensor(f, (n, n), entries, FUNCTIONAL)
    gi = convolution_inverse(g, ConvContext(H, 2))
    B = H.basis

    def pair2(t, u, v):
        acc = f.zero
        for (i, j), c in t.items():
            if u[i] and v[j]:
                acc = acc + c * u[i] * v[j]
        return acc

    def legs(i, m):
        return iterated_coproduct(H, m - 1, i).items()

    mult = {}
    for a, b in product(range(n), repeat=2):
        acc = list(H.zero_vec)
        for (a1, a2, a3), ca in legs(a, 3):
            for (b1, b2, b3), cb in legs(b, 3):
                s = ca * cb * g[a1, b1] * gi[a3, b3]
                if s:
                    for k, x in enumerate(H.mul(B(a2), B(b2))):
                        if x:
                            acc[k] = acc[k] + s * x
        mult[(a, b)] = {(k,): x for k, x in enumerate(acc) if x}

    phi = {}
    for a, b, c in product(range(n), repeat=3):
        acc = f.zero
        for (a1, a2, a3, a4), ca in legs(a, 4):
            for (b1, b2, b3, b4, b5), cb in legs(b, 5):
                outer = ca * cb * gi[a4, b5]
                if not outer:
                    continue
                for (c1, c2, c3, c4), cc in legs(c, 4):
                    s = outer * cc * g[b1, c1]
                    if not s:
                        continue
                    s = s * pair2(g, B(a1), H.mul(B(b2), B(c2)))
                    if not s:
                        continue
                    s = s * H.phi[a2, b3, c3] * pair2(gi, H.mul(B(a3), B(b4)), B(c4))
                    acc = acc + s
        phi[(a, b, c)] = acc

    alpha, beta = {}, {}
    if H.has_antipode:
        for h in range(n):
            x = y = f.zero
            for (h1, h2, h3), c in legs(h, 3):
                x = x + c * pair2(gi, H.S(B(h1)), B(h3)) * H.alpha[h2]
                y = y + c * pair2(g, B(h1), H.S(B(h3))) * H.beta[h2]
            alpha[(h,)], beta[(h,)] = x, y

    out = H.with_changes(
        mult=LinMap.from_images(f, (n, n), (n,), mult),
        phi=SparseTensor(f, (n, n, n), phi, FUNCTIONAL),
        alpha=SparseTensor(f, (n,), alpha, FUNCTIONAL) if H.has_antipode else None,
        beta=SparseTensor(f, (n,), beta, FUNCTIONAL) if H.has_antipode else None,
    )
    if validate:
        from .axioms import check_dual_quasi_bialgebra, check_dual_quasi_hopf
        report = check_dual_quasi_hopf(out) if out.has_antipode else check_dual_quasi_bialgebra(out)
        if not report.ok:
            raise ChecksFailed("gauge transform fails the axioms", report)
    return out


H4_LABELS = ("1", "g", "x", "gx")


def sweedler_h4(field: FieldSpec) -> AlgebraInstance:
    """Sweedler's Hopf algebra: g² = 1, x² = 0, xg = -gx, Δ(x) = x⊗1 + g⊗x."""
    if field.characteristic == 2:
        raise UnsupportedCharacteristic("Sweedler's algebra needs characteristic other than 2")
    f = field
    o, g, x, gx = range(4)
    one, neg = f.one, -f.one
    comult = {
        (o,): {(o, o): one},
        (g,): {(g, g): one},
        (x,): {(x, o): one, (g, x): one},
        (gx,): {(gx, g): one, (o, gx): one},
    }
    table = {
        (o, o): {o: one}, (o, g): {g: one}, (o, x): {x: one}, (o, gx): {gx: one},
        (g, o): {g: one}, (g, g): {o: one}, (g, x): {gx: one}, (g, gx): {x: one},
        (x, o): {x: one}, (x, g): {gx: neg},
        (gx, o): {gx: one}, (gx, g): {x: neg},
    }
    antipode = {(o,): {(o,): one}, (g,): {(g,): one}, (x,): {(gx,): neg}, (gx,): {(x,): one}}
    eps = SparseTensor(f, (4,), {(o,): one, (g,): one}, FUNCTIONAL)
    trivial_phi = {(a, b, c): one for a, b, c in product((o, g), repeat=3)}
    return AlgebraInstance(
        field=f,
        labels=H4_LABELS,
        comult=LinMap.from_images(f, (4,), (4, 4), comult),
        counit=eps,
        mult=LinMap.from_images(f, (4, 4), (4,), {k: {(t,): c for t, c in v.items()} for k, v in table.items()}),
        unit=SparseTensor(f, (4,), {(o,): one}),
        phi=SparseTensor(f, (4, 4, 4), trivial_phi, FUNCTIONAL),
        antipode=LinMap.from_images(f, (4,), (4,), antipode),
        alpha=eps,
        beta=eps,
        grouplikes=(SparseTensor(f, (4,), {(o,): one}), SparseTensor(f, (4,), {(g,): one})),
    )


def tensor_product_instance(H: AlgebraInstance, K: AlgebraInstance) -> AlgebraInstance:
    """``H ⊗ K`` with every structure map taken factorwise.

    Basis ``h.k`` in lexicographic order.  Useful because it combines a
    nontrivial reassociator with a non-cocommutative coalgebra.
    """
    if H.field != K.field:
        raise FieldMismatch(f"{H.field} vs {K.field}")
    f = H.field
    m = K.n
    pairs = list(product(range(H.n), range(K.n)))
    labels = tuple(f"{H.labels[a]}.{K.labels[b]}" for a, b in pairs)

    def idx(a, b):
        return a * m + b

    def tensor(s, t, variance):
        # interleave legs: (h1,...,hr) x (k1,...,kr) -> ((h1,k1),...)
        entries = {}
        for ks, c in s.items():
            for kt, d in t.items():
                key = tuple(idx(a, b) for a, b in zip(ks, kt))
                entries[key] = c * d
        return SparseTensor(f, (H.n * K.n,) * len(s.dims), entries, variance)

    def linmap(F, G):
        return LinMap(F.source_arity, F.target_arity, tensor(F.tensor, G.tensor, ELEMENT))

    has_s = H.has_antipode and K.has_antipode
    return AlgebraInstance(
        field=f,
        labels=labels,
        comult=linmap(H.comult, K.comult),
        counit=tensor(H.counit, K.counit, FUNCTIONAL),
        mult=linmap(H.mult, K.mult),
        unit=tensor(H.unit, K.unit, ELEMENT),
        phi=tensor(H.phi, K.phi, FUNCTIONAL),
        antipode=linmap(H.antipode, K.antipode) if has_s else None,
        alpha=tensor(H.alpha, K.alpha, FUNCTIONAL) if has_s else None,
        beta=tensor(H.beta, K.beta, FUNCTIONAL) if has_s else None,
        grouplikes=tuple(tensor(g, c, ELEMENT) for g in H.grouplikes for c in K.grouplikes),
    )


# a 2-form on H4 that is not a 2-cocycle, so the transform has nontrivial φ
H4_GAUGE = {
    ("1", "1"): 1, ("1", "g"): 1, ("g", "1"): 1, ("g", "g"): 2,
    ("g", "x"): 3, ("x", "x"): 1, ("x", "gx"): -1, ("gx", "g"): 1,
}


def gauged_h4(field: FieldSpec) -> AlgebraInstance:
    """Sweedler's algebra gauge-transformed by :data:`H4_GAUGE`.

    Non-cocommutative, noncommutative, and with a reassociator that is not
    symmetric in any pair of slots.
    """
    return gauge_transform(sweedler_h4(field), H4_GAUGE)


# ---------------------------------------------------------------- mutants

_TARGETS = {
    # name: (attribute, is a LinMap)
    "comult": ("comult", True),
    "mult": ("mult", True),
    "antipode": ("antipode", True),
    "counit": ("counit", False),
    "unit": ("unit", False),
    "phi": ("phi", False),
    "alpha": ("alpha", False),
    "beta": ("beta", False),
}


@dataclass(frozen=True)
class Mutation:
    """Add ``delta`` to one structure constant; ``index`` uses labels or ints."""

    target: str
    index: tuple
    delta: object


def mutate(H: AlgebraInstance, mutations) -> AlgebraInstance:
    """Apply one or more :class:`Mutation` objects; the result is not validated."""
    if isinstance(mutations, Mutation):
        mutations = [mutations]
    for m in mutations:
        if m.target not in _TARGETS:
            raise UnknownTarget(f"unknown mutation target {m.target!r}")
        attr, is_map = _TARGETS[m.target]
        current = getattr(H, attr)
        if current is None:
            raise UnknownTarget(f"instance has no {m.target}")
        tensor = current.tensor if is_map else current
        key = tuple(H.index(i) if isinstance(i, str) else i for i in m.index)
        entries = dict(tensor.items())
        entries[key] = tensor[key] + H.field(m.delta)
        new = SparseTensor(H.field, tensor.dims, entries, tensor.variance)
        if is_map:
            new = LinMap(current.source_arity, current.target_arity, new)
        H = H.with_changes(**{attr: new})
    return H


def _kz2():
    return group_algebra(CyclicGroupSpec(2, FieldSpec.rationals()))


def _kw2():
    q = FieldSpec.rationals()
    return twisted_group_algebra(CyclicGroupSpec(2, q, q(-1)))


def noncocycle():
    """``φ(g^a, g^b, g^c) = (-1)^{ab}`` on Z/2: normalized but not a cocycle."""
    return mutate(_kz2(), [Mutation("phi", ("g", "g", "e"), -2), Mutation("phi", ("g", "g", "g"), -2)])


def flipped_phi():
    """The Z/2 twist with φ(g,g,g) reset to +1 but β left alone."""
    return mutate(_kw2(), Mutation("phi", ("g", "g", "g"), 2))


def corrupted_comult():
    """Sweedler's algebra with Δ(x) = x⊗1 + x⊗g."""
    return mutate(sweedler_h4(FieldSpec.rationals()),
                  [Mutation("comult", ("x", "g", "x"), -1), Mutation("comult", ("x", "x", "g"), 1)])


def twist_beta_eps():
    """The Z/2 twist with β replaced by the counit."""
    return mutate(_kw2(), Mutation("beta", ("g",), 2))


MUTANTS = {
    "noncocycle": noncocycle,
    "flipped-phi": flipped_phi,
    "corrupted-comult": corrupted_comult,
    "twist-beta-eps": twist_beta_eps,
}

# where each mutant is expected to first fail under check_dual_quasi_hopf
MUTANT_FIRST_FAILURE = {
    "noncocycle": "cocycle",
    "flipped-phi": "phi_antipode",
    "corrupted-comult": "coassociativity",
    "twist-beta-eps": "phi_antipode",
}


def main_instances():
    """The five instances every acceptance criterion runs on."""
    q, f7 = FieldSpec.rationals(), FieldSpec.prime(7)
    return {
        "kz2": group_algebra(CyclicGroupSpec(2, q)),
        "kz3": group_algebra(CyclicGroupSpec(3, f7)),
        "kw2": twisted_group_algebra(CyclicGroupSpec(2, q, q(-1))),
        "kw3": twisted_group_algebra(CyclicGroupSpec(3, f7, f7(2))),
        "h4": sweedler_h4(q),
    }
