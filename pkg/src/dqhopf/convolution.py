"""Convolution products on ``(H^{⊗k})*`` and on maps into ``H*``.

``(f*g)(x) = f(x_(1)) g(x_(2))`` where ``H^{⊗k}`` carries the componentwise
coproduct.  Inverses are found by an exact dense linear solve over the
``n^k`` unknown values and then checked on both sides.
"""
from __future__ import annotations

from itertools import product

from .errors import ArityMismatch, NotInvertible
from .scalars import Matrix, solve
from .tensors import FUNCTIONAL, LinMap, SparseTensor, check_cost


class ConvContext:
    """Coproduct data of ``H^{⊗k}``, cached per context."""

    def __init__(self, H, k):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.H = H
        self.k = k
        self.tuples = list(product(range(H.n), repeat=k))
        check_cost(len(self.tuples), "convolution context")
        self._split = None

    def split(self, x):
        """``[(x', x'', c), ...]`` with ``Δ(x) = Σ c x'⊗x''`` componentwise."""
        if self._split is None:
            self._split = {}
        terms = self._split.get(x)
        if terms is None:
            H = self.H
            f = H.field
            terms = [((), (), f.one)]
            for i in x:
                terms = [(a + (j,), b + (l,), c * d) for a, b, c in terms for (j, l), d in H.comult_terms(i)]
            self._split[x] = terms
        return terms

    @property
    def dims(self):
        return (self.H.n,) * self.k

    def unit(self):
        """``ε^{⊗k}``."""
        H = self.H
        eps = H.eps_vec
        entries = {}
        for x in self.tuples:
            c = H.field.one
            for i in x:
                c = c * eps[i]
            entries[x] = c
        return SparseTensor(H.field, self.dims, entries, FUNCTIONAL)


def _check(f, ctx):
    if f.variance != FUNCTIONAL or f.dims != ctx.dims:
        raise ArityMismatch(f"expected a functional on H^{ctx.k}, got {f.variance} with dims {f.dims}")


def convolve(f: SparseTensor, g: SparseTensor, ctx: ConvContext):
    _check(f, ctx)
    _check(g, ctx)
    z = ctx.H.field.zero
    fl, gl = f._lookup, g._lookup
    entries = {}
    for x in ctx.tuples:
        acc = z
        for a, b, c in ctx.split(x):
            fa = fl.get(a)
            if fa is None:
                continue
            gb = gl.get(b)
            if gb is None:
                continue
            acc = acc + c * fa * gb
        entries[x] = acc
    return SparseTensor(ctx.H.field, ctx.dims, entries, FUNCTIONAL)


def convolution_inverse(f: SparseTensor, ctx: ConvContext, side="left"):
    """Two-sided convolution inverse of ``f``.

    ``side="left"`` solves ``f*g = ε^{⊗k}`` for ``g``; ``side="right"``
    solves ``g*f = ε^{⊗k}``.  Either way the other equation is verified
    before returning.
    """
    _check(f, ctx)
    index = {x: r for r, x in enumerate(ctx.tuples)}
    N = len(ctx.tuples)
    field = ctx.H.field
    rows = [[field.zero] * N for _ in range(N)]
    for x in ctx.tuples:
        row = rows[index[x]]
        for a, b, c in ctx.split(x):
            known, unknown = (a, b) if side == "left" else (b, a)
            fv = f._lookup.get(known)
            if fv is not None:
                col = index[unknown]
                row[col] = row[col] + c * fv
    unit = ctx.unit()
    rhs = Matrix(field, [[unit[x]] for x in ctx.tuples], 1)
    sol = solve(Matrix(field, rows, N), rhs)
    if sol is None:
        raise NotInvertible("convolution system has no solution")
    g = SparseTensor(field, ctx.dims, {x: sol[index[x], 0] for x in ctx.tuples}, FUNCTIONAL)
    if convolve(f, g, ctx) != unit or convolve(g, f, ctx) != unit:
        raise NotInvertible("solution is not a two-sided convolution inverse")
    return g


# ---------------------------------------------------------------- H* and maps into it


def dual_convolve(H, a, b):
    """Convolution of two dense functionals on ``H``."""
    z = H.field.zero
    out = []
    for zi in range(H.n):
        acc = z
        for (j, l), d in H.comult_terms(zi):
            aj = a[j]
            if aj:
                bl = b[l]
                if bl:
                    acc = acc + d * aj * bl
        out.append(acc)
    return tuple(out)


def map_images(F: LinMap, H):
    """Dense H*-value of ``F`` at every basis tuple of its source."""
    out = {}
    for x in product(range(H.n), repeat=F.source_arity):
        v = [H.field.zero] * H.n
        for (j,), c in F.image(x):
            v[j] = c
        out[x] = tuple(v)
    return out


def maps_from_images(H, source_arity, images):
    return LinMap.from_images(H.field, (H.n,) * source_arity, (H.n,),
                              {x: {(j,): c for j, c in enumerate(v) if c} for x, v in images.items()})


def unit_map(H, source_arity=1):
    """``x ↦ ε^{⊗s}(x) ε``, the unit for :func:`convolve_maps`."""
    ctx = ConvContext(H, source_arity)
    u = ctx.unit()
    eps = H.eps_vec
    return maps_from_images(H, source_arity, {x: tuple(u[x] * e for e in eps) for x in ctx.tuples})


def convolve_maps(F: LinMap, G: LinMap, H):
    """``(F*G)(x) = F(x_(1)) * G(x_(2))`` for maps ``H^{⊗s} → H*``."""
    if F.source_arity != G.source_arity or F.target_arity != 1 or G.target_arity != 1:
        raise ArityMismatch("convolve_maps needs two maps H^s -> H* with equal s")
    ctx = ConvContext(H, F.source_arity)
    fi, gi = map_images(F, H), map_images(G, H)
    out = {}
    for x in ctx.tuples:
        acc = list(H.zero_vec)
        for a, b, c in ctx.split(x):
            prod_ab = dual_convolve(H, fi[a], gi[b])
            for j, v in enumerate(prod_ab):
                if v:
                    acc[j] = acc[j] + c * v
        out[x] = tuple(acc)
    return maps_from_images(H, F.source_arity, out)
