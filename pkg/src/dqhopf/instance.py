"""The :class:`AlgebraInstance` type and its line-oriented text format."""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property
from itertools import product

from .errors import DimensionMismatch, ParseError, UnknownBasisLabel
from .scalars import FieldSpec, Matrix
from .tensors import ELEMENT, FUNCTIONAL, LinMap, SparseTensor


@dataclass(frozen=True)
class AlgebraInstance:
    """A candidate dual quasi-Hopf algebra given by structure constants.

    Nothing here is checked beyond shapes; see :mod:`dqhopf.axioms`.
    ``mult`` is ``H⊗H → H``, ``comult`` is ``H → H⊗H``, ``phi`` is a
    functional on ``H⊗H⊗H``.  ``antipode``, ``alpha`` and ``beta`` are
    either all present or all absent.
    """

    field: FieldSpec
    labels: tuple
    comult: LinMap
    counit: SparseTensor
    mult: LinMap
    unit: SparseTensor
    phi: SparseTensor
    antipode: LinMap | None = None
    alpha: SparseTensor | None = None
    beta: SparseTensor | None = None
    grouplikes: tuple = dc_field(default=())

    def __post_init__(self):
        n = len(self.labels)
        if n < 1:
            raise DimensionMismatch("dimension must be at least 1")
        if len(set(self.labels)) != n:
            raise ValueError("basis labels must be distinct")

        def expect(name, t, dims, variance):
            if t.dims != dims or t.variance != variance:
                raise DimensionMismatch(f"{name} has dims {t.dims} ({t.variance}), expected {dims} ({variance})")

        expect("comult", self.comult.tensor, (n, n, n), ELEMENT)
        if self.comult.source_arity != 1:
            raise DimensionMismatch("comult must be a 1 -> 2 map")
        expect("mult", self.mult.tensor, (n, n, n), ELEMENT)
        if self.mult.source_arity != 2:
            raise DimensionMismatch("mult must be a 2 -> 1 map")
        expect("counit", self.counit, (n,), FUNCTIONAL)
        expect("unit", self.unit, (n,), ELEMENT)
        expect("phi", self.phi, (n, n, n), FUNCTIONAL)
        present = [x is not None for x in (self.antipode, self.alpha, self.beta)]
        if any(present) and not all(present):
            raise ValueError("antipode, alpha and beta must be given together")
        if self.antipode is not None:
            expect("antipode", self.antipode.tensor, (n, n), ELEMENT)
            expect("alpha", self.alpha, (n,), FUNCTIONAL)
            expect("beta", self.beta, (n,), FUNCTIONAL)
        for x in self.grouplikes:
            expect("grouplike", x, (n,), ELEMENT)

    @property
    def n(self):
        return len(self.labels)

    @property
    def has_antipode(self):
        return self.antipode is not None

    def index(self, label):
        return self.labels.index(label)

    # dense helpers; vectors are tuples of Scalars of length n

    @cached_property
    def _coproduct_cache(self):
        return {}

    @cached_property
    def zero_vec(self):
        return (self.field.zero,) * self.n

    def basis(self, i):
        v = [self.field.zero] * self.n
        v[i] = self.field.one
        return tuple(v)

    @cached_property
    def one(self):
        return self.unit.dense()

    @cached_property
    def eps_vec(self):
        return self.counit.dense()

    @cached_property
    def _mult_table(self):
        n = self.n
        table = [[list(self.zero_vec) for _ in range(n)] for _ in range(n)]
        for (i, j, k), c in self.mult.tensor.items():
            table[i][j][k] = c
        return [[tuple(v) for v in row] for row in table]

    @cached_property
    def _comult_terms(self):
        return [[(key, c) for key, c in self.comult.image((i,))] for i in range(self.n)]

    def comult_terms(self, i):
        """``[((j, k), c), ...]`` with ``Δ(e_i) = Σ c e_j⊗e_k``."""
        return self._comult_terms[i]

    def mul(self, u, v):
        acc = list(self.zero_vec)
        table = self._mult_table
        for i, a in enumerate(u):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        acc[k] = acc[k] + ab * c
        return tuple(acc)

    def eps(self, u):
        acc = self.field.zero
        for a, e in zip(u, self.eps_vec):
            if a and e:
                acc = acc + a * e
        return acc

    @cached_property
    def S_matrix(self):
        if self.antipode is None:
            return None
        return self.antipode.to_matrix()

    def S(self, u):
        return self.S_matrix.apply(u)

    def pair(self, f, u):
        """``f(u)`` for a dense functional and a dense vector."""
        acc = self.field.zero
        for a, b in zip(f, u):
            if a and b:
                acc = acc + a * b
        return acc

    def phi_at(self, u, v, w, functional=None):
        """Evaluate ``phi`` (or another arity-3 functional) multilinearly."""
        f = self.phi if functional is None else functional
        acc = self.field.zero
        for (i, j, k), c in f.items():
            a = u[i]
            if a:
                b = v[j]
                if b:
                    d = w[k]
                    if d:
                        acc = acc + c * a * b * d
        return acc

    @cached_property
    def phi_inv(self):
        """Convolution inverse of ``phi``; raises NotInvertible."""
        from .convolution import ConvContext, convolution_inverse
        return convolution_inverse(self.phi, ConvContext(self, 3))

    def with_changes(self, **changes):
        return replace(self, **changes)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\S+")
_KEYWORDS = ("field", "dim", "basis", "unit", "counit", "mult", "comult", "phi",
             "antipode", "alpha", "beta", "grouplike")


class _Line:
    def __init__(self, lineno, text):
        self.lineno = lineno
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]

    def error(self, msg, pos=0, cls=ParseError):
        col = self.tokens[pos][1] if pos < len(self.tokens) else (self.tokens[-1][1] if self.tokens else 1)
        return cls(msg, self.lineno, col)


class _Parser:
    def __init__(self):
        self.field = None
        self.n = None
        self.labels = None

    def resolve(self, line, pos, token):
        if token in self._label_index:
            return self._label_index[token]
        if token.isdigit():
            i = int(token)
            if i >= self.n:
                raise line.error(f"basis index {i} out of range for dimension {self.n}", pos, DimensionMismatch)
            return i
        raise line.error(f"unknown basis label {token!r}", pos, UnknownBasisLabel)

    def scalar(self, line, pos, text):
        try:
            return self.field.parse_scalar(text)
        except (ParseError, ZeroDivisionError) as exc:
            raise line.error(f"bad scalar {text!r}", pos) from exc

    def term(self, line, pos, arity):
        token = line.tokens[pos][0]
        head, sep, coeff = token.rpartition(":")
        if not sep or not head:
            raise line.error(f"expected label:scalar, got {token!r}", pos)
        parts = head.split(",")
        if len(parts) != arity:
            raise line.error(f"expected {arity} comma-separated labels in {token!r}", pos)
        key = tuple(self.resolve(line, pos, p) for p in parts)
        return key, self.scalar(line, pos, coeff)

    def terms(self, line, start, arity):
        out = {}
        for pos in range(start, len(line.tokens)):
            key, c = self.term(line, pos, arity)
            if key in out:
                raise line.error("repeated basis entry", pos)
            out[key] = c
        return out

    def arrow(self, line, nsrc):
        if len(line.tokens) < nsrc + 2 or line.tokens[nsrc + 1][0] != "->":
            raise line.error(f"expected {nsrc} labels followed by '->'", min(nsrc + 1, len(line.tokens) - 1))
        return tuple(self.resolve(line, 1 + i, line.tokens[1 + i][0]) for i in range(nsrc))


def parse_instance(text) -> AlgebraInstance:
    """Parse the instance text format.  Axioms are not checked."""
    p = _Parser()
    singles = {}
    mult, comult, phi, antipode = {}, {}, {}, {}
    grouplikes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _Line(lineno, raw.split("#", 1)[0])
        if not line.tokens:
            continue
        kw = line.tokens[0][0]
        if kw not in _KEYWORDS:
            raise line.error(f"unknown keyword {kw!r}")
        if kw == "field":
            if p.field is not None:
                raise line.error("field declared twice")
            try:
                p.field = FieldSpec.parse(" ".join(t for t, _ in line.tokens[1:]))
            except ValueError as exc:
                raise line.error(getattr(exc, "message", str(exc)), 1) from exc
            continue
        if p.field is None:
            raise line.error("the first declaration must be 'field'")
        if kw == "dim":
            if p.n is not None:
                raise line.error("dim declared twice")
            if len(line.tokens) != 2 or not line.tokens[1][0].isdigit() or int(line.tokens[1][0]) < 1:
                raise line.error("dim takes one positive integer", 1)
            p.n = int(line.tokens[1][0])
            continue
        if p.n is None:
            raise line.error("'dim' must precede other declarations")
        if kw == "basis":
            if p.labels is not None:
                raise line.error("basis declared twice")
            labels = [t for t, _ in line.tokens[1:]]
            if len(labels) != p.n:
                raise line.error(f"basis lists {len(labels)} labels for dimension {p.n}", 0, DimensionMismatch)
            if len(set(labels)) != len(labels):
                raise line.error("duplicate basis label")
            for pos, lab in enumerate(labels, 1):
                if any(ch in lab for ch in ":,") or lab == "->":
                    raise line.error(f"illegal basis label {lab!r}", pos)
            p.labels = tuple(labels)
            p._label_index = {lab: i for i, lab in enumerate(labels)}
            continue
        if p.labels is None:
            raise line.error("'basis' must precede structure constants")

        if kw in ("unit", "counit", "alpha", "beta"):
            if kw in singles:
                raise line.error(f"{kw} declared twice")
            singles[kw] = {k: c for k, c in p.terms(line, 1, 1).items()}
        elif kw == "grouplike":
            if len(line.tokens) == 2 and ":" not in line.tokens[1][0]:
                grouplikes.append({(p.resolve(line, 1, line.tokens[1][0]),): p.field.one})
            else:
                grouplikes.append(p.terms(line, 1, 1))
        elif kw == "mult":
            src = p.arrow(line, 2)
            if src in mult:
                raise line.error("repeated mult entry")
            mult[src] = p.terms(line, 4, 1)
        elif kw == "comult":
            src = p.arrow(line, 1)
            if src in comult:
                raise line.error("repeated comult entry")
            comult[src] = p.terms(line, 3, 2)
        elif kw == "antipode":
            src = p.arrow(line, 1)
            if src in antipode:
                raise line.error("repeated antipode entry")
            antipode[src] = p.terms(line, 3, 1)
        elif kw == "phi":
            src = p.arrow(line, 3)
            if src in phi:
                raise line.error("repeated phi entry")
            if len(line.tokens) != 6:
                raise line.error("phi takes three labels, '->' and one scalar", min(5, len(line.tokens) - 1))
            phi[src] = p.scalar(line, 5, line.tokens[5][0])

    end = len(text.splitlines()) + 1
    if p.labels is None:
        raise ParseError("missing field/dim/basis header", end, 1)
    for kw in ("unit", "counit"):
        if kw not in singles:
            raise ParseError(f"missing '{kw}' declaration", end, 1)
    hopf = [kw for kw in ("antipode", "alpha", "beta") if (antipode if kw == "antipode" else kw in singles)]
    if hopf and len(hopf) != 3:
        missing = [kw for kw in ("antipode", "alpha", "beta") if kw not in hopf]
        raise ParseError(
            "antipode, alpha and beta must be given together (missing: " + ", ".join(missing) + ")", end, 1)

    f, n = p.field, p.n
    inst = AlgebraInstance(
        field=f,
        labels=p.labels,
        comult=LinMap.from_images(f, (n,), (n, n), comult),
        counit=SparseTensor(f, (n,), singles["counit"], FUNCTIONAL),
        mult=LinMap.from_images(f, (n, n), (n,), mult),
        unit=SparseTensor(f, (n,), singles["unit"]),
        phi=SparseTensor(f, (n, n, n), phi, FUNCTIONAL),
        antipode=LinMap.from_images(f, (n,), (n,), antipode) if hopf else None,
        alpha=SparseTensor(f, (n,), singles["alpha"], FUNCTIONAL) if hopf else None,
        beta=SparseTensor(f, (n,), singles["beta"], FUNCTIONAL) if hopf else None,
        grouplikes=tuple(SparseTensor(f, (n,), g) for g in grouplikes),
    )
    return inst


def load_instance(path) -> AlgebraInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# ---------------------------------------------------------------- writing


def format_terms(labels, items):
    return " ".join(f"{','.join(labels[i] for i in key)}:{c}" for key, c in items)


def format_element(H, vec):
    """Sparse ``label:coeff`` rendering of a dense vector."""
    items = [((i,), c) for i, c in enumerate(vec) if c]
    return format_terms(H.labels, items) if items else "0"


def format_instance(H: AlgebraInstance) -> str:
    lab = H.labels
    out = [f"field {H.field}", f"dim {H.n}", "basis " + " ".join(lab)]

    def single(kw, t):
        body = format_terms(lab, t.items())
        out.append(f"{kw} {body}" if body else kw)

    single("unit", H.unit)
    single("counit", H.counit)
    for i, j in product(range(H.n), repeat=2):
        img = H.mult.image((i, j))
        if img:
            out.append(f"mult {lab[i]} {lab[j]} -> {format_terms(lab, img)}")
    for i in range(H.n):
        img = H.comult.image((i,))
        if img:
            out.append(f"comult {lab[i]} -> {format_terms(lab, img)}")
    for (i, j, k), c in H.phi.items():
        out.append(f"phi {lab[i]} {lab[j]} {lab[k]} -> {c}")
    if H.antipode is not None:
        for i in range(H.n):
            img = H.antipode.image((i,))
            if img:
                out.append(f"antipode {lab[i]} -> {format_terms(lab, img)}")
        single("alpha", H.alpha)
        single("beta", H.beta)
    for g in H.grouplikes:
        items = g.items()
        if len(items) == 1 and items[0][1] == 1:
            out.append(f"grouplike {lab[items[0][0][0]]}")
        else:
            out.append(f"grouplike {format_terms(lab, items)}")
    return "\n".join(out) + "\n"


def matrix_of(H, fn):
    """Matrix (images in columns) of a linear map given on dense vectors."""
    return Matrix.from_columns(H.field, [fn(H.basis(i)) for i in range(H.n)], H.n)
