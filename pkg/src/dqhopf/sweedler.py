"""A small language for identities written in Sweedler notation.

Grammar (juxtaposition is product; element products need parentheses
beyond two factors because multiplication need not be associative)::

    identity     := side "=" side
    side         := { scalarfactor | elemexpr }       at most two elemexprs
    scalarfactor := NAME "(" arg { "," arg } ")"
    arg          := { scalarfactor | elemexpr }       one or two elemexprs
    elemexpr     := VAR SUBSCRIPT | "1" | "S(" arg ")" | "Sl(" arg ")"
                  | "(" elemexpr [ elemexpr ] ")"

Scalar factors are central, so any that appear inside an argument are
pulled out to the enclosing side.  A variable ``h`` whose largest subscript
on a side is ``m`` stands for the legs of ``Δ^(m-1)(h)``; each side is
expanded separately and both sides are compared on every basis tuple.

Example::

    >>> ident = parse_identity("S(h1) alpha(h2) h3 = alpha(h1) 1")
    >>> ident.variables
    ('h',)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import (AmbiguousProduct, ArityMismatch, DuplicateSubscript, MixedResultKind,
                     NotInvertible, ParseError, SubscriptGap, UnboundName)
from .report import SKIPPED, Report, compare, failed, passed
from .tensors import FUNCTIONAL, SparseTensor, check_cost, iterated_coproduct

MAX_DEPTH = 9
ELEMENT_OPS = ("S", "Sl")
BUILTIN_ARITIES = {"phi": 3, "phiinv": 3, "alpha": 1, "beta": 1, "eps": 1, "T": 1}


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Var:
    name: str
    sub: int


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Apply:
    op: str
    arg: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Factor:
    name: str
    args: tuple


@dataclass(frozen=True)
class Side:
    factors: tuple
    element: object = None

    @property
    def is_element(self):
        return self.element is not None


@dataclass(frozen=True)
class SweedlerIdentity:
    lhs: Side
    rhs: Side

    @property
    def variables(self):
        """Free variables in order of first appearance (lhs factors, lhs element, rhs)."""
        seen = []
        for side in (self.lhs, self.rhs):
            for v in _side_vars(side):
                if v.name not in seen:
                    seen.append(v.name)
        return tuple(seen)

    def depths(self, side):
        out = {}
        for v in _side_vars(side):
            out[v.name] = max(out.get(v.name, 0), v.sub)
        return out

    def functional_names(self):
        names = []
        for side in (self.lhs, self.rhs):
            for f in _side_factors(side):
                if f.name not in names:
                    names.append(f.name)
        return names

    def __str__(self):
        return format_identity(self)


def _walk_elem(e):
    yield e
    if isinstance(e, Apply):
        yield from _walk_elem(e.arg)
    elif isinstance(e, Mul):
        yield from _walk_elem(e.left)
        yield from _walk_elem(e.right)


def _side_vars(side):
    for f in side.factors:
        for a in f.args:
            yield from (x for x in _walk_elem(a) if isinstance(x, Var))
    if side.element is not None:
        yield from (x for x in _walk_elem(side.element) if isinstance(x, Var))


def _side_factors(side):
    return side.factors


def _elem_ops(side):
    exprs = [a for f in side.factors for a in f.args]
    if side.element is not None:
        exprs.append(side.element)
    for e in exprs:
        for x in _walk_elem(e):
            if isinstance(x, Apply):
                yield x.op


# ---------------------------------------------------------------- printing


def format_elem(e):
    if isinstance(e, Var):
        return f"{e.name}{e.sub}"
    if isinstance(e, Unit):
        return "1"
    if isinstance(e, Apply):
        return f"{e.op}({format_elem(e.arg)})"
    return f"({format_elem(e.left)} {format_elem(e.right)})"


def format_side(side):
    parts = [f"{f.name}({', '.join(format_elem(a) for a in f.args)})" for f in side.factors]
    if side.element is not None:
        parts.append(format_elem(side.element))
    return " ".join(parts)


def format_identity(ident):
    return f"{format_side(ident.lhs)} = {format_side(ident.rhs)}"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<ident>[A-Za-z](?:[A-Za-z]|_(?=[A-Za-z]))*)(?:_?(?P<sub>[0-9]+))?
  | (?P<num>[0-9]+)
  | (?P<punct>[(),=])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str  # ident, one, punct, end
    text: str
    col: int
    sub: int | None = None


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        col = pos + 1
        pos = m.end()
        if m.group("space"):
            continue
        if m.group("ident"):
            sub = m.group("sub")
            toks.append(_Tok("ident", m.group("ident"), col, int(sub) if sub is not None else None))
        elif m.group("num"):
            if m.group("num") != "1":
                raise ParseError(f"only the unit '1' may appear as a number, got {m.group('num')!r}", 1, col)
            toks.append(_Tok("one", "1", col))
        else:
            toks.append(_Tok("punct", m.group("punct"), col))
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, arities):
        self.toks = _tokenize(text)
        self.i = 0
        self.arities = arities

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.take()
        if t.text != text or t.kind not in ("punct",):
            raise ParseError(f"expected {text!r}, got {t.text or 'end of input'!r}", 1, t.col)
        return t

    def at(self, *texts):
        t = self.peek()
        return t.kind == "punct" and t.text in texts

    def identity(self):
        lhs = self.side("=")
        self.expect("=")
        rhs = self.side(None)
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", 1, t.col)
        return lhs, rhs

    def side(self, stop):
        start = self.peek()
        factors, elems = [], []
        while True:
            t = self.peek()
            if t.kind == "end" or (stop is not None and t.kind == "punct" and t.text == stop):
                break
            self.item(factors, elems)
        if not factors and not elems:
            raise ParseError("empty side", 1, start.col)
        return Side(tuple(factors), self.combine(elems))

    def combine(self, elems):
        if len(elems) >= 3:
            raise AmbiguousProduct(
                "product of three or more elements needs parentheses", 1, elems[2][1])
        if len(elems) == 2:
            return Mul(elems[0][0], elems[1][0])
        return elems[0][0] if elems else None

    def item(self, factors, elems):
        t = self.peek()
        if t.kind == "punct" and t.text == "(":
            self.take()
            inner = []
            while not self.at(")"):
                if self.peek().kind == "end":
                    raise ParseError("unclosed parenthesis", 1, t.col)
                self.item(factors, inner)
            self.take()
            if not inner:
                raise ParseError("empty parentheses", 1, t.col)
            elems.append((self.combine(inner), t.col))
        elif t.kind == "one":
            self.take()
            elems.append((Unit(), t.col))
        elif t.kind == "ident":
            self.take()
            if t.sub is None and self.at("("):
                self.take()
                if t.text in ELEMENT_OPS:
                    arg = self.arg(factors)
                    self.expect(")")
                    elems.append((Apply(t.text, arg), t.col))
                else:
                    args = [self.arg(factors)]
                    while self.at(","):
                        self.take()
                        args.append(self.arg(factors))
                    self.expect(")")
                    want = self.arities.get(t.text)
                    if want is not None and want != len(args):
                        raise ParseError(f"{t.text} takes {want} argument(s), got {len(args)}", 1, t.col)
                    factors.append(Factor(t.text, tuple(args)))
            else:
                if t.text in ELEMENT_OPS or t.text in self.arities:
                    raise ParseError(f"{t.text} must be applied to an argument", 1, t.col)
                if t.sub is None:
                    raise ParseError(f"variable {t.text!r} needs a subscript", 1, t.col)
                if not 1 <= t.sub <= MAX_DEPTH:
                    raise ParseError(f"subscript {t.sub} outside 1..{MAX_DEPTH}", 1, t.col)
                elems.append((Var(t.text, t.sub), t.col))
        else:
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", 1, t.col)

    def arg(self, factors):
        start = self.peek()
        elems = []
        while not self.at(",", ")"):
            if self.peek().kind == "end" or self.at("="):
                raise ParseError("unterminated argument list", 1, self.peek().col)
            self.item(factors, elems)
        if not elems:
            raise ParseError("argument has no element expression", 1, start.col)
        return self.combine(elems)


def _check_subscripts(side, which):
    subs = {}
    for v in _side_vars(side):
        subs.setdefault(v.name, []).append(v.sub)
    for name, found in subs.items():
        dup = sorted({s for s in found if found.count(s) > 1})
        if dup:
            raise DuplicateSubscript(f"{name}{dup[0]} occurs more than once on the {which} side")
        missing = sorted(set(range(1, max(found) + 1)) - set(found))
        if missing:
            raise SubscriptGap(f"{name}{missing[0]} is missing on the {which} side (found {sorted(found)})")
    return set(subs)


def parse_identity(text, arities=None) -> SweedlerIdentity:
    """Parse and validate one identity.

    ``arities`` declares extra functional names; builtin names always carry
    their fixed arity.
    """
    table = dict(BUILTIN_ARITIES)
    if arities:
        table.update(arities)
    lhs, rhs = _Parser(text, table).identity()
    if lhs.is_element != rhs.is_element:
        raise MixedResultKind("one side is element-valued and the other scalar-valued")
    lv = _check_subscripts(lhs, "left")
    rv = _check_subscripts(rhs, "right")
    if lv != rv:
        raise ParseError(f"free variables differ between sides: {sorted(lv)} vs {sorted(rv)}")
    return SweedlerIdentity(lhs, rhs)


# ---------------------------------------------------------------- bindings


@dataclass
class Binding:
    functionals: dict
    operators: dict  # name -> Matrix (images in columns)


def default_binding(H, extras=None) -> Binding:
    """phi, phiinv, eps, plus alpha/beta/S/Sl/T when the instance supports them."""
    from .integrals import left_integrals
    from .pipeline import antipode_status

    funcs = {"phi": H.phi, "eps": H.counit}
    ops = {}
    try:
        funcs["phiinv"] = H.phi_inv
    except NotInvertible:
        pass
    if H.has_antipode:
        funcs["alpha"], funcs["beta"] = H.alpha, H.beta
        ops["S"] = H.S_matrix
        status = antipode_status(H)
        if status.left_inverse is not None:
            ops["Sl"] = status.left_inverse
    left = left_integrals(H)
    if len(left) == 1:
        funcs["T"] = left[0]
    if extras:
        funcs.update(extras)
    return Binding(funcs, ops)


def parse_bindings(text, H) -> dict:
    """Read user functionals, one per line: ``NAME = v0 v1 ...`` or ``NAME[k] = ...``.

    Values list ``f(e_i1, ..., e_ik)`` in lexicographic order of the index
    tuple; without ``[k]`` the arity is inferred from the count.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"([A-Za-z][A-Za-z_]*)\s*(?:\[\s*([0-9]+)\s*\])?\s*=\s*(.*)\Z", line)
        if not m:
            raise ParseError("expected NAME = values", lineno, 1)
        name, k, rest = m.group(1), m.group(2), m.group(3).split()
        if name in ELEMENT_OPS:
            raise ParseError(f"{name} is an element operator, not a functional", lineno, 1)
        if k is None:
            k, size = 1, H.n
            while size < len(rest):
                k, size = k + 1, size * H.n
        else:
            k, size = int(k), H.n ** int(k)
        if k < 1 or len(rest) != size:
            raise ParseError(f"{name} needs n^k values, got {len(rest)}", lineno, 1)
        try:
            vals = [H.field.parse_scalar(v) for v in rest]
        except (ParseError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar in bindings: {exc}", lineno, 1) from exc
        keys = product(range(H.n), repeat=k)
        out[name] = SparseTensor(H.field, (H.n,) * k, dict(zip(keys, vals)), FUNCTIONAL)
    return out


# ---------------------------------------------------------------- evaluation


class _Evaluator:
    # element values are kept sparse: lists of (basis index, coefficient)

    def __init__(self, H, binding):
        self.H = H
        self.binding = binding
        n = H.n
        self.mult = {(i, j): [(k, c) for (k,), c in H.mult.image((i, j))]
                     for i in range(n) for j in range(n)}
        self.ops = {name: [[(k, m[k, j]) for k in range(n) if m[k, j]] for j in range(n)]
                    for name, m in binding.operators.items()}
        self.one = [(k, c) for k, c in enumerate(H.one) if c]

    def elem(self, e, env):
        if isinstance(e, Var):
            return [(env[e.name][e.sub - 1], self.H.field.one)]
        if isinstance(e, Unit):
            return self.one
        if isinstance(e, Apply):
            cols = self.ops[e.op]
            return _collect((k, a * c) for j, a in self.elem(e.arg, env) for k, c in cols[j])
        left, right = self.elem(e.left, env), self.elem(e.right, env)
        return _collect((k, a * b * c) for i, a in left for j, b in right for k, c in self.mult[i, j])

    def factor(self, f, env):
        lookup = self.binding.functionals[f.name]._lookup
        acc = self.H.field.zero
        for combo in product(*(self.elem(a, env) for a in f.args)):
            c = lookup.get(tuple(i for i, _ in combo))
            if c is not None:
                for _, x in combo:
                    c = c * x
                acc = acc + c
        return acc

    def side(self, side, expansions, assignment):
        H = self.H
        names = list(expansions)
        term_lists = [expansions[v][assignment[v]] for v in names]
        scalar = H.field.zero
        vec = list(H.zero_vec)
        for combo in product(*term_lists):
            coeff = H.field.one
            env = {}
            for v, (legs, c) in zip(names, combo):
                env[v] = legs
                coeff = coeff * c
            for f in side.factors:
                coeff = coeff * self.factor(f, env)
                if not coeff:
                    break
            if not coeff:
                continue
            if side.element is None:
                scalar = scalar + coeff
            else:
                for k, x in self.elem(side.element, env):
                    vec[k] = vec[k] + coeff * x
        return tuple(vec) if side.element is not None else scalar


def _collect(pairs):
    acc = {}
    for k, c in pairs:
        acc[k] = acc[k] + c if k in acc else c
    return [(k, c) for k, c in sorted(acc.items()) if c]


def _expansions(H, depths):
    out = {}
    for v, m in depths.items():
        out[v] = [iterated_coproduct(H, m - 1, b).items() for b in range(H.n)]
    return out


def evaluate_identity(ident: SweedlerIdentity, H, binding: Binding | None = None, name="identity") -> Report:
    """Check ``ident`` on every tuple of basis elements; report the first failure."""
    if binding is None:
        binding = default_binding(H)
    for side in (ident.lhs, ident.rhs):
        for f in side.factors:
            if f.name not in binding.functionals:
                raise UnboundName(f"functional {f.name!r} is not bound")
            arity = binding.functionals[f.name].arity
            if arity != len(f.args):
                raise ArityMismatch(f"{f.name} is bound with arity {arity} but applied to {len(f.args)}")
        for op in _elem_ops(side):
            if op not in binding.operators:
                raise UnboundName(f"operator {op!r} is not bound")
    variables = ident.variables
    plans = []
    total = 0
    for side in (ident.lhs, ident.rhs):
        exp = _expansions(H, ident.depths(side))
        cost = 1
        for v in exp:
            cost *= sum(len(t) for t in exp[v])
        total += cost
        plans.append((side, exp))
    check_cost(total, "identity evaluation")
    ev = _Evaluator(H, binding)

    def cases():
        for tup in product(range(H.n), repeat=len(variables)):
            assignment = dict(zip(variables, tup))
            lhs = ev.side(plans[0][0], plans[0][1], assignment)
            rhs = ev.side(plans[1][0], plans[1][1], assignment)
            yield tup, lhs, rhs

    return Report([compare(name, cases())])


# ---------------------------------------------------------------- builtin corpus

CORPUS = {
    "quasi_associativity": "(h1 (g1 f1)) phi(h2, g2, f2) = phi(h1, g1, f1) ((h2 g2) f2)",
    "left_unit": "(1 h1) = h1",
    "right_unit": "(h1 1) = h1",
    "cocycle": "phi(h1, g1, (f1 e1)) phi((h2 g2), f2, e2) = phi(g1, f1, e1) phi(h1, (g2 f2), e2) phi(h2, g3, f3)",
    "normalization": "phi(h1, 1, g1) = eps(h1) eps(g1)",
    "antipode_alpha": "S(h1) alpha(h2) h3 = alpha(h1) 1",
    "antipode_beta": "h1 beta(h2) S(h3) = beta(h1) 1",
    "phi_antipode": "phi(h1 beta(h2), S(h3), alpha(h4) h5) = eps(h1)",
    "phiinv_antipode": "phiinv(S(h1), alpha(h2) h3, beta(h4) S(h5)) = eps(h1)",
}

# short names by position in the list of defining identities
CORPUS_ALIASES = {
    "e1": "quasi_associativity", "e2a": "left_unit", "e2b": "right_unit", "e3": "cocycle",
    "e4": "normalization", "e5a": "antipode_alpha", "e5b": "antipode_beta",
    "e6a": "phi_antipode", "e6b": "phiinv_antipode",
}

HOPF_IDENTITIES = ("antipode_alpha", "antipode_beta", "phi_antipode", "phiinv_antipode")


def builtin_corpus():
    """The nine defining identities as ``(name, SweedlerIdentity)`` pairs."""
    return [(name, parse_identity(text)) for name, text in CORPUS.items()]


def corpus_identity(name):
    """Look up a corpus identity by name or short alias."""
    name = CORPUS_ALIASES.get(name, name)
    if name not in CORPUS:
        raise KeyError(f"no builtin identity named {name!r}")
    return name, parse_identity(CORPUS[name])


def corpus_applicable(H, name, binding):
    if name in HOPF_IDENTITIES and not H.has_antipode:
        return False
    return name != "phiinv_antipode" or "phiinv" in binding.functionals


def cross_check(H, hand_report=None):
    """Compare every corpus identity against its hand-coded twin.

    Passes when status and first witness agree for every identity that the
    instance can evaluate.  Checks already present in ``hand_report`` are
    reused instead of being recomputed.
    """
    from .axioms import IDENTITY_CHECKS

    binding = default_binding(H)
    for name, ident in builtin_corpus():
        if not corpus_applicable(H, name, binding):
            continue
        if hand_report is not None and name in hand_report.names() and hand_report[name].status != SKIPPED:
            hand = hand_report[name]
        else:
            hand = IDENTITY_CHECKS[name](H)
        dsl = evaluate_identity(ident, H, binding, name).checks[0]
        if hand.status != dsl.status or hand.witness != dsl.witness:
            return failed("dsl_agreement", (), f"{name}: hand {hand.status} {hand.witness}",
                          f"dsl {dsl.status} {dsl.witness}")
    return passed("dsl_agreement")
