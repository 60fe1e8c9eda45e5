"""Left and right integrals on ``H`` and the distinguished grouplike."""
from __future__ import annotations

from dataclasses import dataclass

from .convolution import dual_convolve
from .errors import NotGrouplike, NotProportional
from .report import Report, failed, passed
from .scalars import Matrix, null_space
from .tensors import FUNCTIONAL, SparseTensor


@dataclass(frozen=True)
class IntegralData:
    left: list
    right: list
    grouplike: tuple | None  # dense coordinates of a; None unless dim ∫_l = 1


def _integral_system(H, side):
    # unknowns T_y; one equation per (x, k):
    #   left:  Σ_y Δ_x^{k y} T_y - T_x 1_k = 0
    #   right: Σ_y Δ_x^{y k} T_y - T_x 1_k = 0
    n = H.n
    rows = []
    for x in range(n):
        block = [[H.field.zero] * n for _ in range(n)]
        for (j, l), c in H.comult_terms(x):
            k, y = (j, l) if side == "left" else (l, j)
            block[k][y] = block[k][y] + c
        for k in range(n):
            block[k][x] = block[k][x] - H.one[k]
        rows.extend(block)
    return Matrix(H.field, rows, n)


def _integrals(H, side):
    return [SparseTensor.from_dense(H.field, v, FUNCTIONAL) for v in null_space(_integral_system(H, side))]


def left_integrals(H):
    """Basis of ``{T : x_1 T(x_2) = T(x) 1}``, first nonzero coordinate 1."""
    return _integrals(H, "left")


def right_integrals(H):
    """Basis of ``{T : T(x_1) x_2 = T(x) 1}``, first nonzero coordinate 1."""
    return _integrals(H, "right")


def proportionality(T, x):
    """``λ`` with ``x = λ T``, or None.  ``T`` must be nonzero."""
    lead = next(i for i, c in enumerate(T) if c)
    lam = x[lead] / T[lead]
    return lam if all(xi == lam * ti for xi, ti in zip(x, T)) else None


def check_ideal_property(H, T) -> Report:
    """``h* * T`` and ``T * h*`` lie in ``span{T}`` for every dual basis ``h*``.

    A failing witness shows the product and the multiple of ``T`` that agrees
    with it at the first nonzero coordinate of ``T``.
    """
    T = T.dense() if isinstance(T, SparseTensor) else tuple(T)
    report = Report()
    for name, left in (("ideal_left", True), ("ideal_right", False)):
        check = passed(name)
        for j in range(H.n):
            hs = H.basis(j)
            v = dual_convolve(H, hs, T) if left else dual_convolve(H, T, hs)
            if any(T):
                lead = next(i for i, c in enumerate(T) if c)
                nearest = tuple(v[lead] / T[lead] * t for t in T)
            else:
                nearest = T
            if v != nearest:
                check = failed(name, (j,), v, nearest)
                break
        report.add(check)
    return report


def is_grouplike(H, x):
    x = x.dense() if isinstance(x, SparseTensor) else tuple(x)
    if H.eps(x) != 1:
        return False
    lhs = {}
    for k, v in enumerate(x):
        if v:
            for key, c in H.comult_terms(k):
                lhs[key] = lhs.get(key, H.field.zero) + v * c
    lhs = {k: v for k, v in lhs.items() if v}
    rhs = {(i, j): a * b for i, a in enumerate(x) for j, b in enumerate(x) if a and b}
    return lhs == rhs


def distinguished_grouplike(H, T, check_inverse=True):
    """``a`` with ``T * h* = h*(a) T``, read off dual-basis element by element.

    The ratio is taken at the first coordinate where ``T`` is nonzero and then
    confirmed on every coordinate.
    """
    T = T.dense() if isinstance(T, SparseTensor) else tuple(T)
    if not any(T):
        raise NotProportional("zero functional has no distinguished grouplike")
    coords = []
    for j in range(H.n):
        v = dual_convolve(H, T, H.basis(j))
        lam = proportionality(T, v)
        if lam is None:
            raise NotProportional(f"T * e^{H.labels[j]} is not a multiple of T")
        coords.append(lam)
    a = tuple(coords)
    if not is_grouplike(H, a):
        raise NotGrouplike(f"extracted element {a} is not grouplike")
    if check_inverse and H.has_antipode:
        Sa = H.S(a)
        if H.mul(a, Sa) != H.one or H.mul(Sa, a) != H.one:
            raise NotGrouplike("extracted grouplike is not inverted by S")
    return a


def integral_data(H) -> IntegralData:
    left, right = left_integrals(H), right_integrals(H)
    a = distinguished_grouplike(H, left[0]) if len(left) == 1 else None
    return IntegralData(left, right, a)
