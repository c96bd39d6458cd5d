"""Sparse exact polynomials over Q(zeta_N).

``Poly`` is a sparse multivariate polynomial (exponent tuple -> nonzero
CycloNum).  The two-variable case is the workhorse (``BiPoly``): invariants
in Z1, Z2 and chart expressions in (u, v).  ``UniPoly`` is a dense
univariate polynomial used for fibers of binary forms; it supports exact
gcd and squarefree decomposition but deliberately no root finding.
"""

from __future__ import annotations

from math import comb

from .cyclo import CycloField, CycloNum

__all__ = [
    "Poly",
    "BiPoly",
    "UniPoly",
    "hessian_det",
    "jacobian_det",
    "substitute_linear",
    "point_multiplicity",
    "multiplicity_pattern",
    "squarefree_decomposition",
    "binary_pattern",
    "binary_divide",
    "binary_order",
    "binary_radical",
]


class Poly:
    """Sparse polynomial in ``nvars`` variables with coefficients in a cyclotomic field."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: CycloField, terms=None, nvars: int = 2):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or min(exps) < 0:
                    raise ValueError(f"bad exponent {exps} for {nvars} variables")
                c = field(c)
                if c:
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field, terms, nvars):
        obj = object.__new__(cls)
        obj.field, obj.nvars, obj.terms = field, nvars, terms
        return obj

    @classmethod
    def const(cls, field, value, nvars=2) -> "Poly":
        return cls(field, {(0,) * nvars: value}, nvars)

    @classmethod
    def var(cls, field, index, nvars=2) -> "Poly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(field, {tuple(exps): 1}, nvars)

    @classmethod
    def monomial(cls, field, exps, coeff=1) -> "Poly":
        return cls(field, {tuple(exps): coeff}, len(exps))

    # -- inspection ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exps) -> CycloNum:
        return self.terms.get(tuple(exps), self.field.zero)

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        """Lowest total degree among the nonzero terms."""
        if not self.terms:
            raise ValueError("zero polynomial has no lowest degree")
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Poly._raw(self.field, t, self.nvars) for d, t in sorted(parts.items())}

    def constant_term(self) -> CycloNum:
        return self.coeff((0,) * self.nvars)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, CycloNum)):
            return self == Poly.const(self.field, other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ["Z1", "Z2"] if self.nvars == 2 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            c = self.terms[e]
            cs = str(c.to_fraction()) if c.is_rational() else repr(c)
            parts.append(f"{cs}*{mon}" if mon else cs)
        return " + ".join(parts)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field or other.nvars != self.nvars:
                raise ValueError("polynomial field or arity mismatch")
            return other
        return Poly.const(self.field, other, self.nvars)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.field, out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, {e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Poly":
        s = self.field(s)
        if not s:
            return Poly._raw(self.field, {}, self.nvars)
        return Poly._raw(self.field, {e: c * s for e, c in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        o = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.field, {e: c for e, c in out.items() if c}, self.nvars)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.field, 1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, index: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                ne = list(e)
                ne[index] = k - 1
                out[tuple(ne)] = c * k
        return Poly._raw(self.field, out, self.nvars)

    def evaluate(self, point) -> CycloNum:
        total = self.field.zero
        point = [self.field(p) for p in point]
        for e, c in self.terms.items():
            t = c
            for p, k in zip(point, e):
                if k:
                    t = t * p**k
            total = total + t
        return total

    def compose(self, images: list["Poly"]) -> "Poly":
        """Substitute polynomials for each variable (all in one target ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        result = Poly(target.field, {}, target.nvars)
        cache: list[dict[int, Poly]] = [{0: Poly.const(target.field, 1, target.nvars)} for _ in images]

        def power(i, k):
            table = cache[i]
            if k not in table:
                table[k] = power(i, k - 1) * images[i]
            return table[k]

        for e, c in self.terms.items():
            t = Poly.const(target.field, target.field.embed(c), target.nvars)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def translate(self, point) -> "Poly":
        """P(x + point), expanded (Taylor shift)."""
        point = [self.field(p) for p in point]
        out: dict = {}
        for e, c in self.terms.items():
            # expand prod_i (x_i + p_i)^{e_i}
            partial = {(): c}
            for p, k in zip(point, e):
                nxt = {}
                for pre, val in partial.items():
                    for j in range(k + 1):
                        coef = val * comb(k, j)
                        if k - j:
                            if not p:
                                continue
                            coef = coef * p ** (k - j)
                        key = pre + (j,)
                        s = nxt.get(key)
                        nxt[key] = coef if s is None else s + coef
                partial = nxt
            for key, val in partial.items():
                s = out.get(key)
                out[key] = val if s is None else s + val
        return Poly._raw(self.field, {e: c for e, c in out.items() if c}, self.nvars)

    def map_field(self, target: CycloField) -> "Poly":
        return Poly._raw(target, {e: target.embed(c) for e, c in self.terms.items()}, self.nvars)

    def leading_exponent(self):
        return max(self.terms)

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by a single polynomial in lex order.

        For a principal ideal the divisor alone is a Groebner basis, so the
        remainder vanishes exactly when the division is exact.
        """
        d = self._coerce(divisor)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e = d.leading_exponent()
        lead_inv = d.terms[lead_e].inverse()
        rem = dict(self.terms)
        quot: dict = {}
        out_rem: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if all(a >= b for a, b in zip(e, lead_e)):
                qe = tuple(a - b for a, b in zip(e, lead_e))
                qc = c * lead_inv
                quot[qe] = quot.get(qe, self.field.zero) + qc
                for de, dc in d.terms.items():
                    te = tuple(a + b for a, b in zip(qe, de))
                    s = rem.get(te, self.field.zero) - qc * dc
                    if s:
                        rem[te] = s
                    else:
                        rem.pop(te, None)
            else:
                out_rem[e] = c
                del rem[e]
        return (
            Poly._raw(self.field, {e: c for e, c in quot.items() if c}, self.nvars),
            Poly._raw(self.field, out_rem, self.nvars),
        )


BiPoly = Poly


def _rows(M):
    if hasattr(M, "rows"):
        return M.rows()
    (a, b), (c, d) = M
    return (a, b), (c, d)


def substitute_linear(P: Poly, M) -> Poly:
    """P(M . (Z1, Z2)^T): Z1 -> m11 Z1 + m12 Z2, Z2 -> m21 Z1 + m22 Z2."""
    if P.nvars != 2:
        raise ValueError("linear substitution is defined for bivariate polynomials")
    (a, b), (c, d) = _rows(M)
    f = P.field
    L1 = Poly(f, {(1, 0): a, (0, 1): b})
    L2 = Poly(f, {(1, 0): c, (0, 1): d})
    return P.compose([L1, L2])


def hessian_det(P: Poly) -> Poly:
    dxx = P.derivative(0).derivative(0)
    dyy = P.derivative(1).derivative(1)
    dxy = P.derivative(0).derivative(1)
    return dxx * dyy - dxy * dxy


def jacobian_det(P: Poly, Q: Poly) -> Poly:
    return P.derivative(0) * Q.derivative(1) - P.derivative(1) * Q.derivative(0)


def point_multiplicity(P: Poly, point) -> int:
    """Order of vanishing of P at a point: lowest total degree after a Taylor shift."""
    if not P:
        raise ValueError("multiplicity of the zero polynomial is undefined")
    return P.translate(point).min_degree()


# -- univariate ------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficients low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> CycloNum:
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"UniPoly({[c.to_fraction() if c.is_rational() else c for c in self.coeffs]})"

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        return UniPoly(
            self.field,
            [
                (self.coeffs[i] if i < len(self.coeffs) else z)
                + (other.coeffs[i] if i < len(other.coeffs) else z)
                for i in range(n)
            ],
        )

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    def derivative(self) -> "UniPoly":
        return UniPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        inv = self.lead().inverse()
        return UniPoly(self.field, [c * inv for c in self.coeffs])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree()
        inv = other.lead().inverse()
        quot = [self.field.zero] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                q = c * inv
                quot[k - dq] = q
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] = rem[k - dq + i] - q * b
        return UniPoly(self.field, quot), UniPoly(self.field, rem[:dq] if dq else [])

    def __floordiv__(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def evaluate(self, x) -> CycloNum:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(f: UniPoly) -> list[tuple[int, UniPoly]]:
    """Yun's algorithm: f = lc * prod_i a_i^i with the a_i squarefree and coprime.

    Returns the pairs (i, a_i) with deg a_i > 0.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    if f.degree() == 0:
        return []
    fp = f.derivative()
    a0 = uni_gcd(f, fp)
    b = f // a0
    c = fp // a0
    d = c - b.derivative()
    i = 1
    out = []
    while b.degree() > 0:
        a = uni_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree() > 0:
            out.append((i, a))
        i += 1
    return out


def multiplicity_pattern(f: UniPoly) -> dict[int, int]:
    """Map multiplicity -> degree of the squarefree factor carrying it."""
    return {m: a.degree() for m, a in squarefree_decomposition(f)}


# -- binary forms ------------------------------------------------------------


def _form_degree(P: Poly) -> int:
    if not P.is_homogeneous():
        raise ValueError("expected a homogeneous binary form")
    return P.degree()


def dehomogenize(P: Poly) -> UniPoly:
    """P(x, 1) as a univariate polynomial in x."""
    n = _form_degree(P)
    cs = [P.field.zero] * (n + 1)
    for (a, _), c in P.terms.items():
        cs[a] = c
    return UniPoly(P.field, cs)


def _order_at_infinity(P: Poly) -> int:
    # [1:0] is the point Z2 = 0
    return min(b for _, b in P.terms)


def _homogenize(f: UniPoly, n: int) -> Poly:
    return Poly(f.field, {(a, n - a): c for a, c in enumerate(f.coeffs) if c})


def binary_pattern(P: Poly) -> dict[int, int]:
    """Multiplicity structure of the roots of a binary form on P^1.

    Both charts are used: the affine chart Z2 = 1 via squarefree
    decomposition, and the point [1:0] via the Z2-adic order.  Returns
    multiplicity -> number of distinct roots.
    """
    if not P:
        raise ValueError("zero form")
    pattern = dict(multiplicity_pattern(dehomogenize(P)))
    inf = _order_at_infinity(P)
    if inf:
        pattern[inf] = pattern.get(inf, 0) + 1
    return pattern


def binary_divide(P: Poly, G: Poly) -> Poly | None:
    """Exact quotient of binary forms, or None if G does not divide P."""
    n, m = _form_degree(P), _form_degree(G)
    if m > n or _order_at_infinity(G) > _order_at_infinity(P):
        return None
    q, r = dehomogenize(P).divmod(dehomogenize(G))
    if not r.is_zero():
        return None
    return _homogenize(q, n - m)


def binary_order(P: Poly, G: Poly) -> int:
    """Largest e with G^e dividing P (G a nonconstant binary form)."""
    if _form_degree(G) == 0:
        raise ValueError("order with respect to a constant form")
    e = 0
    while True:
        q = binary_divide(P, G)
        if q is None:
            return e
        P, e = q, e + 1


def binary_radical(P: Poly) -> Poly:
    """Product of the distinct linear factors of a binary form (up to scalar)."""
    f = dehomogenize(P)
    rad = UniPoly(P.field, [1])
    for _, a in squarefree_decomposition(f):
        rad = rad * a
    deg = rad.degree() + (1 if _order_at_infinity(P) else 0)
    return _homogenize(rad, deg)
