"""Local intersection numbers of plane curve germs at the origin.

i0(f, g) is the K-dimension of K[[x, y]]/(f, g), computed exactly by a
reduction loop: restrictions to the line x = 0 are either degree-reduced
against each other (which preserves the ideal) or, once one input is
divisible by x, an x factor is split off and accounted as the order of
the other restriction.  The value may be infinite, so results are
ExtNat, a natural number extended with INF.

i0_resultant_oracle recomputes the same number through ord_x of a
y-resultant after an admissible shear, with the Sylvester determinant
expanded fraction-free (Bareiss) over K[x].  The two routes share no
code beyond polynomial arithmetic, so they cross-check each other.
"""

from .errors import OracleFailure
from .field import u_gcd_monic, u_divmod, u_mul, u_trim
from .poly import (BivarPoly, monomial, div_xpow, biv_gcd, linear_change,
                   _to_ylist)


class ExtNat:
    """A natural number or infinity; totally ordered, absorbing addition."""

    __slots__ = ('v',)

    def __init__(self, v=None):
        if v is not None and v < 0:
            raise ValueError("negative value")
        self.v = v

    @property
    def is_infinite(self):
        return self.v is None

    def __int__(self):
        if self.v is None:
            raise ValueError("infinite value has no integer form")
        return self.v

    def __add__(self, other):
        if isinstance(other, int):
            other = ExtNat(other)
        if self.v is None or other.v is None:
            return INF
        return ExtNat(self.v + other.v)

    __radd__ = __add__

    def _key(self, other):
        if isinstance(other, int):
            other = ExtNat(other)
        if not isinstance(other, ExtNat):
            return NotImplemented
        return other

    def __eq__(self, other):
        o = self._key(other)
        return o is not NotImplemented and self.v == o.v

    def __lt__(self, other):
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        if self.v is None:
            return False
        return o.v is None or self.v < o.v

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        o = self._key(other)
        if o is NotImplemented:
            return NotImplemented
        return o < self

    def __ge__(self, other):
        return self == other or self > other

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return 'INF' if self.v is None else str(self.v)


INF = ExtNat()


def _ord_list(u):
    """Index of the first nonzero coefficient; None for the zero list."""
    for i, c in enumerate(u):
        if not c.is_zero():
            return i
    return None


def i0(f, g):
    """Intersection multiplicity of f and g at the origin, as an ExtNat.

    Total on all pairs: units give 0, a common factor through the origin
    (or a zero input next to a non-unit) gives INF.
    """
    if f.ctx != g.ctx:
        raise ValueError("operands over different fields")
    if (f.order() == 0) or (g.order() == 0):
        return ExtNat(0)
    if f.is_zero() or g.is_zero():
        return INF
    if biv_gcd(f, g).order() >= 1:
        return INF
    total = 0
    while True:
        f0, g0 = f.restrict_x0(), g.restrict_x0()
        if not f0:
            f, g = g, f
            f0, g0 = g0, f0
        assert f0, "a common factor x was excluded up front"
        rf = _ord_list(f0)
        if rf == 0:
            return ExtNat(total)          # f is a unit
        if not g0:
            # x divides g: split it off, i0(f, x) = ord_y f(0, y)
            total += rf
            g = div_xpow(g, 1)
            continue
        if _ord_list(g0) == 0:
            return ExtNat(total)          # g is a unit
        if len(f0) < len(g0):
            f, g = g, f
            f0, g0 = g0, f0
        # cancel the top of f(0, y) against g(0, y); the ideal is unchanged
        c = f0[-1] / g0[-1]
        f = f - monomial(f.ctx, 0, len(f0) - len(g0), c) * g
        assert not f.is_zero(), "coprimality was excluded up front"


# ---------------------------------------------------------------------------
# resultant route

def _u_sub(a, b):
    if not a and not b:
        return []
    z = (a or b)[0].ctx.zero
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z)
           for i in range(n)]
    return u_trim(out)


def _u_pow(u, e, ctx):
    out = [ctx.one]
    for _ in range(e):
        out = u_mul(out, u, ctx)
    return out


def _bareiss_det(M, ctx):
    """Determinant of a matrix of K[x] entries, fraction-free."""
    n = len(M)
    if n == 0:
        return [ctx.one]
    sign = 1
    prev = [ctx.one]
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((r for r in range(k + 1, n) if M[r][k]), None)
            if piv is None:
                return []
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            row_i = M[i]
            for j in range(k + 1, n):
                t = _u_sub(u_mul(M[k][k], row_i[j], ctx),
                           u_mul(row_i[k], M[k][j], ctx))
                if t:
                    q, r = u_divmod(t, prev)
                    assert not r, "Bareiss division must be exact"
                    row_i[j] = q
                else:
                    row_i[j] = []
            row_i[k] = []
        prev = M[k][k]
        if not prev:
            return []
    det = M[n - 1][n - 1]
    if sign < 0:
        det = [-c for c in det]
    return det


def resultant_y(f, g):
    """Res_y(f, g) as a univariate polynomial in x (low-to-high Scalars)."""
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        return []
    F, G = _to_ylist(f), _to_ylist(g)
    m, n = len(F) - 1, len(G) - 1
    if m == 0 and n == 0:
        return [ctx.one]
    if m == 0:
        return _u_pow(F[0], n, ctx)
    if n == 0:
        return _u_pow(G[0], m, ctx)
    N = m + n
    M = [[[] for _ in range(N)] for _ in range(N)]
    for r in range(n):
        for t, a in enumerate(reversed(F)):
            M[r][r + t] = list(a)
    for r in range(m):
        for t, b in enumerate(reversed(G)):
            M[n + r][r + t] = list(b)
    return _bareiss_det(M, ctx)


def i0_resultant_oracle(f, g):
    """i0 recomputed as ord_x Res_y after a shear x -> x + c*y.

    A shear is admissible when the sheared f keeps its full y-degree on
    x = 0, the sheared g does not vanish identically on x = 0, and the
    two restrictions share roots only at y = 0 (their gcd is a monomial).
    Raises OracleFailure when no admissible shear exists in the field or
    when the resultant vanishes identically.
    """
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        raise OracleFailure("zero input")
    df, dg = f.degree(), g.degree()
    bound = df * dg + 2 * (df + dg) + 1
    tried = 0
    while True:
        if tried > bound:
            raise OracleFailure("no admissible shear within the try bound")
        c = ctx.nth_scalar(tried)
        tried += 1
        if c is None:
            raise OracleFailure("field exhausted without an admissible shear")
        if c.is_zero():
            fc, gc = f, g
        else:
            fc = linear_change(f, 1, c, 0, 1)
            gc = linear_change(g, 1, c, 0, 1)
        myf = fc.deg_y() or 0
        if fc.coeff(0, myf).is_zero():
            continue
        F0, G0 = fc.restrict_x0(), gc.restrict_x0()
        if not F0 or not G0:
            continue
        common = u_gcd_monic(F0, G0)
        if any(not s.is_zero() for s in common[:-1]):
            continue
        det = resultant_y(fc, gc)
        if not det:
            raise OracleFailure("resultant vanished: inputs share a factor")
        return ExtNat(_ord_list(det))
