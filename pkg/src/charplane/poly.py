"""Bivariate polynomials over an exact field, viewed as curve germs at 0.

Terms live in a dict keyed by (i, j) exponent pairs with nonzero Scalar
values.  Everything downstream (intersection numbers, blowups, polars)
is built from the operations here.  The parser accepts exactly this
grammar, nothing more:

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' natural)?
    base   := natural | 'x' | 'y' | '(' expr ')'

so no implicit multiplication, no unary minus (write 0-x), and only
literal natural numbers in exponents.
"""

from .errors import (ParseError, ZeroInput, NotInvertible, NotReduced)
from .field import u_gcd_monic, u_divmod, u_mul, u_trim


class BivarPoly:
    """Polynomial in x, y with Scalar coefficients from one FieldCtx."""

    __slots__ = ('ctx', 'terms')

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            for key, val in (terms.items() if isinstance(terms, dict)
                             else terms):
                if not val.is_zero():
                    cur = clean.get(key)
                    val = val if cur is None else cur + val
                    if val.is_zero():
                        clean.pop(key, None)
                    else:
                        clean[key] = val
        self.terms = clean

    @classmethod
    def from_int_terms(cls, ctx, items):
        """items: iterable of (i, j, integer coefficient)."""
        return cls(ctx, (((i, j), ctx.scalar(c)) for i, j, c in items))

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def constant(cls, ctx, c):
        s = c if not isinstance(c, int) else ctx.scalar(c)
        return cls(ctx, {(0, 0): s})

    def is_zero(self):
        return not self.terms

    def coeff(self, i, j):
        return self.terms.get((i, j), self.ctx.zero)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, val in other.terms.items():
            cur = out.get(key)
            s = val if cur is None else cur + val
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        r = BivarPoly.__new__(BivarPoly)
        r.ctx, r.terms = self.ctx, out
        return r

    def __neg__(self):
        r = BivarPoly.__new__(BivarPoly)
        r.ctx = self.ctx
        r.terms = {k: -v for k, v in self.terms.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, BivarPoly):
            # scalar multiple
            if other.is_zero():
                return BivarPoly(self.ctx)
            r = BivarPoly.__new__(BivarPoly)
            r.ctx = self.ctx
            r.terms = {k: v * other for k, v in self.terms.items()}
            return r
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                prod = c1 * c2
                cur = out.get(key)
                s = prod if cur is None else cur + prod
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        r = BivarPoly.__new__(BivarPoly)
        r.ctx, r.terms = self.ctx, out
        return r

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e):
        result = BivarPoly.constant(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, BivarPoly) and self.ctx == other.ctx
                and self.terms == other.terms)

    # -- shape --------------------------------------------------------------

    def order(self):
        """Order of vanishing at the origin; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(i + j for i, j in self.terms)

    def degree(self):
        if not self.terms:
            return None
        return max(i + j for i, j in self.terms)

    def deg_x(self):
        return max((i for i, _ in self.terms), default=None)

    def deg_y(self):
        return max((j for _, j in self.terms), default=None)

    def initial_form(self):
        """Sum of the terms of least total degree."""
        o = self.order()
        if o is None:
            return self
        return BivarPoly(self.ctx,
                         {k: v for k, v in self.terms.items()
                          if k[0] + k[1] == o})

    def weighted_initial(self, n, m):
        """(ord_w, initial form) for the weight n on x, m on y."""
        if not self.terms:
            return None, self
        o = min(n * i + m * j for i, j in self.terms)
        init = BivarPoly(self.ctx,
                         {k: v for k, v in self.terms.items()
                          if n * k[0] + m * k[1] == o})
        return o, init

    # -- calculus -----------------------------------------------------------

    def partials(self):
        ctx = self.ctx
        fx, fy = {}, {}
        for (i, j), c in self.terms.items():
            if i:
                s = c * ctx.scalar(i)
                if not s.is_zero():
                    fx[(i - 1, j)] = s
            if j:
                s = c * ctx.scalar(j)
                if not s.is_zero():
                    fy[(i, j - 1)] = s
        ax = BivarPoly.__new__(BivarPoly)
        ax.ctx, ax.terms = ctx, fx
        ay = BivarPoly.__new__(BivarPoly)
        ay.ctx, ay.terms = ctx, fy
        return ax, ay

    # -- restrictions and evaluation -----------------------------------------

    def restrict_x0(self):
        """f(0, y) as a low-to-high Scalar list."""
        if not self.terms:
            return []
        out = [self.ctx.zero] * ((self.deg_y() or 0) + 1)
        for (i, j), c in self.terms.items():
            if i == 0:
                out[j] = c
        return u_trim(out)

    def restrict_y0(self):
        """f(x, 0) as a low-to-high Scalar list."""
        if not self.terms:
            return []
        out = [self.ctx.zero] * ((self.deg_x() or 0) + 1)
        for (i, j), c in self.terms.items():
            if j == 0:
                out[i] = c
        return u_trim(out)

    def eval_at(self, a, b):
        ctx = self.ctx
        if isinstance(a, int):
            a = ctx.scalar(a)
        if isinstance(b, int):
            b = ctx.scalar(b)
        acc = ctx.zero
        powx, powy = {0: ctx.one}, {0: ctx.one}

        def pw(cache, base, e):
            if e not in cache:
                cache[e] = pw(cache, base, e - 1) * base
            return cache[e]

        for (i, j), c in self.terms.items():
            acc = acc + c * pw(powx, a, i) * pw(powy, b, j)
        return acc

    def embed(self, new_ctx):
        if new_ctx == self.ctx:
            return self
        return BivarPoly(new_ctx, {k: v.embed(new_ctx)
                                   for k, v in self.terms.items()})

    def sorted_terms(self):
        """Terms in the canonical order: by total degree, then x-degree."""
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0], kv[0][1]))

    def __repr__(self):
        return f'BivarPoly({poly_str(self)})'


def monomial(ctx, i, j, c=1):
    s = ctx.scalar(c) if isinstance(c, int) else c
    return BivarPoly(ctx, {(i, j): s})


# ---------------------------------------------------------------------------
# parsing

class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self):
        c = self.peek()
        self.pos += 1
        return c

    def fail(self, what):
        raise ParseError(f"expected {what}", position=self.pos)

    def natural(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("a natural number")
        return int(self.text[start:self.pos])

    def base(self):
        c = self.peek()
        if c is None:
            self.fail("'x', 'y', a number or '('")
        if c.isdigit():
            return BivarPoly.constant(self.ctx, self.natural())
        if c == 'x':
            self.pos += 1
            return monomial(self.ctx, 1, 0)
        if c == 'y':
            self.pos += 1
            return monomial(self.ctx, 0, 1)
        if c == '(':
            self.pos += 1
            inner = self.expr()
            if self.peek() != ')':
                self.fail("')'")
            self.pos += 1
            return inner
        self.fail("'x', 'y', a number or '('")

    def factor(self):
        b = self.base()
        if self.peek() == '^':
            self.pos += 1
            e = self.natural()
            return b ** e
        return b

    def term(self):
        f = self.factor()
        while self.peek() == '*':
            self.pos += 1
            f = f * self.factor()
        return f

    def expr(self):
        acc = self.term()
        while True:
            c = self.peek()
            if c == '+':
                self.pos += 1
                acc = acc + self.term()
            elif c == '-':
                self.pos += 1
                acc = acc - self.term()
            else:
                return acc


def parse_poly(text, ctx):
    """Parse the fixed expression grammar over the given field."""
    p = _Parser(text, ctx)
    out = p.expr()
    if p.peek() is not None:
        p.fail("'+', '-', '*', '^' or end of input")
    return out


def poly_str(f):
    """Human-readable rendering; reparseable when coefficients are integers."""
    if f.is_zero():
        return '0'
    parts = []
    for (i, j), c in f.sorted_terms():
        if f.ctx.p == 0:
            neg = c.v < 0
            mag = -c.v if neg else c.v
            coeff = str(mag) if mag.denominator == 1 else f'({mag})'
        else:
            neg = False
            coeff = repr(c)
        factors = []
        if coeff != '1' or (i == 0 and j == 0):
            factors.append(coeff)
        if i:
            factors.append('x' if i == 1 else f'x^{i}')
        if j:
            factors.append('y' if j == 1 else f'y^{j}')
        parts.append((neg, '*'.join(factors)))
    out = []
    for idx, (neg, body) in enumerate(parts):
        if idx == 0:
            out.append(('0-' if neg else '') + body)
        else:
            out.append(('-' if neg else '+') + body)
    return ''.join(out)


# ---------------------------------------------------------------------------
# derived constructions

def polar(f, a, b):
    """Directional derivative a*f_x + b*f_y (the polar along (a, b))."""
    ctx = f.ctx
    if isinstance(a, int):
        a = ctx.scalar(a)
    if isinstance(b, int):
        b = ctx.scalar(b)
    fx, fy = f.partials()
    return fx * a + fy * b


def line_form(ctx, a, b):
    """The linear form vanishing on the direction (a, b): a*y - b*x."""
    sa = ctx.scalar(a) if isinstance(a, int) else a
    sb = ctx.scalar(b) if isinstance(b, int) else b
    if sa.is_zero() and sb.is_zero():
        raise ZeroInput("direction (0, 0) defines no line")
    return BivarPoly(ctx, {(0, 1): sa, (1, 0): -sb})


def linear_change(f, a, b, c, d):
    """f(a*x + b*y, c*x + d*y); raises NotInvertible on det = 0."""
    ctx = f.ctx
    coeffs = [ctx.scalar(v) if isinstance(v, int) else v for v in (a, b, c, d)]
    a, b, c, d = coeffs
    if (a * d - b * c).is_zero():
        raise NotInvertible("coordinate change matrix is singular")
    gx = BivarPoly(ctx, {(1, 0): a, (0, 1): b})
    gy = BivarPoly(ctx, {(1, 0): c, (0, 1): d})
    by_j = {}
    for (i, j), s in f.terms.items():
        by_j.setdefault(j, []).append((i, s))
    # evaluate sum_j (sum_i s*gx^i) * gy^j by increasing powers of gy
    out = BivarPoly(ctx)
    powy = BivarPoly.constant(ctx, 1)
    maxj = f.deg_y() or 0
    cache_gx = {0: BivarPoly.constant(ctx, 1)}

    def gx_pow(e):
        if e not in cache_gx:
            cache_gx[e] = gx_pow(e - 1) * gx
        return cache_gx[e]

    for j in range(maxj + 1):
        row = by_j.get(j)
        if row:
            acc = BivarPoly(ctx)
            for i, s in row:
                acc = acc + gx_pow(i) * s
            out = out + acc * powy
        if j < maxj:
            powy = powy * gy
    return out


def compose_chart1(f, c):
    """f(x, x*(y + c)): the first blowup chart centred at slope c."""
    ctx = f.ctx
    if isinstance(c, int):
        c = ctx.scalar(c)
    out = {}
    if c.is_zero():
        for (i, j), s in f.terms.items():
            key = (i + j, j)
            cur = out.get(key)
            v = s if cur is None else cur + s
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
        return BivarPoly(ctx, out)
    # binomial expansion of (y + c)^j, coefficients C(j, t) c^(j-t)
    maxj = f.deg_y() or 0
    cpow = [ctx.one]
    for _ in range(maxj):
        cpow.append(cpow[-1] * c)
    binom = [[1]]
    for n in range(1, maxj + 1):
        prev = binom[-1]
        binom.append([1] + [prev[t - 1] + prev[t]
                            for t in range(1, n)] + [1])
    for (i, j), s in f.terms.items():
        for t in range(j + 1):
            coeff = s * ctx.scalar(binom[j][t]) * cpow[j - t]
            if coeff.is_zero():
                continue
            key = (i + j, t)
            cur = out.get(key)
            v = coeff if cur is None else cur + coeff
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return BivarPoly(ctx, out)


def compose_chart2(f):
    """f(x*y, y): the second blowup chart."""
    out = {}
    for (i, j), s in f.terms.items():
        key = (i, i + j)
        cur = out.get(key)
        v = s if cur is None else cur + s
        if v.is_zero():
            out.pop(key, None)
        else:
            out[key] = v
    return BivarPoly(f.ctx, out)


def div_xpow(f, m):
    """Exact division by x^m."""
    if m == 0:
        return f
    out = {}
    for (i, j), s in f.terms.items():
        if i < m:
            raise ValueError("not divisible by x^%d" % m)
        out[(i - m, j)] = s
    return BivarPoly(f.ctx, out)


def div_ypow(f, m):
    if m == 0:
        return f
    out = {}
    for (i, j), s in f.terms.items():
        if j < m:
            raise ValueError("not divisible by y^%d" % m)
        out[(i, j - m)] = s
    return BivarPoly(f.ctx, out)


# ---------------------------------------------------------------------------
# divisibility, gcd, squarefree structure

def divexact(f, d):
    """Quotient f / d; raises ValueError when d does not divide f."""
    if d.is_zero():
        raise ZeroInput("division by the zero polynomial")
    if f.is_zero():
        return f
    # single-divisor reduction in the lex order with y > x
    key = lambda k: (k[1], k[0])
    dlead = max(d.terms, key=key)
    dcoef = d.terms[dlead]
    rem = dict(f.terms)
    out = {}
    while rem:
        flead = max(rem, key=key)
        qi, qj = flead[0] - dlead[0], flead[1] - dlead[1]
        if qi < 0 or qj < 0:
            raise ValueError("not an exact divisor")
        qc = rem[flead] / dcoef
        out[(qi, qj)] = qc
        for (i, j), s in d.terms.items():
            k2 = (i + qi, j + qj)
            cur = rem.get(k2, f.ctx.zero)
            v = cur - s * qc
            if v.is_zero():
                rem.pop(k2, None)
            else:
                rem[k2] = v
    return BivarPoly(f.ctx, out)


def divides(d, f):
    try:
        divexact(f, d)
        return True
    except ValueError:
        return False


def _to_ylist(f):
    """f as a dense list over y of univariate x-coefficient lists."""
    degy = f.deg_y()
    out = [[] for _ in range(degy + 1)]
    degx_at = [0] * (degy + 1)
    for (i, j), _ in f.terms.items():
        degx_at[j] = max(degx_at[j], i)
    for j in range(degy + 1):
        out[j] = [f.ctx.zero] * (degx_at[j] + 1)
    for (i, j), s in f.terms.items():
        out[j][i] = s
    return [u_trim(row) for row in out]


def _from_ylist(rows, ctx):
    terms = {}
    for j, row in enumerate(rows):
        for i, s in enumerate(row):
            if not s.is_zero():
                terms[(i, j)] = s
    return BivarPoly(ctx, terms)


def _u_sub(a, b):
    n = max(len(a), len(b))
    z = (a or b)[0].ctx.zero if (a or b) else None
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(x - y)
    return u_trim(out)


def _ytrim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _content(rows, ctx):
    c = []
    for row in rows:
        if row:
            c = u_gcd_monic(c, row)
    return c


def _pp(rows, content, ctx):
    if len(content) == 1 and content[0].is_one():
        return rows
    out = []
    for row in rows:
        if not row:
            out.append([])
        else:
            q, r = u_divmod(list(row), content)
            assert not r
            out.append(q)
    return out


def _prem(F, G, ctx):
    """Pseudo-remainder of F by G in K[x][y] (both nonempty, degy F >= degy G)."""
    F = [list(r) for r in F]
    dG = len(G) - 1
    lg = G[-1]
    while len(F) - 1 >= dG and F:
        if not F[-1]:
            F.pop()
            continue
        lf = F[-1]
        F = [u_mul(row, lg, ctx) for row in F]
        shift = len(F) - 1 - dG
        for t in range(dG + 1):
            F[shift + t] = _u_sub(F[shift + t], u_mul(G[t], lf, ctx))
        assert not F[-1]
        F.pop()
    return _ytrim(F)


def biv_gcd(f, g):
    """A gcd of f and g in K[x, y], normalised to a monic leading x-coefficient
    in its highest y-degree.  gcd(f, 0) = f (normalised); gcd(0, 0) = 0.
    """
    ctx = f.ctx
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    F, G = _to_ylist(f), _to_ylist(g)
    cf, cg = _content(F, ctx), _content(G, ctx)
    c = u_gcd_monic(cf, cg)
    F, G = _pp(F, cf, ctx), _pp(G, cg, ctx)
    if len(F) - 1 < len(G) - 1:
        F, G = G, F
    while G:
        R = _prem(F, G, ctx)
        cr = _content(R, ctx)
        F, G = G, _pp(R, cr, ctx) if R else []
    # F is a primitive gcd of the primitive parts
    rows = [u_mul(row, c, ctx) if row else [] for row in F]
    return _normalize(_from_ylist(rows, ctx))


def _normalize(f):
    """Scale so the leading x-coefficient at top y-degree is monic."""
    if f.is_zero():
        return f
    dy = f.deg_y()
    top = max(i for (i, j) in f.terms if j == dy)
    lead = f.terms[(top, dy)]
    if lead.is_one():
        return f
    return f * lead.inv()


def pth_root_poly(f):
    """g with g^p = f, for f with all exponents divisible by p."""
    p = f.ctx.p
    out = {}
    for (i, j), s in f.terms.items():
        if i % p or j % p:
            raise ValueError("not a p-th power")
        out[(i // p, j // p)] = s.pth_root()
    return BivarPoly(f.ctx, out)


def sqfree_part(f):
    """Product of the distinct irreducible factors of f, up to a unit."""
    if f.is_zero():
        raise ZeroInput("squarefree part of the zero polynomial")
    if f.degree() == 0:
        return BivarPoly.constant(f.ctx, 1)
    fx, fy = f.partials()
    if fx.is_zero() and fy.is_zero():
        # perfect ground fields: f is then literally a p-th power
        return sqfree_part(pth_root_poly(f))
    c = f
    for d in (fx, fy):
        if not d.is_zero():
            c = biv_gcd(c, d)
    if c.degree() == 0:
        return _normalize(f)
    w = divexact(f, c)
    r = c
    while True:
        g = biv_gcd(r, w)
        if g.degree() == 0:
            break
        r = divexact(r, g)
    if r.degree() == 0:
        return _normalize(w)
    return _normalize(w * sqfree_part(pth_root_poly(_normalize(r))))


def sqfree_decomposition(f):
    """[(B_j, j)] with f = unit * prod B_j^j and the B_j squarefree, coprime."""
    if f.is_zero():
        raise ZeroInput("decomposition of the zero polynomial")
    layers = []
    g = f
    while g.degree() > 0:
        s = sqfree_part(g)
        layers.append(s)
        g = divexact(g, s)
    out = []
    for j in range(len(layers)):
        upper = layers[j + 1] if j + 1 < len(layers) else None
        bj = layers[j] if upper is None else divexact(layers[j], upper)
        if bj.degree() > 0:
            out.append((_normalize(bj), j + 1))
    return out


def reduced_test(f):
    """True when f has no repeated factor through the origin."""
    if f.is_zero():
        raise ZeroInput("the zero polynomial is not a curve")
    if f.degree() == 0:
        return True
    fx, fy = f.partials()
    if fx.is_zero() and fy.is_zero():
        return False           # a p-th power
    c = f
    for d in (fx, fy):
        if not d.is_zero():
            c = biv_gcd(c, d)
    return c.order() == 0


def require_reduced(f, what="input"):
    if not reduced_test(f):
        raise NotReduced(f"{what} has a repeated factor through the origin")
