"""Exact coefficient fields: the rationals and finite fields F_{p^k}.

A FieldCtx fixes the characteristic p, the extension degree k and (for
k > 1) a monic irreducible modulus over F_p, found by a deterministic
lexicographic search so that every run of the program builds the same
tower.  Scalars are thin immutable wrappers: a Fraction in
characteristic 0, a trimmed little-endian coefficient tuple otherwise.

Extensions embed into larger ones through a canonical root of the old
modulus (the least root in coefficient order), so re-running any
computation reproduces the same element names.  Root finding over F_q
extends the context exactly as far as the splitting field requires;
over Q it is restricted to rational roots and square-discriminant
quadratics, with NotSupported raised beyond that fragment.
"""

from fractions import Fraction
import math
import random

from .errors import (InvalidCharacteristic, UnsupportedExtension, ZeroInput,
                     NotSupported)

# Fixed seed for the equal-degree splitting stream.  Root lists are sorted
# canonically afterwards, so the seed never leaks into results; it only
# makes intermediate work reproducible.
SPLIT_SEED = 0xC0FFEE


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n below 3.3 * 10^24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# integer-level polynomials over F_p (little-endian int lists), used only to
# hunt for irreducible moduli before Scalars exist

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
    return _fp_trim(a)


def _fp_powmod(base, e, m, p):
    result = [1]
    base = _fp_mod(base, m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # make b monic, then reduce a mod b
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _fp_trim(out)


def _fp_irreducible(m, p):
    """Rabin's test for a monic m of degree k over F_p."""
    k = len(m) - 1
    t = [0, 1]
    if _fp_sub(_fp_powmod(t, p ** k, m, p), t, p):
        return False
    prime_divs = set()
    kk = k
    d = 2
    while d * d <= kk:
        while kk % d == 0:
            prime_divs.add(d)
            kk //= d
        d += 1
    if kk > 1:
        prime_divs.add(kk)
    for q in prime_divs:
        diff = _fp_sub(_fp_powmod(t, p ** (k // q), m, p), t, p)
        if len(_fp_gcd(diff, m, p)) - 1 != 0:
            return False
    return True


def _find_modulus(p, k):
    """First monic irreducible of degree k over F_p in lexicographic order.

    Candidates are ordered by the base-p numeral (a_0, a_1, ..., a_{k-1})
    of their non-leading coefficients.
    """
    for n in range(p ** k):
        coeffs = []
        v = n
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        m = coeffs + [1]
        if _fp_irreducible(m, p):
            return tuple(m)
    raise UnsupportedExtension(f"no irreducible modulus of degree {k} over F_{p}")


# ---------------------------------------------------------------------------

_CTX_CACHE = {}


class FieldCtx:
    """An exact coefficient field: Q when p == 0, else F_{p^k}."""

    __slots__ = ('p', 'k', 'modulus', '_red', '_embed_cache')

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = modulus
        self._embed_cache = {}
        if modulus is not None and k > 1:
            # reduction rows for t^k .. t^(2k-2)
            rows = []
            cur = [(-c) % p for c in modulus[:-1]]
            rows.append(tuple(cur))
            for _ in range(k - 2):
                cur = [0] + cur
                if len(cur) > k:
                    top = cur[k]
                    cur = cur[:k]
                    if top:
                        cur = [(ci + top * ri) % p
                               for ci, ri in zip(cur, rows[0])]
                rows.append(tuple(cur))
            self._red = rows
        else:
            self._red = None

    def __repr__(self):
        if self.p == 0:
            return 'FieldCtx(Q)'
        if self.k == 1:
            return f'FieldCtx(F_{self.p})'
        return f'FieldCtx(F_{self.p}^{self.k})'

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- construction of elements ------------------------------------------

    @property
    def zero(self):
        return Scalar(self, Fraction(0) if self.p == 0 else ())

    @property
    def one(self):
        return Scalar(self, Fraction(1) if self.p == 0 else (1,))

    def scalar(self, n):
        """The image of the integer (or Fraction, in char 0) n."""
        if self.p == 0:
            return Scalar(self, Fraction(n))
        r = n % self.p
        return Scalar(self, (r,) if r else ())

    def from_coeffs(self, coeffs):
        """Element with the given little-endian F_p coefficients."""
        if self.p == 0:
            raise UnsupportedExtension("coefficient tuples need char > 0")
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            raise ValueError("coefficient tuple longer than extension degree")
        while c and c[-1] == 0:
            c.pop()
        return Scalar(self, tuple(c))

    def nth_scalar(self, n):
        """The n-th element in the canonical enumeration, or None past the end.

        Char 0 enumerates 0, 1, 2, ...; char p decodes n in base p as a
        coefficient tuple, covering all p^k elements.
        """
        if self.p == 0:
            return self.scalar(n)
        if n >= self.p ** self.k:
            return None
        coeffs = []
        v = n
        while v:
            coeffs.append(v % self.p)
            v //= self.p
        return self.from_coeffs(coeffs)

    @property
    def size(self):
        """Number of elements, or None for the infinite field."""
        return None if self.p == 0 else self.p ** self.k

    # -- tuple arithmetic (char p internals) -------------------------------

    def _reduce(self, c):
        # c: list of ints, length may reach 2k-1
        p = self.p
        if len(c) > self.k:
            red = self._red
            for i in range(len(c) - 1, self.k - 1, -1):
                top = c[i]
                if top:
                    row = red[i - self.k]
                    for j, rj in enumerate(row):
                        c[j] = (c[j] + top * rj) % p
            del c[self.k:]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        p = self.p
        if self.k == 1:
            return ((a[0] * b[0]) % p,) if (a[0] * b[0]) % p else ()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return self._reduce(out)

    def _inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        if self.k == 1 or len(a) == 1:
            # plain Fermat inverse in F_p works whenever a is in the prime field
            if len(a) == 1:
                inv0 = pow(a[0], p - 2, p)
                return (inv0,) if inv0 else ()
        # extended Euclid in F_p[t] against the modulus
        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [], [1]
        while r1:
            inv = pow(r1[-1], p - 2, p)
            r1m = [(c * inv) % p for c in r1]
            s1m = [(c * inv) % p for c in s1]
            q, r = _fp_divmod(r0, r1m, p)
            qs = _fp_mul(q, s1m, p)
            s = [(u - v) % p for u, v in
                 zip(s0 + [0] * max(0, len(qs) - len(s0)),
                     qs + [0] * max(0, len(s0) - len(qs)))]
            r0, r1 = r1m, r
            s0, s1 = s1m, _fp_trim(s)
        # r0 is the (monic) gcd = 1, s0 the cofactor
        return self._reduce(list(s0))

    # -- embeddings --------------------------------------------------------

    def embed_image(self, new_ctx):
        """Image of this field's generator in new_ctx (canonical choice)."""
        if new_ctx == self:
            return None
        key = (new_ctx.p, new_ctx.k, new_ctx.modulus)
        if key in self._embed_cache:
            return self._embed_cache[key]
        if self.p == 0 or new_ctx.p != self.p or new_ctx.k % self.k != 0:
            raise UnsupportedExtension(
                f"no embedding {self!r} -> {new_ctx!r}")
        if self.k == 1:
            self._embed_cache[key] = None
            return None
        # roots of our modulus inside new_ctx, canonical least one
        coeffs = [new_ctx.scalar(c) for c in self.modulus]
        roots, grown = roots_in_splitting_field(coeffs, new_ctx)
        assert grown == new_ctx, "modulus must split in a containing field"
        gamma = roots[0][0]
        self._embed_cache[key] = gamma
        return gamma


def _fp_divmod(a, b, p):
    # b monic
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        if c:
            off = len(a) - 1 - db
            q[off] = c
            for i, bi in enumerate(b):
                a[off + i] = (a[off + i] - c * bi) % p
        a.pop()
    return _fp_trim(q), _fp_trim(a)


def field_make(p, k=1):
    """Build (and cache) the context for Q (p=0) or F_{p^k}.

    The modulus for k > 1 is the lexicographically first monic irreducible,
    so towers are reproducible across runs.
    """
    if p == 0:
        if k != 1:
            raise UnsupportedExtension("characteristic 0 supports only k=1")
        key = (0, 1)
        if key not in _CTX_CACHE:
            _CTX_CACHE[key] = FieldCtx(0, 1, None)
        return _CTX_CACHE[key]
    if not is_prime(p):
        raise InvalidCharacteristic(f"{p} is not prime")
    if k < 1:
        raise UnsupportedExtension("extension degree must be >= 1")
    key = (p, k)
    if key not in _CTX_CACHE:
        modulus = (0, 1) if k == 1 else _find_modulus(p, k)
        _CTX_CACHE[key] = FieldCtx(p, k, modulus)
    return _CTX_CACHE[key]


class Scalar:
    """One exact field element; immutable, hashable, totally ordered per ctx."""

    __slots__ = ('ctx', 'v')

    def __init__(self, ctx, v):
        self.ctx = ctx
        self.v = v

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.v

    def is_one(self):
        return self.v == 1 if self.ctx.p == 0 else self.v == (1,)

    def __bool__(self):
        return bool(self.v)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        if ctx.p == 0:
            return Scalar(ctx, self.v + o.v)
        a, b = self.v, o.v
        n = max(len(a), len(b))
        c = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % ctx.p
             for i in range(n)]
        while c and c[-1] == 0:
            c.pop()
        return Scalar(ctx, tuple(c))

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        if ctx.p == 0:
            return Scalar(ctx, -self.v)
        return Scalar(ctx, tuple((-x) % ctx.p for x in self.v))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        if ctx.p == 0:
            return Scalar(ctx, self.v * o.v)
        return Scalar(ctx, ctx._mul(self.v, o.v))

    __rmul__ = __mul__

    def inv(self):
        if not self.v:
            raise ZeroDivisionError("inverse of zero")
        ctx = self.ctx
        if ctx.p == 0:
            return Scalar(ctx, 1 / self.v)
        return Scalar(ctx, ctx._inv(self.v))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self):
        """x -> x^p (identity in char 0)."""
        if self.ctx.p == 0:
            return self
        return self ** self.ctx.p

    def pth_root(self):
        """Inverse Frobenius: the unique y with y^p = x."""
        ctx = self.ctx
        if ctx.p == 0:
            raise UnsupportedExtension("p-th roots need char > 0")
        out = self
        for _ in range(ctx.k - 1):
            out = out.frobenius()
        return out

    # -- comparisons / ordering --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.scalar(other)
        return (isinstance(other, Scalar) and self.ctx == other.ctx
                and self.v == other.v)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.v))

    def sort_key(self):
        """Canonical total order inside one ctx (used to fix root order)."""
        if self.ctx.p == 0:
            return self.v
        return tuple(self.v[i] if i < len(self.v) else 0
                     for i in range(self.ctx.k))

    def __repr__(self):
        if self.ctx.p == 0:
            return str(self.v)
        if len(self.v) <= 1:
            return str(self.v[0] if self.v else 0)
        return '(' + '+'.join(f'{c}t^{i}' if i else str(c)
                              for i, c in enumerate(self.v) if c) + ')'

    def embed(self, new_ctx):
        """Image of this element under the canonical embedding into new_ctx."""
        if new_ctx == self.ctx:
            return self
        gamma = self.ctx.embed_image(new_ctx)
        if gamma is None:
            # prime-subfield element: coefficients carry over
            return new_ctx.scalar(self.v[0]) if self.v else new_ctx.zero
        out = new_ctx.zero
        for c in reversed(self.v):
            out = out * gamma + new_ctx.scalar(c)
        return out


# ---------------------------------------------------------------------------
# univariate machinery over Scalars, enough for root finding

def u_trim(u):
    while u and u[-1].is_zero():
        u.pop()
    return u


def u_deg(u):
    return len(u) - 1


def u_mul(a, b, ctx):
    if not a or not b:
        return []
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return u_trim(out)


def u_divmod(a, b):
    # coefficients in a field; b nonzero
    a = list(a)
    q = [b[0].ctx.zero] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inv()
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        if a[-1].is_zero():
            a.pop()
            continue
        c = a[-1] * inv
        off = len(a) - 1 - db
        q[off] = c
        for i, bi in enumerate(b):
            a[off + i] = a[off + i] - c * bi
        a.pop()
    return u_trim(q), u_trim(a)


def u_gcd_monic(a, b):
    a, b = u_trim(list(a)), u_trim(list(b))
    while b:
        _, r = u_divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inv()
        a = [c * inv for c in a]
    return a


def u_deriv(u, ctx):
    out = []
    for i in range(1, len(u)):
        out.append(u[i] * ctx.scalar(i))
    return u_trim(out)


def u_eval(u, x):
    """Horner evaluation of a Scalar coefficient list at the Scalar x."""
    acc = x.ctx.zero
    for c in reversed(u):
        acc = acc * x + c
    return acc


def u_powmod(base, e, m, ctx):
    result = [ctx.one]
    _, base = u_divmod(list(base), m)
    while e:
        if e & 1:
            _, result = u_divmod(u_mul(result, base, ctx), m)
        base_sq = u_mul(base, base, ctx)
        _, base = u_divmod(base_sq, m)
        e >>= 1
    return result


def u_pth_root(u, ctx):
    p = ctx.p
    out = []
    for i, c in enumerate(u):
        if i % p == 0:
            out.append(c.pth_root())
        elif not c.is_zero():
            raise ValueError("not a p-th power")
    return u_trim(out)


def u_sqfree_part(u, ctx):
    """Product of the distinct irreducible factors of u (monic)."""
    if u_deg(u) <= 0:
        return [ctx.one]
    du = u_deriv(u, ctx)
    if not du:
        return u_sqfree_part(u_pth_root(u, ctx), ctx)
    c = u_gcd_monic(u, du)
    if u_deg(c) == 0:
        inv = u[-1].inv()
        return [x * inv for x in u]
    w, r0 = u_divmod(list(u), c)
    assert not r0
    r = c
    while True:
        g = u_gcd_monic(r, w)
        if u_deg(g) == 0:
            break
        r, rr = u_divmod(r, g)
        assert not rr
    if u_deg(r) == 0:
        out = w
    else:
        out = u_mul(w, u_sqfree_part(u_pth_root(r, ctx), ctx), ctx)
    inv = out[-1].inv()
    return [x * inv for x in out]


def u_sqfree_decomposition(u, ctx):
    """List of (monic squarefree g_j, j) with u = unit * prod g_j^j."""
    layers = []
    g = list(u)
    while u_deg(g) > 0:
        s = u_sqfree_part(g, ctx)
        layers.append(s)
        g, r = u_divmod(g, s)
        assert not r
    out = []
    for j in range(len(layers)):
        upper = layers[j + 1] if j + 1 < len(layers) else [ctx.one]
        bj, r = u_divmod(layers[j], upper)
        assert not r
        if u_deg(bj) >= 1:
            out.append((bj, j + 1))
    return out


def _cz_linear_roots(v, ctx, rng):
    """All roots of v = prod (t - r_i), distinct, via equal-degree splitting."""
    if u_deg(v) == 0:
        return []
    if u_deg(v) == 1:
        return [-(v[0] / v[1])]
    q = ctx.p ** ctx.k
    for _ in range(1000):
        a = [ctx.nth_scalar(rng.randrange(q)) for _ in range(u_deg(v))]
        a = u_trim(a)
        if u_deg(a) < 1 and (not a or a[0].is_zero()):
            continue
        if ctx.p == 2:
            # trace splitter: h = a + a^2 + a^4 + ... + a^(2^(k-1)) mod v
            acc = list(a)
            h = list(a)
            for _ in range(ctx.k - 1):
                sq = u_mul(acc, acc, ctx)
                _, acc = u_divmod(sq, v)
                h = u_trim([(h[i] if i < len(h) else ctx.zero)
                           + (acc[i] if i < len(acc) else ctx.zero)
                           for i in range(max(len(h), len(acc)))])
            g = u_gcd_monic(v, h)
        else:
            h = u_powmod(a, (q - 1) // 2, v, ctx)
            h1 = list(h)
            if h1:
                h1[0] = h1[0] - ctx.one
            else:
                h1 = [-(ctx.one)]
            g = u_gcd_monic(v, u_trim(h1))
        if 0 < u_deg(g) < u_deg(v):
            w, r = u_divmod(list(v), g)
            assert not r
            return _cz_linear_roots(g, ctx, rng) + _cz_linear_roots(w, ctx, rng)
    raise RuntimeError("equal-degree splitting failed to converge")


def _rational_roots(u):
    """All Fraction roots of u (coefficients Fractions), each once."""
    # clear denominators, make integer and primitive
    den = 1
    for c in u:
        den = den * c.v.denominator // math.gcd(den, c.v.denominator)
    ints = [int(c.v * den) for c in u]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    # strip t^v
    val = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        val += 1
    roots = []
    if val:
        roots.append(Fraction(0))
    if not ints or len(ints) == 1:
        return roots, val, ints
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    seen = set()
    for num in divisors(a0):
        for dnm in divisors(an):
            if math.gcd(num, dnm) != 1:
                continue
            for cand in (Fraction(num, dnm), Fraction(-num, dnm)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots, val, ints


def roots_in_splitting_field(u, ctx):
    """Roots of the univariate polynomial u (low-to-high Scalar list).

    Returns (roots, new_ctx) where roots is a list of (Scalar, multiplicity)
    pairs living in new_ctx, the smallest extension of ctx containing every
    root, sorted canonically by coefficient order.  In characteristic 0
    only rational roots and roots of square-discriminant quadratic factors
    are found; an irreducible factor of degree >= 3 raises NotSupported and
    an irrational quadratic factor is silently left rootless.
    """
    u = u_trim(list(u))
    if not u:
        raise ZeroInput("zero polynomial has every element as a root")
    if u_deg(u) == 0:
        return [], ctx

    if ctx.p == 0:
        out = []
        for part, mult in u_sqfree_decomposition(u, ctx):
            roots, val, ints = _rational_roots(part)
            work = [Fraction(c) for c in ints]
            for r in roots:
                if r == 0:
                    continue
                # deflate once (squarefree part has simple roots)
                newc = []
                acc = Fraction(0)
                for c in reversed(work):
                    acc = acc * r + c
                    newc.append(acc)
                newc.reverse()
                assert newc[0] == 0
                work = newc[1:]
            for r in roots:
                out.append((Scalar(ctx, Fraction(r)), mult))
            deg_left = len(work) - 1 if work else 0
            if deg_left >= 3:
                raise NotSupported(
                    "char 0 root finding stops at quadratic factors")
            if deg_left == 2:
                a, b, c = work[2], work[1], work[0]
                disc = b * b - 4 * a * c
                if disc >= 0:
                    sn, sd = disc.numerator, disc.denominator
                    rn, rd = math.isqrt(sn), math.isqrt(sd)
                    if rn * rn == sn and rd * rd == sd:
                        s = Fraction(rn, rd)
                        for root in ((-b + s) / (2 * a), (-b - s) / (2 * a)):
                            out.append((Scalar(ctx, root), mult))
                # irrational pair: left as a rootless cofactor
        out.sort(key=lambda t: t[0].sort_key())
        return out, ctx

    # char p: find the splitting field degree first
    parts = u_sqfree_decomposition(u, ctx)
    q = ctx.p ** ctx.k
    need = 1
    for part, _ in parts:
        # distinct-degree probe: degrees d with gcd(part, t^(q^d) - t) != 1
        rem = list(part)
        d = 0
        while u_deg(rem) > 0:
            d += 1
            if d > u_deg(rem):
                raise RuntimeError("distinct-degree factorization ran away")
            h = u_powmod([ctx.zero, ctx.one], q ** d, rem, ctx)
            h1 = list(h)
            # h - t
            while len(h1) < 2:
                h1.append(ctx.zero)
            h1[1] = h1[1] - ctx.one
            g = u_gcd_monic(rem, u_trim(h1))
            if u_deg(g) > 0:
                need = need * d // math.gcd(need, d)
                rem, r = u_divmod(rem, g)
                assert not r
    big = ctx if need == 1 else field_make(ctx.p, ctx.k * need)
    rng = random.Random(SPLIT_SEED)
    out = []
    for part, mult in parts:
        pb = [c.embed(big) for c in part]
        roots = _cz_linear_roots(pb, big, rng)
        for r in roots:
            out.append((r, mult))
    # over a finite field the squarefree parts split completely
    assert sum(m for _, m in out) == sum(
        u_deg(part) * mult for part, mult in parts)
    out.sort(key=lambda t: t[0].sort_key())
    return out, big
