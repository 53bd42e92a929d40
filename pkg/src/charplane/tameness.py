"""Tameness criteria, evaluated independently and reported side by side.

A reduced germ is tame when mu = 2*delta - r + 1.  tame_direct computes
both sides head on; the other criteria reach a verdict through
independent structure (weighted initial forms, the Newton polygon,
prime bounds along a transversal line, the branch semigroup, and the
contact pattern of the y-polar).  tame_criteria runs them all without
short-circuiting and asserts their mutual consistency at runtime: a
sufficient criterion returning true against a false DIRECT, or an
equivalence disagreeing with DIRECT at all, is a bug.
"""

import math
from fractions import Fraction

from .errors import (ZeroInput, NotIrreducible, HypothesisFailed,
                     NotSupported, NotRegularParameter)
from .field import u_gcd_monic, roots_in_splitting_field
from .poly import (BivarPoly, monomial, poly_str, linear_change,
                   reduced_test, require_reduced)
from .intersect import i0
from .invariants import (milnor_number, invariant_report,
                         generic_transversal, jacobian_polar,
                         polar_factor_branches)
from .resolve import resolve


# verdict when a criterion cannot decide
UNKNOWN = None

_CRITERIA = ('DIRECT', 'SQH', 'NEWTON_ND', 'NGUYEN_MU_BOUND', 'KAPPA_BOUND',
             'POLAR_FACTORS', 'SEMIGROUP', 'SEMIGROUP_HRS', 'MERLE')

_NGUYEN_NAMES = ('NGUYEN_MU_BOUND', 'KAPPA_BOUND', 'POLAR_FACTORS')


class CriterionResult:
    """One criterion's outcome: name, whether it applied, its verdict
    (True / False / UNKNOWN), and a free-form witness."""

    __slots__ = ('name', 'applicable', 'verdict', 'witness')

    def __init__(self, name, applicable, verdict, witness):
        assert name in _CRITERIA, name
        assert verdict in (True, False, UNKNOWN)
        assert applicable or verdict is UNKNOWN, \
            "an inapplicable criterion cannot carry a verdict"
        self.name = name
        self.applicable = applicable
        self.verdict = verdict
        self.witness = witness

    def __repr__(self):
        v = 'UNKNOWN' if self.verdict is UNKNOWN else self.verdict
        return (f'CriterionResult({self.name}, applicable={self.applicable}, '
                f'verdict={v})')


def _require_germ(f, least=1):
    if f.is_zero() or f.order() < least:
        raise ZeroInput(f"need a series of order at least {least}")


# ---------------------------------------------------------------------------
# direct decision

def tame_direct(f):
    """mu against 2*delta - r + 1, head on."""
    _require_germ(f, 2)
    rep = invariant_report(f)
    if rep.mu.is_infinite:
        return CriterionResult('DIRECT', True, False,
                               f"mu infinite, mu_bar = {rep.mu_bar}")
    verdict = bool(rep.mu == rep.mu_bar)
    return CriterionResult('DIRECT', True, verdict,
                           f"mu = {rep.mu}, 2*delta - r + 1 = {rep.mu_bar}")


# ---------------------------------------------------------------------------
# weighted initial forms

def _weight_parts(form, n, m):
    """Split a w-homogeneous form as x^a * y^b * u(tau), tau walking the
    support line; returns (a, b, u) with u low-to-high in tau."""
    if form.is_zero():
        return 0, 0, []
    d = math.gcd(n, m)
    step_x, step_y = m // d, n // d
    a = min(i for i, _ in form.terms)
    b = min(j for _, j in form.terms)
    top = 0
    for i, _ in form.terms:
        q, rem = divmod(i - a, step_x)
        assert rem == 0, "support not on one weight line"
        top = max(top, q)
    u = [form.ctx.zero] * (top + 1)
    for (i, j), c in form.terms.items():
        k = (i - a) // step_x
        assert j == b + (top - k) * step_y, "support not on one weight line"
        u[k] = c
    return a, b, u


def _torus_critical(form, n, m):
    """(degenerate, detail): does the partial system of the w-form have
    a common zero with both coordinates nonzero, over the closure?"""
    fx, fy = form.partials()
    if fx.is_zero() and fy.is_zero():
        return True, "both partials vanish identically (a p-th power)"
    _, _, ux = _weight_parts(fx, n, m)
    _, _, uy = _weight_parts(fy, n, m)
    g = u_gcd_monic(ux, uy)
    lead = 0
    while lead < len(g) and g[lead].is_zero():
        lead += 1
    g = g[lead:]
    if len(g) <= 1:
        return False, ""
    detail = f"dehomogenized partials share a factor of degree {len(g) - 1}"
    try:
        roots, _ = roots_in_splitting_field(g, form.ctx)
        if roots:
            detail += f"; common parameter value {roots[0][0]!r}"
    except NotSupported:
        pass                    # existence is already decided by the degree
    return True, detail


def _vanishes_on_axis(g, axis):
    """True when g vanishes along the given coordinate axis; the zero
    polynomial vanishes along both."""
    if axis == 'x':
        return all(j >= 1 for _, j in g.terms)
    return all(i >= 1 for i, _ in g.terms)


def sqh_test(f, w):
    """Weighted-homogeneous criterion for w = (n, m): applicable when
    in_w(f) is squarefree, and then an equivalence -- f is tame exactly
    when the partials of in_w(f) vanish together only at the origin."""
    if f.is_zero():
        raise ZeroInput("no initial form for the zero series")
    n, m = w
    if n < 1 or m < 1:
        raise ValueError("weights must be positive")
    _, init = f.weighted_initial(n, m)
    shown = poly_str(init)
    if not reduced_test(init):
        return CriterionResult('SQH', False, UNKNOWN,
                               f"in_({n},{m}) = {shown} has a repeated factor")
    fx, fy = init.partials()
    problems = []
    if _vanishes_on_axis(fx, 'x') and _vanishes_on_axis(fy, 'x'):
        problems.append("the partials vanish along y = 0")
    if _vanishes_on_axis(fx, 'y') and _vanishes_on_axis(fy, 'y'):
        problems.append("the partials vanish along x = 0")
    degenerate, detail = _torus_critical(init, n, m)
    if degenerate:
        problems.append(detail)
    if problems:
        return CriterionResult('SQH', True, False,
                               f"in_({n},{m}) = {shown}: " + "; ".join(problems))
    return CriterionResult('SQH', True, True,
                           f"in_({n},{m}) = {shown} has an isolated "
                           f"critical point")


# ---------------------------------------------------------------------------
# Newton polygon

def _cross(o, u, v):
    return (u[0] - o[0]) * (v[1] - u[1]) - (u[1] - o[1]) * (v[0] - u[0])


def _newton_faces(f):
    """Compact edges and vertices of the local Newton polygon of f:
    ([(n, m, face form)], [((i, j), coeff)]).  Monomial factors of f
    shift the polygon off the axes; their interaction with the rest is
    what the axis clauses of the face check see."""
    cols = {}
    for i, j in f.terms:
        if i not in cols or j < cols[i]:
            cols[i] = j
    stair = []
    floor = None
    for i in sorted(cols):
        if floor is None or cols[i] < floor:
            stair.append((i, cols[i]))
            floor = cols[i]
    hull = []
    for q in stair:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], q) <= 0:
            hull.pop()
        hull.append(q)
    vertices = [((i, j), f.terms[(i, j)]) for i, j in hull]
    edges = []
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        d = math.gcd(j1 - j2, i2 - i1)
        n, m = (j1 - j2) // d, (i2 - i1) // d
        e = n * i1 + m * j1
        terms = {(i, j): c for (i, j), c in f.terms.items()
                 if n * i + m * j == e}
        edges.append((n, m, BivarPoly(f.ctx, terms)))
    return edges, vertices


def _face_degeneracy(form, n, m):
    """Full check of one face form: squarefree, then no common zero of
    the partials beyond the origin (axes and torus).  Returns a
    diagnostic string, or None when the face is nondegenerate."""
    if not reduced_test(form):
        return "repeated factor"
    fx, fy = form.partials()
    if _vanishes_on_axis(fx, 'x') and _vanishes_on_axis(fy, 'x'):
        return "the partials vanish along y = 0"
    if _vanishes_on_axis(fx, 'y') and _vanishes_on_axis(fy, 'y'):
        return "the partials vanish along x = 0"
    degenerate, detail = _torus_critical(form, n, m)
    if degenerate:
        return detail
    return None


def newton_nondegenerate_test(f):
    """Nondegeneracy of every compact face (vertices included) of the
    Newton polygon.  Nondegenerate is sufficient for tame; a degenerate
    face leaves the question open unless a vanishing partial certifies
    that mu is infinite."""
    _require_germ(f)
    p = f.ctx.p
    edges, vertices = _newton_faces(f)
    problems = []
    for (i, j), c in vertices:
        if p > 0 and i % p == 0 and j % p == 0:
            shown = poly_str(monomial(f.ctx, i, j, c))
            problems.append(f"vertex {shown} has both exponents "
                            f"divisible by {p}")
    for n, m, form in edges:
        issue = _face_degeneracy(form, n, m)
        if issue:
            problems.append(f"face {poly_str(form)} (weight ({n},{m})): "
                            f"{issue}")
    if not problems:
        return CriterionResult('NEWTON_ND', True, True,
                               "every compact face is nondegenerate")
    fx, fy = f.partials()
    dead = [name for name, part in (("f_x", fx), ("f_y", fy))
            if part.is_zero()]
    if dead and f.order() >= 2:
        return CriterionResult(
            'NEWTON_ND', True, False,
            "; ".join(problems) + f"; {', '.join(dead)} vanishing "
            f"identically makes mu infinite")
    return CriterionResult('NEWTON_ND', True, UNKNOWN, "; ".join(problems))


# ---------------------------------------------------------------------------
# prime bounds along a transversal line

def nguyen_criteria(f, l=None):
    """The three prime-bound criteria, sharing one line l: the prime
    above mu + ord - 1 (sufficient), the polar contact below p along a
    transversal l (sufficient), and for p > ord(f) the equivalence
    through the polar factor contacts.

    A supplied l need not be transversal; the criteria that require
    transversality then report UNKNOWN or inapplicable instead of
    raising."""
    _require_germ(f)
    require_reduced(f)
    p = f.ctx.p
    if p == 0:
        raise ValueError("prime-bound criteria need positive characteristic")
    if l is None:
        l = generic_transversal(f)
    elif l.is_zero() or l.order() != 1:
        raise NotRegularParameter("l must have order exactly 1")
    n = f.order()
    v_fl = i0(f, l)
    transversal = v_fl == n
    out = []
    mu = milnor_number(f)
    if mu.is_infinite:
        out.append(CriterionResult('NGUYEN_MU_BOUND', False, UNKNOWN,
                                   "mu is infinite"))
    else:
        bound = int(mu) + n - 1
        if p > bound:
            out.append(CriterionResult('NGUYEN_MU_BOUND', True, True,
                                       f"p = {p} > mu + ord - 1 = {bound}"))
        else:
            out.append(CriterionResult('NGUYEN_MU_BOUND', True, UNKNOWN,
                                       f"p = {p} <= mu + ord - 1 = {bound}"))
    P = jacobian_polar(f, l)
    kappa = i0(f, P)
    notes = [f"i0(f, P_l) = {kappa} {'<' if kappa < p else '>='} p = {p}"]
    if not transversal:
        notes.append(f"l is not transversal (i0(f, l) = {v_fl}, "
                     f"ord(f) = {n})")
    out.append(CriterionResult('KAPPA_BOUND', True,
                               True if transversal and kappa < p else UNKNOWN,
                               "; ".join(notes)))
    if p <= n:
        out.append(CriterionResult('POLAR_FACTORS', False, UNKNOWN,
                                   f"needs p > ord(f) = {n}"))
        return out
    if not transversal:
        out.append(CriterionResult('POLAR_FACTORS', False, UNKNOWN,
                                   f"needs a transversal l: i0(f, l) = "
                                   f"{v_fl}, ord(f) = {n}"))
        return out
    factors = polar_factor_branches(P, f, l)
    bad = [fd for fd in factors if fd.i0_f is None or fd.i0_f % p == 0]
    if bad:
        items = ", ".join(
            f"{fd.label} (i0 = "
            f"{'infinite' if fd.i0_f is None else fd.i0_f})" for fd in bad)
        out.append(CriterionResult(
            'POLAR_FACTORS', True, False,
            f"polar factors with contact divisible by {p}: {items}"))
    else:
        out.append(CriterionResult(
            'POLAR_FACTORS', True, True,
            f"all {len(factors)} polar factor branches meet f with "
            f"contact prime to {p}"))
    return out


# ---------------------------------------------------------------------------
# branch semigroup

def _single_branch(f):
    res = resolve(f)
    count = res.branch_count(0)
    if count != 1:
        raise NotIrreducible(f"{count} branches through the origin")
    return res.branches[0]


def semigroup_criterion(f):
    """Divisibility of the semigroup generators by p.  Above n* this is
    an equivalence over the generators beyond the first; at or below n*
    only the sufficient direction over the whole list applies."""
    _require_germ(f, 2)
    require_reduced(f)
    br = _single_branch(f)
    gens = br.semigroup_gens
    p = f.ctx.p
    seq = ", ".join(map(str, gens))
    if p == 0:
        return CriterionResult('SEMIGROUP', True, True,
                               f"characteristic zero, generators ({seq}): "
                               f"no divisibility can fail")
    if p > br.n_star:
        assert gens[0] % p != 0, "p above n* never divides the first generator"
        bad = [v for v in gens[1:] if v % p == 0]
        tag = f"p = {p} > n* = {br.n_star} (equivalence), generators ({seq})"
        if bad:
            return CriterionResult('SEMIGROUP', True, False,
                                   f"{tag}; divisible by {p}: "
                                   + ", ".join(map(str, bad)))
        return CriterionResult('SEMIGROUP', True, True,
                               f"{tag}; none divisible by {p}")
    bad = [v for v in gens if v % p == 0]
    tag = f"p = {p} <= n* = {br.n_star} (sufficient direction only)"
    if bad:
        return CriterionResult('SEMIGROUP', True, UNKNOWN,
                               f"{tag}; divisible by {p}: "
                               + ", ".join(map(str, bad)))
    return CriterionResult('SEMIGROUP', True, True,
                           f"{tag}; generators ({seq}) all prime to {p}")


def semigroup_hrs(f):
    """The unconditional sufficient direction: every generator,
    multiplicity included, prime to p forces tameness."""
    _require_germ(f, 2)
    require_reduced(f)
    br = _single_branch(f)
    gens = br.semigroup_gens
    p = f.ctx.p
    seq = ", ".join(map(str, gens))
    bad = [v for v in gens if p > 0 and v % p == 0]
    if bad:
        return CriterionResult('SEMIGROUP_HRS', True, UNKNOWN,
                               f"generators ({seq}): divisible by {p}: "
                               + ", ".join(map(str, bad)))
    return CriterionResult('SEMIGROUP_HRS', True, True,
                           f"generators ({seq}) all prime to the "
                           f"characteristic")


# ---------------------------------------------------------------------------
# bundle decomposition of the y-polar

class MerleBundle:
    """One contact bundle of the y-polar, audited against the semigroup."""

    __slots__ = ('k', 'labels', 'ord_h', 'expected_ord', 'contact_ratios',
                 'expected_ratio', 'ord_divisibility_ok')

    def __init__(self, k, labels, ord_h, expected_ord, contact_ratios,
                 expected_ratio, ord_divisibility_ok):
        self.k = k
        self.labels = labels
        self.ord_h = ord_h
        self.expected_ord = expected_ord
        self.contact_ratios = contact_ratios
        self.expected_ratio = expected_ratio
        self.ord_divisibility_ok = ord_divisibility_ok

    def __repr__(self):
        return (f'MerleBundle(k={self.k}, ord={self.ord_h}/'
                f'{self.expected_ord}, ratio={self.expected_ratio})')


class MerleReport:
    """The y-polar of an irreducible germ, bundled by contact ratio."""

    __slots__ = ('n', 'gens', 'factors', 'stray')

    def __init__(self, n, gens, factors, stray):
        self.n = n
        self.gens = gens
        self.factors = factors
        self.stray = stray

    @property
    def ok(self):
        if self.stray:
            return False
        if sum(b.ord_h for b in self.factors) != self.n - 1:
            return False
        for b in self.factors:
            if b.ord_h != b.expected_ord or not b.ord_divisibility_ok:
                return False
            if any(rt != b.expected_ratio for rt in b.contact_ratios):
                return False
        return True

    def __repr__(self):
        return (f'MerleReport(n={self.n}, bundles={len(self.factors)}, '
                f'ok={self.ok})')


def _rotate_to_y_regular(f):
    """Shear x -> x + c*y until ord(f(0, y)) = ord(f)."""
    n = f.order()
    ctx = f.ctx
    count = n + 1 if ctx.size is None else min(ctx.size, n + 1)
    for t in range(count):
        c = ctx.nth_scalar(t)
        g = f if c.is_zero() else linear_change(f, 1, c, 0, 1)
        r0 = g.restrict_x0()
        ordy = next((k for k, v in enumerate(r0) if not v.is_zero()), None)
        if ordy == n:
            return g
    raise HypothesisFailed("no shear makes f regular in y over this field")


def merle_verify(f):
    """Audit the contact-bundle decomposition of f_y for an irreducible
    germ whose order is prime to the characteristic.

    Branches of f_y are grouped by the exact rational i0(f, h)/ord(h);
    the report compares each bundle's total order, ratio, and order
    divisibility against the semigroup predictions.  Any mismatch shows
    up in the report (stray factors included) rather than raising."""
    _require_germ(f)
    require_reduced(f)
    p = f.ctx.p
    n = f.order()
    if p > 0 and n % p == 0:
        raise HypothesisFailed(f"ord(f) = {n} is divisible by {p}")
    g = _rotate_to_y_regular(f)
    br = _single_branch(g)
    gens, e = br.semigroup_gens, br.e_seq
    fy = g.partials()[1]
    assert not fy.is_zero(), "y-regular order prime to p forces f_y != 0"
    if (fy.order() or 0) >= 1:
        factors = polar_factor_branches(fy, g, monomial(g.ctx, 1, 0))
    else:
        factors = []
    by_ratio = {}
    for fd in factors:
        assert fd.i0_f is not None, \
            "an irreducible germ cannot divide its own polar"
        by_ratio.setdefault(Fraction(fd.i0_f, fd.ord_h), []).append(fd)
    bundles = []
    for k in range(1, len(gens)):
        expected_ratio = Fraction(e[k - 1] * gens[k], n)
        members = by_ratio.pop(expected_ratio, [])
        step = n // e[k - 1]
        bundles.append(MerleBundle(
            k, [fd.label for fd in members],
            sum(fd.mult * fd.ord_h for fd in members),
            n // e[k] - n // e[k - 1],
            [Fraction(fd.i0_f, fd.ord_h) for fd in members],
            expected_ratio,
            all(fd.ord_h % step == 0 for fd in members)))
    stray = [fd.label for group in by_ratio.values() for fd in group]
    return MerleReport(n, gens, bundles, stray)


# ---------------------------------------------------------------------------
# the aggregator

def _default_weight(f):
    edges, _ = _newton_faces(f)
    if len(edges) == 1:
        n, m, _ = edges[0]
        return (n, m)
    return (1, 1)


def _merle_result(f):
    try:
        report = merle_verify(f)
    except (NotIrreducible, HypothesisFailed) as err:
        return CriterionResult('MERLE', False, UNKNOWN, str(err))
    orders = ", ".join(f"{b.ord_h} at ratio {b.expected_ratio}"
                       for b in report.factors) or "none"
    witness = f"bundles: {orders}"
    if not report.ok:
        witness += "; DECOMPOSITION VIOLATED"
    return CriterionResult('MERLE', True, bool(report.ok), witness)


def _assert_consistent(results):
    direct = results[0]
    assert direct.name == 'DIRECT'
    for res in results[1:]:
        if res.name == 'MERLE' or not res.applicable:
            continue
        if res.verdict is True:
            assert direct.verdict is True, \
                f"{res.name} claims tame against DIRECT"
        if res.verdict is False:
            assert direct.verdict is False, \
                f"{res.name} claims untame against DIRECT"


def tame_criteria(f, w=None, l=None):
    """DIRECT plus every criterion, in a fixed order, cross-checked.

    w defaults to the single compact Newton edge's weight when there is
    exactly one, else (1, 1); l defaults to the deterministic
    transversal search."""
    direct = tame_direct(f)
    results = [direct]
    results.append(sqh_test(f, w if w is not None else _default_weight(f)))
    results.append(newton_nondegenerate_test(f))
    if f.ctx.p == 0:
        for name in _NGUYEN_NAMES:
            results.append(CriterionResult(
                name, False, UNKNOWN, "positive characteristic only"))
    else:
        try:
            results.extend(nguyen_criteria(f, l))
        except HypothesisFailed as err:
            for name in _NGUYEN_NAMES:
                results.append(CriterionResult(name, False, UNKNOWN,
                                               str(err)))
    try:
        results.append(semigroup_criterion(f))
        results.append(semigroup_hrs(f))
    except NotIrreducible as err:
        for name in ('SEMIGROUP', 'SEMIGROUP_HRS'):
            results.append(CriterionResult(name, False, UNKNOWN, str(err)))
    results.append(_merle_result(f))
    _assert_consistent(results)
    return results
