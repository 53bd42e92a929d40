"""Invariant reports for reduced germs, plus the two polar identities.

mu is a single intersection number, i0(f_x, f_y); the conductor count
mu_bar = c - r + 1 comes out of the blowup combinatorics in resolve.
The two routes share no code, so comparing them is a real experiment,
not a tautology.

For a direction curve l the polar of f is the Jacobian determinant

    P_l(f) = f_x * l_y - f_y * l_x,

which for a line l = a*y - b*x is the directional derivative
a*f_x + b*f_y.  Two classical identities tie it to the invariants:

  * dedekind_polar_identity:  i0(f, P_l) = mu_bar + i0(f, l) - 1
    whenever every branch f_i of f meets l with multiplicity prime to
    the characteristic.
  * teissier_bound:  i0(f, P_l) <= mu + i0(f, l) - 1 under (i) i0(f, l)
    prime to the characteristic and (ii) the same for i0(l, h) over all
    branches h of the polar; equality holds exactly when (iii) every
    i0(f, h) is prime to it as well.

Where the hypotheses hold the statements are asserted at runtime: a
violation is a bug, never a data point.
"""

from .errors import (ZeroInput, NotRegularParameter, HypothesisFailed,
                     NotSupported)
from .poly import poly_str, line_form, require_reduced, sqfree_decomposition
from .intersect import ExtNat, i0
from .resolve import resolve, resolve_joint


# value of milnor_formula_holds when mu is infinite and the formula
# cannot be evaluated either way
INDETERMINATE = None


class SingularityReport:
    """Every classical number of one reduced germ, side by side."""

    __slots__ = ('ord', 'mu', 'delta', 'r', 'c', 'mu_bar',
                 'milnor_formula_holds', 'per_branch')

    def __init__(self, ord, mu, delta, r, c, mu_bar,
                 milnor_formula_holds, per_branch):
        self.ord = ord
        self.mu = mu
        self.delta = delta
        self.r = r
        self.c = c
        self.mu_bar = mu_bar
        self.milnor_formula_holds = milnor_formula_holds
        self.per_branch = per_branch

    def __repr__(self):
        holds = ('indeterminate' if self.milnor_formula_holds is None
                 else self.milnor_formula_holds)
        return (f'SingularityReport(ord={self.ord}, mu={self.mu}, '
                f'delta={self.delta}, r={self.r}, c={self.c}, '
                f'mu_bar={self.mu_bar}, holds={holds})')


class PolarIdentityReport:
    """Raw contact numbers of f, l and the polar, with both verdicts.

    failing_factors is populated by teissier_bound (the branches h of
    the polar with i0(f, h) divisible by the characteristic); the
    identity check leaves it empty.
    """

    __slots__ = ('l', 'i0_f_l', 'i0_f_polar', 'i0_l_polar',
                 'dedekind_holds', 'teissier_equality', 'failing_factors')

    def __init__(self, l, i0_f_l, i0_f_polar, i0_l_polar,
                 dedekind_holds, teissier_equality, failing_factors):
        self.l = l
        self.i0_f_l = i0_f_l
        self.i0_f_polar = i0_f_polar
        self.i0_l_polar = i0_l_polar
        self.dedekind_holds = dedekind_holds
        self.teissier_equality = teissier_equality
        self.failing_factors = failing_factors

    def __repr__(self):
        return (f'PolarIdentityReport(i0_f_l={self.i0_f_l}, '
                f'i0_f_polar={self.i0_f_polar}, '
                f'i0_l_polar={self.i0_l_polar}, '
                f'dedekind={self.dedekind_holds}, '
                f'teissier_eq={self.teissier_equality})')


class PolarFactor:
    """One branch of a polar curve through the origin.

    mult is the branch's multiplicity as a factor of the polar, ord_h
    its order at the origin; i0_f / i0_l is None when the reference
    curve shares a component with the squarefree block the branch came
    from (infinite contact).
    """

    __slots__ = ('label', 'mult', 'ord_h', 'i0_f', 'i0_l', 'branch')

    def __init__(self, label, mult, ord_h, i0_f, i0_l, branch):
        self.label = label
        self.mult = mult
        self.ord_h = ord_h
        self.i0_f = i0_f
        self.i0_l = i0_l
        self.branch = branch

    def __repr__(self):
        return (f'PolarFactor({self.label!r}, mult={self.mult}, '
                f'ord={self.ord_h}, i0_f={self.i0_f}, i0_l={self.i0_l})')


def _require_germ(f, what="f"):
    if f.is_zero() or f.order() == 0:
        raise ZeroInput(f"{what} must be nonzero and vanish at the origin")


# ---------------------------------------------------------------------------
# the two sides of the comparison

def milnor_number(f):
    """i0 of the two partial derivatives, infinite when they share a
    factor through the origin (a vanishing partial included)."""
    _require_germ(f)
    fx, fy = f.partials()
    return i0(fx, fy)


def jacobian_polar(f, l):
    """The polar of f along l: f_x*l_y - f_y*l_x.  For a line
    l = a*y - b*x this is a*f_x + b*f_y."""
    fx, fy = f.partials()
    lx, ly = l.partials()
    return fx * ly - fy * lx


def generic_transversal(f):
    """The first line l = y + c*x, c in the canonical scalar order, with
    i0(f, l) = ord(f); such an l avoids every tangent of f."""
    _require_germ(f)
    ctx = f.ctx
    n = f.order()
    # at most n directions are tangent, so n + 1 candidates suffice when
    # the field has that many elements
    count = n + 1 if ctx.size is None else min(ctx.size, n + 1)
    for t in range(count):
        c = ctx.nth_scalar(t)
        l = line_form(ctx, 1, -c)
        if i0(f, l) == n:
            return l
    raise HypothesisFailed(
        f"no transversal line y + c*x exists over this field "
        f"({ctx.size} elements, every direction tangent)")


def mu_bar(f):
    """The conductor count c - r + 1 from the blowup combinatorics.

    In characteristic zero a germ whose tangent data leaves the rational
    numbers falls outside resolve's fragment; the value is then
    recovered through the conductor identity with a transversal line,
    which carries no divisibility hypothesis there.
    """
    _require_germ(f)
    require_reduced(f)
    try:
        res = resolve(f)
    except NotSupported:
        if f.ctx.p != 0:
            raise
        return _mu_bar_via_polar(f)
    return 2 * res.delta(0) - res.branch_count(0) + 1


def _mu_bar_via_polar(f):
    l = generic_transversal(f)
    v = i0(f, jacobian_polar(f, l))
    assert not v.is_infinite, "a transversal polar has finite contact"
    return int(v) - f.order() + 1


def invariant_report(f):
    """All invariants of a reduced germ in one report."""
    _require_germ(f)
    require_reduced(f)
    res = resolve(f)
    mu = milnor_number(f)
    delta = res.delta(0)
    r = res.branch_count(0)
    c = 2 * delta
    mb = c - r + 1
    assert mb >= 0 and (mb == 0) == (f.order() == 1)
    if mu.is_infinite:
        holds = INDETERMINATE
    else:
        assert mu >= mb, "mu can never undershoot 2*delta - r + 1"
        holds = bool(mu == mb)
    return SingularityReport(f.order(), mu, delta, r, c, mb, holds,
                             res.branches)


# ---------------------------------------------------------------------------
# polar factor decomposition (shared with the tameness criteria)

def polar_factor_branches(P, f, l):
    """Branches of the polar P through the origin with their contact
    numbers against f and l, each with its multiplicity as a factor.

    P must be nonzero; a polar that is a unit decomposes into nothing.
    Blocks are the squarefree factors of P; when f or l shares a
    component with a block, contact numbers against it are withheld
    (None) for that whole block.
    """
    if P.is_zero():
        raise ZeroInput("the polar vanishes identically")
    out = []
    for block, mult in sqfree_decomposition(P):
        if (block.order() or 0) < 1:
            continue                    # block misses the origin
        out.extend(_block_factors(block, mult, f, l))
    return out


def _block_factors(block, mult, f, l):
    keep_f = not i0(f, block).is_infinite
    keep_l = not i0(l, block).is_infinite
    refs = ([f] if keep_f else []) + ([l] if keep_l else [])
    joint = resolve_joint([block] + refs)
    branches = joint.branches_of(0)
    name = poly_str(block)
    out = []
    for t, h in enumerate(branches):
        label = name if len(branches) == 1 else f"branch {t + 1} of {name}"
        if mult > 1:
            label += f" [multiplicity {mult}]"
        vals = [joint.branch_i0(h, 1 + k) for k in range(len(refs))]
        i0_f = vals[0] if keep_f else None
        i0_l = (vals[1] if keep_f else vals[0]) if keep_l else None
        out.append(PolarFactor(label, mult, h.multiplicity, i0_f, i0_l, h))
    return out


# ---------------------------------------------------------------------------
# the identities

def _base_report(f, l):
    """Raw contact data of (f, l, polar) with both verdict flags set."""
    P = jacobian_polar(f, l)
    v_fl = i0(f, l)
    v_fp = i0(f, P)
    v_lp = i0(l, P)
    mu = milnor_number(f)
    mb = mu_bar(f)
    rep = PolarIdentityReport(
        l, v_fl, v_fp, v_lp,
        dedekind_holds=bool(v_fp + 1 == ExtNat(mb) + v_fl),
        teissier_equality=bool(not mu.is_infinite and v_fp + 1 == mu + v_fl),
        failing_factors=[])
    return rep, P, mu, mb


def _check_direction(l):
    if l.is_zero() or l.order() != 1:
        raise NotRegularParameter("l must be a series of order exactly 1")


def dedekind_polar_identity(f, l):
    """Check i0(f, P_l) = mu_bar + i0(f, l) - 1.

    The identity needs every branch of f to meet l with multiplicity
    prime to the characteristic; a violation raises HypothesisFailed
    with the raw numbers attached.  Alongside it the contact of l with
    its own polar is checked: i0(l, P_l) >= i0(f, l) - 1, an equality
    exactly when the total i0(f, l) is prime to the characteristic.
    """
    _require_germ(f)
    require_reduced(f)
    _check_direction(l)
    rep, P, mu, mb = _base_report(f, l)
    p = f.ctx.p
    bad = []
    if rep.i0_f_l.is_infinite:
        bad.append("l is a branch of f (infinite contact)")
    elif p > 0:
        joint = resolve_joint([f, l])
        for t, b in enumerate(joint.branches_of(0)):
            v = joint.branch_i0(b, 1)
            if v % p == 0:
                bad.append(f"branch {t + 1} of f meets l with multiplicity "
                           f"{v} divisible by {p}")
    if bad:
        raise HypothesisFailed("; ".join(bad), report=rep)
    assert rep.dedekind_holds, "conductor identity failed under its hypothesis"
    n = int(rep.i0_f_l)
    assert rep.i0_l_polar >= n - 1, "l falls short of its polar contact floor"
    assert (rep.i0_l_polar == n - 1) == (p == 0 or n % p != 0), \
        "polar contact equality out of line with divisibility"
    return rep


def teissier_bound(f, l):
    """Check i0(f, P_l) <= mu + i0(f, l) - 1 and diagnose the equality.

    Hypotheses: (i) i0(f, l) prime to the characteristic, (ii) i0(l, h)
    prime to it for every branch h of the polar.  Equality holds exactly
    when (iii) every i0(f, h) is prime to it; the offenders are listed
    in failing_factors.  In characteristic zero everything holds
    vacuously and the bound is an equality.
    """
    _require_germ(f)
    require_reduced(f)
    _check_direction(l)
    rep, P, mu, mb = _base_report(f, l)
    p = f.ctx.p
    if mu.is_infinite:
        raise HypothesisFailed(
            "mu is infinite, the Jacobian bound needs a finite Milnor number",
            report=rep)
    if p == 0:
        assert rep.teissier_equality, "characteristic zero admits no defect"
        return rep
    if rep.i0_f_l.is_infinite or int(rep.i0_f_l) % p == 0:
        raise HypothesisFailed(
            f"hypothesis (i) fails: i0(f, l) = {rep.i0_f_l} is divisible "
            f"by {p}", report=rep)
    if rep.i0_l_polar.is_infinite:
        raise HypothesisFailed(
            "hypothesis (ii) fails: l divides the polar", report=rep)
    if (P.order() or 0) >= 1:
        factors = polar_factor_branches(P, f, l)
    else:
        factors = []                    # unit polar: nothing through 0
    bad = [fd for fd in factors if fd.i0_l is None or fd.i0_l % p == 0]
    if bad:
        parts = []
        for fd in bad:
            contact = ("infinite" if fd.i0_l is None
                       else f"{fd.i0_l}, divisible by {p}")
            parts.append(f"{fd.label} meets l with multiplicity {contact}")
        raise HypothesisFailed("hypothesis (ii) fails: " + "; ".join(parts),
                               report=rep)
    # hypotheses hold: from here on the bound is a theorem
    assert not rep.i0_f_polar.is_infinite, \
        "polar cannot share a branch with f under (i) and (ii)"
    assert rep.i0_f_polar <= int(mu) + int(rep.i0_f_l) - 1, \
        "contact with the polar exceeded its bound"
    failing = [fd for fd in factors if fd.i0_f % p == 0]
    rep.failing_factors = [
        f"{fd.label}: i0(f, h) = {fd.i0_f} divisible by {p}"
        for fd in failing]
    assert rep.teissier_equality == (not failing), \
        "equality case must match the divisibility of the factors"
    # the decomposition must add back up, factor multiplicities included
    assert sum(fd.mult * fd.i0_f for fd in factors) == rep.i0_f_polar
    assert sum(fd.mult * fd.i0_l for fd in factors) == rep.i0_l_polar
    return rep
