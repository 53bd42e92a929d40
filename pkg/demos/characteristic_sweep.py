"""Walk one germ across characteristics and watch the Milnor formula.

Run from the repo root after an editable install:

    python3 demos/characteristic_sweep.py

The star is f = (y^2+x^3)^2 + x^5*y, irreducible with semigroup
<4, 6, 13>. Over Q and over most primes mu = 2*delta - r + 1 = 16.
At p = 2 the Milnor number is infinite, at p = 3 and p = 13 it is
finite but too large. The divisibility of a semigroup generator by p
is exactly what separates the bad finite primes here.
"""

from charplane import (
    field_make,
    generic_transversal,
    invariant_report,
    jacobian_polar,
    merle_verify,
    parse_poly,
    tame_criteria,
)

MAIN = "(y^2+x^3)^2+x^5*y"


def sweep():
    print("germ:", MAIN)
    print()
    print("  p    mu      2*delta-r+1   tame   semigroup")
    for p in (0, 2, 3, 5, 7, 11, 13, 17):
        f = parse_poly(MAIN, field_make(p))
        rep = invariant_report(f)
        gens = rep.per_branch[0].semigroup_gens
        tame = {True: "yes", False: "no"}.get(rep.milnor_formula_holds, "?")
        print("%3d   %-6s  %-12d  %-5s  %s"
              % (p, repr(rep.mu), rep.mu_bar, tame, gens))
    print()


def explain(p):
    f = parse_poly(MAIN, field_make(p))
    print("criteria at p = %d:" % p)
    for res in tame_criteria(f):
        verdict = {True: "yes", False: "no", None: "open"}[res.verdict]
        mark = "  " if res.applicable else "- "
        print("  %s%-16s %-5s %s" % (mark, res.name, verdict, res.witness))
    print()


def polar_story(p):
    # contact of the generic polar with the germ, exact over F_p
    f = parse_poly(MAIN, field_make(p))
    l = generic_transversal(f)
    pl = jacobian_polar(f, l)
    print("p = %d: the generic polar has order %d; its branches bundle by contact:"
          % (p, pl.order()))
    dec = merle_verify(f)
    for b in dec.factors:
        print("  bundle %d: order %s, contact ratios %s"
              % (b.k, b.ord_h, [str(c) for c in b.contact_ratios]))
    print()


if __name__ == "__main__":
    sweep()
    explain(13)
    polar_story(7)
