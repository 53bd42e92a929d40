"""Joint embedded resolution of plane curve germs by iterated blowups.

A list of pairwise coprime reduced germs is resolved simultaneously.
Every node of the tree is an infinitely near point; it keeps one strict
transform per input (None once that input no longer passes through the
point), the per-input multiplicities, and which exceptional components
sit on the two local coordinate axes.  A point q is proximate to r
exactly when r's exceptional component passes through q, which the axis
bookkeeping reads off directly.

A point is final when the total multiplicity is 1 and the lone curve
meets every exceptional axis through the point transversally.  Each
leaf is then one branch of one input, and everything combinatorial
(multiplicity sequences, semigroups, conductors, delta invariants,
pairwise intersection numbers) is computed from the tree by Noether's
formula and the proximity equalities.

The first blowup chart sends (x, y) to (x, x*(y + c)) for a tangent
slope c, the second sends (x, y) to (x*y, y); chart two is used only
for the vertical tangent direction.
"""

import math

from .errors import (ZeroInput, NotReduced, InfiniteIntersection,
                     DepthExceeded, NotSupported)
from .field import roots_in_splitting_field, u_mul, u_trim
from .poly import (compose_chart1, compose_chart2, div_xpow, div_ypow,
                   biv_gcd, reduced_test)


class ResolveNode:
    __slots__ = ('id', 'parent_id', 'depth', 'chart', 'center', 'ctx',
                 'transforms', 'mults', 'axes', 'children')

    def __init__(self, id, parent_id, depth, chart, center, ctx,
                 transforms, axes):
        self.id = id
        self.parent_id = parent_id
        self.depth = depth
        self.chart = chart          # None at the root, else 1 or 2
        self.center = center        # tangent slope for chart 1, None for 2
        self.ctx = ctx
        self.transforms = transforms
        self.mults = [0 if g is None else g.order() for g in transforms]
        self.axes = axes            # exceptional ids on {x=0} and {y=0}
        self.children = []

    @property
    def total_mult(self):
        return sum(self.mults)

    @property
    def prox(self):
        """Ids of the points whose exceptional component passes through
        this one (always includes the parent, except at the root)."""
        return frozenset(a for a in self.axes if a is not None)

    def live_inputs(self):
        return [i for i, g in enumerate(self.transforms) if g is not None]


class BranchData:
    """One branch of one input: a leaf of the tree plus the combinatorics
    along its path."""

    __slots__ = ('owner', 'leaf_id', 'path_ids', 'path_mults', 'mult_seq',
                 'semigroup_gens', 'e_seq', 'n_seq', 'n_star', 'conductor',
                 'delta')

    @property
    def multiplicity(self):
        return self.path_mults[0]


class ResolveResult:
    __slots__ = ('nodes', 'n_inputs', 'branches')

    def __init__(self, nodes, n_inputs, branches):
        self.nodes = nodes
        self.n_inputs = n_inputs
        self.branches = branches

    def path_ids(self, node_id):
        out = []
        while node_id is not None:
            out.append(node_id)
            node_id = self.nodes[node_id].parent_id
        out.reverse()
        return out

    def branches_of(self, i):
        return [b for b in self.branches if b.owner == i]

    def branch_count(self, i=0):
        return len(self.branches_of(i))

    def delta(self, i=0):
        """Sum of m(m-1)/2 over all infinitely near points of input i."""
        return sum(q.mults[i] * (q.mults[i] - 1) // 2 for q in self.nodes)

    def pairwise_i0(self, i, j):
        """Intersection number of inputs i and j by Noether's formula."""
        if i == j:
            raise ValueError("a curve meets itself infinitely")
        return sum(q.mults[i] * q.mults[j] for q in self.nodes)

    def branch_i0(self, branch, j):
        """Intersection of one branch with the whole input j."""
        if branch.owner == j:
            raise ValueError("branch against its own input is not finite")
        return sum(m * self.nodes[qid].mults[j]
                   for qid, m in zip(branch.path_ids, branch.path_mults))

    def branch_pair_i0(self, b1, b2):
        if b1.leaf_id == b2.leaf_id:
            raise ValueError("a branch meets itself infinitely")
        m2 = dict(zip(b2.path_ids, b2.path_mults))
        return sum(m * m2[qid]
                   for qid, m in zip(b1.path_ids, b1.path_mults)
                   if qid in m2)


def _tangent_rows(node):
    """in_g(1, t) for each live transform, as univariate Scalar lists."""
    rows = {}
    ctx = node.ctx
    for i in node.live_inputs():
        g = node.transforms[i]
        o = g.order()
        row = [ctx.zero] * (o + 1)
        for (a, b), s in g.terms.items():
            if a + b == o:
                row[b] = s
        rows[i] = u_trim(row)
    return rows


def _strict(transformed, m, axis_div):
    h = axis_div(transformed, m)
    assert not h.is_zero()
    return h if h.order() >= 1 else None


def _is_final(node):
    if node.total_mult != 1:
        return False
    i = node.live_inputs()[0]
    g = node.transforms[i]
    # the branch must meet every exceptional axis through the point
    # transversally: order of the restriction exactly 1
    for axis, restrict in ((node.axes[0], g.restrict_x0),
                           (node.axes[1], g.restrict_y0)):
        if axis is None:
            continue
        r = restrict()
        o = next((t for t, s in enumerate(r) if not s.is_zero()), None)
        if o != 1:
            return False
    return True


def _blow(node, next_id):
    """All children of a non-final node, ids assigned from next_id."""
    ctx = node.ctx
    rows = _tangent_rows(node)
    T = [ctx.one]
    vert = 0
    for i, row in rows.items():
        T = u_mul(T, row, ctx)
        vert += node.mults[i] - (len(row) - 1)
    degT = len(T) - 1
    children = []
    if degT >= 1:
        roots, big = roots_in_splitting_field(T, ctx)
        if sum(m for _, m in roots) != degT:
            raise NotSupported(
                "tangent directions do not split over the base field; "
                "extend the field or use char p > 0")
    else:
        roots, big = [], ctx
    trans = node.transforms
    if big != ctx:
        trans = [None if g is None else g.embed(big) for g in trans]
    for c, _ in roots:
        kids = [None if g is None else
                _strict(compose_chart1(g, c), g.order(), div_xpow)
                for g in trans]
        y_axis = node.axes[1] if c.is_zero() else None
        child = ResolveNode(next_id, node.id, node.depth + 1, 1, c, big,
                            kids, (node.id, y_axis))
        next_id += 1
        children.append(child)
    if vert > 0:
        kids = [None if g is None else
                _strict(compose_chart2(g), g.order(), div_ypow)
                for g in trans]
        child = ResolveNode(next_id, node.id, node.depth + 1, 2, None, big,
                            kids, (node.axes[0], node.id))
        next_id += 1
        children.append(child)
    return children, next_id


def resolve_joint(inputs):
    """Resolve a list of reduced, pairwise coprime germs simultaneously."""
    if not inputs:
        raise ZeroInput("no input curves")
    ctx = inputs[0].ctx
    for f in inputs:
        if f.ctx != ctx:
            raise ValueError("inputs over different fields")
        if f.is_zero() or f.order() == 0:
            raise ZeroInput("every input must vanish at the origin")
        if not reduced_test(f):
            raise NotReduced("input has a repeated factor through the origin")
    for a in range(len(inputs)):
        for b in range(a + 1, len(inputs)):
            if biv_gcd(inputs[a], inputs[b]).order() >= 1:
                raise InfiniteIntersection(
                    "inputs share a branch through the origin")
    total_deg = sum(f.degree() for f in inputs)
    max_depth = 4 * total_deg * total_deg + 8
    root = ResolveNode(0, None, 0, None, None, ctx, list(inputs),
                       (None, None))
    nodes = [root]
    stack = [root]
    while stack:
        node = stack.pop()
        if _is_final(node):
            continue
        if node.depth >= max_depth:
            raise DepthExceeded("blowup tree exceeded its depth guard")
        children, nid = _blow(node, len(nodes))
        assert children, "a non-final point must have at least one child"
        node.children = [c.id for c in children]
        nodes.extend(children)
        stack.extend(reversed(children))
    result = ResolveResult(nodes, len(inputs), [])
    result.branches = _extract_branches(result)
    _check_total_multiplicities(result)
    return result


def resolve(f):
    return resolve_joint([f])


# ---------------------------------------------------------------------------
# branches

def _extract_branches(result):
    branches = []
    for node in result.nodes:
        if node.children:
            continue
        owner = node.live_inputs()[0]
        b = BranchData()
        b.owner = owner
        b.leaf_id = node.id
        b.path_ids = result.path_ids(node.id)
        b.path_mults = _branch_mults(result, b.path_ids)
        b.mult_seq = _trim_mult_seq(result, b.path_ids, b.path_mults)
        values = [_curvette_value(result, b.path_ids, b.path_mults, j)
                  for j in range(len(b.path_ids))]
        gens = _minimal_generators(values)
        _fill_semigroup(b, gens)
        branches.append(b)
    branches.sort(key=lambda b: (b.owner, b.leaf_id))
    return branches


def _branch_mults(result, path_ids):
    """Per-branch multiplicities along the path, from the proximity
    equalities, bottom up."""
    nodes = result.nodes
    n = len(path_ids)
    m = [0] * n
    m[n - 1] = 1
    for t in range(n - 2, -1, -1):
        qid = path_ids[t]
        s = sum(m[l] for l in range(t + 1, n)
                if qid in nodes[path_ids[l]].prox)
        assert s >= 1, "a path point must carry positive multiplicity"
        m[t] = s
    return m


def _trim_mult_seq(result, path_ids, m):
    """Canonical finite multiplicity sequence: cut after the last point
    proximate to a point of multiplicity >= 2."""
    nodes = result.nodes
    last = -1
    for l in range(len(m)):
        px = nodes[path_ids[l]].prox
        if any(m[j] >= 2 and path_ids[j] in px for j in range(l)):
            last = l
    return m[:last + 1] if last >= 0 else [1]


def _curvette_value(result, path_ids, bm, j):
    """Intersection of the branch with a curvette at the j-th path point:
    a smooth arc through q_0..q_j leaving transversally at q_j."""
    nodes = result.nodes
    gm = [0] * (j + 1)
    gm[j] = 1
    for t in range(j - 1, -1, -1):
        qid = path_ids[t]
        gm[t] = sum(gm[l] for l in range(t + 1, j + 1)
                    if qid in nodes[path_ids[l]].prox)
    return sum(bm[t] * gm[t] for t in range(j + 1))


def _member(v, gens):
    if v == 0:
        return True
    if not gens:
        return False
    reach = [False] * (v + 1)
    reach[0] = True
    for g in gens:
        for t in range(g, v + 1):
            if reach[t - g]:
                reach[t] = True
    return reach[v]


def _minimal_generators(values):
    gens = []
    for v in sorted(set(values)):
        assert v >= 1
        if not _member(v, gens):
            gens.append(v)
    return gens


def _fill_semigroup(b, gens):
    """Populate semigroup fields of a BranchData from its minimal
    generators, cross-checking the conductor three independent ways."""
    b.semigroup_gens = gens
    e = [gens[0]]
    for v in gens[1:]:
        e.append(math.gcd(e[-1], v))
    assert e[-1] == 1, "branch values must be coprime overall"
    assert all(e[k] < e[k - 1] for k in range(1, len(e))), \
        "gcd sequence of a branch strictly decreases"
    b.e_seq = e
    b.n_seq = [e[k - 1] // e[k] for k in range(1, len(e))]
    b.n_star = max(b.n_seq, default=1)
    if len(gens) == 1:
        cond = 0
    else:
        cond = sum((b.n_seq[k - 1] - 1) * gens[k]
                   for k in range(1, len(gens))) - gens[0] + 1
    # gap enumeration must agree
    limit = cond + gens[0] + 1
    reach = [False] * (limit + 1)
    reach[0] = True
    for g in gens:
        for t in range(g, limit + 1):
            if reach[t - g]:
                reach[t] = True
    gaps = [t for t in range(1, limit + 1) if not reach[t]]
    assert all(t < cond for t in gaps)
    assert cond == 0 or cond - 1 in gaps
    assert cond % 2 == 0 and len(gaps) == cond // 2, \
        "branch semigroups are symmetric"
    b.conductor = cond
    # third route: delta of the branch from its multiplicities
    delta = sum(m * (m - 1) // 2 for m in b.path_mults)
    assert delta == cond // 2, "conductor must equal twice delta"
    b.delta = delta


def _check_total_multiplicities(result):
    """Per-branch multiplicities must add up to the transform orders."""
    for i in range(result.n_inputs):
        per_node = {}
        for br in result.branches_of(i):
            for qid, m in zip(br.path_ids, br.path_mults):
                per_node[qid] = per_node.get(qid, 0) + m
        for q in result.nodes:
            assert per_node.get(q.id, 0) == q.mults[i], \
                "branch multiplicities disagree with the transform order"
