"""Command line front end: exact reports as stable JSON or quick tables.

Output discipline for JSON: every number is a decimal string ("INF" for
an infinite Milnor number, "indeterminate" where no finite comparison
exists), keys appear in a fixed order, and reserializing parsed output
reproduces it byte for byte.  Timings are the one nondeterministic
block; consumers comparing runs should drop them first.

Exit codes: 0 success, 1 bad input, 2 a theorem hypothesis failed and
the emitted record is partial.
"""

import argparse
import json
import re
import sys
import time

from .errors import CharplaneError, HypothesisFailed, NotIrreducible
from .field import field_make
from .intersect import ExtNat
from .invariants import generic_transversal, invariant_report, teissier_bound
from .poly import line_form, parse_poly, poly_str
from .resolve import resolve
from .tameness import merle_verify, tame_criteria

SCHEMA_VERSION = "1"

# named families; {p}, {p+k}, {p-k} take the running characteristic
TEMPLATES = {
    "milnor-example": "x^{p+2}+y^{p+1}+x^{p+1}*y",
}

_SLOT = re.compile(r"\{p([+-]\d+)?\}")


class UsageError(Exception):
    """Command line input the job validator rejects; exit code 1."""


# ---------------------------------------------------------------------------
# job specification

class Job:
    """One validated unit of work parsed from the command line."""

    __slots__ = ('command', 'poly_text', 'characteristic', 'weights', 'line',
                 'primes', 'template', 'input_path', 'output_path', 'table')

    def __init__(self, command, poly_text=None, characteristic=None,
                 weights=None, line=None, primes=None, template=None,
                 input_path=None, output_path=None, table=False):
        self.command = command
        self.poly_text = poly_text
        self.characteristic = characteristic
        self.weights = weights
        self.line = line
        self.primes = primes
        self.template = template
        self.input_path = input_path
        self.output_path = output_path
        self.table = table

    @property
    def char(self):
        return 0 if self.characteristic is None else self.characteristic


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _characteristic(text):
    try:
        p = int(text)
    except ValueError:
        raise UsageError(f"characteristic must be an integer, got {text!r}")
    if p != 0 and not _is_prime(p):
        raise UsageError(f"characteristic must be 0 or a prime, got {p}")
    return p


def _int_pair(text, flag):
    parts = text.split(',')
    if len(parts) != 2:
        raise UsageError(f"{flag} wants two integers a,b, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"{flag} wants two integers a,b, got {text!r}")


def expand_template(text, p):
    """Substitute the characteristic into every {p}, {p+k}, {p-k} slot."""
    def fill(mt):
        off = mt.group(1)
        return str(p if off is None else p + int(off))
    return _SLOT.sub(fill, text)


def parse_args(argv):
    ap = argparse.ArgumentParser(
        prog='charplane', add_help=True,
        description='exact invariants of plane curve germs, any characteristic')
    ap.add_argument('command', choices=('invariants', 'tame', 'sweep',
                                        'corpus', 'merle', 'teissier'))
    ap.add_argument('poly', nargs='?', help='germ in x, y, e.g. "x^3+y^2"')
    ap.add_argument('-p', '--characteristic', default=None)
    ap.add_argument('--weights', default=None, metavar='N,M')
    ap.add_argument('--line', default=None, metavar='A,B',
                    help='direction (a, b); the line is a*y - b*x')
    ap.add_argument('--primes', default=None, metavar='P1,P2,...')
    ap.add_argument('--template', default=None, choices=sorted(TEMPLATES))
    ap.add_argument('-i', '--input', default=None, dest='input_path')
    ap.add_argument('-o', '--output', default=None, dest='output_path')
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument('--json', action='store_true')
    fmt.add_argument('--table', action='store_true')

    # argparse exits 2 on its own; route through UsageError for exit 1
    def fail(message):
        raise UsageError(message)
    ap.error = fail

    # intermixed: "tame -p 5 x^3+y^2" puts the germ after the options
    ns = ap.parse_intermixed_args(argv)
    job = Job(ns.command,
                   poly_text=ns.poly,
                   characteristic=(None if ns.characteristic is None
                                   else _characteristic(ns.characteristic)),
                   weights=None, line=None, primes=None,
                   template=ns.template,
                   input_path=ns.input_path,
                   output_path=ns.output_path,
                   table=ns.table)
    if ns.weights is not None:
        w = _int_pair(ns.weights, '--weights')
        if w[0] < 1 or w[1] < 1:
            raise UsageError(f"--weights wants positive integers, got {w}")
        job.weights = w
    if ns.line is not None:
        ab = _int_pair(ns.line, '--line')
        if ab == (0, 0):
            raise UsageError("--line 0,0 defines no direction")
        job.line = ab
    if ns.primes is not None:
        seen = []
        for part in ns.primes.split(','):
            q = _characteristic(part)
            if q == 0:
                raise UsageError("--primes wants primes, got 0")
            if q not in seen:
                seen.append(q)
        job.primes = seen
    _validate(job)
    return job


def _validate(job):
    cmd = job.command
    if cmd == 'corpus':
        if job.input_path is None:
            raise UsageError("corpus reads polynomials from -i <file>")
        if job.poly_text or job.template:
            raise UsageError("corpus takes its input from the file only")
        return
    if job.poly_text and job.template:
        raise UsageError("give a polynomial or --template, not both")
    if not job.poly_text and not job.template:
        raise UsageError(f"{cmd} needs a polynomial or --template")
    if cmd == 'sweep':
        if job.primes is None:
            raise UsageError("sweep needs --primes p1,p2,...")
        if job.characteristic is not None:
            raise UsageError("sweep walks --primes; -p does not apply")
    elif job.primes is not None:
        raise UsageError("--primes applies to sweep only")


# ---------------------------------------------------------------------------
# serialization: fixed key order, numbers as decimal strings

_RECORD_KEYS = ('schema_version', 'input', 'report', 'criteria',
                'polar', 'merle', 'field_tower', 'timings', 'error')


def _num(v):
    # ExtNat renders INF or digits; int and Fraction print exactly
    return repr(v) if isinstance(v, ExtNat) else str(v)


def _verdict(v):
    return "indeterminate" if v is None else v


def _echo(job, p, poly_text):
    return {
        "command": job.command,
        "poly": poly_text,
        "characteristic": None if p is None else str(p),
        "weights": None if job.weights is None else "%d,%d" % job.weights,
        "line": None if job.line is None else "%d,%d" % job.line,
        "primes": (None if job.primes is None
                   else ",".join(str(q) for q in job.primes)),
        "template": job.template,
    }


def _record(job, p, poly_text):
    rec = {k: None for k in _RECORD_KEYS}
    rec["schema_version"] = SCHEMA_VERSION
    rec["input"] = _echo(job, p, poly_text)
    return rec


def _branch_json(b):
    return {
        "multiplicity": _num(b.multiplicity),
        "semigroup": [_num(g) for g in b.semigroup_gens],
        "e_seq": [_num(e) for e in b.e_seq],
        "n_star": _num(b.n_star),
        "conductor": _num(b.conductor),
        "delta": _num(b.delta),
    }


def _report_json(rep):
    return {
        "ord": _num(rep.ord),
        "mu": _num(rep.mu),
        "delta": _num(rep.delta),
        "r": _num(rep.r),
        "conductor": _num(rep.c),
        "mu_bar": _num(rep.mu_bar),
        "holds": _verdict(rep.milnor_formula_holds),
        "branches": [_branch_json(b) for b in rep.per_branch],
    }


def _criterion_json(res):
    return {
        "name": res.name,
        "applicable": res.applicable,
        "verdict": "unknown" if res.verdict is None else res.verdict,
        "witness": res.witness,
    }


def _polar_json(rep):
    return {
        "line": poly_str(rep.l),
        "i0_f_l": _num(rep.i0_f_l),
        "i0_f_polar": _num(rep.i0_f_polar),
        "i0_l_polar": _num(rep.i0_l_polar),
        "dedekind_holds": _verdict(rep.dedekind_holds),
        "teissier_equality": _verdict(rep.teissier_equality),
        "failing_factors": list(rep.failing_factors),
    }


def _merle_json(rep):
    return {
        "n": _num(rep.n),
        "semigroup": [_num(g) for g in rep.gens],
        "ok": rep.ok,
        "bundles": [{
            "k": _num(b.k),
            "ord_h": _num(b.ord_h),
            "expected_ord": _num(b.expected_ord),
            "contact_ratios": [_num(rt) for rt in b.contact_ratios],
            "expected_ratio": _num(b.expected_ratio),
            "ord_divisibility_ok": b.ord_divisibility_ok,
            "factors": list(b.labels),
        } for b in rep.factors],
        "stray": list(rep.stray),
    }


def _error_json(err):
    return {"type": type(err).__name__, "message": str(err)}


def _field_tower(f):
    """Largest extension degree the blowup tree of f touches."""
    return str(max(node.ctx.k for node in resolve(f).nodes))


def _timings(marks):
    return {name: f"{dt:.6f}" for name, dt in marks}


# ---------------------------------------------------------------------------
# commands

def _build_germ(job, p):
    text = job.poly_text
    if job.template is not None:
        text = expand_template(TEMPLATES[job.template], p)
    f = parse_poly(text, field_make(p))
    return text, f


def _line_of(job, ctx):
    if job.line is None:
        return None
    return line_form(ctx, job.line[0], job.line[1])


def cmd_invariants(job):
    t0 = time.perf_counter()
    text, f = _build_germ(job, job.char)
    t1 = time.perf_counter()
    rep = invariant_report(f)
    tower = _field_tower(f)
    t2 = time.perf_counter()
    rec = _record(job, job.char, text)
    rec["report"] = _report_json(rep)
    rec["field_tower"] = tower
    rec["timings"] = _timings([("parse", t1 - t0), ("compute", t2 - t1),
                               ("total", t2 - t0)])
    return rec, 0


def cmd_tame(job):
    t0 = time.perf_counter()
    text, f = _build_germ(job, job.char)
    t1 = time.perf_counter()
    rep = invariant_report(f)
    results = tame_criteria(f, job.weights, _line_of(job, f.ctx))
    tower = _field_tower(f)
    t2 = time.perf_counter()
    rec = _record(job, job.char, text)
    rec["report"] = _report_json(rep)
    rec["criteria"] = [_criterion_json(r) for r in results]
    rec["field_tower"] = tower
    rec["timings"] = _timings([("parse", t1 - t0), ("compute", t2 - t1),
                               ("total", t2 - t0)])
    return rec, 0


def cmd_merle(job):
    t0 = time.perf_counter()
    text, f = _build_germ(job, job.char)
    t1 = time.perf_counter()
    rep = invariant_report(f)
    tower = _field_tower(f)
    rec = _record(job, job.char, text)
    rec["report"] = _report_json(rep)
    rec["field_tower"] = tower
    code = 0
    try:
        rec["merle"] = _merle_json(merle_verify(f))
    except (HypothesisFailed, NotIrreducible) as err:
        rec["error"] = _error_json(err)
        code = 2
    t2 = time.perf_counter()
    rec["timings"] = _timings([("parse", t1 - t0), ("compute", t2 - t1),
                               ("total", t2 - t0)])
    return rec, code


def cmd_teissier(job):
    t0 = time.perf_counter()
    text, f = _build_germ(job, job.char)
    t1 = time.perf_counter()
    rep = invariant_report(f)
    tower = _field_tower(f)
    rec = _record(job, job.char, text)
    rec["report"] = _report_json(rep)
    rec["field_tower"] = tower
    code = 0
    l = _line_of(job, f.ctx)
    if l is None:
        l = generic_transversal(f)
    try:
        rec["polar"] = _polar_json(teissier_bound(f, l))
    except HypothesisFailed as err:
        rec["error"] = _error_json(err)
        if err.report is not None:
            rec["polar"] = _polar_json(err.report)
        code = 2
    t2 = time.perf_counter()
    rec["timings"] = _timings([("parse", t1 - t0), ("compute", t2 - t1),
                               ("total", t2 - t0)])
    return rec, code


def cmd_sweep(job):
    records = []
    tame_primes, untame_primes, error_primes = [], [], []
    hypothesis_only = True
    for p in job.primes:
        t0 = time.perf_counter()
        try:
            text, f = _build_germ(job, p)
            rep = invariant_report(f)
            results = tame_criteria(f, job.weights, _line_of(job, f.ctx))
            tower = _field_tower(f)
            rec = _record(job, p, text)
            rec["report"] = _report_json(rep)
            rec["criteria"] = [_criterion_json(r) for r in results]
            rec["field_tower"] = tower
            direct = results[0]
            assert direct.name == 'DIRECT'
            if direct.verdict is True:
                tame_primes.append(str(p))
            else:
                untame_primes.append(str(p))
        except CharplaneError as err:
            rec = _record(job, p, job.poly_text)
            rec["error"] = _error_json(err)
            error_primes.append(str(p))
            if not isinstance(err, HypothesisFailed):
                hypothesis_only = False
        t1 = time.perf_counter()
        rec["timings"] = _timings([("total", t1 - t0)])
        records.append(rec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": _echo(job, None, job.poly_text),
        "records": records,
        "summary": {
            "tame_primes": tame_primes,
            "untame_primes": untame_primes,
            "error_primes": error_primes,
        },
    }
    if error_primes:
        return doc, 2 if hypothesis_only else 1
    return doc, 0


def _audit_line(rep_json, criteria_json, counters):
    """Cross-line property checks on already serialized values."""
    mu, mu_bar = rep_json["mu"], rep_json["mu_bar"]
    if mu != "INF" and int(mu) < int(mu_bar):
        counters["melle_wall"] += 1
    if criteria_json is None:           # smooth germ: no criteria to audit
        return
    direct = criteria_json[0]
    for res in criteria_json[1:]:
        if res["name"] == 'MERLE' or not res["applicable"]:
            continue
        if res["verdict"] is True and direct["verdict"] is not True:
            counters["inconsistent"] += 1
        if res["verdict"] is False and direct["verdict"] is not False:
            counters["inconsistent"] += 1


def cmd_corpus(job):
    try:
        with open(job.input_path) as fh:
            raw_lines = fh.read().splitlines()
    except OSError as err:
        raise UsageError(f"cannot read {job.input_path}: {err}")
    records = []
    current_p = job.char
    n_lines = failures = 0
    counters = {"melle_wall": 0, "inconsistent": 0}
    for raw in raw_lines:
        body = raw.split('#', 1)[0].strip()
        if not body:
            continue
        if body.startswith('@p='):
            try:
                current_p = _characteristic(body[3:].strip())
            except UsageError as err:
                failures += 1
                rec = _record(job, None, body)
                rec["error"] = {"type": "UsageError", "message": str(err)}
                records.append(rec)
            continue
        p_here = current_p
        if '@p=' in body:
            body, _, tail = body.partition('@p=')
            body = body.strip()
            try:
                p_here = _characteristic(tail.strip())
            except UsageError as err:
                failures += 1
                rec = _record(job, None, body)
                rec["error"] = {"type": "UsageError", "message": str(err)}
                records.append(rec)
                continue
        n_lines += 1
        t0 = time.perf_counter()
        rec = _record(job, p_here, body)
        try:
            f = parse_poly(body, field_make(p_here))
            rep = invariant_report(f)
            rec["report"] = _report_json(rep)
            if f.order() >= 2:          # criteria speak about singularities
                results = tame_criteria(f, job.weights, _line_of(job, f.ctx))
                rec["criteria"] = [_criterion_json(r) for r in results]
            rec["field_tower"] = _field_tower(f)
            _audit_line(rec["report"], rec["criteria"], counters)
        except CharplaneError as err:
            rec["error"] = _error_json(err)
            failures += 1
        t1 = time.perf_counter()
        rec["timings"] = _timings([("total", t1 - t0)])
        records.append(rec)
    audit = {"audit": {
        "lines": str(n_lines),
        "failures": str(failures),
        "melle_wall_violations": str(counters["melle_wall"]),
        "criterion_inconsistencies": str(counters["inconsistent"]),
    }}
    records.append(audit)
    bad = failures or counters["melle_wall"] or counters["inconsistent"]
    return records, 1 if bad else 0


_DISPATCH = {
    'invariants': cmd_invariants,
    'tame': cmd_tame,
    'sweep': cmd_sweep,
    'corpus': cmd_corpus,
    'merle': cmd_merle,
    'teissier': cmd_teissier,
}


# ---------------------------------------------------------------------------
# rendering

def to_json_document(payload):
    """Pretty, byte-stable form for a single record or sweep document."""
    return json.dumps(payload, indent=2) + "\n"


def to_json_lines(payload):
    """Compact one-object-per-line form for corpus output."""
    return "".join(json.dumps(rec, separators=(",", ":")) + "\n"
                   for rec in payload)


def _word(v):
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return str(v)


def _table_record(rec, out):
    inp = rec["input"]
    head = f"{inp['command']}  {inp['poly']}"
    if inp["characteristic"] is not None:
        head += f"  (characteristic {inp['characteristic']})"
    out.append(head)
    if rec.get("error"):
        out.append(f"  error: {rec['error']['message']}")
    rep = rec.get("report")
    if rep:
        out.append("  " + "  ".join(
            f"{k}={rep[k]}" for k in ("ord", "mu", "delta", "r",
                                      "conductor", "mu_bar")))
        out.append(f"  milnor formula holds: {_word(rep['holds'])}")
    if rec.get("criteria"):
        out.append("  criteria:")
        for cr in rec["criteria"]:
            mark = _word(cr["verdict"]) if cr["applicable"] else "n/a"
            line = f"    {cr['name']:<16} {mark:<8}"
            if cr["witness"]:
                line += f" {cr['witness']}"
            out.append(line.rstrip())
    polar = rec.get("polar")
    if polar:
        out.append(f"  line {polar['line']}: i0(f,l)={polar['i0_f_l']}  "
                   f"i0(f,P)={polar['i0_f_polar']}  "
                   f"i0(l,P)={polar['i0_l_polar']}")
        out.append(f"  conductor identity: {_word(polar['dedekind_holds'])}  "
                   f"jacobian equality: {_word(polar['teissier_equality'])}")
        for t in polar["failing_factors"]:
            out.append(f"    defect: {t}")
    merle = rec.get("merle")
    if merle:
        out.append(f"  polar bundles of an order {merle['n']} branch, "
                   f"semigroup <{', '.join(merle['semigroup'])}>: "
                   f"{'ok' if merle['ok'] else 'VIOLATED'}")
        for b in merle["bundles"]:
            out.append(f"    k={b['k']}: ord {b['ord_h']} "
                       f"(expected {b['expected_ord']}) "
                       f"at ratio {b['expected_ratio']}")
        if merle["stray"]:
            out.append(f"    stray: {', '.join(merle['stray'])}")


def to_table(payload):
    out = []
    if isinstance(payload, list):                    # corpus
        for rec in payload:
            if "audit" in rec:
                a = rec["audit"]
                out.append(f"audit: {a['lines']} lines, "
                           f"{a['failures']} failures, "
                           f"{a['melle_wall_violations']} bound violations, "
                           f"{a['criterion_inconsistencies']} inconsistencies")
            else:
                _table_record(rec, out)
    elif "records" in payload:                       # sweep
        for rec in payload["records"]:
            _table_record(rec, out)
        s = payload["summary"]
        out.append(f"tame at: {', '.join(s['tame_primes']) or 'none'}")
        out.append(f"not tame at: {', '.join(s['untame_primes']) or 'none'}")
        if s["error_primes"]:
            out.append(f"errors at: {', '.join(s['error_primes'])}")
    else:
        _table_record(payload, out)
    return "".join(line + "\n" for line in out)


def _render(payload, job):
    if job.table:
        return to_table(payload)
    if isinstance(payload, list):
        return to_json_lines(payload)
    return to_json_document(payload)


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv=None):
    try:
        job = parse_args(sys.argv[1:] if argv is None else argv)
        payload, code = _DISPATCH[job.command](job)
    except UsageError as err:
        print(f"charplane: {err}", file=sys.stderr)
        return 1
    except HypothesisFailed as err:
        print(f"charplane: hypothesis failed: {err}", file=sys.stderr)
        return 2
    except CharplaneError as err:
        print(f"charplane: {err}", file=sys.stderr)
        return 1
    _write(_render(payload, job), job.output_path)
    return code


if __name__ == '__main__':
    sys.exit(main())
