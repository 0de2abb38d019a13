"""Batch front end: TOML job files in, exact JSON/CSV tables and certificates
out.  Outputs are deterministic and written atomically; reruns on identical
input produce byte-identical files.

Exit codes: 0 on success, 2 when some request ended inconclusive or
incomplete, 1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .algebra import Element, FreeAlgebra, PolynomialRing, parse_polynomial
from .coefficients import QQ, QV
from .groebner import groebner
from .jordan_holder import jh_table, pmr_build
from .orderkeys import (DegLexOrder, LexOrder, OrderKey, WeightOrder,
                        WordDegLexOrder)
from .puiseux import (CurveValuation, IrrationalCoefficientError,
                      puiseux_expand, reduce_module_basis, root_classes)
from .quantum import (A2Data, A3Data, QuantumCell, ReducedWord, CARTAN_A2,
                      CARTAN_A3, feigin, k_minus_a2, k_mixed_a2, k_mixed_a3,
                      k_plus_a2)
from .semigroups import (IntegerVectorMonoid, MatrixGroupoid, check_axioms,
                         is_defined)
from .tropical import Subplane, saturation_check, is_prop, tropical_valuation
from .valuations import (CoordinateValuation, IncompleteReductionError,
                         injectivity_check, restrict, ring_monomials,
                         standard_monomial_basis, tame, test_generators)
from .groebner import normal_form
from .algebra import Presentation
from .valuations import quotient_valuation


class JobError(ValueError):
    pass


def _ser(x):
    """Exact serialization: rationals as p/q strings, no floats anywhere."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, OrderKey):
        return [str(v) for v in x.levels]
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _ser(v) for k, v in x.items()}
    if hasattr(x, "serialize"):
        return x.serialize()
    return x


class JobSpec:
    """Parsed and validated job file."""

    def __init__(self, data, path="<job>"):
        self.path = path
        self.field = QV if data.get("job", {}).get("field") == "QV" else QQ
        self.rings = {}
        self.ideals = {}
        self.valuations = {}
        self.requests = data.get("request", [])
        for name, spec in data.get("ring", {}).items():
            self.rings[name] = self._build_ring(name, spec)
        for name, spec in data.get("ideal", {}).items():
            self.ideals[name] = self._build_ideal(name, spec)
        for name, spec in data.get("valuation", {}).items():
            self.valuations[name] = self._build_valuation(name, spec)
        for i, req in enumerate(self.requests):
            if "op" not in req:
                raise JobError("request %d has no op" % i)
            bound = req.get("bound", req.get("degree"))
            if bound is not None and bound <= 0:
                raise JobError("request %d: bounds must be positive" % i)

    def _build_ring(self, name, spec):
        vars_ = spec.get("vars")
        if not vars_:
            raise JobError("ring.%s: missing vars" % name)
        n = len(vars_)
        order_spec = spec.get("order", "deglex")
        prio_names = spec.get("priority", vars_)
        try:
            priority = [vars_.index(v) for v in prio_names]
        except ValueError as e:
            raise JobError("ring.%s: priority names %r must be variables" % (name, prio_names)) from e
        free = bool(spec.get("free", False))
        if isinstance(order_spec, str):
            if free:
                order = WordDegLexOrder(n, priority=priority)
            elif order_spec == "lex":
                order = LexOrder(n, priority=priority)
            elif order_spec == "deglex":
                order = DegLexOrder(n, priority=priority)
            else:
                raise JobError("ring.%s: unknown order %r" % (name, order_spec))
        else:
            keys = [OrderKey([Fraction(v) for v in row]) for row in order_spec["keys"]]
            order = WeightOrder(keys, priority=priority)
        cls = FreeAlgebra if free else PolynomialRing
        return cls(self.field, vars_, order)

    def _build_ideal(self, name, spec):
        ring = self._ring(spec.get("ring"), "ideal.%s" % name)
        gens = [parse_polynomial(ring, s) for s in spec.get("generators", [])]
        if not gens:
            raise JobError("ideal.%s: no generators" % name)
        return gens

    def _ring(self, rname, where):
        if rname not in self.rings:
            raise JobError("%s: ring %r is not declared" % (where, rname))
        return self.rings[rname]

    def _build_valuation(self, name, spec):
        kind = spec.get("kind")
        where = "valuation.%s" % name
        if kind == "tautological":
            ring = self._ring(spec.get("ring"), where)
            coords = spec.get("value_coords")
            carrier = IntegerVectorMonoid(ring.n, ring.order)
            if coords is None:
                index_value = lambda m: m
            else:
                perm = [ring.names.index(v) for v in coords]
                index_value = lambda m: tuple(m[i] for i in perm)
            return CoordinateValuation(ring, carrier, lambda x: x, index_value,
                                       injective=True, well_ordered=True)
        if kind == "quotient":
            if spec.get("ideal") not in self.ideals:
                raise JobError("%s: ideal %r is not declared" % (where, spec.get("ideal")))
            gens = self.ideals[spec["ideal"]]
            pres = Presentation(gens[0].ring, ideal_generators=gens)
            return quotient_valuation(pres)
        if kind == "restriction":
            base = self.valuations.get(spec.get("base"))
            if base is None:
                raise JobError("%s: base valuation %r is not declared" % (where, spec.get("base")))
            ring = self._ring(spec.get("ring"), where)
            images = [parse_polynomial(base.domain, s) for s in spec.get("images", [])]
            if len(images) != ring.n:
                raise JobError("%s: need one image per variable" % where)
            return restrict(base, images, ring)
        if kind == "tame":
            ring = self._ring(spec.get("ring"), where)
            vecs = [[OrderKey([Fraction(x) for x in key]) for key in vec]
                    for vec in spec.get("vectors", [])]
            return tame(ring, vecs)
        if kind == "tropical":
            gens = self.ideals.get(spec.get("ideal"))
            if gens is None:
                raise JobError("%s: ideal %r is not declared" % (where, spec.get("ideal")))
            H = Subplane([[Fraction(x) for x in row] for row in spec["subplane"]])
            weights = [OrderKey([Fraction(x) for x in row]) for row in spec["weights"]]
            projection = spec.get("projection")
            return tropical_valuation(gens, H, weights,
                                      degree_bound=spec.get("degree_bound", 4),
                                      force=bool(spec.get("force", False)),
                                      projection=projection)
        raise JobError("%s: unknown kind %r" % (where, kind))

    def valuation(self, name, where):
        if name not in self.valuations:
            raise JobError("%s: valuation %r is not declared" % (where, name))
        return self.valuations[name]


def load_job(path, force=False):
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as e:
            raise JobError("%s: %s" % (path, e)) from e
    if force:
        for spec in data.get("valuation", {}).values():
            if spec.get("kind") == "tropical":
                spec["force"] = True
    return JobSpec(data, path)


# ---------------------------------------------------------------------------
# request handlers; each returns (payload dict, status str)

OK = "ok"
INCONCLUSIVE = "inconclusive"


def _domain_elements(nu, degree):
    return list(ring_monomials(nu.domain, degree))


def run_jh(job, req, overrides):
    nu = job.valuation(req.get("nu"), "jh request")
    nu2 = job.valuation(req.get("nu2"), "jh request")
    degree = overrides.get("bound") or req.get("degree", 8)
    table = jh_table(nu, nu2, _domain_elements(nu, degree))
    rows = [{"value": _ser(list(e.value)), "image": _ser(list(e.image))}
            for e in table.entries]
    payload = {"entries": rows, "injective_on_table": table.check_injective()}
    return payload, OK


def run_pmr(job, req, overrides):
    nu = job.valuation(req.get("nu"), "pmr request")
    nu2 = job.valuation(req.get("nu2"), "pmr request")
    degree = overrides.get("bound") or req.get("degree", 8)
    dim = req.get("dim", 2)
    table = jh_table(nu, nu2, _domain_elements(nu, degree))
    rep = pmr_build(table, dim)
    payload = {
        "complete": rep.complete,
        "pieces": [{
            "cone": [list(g) for g in p.generators],
            "images": [list(g) if g else None for g in p.images],
            "residues": {",".join(map(str, k)): list(v) for k, v in sorted(p.residues.items())},
            "affine_matrix": [list(r) if r else None for r in p.affine_matrix()],
        } for p in rep.pieces],
        "mismatches": [list(m) for m in rep.mismatches],
    }
    return payload, OK if rep.complete else INCONCLUSIVE


def run_basis(job, req, overrides):
    nu = job.valuation(req.get("nu"), "basis request")
    gens = []
    for value, pre in req.get("generators", []):
        el = parse_polynomial(nu.domain, pre)
        gens.append((tuple(value), el))
    bound_key = nu.codomain.sort_key(tuple(req["value_bound"]))
    basis = standard_monomial_basis(nu, gens, bound_key)
    payload = {
        "entries": [{"value": _ser(list(v)), "monomial": str(el)}
                    for v, el in basis.entries],
        "gaps": [_ser(list(g)) for g in basis.gaps],
    }
    return payload, OK if not basis.gaps else INCONCLUSIVE


def _build_semigroup(req):
    kind = req.get("semigroup", "matrix_groupoid")
    if kind == "matrix_groupoid":
        return MatrixGroupoid(req.get("k", 3), req.get("variant", "i"))
    if kind == "nil_coxeter":
        from .semigroups import nil_coxeter_w0
        return nil_coxeter_w0(req.get("m", 3))
    if kind == "zn":
        from .orderkeys import DegLexOrder as _DL
        n = req.get("n", 2)
        ideal = [tuple(g) for g in req.get("ideal", [])]
        return IntegerVectorMonoid(n, _DL(n), ideal_generators=ideal or None)
    raise JobError("check request: unsupported semigroup %r" % kind)


def run_check(job, req, overrides):
    target = req.get("target", "injectivity")
    if target == "axioms":
        P = _build_semigroup(req)
        rep = check_axioms(P, req.get("bound", 16))
        payload = {
            "associativity": rep.associativity,
            "order_compat": rep.order_compat,
            "strict_property": rep.strict_property,
            "complete": rep.complete,
        }
        return payload, OK if rep.complete else INCONCLUSIVE
    nu = job.valuation(req.get("nu"), "check request")
    degree = overrides.get("bound") or req.get("degree", 5)
    rep = injectivity_check(nu, ring_monomials(nu.domain, degree))
    payload = {"verdict": rep.verdict, "checked": rep.checked}
    if rep.witness:
        payload["witness"] = [str(w) for w in rep.witness]
    return payload, OK if rep.verdict != "inconclusive" else INCONCLUSIVE


def run_generators(job, req, overrides):
    nu = job.valuation(req.get("nu"), "generators request")
    cands = [parse_polynomial(nu.domain, s) for s in req.get("candidates", [])]
    degree = overrides.get("bound") or req.get("degree", 5)
    res = test_generators(nu, cands, degree)
    payload = {"verdict": res.verdict}
    if res.counterexample is not None:
        payload["counterexample"] = _ser(list(res.counterexample))
    return payload, OK if res.verdict != "inconclusive" else INCONCLUSIVE


def run_tropical(job, req, overrides):
    nu = job.valuation(req.get("nu"), "tropical request")
    degree = overrides.get("bound") or req.get("degree", 6)
    rows = []
    for el in ring_monomials(nu.domain, degree):
        mono = next(iter(el.terms))
        rows.append({"monomial": list(mono), "value": _ser(list(nu.evaluate(el)))})
    cert = getattr(nu, "certificate", None)
    payload = {"values": rows}
    if cert is not None:
        payload["saturation"] = {
            "saturated": cert.saturated,
            "pairs": [_ser([list(u), list(v)]) for (u, v) in cert.primitive_pairs],
            "witnesses": [{"pair": _ser([list(w.pair[0]), list(w.pair[1])]),
                           "normal": _ser(w.normal)} for w in cert.witnesses],
        }
    return payload, OK


def run_feigin(job, req, overrides):
    case = req.get("word")
    cartan = {"A2": CARTAN_A2, "A3": CARTAN_A3}[req.get("cartan", "A2")]
    ii = ReducedWord(tuple(i - 1 for i in case), cartan)
    nletters = len(cartan)
    cell = QuantumCell(ii, nletters)
    rows = []
    for expr in req.get("elements", []):
        el = parse_polynomial(cell.U, expr)
        img = feigin(cell, el, cross_check=True)
        rows.append({"element": expr, "image": str(img)})
    return {"images": rows}, OK


def run_qjh(job, req, overrides):
    case = req.get("case", "A2")
    bound = overrides.get("bound") or req.get("bound", 6)
    checks = []
    if case == "A2":
        data = A2Data()
        words = data.words_by_weight(bound)
        for label, nu, nu2, form in (
                ("K_minus", data.low, data.low_p, k_minus_a2),
                ("K_plus", data.up, data.up_p, k_plus_a2),
                ("K_mixed", data.up, data.low, k_mixed_a2)):
            table = jh_table(nu, nu2, words, grade=data.grade)
            bad = [e.value for e in table.entries if form(e.value) != e.image]
            checks.append({"map": label, "values": len(table.entries),
                           "pass": not bad, "failures": [list(b) for b in bad]})
    elif case == "A3":
        import itertools as it
        data = A3Data()
        targets = list(it.product(range(bound + 1), repeat=4))
        monos = data.monomials_for_targets(targets)
        table = jh_table(data.up, data.low, monos, grade=data.grade)
        bad = [e.value for e in table.entries if k_mixed_a3(e.value) != e.image]
        checks.append({"map": "K_mixed", "values": len(table.entries),
                       "pass": not bad, "failures": [list(b) for b in bad]})
    else:
        raise JobError("qjh request: unknown case %r" % case)
    ok = all(c["pass"] for c in checks)
    return {"case": case, "checks": checks, "all_pass": ok}, OK


def run_puiseux(job, req, overrides):
    ring = job._ring(req.get("ring"), "puiseux request")
    f = parse_polynomial(ring, req["f"])
    terms = req.get("terms", 8)
    cap = req.get("cap", 200)
    branches, irrational = puiseux_expand(f, terms)
    payload = {
        "branches": [{"ramification": b.e, "exact": b.exact,
                      "terms": b.as_strings()} for b in branches],
        "irrational_classes": len(irrational),
    }
    try:
        payload["classes"] = root_classes(f, terms)
    except IrrationalCoefficientError as e:
        payload["classes"] = None
    status = OK
    if len(payload.get("classes") or []) == 1:
        mb = reduce_module_basis(f, iteration_cap=cap, terms=terms)
        if hasattr(mb, "orders"):
            payload["module_orders"] = [str(o) for o in mb.orders]
            payload["module_basis"] = [str(el) for el in mb.elements]
            cv = CurveValuation(f, terms=terms)
            elements = req.get("ord_of", [])
            payload["ord"] = {s: str(cv.ord(parse_polynomial(ring, s)))
                              for s in elements}
        else:
            payload["negative_order_witness"] = str(mb.element)
            status = INCONCLUSIVE
    return payload, status


HANDLERS = {
    "jh": run_jh,
    "pmr": run_pmr,
    "basis": run_basis,
    "check": run_check,
    "generators": run_generators,
    "tropical": run_tropical,
    "feigin": run_feigin,
    "qjh": run_qjh,
    "puiseux": run_puiseux,
}


# ---------------------------------------------------------------------------


def _atomic_write(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_payload(outdir, name, payload, fmt):
    files = []
    jpath = os.path.join(outdir, name + ".json")
    _atomic_write(jpath, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    files.append(os.path.basename(jpath))
    if fmt == "csv" and "entries" in payload:
        cpath = os.path.join(outdir, name + ".csv")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["value", "image"])
        for row in payload["entries"]:
            writer.writerow([json.dumps(row.get("value")),
                             json.dumps(row.get("image", row.get("monomial")))])
        _atomic_write(cpath, buf.getvalue())
        files.append(os.path.basename(cpath))
    return files


def run_job(path, outdir, bound=None, force=False, fmt="json", threads=None):
    job = load_job(path, force=force)
    os.makedirs(outdir, exist_ok=True)
    overrides = {"bound": bound, "force": force}
    results = []

    def one(idx_req):
        idx, req = idx_req
        op = req["op"]
        handler = HANDLERS.get(op)
        if handler is None:
            raise JobError("request %d: unknown op %r" % (idx, op))
        payload, status = handler(job, req, overrides)
        return idx, req, payload, status

    items = list(enumerate(job.requests))
    nthreads = threads or int(os.environ.get("VALFORGE_THREADS", "1") or 1)
    if nthreads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            results = sorted(pool.map(one, items), key=lambda r: r[0])
    else:
        results = [one(it) for it in items]

    manifest = {"job": os.path.basename(path), "requests": []}
    status_all = OK
    for idx, req, payload, status in results:
        name = req.get("out", "%s_%d" % (req["op"], idx))
        files = _write_payload(outdir, name, payload, req.get("format", fmt))
        manifest["requests"].append({
            "op": req["op"],
            "out": name,
            "files": files,
            "status": status,
            "parameters": {k: v for k, v in sorted(req.items())
                           if k not in ("op", "out")},
        })
        if status != OK:
            status_all = INCONCLUSIVE
    if force:
        manifest["forced"] = True
    _atomic_write(os.path.join(outdir, "manifest.json"),
                  json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return 0 if status_all == OK else 2


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="valforge",
        description="exact valuations, adapted bases, and canonical bijections")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run a TOML job file")
    runp.add_argument("job")
    runp.add_argument("--out", default="out", help="output directory")
    runp.add_argument("--bound", type=int, default=None,
                      help="global bound override")
    runp.add_argument("--force", action="store_true",
                      help="skip precondition certificates (flagged in the manifest)")
    runp.add_argument("--format", choices=["json", "csv"], default="json")
    args = parser.parse_args(argv)
    if args.command == "run":
        try:
            return run_job(args.job, args.out, bound=args.bound,
                           force=args.force, fmt=args.format)
        except (JobError, IncompleteReductionError) as e:
            print("error: %s" % e, file=sys.stderr)
            return 1
        except Exception as e:  # computation errors propagate per request
            print("error: %s" % e, file=sys.stderr)
            return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
