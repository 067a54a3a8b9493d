"""Command line entry point: ``sullivan <command> FILE [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .algebra import Poly
from .cohomology import ChainMap, cohomology_dims
from .models import (
    CdgaPresentation,
    InvalidPresentation,
    build_loop_model,
    build_multiplication_model,
    check_quasi_iso,
    is_pure,
    is_semipure,
)
from .parsing import ParseError, parse_algebra_text
from .report import cochain_json, mono_json, poly_json, presentation_json, verify_report
from .derivations import Derivation
from .reductions import ReductionError
from .shriek import build_good_cocycle, check_goodness, check_pq_vanishing, verify_nontriviality
from .triviality import analyze_dlcop, analyze_dlp, _path_model

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class VerificationFailure(RuntimeError):
    pass


def load_algebra(text: str):
    f = parse_algebra_text(text)
    A = CdgaPresentation(f.table, Derivation(f.table, 1, f.differentials)).validate()
    return A, f


def default_degree(A) -> int:
    return min(2 * sum(A.table.degrees), 24)


def _algebra_summary(A) -> dict:
    return {
        "generators": [[g.name, g.degree] for g in A.table],
        "differential": {A.table[i].name: str(v) for i, v in sorted(A.differential.images.items())},
    }


def _model_witness(A, M, L=None) -> dict:
    cert = {
        "kind": "path-model",
        "algebra": presentation_json(A),
        "path_model": presentation_json(M.model),
        "xprime": {A.table[k].name: poly_json(v) for k, v in sorted(M.xprime.items())},
    }
    if L is not None:
        cert["loop_model"] = presentation_json(L)
    return cert


# -- commands --------------------------------------------------------------------------------

def cmd_check(A, f, N, args) -> dict:
    p, q = len(A.even), len(A.odd)
    return {
        "results": {
            "valid": True,
            "algebra": _algebra_summary(A),
            "pure": is_pure(A),
            "semipure": is_semipure(A),
            "p": p,
            "q": q,
            "decompositions": dict(sorted(f.decompositions.items())),
        },
        "certificates": [],
    }


def cmd_models(A, f, N, args) -> dict:
    M = build_multiplication_model(A)
    L = build_loop_model(A)
    res = {
        "path_differential": {M.table[i].name: str(M.model.dgen(i)) for i in range(len(M.table))},
        "xprime": {A.table[k].name: str(v) for k, v in sorted(M.xprime.items())},
        "loop_differential": {L.table[i].name: str(L.dgen(i)) for i in range(len(L.table))},
        "path_d_squared_zero": True,
        "loop_d_squared_zero": True,
    }
    if N > 0:
        qi = check_quasi_iso(ChainMap(M.model, A, M.m), N)
        res["quasi_iso"] = {str(n): h.iso for n, h in sorted(qi.degrees.items())}
        res["quasi_iso_all"] = qi.iso
    return {"results": res, "certificates": [_model_witness(A, M, L)]}


def _shriek_section(A, N):
    M = _path_model(A)
    G = build_good_cocycle(M, N)
    fc = G.cochain
    good = check_goodness(fc, N)
    pq = check_pq_vanishing(fc)
    values = {str(Poly.monomial(M.table, w)): str(v) for w, v in fc.table_of_values(N).items()}
    res = {
        "degree": fc.degree,
        "values": values,
        "mu_values": {str(Poly.monomial(M.table, w)): str(M.mu(v))
                      for w, v in fc.table_of_values(N).items() if M.mu(v)},
        "goodness": {"condition_a": good.condition_a, "sign": good.sign,
                     "condition_b": good.condition_b,
                     "violation": None if good.violation is None else str(Poly.monomial(M.table, good.violation))},
        "pq_vanishing": {"p": pq.p, "q": pq.q, "vanishes": pq.vanishes,
                         "values": {str(Poly.monomial(M.table, w)): str(v) for w, v in pq.values.items()}},
    }
    cert = {
        "kind": "shriek-cocycle",
        "algebra": presentation_json(A),
        "path_model": presentation_json(M.model),
        "cochain": cochain_json(fc, N + 1),
        "bound": N,
        "goodness": {"sign": good.sign, "bound": N} if good.condition_a else None,
        "pq_vanishing": [{"bar": mono_json(M.table, w)} for w in pq.values],
    }
    if is_semipure(A):
        nt = verify_nontriviality(fc)
        res["nontriviality"] = {"holds": nt.holds, "sign": nt.sign, "evaluation": str(nt.evaluation),
                                "expected": str(nt.expected), "reason": nt.reason}
        cert["nontriviality"] = {"holds": nt.holds, "sign": nt.sign}
    else:
        res["nontriviality"] = {"holds": None, "reason": "skipped: input is not semi-pure"}
    return res, cert


def cmd_shriek(A, f, N, args) -> dict:
    res, cert = _shriek_section(A, N)
    return {"results": res, "certificates": [cert]}


def _triviality_entry(c) -> tuple:
    res = {"verdict": c.verdict, "route": c.route, "reason": c.reason, "bound": c.bound}
    for key in ("mu_delta_nonzero_at", "value", "scanned", "generator"):
        if key in c.witness:
            res[key] = str(c.witness[key]) if isinstance(c.witness[key], Poly) else c.witness[key]
    cert = {"kind": "triviality", "operation": c.operation, "verdict": c.verdict, "route": c.route,
            "bound": c.bound}
    if c.cocycle is not None:
        M = c.cocycle.M
        cert["algebra"] = presentation_json(M.base)
        cert["path_model"] = presentation_json(M.model)
        cert["cochain"] = cochain_json(c.cocycle, c.bound + 1)
        if "stage_cochains" in c.witness:
            cert["stages"] = [cochain_json(st, c.bound + 1) for st in c.witness["stage_cochains"]]
        sec = c.witness.get("section")
        if sec is not None:
            X = sec.complexes
            cert["section_source"] = presentation_json(X.source)
            cert["section_target"] = presentation_json(X.target)
            cert["psi"] = {X.source.table[i].name: poly_json(v) for i, v in sorted(sec.images.items())}
            cert["eps"] = {X.target.table[i].name: poly_json(v) for i, v in sorted(X.eps.images.items())}
            res["corrections"] = {k: str(v) for k, v in sec.corrections.items()}
    return res, cert


def cmd_triviality(A, f, N, args) -> dict:
    route = args.route
    hints = f.decompositions
    out, certs = {}, []
    if route in ("auto", "part1", "part3"):
        c = analyze_dlcop(A, route, N, generator=hints.get("dlcop") if route != "part3" else None,
                          reduce_semipure=args.reduce_semipure)
        r, cert = _triviality_entry(c)
        out["Dlcop"] = r
        certs.append(cert)
    if route in ("auto", "part2"):
        c = analyze_dlp(A, N, generator=hints.get("dlp"), reduce_semipure=args.reduce_semipure)
        r, cert = _triviality_entry(c)
        out["Dlp"] = r
        certs.append(cert)
    return {"results": out, "certificates": certs}


def cmd_cohomology(A, f, N, args) -> dict:
    C = build_loop_model(A) if args.loop else A
    rep = cohomology_dims(C, N)
    return {
        "results": {"complex": "loop model" if args.loop else "algebra",
                    "dims": rep.dims_list(),
                    "representatives": {str(n): [str(r) for r in reps] for n, reps in sorted(rep.representatives.items())}},
        "certificates": [],
    }


COMMANDS = {
    "check": cmd_check,
    "models": cmd_models,
    "shriek": cmd_shriek,
    "triviality": cmd_triviality,
    "cohomology": cmd_cohomology,
}


def run_file(command: str, path: str, opts: dict) -> dict:
    """Run one command on one file; returns the report document."""
    with open(path, "rb") as fh:
        raw = fh.read()
    args = argparse.Namespace(**opts)
    t0 = time.perf_counter()
    A, f = load_algebra(raw.decode("utf-8"))
    N = args.max_degree if args.max_degree is not None else default_degree(A)
    body = COMMANDS[command](A, f, N, args)
    doc = {
        "command": command,
        "input": {"path": os.path.basename(path), "sha256": hashlib.sha256(raw).hexdigest()},
        "max_degree": N,
        "results": body["results"],
        "certificates": body["certificates"],
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    if args.verify:
        failures = verify_report(json.loads(json.dumps(doc)))
        doc["verification"] = {"passed": not failures, "failures": failures}
    return doc


def _batch_worker(item):
    command, path, opts = item
    try:
        return run_file(command, path, opts)
    except (ParseError, InvalidPresentation, ReductionError, ValueError) as e:
        return {"command": command, "input": {"path": os.path.basename(path)}, "error": str(e), "exit": EXIT_INPUT}
    except ArithmeticError as e:
        return {"command": command, "input": {"path": os.path.basename(path)}, "error": str(e), "exit": EXIT_VERIFY}


# -- human-readable output -------------------------------------------------------------------

def render(doc: dict) -> str:
    lines = [f"{doc['command']}  {doc['input']['path']}  (max degree {doc.get('max_degree')})"]
    if "error" in doc:
        lines.append(f"  error: {doc['error']}")
        return "\n".join(lines)

    def walk(obj, indent):
        for k, v in obj.items():
            if isinstance(v, dict):
                if not v:
                    lines.append(f"{' ' * indent}{k}: -")
                    continue
                lines.append(f"{' ' * indent}{k}:")
                walk(v, indent + 2)
            elif isinstance(v, list):
                lines.append(f"{' ' * indent}{k}: {', '.join(str(x) for x in v)}")
            else:
                lines.append(f"{' ' * indent}{k}: {v}")

    walk(doc["results"], 2)
    if "verification" in doc:
        ver = doc["verification"]
        lines.append(f"  verification: {'passed' if ver['passed'] else 'FAILED'}")
        for fail in ver["failures"][:10]:
            lines.append(f"    {fail}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sullivan", description="Models, shriek cocycles and loop (co)product triviality for Sullivan algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, degree_help="degree bound N (default: 2 x sum of generator degrees, at most 24)"):
        p.add_argument("file", nargs="?", help="algebra presentation file")
        p.add_argument("--batch", metavar="DIR", help="run on every *.alg file in DIR in parallel")
        p.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
        p.add_argument("--max-degree", type=int, default=None, help=degree_help)
        p.add_argument("--verify", action="store_true", help="re-check all identities from the embedded witnesses")

    for name in ("check", "models", "shriek"):
        common(sub.add_parser(name))
    p = sub.add_parser("triviality")
    common(p)
    p.add_argument("--route", choices=["auto", "part1", "part2", "part3"], default="auto")
    p.add_argument("--reduce-semipure", action="store_true",
                   help="replace a quadratic non-semi-pure input by its semi-pure reduction first")
    p = sub.add_parser("cohomology")
    common(p)
    p.add_argument("--loop", action="store_true", help="use the free loop model")
    p = sub.add_parser("verify", help="re-verify a saved JSON report")
    p.add_argument("report")
    return ap


def _options(args) -> dict:
    return {
        "max_degree": args.max_degree,
        "verify": args.verify,
        "route": getattr(args, "route", "auto"),
        "reduce_semipure": getattr(args, "reduce_semipure", False),
        "loop": getattr(args, "loop", False),
    }


def _write_json(path, doc):
    payload = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False)
    if path == "-":
        sys.stdout.write(payload + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    if args.command == "verify":
        try:
            with open(args.report, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
        failures = verify_report(doc)
        print("verification passed" if not failures else "verification FAILED")
        for fl in failures:
            print(f"  {fl}")
        return EXIT_OK if not failures else EXIT_VERIFY

    if args.max_degree is not None and args.max_degree < 0:
        ap.error("--max-degree must be non-negative")
    if bool(args.file) == bool(args.batch):
        ap.error("give exactly one of FILE or --batch DIR")
    opts = _options(args)

    if args.batch:
        files = sorted(os.path.join(args.batch, n) for n in os.listdir(args.batch) if n.endswith(".alg"))
        with ProcessPoolExecutor() as pool:
            docs = list(pool.map(_batch_worker, [(args.command, p, opts) for p in files]))
        for d in docs:
            print(render(d))
        if args.json:
            _write_json(args.json, {"batch": docs})
        codes = [d.get("exit", EXIT_OK) for d in docs]
        codes += [EXIT_VERIFY for d in docs if d.get("verification", {}).get("passed") is False]
        return max(codes, default=EXIT_OK)

    try:
        doc = run_file(args.command, args.file, opts)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, InvalidPresentation, ReductionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as e:
        print(f"internal verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    print(render(doc))
    if args.json:
        _write_json(args.json, doc)
    if doc.get("verification", {}).get("passed") is False:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
