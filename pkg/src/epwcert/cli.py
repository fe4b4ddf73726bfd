"""Command line: list, run and dump."""
from __future__ import annotations

import argparse
import json
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .registry import REGISTRY, list_checks, lookup
from .report import ERROR, FAIL, PASS, CheckReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _run_one(check_id: str) -> CheckReport:
    try:
        return lookup(check_id).run()
    except Exception as exc:  # reported, never raised
        tb = traceback.format_exc().strip().splitlines()[-6:]
        return CheckReport(check_id, ERROR, 0, {"error": repr(exc), "traceback": tb})


def run_suite(ids: list[str], threads: int = 1, progress=None) -> list[CheckReport]:
    """Run the checks; results come back in registry order whatever the completion order."""
    progress = progress or (lambda msg: None)
    total = len(ids)
    if threads <= 1:
        out = []
        for k, cid in enumerate(ids, 1):
            progress(f"[{k}/{total}] {cid} ...")
            rep = _run_one(cid)
            progress(f"[{k}/{total}] {cid} {rep.status} ({rep.millis} ms)")
            out.append(rep)
        return out
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {cid: pool.submit(_run_one, cid) for cid in ids}
        out = []
        for k, cid in enumerate(ids, 1):
            rep = futures[cid].result()
            progress(f"[{k}/{total}] {cid} {rep.status} ({rep.millis} ms)")
            out.append(rep)
        return out


def summarize(reports: list[CheckReport]) -> dict:
    return {s: sum(1 for r in reports if r.status == s) for s in (PASS, FAIL, ERROR)}


def json_report(reports: list[CheckReport], started: str) -> dict:
    return {"version": __version__, "started": started,
            "checks": [r.to_json() for r in reports], "summary": summarize(reports)}


def text_report(reports: list[CheckReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.status.upper():5} {r.id} ({r.millis} ms)")
        if r.status != PASS:
            for msg in r.details.get("failures", []) or [r.details.get("error", "")]:
                lines.append(f"      {msg}")
    s = summarize(reports)
    lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[ERROR]} errors")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- dumps

def _dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False) + "\n"


def _poly_sections(named) -> str:
    from .multipoly import dumps
    return "".join(f"# {name}\n{dumps(p)}" for name, p in named)


def dump_text(name: str) -> str:
    if name in ("f6", "f6dual"):
        from .epw import canonical_sextic
        from .multipoly import dumps
        s = canonical_sextic()
        return dumps(s.f6 if name == "f6" else s.f6_dual)
    if name == "igusa-p":
        from .igusa import canonical_presentation
        return _poly_sections((f"p{k}", p) for k, p in enumerate(canonical_presentation().generators))
    if name == "igusa-relation":
        from .igusa import canonical_presentation
        pres = canonical_presentation()
        return _poly_sections([("Ig_P", pres.relation), ("Ig_y", pres.ig_y)])
    if name == "hermitian-H":
        from .abelian import H1
        from .exact import format_scalar
        h = H1.to_dense()
        return _dump_json([[format_scalar(x) for x in h.row(i)] for i in range(h.rows)])
    if name == "uh-orders":
        from .abelian import dump_orders
        return _dump_json(dump_orders())
    if name == "incidence-table":
        from .abelian import divisor_incidence
        inc = divisor_incidence()
        return _dump_json({"points": ["".join(map(str, p)) for p in inc.points],
                           "ten_set": sorted("".join(map(str, p)) for p in inc.ten_set),
                           "table": [[int(x) for x in row] for row in inc.table]})
    if name == "configurations":
        from .combinatorics import configurations_dump
        return _dump_json(configurations_dump())
    if name == "petersen":
        from .combinatorics import _fmt_partition, petersen_labeling
        lab, _ = petersen_labeling()
        return _dump_json({"vertices": {v: _fmt_partition(p) for v, p in lab.vertex_partitions.items()},
                           "edges": [[u, w, "".join(map(str, sorted(lab.edge_labels[(u, w)])))]
                                     for u, w in lab.edges],
                           "classes": {m: [[u, w] for u, w in es] for m, es in sorted(lab.classes.items())}})
    if name == "recovered-sextics":
        from .combinatorics import recover_sextic
        from .exact import format_scalar
        return _dump_json({f"family{f}": [[format_scalar(c) for c in v] for v in recover_sextic(f, "-1/2")]
                           for f in (1, 2)})
    if name in ("minor-det", "minor-quotient"):
        from .epw import canonical_sextic, minor_determinant
        from .multipoly import divide_by_monic_in_variable, dumps
        det = minor_determinant()
        if name == "minor-det":
            return dumps(det)
        quotient, _ = divide_by_monic_in_variable(det, canonical_sextic().f6, 0)
        return dumps(quotient)
    raise KeyError(name)


DUMP_NAMES = ("f6", "f6dual", "igusa-p", "igusa-relation", "hermitian-H", "uh-orders", "incidence-table",
              "configurations", "petersen", "recovered-sextics", "minor-det", "minor-quotient")


# ---------------------------------------------------------------- entry point

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epwcert", description="Exact verification checks for a symmetric EPW sextic.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list registered checks")
    run = sub.add_parser("run", help="run checks")
    run.add_argument("--only", help="comma-separated check ids")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--out", help="write the report here instead of stdout")
    run.add_argument("--threads", type=int, default=1, help="worker processes")
    run.add_argument("--figures", metavar="DIR", help="also render PNG figures into DIR")
    dump = sub.add_parser("dump", help="write a canonical artifact")
    dump.add_argument("name", choices=DUMP_NAMES)
    dump.add_argument("--out", required=True)
    dump.add_argument("--figures", metavar="DIR", help="also render PNG figures into DIR")
    return p


def _figures(directory) -> None:
    from .figures import render_all
    for path in render_all(directory):
        print(f"wrote {path}", file=sys.stderr)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for cid, desc, topic in list_checks():
            print(f"{cid:36} {desc} [{topic}]")
        return EXIT_OK
    if args.command == "dump":
        try:
            Path(args.out).write_text(dump_text(args.name), encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if args.figures:
            _figures(args.figures)
        return EXIT_OK
    # run
    known = [e.id for e in REGISTRY]
    if args.only:
        wanted = [s.strip() for s in args.only.split(",") if s.strip()]
        unknown = [w for w in wanted if w not in known]
        if unknown:
            print(f"error: unknown check id(s): {', '.join(unknown)}", file=sys.stderr)
            return EXIT_USAGE
        ids = [k for k in known if k in wanted]
    else:
        ids = known
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    reports = run_suite(ids, args.threads, progress=lambda m: print(m, file=sys.stderr, flush=True))
    text = (json.dumps(json_report(reports, started), indent=2) + "\n" if args.format == "json"
            else text_report(reports))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.figures:
        _figures(args.figures)
    return EXIT_OK if all(r.status == PASS for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
