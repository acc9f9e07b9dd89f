"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import catalog, classify, spin
from .errors import (BoundTooSmall, FixedPointFermion, IndicatorNotPlusMinusOne, MissingTwists, NotSuperModular,
                     OutOfRange, ParseError, SupermodularError, UnsupportedRank)
from .fusion_ring import find_isomorphisms, validate
from .io import CategoryFile, dumps, make_report, read_category, safe_filename, write_category
from .premodular import muger_center, verify_premodular
from .quotient import build_quotient, fs_indicator, verify_quotient
from .report import ValidationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positivity_required(cf: CategoryFile) -> bool:
    # Galois conjugates (t != 1) are emitted with metadata t and may have negative dimensions
    return cf.metadata.get("t", 1) == 1


def verify_file(cf: CategoryFile) -> tuple[ValidationReport, dict]:
    """Every check applicable to the fields present; missing data yields skipped checks."""
    rep = ValidationReport(f"category file {cf.name}")
    extra: dict = {}
    data = cf.data()
    if data is None:
        rep.extend(validate(cf.ring), "ring: ")
        for name in ("premodular data", "Muger center", "fermionic quotient"):
            rep.skip(name, "skipped: missing data (no S-matrix)")
        return rep, extra
    rep.extend(verify_premodular(data, _positivity_required(cf)))
    if not rep.ok:
        return rep, extra
    if cf.dimensions is not None:
        bad = next((i for i, d in enumerate(cf.dimensions) if d != data.dim(i)), None)
        rep.add("stated dimensions equal S~ row 0", bad is None, bad)
    if data.twists is None:
        rep.skip("Muger center", "skipped: missing data (no twists)")
        rep.skip("fermionic quotient", "skipped: missing data (no twists)")
        return rep, extra
    center = muger_center(data)
    extra["muger_center"] = center.to_json()
    if center.verdict != "super-modular" or data.rank == 2:
        rep.skip("fermionic quotient", f"Muger center verdict is {center.verdict}")
        return rep, extra
    try:
        q = build_quotient(data, center.fermion)
    except (NotSuperModular, FixedPointFermion) as exc:
        rep.add("fermionic quotient", False, None, str(exc))
        return rep, extra
    rep.extend(verify_quotient(q), "quotient ")
    nus = {}
    for pos, a in enumerate(q.partition.pi0):
        if data.ring.dual[a] != a:
            continue
        try:
            nus[data.labels[a]] = int(fs_indicator(data, q.partition, a).as_fraction())
        except IndicatorNotPlusMinusOne as exc:
            rep.add(f"indicator of {data.labels[a]} is +-1", False, a, str(exc))
    extra["fs_indicators"] = nus
    extra["quotient_labels"] = list(q.labels)
    return rep, extra


def _emit(report: dict, out_dir: str | None, filename: str) -> None:
    text = dumps(report)
    sys.stdout.write(text)
    if out_dir:
        p = Path(out_dir)
        p.mkdir(parents=True, exist_ok=True)
        (p / filename).write_text(text)


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    cf = read_category(args.file)
    rep, extra = verify_file(cf)
    certificates = {c.name: c.to_json() for c in rep.checks if c.status == "fail"}
    report = make_report(["verify", args.file], {"ok": rep.ok, "checks": rep.to_json()["checks"], **extra},
                         certificates, [], time.perf_counter() - t0)
    _emit(report, None, "")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_quotient(args) -> int:
    t0 = time.perf_counter()
    cf = read_category(args.file)
    data = cf.data()
    if data is None or data.twists is None:
        raise ParseError("the quotient needs S-matrix and twists")
    q = build_quotient(data)
    rep = verify_quotient(q)
    nus = {}
    for a in q.partition.pi0:
        if data.ring.dual[a] == a:
            nus[data.labels[a]] = int(fs_indicator(data, q.partition, a).as_fraction())
    verdicts = {
        "ok": rep.ok,
        "pi0": list(q.labels),
        "fermion": data.labels[q.partition.fermion],
        "nhat": q.nhat.tolist(),
        "shat": [[x.to_json() for x in row] for row in q.shat],
        "checks": rep.to_json()["checks"],
        "fs_indicators": nus,
    }
    certificates = {c.name: c.to_json() for c in rep.checks if c.status == "fail"}
    _emit(make_report(["quotient", args.file], verdicts, certificates, [], time.perf_counter() - t0), None, "")
    return EXIT_OK if rep.ok else EXIT_FAIL


def run_classify(rank: int, bound: int) -> tuple[dict, list]:
    """The report body and the records for one classify invocation."""
    records = classify.classify_supermodular(rank, bound)
    facts = sorted({f for r in records for f in r.external_facts})
    non_split = [r for r in records if not r.split]
    verdicts: dict = {
        "rank": rank,
        "bound": bound,
        "records": [r.to_json() for r in records],
        "tally": {"split": len(records) - len(non_split), "non_split": len(non_split),
                  "non_split_names": [r.name for r in non_split]},
    }
    certificates: dict = {}
    for r in records:
        if not r.split and r.catalog_match is not None:
            labels = r.representative.labels
            autos = find_isomorphisms(r.representative, r.representative)
            # each automorphism as the image of every label
            verdicts.setdefault("automorphisms", {})[r.name] = [
                {labels[i]: labels[a[i]] for i in range(len(a))} for a in autos]
    if rank == 6:
        cands = classify.enumerate_selfdual_rank6_quotients(bound)
        verdicts["selfdual_quotient_families"] = [c.to_json() for c in cands]
        certificates["alpha_feasibility"] = [classify.alpha_feasibility(a).to_json() for a in range(0, 11)]
    if rank in (4, 6):
        cumulative = []
        for rk in (2, 4, 6):
            if rk > rank:
                break
            recs = records if rk == rank else classify.classify_supermodular(rk, bound)
            cumulative += [{"rank": rk, "name": x.name} for x in recs if x.split]
        verdicts["cumulative_split_classes"] = cumulative
        scan = classify.conjecture_scan(records, catalog.rank_le3_modular_entries())
        verdicts["conjecture_scan"] = {
            "entries": [s.to_json() for s in scan],
            "non_split_matches": sum(len(s.matches) for s in scan if not s.split),
            "note": "empirical support only, not a proof",
        }
    if rank == 2:
        verdicts["notes"] = records[0].notes
    return {"verdicts": verdicts, "certificates": certificates, "external_facts": facts}, records


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    body, records = run_classify(args.rank, args.bound)
    if args.out:
        for rec in records:
            meta = {"split": rec.split, "provenance": rec.provenance, "class": rec.name}
            write_category(CategoryFile.from_ring(rec.representative, meta),
                           Path(args.out) / f"rank{rec.rank}_{safe_filename(rec.name)}.json")
    cmd = ["classify", "--rank", str(args.rank), "--bound", str(args.bound)]
    report = make_report(cmd, body["verdicts"], body["certificates"], body["external_facts"],
                         time.perf_counter() - t0)
    _emit(report, args.out, f"classify_rank{args.rank}_report.json")
    return EXIT_OK


def spin_table(max_rank: int) -> dict:
    if max_rank > spin.MAX_TOTAL:
        spin.rank_profiles(max_rank)  # raises OutOfRange with the informational note
    rows = []
    for total in range(2, max_rank + 1):
        rows.append({
            "total": total,
            "profiles": [p.to_json() for p in spin.rank_profiles(total)],
            "notes": spin.profile_notes(total),
            "descriptors": [d.to_json() for d in spin.classify_spin(total)] if total >= 3 else [],
        })
    return {"max_rank": max_rank, "table": rows}


def cmd_spin_profiles(args) -> int:
    t0 = time.perf_counter()
    verdicts = spin_table(args.max_rank)
    facts = sorted({f for row in verdicts["table"] for d in row["descriptors"] for f in d["external_facts"]})
    _emit(make_report(["spin-profiles", "--max-rank", str(args.max_rank)], verdicts, {}, facts,
                      time.perf_counter() - t0), None, "")
    return EXIT_OK


def catalog_files() -> list[tuple[str, CategoryFile]]:
    out = []
    for e in catalog.all_entries():
        meta = {k: v for k, v in e.provenance.items()}
        out.append((safe_filename(e.name), CategoryFile.from_data(e.data, meta)))
    for ring in catalog.fusion_only_entries():
        out.append((safe_filename(ring.name), CategoryFile.from_ring(ring, {"family": "fusion rules only"})))
    return out


def cmd_catalog(args) -> int:
    if args.action != "emit":
        raise ParseError(f"unknown catalog action {args.action!r}")
    t0 = time.perf_counter()
    written, failures = [], {}
    for stem, cf in catalog_files():
        rep, _ = verify_file(cf)
        if not rep.ok:
            failures[stem] = rep.to_json()
            continue
        path = write_category(cf, Path(args.out) / f"{stem}.json")
        written.append(path.name)
    report = make_report(["catalog", "emit"], {"written": written, "ok": not failures}, failures, [],
                         time.perf_counter() - t0)
    _emit(report, None, "")
    return EXIT_OK if not failures else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supermodular",
                                description="Exact verification and classification of super-modular fusion data.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a category file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="classify super-modular fusion rings of rank 2, 4 or 6")
    c.add_argument("--rank", type=int, required=True)
    c.add_argument("--bound", type=int, default=classify.DEFAULT_BOUND)
    c.add_argument("--out", default=None, help="directory for category files and the report")
    c.set_defaults(func=cmd_classify)

    q = sub.add_parser("quotient", help="fermionic quotient of a super-modular category file")
    q.add_argument("file")
    q.set_defaults(func=cmd_quotient)

    s = sub.add_parser("spin-profiles", help="sector profiles of spin modular categories")
    s.add_argument("--max-rank", type=int, required=True)
    s.set_defaults(func=cmd_spin_profiles)

    k = sub.add_parser("catalog", help="emit the reference catalog")
    k.add_argument("action", choices=["emit"])
    k.add_argument("--out", required=True)
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, UnsupportedRank, OutOfRange, MissingTwists, BoundTooSmall) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SupermodularError as exc:
        sys.stderr.write(f"verification error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
