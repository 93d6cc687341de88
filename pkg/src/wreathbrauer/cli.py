"""``wreath-brauer``: lemma suites, theorem runs and the group catalog from the command line.

Exit codes: 0 success, 1 lemma or verification failure, 2 precondition
failure, 3 resource cap, 4 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog
from .errors import DomainError, ParseError, WreathBrauerError
from .fusion import (
    build_fusion, check_base_essential, check_non_two_automizers, check_p1_essential,
    check_sylow_automizers, realized_essential_families, saturation_report,
)
from .modrep import MAX_DIM_ENV
from .permgroup import subgroups_up_to_conjugacy
from .verify import verify_marked, verify_via_ik
from .wreathed import (
    build_wreathed, check_centralizers_outside_base, check_classification,
    check_homocyclic_subgroups, check_nonabelian_centers, check_order_and_center,
    check_q8_subgroups,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(WreathBrauerError):
    exit_code = EXIT_USAGE


@dataclass
class ReportDocument:
    command: list[str]
    result: dict
    timings: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        doc = {"schema_version": self.schema_version, "command": self.command,
               "result": self.result, "timings": self.timings}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        doc = json.loads(text)
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ParseError(f"unsupported schema_version {doc.get('schema_version')!r}")
        return cls(doc["command"], doc["result"], doc.get("timings", {}), doc["schema_version"])


# -- lemma suites ------------------------------------------------------------------------

WREATHED_SUITES = {
    "3.1": ("order and center of P", lambda W, reps: check_order_and_center(W)),
    "3.2": ("centralizers outside the base", lambda W, reps: check_centralizers_outside_base(W)),
    "3.4": ("Q_8 subgroups", lambda W, reps: check_q8_subgroups(W)),
    "3.6": ("homocyclic and Klein subgroups", lambda W, reps: check_homocyclic_subgroups(W, reps)),
    "3.8": ("centers of non-abelian subgroups", lambda W, reps: check_nonabelian_centers(W, reps)),
    "classification": ("subgroup classification", lambda W, reps: check_classification(W, reps)),
}

FUSION_SUITES = ("saturation", "2.7", "3.3", "3.7", "3.8")


def _groups_with_n(n: int) -> list[catalog.MarkedGroup]:
    out = []
    for ident in sorted(catalog.BUILTIN):
        mg = catalog.load(ident)
        W = mg.wreathed
        if W is not None and W.n == n:
            out.append(mg)
    return out


def _fusion_suites(mg: catalog.MarkedGroup, wanted) -> list[dict]:
    W = mg.wreathed
    F = build_fusion(mg.group, W.P)
    rows = []
    if wanted("saturation"):
        rep = saturation_report(F)
        rows.append({"lemma": "saturation", "name": "saturation", "passed": rep["saturated"],
                     "checked": rep["classes"], "counterexamples": rep["failures"], "details": {}})
    if wanted("2.7"):
        rows.append({"lemma": "2.7", **check_sylow_automizers(F).to_dict()})
    fams = realized_essential_families(F, W) if (wanted("3.3") or wanted("3.7") or wanted("3.8")) else []
    if wanted("3.3") and "P0" in fams:
        rows.append({"lemma": "3.3", **check_base_essential(F, W).to_dict()})
    if wanted("3.7") and "P1" in fams:
        rows.append({"lemma": "3.7", **check_p1_essential(F, W).to_dict()})
    if wanted("3.8"):
        rows.append({"lemma": "3.8", **check_non_two_automizers(F, W).to_dict()})
    for r in rows:
        r["group"] = mg.id
    return rows


def cmd_lemmas(n: int, lemma_filter: str | None = None) -> tuple[dict, dict]:
    if n not in (2, 3):
        raise UsageError(f"--n must be 2 or 3 (wreathed 2-groups need n >= 2), got {n}")
    known = set(WREATHED_SUITES) | set(FUSION_SUITES)
    if lemma_filter is not None and lemma_filter not in known:
        raise UsageError(f"unknown lemma filter {lemma_filter!r}; choose from {sorted(known)}")

    def wanted(key: str) -> bool:
        return lemma_filter is None or lemma_filter == key

    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    W = build_wreathed(n)
    needs_reps = any(wanted(k) for k in ("3.6", "3.8", "classification"))
    reps = subgroups_up_to_conjugacy(W.P) if needs_reps else None
    timings["subgroups"] = time.perf_counter() - t0
    rows = []
    for key, (title, fn) in WREATHED_SUITES.items():
        if wanted(key):
            t0 = time.perf_counter()
            rows.append({"lemma": key, "title": title, "group": f"wreathP-n{n}", **fn(W, reps).to_dict()})
            timings[f"lemma {key}"] = time.perf_counter() - t0
    if any(wanted(k) for k in FUSION_SUITES):
        for mg in _groups_with_n(n):
            t0 = time.perf_counter()
            rows.extend(_fusion_suites(mg, wanted))
            timings[f"fusion {mg.id}"] = time.perf_counter() - t0
    result = {"n": n, "P_order": W.P.order, "filter": lemma_filter,
              "passed": all(r["passed"] for r in rows), "checks": rows}
    return result, timings


# -- theorem runs ------------------------------------------------------------------------------

def _load(ident: str) -> catalog.MarkedGroup:
    try:
        return catalog.load(ident)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(group: str, group_prime: str, threads: int = 1) -> tuple[dict, dict, int]:
    rep = verify_marked(_load(group), _load(group_prime), threads=threads)
    d = rep.to_dict()
    timings = d.pop("timings")
    code = EXIT_OK if rep.overall and rep.consistent else EXIT_FAIL
    return d, timings, code


def cmd_ik_check(group: str, threads: int = 1) -> tuple[dict, dict]:
    mg = _load(group)
    W = mg.wreathed
    if W is None:
        raise UsageError(f"{group} has no wreathed Sylow 2-subgroup")
    rep = verify_via_ik(mg.group, W.P, W, mg.id, threads=threads)
    d = rep.to_dict()
    timings = d.pop("timings")
    d["criterion_holds_everywhere"] = rep.conclusive
    return d, timings


def cmd_catalog(action: str, arg: str | None = None) -> dict:
    if action == "list":
        entries = [{"id": e.id, "construction": e.construction, "expected_order": e.expected_order,
                    "notes": e.notes, "source": "builtin"} for e in catalog.BUILTIN.values()]
        for ident, cf in sorted(catalog.user_entries().items()):
            entries.append({"id": ident, "construction": "from_generators",
                            "expected_order": cf.expected_order, "notes": cf.notes, "source": "user"})
        return {"entries": sorted(entries, key=lambda e: e["id"])}
    if arg is None:
        raise UsageError(f"catalog {action} needs an argument")
    if action == "describe":
        return _load(arg).describe()
    if action == "add-from-file":
        cf = catalog.add_from_file(arg)
        return {"added": cf.id, "expected_order": cf.expected_order,
                "path": str(catalog.user_catalog_dir() / f"{cf.id}.cat")}
    raise UsageError(f"unknown catalog action {action!r}")


# -- argument parsing ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads for per-subgroup checks")
    common.add_argument("--max-dim", type=int, default=None,
                        help=f"cap on permutation module dimensions (overrides {MAX_DIM_ENV})")
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    p = _Parser(prog="wreath-brauer", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    lem = sub.add_parser("lemmas", parents=[common], help="exhaustive structural lemma checks")
    lem.add_argument("--n", type=int, required=True)
    lem.add_argument("--filter", default=None, help="run a single lemma suite, e.g. 3.4")

    ver = sub.add_parser("verify", parents=[common], help="Brauer indecomposability of Sc(GxG', Delta P)")
    ver.add_argument("--group", required=True)
    ver.add_argument("--group-prime", required=True)

    ik = sub.add_parser("ik-check", parents=[common], help="constructive H_Q criterion for one group")
    ik.add_argument("--group", required=True)

    cat = sub.add_parser("catalog", parents=[common], help="list, describe or extend the group catalog")
    cat.add_argument("action", choices=["list", "describe", "add-from-file"])
    cat.add_argument("arg", nargs="?", default=None)
    return p


def _emit(doc: ReportDocument, out: str | None) -> None:
    text = doc.to_json()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    if args.max_dim is None:
        return _dispatch(args, argv)
    if args.max_dim < 1:
        raise UsageError("--max-dim must be positive")
    previous = os.environ.get(MAX_DIM_ENV)
    os.environ[MAX_DIM_ENV] = str(args.max_dim)
    try:
        return _dispatch(args, argv)
    finally:
        if previous is None:
            del os.environ[MAX_DIM_ENV]
        else:
            os.environ[MAX_DIM_ENV] = previous


def _dispatch(args: argparse.Namespace, argv: list[str]) -> int:
    code = EXIT_OK
    if args.command == "lemmas":
        result, timings = cmd_lemmas(args.n, args.filter)
        code = EXIT_OK if result["passed"] else EXIT_FAIL
    elif args.command == "verify":
        result, timings, code = cmd_verify(args.group, args.group_prime, args.threads)
    elif args.command == "ik-check":
        result, timings = cmd_ik_check(args.group, args.threads)
    else:
        result, timings = cmd_catalog(args.action, args.arg), {}
    doc = ReportDocument(["wreath-brauer", *argv], result, {k: round(v, 4) for k, v in timings.items()})
    _emit(doc, args.out)
    if args.out and args.command in ("verify", "lemmas", "ik-check"):
        status = {EXIT_OK: "ok", EXIT_FAIL: "FAILED"}[code]
        print(f"{args.command}: {status}; report written to {args.out}")
    return code


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return run(argv)
    except WreathBrauerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", EXIT_FAIL)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
