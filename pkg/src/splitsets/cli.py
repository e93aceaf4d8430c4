"""Command-line front end.

Exit codes: 0 affirmative / clean, 1 negative verdict, 2 usage or parse
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

from . import criteria
from .factorization import check_factorization
from .numthy import is_prime, primes_between
from .search import Mode, SearchConfig, SearchInvariantError, orbit_pruned_search, search_perfect
from .splitter import (
    CandidateSet,
    InstanceError,
    SplitterInstance,
    check_perfect,
    multiplier_set,
    parse_text,
)
from .verdict import Outcome

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
SCAN_NODE_LIMIT = 10**8

CSV_HEADER = [
    "p", "k1", "k2", "class_mod8", "criterion", "search", "agree",
    "witness_size", "nodes", "elapsed_ms",
]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ScanRecord:
    p: int
    k1: int
    k2: int
    class_mod8: int
    criterion: str
    search: str
    agree: bool | None
    witness_size: int | None
    nodes: int
    elapsed_ms: int
    witness: tuple[int, ...] | None = None

    def csv_row(self) -> list[str]:
        agree = "" if self.agree is None else str(self.agree).lower()
        size = "" if self.witness_size is None else str(self.witness_size)
        return [
            str(self.p), str(self.k1), str(self.k2), str(self.class_mod8),
            self.criterion, self.search, agree, size, str(self.nodes), str(self.elapsed_ms),
        ]

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> ScanRecord:
        agree = {"": None, "true": True, "false": False}[row["agree"]]
        return cls(
            p=int(row["p"]), k1=int(row["k1"]), k2=int(row["k2"]),
            class_mod8=int(row["class_mod8"]), criterion=row["criterion"],
            search=row["search"], agree=agree,
            witness_size=int(row["witness_size"]) if row["witness_size"] else None,
            nodes=int(row["nodes"]), elapsed_ms=int(row["elapsed_ms"]),
        )

    def to_json(self) -> str:
        d = asdict(self)
        d["witness"] = list(self.witness) if self.witness is not None else None
        return json.dumps(d)

    @classmethod
    def from_json(cls, line: str) -> ScanRecord:
        d = json.loads(line)
        names = {f.name for f in fields(cls)}
        if set(d) != names:
            raise ValueError(f"unexpected JSONL fields {sorted(set(d) ^ names)}")
        if d["witness"] is not None:
            d["witness"] = tuple(d["witness"])
        return cls(**d)


def write_records(records: Iterable[ScanRecord], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.csv_row())
        return buf.getvalue()
    return "".join(r.to_json() + "\n" for r in records)


def read_records(text: str, fmt: str) -> list[ScanRecord]:
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [ScanRecord.from_csv_row(row) for row in reader]
    return [ScanRecord.from_json(line) for line in text.splitlines() if line.strip()]


@dataclass(frozen=True)
class ScanTask:
    p: int
    k1: int
    k2: int
    cross_validate: bool
    node_limit: int | None
    orbits: bool
    stable: bool


def scan_prime(task: ScanTask) -> ScanRecord:
    """One row of a scan. Module-level so worker processes can pickle it."""
    p, k1, k2 = task.p, task.k1, task.k2
    start = time.perf_counter()
    b13 = (k1, k2) == (1, 3)
    crit: Outcome | None = None
    witness: CandidateSet | None = None
    if b13:
        if p % 4 == 1:
            crit = criteria.criterion_b13(p).outcome
            if crit is Outcome.EXISTS and not task.cross_validate:
                witness = criteria.construct_b13(p)
        else:
            crit = criteria.congruence_check(p, k1, k2).outcome
    search_id = "skipped"
    nodes = 0
    if task.cross_validate or not b13:
        cfg = SearchConfig(Mode.FIRST_WITNESS, node_limit=task.node_limit)
        if task.orbits and b13 and p % 4 == 1:
            res = orbit_pruned_search(p, cfg)
        else:
            res = search_perfect(SplitterInstance(p, k1, k2), cfg)
        search_id = res.outcome.value
        nodes = res.nodes
        witness = res.witness
    agree = None
    if crit is not None and search_id != "skipped":
        s = Outcome(search_id)
        if crit.decided and s.decided:
            agree = crit is s
    elapsed = 0 if task.stable else int((time.perf_counter() - start) * 1000)
    return ScanRecord(
        p=p, k1=k1, k2=k2, class_mod8=p % 8,
        criterion=crit.value if crit is not None else "n/a",
        search=search_id, agree=agree,
        witness_size=len(witness) if witness is not None else None,
        nodes=nodes, elapsed_ms=elapsed,
        witness=witness.elements if witness is not None else None,
    )


def run_scan(
    k1: int,
    k2: int,
    lo: int,
    hi: int,
    cross_validate: bool = False,
    jobs: int = 1,
    node_limit: int | None = SCAN_NODE_LIMIT,
    orbits: bool = False,
    stable: bool = False,
) -> list[ScanRecord]:
    """Scan rows for every prime p in [lo, hi] with p > k1 + k2, ordered by p."""
    SplitterInstance(k1 + k2 + 1, k1, k2)  # validates k1, k2
    primes = [p for p in primes_between(max(lo, k1 + k2 + 1), hi)]
    tasks = [ScanTask(p, k1, k2, cross_validate, node_limit, orbits, stable) for p in primes]
    if jobs <= 1 or len(tasks) < 2:
        return [scan_prime(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(scan_prime, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))


def _read_arg_or_file(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    path = Path(value)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    return value


def _parse_candidate(text: str, inst: SplitterInstance) -> CandidateSet:
    text = text.strip()
    try:
        if ":" in text:
            file_inst, B = parse_text(text)
            if file_inst != inst:
                raise UsageError(f"set is for {file_inst}, not {inst}")
            return B
        return CandidateSet.from_json(text, inst.q)
    except (ValueError, InstanceError) as exc:
        raise UsageError(f"cannot parse candidate set: {exc}") from exc


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            v = int(text)
            return v, v
        return int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"bad prime range {text!r}; expected LO..HI") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    inst = SplitterInstance(args.q, args.k1, args.k2)
    multiplier_set(inst)  # rejects colliding multipliers
    B = _parse_candidate(_read_arg_or_file(args.set), inst)
    res = check_perfect(inst, B)
    if res:
        print(f"perfect: |B| = {len(B)}, {len(B)} * {inst.k} = {inst.q - 1}")
        return EXIT_OK
    print(res.reason)
    if res.witness is not None:
        print(f"certificate: {res.witness}")
    return EXIT_NEGATIVE


def cmd_scan(args) -> int:
    lo, hi = _parse_range(args.range)
    records = run_scan(
        args.k1, args.k2, lo, hi,
        cross_validate=args.cross_validate, jobs=args.jobs,
        node_limit=args.node_limit, orbits=args.orbits, stable=args.stable,
    )
    _emit(write_records(records, args.format), args.out)
    if any(r.agree is False for r in records):
        bad = [r.p for r in records if r.agree is False]
        print(f"criterion and search disagree at p = {bad}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_construct(args) -> int:
    if (args.k1, args.k2) != (1, 3):
        raise UsageError("constructions are available for k1=1, k2=3 only")
    p = args.p
    if not is_prime(p) or p <= 3 or p % 4 != 1:
        print(f"no perfect B[-1,3]({p}) set: p must be a prime = 1 mod 4")
        return EXIT_NEGATIVE
    try:
        B = criteria.construct_b13(p)
    except criteria.CriterionError as exc:
        print(exc)
        return EXIT_NEGATIVE
    if not check_perfect(SplitterInstance(p, 1, 3), B):
        raise SearchInvariantError("constructed set failed re-verification")
    _emit(B.to_json() + "\n", args.out)
    if args.out:
        print(f"wrote {len(B)} elements to {args.out}")
    return EXIT_OK


def cmd_search(args) -> int:
    inst = SplitterInstance(args.q, args.k1, args.k2)
    multiplier_set(inst)
    mode = Mode.ENUMERATE_ALL if args.all else Mode.FIRST_WITNESS
    res = search_perfect(inst, SearchConfig(mode, node_limit=args.node_limit))
    report = {
        "q": inst.q, "k1": inst.k1, "k2": inst.k2,
        "outcome": res.outcome.value, "nodes": res.nodes,
        "count": res.count if args.all else None,
        "witnesses": [list(w.elements) for w in res.witnesses],
    }
    print(json.dumps(report))
    if res.outcome is Outcome.EXISTS:
        return EXIT_OK
    return EXIT_NEGATIVE


def cmd_criteria(args) -> int:
    p = args.p
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    k1, k2 = args.k1, args.k2
    out: dict = {"p": p, "k1": k1, "k2": k2, "verdicts": []}
    out["verdicts"].append(criteria.congruence_check(p, k1, k2).to_dict())
    if (k1, k2) == (1, 3) and p > 3 and p % 4 == 1:
        out["verdicts"].append(criteria.criterion_b13(p).to_dict())
        if p % 8 == 5:
            out["quadratic_form"] = criteria.quadratic_form_check(p)
    print(json.dumps(out, indent=2))
    decided = [v for v in out["verdicts"] if v["outcome"] != "unknown"]
    if decided and decided[-1]["outcome"] == "not_exists":
        return EXIT_NEGATIVE
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"expected a JSON array of integers: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data) or not data:
        raise UsageError("expected a non-empty JSON array of integers")
    return data


def cmd_factorize(args) -> int:
    A = _int_list(_read_arg_or_file(args.A))
    B = _int_list(_read_arg_or_file(args.B))
    if args.n < 1:
        raise UsageError("n must be positive")
    res = check_factorization(A, B, args.n)
    if res:
        print(f"Z_{args.n} = A + B is a factorization")
        return EXIT_OK
    print(f"not a factorization: {res.reason}")
    return EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check that a set is a perfect splitter set")
    p.add_argument("q", type=int)
    p.add_argument("k1", type=int)
    p.add_argument("k2", type=int)
    p.add_argument("set", help="file, '-' for stdin, or an inline JSON array / 'q k1 k2 : b,...' line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="tabulate verdicts over a prime range")
    p.add_argument("k1", type=int)
    p.add_argument("k2", type=int)
    p.add_argument("range", help="inclusive prime range LO..HI")
    p.add_argument("--cross-validate", action="store_true", help="also run the search")
    p.add_argument("--orbits", action="store_true", help="cross-validate with the orbit-pruned search")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--node-limit", type=int, default=SCAN_NODE_LIMIT)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--stable", action="store_true", help="write elapsed_ms as 0")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("construct", help="build a perfect B[-1,3](p) set")
    p.add_argument("p", type=int)
    p.add_argument("--k1", type=int, default=1)
    p.add_argument("--k2", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exhaustive search for perfect sets")
    p.add_argument("q", type=int)
    p.add_argument("k1", type=int)
    p.add_argument("k2", type=int)
    p.add_argument("--all", action="store_true", help="enumerate every perfect set")
    p.add_argument("--node-limit", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("criteria", help="dump the verdicts that apply to one prime")
    p.add_argument("p", type=int)
    p.add_argument("--k1", type=int, default=1)
    p.add_argument("--k2", type=int, default=3)
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("factorize", help="check Z_n = A + B for two JSON arrays")
    p.add_argument("n", type=int)
    p.add_argument("A")
    p.add_argument("B")
    p.set_defaults(func=cmd_factorize)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchInvariantError, AssertionError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
