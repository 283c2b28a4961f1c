"""Command-line front end: ``glmy {dim,basis,verify,gen,bench}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import oracle
from .chains import Chain, is_invariant
from .digraph import Digraph
from .errors import BudgetExceeded, GlmyError, SchemaError
from .fields import GF, Field, parse_field
from .generators import RandomSpec, random_digraph, trapezohedron
from .io import (
    BasisDocument,
    basis_document,
    format_edge_list,
    generator_chain,
    graph_digest,
    parse_edge_list,
    read_basis,
    write_basis,
)
from .omega3 import basis_size, omega3_basis, pair_dimension_table

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

BENCH_HEADER = ("n", "p", "structural_ms", "oracle_ms", "dim")
BENCH_BUDGET = 50_000


class InputError(GlmyError):
    """Unreadable file, bad flag value, or a basis file for another graph."""


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write_bytes(path: str | None, data: bytes):
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _parse_pairs(g: Digraph, specs: Sequence[str] | None):
    if not specs:
        return None
    out = []
    for spec in specs:
        parts = spec.split(",")
        if len(parts) != 2:
            raise InputError(f"--pairs expects 'a,b', got {spec!r}")
        out.append((g.vid(parts[0]), g.vid(parts[1])))
    return out


def _field(spec: str) -> Field:
    try:
        return parse_field(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# verification


@dataclass
class PairCheck:
    a: str
    b: str
    structural: int
    oracle: int
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems and self.structural == self.oracle


@dataclass
class VerifyReport:
    pairs: list[PairCheck]
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems and all(p.ok for p in self.pairs)

    @property
    def structural_total(self) -> int:
        return sum(p.structural for p in self.pairs)

    @property
    def oracle_total(self) -> int:
        return sum(p.oracle for p in self.pairs)

    def lines(self) -> list[str]:
        out = list(self.problems)
        for p in self.pairs:
            if p.structural != p.oracle:
                out.append(f"pair ({p.a},{p.b}): structural dim {p.structural} != oracle dim {p.oracle}")
            out.extend(f"pair ({p.a},{p.b}): {msg}" for msg in p.problems)
        return out


def _check_generators(g: Digraph, a: int, b: int, chains: list[Chain], fld: Field) -> list[str]:
    problems = []
    for k, c in enumerate(chains):
        if not c:
            problems.append(f"generator {k} is zero")
            continue
        if any(p[0] != a or p[-1] != b for p in c.paths()):
            problems.append(f"generator {k} has terms outside the pair")
        if not is_invariant(c, g):
            problems.append(f"generator {k} is not invariant")
    if chains:
        r = oracle.rank_of([c.with_field(fld) for c in chains], fld)
        if r != len(chains):
            problems.append(f"generators have rank {r}, expected {len(chains)}")
    return problems


def verify(
    g: Digraph,
    doc: BasisDocument | None = None,
    *,
    fld: Field = GF,
    budget: int | None = oracle.DEFAULT_BUDGET,
    jobs: int = 1,
) -> VerifyReport:
    """Compare a basis (computed, or replayed from ``doc``) with the oracle.

    Per pair: dimensions agree, every generator is an invariant cluster on
    that pair, and the generators are independent.
    """
    truth = oracle.omega_pair_dims(g, 3, field=fld, budget=budget)
    claimed: dict[tuple[int, int], list[Chain]] = {}
    problems = []
    if doc is None:
        basis = omega3_basis(g, jobs=jobs)
        for key, pb in basis.entries.items():
            claimed[key] = [el.chain for el in pb.elements]
    else:
        if doc.graph.digest != graph_digest(g):
            problems.append("basis document was computed for a different graph (digest mismatch)")
        for rec in doc.pairs:
            try:
                key = (g.vid(rec.a), g.vid(rec.b))
                chains = [generator_chain(g, gen) for gen in rec.generators]
            except KeyError:
                problems.append(f"pair ({rec.a},{rec.b}): refers to a vertex not in the graph")
                continue
            if rec.dim != len(rec.generators):
                problems.append(f"pair ({rec.a},{rec.b}): dim {rec.dim} but {len(rec.generators)} generators")
            claimed.setdefault(key, []).extend(chains)
    checks = []
    for a, b in sorted(set(truth) | set(claimed)):
        chains = claimed.get((a, b), [])
        chk = PairCheck(g.labels[a], g.labels[b], len(chains), truth.get((a, b), 0))
        chk.problems = _check_generators(g, a, b, chains, fld)
        checks.append(chk)
    return VerifyReport(checks, problems)


# ---------------------------------------------------------------------------
# commands


def cmd_dim(args) -> int:
    g = parse_edge_list(_read_bytes(args.input))
    pairs = _parse_pairs(g, args.pairs)
    table = pair_dimension_table(g)
    if pairs is None:
        pairs = [(a, b) for a in range(g.n) for b in range(g.n)]
    rows = [(a, b, int(table[a, b])) for a, b in sorted(set(pairs)) if table[a, b]]
    out = [f"dim Omega0 = {g.n}", f"dim Omega1 = {g.m}", f"dim Omega3 = {sum(r[2] for r in rows)}"]
    if rows:
        out.append("a\tb\tdim")
        out += [f"{g.labels[a]}\t{g.labels[b]}\t{d}" for a, b, d in rows]
    _write_bytes(None, ("\n".join(out) + "\n").encode("utf-8"))
    return EXIT_OK


def cmd_basis(args) -> int:
    fld = _field(args.field)
    g = parse_edge_list(_read_bytes(args.input))
    basis = omega3_basis(g, pairs=_parse_pairs(g, args.pairs), jobs=args.jobs)
    _write_bytes(args.output, write_basis(basis_document(basis, fld.name)))
    return EXIT_OK


def cmd_verify(args) -> int:
    fld = _field(args.field)
    g = parse_edge_list(_read_bytes(args.input))
    doc = read_basis(_read_bytes(args.basis)) if args.basis else None
    report = verify(g, doc, fld=fld, budget=args.budget, jobs=args.jobs)
    lines = report.lines()
    status = "PASS" if report.ok else "FAIL"
    lines.append(
        f"{status}: {len(report.pairs)} pairs, structural dim {report.structural_total}, "
        f"oracle dim {report.oracle_total}"
    )
    _write_bytes(None, ("\n".join(lines) + "\n").encode("utf-8"))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_gen(args) -> int:
    if args.kind == "trapezohedron":
        g = trapezohedron(args.m)
    else:
        g = random_digraph(RandomSpec(args.n, args.p, args.seed))
    _write_bytes(args.output, format_edge_list(g).encode("utf-8"))
    return EXIT_OK


def _bench_row(n: int, p: float, seed: int, budget: int) -> tuple:
    g = random_digraph(RandomSpec(n, p, seed))
    t0 = time.perf_counter()
    dim, _ = basis_size(g)
    structural_ms = (time.perf_counter() - t0) * 1e3
    if oracle.count_allowed_paths(g, 3) > budget:
        oracle_ms = "skipped"
    else:
        t0 = time.perf_counter()
        oracle.omega_dim(g, 3, budget=None)
        oracle_ms = f"{(time.perf_counter() - t0) * 1e3:.3f}"
    return n, p, f"{structural_ms:.3f}", oracle_ms, dim


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise InputError(f"--sizes expects comma-separated integers, got {args.sizes!r}") from None
    # compile the kernels before anything is timed
    basis_size(random_digraph(RandomSpec(6, 0.5, 0)))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for n in sizes:
        writer.writerow(_bench_row(n, args.density, args.seed, args.budget))
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glmy", description="Invariant 3-paths of digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="edge-list file, or - for stdin")
        return sp

    sp = graph_cmd("dim", "print dimensions and the per-pair table")
    sp.add_argument("--pairs", action="append", metavar="A,B", help="restrict to one ordered pair (repeatable)")
    sp.set_defaults(func=cmd_dim)

    sp = graph_cmd("basis", "write a basis document as JSON")
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--field", default=GF.name, help="gf:<prime> or rational (default %(default)s)")
    sp.add_argument("--pairs", action="append", metavar="A,B")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_basis)

    sp = graph_cmd("verify", "check the structural basis against the oracle")
    sp.add_argument("--basis", default=None, help="replay this basis document instead of recomputing")
    sp.add_argument("--field", default=GF.name)
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET, help="max allowed 3-paths for the oracle")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="emit a fixture edge list")
    gsub = sp.add_subparsers(dest="kind", required=True)
    tp = gsub.add_parser("trapezohedron")
    tp.add_argument("-m", type=int, required=True)
    tp.add_argument("-o", "--output", default=None)
    rp = gsub.add_parser("random")
    rp.add_argument("-n", type=int, required=True)
    rp.add_argument("-p", type=float, required=True)
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="time structural vs oracle, CSV on stdout")
    sp.add_argument("--sizes", default="20,40,80")
    sp.add_argument("--density", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=BENCH_BUDGET, help="skip the oracle above this many 3-paths")
    sp.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("glmy: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"glmy: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GlmyError, KeyError, ValueError) as exc:
        # parse errors, schema errors, unknown labels, bad generator parameters
        print(f"glmy: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
