"""Command-line driver: ``regsub {check,decompose,enumerate,simbasis}``.

Exit codes: 0 regular / decomposition found, 1 not regular / none found,
2 usage or input error, 3 checkers disagree (an implementation bug).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .config import CapExceededError
from .module import Element, ModuleShape, element_profile
from .regularity import (
    baer_decompose,
    baer_signature,
    check_B,
    check_FPP,
    check_K,
    find_simultaneous_basis,
    verify_simultaneous_basis,
)
from .reports import RegularityReport
from .submodule import Submodule, enumerate_submodules, span

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3
CHECKERS = {"K": check_K, "B": check_B, "FPP": check_FPP}


class InputError(Exception):
    pass


@dataclass(frozen=True)
class ProblemFile:
    p: int
    shape: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    element: Optional[tuple[int, ...]] = None

    @property
    def module_shape(self) -> ModuleShape:
        return ModuleShape(self.p, self.shape)

    def submodule(self) -> Submodule:
        S = self.module_shape
        return span(S, [S.element(g) for g in self.generators])

    def echo(self) -> dict:
        d = {"p": self.p, "shape": list(self.shape), "generators": [list(g) for g in self.generators]}
        if self.element is not None:
            d["element"] = list(self.element)
        return d


def _int_vector(value, where: str, length: int) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of integers")
    if len(value) != length:
        raise InputError(f"{where}: expected {length} coordinates, got {len(value)}")
    for i, a in enumerate(value):
        if not isinstance(a, int) or isinstance(a, bool):
            raise InputError(f"{where}[{i}]: expected an integer, got {a!r}")
    return tuple(value)


def parse_problem(data) -> ProblemFile:
    if not isinstance(data, dict):
        raise InputError("top level: expected a JSON object")
    unknown = set(data) - {"p", "shape", "generators", "element"}
    if unknown:
        raise InputError(f"top level: unknown keys {sorted(unknown)}")
    for key in ("p", "shape", "generators"):
        if key not in data:
            raise InputError(f"{key}: missing")
    p = data["p"]
    if not isinstance(p, int) or isinstance(p, bool):
        raise InputError(f"p: expected an integer, got {p!r}")
    shape = data["shape"]
    if not isinstance(shape, list) or not shape:
        raise InputError("shape: expected a nonempty list of exponents")
    shape = _int_vector(shape, "shape", len(shape))
    if any(e < 1 for e in shape):
        raise InputError("shape: exponents must be >= 1")
    if list(shape) != sorted(shape, reverse=True):
        raise InputError("shape: exponents must be listed in non-increasing order")
    try:
        ModuleShape(p, shape)
    except ValueError as exc:
        raise InputError(f"p/shape: {exc}") from None
    gens = data["generators"]
    if not isinstance(gens, list):
        raise InputError("generators: expected a list of coordinate vectors")
    moduli = [p**e for e in shape]
    reduce = lambda v: tuple(a % m for a, m in zip(v, moduli))  # noqa: E731
    generators = tuple(
        reduce(_int_vector(g, f"generators[{i}]", len(shape))) for i, g in enumerate(gens)
    )
    element = None
    if data.get("element") is not None:
        element = reduce(_int_vector(data["element"], "element", len(shape)))
    return ProblemFile(p, shape, generators, element)


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_problem(data)


@dataclass
class RunReport:
    command: str
    version: str
    input: dict
    verdicts: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    timings: Optional[dict] = None
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        return cls(**d)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _fmt_cert(rep: RegularityReport) -> str:
    c = rep.certificate
    if c is None:
        return "-"
    w = list(c.witness.coords)
    if c.kind == "K":
        return f"(n,r)=({c.n},{c.r}) witness {w}"
    if c.kind == "FPP":
        return f"(s,k)=({c.s},{c.k}) witness {w}"
    return f"witness {w} has no decomposition in W"


def _record(report: RunReport, name: str, rep: RegularityReport) -> None:
    report.verdicts[name] = rep.verdict
    report.certificates[name] = None if rep.certificate is None else rep.certificate.to_dict()


def cmd_check(problem: ProblemFile, which=("K", "B", "FPP"), oracle=False, cap=None, timings=False, out=print) -> RunReport:
    W = problem.submodule()
    report = RunReport("check", __version__, problem.echo(), timings={} if timings else None)
    out(f"M = {problem.module_shape}, W = {W}")
    out(f"{'check':<12} {'verdict':<12} certificate")
    for name in which:
        t0 = time.perf_counter()
        rep = CHECKERS[name](W, cap)
        if timings:
            report.timings[name] = time.perf_counter() - t0
        _record(report, name, rep)
        out(f"{name:<12} {'REGULAR' if rep.verdict else 'NOT REGULAR':<12} {_fmt_cert(rep)}")
    if oracle:
        from .oracle import oracle_check_FPP, oracle_check_K

        for name, fn in (("oracle-K", oracle_check_K), ("oracle-FPP", oracle_check_FPP)):
            rep = fn(W)
            _record(report, name, rep)
            out(f"{name:<12} {'REGULAR' if rep.verdict else 'NOT REGULAR':<12} {_fmt_cert(rep)}")
    verdicts = set(report.verdicts.values())
    if len(verdicts) > 1:
        out("DISAGREEMENT between checkers")
        report.exit_code = EXIT_DISAGREE
    else:
        report.exit_code = EXIT_OK if verdicts == {True} or not verdicts else EXIT_FAIL
    return report


def cmd_decompose(problem: ProblemFile, out=print) -> RunReport:
    if problem.element is None:
        raise InputError("element: required for decompose")
    S = problem.module_shape
    W = problem.submodule()
    x = S.element(problem.element)
    if not W.contains(x):
        raise InputError(f"element: {list(x.coords)} is not in the span of the generators")
    if not x:
        raise InputError("element: must be nonzero")
    report = RunReport("decompose", __version__, problem.echo())
    prof = element_profile(x)
    sig = baer_signature(x)
    out(f"x = {list(x.coords)} is an ({prof.s},{prof.k};{prof.s1})-element")
    out("signature (k,s): " + " ".join(f"({k},{s})" for k, s in sig.pairs))
    report.details = {
        "profile": {"s": prof.s, "k": prof.k, "s1": prof.s1},
        "signature": [list(pair) for pair in sig.pairs],
    }
    d = baer_decompose(W, x)
    if d is None:
        out("no decomposition exists in W")
        report.details["decomposition"] = None
        report.exit_code = EXIT_FAIL
        return report
    out(f"{'y':<20} {'k':>3} {'s':>3}")
    for part in d.parts:
        out(f"{str(list(part.y.coords)):<20} {part.k:>3} {part.s:>3}")
    report.details["decomposition"] = [
        {"y": list(part.y.coords), "k": part.k, "s": part.s} for part in d.parts
    ]
    return report


def cmd_enumerate(p: int, shape, max_order: int, quiet=False, timings=False, out=print) -> RunReport:
    try:
        S = ModuleShape(p, tuple(shape))
    except ValueError as exc:
        raise InputError(f"p/shape: {exc}") from None
    if S.order > max_order:
        raise InputError(f"module order {S.order} exceeds --max-order {max_order}")
    report = RunReport(
        "enumerate", __version__, {"p": p, "shape": list(S.exponents), "max_order": max_order},
        timings={} if timings else None,
    )
    t0 = time.perf_counter()
    subs = enumerate_submodules(S, cap=max_order)
    regular = nonregular = disagree = 0
    bad: list[tuple[Submodule, dict[str, RegularityReport]]] = []
    disagreements = []
    for W in subs:
        reps = {name: fn(W, max_order) for name, fn in CHECKERS.items()}
        verdicts = {r.verdict for r in reps.values()}
        if len(verdicts) > 1:
            disagree += 1
            disagreements.append([list(g) for g in W.canon])
        elif verdicts == {True}:
            regular += 1
        else:
            nonregular += 1
            bad.append((W, reps))
    if timings:
        report.timings["total"] = time.perf_counter() - t0
    report.counts = {"total": len(subs), "regular": regular, "non_regular": nonregular, "disagreements": disagree}
    bad.sort(key=lambda item: item[0].canon)
    report.details = {
        "non_regular": [
            {
                "generators": [list(g) for g in W.canon],
                "order": W.order,
                "certificates": {n: r.certificate.to_dict() for n, r in reps.items()},
            }
            for W, reps in bad
        ],
        "smallest_non_regular": [list(g) for g in bad[0][0].canon] if bad else None,
        "disagreements": disagreements,
    }
    out(f"M = {S}: {len(subs)} submodules, {regular} regular, {nonregular} non-regular")
    if not quiet and bad:
        out(f"{'generators':<28} {'order':>6}  K certificate / FPP certificate")
        for W, reps in bad:
            gens = " ".join(str(list(g)) for g in W.canon)
            out(f"{gens:<28} {W.order:>6}  {_fmt_cert(reps['K'])} / {_fmt_cert(reps['FPP'])}")
    if bad:
        out("smallest non-regular: " + " ".join(str(list(g)) for g in bad[0][0].canon))
    if disagree:
        out(f"THEOREM VIOLATION: {disagree} submodules with disagreeing verdicts")
        report.exit_code = EXIT_DISAGREE
    else:
        out("all three checkers agree on every submodule")
    return report


def cmd_simbasis(problem: ProblemFile, cap=None, out=print) -> RunReport:
    W = problem.submodule()
    report = RunReport("simbasis", __version__, problem.echo())
    b = find_simultaneous_basis(W, cap)
    if b is None:
        rep = check_K(W, cap)
        _record(report, "K", rep)
        out("none exists")
        out(f"K certificate: {_fmt_cert(rep)}")
        report.details = {"basis": None, "depths": None, "verified": None}
        report.exit_code = EXIT_FAIL if not rep.verdict else EXIT_DISAGREE
        return report
    ok = verify_simultaneous_basis(W, b)
    out("basis: " + " ".join(str(list(x.coords)) for x in b.basis))
    out("depths: " + " ".join(str(d) for d in b.depths))
    out(f"verified: {ok}")
    report.details = {
        "basis": [list(x.coords) for x in b.basis],
        "depths": list(b.depths),
        "verified": ok,
    }
    report.exit_code = EXIT_OK if ok else EXIT_DISAGREE
    return report


def _which(value: str) -> tuple[str, ...]:
    names = {"k": "K", "b": "B", "fpp": "FPP"}
    if value.lower() == "all":
        return ("K", "B", "FPP")
    picked = []
    for part in value.lower().split(","):
        if part not in names:
            raise argparse.ArgumentTypeError(f"unknown check {part!r}; use k, b, fpp or all")
        if names[part] not in picked:
            picked.append(names[part])
    return tuple(picked)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write a machine-readable report")
    common.add_argument("--max-order", type=int, default=65536, help="enumeration order cap")
    common.add_argument("--quiet", action="store_true", help="print only the summary")
    common.add_argument("--timings", action="store_true", help="record wall-clock timings")

    parser = argparse.ArgumentParser(prog="regsub", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"regsub {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide regularity of W = <generators>")
    p.add_argument("input")
    p.add_argument("--check", type=_which, default=("K", "B", "FPP"), help="k, b, fpp, a comma list, or all")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracles")

    p = sub.add_parser("decompose", parents=[common], help="Baer-decompose the element inside W")
    p.add_argument("input")

    p = sub.add_parser("enumerate", parents=[common], help="classify every submodule of M")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--shape", type=int, nargs="+", required=True)

    p = sub.add_parser("simbasis", parents=[common], help="search for a simultaneous basis of W and M")
    p.add_argument("input")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    lines: list[str] = []
    out = lines.append if args.quiet else print
    try:
        if args.command == "enumerate":
            report = cmd_enumerate(args.p, args.shape, args.max_order, args.quiet, args.timings, out=print)
        else:
            problem = load_problem(args.input)
            if problem.module_shape.order > args.max_order:
                raise InputError(f"module order {problem.module_shape.order} exceeds --max-order {args.max_order}")
            if args.command == "check":
                report = cmd_check(problem, args.check, args.oracle, args.max_order, args.timings, out=out)
            elif args.command == "decompose":
                report = cmd_decompose(problem, out=out)
            else:
                report = cmd_simbasis(problem, args.max_order, out=out)
    except (InputError, CapExceededError) as exc:
        print(f"regsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.quiet and args.command != "enumerate":
        print(lines[-1] if args.command != "check" else _summary(report))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.dumps())
    return report.exit_code


def _summary(report: RunReport) -> str:
    return " ".join(f"{k}={'REGULAR' if v else 'NOT-REGULAR'}" for k, v in report.verdicts.items())


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
