"""Command-line interface: every computation in the library, with
machine-readable output, a regression command over the full table of
published anchor values, and a sweep mode for grids of inputs.

Exit codes: 0 on success, 2 when the inputs fall outside a formula's regime
(a distinct code so scripted sweeps can tell "not applicable" from
"broken"), 1 on internal inconsistency.

All numeric output is rendered as exact decimal strings (or p/q for
non-integers); no value ever passes through floating point.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import conics, invariants, planes
from .errors import InconsistencyError, RegimeError
from .planes import DEFAULT_SEED, ProblemSpec, TorusWeights

__all__ = ["CommandRequest", "ResultEnvelope", "build_parser", "main",
           "paper_check", "run", "sweep_rows"]

ENVELOPE_SUBCOMMANDS = ("planes", "ci-planes", "fano-degree", "surface",
                        "irregularity", "picard", "conics")

CSV_HEADER = "d,r,k,gamma,delta,value,method"


def format_exact(value) -> str:
    """Exact decimal string for ints, p/q for non-integer rationals,
    true/false for flags."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(int(value)) if value.denominator == 1 else str(value)
    if isinstance(value, int):
        return str(value)
    return str(value)


@dataclass(frozen=True)
class CommandRequest:
    subcommand: str
    degrees: tuple[int, ...] = ()
    r: int = 0
    k: int = 0
    method: str = "dm"
    format: str = "table"
    seed: int = DEFAULT_SEED


@dataclass
class ResultEnvelope:
    """Inputs echo, named exact results with provenance, and a status."""

    inputs: dict[str, str]
    results: dict[str, dict[str, str]] = field(default_factory=dict)
    status: str = "ok"

    def put(self, name: str, value, provenance: str) -> None:
        self.results[name] = {"value": format_exact(value), "provenance": provenance}

    def to_json(self) -> str:
        payload = {"inputs": self.inputs, "results": self.results, "status": self.status}
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            lines = ["name,value,provenance"]
            lines += [f"{name},{entry['value']},{entry['provenance']}"
                      for name, entry in self.results.items()]
            return "\n".join(lines)
        width = max((len(n) for n in self.results), default=0)
        lines = [f"{name:<{width}}  {entry['value']}    [{entry['provenance']}]"
                 for name, entry in self.results.items()]
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


def _echo_inputs(request: CommandRequest) -> dict[str, str]:
    echo = {"subcommand": request.subcommand, "format": request.format,
            "seed": str(request.seed)}
    if request.degrees:
        echo["d"] = ",".join(str(d) for d in request.degrees)
    if request.r:
        echo["r"] = str(request.r)
    if request.k:
        echo["k"] = str(request.k)
    if request.subcommand in ("planes", "conics"):
        echo["method"] = request.method
    return echo


def _spec_for(request: CommandRequest) -> ProblemSpec:
    return ProblemSpec(degrees=request.degrees, r=request.r, k=request.k)


def run(request: CommandRequest) -> ResultEnvelope:
    """Dispatch one envelope-producing subcommand."""
    envelope = ResultEnvelope(inputs=_echo_inputs(request))
    sub = request.subcommand

    if sub == "planes":
        d, r, k = request.degrees[0], request.r, request.k
        if request.method in ("dm", "both"):
            envelope.put("deg_dm" if request.method == "both" else "deg",
                         planes.deg_planes_dm(d, r, k),
                         "vandermonde-coefficient-extraction")
        if request.method in ("bott", "both"):
            weights = TorusWeights.random(r, request.seed)
            envelope.put("deg_bott" if request.method == "both" else "deg",
                         planes.deg_planes_bott(d, r, k, weights),
                         "fixed-point-residue-sum")
        if request.method == "both":
            equal = (envelope.results["deg_dm"]["value"]
                     == envelope.results["deg_bott"]["value"])
            envelope.put("equal", equal, "cross-method-comparison")

    elif sub == "ci-planes":
        spec = _spec_for(request)
        envelope.put("deg", planes.deg_ci_planes(spec), "ci-coefficient-extraction")
        envelope.put("gamma", spec.gamma, "codimension-arithmetic")

    elif sub == "fano-degree":
        spec = _spec_for(request)
        envelope.put("deg", planes.deg_fano(spec), "plucker-coefficient-extraction")
        envelope.put("gamma", spec.gamma, "codimension-arithmetic")
        envelope.put("delta", spec.delta, "codimension-arithmetic")

    elif sub == "surface":
        report = invariants.surface_invariants(_spec_for(request))
        envelope.put("deg", report.deg_f, "plucker-coefficient-extraction")
        envelope.put("c2", report.c2_integral, "schubert-c2-extraction")
        envelope.put("A", report.a_coeff, "tangent-chern-combination")
        envelope.put("B", report.b_coeff, "tangent-chern-combination")
        envelope.put("e", report.euler, "chern-number-combination")
        envelope.put("K2", report.k_delta, "canonical-self-intersection")
        envelope.put("chi", report.chi_o, "noether-quotient")
        envelope.put("p_a", report.p_a, "noether-quotient")
        envelope.put("signature", report.signature, "signature-formula")
        envelope.put("c1_coeff", report.c1_coeff, "canonical-class-multiple")
        for i, c in enumerate(report.per_degree, start=1):
            envelope.put(f"alpha_{i}", c.alpha, "sym-power-chern-coeffs")
            envelope.put(f"beta_{i}", c.beta, "sym-power-chern-coeffs")
            envelope.put(f"gamma_{i}", c.gamma, "sym-power-chern-coeffs")

    elif sub == "irregularity":
        result = invariants.irregularity_classify(_spec_for(request))
        envelope.put("case", result.case.value, "irregularity-classification")
        if result.k is not None:
            envelope.put("k", result.k, "irregularity-classification")
        envelope.put("note", result.note, "irregularity-classification")

    elif sub == "picard":
        info = invariants.picard_number(_spec_for(request))
        envelope.put("rho", info.rho, "picard-classification")
        envelope.put("components", info.components, "picard-classification")
        envelope.put("note", info.note, "picard-classification")

    elif sub == "conics":
        d, r = request.degrees[0], request.r
        if request.method in ("bott", "both", "dm"):
            envelope.put("deg", conics.deg_conics(d, r, seed=request.seed),
                         "twisted-fixed-point-sum")
            if (d, r) == (4, 3):
                envelope.put("halved", True, "two-conics-on-general-quartic")
        if request.method in ("closed", "both"):
            comparison = conics.deg_conics_closed(d, r, seed=request.seed)
            envelope.put("closed_form", comparison.value, "closed-form-eta(1,1,1)")
            envelope.put("closed_matches_fixed_point", comparison.consistent,
                         "cross-method-comparison")
            if comparison.ratio is not None:
                envelope.put("closed_to_fixed_point_ratio", comparison.ratio,
                             "cross-method-comparison")

    else:
        raise ValueError(f"unknown subcommand {sub!r}")

    return envelope


# ---------------------------------------------------------------------------
# anchor regression
# ---------------------------------------------------------------------------

def _anchor_checks() -> list[tuple[str, Callable[[], object], object]]:
    """The fixed checklist of published values: one entry per line of the
    regression report."""
    checks: list[tuple[str, Callable[[], object], object]] = []

    def surface_family(label: str, degrees: tuple[int, ...], r: int,
                       expected: dict[str, int]) -> None:
        spec = ProblemSpec(degrees, r, expected.pop("_k", 1))
        checks.extend([
            (f"{label}: deg", lambda: invariants.surface_invariants(spec).deg_f,
             expected["deg"]),
            (f"{label}: c2 integral", lambda: invariants.surface_invariants(spec).c2_integral,
             expected["c2"]),
            (f"{label}: A", lambda: invariants.surface_invariants(spec).a_coeff,
             expected["A"]),
            (f"{label}: B", lambda: invariants.surface_invariants(spec).b_coeff,
             expected["B"]),
            (f"{label}: e", lambda: invariants.surface_invariants(spec).euler,
             expected["e"]),
            (f"{label}: K^2", lambda: invariants.surface_invariants(spec).k_delta,
             expected["K2"]),
            (f"{label}: chi(O)", lambda: invariants.surface_invariants(spec).chi_o,
             expected["chi"]),
        ])

    surface_family("lines on cubic threefolds", (3,), 4,
                   {"deg": 45, "c2": 27, "A": 6, "B": -9, "e": 27, "K2": 45, "chi": 6})
    surface_family("lines on quintic fourfolds", (5,), 5,
                   {"deg": 6125, "c2": 2875, "A": 66, "B": -33,
                    "e": 309375, "K2": 496125, "chi": 67125})
    surface_family("lines on two quadrics in P^5", (2, 2), 5,
                   {"deg": 32, "c2": 16, "A": 3, "B": -6, "e": 0, "K2": 0, "chi": 0})
    surface_family("planes on cubic fivefolds", (3,), 6,
                   {"_k": 2, "deg": 2835, "c2": 1701, "A": 13, "B": -14,
                    "e": 13041, "K2": 25515, "chi": 3213})

    checks.append(("cubic fourfolds with a plane: codimension",
                   lambda: ProblemSpec((3,), 5, 2).gamma, 1))
    checks.append(("quartic surfaces with a conic: deg",
                   lambda: conics.deg_conics(4, 3), 2508))
    checks.append(("fixed conics in P^3: census",
                   lambda: conics.fixed_point_census(3), 24))
    return checks


def paper_check(stream=None) -> bool:
    """Run every anchor check, print one PASS/FAIL line each plus the
    conic-route reconciliation report; return True iff everything passed."""
    out = stream or sys.stdout
    failures = 0
    checks = _anchor_checks()
    for label, compute, expected in checks:
        try:
            got = compute()
        except Exception as exc:  # a crash in an anchor is a failure, not an abort
            print(f"FAIL  {label}: raised {type(exc).__name__}: {exc}", file=out)
            failures += 1
            continue
        if got == expected:
            print(f"PASS  {label} = {format_exact(got)}", file=out)
        else:
            print(f"FAIL  {label}: expected {format_exact(expected)}, "
                  f"got {format_exact(got)}", file=out)
            failures += 1
    print(f"{len(checks) - failures} passed, {failures} failed "
          f"(of {len(checks)} anchor checks)", file=out)
    print("", file=out)
    print(conics.conic_factor_report(), file=out)
    return failures == 0


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def _parse_int_range(text: str) -> list[int]:
    values: set[int] = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            values.update(range(int(lo), int(hi) + 1))
        else:
            values.add(int(chunk))
    if not values:
        raise ValueError(f"empty range {text!r}")
    return sorted(values)


def _parse_degree_items(text: str) -> list[tuple[int, ...]]:
    """Degree column of a sweep: comma-separated items, each either an int,
    a lo..hi range of ints, or a multidegree joined by '+' (e.g. 2+2)."""
    items: set[tuple[int, ...]] = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            items.update((x,) for x in range(int(lo), int(hi) + 1))
        else:
            items.add(tuple(int(p) for p in chunk.split("+")))
    if not items:
        raise ValueError(f"empty degree list {text!r}")
    return sorted(items)


def sweep_rows(target: str, degree_items: Sequence[tuple[int, ...]],
               r_values: Sequence[int], k_values: Sequence[int],
               skip_log: Callable[[str], None] | None = None) -> Iterator[str]:
    """CSV rows (without header) for a grid sweep, in lexicographic
    (d, r, k) order.  Out-of-regime cells produce no row; the reason is
    passed to ``skip_log``."""
    for degrees in sorted(degree_items):
        for r in sorted(r_values):
            for k in sorted(k_values):
                d_label = "+".join(str(x) for x in degrees)
                try:
                    if target == "planes":
                        if len(degrees) != 1:
                            raise RegimeError("hypersurface-only",
                                              "the planes sweep takes single degrees")
                        value = planes.deg_planes_dm(degrees[0], r, k)
                        method = "dm"
                        spec = ProblemSpec(degrees, r, k)
                    elif target == "fano-degree":
                        spec = ProblemSpec(degrees, r, k)
                        value = planes.deg_fano(spec)
                        method = "extraction"
                    else:
                        raise ValueError(f"unknown sweep target {target!r}")
                except (RegimeError, ValueError) as exc:
                    if skip_log is not None:
                        skip_log(f"skip d={d_label} r={r} k={k}: {exc}")
                    continue
                yield f"{d_label},{r},{k},{spec.gamma},{spec.delta},{value},{method}"


# ---------------------------------------------------------------------------
# argument parsing / entry point
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, *, method_choices=None,
                default_method=None, want_k=True) -> None:
    parser.add_argument("--d", required=True,
                        help="degree, or comma-separated degrees for complete intersections")
    parser.add_argument("--r", required=True, type=int, help="ambient projective dimension")
    if want_k:
        parser.add_argument("--k", required=True, type=int, help="plane dimension")
    if method_choices:
        parser.add_argument("--method", choices=method_choices, default=default_method)
    parser.add_argument("--format", choices=("table", "json", "csv"), default="table")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for fixed-point weight draws (default {DEFAULT_SEED})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanocount",
        description="Exact counts: hypersurfaces and complete intersections "
                    "containing planes or conics, and invariants of their Fano schemes.")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    _add_common(subs.add_parser("planes", help="degree of the locus of hypersurfaces "
                                               "containing a k-plane"),
                method_choices=("dm", "bott", "both"), default_method="dm")
    _add_common(subs.add_parser("ci-planes", help="degree of the containing-a-k-plane "
                                                  "locus in a linear system on a "
                                                  "complete intersection"))
    _add_common(subs.add_parser("fano-degree", help="Plucker degree of the Fano scheme"))
    _add_common(subs.add_parser("surface", help="invariants of a Fano surface (delta = 2)"))
    _add_common(subs.add_parser("irregularity", help="irregularity classification"))
    _add_common(subs.add_parser("picard", help="Picard number of the very general member"))
    _add_common(subs.add_parser("conics", help="degree of the locus of hypersurfaces "
                                               "containing a conic"),
                method_choices=("bott", "closed", "both"), default_method="bott",
                want_k=False)

    subs.add_parser("paper-check", help="run the full table of published anchor values")

    sweep = subs.add_parser("sweep", help="grid sweep, CSV on stdout")
    sweep.add_argument("target", choices=("planes", "fano-degree"))
    sweep.add_argument("--d", required=True,
                       help="degrees: comma list of ints, lo..hi ranges, or a+b multidegrees")
    sweep.add_argument("--r", required=True, help="r values: comma list or lo..hi")
    sweep.add_argument("--k", required=True, help="k values: comma list or lo..hi")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.subcommand == "paper-check":
        return 0 if paper_check() else 1

    if args.subcommand == "sweep":
        try:
            degree_items = _parse_degree_items(args.d)
            r_values = _parse_int_range(args.r)
            k_values = _parse_int_range(args.k)
        except ValueError as exc:
            print(f"parameter error: {exc}", file=sys.stderr)
            return 2
        print(CSV_HEADER)
        for row in sweep_rows(args.target, degree_items, r_values, k_values,
                              skip_log=lambda msg: print(msg, file=sys.stderr)):
            print(row)
        return 0

    try:
        degrees = tuple(int(chunk) for chunk in args.d.split(","))
    except ValueError as exc:
        print(f"parameter error: cannot parse degrees {args.d!r}: {exc}", file=sys.stderr)
        return 2
    request = CommandRequest(
        subcommand=args.subcommand,
        degrees=degrees,
        r=args.r,
        k=getattr(args, "k", 0),
        method=getattr(args, "method", "dm") or "dm",
        format=args.format,
        seed=args.seed,
    )
    try:
        envelope = run(request)
    except RegimeError as exc:
        envelope = ResultEnvelope(inputs=_echo_inputs(request), status="regime-error")
        print(envelope.render(request.format))
        print(f"regime error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        envelope = ResultEnvelope(inputs=_echo_inputs(request), status="regime-error")
        print(envelope.render(request.format))
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except InconsistencyError as exc:
        envelope = ResultEnvelope(inputs=_echo_inputs(request), status="inconsistency")
        print(envelope.render(request.format))
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1
    print(envelope.render(request.format))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
