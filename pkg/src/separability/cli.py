"""Command line front end.

    separability check FILE [--tol T] [--samples S] [--dirs D] [--seed N] [--format text|json]
    separability gen named NAME [-o OUT]
    separability gen separable --dims 2,3 --k 4 --seed 7 [-o OUT]
    separability gen random --dims 2,2 --seed 1 [-o OUT]
    separability diag FILE [--tol T] [--format text|json]
    separability blocks FILE [--format text|json]

Exit status: 0 when the computation finished (whatever the verdict), 1 for
invalid input, 2 for a numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import criteria, diagnostics, states
from .errors import NumericalError
from .statefile import read_state, state_to_json

NAMED = ("spectra-twins-rho", "spectra-twins-sigma", "phi-mixture:<lambda>", "bell:<phi+|phi-|psi+|psi->")


def _dims_arg(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.replace("x", ",").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected e.g. 2,3") from None
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"bad dims {text!r}")
    return dims


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _config(args) -> criteria.CheckConfig:
    return criteria.CheckConfig(tol=args.tol, samples=args.samples, dirs=args.dirs, seed=args.seed)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _fmt_witness(w) -> str:
    if w is None:
        return ""
    parts = []
    for key, val in w.items():
        if key == "R":
            val = "[" + "; ".join(" ".join(f"{x:+.4f}" for x in row) for row in val) + "]"
        elif key == "direction":
            val = "(" + ", ".join(f"{x:+.4f}" for x in val) + ")"
        elif isinstance(val, float):
            val = f"{val:+.6e}"
        parts.append(f"{key}={val}")
    return " ".join(parts)


def _verdict_word(v: criteria.Verdict) -> str:
    if v.conclusion == criteria.INCONCLUSIVE:
        return "inconclusive (all necessary criteria satisfied)"
    return v.conclusion


def check_report(rho, label, config: criteria.CheckConfig) -> dict:
    verdict = criteria.full_verdict(rho, config)
    return {
        "label": label,
        "config": {"tol": config.tol, "samples": config.samples, "dirs": config.dirs, "seed": config.seed},
        "verdict": verdict.to_dict(),
    }


def cmd_check(args) -> int:
    rho, label = read_state(args.file)
    config = _config(args)
    report = check_report(rho, label, config)
    if args.format == "json":
        print(_dump(report))
        return 0
    v = report["verdict"]
    print(f"state: {label or args.file}  dims {tuple(v['dims'])}")
    for r in v["criteria"]:
        status = "satisfied" if r["satisfied"] else "VIOLATED"
        line = f"  {r['criterion']:<16} {status:<9} margin {r['margin']:+.12e}  {_fmt_witness(r['witness'])}"
        if r.get("note"):
            line += f"  [{r['note']}]"
        print(line.rstrip())
    word = _verdict_word(criteria.Verdict(v["conclusion"], [], []))
    if v["certificates"]:
        word += " (certificates: " + ", ".join(v["certificates"]) + ")"
    print(f"verdict: {word}")
    return 0


def named_state(name: str) -> states.DensityMatrix:
    if name == "spectra-twins-rho":
        return states.spectra_twins()[0]
    if name == "spectra-twins-sigma":
        return states.spectra_twins()[1]
    if name.startswith("phi-mixture:"):
        try:
            lam = float(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad lambda in {name!r}") from None
        return states.phi_mixture(lam)
    if name.startswith("bell:"):
        return states.projector(states.bell_state(name.split(":", 1)[1]))
    raise ValueError(f"unknown named state {name!r}; known: {', '.join(NAMED)}")


def cmd_gen(args) -> int:
    if args.kind == "named":
        rho, label = named_state(args.name), args.name
    elif args.kind == "separable":
        rho, _ = states.random_separable(args.dims, args.k, args.seed)
        label = f"separable dims={','.join(map(str, args.dims))} k={args.k} seed={args.seed}"
    else:
        rho = states.random_density(args.dims, args.seed)
        label = f"random dims={','.join(map(str, args.dims))} seed={args.seed}"
    text = json.dumps(state_to_json(rho, label)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def diag_report(rho, label, tol: float) -> dict:
    if len(rho.dims) != 2:
        raise ValueError("bipartite required for diagnostics")
    eps = tol * max(1.0, float(np.linalg.norm(rho.mat)))
    cg = diagnostics.cross_gram_diagnostic(rho)
    mu = diagnostics.n_mu_interval(rho, eps=eps)
    return {"label": label, "dims": list(rho.dims), "cross_gram": cg.to_dict(), "mu_interval": mu.to_dict()}


def cmd_diag(args) -> int:
    rho, label = read_state(args.file)
    report = diag_report(rho, label, args.tol)
    if args.format == "json":
        print(_dump(report))
        return 0
    cg, mu = report["cross_gram"], report["mu_interval"]
    print(f"state: {label or args.file}  dims {tuple(report['dims'])}")
    print(f"  ||trC(rhoAC rhoBC) - rhoAB^2||_F   {cg['dist_full']:.12e}")
    print(f"  same, after tracing out A         {cg['dist_traced_A']:.12e}")
    print(f"  same, after tracing out B         {cg['dist_traced_B']:.12e}")
    hit = ["(search bound)" if h else "" for h in mu["bound_hit"]]
    print(f"  N(mu) is a state for mu in [{mu['mu_min']:.9f}{hit[0]}, {mu['mu_max']:.9f}{hit[1]}]")
    return 0


def _matrix_json(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def blocks_report(rho, label) -> dict:
    note = None
    if len(rho.dims) != 2 or 2 not in rho.dims:
        raise ValueError("blocks need a bipartite state with a qubit subsystem")
    if rho.dims[0] != 2:
        rho, note = rho.permuted((1, 0)), "subsystems swapped so the qubit is first"
    b = criteria.pauli_blocks(rho)
    margin = criteria.theorem3_trace_check(rho).margin
    doc = {
        "label": label,
        "dims": list(rho.dims),
        "blocks": {name: _matrix_json(getattr(b, name)) for name in ("m0", "mx", "my", "mz")},
        "trace_margin": margin,
    }
    if note:
        doc["note"] = note
    return doc


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.6f}{z.imag:+.6f}i"


def cmd_blocks(args) -> int:
    rho, label = read_state(args.file)
    report = blocks_report(rho, label)
    if args.format == "json":
        print(_dump(report))
        return 0
    print(f"state: {label or args.file}  dims {tuple(report['dims'])}")
    if "note" in report:
        print(f"  note: {report['note']}")
    for name, rows in report["blocks"].items():
        print(f"  {name}:")
        for row in rows:
            print("    " + "  ".join(_fmt_complex(complex(*z)) for z in row))
    print(f"  tr(M0^2 - Mx^2 - My^2 - Mz^2) = {report['trace_margin']:+.12e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="separability", description="Necessary separability criteria for density matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sampling=True):
        p.add_argument("--tol", type=_positive_float, default=1e-9, help="relative PSD tolerance (default 1e-9)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if sampling:
            p.add_argument("--samples", type=_positive_int, default=512, help="random R matrices for Theorem 2")
            p.add_argument("--dirs", type=_positive_int, default=512, help="sphere directions for Theorem 3(i)")
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check", help="run every applicable criterion and print a verdict")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a state file")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("named", help="one of: " + ", ".join(NAMED))
    g.add_argument("name")
    g = gsub.add_parser("separable", help="random separable mixture of k product states")
    g.add_argument("--dims", type=_dims_arg, required=True)
    g.add_argument("--k", type=_positive_int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("random", help="Ginibre random density matrix")
    g.add_argument("--dims", type=_dims_arg, required=True)
    g.add_argument("--seed", type=int, default=0)
    for g in gsub.choices.values():
        g.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("diag", help="cross-Gram distances and the N(mu) interval")
    p.add_argument("file")
    common(p, sampling=False)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("blocks", help="Pauli blocks of a qubit-by-N state")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_blocks)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
