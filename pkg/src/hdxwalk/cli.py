"""Command-line surface: certify, walk, verify, generate.

Exit codes: 0 success, 2 parse error, 3 exact-mode cap exceeded without
--sampled, 4 violated bound or invalid complex, 5 disconnected graph when
mixing verification was requested.  Identical (input, flags, seed) produce
byte-identical reports: no timestamps, fixed key order, and the run
configuration echoed in every header.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .certify import (
    Caps,
    alpha_threshold,
    build_certificate,
    certificate_jsonable,
    colorful_epsilon,
    mu_vs_spectrum,
    random_proof_instances,
    skeleton_alpha,
    theorem_epsilon,
    verify_bipartiteness_lemma,
    verify_conductance_lemma,
    verify_proof_trace,
)
from .complexes import read_cplx, validate_complex, write_cplx
from .errors import (
    BoundViolated,
    DisconnectedGraph,
    HdxError,
    InvalidComplex,
    TooLargeForExact,
)
from .generate import (
    complete_complex,
    complete_multipartite_complex,
    random_lm_complex,
    skeleton_mixing_check,
)
from .spectral import cheeger_check, normalized_adjacency, spectrum, trevisan_check
from .walk import (
    Distribution,
    build_igraph,
    format_trajectory,
    lazy_igraph,
    simulate_walk,
    stationary,
    transition_step,
    verify_mixing_bound,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_BOUND = 4
EXIT_DISCONNECTED = 5


def _frac(q):
    return f"{q.numerator}/{q.denominator}"


def _config_line(args, fields):
    parts = [f"command={args.command}"]
    for name in fields:
        parts.append(f"{name}={getattr(args, name.replace('-', '_'))}")
    return " ".join(parts)


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        x = read_cplx(path)
    except (OSError, HdxError) as exc:
        print(f"error: cannot parse {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    return x


def _caps(args):
    return Caps(
        subset=args.subset_cap, partition=args.partition_cap, epsilon=args.epsilon_cap
    )


def _add_common(p):
    p.add_argument("input", help=".cplx input file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--output", default=None, help="write the report to a file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("HDX_THREADS", "1")))
    p.add_argument("--subset-cap", type=int, default=22)
    p.add_argument("--partition-cap", type=int, default=15)
    p.add_argument("--epsilon-cap", type=int, default=20)


# ---------------------------------------------------------------------------
# certify


def cmd_certify(args):
    x = _load(args.input)
    caps = _caps(args)
    config = _config_line(
        args,
        ["input", "seed", "subset-cap", "partition-cap", "epsilon-cap",
         "sampled", "skeleton-mixing", "threads"],
    )
    try:
        cert = build_certificate(
            x,
            caps=caps,
            sampled=args.sampled,
            trials=args.trials,
            seed=args.seed,
            threads=args.threads,
        )
        mixing = None
        if args.skeleton_mixing:
            mixing = skeleton_mixing_check(x, cap=args.subset_cap)
        checks = []
        if args.all:
            checks = _run_bound_checks(x, cert, caps)
    except TooLargeForExact as exc:
        print(f"error: exact-mode cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BoundViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND

    payload = certificate_jsonable(cert)
    payload["version"] = __version__
    payload["config"] = config
    if mixing is not None:
        payload["skeleton_mixing"] = {
            "lambda2_tilde": format(mixing.lambda2_tilde, ".12g"),
            "pairs_checked": mixing.pair_rows,
            "subsets_checked": mixing.subset_rows,
        }
    if args.all:
        payload["checks"] = checks

    if args.json:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [
            "# hdxwalk certificate",
            f"# version={__version__}",
            f"# config: {config}",
            f"alpha = {payload['alpha']} [{cert.flags['alpha']}]",
            f"epsilon = {payload['epsilon']} [{cert.flags['epsilon']}]",
        ]
        for i in sorted(cert.conductance):
            lines.append(
                f"conductance[{i}] = {_frac(cert.conductance[i])} "
                f"[{cert.flags[f'conductance[{i}]']}]"
            )
        for i in sorted(cert.bipartiteness):
            lines.append(
                f"bipartiteness[{i}] = {_frac(cert.bipartiteness[i])} "
                f"[{cert.flags[f'bipartiteness[{i}]']}]"
            )
        for key in ("thm2", "thm3"):
            if key in cert.mu:
                val = cert.mu[key]
                lines.append(
                    f"mu.{key} = {format(val, '.12g') if val is not None else 'n/a'}"
                )
        for i, val in sorted(cert.mu.get("stronger", {}).items()):
            lines.append(
                f"mu.stronger[{i}] = "
                f"{format(val, '.12g') if val is not None else 'n/a'}"
            )
        if mixing is not None:
            lines.append(
                f"skeleton-mixing: lambda2_tilde = "
                f"{format(mixing.lambda2_tilde, '.12g')} "
                f"({mixing.pair_rows} pair rows, {mixing.subset_rows} subsets) PASS"
            )
        for row in checks:
            lines.append(row)
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _run_bound_checks(x, cert, caps):
    rows = []
    rep = verify_conductance_lemma(x, cert.epsilon, caps.subset)
    for r in rep.rows:
        rows.append(f"check conductance-lemma[i={r.where}]: "
                    f"{_frac(r.rhs)} >= {_frac(r.lhs)} PASS")
    rep = verify_bipartiteness_lemma(x, caps.partition)
    for r in rep.rows:
        rows.append(f"check bipartiteness-lemma[i={r.where}]: "
                    f"{_frac(r.rhs)} >= {_frac(r.lhs)} PASS")
    for i in range(x.dimension):
        g = build_igraph(x, i)
        spec = spectrum(normalized_adjacency(g))
        c = cheeger_check(g, cert.conductance[i], spec)
        rows.append(f"check cheeger[i={i}]: lambda2={c.lhs:.12g} <= {c.rhs:.12g} PASS")
        if i >= 1:
            t = trevisan_check(g, cert.bipartiteness[i], spec)
            rows.append(
                f"check trevisan[i={i}]: lambda_min={t.lhs:.12g} >= {t.rhs:.12g} PASS"
            )
    if x.dimension > 1:
        rep = mu_vs_spectrum(x, eps=cert.epsilon, caps=caps, allowance=1e-8)
        for r in rep.rows:
            rows.append(
                f"check mu-vs-spectrum[i={r.where}]: {r.lhs:.12g} <= {r.rhs:.12g} PASS"
            )
    alpha = cert.alpha
    if alpha is not None and float(alpha) < alpha_threshold(x.dimension):
        need = theorem_epsilon(x.dimension, alpha)
        if cert.epsilon is not None and float(cert.epsilon) < need:
            raise BoundViolated("colorful-from-skeleton",
                                None, float(cert.epsilon), need)
        rows.append(
            f"check colorful-from-skeleton: epsilon={float(cert.epsilon):.12g} "
            f">= {need:.12g} PASS"
        )
    return rows


# ---------------------------------------------------------------------------
# walk


def cmd_walk(args):
    x = _load(args.input)
    try:
        g = build_igraph(x, args.dim)
    except HdxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.lazy:
        g = lazy_igraph(g)
    config = _config_line(
        args, ["input", "dim", "steps", "seed", "start", "simulate", "lazy"]
    )

    try:
        if args.start:
            face = x.face_from_labels(args.start.split(","))
            pi0 = Distribution.point(g, face)
        else:
            face = None
            pi0 = stationary(g)
    except HdxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    lines = [
        "# hdxwalk walk",
        f"# version={__version__}",
        f"# config: {config}",
    ]
    names = [x.face_label(f) for f in g.vertices]
    dist = pi0
    tables = []
    for t in range(args.steps + 1):
        tables.append((t, dist))
        if t < args.steps:
            dist = transition_step(g, dist)
    for t, d in tables:
        row = " ".join(f"{name}:{_frac(p)}" for name, p in zip(names, d.probs))
        lines.append(f"pi[{t}] = {row}")

    mixing_lines, code = _walk_mixing(args, g, pi0)
    if code is not None:
        return code
    lines.extend(mixing_lines)

    if args.simulate:
        if face is None:
            face = g.vertices[0]
        for stream in range(args.simulate):
            traj = simulate_walk(
                x, args.dim, face, args.steps, args.seed + stream, lazy=args.lazy
            )
            lines.append(
                format_trajectory(x, traj, args.dim, args.seed + stream, args.steps).rstrip("\n")
            )
    text = "\n".join(lines) + "\n"
    if args.json:
        payload = {
            "version": __version__,
            "config": config,
            "vertices": names,
            "pi": [
                {"t": t, "probs": [_frac(p) for p in d.probs]} for t, d in tables
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def _walk_mixing(args, g, pi0):
    lines = []
    if not g.connected:
        if args.mixing_check:
            print("error: graph is disconnected; no mixing bound", file=sys.stderr)
            return [], EXIT_DISCONNECTED
        lines.append("# disconnected level graph: mixing table skipped")
        return lines, None
    spec = spectrum(normalized_adjacency(g))
    rate = spec.mixing_rate() if g.order() >= 2 else 0.0
    try:
        report = verify_mixing_bound(g, pi0, args.steps, rate, eps_num=1e-6)
    except BoundViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return [], EXIT_BOUND
    lines.append(
        f"# mixing bound: lambda={rate:.12g} "
        f"sqrt(dmax/dmin)={report.ratio:.12g} lambda2={spec.lambda2:.12g}"
    )
    for t, dist, bound, margin in report.rows:
        lines.append(
            f"mix[{t}]: distance={dist:.12g} bound={bound:.12g} margin={margin:.12g}"
        )
    return lines, None


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args):
    x = _load(args.input)
    caps = _caps(args)
    config = _config_line(
        args,
        ["input", "trials", "seed", "subset-cap", "partition-cap", "epsilon-cap",
         "threads"],
    )
    lines = [
        "# hdxwalk verify",
        f"# version={__version__}",
        f"# config: {config}",
    ]
    try:
        validate_complex(x)
        lines.append("complex-invariants: PASS")
        alpha, _, _ = skeleton_alpha(x, cap=caps.subset, threads=args.threads)
        eps, _, _ = colorful_epsilon(x, cap=caps.epsilon, threads=args.threads)
        lines.append(f"alpha = {_frac(alpha)}")
        lines.append(f"epsilon = {_frac(eps)}")
        if float(alpha) < alpha_threshold(x.dimension):
            need = theorem_epsilon(x.dimension, alpha)
            if float(eps) < need:
                raise BoundViolated("colorful-from-skeleton", None, float(eps), need)
            lines.append(
                f"colorful-from-skeleton: {float(eps):.12g} >= {need:.12g} PASS"
            )
        else:
            lines.append("colorful-from-skeleton: alpha above threshold, skipped")
        rep = verify_conductance_lemma(x, eps, caps.subset)
        lines.append(f"conductance-lemma: {len(rep.rows)} levels PASS")
        rep = verify_bipartiteness_lemma(x, caps.partition)
        lines.append(f"bipartiteness-lemma: {len(rep.rows)} levels PASS")
        from .certify import bipartiteness_ratio, conductance

        for i in range(x.dimension):
            g = build_igraph(x, i)
            spec = spectrum(normalized_adjacency(g))
            cheeger_check(g, conductance(g, caps.subset), spec)
            if i >= 1:
                trevisan_check(g, bipartiteness_ratio(g, caps.partition), spec)
        lines.append("cheeger/trevisan: PASS")
        if x.dimension > 1:
            rep = mu_vs_spectrum(x, eps=eps, caps=caps, allowance=1e-8)
            lines.append(f"mu-vs-spectrum: {len(rep.rows)} levels PASS")
        for w, eta, c in random_proof_instances(x, args.trials, args.seed):
            verify_proof_trace(x, w, eta, c, alpha=alpha, cap=caps.subset)
        lines.append(f"proof-trace: {args.trials} instances, 0 violations PASS")
    except TooLargeForExact as exc:
        print(f"error: exact-mode cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (BoundViolated, InvalidComplex) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except DisconnectedGraph as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    text = "\n".join(lines) + "\n"
    if args.json:
        text = json.dumps(
            {"version": __version__, "config": config, "report": lines[3:]},
            indent=2,
            sort_keys=True,
        ) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args):
    try:
        if args.family == "complete":
            x = complete_complex(args.n, args.d)
            comment = f"complete n={args.n} d={args.d}"
        elif args.family == "multipartite":
            sizes = [int(s) for s in args.parts.split(",")]
            x = complete_multipartite_complex(sizes)
            comment = f"multipartite parts={args.parts}"
        else:
            x = random_lm_complex(args.n, args.d, args.p, args.seed)
            comment = f"random n={args.n} d={args.d} p={args.p} seed={args.seed}"
    except (HdxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.output:
        write_cplx(x, args.output, comment)
    else:
        from .complexes import format_cplx

        sys.stdout.write(format_cplx(x, comment))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hdxwalk",
        description="High-order random walks and expansion certification "
        "on pure simplicial complexes",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="compute expansion constants")
    _add_common(p)
    p.add_argument("--all", action="store_true",
                   help="also run every bound check")
    p.add_argument("--sampled", action="store_true",
                   help="fall back to flagged estimates above the caps")
    p.add_argument("--skeleton-mixing", action="store_true",
                   help="check the partite skeleton mixing bound")
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("walk", help="exact walk tables and simulation")
    _add_common(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--start", default=None,
                   help="start face as comma-separated vertex labels")
    p.add_argument("--simulate", type=int, default=0,
                   help="number of simulated trajectories to append")
    p.add_argument("--lazy", action="store_true",
                   help="add self-loops (half-lazy walk)")
    p.add_argument("--mixing-check", action="store_true",
                   help="fail (exit 5) instead of skipping on disconnected input")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("verify", help="replay the full theorem chain")
    _add_common(p)
    p.add_argument("--trials", type=int, default=100,
                   help="randomized proof-trace instances")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="emit a .cplx complex")
    p.add_argument("family", choices=["complete", "multipartite", "random"])
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--parts", default="2,2,2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
