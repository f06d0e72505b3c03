"""Command-line front end for the certificate workflows.

Exit codes: 0 success, 1 a check or verification failed, 2 usage error,
precondition violation or I/O problem. Certificates written by `rewrite`
and `decompose` are always re-read from disk before verification, so the
checker never trusts in-memory state.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import decomposer, jsonio
from .chernring import verify_relations
from .decomposer import (
    DegreeTooSmallError,
    TermCapExceededError,
    decompose,
    degree_bound,
    enumerate_vanishing,
    verify_decomposition,
)
from .geometry import (
    NonGenericTupleError,
    TemplateMismatchError,
    check_generic,
    derive_prop_collection,
    match_nozeros,
    verify_emptiness,
)
from .rewriter import RewritePreconditionError, rewrite, verify_rewrite

USAGE_ERROR = 2
CHECK_FAILED = 1


@dataclass
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    g: Optional[int] = None
    n: Optional[int] = None
    out: Optional[Path] = None
    cap: int = decomposer.DEFAULT_TERM_CAP
    limit: Optional[int] = None
    seed: Optional[int] = None
    verbose: bool = False


def _config(args) -> RunConfig:
    cfg = RunConfig(
        g=getattr(args, "g", None),
        n=getattr(args, "n", None),
        out=Path(args.out) if getattr(args, "out", None) else None,
        cap=getattr(args, "cap", decomposer.DEFAULT_TERM_CAP),
        limit=getattr(args, "limit", None),
        seed=getattr(args, "seed", None),
        verbose=getattr(args, "verbose", False),
    )
    if cfg.g is not None and cfg.g < 2:
        raise ValueError(f"genus must be >= 2, got {cfg.g}")
    if cfg.n is not None and cfg.n < 1:
        raise ValueError(f"puncture count must be >= 1, got {cfg.n}")
    if cfg.cap < 1:
        raise ValueError(f"term cap must be positive, got {cfg.cap}")
    if cfg.limit is not None and cfg.limit < 1:
        raise ValueError(f"enumeration limit must be positive, got {cfg.limit}")
    return cfg


def _emit(obj: dict, out: Optional[Path]) -> None:
    text = jsonio.dumps(obj)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def cmd_relations(args) -> int:
    if args.n < 1:
        print(f"error: puncture count must be >= 1, got {args.n}", file=sys.stderr)
        return USAGE_ERROR
    report = verify_relations(args.n, mutate=args.mutate)
    width = max(len(c.family) for c in report.checks)
    for check in report.checks:
        status = "ok" if check.ok else f"FAIL  witness = {check.witness!r}"
        print(f"{check.family:<{width}}  q={check.q}  {str(check.indices):<11} {status}")
    total = len(report.checks)
    bad = len(report.failures())
    print(f"{total - bad}/{total} relation instances hold")
    return 0 if report.all_ok else CHECK_FAILED


def cmd_rewrite(args) -> int:
    cfg = _config(args)
    a, b, c = args.abc
    try:
        cert = rewrite(args.q, a, b, c, args.d)
    except (RewritePreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    reread = _write_and_reread(
        jsonio.rewrite_cert_to_obj(cert), cfg.out, jsonio.rewrite_cert_from_obj
    )
    check = verify_rewrite(reread)
    if not check:
        print(f"verification failed: {check.reason}", file=sys.stderr)
        return CHECK_FAILED
    if cfg.verbose:
        print(f"certificate verified: ({a},{b},{c}) at depth {args.d}", file=sys.stderr)
    return 0


def _write_and_reread(obj: dict, out: Optional[Path], reader):
    """Write the certificate, then re-read it from disk for verification.

    Without --out the payload still takes a round trip through a temporary
    file (deleted afterwards) and is printed to stdout.
    """
    if out is not None:
        _emit(obj, out)
        return reader(jsonio.read_file(out))
    handle = tempfile.NamedTemporaryFile("w", suffix=".json", prefix="cherncert-", delete=False)
    tmp = Path(handle.name)
    handle.close()
    try:
        _emit(obj, None)
        _emit(obj, tmp)
        return reader(jsonio.read_file(tmp))
    finally:
        tmp.unlink(missing_ok=True)


def _random_exponents(g: int, n: int, seed: int) -> dict:
    """Random exponent map with total degree exactly 6g + 4n - 5."""
    rng = random.Random(seed)
    slots = [(q, i, j) for q in range(1, n + 1) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
    out: dict = {}
    for _ in range(degree_bound(g, n)):
        key = rng.choice(slots)
        out[key] = out.get(key, 0) + 1
    return out


def cmd_decompose(args) -> int:
    cfg = _config(args)
    if args.exponents is None and cfg.seed is None:
        print("error: provide --exponents FILE or --seed for a random map", file=sys.stderr)
        return USAGE_ERROR
    if args.exponents is not None:
        exponents = jsonio.exponent_map_from_obj(jsonio.read_file(args.exponents))
    else:
        exponents = _random_exponents(args.g, args.n, cfg.seed)
    try:
        cert = decompose(args.g, args.n, exponents, cap=cfg.cap)
    except DegreeTooSmallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except TermCapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    reread = _write_and_reread(
        jsonio.decomposition_cert_to_obj(cert), cfg.out, jsonio.decomposition_cert_from_obj
    )
    check = verify_decomposition(reread)
    if not check:
        print(f"verification failed: {check.reason}", file=sys.stderr)
        return CHECK_FAILED
    if cfg.verbose:
        print(
            f"certificate verified: {len(cert.terms)} terms, total degree {cert.total_degree}",
            file=sys.stderr,
        )
    return 0


def cmd_verify(args) -> int:
    obj = jsonio.read_file(args.cert)
    if not isinstance(obj, dict):
        print("error: certificate file must hold a JSON object", file=sys.stderr)
        return USAGE_ERROR
    keys = set(obj)
    if keys == {"q", "abc", "d", "phis"}:
        check = verify_rewrite(jsonio.rewrite_cert_from_obj(obj))
        kind = "rewrite"
        reason = check.reason
    elif keys == {"g", "n", "exponents", "terms"}:
        check = verify_decomposition(jsonio.decomposition_cert_from_obj(obj))
        kind = "decomposition"
        reason = check.reason
    elif "selections" in keys:
        check = verify_emptiness(jsonio.emptiness_cert_from_obj(obj))
        kind = "emptiness"
        reason = check.reason
    else:
        print(f"error: unrecognized certificate shape with keys {sorted(keys)}", file=sys.stderr)
        return USAGE_ERROR
    if check:
        print(f"{kind} certificate: valid")
        return 0
    print(f"{kind} certificate: INVALID ({reason})")
    return CHECK_FAILED


def cmd_generic(args) -> int:
    tup = jsonio.torus_tuple_from_obj(jsonio.read_file(args.tuple))
    report = check_generic(tup)
    _emit(
        {
            "generic": report.is_generic,
            "distinct_rotations": list(report.distinct_ok),
            "witnesses": [
                {"selection": list(sel), "sum": jsonio.frac_str(total)}
                for sel, total in report.zero_product_selections
            ],
        },
        None,
    )
    return 0 if report.is_generic else CHECK_FAILED


def cmd_vanishing(args) -> int:
    cfg = _config(args)
    for zeta in enumerate_vanishing(args.g, args.n, limit=cfg.limit):
        sys.stdout.write(jsonio.dumps(jsonio.vanishing_to_obj(zeta)))
    return 0


def cmd_sections(args) -> int:
    cfg = _config(args)
    zeta = jsonio.vanishing_from_obj(jsonio.read_file(args.zeta), g=args.g, n=args.n)
    if zeta.g != args.g or zeta.n != args.n:
        print(
            f"error: zeta context ({zeta.g},{zeta.n}) disagrees with flags ({args.g},{args.n})",
            file=sys.stderr,
        )
        return USAGE_ERROR
    tup = jsonio.torus_tuple_from_obj(jsonio.read_file(args.tuple))
    moves, final = derive_prop_collection(zeta, args.l)
    try:
        cert = match_nozeros(final, tup)
    except (NonGenericTupleError, TemplateMismatchError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    _emit(jsonio.emptiness_cert_to_obj(cert), cfg.out)
    if cfg.verbose:
        for m in moves:
            print(
                f"switch: bundle {m.src} (perm {m.perm_src}) -> bundle {m.dst} (perm {m.perm_dst})",
                file=sys.stderr,
            )
        print(
            f"collection of {final.size} sections accepted; "
            f"{len(cert.selections)} admissible selections checked",
            file=sys.stderr,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cherncert",
        description="Produce and check vanishing certificates for pair-class monomials.",
    )
    parser.add_argument("--verbose", action="store_true", help="extra progress output on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relations", help="verify the five relation families")
    p.add_argument("--n", type=int, required=True, help="number of punctures")
    p.add_argument("--mutate", action="store_true", help="inject one false relation (test hook)")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("rewrite", help="pivot-decompose one puncture monomial")
    p.add_argument("--q", type=int, default=1, help="puncture index (default 1)")
    p.add_argument("--abc", type=int, nargs=3, required=True, metavar=("A", "B", "C"))
    p.add_argument("--d", type=int, required=True, help="pivot depth")
    p.add_argument("--out", help="certificate output file (default: stdout + temp file)")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("decompose", help="decompose a global monomial into vanishing terms")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exponents", help="JSON file {\"exponents\":[[q,i,j,d],...]}")
    p.add_argument("--seed", type=int, help="draw a random map at the degree bound instead")
    p.add_argument("--out", help="certificate output file (default: stdout + temp file)")
    p.add_argument("--cap", type=int, default=decomposer.DEFAULT_TERM_CAP, help="term-count cap")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="re-verify a certificate file from disk")
    p.add_argument("--cert", required=True, help="certificate JSON file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generic", help="check a torus tuple for genericity")
    p.add_argument("--tuple", required=True, help="torus tuple JSON file")
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("vanishing", help="enumerate known-vanishing pivot monomials")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, help="stop after this many monomials")
    p.set_defaults(func=cmd_vanishing)

    p = sub.add_parser("sections", help="derive a witness collection and certify emptiness")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--zeta", required=True, help="vanishing monomial JSON file")
    p.add_argument("--l", type=int, required=True, help="base puncture")
    p.add_argument("--tuple", required=True, help="torus tuple JSON file")
    p.add_argument("--out", help="emptiness certificate output file")
    p.set_defaults(func=cmd_sections)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
