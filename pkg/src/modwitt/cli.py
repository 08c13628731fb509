"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 invalid input,
3 morphism is not a derivation-automorphism, 4 inconclusive simplicity test.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import autos, liecore, wittree
from .dpalg import DPAlgebra
from .errors import InternalDecompositionFailure, ModWittError, NotDerivationAutomorphism, RingSpecError
from .liecore import SCHEMA_VERSION
from .scalars import is_prime, parse_ring_spec

EXIT_OK, EXIT_INTERNAL, EXIT_BAD_INPUT, EXIT_NOT_DERIVATION_AUTO, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
MAX_DIM = 4096


class BadInput(Exception):
    pass


def _parse_n(text, m):
    try:
        n = [int(v) for v in text.split(",")]
    except ValueError:
        raise BadInput(f"cannot parse n={text!r}; expected comma-separated positive integers")
    if len(n) == 1 and m > 1:
        n = n * m
    if len(n) != m:
        raise BadInput(f"n has {len(n)} entries but m={m}")
    if any(v < 1 for v in n):
        raise BadInput("entries of n must be positive")
    return tuple(n)


def _shape(args, small_p_ok=False):
    p, m = args.p, args.m
    if not is_prime(p):
        raise BadInput(f"p={p} is not prime")
    if p <= 3 and not small_p_ok:
        raise BadInput(f"p={p} is not supported (need p > 3)")
    if m < 1:
        raise BadInput("m must be at least 1")
    n = _parse_n(args.n, m)
    size = p ** sum(n)
    if m * size > MAX_DIM:
        raise BadInput(f"W({m};{list(n)}) at p={p} has dimension {m * size}, above the supported {MAX_DIM}")
    return p, m, n


def _header(command, **extra):
    out = {"schema_version": SCHEMA_VERSION, "command": command}
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bracket_table(args):
    p, m, n = _shape(args, small_p_ok=args.allow_small_p)
    L = liecore.witt_algebra(p, m, n, allow_small_p=args.allow_small_p)
    return EXIT_OK, L.to_json()


def cmd_derivation_dim(args):
    p, m, n = _shape(args)
    L = liecore.witt_algebra(p, m, n)
    D = liecore.derivation_algebra(L)
    expected = m * p ** sum(n) + sum(v - 1 for v in n)
    return EXIT_OK, _header(
        "derivation-dim", p=p, m=m, n=list(n), witt_dim=L.dim, derivation_dim=D.dim,
        formula_dim=expected, matches_formula=D.dim == expected,
    )


def cmd_simplicity(args):
    p, m, n = _shape(args)
    L = liecore.witt_algebra(p, m, n)
    rep = liecore.is_simple(L, seed=args.seed)
    out = _header("simplicity", p=p, m=m, n=list(n), dim=L.dim, simple=rep.simple,
                  status=rep.status, certificate=rep.certificate)
    return (EXIT_INCONCLUSIVE if rep.status == "inconclusive" else EXIT_OK), out


def _load_morphism(alg, path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read morphism file: {exc}")
    images = data["images"] if isinstance(data, dict) else data
    if len(images) != len(alg.generators):
        raise BadInput(f"expected {len(alg.generators)} generator images, got {len(images)}")
    try:
        return autos.AlgebraMorphism.from_json(alg, images)
    except (KeyError, TypeError, IndexError) as exc:
        raise BadInput(f"malformed generator image: {exc}")


def cmd_decompose(args):
    p, m, n = _shape(args)
    R = parse_ring_spec(args.ring)
    if R.p != p:
        raise BadInput(f"ring {args.ring} does not have characteristic {p}")
    if not R.is_finite:
        raise BadInput("decompose needs a finite scalar ring")
    alg = DPAlgebra(p, m, n, R)
    if args.morphism:
        phi = _load_morphism(alg, args.morphism)
        source = {"morphism_file": args.morphism}
    else:
        phi = autos.random_derivation_automorphism(args.seed, alg)
        source = {"seed": args.seed}
    try:
        dec = autos.triangulate(phi)
    except NotDerivationAutomorphism as exc:
        return EXIT_NOT_DERIVATION_AUTO, _header(
            "decompose", p=p, m=m, n=list(n), ring=R.spec, error=str(exc), derivation_automorphism=False
        )
    verified = dec.reassemble() == phi
    out = _header("decompose", p=p, m=m, n=list(n), ring=R.spec, **source)
    out.update({"morphism": phi.to_json(), "decomposition": dec.to_json(), "verified": verified})
    return EXIT_OK, out


def cmd_wittree_verify(args):
    p = args.p
    if not is_prime(p) or p <= 3:
        raise BadInput(f"p={p} must be a prime above 3")
    extra = {}
    if args.form == "ree":
        c = wittree.ree_form(p)
    elif args.form == "mult":
        q = p ** args.k
        lambdas = [int(v) for v in args.lambdas.split(",")] if args.lambdas else [1]
        c = wittree.multiplicative_form(q, lambdas)
    else:
        m = args.m
        n = _parse_n(args.n, m)
        c = wittree.witt_candidate(p, m, n)
    report = wittree.verify_witt_ree(c)
    out = _header("wittree-verify", form=args.form, p=p)
    out["report"] = report.to_json()
    if len(c.derivations) == 1:
        rec = wittree.recognize_w1n(c, seed=args.seed)
        out["split"] = isinstance(rec, wittree.W1nIsomorphism)
        out["recognition"] = rec.to_json()
        if not out["split"] and args.form == "ree":
            tr = wittree.trivialize_insep(c)
            extra["trivialization"] = tr.to_json()
            rec2 = wittree.recognize_w1n(tr.candidate, seed=args.seed)
            extra["split_after_trivialization"] = isinstance(rec2, wittree.W1nIsomorphism)
    out.update(extra)
    out["pass"] = report.verdict
    return EXIT_OK, out


def cmd_selftest(args):
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as exc:  # report, keep going
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        checks.append({"check": name, "pass": ok})

    check("dim W(1;(1)) = 5", lambda: liecore.witt_algebra(5, 1, (1,)).dim == 5)
    check("dim Der W(1;(2)) = 26",
          lambda: liecore.derivation_algebra(liecore.witt_algebra(5, 1, (2,))).dim == 26)
    check("W(1;(1)) simple at p=5", lambda: liecore.is_simple(liecore.witt_algebra(5, 1, (1,))).simple)
    check("brackets agree with operator commutators", lambda: all(
        a == b for a, b in zip(liecore.witt_algebra(5, 1, (2,)).ads,
                               liecore.witt_operator_algebra(5, 1, (2,)).ads)))

    def tri():
        alg = DPAlgebra(5, 1, (2,), parse_ring_spec("F5[e;1]"))
        for seed in range(3):
            phi, dec = autos.random_derivation_automorphism(seed, alg, components=True)
            if autos.triangulate(phi) != dec:
                return False
        return True

    check("triangulation round trip", tri)

    def ree():
        c = wittree.ree_form(5)
        if not wittree.verify_witt_ree(c).verdict:
            return False
        if not isinstance(wittree.recognize_w1n(c), wittree.NonSplitCertificate):
            return False
        return isinstance(wittree.recognize_w1n(wittree.trivialize_insep(c).candidate), wittree.W1nIsomorphism)

    check("inseparable form splits after base change", ree)
    ok = all(c["pass"] for c in checks)
    return (EXIT_OK if ok else EXIT_INTERNAL), _header("selftest", checks=checks, passed=ok)


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _add_shape(sp, n_default="1"):
    sp.add_argument("-p", type=int, required=True, help="characteristic (prime)")
    sp.add_argument("-m", type=int, default=1, help="number of variables")
    sp.add_argument("-n", default=n_default, help="comma-separated heights n_i (one value is broadcast)")


def _add_output_flags(ap, fmt_default, out_default):
    ap.add_argument("--format", choices=["json", "text"], default=fmt_default)
    ap.add_argument("-o", "--output", default=out_default, help="write the result here instead of stdout")


def build_parser():
    ap = argparse.ArgumentParser(prog="modwitt", description="Generalized Witt algebras in characteristic p.")
    _add_output_flags(ap, "json", None)
    # the same flags are also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _add_output_flags(common, argparse.SUPPRESS, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)
    _orig = sub.add_parser
    sub.add_parser = lambda *a, **kw: _orig(*a, parents=[common], **kw)

    sp = sub.add_parser("bracket-table", help="structure constants of W(m;n)")
    _add_shape(sp)
    sp.add_argument("--allow-small-p", action="store_true", help="permit p <= 3")
    sp.set_defaults(func=cmd_bracket_table)

    sp = sub.add_parser("decompose", help="triangular decomposition of an automorphism")
    _add_shape(sp)
    sp.add_argument("--ring", default=None, help="scalar ring, e.g. F5, F5^2, F5[e;1] (default F<p>)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--morphism", help="JSON file with generator images")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("simplicity", help="simplicity test with certificate")
    _add_shape(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_simplicity)

    sp = sub.add_parser("derivation-dim", help="dimension of the derivation algebra")
    _add_shape(sp)
    sp.set_defaults(func=cmd_derivation_dim)

    sp = sub.add_parser("wittree-verify", help="Witt-Ree conditions and recognition of a form")
    sp.add_argument("--form", choices=["ree", "mult", "witt"], default="witt")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-k", type=int, default=1, help="field degree for --form mult")
    sp.add_argument("--lambdas", help="comma-separated eigenvalue codes for --form mult")
    sp.add_argument("-m", type=int, default=1)
    sp.add_argument("-n", default="1")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_wittree_verify)

    sp = sub.add_parser("selftest", help="quick internal consistency checks")
    sp.set_defaults(func=cmd_selftest)
    return ap


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str, bool)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    elif isinstance(obj, list):
        for v in obj:
            lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "ring", "unset") is None:
        args.ring = f"F{args.p}"
    try:
        code, result = args.func(args)
    except (BadInput, RingSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InternalDecompositionFailure as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ModWittError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Exception as exc:  # never let a traceback escape
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = json.dumps(result, indent=2) if args.format == "json" else _text(result)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
