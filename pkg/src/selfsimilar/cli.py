"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed (the report says which),
2 usage or parse error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from .arith.fields import field_from_modulus
from .arith.unipoly import UniPoly, squarefree_decomposition
from .freealg import PolyParseError, format_poly, parse_poly
from .langunits import (
    ClosureError,
    DepthCapError,
    StateBudgetError,
    UnitPolicy,
    build_automaton,
    compute_mu_nu,
    count_table_csv,
    omega_construct,
)
from .selfsim import (
    LevelCapError,
    MorphismParams,
    act_word,
    parse_letters,
    psi_iter,
    rle_correspondence_check,
)
from .spectra import (
    c_k,
    chebyshev_root_witness,
    nilpotency_conjecture,
    parity_image,
    verify_recurrence,
)

EXIT_OK, EXIT_FINDING, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text.encode())
    else:
        sys.stdout.write(text)


def thread_count(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("SELFSIM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"SELFSIM_THREADS must be an integer, got {env!r}")
    return 1


def _field(args):
    try:
        return field_from_modulus(args.field)
    except ValueError as exc:
        raise UsageError(str(exc))


def _prime_field(args):
    f = _field(args)
    if not f.is_prime_field:
        raise UsageError("this command needs a prime field (--field p)")
    return f


def _poly(args, text, field=None):
    return parse_poly(text, field or _field(args))


def factored(c: UniPoly) -> str:
    """``(t^2 - 1)*t^2``-style product from the squarefree decomposition."""
    parts = []
    lead = c.lead
    dec = sorted(squarefree_decomposition(c), key=lambda fm: (fm[1] != 1, fm[0].degree))
    for f, m in dec:
        body = f.format()
        if f != UniPoly([0, 1]):
            body = f"({body})"
        parts.append(body if m == 1 else f"{body}^{m}")
    if lead != 1 or not parts:
        parts.insert(0, str(lead))
    return "*".join(parts)


# ---------- commands

def cmd_act(args) -> int:
    s = _poly(args, args.poly)
    emit(args, format_poly(act_word(s, parse_letters(args.word))) + "\n")
    return EXIT_OK


def cmd_psi(args) -> int:
    s = _poly(args, args.poly)
    m = psi_iter(s, args.level, MorphismParams(*args.params), allow_large=args.allow_large)
    emit(args, "\n".join(" | ".join(format_poly(p) for p in row) for row in m.rows) + "\n")
    return EXIT_OK


def cmd_automaton(args) -> int:
    s = _poly(args, args.poly, _prime_field(args))
    aut = build_automaton(s, UnitPolicy(args.policy), args.max_states)
    fmt = args.format or "dot"
    if fmt not in ("dot", "json"):
        raise UsageError("automaton supports --format dot|json")
    emit(args, aut.to_dot() if fmt == "dot" else aut.to_json())
    return EXIT_OK


def cmd_count(args) -> int:
    s = _poly(args, args.poly, _prime_field(args))
    policy = UnitPolicy(args.policy)
    aut = build_automaton(s, policy, args.max_states)
    model = compute_mu_nu(s, policy, depth_cap=args.depth_cap, aut=aut)
    counts = aut.count_series(args.kmax)
    emit(args, count_table_csv(model, enumerate(counts)))
    summary = json.dumps(model.to_dict())
    print(summary, file=sys.stdout if args.out else sys.stderr)
    ok = model.law_holds and all(c == model.predicted(k) for k, c in enumerate(counts) if k >= model.k_s)
    return EXIT_OK if ok else EXIT_FINDING


def cmd_mu_construct(args) -> int:
    try:
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {args.alpha!r}")
    try:
        s = omega_construct(alpha, _prime_field(args))
    except ValueError as exc:
        raise UsageError(str(exc))
    model = compute_mu_nu(s, depth_cap=args.depth_cap, max_states=args.max_states)
    ok = model.mu == alpha and model.law_holds
    emit(args, format_poly(s) + "\n")
    print(f"mu = {model.mu} nu = {model.nu} k_s = {model.k_s} "
          f"{'verified' if ok else 'MISMATCH'}", file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK if ok else EXIT_FINDING


def cmd_charpoly(args) -> int:
    c = c_k(args.k, allow_large=args.allow_large)
    emit(args, f"{c.format()}\n{factored(c)}\n")
    return EXIT_OK


def cmd_spectra_verify(args) -> int:
    rows = []
    cache: dict[int, UniPoly] = {}
    ok = True
    for k in range(0, args.kmax + 1):
        cache[k] = c = c_k(k, allow_large=args.allow_large)
        row = {"k": k, "degree": c.degree, "monic": c.is_monic(),
               "root_at_1": c(1) == 0, "charpoly": c.format()}
        row["root_at_minus_1"] = c(-1) == 0 if k >= 1 else None
        if k >= 2:
            row["recurrence"] = verify_recurrence(k, cache).holds
        if k >= 1:
            v = chebyshev_root_witness(k, c)
            row["chebyshev"] = v.holds
            row["factors"] = [{"factor": f.factor.format(), "multiplicity": f.multiplicity,
                               "witness_m": f.witness_m} for f in v.factors]
        good = (row["degree"] == 2 ** k and row["monic"] and row["root_at_1"]
                and row["root_at_minus_1"] is not False
                and row.get("recurrence", True) and row.get("chebyshev", True))
        row["ok"] = bool(good)
        ok &= row["ok"]
        rows.append(row)
    emit(args, json.dumps(rows, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FINDING


def _nil_cell(abk):
    return nilpotency_conjecture(*abk).to_dict()


def cmd_nilpotency(args) -> int:
    if args.grid:
        cells = [(a, b, k) for a in range(args.a + 1) for b in range(args.b + 1)
                 for k in range(args.kmin, args.kmax + 1)]
    else:
        cells = [(args.a, args.b, k) for k in range(args.kmin, args.kmax + 1)]
    for _, _, k in cells:
        if k > 12:
            raise LevelCapError(f"level {k} exceeds the cap 12")
    workers = thread_count(args)
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_nil_cell, cells))
    else:
        rows = [_nil_cell(c) for c in cells]
    emit(args, json.dumps(rows, indent=2) + "\n")
    ok = all(r["integral"] and r["index"] is not None for r in rows)
    return EXIT_OK if ok else EXIT_FINDING


def cmd_parity_image(args) -> int:
    img = parity_image(args.a, args.b, args.k, args.power)
    fmt = args.format or "pbm"
    if fmt not in ("pbm", "p1"):
        raise UsageError("parity-image supports --format pbm|p1")
    write_atomic(args.output, img.to_pbm(binary=(fmt == "pbm")))
    print(json.dumps({"path": args.output, "width": img.width, "height": img.height,
                      "black": img.black_count(), "sha256": img.sha256()}))
    return EXIT_OK


def _word_arg(text: str) -> str:
    text = text.strip()
    if text and not text.strip("xy"):
        return text
    p = parse_poly(text)
    if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
        raise UsageError(f"expected a single monomial, got {text!r}")
    (w,) = p.terms
    return w


def cmd_rle(args) -> int:
    z = _word_arg(args.word)
    try:
        v = rle_correspondence_check(z, MorphismParams(args.a, args.b))
    except ValueError as exc:
        raise UsageError(str(exc))
    out = v.to_dict()
    out["runs_text"] = ",".join(map(str, v.runs))
    emit(args, json.dumps(out, indent=2) + "\n")
    return EXIT_OK if v.holds else EXIT_FINDING


# ---------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=2, metavar="P",
                        help="coefficient field F_P; 0 selects Q (default 2)")
    common.add_argument("--params", type=int, nargs=2, default=[1, 0], metavar=("A", "B"),
                        help="morphism parameters a b (default 1 0)")
    common.add_argument("--policy", choices=[p.value for p in UnitPolicy], default="scalar")
    common.add_argument("--max-states", type=int, default=200_000)
    common.add_argument("--depth-cap", type=int, default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--format", choices=["dot", "json", "csv", "pbm", "p1"], default=None)
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--allow-large", action="store_true",
                        help="lift the dimension caps (k <= 12, charpoly k <= 8)")

    parser = argparse.ArgumentParser(prog="selfsim", parents=[common],
                                     description="Self-similar algebras over free algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("act", cmd_act, "apply a letter word to a polynomial")
    p.add_argument("poly")
    p.add_argument("word", help='letters like "(0,0)(1,1)(0,1)"')

    p = add("psi", cmd_psi, "print psi^(k)_{a,b}(s)")
    p.add_argument("poly")
    p.add_argument("--level", type=int, default=1)

    p = add("automaton", cmd_automaton, "export the unit automaton")
    p.add_argument("poly")

    p = add("count", cmd_count, "count accepted words and fit mu, nu")
    p.add_argument("poly")
    p.add_argument("kmax", type=int)

    p = add("mu-construct", cmd_mu_construct, "build s with mu(s) = alpha (dyadic)")
    p.add_argument("alpha")

    p = add("charpoly", cmd_charpoly, "characteristic polynomial C_k of M_k(1,0)")
    p.add_argument("k", type=int)

    p = add("spectra-verify", cmd_spectra_verify, "check C_0..C_kmax")
    p.add_argument("kmax", type=int)

    p = add("nilpotency", cmd_nilpotency, "nilpotency index of 2 M_k(a,b) mod 2")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("kmax", type=int)
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--grid", action="store_true", help="sweep all 0..a x 0..b")

    p = add("parity-image", cmd_parity_image, "PBM of (2 M_k(a,b))^power mod 2")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("k", type=int)
    p.add_argument("power", type=int)
    p.add_argument("output")

    p = add("rle", cmd_rle, "run-length encoding correspondence for a word")
    p.add_argument("word")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PolyParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LevelCapError, StateBudgetError, DepthCapError) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ClosureError as exc:
        print(json.dumps({"finding": str(exc)}))
        return EXIT_FINDING
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
