"""Command line front end.

    khcli kh DIAGRAM [--ring even|odd|mod2] [--no-simplify] [--window a:b] [--format json|table]
    khcli projector --strands N --twists M [--check-turnbacks] [--trace K] [--explicit]
    khcli verify [--only K ...]

Exit codes: 0 ok, 1 acceptance failure, 2 bad input, 3 resource limit,
4 window outside the stable range.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .complex import simplify, trace
from .cube import build_complex
from .diagrams import DiagramError, builtin, load_pd
from .homology import EVEN, MOD2, ODD, homology
from .projectors import (ResourceLimit, WindowError, check_turnback_killing, p2_explicit,
                         twist_projector)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE, EXIT_WINDOW = 0, 1, 2, 3, 4
MAX_KH_CROSSINGS = 16


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _window(text: Optional[str]) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise CliError(EXIT_INPUT, f"bad window {text!r}, expected hmin:hmax") from None
    if lo > hi:
        raise CliError(EXIT_INPUT, f"empty window {text!r}")
    return lo, hi


def _load(spec: str):
    try:
        if spec.startswith("builtin:"):
            return builtin(spec.split(":", 1)[1])
        return load_pd(spec)
    except FileNotFoundError:
        raise CliError(EXIT_INPUT, f"no such file: {spec}") from None
    except (DiagramError, ValueError) as e:
        raise CliError(EXIT_INPUT, f"cannot parse {spec}: {e}") from None


def _emit(obj: dict, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2)
    return text.rstrip("\n")


# ---------------------------------------------------------------- commands

def cmd_kh(args) -> str:
    d = _load(args.diagram)
    if d.n:
        raise CliError(EXIT_INPUT, "kh needs a closed diagram (n = 0)")
    if d.c > MAX_KH_CROSSINGS and not args.unsafe:
        raise CliError(EXIT_RESOURCE, f"{d.c} crossings exceeds {MAX_KH_CROSSINGS}; use --unsafe")
    C = build_complex(d)
    if not args.no_simplify:
        C = simplify(C)
    H = homology(C, args.ring)
    w = _window(args.window)
    if w:
        H = H.restrict(*w)
    H.meta["diagram"] = d.name or args.diagram
    return _emit(H.to_json(), H.table_text(), args.format)


def cmd_projector(args) -> str:
    n, m = args.strands, args.twists
    if n > 3 and not args.unsafe:
        raise CliError(EXIT_RESOURCE, "more than 3 strands needs --unsafe")
    try:
        if args.explicit:
            if n != 2:
                raise CliError(EXIT_INPUT, "the explicit complex exists for 2 strands only")
            P = p2_explicit(m)
        else:
            P = twist_projector(n, m, args.unsafe)
    except ResourceLimit as e:
        raise CliError(EXIT_RESOURCE, str(e)) from None
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from None
    w = _window(args.window) or P.window
    if w[0] < P.stable_h_window or w[1] > 0:
        raise CliError(EXIT_WINDOW, f"window {w[0]}:{w[1]} leaves the stable range {P.stable_h_window}:0")
    report = P.to_json()
    report["window"] = list(w)
    lines = [f"{P.source} projector, n={n}, {'depth' if args.explicit else 'twists'}={m}, "
             f"stable h >= {P.stable_h_window}, q-shifts > {P.q_bound} trusted"]
    for h, t, q in P.summary():
        lines.append(f"  h={h:4d} q={q:4d}  {t}")
    if args.check_turnbacks:
        verdicts = {f"e{i}": check_turnback_killing(P, i, w) for i in range(1, n)}
        report["turnbacks"] = verdicts
        lines.append("turnbacks killed in window: " + ", ".join(f"{k}={v}" for k, v in verdicts.items()))
    if args.trace:
        k = args.trace
        if not 1 <= k <= n:
            raise CliError(EXIT_INPUT, f"--trace must be between 1 and {n}")
        T = P.complex
        for _ in range(k):
            T = trace(T)
        T = simplify(T)
        if T.n == 0:
            H = homology(T, args.ring).restrict(*w)
            report["trace"] = H.to_json()
            lines.append(f"homology of Tr^{k}, h in [{w[0]}, {w[1]}]:")
            lines.append(H.table_text().rstrip("\n"))
        else:
            report["trace"] = {"n": T.n, "objects": [{"h": h, "tangle": t, "q": q} for h, t, q in T.summary()]}
            lines.append(f"Tr^{k}: {len(T)} objects on {T.n} strands")
    return _emit(report, "\n".join(lines), args.format)


def cmd_verify(args) -> Tuple[str, int]:
    from .acceptance import CRITERIA, run_criterion
    nums = args.only or [k for k, _, _ in CRITERIA]
    results = [run_criterion(k) for k in nums]
    text = "\n".join(r.line() for r in results)
    failed = sum(not r.ok for r in results)
    text += f"\n{len(results) - failed}/{len(results)} criteria pass"
    return text, (EXIT_OK if not failed else EXIT_FAIL)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", choices=[EVEN, ODD, MOD2], default=EVEN)
    common.add_argument("--window", metavar="HMIN:HMAX")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; results never depend on it")
    common.add_argument("--unsafe", action="store_true", help="lift resource limits")
    p = argparse.ArgumentParser(prog="khcli", description="Unified Khovanov homology calculator")
    sub = p.add_subparsers(dest="command", required=True)
    kh = sub.add_parser("kh", parents=[common], help="homology of a closed diagram")
    kh.add_argument("diagram", help="PD JSON file or builtin:NAME")
    kh.add_argument("--no-simplify", action="store_true")
    pr = sub.add_parser("projector", parents=[common], help="truncated projector complexes")
    pr.add_argument("--strands", type=int, required=True)
    pr.add_argument("--twists", type=int, required=True)
    pr.add_argument("--check-turnbacks", action="store_true")
    pr.add_argument("--trace", type=int, default=0)
    pr.add_argument("--explicit", action="store_true", help="use the explicit 2-strand complex")
    ve = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    ve.add_argument("--only", type=int, nargs="*")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--window -5:0" would otherwise read as an option
    for k in range(len(argv) - 1):
        if argv[k] == "--window":
            argv[k:k + 2] = [f"--window={argv[k + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        if args.threads < 1:
            raise CliError(EXIT_INPUT, "--threads must be positive")
        if args.command == "kh":
            out, code = cmd_kh(args), EXIT_OK
        elif args.command == "projector":
            out, code = cmd_projector(args), EXIT_OK
        else:
            out, code = cmd_verify(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except WindowError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_WINDOW
    except ResourceLimit as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
