"""Command line front end.

Every data command is a thin HTTP client: requests go to an in-process
app instance by default, or to a running server when --server is given,
so the CLI and the service cannot drift apart.  Tables render as CSV on
stdout or into --out; compare and fde append a final dist= line.

Exit codes: 0 success, 2 bad flags or parameters, 3 domain violations,
4 bound violations in compare, 5 non-finite solver state, 1 transport or
server failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .series import format_float

EXIT_CODES = {"validation": 2, "domain": 3, "non_finite": 5}

LIFT_CHOICES = ("power_substitution", "none")
FN_CHOICES = ("one", "ln", "pow4", "pow9")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            "expected a comma-separated list of integers"
        ) from exc


def build_parser() -> argparse.ArgumentParser:
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs in-process",
    )

    operator = argparse.ArgumentParser(add_help=False, parents=[base])
    operator.add_argument("--kind", required=True,
                          choices=("integral", "derivative"))
    operator.add_argument("--side", default="left", choices=("left", "right"))
    operator.add_argument("--alpha", required=True, type=float)
    operator.add_argument("--a", default=1.0, type=float)
    operator.add_argument("--b", default=10.0, type=float)
    operator.add_argument("--fn", default=None, choices=FN_CHOICES)
    operator.add_argument("--table", default=None,
                          help="CSV file with t,x columns to use as the function")
    operator.add_argument("--points", default=200, type=int)
    operator.add_argument("--panels", default=64, type=int)
    operator.add_argument("--nodes-per-panel", default=8, type=int)
    operator.add_argument("--lift", default="power_substitution",
                          choices=LIFT_CHOICES)
    operator.add_argument("--out", default=None, help="write CSV here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="hadamard-frac",
        description="Hadamard fractional operators via integer-order expansions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_approx = sub.add_parser("approx", parents=[operator],
                              help="evaluate the expansion along a grid")
    p_approx.add_argument("--n", required=True, type=int)
    p_approx.add_argument("--N", required=True, type=int)
    p_approx.set_defaults(func=_cmd_approx)

    p_compare = sub.add_parser("compare", parents=[operator],
                               help="expansion vs reference with error bound")
    p_compare.add_argument("--n", required=True, type=int)
    p_compare.add_argument("--N", required=True, type=int)
    p_compare.add_argument("--reference", default="auto",
                           choices=("auto", "closed", "quad"))
    p_compare.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", parents=[operator],
                             help="dist over a grid of (n, N) pairs")
    p_sweep.add_argument("--n-list", required=True, type=_int_list)
    p_sweep.add_argument("--N-list", required=True, type=_int_list)
    p_sweep.add_argument("--reference", default="auto",
                         choices=("auto", "closed", "quad"))
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fde = sub.add_parser("fde", parents=[base],
                           help="solve the demo fractional equation")
    p_fde.add_argument("--N", default=2, type=int)
    p_fde.add_argument("--steps", default=10_000, type=int)
    p_fde.add_argument("--delta", default=1e-4, type=float)
    p_fde.add_argument("--t-end", default=3.0, type=float)
    p_fde.add_argument("--c", default=1.0, type=float)
    p_fde.add_argument("--x0", default=0.0, type=float)
    p_fde.add_argument("--dump-states", action="store_true")
    p_fde.add_argument("--out", default=None,
                       help="write CSV here instead of stdout")
    p_fde.set_defaults(func=_cmd_fde)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", default=8000, type=int)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def _client(args):
    if args.server is None:
        from fastapi.testclient import TestClient

        from .service.app import create_app

        return TestClient(create_app(), raise_server_exceptions=False)
    import httpx

    return httpx.Client(base_url=args.server, timeout=600.0)


def _operator_payload(args) -> dict:
    table_text = None
    if args.table is not None:
        try:
            table_text = Path(args.table).read_text(encoding="utf-8")
        except OSError as exc:
            raise SystemExit(_fail(f"cannot read table file: {exc}", 2))
    return {
        "kind": args.kind,
        "side": args.side,
        "alpha": args.alpha,
        "a": args.a,
        "b": args.b,
        "fn": args.fn,
        "table": table_text,
        "points": args.points,
        "panels": args.panels,
        "nodes_per_panel": args.nodes_per_panel,
        "lift": args.lift,
    }


def _fail(message: str, code: int) -> int:
    sys.stderr.write(message + "\n")
    return code


def _fail_from_response(resp) -> int:
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = None
    if resp.status_code == 422:
        return _fail(f"invalid request: {detail}", 2)
    if resp.status_code == 400 and isinstance(detail, dict):
        code = detail.get("code", "")
        message = detail.get("message", "")
        return _fail(f"error ({code}): {message}", EXIT_CODES.get(code, 1))
    return _fail(f"server error: HTTP {resp.status_code}", 1)


def _emit(table, out: str | None) -> None:
    text = table.to_csv()
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_approx(args) -> int:
    from .service.schemas import TableResponse

    resp = _client(args).post(
        "/approx", json=_operator_payload(args) | {"n": args.n, "N": args.N}
    )
    if resp.status_code != 200:
        return _fail_from_response(resp)
    _emit(TableResponse.model_validate(resp.json()).to_table(), args.out)
    return 0


def _cmd_compare(args) -> int:
    from .service.schemas import CompareResponse

    payload = _operator_payload(args) | {
        "n": args.n, "N": args.N, "reference": args.reference,
    }
    resp = _client(args).post("/compare", json=payload)
    if resp.status_code != 200:
        return _fail_from_response(resp)
    body = CompareResponse.model_validate(resp.json())
    _emit(body.to_table(), args.out)
    sys.stdout.write(f"dist={format_float(body.dist)}\n")
    if body.violations > 0:
        return _fail(
            f"{body.violations} of {len(body.rows)} points exceed the bound", 4
        )
    return 0


def _cmd_sweep(args) -> int:
    from .service.schemas import TableResponse

    payload = _operator_payload(args) | {
        "n_list": args.n_list, "N_list": args.N_list,
        "reference": args.reference,
    }
    resp = _client(args).post("/sweep", json=payload)
    if resp.status_code != 200:
        return _fail_from_response(resp)
    _emit(TableResponse.model_validate(resp.json()).to_table(), args.out)
    return 0


def _cmd_fde(args) -> int:
    from .service.schemas import FdeResponse

    payload = {
        "N": args.N, "steps": args.steps, "delta": args.delta,
        "t_end": args.t_end, "c": args.c, "x0": args.x0,
        "dump_states": args.dump_states,
    }
    resp = _client(args).post("/fde", json=payload)
    if resp.status_code != 200:
        return _fail_from_response(resp)
    body = FdeResponse.model_validate(resp.json())
    _emit(body.to_table(), args.out)
    sys.stdout.write(f"dist={format_float(body.dist)}\n")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except Exception as exc:  # transport failures, unreachable server
        return _fail(f"request failed: {exc}", 1)


if __name__ == "__main__":
    sys.exit(main())
