"""Command-line client for the toolkit.

Thin by construction: every subcommand builds the same request model the HTTP
service consumes and either executes it in process or, with ``--server URL``,
posts it to a running service.  Output is deterministic JSON (and trajectory
CSV files); errors map to documented exit codes:

    0 success
    1 computation failure
    2 malformed input / bad flags
    3 fractional-power method/shape mismatch
    4 unknown forcing
    5 integration blow-up
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ComputationError, InputFormatError, OdeReduceError
from .serde import dump_json, load_matrix_file
from .service import handlers, schemas

_DEMO_PATHS = {"oscillator": "/demo/oscillator", "thirdorder": "/demo/thirdorder",
               "cascade": "/demo/cascade"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="odereduce",
        description="Reduce semilinear ODE systems, take fractional matrix powers, simulate.",
    )
    parser.add_argument("--server", metavar="URL", default=None,
                        help="send the request to a running service instead of computing locally")
    parser.add_argument("--out", metavar="PATH", default=None,
                        help="write the JSON result to PATH instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_reduce = sub.add_parser("reduce", help="reduce a system matrix to its scalar-side equation")
    p_reduce.add_argument("matrix", help="matrix JSON file")

    p_frac = sub.add_parser("fracpow", help="fractional power of a matrix")
    p_frac.add_argument("matrix", help="matrix JSON file")
    p_frac.add_argument("--alpha", type=float, required=True)
    p_frac.add_argument("--method", choices=["eig", "integral", "explicit2x2", "companion3"],
                        default="eig")

    p_sim = sub.add_parser("simulate", help="integrate X' = AX + F and optionally the reduction")
    p_sim.add_argument("matrix", help="matrix JSON file")
    p_sim.add_argument("--forcing", default="zero")
    p_sim.add_argument("--x0", default=None,
                       help="comma-separated complex literals, defaults to 1,0,...,0")
    p_sim.add_argument("--t0", type=float, default=0.0)
    p_sim.add_argument("--t1", type=float, default=5.0)
    p_sim.add_argument("--step", type=float, default=1e-3)
    p_sim.add_argument("--compare-reduced", action="store_true")
    p_sim.add_argument("--csv", metavar="PATH", default=None, help="write the trajectory CSV here")

    p_demo = sub.add_parser("demo", help="run a worked demonstration")
    demo_sub = p_demo.add_subparsers(dest="demo_name", required=True)

    d_osc = demo_sub.add_parser("oscillator")
    d_osc.add_argument("--omega", type=float, required=True)
    d_osc.add_argument("--alpha", type=float, required=True)
    d_osc.add_argument("--forcing", default="zero")
    d_osc.add_argument("--t0", type=float, default=0.0)
    d_osc.add_argument("--t1", type=float, default=5.0)
    d_osc.add_argument("--step", type=float, default=1e-3)

    d_third = demo_sub.add_parser("thirdorder")
    d_third.add_argument("--beta", type=float, required=True)
    d_third.add_argument("--alpha", type=float, required=True)
    d_third.add_argument("--forcing", default="zero")
    d_third.add_argument("--t0", type=float, default=0.0)
    d_third.add_argument("--t1", type=float, default=5.0)
    d_third.add_argument("--step", type=float, default=1e-3)

    d_casc = demo_sub.add_parser("cascade")
    d_casc.add_argument("--r0", type=float, required=True)
    d_casc.add_argument("--v1", type=float, required=True)
    d_casc.add_argument("--v2", type=float, required=True)
    d_casc.add_argument("--v3", type=float, required=True)
    d_casc.add_argument("--x0", default=None)
    d_casc.add_argument("--t0", type=float, default=0.0)
    d_casc.add_argument("--t1", type=float, default=5.0)
    d_casc.add_argument("--step", type=float, default=1e-3)

    return parser


def _matrix_payload_from_file(path: str) -> schemas.MatrixPayload:
    from .serde import matrix_payload

    return schemas.MatrixPayload(**matrix_payload(load_matrix_file(path)))


def _build_request(args) -> tuple[str, object]:
    """(service path, request model) for the parsed arguments."""
    if args.command == "reduce":
        return "/reduce", schemas.ReduceRequest(matrix=_matrix_payload_from_file(args.matrix))
    if args.command == "fracpow":
        return "/fracpow", schemas.FracPowRequest(
            matrix=_matrix_payload_from_file(args.matrix), alpha=args.alpha, method=args.method
        )
    if args.command == "simulate":
        if not args.step > 0:
            raise InputFormatError(f"--step must be positive, got {args.step}")
        x0 = None if args.x0 is None else [s for s in args.x0.split(",") if s.strip()]
        return "/simulate", schemas.SimulateRequest(
            matrix=_matrix_payload_from_file(args.matrix),
            forcing=args.forcing,
            x0=x0,
            t0=args.t0,
            t1=args.t1,
            step=args.step,
            compare_reduced=args.compare_reduced,
        )
    if args.command == "demo":
        if not args.step > 0:
            raise InputFormatError(f"--step must be positive, got {args.step}")
        if args.demo_name == "oscillator":
            return _DEMO_PATHS["oscillator"], schemas.OscillatorDemoRequest(
                omega=args.omega, alpha=args.alpha, forcing=args.forcing,
                t0=args.t0, t1=args.t1, step=args.step,
            )
        if args.demo_name == "thirdorder":
            return _DEMO_PATHS["thirdorder"], schemas.ThirdOrderDemoRequest(
                beta=args.beta, alpha=args.alpha, forcing=args.forcing,
                t0=args.t0, t1=args.t1, step=args.step,
            )
        x0 = None if args.x0 is None else [s for s in args.x0.split(",") if s.strip()]
        return _DEMO_PATHS["cascade"], schemas.CascadeDemoRequest(
            r0=args.r0, v1=args.v1, v2=args.v2, v3=args.v3, x0=x0,
            t0=args.t0, t1=args.t1, step=args.step,
        )
    raise InputFormatError(f"unknown command {args.command!r}")


_LOCAL_HANDLERS = {
    "/reduce": handlers.handle_reduce,
    "/fracpow": handlers.handle_fracpow,
    "/simulate": handlers.handle_simulate,
    "/demo/oscillator": handlers.handle_demo_oscillator,
    "/demo/thirdorder": handlers.handle_demo_thirdorder,
    "/demo/cascade": handlers.handle_demo_cascade,
}


def _execute(path: str, request, server: str | None) -> dict:
    if server is None:
        return _LOCAL_HANDLERS[path](request).model_dump()
    import httpx

    url = server.rstrip("/") + path
    try:
        response = httpx.post(url, json=request.model_dump(), timeout=300.0)
    except httpx.HTTPError as exc:
        raise ComputationError(f"cannot reach server at {url}: {exc}") from exc
    if response.status_code >= 400:
        try:
            detail = response.json()["error"]
            err = OdeReduceError(detail["message"])
            err.exit_code = int(detail.get("exit_code", 1))
        except (KeyError, ValueError, json.JSONDecodeError):
            err = ComputationError(f"server returned HTTP {response.status_code}")
        raise err
    return response.json()


def _emit(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        path, request = _build_request(args)
        payload = _execute(path, request, args.server)
        if args.command == "simulate":
            csv_text = payload.pop("csv", "")
            if args.csv is not None:
                with open(args.csv, "w", encoding="utf-8") as fh:
                    fh.write(csv_text)
                payload["summary"]["csv_path"] = args.csv
            _emit(dump_json(payload["summary"]), args.out)
        elif args.command == "demo":
            _emit(dump_json(payload["report"]), args.out)
        else:
            _emit(dump_json(payload), args.out)
        return 0
    except OdeReduceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
