"""Command-line client for the alignment service.

Every subcommand builds a JSON request and sends it to the service: by
default through an in-process ASGI transport (no server needed), or to a
running server given ``--server URL``.  File parsing, domain rescaling, and
all output writing stay on the client side, so the file contracts and exit
codes hold in both modes.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 domain error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx
import numpy as np

from . import __version__
from .errors import InputError
from .fileio import (
    SCHEMA_VERSION,
    read_function_csv,
    write_function_csv,
    write_json,
    write_pairs_csv,
)
from .fnspace import Grid, SampledFunction, resample

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3

_INPUT_ERROR_TYPES = {"InputError"}


class ServiceError(Exception):
    def __init__(self, error_type: str, message: str):
        super().__init__(message)
        self.error_type = error_type


async def _request_async(server: str | None, path: str, payload: dict, timeout: float) -> dict:
    if server:
        transport = None
        base = server.rstrip("/")
    else:
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        base = "http://elastic-fda.local"
    async with httpx.AsyncClient(transport=transport, base_url=base, timeout=timeout) as client:
        response = await client.post(path, json=payload)
    body = response.json()
    if response.status_code >= 400:
        err = body.get("error") if isinstance(body, dict) else None
        if err:
            raise ServiceError(err.get("type", "Error"), err.get("message", str(body)))
        raise ServiceError("ValidationError", json.dumps(body))
    return body


def call_service(args, path: str, payload: dict, timeout: float = 600.0) -> dict:
    return asyncio.run(_request_async(args.server, path, payload, timeout))


def _function_payload(f: SampledFunction) -> dict:
    return {"t": f.grid.nodes.tolist(), "values": f.values.tolist()}


def _payload_function(payload: dict) -> SampledFunction:
    return SampledFunction(Grid(payload["t"]), payload["values"])


def _load(args, path) -> SampledFunction:
    return read_function_csv(path, rescale_domain=args.rescale_domain)


def _dp_options(args) -> dict:
    opts: dict = {"grid_size": args.dp_grid_size, "band_width": args.dp_band_width}
    if args.dp_slopes:
        pairs = []
        for token in args.dp_slopes.split(","):
            a, _, b = token.partition(":")
            try:
                pairs.append((int(a), int(b)))
            except ValueError:
                raise InputError(f"bad slope {token!r}; expected A:B like 1:2") from None
        opts["slope_set"] = pairs
    return opts


# --------------------------------------------------------------------------
# subcommands

def cmd_srsf(args) -> int:
    f = _load(args, args.input)
    body = call_service(args, "/srsf", {"f": _function_payload(f)})
    write_pairs_csv(args.output, body["midpoints"], body["q"]["cell_values"], ("t", "q"))
    if args.reconstruct_to:
        recon = call_service(
            args, "/reconstruct", {"q": body["q"], "f0": float(f.values[0])}
        )
        write_function_csv(args.reconstruct_to, _payload_function(recon["f"]))
    print(f"srsf: {len(body['midpoints'])} cells, norm {body['norm']!r} -> {args.output}")
    return EXIT_OK


def _run_one_alignment(args, f1_path, f2_path, json_path, aligned_path, warp_path) -> tuple[int, dict]:
    f1 = _load(args, f1_path)
    f2 = _load(args, f2_path)
    body = call_service(
        args,
        "/align",
        {
            "f1": _function_payload(f1),
            "f2": _function_payload(f2),
            "dp": _dp_options(args),
            "normalize": not args.no_normalize,
        },
    )
    result = {
        "schema_version": SCHEMA_VERSION,
        "command": "align",
        "distance": body["distance"],
        "warp": body["warp"],
        "nodes_expanded": body["nodes_expanded"],
        "config": body["config"],
        "normalized": body["normalized"],
        "constant_function_convention": body["constant_function_convention"],
        "inputs": {"f1": str(f1_path), "f2": str(f2_path)},
    }
    write_json(json_path, result)
    aligned = resample(_payload_function(body["aligned_f2"]), f1.grid)
    write_function_csv(aligned_path, aligned)
    warp = np.asarray(body["warp"])
    write_pairs_csv(warp_path, warp[:, 0], warp[:, 1], ("t", "gamma"))
    code = EXIT_DOMAIN if body["constant_function_convention"] else EXIT_OK
    return code, result


def cmd_align(args) -> int:
    if args.pairs:
        return _run_alignment_batch(args)
    out = Path(args.output)
    aligned_path = args.aligned_csv or out.with_name(out.stem + ".aligned.csv")
    warp_path = args.warp_csv or out.with_name(out.stem + ".warp.csv")
    code, result = _run_one_alignment(args, args.f1, args.f2, out, aligned_path, warp_path)
    note = " (constant-function convention)" if code == EXIT_DOMAIN else ""
    print(f"align: distance {result['distance']!r}{note} -> {out}")
    return code


def _run_alignment_batch(args) -> int:
    pairs_file = Path(args.pairs)
    try:
        lines = [ln.strip() for ln in pairs_file.read_text(encoding="utf-8").splitlines()]
    except FileNotFoundError:
        raise InputError(f"{pairs_file}: file not found") from None
    jobs = []
    for lineno, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise InputError(f"{pairs_file}:{lineno}: expected 'f1.csv,f2.csv,out_prefix'")
        jobs.append(parts)

    async def run_all():
        sem = asyncio.Semaphore(args.jobs)

        async def one(f1,  f2, prefix):
            async with sem:
                return await asyncio.to_thread(
                    _run_one_alignment,
                    args,
                    f1,
                    f2,
                    f"{prefix}.json",
                    f"{prefix}.aligned.csv",
                    f"{prefix}.warp.csv",
                )

        return await asyncio.gather(*(one(*job) for job in jobs))

    results = asyncio.run(run_all())
    worst = max((code for code, _ in results), default=EXIT_OK)
    for (code, result), job in zip(results, jobs):
        print(f"align: {job[0]} vs {job[1]} -> distance {result['distance']!r}")
    return worst


def cmd_fisher_rao(args) -> int:
    f1 = _load(args, args.f1)
    f2 = _load(args, args.f2)
    body = call_service(args, "/fisher-rao", {"f1": _function_payload(f1), "f2": _function_payload(f2)})
    if args.output:
        write_json(args.output, {"schema_version": SCHEMA_VERSION, "command": "fisher-rao", "distance": body["distance"]})
    print(f"fisher-rao: distance {body['distance']!r}")
    return EXIT_OK


def cmd_geodesic(args) -> int:
    f1 = _load(args, args.f1)
    f2 = _load(args, args.f2)
    body = call_service(
        args,
        "/geodesic",
        {
            "f1": _function_payload(f1),
            "f2": _function_payload(f2),
            "steps": args.steps,
            "aligned": args.aligned,
            "dp": _dp_options(args),
        },
    )
    width = max(3, len(str(len(body["steps"]) - 1)))
    for k, step in enumerate(body["steps"]):
        write_function_csv(f"{args.output_prefix}_{k:0{width}d}.csv", _payload_function(step))
    print(f"geodesic: wrote {len(body['steps'])} steps to {args.output_prefix}_*.csv")
    return EXIT_OK


def cmd_constant_speed(args) -> int:
    f = _load(args, args.input)
    body = call_service(args, "/constant-speed", {"f": _function_payload(f)})
    write_function_csv(args.output, _payload_function(body["h"]))
    write_function_csv(args.warp_csv, _payload_function(body["gamma"]))
    print(f"constant-speed: length {body['length']!r}; h -> {args.output}, gamma -> {args.warp_csv}")
    return EXIT_OK


def cmd_cantor(args) -> int:
    body = call_service(args, "/cantor", {"x": args.eval, "digits": args.digits})
    print(f"x = {body['x']}")
    print(f"cantor_function(x) = {body['value']!r} ({body['value_exact']})")
    print(f"ternary: {body['ternary_digits']}")
    print(f"in Cantor set (to {args.digits} digits): {body['in_cantor_set']}")
    if args.output:
        write_json(args.output, {"schema_version": SCHEMA_VERSION, "command": "cantor", **body})
    return EXIT_OK


def cmd_verify(args) -> int:
    dp_m = None
    for token in args.scale or ():
        key, _, value = token.partition("=")
        if key.strip() != "M":
            raise InputError(f"unknown scale key {key!r}; only M=<lattice size> is understood")
        try:
            dp_m = int(value)
        except ValueError:
            raise InputError(f"bad scale value {value!r}") from None
    body = call_service(
        args,
        "/verify",
        {"seed": args.seed, "suites": args.suite or None, "dp_oracle_m": dp_m},
        timeout=3600.0,
    )
    for check in body["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['suite']}.{check['name']}: {check['detail']}")
    if args.output:
        write_json(args.output, body)
    print(f"verify: {'all passed' if body['passed'] else 'FAILURES'} (seed {body['seed']})")
    return EXIT_OK if body["passed"] else EXIT_VERIFY_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elastic-fda",
        description="Elastic functional data analysis: SRSF transforms, alignment, geodesics, Cantor utilities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--server", default=None, help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_rescale(p):
        p.add_argument("--rescale-domain", action="store_true", help="map input abscissae affinely onto [0,1]")

    def add_dp(p):
        p.add_argument("--dp-grid-size", type=int, default=65, metavar="M", help="DP lattice nodes per axis")
        p.add_argument("--dp-slopes", default=None, metavar="A:B,...", help="slope set, e.g. 1:1,1:2,2:1")
        p.add_argument("--dp-band-width", type=int, default=None, metavar="W", help="adaptive band half-width")

    p = sub.add_parser("srsf", help="write the square-root slope function of a CSV function")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="q.csv")
    p.add_argument("--reconstruct-to", default=None, metavar="CSV", help="also reconstruct from q and write here")
    add_rescale(p)
    p.set_defaults(func=cmd_srsf)

    p = sub.add_parser("align", help="elastic alignment of two CSV functions")
    p.add_argument("f1", nargs="?")
    p.add_argument("f2", nargs="?")
    p.add_argument("-o", "--output", default="result.json")
    p.add_argument("--aligned-csv", default=None)
    p.add_argument("--warp-csv", default=None)
    p.add_argument("--no-normalize", action="store_true", help="skip unit-norm normalization of the SRSFs")
    p.add_argument("--pairs", default=None, metavar="LIST", help="batch file: f1.csv,f2.csv,out_prefix per line")
    p.add_argument("--jobs", type=int, default=4, help="concurrent alignments in batch mode")
    add_rescale(p)
    add_dp(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("fisher-rao", help="L2 distance between SRSFs, no warping")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("-o", "--output", default=None)
    add_rescale(p)
    p.set_defaults(func=cmd_fisher_rao)

    p = sub.add_parser("geodesic", help="straight-line geodesic between two functions in SRSF space")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--aligned", action="store_true", help="align the second function first")
    p.add_argument("-o", "--output-prefix", default="geodesic")
    add_rescale(p)
    add_dp(p)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("constant-speed", help="constant-speed factorization f = h o gamma")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="h.csv")
    p.add_argument("--warp-csv", default="gamma.csv")
    add_rescale(p)
    p.set_defaults(func=cmd_constant_speed)

    p = sub.add_parser("cantor", help="Cantor function and Cantor-set membership, exact arithmetic")
    p.add_argument("--eval", required=True, metavar="X", help="point in [0,1]; exact literals like 1/3 work")
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_cantor)

    p = sub.add_parser("verify", help="run the cross-module invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", action="append", default=None, help="restrict to a suite (repeatable)")
    p.add_argument("--scale", action="append", default=None, metavar="M=K", help="include the DP-vs-enumeration oracle at lattice size K")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "align" and not args.pairs and (not args.f1 or not args.f2):
        parser.error("align needs two function files (or --pairs)")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ServiceError as exc:
        kind = EXIT_INPUT if exc.error_type in _INPUT_ERROR_TYPES else EXIT_DOMAIN
        print(f"error ({exc.error_type}): {exc}", file=sys.stderr)
        return kind
    except httpx.HTTPError as exc:
        print(f"error: could not reach the service: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
