"""Command-line front end: field, group, chamber, verify, export, serve.

By default every subcommand runs the computation in-process; pass
--server URL to dispatch against a running service instead and get the
same outputs (files are still written client-side).

Exit codes: 0 success / all checks pass, 1 check failures, 2 usage or
parameter errors, 3 tier exceeded.
"""

import argparse
import json
import sys

from .errors import OvgeoError, TierExceededError
from .exports import render, write_atomic
from .reports import (
    SUITES,
    Session,
    chamber_info,
    export_data,
    field_info,
    group_info,
    run_suite,
)

_THRESHOLD = 10**6


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ovgeo",
        description="Suzuki-group ovoid geometries: build and machine-verify "
        "triangle chamber systems, coset geometries and hypermaps.",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; dispatch remotely")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("field", help="finite field parameters")
    p.add_argument("--e", type=int, required=True,
                   help="degree exponent; the field is GF(2^(2e+1))")

    p = sub.add_parser("group", help="group parameters, optional enumeration")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--enumerate", action="store_true",
                   help="materialize the full element table (full tier only)")

    p = sub.add_parser("chamber", help="census and triangle summary")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--point", default="auto",
                   help="base ovoid point index, or auto")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.add_argument("--tier", choices=("full", "spot"), default="full")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", dest="json_path", default=None,
                   help="write the canonical JSON report to this path")

    p = sub.add_parser("export", help="write a graph artifact")
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--what", choices=("incidence", "chamber-graph", "hypermap"),
                   required=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--out", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _parse_point(raw) -> int | None:
    if raw in (None, "auto"):
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"--point must be an integer index or auto, got {raw!r}")


def _print_info(info: dict) -> None:
    for k, v in info.items():
        print(f"{k}: {v}")


def _local(args) -> int:
    if args.cmd == "field":
        _print_info(field_info(args.e))
        return 0
    if args.cmd == "group":
        _print_info(group_info(args.e, enumerate_table=args.enumerate,
                               threshold=_THRESHOLD))
        return 0
    if args.cmd == "chamber":
        q = 2 ** (2 * args.e + 1)
        tier = "full" if (q * q + 1) * q * q * (q - 1) <= _THRESHOLD else "spot"
        sess = Session(args.e, args.m, tier, _parse_point(args.point))
        info = chamber_info(sess)
        info["triangle"] = json.dumps(info["triangle"], sort_keys=True)
        _print_info(info)
        return 0
    if args.cmd == "verify":
        sess = Session(args.e, args.m, args.tier)
        report = run_suite(sess, args.suite, args.seed)
        for line in report.text_lines():
            print(line)
        if args.json_path:
            write_atomic(args.json_path, report.canonical_json())
        return 0 if report.passed else 1
    if args.cmd == "export":
        sess = Session(args.e, args.m, "full")
        data = export_data(sess, args.what)
        write_atomic(args.out, render(data, args.format))
        print(f"wrote {args.out}: {len(data['nodes'])} nodes, "
              f"{len(data['edges'])} edges")
        return 0
    if args.cmd == "serve":
        import uvicorn

        uvicorn.run("ovgeo.service.app:app", host=args.host, port=args.port)
        return 0
    raise ValueError(f"unknown command {args.cmd!r}")


def _remote(args) -> int:
    import httpx

    base = args.server.rstrip("/")

    def post(path: str, payload: dict) -> dict:
        resp = httpx.post(f"{base}{path}", json=payload, timeout=600.0)
        if resp.status_code == 400:
            raise OvgeoError(resp.json().get("detail", "bad request"))
        if resp.status_code == 409:
            raise TierExceededError(resp.json().get("detail", "tier exceeded"))
        resp.raise_for_status()
        return resp.json()

    if args.cmd == "field":
        _print_info(post("/field", {"e": args.e})["info"])
        return 0
    if args.cmd == "group":
        _print_info(post("/group", {"e": args.e, "enumerate": args.enumerate})["info"])
        return 0
    if args.cmd == "chamber":
        payload = {"e": args.e, "m": args.m, "point": _parse_point(args.point)}
        info = post("/chamber", payload)["info"]
        info["triangle"] = json.dumps(info["triangle"], sort_keys=True)
        _print_info(info)
        return 0
    if args.cmd == "verify":
        payload = {"e": args.e, "m": args.m, "suite": args.suite,
                   "tier": args.tier, "seed": args.seed}
        out = post("/verify", payload)
        for line in out["text"]:
            print(line)
        if args.json_path:
            report_json = json.dumps(out["report"], sort_keys=True,
                                     separators=(",", ":")) + "\n"
            write_atomic(args.json_path, report_json)
        return 0 if out["passed"] else 1
    if args.cmd == "export":
        payload = {"e": args.e, "m": args.m, "what": args.what,
                   "format": args.format}
        out = post("/export", payload)
        write_atomic(args.out, out["content"])
        print(f"wrote {args.out}: {out['nodes']} nodes, {out['edges']} edges")
        return 0
    raise ValueError(f"command {args.cmd!r} cannot run remotely")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.server and args.cmd != "serve":
            return _remote(args)
        return _local(args)
    except TierExceededError as exc:
        print(f"tier exceeded: {exc}", file=sys.stderr)
        return 3
    except (OvgeoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
