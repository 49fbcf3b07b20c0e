"""Command line front end; a thin client over the HTTP service.

Every subcommand except serve talks to the service API: in process by
default (no socket involved), or to a running server via --server.

Exit codes: 0 success, 2 parse failure, 3 verification failure,
4 configuration failure, 1 unexpected error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import re
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_CONFIG = 4

_KIND_EXIT = {"parse": EXIT_PARSE, "verification": EXIT_VERIFY, "config": EXIT_CONFIG}

_RANGE_RE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


class _CliFailure(Exception):
    """Carries an exit code and a message to print on stderr."""

    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _parse_distances(selector: str) -> list[int]:
    m = _RANGE_RE.match(selector)
    if not m:
        raise _CliFailure(EXIT_CONFIG, f"bad distance selector {selector!r}; use N or N..M")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 2 or hi < lo:
        raise _CliFailure(EXIT_CONFIG, f"bad distance range {selector!r}; need 2 <= N <= M")
    return list(range(lo, hi + 1))


async def _request(args, path: str, payload: dict) -> dict:
    """POSTs to the service, in process unless --server was given."""
    try:
        if args.server:
            async with httpx.AsyncClient(base_url=args.server, timeout=120.0) as client:
                response = await client.post(path, json=payload)
        else:
            from .service import app
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://service.internal") as client:
                response = await client.post(path, json=payload)
    except httpx.HTTPError as exc:
        raise _CliFailure(EXIT_UNEXPECTED, f"service unreachable: {exc}") from exc
    if response.status_code == 400:
        detail = response.json().get("detail", {})
        kind = detail.get("kind", "config") if isinstance(detail, dict) else "config"
        message = detail.get("message", str(detail)) if isinstance(detail, dict) else str(detail)
        raise _CliFailure(_KIND_EXIT.get(kind, EXIT_UNEXPECTED), message)
    if response.status_code == 422:
        raise _CliFailure(EXIT_CONFIG, f"invalid request: {response.text}")
    if response.status_code != 200:
        raise _CliFailure(EXIT_UNEXPECTED, f"service error {response.status_code}: {response.text}")
    return response.json()


def _call(args, path: str, payload: dict) -> dict:
    return asyncio.run(_request(args, path, payload))


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

_SUFFIX = {"text": ".txt", "url": ".url.txt", "records": ".json"}


def _cmd_generate(args) -> int:
    distances = _parse_distances(args.distance)
    if len(distances) > 1 and not args.out:
        raise _CliFailure(EXIT_CONFIG, "a distance range needs --out DIR")
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for d in distances:
        data = _call(args, "/generate", {
            "distance": d,
            "kind": "stage" if args.stage else "encoder",
            "format": args.format,
            "include_markers": not args.no_markers,
            "max_pattern_distance": args.max_pattern_d,
        })
        if out_dir:
            name = ("stage" if args.stage else "encoder") + f"_d{d}" + _SUFFIX[args.format]
            path = out_dir / name
            path.write_text(data["content"] + "\n")
            print(f"wrote {path} (depth {data['depth']}, cx {data['cx_count']})")
        else:
            print(data["content"])
    return EXIT_OK


def _format_verify_line(data: dict) -> str:
    frame = data["logical_frame"]["text"] if data["logical_frame"] else "unresolved"
    status = "PASS" if data["ok"] else "FAIL"
    line = (f"distance {data['distance']}: {status}  group={data['group_match']} "
            f"signs={data['sign_match']} frame=[{frame}] "
            f"depth={data['depth']}/{data['expected_depth']} local={data['local']} "
            f"cx={data['cx_count']}")
    if data.get("failure"):
        line += f"\n  failure: {data['failure']}"
    if data.get("first_unmatched"):
        line += f"\n  first unmatched: {data['first_unmatched']}"
    return line


def _format_stage_line(data: dict) -> str:
    status = "PASS" if data["ok"] else "FAIL"
    line = (f"stage {data['start_distance']} -> {data['end_distance']}: {status}  "
            f"group={data['group_match']} signs={data['sign_match']} "
            f"frame=[{data['logical_frame'] or 'unresolved'}] depth={data['depth']} "
            f"local={data['local']} cx={data['cx_count']}")
    if data.get("failure"):
        line += f"\n  failure: {data['failure']}"
    if data.get("first_unmatched"):
        line += f"\n  first unmatched: {data['first_unmatched']}"
    return line


def _cmd_verify(args) -> int:
    all_ok = True
    if args.file:
        text = Path(args.file).read_text()
        payload = {"strict": args.strict, "circuit_text": text,
                   "max_pattern_distance": args.max_pattern_d}
        if args.distance:
            distances = _parse_distances(args.distance)
            if len(distances) != 1:
                raise _CliFailure(EXIT_CONFIG, "--file verifies one distance at a time")
            payload["distance"] = distances[0]
        data = _call(args, "/verify", payload)
        print(_format_verify_line(data))
        all_ok = data["ok"]
    else:
        if not args.distance:
            raise _CliFailure(EXIT_CONFIG, "verify needs -d or --file")
        for d in _parse_distances(args.distance):
            payload = {"distance": d, "strict": args.strict,
                       "max_pattern_distance": args.max_pattern_d}
            if args.stage:
                data = _call(args, "/verify-stage", payload)
                print(_format_stage_line(data))
            else:
                data = _call(args, "/verify", payload)
                print(_format_verify_line(data))
            all_ok = all_ok and data["ok"]
    return EXIT_OK if all_ok else EXIT_VERIFY


def _cmd_stats(args) -> int:
    distances = _parse_distances(args.distance)
    data = _call(args, "/stats", {
        "distances": distances,
        "max_pattern_distance": args.max_pattern_d,
    })
    header = (f"{'d':>3} {'qubits':>6} {'depth':>5} {'expect':>6} {'cx':>5} "
              f"{'resets':>6} {'sdag':>4} {'local':>5}  "
              f"{'stage_cx':>8} {'claimed':>7} {'baseline':>8}")
    print(header)
    flagged = False
    for row in data["rows"]:
        stage = row["stage"]
        claim = str(stage["claimed_cx"]) + ("" if stage["claim_matches"] else "*")
        baseline = stage["baseline_cx"] if stage["baseline_cx"] is not None else "-"
        print(f"{row['distance']:>3} {row['qubits']:>6} {row['depth']:>5} "
              f"{row['expected_depth']:>6} {row['cx_count']:>5} {row['reset_count']:>6} "
              f"{row['s_dag_count']:>4} {str(row['local']):>5}  "
              f"{stage['measured_cx']:>8} {claim:>7} {baseline:>8}")
        flagged = flagged or not stage["claim_matches"]
    if flagged:
        print("* measured stage count differs from the recorded closed form; "
              "the canonical circuits are authoritative")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.distance is None and args.census is None:
        raise _CliFailure(EXIT_CONFIG, "oracle needs -d and/or -D")
    payload = {
        "census_cap": args.census_cap,
        "include_elements": args.elements,
    }
    if args.distance is not None:
        payload["distance"] = args.distance
    if args.census is not None:
        payload["census_distance"] = args.census
    data = _call(args, "/oracle", payload)
    if data["impossibility"]:
        print(data["impossibility"]["text"])
    if data["census"]:
        c = data["census"]
        print(f"census d={c['distance']} ({c['qubits']} qubits): "
              f"weight-1 members {c['weight1_count']}, weight-2 members {c['weight2_count']}, "
              f"independent rank {c['independent_rank']}")
        if c["weight2_elements"] is not None:
            for op in c["weight2_elements"]:
                print(f"  {op}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default is in-process")
    parser.add_argument("--max-pattern-d", type=int, default=25, metavar="N",
                        help="refuse distances above this bound (default 25)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surfgrow",
        description="Generate and certify nearest-neighbor surface code encoders.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit encoder or growth stage circuits")
    p.add_argument("-d", "--distance", required=True, metavar="N|N..M")
    p.add_argument("--stage", action="store_true",
                   help="emit the growth stage d -> d+2 instead of the full encoder")
    p.add_argument("--format", choices=["text", "url", "records"], default="text")
    p.add_argument("--out", metavar="DIR", help="write files instead of stdout")
    p.add_argument("--no-markers", action="store_true", help="drop marker annotations")
    _add_common(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="certify encoders or growth stages")
    p.add_argument("-d", "--distance", metavar="N|N..M")
    p.add_argument("--file", metavar="PATH", help="verify a circuit file instead")
    p.add_argument("--stage", action="store_true", help="verify growth stages in isolation")
    p.add_argument("--strict", action="store_true",
                   help="validate tracked invariants after every layer")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stats", help="tabulate measured versus recorded counts")
    p.add_argument("-d", "--distance", required=True, metavar="N|N..M")
    _add_common(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("oracle", help="depth-1 impossibility records and censuses")
    p.add_argument("-d", "--distance", type=int, metavar="N",
                   help="growth start distance for the impossibility record")
    p.add_argument("-D", "--census", type=int, metavar="N",
                   help="run the exhaustive low-weight census at this distance")
    p.add_argument("--census-cap", type=int, default=12, metavar="N",
                   help="largest distance the census may enumerate (default 12)")
    p.add_argument("--elements", action="store_true", help="list weight-2 members")
    _add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliFailure as failure:
        print(f"error: {failure}", file=sys.stderr)
        return failure.code
    except json.JSONDecodeError as exc:
        print(f"error: malformed service response: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
