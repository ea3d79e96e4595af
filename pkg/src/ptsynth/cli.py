"""Command-line front end.

A thin client over the service layer: flags are packed into a
SynthesisRequest which either runs in-process or is POSTed to a running
service (``--server``).  Exit codes: 0 for a complete result (an empty
constraint is a valid answer), 2 when a limit cut the run short, 1 for
usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .service.handlers import RequestError, execute_synthesis
from .service.schemas import SynthesisRequest, SynthesisResponse

ALGORITHMS = ("efsynth", "minparam", "mintime", "mintime-reach", "lu-fast")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptsynth",
        description="Parameter synthesis and minimal-time reachability "
                    "for parametric timed automata.")
    parser.add_argument("model", help="model file")
    parser.add_argument("--property", dest="property_path",
                        help="property file (targets { ... } [minimize p])")
    parser.add_argument("--targets", help="comma-separated target locations")
    parser.add_argument("--minimize", help="parameter to minimize (minparam)")
    parser.add_argument("--algorithm", choices=ALGORITHMS, default="efsynth")
    parser.add_argument("--global-clock", dest="global_clock",
                        help="declared never-reset clock to reuse for the "
                             "mintime algorithms (default: add a fresh one)")
    parser.add_argument("--no-inclusion", action="store_true",
                        help="disable the state-inclusion reduction")
    parser.add_argument("--merge", default="auto",
                        help="state merging: off | layer | every:N "
                             "(default: layer for BFS, every:10 for mintime)")
    parser.add_argument("--strict-min", dest="strict_min", default="closure",
                        help="handling of strict minima: closure | epsilon:R")
    parser.add_argument("--max-states", dest="max_states", type=int)
    parser.add_argument("--timeout-seconds", dest="timeout_seconds", type=float)
    parser.add_argument("--output", choices=("text", "structured"),
                        default="text")
    parser.add_argument("--trace", help="write the exploration trace here")
    parser.add_argument("--server",
                        help="base URL of a running ptsynth service; the "
                             "request is sent there instead of running locally")
    return parser


def build_serve_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptsynth serve",
                                     description="Run the HTTP service.")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    return parser


def make_request(args) -> SynthesisRequest:
    model_text = Path(args.model).read_text()
    property_text = None
    if args.property_path:
        property_text = Path(args.property_path).read_text()
    targets = None
    if args.targets:
        targets = [t.strip() for t in args.targets.split(",") if t.strip()]
    return SynthesisRequest(
        model_text=model_text, property_text=property_text, targets=targets,
        minimize=args.minimize, algorithm=args.algorithm,
        global_clock=args.global_clock, inclusion=not args.no_inclusion,
        merge=args.merge, strict_min=args.strict_min,
        max_states=args.max_states, timeout_seconds=args.timeout_seconds,
        include_trace=bool(args.trace))


def post_to_server(server: str, request: SynthesisRequest) -> SynthesisResponse:
    import httpx

    url = server.rstrip("/") + "/synthesize"
    reply = httpx.post(url, json=request.model_dump(), timeout=None)
    if reply.status_code == 400:
        detail = reply.json().get("detail", {})
        raise RequestError(detail.get("message", "bad request"))
    reply.raise_for_status()
    return SynthesisResponse.model_validate(reply.json())


def render_text(resp: SynthesisResponse) -> str:
    lines = [f"algorithm: {resp.algorithm}", f"status: {resp.status}"]
    if resp.optimum_text is not None:
        label = "Opt" if resp.algorithm == "minparam" else "T_opt"
        lines.append(f"{label} = {resp.optimum_text}")
    if resp.algorithm != "lu-fast":
        lines.append(f"K = {resp.constraint_text}")
    return "\n".join(lines)


def render_structured(resp: SynthesisResponse) -> str:
    stats = resp.stats.model_dump()
    stats.pop("wall_ms", None)  # stdout stays byte-identical across runs
    doc = {
        "algorithm": resp.algorithm,
        "optimum": resp.optimum.model_dump()
        if hasattr(resp.optimum, "model_dump") else resp.optimum,
        "constraint": resp.constraint,
        "stats": stats,
        "status": resp.status,
    }
    return json.dumps(doc, sort_keys=True)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "serve":
        args = build_serve_parser().parse_args(argv[1:])
        import uvicorn

        from .service.app import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        request = make_request(args)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        if args.server:
            response = post_to_server(args.server, request)
        else:
            response = execute_synthesis(request)
    except RequestError as err:
        print(f"error: {err}", file=sys.stderr)
        for diag in err.diagnostics:
            print(f"  {diag.line}:{diag.col}: {diag.message}", file=sys.stderr)
        return 1
    if args.trace and response.trace is not None:
        Path(args.trace).write_text("\n".join(response.trace) + "\n")
    out = render_text(response) if args.output == "text" \
        else render_structured(response)
    print(out)
    stats = response.stats
    print(f"stats: popped={stats.popped} pushed={stats.pushed} "
          f"inclusion_hits={stats.inclusion_hits} "
          f"merge_events={stats.merge_events} wall_ms={stats.wall_ms:.1f} "
          f"peak_waiting={stats.peak_waiting}", file=sys.stderr)
    return 0 if response.status == "complete" else 2


if __name__ == "__main__":
    sys.exit(main())
