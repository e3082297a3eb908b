"""Thin command-line client for the run service.

Each subcommand loads a YAML/JSON config file, injects the task name, posts
it to the service, writes the returned files into the output directory, and
maps the verdict to the exit code contract:

    0  completed / no violation found
    1  error (bad config, numerical failure, transport failure)
    2  violation certified
    3  theorem hypotheses not applicable to the supplied data

By default the client runs the service in-process over an ASGI transport, so
no server is needed; --url targets a running instance instead.  ``serve``
starts one with uvicorn.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx
import yaml

from . import __version__

TASKS = ("identities", "trace", "classify", "check-res", "no-contraction",
         "weight-range", "simulate")

STATUS_TO_EXIT = {"pass": 0, "error": 1, "violation": 2, "not-applicable": 3}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shocklab",
        description="Weighted relative-entropy stability laboratory for 1-D "
                    "conservation laws")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for task in TASKS:
        p = sub.add_parser(task, help=f"run the {task} task")
        p.add_argument("--config", required=True, type=Path,
                       help="YAML or JSON run configuration")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="directory for output files (default: ./out)")
        p.add_argument("--url", default=None,
                       help="base URL of a running service; default runs in-process")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--threads", type=int, default=None,
                       help="override the config thread count")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8707)
    return parser


def load_config(path: Path) -> dict:
    text = path.read_text(encoding="utf-8")
    data = yaml.safe_load(text)
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must contain a mapping at top level")
    return data


async def _post_run(payload: dict, url: str | None) -> httpx.Response:
    if url is None:
        from .service.app import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://shocklab.local",
                                     timeout=None) as client:
            return await client.post("/run", json=payload)
    async with httpx.AsyncClient(base_url=url, timeout=None) as client:
        return await client.post("/run", json=payload)


def _format_validation_error(detail) -> str:
    lines = ["invalid configuration:"]
    for item in detail if isinstance(detail, list) else [detail]:
        loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
        lines.append(f"  {loc}: {item.get('msg', 'invalid')}")
    return "\n".join(lines)


def run_client(args: argparse.Namespace) -> int:
    try:
        payload = load_config(args.config)
    except (OSError, ValueError, yaml.YAMLError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    payload["task"] = args.command
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.threads is not None:
        payload["threads"] = args.threads

    try:
        response = asyncio.run(_post_run(payload, args.url))
    except httpx.HTTPError as err:
        print(f"error: transport failure: {err}", file=sys.stderr)
        return 1

    if response.status_code == 422:
        print(_format_validation_error(response.json().get("detail")),
              file=sys.stderr)
        return 1
    if response.status_code != 200:
        print(f"error: service returned HTTP {response.status_code}: "
              f"{response.text[:500]}", file=sys.stderr)
        return 1

    result = response.json()
    status = result.get("status", "error")
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    for output in result.get("outputs", []):
        target = out_dir / output["name"]
        target.write_text(output["text"], encoding="utf-8")
        print(f"wrote {target}")
    message = result.get("message", "")
    print(f"status: {status}" + (f" ({message})" if message else ""))
    if result.get("summary"):
        print(json.dumps(result["summary"], sort_keys=True, default=str))
    if status == "error":
        print(f"error: {message}", file=sys.stderr)
    return STATUS_TO_EXIT.get(status, 1)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    return run_client(args)


if __name__ == "__main__":
    sys.exit(main())
