"""Thin command-line client for the verification service.

Every subcommand builds a JSON request and sends it through the HTTP API:
against a remote server when --server is given, otherwise against an
in-process instance of the app (no socket, same routes and validation).

Exit codes: 0 success / match, 1 verification mismatch, 2 usage error,
3 budget refusal.  Errors go to stderr prefixed "error:" or "refused:".
Identical argv and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Optional

import httpx

from .serialize import canonical_dumps

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


def _send(server: Optional[str], path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post(path, json=payload)

    import asyncio

    from .service import create_app

    async def in_process() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://submaxlie",
                                     timeout=None) as client:
            return await client.post(path, json=payload)

    return asyncio.run(in_process())


def _post(args, path: str, payload: dict) -> dict:
    resp = _send(args.server, path, payload)
    body = resp.json()
    if resp.status_code >= 400:
        err = body.get("error", {})
        kind = err.get("kind")
        message = err.get("message", "")
        if kind == "refused":
            print(f"refused: {message}", file=sys.stderr)
            raise SystemExit(EXIT_REFUSED)
        if kind == "usage" or resp.status_code == 422:
            if resp.status_code == 422:
                message = "; ".join(
                    f"{'.'.join(str(x) for x in item.get('loc', []))}: "
                    f"{item.get('msg', '')}"
                    for item in body.get("detail", [])
                )
            print(f"error: {message}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        print(f"error: unexpected response {resp.status_code}",
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return body


def _print_json(report: dict) -> None:
    sys.stdout.write(canonical_dumps(report))


def _print_csv(rows: list[dict]) -> None:
    if not rows:
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]),
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _md_table(headers: list[str], rows: list[list[str]]) -> str:
    out = ["| " + " | ".join(headers) + " |",
           "| " + " | ".join("---" for _ in headers) + " |"]
    out += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(out) + "\n"


# --- subcommand handlers -------------------------------------------------------

def cmd_rank(args) -> int:
    report = _post(args, "/rank", {"n": args.n})
    if args.format == "json":
        _print_json(report)
    elif args.format == "csv":
        _print_csv([{"n": report["n"], "rk": report["p_rank"],
                     "submax": report["submax_rank"]}])
    else:
        print(f"rk={report['p_rank']} submax={report['submax_rank']}")
    return EXIT_OK


def cmd_tables(args) -> int:
    report = _post(args, "/tables", {
        "n": args.n, "level": args.level, "budget": args.budget,
        "compute": not args.no_compute,
    })
    if args.format == "json":
        _print_json(report)
    elif args.format == "csv":
        rows = [{"type": report["type"], "level": report["level"],
                 "name": entry["name"],
                 "roots": " ".join(entry["roots"]),
                 "match": report["match"]}
                for entry in report["predicted"]]
        _print_csv(rows)
    else:
        rows = [[report["type"], report["level"], entry["name"],
                 " ".join(entry["roots"])]
                for entry in report["predicted"]]
        sys.stdout.write(_md_table(["Type", "Level", "Predicted set",
                                    "Roots"], rows))
        print(f"match: {report['match']}")
    if report["match"] is False:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_enumerate(args) -> int:
    report = _post(args, "/enumerate", {
        "n": args.n, "r": args.r, "maximal_only": args.maximal_only,
        "budget": args.budget,
    })
    if args.format == "json":
        _print_json(report)
    elif args.format == "csv":
        _print_csv([{"index": k, "roots": " ".join(rs)}
                    for k, rs in enumerate(report["sets"])])
    else:
        print(f"{report['count']} commuting sets of size {report['r']} "
              f"in A_{report['n']}"
              + (" (maximal only)" if report["maximal_only"] else ""))
        for rs in report["sets"]:
            print("  {" + ", ".join(rs) + "}")
    return EXIT_OK


def cmd_fiber(args) -> int:
    report = _post(args, "/fiber", {
        "n": args.n, "p": args.p, "lt": args.lt, "order": args.order,
        "strategy": args.strategy, "budget": args.budget,
        "allow_nonstandard": args.allow_nonstandard,
    })
    if args.format == "json":
        _print_json(report)
    else:
        prob = report["problem"]
        print(f"fiber over LT={{{', '.join(prob['lt'])}}} in A_{prob['n']}, "
              f"p={prob['p']}, strategy={prob['strategy']}")
        print(f"solutions: {report['count']}  complete: {report['complete']}"
              f"  nodes: {report['nodes']}")
        if report["matches_family"] is not None:
            print(f"matches_family: {report['matches_family']}")
    if report["matches_family"] is False or not report["complete"]:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_conjugacy(args) -> int:
    report = _post(args, "/conjugacy", {
        "n": args.n, "r1": args.r1, "r2": args.r2,
        "exhaustive": args.exhaustive,
    })
    if args.format == "json":
        _print_json(report)
    else:
        if report["witness"] is None:
            print("no conjugating permutation exists")
        else:
            print("witness: " + " ".join(str(v) for v in report["witness"]))
    return EXIT_OK


def cmd_sample(args) -> int:
    report = _post(args, "/sample", {
        "kind": args.kind, "n": args.n, "p": args.p,
        "samples": args.samples, "seed": args.seed,
    })
    if args.format == "json":
        _print_json(report)
    else:
        print(f"{report['kind']} on A_{report['n']} (p={report['p']}): "
              f"{report['violations']} violations in {report['samples']} "
              "samples")
    return EXIT_MISMATCH if report["violations"] else EXIT_OK


def cmd_verify(args) -> int:
    report = _post(args, "/verify", {"suite": args.suite,
                                     "n_max": args.n_max})
    if args.format == "json":
        _print_json(report)
    else:
        for res in report["results"]:
            flag = "PASS" if res["passed"] else "FAIL"
            print(f"{flag} criterion {res['criterion']:2d} "
                  f"[{res['name']}] {res['detail']}")
        print("suite passed" if report["passed"] else "suite FAILED")
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("submaxlie.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="submaxlie",
        description="Commuting root sets and elementary subalgebras of the "
                    "type-A nilradical, verified at desk scale.",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs "
                             "the app in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, default="md"):
        p.add_argument("--format", choices=["md", "json", "csv"],
                       default=default,
                       help="csv applies to tabular reports (rank, tables, "
                            "enumerate); other subcommands print text for "
                            "both md and csv")

    p = sub.add_parser("rank", help="p-rank and submaximal rank of A_n")
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("tables",
                       help="predicted maximal commuting sets vs brute force")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--level", choices=["max", "submax"], default="submax")
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--no-compute", action="store_true",
                   help="skip the brute-force cross-check")
    add_format(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("enumerate", help="enumerate commuting r-subsets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--maximal-only", action="store_true")
    p.add_argument("--budget", type=int, default=10**8)
    add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fiber",
                       help="all elementary subalgebras with a given "
                            "leading-term set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--lt", required=True,
                   help="rad:k | odd | ev-low | ev-high | JSON root list")
    p.add_argument("--order", default="paper",
                   help='"paper" or "revlex:3,1,2,4,5"')
    p.add_argument("--strategy", choices=["search", "replay"],
                   default="search")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--allow-nonstandard", action="store_true")
    add_format(p, default="json")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("conjugacy",
                       help="search for a Weyl element mapping one root set "
                            "onto another")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r1", required=True)
    p.add_argument("--r2", required=True)
    p.add_argument("--exhaustive", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_conjugacy)

    p = sub.add_parser("sample", help="randomized property experiments")
    p.add_argument("--kind", choices=["lt-lemma", "dichotomy"],
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", default="all",
                   help='"all" or a comma-separated list of check names')
    p.add_argument("--n-max", type=int, default=13)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
