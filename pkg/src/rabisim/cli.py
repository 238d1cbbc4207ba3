"""Command-line front end.

Every subcommand except `serve` is a thin HTTP client: it builds a sweep
request, submits it, polls, and writes the returned CSV/JSON verbatim. With
no --server the app is mounted in-process over an ASGI transport, so the
output bytes are identical either way.
"""
from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

from . import __version__


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--server", help="base URL of a running service "
                   "(default: run in-process)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for the sweep")


def _add_numeric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-fock", type=int, default=None,
                   help="cavity Fock cutoff (default: 20 + 4 g^2 per point)")
    p.add_argument("--n-levels", type=int, default=12,
                   help="dressed levels kept in the master equation")
    p.add_argument("--t-relax", type=float, default=None,
                   help="relaxation time before sampling (default: 10/gamma)")
    p.add_argument("--periods", type=int, default=10,
                   help="drive periods sampled after relaxation")
    p.add_argument("--samples-per-period", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8,
                   help="integrator relative tolerance")
    p.add_argument("--no-refine", action="store_true",
                   help="skip the truncation convergence loop")


def _add_rate_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=1e-2)
    p.add_argument("--kappa", type=float, default=1e-2)
    p.add_argument("--drive-ratio", type=float, default=0.1,
                   help="drive amplitude as a fraction of gamma")


def _add_g_range(p: argparse.ArgumentParser, lo=0.1, hi=3.0, steps=60) -> None:
    p.add_argument("--g-min", type=float, default=lo)
    p.add_argument("--g-max", type=float, default=hi)
    p.add_argument("--g-steps", type=int, default=steps)


def _add_wd_range(p: argparse.ArgumentParser) -> None:
    p.add_argument("--wd-min", type=float, default=0.2)
    p.add_argument("--wd-max", type=float, default=2.2)
    p.add_argument("--wd-steps", type=int, default=60)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabisim",
        description="Driven-dissipative Rabi model: steady-cycle photon "
        "statistics across ultrastrong and deep strong coupling.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    p = sub.add_parser("grid", help="i_out and g2 over a (g, omega_d) grid")
    _add_g_range(p)
    _add_wd_range(p)
    _add_rate_flags(p)
    _add_numeric_flags(p)
    _add_io_flags(p)

    p = sub.add_parser("cut", help="follow a transition across a g range")
    p.add_argument("--transition", choices=("first", "second"),
                   default="second")
    _add_g_range(p)
    _add_rate_flags(p)
    _add_numeric_flags(p)
    _add_io_flags(p)

    p = sub.add_parser("freqscan", help="sweep omega_d at fixed g")
    p.add_argument("--g", type=float, required=True)
    _add_wd_range(p)
    _add_rate_flags(p)
    _add_numeric_flags(p)
    _add_io_flags(p)

    p = sub.add_parser("spectrum", help="dump dressed levels vs g")
    _add_g_range(p)
    p.add_argument("--n-fock", type=int, default=None)
    p.add_argument("--n-levels", type=int, default=12)
    _add_io_flags(p)

    p = sub.add_parser("rates", help="dump jump channels vs g")
    _add_g_range(p)
    p.add_argument("--gamma", type=float, default=1e-2)
    p.add_argument("--kappa", type=float, default=1e-2)
    p.add_argument("--n-fock", type=int, default=None)
    p.add_argument("--n-levels", type=int, default=12)
    _add_io_flags(p)

    p = sub.add_parser("anharm", help="dump ladder anharmonicity vs g")
    _add_g_range(p)
    p.add_argument("--n-fock", type=int, default=None)
    _add_io_flags(p)

    p = sub.add_parser("gc", help="locate the parity-crossing coupling")
    p.add_argument("--g-min", type=float, default=0.3, help="bracket low end")
    p.add_argument("--g-max", type=float, default=0.6, help="bracket high end")
    p.add_argument("--tol", type=float, default=1e-4,
                   help="bisection tolerance on g")
    p.add_argument("--omega-a", type=float, default=1.0)
    p.add_argument("--out", help="optional single-row CSV")
    p.add_argument("--server", help="base URL of a running service")
    return parser


def _controls_body(args: argparse.Namespace) -> dict:
    return {
        "n_fock": getattr(args, "n_fock", None),
        "n_levels": getattr(args, "n_levels", 12),
        "t_relax": getattr(args, "t_relax", None),
        "n_avg_periods": getattr(args, "periods", 10),
        "samples_per_period": getattr(args, "samples_per_period", 64),
        "integrator_tol": getattr(args, "tol", 1e-8),
        "refine": not getattr(args, "no_refine", False),
    }


def _request_body(args: argparse.Namespace) -> dict:
    body = {"controls": _controls_body(args), "threads": args.threads}
    for key in ("gamma", "kappa", "drive_ratio"):
        if hasattr(args, key):
            body[key] = getattr(args, key)
    if args.command == "grid":
        body["mode"] = "grid"
    elif args.command == "cut":
        body["mode"] = f"cut_{args.transition}_transition"
    elif args.command == "freqscan":
        body["mode"] = "freq_scan"
        body["g_min"] = body["g_max"] = args.g
        body["g_steps"] = 1
    elif args.command == "spectrum":
        body["mode"] = "spectrum_vs_g"
    elif args.command == "rates":
        body["mode"] = "rates_vs_g"
    elif args.command == "anharm":
        body["mode"] = "anharmonicity_vs_g"
    if args.command != "freqscan":
        body["g_min"] = args.g_min
        body["g_max"] = args.g_max
        body["g_steps"] = args.g_steps
    if args.command in ("grid", "freqscan"):
        body["wd_min"] = args.wd_min
        body["wd_max"] = args.wd_max
        body["wd_steps"] = args.wd_steps
    return body


def _make_client(server: str | None) -> httpx.AsyncClient:
    if server:
        return httpx.AsyncClient(base_url=server, timeout=30.0)
    from .service import app  # deferred: uvicorn-less client stays light

    transport = httpx.ASGITransport(app=app)
    return httpx.AsyncClient(transport=transport,
                             base_url="http://rabisim.internal", timeout=30.0)


async def _run_sweep_job(args: argparse.Namespace) -> str:
    body = _request_body(args)
    async with _make_client(args.server) as client:
        r = await client.post("/sweeps", json=body)
        r.raise_for_status()
        job_id = r.json()["job_id"]
        last = ""
        while True:
            r = await client.get(f"/sweeps/{job_id}")
            r.raise_for_status()
            info = r.json()
            if info["rows_total"]:
                msg = f"{args.command}: {info['rows_done']}/{info['rows_total']}"
                if msg != last:
                    print(msg, file=sys.stderr)
                    last = msg
            if info["status"] == "done":
                break
            if info["status"] == "failed":
                raise RuntimeError(info["error"] or "sweep failed")
            await asyncio.sleep(0.2)
        r = await client.get(f"/sweeps/{job_id}/{args.format}")
        r.raise_for_status()
        return r.text


async def _run_gc(args: argparse.Namespace) -> str:
    async with _make_client(args.server) as client:
        r = await client.get("/gc", params={
            "g_lo": args.g_min, "g_hi": args.g_max,
            "tol": args.tol, "omega_a": args.omega_a,
        })
        if r.status_code == 404:
            raise RuntimeError(r.json()["detail"])
        r.raise_for_status()
        payload = r.json()
    print(f"g_c = {payload['g_c']:.6f}")
    return "g_c,g_lo,g_hi,tol\n{g_c!r},{g_lo!r},{g_hi!r},{tol!r}\n".format(
        **{k: float(payload[k]) for k in ("g_c", "g_lo", "g_hi", "tol")}
    )


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("rabisim.service:app", host=args.host, port=args.port)
        return 0
    try:
        if args.command == "gc":
            text = asyncio.run(_run_gc(args))
            if args.out:
                _write_output(text, args.out)
            return 0
        text = asyncio.run(_run_sweep_job(args))
    except (RuntimeError, httpx.HTTPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_output(text, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
