"""Command-line entry point: ``fourcycle {tables,build,verify,simulate,find}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .channel_sim import DEFAULT_MAX_ITER, CssSimulator, PauliChannelParams, results_csv
from .construct import approx_rate, build, rate_menu, verify_candidate
from .formats import ParseError, csv_with_metadata, descriptor, dumps_descriptor, format_model, load_descriptor, read_model
from .gf2 import expand, from_alist, gf2_product_is_zero, to_alist
from .model import ModelMatrix, check_girth6, check_twisted, regularity
from .numtheory import SearchFailure, is_prime
from .perfume import PerfumeError, enumerate_fulfillments, find_perfume, fulfillments_csv, make_perfume, tight_bound_perfume
from .verify import DEFAULT_GIRTH_CAP, verification_report

log = logging.getLogger("fourcycle")

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_SEARCH = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _bits(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    s = text.replace(",", "").replace(" ", "")
    if not s or set(s) - {"0", "1"}:
        raise CliError(f"mask must be a 0/1 string, got {text!r}", EXIT_VALIDATION)
    return tuple(int(c) for c in s)


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"bad --p-list {text!r}", EXIT_VALIDATION) from None


# --- commands ---------------------------------------------------------------


def cmd_tables(args) -> int:
    if args.ord_min < 2 or args.ord_max < args.ord_min:
        raise CliError("need 2 <= --ord-min <= --ord-max", EXIT_VALIDATION)
    table = enumerate_fulfillments(args.P_max, args.ord_min, args.ord_max, perfume_ready=not args.all)
    config = {"command": "tables", "P_max": args.P_max, "ord_min": args.ord_min, "ord_max": args.ord_max, "all": args.all}
    _write(args.out, csv_with_metadata(fulfillments_csv(table), config))
    return EXIT_OK


def _resolve_triple(args) -> tuple[int, int, int]:
    vals = []
    for pos, flag, name in ((args.pos_P, args.P, "P"), (args.pos_sigma, args.sigma, "sigma"), (args.pos_tau, args.tau, "tau")):
        v = flag if flag is not None else pos
        if v is None:
            raise CliError(f"missing {name}", EXIT_VALIDATION)
        vals.append(v)
    return tuple(vals)


def cmd_build(args) -> int:
    P, sigma, tau = _resolve_triple(args)
    try:
        pf = make_perfume(P, sigma, tau)
        cand = build(pf, args.J, args.K, _bits(args.mask_c), _bits(args.mask_d))
    except (PerfumeError, ValueError) as exc:
        raise CliError(f"invalid construction: {exc}", EXIT_VALIDATION) from None
    verification = {
        "twisted": check_twisted(cand.mc, cand.md),
        "girth6_C": check_girth6(cand.mc),
        "girth6_D": check_girth6(cand.md),
        "regular_C": list(regularity(cand.mc) or []),
        "regular_D": list(regularity(cand.md) or []),
        "approx_rate": float(approx_rate(cand.J, cand.K, cand.L, cand.P)),
    }
    config = {
        "command": "build",
        "P": P,
        "sigma": sigma,
        "tau": tau,
        "J": cand.J,
        "K": cand.K,
        "mask_c": args.mask_c,
        "mask_d": args.mask_d,
    }
    _write(args.out, dumps_descriptor(descriptor(cand, verification, config)))
    if args.format == "alist" or args.export_model:
        if args.out in (None, "-"):
            raise CliError("alist/model export needs --out", EXIT_VALIDATION)
        stem = str(Path(args.out).with_suffix(""))
        if args.format == "alist":
            _write(f"{stem}.C.alist", to_alist(expand(cand.mc)))
            _write(f"{stem}.D.alist", to_alist(expand(cand.md)))
        if args.export_model:
            _write(f"{stem}.C.txt", format_model(cand.mc))
            _write(f"{stem}.D.txt", format_model(cand.md))
    return EXIT_OK


def _load_inputs(paths: list[str]) -> tuple[ModelMatrix, ModelMatrix | None]:
    if not 1 <= len(paths) <= 2:
        raise CliError("verify takes a descriptor, or one or two model-matrix files", EXIT_VALIDATION)
    try:
        if len(paths) == 1 and paths[0].endswith(".json"):
            _read_text(paths[0])
            cand = load_descriptor(paths[0])
            return cand.mc, cand.md
        for p in paths:
            _read_text(p)
        mats = [read_model(p) for p in paths]
    except ParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_VALIDATION) from None
    except ValueError as exc:
        raise CliError(f"invalid input: {exc}", EXIT_VALIDATION) from None
    if len(mats) == 2 and (mats[0].P != mats[1].P or mats[0].L != mats[1].L):
        raise CliError("the two model matrices must share P and L", EXIT_VALIDATION)
    return mats[0], mats[1] if len(mats) == 2 else None


def _report_text(rep: dict) -> str:
    lines = []
    for key in ("C", "D"):
        if key in rep:
            r = rep[key]
            lines.append(
                f"{key}: {r['J']}x{r['L']} P={r['P']} girth6={r['girth6']} girth={r['girth']} "
                f"rank={r['rank']} regular={r['regular']}"
            )
            if r["girth6_violations"]:
                lines.append(f"  rows with repeated differences: {r['girth6_violations']}")
    if "twisted" in rep:
        lines.append(f"twisted={rep['twisted']} product_zero={rep['product_zero']}")
        if rep["twisted_violations"]:
            lines.append(f"  offending (j, k) pairs: {rep['twisted_violations']}")
        if "quantum_rate" in rep:
            lines.append(f"quantum rate = {rep['quantum_rate_exact']} = {rep['quantum_rate']:.6f}")
    lines.append("OK" if rep["ok"] else "FAILED")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    paths = list(args.inputs)
    if args.alist:
        try:
            hs = [from_alist(_read_text(p)) for p in args.alist]
        except ValueError as exc:
            raise CliError(f"parse error: {exc}", EXIT_VALIDATION) from None
        # a plain binary matrix is a model matrix over P = 1
        mats = [ModelMatrix.from_rows([[0 if c in set(h.row(i)) else float("inf") for c in range(h.n_cols)] for i in range(h.n_rows)], 1) for h in hs]
        mc, md = mats[0], mats[1] if len(mats) > 1 else None
    else:
        mc, md = _load_inputs(paths)
    rep = verification_report(mc, md, girth_cap=args.girth_cap)
    rep["metadata"] = {"tool": "fourcycle", "version": __version__, "config": {"command": "verify", "inputs": paths or args.alist}}
    if args.format == "json":
        _write(args.out, json.dumps(rep, indent=2) + "\n")
    else:
        _write(args.out, _report_text(rep))
    return EXIT_OK if rep["ok"] else EXIT_VALIDATION


def cmd_simulate(args) -> int:
    try:
        _read_text(args.descriptor)
        cand = load_descriptor(args.descriptor)
    except (ParseError, ValueError) as exc:
        raise CliError(f"parse error: {exc}", EXIT_VALIDATION) from None
    hc, hd = expand(cand.mc), expand(cand.md)
    if not (verify_candidate(cand) and gf2_product_is_zero(hc, hd)):
        raise CliError("descriptor fails verification; refusing to simulate", EXIT_VALIDATION)
    p_list = _floats(args.p_list)
    try:
        params = [PauliChannelParams(p) for p in p_list]
    except ValueError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    if args.trials < 1:
        raise CliError("--trials must be >= 1", EXIT_VALIDATION)
    sim = CssSimulator(hc, hd)
    summaries = []
    for prm in params:
        s = sim.run(prm, args.trials, args.max_iter, args.seed, workers=args.workers)
        log.info("p=%g failures=%d/%d", prm.p, s.failures, s.trials)
        summaries.append(s)
    config = {
        "command": "simulate",
        "descriptor": Path(args.descriptor).name,
        "P": cand.P,
        "sigma": cand.perfume.sigma,
        "tau": cand.perfume.tau,
        "p_list": ",".join(repr(p) for p in p_list),
        "trials": args.trials,
        "max_iter": args.max_iter,
        "seed": args.seed,
    }
    _write(args.out, csv_with_metadata(results_csv(summaries), config))
    if args.figure:
        from .plotting import plot_campaign

        try:
            plot_campaign(summaries, args.figure, target=args.target, label=f"P={cand.P} L={cand.L} J={cand.J} K={cand.K}")
        except OSError as exc:
            raise CliError(f"cannot write {args.figure}: {exc}", EXIT_IO) from None
    return EXIT_OK


def cmd_find(args) -> int:
    if args.L is not None and (args.n is not None or args.k is not None):
        raise CliError("give either --L or --n/--k", EXIT_VALIDATION)
    if args.L is None:
        if args.n is None or args.k is None:
            raise CliError("need --L or both --n and --k", EXIT_VALIDATION)
        try:
            m, L, J, K = rate_menu(args.n, args.k)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_VALIDATION) from None
    else:
        L = args.L
        if L < 2 or L % 2:
            raise CliError("--L must be a positive even integer", EXIT_VALIDATION)
        m, J, K = None, L // 2, L // 2
    try:
        if is_prime(L + 1):
            pf, route = tight_bound_perfume(L), "tight-bound"
        else:
            pf, route = find_perfume(L // 2), "dirichlet"
    except SearchFailure as exc:
        raise CliError(str(exc), EXIT_SEARCH) from None
    out = {
        "P": pf.P,
        "sigma": pf.sigma,
        "tau": pf.tau,
        "order": pf.order,
        "L": L,
        "J": J,
        "K": K,
        "m": m,
        "route": route,
        "approx_rate": float(approx_rate(J, K, L, pf.P)),
        "metadata": {"tool": "fourcycle", "version": __version__, "config": {"command": "find", "L": args.L, "n": args.n, "k": args.k}},
    }
    _write(args.out, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fourcycle", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="enumerate fulfillments to CSV")
    t.add_argument("--P-max", dest="P_max", type=int, default=200)
    t.add_argument("--ord-min", type=int, default=3)
    t.add_argument("--ord-max", type=int, default=20)
    t.add_argument("--all", action="store_true", help="include sigma that generate every unit (no tau exists)")
    t.add_argument("--out")
    t.add_argument("--format", choices=["csv"], default="csv")
    t.set_defaults(func=cmd_tables)

    b = sub.add_parser("build", help="build a four-cycle pair from a perfume")
    b.add_argument("pos_P", nargs="?", type=int, metavar="P")
    b.add_argument("pos_sigma", nargs="?", type=int, metavar="sigma")
    b.add_argument("pos_tau", nargs="?", type=int, metavar="tau")
    b.add_argument("--P", type=int)
    b.add_argument("--sigma", type=int)
    b.add_argument("--tau", type=int)
    b.add_argument("--J", type=int)
    b.add_argument("--K", type=int)
    b.add_argument("--mask-c")
    b.add_argument("--mask-d")
    b.add_argument("--out")
    b.add_argument("--format", choices=["json", "alist"], default="json")
    b.add_argument("--export-model", action="store_true", help="also write <out>.C.txt and <out>.D.txt")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a descriptor or model matrices")
    v.add_argument("inputs", nargs="*")
    v.add_argument("--alist", nargs="+", help="plain binary matrices in alist format")
    v.add_argument("--girth-cap", type=int, default=DEFAULT_GIRTH_CAP)
    v.add_argument("--out")
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="Monte Carlo failure rates over a p grid")
    s.add_argument("descriptor")
    s.add_argument("--p-list", required=True)
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv"], default="csv")
    s.add_argument("--figure", help="also render failure-rate and rate-bound panels to this image file")
    s.add_argument("--target", type=float, default=1e-2, help="failure rate marked on the figure")
    s.set_defaults(func=cmd_simulate)

    f = sub.add_parser("find", help="deterministic perfume for a target L or rate k/n")
    f.add_argument("--L", type=int)
    f.add_argument("--n", type=int)
    f.add_argument("--k", type=int)
    f.add_argument("--out")
    f.add_argument("--format", choices=["json"], default="json")
    f.set_defaults(func=cmd_find)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"fourcycle {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
