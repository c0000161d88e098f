"""Command-line driver.

Example::

    quivgrass --presentation carlson.txt --mode grass-eqs \\
        --skeleton example.skel --out eqs.txt
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
import time
from typing import Dict, List, Optional, Sequence

from . import fixtures
from .errors import QuivGrassError
from .export import (
    canonical_list,
    export_cas,
    ordered_variables,
    poly_to_json,
    rename,
    to_json,
    z_alias,
)
from .grass import detect_affine_space, random_point, tau_system, to_rep_point, verify_rep_point
from .lift import (
    big_tau_system,
    homogenize_and_saturate,
    lift_to_pluecker,
    reduce_index_set,
    schubert_system,
)
from .polyring import DEFAULT_MAX_STEPS, Poly, ResourceLimitExceeded
from .presentation import format_combination, load_presentation, load_skeleton, parse_presentation
from .skeleta import SemisimpleSequence, all_skeleta, critical_paths, enumerate_skeleta

log = logging.getLogger("quivgrass")

MODES = ("skeleta", "critical", "grass-eqs", "big-grass-eqs", "schubert-eqs",
         "projective-eqs", "oracle", "export")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quivgrass", description=__doc__.split("\n")[0])
    p.add_argument("--presentation", required=True,
                   help="presentation file, or builtin:carlson / builtin:a0")
    p.add_argument("--mode", required=True, choices=MODES)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--sseq", help="semisimple sequence, layers separated by ';' (e.g. '1;2;1')")
    grp.add_argument("--dimvec", help="dimension vector, one entry per vertex (e.g. '2' or '1,2')")
    p.add_argument("--skeleton", help="skeleton file")
    p.add_argument("--setting", choices=("small", "big"), default="small")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=100, help="random points per skeleton (oracle)")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--format", choices=("text", "json", "m2", "singular"), default=None)
    p.add_argument("--dedup", action="store_true", help="collapse skeleta differing by a top permutation")
    p.add_argument("--out", required=True, help="output file (a directory for --mode skeleta)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load_presentation(spec: str):
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        return parse_presentation(fixtures.text(f"{name}.txt"))
    return load_presentation(spec)


def _dimvec(text: str, vertices) -> Dict[str, int]:
    parts = text.replace(";", ",").replace(",", " ").split()
    if len(parts) != len(vertices):
        raise QuivGrassError(f"--dimvec needs {len(vertices)} entries")
    return {v: int(x) for v, x in zip(vertices, parts)}


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _skeleton(args, pres, dimvec=None):
    if not args.skeleton:
        raise QuivGrassError(f"--mode {args.mode} needs --skeleton")
    sseq = SemisimpleSequence.parse(args.sseq, pres.vertices) if args.sseq else None
    return load_skeleton(args.skeleton, pres, sseq=sseq)


def _render(args, title: str, header: List[str], polys: List[Poly], variables, extra_json: dict,
            provenance: Optional[List[dict]] = None, alias=None) -> str:
    fmt = args.format or ("m2" if args.mode == "export" else "text")
    polys = canonical_list(polys)
    if fmt in ("m2", "singular"):
        return export_cas(polys, fmt, variables, title=title)
    shown = [rename(p, alias) for p in polys] if alias else polys
    if fmt == "json":
        payload = {"mode": args.mode, "title": title,
                   "variables": [str(v) for v in ordered_variables(polys, variables)],
                   "polynomials": [poly_to_json(p) for p in shown]}
        if alias:
            payload["aliases"] = {str(w): str(v) for v, w in alias.items()}
        if provenance is not None:
            payload["provenance"] = provenance
        payload.update(extra_json)
        return to_json(payload)
    lines = [f"# {title}"] + [f"# {h}" for h in header]
    lines += [str(p) for p in shown]
    return "\n".join(lines) + "\n"


def _crit_lines(crits) -> List[str]:
    out = [f"critical paths ({len(crits)}):"]
    for c in crits:
        out.append(f"  {c.path}  companions: " + (", ".join(map(str, c.companions)) or "-"))
    return out


def run(args) -> int:
    pres = _load_presentation(args.presentation)
    mode = args.mode

    if mode == "skeleta":
        if args.sseq:
            sks = enumerate_skeleta(SemisimpleSequence.parse(args.sseq, pres.vertices), pres, args.dedup)
        elif args.dimvec:
            sks = all_skeleta(pres, _dimvec(args.dimvec, pres.vertices), args.dedup)
        else:
            raise QuivGrassError("--mode skeleta needs --sseq or --dimvec")
        os.makedirs(args.out, exist_ok=True)
        width = max(3, len(str(len(sks))))
        for i, sk in enumerate(sks, 1):
            _write(os.path.join(args.out, f"skeleton_{i:0{width}d}.skel"), sk.format())
        print(f"{len(sks)} skeleta written to {args.out}")
        return 0

    if mode == "oracle":
        return _oracle(args, pres)

    dimvec = _dimvec(args.dimvec, pres.vertices) if args.dimvec else None
    sk = _skeleton(args, pres)

    if mode == "critical":
        crits = critical_paths(sk, pres, args.setting, dimvec)
        if (args.format or "text") == "json":
            payload = {"mode": mode, "skeleton": str(sk), "setting": args.setting,
                       "critical": [{"path": str(c.path), "companions": [str(b) for b in c.companions]}
                                    for c in crits]}
            _write(args.out, to_json(payload))
        else:
            _write(args.out, "\n".join([f"# skeleton {sk}"] + _crit_lines(crits)) + "\n")
        return 0

    if mode in ("grass-eqs", "export") and args.setting == "small":
        T = tau_system(pres, sk, "small")
        cert = detect_affine_space(T)
        header = [f"skeleton {sk}", "setting small"] + _crit_lines(T.ctx.crits)
        header.append(f"variables: {len(T.variables)}")
        prov = [{"relation": format_combination(pres.relations[r.relation]), "m": r.m, "l": r.l,
                 "polynomial": str(r.poly)} for r in T.records]
        if cert is not None and cert.empty:
            header.append("inconsistent system: the variety is empty")
            polys = [Poly.const(1)]
        elif cert is not None:
            header.append(f"equations: {len(cert.substitutions)} (triangular; affine dimension {cert.dimension})")
            polys = cert.equations()
        else:
            header.append(f"equations: {len(T.records)} (raw; no triangular certificate)")
            polys = T.polys
        extra = {"critical": [str(c.path) for c in T.ctx.crits],
                 "triangular": cert is not None and not cert.empty,
                 "affine_dimension": cert.dimension if cert is not None and not cert.empty else None,
                 "zero_coefficients": T.zero_count}
        _write(args.out, _render(args, "affine equations", header, polys, T.variables, extra, prov))
        return 0

    if mode in ("big-grass-eqs", "grass-eqs", "export"):
        big = big_tau_system(pres, sk, dimvec)
        R = reduce_index_set(big)
        header = [f"skeleton {sk}", "setting big"] + _crit_lines(big.ctx.crits)
        header.append("sigma': " + ", ".join(map(str, R.sigma_prime)))
        header.append("N0: " + ", ".join(f"({i},{j})={R.xvars[(i, j)]}" for i, j in R.N0))
        header.append(f"equations: {len(R.polys)}")
        extra = {"sigma_prime": [str(b) for b in R.sigma_prime],
                 "N0": [[i, j, str(R.xvars[(i, j)])] for i, j in R.N0]}
        _write(args.out, _render(args, "big-setting equations in N0 coordinates", header,
                                 R.polys, R.variables, extra))
        return 0

    big = big_tau_system(pres, sk, dimvec)
    R = reduce_index_set(big)
    E = lift_to_pluecker(R)
    S = schubert_system(E, R)
    alias = z_alias(S.z)
    B = E.B
    header = [f"skeleton {sk}",
              "B: " + ", ".join(map(str, B.w)),
              f"d={B.d} u={B.u} v={B.v} a={B.a} dim={B.dim}",
              f"Z = {S.z}"]
    header += [f"Yhat[{k},{l}] = {S.yhat[(k, l)]}  eps = {E.eps[(k, l)]:+d}" for k, l in R.N0]
    extra = {"basis": [str(b) for b in B.w], "eps": {f"{k},{l}": e for (k, l), e in E.eps.items()},
             "yhat": {f"{k},{l}": str(v) for (k, l), v in S.yhat.items()}, "Z": str(S.z)}
    if mode == "schubert-eqs":
        header += ["rho:"] + [f"  rho{list(T)} = {p}" for T, p in sorted(E.rho.items())]
        extra["rho"] = {",".join(map(str, T)): str(p) for T, p in sorted(E.rho.items())}
        polys = S.generators
        _write(args.out, _render(args, "Schubert-cell equations", header, polys, S.variables, extra,
                                 alias=alias))
        return 0

    H = homogenize_and_saturate(S, args.max_steps)
    if not H.saturated:
        header.append("WARNING: saturation hit the step cap; generators are NOT saturated")
    extra["saturated"] = H.saturated
    _write(args.out, _render(args, "projective equations", header, H.generators, S.variables, extra,
                             alias=alias))
    return 0 if H.saturated else 3


def _oracle(args, pres) -> int:
    if args.skeleton:
        sks = [load_skeleton(args.skeleton, pres)]
    elif args.sseq:
        sks = enumerate_skeleta(SemisimpleSequence.parse(args.sseq, pres.vertices), pres)
    elif args.dimvec:
        sks = all_skeleta(pres, _dimvec(args.dimvec, pres.vertices))
    else:
        raise QuivGrassError("--mode oracle needs --skeleton, --sseq or --dimvec")
    rng = random.Random(args.seed)
    lines = []
    passed = failed = skipped = 0
    for sk in sks:
        T = tau_system(pres, sk)
        cert = detect_affine_space(T)
        if cert is None or cert.empty:
            skipped += 1
            lines.append(f"skip {sk} ({'empty' if cert is not None else 'not triangular'})")
            continue
        ok = 0
        for _ in range(args.points):
            if verify_rep_point(to_rep_point(random_point(T, cert, rng)), pres):
                ok += 1
        passed += ok
        failed += args.points - ok
        lines.append(f"{'pass' if ok == args.points else 'FAIL'} {sk}: {ok}/{args.points}")
    summary = f"points passed: {passed}, failed: {failed}, skeleta skipped: {skipped}"
    _write(args.out, "\n".join(lines + [summary]) + "\n")
    print(summary)
    return 0 if failed == 0 else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    try:
        code = run(args)
    except (QuivGrassError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitExceeded as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return 3
    log.info("done in %.2fs", time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
