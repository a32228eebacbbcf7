"""Command-line front end.

Subcommands: vsc (a single correlator), series (generating functions,
mirror maps, Gromov-Witten series), table-disk (the CP^2 disk column),
and verify (self-check suites).  Output is deterministic; rationals are
printed as strings, never floats.

Defaults for truncation, retry budget and thread count can live in a
key = value config file (--config, or quasimap.cfg in the working
directory); command-line flags override it.  The on-disk result cache
is controlled by the QUASIMAP_CACHE_DIR environment variable or the
cache_dir config key.
"""

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import residues
from .correlators import (
    Model,
    OpenTruncationPolicy,
    canonical_insertions,
    gf_closed,
    gf_open,
    selection_closed,
    selection_open,
    vsc_closed,
    vsc_open,
)
from .mirror import (
    disk_degree,
    disk_invariant_cp2,
    extract_gw,
    gmt_check_closed,
    gmt_check_open,
    gw_closed_gf,
    gw_open_gf,
    mirror_map_closed,
    mirror_map_open_cp2,
)
from .rational import Rat, rat_str
from .series import HalfInt, deg2_of


class CliError(Exception):
    pass


def load_config(path):
    """Simple key = value file; unknown keys are ignored."""
    out = {}
    if path is None:
        path = "quasimap.cfg"
        if not os.path.exists(path):
            return out
    elif not os.path.exists(path):
        raise CliError("config file not found: %s" % path)
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError("bad config line: %r" % line)
            key, value = (part.strip() for part in line.split("=", 1))
            out[key] = value
    return out


def parse_model(text):
    parts = text.split(":")
    try:
        if parts[0] == "cp" and len(parts) == 2:
            return Model.cp(int(parts[1]))
        if parts[0] == "hyp" and len(parts) == 3:
            return Model.hypersurface(int(parts[1]), int(parts[2]))
    except ValueError:
        pass
    raise CliError("bad model %r; expected cp:N or hyp:N:k" % text)


def parse_insertions(text):
    out = {}
    if not text:
        return out
    for chunk in text.split(","):
        try:
            j, m = chunk.split(":")
            out[int(j)] = out.get(int(j), 0) + int(m)
        except ValueError:
            raise CliError("bad insertion %r; expected j:m" % chunk)
    return out


def parse_dmax2(text):
    """Truncation order: an integer or a half-integer written p/2."""
    if "/" in text:
        num, den = text.split("/")
        if int(den) != 2:
            raise CliError("half-integer truncation must have denominator 2")
        return int(num)
    return 2 * int(text)


def _print(obj, fmt):
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(obj)


def cmd_vsc(args, config):
    model = parse_model(args.model)
    ins = parse_insertions(args.insert)
    if args.sector == "closed":
        if args.b is None:
            raise CliError("closed correlators need --b")
        value = vsc_closed(model, args.d, args.a, args.b, ins)
    else:
        value = vsc_open(model, args.d, args.a, ins)
    print(json.dumps({"value": rat_str(value)}))
    return 0


def _series_lines(series, prefix=""):
    text = str(series)
    return ["%s%s" % (prefix, text)]


def _series_json(series):
    return [
        {"deg2": d2, "monomial": list(expo), "coeff": rat_str(c)}
        for (d2, expo), c in series.sorted_terms()
    ]


def cmd_series(args, config):
    model = parse_model(args.model)
    dmax2 = parse_dmax2(args.dmax)
    dmax = (dmax2 + 1) // 2
    jmax = args.jmax or int(config.get("jmax", 0)) or None
    out = {}
    if args.stage == "mirror":
        if args.sector == "open" and model.kind == "cp":
            fmap = mirror_map_open_cp2(dmax2, jmax or max(2, dmax))
        else:
            fmap = mirror_map_closed(model, dmax, jmax)
        for name in sorted(fmap.corr):
            full = fmap.corr[name].add(
                fmap.corr[name].monomial(fmap.space, fmap.dmax2, 1, 0, {name: 1})
            )
            out["t%s" % name[1:]] = full
        out["t1 - x1"] = fmap.grading_corr
    elif args.stage == "gf":
        if args.sector == "closed":
            out["w"] = gf_closed(model, args.a, args.b, dmax, jmax or model.top_class)
        else:
            policy = OpenTruncationPolicy(dmax, jmax=jmax or max(2, dmax))
            out["w"] = gf_open(model, args.a, policy)
    else:
        if args.sector == "closed":
            out["gw"] = gw_closed_gf(model, args.a, args.b, dmax, jmax)
        else:
            policy = OpenTruncationPolicy(dmax, jmax=jmax or max(2, dmax))
            out["gw"] = gw_open_gf(model, args.a, policy)
    for name in list(out):
        series = out[name]
        if args.t0 is not None and "x0" in series.space.names:
            if Rat(args.t0):
                raise CliError("only --t0 0 is supported")
            series = series.set_var_zero("x0")
        series = series.truncate(dmax2)
        out[name] = series
    if args.format == "json":
        print(
            json.dumps(
                {name: _series_json(s) for name, s in sorted(out.items())},
                sort_keys=True,
            )
        )
    else:
        for name in sorted(out):
            print("%s = %s" % (name, out[name]))
    return 0


def cmd_table_disk(args, config):
    dmax = args.dmax
    if dmax > 4 and not args.extended:
        raise CliError("d > 4 needs --extended")
    threads = args.threads or int(config.get("threads", 1))
    rows = list(range(1, dmax + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(disk_invariant_cp2, rows))
    else:
        values = [disk_invariant_cp2(d) for d in rows]
    for d, value in zip(rows, values):
        print("%d\t%s" % (d, rat_str(value)))
    return 0


def _verify_axioms(args, config):
    model = parse_model(args.model)
    rng = random.Random(11)
    checks = []
    for _ in range(args.samples):
        d = rng.randint(1, 2)
        a = rng.randint(0, model.top_class)
        b = rng.randint(0, model.top_class)
        checks.append(
            (
                "puncture d=%d a=%d b=%d" % (d, a, b),
                vsc_closed(model, d, a, b, {0: 1}) == 0,
            )
        )
        s_target = (
            model.N * (d + 1) - 2
            if model.kind == "cp"
            else d * (model.N - model.k) + model.N - 3
        )
        s = s_target - a - b - 1
        if 0 <= s <= model.top_class:
            lhs = vsc_closed(model, d, a, b, {1: 1, s: 1} if s != 1 else {1: 2})
            rhs = Rat(d) * vsc_closed(model, d, a, b, {s: 1})
            checks.append(("divisor d=%d a=%d b=%d s=%d" % (d, a, b, s), lhs == rhs))
    return checks


def _verify_integrability(args, config):
    model = parse_model(args.model if args.model != "cp:3" else "hyp:8:9")
    # flat O_1 cap: the compared terms are then stable in the cap;
    # the comparison is made at t0 = 0 where that stability holds
    policy = OpenTruncationPolicy.flat(2, jmax=3)
    d_h = gw_open_gf(model, 1, policy).diff_var("x0").set_var_zero("x0")
    d_1 = gw_open_gf(model, 0, policy).diff_grading().set_var_zero("x0")
    return [("d/dt0 <O_h> == d/dt1 <O_1> at t0=0", d_h == d_1)]


def _verify_iritani(args, config):
    from .iritani import iritani_pipeline, mirror_map_mismatch

    res = iritani_pipeline(3, 10)
    qmap = mirror_map_closed(Model.cp(3), 3, 2)
    iri_c, quasi_c = mirror_map_mismatch(res, qmap)
    checks = [
        ("connection matrix z-free", res["z_free"]),
        ("mirror maps differ", iri_c != quasi_c),
        (
            "flat <O_h O_h2> equals quasimap series",
            res["flat_f1"] == gw_closed_gf(Model.cp(3), 1, 2, 3, 2),
        ),
        (
            "flat <O_h2 O_h2> equals quasimap series",
            res["flat_f2"] == gw_closed_gf(Model.cp(3), 2, 2, 3, 2),
        ),
    ]
    print("# mirror map leading corrections: %s (I-function) vs %s (quasimap)"
          % (rat_str(iri_c), rat_str(quasi_c)))
    return checks


def _verify_quadrature(args, config):
    from .correlators import _closed_integrand
    from .quadrature import quadrature_agreement

    checks = []
    model = Model.cp(3)
    # radii are chosen well separated from every pole so the trapezoid
    # error decays fast; they enclose the same poles as the exact engine
    for d, a, b, ins, radii, n in [
        (1, 2, 2, {}, (4, 18), 12),
        (2, 2, 2, {2: 3}, (4, 18, 4), 20),
    ]:
        cins = canonical_insertions(ins)
        space, fr = _closed_integrand(model, d, a, b, cins)
        exact = vsc_closed(model, d, a, b, ins)
        radii = dict(zip(space.names, radii))
        rep = quadrature_agreement(fr, radii, exact, n=n, precision=30)
        checks.append(
            (
                "closed d=%d a=%d b=%d" % (d, a, b),
                rep["difference"] < 1e-15 and rep["error"] < 1e-15,
            )
        )
    return checks


def _verify_gmt(args, config):
    model = parse_model(args.model if args.model != "cp:3" else "hyp:8:9")
    if model.kind != "hyp":
        raise CliError("the mirror-transformation identities apply to hypersurfaces")
    checks = []
    for d in (2, 3):
        lhs, rhs = gmt_check_closed(model, d, 1, 1)
        checks.append(("closed d=%d" % d, lhs == rhs))
    lhs, rhs = gmt_check_open(model, 2, 1)
    checks.append(("open d=2", lhs == rhs))
    return checks


_SUITES = {
    "axioms": _verify_axioms,
    "integrability": _verify_integrability,
    "iritani": _verify_iritani,
    "quadrature": _verify_quadrature,
    "gmt": _verify_gmt,
}


def cmd_verify(args, config):
    checks = _SUITES[args.suite](args, config)
    failed = 0
    for name, ok in checks:
        print(json.dumps({"check": name, "pass": bool(ok)}))
        if not ok:
            failed += 1
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="quasimap")
    parser.add_argument("--config", help="key = value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vsc", help="one virtual structure constant")
    p.add_argument("--model", required=True)
    p.add_argument("--sector", choices=("closed", "open"), default="closed")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--insert", default="")
    p.set_defaults(func=cmd_vsc)

    p = sub.add_parser("series", help="generating function / mirror map / GW series")
    p.add_argument("stage", choices=("gf", "mirror", "gw"))
    p.add_argument("--model", required=True)
    p.add_argument("--sector", choices=("closed", "open"), default="closed")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--dmax", required=True, help="integer, or p/2 for disks")
    p.add_argument("--jmax", type=int)
    p.add_argument("--t0", help="set t0 (only 0 supported)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("table-disk", help="CP^2 disk invariants table")
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_table_disk)

    p = sub.add_parser("verify", help="self-check suites")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--model", default="cp:3")
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        if "cache_dir" in config and "QUASIMAP_CACHE_DIR" not in os.environ:
            os.environ["QUASIMAP_CACHE_DIR"] = config["cache_dir"]
        if "retries" in config:
            residues.DEFAULT_MAX_RETRIES = int(config["retries"])
        return args.func(args, config)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except residues.IndecisivePole as exc:
        print(
            "error: %s (raise the retry budget with the retries config key)" % exc,
            file=sys.stderr,
        )
        return 3


if __name__ == "__main__":
    sys.exit(main())
