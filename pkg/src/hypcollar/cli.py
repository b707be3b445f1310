"""Command-line interface: classify, collar, sweep, oracle, verify.

Configs are strict JSON: unknown keys are rejected with the offending path.
Exit codes: 0 success, 2 malformed config, 3 numeric failure, 4 geometric
hypothesis violation, 5 mesh-resolution refusal.
"""

import argparse
import csv
import json
import math
import sys

from .classifier import (
    classify_exhaustion,
    sweep_scaled,
    sweep_two_parameter,
)
from .collar_modulus import (
    GluedCollarSpec,
    HalfCollarSpec,
    glued_collar_lambda,
    nonstandard_half_collar_lambda,
)
from .extremal_oracle import (
    OracleError,
    ResolutionError,
    annular_sector_domain,
    annulus_domain,
    comb_domain,
    comb_vertical_modulus,
    discrete_modulus,
    rectangle_domain,
    strip_domain,
)
from .graph_modulus import QuadratureError, sandwich_bounds
from .hypgeom import HypothesisError, standard_half_collar_lambda
from .surfaces import (
    AbelianCover,
    AlternatingLogAffine,
    BiInfiniteFlute,
    BoundedBoundary,
    CantorTree,
    Constant,
    ExplicitPrefixThenTail,
    Flute,
    FluteSpec,
    Ladder,
    Linear,
    LochNess,
    LogAffine,
    ScaledPowerDecay,
    SpecError,
)
from . import collar_modulus

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_HYPOTHESIS = 4
EXIT_RESOLUTION = 5


class ConfigError(ValueError):
    pass


def _check_keys(obj, allowed, path):
    extra = set(obj) - set(allowed)
    if extra:
        raise ConfigError(
            "unknown key(s) %s at %s" % (", ".join(sorted(extra)), path or "top level")
        )


def _number(value, path, allow_inf=False):
    if isinstance(value, bool):
        raise ConfigError("expected a number at %s" % path)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
        if allow_inf:
            return math.inf
        raise ConfigError("'inf' is not allowed at %s" % path)
    raise ConfigError("expected a number at %s, got %r" % (path, value))


def parse_sequence(obj, path):
    """Parse a sequence spec from strict JSON."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConfigError("sequence spec at %s must be an object with 'kind'" % path)
    kind = obj["kind"]
    if kind == "constant":
        _check_keys(obj, {"kind", "value"}, path)
        return Constant(_number(obj["value"], path + ".value"))
    if kind == "linear":
        _check_keys(obj, {"kind", "slope", "intercept"}, path)
        return Linear(
            _number(obj["slope"], path + ".slope"),
            _number(obj.get("intercept", 0.0), path + ".intercept"),
        )
    if kind == "log_affine":
        _check_keys(
            obj, {"kind", "a", "b", "c", "n0", "n1", "log_terms"}, path
        )
        if "log_terms" in obj:
            if "a" in obj or "n0" in obj:
                raise ConfigError(
                    "give either log_terms or a/n0 at %s, not both" % path
                )
            terms = tuple(
                (
                    _number(t[0], path + ".log_terms"),
                    _number(t[1], path + ".log_terms"),
                )
                for t in obj["log_terms"]
            )
        else:
            a = _number(obj.get("a", 0.0), path + ".a")
            n0 = _number(obj.get("n0", 0.0), path + ".n0")
            terms = ((a, n0),) if a else ()
        return LogAffine(
            log_terms=terms,
            loglog_coef=_number(obj.get("b", 0.0), path + ".b"),
            loglog_shift=_number(obj.get("n1", 1.0), path + ".n1"),
            const=_number(obj.get("c", 0.0), path + ".c"),
        )
    if kind == "alternating":
        _check_keys(obj, {"kind", "even", "odd"}, path)
        even = parse_sequence(obj["even"], path + ".even")
        odd = parse_sequence(obj["odd"], path + ".odd")
        if not isinstance(even, LogAffine) or not isinstance(odd, LogAffine):
            raise ConfigError("alternating branches must be log_affine at %s" % path)
        return AlternatingLogAffine(even=even, odd=odd)
    if kind == "prefix":
        _check_keys(obj, {"kind", "values", "tail"}, path)
        values = tuple(
            _number(v, path + ".values") for v in obj["values"]
        )
        return ExplicitPrefixThenTail(
            values=values, tail=parse_sequence(obj["tail"], path + ".tail")
        )
    if kind == "power_decay":
        _check_keys(obj, {"kind", "coef", "base"}, path)
        return ScaledPowerDecay(
            _number(obj["coef"], path + ".coef"),
            _number(obj["base"], path + ".base"),
        )
    raise ConfigError("unknown sequence kind %r at %s" % (kind, path))


def _twist_spec(obj, path):
    if obj is None:
        return Constant(0.0)
    return parse_sequence(obj, path)


def parse_surface(cfg):
    """Parse a classify config into an exhaustion spec plus options."""
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    _check_keys(
        cfg,
        {"type", "lengths", "twists", "beta_bound", "count_exponent",
         "lengths_neg", "twists_neg", "level_lengths", "rank", "config",
         "L", "tau", "eps", "ell", "use_twists", "hypotheses_asserted"},
        "",
    )
    t = cfg.get("type")
    use_twists = cfg.get("use_twists", False)
    hyps = tuple(cfg.get("hypotheses_asserted", ()))
    if not isinstance(use_twists, bool):
        raise ConfigError("use_twists must be a boolean")
    if t == "flute":
        spec = Flute(
            FluteSpec(
                lengths=parse_sequence(cfg["lengths"], "lengths"),
                twists=_twist_spec(cfg.get("twists"), "twists"),
            )
        )
    elif t == "bi_infinite_flute":
        spec = BiInfiniteFlute(
            lengths_pos=parse_sequence(cfg["lengths"], "lengths"),
            lengths_neg=parse_sequence(cfg["lengths_neg"], "lengths_neg")
            if "lengths_neg" in cfg
            else None,
            twists_pos=_twist_spec(cfg.get("twists"), "twists"),
            twists_neg=_twist_spec(cfg["twists_neg"], "twists_neg")
            if "twists_neg" in cfg
            else None,
        )
    elif t == "loch_ness":
        spec = LochNess(
            lengths=parse_sequence(cfg["lengths"], "lengths"),
            twists=_twist_spec(cfg.get("twists"), "twists"),
            beta_bound=_number(cfg.get("beta_bound", 1.0), "beta_bound"),
        )
    elif t == "ladder":
        spec = Ladder(
            lengths=parse_sequence(cfg["lengths"], "lengths"),
            twists=_twist_spec(cfg.get("twists"), "twists"),
            beta_bound=_number(cfg.get("beta_bound", 1.0), "beta_bound"),
        )
    elif t == "cantor_tree":
        spec = CantorTree(parse_sequence(cfg["level_lengths"], "level_lengths"))
    elif t == "bounded_boundary":
        spec = BoundedBoundary(
            lengths=parse_sequence(cfg["lengths"], "lengths"),
            twists=_twist_spec(cfg.get("twists"), "twists"),
            count_exponent=_number(cfg.get("count_exponent", 0.0), "count_exponent"),
        )
    elif t == "cover":
        spec = AbelianCover(
            rank=int(cfg["rank"]),
            config=cfg.get("config", "single"),
            L=parse_sequence(cfg["L"], "L") if "L" in cfg else None,
            tau=_twist_spec(cfg.get("tau"), "tau"),
            eps=parse_sequence(cfg["eps"], "eps") if "eps" in cfg else None,
            ell=parse_sequence(cfg["ell"], "ell") if "ell" in cfg else None,
        )
    else:
        raise ConfigError("unknown surface type %r" % (t,))
    return spec, use_twists, hyps


def _emit(data, output=None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args):
    with open(args.config) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("invalid JSON: %s" % exc)
    spec, use_twists, hyps = parse_surface(cfg)
    verdict = classify_exhaustion(
        spec, use_twists=use_twists, hypotheses_asserted=hyps
    )
    _emit(verdict.as_dict(), args.output)
    return EXIT_OK


def cmd_collar(args):
    l_alpha = args.l_alpha
    if args.standard:
        data = {
            "kind": "standard-half-collar",
            "l_alpha": l_alpha,
            "lambda": standard_half_collar_lambda(l_alpha),
        }
        _emit(data, args.output)
        return EXIT_OK
    if args.l_gamma is None:
        raise ConfigError("nonstandard collars need --l-gamma")
    if args.l_gamma2 is not None or args.twist is not None:
        if args.l_gamma2 is None or args.twist is None:
            raise ConfigError("glued collars need both --l-gamma2 and --twist")
        spec = GluedCollarSpec(
            l_alpha=l_alpha,
            l_gamma=args.l_gamma,
            l_gamma2=args.l_gamma2,
            twist=args.twist,
        )
        res = glued_collar_lambda(spec)
        data = {
            "kind": "glued-collar",
            "l_alpha": l_alpha,
            "twist": spec.twist,
            "lambda_lower": res.bounds.lower,
            "lambda_upper": res.bounds.upper,
            "lambda_geometric_mean": res.bounds.geometric_mean,
            "analytic_proxy": res.proxy,
            "standard_lambda": standard_half_collar_lambda(l_alpha),
        }
        _emit(data, args.output)
        return EXIT_OK
    spec = HalfCollarSpec(l_alpha=l_alpha, l_gamma=args.l_gamma)
    bounds = nonstandard_half_collar_lambda(spec)
    data = {
        "kind": "nonstandard-half-collar",
        "l_alpha": l_alpha,
        "l_gamma": args.l_gamma,
        "lambda_lower": bounds.lower,
        "lambda_upper": bounds.upper,
        "lambda_geometric_mean": bounds.geometric_mean,
        "standard_lambda": standard_half_collar_lambda(l_alpha),
    }
    _emit(data, args.output)
    return EXIT_OK


def cmd_sweep(args):
    with open(args.config) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("invalid JSON: %s" % exc)
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    _check_keys(cfg, {"family", "a", "b", "s"}, "")
    family = cfg.get("family")
    if family == "two-parameter":
        for key in ("a", "b"):
            if key not in cfg or not isinstance(cfg[key], list):
                raise ConfigError("two-parameter sweep needs lists 'a' and 'b'")
        rows = sweep_two_parameter(
            [_number(v, "a") for v in cfg["a"]],
            [_number(v, "b") for v in cfg["b"]],
        )
        fields = ["a", "b", "kind", "reason", "criterion"]
    elif family == "scaled":
        if "s" not in cfg or not isinstance(cfg["s"], list):
            raise ConfigError("scaled sweep needs a list 's'")
        rows = sweep_scaled([_number(v, "s") for v in cfg["s"]])
        fields = ["s", "kind", "reason", "criterion"]
    else:
        raise ConfigError("unknown sweep family %r" % (family,))
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def _oracle_domain(cfg):
    _check_keys(
        cfg,
        {"shape", "width", "height", "h", "r1", "r2", "theta", "epsilon",
         "l_alpha", "l_gamma", "l_gamma2", "twist", "refine"},
        "",
    )
    shape = cfg.get("shape")
    h = _number(cfg["h"], "h") if "h" in cfg else None
    if shape == "rectangle":
        return rectangle_domain(
            _number(cfg["width"], "width"),
            _number(cfg["height"], "height"),
            h or 1.0 / 128,
        )
    if shape == "annulus":
        return annulus_domain(
            _number(cfg["r1"], "r1"), _number(cfg["r2"], "r2"), h or 1.0 / 128
        )
    if shape == "annular_sector":
        return annular_sector_domain(
            _number(cfg["r1"], "r1"),
            _number(cfg["r2"], "r2"),
            _number(cfg["theta"], "theta"),
            h or 1.0 / 128,
        )
    if shape == "comb":
        return comb_domain(_number(cfg["epsilon"], "epsilon"), h=h)
    if shape == "half_collar":
        spec = HalfCollarSpec(
            _number(cfg["l_alpha"], "l_alpha"),
            _number(cfg["l_gamma"], "l_gamma", allow_inf=True),
        )
        return strip_domain(
            collar_modulus.nonstandard_half_collar_graphs(spec), h=h
        )
    if shape == "glued_collar":
        spec = GluedCollarSpec(
            _number(cfg["l_alpha"], "l_alpha"),
            _number(cfg["l_gamma"], "l_gamma", allow_inf=True),
            _number(cfg["l_gamma2"], "l_gamma2", allow_inf=True),
            _number(cfg["twist"], "twist"),
        )
        return strip_domain(collar_modulus.glued_collar_graphs(spec), h=h)
    raise ConfigError("unknown oracle shape %r" % (shape,))


def cmd_oracle(args):
    with open(args.config) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("invalid JSON: %s" % exc)
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    refine = cfg.get("refine", True)
    dom = _oracle_domain(cfg)
    est = discrete_modulus(dom, refine=bool(refine))
    _emit(
        {
            "domain": dom.name,
            "modulus": est.value,
            "meshes": list(est.meshes),
            "raw_values": list(est.raw_values),
            "error_bar": est.error_bar,
            "extrapolated": est.extrapolated,
        },
        args.output,
    )
    return EXIT_OK


def _verify_calibration():
    checks = []
    r = discrete_modulus(rectangle_domain(3.0, 1.0, 1.0 / 64))
    checks.append(("rectangle-3x1", r.value, 3.0, abs(r.value / 3.0 - 1) < 5e-3))
    a = discrete_modulus(annulus_domain(1.0, math.e, 1.0 / 64))
    checks.append(
        ("annulus-e", a.value, 2 * math.pi, abs(a.value / (2 * math.pi) - 1) < 1e-2)
    )
    s = discrete_modulus(annular_sector_domain(1.0, math.e, math.pi / 2, 1.0 / 64))
    checks.append(
        ("sector-2/pi", s.value, 2 / math.pi, abs(s.value / (2 / math.pi) - 1) < 1e-2)
    )
    return checks


def _verify_standard_collar():
    checks = []
    from .graph_modulus import constant_pair

    for l in (1.0, 2.0, 4.0):
        lam = standard_half_collar_lambda(l)
        est = discrete_modulus(strip_domain(constant_pair(lam), h=lam / 64))
        checks.append(
            ("standard-collar-l=%g" % l, 1.0 / est.value, lam,
             abs(1.0 / est.value / lam - 1) < 2e-2)
        )
    return checks


def _verify_comb():
    checks = []
    prev = None
    for eps in (0.2, 0.1):
        est = discrete_modulus(comb_domain(eps))
        ratio = comb_vertical_modulus(eps) / est.value
        ok = ratio < prev if prev is not None else True
        checks.append(("comb-eps=%g" % eps, ratio, "decreasing", ok))
        prev = ratio
    return checks


def _verify_sandwich():
    checks = []
    for l_gamma in (math.inf, 1.0):
        spec = HalfCollarSpec(4.0, l_gamma)
        pair = collar_modulus.nonstandard_half_collar_graphs(spec)
        sb = sandwich_bounds(pair, 1.0 / 4.0)
        est = discrete_modulus(strip_domain(pair))
        ok = sb.lower <= est.value <= sb.upper
        checks.append(
            ("half-collar-l=4-gamma=%s" % l_gamma, est.value,
             "[%g, %g]" % (sb.lower, sb.upper), ok)
        )
    return checks


def cmd_verify(args):
    suites = {
        "calibration": _verify_calibration,
        "standard-collar": _verify_standard_collar,
        "comb": _verify_comb,
        "sandwich": _verify_sandwich,
    }
    if args.suite not in suites:
        raise ConfigError(
            "unknown suite %r (choose from %s)"
            % (args.suite, ", ".join(sorted(suites)))
        )
    checks = suites[args.suite]()
    report = {
        "suite": args.suite,
        "checks": [
            {"name": n, "value": v, "target": t, "ok": ok}
            for (n, v, t, ok) in checks
        ],
        "ok": all(ok for (_, _, _, ok) in checks),
    }
    _emit(report, args.output)
    return EXIT_OK if report["ok"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hypcollar",
        description="Collar moduli and parabolicity tests for flute-type "
        "hyperbolic surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a surface config")
    p.add_argument("--config", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_classify)

    def length(value):
        if value.strip().lower() in ("inf", "infinity"):
            return math.inf
        try:
            return float(value)
        except ValueError:
            raise argparse.ArgumentTypeError("not a length: %r" % value)

    p = sub.add_parser("collar", help="collar extremal distances")
    p.add_argument("--l-alpha", type=length, required=True)
    p.add_argument("--l-gamma", type=length)
    p.add_argument("--l-gamma2", type=length)
    p.add_argument("--twist", type=float)
    p.add_argument("--standard", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_collar)

    p = sub.add_parser("sweep", help="classify a parameter grid to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="discrete modulus of a domain")
    p.add_argument("--config", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SpecError, FileNotFoundError, KeyError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        if isinstance(exc, HypothesisError):
            print("hypothesis violation: %s" % exc, file=sys.stderr)
            return EXIT_HYPOTHESIS
        if isinstance(exc, ResolutionError):
            print("mesh refusal: %s" % exc, file=sys.stderr)
            return EXIT_RESOLUTION
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except (OracleError, QuadratureError, ArithmeticError) as exc:
        print("numeric failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
