"""Command-line front end.

Objects are declared in a script (``--file`` or stdin) and referred to by name:

    koszullab reg M --file session.kz
    koszullab tor --i 1 M N --json < session.kz
    koszullab run-scenario conca-herzog --seed 7 --trials 100

Exit codes: 0 success, 1 a theorem-backed check failed, 2 input error,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import approx, groebner, linprod, resolution, scenarios, tor
from .dsl import Script, parse_script
from .errors import InputError, InternalError, MathAssertionError
from .groebner import ideal
from .modules import PresentedModule
from .poly import format_terms
from .resolution import regularity_value

EXIT_MATH, EXIT_INPUT, EXIT_INTERNAL = 1, 2, 3


def _j(v):
    return scenarios._jsonable(v)


def _module(script: Script, name: str) -> PresentedModule:
    """A module by name; an ideal name means S/I and a poly name S/(f)."""
    kind = script.kind(name)
    if kind == "ideal":
        return PresentedModule.cyclic(script.get(name))
    if kind == "poly":
        return PresentedModule.cyclic(groebner.ideal(script.ring, [script.get(name)]))
    return script.get(name, "module")


def _poly(script: Script, text: str):
    """A polynomial by name, or written inline."""
    if text in script.objects:
        return script.get(text, "poly")
    ring = script.ring
    sub = parse_script(f"ring p={ring.p} vars {','.join(ring.variables)}; poly _f = {text};")
    return sub.get("_f")


def _entries(ring, col, rank) -> list:
    out = []
    for r in range(rank):
        part = {ring.with_comp(k, 0): c for k, c in col.items() if ring.key_comp(k) == r}
        out.append(format_terms(ring, part))
    return out


def _presentation(M: PresentedModule) -> dict:
    ring = M.ring
    return {
        "generator_degrees": list(M.shifts),
        "relations": [_entries(ring, v, M.rank) for _, v in M.rel_raw()],
    }


# -- commands ----------------------------------------------------------------------


def cmd_gb(s, a):
    I = s.get(a.ideal, "ideal")
    return {"gb": [format_terms(s.ring, e.terms) for e in groebner.buchberger(I)]}


def cmd_nf(s, a):
    I = s.get(a.ideal, "ideal")
    f = _poly(s, a.poly)
    r = groebner.normal_form(f, I.gb)
    return {"nf": format_terms(s.ring, r.terms), "member": r.is_zero()}


def cmd_res(s, a):
    R = resolution.free_resolution(_module(s, a.module))
    C = R.complex
    return {
        "ranks": [F.rank for F in C.modules],
        "shifts": [list(F.shifts) for F in C.modules],
        "differentials": [
            [_entries(s.ring, col, C.modules[i].rank) for col in d] for i, d in enumerate(C.differentials)
        ],
    }


def cmd_betti(s, a):
    return resolution.betti_table(_module(s, a.module))


def cmd_reg(s, a):
    return {"reg": regularity_value(resolution.regularity(_module(s, a.module)))}


def cmd_hilbert(s, a):
    H = resolution.hilbert_series(_module(s, a.module))
    return {"numerator": H.numerator, "n": H.n, "dim": H.krull_dim(), "series": str(H)}


def cmd_dim(s, a):
    return {"dim": resolution.krull_dim(_module(s, a.module))}


def cmd_tor(s, a):
    T = tor.tor_module(_module(s, a.left), _module(s, a.right), a.i).value
    H = resolution.hilbert_series(T)
    return {
        "i": a.i,
        "reg": regularity_value(resolution.regularity(T)),
        "dim": H.krull_dim(),
        "hilbert_numerator": H.numerator,
        "presentation": _presentation(T),
    }


def cmd_creg(s, a):
    return tor.creg(_module(s, a.left), _module(s, a.right)).to_dict()


def cmd_torlinear(s, a):
    return tor.is_tor_linear(s.get(a.J, "ideal"), s.get(a.I, "ideal")).to_dict()


def cmd_linprod_decompose(s, a):
    return linprod.primary_decomposition_linprod(s.get(a.family, "family")).to_dict()


def cmd_colon_subring(s, a):
    return linprod.colon_subring_check(s.get(a.family, "family"), _poly(s, a.poly)).to_dict()


def cmd_proof_trace(s, a):
    F = s.get(a.family, "family")
    i_range = [a.i] if a.i is not None else None
    return linprod.proof_trace(F, _poly(s, a.poly), i_range).to_dict()


def _over(s, a) -> PresentedModule:
    M = _module(s, a.module)
    f = _poly(s, a.f)
    J = ideal(s.ring, [f])
    return PresentedModule(M.cover, M.relations, J)


def cmd_res_over(s, a):
    return resolution.resolution_over_hypersurface(_over(s, a), a.cutoff).betti


def cmd_reg_over(s, a):
    return resolution.truncated_regularity_over_R(_over(s, a), a.cutoff).to_dict()


def cmd_approx_verify(s, a):
    phi = s.get(a.map, "map")
    I = s.get(a.ideal, "ideal")
    out = {"kernel_and_cokernel_annihilated": approx.check_kernel_cokernel(phi, I)}
    from .modules import is_injective, is_surjective

    inj, surj = is_injective(phi), is_surjective(phi)
    out["injective"], out["surjective"] = inj, surj
    if surj:
        out["witness"] = approx.verify_witness(approx.witness_for_surjective(phi, I)).to_dict()
    elif inj:
        out["witness"] = approx.verify_witness(approx.witness_for_injective(phi, I)).to_dict()
    else:
        out["witness"] = None
    if a.B is not None:
        out["kerann"] = approx.kerann_report(phi, I, _module(s, a.B)).to_dict()
    return out


def cmd_ds_bound(s, a):
    P, M = s.get(a.P, "ideal"), s.get(a.M, "ideal")
    ideals = [s.get(n, "ideal") for n in a.ideals]
    sys_ = approx.system_from_colons(P, M, ideals, a.t)
    y = approx.find_filter_regular([sys_.N] + sys_.targets(), seed=a.seed)
    return {
        "filter_regular": str(y),
        "ds33": approx.check_DS33(sys_, y).to_dict(),
        "ds35": approx.check_DS35(sys_).to_dict(),
    }


def cmd_run_scenario(s, a):
    return scenarios.run_scenario(a.name, a.seed, a.trials, a.char or scenarios.DEFAULT_P)


def cmd_run(s, a):
    out = []
    for c in s.commands:
        sub = build_parser().parse_args([c.name] + list(c.args))
        if sub.command in ("run", "run-scenario"):
            raise InputError(f"{c.line}:{c.col}: {c.name!r} cannot be used inside a script")
        out.append({"command": " ".join([c.name] + c.args), "result": _as_data(sub.func(s, sub))})
    return {"results": out}


# subcommand -> (handler, engine operation it wraps)
COMMANDS = {
    "gb": (cmd_gb, groebner.buchberger),
    "nf": (cmd_nf, groebner.normal_form),
    "res": (cmd_res, resolution.free_resolution),
    "betti": (cmd_betti, resolution.betti_table),
    "reg": (cmd_reg, resolution.regularity),
    "hilbert": (cmd_hilbert, resolution.hilbert_series),
    "dim": (cmd_dim, resolution.krull_dim),
    "tor": (cmd_tor, tor.tor_module),
    "creg": (cmd_creg, tor.creg),
    "torlinear": (cmd_torlinear, tor.is_tor_linear),
    "linprod-decompose": (cmd_linprod_decompose, linprod.primary_decomposition_linprod),
    "colon-subring": (cmd_colon_subring, linprod.colon_subring_check),
    "proof-trace": (cmd_proof_trace, linprod.proof_trace),
    "res-over": (cmd_res_over, resolution.resolution_over_hypersurface),
    "reg-over": (cmd_reg_over, resolution.truncated_regularity_over_R),
    "approx-verify": (cmd_approx_verify, approx.verify_witness),
    "ds-bound": (cmd_ds_bound, approx.check_DS33),
    "run-scenario": (cmd_run_scenario, scenarios.run_scenario),
    "run": (cmd_run, parse_script),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--file", help="script file (default: stdin)")
    common.add_argument("--char", type=int, help="override the characteristic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1)
    common.add_argument("--cutoff", type=int, default=resolution.DEFAULT_CUTOFF)

    p = argparse.ArgumentParser(prog="koszullab", description="Graded commutative algebra over GF(p).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *pos):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for arg in pos:
            sp.add_argument(arg)
        sp.set_defaults(func=COMMANDS[name][0])
        return sp

    add("gb", "reduced Groebner basis of an ideal", "ideal")
    add("nf", "normal form of a polynomial modulo an ideal", "poly", "ideal")
    add("res", "minimal free resolution", "module")
    add("betti", "graded Betti table", "module")
    add("reg", "Castelnuovo-Mumford regularity", "module")
    add("hilbert", "Hilbert series", "module")
    add("dim", "Krull dimension", "module")
    sp = add("tor", "Tor_i(M, N) over S", "left", "right")
    sp.add_argument("--i", type=int, required=True)
    add("creg", "mixed regularity of a pair of modules", "left", "right")
    add("torlinear", "is S/J Tor-linear with respect to I", "J", "I")
    add("linprod-decompose", "decomposition of a product of linear ideals", "family")
    add("colon-subring", "generators of I:f inside k[V]", "family", "poly")
    sp = add("proof-trace", "regularity bounds along the colon tower", "family", "poly")
    sp.add_argument("--i", type=int, default=None)
    sp = add("res-over", "truncated resolution over S/(f)", "module")
    sp.add_argument("--f", required=True)
    sp = add("reg-over", "truncated regularity over S/(f)", "module")
    sp.add_argument("--f", required=True)
    sp = add("approx-verify", "I-approximation checks for a map", "map", "ideal")
    sp.add_argument("--B", default=None, help="module for the kernel annihilation report")
    sp = add("ds-bound", "regularity bounds for the colon system of P/M", "P", "M")
    sp.add_argument("ideals", nargs="+")
    sp.add_argument("--t", type=int, default=1)
    sp = add("run-scenario", "seeded example or property suite")
    sp.add_argument("name", choices=list(scenarios.SCENARIOS))
    add("run", "execute the commands listed in the script")
    return p


def _as_data(result):
    if hasattr(result, "to_dict"):
        return result.to_dict()
    return result


def _render_text(command: str, result) -> str:
    if isinstance(result, resolution.BettiTable):
        return result.format()
    if isinstance(result, scenarios.ScenarioReport):
        ok, total = result.counts
        lines = []
        for inst in result.instances:
            for name, good, value in inst.assertions:
                tag = "info" if not result.asserting else ("pass" if good else "FAIL")
                lines.append(f"[{tag}] trial {inst.trial}: {name} = {json.dumps(_j(value), sort_keys=True)}")
        lines.append(f"{result.scenario} seed={result.seed}: {ok}/{total} trials passed ({result.wall_clock:.2f}s)")
        return "\n".join(lines)
    data = _as_data(result)
    if command == "run":
        return "\n".join(f"{r['command']}: {json.dumps(_j(r['result']), sort_keys=True)}" for r in data["results"])
    if isinstance(data, dict):
        width = max((len(str(k)) for k in data), default=0)
        return "\n".join(f"{k:<{width}}  {json.dumps(_j(v), sort_keys=True) if not isinstance(v, str) else v}" for k, v in data.items())
    return str(data)


def _read_script(a) -> Script:
    if a.command == "run-scenario":
        return Script()
    if a.file and a.file != "-":
        with open(a.file, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    script = parse_script(text, a.char)
    if script.ring is None:
        raise InputError("the script declares no ring")
    return script


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        script = _read_script(a)
        result = a.func(script, a)
        if a.json:
            print(json.dumps(_j(_as_data(result)), sort_keys=True, separators=(",", ":")))
        else:
            print(_render_text(a.command, result))
        if isinstance(result, scenarios.ScenarioReport) and not result.passed:
            return EXIT_MATH
        return 0
    except MathAssertionError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.report:
            print(json.dumps(_j(e.report), sort_keys=True), file=sys.stderr)
        return EXIT_MATH
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:  # an engine bug surfaced as an unexpected exception
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
