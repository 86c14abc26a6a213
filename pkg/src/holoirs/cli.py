"""Command-line front end: ``holoirs <command> [--scenario FILE] [flags]``."""

from __future__ import annotations

import argparse
import sys
import warnings

from .commands import run
from .errors import HoloIRSError, ScenarioParseError
from .scenario import COMMANDS, CONVENTIONS, PROFILE_MODES, _Fields, build_scenario, load_sections, with_defaults
from .spacefactor import EVALUATORS, SWEEP_AXES

PROG = "holoirs"


class _Parser(argparse.ArgumentParser):
    # argparse exits with its own message format; route usage errors through ours
    def error(self, message):
        raise ScenarioParseError(message)


def _point(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected r_m,theta_deg,phi_deg, got {text!r}")
    return parts


def _sweep(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (4, 5):
        raise argparse.ArgumentTypeError(f"expected axis,start,stop,count[,unit], got {text!r}")
    return parts


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--scenario", metavar="FILE", help="scenario INI file; flags override its values")
    p.add_argument("-o", "--output", metavar="CSV", help="write the table here instead of stdout")
    p.add_argument("--f", dest="frequency", metavar="HZ", help="carrier frequency in Hz")
    p.add_argument("--wavelength", metavar="M", help="wavelength in metres (overrides --f)")
    p.add_argument("--L", dest="L", metavar="LEN", help="square surface side, metres or '<n>lambda'")
    p.add_argument("--Ly", metavar="LEN")
    p.add_argument("--Lz", metavar="LEN")
    p.add_argument("--tile", metavar="LEN", help="tile side for the discrete surface")
    p.add_argument("--evaluator", choices=EVALUATORS)
    p.add_argument("--tx", type=_point, metavar="R,THETA,PHI")
    p.add_argument("--rx", type=_point, metavar="R,THETA,PHI")
    p.add_argument("--obs", type=_point, metavar="R,THETA,PHI")
    p.add_argument("--sweep", type=_sweep, metavar="AXIS,START,STOP,COUNT[,UNIT]",
                   help=f"axis one of {', '.join(SWEEP_AXES)}")
    p.add_argument("--profile", choices=PROFILE_MODES)
    p.add_argument("--target", choices=("rx", "observation"))
    p.add_argument("--convention", choices=CONVENTIONS)
    p.add_argument("--r1", metavar="M")
    p.add_argument("--r2", metavar="M")
    p.add_argument("--L-list", dest="L_list", metavar="LEN,LEN,...")
    p.add_argument("--probe-r", dest="probe_r", metavar="M")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Near-field beampatterns and path loss of holographic surfaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    run_p = sub.add_parser("run", help="run the command named in a scenario file")
    run_p.add_argument("scenario_file", metavar="FILE")
    run_p.add_argument("-o", "--output", metavar="CSV")
    for name in COMMANDS:
        _add_common(sub.add_parser(name, help=f"{name} table"))
    return parser


def overrides_from_args(args) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {}

    def put(section, key, value):
        if value is not None:
            out.setdefault(section, {})[key] = str(value)

    get = lambda name: getattr(args, name, None)  # noqa: E731
    put("link", "frequency_hz", get("frequency"))
    put("link", "wavelength_m", get("wavelength"))
    for key, value in (("ly_m", get("L")), ("lz_m", get("L")), ("ly_m", get("Ly")), ("lz_m", get("Lz"))):
        put("surface", key, value)
    put("surface", "tile_y_m", get("tile"))
    put("surface", "tile_z_m", get("tile"))
    put("surface", "l_list", get("L_list"))
    put("scenario", "evaluator", get("evaluator"))
    put("scenario", "target", get("target"))
    for section, name in (("tx", "tx"), ("rx", "rx"), ("observation", "obs")):
        if get(name) is not None:
            for key, value in zip(("r_m", "theta_deg", "phi_deg"), get(name)):
                put(section, key, value)
    if get("sweep") is not None:
        parts = get("sweep")
        for key, value in zip(("axis", "start", "stop", "count", "unit"), parts):
            put("sweep", key, value)
    put("profile", "mode", get("profile"))
    put("pathloss", "convention", get("convention"))
    put("users", "r1_m", get("r1"))
    put("users", "r2_m", get("r2"))
    put("probe", "r_m", get("probe_r"))
    return out


def _resolve(args):
    if args.command == "run":
        sections = load_sections(args.scenario_file)
        command = _Fields(sections).choice("scenario", "command", COMMANDS)
        overrides = {}
    else:
        command = args.command
        sections = load_sections(args.scenario) if args.scenario else {}
        if "command" in sections.get("scenario", {}) and sections["scenario"]["command"].strip() != command:
            raise ScenarioParseError(
                f"field [scenario] command: file is for {sections['scenario']['command'].strip()!r}, not {command!r}"
            )
        overrides = overrides_from_args(args)
    return build_scenario(with_defaults(command, sections, overrides), command)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        scenario = _resolve(args)
        output = args.output or scenario.output
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text = run(scenario).render()
        for w in caught:
            print(f"{PROG}: warning: {w.message}", file=sys.stderr)
    except HoloIRSError as exc:
        print(f"{PROG}: error[{exc.tag}]: {exc}", file=sys.stderr)
        return exc.exit_code
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
