"""Scenario files: grammar, typed representation and CSV output.

A scenario is an INI file (``configparser`` dialect, ``;`` or ``#``
comments).  Keys carry their unit in the name (``r_m``, ``theta_deg``,
``frequency_hz``...).  Lengths on the surface accept the ``<number>lambda``
shorthand, expanded with the scenario's frequency.  The full grammar is in
``docs/scenario-format.md``.
"""

from __future__ import annotations

import configparser
import io
import math
import re
from dataclasses import dataclass, field

from .errors import DomainError, ScenarioParseError
from .geometry import SphericalPoint, SurfaceSpec, wavelength
from .incident import PhaseProfile
from .link import DEFAULT_KAPPA_ABS, ElementPattern, LinkBudget, from_db
from .spacefactor import EVALUATORS, SWEEP_AXES, DiscreteSurfaceSpec, OracleGrid, Sweep

SCHEMA_VERSION = "1"
COMMANDS = ("beampattern", "scattered-field", "pathloss-compare", "fresnel-zone", "discretize-study", "multiuser")
PROFILE_MODES = ("zero", "explicit", "focus", "steer", "track")
CONVENTIONS = ("literal", "swapped")

_LAMBDA = re.compile(r"^\s*([-+0-9.eE]*)\s*(lambda|λ)\s*$")

# per-command defaults; the no-argument run of each command reproduces a
# published parameter set
_COMMON = {
    "scenario": {"schema": "1", "evaluator": "holographic"},
    "link": {"frequency_hz": "300e9"},
}
# link-budget defaults, only for the commands that use a link budget
_BUDGET = {"pt_w": "1", "gt_dbi": "0", "gr_dbi": "0", "kappa_abs_per_m": str(DEFAULT_KAPPA_ABS), "noise_w": "1e-12"}
DEFAULTS: dict[str, dict[str, dict[str, str]]] = {
    "beampattern": {
        "tx": {"r_m": "2", "theta_deg": "45", "phi_deg": "36"},
        "rx": {"r_m": "2", "theta_deg": "45", "phi_deg": "30"},
        "observation": {"r_m": "8", "theta_deg": "45", "phi_deg": "30"},
        "surface": {"ly_m": "200lambda", "lz_m": "200lambda"},
        "profile": {"mode": "track"},
        "sweep": {"axis": "phi", "start": "10", "stop": "50", "count": "401", "unit": "deg"},
    },
    "discretize-study": {
        "tx": {"r_m": "2", "theta_deg": "45", "phi_deg": "36"},
        "rx": {"r_m": "2", "theta_deg": "45", "phi_deg": "45"},
        "observation": {"r_m": "8", "theta_deg": "45", "phi_deg": "45"},
        "surface": {"ly_m": "66lambda", "lz_m": "66lambda", "tile_y_m": "1lambda", "tile_z_m": "1lambda"},
        "profile": {"mode": "track"},
        "sweep": {"axis": "theta", "start": "20", "stop": "70", "count": "501", "unit": "deg"},
    },
    "pathloss-compare": {
        "link": {**_BUDGET, "gt_dbi": "20", "gr_dbi": "0", "kappa_abs_per_m": "0.0033"},
        "tx": {"r_m": "2", "theta_deg": "60", "phi_deg": "90"},
        "rx": {"r_m": "1", "theta_deg": "45", "phi_deg": "90"},
        "surface": {"ly_m": "0.5lambda", "lz_m": "0.5lambda"},
        "profile": {"mode": "steer"},
        "element": {"gamma": str(math.pi), "q": "0.285"},
        "pathloss": {"convention": "swapped"},
        "sweep": {"axis": "r", "start": "1", "stop": "10", "count": "91", "unit": "m"},
    },
    "fresnel-zone": {
        "surface": {"ly_m": "0.2", "lz_m": "0.2"},
    },
    "multiuser": {
        "users": {"r1_m": "2", "r2_m": "8", "theta_deg": "45", "phi_deg": "30"},
        "surface": {"ly_m": "200lambda", "lz_m": "200lambda"},
    },
}
DEFAULTS["scattered-field"] = {**DEFAULTS["beampattern"], "link": {**_BUDGET, "incident_v_per_m": "1"}}

_POINT_KEYS = ("r_m", "theta_deg", "phi_deg")
KNOWN_KEYS: dict[str, tuple[str, ...]] = {
    "scenario": ("schema", "command", "evaluator", "output", "target"),
    "link": ("frequency_hz", "wavelength_m", "pt_w", "gt_dbi", "gr_dbi", "kappa_abs_per_m", "noise_w",
             "incident_v_per_m"),
    "tx": _POINT_KEYS,
    "rx": _POINT_KEYS,
    "observation": _POINT_KEYS,
    "surface": ("ly_m", "lz_m", "tile_y_m", "tile_z_m", "l_list"),
    "profile": ("mode", "c1_per_m", "c2", "c3_per_m", "c4") + _POINT_KEYS,
    "sweep": ("axis", "start", "stop", "count", "unit"),
    "element": ("gamma", "q"),
    "pathloss": ("convention",),
    "users": ("r1_m", "r2_m", "theta_deg", "phi_deg"),
    "probe": ("r_m",),
    "oracle": ("samples_per_cycle", "budget_cells", "tol"),
}


def _check_names(sections):
    for sec, keys in sections.items():
        if sec not in KNOWN_KEYS:
            raise ScenarioParseError(f"unknown section [{sec}]")
        for key in keys:
            if key not in KNOWN_KEYS[sec]:
                raise ScenarioParseError(f"unknown field [{sec}] {key}")


def parse_sections(text: str, source: str = "<scenario>") -> dict[str, dict[str, str]]:
    """Parse INI text into ``{section: {key: value}}`` with line-numbered errors."""
    cp = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=(";", "#"), comment_prefixes=(";", "#"),
        default_section="__none__",
    )
    try:
        cp.read_string(text, source=source)
    except configparser.MissingSectionHeaderError as exc:
        raise ScenarioParseError(f"{source}:{exc.lineno}: expected a [section] header, got {exc.line.strip()!r}") from None
    except configparser.DuplicateSectionError as exc:
        raise ScenarioParseError(f"{source}:{exc.lineno}: duplicate section [{exc.section}]") from None
    except configparser.DuplicateOptionError as exc:
        raise ScenarioParseError(f"{source}:{exc.lineno}: duplicate key {exc.option!r} in [{exc.section}]") from None
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ScenarioParseError(f"{source}:{lineno}: cannot parse {line.strip()!r}") from None
    return {name: dict(cp[name]) for name in cp.sections()}


def load_sections(path: str) -> dict[str, dict[str, str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioParseError(f"{path}: cannot read scenario ({exc.strerror})") from None
    return parse_sections(text, source=path)


def merge(*layers: dict[str, dict[str, str]]) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {}
    for layer in layers:
        for section, keys in layer.items():
            out.setdefault(section, {}).update(keys)
    return out


class _Fields:
    """Typed accessors over raw sections, reporting ``[section] key`` on failure."""

    def __init__(self, sections):
        self.sections = sections

    def has(self, section, key=None) -> bool:
        if key is None:
            return section in self.sections
        return key in self.sections.get(section, {})

    def raw(self, section, key) -> str:
        try:
            return self.sections[section][key]
        except KeyError:
            raise ScenarioParseError(f"missing field [{section}] {key}") from None

    def number(self, section, key, default=None) -> float:
        if default is not None and not self.has(section, key):
            return default
        text = self.raw(section, key)
        try:
            value = float(text)
        except ValueError:
            raise ScenarioParseError(f"field [{section}] {key}: not a number: {text!r}") from None
        if not math.isfinite(value):
            raise ScenarioParseError(f"field [{section}] {key}: must be finite, got {text!r}")
        return value

    def integer(self, section, key) -> int:
        text = self.raw(section, key)
        try:
            return int(text)
        except ValueError:
            raise ScenarioParseError(f"field [{section}] {key}: not an integer: {text!r}") from None

    def length(self, section, key, lam: float) -> float:
        text = self.raw(section, key)
        m = _LAMBDA.match(text)
        if m:
            coef = m.group(1) or "1"
            try:
                return float(coef) * lam
            except ValueError:
                raise ScenarioParseError(f"field [{section}] {key}: bad wavelength multiple {text!r}") from None
        text = text.strip()
        if text.endswith("m") and not text.endswith("lambda"):
            text = text[:-1]
        try:
            value = float(text)
        except ValueError:
            raise ScenarioParseError(
                f"field [{section}] {key}: expected metres or '<n>lambda', got {self.raw(section, key)!r}"
            ) from None
        return value

    def choice(self, section, key, options, default=None) -> str:
        if default is not None and not self.has(section, key):
            return default
        value = self.raw(section, key).strip()
        if value not in options:
            raise ScenarioParseError(f"field [{section}] {key}: {value!r} is not one of {', '.join(options)}")
        return value

    def point(self, section, unchecked=False, swap=False) -> SphericalPoint:
        r = self.number(section, "r_m")
        theta = math.radians(self.number(section, "theta_deg"))
        phi = math.radians(self.number(section, "phi_deg"))
        if swap:
            theta, phi = phi, theta
        if unchecked:
            if not r > 0:
                raise DomainError(f"[{section}] radial distance must be positive, got {r!r}")
            return SphericalPoint.unchecked(r, theta, phi)
        try:
            return SphericalPoint(r, theta, phi)
        except DomainError as exc:
            raise DomainError(f"[{section}] {exc}") from None


@dataclass(frozen=True)
class Scenario:
    """A fully validated scenario; angles in radians, lengths in metres."""

    command: str
    evaluator: str
    frequency: float
    link: LinkBudget | None
    surface: SurfaceSpec | None
    discrete: DiscreteSurfaceSpec | None = None
    tx: SphericalPoint | None = None
    rx: SphericalPoint | None = None
    observation: SphericalPoint | None = None
    profile_mode: str = "zero"
    profile: PhaseProfile | None = None
    profile_point: SphericalPoint | None = None
    sweep: Sweep | None = None
    sweep_unit: str = "rad"
    incident_magnitude: float | None = None
    element: ElementPattern | None = None
    convention: str = "swapped"
    users: tuple[float, float, float, float] | None = None
    lengths: tuple[float, ...] = ()
    probe_r: float | None = None
    oracle: OracleGrid | None = None
    output: str | None = None
    target: str = "rx"
    echo: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    @property
    def wavelength(self) -> float:
        return wavelength(self.frequency)


def _echo(sections) -> tuple[tuple[str, str], ...]:
    return tuple(
        (f"{sec}.{key}", sections[sec][key])
        for sec in sorted(sections)
        for key in sorted(sections[sec])
        if not (sec == "scenario" and key == "output")
    )


def _profile(f: _Fields, command: str, unchecked: bool, swap: bool):
    mode = f.choice("profile", "mode", PROFILE_MODES, default="zero")
    coeff_keys = ("c1_per_m", "c2", "c3_per_m", "c4")
    point_keys = ("r_m", "theta_deg", "phi_deg")
    given_coeffs = [k for k in coeff_keys if f.has("profile", k)]
    given_point = [k for k in point_keys if f.has("profile", k)]
    if mode != "explicit" and given_coeffs:
        raise ScenarioParseError(
            f"[profile] mode={mode} conflicts with explicit coefficients {', '.join(given_coeffs)};"
            " exactly one profile mode is allowed"
        )
    if mode not in ("focus", "steer") and given_point:
        raise ScenarioParseError(
            f"[profile] mode={mode} conflicts with focus-point keys {', '.join(given_point)};"
            " exactly one profile mode is allowed"
        )
    if mode == "explicit":
        c = [f.number("profile", k) for k in coeff_keys]
        return mode, PhaseProfile(*c), None
    if mode == "zero":
        return mode, PhaseProfile(), None
    if mode == "focus":
        return mode, None, f.point("profile", unchecked, swap)
    if mode == "steer":
        if given_point:
            p = f.point("profile", unchecked, swap) if "r_m" in given_point else None
            if p is None:
                theta = math.radians(f.number("profile", "theta_deg"))
                phi = math.radians(f.number("profile", "phi_deg"))
                if swap:
                    theta, phi = phi, theta
                p = (SphericalPoint.unchecked if unchecked else SphericalPoint)(1.0, theta, phi)
            return mode, None, p
        return mode, None, None  # steer toward the receiver
    return mode, None, None  # track


def build_scenario(sections: dict[str, dict[str, str]], command: str | None = None) -> Scenario:
    """Validate merged sections into a :class:`Scenario`."""
    _check_names(sections)
    f = _Fields(sections)
    if f.has("scenario", "schema") and f.raw("scenario", "schema").strip() != SCHEMA_VERSION:
        raise ScenarioParseError(
            f"field [scenario] schema: unsupported version {f.raw('scenario', 'schema')!r} (expected {SCHEMA_VERSION})"
        )
    if command is None:
        command = f.choice("scenario", "command", COMMANDS)
    elif command not in COMMANDS:
        raise ScenarioParseError(f"unknown command {command!r}")
    evaluator = f.choice("scenario", "evaluator", EVALUATORS, default="holographic")
    output = sections.get("scenario", {}).get("output")

    if f.has("link", "wavelength_m"):
        lam = f.number("link", "wavelength_m")
        if not lam > 0:
            raise DomainError(f"[link] wavelength must be positive, got {lam!r}")
        frequency = wavelength(1.0) / lam
    else:
        frequency = f.number("link", "frequency_hz")
        if not frequency > 0:
            raise DomainError(f"[link] frequency must be positive, got {frequency!r}")
        lam = wavelength(frequency)

    link = None
    if command in ("pathloss-compare", "scattered-field"):
        link = LinkBudget(
            P_t=f.number("link", "pt_w"),
            G_t=float(from_db(f.number("link", "gt_dbi"))),
            G_r=float(from_db(f.number("link", "gr_dbi"))),
            f=frequency,
            kappa_abs=f.number("link", "kappa_abs_per_m"),
            noise_var=f.number("link", "noise_w"),
        )

    surface = None
    discrete = None
    lengths: tuple[float, ...] = ()
    if command == "multiuser" and f.has("surface", "l_list"):
        items = [x for x in f.raw("surface", "l_list").split(",") if x.strip()]
        lengths = tuple(_Fields({"surface": {"l": x}}).length("surface", "l", lam) for x in items)
        if not lengths:
            raise ScenarioParseError("field [surface] l_list: empty list")
    else:
        surface = SurfaceSpec(f.length("surface", "ly_m", lam), f.length("surface", "lz_m", lam))
        lengths = (surface.L_max,)
    if surface is not None and (evaluator == "discrete" or command == "discretize-study"):
        tile_y = f.length("surface", "tile_y_m", lam)
        tile_z = f.length("surface", "tile_z_m", lam) if f.has("surface", "tile_z_m") else tile_y
        discrete = DiscreteSurfaceSpec.from_surface(surface, tile_y, tile_z)

    convention = f.choice("pathloss", "convention", CONVENTIONS, default="swapped")
    literal = command == "pathloss-compare" and convention == "literal"
    swap = command == "pathloss-compare" and convention == "swapped"

    target = f.choice("scenario", "target", ("rx", "observation"), default="rx")
    kwargs = dict(command=command, evaluator=evaluator, target=target, frequency=frequency, link=link,
                  surface=surface, discrete=discrete, lengths=lengths, output=output,
                  convention=convention, echo=_echo(sections))

    if command in ("beampattern", "scattered-field", "discretize-study", "pathloss-compare"):
        kwargs["tx"] = f.point("tx", literal, swap)
        if f.has("rx"):
            kwargs["rx"] = f.point("rx", literal, swap)
        elif command in ("scattered-field", "pathloss-compare"):
            raise ScenarioParseError(f"missing section [rx] (required by {command})")
        if command != "pathloss-compare":
            kwargs["observation"] = f.point("observation")
        mode, profile, point = _profile(f, command, literal, swap)
        kwargs.update(profile_mode=mode, profile=profile, profile_point=point)
        kwargs.update(_sweep(f, command))
    if command == "scattered-field" and f.has("link", "incident_v_per_m"):
        kwargs["incident_magnitude"] = f.number("link", "incident_v_per_m")
    if command == "pathloss-compare":
        kwargs["element"] = ElementPattern(f.number("element", "gamma"), f.number("element", "q"))
    if command == "multiuser":
        kwargs["users"] = tuple(f.number("users", k) for k in ("r1_m", "r2_m", "theta_deg", "phi_deg"))
    if command == "fresnel-zone" and f.has("probe", "r_m"):
        kwargs["probe_r"] = f.number("probe", "r_m")
    if f.has("oracle"):
        kwargs["oracle"] = OracleGrid(
            samples_per_cycle=f.number("oracle", "samples_per_cycle", 16.0),
            budget=int(f.number("oracle", "budget_cells", 1e8)),
            tol=f.number("oracle", "tol", 1e-12),
        )
    return Scenario(**kwargs)


def _sweep(f: _Fields, command: str) -> dict:
    axis = f.choice("sweep", "axis", SWEEP_AXES)
    count = f.integer("sweep", "count")
    if count < 2:
        raise ScenarioParseError(f"field [sweep] count: a sweep needs at least 2 points, got {count}")
    unit = f.choice("sweep", "unit", ("deg", "rad", "m"), default="m" if axis == "r" else "deg")
    if (axis == "r") != (unit == "m"):
        raise ScenarioParseError(f"field [sweep] unit: {unit!r} does not fit axis {axis!r}")
    if command == "pathloss-compare" and axis != "r":
        raise ScenarioParseError("field [sweep] axis: pathloss-compare sweeps the receiver distance (axis = r)")
    start, stop = f.number("sweep", "start"), f.number("sweep", "stop")
    if unit == "deg":
        start, stop = math.radians(start), math.radians(stop)
    return {"sweep": Sweep(axis, start, stop, count), "sweep_unit": unit}


def with_defaults(command: str, sections=None, overrides=None) -> dict[str, dict[str, str]]:
    """Layer built-in defaults, a scenario file and flag overrides.

    Command defaults fill whole sections only when the file lacks that
    section; ``[scenario]`` and ``[link]`` defaults are merged key by key.
    """
    sections = sections or {}
    overrides = overrides or {}
    command_defaults = {
        name: keys for name, keys in DEFAULTS.get(command, {}).items()
        if name not in sections or name == "link"
    }
    merged = merge(_COMMON, command_defaults, sections, overrides)
    # the carrier is given once, as a frequency or a wavelength; the most
    # specific layer that names one wins
    for layer in (overrides, sections):
        given = layer.get("link", {})
        if "wavelength_m" in given and "frequency_hz" not in given:
            merged["link"].pop("frequency_hz", None)
            break
        if "frequency_hz" in given and "wavelength_m" not in given:
            merged["link"].pop("wavelength_m", None)
            break
    return merged


def load_scenario(path: str, command: str | None = None, overrides=None) -> Scenario:
    sections = load_sections(path)
    cmd = command or _Fields(sections).choice("scenario", "command", COMMANDS)
    return build_scenario(with_defaults(cmd, sections, overrides), cmd)


# -- output -------------------------------------------------------------------

def format_number(x: float) -> str:
    """Shortest round-trip decimal; ``inf``/``-inf``/``nan`` spelled out."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


@dataclass
class Table:
    columns: list[str]
    rows: list[list]
    comments: list[str] = field(default_factory=list)

    def render(self) -> str:
        buf = io.StringIO()
        for c in self.comments:
            buf.write(f"# {c}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(v if isinstance(v, str) else format_number(v) for v in row) + "\n")
        return buf.getvalue()
