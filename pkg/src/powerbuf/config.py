"""Run-configuration files for the CLI.

Flat INI-style sectioned key=value text.  Units are fixed by convention
and never inferred: energies in uJ, powers in uW, sizes in bytes, time in
seconds, rates in 1/s.  Unknown sections or keys are rejected so a typo
cannot silently fall back to a default.

Sections and keys::

    [hardware]   e_wu_w e_tx_w e_rx_w p_idle_m e_r_m e_w_m e_resyn_m b_size
    [traffic]    lambda size_kind size_value size_mean size_shape size_rate
                 size_p size_mean1 size_mean2 size_cv size_skew
    [battery]    capacity_mah voltage_v
    [policy]     kind b t
    [sim]        cycles sim_time seed quantized_banks
    [tree]       child1 child2 ... (each "rate mean_size")

Hardware defaults to the stock radio/SRAM parameter set and battery to
two AA cells (2700 mAh, 3.3 V) when the sections are omitted.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass
from typing import Optional

from . import dist
from .errors import ConfigError
from .lifespan import Battery
from .power_model import HardwareProfile, TrafficProfile, default_table2_profile
from .sim import FixedInterval, FixedSize, NoBuffer, Policy
from .tree import ChildSpec

_HW_KEYS = ("e_wu_w", "e_tx_w", "e_rx_w", "p_idle_m", "e_r_m", "e_w_m",
            "e_resyn_m", "b_size")
_TRAFFIC_KEYS = ("lambda", "size_kind", "size_value", "size_mean",
                 "size_shape", "size_rate", "size_p", "size_mean1",
                 "size_mean2", "size_cv", "size_skew")
_BATTERY_KEYS = ("capacity_mah", "voltage_v")
_POLICY_KEYS = ("kind", "b", "t")
_SIM_KEYS = ("cycles", "sim_time", "seed", "quantized_banks")
_SECTIONS = {
    "hardware": _HW_KEYS,
    "traffic": _TRAFFIC_KEYS,
    "battery": _BATTERY_KEYS,
    "policy": _POLICY_KEYS,
    "sim": _SIM_KEYS,
    "tree": None,  # child<N> keys, validated separately
}

_SIZE_KEYS_BY_KIND = {
    dist.CONSTANT: ("size_value",),
    dist.EXPONENTIAL: ("size_mean",),
    dist.ERLANG: ("size_shape", "size_rate"),
    dist.HYPEREXP2: ("size_p", "size_mean1", "size_mean2"),
    dist.MOMENTS: ("size_mean", "size_cv", "size_skew"),
}


@dataclass(frozen=True)
class RunConfig:
    """Parsed configuration; sections the file omitted are None or defaulted."""

    hardware: HardwareProfile
    battery: Battery
    traffic: Optional[TrafficProfile]
    policy: Optional[Policy]
    cycles: Optional[int]
    sim_time: Optional[float]
    seed: int
    quantized_banks: bool
    children: Optional[list[ChildSpec]]


def _get_float(section, key: str) -> float:
    raw = section[key]
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"value of {key!r} is not a number: {raw!r}") from None


def _require(section, keys, where: str):
    missing = [k for k in keys if k not in section]
    if missing:
        raise ConfigError(f"[{where}] is missing required keys: {missing}")


def _parse_size(section) -> dist.SizeDistribution:
    if "size_kind" not in section:
        raise ConfigError("[traffic] needs size_kind")
    kind = section["size_kind"].strip().lower()
    if kind not in _SIZE_KEYS_BY_KIND:
        raise ConfigError(
            f"unknown size_kind {kind!r}; choose from {sorted(_SIZE_KEYS_BY_KIND)}")
    needed = _SIZE_KEYS_BY_KIND[kind]
    _require(section, needed, "traffic")
    extra = [k for k in section
             if k.startswith("size_") and k != "size_kind" and k not in needed]
    if extra:
        raise ConfigError(f"keys {extra} do not apply to size_kind={kind}")
    vals = [_get_float(section, k) for k in needed]
    if kind == dist.CONSTANT:
        return dist.constant(vals[0])
    if kind == dist.EXPONENTIAL:
        return dist.exponential(vals[0])
    if kind == dist.ERLANG:
        return dist.erlang(int(vals[0]), vals[1])
    if kind == dist.HYPEREXP2:
        return dist.hyperexp2(vals[0], vals[1], vals[2])
    return dist.from_moments(vals[0], vals[1], vals[2])


def load_config(path: str) -> RunConfig:
    """Parse and validate a configuration file."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}") from exc

    for name in parser.sections():
        if name not in _SECTIONS:
            raise ConfigError(f"unknown section [{name}]")
        allowed = _SECTIONS[name]
        for key in parser[name]:
            if allowed is not None and key not in allowed:
                raise ConfigError(f"unknown key {key!r} in [{name}]")
            if allowed is None and not re.fullmatch(r"child\d+", key):
                raise ConfigError(
                    f"unknown key {key!r} in [tree]; use child1, child2, ...")

    if parser.has_section("hardware"):
        sec = parser["hardware"]
        _require(sec, _HW_KEYS, "hardware")
        hardware = HardwareProfile(**{k: _get_float(sec, k) for k in _HW_KEYS})
    else:
        hardware = default_table2_profile()

    if parser.has_section("battery"):
        sec = parser["battery"]
        _require(sec, _BATTERY_KEYS, "battery")
        battery = Battery(_get_float(sec, "capacity_mah"),
                          _get_float(sec, "voltage_v"))
    else:
        battery = Battery(2700.0, 3.3)

    traffic = None
    if parser.has_section("traffic"):
        sec = parser["traffic"]
        _require(sec, ("lambda",), "traffic")
        traffic = TrafficProfile(_get_float(sec, "lambda"), _parse_size(sec))

    policy = None
    if parser.has_section("policy"):
        sec = parser["policy"]
        _require(sec, ("kind",), "policy")
        kind = sec["kind"].strip().lower()
        if kind == "fixed_size":
            _require(sec, ("b",), "policy")
            policy = FixedSize(_get_float(sec, "b"))
        elif kind == "fixed_interval":
            _require(sec, ("t",), "policy")
            policy = FixedInterval(_get_float(sec, "t"))
        elif kind == "no_buffer":
            policy = NoBuffer()
        else:
            raise ConfigError(f"unknown policy kind {kind!r}")

    cycles, sim_time, seed, quantized = None, None, 0, False
    if parser.has_section("sim"):
        sec = parser["sim"]
        if "cycles" in sec:
            cycles = int(_get_float(sec, "cycles"))
        if "sim_time" in sec:
            sim_time = _get_float(sec, "sim_time")
        if "seed" in sec:
            seed = int(_get_float(sec, "seed"))
        if "quantized_banks" in sec:
            try:
                quantized = sec.getboolean("quantized_banks")
            except ValueError:
                raise ConfigError(
                    "quantized_banks must be a boolean") from None

    children = None
    if parser.has_section("tree"):
        children = []
        sec = parser["tree"]
        for key in sorted(sec, key=lambda k: int(k.removeprefix("child"))):
            parts = sec[key].split()
            if len(parts) != 2:
                raise ConfigError(
                    f"{key} must be two numbers: rate mean_size")
            try:
                rate, mean_size = float(parts[0]), float(parts[1])
            except ValueError:
                raise ConfigError(
                    f"{key} must be two numbers: rate mean_size") from None
            # domain violations (nonpositive rate/size) propagate as such
            children.append(ChildSpec(rate, mean_size))

    return RunConfig(hardware=hardware, battery=battery, traffic=traffic,
                     policy=policy, cycles=cycles, sim_time=sim_time,
                     seed=seed, quantized_banks=quantized, children=children)


def hardware_section_text(hw: HardwareProfile) -> str:
    """Render a profile back to config-file text (round-trips exactly)."""
    lines = ["[hardware]"]
    for key in _HW_KEYS:
        lines.append(f"{key} = {getattr(hw, key)!r}")
    return "\n".join(lines) + "\n"
