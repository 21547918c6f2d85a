"""Filtering criteria and pass/fail verdicts for curated molecules.

The criterion list mirrors the curation bullet order; a failing verdict
reports every violated criterion (not just the first), so drop counts
are independent of evaluation order. Every comparator and bound is
configurable and each criterion can be disabled on its own.
"""

from __future__ import annotations

import configparser
import hashlib
import io
from dataclasses import dataclass, field, replace
from ._data import read_data_text

from .descriptors import DescriptorSet

__all__ = [
    "RangeCriterion",
    "ThresholdCriterion",
    "FilterConfig",
    "Verdict",
    "passes_filters",
    "a2_default_config",
    "load_config",
    "save_config",
    "config_digest",
]

_COMPARATORS = {
    ">=": lambda x, v: x >= v,
    "<=": lambda x, v: x <= v,
    ">": lambda x, v: x > v,
    "<": lambda x, v: x < v,
    "==": lambda x, v: x == v,
}


@dataclass(slots=True, frozen=True)
class RangeCriterion:
    enabled: bool
    min: float
    max: float

    def __post_init__(self) -> None:
        if self.enabled and not self.min < self.max:
            raise ValueError(f"range criterion needs min < max, got {self.min}..{self.max}")

    def ok(self, value: float) -> bool:
        return self.min < value < self.max


@dataclass(slots=True, frozen=True)
class ThresholdCriterion:
    enabled: bool
    comparator: str
    value: float

    def __post_init__(self) -> None:
        if self.comparator not in _COMPARATORS:
            raise ValueError(f"unknown comparator {self.comparator!r}")

    def ok(self, value: float) -> bool:
        return _COMPARATORS[self.comparator](value, self.value)


@dataclass(slots=True, frozen=True)
class FilterConfig:
    elements_enabled: bool = True
    whitelist: frozenset[str] = frozenset()
    no_isotopes_adducts_salts: bool = True
    forbidden_enabled: bool = True
    forbidden_names: tuple[str, ...] = ()
    mw: RangeCriterion = RangeCriterion(True, 150, 550)
    fsp3: ThresholdCriterion = ThresholdCriterion(True, ">=", 0.3)
    n_phenyl: ThresholdCriterion = ThresholdCriterion(True, "<=", 2)
    n_aromatic: ThresholdCriterion = ThresholdCriterion(True, "<=", 4)
    n_rings: ThresholdCriterion = ThresholdCriterion(True, ">=", 1)
    formal_charge: ThresholdCriterion = ThresholdCriterion(True, "==", 0)
    n_rotatable: ThresholdCriterion = ThresholdCriterion(True, ">=", 3)
    tpsa: RangeCriterion = RangeCriterion(True, 25, 150)
    clogp: RangeCriterion = RangeCriterion(True, -2, 4.5)
    hbd: ThresholdCriterion = ThresholdCriterion(True, ">=", 4)

    def disabled(self, *names: str) -> "FilterConfig":
        """Copy of this config with the named criteria switched off."""
        changes: dict = {}
        for name in names:
            if name == "elements":
                changes["elements_enabled"] = False
            elif name == "no_isotopes_adducts_salts":
                changes["no_isotopes_adducts_salts"] = False
            elif name == "forbidden_groups":
                changes["forbidden_enabled"] = False
            else:
                current = getattr(self, name)
                changes[name] = replace(current, enabled=False)
        return replace(self, **changes)


@dataclass(slots=True)
class Verdict:
    passed: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


# Criterion keys in curation bullet order.
CRITERION_ORDER = (
    "elements",
    "no_isotopes_adducts_salts",
    "forbidden_groups",
    "mw",
    "fsp3",
    "n_phenyl",
    "n_aromatic",
    "n_rings",
    "formal_charge",
    "n_rotatable",
    "tpsa",
    "clogp",
    "hbd",
)


def passes_filters(ds: DescriptorSet, cfg: FilterConfig) -> Verdict:
    """Evaluate every enabled criterion; reasons list follows bullet order."""
    reasons: list[str] = []
    if cfg.elements_enabled and ds.element_violation:
        reasons.append("elements")
    if cfg.no_isotopes_adducts_salts and (ds.has_isotope or ds.multi_fragment):
        reasons.append("no_isotopes_adducts_salts")
    if cfg.forbidden_enabled and ds.forbidden_groups.intersection(cfg.forbidden_names):
        reasons.append("forbidden_groups")
    if cfg.mw.enabled and not cfg.mw.ok(ds.mw):
        reasons.append("mw")
    if cfg.fsp3.enabled and not cfg.fsp3.ok(ds.fsp3):
        reasons.append("fsp3")
    if cfg.n_phenyl.enabled and not cfg.n_phenyl.ok(ds.n_phenyl_rings):
        reasons.append("n_phenyl")
    if cfg.n_aromatic.enabled and not cfg.n_aromatic.ok(ds.n_aromatic_rings):
        reasons.append("n_aromatic")
    if cfg.n_rings.enabled and not cfg.n_rings.ok(ds.n_rings):
        reasons.append("n_rings")
    if cfg.formal_charge.enabled and not cfg.formal_charge.ok(ds.net_formal_charge):
        reasons.append("formal_charge")
    if cfg.n_rotatable.enabled and not cfg.n_rotatable.ok(ds.n_rotatable):
        reasons.append("n_rotatable")
    if cfg.tpsa.enabled and not cfg.tpsa.ok(ds.tpsa):
        reasons.append("tpsa")
    if cfg.clogp.enabled and not cfg.clogp.ok(ds.clogp):
        reasons.append("clogp")
    if cfg.hbd.enabled and not cfg.hbd.ok(ds.hbd):
        reasons.append("hbd")
    return Verdict(passed=not reasons, reasons=reasons)


# -- config file I/O ----------------------------------------------------------


def _config_from_parser(parser: configparser.ConfigParser) -> FilterConfig:
    def flag(section: str) -> bool:
        return parser.getboolean(section, "enabled")

    def range_crit(section: str) -> RangeCriterion:
        return RangeCriterion(
            enabled=flag(section),
            min=parser.getfloat(section, "min"),
            max=parser.getfloat(section, "max"),
        )

    def threshold(section: str) -> ThresholdCriterion:
        return ThresholdCriterion(
            enabled=flag(section),
            comparator=parser.get(section, "comparator"),
            value=parser.getfloat(section, "value"),
        )

    return FilterConfig(
        elements_enabled=flag("elements"),
        whitelist=frozenset(parser.get("elements", "whitelist").split()),
        no_isotopes_adducts_salts=flag("no_isotopes_adducts_salts"),
        forbidden_enabled=flag("forbidden_groups"),
        forbidden_names=tuple(parser.get("forbidden_groups", "patterns").split()),
        mw=range_crit("mw"),
        fsp3=threshold("fsp3"),
        n_phenyl=threshold("n_phenyl"),
        n_aromatic=threshold("n_aromatic"),
        n_rings=threshold("n_rings"),
        formal_charge=threshold("formal_charge"),
        n_rotatable=threshold("n_rotatable"),
        tpsa=range_crit("tpsa"),
        clogp=range_crit("clogp"),
        hbd=threshold("hbd"),
    )


def a2_default_config() -> FilterConfig:
    """The shipped default criteria."""
    parser = configparser.ConfigParser()
    parser.read_string(read_data_text("a2_defaults.cfg"))
    return _config_from_parser(parser)


def load_config(path) -> FilterConfig:
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    return _config_from_parser(parser)


def _serialize(cfg: FilterConfig) -> str:
    parser = configparser.ConfigParser()
    parser["elements"] = {
        "enabled": str(cfg.elements_enabled).lower(),
        "whitelist": " ".join(sorted(cfg.whitelist)),
    }
    parser["no_isotopes_adducts_salts"] = {
        "enabled": str(cfg.no_isotopes_adducts_salts).lower()
    }
    parser["forbidden_groups"] = {
        "enabled": str(cfg.forbidden_enabled).lower(),
        "patterns": " ".join(cfg.forbidden_names),
    }
    for name in ("mw", "tpsa", "clogp"):
        crit: RangeCriterion = getattr(cfg, name)
        parser[name] = {
            "enabled": str(crit.enabled).lower(),
            "min": repr(crit.min),
            "max": repr(crit.max),
        }
    for name in (
        "fsp3", "n_phenyl", "n_aromatic", "n_rings",
        "formal_charge", "n_rotatable", "hbd",
    ):
        tcrit: ThresholdCriterion = getattr(cfg, name)
        parser[name] = {
            "enabled": str(tcrit.enabled).lower(),
            "comparator": tcrit.comparator,
            "value": repr(tcrit.value),
        }
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def save_config(cfg: FilterConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_serialize(cfg))


def config_digest(cfg: FilterConfig) -> str:
    """Stable hash of the effective configuration, for manifests."""
    return hashlib.sha256(_serialize(cfg).encode()).hexdigest()
