import pytest

from moltext import molecule_from_smiles
from moltext.descriptors import compute_descriptors
from moltext.filters import (
    CRITERION_ORDER,
    FilterConfig,
    RangeCriterion,
    a2_default_config,
    config_digest,
    load_config,
    passes_filters,
    save_config,
)

CAFFEINE = "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"
PASSER = "NCC(O)CC1CCN(CC1)CC(O)CN"


def descriptors_for(smiles):
    return compute_descriptors(molecule_from_smiles(smiles))


def test_caffeine_fails_on_rotatable_and_donors():
    verdict = passes_filters(descriptors_for(CAFFEINE), a2_default_config())
    assert not verdict.passed
    assert verdict.reasons == ["n_rotatable", "hbd"]


def test_constructive_pass():
    verdict = passes_filters(descriptors_for(PASSER), a2_default_config())
    assert verdict.passed
    assert verdict.reasons == []


def test_mw_out_of_range():
    # Long alkane: heavy enough to clear the ceiling.
    ds = descriptors_for("C" * 40)
    verdict = passes_filters(ds, a2_default_config())
    assert "mw" in verdict.reasons


def test_reasons_follow_bullet_order():
    ds = descriptors_for("CC[Si](C)(C)C")
    verdict = passes_filters(ds, a2_default_config())
    order = [CRITERION_ORDER.index(r) for r in verdict.reasons]
    assert order == sorted(order)
    assert verdict.reasons[0] == "elements"


def test_monotone_disabling_never_breaks_a_pass():
    cfg = a2_default_config()
    ds = descriptors_for(PASSER)
    assert passes_filters(ds, cfg).passed
    for name in CRITERION_ORDER:
        assert passes_filters(ds, cfg.disabled(name)).passed


def test_disabling_failed_criteria_flips_to_pass():
    cfg = a2_default_config()
    ds = descriptors_for(CAFFEINE)
    relaxed = cfg.disabled("n_rotatable", "hbd")
    assert passes_filters(ds, relaxed).passed


def test_verdict_is_pure():
    cfg = a2_default_config()
    ds = descriptors_for(CAFFEINE)
    first = passes_filters(ds, cfg)
    second = passes_filters(ds, cfg)
    assert first.passed == second.passed
    assert first.reasons == second.reasons


def test_range_validation():
    with pytest.raises(ValueError):
        RangeCriterion(True, 10, 10)
    RangeCriterion(False, 10, 10)  # disabled ranges are not validated


def test_config_round_trip(tmp_path):
    cfg = a2_default_config()
    path = tmp_path / "filters.cfg"
    save_config(cfg, path)
    loaded = load_config(path)
    assert loaded == cfg
    assert config_digest(loaded) == config_digest(cfg)


def test_config_digest_tracks_changes():
    cfg = a2_default_config()
    assert config_digest(cfg) != config_digest(cfg.disabled("hbd"))


def test_custom_comparator(tmp_path):
    cfg = a2_default_config()
    text = (tmp_path / "cfg.ini")
    save_config(cfg, text)
    content = text.read_text().replace("comparator = >=\nvalue = 4.0", "comparator = <=\nvalue = 4.0")
    text.write_text(content)
    flipped = load_config(text)
    assert flipped.hbd.comparator == "<="
    verdict = passes_filters(descriptors_for(CAFFEINE), flipped)
    assert "hbd" not in verdict.reasons


def test_zwitterion_passes_charge_criterion():
    ds = descriptors_for("C[N+](C)(C)CC(=O)[O-]")
    verdict = passes_filters(ds, a2_default_config())
    assert "formal_charge" not in verdict.reasons


def test_default_config_matches_printed_thresholds():
    cfg = a2_default_config()
    assert (cfg.mw.min, cfg.mw.max) == (150, 550)
    assert (cfg.fsp3.comparator, cfg.fsp3.value) == (">=", 0.3)
    assert (cfg.n_phenyl.comparator, cfg.n_phenyl.value) == ("<=", 2)
    assert (cfg.n_aromatic.comparator, cfg.n_aromatic.value) == ("<=", 4)
    assert (cfg.n_rings.comparator, cfg.n_rings.value) == (">=", 1)
    assert (cfg.formal_charge.comparator, cfg.formal_charge.value) == ("==", 0)
    assert (cfg.n_rotatable.comparator, cfg.n_rotatable.value) == (">=", 3)
    assert (cfg.tpsa.min, cfg.tpsa.max) == (25, 150)
    assert (cfg.clogp.min, cfg.clogp.max) == (-2, 4.5)
    assert (cfg.hbd.comparator, cfg.hbd.value) == (">=", 4)
    assert cfg.whitelist == frozenset("H C N O S F Cl Br".split())
    assert len(cfg.forbidden_names) == 12
