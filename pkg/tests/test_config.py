import json

import pytest

from sciswarm.config import load_config, parse_document
from sciswarm.errors import ParseError, ValidationError


def test_minimal_document_gets_defaults():
    cfg = load_config('{"seed": 1, "landscape": "sphere", "dim": 10, "iterations": 200}')
    assert cfg.mode == "reference" and cfg.behavior == "default"
    assert cfg.engine.v_max == pytest.approx(5.12) and cfg.engine.explore_scale == pytest.approx(1.024)
    assert cfg.lifecycle.spawn_scale == pytest.approx(0.512)
    assert cfg.link_threshold == pytest.approx(0.5 * 1.024 * 10 ** 0.5)


def test_nested_and_flat_keys_agree():
    flat = load_config({"review.beta": 0.2, "engine.inertia_max": 0.8})
    nested = load_config(json.dumps({"review": {"beta": 0.2}, "engine": {"inertia_max": 0.8}}))
    assert flat == nested


@pytest.mark.parametrize("doc,key", [
    ({"engine.epsilon_start": 0.3, "engine.epsilon_end": 0.6}, "engine.epsilon_start"),
    ({"bogus": 1}, "bogus"),
    ({"dim": 0}, "dim"),
    ({"dim": 2.5}, "dim"),
    ({"seed": -1}, "seed"),
    ({"landscape": "foo"}, "landscape"),
    ({"mode": "telepathy"}, "mode"),
    ({"landscape": "two_wells", "dim": 2}, "mode"),
    ({"landscape": "sphere", "mode": "multi_objective"}, "mode"),
    ({"landscape.reference": False}, "landscape.reference"),
    ({"review.cap": 0.01}, "review.cap"),
    ({"review.beta": 1.5}, "review.beta"),
    ({"lifecycle.initial_population": 100}, "lifecycle.initial_population"),
    ({"lifecycle.initial_budget": 9}, "lifecycle.max_budget"),
    ({"engine.inertia_min": 1.0}, "engine.inertia_min"),
    ({"review.cap_enabled": 1}, "review.cap_enabled"),
    ({"iterations": "ten"}, "iterations"),
])
def test_validation_errors_name_the_key(doc, key):
    with pytest.raises(ValidationError) as info:
        load_config(doc)
    assert info.value.key == key


def test_duplicate_key():
    with pytest.raises(ParseError):
        parse_document('{"seed": 1, "seed": 2}')
    with pytest.raises(ParseError):
        load_config({"review": {"beta": 0.1}, "review.beta": 0.2})


def test_malformed_json():
    with pytest.raises(ParseError):
        parse_document("{seed: 1")
    with pytest.raises(ParseError):
        parse_document("[1, 2]")


def test_votes_mode_without_reference_is_allowed():
    cfg = load_config({"mode": "votes", "landscape.reference": False})
    assert cfg.make_landscape().optimum is None


def test_multi_objective_config():
    cfg = load_config({"landscape": "two_wells", "dim": 2, "mode": "multi_objective"})
    assert cfg.make_landscape().objective_count == 2


def test_flat_round_trip():
    cfg = load_config({"seed": 5, "review.cap_enabled": True, "output_dir": "x"})
    assert load_config(cfg.to_flat()) == cfg
    assert "output_dir" not in cfg.to_flat(with_output=False)
