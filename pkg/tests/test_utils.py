import json

import pytest

from catalog import get_entry, list_entries
from fan import Fan
from utils import FanFileError, check_data_status, dump_fan, fan_digest, load_fan, parse_fan_text, save_fan


@pytest.mark.parametrize("name, params", list_entries())
def test_dump_and_parse(name, params):
    fan = get_entry(name, **params).fan
    text = dump_fan(fan)
    assert text.endswith("}\n")
    assert parse_fan_text(text) == fan
    assert json.loads(text)["format_version"] == 1


def test_digest_is_stable(p2, p3):
    digest = fan_digest(p2)
    assert len(digest) == 64
    assert digest == fan_digest(Fan.from_lists(2, [[1, 0], [0, 1], [-1, -1]], [(0, 1), (1, 2), (0, 2)]))
    assert digest != fan_digest(p3)
    assert digest != fan_digest(Fan.from_lists(2, [[1, 0], [0, 1], [-1, -2]], [(0, 1), (1, 2), (0, 2)]))


def test_dump_keeps_the_listed_cone_order():
    fan = Fan.from_lists(2, [[1, 0], [0, 1], [-1, -1]], [(1, 2), (0, 1), (0, 2)])
    assert json.loads(dump_fan(fan))["max_cones"] == [[1, 2], [0, 1], [0, 2]]
    assert json.loads(dump_fan(fan, sort_cones=True))["max_cones"] == [[0, 1], [0, 2], [1, 2]]


def test_format_version_is_optional():
    fan = parse_fan_text('{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}')
    assert fan.n_rays == 2


@pytest.mark.parametrize("text, message", [
    ('{"dim": 2, "rays": [[1, 0]\n "max_cones": []}', "line 2 column"),
    ('{"dim": 2, "rays": []}', "missing required fields"),
    ('{"dim": "2", "rays": [], "max_cones": []}', "field 'dim'"),
    ('{"dim": true, "rays": [], "max_cones": []}', "field 'dim'"),
    ('{"format_version": 2, "dim": 2, "rays": [], "max_cones": []}', "format_version"),
    ('{"dim": 2, "rays": [[1, 0.5]], "max_cones": []}', "rays\\[0\\]"),
    ('{"dim": 2, "rays": [[1, 0]], "max_cones": [7]}', "max_cones\\[0\\]"),
    ("[1, 2, 3]", "top level"),
])
def test_malformed_files(text, message):
    with pytest.raises(FanFileError, match=message):
        parse_fan_text(text, "bad.json")


def test_missing_file(tmp_path):
    with pytest.raises(FanFileError, match="cannot read fan file"):
        load_fan(tmp_path / "absent.json")


def test_save_load_and_status(tmp_path, fano4):
    path = save_fan(fano4, tmp_path / "nested" / "fano4.json")
    assert load_fan(path) == fano4
    (tmp_path / "nested" / "broken.json").write_text("{", encoding="utf-8")
    status = check_data_status(tmp_path / "nested")
    assert status["fano4.json"].startswith("✅ d=4, 6 rays, 9 cones")
    assert status["broken.json"].startswith("❌")
    assert check_data_status(tmp_path / "missing") == {}
