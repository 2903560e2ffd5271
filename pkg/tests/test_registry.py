import json

import pytest

from quiverbench import registry
from quiverbench.errors import InputError
from quiverbench.serialize import digest, dumps


def test_every_entry_loads():
    for name in registry.names():
        kind = registry.raw(name)["kind"]
        loader = {"presentation": registry.presentation, "triple": registry.triple,
                  "potential": registry.potential, "graph": registry.graph,
                  "action": registry.action, "instance": registry.instance}[kind]
        assert loader(name) is not None


def test_kind_mismatch():
    with pytest.raises(InputError):
        registry.triple("a1")


def test_unknown_name():
    with pytest.raises(InputError):
        registry.presentation("no_such_entry")


def test_load_from_file(tmp_path):
    path = tmp_path / "a1.json"
    path.write_text(json.dumps(registry.raw("a1")))
    assert registry.presentation(str(path)).quiver == registry.presentation("a1").quiver


def test_prefixes():
    assert registry.presentation("shadow:bge_graph").is_monomial
    assert not registry.presentation("brauer:bge_graph").is_monomial


def test_instance_action_must_match():
    d = registry.raw("inst_nz") | {"action": "a1_swap"}
    with pytest.raises(InputError):
        registry.instance(d)


def test_canonical_json():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert digest({"x": 1}) == digest({"x": 1}) != digest({"x": 2})
