"""链环图目录与命令行输入解析"""

import pytest
import yaml

from src.core.catalog import DEFAULT_CATALOG_DIR, CatalogEntry, DiagramCatalog, classify, resolve_input
from src.core.errors import CatalogError, DiagramError


def _write_index(root, body):
    (root / "catalog.yaml").write_text(body, encoding="utf-8")
    return DiagramCatalog(root)


def test_names(catalog):
    assert catalog.names() == [
        "unknot", "trefoil", "trefoil-left", "figure-eight", "10_152",
        "pretzel-2-2-m2-m2", "pretzel-1-1-1", "montesinos-3-3",
    ]


def test_every_entry_loads(catalog):
    diagrams = catalog.load_all()
    assert [d.name for d in diagrams] == catalog.names()


def test_loads_are_cached(catalog):
    assert catalog.load("trefoil") is catalog.load("trefoil")


def test_unknown_name(catalog):
    with pytest.raises(CatalogError, match="unknown catalog diagram"):
        catalog.load("nope")


def test_classify(trefoil, figure_eight):
    assert classify(trefoil) == {
        "crossings": 3, "adequate": True, "homogeneous": True,
        "alternative": True, "positive": True, "determinant": 3,
    }
    assert classify(figure_eight)["positive"] is False


def test_resolve_catalog_reference(catalog):
    assert resolve_input("catalog:figure-eight", catalog).n == 4


def test_resolve_file(tmp_path):
    path = tmp_path / "right.pd"
    path.write_text("X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\n", encoding="utf-8")
    d = resolve_input(str(path))
    assert d.name == "right"
    assert d.n == 3


def test_resolve_missing_file(tmp_path):
    with pytest.raises(DiagramError, match="cannot read"):
        resolve_input(str(tmp_path / "missing.pd"))


def test_missing_index(tmp_path):
    with pytest.raises(CatalogError, match="not found"):
        DiagramCatalog(tmp_path).names()


def test_duplicate_names(tmp_path):
    catalog = _write_index(tmp_path, """
diagrams:
  - {name: a, kind: pretzel, strands: [1, 1, 1]}
  - {name: a, kind: pretzel, strands: [2, 2]}
""")
    with pytest.raises(CatalogError, match="twice"):
        catalog.names()


def test_malformed_entry(tmp_path):
    catalog = _write_index(tmp_path, "diagrams:\n  - {name: a, kind: braid}\n")
    with pytest.raises(CatalogError, match="malformed"):
        catalog.names()


def test_failed_expectation(tmp_path):
    catalog = _write_index(tmp_path, """
diagrams:
  - name: wrong
    kind: pretzel
    strands: [1, 1, 1]
    expect: {determinant: 5}
""")
    with pytest.raises(CatalogError, match="determinant: expected 5, computed 3"):
        catalog.load("wrong")
    assert catalog.load("wrong", validate=False).n == 3


def test_unbuildable_entry(tmp_path):
    catalog = _write_index(tmp_path, "diagrams:\n  - {name: bad, kind: pretzel, strands: [0, 2]}\n")
    with pytest.raises(CatalogError, match="cannot be built"):
        catalog.load("bad")


@pytest.mark.parametrize("fields", [
    {"name": "a"},
    {"name": "a", "kind": "pretzel", "strands": [3]},
    {"name": "a", "kind": "montesinos", "positive": [(3, 1)]},
])
def test_entry_validation(fields):
    with pytest.raises(ValueError):
        CatalogEntry(**fields)


def test_catalog_dir_from_environment(tmp_path, monkeypatch):
    _write_index(tmp_path, "diagrams:\n  - {name: only, kind: pretzel, strands: [1, 1, 1]}\n")
    monkeypatch.setenv("TANGLETWIST_CATALOG_DIR", str(tmp_path))
    assert DiagramCatalog().names() == ["only"]


def test_shipped_index_names_are_strings():
    raw = yaml.safe_load((DEFAULT_CATALOG_DIR / "catalog.yaml").read_text(encoding="utf-8"))
    names = [item["name"] for item in raw["diagrams"]]
    assert all(isinstance(name, str) for name in names), names
    assert "10_152" in DiagramCatalog(DEFAULT_CATALOG_DIR).names()
