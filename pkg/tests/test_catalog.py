import pytest

from wreathbrauer import catalog
from wreathbrauer.errors import DomainError, ParseError
from wreathbrauer.permgroup import sylow_2

GOOD = """\
# C_4 wr C_2 on two blocks of four points
id toy-wreath
expected_order 32
degree 8
marking 0 1 2
notes C_4 wr C_2 again
(0 1 2 3)
(4 5 6 7)
(0 4)(1 5)(2 6)(3 7)
"""


@pytest.mark.parametrize("ident, order, sylow", [
    ("wreathP-n2", 32, 32), ("wreathP-n3", 128, 128), ("c4c4-s3", 96, 32),
    ("c8c8-s3", 384, 128), ("gl2-5", 480, 32)])
def test_builtin_entries(ident, order, sylow):
    mg = catalog.load(ident)
    assert mg.group.order == order
    assert sylow_2(mg.group).order == sylow
    d = mg.describe()
    assert d["wreathed"] and d["order"] == order and d["sylow2_order"] == sylow


def test_parse_good_file():
    cf = catalog.parse_catalog_text(GOOD)
    assert (cf.id, cf.expected_order, cf.degree, cf.marking) == ("toy-wreath", 32, 8, (0, 1, 2))
    assert cf.notes == "C_4 wr C_2 again"
    mg = cf.build()
    assert mg.wreathed.n == 2
    assert catalog.parse_catalog_text(cf.render()) == cf


def test_degree_defaults_to_largest_point():
    cf = catalog.parse_catalog_text("id s3\nexpected_order 6\n(0 1)\n(0 1 2)\n")
    assert cf.degree == 3 and cf.build().group.order == 6


@pytest.mark.parametrize("text, line, column", [
    ("expected_order 6\n", 1, 1),
    ("id x\nexpected_order six\n", 2, 16),
    ("id x\nexpected_order 6\n  (0 1\n", 3, 3),
    ("id x\nexpected_order 6\n(0 1)(1 2)\n", 3, 1),
    ("id x\nexpected_order 6\nfrobnicate 3\n", 3, 1),
    ("id x\nexpected_order 6\nmarking 0 1\n(0 1)\n", 3, 9),
    ("id x\nid y\n", 2, 1),
    ("id x\n", 1, 1),
])
def test_parse_errors_report_positions(text, line, column):
    with pytest.raises(ParseError) as err:
        catalog.parse_catalog_text(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_order_mismatch_is_rejected():
    cf = catalog.parse_catalog_text("id bad\nexpected_order 7\n(0 1)\n")
    with pytest.raises(DomainError):
        cf.build()


def test_add_from_file_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv(catalog.CATALOG_DIR_ENV, str(tmp_path / "cat"))
    src = tmp_path / "toy.cat"
    src.write_text(GOOD)
    cf = catalog.add_from_file(src)
    assert cf.id in catalog.list_ids()
    assert catalog.load("toy-wreath").group.order == 32
    src.write_text(GOOD.replace("toy-wreath", "c4c4-s3"))
    with pytest.raises(DomainError):
        catalog.add_from_file(src)
    with pytest.raises(DomainError):
        catalog.load("no-such-group")
