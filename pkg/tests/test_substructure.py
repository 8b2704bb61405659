"""SMARTS parsing, subgraph matching, and alert catalogs."""

import pytest

from madd.errors import CatalogNotLoadedError, ParseError, UnsupportedFeatureError
from madd.molcore import parse_smiles
from madd.substructure.catalog import (
    CATALOG_NAMES,
    FilterCatalog,
    apply_catalog,
    get_catalog,
    load_catalog_file,
)
from madd.substructure.matcher import find_matches, has_match
from madd.substructure.matcher import match as match_count
from madd.substructure.smarts import parse_smarts


def count(smiles: str, smarts: str) -> int:
    return match_count(parse_smiles(smiles), parse_smarts(smarts))


class TestSmartsParsing:
    def test_primitives(self):
        for smarts in ["[#6]", "[c]", "[C]", "[N+]", "[O-]", "[nH]", "[CX4]",
                       "[CD2]", "[R]", "[r5]", "[v4]", "[13C]", "[!C]", "[C,N]",
                       "[C;H2]", "c1ccccc1", "C=O", "C#N", "C~C", "[a]", "[A]"]:
            parse_smarts(smarts)

    def test_unsupported_recursive(self):
        with pytest.raises(UnsupportedFeatureError):
            parse_smarts("[$(CC)]")

    def test_unsupported_component_grouping(self):
        with pytest.raises(UnsupportedFeatureError):
            parse_smarts("(C).(C)")

    def test_bad_syntax(self):
        with pytest.raises(ParseError):
            parse_smarts("[")


class TestMatching:
    def test_element(self):
        assert count("CCO", "O") == 1
        assert count("CCO", "C") == 2

    def test_aromatic_vs_aliphatic(self):
        assert has_match(parse_smiles("c1ccccc1"), parse_smarts("c"))
        assert not has_match(parse_smiles("c1ccccc1"), parse_smarts("C"))
        assert has_match(parse_smiles("C1CCCCC1"), parse_smarts("C"))

    def test_ring_primitives(self):
        assert has_match(parse_smiles("C1CCCC1"), parse_smarts("[r5]"))
        assert not has_match(parse_smiles("CCCCC"), parse_smarts("[R]"))

    def test_hydrogen_counts(self):
        assert has_match(parse_smiles("CO"), parse_smarts("[OH]"))
        assert not has_match(parse_smiles("COC"), parse_smarts("[OH]"))

    def test_charge(self):
        assert has_match(parse_smiles("[NH4+]"), parse_smarts("[N+]"))
        assert not has_match(parse_smiles("N"), parse_smarts("[N+]"))

    def test_bond_orders(self):
        assert has_match(parse_smiles("C=C"), parse_smarts("C=C"))
        assert not has_match(parse_smiles("CC"), parse_smarts("C=C"))
        assert has_match(parse_smiles("c1ccccc1"), parse_smarts("c:c"))
        # default bond is single-or-aromatic
        assert has_match(parse_smiles("c1ccccc1"), parse_smarts("cc"))

    def test_benzene_automorphisms_collapse(self):
        # benzene has 12 automorphisms; unique images collapse to 1
        matches = find_matches(parse_smiles("c1ccccc1"), parse_smarts("c1ccccc1"))
        assert len(matches) == 1

    def test_disjunction_and_negation(self):
        assert count("CCOF", "[O,F]") == 2
        assert count("CCO", "[!C]") == 1

    def test_match_is_order_independent(self):
        a = count("CC(=O)Oc1ccccc1C(=O)O", "C(=O)O")
        b = count("OC(=O)c1ccccc1OC(C)=O", "C(=O)O")
        assert a == b


class TestCatalogs:
    def test_all_bundled_load_without_skips(self):
        for name in CATALOG_NAMES:
            catalog = get_catalog(name)
            assert catalog.n_patterns > 0
            assert catalog.skipped == []

    def test_methane_passes_everything(self):
        methane = parse_smiles("C")
        for name in CATALOG_NAMES:
            assert apply_catalog(methane, get_catalog(name)) == 0

    def test_acyl_halide_triggers_brenk(self):
        mol = parse_smiles("CC(=O)Cl")
        assert apply_catalog(mol, get_catalog("Brenk")) >= 1

    def test_flag_order_independent(self):
        catalog = get_catalog("Brenk")
        reversed_catalog = FilterCatalog(
            name=catalog.name, patterns=list(reversed(catalog.patterns))
        )
        mol = parse_smiles("OO")  # peroxide
        assert apply_catalog(mol, catalog) == apply_catalog(mol, reversed_catalog)

    def test_empty_catalog_raises(self):
        with pytest.raises(CatalogNotLoadedError):
            apply_catalog(parse_smiles("C"), FilterCatalog(name="empty"))

    def test_unsupported_entries_skipped_with_diagnostics(self, tmp_path):
        path = tmp_path / "cat.tsv"
        path.write_text(
            "ok\t[OH]\nrecursive\t[$(CC)]\nbad\t[[[\n", encoding="utf-8"
        )
        catalog = load_catalog_file(path, "Test")
        assert catalog.n_patterns == 1
        assert len(catalog.skipped) == 2

    def test_clean_drugs_pass(self):
        for smiles in ["CC(=O)Oc1ccccc1C(=O)O", "Cn1cnc2c1c(=O)n(C)c(=O)n2C"]:
            mol = parse_smiles(smiles)
            for name in CATALOG_NAMES:
                assert apply_catalog(mol, get_catalog(name)) == 0
