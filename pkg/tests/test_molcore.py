"""mol-core: parsing, perception, canonical writing, descriptors."""

import math

import pytest

from madd.errors import (
    ParseError,
    UnclosedRingError,
    UnknownElementError,
    UnsupportedFeatureError,
    ValenceViolationError,
)
from madd.molcore import parse_smiles, write_smiles
from madd.molcore.descriptors import (
    crippen_logp,
    descriptors,
    hba,
    hbd,
    mol_weight,
    rotatable_bonds,
    tpsa,
)
from madd.molcore.perception import aromatic_ring_count, sssr
from madd.molcore.validity import check_validity


class TestParsing:
    def test_simple_chain(self):
        mol = parse_smiles("CCO")
        assert mol.n_atoms == 3
        assert [a.element for a in mol.atoms] == ["C", "C", "O"]
        assert [a.explicit_h for a in mol.atoms] == [3, 2, 1]

    def test_branches_and_rings(self):
        mol = parse_smiles("CC(C)c1ccccc1")
        assert mol.n_atoms == 9
        assert sum(a.aromatic for a in mol.atoms) == 6

    def test_charges_and_isotopes(self):
        mol = parse_smiles("[13CH4]")
        assert mol.atoms[0].isotope == 13
        mol = parse_smiles("[NH4+]")
        assert mol.atoms[0].formal_charge == 1
        assert mol.atoms[0].explicit_h == 4

    def test_multi_fragment(self):
        mol = parse_smiles("[Na+].[Cl-]")
        assert mol.fragment_count == 2
        assert len(mol.fragments()) == 2

    def test_error_unclosed_ring(self):
        with pytest.raises(UnclosedRingError):
            parse_smiles("C1CC")

    def test_error_unknown_element(self):
        with pytest.raises(UnknownElementError):
            parse_smiles("[Xx]")

    def test_error_valence(self):
        with pytest.raises(ValenceViolationError):
            parse_smiles("C(C)(C)(C)(C)C")

    def test_error_offsets_reported(self):
        with pytest.raises(ParseError) as excinfo:
            parse_smiles("CC(C")
        assert "offset" in str(excinfo.value)

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_smiles("")

    def test_aromatic_forms_parse(self):
        # both kekulized and lowercase aromatic forms must parse
        parse_smiles("C1=CC=CC=C1")
        parse_smiles("c1ccccc1")
        parse_smiles("Cn1cnc2c1c(=O)n(C)c(=O)n2C")  # aromatic caffeine

    def test_pyrrole_needs_explicit_h(self):
        mol = parse_smiles("c1cc[nH]c1")
        n = next(a for a in mol.atoms if a.element == "N")
        assert n.explicit_h == 1


class TestCanonicalWriter:
    def test_roundtrip_stable(self):
        for smiles in ["CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O"]:
            canonical = write_smiles(parse_smiles(smiles))
            assert write_smiles(parse_smiles(canonical)) == canonical

    def test_input_form_invariance(self):
        a = write_smiles(parse_smiles("OCC"))
        b = write_smiles(parse_smiles("CCO"))
        assert a == b
        a = write_smiles(parse_smiles("c1ccccc1"))
        b = write_smiles(parse_smiles("C1=CC=CC=C1"))
        assert a == b

    def test_caffeine_forms_converge(self):
        kekulized = "CN1C=NC2=C1C(=O)N(C)C(=O)N2C"
        aromatic = "Cn1cnc2c1c(=O)n(C)c(=O)n2C"
        assert write_smiles(parse_smiles(kekulized)) == write_smiles(
            parse_smiles(aromatic)
        )

    def test_fragments_sorted(self):
        a = write_smiles(parse_smiles("[Na+].[Cl-]"))
        b = write_smiles(parse_smiles("[Cl-].[Na+]"))
        assert a == b


class TestPerception:
    def test_benzene_aromatic(self):
        mol = parse_smiles("C1=CC=CC=C1")
        assert aromatic_ring_count(mol) == 1
        assert all(a.aromatic for a in mol.atoms)

    def test_cyclohexane_not_aromatic(self):
        mol = parse_smiles("C1CCCCC1")
        assert aromatic_ring_count(mol) == 0

    def test_naphthalene_two_rings(self):
        mol = parse_smiles("c1ccc2ccccc2c1")
        assert aromatic_ring_count(mol) == 2
        assert len(sssr(mol)) == 2

    def test_pyridine_furan_thiophene_pyrrole(self):
        for smiles in ["c1ccncc1", "c1ccoc1", "c1ccsc1", "c1cc[nH]c1"]:
            assert aromatic_ring_count(parse_smiles(smiles)) == 1

    def test_cyclobutadiene_antiaromatic(self):
        mol = parse_smiles("C1=CC=C1")
        assert aromatic_ring_count(mol) == 0


class TestDescriptors:
    def test_mol_weight(self):
        assert mol_weight(parse_smiles("C")) == pytest.approx(16.043, abs=0.01)
        assert mol_weight(parse_smiles("CC(=O)Oc1ccccc1C(=O)O")) == pytest.approx(
            180.159, abs=0.01
        )

    def test_crippen_logp_reference_values(self):
        # exact table arithmetic for the Wildman-Crippen model
        assert crippen_logp(parse_smiles("CCO")) == pytest.approx(-0.0014, abs=1e-4)
        assert crippen_logp(parse_smiles("c1ccccc1")) == pytest.approx(1.6866, abs=1e-4)
        assert crippen_logp(parse_smiles("CC(=O)Oc1ccccc1C(=O)O")) == pytest.approx(
            1.3101, abs=1e-4
        )
        assert crippen_logp(
            parse_smiles("Cn1cnc2c1c(=O)n(C)c(=O)n2C")
        ) == pytest.approx(-1.0293, abs=1e-4)

    def test_tpsa_reference_values(self):
        assert tpsa(parse_smiles("Cn1cnc2c1c(=O)n(C)c(=O)n2C")) == pytest.approx(
            61.82, abs=0.01
        )
        assert tpsa(parse_smiles("CC(=O)Oc1ccccc1C(=O)O")) == pytest.approx(
            63.60, abs=0.01
        )
        cimetidine = "CC1=C(N=CN1)CSCCNC(=NC)NC#N"
        assert tpsa(parse_smiles(cimetidine)) == pytest.approx(88.89, abs=0.01)

    def test_hbd_hba(self):
        aspirin = parse_smiles("CC(=O)Oc1ccccc1C(=O)O")
        assert hbd(aspirin) == 1
        assert hba(aspirin) == 4
        assert hbd(parse_smiles("CCO")) == 1
        assert hba(parse_smiles("CCO")) == 1

    def test_rotatable_bonds(self):
        assert rotatable_bonds(parse_smiles("CCO")) == 0
        assert rotatable_bonds(parse_smiles("CCCC")) == 1
        assert rotatable_bonds(parse_smiles("c1ccccc1-c1ccccc1")) == 1
        # amide C-N excluded
        assert rotatable_bonds(parse_smiles("CC(=O)NC")) == 0

    def test_descriptor_set(self):
        d = descriptors(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"))
        assert d.aromatic_rings == 1
        assert d.hbd == 1
        assert d.mol_weight == pytest.approx(180.159, abs=0.01)


class TestValidity:
    def test_mixed_batch(self):
        rep = check_validity(["CCO", "not_smiles((", "c1ccccc1"])
        assert rep.fraction == pytest.approx(2 / 3)
        assert rep.verdicts == [True, False, True]
        assert not rep.empty_batch

    def test_empty_batch(self):
        rep = check_validity([])
        assert rep.fraction == 0.0
        assert rep.empty_batch
