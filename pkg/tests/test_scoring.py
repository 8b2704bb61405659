"""Fingerprints, QED, SA, and batch metrics."""

import json
import random
from pathlib import Path

import numpy as np
import pytest

from madd.errors import LengthMismatchError
from madd.molcore import parse_smiles, write_smiles
from madd.scoring import (
    batch_metrics,
    morgan_environment_counts,
    morgan_fingerprint,
    qed,
    qed_properties,
    sa_score,
    sa_score_detailed,
    tanimoto,
)

FIXTURES = Path(__file__).parent / "fixtures"


class TestFingerprints:
    def test_deterministic(self):
        a = morgan_fingerprint(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"))
        b = morgan_fingerprint(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"))
        assert a == b

    def test_atom_order_invariant(self):
        a = morgan_fingerprint(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"))
        b = morgan_fingerprint(parse_smiles("OC(=O)c1ccccc1OC(C)=O"))
        assert a == b

    def test_parameter_validation(self):
        mol = parse_smiles("CCO")
        with pytest.raises(ValueError):
            morgan_fingerprint(mol, radius=-1)
        with pytest.raises(ValueError):
            morgan_fingerprint(mol, n_bits=100)

    def test_tanimoto_identity_and_bounds(self):
        fp = morgan_fingerprint(parse_smiles("c1ccccc1O"))
        assert tanimoto(fp, fp) == 1.0
        other = morgan_fingerprint(parse_smiles("CCCCN"))
        assert 0.0 <= tanimoto(fp, other) < 1.0

    def test_tanimoto_length_mismatch(self):
        a = morgan_fingerprint(parse_smiles("CCO"), n_bits=1024)
        b = morgan_fingerprint(parse_smiles("CCO"), n_bits=2048)
        with pytest.raises(LengthMismatchError):
            tanimoto(a, b)

    def test_tanimoto_equals_bruteforce_bitsets(self):
        corpus = [
            "CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O", "CCN(CC)CC",
            "c1ccc2[nH]ccc2c1", "OCC1OC(O)C(O)C(O)C1O", "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
            "Cn1cnc2c1c(=O)n(C)c(=O)n2C", "NCCc1ccc(O)c(O)c1", "C1CCNCC1",
        ]
        fps = [morgan_fingerprint(parse_smiles(s)) for s in corpus]
        rng = random.Random(0)
        for _ in range(100):
            a, b = rng.choice(fps), rng.choice(fps)
            sa_bits, sb_bits = set(a.on_bits()), set(b.on_bits())
            union = len(sa_bits | sb_bits)
            expected = len(sa_bits & sb_bits) / union if union else 0.0
            assert tanimoto(a, b) == pytest.approx(expected, abs=1e-12)

    def test_environment_counts_total(self):
        mol = parse_smiles("CCO")
        counts = morgan_environment_counts(mol, radius=2)
        assert sum(counts.values()) == 3 * 3  # n_atoms * (radius + 1)


class TestQed:
    def test_reference_drugs_within_tolerance(self):
        data = json.loads((FIXTURES / "scoring_oracle.json").read_text())
        checked = 0
        for entry in data["molecules"]:
            if entry["qed_ref"] is None:
                continue
            value = qed(parse_smiles(entry["smiles"]))
            assert value == pytest.approx(entry["qed_ref"], abs=0.05), entry["name"]
            checked += 1
        assert checked >= 3

    def test_bounds(self):
        for smiles in ["C", "CCO", "CC(=O)Oc1ccccc1C(=O)O",
                       "Cn1cnc2c1c(=O)n(C)c(=O)n2C"]:
            assert 0.0 < qed(parse_smiles(smiles)) < 1.0

    def test_druglike_beats_fragment(self):
        assert qed(parse_smiles("CC(=O)Nc1ccc(O)cc1")) > qed(parse_smiles("C"))

    def test_properties_complete(self):
        props = qed_properties(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"))
        assert set(props) == {
            "MW", "ALOGP", "HBA", "HBD", "PSA", "ROTB", "AROM", "ALERTS"
        }


class TestSa:
    def test_reference_anchors(self):
        data = json.loads((FIXTURES / "scoring_oracle.json").read_text())
        for entry in data["molecules"]:
            if entry["sa_ref"] is None:
                continue
            value = sa_score(parse_smiles(entry["smiles"]))
            assert value == pytest.approx(entry["sa_ref"], abs=1.0), entry["name"]

    def test_range_and_determinism(self):
        for smiles in ["CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O",
                       "C1CC2CCC1CC2", "OCC1OC(O)C(O)C(O)C1O"]:
            mol = parse_smiles(smiles)
            value = sa_score(mol)
            assert 1.0 <= value <= 10.0
            assert sa_score(mol) == value

    def test_complexity_monotonicity(self):
        simple = sa_score(parse_smiles("CCO"))
        caged = sa_score(parse_smiles("OC12C3C(O)C4(CC1O)CC2(O)C3C4"))
        assert caged > simple + 1.0

    def test_fragment_table_loaded(self):
        assert not sa_score_detailed(parse_smiles("CCO")).fallback


class TestBatchMetrics:
    def test_arithmetic(self):
        m = batch_metrics(
            ["CCO", "CCO", "c1ccccc1", "not_a_smiles", "CCN"],
            train_corpus={write_smiles(parse_smiles("CCO"))},
        )
        assert m.validity == pytest.approx(80.0)
        assert m.duplicates == pytest.approx(25.0)
        assert m.novelty == pytest.approx(100 * 2 / 3)
        assert 0.0 <= m.diversity <= 1.0

    def test_identical_molecules_zero_diversity(self):
        m = batch_metrics(["CCO", "OCC", "CCO"])
        assert m.diversity == 0.0  # single unique molecule
        assert m.duplicates == pytest.approx(100 * 2 / 3)

    def test_empty_batch(self):
        m = batch_metrics([])
        assert m.validity == 0.0
        assert m.novelty == 0.0

    def test_novelty_partition(self):
        corpus = {write_smiles(parse_smiles("CCO"))}
        m = batch_metrics(["CCO", "CCN", "CCC"], train_corpus=corpus)
        assert m.novelty + (100 - m.novelty) == pytest.approx(100.0)
        assert m.novelty == pytest.approx(100 * 2 / 3)

    def test_json_csv_emission(self, tmp_path):
        m = batch_metrics(["CCO", "CCN"])
        payload = json.loads(m.to_json())
        assert payload["validity"] == 100.0
        out = tmp_path / "metrics.csv"
        m.write_csv(out)
        assert "validity" in out.read_text().splitlines()[0]
