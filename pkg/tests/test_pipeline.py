"""Property rows and GR1-GR5 cumulative filters."""

import csv
import io
import random

import pytest

from madd.pipeline import (
    PropertyRow,
    Thresholds,
    apply_groups,
    evaluate_batch,
    evaluate_molecule,
    rows_to_csv,
)
from madd.pipeline.filters import CSV_COLUMNS, GROUP_NAMES, group_flags
from madd.predict import DockingProvider


def make_row(gr_flags, valid=True):
    gr1, gr2, gr3, gr4, gr5 = gr_flags
    return PropertyRow(
        smiles="C", valid=valid, gr1=gr1, gr2=gr2, gr3=gr3, gr4=gr4, gr5=gr5
    )


def random_flags(rng):
    """Random cumulative flags (each level implies the previous)."""
    depth = rng.randint(0, 5)
    return tuple(i < depth for i in range(5))


class TestThresholds:
    def test_defaults(self):
        t = Thresholds()
        assert t.docking_max == -7.0
        assert t.sa_max == 3.0
        assert t.qed_min == 0.6

    def test_validation(self):
        with pytest.raises(ValueError):
            Thresholds(docking_max=1.0)
        with pytest.raises(ValueError):
            Thresholds(sa_max=0.5)
        with pytest.raises(ValueError):
            Thresholds(qed_min=1.5)


class TestBoundaries:
    def test_docking_boundary(self):
        t = Thresholds()
        assert group_flags(-7.0, 1, 2.0, 0, 0, 0, 0, 0.7, t)[0] is True
        assert group_flags(-6.99, 1, 2.0, 0, 0, 0, 0, 0.7, t)[0] is False

    def test_ic50_required(self):
        t = Thresholds()
        assert group_flags(-8.0, 0, 2.0, 0, 0, 0, 0, 0.7, t)[0] is False

    def test_sa_boundary(self):
        t = Thresholds()
        assert group_flags(-8.0, 1, 3.0, 0, 0, 0, 0, 0.7, t)[1] is True
        assert group_flags(-8.0, 1, 3.01, 0, 0, 0, 0, 0.7, t)[1] is False

    def test_qed_strict(self):
        t = Thresholds()
        flags_exact = group_flags(-8.0, 1, 2.0, 0, 0, 0, 0, 0.6, t)
        assert flags_exact[3] is True and flags_exact[4] is False
        flags_above = group_flags(-8.0, 1, 2.0, 0, 0, 0, 0, 0.601, t)
        assert flags_above[4] is True

    def test_alert_gates(self):
        t = Thresholds()
        assert group_flags(-8.0, 1, 2.0, 1, 0, 0, 0, 0.7, t)[2] is False
        assert group_flags(-8.0, 1, 2.0, 0, 1, 0, 0, 0.7, t)[3] is False
        assert group_flags(-8.0, 1, 2.0, 0, 0, 1, 0, 0.7, t)[3] is False
        assert group_flags(-8.0, 1, 2.0, 0, 0, 0, 1, 0.7, t)[3] is False

    def test_cumulative_invariant(self):
        t = Thresholds()
        rng = random.Random(1)
        for _ in range(500):
            flags = group_flags(
                rng.uniform(-14, 0), rng.randint(0, 1), rng.uniform(1, 10),
                rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2),
                rng.randint(0, 2), rng.random(), t,
            )
            for earlier, later in zip(flags, flags[1:]):
                assert earlier or not later


class TestApplyGroups:
    def test_all_pass(self):
        rows = [make_row((True,) * 5) for _ in range(10)]
        rep = apply_groups(rows)
        assert all(v == 100.0 for v in rep.percentages.values())

    def test_empty_input(self):
        rep = apply_groups([])
        assert rep.empty_batch
        assert all(v == 0.0 for v in rep.percentages.values())

    def test_bruteforce_counting(self):
        rng = random.Random(42)
        rows = [make_row(random_flags(rng)) for _ in range(200)]
        rep = apply_groups(rows)
        for i, name in enumerate(GROUP_NAMES):
            attr = name.lower()
            expected = 100.0 * sum(getattr(r, attr) for r in rows) / len(rows)
            assert rep.percentages[name] == pytest.approx(expected)

    def test_invalid_excluded_from_denominator(self):
        rows = [make_row((True,) * 5), make_row((False,) * 5, valid=False)]
        rep = apply_groups(rows)
        assert rep.n_valid == 1
        assert rep.percentages["GR1"] == 100.0

    def test_hit_list(self):
        rows = [make_row((True,) * 5), make_row((True, True, False, False, False))]
        rep = apply_groups(rows, hit_group="GR2")
        assert len(rep.hits) == 2
        rep5 = apply_groups(rows, hit_group="GR5")
        assert len(rep5.hits) == 1


class TestEvaluate:
    def test_invalid_molecule_row(self):
        row = evaluate_molecule("bad((", DockingProvider())
        assert not row.valid
        assert row.error

    def test_full_row_and_csv(self):
        rows = evaluate_batch(
            ["CC(=O)Oc1ccccc1C(=O)O", "OC(=O)c1ccccc1OC(C)=O", "zzz"],
            DockingProvider(),
        )
        assert [r.valid for r in rows] == [True, True, False]
        assert rows[1].duplicate  # same canonical molecule as row 0
        text = rows_to_csv(rows)
        reader = csv.DictReader(io.StringIO(text))
        assert tuple(reader.fieldnames) == CSV_COLUMNS
        records = list(reader)
        assert len(records) == 3
        assert records[0]["Validity"] == "1"
        assert records[2]["Validity"] == "0"

    def test_deterministic(self):
        a = evaluate_molecule("Cn1cnc2c1c(=O)n(C)c(=O)n2C", DockingProvider())
        b = evaluate_molecule("Cn1cnc2c1c(=O)n(C)c(=O)n2C", DockingProvider())
        assert a == b

    def test_provider_failure_marks_partial(self):
        class FailingProvider:
            def score(self, mol, target=""):
                raise RuntimeError("receptor offline")

        row = evaluate_molecule("CCO", FailingProvider())
        assert row.valid and row.partial
        assert not row.gr1
        assert "docking" in row.error
