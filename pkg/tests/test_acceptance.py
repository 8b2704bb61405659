"""Acceptance criteria: arithmetic, filters, round-trips, oracles,
determinism, and the offline end-to-end flow."""

import json
import math
import random
import time
from pathlib import Path

import pytest

from madd.agents import (
    AgentSystem,
    ScriptedMockBackend,
    TrainedModelsDict,
    build_default_registry,
)
from madd.evalharness import BenchmarkQuery, EvalRun, final_accuracy, score_all
from madd.generate import EvoBackend, EvoConfig, TrainedCase, evolve
from madd.molcore import parse_smiles, write_smiles
from madd.molcore.graph import AROMATIC
from madd.pipeline import PropertyRow, Thresholds, apply_groups
from madd.pipeline.filters import GROUP_NAMES, group_flags
from madd.predict import DockingProvider, label_by_median, train_knn
from madd.scoring import morgan_fingerprint, qed, sa_score, tanimoto

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_PATH = Path(__file__).parents[1] / "src" / "madd" / "data" / "corpus.smi"


def load_corpus():
    lines = CORPUS_PATH.read_text().splitlines()
    return [line for line in lines if line and not line.startswith("#")]


# -- Final-accuracy arithmetic ----------------------------------------


class TestFinalAccuracyArithmetic:
    def test_reference_values(self):
        start = time.monotonic()
        assert final_accuracy(83.7, 95.3) == pytest.approx(79.8, abs=0.05)
        assert final_accuracy(85.8, 19.1) == pytest.approx(16.4, abs=0.05)
        assert final_accuracy(86.9, 100.0) == pytest.approx(86.9, abs=1e-12)
        assert time.monotonic() - start < 1.0


# -- GR monotonicity and boundary semantics ---------------------------


class TestGroupFilters:
    def test_monotonicity_randomized(self):
        start = time.monotonic()
        rng = random.Random(2024)
        thresholds = Thresholds()
        rows = []
        for _ in range(1000):
            flags = group_flags(
                rng.uniform(-14.0, 0.0),
                rng.randint(0, 1),
                rng.uniform(1.0, 10.0),
                rng.randint(0, 2),
                rng.randint(0, 2),
                rng.randint(0, 2),
                rng.randint(0, 2),
                rng.random(),
                thresholds,
            )
            rows.append(
                PropertyRow(
                    smiles="C", valid=True,
                    gr1=flags[0], gr2=flags[1], gr3=flags[2],
                    gr4=flags[3], gr5=flags[4],
                )
            )
        report = apply_groups(rows)
        values = [report.percentages[name] for name in GROUP_NAMES]
        for earlier, later in zip(values, values[1:]):
            assert earlier >= later
        assert time.monotonic() - start < 5.0

    def test_boundary_semantics(self):
        t = Thresholds()
        # docking: -7.0 passes GR1, -6.99 fails
        assert group_flags(-7.0, 1, 2.0, 0, 0, 0, 0, 0.7, t)[0]
        assert not group_flags(-6.99, 1, 2.0, 0, 0, 0, 0, 0.7, t)[0]
        # SA: exactly 3.0 passes GR2
        assert group_flags(-8.0, 1, 3.0, 0, 0, 0, 0, 0.7, t)[1]
        # QED: 0.60 fails GR5 (strict), 0.601 passes
        assert not group_flags(-8.0, 1, 2.0, 0, 0, 0, 0, 0.60, t)[4]
        assert group_flags(-8.0, 1, 2.0, 0, 0, 0, 0, 0.601, t)[4]


# -- SMILES round-trip on the 1000-molecule corpus --------------------


def atom_key(atom):
    return (atom.element, atom.formal_charge, atom.isotope, atom.aromatic)


def bond_key(bond):
    # aromatic ring bonds may legitimately re-perceive between kekulized
    # and aromatic forms; compare aromatic flags separately from order
    return bond.order


def isomorphic(mol_a, mol_b) -> bool:
    """Brute-force attributed-graph isomorphism (backtracking)."""
    if mol_a.n_atoms != mol_b.n_atoms or len(mol_a.bonds) != len(mol_b.bonds):
        return False
    n = mol_a.n_atoms
    candidates = [
        [
            j
            for j in range(n)
            if atom_key(mol_a.atoms[i]) == atom_key(mol_b.atoms[j])
            and mol_a.degree(i) == mol_b.degree(j)
        ]
        for i in range(n)
    ]
    if any(not c for c in candidates):
        return False
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    mapping = [-1] * n
    used = [False] * n

    def bonds_consistent(i, j):
        for neighbor, bond in mol_a.neighbors(i):
            if mapping[neighbor] == -1:
                continue
            other = mol_b.bond_between(j, mapping[neighbor])
            if other is None or bond_key(other) != bond_key(bond):
                return False
        return True

    def backtrack(depth):
        if depth == n:
            return True
        i = order[depth]
        for j in candidates[i]:
            if used[j] or not bonds_consistent(i, j):
                continue
            mapping[i] = j
            used[j] = True
            if backtrack(depth + 1):
                return True
            mapping[i] = -1
            used[j] = False
        return False

    return backtrack(0)


class TestCorpusRoundTrip:
    def test_thousand_molecule_round_trip(self):
        start = time.monotonic()
        corpus = load_corpus()
        assert len(corpus) == 1000
        failures = []
        for smiles in corpus:
            try:
                mol = parse_smiles(smiles)
                rewritten = write_smiles(mol)
                reparsed = parse_smiles(rewritten)
            except Exception as exc:  # any parse failure counts
                failures.append((smiles, f"parse/write error: {exc}"))
                continue
            assert mol.n_atoms <= 30
            if not isomorphic(mol, reparsed):
                failures.append((smiles, f"not isomorphic to {rewritten}"))
        assert not failures, failures[:5]
        assert time.monotonic() - start < 30.0


# -- Scoring oracles ---------------------------------------------------


class TestScoringOracles:
    def test_fixture_set_with_provenance(self):
        data = json.loads((FIXTURES / "scoring_oracle.json").read_text())
        molecules = data["molecules"]
        assert len(molecules) == 20
        assert data["_provenance"]
        for entry in molecules:
            mol = parse_smiles(entry["smiles"])
            q = qed(mol)
            s = sa_score(mol)
            if entry["qed_ref"] is not None:
                assert q == pytest.approx(entry["qed_ref"], abs=0.05), entry["name"]
            else:
                assert 0.0 < q < 1.0, entry["name"]
            if entry["sa_ref"] is not None:
                assert s == pytest.approx(entry["sa_ref"], abs=1.0), entry["name"]
            else:
                assert 1.0 <= s <= 10.0, entry["name"]

    def test_tanimoto_equals_bruteforce(self):
        data = json.loads((FIXTURES / "scoring_oracle.json").read_text())
        fps = [morgan_fingerprint(parse_smiles(e["smiles"])) for e in data["molecules"]]
        rng = random.Random(17)
        for _ in range(100):
            a, b = rng.choice(fps), rng.choice(fps)
            bits_a, bits_b = set(a.on_bits()), set(b.on_bits())
            union = len(bits_a | bits_b)
            expected = len(bits_a & bits_b) / union if union else 0.0
            assert tanimoto(a, b) == expected  # exact equality required


# -- Median split ------------------------------------------------------


class TestMedianSplit:
    def test_fifty_random_datasets_vs_sort_oracle(self):
        rng = random.Random(99)
        alkanes = ["C" * n for n in range(1, 40)]
        for _ in range(50):
            n = rng.randint(2, 30)
            smiles = rng.sample(alkanes, n)
            raw = [(s, 10 ** rng.uniform(0, 6)) for s in smiles]
            ds = label_by_median(raw)
            # sort-based oracle for the median of lg values
            lgs = sorted(r.lg_ic50 for r in ds.records)
            k = len(lgs)
            oracle = lgs[k // 2] if k % 2 else (lgs[k // 2 - 1] + lgs[k // 2]) / 2
            assert ds.median == pytest.approx(oracle)
            for record in ds.records:
                assert record.label == (1 if record.lg_ic50 < oracle else 0)
            assert sum(r.label for r in ds.records) <= math.ceil(k / 2)


# -- Evolutionary generator -------------------------------------------


def cheap_fitness(smiles: str) -> float:
    mol = parse_smiles(smiles)
    aromatic = sum(1 for a in mol.atoms if a.aromatic)
    return aromatic + 0.1 * mol.n_atoms


class TestEvo:
    def test_fifty_generations_monotone_deterministic_valid(self):
        start = time.monotonic()
        seeds = load_corpus()[:100]
        config = EvoConfig(
            population_size=100, generations=50, elitism_count=2, seed=404
        )
        trace = evolve(config, seeds, cheap_fitness)
        best = [s.best_fitness for s in trace.stats]
        assert len(best) == 50
        assert all(b2 >= b1 for b1, b2 in zip(best, best[1:]))
        # >= 90% of the final population must be valid SMILES
        valid = 0
        for smiles, _ in trace.final_population:
            try:
                parse_smiles(smiles)
                valid += 1
            except Exception:
                pass
        assert valid / len(trace.final_population) >= 0.90
        # same seed, byte-identical output
        again = evolve(config, seeds, cheap_fitness)
        assert json.dumps(trace.final_population) == json.dumps(
            again.final_population
        )
        assert trace == again
        assert time.monotonic() - start < 120.0


# -- End-to-end offline ------------------------------------------------


def _no_network(monkeypatch):
    def deny(*args, **kwargs):
        raise AssertionError("network access attempted in offline test")

    monkeypatch.setattr("madd.agents.backend.requests.post", deny)
    monkeypatch.setattr("madd.generate.backends.requests.post", deny)
    monkeypatch.setattr("madd.datasets.client.requests.get", deny)


def make_activity_model():
    ds = label_by_median(
        [("CCO", 10), ("CCCO", 20), ("CCN", 5000), ("CCCN", 8000), ("CCCCN", 9000)]
    )
    return train_knn(ds, k=3)


def fast_evo(seed=13):
    return EvoBackend(
        EvoConfig(
            population_size=4,
            generations=1,
            elitism_count=1,
            mutation_rate=0.0,
            crossover_rate=0.0,
            seed=seed,
        )
    )


REPLAY_SCRIPT = [
    (
        "Generate GSK-3beta inhibitors",
        json.dumps(
            {
                "steps": [
                    ["Generate molecule of GSK-3beta inhibitors with high docking score"]
                ]
            }
        ),
    ),
    (
        "high docking score",
        json.dumps({"name": "gen_mols", "parameters": {"case": "Sclrerosis", "num": 1}}),
    ),
    (
        "multiple sclerosis drug molecules",
        json.dumps({"steps": [["Generate two molecules for the Cancer case"]]}),
    ),
    (
        "Cancer case",
        json.dumps({"name": "gen_mols", "parameters": {"case": "Cancer", "num": 2}}),
    ),
]


def build_replay_system():
    backend = ScriptedMockBackend(list(REPLAY_SCRIPT))
    trained = TrainedModelsDict(
        {"Sclrerosis": "Generation of molecules for multiple sclerosis."}
    )
    evo = fast_evo()
    evo.register_case(
        "Sclrerosis",
        TrainedCase(
            seed_population=tuple(load_corpus()[:8]),
            fragment_library=("C", "O", "N"),
        ),
    )
    registry, _ = build_default_registry(
        backend,
        trained,
        evo_backend=evo,
        docking_provider=DockingProvider(),
        thresholds=Thresholds(),
        activity_model=make_activity_model(),
    )
    return AgentSystem(backend=backend, registry=registry, trained_models=trained)


class TestEndToEndOffline:
    def test_replay_with_golden_files(self, monkeypatch):
        start = time.monotonic()
        _no_network(monkeypatch)
        system = build_replay_system()

        # trained-case generation
        answer1, record1 = system.run_query(
            "Generate GSK-3beta inhibitors with a high docking score"
        )
        assert record1.plan == (
            "Generate molecule of GSK-3beta inhibitors with high docking score",
        )
        assert record1.selected_tools() == ["gen_mols"]
        assert record1.tool_calls()[0]["parameters"] == {
            "case": "Sclrerosis",
            "num": 1,
            "model": "CVAE",
        }
        assert len(answer1.all_smiles()) == 1
        golden1 = (FIXTURES / "golden_answer_trained.txt").read_text()
        assert answer1.render() == golden1

        # untrained case falls back to training
        answer2, record2 = system.run_query(
            "Make multiple sclerosis drug molecules for the Cancer case"
        )
        assert record2.selected_tools() == ["train_gen_models"]
        assert record2.tool_calls()[0]["rerouted_from"] == "gen_mols"
        assert record2.tool_calls()[0]["parameters"] == {
            "model": "CVAE",
            "epoch": 100,
            "case_name": "Cancer",
        }
        assert "Cancer" in system.trained_models
        golden2 = (FIXTURES / "golden_answer_training.txt").read_text()
        assert answer2.render() == golden2
        assert time.monotonic() - start < 60.0

    def test_thirty_query_mini_benchmark(self, monkeypatch):
        start = time.monotonic()
        _no_network(monkeypatch)
        script = []
        for i in range(30):
            script.append(
                (
                    f"benchmark query {i:02d}",
                    json.dumps({"steps": [[f"subtask {i:02d}: generate one molecule"]]}),
                )
            )
            script.append(
                (
                    f"subtask {i:02d}",
                    json.dumps(
                        {"name": "gen_mols", "parameters": {"case": "Sclrerosis", "num": 1}}
                    ),
                )
            )
        backend = ScriptedMockBackend(script)
        trained = TrainedModelsDict({"Sclrerosis": "trained"})
        evo = fast_evo(seed=29)
        evo.register_case(
            "Sclrerosis",
            TrainedCase(
                seed_population=("c1ccccc1O", "CC(=O)Nc1ccccc1"),
                fragment_library=("C",),
            ),
        )
        registry, _ = build_default_registry(
            backend,
            trained,
            evo_backend=evo,
            docking_provider=DockingProvider(),
            activity_model=make_activity_model(),
        )
        system = AgentSystem(backend=backend, registry=registry, trained_models=trained)

        queries = []
        runs = {}
        for i in range(30):
            qid = f"q{i:02d}"
            queries.append(
                BenchmarkQuery(
                    id=qid,
                    text=f"benchmark query {i:02d}",
                    tier="S",
                    expected_tools=("gen_mols",),
                    task_count=1,
                )
            )
            answer, record = system.run_query(f"benchmark query {i:02d}")
            tool_smiles = []
            for event in record.events:
                if event["kind"] == "tool_output":
                    tool_smiles.extend(event["smiles"])
            runs[qid] = EvalRun(
                query_id=qid,
                selected_tools=tuple(record.selected_tools()),
                answer_smiles=tuple(answer.all_smiles()),
                tool_smiles=tuple(tool_smiles),
            )

        metrics = score_all(queries, runs)
        assert metrics.ts == 100.0
        assert metrics.ssa == 100.0
        assert metrics.fa == 100.0
        assert time.monotonic() - start < 60.0


# -- Dataset client ----------------------------------------------------


class TestDatasetAcceptance:
    @staticmethod
    def write_warm_cache(cache_dir: Path, target: str, n: int, page_size: int = 250):
        pool = ["CCO", "CCN", "CCC", "c1ccccc1", "CC(=O)O"]
        activities = [
            {
                "canonical_smiles": pool[i % len(pool)],
                "standard_value": str(10 + i),
                "standard_units": "nM",
            }
            for i in range(n)
        ]
        pages = []
        for start in range(0, n, page_size):
            chunk = activities[start : start + page_size]
            has_next = start + page_size < n
            pages.append(
                {"activities": chunk, "page_meta": {"next": "more" if has_next else None}}
            )
        cache_dir.mkdir(parents=True, exist_ok=True)
        (cache_dir / f"chembl_{target}_IC50.json").write_text(json.dumps(pages))

    def test_gsk_fixture_fetch(self, tmp_path, monkeypatch):
        from madd.datasets import fetch

        monkeypatch.chdir(tmp_path)
        _no_network(monkeypatch)
        cache_dir = tmp_path / "cache"
        self.write_warm_cache(cache_dir, "GSK", 653)
        records, message = fetch("chembl", "GSK", cache_dir=cache_dir)
        assert len(records) == 653
        assert message == "Found 653 entries for GSK. Saved to MADD/ds/molecules_GSK.csv"
        assert (tmp_path / "MADD" / "ds" / "molecules_GSK.csv").exists()

    def test_corpus_build_excludes_heavy_and_dedupes(self, tmp_path):
        from madd.datasets import AffinityRecord, CorpusSpec, build_corpus

        heavy = "C" * 36
        records = [
            AffinityRecord(heavy, "T", "IC50", 10.0, "chembl"),
            AffinityRecord("CCO", "T", "IC50", 10.0, "chembl"),
            AffinityRecord("OCC", "T", "IC50", 20.0, "chembl"),
        ]
        result = build_corpus(
            records, CorpusSpec(case_name="Acc"), DockingProvider(), out_dir=tmp_path
        )
        assert result.n_excluded_mw == 1
        assert result.n_rows == 1  # OCC deduped against CCO
