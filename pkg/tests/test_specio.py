import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from fockbench import operators as op
from fockbench import specio
from fockbench.errors import PreconditionError, SpecError
from fockbench.suites import RunConfig

SPECS = sorted((Path(__file__).resolve().parent.parent / "specs").glob("*.json"))

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


class TestSpecs:
    @pytest.mark.parametrize("path", SPECS, ids=lambda p: p.stem)
    def test_shipped_specs_roundtrip(self, path):
        spec = specio.load_spec(path)
        again = specio.spec_from_dict(json.loads(json.dumps(specio.spec_to_dict(spec))))
        A = specio.build_from_dict(spec, 12)
        B = specio.build_from_dict(again, 12)
        assert_array_equal(A.entries, B.entries)

    def test_composite(self):
        doc = {"class": "product", "params": {"factors": [
            {"class": "adjoint", "params": {"of": {"class": "weyl", "params": {"z": [0.5, 0.0]}}}},
            {"class": "weyl", "params": {"z": [0.5, 0.0]}}]}}
        A = specio.build_from_dict(specio.spec_from_dict(doc), 32)
        assert_allclose(A.leading(10), np.eye(10), atol=1e-10)
        assert specio.spec_to_dict(specio.spec_from_dict(doc)) == doc

    def test_zero(self):
        assert not specio.build_from_dict(specio.spec_from_dict({"class": "zero"}), 5).entries.any()

    @pytest.mark.parametrize("doc", [
        [], {"params": {}}, {"class": "nope"}, {"class": "weyl", "params": {}},
        {"class": "weyl", "params": []}, {"class": "toeplitz", "params": {"symbol": {"family": "mystery"}}},
    ])
    def test_malformed(self, doc):
        with pytest.raises(SpecError):
            specio.spec_from_dict(doc)

    def test_precondition_passes_through(self):
        doc = {"class": "hausdorff", "params": {"rho": {"atoms": [[0.5, 1.0]]}}}
        with pytest.raises(PreconditionError):
            specio.build_from_dict(specio.spec_from_dict(doc), 8)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(SpecError):
            specio.load_spec(tmp_path / "missing.json")
        (tmp_path / "bad.json").write_text("{not json")
        with pytest.raises(SpecError):
            specio.load_spec(tmp_path / "bad.json")


class TestMatrixIO:
    def test_bit_exact(self, tmp_path):
        A = op.weyl_matrix(0.3 - 0.7j, 16)
        specio.write_matrix(A, tmp_path / "m.json")
        assert_array_equal(specio.read_matrix(tmp_path / "m.json"), A.entries)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.tuples(finite, finite), min_size=4, max_size=4))
    def test_roundtrip_values(self, vals):
        M = np.array([complex(a, b) for a, b in vals]).reshape(2, 2)
        assert_array_equal(specio.matrix_from_dict(json.loads(json.dumps(specio.matrix_to_dict(M)))), M)

    def test_row_major(self):
        d = specio.matrix_to_dict(np.array([[1, 2], [3, 4]]))
        assert [e[0] for e in d["entries"]] == [1, 2, 3, 4]

    @pytest.mark.parametrize("doc", [{"dim": 2, "entries": [[0, 0]] * 4}, {"dim": 2, "layout": "row-major", "entries": [[0, 0]] * 3}, {}])
    def test_malformed(self, doc):
        with pytest.raises(SpecError):
            specio.matrix_from_dict(doc)

    def test_non_square(self):
        with pytest.raises(PreconditionError):
            specio.matrix_to_dict(np.zeros((2, 3)))


class TestConfig:
    def test_defaults_and_roundtrip(self):
        cfg = RunConfig()
        assert cfg.N == 48 and cfg.ladder == (2.0, 4.0, 6.0, 8.0) and cfg.n_angles == 64
        assert RunConfig.from_dict(cfg.to_dict()) == cfg

    def test_hash_ignores_out(self):
        assert RunConfig(out="a").config_hash() == RunConfig(out="b").config_hash()
        assert RunConfig(N=40).config_hash() != RunConfig().config_hash()

    def test_partial_tolerances_merge(self):
        cfg = RunConfig.from_dict({"tolerances": {"berezin-heat": 1e-4}})
        assert cfg.tol("berezin-heat") == 1e-4
        assert cfg.tol("distance-bound", "floor") == 0.1

    @pytest.mark.parametrize("doc", [{"bogus": 1}, {"N": 0}, {"N": "48"}, {"tolerances": {"berezin-heat": 1e-20}}, [1]])
    def test_rejects(self, doc):
        with pytest.raises(SpecError):
            RunConfig.from_dict(doc)

    def test_rng_independent_of_order(self):
        cfg = RunConfig()
        a = cfg.rng("berezin-heat").random(3)
        cfg.rng("weyl-toeplitz").random(3)
        assert_array_equal(a, cfg.rng("berezin-heat").random(3))
