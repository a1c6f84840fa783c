"""Backend selection: the compiled and pure kernels must agree bit for bit."""

import os
import subprocess
import sys

import pytest

import limitgames as lg
from limitgames import _kernels

needs_native = pytest.mark.skipif(
    "native" not in _kernels.available(), reason="compiled kernel not built"
)


class TestSelection:
    def test_pure_always_available(self):
        assert "pure" in _kernels.available()

    def test_active_is_known(self):
        assert _kernels.active_name() in _kernels.available()

    def test_override_restores(self):
        before = _kernels.active_name()
        with _kernels.override("pure"):
            assert _kernels.active_name() == "pure"
        assert _kernels.active_name() == before

    def test_override_restores_on_error(self):
        before = _kernels.active_name()
        with pytest.raises(RuntimeError):
            with _kernels.override("pure"):
                raise RuntimeError("boom")
        assert _kernels.active_name() == before

    def test_unknown_backend_rejected(self):
        with pytest.raises(KeyError):
            with _kernels.override("turbo"):
                pass

    def test_results_are_plain_ints(self, p1):
        # numpy scalars must not leak out of any backend
        for backend in _kernels.available():
            with _kernels.override(backend):
                sol = lg.reach_fixpoint(p1, p1.goal)
            for x in (*sol.ranks, *sol.settling, sol.iterations):
                assert type(x) is int

    def test_env_var_forces_pure(self):
        code = (
            "from limitgames import _kernels; "
            "print(_kernels.active_name())"
        )
        out = subprocess.run(
            [sys.executable, "-c", code],
            env={**os.environ, "LIMITGAMES_PURE": "1"},
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == "pure"


@needs_native
class TestBackendAgreement:
    def test_reach_identical(self, products):
        for p in products[:80]:
            with _kernels.override("native"):
                a = lg.reach_fixpoint(p, p.goal)
            with _kernels.override("pure"):
                b = lg.reach_fixpoint(p, p.goal)
            assert a == b

    def test_limit_identical(self, products):
        for p in products[:40]:
            with _kernels.override("native"):
                a = lg.limit_fixpoint(p)
            with _kernels.override("pure"):
                b = lg.limit_fixpoint(p)
            assert a.ranks == b.ranks
            assert a.settling == b.settling
            assert a.iterations == b.iterations
            assert a.h_of == b.h_of
            for (ra, ha), (rb, hb) in zip(a.history, b.history):
                assert ra == rb
                assert ha.thresholds == hb.thresholds
                assert ha.levels == hb.levels
                for sa, sb in zip(ha.inner, hb.inner):
                    assert sa.ranks == sb.ranks
                    assert sa.settling == sb.settling

    def test_worked_examples_identical(self, p1, p2, pinf):
        for p in (p1, p2, pinf):
            with _kernels.override("native"):
                a = lg.limit_fixpoint(p)
            with _kernels.override("pure"):
                b = lg.limit_fixpoint(p)
            assert a.ranks == b.ranks
