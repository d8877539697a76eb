import math

import numpy as np
import pytest

import pstqec


def test_standard_chain_transfers_perfectly():
    s = pstqec.standard_chain(8)
    assert s.n == 8
    assert math.isclose(s.t0, math.pi / 2)
    assert pstqec.pst_fidelity(s) == pytest.approx(1.0, abs=1e-12)
    u = pstqec.propagator(s, s.t0)
    assert np.allclose(np.abs(u), np.fliplr(np.eye(8)), atol=1e-10)


def test_catalog_and_verify():
    names = pstqec.catalog_names()
    assert "steane-7" in names and "css-13" in names
    r = pstqec.verify_code("steane-7")
    assert r["d1"] == 3 and r["d2"] == 3 and r["perfect"] is True
    assert pstqec.verify_code("css-13")["case"] == "i"


def test_unknown_code_raises():
    with pytest.raises(pstqec.MalformedInput):
        pstqec.verify_code("no-such-code")


def test_return_modes():
    r = pstqec.compute_R(pstqec.standard_chain(12))
    assert r.max_diagonal < 1e-10
    assert pstqec.compute_W(r, 6).max_sigma < 1
    assert pstqec.compute_W(r, 7).unit_count(1e-8) >= 2
    with pytest.raises(pstqec.PreconditionError):
        pstqec.compute_R(pstqec.standard_chain(11))


def test_noiseless_sweep_point():
    s = pstqec.standard_chain(8)
    (p,) = pstqec.dephasing_sweep(s, "steane-7", [0.0])
    assert p.f_encoded == pytest.approx(1.0, abs=1e-8)
    assert p.f_unencoded == pytest.approx(1.0, abs=1e-8)


def test_repetition_without_error():
    s = pstqec.standard_chain(9)
    res = pstqec.repetition_experiment(9, 3, 0, s.t0 / 2)
    assert res.error_probability < 1e-10
