from __future__ import annotations

from mpmath import iv, mp

from chowla.enclosure import ComplexEnclosure, working_precision


def test_pi_box_contains_pi():
    with working_precision(256):
        box = ComplexEnclosure(iv.pi, iv.mpf(0), 256)
    with mp.workprec(400):
        assert box.contains(mp.pi)
    assert box.width() < mp.mpf("1e-70")
    assert box.excludes_zero()


def test_log_of_minus_real_axis_neighbour():
    with working_precision(256):
        z = ComplexEnclosure(iv.mpf(1), iv.mpf(1), 256)
        w = z.log()
    with mp.workprec(400):
        assert w.contains(mp.log(mp.mpc(1, 1)))


def test_json_is_outward():
    with working_precision(64):
        box = ComplexEnclosure(iv.mpf(1) / 3, iv.mpf(0), 64)
    j = box.to_json(digits=10)
    assert mp.mpf(j["re"][0]) <= mp.mpf(1) / 3 <= mp.mpf(j["re"][1])
    assert j["precision_bits"] == 64


def test_arithmetic_contains_true_result():
    with working_precision(128):
        a = ComplexEnclosure(iv.mpf(2), iv.mpf(-1), 128)
        b = ComplexEnclosure(iv.mpf(1) / 7, iv.mpf(3), 128)
        prod = a * b
    with mp.workprec(300):
        assert prod.contains(mp.mpc(2, -1) * mp.mpc(mp.mpf(1) / 7, 3))
