import math

import pytest

import finverify as fv


def test_family_values():
    assert fv.eval_v(fv.FamilySpec.family1(0.0), 0.0, -1.0) == 2.25
    assert fv.eval_u(fv.FamilySpec.cubic(2), 1.0, -1.0) == pytest.approx(0.41429766746051452, abs=1e-15)
    assert not fv.validity(fv.FamilySpec.family1(0.0), 0.0, 1.0)


def test_errors_are_typed():
    with pytest.raises(fv.DomainError):
        fv.eval_v(fv.FamilySpec.family1(0.0), 0.0, 1.0)
    with pytest.raises(fv.SingularPoint):
        fv.eval_v(fv.FamilySpec.cubic(5), 0.0, -1.0)
    with pytest.raises(fv.FinverifyError):
        fv.FamilySpec.family1(0.5)


def test_jet_and_scan():
    j = fv.jet(fv.FamilySpec.family1(0.0), 0.0, -1.0)
    assert j["u_x"] == pytest.approx(0.38825798432724394, abs=1e-15)
    r = fv.scan(fv.FamilySpec.cubic(3), 0.0, 0.1, 2.0, 3.0)
    assert r["samples"] == 400
    assert r["max_abs"] < 1e-9


def test_antiderivative_and_quadrature():
    assert fv.antiderivative(0, 1.0) == pytest.approx(2.0 / 3.0)
    assert fv.antiderivative_quadrature(-1, 0.25, 0.75) == pytest.approx(-math.pi / 6, abs=1e-12)
    assert fv.quad(math.sqrt, 0.0, 1.0) == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert fv.psi_from_x(-1, 0.0, 1, -2.0) == pytest.approx(0.97949664971520194, abs=1e-12)


def test_root_with_python_callable():
    assert fv.solve_root(lambda x: x * x - 2.0, 0.0, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-14)
    with pytest.raises(fv.NoBracket):
        fv.solve_root(lambda x: x * x + 1.0, -1.0, 1.0)


def test_brackets():
    assert fv.bracket("Dt", "D") == (1, 1, "Dt")
    assert fv.bracket("DHat", "PiHat") == (3, 1, "PiHat")
    assert fv.bracket("D", "D") is None
    with pytest.raises(fv.UnsupportedPair):
        fv.bracket("Dt", "PiHat")


def test_fd_solver():
    r = fv.fd_solve(fv.FamilySpec.cubic(3), 2.0, 3.0, 51, 0.0, 0.1)
    assert r["max_error"] < 1e-3
    assert len(r["x"]) == 51
    rep = fv.convergence_study(fv.FamilySpec.cubic(3), 2.0, 3.0, 0.0, 0.1, [21, 41, 81])
    assert all(1.7 <= p <= 2.3 for p in rep["orders"])


def test_verify_and_cli():
    checks = fv.verify(fv.FamilySpec.family6())
    assert {c["check"] for c in checks} == {"implicit_root", "first_integral", "residual_u", "q6"}
    assert all(c["pass"] for c in checks)
    code, out, _ = fv.run_cli(["families"])
    assert code == 0
    assert out.count("\n") == 8
    assert fv.run_cli(["verify", "--family", "3", "--tol", "1e-30"])[0] == 1
    assert fv.run_cli(["families", "--bogus"])[0] == 2
