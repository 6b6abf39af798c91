import pytest

import iwasawa as iw


def test_characters_round_trip():
    chi = iw.quadratic_char(3)
    assert chi.conductor == 3 and chi.order == 2 and not chi.is_even
    assert chi.label() == "3.2"
    w = iw.DirichletChar.omega_like(7)
    assert (w.pow(2) * chi).conductor == 21
    assert chi * chi == iw.DirichletChar(1).primitive() * chi.pow(2)


def test_kl_branch_invariants_and_reduction():
    eta = iw.DirichletChar.omega_like(7).pow(2)
    b = iw.kl_branch(eta, 7, D=12, M=8)
    assert b["mu"] == 0 and b["certified"] and not b["pole"]
    assert len(b["coefficients"]) == 12
    assert all(0 <= c < 7**8 for c in b["coefficients"])
    assert all(m == 8 for m in b["coefficient_moduli"])


def test_pole_branch_and_special_value():
    b = iw.kl_branch(iw.DirichletChar(1), 3, D=10, M=8)
    assert b["pole"]
    # residue of the numerator at the origin is a unit
    assert b["coefficients"][0] % 3 != 0
    v = iw.lp_value(iw.DirichletChar.omega_like(7).pow(2), 1, 7, 10)
    assert v["den_exp"] == 0 and v["numerator"] % 7 != 0


def test_weight_one_exceptional_and_odd():
    b = iw.weight_one_branch(iw.quadratic_char(3), 7, 0, D=10, M=8)
    assert b["exceptional"] and b["vanishes_at_origin"]
    assert b["mu"] == 0 == b["predicted_mu"]
    assert b["lambda"] == b["predicted_lambda"]
    odd = iw.weight_one_branch(iw.quadratic_char(3), 7, 1, D=8, M=6)
    assert odd["exact_zero"] and odd["mu"] is None


def test_twist_identity():
    psi = iw.even_wild_characters(3, 2)[0]
    tc = iw.twist_check(iw.quadratic_char(5), psi, 3, D=12, M=8)
    assert tc["pass"] and tc["agreement"] >= tc["required"]


def test_reciprocity_sweep():
    reps = iw.reciprocity_sweep(iw.quadratic_char(11), 3, 2)
    assert len(reps) == 2
    assert all(r["agreement"] >= 2 and r["pre_trace_equal"] for r in reps)
    assert {r["sign"] for r in reps} == {-1}


def test_gorenstein_fixture_evidence():
    ev = iw.gorenstein_evidence(3, 7, offline=True)
    assert ev["verdict"] and ev["dim"] == 1 and ev["zp_rank_one"]
    assert any(c == "3.7.b.a" for c in ev["citations"])
    with pytest.raises(ValueError, match="N\\*phi\\(N\\)"):
        iw.gorenstein_evidence(5, 5, offline=True)


def test_series_invariants_additivity():
    p, prec = 3, 6
    f = [2, 3, 1, 0, 0, 0]          # lambda 0? no: f(0)=2 unit -> (0, 0)
    g = [0, 3, 9, 1, 5, 0]          # first unit coefficient at X^3 -> (0, 3)
    mu_f, lam_f, cert_f = iw.series_invariants(p, prec, f)
    mu_g, lam_g, cert_g = iw.series_invariants(p, prec, g)
    assert (mu_f, lam_f, cert_f) == (0, 0, True)
    assert (mu_g, lam_g, cert_g) == (0, 3, True)
    prod = [0] * 6
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            if i + j < 6:
                prod[i + j] += a * b
    mu_p, lam_p, _ = iw.series_invariants(p, prec, prod)
    assert (mu_p, lam_p) == (mu_f + mu_g, lam_f + lam_g)
    mu_s, lam_s, _ = iw.series_invariants(p, prec, [3 * c for c in f])
    assert (mu_s, lam_s) == (1, lam_f)
