from fractions import Fraction

import numpy as np
import pytest

import mobius_circuits as mc


def mobius(x):
    if x == 0:
        return 0
    sign, p = 1, 2
    while p * p <= x:
        if x % p == 0:
            x //= p
            if x % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if x > 1 else sign


def test_sieve_matches_trial_division():
    mu = mc.sieve(12)
    assert mu.dtype == np.int8 and mu.shape == (4096,)
    assert [int(v) for v in mu] == [mobius(x) for x in range(4096)]


def test_twisted_means():
    assert mc.twisted_mean(4, mc.principal_character()) == Fraction(-3, 16)
    assert mc.twisted_mean(12, mc.chi8()) == Fraction(15, 4096)
    assert isinstance(mc.twisted_mean(8, mc.enumerate_characters(4)[1]), (complex, Fraction))


def test_walsh_identities():
    rng = np.random.default_rng(5)
    f = rng.choice(np.array([-1, 0, 1], dtype=np.int8), size=256)
    spectrum = mc.fwht(f)
    assert int((spectrum.astype(np.int64) ** 2).sum()) == 256 * int((f.astype(np.int64) ** 2).sum())
    for mask in (0, 1, 6, 255):
        parity = np.array([bin(x & mask).count("1") & 1 for x in range(256)])
        direct = Fraction(int((f * (1 - 2 * parity)).sum()), 256)
        assert mc.walsh_coefficient(f, mask) == direct == mc.walsh_via_psi(f, mask)
        assert Fraction(int(spectrum[mask]), 256) == direct


def test_fourier_at_one_half_is_first_walsh_coefficient():
    mu = mc.sieve(10)
    value = mc.fourier_coefficient(mu, Fraction(1, 2))
    assert value.real == pytest.approx(float(mc.walsh_coefficient(mu, 1)), abs=1e-12)
    assert abs(value.imag) < 1e-12


def test_diophantine():
    assert mc.best_rational_approx(Fraction(355, 113), 7) == (22, 7)
    r = mc.dio_lemma([(1, 3)], 4, 40)
    assert r["q_prime_exponent"] == 3 and r["a_prime"] == 1 and r["best_is_power_of_two"]
    with pytest.raises(mc.PreconditionError):
        mc.dio_lemma([(1, 3)], 4, 10)


def test_smoothing_and_katai():
    w = mc.SmoothedSquareWave(0.5)
    assert w.cutoff == 800
    assert max(mc.closeness_check(0.5, 12)) <= 0.5
    chi = np.array([1 - 2 * (x & 1) for x in range(1 << 10)], dtype=np.int8)
    r = mc.katai_reduce(chi, [1])
    assert r["theta"] == Fraction(1, 2) and r["value_abs"] == pytest.approx(1.0)


def test_circuits():
    c = mc.parse_circuit("a = INPUT 1\nb = INPUT 2\ng = AND a b\nOUTPUT g\n", 3)
    assert c.inputs == 3 and c.size == 1
    table = c.truth_table()
    assert [int(v) for v in table] == [1 if (x & 3) == 3 else -1 for x in range(8)]
    with pytest.raises(mc.ParseError):
        mc.parse_circuit("a = INPUT 1\ng = XOR a a\nOUTPUT g\n")
    assert mc.mobius_correlation(mc.generate("constant_true", 4))["mean"] == Fraction(-1, 16)
    dnf = mc.generate("random_dnf:3:10:7", 10)
    assert all(row[3] for row in mc.lmn_check(dnf, 2))
    corr = mc.mobius_correlation(dnf)
    assert corr["chain_holds"] and corr["parseval_holds"]


def test_pipeline_small():
    stages = mc.pipeline(12, 1)
    assert [s[0] for s in stages] == ["walsh-decay", "katai", "approximation", "lemma", "dyadic-scan"]
    assert all(s[1] for s in stages)
