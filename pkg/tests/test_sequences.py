import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dseqcdma.numtheory import is_primitive_root, mult_order
from dseqcdma.sequences import (PREFERRED_PAIRS, BinarySequence, DSeqOrigin, LfsrSpec, Mapping,
                                from_string, generate_dseq, gold_code, gold_family,
                                lfsr_msequence, preferred_pair, sequence_from_dict,
                                sequence_to_dict, to_bipolar, to_string)
from oracles import is_prime_trial, lfsr_states, long_division_bits

odd_moduli = st.integers(1, 4999).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize("m,bits", [
    (11, "0001011101"),
    (17, "00001111"),
    (19, "000011010111100101"),
    (3, "01"),
    (5, "0011"),
    (129, "00000001111111"),
])
def test_generate_dseq_examples(m, bits):
    seq = generate_dseq(m)
    assert to_string(seq) == bits
    assert seq.period == len(bits) == mult_order(2, m)
    assert seq.origin == DSeqOrigin(m)


def test_printed_prefixes_agree():
    # published listings are truncated or repeated; they agree on the shared prefix
    assert to_string(generate_dseq(11)).startswith("000101110")
    assert to_string(generate_dseq(19)).startswith("00001101011110010")
    assert to_string(generate_dseq(17)) * 2 == "0000111100001111"
    p41 = to_string(generate_dseq(41))
    assert (p41 * 2)[:30] == "000001100011111001110000011000"


@pytest.mark.parametrize("m", [4, 2, 1, 0, -7])
def test_generate_dseq_rejects_bad_moduli(m):
    with pytest.raises(ValueError):
        generate_dseq(m)


@given(odd_moduli)
def test_generate_dseq_matches_long_division(m):
    assert generate_dseq(m).bits.tolist() == long_division_bits(m)


@given(odd_moduli, st.integers(0, 10_000))
def test_periodicity(m, i):
    seq = generate_dseq(m)
    # cyclic extension agrees with the formula at any index
    assert seq.bits[i % seq.period] == pow(2, i + 1, m) % 2


def test_balance_for_maximal_primes():
    for p in range(3, 2000):
        if is_prime_trial(p) and is_primitive_root(2, p):
            assert generate_dseq(p).ones == (p - 1) // 2, p


def test_dseq_modulus_beyond_int64_products():
    m = 2**35 - 1  # ord_m(2) = 35; 1/m = 0.(00...01) with 35-digit period
    seq = generate_dseq(m)
    assert seq.period == 35
    assert to_string(seq) == "0" * 34 + "1"


@pytest.mark.parametrize("degree,taps", [(3, (3, 1)), (3, (3, 2)), (5, (5, 2)), (5, (5, 4, 3, 2)),
                                         (6, (6, 1)), (7, (7, 3)), (7, (7, 3, 2, 1))])
def test_msequence_matches_register_enumeration(degree, taps):
    seq = lfsr_msequence(LfsrSpec(degree, taps, 1))
    ref = lfsr_states(taps, degree, 1)
    assert seq.bits.tolist() == ref
    assert seq.period == 2**degree - 1
    assert seq.ones == 2 ** (degree - 1)


def test_msequence_degree5_counts():
    seq = lfsr_msequence(LfsrSpec(5, (5, 2), seed=0b10011))
    assert seq.period == 31
    assert seq.ones == 16


def test_msequence_nonprimitive_has_short_period():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2 is not primitive
    seq = lfsr_msequence(LfsrSpec(4, (4, 2), 1))
    assert seq.period < 15
    assert seq.bits.tolist() == lfsr_states((4, 2), 4, 1)


@pytest.mark.parametrize("kwargs", [dict(degree=3, taps=(3, 1), seed=0),
                                    dict(degree=3, taps=(2, 1), seed=1),
                                    dict(degree=3, taps=(3, 1), seed=8),
                                    dict(degree=3, taps=(3, 0), seed=1)])
def test_lfsr_spec_validation(kwargs):
    with pytest.raises(ValueError):
        LfsrSpec(**kwargs)


def test_gold_self_xor_is_zero():
    u, _ = preferred_pair(5)
    assert gold_code(u, u, 0).ones == 0


def test_gold_shift_matches_explicit_xor():
    u, v = preferred_pair(5)
    g = gold_code(u, v, 3)
    assert g.period == 31
    assert g.bits.tolist() == [u.bits[i] ^ v.bits[(i + 3) % 31] for i in range(31)]


def test_gold_errors():
    u, v = preferred_pair(5)
    w, _ = preferred_pair(7)
    with pytest.raises(ValueError):
        gold_code(u, w, 0)
    with pytest.raises(ValueError):
        gold_code(u, v, 31)


def _full_xcorr_sums(a, b):
    x = 2 * a.bits.astype(int) - 1
    y = 2 * b.bits.astype(int) - 1
    n = len(x)
    return {int(sum(x[i] * y[(i + k) % n] for i in range(n))) for k in range(n)}


@pytest.mark.parametrize("degree", sorted(PREFERRED_PAIRS))
def test_preferred_pairs_three_valued(degree):
    t = 2 ** ((degree + 2) // 2) + 1
    u, v = preferred_pair(degree)
    assert _full_xcorr_sums(u, v) == {-1, -t, t - 2}


def test_gold_code_three_valued_against_u():
    u, v = preferred_pair(7)
    g = gold_code(u, v, 5)
    assert g.period == 127
    assert _full_xcorr_sums(u, g) == {-1, -17, 15}


def test_gold_family_size():
    fam = gold_family(5)
    assert len(fam) == 33
    assert len({to_string(s) for s in fam}) == 33


def test_to_bipolar_conventions():
    seq = from_string("0001011101")
    assert to_bipolar(seq, "bipolar1").values.tolist() == [-1, -1, -1, 1, -1, 1, 1, 1, -1, 1]
    half = to_bipolar(from_string("00001111"), Mapping.BIPOLAR_HALF)
    assert half.values.tolist() == [-.5] * 4 + [.5] * 4
    uni = to_bipolar(seq, "unipolar01")
    assert uni.values.tolist() == seq.bits.tolist()
    assert to_bipolar(seq).mapping == "bipolar1"


def test_to_bipolar_unknown_convention():
    with pytest.raises(ValueError):
        to_bipolar(from_string("01"), "ternary")


def test_string_round_trip():
    seq = generate_dseq(19)
    back = from_string(to_string(seq))
    assert np.array_equal(back.bits, seq.bits)
    with pytest.raises(ValueError):
        from_string("0120")


@pytest.mark.parametrize("seq", [
    generate_dseq(11),
    lfsr_msequence(LfsrSpec(5, (5, 2), 3)),
    gold_code(*preferred_pair(5), 7),
    from_string("0110"),
])
def test_json_round_trip(seq):
    doc = json.loads(json.dumps(sequence_to_dict(seq)))
    assert doc["period"] == seq.period
    assert sequence_from_dict(doc) == seq


def test_json_dseq_shape():
    assert sequence_to_dict(generate_dseq(11)) == {"modulus": 11, "period": 10, "bits": "0001011101"}


def test_json_rejects_inconsistent_bits():
    with pytest.raises(ValueError):
        sequence_from_dict({"modulus": 11, "bits": "0001011100"})


def test_binary_sequence_immutable():
    seq = generate_dseq(11)
    with pytest.raises(ValueError):
        seq.bits[0] = 1
    with pytest.raises(ValueError):
        BinarySequence([0, 2])
