"""Smoke test for the multiset_codes_py extension.

Build first: maturin develop -m crates/py/Cargo.toml (or pip install a built wheel).
"""

import itertools
import json
import os
import tempfile
from fractions import Fraction

import multiset_codes_py as mc


def check_geometry():
    assert mc.distance([2, 1, 1], [1, 2, 1]) == 1
    assert mc.ball_size([2, 2, 2], 2) == 19
    assert mc.ball_size([3, 2, 1], 3) == mc.ball_brute([3, 2, 1], 3) == 24
    assert mc.ideal_set_size(3, 2) == 19
    assert mc.c_coeff(4, 3) == 92
    assert mc.pair_count(6, 3, 0) == 28
    n, r = 9, 3
    assert mc.avg_ball(n, 2, r) == 2 * r + 1 - Fraction(r * (r + 1), n + 1)


def check_bounds():
    assert mc.sphere_packing(6, 3, 2) == Fraction(14, 3)
    assert mc.kt_anticode(6, 3, 2) == Fraction(3106, 19)
    assert isinstance(mc.gv_lower(6, 3, 2), Fraction)
    report = mc.bound_report(6, 3, 5)
    assert report["t"] == 2 and report["space"] == 28 and report["consistent"]
    assert mc.exact_max_code(6, 3, 5) == 3


def check_code():
    code = mc.Code("projective", 3, 1, 3, syndrome="1,0")
    assert len(code) == 5 and code.group_order == 4
    assert [code.format(w) for w in code.codewords] == [
        "{0,0,inf}", "{0,1,1}", "{0,2,2}", "{1,2,inf}", "{inf,inf,inf}"
    ]
    assert code.decode("0,1") == ([1, 2, 0, 0], [0, 1, 0, 0])
    try:
        code.decode("0,0,0")
    except mc.DecodingError:
        pass
    else:
        raise AssertionError("expected DecodingError")
    try:
        mc.Code("affine", 6, 2, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("s=6 accepted")

    affine = mc.Code("affine", 3, 2, 6, f=[1, 0, 1])
    assert affine.min_distance() is None or affine.min_distance() >= 3
    for i, word in enumerate(affine.codewords):
        for r in range(affine.t + 1):
            received = mc.delete(word, r, seed=i)
            codeword, _ = affine.decode(received)
            assert codeword == word

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "code.json")
        affine.save(path)
        again = mc.Code.load(path)
        assert again.codewords == affine.codewords
        assert json.loads(again.to_json())["variant"] == "affine"


def check_exhaustive_decode():
    code = mc.Code("projective", 3, 1, 3, syndrome="1,0")
    for word in code.codewords:
        symbols = [s for s, k in enumerate(word) for _ in range(k)]
        for gone in set(itertools.combinations(symbols, 1)):
            received = list(word)
            received[gone[0]] -= 1
            assert code.decode(received)[0] == word


if __name__ == "__main__":
    check_geometry()
    check_bounds()
    check_code()
    check_exhaustive_decode()
    print("smoke test ok")
