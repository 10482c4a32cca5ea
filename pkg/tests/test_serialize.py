import json
import random
from fractions import Fraction

from starsym import ParamScalar, PrecisionWindow, XUPoly, from_json, to_json
from starsym.randgen import random_poly, random_swsymbol, random_twsymbol, random_wsymbol
from starsym.serialize import dumps, loads


def test_round_trip_every_core_type():
    rng = random.Random(4)
    for _ in range(25):
        n = rng.randint(1, 2)
        values = [
            random_poly(rng, n, params=("theta",)),
            ParamScalar.param("theta", 2) + Fraction(3, 7),
            random_wsymbol(rng, n, params=("theta",)),
            random_wsymbol(rng, n).truncate(-1),
            random_swsymbol(rng, n, 4),
            random_twsymbol(rng, n, 3, m=1),
            random_twsymbol(rng, n, 3).restrict(PrecisionWindow((-2, -1, -1, 0))),
        ]
        for v in values:
            assert from_json(json.loads(json.dumps(to_json(v)))) == v


def test_schema_shape():
    P = random_wsymbol(random.Random(0), 1)
    data = to_json(P)
    assert data["schema"] == 1 and data["type"] == "w" and data["n"] == 1
    term = data["terms"][0]
    assert set(term) == {"hbar", "monomial", "coeff"}
    assert set(term["coeff"]) == {"num", "den", "params"}
    assert isinstance(term["coeff"]["num"], str)


def test_big_integers_survive():
    p = XUPoly.const(1, Fraction(3 ** 200, 7 ** 90))
    assert loads(dumps(p)) == p
    assert str(3 ** 200) in dumps(p)


def test_output_is_deterministic():
    a = dumps(random_twsymbol(random.Random(8), 2, 3))
    b = dumps(random_twsymbol(random.Random(8), 2, 3))
    assert a == b
