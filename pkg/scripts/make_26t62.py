#!/usr/bin/env python3
"""Write data/26t62.json: the degree-26 transitive group of order 31200.

The group is realized as the semilinear projective group of the line over
the 25-element field, acting on its 26 projective points: generated by a
translation, a scaling by a primitive element, the inversion, and the field
automorphism.  Point i < 25 encodes the field element a + b*sqrt(2) with
(a, b) = divmod(i, 5) reversed below; point 25 is infinity.
"""

import json
from pathlib import Path

MOD = 5  # F25 = F5[x] / (x^2 - 2); elements are pairs (a, b) = a + b x


def add(u, v):
    return ((u[0] + v[0]) % MOD, (u[1] + v[1]) % MOD)


def mul(u, v):
    a, b = u
    c, d = v
    return ((a * c + 2 * b * d) % MOD, (a * d + b * c) % MOD)


def inverse(u):
    for a in range(MOD):
        for b in range(MOD):
            if mul(u, (a, b)) == (1, 0):
                return (a, b)
    raise ValueError(f"{u} is not invertible")


def primitive_element(elements):
    for cand in elements:
        if cand == (0, 0):
            continue
        power, seen = (1, 0), set()
        for _ in range(24):
            power = mul(power, cand)
            seen.add(power)
        if len(seen) == 24:
            return cand
    raise AssertionError("no primitive element found")


def main() -> None:
    elements = [(a, b) for a in range(MOD) for b in range(MOD)]
    index = {e: i for i, e in enumerate(elements)}
    infinity = len(elements)
    lam = primitive_element(elements)

    def images_of(fn):
        out = [0] * (infinity + 1)
        for e, i in index.items():
            out[i] = index[fn(e)]
        out[infinity] = infinity
        return out

    translation = images_of(lambda e: add(e, (1, 0)))
    scaling = images_of(lambda e: mul(e, lam))
    frobenius = images_of(lambda e: (e[0], (4 * e[1]) % MOD))
    inversion = [0] * (infinity + 1)
    for e, i in index.items():
        inversion[i] = infinity if e == (0, 0) else index[inverse(e)]
    inversion[infinity] = index[(0, 0)]

    payload = {
        "name": "26t62",
        "degree": 26,
        "generators": [translation, scaling, inversion, frobenius],
    }
    out = Path(__file__).resolve().parent.parent / "data" / "26t62.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(payload) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
