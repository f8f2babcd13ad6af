"""The universal ambient group of an additive set.

Run: python demos/universal_group.py
"""

from freicat.addset import aset
from freicat.fgab import Z, cyclic
from freicat.freiman import FreimanMap, enumerate_homs
from freicat.universal import adjunction_eta, adjunction_theta, build_universal, extend_hom


def main():
    for a in (aset(Z, 0, 1), aset(Z, 0, 1, 2), aset(Z, 0, 1, 4), aset(cyclic(3), 0, 1, 2)):
        u = build_universal(a, 2)
        print(f"A={a}")
        print(f"  relations: {u.relation_matrix}")
        print(f"  group:     {u.group}")
        print(f"  A inside:  {u.embedded}")

    # any 2-hom out of A extends to a group hom out of its universal group
    a = aset(Z, 0, 1, 2)
    u = build_universal(a, 2)
    f = FreimanMap.from_mapping(a, aset(Z, 5, 8, 11), {0: 5, 1: 8, 2: 11}, 2)
    print(f"\nextension of {f}: {extend_hom(u, f)}")

    b = aset(cyclic(4), 0, 1, 2, 3)
    homs = enumerate_homs(a, b, 2)
    round_trips = all(adjunction_theta(u, adjunction_eta(u, h)) == h for h in homs)
    print(f"{len(homs)} 2-homs {a} -> {b}; all survive the round trip: {round_trips}")


if __name__ == "__main__":
    main()
