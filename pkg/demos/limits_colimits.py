"""Products, pullbacks, pushouts and (co)equalizers of additive sets.

Run: python demos/limits_colimits.py
"""

from freicat.addset import aset, sigma
from freicat.cat import (
    Cone,
    coequalizer0,
    coproduct0,
    disjoint_copair,
    equalizer0,
    product,
    pullback0,
    pushout0,
    structure_report,
    verify_universal_property,
)
from freicat.fgab import Z, cyclic
from freicat.freiman import FreimanMap, hom_violation


def describe(cone):
    print(f"{cone.kind:12} apex={cone.apex}  sigma={sigma(cone.apex)}")
    for chk in structure_report(cone):
        print(f"{'':12} {chk.name}: {chk.value} in [{chk.lower}, {chk.upper}] -> {chk.holds}")


def main():
    a, b = aset(Z, 0, 1), aset(Z, 0, 2)
    r = aset(Z, 0, 1, 2, 3)
    describe(product(a, b, 2))
    describe(coproduct0(a, b, 2))

    f = FreimanMap.from_mapping(a, r, {0: 0, 1: 1}, 2)
    g = FreimanMap.from_mapping(b, r, {0: 0, 2: 2}, 2)
    describe(pullback0(f, g))

    z = FreimanMap.from_mapping(a, r, {0: 0, 1: 0}, 2)
    describe(pushout0(f, z))
    describe(equalizer0(f, z))
    describe(coequalizer0(f, z))

    # a coequalizer in Z/6 whose quotient identifies two classes
    g6 = cyclic(6)
    src, tgt = aset(g6, 0, 1), aset(g6, 0, 1, 3, 4)
    u = FreimanMap.from_mapping(src, tgt, {0: 0, 1: 3}, 2)
    v = FreimanMap.from_mapping(src, tgt, {0: 0, 1: 0}, 2)
    q = coequalizer0(u, v)
    print(f"\nZ/6 coequalizer classes: {q.quotient.classes}, collapsed: {q.quotient.collapsed}")

    # the disjoint union is not a coproduct: copairing two homs can fail
    p = FreimanMap.from_mapping(aset(Z, 0, 1), aset(Z, 1, 2), {0: 1, 1: 2}, 2)
    s = FreimanMap.from_mapping(aset(Z, 3, 4), aset(Z, 1, 2), {3: 2, 4: 1}, 2)
    print(f"\ncopair on {{0,1}} u {{3,4}}: {hom_violation(disjoint_copair(p, s))}")

    # checking a universal property against one competitor
    cone = coproduct0(a, b, 2)
    pin = FreimanMap.from_mapping(a, r, {0: 0, 1: 1}, 2)
    qin = FreimanMap.from_mapping(b, r, {0: 0, 2: 2}, 2)
    print(f"coproduct vs competitor {r}: {verify_universal_property(cone, Cone(r, (pin, qin)))}")


if __name__ == "__main__":
    main()
