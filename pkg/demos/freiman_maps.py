"""Freiman homomorphisms and where they stop being isomorphisms.

Run: python demos/freiman_maps.py
"""

from freicat.addset import aset
from freicat.fgab import Z
from freicat.freiman import FreimanMap, enumerate_homs, hom_violation, is_freiman_hom, is_freiman_iso


def main():
    c, d = aset(Z, 0, 1, 4), aset(Z, 0, 1, 3)
    phi = FreimanMap.from_mapping(c, d, {0: 0, 1: 1, 4: 3}, 2)
    print("phi: {0,1,4} -> {0,1,3}, 0->0, 1->1, 4->3")
    for k in (2, 3):
        f = phi.with_order(k)
        print(f"  k={k}: hom={is_freiman_hom(f)} iso={is_freiman_iso(f)}")
        v = hom_violation(f.inverse())
        if v is not None:
            print(f"    inverse breaks: {v}")

    # {0,1,4} has no nontrivial 3-fold coincidences, so every map out of it is a 3-hom
    print(f"\n3-homs {{0,1,4}} -> {{0,1,3}}: {len(enumerate_homs(c, d, 3))}")
    back = enumerate_homs(d, c, 3)
    print(f"3-homs {{0,1,3}} -> {{0,1,4}}: {len(back)}")
    for h in back:
        print(f"  {h}")

    e = aset(Z, 0, 2, 4)
    psi = FreimanMap.from_mapping(c, e, {0: 0, 1: 2, 4: 4}, 2)
    print(f"\npsi: {{0,1,4}} -> {{0,2,4}} is a 2-hom: {is_freiman_hom(psi)}")
    print(f"  its inverse fails: {hom_violation(psi.inverse())}")


if __name__ == "__main__":
    main()
