"""Doubling constants of a few familiar sets.

Run: python demos/doubling.py
"""

from freicat.addset import aset, product_set, sigma, sumset
from freicat.fgab import Z, cyclic


def show(name, a):
    print(f"{name:32} |A|={len(a):2}  |A+A|={len(sumset(a, a)):3}  sigma={sigma(a)}")


def main():
    # arithmetic progressions sit at the bottom: |A+A| = 2|A| - 1
    for n in (3, 6, 10):
        show(f"progression 0..{n - 1}", aset(Z, *range(n)))
    # powers of two have no repeated sums, so sigma grows linearly
    for n in (3, 6, 10):
        show(f"powers of two, {n} terms", aset(Z, *[2**i for i in range(n)]))
    # a whole finite group is closed under addition
    show("all of Z/7", aset(cyclic(7), *range(7)))
    a, b = aset(Z, 0, 1, 3), aset(cyclic(5), 0, 2)
    p, _ = product_set(a, b)
    print(f"\nsigma(A) * sigma(B) = {sigma(a)} * {sigma(b)} = {sigma(a) * sigma(b)}")
    print(f"sigma(A x B)        = {sigma(p)}")


if __name__ == "__main__":
    main()
