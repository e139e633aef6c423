"""
Open the hood on the split-contour expansion: the exact coefficient
tables, the boundary terms of the ray piece, and how the partial sums
close in on direct quadrature of that piece.

The integration-by-parts engine generates rational coefficient tables
A_mn by a three-branch recursion; every term of the expansion is a finite
combination of them, so a single corrupted entry is detectable numerically.
"""

from endpoint_uniform import (
    amn_table,
    choose_split,
    derive,
    from_offset,
    jb2_oracle,
    jb2_series,
    rn_bound,
    t_term,
    tj_bound,
)


def main():
    print("coefficient tables (exact rationals)")
    for level in (1, 2, 3):
        entries = amn_table(level).as_strings()
        joined = ", ".join(f"A[{k}]={v}" for k, v in sorted(entries.items()))
        print(f"  level {level}: {joined}")

    t = 3e4
    p = from_offset(t, 0.5, 0.5, 0.6)
    dd = choose_split(derive(p), 4)
    print(f"\nsplit at a = {dd.a:.4e} (k = {dd.k:.4e}) for t = {t:.0e}")

    print("\nboundary terms of the ray piece:")
    for j in (1, 2, 3, 4):
        term = t_term(j, p, dd.k)
        print(f"  j = {j}: |T_j| = {abs(term.value):.3e}   "
              f"printed bound = {term.magnitude_bound:.3e}")

    oracle = jb2_oracle(p, dd.k, tol=1e-12)
    print(f"\nray piece by quadrature: {oracle.value:.12e}")
    for j_max in (1, 2, 3, 4):
        value, terms, bound = jb2_series(p, dd.k, j_max)
        gap = abs(value - oracle.value)
        print(f"  partial sum j <= {j_max}: gap to quadrature {gap:.3e}")

    # the a-priori remainder bounds carry constant 1 straight from the
    # analysis; at this scale they are loose by design, the terms themselves
    # are what converges
    print(f"\na-priori remainder bound after j=1: {rn_bound(2, p, dd.k):.3e}")
    print(f"observed j=2 term size:              "
          f"{abs(t_term(2, p, dd.k).value):.3e}")
    print(f"tight per-term bound tj_bound(2):    {tj_bound(2, p, dd.a):.3e}")


if __name__ == "__main__":
    main()
