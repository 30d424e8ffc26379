"""A086377 four ways: recursion, morphism, Beatty formula, continued fraction.

Run with ``python3 demos/four_characterizations.py``.
"""
import mpmath

from hiccup import (
    CFracSpec,
    HiccupParams,
    Morphism,
    beatty_terms,
    fixed_point,
    format_beatty,
    generate_hiccup,
    hiccup_beatty,
    ones_positions,
    shift_iterate,
)

params = HiccupParams(1, 1, 3, 2)
N = 20

# %% the recursion
rec = generate_hiccup(params, N)
print("recursion      ", rec)

# %% positions of 1 in the fixed point of 0->10, 1->100
m = Morphism.parse("0->10, 1->100")
word = fixed_point(m, "1", 3 * N)
print("fixed point    ", word[:40], "...")
print("positions of 1 ", ones_positions(word)[:N])

# %% an exact Beatty formula
bp = hiccup_beatty(params)
print("Beatty         ", format_beatty(bp))
print("               ", [int(v) for v in beatty_terms(bp, N)])

# %% remainders of the continued fraction starting at 4/pi, rounded
rs = shift_iterate(CFracSpec.bds(2), None, N)
with mpmath.workprec(200):
    print("r_1            ", mpmath.nstr(rs[0].mid, 20), "vs 4/pi =", mpmath.nstr(4 / mpmath.pi, 20))
    print("round(r_n)     ", [int(mpmath.floor(r.mid + 0.5)) for r in rs])
