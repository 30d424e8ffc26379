"""Dumont-Thomas numeration attached to the (0,2,4,2) hiccup sequence A284753.

Each n has a digit string over {0,1,2,3}; a(n) is read off by shifting it one
place to the left.
"""
from hiccup import HiccupParams, a284753_system, generate_hiccup, kimberling_bound, kimberling_scan, represent

ns = a284753_system()
print("morphism   ", ns.morphism)
print("bases      ", ns.bases(8), " recurrence B(n+1) = %d B(n) + %d B(n-1)" % ns.recurrence)

a = generate_hiccup(HiccupParams(0, 2, 4, 2), 12)
print("\n  n   rep(n)   a(n)   rep(a(n))")
for n in range(1, 13):
    print(f"{n:3d}   {represent(ns, n):>6}   {a[n - 1]:4d}   {represent(ns, a[n - 1]):>9}")

print("\nrecognizer (Graphviz):")
print(ns.recognizer.to_dot())

kb = kimberling_bound(ns)
print("bounds on a(n) - (1+sqrt 3) n from lsd digit extrema:", tuple(kb))
print("certified:", kb.certified_lower, "..", kb.certified_upper)
scan = kimberling_scan(10**5, kb)
print(f"observed up to 1e5: {scan.min_value:.4f} at n={scan.min_n}, {scan.max_value:.4f} at n={scan.max_n}")
