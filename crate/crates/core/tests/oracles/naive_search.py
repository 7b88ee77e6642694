"""Naive triple-loop oracle for `nearmiss search`.

Enumerates every 1 <= min_x <= x <= y <= max_x and every z >= 1 with
z^2 <= x^4 + y^4 + threshold, keeping |x^4 + y^4 - z^2| <= threshold.
Rows are printed as `x<TAB>y<TAB>z<TAB>delta`, sorted by (y, x, z).

    python3 naive_search.py 60 50 > ../fixtures/search_max60_t50.tsv
"""
import sys


def naive(min_x, max_x, threshold):
    hits = []
    for x in range(min_x, max_x + 1):
        for y in range(x, max_x + 1):
            s = x**4 + y**4
            z = 1
            while z * z <= s + threshold:
                delta = s - z * z
                if abs(delta) <= threshold:
                    hits.append((x, y, z, delta))
                z += 1
    hits.sort(key=lambda h: (h[1], h[0], h[2]))
    return hits


if __name__ == "__main__":
    max_x, threshold = int(sys.argv[1]), int(sys.argv[2])
    min_x = int(sys.argv[3]) if len(sys.argv) > 3 else 1
    for h in naive(min_x, max_x, threshold):
        print("\t".join(map(str, h)))
