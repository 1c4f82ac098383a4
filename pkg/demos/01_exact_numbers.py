"""Exact numbers in Q(sqrt m).

Everything in the package is computed with rationals and numbers of the form
x + y*sqrt(m); signs are decided exactly by squaring, never by floats.
"""
from reptiler.exactfield import format_num, parse_num, qf, qf_sign, qf_sqrt, rat, rational_enclosure

a = parse_num("(2+2√6)/5")
b = parse_num("(4−√6)/5")
print("a =", format_num(a), "  b =", format_num(b))
print("a^2 + b^2 =", format_num(a * a + b * b))  # exactly 2
print("a - (2 - 2b) =", format_num(a - (2 - 2 * b)))  # exactly 0

# sign of 1 - 3/5*sqrt(3): compare 1 with 27/25 after squaring
u = qf(1, "-3/5", 3)
print("sign(", format_num(u), ") =", qf_sign(u))

# square roots stay inside the field when they exist there
print("sqrt(3 + 2*sqrt 2) =", format_num(qf_sqrt(qf(3, 2, 2))))

# decimal brackets are for display; the value itself never becomes a float
lo, hi = rational_enclosure(qf(0, "1/2", 7), rat("1/100"))
print("sqrt(7)/2 lies in", f"[{lo}, {hi}]")
