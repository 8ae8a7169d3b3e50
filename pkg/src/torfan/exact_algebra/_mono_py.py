"""Pure-Python monomial kernel.

Monomials are tuples of non-negative integers (one exponent per ring
variable).  The compiled twin ``_mono_cy`` exposes the same five
functions; ``torfan.exact_algebra`` picks one at import time.
"""

KERNEL = "python"


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a | b componentwise."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(b, a):
    """b / a, assuming divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def grevlex_key(a):
    """Sort key realizing graded reverse lexicographic order.

    Keys compare like the monomials: first by total degree, then
    reverse-lexicographically (the monomial with the *smaller* exponent
    on the last differing variable is larger).
    """
    return (sum(a),) + tuple(-e for e in reversed(a))
